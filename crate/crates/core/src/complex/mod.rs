//! Simplicial complexes stored as facet families over labeled vertices.

mod io;
mod label;

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{parse_complex, ComplexFile};
pub use label::{Face, Label};

/// A finite simplicial complex given by its facets.
///
/// Vertices are kept sorted; facets are sorted index vectors into the vertex
/// list, sorted lexicographically, with no facet contained in another. Purity
/// is not enforced here; operations that need it check [`is_pure`](Self::is_pure).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexFile", into = "ComplexFile")]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Build a complex from facet lists, absorbing non-maximal entries.
    pub fn from_facets<I, F, L>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let faces = facets
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                Face::new(f).map_err(|vertex| Error::DuplicateVertexInFacet { facet: i, vertex })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_faces(&faces)
    }

    /// Build a complex from faces; the maximal ones become facets.
    pub fn from_faces(faces: &[Face]) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut labels: Vec<Label> = faces
            .iter()
            .flat_map(|f| f.vertices().iter().cloned())
            .collect();
        labels.sort();
        labels.dedup();
        let raw = faces
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|l| labels.binary_search(l).expect("collected above") as u32)
                    .collect()
            })
            .collect();
        Ok(Self::from_raw(&labels, raw, true))
    }

    /// The complex of all faces of one simplex.
    pub fn simplex<I, L>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        Self::from_facets([vertices])
    }

    /// The complex `{∅}`: the link of a facet, the (-1)-sphere.
    pub fn void_sphere() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// Canonicalize index facets over `labels`; drops unused labels.
    /// With `reduce`, non-maximal facets are removed.
    pub(crate) fn from_raw(labels: &[Label], mut facets: Vec<Vec<u32>>, reduce: bool) -> Self {
        for f in &mut facets {
            f.sort_unstable();
        }
        if reduce {
            facets = maximal_sets(facets);
        } else {
            facets.sort();
            facets.dedup();
        }
        if facets.is_empty() {
            facets.push(Vec::new());
        }
        let mut used: Vec<u32> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let identity = used.len() == labels.len();
        if identity {
            return SimplicialComplex {
                labels: labels.to_vec(),
                facets,
            };
        }
        let remap: HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let new_labels = used.iter().map(|&v| labels[v as usize].clone()).collect();
        let mut new_facets: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap[&v]).collect())
            .collect();
        new_facets.sort();
        SimplicialComplex {
            labels: new_labels,
            facets: new_facets,
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    /// Facets as index vectors into [`labels`](Self::labels).
    pub fn facet_ids(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Face> {
        self.facets.iter().map(|f| self.face_of(f)).collect()
    }

    /// Largest facet cardinality, the `d` of a `(d-1)`-complex.
    pub fn d(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        self.d() as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.d();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub(crate) fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NotPure)
        }
    }

    pub fn index_of(&self, l: &Label) -> Option<u32> {
        self.labels.binary_search(l).ok().map(|i| i as u32)
    }

    pub fn label(&self, v: u32) -> &Label {
        &self.labels[v as usize]
    }

    pub fn face_of(&self, ids: &[u32]) -> Face {
        Face::of(ids.iter().map(|&v| self.labels[v as usize].clone()))
    }

    /// Index form of a face, failing if some vertex is absent or it is not a face.
    pub fn face_ids(&self, face: &Face) -> Result<Vec<u32>> {
        let ids = face
            .vertices()
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::FaceNotInComplex(face.to_string()))?;
        if !self.contains_ids(&ids) {
            return Err(Error::FaceNotInComplex(face.to_string()));
        }
        Ok(ids)
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.face_ids(face).is_ok()
    }

    pub(crate) fn contains_ids(&self, ids: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(ids, f))
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        face.vertices()
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Option<Vec<_>>>()
            .is_some_and(|ids| self.facets.binary_search(&ids).is_ok())
    }

    /// All faces of a given cardinality, as sorted index vectors.
    pub(crate) fn faces_of_size(&self, k: usize) -> Vec<Vec<u32>> {
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        for f in &self.facets {
            if f.len() >= k {
                for c in f.iter().copied().combinations(k) {
                    set.insert(c);
                }
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort();
        out
    }

    /// The `i`-dimensional faces, sorted.
    pub fn all_faces(&self, i: isize) -> Result<Vec<Face>> {
        if i < -1 || i > self.dim() {
            return Err(Error::DimensionOutOfRange {
                dim: i,
                max: self.dim(),
            });
        }
        Ok(self
            .faces_of_size((i + 1) as usize)
            .iter()
            .map(|f| self.face_of(f))
            .collect())
    }

    /// Face counts by cardinality: entry `k` is the number of faces with `k`
    /// vertices, so entry 0 is `f_{-1} = 1`.
    pub fn face_counts(&self) -> Vec<i64> {
        let d = self.d();
        let mut sets: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); d + 1];
        for f in &self.facets {
            for mask in 0u32..(1 << f.len()) {
                let sub: Vec<u32> = f
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                sets[sub.len()].insert(sub);
            }
        }
        sets.iter().map(|s| s.len() as i64).collect()
    }

    /// `Σ (-1)^i f_i` over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| if k % 2 == 1 { c } else { -c })
            .sum()
    }

    /// Facets containing the given index face.
    pub(crate) fn facets_containing<'a>(
        &'a self,
        ids: &'a [u32],
    ) -> impl Iterator<Item = &'a Vec<u32>> + 'a {
        self.facets.iter().filter(move |f| is_subset(ids, f))
    }

    pub(crate) fn link_ids(&self, ids: &[u32]) -> SimplicialComplex {
        let facets = self
            .facets_containing(ids)
            .map(|f| {
                f.iter()
                    .copied()
                    .filter(|v| ids.binary_search(v).is_err())
                    .collect()
            })
            .collect();
        // {σ - ρ : σ ⊇ ρ} is already an antichain
        Self::from_raw(&self.labels, facets, false)
    }

    /// `lk ρ`: faces disjoint from ρ whose union with ρ is a face.
    pub fn link(&self, rho: &Face) -> Result<SimplicialComplex> {
        let ids = self.face_ids(rho)?;
        Ok(self.link_ids(&ids))
    }

    /// All faces of facets containing ρ.
    pub fn closed_star(&self, rho: &Face) -> Result<SimplicialComplex> {
        let ids = self.face_ids(rho)?;
        let facets = self.facets_containing(&ids).cloned().collect();
        Ok(Self::from_raw(&self.labels, facets, false))
    }

    /// Join with a complex on disjoint labels.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(l) = self.labels.iter().find(|l| other.index_of(l).is_some()) {
            return Err(Error::VertexLabelCollision(l.clone()));
        }
        let mut faces = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in self.facets() {
            for b in other.facets() {
                faces.push(a.union(&b));
            }
        }
        Self::from_faces(&faces)
    }

    /// Connected sum along facet σ of `self` and σ′ of `other`. `bijection`
    /// maps each vertex of σ′ to the vertex of σ it is glued to.
    pub fn connected_sum(
        &self,
        sigma: &Face,
        other: &SimplicialComplex,
        sigma_p: &Face,
        bijection: &[(Label, Label)],
    ) -> Result<SimplicialComplex> {
        if !self.is_facet(sigma) {
            return Err(Error::NotAFacet(sigma.to_string()));
        }
        if !other.is_facet(sigma_p) {
            return Err(Error::NotAFacet(sigma_p.to_string()));
        }
        let map = check_bijection(sigma_p, sigma, bijection)?;
        for l in other.labels() {
            if !sigma_p.contains(l) && self.index_of(l).is_some() {
                return Err(Error::VertexLabelCollision(l.clone()));
            }
        }
        let mut faces: Vec<Face> = self.facets().into_iter().filter(|f| f != sigma).collect();
        for f in other.facets() {
            if &f != sigma_p {
                faces.push(Face::of(
                    f.vertices()
                        .iter()
                        .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone())),
                ));
            }
        }
        Self::from_faces(&faces)
    }

    /// Handle addition: glue disjoint facets σ and σ′ via `bijection`
    /// (vertex of σ to vertex of σ′) and remove both.
    pub fn handle_addition(
        &self,
        sigma: &Face,
        sigma_p: &Face,
        bijection: &[(Label, Label)],
    ) -> Result<SimplicialComplex> {
        for s in [sigma, sigma_p] {
            if !self.is_facet(s) {
                return Err(Error::NotAFacet(s.to_string()));
            }
        }
        if let Some(v) = sigma.vertices().iter().find(|v| sigma_p.contains(v)) {
            return Err(Error::AdmissibilityViolation(format!(
                "facets {sigma} and {sigma_p} share vertex {v}"
            )));
        }
        let forward = check_bijection(sigma, sigma_p, bijection)?;
        let nbrs = self.neighbor_sets();
        for (v, w) in &forward {
            let (iv, iw) = (self.index_of(v).unwrap(), self.index_of(w).unwrap());
            if nbrs[iv as usize].contains(&iw) {
                return Err(Error::AdmissibilityViolation(format!(
                    "{v} and {w} are adjacent"
                )));
            }
            if let Some(&c) = nbrs[iv as usize].intersection(&nbrs[iw as usize]).min() {
                return Err(Error::AdmissibilityViolation(format!(
                    "{v} and {w} have common neighbor {}",
                    self.label(c)
                )));
            }
        }
        let back: HashMap<Label, Label> = forward.into_iter().map(|(v, w)| (w, v)).collect();
        let faces: Vec<Face> = self
            .facets()
            .into_iter()
            .filter(|f| f != sigma && f != sigma_p)
            .map(|f| {
                Face::of(
                    f.vertices()
                        .iter()
                        .map(|l| back.get(l).cloned().unwrap_or_else(|| l.clone())),
                )
            })
            .collect();
        Self::from_faces(&faces)
    }

    /// Adjacency sets by vertex index.
    pub(crate) fn neighbor_sets(&self) -> Vec<HashSet<u32>> {
        let mut nbrs = vec![HashSet::new(); self.labels.len()];
        for f in &self.facets {
            for &a in f {
                for &b in f {
                    if a != b {
                        nbrs[a as usize].insert(b);
                    }
                }
            }
        }
        nbrs
    }

    /// Every `i`-subset of the vertex set is a face.
    pub fn is_i_neighborly(&self, i: usize) -> bool {
        if i > self.labels.len() {
            return true;
        }
        if i <= 1 {
            return true;
        }
        self.faces_of_size(i).len() as i64
            == crate::scalar::binom(self.labels.len() as i64, i as i64)
    }

    /// Missing edges as label pairs, sorted.
    pub fn nonedges(&self) -> Vec<(Label, Label)> {
        let nbrs = self.neighbor_sets();
        let n = self.labels.len() as u32;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !nbrs[a as usize].contains(&b) {
                    out.push((self.label(a).clone(), self.label(b).clone()));
                }
            }
        }
        out
    }

    /// Faces of `self` whose vertices all lie in `w`.
    pub fn vertex_induced_subcomplex(&self, w: &[Label]) -> SimplicialComplex {
        let keep: HashSet<u32> = w.iter().filter_map(|l| self.index_of(l)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| keep.contains(v)).collect())
            .collect();
        Self::from_raw(&self.labels, facets, true)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return true;
        }
        let nbrs = self.neighbor_sets();
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Apply a label map (must be injective on the vertex set).
    pub fn relabel<F: Fn(&Label) -> Label>(&self, f: F) -> Result<SimplicialComplex> {
        let faces: Vec<Face> = self
            .facets()
            .iter()
            .map(|face| Face::of(face.vertices().iter().map(&f)))
            .collect();
        let out = Self::from_faces(&faces)?;
        if out.n_vertices() != self.n_vertices() {
            return Err(Error::ArgumentOutOfRange(
                "relabeling is not injective".into(),
            ));
        }
        Ok(out)
    }

    /// Faces of size `d - 1` lying in exactly one facet (pure complexes).
    pub fn boundary_ridges(&self) -> Vec<Face> {
        let d = self.d();
        if d == 0 {
            return Vec::new();
        }
        let mut count: HashMap<Vec<u32>, usize> = HashMap::new();
        for f in &self.facets {
            for r in f.iter().copied().combinations(d - 1) {
                *count.entry(r).or_default() += 1;
            }
        }
        let mut out: Vec<_> = count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        out.sort();
        out.iter().map(|r| self.face_of(r)).collect()
    }
}

fn check_bijection(
    domain: &Face,
    range: &Face,
    pairs: &[(Label, Label)],
) -> Result<HashMap<Label, Label>> {
    let mismatch = || {
        Error::BijectionArityMismatch(format!(
            "expected a bijection {domain} -> {range}, got {pairs:?}"
        ))
    };
    if domain.len() != range.len() || pairs.len() != domain.len() {
        return Err(mismatch());
    }
    let map: HashMap<Label, Label> = pairs.iter().cloned().collect();
    let image: HashSet<&Label> = map.values().collect();
    let ok = map.len() == domain.len()
        && domain.vertices().iter().all(|l| map.contains_key(l))
        && range.vertices().iter().all(|l| image.contains(l));
    if ok {
        Ok(map)
    } else {
        Err(mismatch())
    }
}

/// `a ⊆ b` for sorted slices.
pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Keep only inclusion-maximal sets; output sorted.
fn maximal_sets(mut sets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
    for s in sets {
        let dominated = match s.first() {
            None => !kept.is_empty(),
            Some(v) => by_vertex.get(v).is_some_and(|ix| {
                ix.iter()
                    .any(|&k| kept[k].len() > s.len() && is_subset(&s, &kept[k]))
            }),
        };
        if !dominated {
            for &v in &s {
                by_vertex.entry(v).or_default().push(kept.len());
            }
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn triangle_boundary() {
        let k = SimplicialComplex::from_facets([[1, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(k.d(), 2);
        assert_eq!(k.n_facets(), 3);
        assert_eq!(k.face_counts(), vec![1, 3, 3]);
    }

    #[test]
    fn absorbs_subfacets() {
        let k = SimplicialComplex::from_facets(vec![vec![1, 2, 3], vec![1, 2]]).unwrap();
        assert_eq!(k.n_facets(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let empty: Vec<Vec<i64>> = vec![];
        assert_eq!(
            SimplicialComplex::from_facets(empty),
            Err(Error::EmptyInput)
        );
        assert!(matches!(
            SimplicialComplex::from_facets([[1, 1]]),
            Err(Error::DuplicateVertexInFacet { facet: 0, .. })
        ));
    }

    #[test]
    fn faces_and_links() {
        let k = tetra_boundary();
        assert_eq!(k.all_faces(1).unwrap().len(), 6);
        assert_eq!(k.all_faces(-1).unwrap(), vec![Face::empty()]);
        assert!(k.all_faces(3).is_err());
        let lk = k.link(&Face::of([1])).unwrap();
        assert_eq!(
            lk,
            SimplicialComplex::from_facets([[2, 3], [2, 4], [3, 4]]).unwrap()
        );
        assert_eq!(k.link(&Face::empty()).unwrap(), k);
        let top = k.link(&Face::of([1, 2, 3])).unwrap();
        assert_eq!(top, SimplicialComplex::void_sphere());
        assert!(matches!(
            k.link(&Face::of([1, 5])),
            Err(Error::FaceNotInComplex(_))
        ));
        assert_eq!(k.closed_star(&Face::of([1])).unwrap().n_facets(), 3);
    }

    #[test]
    fn join_of_two_zero_spheres_is_a_square() {
        let a = SimplicialComplex::from_facets([[1], [2]]).unwrap();
        let b = SimplicialComplex::from_facets([[3], [4]]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.face_counts(), vec![1, 4, 4]);
        assert!(matches!(a.join(&a), Err(Error::VertexLabelCollision(_))));
    }

    #[test]
    fn connected_sum_of_simplex_boundaries() {
        let a = tetra_boundary();
        let b =
            SimplicialComplex::from_facets([[5, 6, 7], [5, 6, 8], [5, 7, 8], [6, 7, 8]]).unwrap();
        let bij: Vec<(Label, Label)> = vec![
            (5.into(), 1.into()),
            (6.into(), 2.into()),
            (7.into(), 3.into()),
        ];
        let s = a
            .connected_sum(&Face::of([1, 2, 3]), &b, &Face::of([5, 6, 7]), &bij)
            .unwrap();
        assert_eq!(s.n_vertices(), 5);
        assert_eq!(s.n_facets(), 6);
        let bad = &bij[..2];
        assert!(matches!(
            a.connected_sum(&Face::of([1, 2, 3]), &b, &Face::of([5, 6, 7]), bad),
            Err(Error::BijectionArityMismatch(_))
        ));
        assert!(matches!(
            a.connected_sum(&Face::of([1, 2]), &b, &Face::of([5, 6, 7]), &bij),
            Err(Error::NotAFacet(_))
        ));
    }

    #[test]
    fn handle_on_adjacent_facets_fails() {
        let k = tetra_boundary();
        let err = k
            .handle_addition(
                &Face::of([1, 2, 3]),
                &Face::of([2, 3, 4]),
                &[
                    (1.into(), 4.into()),
                    (2.into(), 2.into()),
                    (3.into(), 3.into()),
                ],
            )
            .unwrap_err();
        assert!(matches!(err, Error::AdmissibilityViolation(_)));
    }

    #[test]
    fn neighborliness_and_induced() {
        let k = tetra_boundary();
        assert!(k.is_i_neighborly(2));
        assert!(k.is_i_neighborly(3));
        assert!(!k.is_i_neighborly(4));
        assert!(k.nonedges().is_empty());
        let sub = k.vertex_induced_subcomplex(&[1.into(), 2.into(), 3.into()]);
        assert_eq!(sub, SimplicialComplex::simplex([1, 2, 3]).unwrap());
        assert_eq!(k.vertex_induced_subcomplex(k.labels()), k);
    }

    #[test]
    fn subset_helper() {
        assert!(is_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_subset(&[1, 4], &[0, 1, 2, 3]));
        assert!(is_subset(&[], &[0]));
    }
}
