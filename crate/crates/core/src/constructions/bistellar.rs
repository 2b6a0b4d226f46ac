use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Label, SimplicialComplex};
use crate::enumeration::h_vector;
use crate::error::{Error, Result};
use crate::homology::manifold_report;
use crate::scalar::FieldSpec;

/// Replace `F ∗ ∂G` by `∂F ∗ G`; an `(|G|-1)`-move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BistellarMove {
    pub f: Face,
    pub g: Face,
}

impl BistellarMove {
    pub fn new(f: Face, g: Face) -> Self {
        BistellarMove { f, g }
    }

    /// The 1-move removing the two facets `a`, `b` (sharing a ridge).
    pub fn from_facet_pair(a: &Face, b: &Face) -> Result<Self> {
        let f = Face::of(a.vertices().iter().filter(|v| b.contains(v)).cloned());
        if a.len() != b.len() || f.len() + 1 != a.len() {
            return Err(Error::IllegalMove(format!(
                "{a} and {b} do not share a ridge"
            )));
        }
        let g = a.minus(&f).union(&b.minus(&f));
        Ok(BistellarMove { f, g })
    }

    /// Subdivide the facet `facet` with the new vertex `v`.
    pub fn subdivide(facet: Face, v: Label) -> Self {
        BistellarMove {
            f: facet,
            g: Face::of([v]),
        }
    }

    /// `|G| - 1`.
    pub fn index(&self) -> usize {
        self.g.len() - 1
    }

    /// Facets removed: `F ∪ (G - g)` for `g ∈ G`.
    pub fn removed(&self) -> Vec<Face> {
        self.g
            .vertices()
            .iter()
            .map(|x| self.f.union(&self.g.minus(&Face::of([x.clone()]))))
            .collect()
    }

    /// Facets added: `(F - f) ∪ G` for `f ∈ F`.
    pub fn added(&self) -> Vec<Face> {
        self.f
            .vertices()
            .iter()
            .map(|x| self.f.minus(&Face::of([x.clone()])).union(&self.g))
            .collect()
    }
}

/// Checks that the subcomplex induced on `F ∪ G` is exactly `F ∗ ∂G`.
pub fn check_legal(k: &SimplicialComplex, mv: &BistellarMove) -> Result<()> {
    let d = k.d();
    if mv.f.is_empty() || mv.g.is_empty() || mv.f.len() + mv.g.len() != d + 1 {
        return Err(Error::IllegalMove(format!(
            "|F| + |G| = {} must equal d + 1 = {} with both nonempty",
            mv.f.len() + mv.g.len(),
            d + 1
        )));
    }
    if mv.f.vertices().iter().any(|v| mv.g.contains(v)) {
        return Err(Error::IllegalMove("F and G intersect".into()));
    }
    if mv.g.len() == 1 {
        if k.index_of(&mv.g.vertices()[0]).is_some() {
            return Err(Error::IllegalMove(format!(
                "subdivision vertex {} already present",
                mv.g
            )));
        }
        if !k.is_facet(&mv.f) {
            return Err(Error::IllegalMove(format!("{} is not a facet", mv.f)));
        }
        return Ok(());
    }
    for facet in mv.removed() {
        if !k.is_facet(&facet) {
            return Err(Error::IllegalMove(format!(
                "F ∗ ∂G facet {facet} is missing"
            )));
        }
    }
    if k.contains(&mv.g) {
        return Err(Error::IllegalMove(format!(
            "G = {} is already a face, so F ∪ G induces more than F ∗ ∂G",
            mv.g
        )));
    }
    Ok(())
}

/// Apply a legal move. See [`h_effect_holds`] for the effect on `h`.
pub fn apply_bistellar(k: &SimplicialComplex, mv: &BistellarMove) -> Result<SimplicialComplex> {
    check_legal(k, mv)?;
    let removed: HashSet<Face> = mv.removed().into_iter().collect();
    let mut facets: Vec<Face> = k
        .facets()
        .into_iter()
        .filter(|f| !removed.contains(f))
        .collect();
    facets.extend(mv.added());
    let out = SimplicialComplex::from_faces(&facets)?;
    debug_assert!(
        h_effect_holds(k, &out, mv.index()),
        "bistellar h-effect violated"
    );
    Ok(out)
}

/// `h_i' - h_i` is `+1` for `m < i < d - m`, `-1` for `d - m <= i <= m`, and 0 otherwise.
pub fn h_effect_holds(before: &SimplicialComplex, after: &SimplicialComplex, m: usize) -> bool {
    let (h0, h1) = (h_vector(before), h_vector(after));
    let d = before.d();
    h0.d() == h1.d()
        && (0..=d).all(|i| {
            let want = i64::from(m < i && i + m < d) - i64::from(d <= i + m && i <= m);
            h1.h(i as isize) - h0.h(i as isize) == want
        })
}

/// `∂Δ^d` on vertices `1..=d+1`.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex> {
    if d < 1 {
        return Err(Error::ArgumentOutOfRange(
            "simplex boundary needs d >= 1".into(),
        ));
    }
    let n = d as i64 + 1;
    SimplicialComplex::from_facets((1..=n).map(|s| (1..=n).filter(move |&v| v != s)))
}

/// Stacked `(d-1)`-sphere on vertices `1..=n`: vertex `v > d+1` subdivides the
/// lexicographically first facet containing `v - 1`.
pub fn stacked_sphere(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 1 || n < d + 1 {
        return Err(Error::ArgumentOutOfRange(format!(
            "stacked sphere needs n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    let mut k = simplex_boundary(d)?;
    for v in d + 2..=n {
        let prev = Label::Int(v as i64 - 1);
        let facet = k
            .facets()
            .into_iter()
            .find(|f| f.contains(&prev))
            .expect("previous vertex lies in a facet");
        k = apply_bistellar(&k, &BistellarMove::subdivide(facet, Label::Int(v as i64)))?;
    }
    Ok(k)
}

fn require_closed_manifold(k: &SimplicialComplex, field: FieldSpec) -> Result<()> {
    let r = manifold_report(k, field).map_err(|e| Error::HypothesisNotMet(e.to_string()))?;
    if !r.is_homology_manifold || !r.boundary.is_empty() {
        return Err(Error::HypothesisNotMet(
            "not a homology manifold without boundary".into(),
        ));
    }
    Ok(())
}

/// Stacked-sphere test for a homology manifold without boundary: `h_1 = h_2`
/// when `d >= 4`; in lower dimensions by peeling off vertices of degree `d`.
pub fn is_stacked_sphere(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if k.d() >= 2 && k.is_connected() {
        require_closed_manifold(k, field)?;
    } else if k.d() >= 2 {
        return Err(Error::HypothesisNotMet("not connected".into()));
    }
    if k.d() >= 4 {
        let h = h_vector(k);
        return Ok(h.h(1) == h.h(2));
    }
    Ok(peels_to_simplex_boundary(k))
}

/// Repeatedly undo facet subdivisions (vertices whose link is `∂G` with `G` not a face).
fn peels_to_simplex_boundary(k: &SimplicialComplex) -> bool {
    let d = k.d();
    let mut k = k.clone();
    loop {
        if k.n_vertices() == d + 1 {
            return k.n_facets() == d + 1;
        }
        let mut progressed = false;
        for v in k.labels().to_vec() {
            let star: Vec<Face> = k.facets().into_iter().filter(|f| f.contains(&v)).collect();
            if star.len() != d {
                continue;
            }
            let g = Face::of(
                star.iter()
                    .flat_map(|f| f.vertices().iter().cloned())
                    .filter(|x| *x != v)
                    .collect::<std::collections::BTreeSet<_>>(),
            );
            if g.len() != d || k.contains(&g) {
                continue;
            }
            let mv = BistellarMove::new(Face::of([v.clone()]), g);
            if let Ok(next) = apply_bistellar(&k, &mv) {
                k = next;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return false;
        }
    }
}

/// Every vertex link is a stacked sphere.
pub fn in_walkup_class(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    k.require_pure()?;
    for v in k.labels() {
        let lk = k.link(&Face::of([v.clone()]))?;
        if lk.d() >= 2 && !lk.is_connected() {
            return Err(Error::HypothesisNotMet(format!(
                "link of {v} is disconnected"
            )));
        }
        if lk.d() >= 2 {
            require_closed_manifold(&lk, field).map_err(|_| {
                Error::HypothesisNotMet(format!(
                    "link of {v} is not a homology manifold without boundary"
                ))
            })?;
        }
        if !is_stacked_sphere(&lk, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{f_vector, phi};

    fn face(v: &[i64]) -> Face {
        Face::of(v.iter().copied())
    }

    #[test]
    fn subdivision_on_simplex_boundary() {
        let k = simplex_boundary(4).unwrap();
        let out = apply_bistellar(
            &k,
            &BistellarMove::subdivide(face(&[1, 2, 3, 4]), Label::Int(9)),
        )
        .unwrap();
        assert_eq!(h_vector(&out).entries(), &[1, 2, 2, 2, 1]);
        assert!(h_effect_holds(&k, &out, 0));
    }

    #[test]
    fn illegal_moves() {
        let k = simplex_boundary(3).unwrap();
        // G = {1,2} is an edge already
        let mv = BistellarMove::new(face(&[3, 4]), face(&[1, 2]));
        assert!(matches!(
            apply_bistellar(&k, &mv),
            Err(Error::IllegalMove(_))
        ));
        let mv = BistellarMove::new(face(&[1, 2, 3]), face(&[4]));
        assert!(matches!(
            apply_bistellar(&k, &mv),
            Err(Error::IllegalMove(_))
        ));
        let mv = BistellarMove::new(face(&[1, 2]), face(&[3]));
        assert!(matches!(
            apply_bistellar(&k, &mv),
            Err(Error::IllegalMove(_))
        ));
    }

    #[test]
    fn facet_pair_move() {
        let mv = BistellarMove::from_facet_pair(&face(&[1, 2, 3, 7, 10]), &face(&[2, 3, 5, 7, 10]))
            .unwrap();
        assert_eq!(mv.f, face(&[2, 3, 7, 10]));
        assert_eq!(mv.g, face(&[1, 5]));
        assert_eq!(mv.index(), 1);
        assert!(BistellarMove::from_facet_pair(&face(&[1, 2, 3]), &face(&[1, 4, 5])).is_err());
    }

    #[test]
    fn stacked_spheres() {
        assert_eq!(stacked_sphere(5, 4).unwrap(), simplex_boundary(4).unwrap());
        let k = stacked_sphere(10, 4).unwrap();
        let f = f_vector(&k);
        for i in 0..4 {
            assert_eq!(f.f(i), phi(10, 4, i as i64).unwrap());
        }
        let k = stacked_sphere(12, 5).unwrap();
        assert!(is_stacked_sphere(&k, FieldSpec::Rationals).unwrap());
        assert!(in_walkup_class(&k, FieldSpec::Rationals).unwrap());
        let h = h_vector(&k);
        assert!((1..4).all(|i| h.h(i) == h.h(1)));
    }

    #[test]
    fn octahedron_is_not_stacked() {
        let oct = SimplicialComplex::from_facets([
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 5],
            [1, 4, 6],
            [2, 3, 5],
            [2, 3, 6],
            [2, 4, 5],
            [2, 4, 6],
        ])
        .unwrap();
        assert!(!is_stacked_sphere(&oct, FieldSpec::Rationals).unwrap());
        assert!(is_stacked_sphere(&stacked_sphere(7, 3).unwrap(), FieldSpec::Rationals).unwrap());
    }
}
