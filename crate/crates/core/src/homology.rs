//! Reduced simplicial homology over a field and the link-based recognition
//! predicates built on it.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::scalar::{rank_over, FieldSpec, SparseColumn};

/// Reduced Betti numbers `β̃_{-1}, …, β̃_{d-1}` over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiVector {
    /// Entry `k` is `β̃_{k-1}`.
    pub reduced: Vec<i64>,
    pub field: FieldSpec,
}

impl BettiVector {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> i64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.reduced.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Reduced Betti numbers of the `(dim)`-sphere.
    pub fn sphere(dim: isize, field: FieldSpec) -> Self {
        let mut reduced = vec![0; (dim + 2) as usize];
        reduced[(dim + 1) as usize] = 1;
        BettiVector { reduced, field }
    }

    /// Build from `β̃_{-1}..β̃_{top}` given as a plain list starting at `β̃_0`.
    pub fn from_reduced(from_zero: &[i64], field: FieldSpec) -> Self {
        let mut reduced = vec![0];
        reduced.extend_from_slice(from_zero);
        BettiVector { reduced, field }
    }

    /// `Σ (-1)^i β̃_i`, which equals `χ - 1`.
    pub fn reduced_euler(&self) -> i64 {
        (0..self.reduced.len())
            .map(|k| {
                let i = k as isize - 1;
                if i.rem_euclid(2) == 0 {
                    self.reduced[k]
                } else {
                    -self.reduced[k]
                }
            })
            .sum()
    }

    pub fn is_sphere_like(&self, dim: isize) -> bool {
        (0..self.reduced.len()).all(|k| self.reduced[k] == i64::from(k as isize - 1 == dim))
            && dim + 1 < self.reduced.len() as isize
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced.iter().all(|&b| b == 0)
    }
}

fn validate(field: FieldSpec) {
    assert!(
        field.is_valid(),
        "field {field} is not a supported prime field"
    );
}

/// Signed boundary matrix from faces of size `s` to faces of size `s - 1`.
fn boundary_columns(cols: &[Vec<u32>], rows: &HashMap<&[u32], usize>) -> Vec<SparseColumn<i64>> {
    cols.iter()
        .map(|f| {
            let mut col: SparseColumn<i64> = (0..f.len())
                .map(|j| {
                    let mut sub = f.clone();
                    sub.remove(j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (rows[sub.as_slice()], sign)
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

/// Reduced Betti numbers by exact rank of the boundary maps.
pub fn betti(k: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    validate(field);
    let d = k.d();
    let faces: Vec<Vec<Vec<u32>>> = (0..=d).map(|s| k.faces_of_size(s)).collect();
    // ranks[s] = rank of the boundary map out of size-s chains
    let mut ranks = vec![0usize; d + 2];
    for s in 1..=d {
        let rows: HashMap<&[u32], usize> = faces[s - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        ranks[s] = rank_over(field, boundary_columns(&faces[s], &rows));
    }
    let reduced = (0..=d)
        .map(|s| faces[s].len() as i64 - ranks[s] as i64 - ranks[s + 1] as i64)
        .collect();
    BettiVector { reduced, field }
}

/// Homology type of a link relevant to the manifold tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LinkType {
    Sphere,
    Ball,
    Other,
}

/// Classify `lk(ids)` in a pure complex with facet size `d`.
fn link_type(k: &SimplicialComplex, ids: &[u32], field: FieldSpec) -> LinkType {
    let d = k.d();
    let dim = d as isize - ids.len() as isize - 1;
    match dim {
        -1 => LinkType::Sphere,
        0 => match k.facets_containing(ids).count() {
            1 => LinkType::Ball,
            2 => LinkType::Sphere,
            _ => LinkType::Other,
        },
        1 => graph_link_type(&k.link_ids(ids)),
        _ => {
            let lk = k.link_ids(ids);
            let b = betti(&lk, field);
            if b.is_sphere_like(dim) {
                LinkType::Sphere
            } else if b.is_acyclic() {
                LinkType::Ball
            } else {
                LinkType::Other
            }
        }
    }
}

/// A 1-dimensional link is a sphere when it is a cycle and a ball when it is
/// a path (homology only sees connectivity and cycle rank).
fn graph_link_type(lk: &SimplicialComplex) -> LinkType {
    let v = lk.n_vertices() as i64;
    let e = lk.n_facets() as i64;
    if !lk.is_pure() || !lk.is_connected() {
        return LinkType::Other;
    }
    match e - v + 1 {
        0 => LinkType::Ball,
        1 => LinkType::Sphere,
        _ => LinkType::Other,
    }
}

fn nonempty_faces(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    (1..=k.d()).flat_map(|s| k.faces_of_size(s)).collect()
}

/// Homology `(d-1)`-sphere: pure, sphere homology, and every link a sphere.
pub fn is_homology_sphere(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    k.require_pure()?;
    if !betti(k, field).is_sphere_like(k.dim()) {
        return Ok(false);
    }
    Ok(nonempty_faces(k)
        .iter()
        .all(|f| link_type(k, f, field) == LinkType::Sphere))
}

/// Homology `(d-1)`-ball: acyclic, links spheres or balls, boundary a homology sphere.
pub fn is_homology_ball(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    k.require_pure()?;
    if k.d() == 0 || !betti(k, field).is_acyclic() {
        return Ok(false);
    }
    if nonempty_faces(k)
        .iter()
        .any(|f| link_type(k, f, field) == LinkType::Other)
    {
        return Ok(false);
    }
    let ridges = k.boundary_ridges();
    if k.d() == 1 {
        return Ok(k.n_vertices() == 1);
    }
    if ridges.is_empty() {
        return Ok(false);
    }
    let boundary = SimplicialComplex::from_faces(&ridges)?;
    is_homology_sphere(&boundary, field)
}

/// Outcome of the link test for homology manifolds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldReport {
    pub is_homology_manifold: bool,
    /// Facets of the boundary complex; empty when there is no boundary.
    pub boundary: Vec<Face>,
    pub orientable: bool,
    /// No boundary and orientable.
    pub closed: bool,
    /// A face whose link is neither a homology sphere nor a ball.
    pub witness: Option<Face>,
    pub field: FieldSpec,
}

impl ManifoldReport {
    pub fn boundary_complex(&self) -> Option<SimplicialComplex> {
        (!self.boundary.is_empty())
            .then(|| SimplicialComplex::from_faces(&self.boundary).expect("nonempty"))
    }

    pub fn is_closed_manifold(&self) -> bool {
        self.is_homology_manifold && self.closed
    }
}

/// Check every nonempty face link, extract the boundary and test orientability.
pub fn manifold_report(k: &SimplicialComplex, field: FieldSpec) -> Result<ManifoldReport> {
    validate(field);
    k.require_pure()?;
    if !k.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut witness = None;
    for f in nonempty_faces(k) {
        if link_type(k, &f, field) == LinkType::Other {
            witness = Some(k.face_of(&f));
            break;
        }
    }
    let boundary = k.boundary_ridges();
    let orientable = relative_top_rank(k, field) == 1;
    Ok(ManifoldReport {
        is_homology_manifold: witness.is_none(),
        closed: boundary.is_empty() && orientable,
        boundary,
        orientable,
        witness,
        field,
    })
}

/// `dim H_{d-1}(K, ∂K)` where ∂K is spanned by ridges in exactly one facet.
fn relative_top_rank(k: &SimplicialComplex, field: FieldSpec) -> i64 {
    let d = k.d();
    if d == 0 {
        return 0;
    }
    let mut count: HashMap<Vec<u32>, usize> = HashMap::new();
    for f in k.facet_ids() {
        for r in f.iter().copied().combinations(d - 1) {
            *count.entry(r).or_default() += 1;
        }
    }
    let mut interior: Vec<&Vec<u32>> = count
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(r, _)| r)
        .collect();
    interior.sort();
    let rows: HashMap<&[u32], usize> = interior
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_slice(), i))
        .collect();
    let cols: Vec<SparseColumn<i64>> = k
        .facet_ids()
        .iter()
        .map(|f| {
            let mut col: SparseColumn<i64> = (0..f.len())
                .filter_map(|j| {
                    let mut sub = f.clone();
                    sub.remove(j);
                    rows.get(sub.as_slice())
                        .map(|&r| (r, if j % 2 == 0 { 1 } else { -1 }))
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    let n = cols.len() as i64;
    n - rank_over(field, cols) as i64
}

/// χ of the link of every nonempty face, keyed by face.
fn link_euler_characteristics(k: &SimplicialComplex) -> HashMap<Vec<u32>, i64> {
    let mut all: Vec<Vec<u32>> = nonempty_faces(k);
    all.sort();
    let mut chi: HashMap<Vec<u32>, i64> = all.iter().map(|f| (f.clone(), 0)).collect();
    for tau in &all {
        // tau contributes (-1)^{|tau|-|rho|-1} to χ(lk rho) for each nonempty proper subset rho
        let n = tau.len();
        for mask in 1u32..(1 << n) - 1 {
            let rho: Vec<u32> = (0..n)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| tau[j])
                .collect();
            let sign = if (n - rho.len() - 1).is_multiple_of(2) {
                1
            } else {
                -1
            };
            *chi.get_mut(&rho).expect("subface present") += sign;
        }
    }
    chi
}

/// χ(S^k), with χ(S^{-1}) = 0.
pub fn sphere_euler(k: isize) -> i64 {
    1 + if k.rem_euclid(2) == 0 { 1 } else { -1 }
}

/// Every nonempty face link has the Euler characteristic of a sphere.
pub fn is_semi_eulerian(k: &SimplicialComplex) -> Result<bool> {
    k.require_pure()?;
    let d = k.d() as isize;
    Ok(link_euler_characteristics(k)
        .iter()
        .all(|(f, &c)| c == sphere_euler(d - f.len() as isize - 1)))
}

/// Semi-Eulerian with `χ(K) = χ(S^{d-1})`.
pub fn is_eulerian(k: &SimplicialComplex) -> Result<bool> {
    Ok(is_semi_eulerian(k)? && k.euler_characteristic() == sphere_euler(k.dim()))
}
