use std::collections::HashSet;

use itertools::Itertools;

use super::bistellar::BistellarMove;
use super::movelog::{f0_f1, MoveLog, Operation};
use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};
use crate::scalar::binom;

/// `(x - 1 + k) mod n + 1`, on labels `1..=n`.
fn shift(x: i64, k: i64, n: i64) -> i64 {
    (x - 1 + k).rem_euclid(n) + 1
}

/// The vertex-transitive triangulation of `S^1 × S^{2m-1}` on `n` vertices:
/// the `Z_n`-orbits of the facets whose consecutive differences are a
/// permutation of `(1, …, 1, 2)` (length `2m`).
pub fn kuhnel_lassmann(n: usize, m: usize) -> Result<SimplicialComplex> {
    if m < 2 || n < 4 * m + 3 {
        return Err(Error::ArgumentOutOfRange(format!(
            "need m >= 2 and n >= 4m + 3, got n = {n}, m = {m}"
        )));
    }
    let n = n as i64;
    let mut facets: HashSet<Face> = HashSet::new();
    for pos in 0..2 * m {
        for x in 1..=n {
            let mut v = vec![x];
            let mut cur = x;
            for j in 0..2 * m {
                cur = shift(cur, if j == pos { 2 } else { 1 }, n);
                v.push(cur);
            }
            facets.insert(Face::of(v));
        }
    }
    let mut facets: Vec<Face> = facets.into_iter().collect();
    facets.sort();
    SimplicialComplex::from_faces(&facets)
}

/// Invariance under `x ↦ x + 1` and `x ↦ -x` on integer labels `1..=n`.
pub fn has_dihedral_symmetry(k: &SimplicialComplex) -> bool {
    let n = k.n_vertices() as i64;
    let expected: Vec<Label> = (1..=n).map(Label::Int).collect();
    if k.labels() != expected.as_slice() {
        return false;
    }
    let facets: HashSet<Face> = k.facets().into_iter().collect();
    let maps: [&dyn Fn(i64) -> i64; 2] = [&|x| shift(x, 1, n), &|x| shift(0, -x, n)];
    maps.iter().all(|g| {
        facets.iter().all(|f| {
            let img = Face::of(f.vertices().iter().map(|l| match l {
                Label::Int(x) => g(*x),
                Label::Str(_) => unreachable!("labels checked above"),
            }));
            facets.contains(&img)
        })
    })
}

/// Existence of a triangulation of `S^1 × S^{2m-1}` with `n` vertices and `e`
/// edges; the second flag says whether a dihedral vertex-transitive one exists.
pub fn kl_edge_feasibility(n: usize, m: usize, e: usize) -> (bool, bool) {
    let ok = m >= 2 && n >= 4 * m + 3 && e >= (2 * m + 1) * n && (e as i64) <= binom(n as i64, 2);
    (ok, ok && e.is_multiple_of(n))
}

/// The 1-moves of the fill, in order: by difference `δ = 2m+2, …, ⌊n/2⌋`, and
/// within a group `x = 1, …, n` (only `x <= n/2` when `δ = n/2`). The move for
/// `(x, x+δ)` has `F = {x+1..x+m} ∪ {x+δ-m..x+δ-1}`, `G = {x, x+δ}`.
pub fn fill_schedule(n: usize, m: usize) -> Vec<BistellarMove> {
    let (n, m) = (n as i64, m as i64);
    let mut out = Vec::new();
    for delta in 2 * m + 2..=n / 2 {
        let count = if 2 * delta == n { n / 2 } else { n };
        for x in 1..=count {
            let f = Face::of((1..=m).chain(delta - m..delta).map(|k| shift(x, k, n)));
            let g = Face::of([x, shift(x, delta, n)]);
            out.push(BistellarMove::new(f, g));
        }
    }
    out
}

/// Run the fill on `kuhnel_lassmann(n, m)` until the complex has `target_edges`
/// edges. Each move adds one edge. `m >= 3` is experimental.
pub fn kl_fill(n: usize, m: usize, target_edges: usize) -> Result<(SimplicialComplex, MoveLog)> {
    let lo = (2 * m + 1) * n;
    let hi = binom(n as i64, 2) as usize;
    if m < 2 || n < 4 * m + 3 || target_edges < lo || target_edges > hi {
        return Err(Error::TargetOutOfRange(format!(
            "edge target {target_edges} outside [{lo}, {hi}] for n = {n}, m = {m}"
        )));
    }
    let mut k = kuhnel_lassmann(n, m)?;
    let mut log = MoveLog::new();
    for (step, mv) in fill_schedule(n, m)
        .into_iter()
        .take(target_edges - lo)
        .enumerate()
    {
        let op = Operation::Bistellar {
            f: mv.f.clone(),
            g: mv.g.clone(),
        };
        k = op.record(&k, &mut log).map_err(|e| {
            Error::ScheduleBlocked(format!(
                "step {step}, F = {}, G = {}: {e}; complex has (f0, f1) = {:?}",
                mv.f,
                mv.g,
                f0_f1(&k)
            ))
        })?;
    }
    Ok((k, log))
}

pub fn s1xs3_fill(n: usize, target_edges: usize) -> Result<(SimplicialComplex, MoveLog)> {
    kl_fill(n, 2, target_edges)
}

/// Nonedges of `kuhnel_lassmann(n, m)` predicted by cyclic distance `>= 2m+2`.
pub fn kl_predicted_nonedges(n: usize, m: usize) -> Vec<(Label, Label)> {
    let n = n as i64;
    (1..=n)
        .tuple_combinations()
        .filter(|&(a, b)| {
            let dist = (b - a).min(n - (b - a));
            dist >= 2 * m as i64 + 2
        })
        .map(|(a, b)| (Label::Int(a), Label::Int(b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{g_vector, h_vector};

    #[test]
    fn kl_basic_counts() {
        let k = kuhnel_lassmann(11, 2).unwrap();
        assert_eq!(k.n_vertices(), 11);
        assert_eq!(f0_f1(&k), (11, 55));
        assert!(k.nonedges().is_empty());
        for n in 12..=16 {
            let k = kuhnel_lassmann(n, 2).unwrap();
            assert_eq!(k.n_facets(), 4 * n);
            assert_eq!(f0_f1(&k).1, 5 * n);
            assert_eq!(g_vector(&k).g(2), 15);
            assert_eq!(h_vector(&k).h(2), n as i64 + 10);
            assert_eq!(k.nonedges(), kl_predicted_nonedges(n, 2));
            assert!(has_dihedral_symmetry(&k));
        }
        assert!(kuhnel_lassmann(10, 2).is_err());
        assert!(kuhnel_lassmann(15, 1).is_err());
        let k = kuhnel_lassmann(16, 3).unwrap();
        assert_eq!(f0_f1(&k).1, 7 * 16);
    }

    #[test]
    fn fill_reaches_targets() {
        let (k, log) = s1xs3_fill(14, 84).unwrap();
        assert_eq!(log.len(), 14);
        assert_eq!(f0_f1(&k).1, 84);
        assert!(has_dihedral_symmetry(&k));
        let (k, _) = s1xs3_fill(14, 91).unwrap();
        assert!(k.nonedges().is_empty());
        let (k, log) = s1xs3_fill(13, 65).unwrap();
        assert!(log.is_empty());
        assert_eq!(k, kuhnel_lassmann(13, 2).unwrap());
        assert!(matches!(
            s1xs3_fill(14, 98),
            Err(Error::TargetOutOfRange(_))
        ));
        assert!(matches!(
            s1xs3_fill(14, 69),
            Err(Error::TargetOutOfRange(_))
        ));
        let (k, _) = kl_fill(18, 3, 153).unwrap();
        assert!(k.nonedges().is_empty());
    }

    #[test]
    fn feasibility_arithmetic() {
        assert_eq!(kl_edge_feasibility(14, 2, 70), (true, true));
        assert_eq!(kl_edge_feasibility(14, 2, 71), (true, false));
        assert_eq!(kl_edge_feasibility(14, 2, 69), (false, false));
        assert_eq!(kl_edge_feasibility(10, 2, 45), (false, false));
    }
}
