use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bistellar::BistellarMove;
use super::catalog::{cp2_complex, s2xs2_after_moves, s2xs2_moves};
use super::kl::s1xs3_fill;
use super::movelog::{MoveLog, Operation};
use super::tree::{find_spanning_tree_in_link, fresh_label, order_check, SimpleTree};
use crate::complex::{Face, Label, SimplicialComplex};
use crate::enumeration::h_vector;
use crate::error::{Error, Result};
use crate::homology::manifold_report;
use crate::scalar::{binom, FieldSpec};

/// Spaces with a known characterization of `(g_1, g_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    S1xS3,
    CP2,
    K3,
    S2xS2Sum2,
    /// Pairs `(h_1, h_2)` rather than `(g_1, g_2)`.
    S3xS3Pairs,
}

impl Space {
    pub const ALL: [Space; 5] = [
        Space::S1xS3,
        Space::CP2,
        Space::K3,
        Space::S2xS2Sum2,
        Space::S3xS3Pairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Space::S1xS3 => "s1xs3",
            Space::CP2 => "cp2",
            Space::K3 => "k3",
            Space::S2xS2Sum2 => "s2xs2_sum2",
            Space::S3xS3Pairs => "s3xs3_pairs",
        }
    }

    /// Smallest admissible `g_2` (for `S3xS3Pairs`, of `h_2 - h_1`).
    pub fn g2_floor(self) -> i64 {
        match self {
            Space::S1xS3 | Space::S3xS3Pairs => 15,
            Space::CP2 => 6,
            Space::K3 => 55,
            Space::S2xS2Sum2 => 18,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space> {
        let key: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        match key.as_str() {
            "s1xs3" => Ok(Space::S1xS3),
            "cp2" => Ok(Space::CP2),
            "k3" => Ok(Space::K3),
            "s2xs2sum2" | "s2xs2sum" | "s2xs22" => Ok(Space::S2xS2Sum2),
            "s3xs3" | "s3xs3pairs" => Ok(Space::S3xS3Pairs),
            _ => Err(Error::UnknownSpace(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub space: Space,
    pub feasible: bool,
    /// The inequality that was evaluated, with the numbers substituted.
    pub bound: String,
}

/// Evaluate the characterization inequality `floor <= g_2 <= C(g_1 + 1, 2)`;
/// for `S3xS3Pairs` the arguments are `(a, b) = (h_1, h_2)` and the test is
/// `15 <= b - a <= C(a, 2)`.
pub fn feasibility(space: Space, g1: i64, g2: i64) -> Feasibility {
    let lo = space.g2_floor();
    let (mid, hi, label) = match space {
        Space::S3xS3Pairs => (
            g2 - g1,
            binom(g1, 2),
            format!("h_2 - h_1 = {} - {}", g2, g1),
        ),
        _ => (g2, binom(g1 + 1, 2), "g_2".to_string()),
    };
    let feasible = g1 >= 0 && lo <= mid && mid <= hi;
    let top = match space {
        Space::S3xS3Pairs => format!("C({g1}, 2) = {hi}"),
        _ => format!("C({}, 2) = {hi}", g1 + 1),
    };
    Feasibility {
        space,
        feasible,
        bound: format!("{lo} <= {label} = {mid} <= {top}"),
    }
}

/// The componentwise-minimum h-vector of a triangulated `S^3 × S^3`.
pub const S3XS3_MIN_H: [i64; 8] = [1, 6, 21, 56, 126, -21, 20, -1];

/// Lengths `j_i` of the successive retriangulated trees taking `(h_1, h_2)` to
/// `(a, b)`: as many full spanning trees as fit, then one partial tree, then
/// single facets.
pub fn plan_g_pair(h1: i64, h2: i64, a: i64, b: i64) -> Result<Vec<usize>> {
    if a < h1 || b - a < h2 - h1 || b > binom(a + 1, 2) {
        return Err(Error::TargetInfeasible(format!(
            "(a, b) = ({a}, {b}) needs a >= {h1} and {} <= b <= {}",
            h2 - h1 + a,
            binom(a + 1, 2)
        )));
    }
    let s = (a - h1) as usize;
    let mut budget = b - h2;
    let mut plan = Vec::with_capacity(s);
    let mut full = true;
    for i in 0..s {
        let remaining_after = (s - i - 1) as i64;
        let len = if full {
            let full_len = h1 + i as i64 + 1;
            (budget - remaining_after).min(full_len)
        } else {
            1
        };
        if len < h1 + i as i64 + 1 {
            full = false;
        }
        plan.push(len as usize);
        budget -= len;
    }
    debug_assert_eq!(budget, 0);
    Ok(plan)
}

/// Boundary cycle of a 2-ball given by triangles, as a closed vertex sequence
/// starting from its least vertex.
fn boundary_cycle(triangles: &[Face]) -> Result<Vec<Label>> {
    let mut count: BTreeMap<(Label, Label), usize> = BTreeMap::new();
    for t in triangles {
        let v = t.vertices();
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            *count.entry((v[x].clone(), v[y].clone())).or_insert(0) += 1;
        }
    }
    let mut adj: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
    for ((x, y), c) in count {
        if c == 1 {
            adj.entry(x.clone()).or_default().insert(y.clone());
            adj.entry(y).or_default().insert(x);
        }
    }
    let bad =
        || Error::PreconditionFailed("tree boundary in the link is not a single cycle".into());
    let start = adj.keys().next().cloned().ok_or_else(bad)?;
    let mut cycle = vec![start.clone()];
    let mut prev: Option<Label> = None;
    let mut cur = start.clone();
    loop {
        let nb = adj.get(&cur).ok_or_else(bad)?;
        if nb.len() != 2 {
            return Err(bad());
        }
        let next = nb
            .iter()
            .find(|v| Some(*v) != prev.as_ref())
            .cloned()
            .ok_or_else(bad)?;
        if next == start {
            break;
        }
        prev = Some(cur);
        cur = next;
        cycle.push(cur.clone());
        if cycle.len() > adj.len() {
            return Err(bad());
        }
    }
    if cycle.len() != adj.len() {
        return Err(bad());
    }
    Ok(cycle)
}

/// Realize `(h_1, h_2) = (a, b)` from a 2-neighborly closed homology manifold
/// `k` and a spanning simple tree all of whose facets contain `rho`
/// (`|rho| = d - 3`). Returns the complex and the log of retriangulations.
pub fn realize_g_pair(
    k: &SimplicialComplex,
    tree: &SimpleTree,
    rho: &Face,
    a: i64,
    b: i64,
) -> Result<(SimplicialComplex, MoveLog)> {
    let d = k.d();
    let pre = |m: String| Error::PreconditionFailed(m);
    if d < 4 || rho.len() + 3 != d {
        return Err(pre(format!(
            "need d >= 4 and |rho| = d - 3, got d = {d}, |rho| = {}",
            rho.len()
        )));
    }
    let h = h_vector(k);
    let plan = plan_g_pair(h.h(1), h.h(2), a, b)?;
    if !k.is_i_neighborly(2) {
        return Err(pre("complex is not 2-neighborly".into()));
    }
    let report = manifold_report(k, FieldSpec::Rationals)?;
    if !report.is_homology_manifold || !report.boundary.is_empty() {
        return Err(pre("not a homology manifold without boundary".into()));
    }
    for f in &tree.facets {
        if !k.is_facet(f) {
            return Err(pre(format!("tree facet {f} is not a facet")));
        }
        if !rho.vertices().iter().all(|v| f.contains(v)) {
            return Err(pre(format!("tree facet {f} does not contain {rho}")));
        }
    }
    order_check(&tree.facets)?;
    if tree.natural_order.len() != k.n_vertices() {
        return Err(pre("tree does not span the complex".into()));
    }

    let mut k = k.clone();
    let mut log = MoveLog::new();
    // link-level triangles of the current spanning tree
    let mut link_tree: Vec<Face> = tree.facets.iter().map(|f| f.minus(rho)).collect();
    let mut cur_full: Vec<Face> = tree.facets.clone();
    for &len in &plan {
        let full_len = cur_full.len();
        if full_len == 0 {
            // after a partial tree only single facets remain
            debug_assert_eq!(len, 1);
            let facet = k.facets()[0].clone();
            let w = fresh_label(&k);
            let mv = BistellarMove::subdivide(facet, w);
            k = Operation::Bistellar { f: mv.f, g: mv.g }.record(&k, &mut log)?;
            continue;
        }
        let w = fresh_label(&k);
        let ball: Vec<Face> = cur_full[..len].to_vec();
        k = Operation::CentralRetriangulation {
            ball,
            vertex: w.clone(),
        }
        .record(&k, &mut log)?;
        if len == full_len {
            // the new tree is w ∗ (boundary cycle minus one edge), in lk rho
            let cycle = boundary_cycle(&link_tree)?;
            let wf = Face::of([w]);
            link_tree = cycle
                .windows(2)
                .map(|p| Face::of(p.iter().cloned()).union(&wf))
                .collect();
            cur_full = link_tree.iter().map(|t| t.union(rho)).collect();
            debug_assert!(order_check(&cur_full).is_ok());
        } else {
            cur_full.clear();
        }
    }
    Ok((k, log))
}

/// Search the codimension-three faces of a 2-neighborly `k` for one whose link
/// has a spanning simple 2-tree; faces are tried in lexicographic order.
pub fn find_machine_tree(k: &SimplicialComplex, budget: usize) -> Result<(Face, SimpleTree)> {
    let d = k.d();
    if d < 4 {
        return Err(Error::PreconditionFailed("need d >= 4".into()));
    }
    let mut faces = k.all_faces(d as isize - 4)?;
    faces.sort();
    for rho in faces {
        if let Ok(t) = find_spanning_tree_in_link(k, &rho, budget) {
            if t.natural_order.len() == k.n_vertices() {
                return Ok((rho, t));
            }
        }
    }
    Err(Error::NotFound(
        "no codimension-three face with a spanning simple 2-tree in its link".into(),
    ))
}

/// Realize `(g_1, g_2)` on a supplied 2-neighborly base complex.
pub fn realize_on(
    k: &SimplicialComplex,
    g1: i64,
    g2: i64,
    budget: usize,
) -> Result<(SimplicialComplex, MoveLog)> {
    let (rho, tree) = find_machine_tree(k, budget)?;
    realize_g_pair(k, &tree, &rho, g1 + 1, g2 + g1 + 1)
}

fn cp2_tree() -> (Face, SimpleTree) {
    let rho = Face::of([1, 2]);
    let facets: Vec<Face> = [[3, 4, 7], [3, 4, 5], [4, 5, 6], [5, 6, 8], [6, 8, 9]]
        .iter()
        .map(|t| Face::of(*t).union(&rho))
        .collect();
    (rho, order_check(&facets).expect("static data"))
}

fn s2xs2_tree() -> (Face, SimpleTree) {
    let rho = Face::of([1, 2]);
    let facets: Vec<Face> = [
        [3, 5, 10],
        [5, 7, 10],
        [7, 8, 10],
        [8, 9, 10],
        [8, 9, 12],
        [4, 9, 12],
        [4, 6, 9],
        [4, 11, 12],
    ]
    .iter()
    .map(|t| Face::of(*t).union(&rho))
    .collect();
    (rho, order_check(&facets).expect("static data"))
}

/// A triangulation of `space` with g-vector `(1, g1, g2)`, with its log of
/// moves from the starting complex (which is returned first).
pub fn realize_space(
    space: Space,
    g1: i64,
    g2: i64,
) -> Result<(SimplicialComplex, SimplicialComplex, MoveLog)> {
    let fz = feasibility(space, g1, g2);
    if !fz.feasible {
        return Err(Error::TargetInfeasible(format!("{space}: {}", fz.bound)));
    }
    let (a, b) = (g1 + 1, g2 + g1 + 1);
    match space {
        Space::S1xS3 => {
            let n = (g1 + 6) as usize;
            let start = super::kl::kuhnel_lassmann(n, 2)?;
            let (k, log) = s1xs3_fill(n, 5 * n + g2 as usize - 15)?;
            Ok((start, k, log))
        }
        Space::CP2 => {
            let start = cp2_complex();
            let (rho, tree) = cp2_tree();
            let (k, log) = realize_g_pair(&start, &tree, &rho, a, b)?;
            Ok((start, k, log))
        }
        Space::S2xS2Sum2 if g2 <= 20 => {
            let start = super::catalog::s2xs2_complex();
            let mut k = start.clone();
            let mut log = MoveLog::new();
            for mv in s2xs2_moves().into_iter().take((g2 - 18) as usize) {
                k = Operation::Bistellar { f: mv.f, g: mv.g }.record(&k, &mut log)?;
            }
            for _ in 0..g1 - 6 {
                let facet = k.facets()[0].clone();
                let w = fresh_label(&k);
                k = Operation::Bistellar {
                    f: facet,
                    g: Face::of([w]),
                }
                .record(&k, &mut log)?;
            }
            Ok((start, k, log))
        }
        Space::S2xS2Sum2 => {
            let start = s2xs2_after_moves(3)?;
            let (rho, tree) = s2xs2_tree();
            let (k, log) = realize_g_pair(&start, &tree, &rho, a, b)?;
            Ok((start, k, log))
        }
        Space::K3 => Err(Error::PreconditionFailed(
            "no K3 triangulation is built in; supply a 2-neighborly one and use realize_on".into(),
        )),
        Space::S3xS3Pairs => Err(Error::PreconditionFailed(
            "no S3 x S3 triangulation is built in; supply a 2-neighborly one and use realize_on"
                .into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::g_vector;
    use crate::homology::betti;

    #[test]
    fn plans_sum_to_budget() {
        // h = (1, 4, 10, ...) as for the 9-vertex CP^2
        assert_eq!(plan_g_pair(4, 10, 4, 10).unwrap(), Vec::<usize>::new());
        assert_eq!(plan_g_pair(4, 10, 5, 15).unwrap(), vec![5]);
        assert_eq!(plan_g_pair(4, 10, 5, 12).unwrap(), vec![2]);
        assert_eq!(plan_g_pair(4, 10, 7, 28).unwrap(), vec![5, 6, 7]);
        assert_eq!(plan_g_pair(4, 10, 7, 25).unwrap(), vec![5, 6, 4]);
        assert_eq!(plan_g_pair(4, 10, 7, 20).unwrap(), vec![5, 4, 1]);
        assert_eq!(plan_g_pair(4, 10, 7, 13).unwrap(), vec![1, 1, 1]);
        assert!(matches!(
            plan_g_pair(4, 10, 7, 29),
            Err(Error::TargetInfeasible(_))
        ));
        assert!(matches!(
            plan_g_pair(4, 10, 7, 12),
            Err(Error::TargetInfeasible(_))
        ));
        assert!(matches!(
            plan_g_pair(4, 10, 3, 10),
            Err(Error::TargetInfeasible(_))
        ));
    }

    #[test]
    fn cp2_window() {
        let start = cp2_complex();
        let (rho, tree) = cp2_tree();
        let want = betti(&start, FieldSpec::Rationals);
        for (a, b) in [(4, 10), (5, 12), (5, 15), (6, 21), (6, 17), (7, 20)] {
            let (k, log) = realize_g_pair(&start, &tree, &rho, a, b).unwrap();
            let h = h_vector(&k);
            assert_eq!((h.h(1), h.h(2)), (a, b), "target ({a}, {b})");
            assert_eq!(betti(&k, FieldSpec::Rationals), want);
            assert_eq!(super::super::movelog::replay(&start, &log).unwrap(), k);
        }
    }

    #[test]
    fn spaces() {
        for (space, g1, g2) in [
            (Space::CP2, 5, 12),
            (Space::S2xS2Sum2, 7, 19),
            (Space::S2xS2Sum2, 8, 25),
            (Space::S1xS3, 7, 20),
        ] {
            let (_, k, _) = realize_space(space, g1, g2).unwrap();
            let g = g_vector(&k);
            assert_eq!((g.g(1), g.g(2)), (g1, g2), "{space}");
        }
        assert!(matches!(
            realize_space(Space::K3, 10, 55),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            realize_space(Space::CP2, 5, 5),
            Err(Error::TargetInfeasible(_))
        ));
    }

    #[test]
    fn feasibility_boundaries() {
        assert!(feasibility(Space::CP2, 3, 6).feasible);
        assert!(!feasibility(Space::CP2, 3, 5).feasible);
        assert!(feasibility(Space::K3, 10, 55).feasible);
        assert!(!feasibility(Space::K3, 10, 54).feasible);
        assert!(!feasibility(Space::S1xS3, 5, 14).feasible);
        assert!(feasibility(Space::S3xS3Pairs, 6, 21).feasible);
        assert!(!feasibility(Space::S3xS3Pairs, 6, 22).feasible);
        assert_eq!("CP2".parse::<Space>().unwrap(), Space::CP2);
        assert_eq!("s2xs2_sum2".parse::<Space>().unwrap(), Space::S2xS2Sum2);
        assert!(matches!(
            "rp2".parse::<Space>(),
            Err(Error::UnknownSpace(_))
        ));
    }
}
