use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Label, SimplicialComplex};
use crate::enumeration::h_vector;
use crate::error::{Error, Result};
use crate::homology::{is_homology_ball, is_homology_sphere};
use crate::scalar::FieldSpec;

/// Facets `σ_1, …, σ_m` such that each `σ_i` (`i >= 2`) meets the earlier
/// union in a single codimension-one face on its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleTree {
    pub facets: Vec<Face>,
    /// Natural vertex ordering: `σ_1`'s vertices, then each new vertex in turn.
    pub natural_order: Vec<Label>,
}

impl SimpleTree {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// The first `j` facets, again a simple tree.
    pub fn prefix(&self, j: usize) -> SimpleTree {
        let j = j.min(self.len());
        let d = self.facets.first().map_or(0, Face::len);
        SimpleTree {
            facets: self.facets[..j].to_vec(),
            natural_order: self.natural_order
                [..(d + j).saturating_sub(1).min(self.natural_order.len())]
                .to_vec(),
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_faces(&self.facets)
    }

    /// Ridges in exactly one facet; a stacked sphere.
    pub fn boundary(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_faces(&boundary_ridges(&self.facets))
    }

    /// Vertices contained in every facet.
    pub fn core(&self) -> Face {
        let mut it = self.facets.iter();
        let first = it.next().cloned().unwrap_or_else(Face::empty);
        it.fold(first, |acc, f| {
            Face::of(acc.vertices().iter().filter(|v| f.contains(v)).cloned())
        })
    }

    /// Join every facet with `extra` (the tree `extra ∗ T`).
    pub fn cone(&self, extra: &Face) -> SimpleTree {
        let mut natural_order: Vec<Label> = extra.vertices().to_vec();
        natural_order.extend(self.natural_order.iter().cloned());
        SimpleTree {
            facets: self.facets.iter().map(|f| f.union(extra)).collect(),
            natural_order,
        }
    }
}

pub(crate) fn boundary_ridges(facets: &[Face]) -> Vec<Face> {
    let mut count: HashMap<Face, usize> = HashMap::new();
    for f in facets {
        for v in f.vertices() {
            *count.entry(f.minus(&Face::of([v.clone()]))).or_insert(0) += 1;
        }
    }
    let mut out: Vec<Face> = count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(r, _)| r)
        .collect();
    out.sort();
    out
}

/// Check the simple-tree conditions for an ordered facet list of `host`.
pub fn validate_simple_tree(host: &SimplicialComplex, facets: &[Face]) -> Result<SimpleTree> {
    for f in facets {
        if !host.is_facet(f) {
            return Err(Error::NotAFacet(f.to_string()));
        }
    }
    order_check(facets)
}

/// The simple-tree conditions alone, for facets not tied to a host.
pub fn order_check(facets: &[Face]) -> Result<SimpleTree> {
    let Some(first) = facets.first() else {
        return Err(Error::NotSimpleTree {
            index: 0,
            reason: "empty facet list".into(),
        });
    };
    let d = first.len();
    let mut seen: HashSet<Label> = first.vertices().iter().cloned().collect();
    let mut natural_order = first.vertices().to_vec();
    let mut ridge_count: HashMap<Face, usize> = HashMap::new();
    let add_ridges = |f: &Face, rc: &mut HashMap<Face, usize>| {
        for v in f.vertices() {
            *rc.entry(f.minus(&Face::of([v.clone()]))).or_insert(0) += 1;
        }
    };
    add_ridges(first, &mut ridge_count);
    for (i, f) in facets.iter().enumerate().skip(1) {
        let fail = |reason: String| Error::NotSimpleTree { index: i, reason };
        if f.len() != d {
            return Err(fail(format!("{f} has {} vertices, expected {d}", f.len())));
        }
        let new: Vec<&Label> = f.vertices().iter().filter(|v| !seen.contains(v)).collect();
        if new.len() != 1 {
            return Err(fail(format!(
                "{f} introduces {} new vertices, expected 1",
                new.len()
            )));
        }
        let v = new[0].clone();
        let ridge = f.minus(&Face::of([v.clone()]));
        match ridge_count.get(&ridge) {
            Some(1) => {}
            Some(_) => {
                return Err(fail(format!(
                    "{ridge} is not on the boundary of the earlier facets"
                )))
            }
            None => return Err(fail(format!("{ridge} is not a face of the earlier facets"))),
        }
        add_ridges(f, &mut ridge_count);
        seen.insert(v.clone());
        natural_order.push(v);
    }
    Ok(SimpleTree {
        facets: facets.to_vec(),
        natural_order,
    })
}

/// `"w1"`, `"w2"`, … : the first name of this form not used in `k`.
pub fn fresh_label(k: &SimplicialComplex) -> Label {
    (1..)
        .map(|i| Label::Str(format!("w{i}")))
        .find(|l| k.index_of(l).is_none())
        .expect("unbounded supply")
}

/// Replace the interior of the ball spanned by `ball` with the cone from `w`
/// over its boundary. No ball check; facets must be facets of `k`.
pub(crate) fn retriangulate(k: &SimplicialComplex, ball: &[Face], w: &Label) -> SimplicialComplex {
    let remove: HashSet<&Face> = ball.iter().collect();
    let mut facets: Vec<Face> = k
        .facets()
        .into_iter()
        .filter(|f| !remove.contains(f))
        .collect();
    let cone = Face::of([w.clone()]);
    facets.extend(boundary_ridges(ball).into_iter().map(|r| r.union(&cone)));
    SimplicialComplex::from_faces(&facets).expect("nonempty")
}

/// Central retriangulation of the subcomplex generated by `ball`, which must be
/// a homology ball of full dimension.
pub fn central_retriangulation(
    k: &SimplicialComplex,
    ball: &[Face],
    w: &Label,
) -> Result<SimplicialComplex> {
    if k.index_of(w).is_some() {
        return Err(Error::VertexCollision(w.clone()));
    }
    for f in ball {
        if !k.is_facet(f) {
            return Err(Error::NotAFacet(f.to_string()));
        }
    }
    let b = SimplicialComplex::from_faces(ball)?;
    if !is_homology_ball(&b, FieldSpec::Rationals)? {
        return Err(Error::NotABall);
    }
    Ok(retriangulate(k, ball, w))
}

/// Central retriangulation of a simple tree: `h_1 + 1`, and for `d >= 4` also `h_2 + m`.
pub fn retriangulate_tree(
    k: &SimplicialComplex,
    tree: &SimpleTree,
    w: &Label,
) -> Result<SimplicialComplex> {
    if k.index_of(w).is_some() {
        return Err(Error::VertexCollision(w.clone()));
    }
    let out = retriangulate(k, &tree.facets, w);
    let (h0, h1) = (h_vector(k), h_vector(&out));
    assert!(
        h1.h(1) == h0.h(1) + 1 && (k.d() < 4 || h1.h(2) == h0.h(2) + tree.len() as i64),
        "retriangulating a simple tree of length {} changed h from {h0} to {h1}",
        tree.len()
    );
    Ok(out)
}

/// Backtracking search for a spanning simple 2-tree in `lk ρ`, which must be a
/// homology 2-sphere. Candidates are tried in lexicographic order; the node
/// budget bounds the search. Returns the tree `ρ ∗ T` of facets of `k`.
pub fn find_spanning_tree_in_link(
    k: &SimplicialComplex,
    rho: &Face,
    budget: usize,
) -> Result<SimpleTree> {
    if k.d() < 4 || rho.len() + 3 != k.d() {
        return Err(Error::PreconditionFailed(format!(
            "need a codimension-three face in a complex with d >= 4; got |rho| = {}, d = {}",
            rho.len(),
            k.d()
        )));
    }
    let lk = k.link(rho)?;
    if lk.d() != 3 || !is_homology_sphere(&lk, FieldSpec::Rationals)? {
        return Err(Error::NotASphereLink(rho.to_string()));
    }
    let tree = spanning_tree_search(&lk.facets(), budget).ok_or_else(|| {
        Error::NotFound(format!(
            "no spanning simple 2-tree in the link of {rho} within budget"
        ))
    })?;
    Ok(tree.cone(rho))
}

/// Depth-first search for a spanning simple tree among `facets` (all the same size).
pub(crate) fn spanning_tree_search(facets: &[Face], budget: usize) -> Option<SimpleTree> {
    let mut facets = facets.to_vec();
    facets.sort();
    let vertices: HashSet<&Label> = facets.iter().flat_map(|f| f.vertices()).collect();
    let target = vertices.len();
    let d = facets.first()?.len();
    if target < d {
        return None;
    }
    let m = target - d + 1;
    // ridge -> facets containing it
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.vertices() {
            by_ridge
                .entry(f.minus(&Face::of([v.clone()])))
                .or_default()
                .push(i);
        }
    }
    struct State<'a> {
        facets: &'a [Face],
        by_ridge: &'a HashMap<Face, Vec<usize>>,
        chosen: Vec<usize>,
        used: HashSet<Label>,
        ridge_count: HashMap<Face, usize>,
        nodes: usize,
        budget: usize,
        m: usize,
    }
    fn ridges(f: &Face) -> impl Iterator<Item = Face> + '_ {
        f.vertices()
            .iter()
            .map(move |v| f.minus(&Face::of([v.clone()])))
    }
    fn dfs(s: &mut State) -> bool {
        if s.chosen.len() == s.m {
            return true;
        }
        s.nodes += 1;
        if s.nodes > s.budget {
            return false;
        }
        // candidates: facets through a free ridge that bring exactly one new vertex
        let mut cands: Vec<usize> = s
            .ridge_count
            .iter()
            .filter(|(_, c)| **c == 1)
            .flat_map(|(r, _)| s.by_ridge.get(r).into_iter().flatten().copied())
            .filter(|&i| {
                let f = &s.facets[i];
                f.vertices().iter().filter(|v| !s.used.contains(*v)).count() == 1
            })
            .collect();
        cands.sort_unstable();
        cands.dedup();
        for i in cands {
            let f = s.facets[i].clone();
            let v = f
                .vertices()
                .iter()
                .find(|v| !s.used.contains(*v))
                .cloned()
                .expect("one new vertex");
            s.chosen.push(i);
            s.used.insert(v.clone());
            for r in ridges(&f) {
                *s.ridge_count.entry(r).or_insert(0) += 1;
            }
            if dfs(s) {
                return true;
            }
            for r in ridges(&f) {
                let c = s.ridge_count.get_mut(&r).expect("present");
                *c -= 1;
                if *c == 0 {
                    s.ridge_count.remove(&r);
                }
            }
            s.used.remove(&v);
            s.chosen.pop();
            if s.nodes > s.budget {
                return false;
            }
        }
        false
    }
    for start in 0..facets.len() {
        let mut s = State {
            facets: &facets,
            by_ridge: &by_ridge,
            chosen: vec![start],
            used: facets[start].vertices().iter().cloned().collect(),
            ridge_count: ridges(&facets[start]).map(|r| (r, 1)).collect(),
            nodes: 0,
            budget,
            m,
        };
        if dfs(&mut s) {
            let ordered: Vec<Face> = s.chosen.iter().map(|&i| facets[i].clone()).collect();
            return order_check(&ordered).ok();
        }
        if s.nodes > budget {
            return None;
        }
    }
    None
}
