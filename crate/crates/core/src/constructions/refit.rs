use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::movelog::{MoveLog, Operation};
use super::tree::{
    fresh_label, order_check, spanning_tree_search, validate_simple_tree, SimpleTree,
};
use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::manifold_report;
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefitOptions {
    /// Node budget for the direct spanning-tree search before falling back to
    /// growing a tree through a simplicial map.
    pub search_budget: usize,
    /// Keep every intermediate complex.
    pub trace: bool,
}

impl Default for RefitOptions {
    fn default() -> Self {
        RefitOptions {
            search_budget: 20_000,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    pub complex: SimplicialComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refit {
    /// 2-neighborly, homeomorphic to the input.
    pub complex: SimplicialComplex,
    /// Spanning simple tree whose facets all contain `rho`.
    pub tree: SimpleTree,
    /// Codimension-three face.
    pub rho: Face,
    pub log: MoveLog,
    pub trace: Vec<TraceStep>,
}

struct Pipeline {
    k: SimplicialComplex,
    log: MoveLog,
    trace: Vec<TraceStep>,
    opts: RefitOptions,
}

fn internal(what: &str, e: Error) -> Error {
    Error::HypothesisNotMet(format!("{what}: {e}"))
}

/// Order the edges of a single cycle, starting from its least vertex.
fn cycle_order(edges: &[Face]) -> Result<Vec<Label>> {
    let mut adj: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
    for e in edges {
        let v = e.vertices();
        if v.len() != 2 {
            return Err(Error::HypothesisNotMet(format!("{e} is not an edge")));
        }
        adj.entry(v[0].clone()).or_default().insert(v[1].clone());
        adj.entry(v[1].clone()).or_default().insert(v[0].clone());
    }
    let bad = || Error::HypothesisNotMet("link is not a circle".into());
    let start = adj.keys().next().cloned().ok_or_else(bad)?;
    let mut out = vec![start.clone()];
    let mut prev = start.clone();
    let mut cur = adj[&start].iter().next().cloned().ok_or_else(bad)?;
    while cur != start {
        let nb = &adj[&cur];
        if nb.len() != 2 || out.len() > adj.len() {
            return Err(bad());
        }
        out.push(cur.clone());
        let next = nb.iter().find(|v| **v != prev).cloned().ok_or_else(bad)?;
        prev = cur;
        cur = next;
    }
    if out.len() != adj.len() || adj.values().any(|n| n.len() != 2) {
        return Err(bad());
    }
    Ok(out)
}

/// Facets `base ∪ {p_i, p_{i+1}}` along a vertex path.
fn path_facets(base: &Face, path: &[Label]) -> Vec<Face> {
    path.windows(2)
        .map(|p| base.union(&Face::of(p.iter().cloned())))
        .collect()
}

fn single(l: &Label) -> Face {
    Face::of([l.clone()])
}

impl Pipeline {
    fn snapshot(&mut self, label: String) {
        if self.opts.trace {
            self.trace.push(TraceStep {
                label,
                complex: self.k.clone(),
            });
        }
    }

    /// Central retriangulation with a fresh vertex, which is returned.
    fn crt(&mut self, ball: &[Face], what: &str) -> Result<Label> {
        let w = fresh_label(&self.k);
        self.k = Operation::CentralRetriangulation {
            ball: ball.to_vec(),
            vertex: w.clone(),
        }
        .record(&self.k, &mut self.log)
        .map_err(|e| internal(what, e))?;
        self.snapshot(format!(
            "{what}: retriangulated {} facets, new vertex {w}",
            ball.len()
        ));
        Ok(w)
    }

    fn link(&self, core: &Face) -> Result<SimplicialComplex> {
        if core.is_empty() {
            Ok(self.k.clone())
        } else {
            self.k.link(core)
        }
    }

    /// A spanning simple tree all of whose facets contain `core`; the link of
    /// `core` must contain every other vertex.
    fn spanning_tree_through(&mut self, core: &Face) -> Result<SimpleTree> {
        let lk = self.link(core)?;
        if lk.n_vertices() + core.len() != self.k.n_vertices() {
            return Err(Error::HypothesisNotMet(format!(
                "link of {core} misses vertices"
            )));
        }
        if let Some(t) = spanning_tree_search(&lk.facets(), self.opts.search_budget) {
            if t.natural_order.len() == lk.n_vertices() {
                return Ok(t.cone(core));
            }
        }
        self.grow_tree_through(core, &lk)
    }

    /// Grow an abstract simple tree mapping onto the vertices of `lk`, then
    /// retriangulate until the map is injective.
    fn grow_tree_through(&mut self, core: &Face, lk: &SimplicialComplex) -> Result<SimpleTree> {
        let facets = lk.facets();
        let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for v in f.vertices() {
                by_ridge.entry(f.minus(&single(v))).or_default().push(i);
            }
        }
        // breadth-first search of the dual graph from the least facet
        let mut parent: Vec<Option<usize>> = vec![None; facets.len()];
        let mut seen = vec![false; facets.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for v in facets[i].vertices() {
                for &j in &by_ridge[&facets[i].minus(&single(v))] {
                    if !seen[j] {
                        seen[j] = true;
                        parent[j] = Some(i);
                        queue.push_back(j);
                    }
                }
            }
        }
        // keep the first facet reaching each vertex, with its ancestors
        let mut keep = vec![false; facets.len()];
        let mut covered: BTreeSet<&Label> = BTreeSet::new();
        for &i in &order {
            if facets[i].vertices().iter().any(|v| !covered.contains(v)) {
                covered.extend(facets[i].vertices());
                let mut j = Some(i);
                while let Some(x) = j {
                    if keep[x] {
                        break;
                    }
                    keep[x] = true;
                    j = parent[x];
                }
            }
        }
        // abstract tree: facets as lists of abstract vertex ids, phi on ids
        let mut phi: Vec<Label> = facets[0].vertices().to_vec();
        let mut abs: Vec<Vec<usize>> = vec![(0..phi.len()).collect()];
        let mut abs_of: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        for &i in order.iter().skip(1).filter(|&&i| keep[i]) {
            let p = parent[i].expect("non-root has a parent");
            let pa = &abs[abs_of[&p]];
            let u = facets[i].minus(&facets[p]).vertices()[0].clone();
            let a = facets[p].minus(&facets[i]).vertices()[0].clone();
            let mut ids: Vec<usize> = pa.iter().copied().filter(|&y| phi[y] != a).collect();
            ids.push(phi.len());
            phi.push(u);
            abs_of.insert(i, abs.len());
            abs.push(ids);
        }
        let image = |phi: &[Label], ids: &[usize]| {
            Face::of(ids.iter().map(|&y| phi[y].clone())).union(core)
        };
        loop {
            let mut fiber: HashMap<&Label, usize> = HashMap::new();
            for l in &phi {
                *fiber.entry(l).or_insert(0) += 1;
            }
            let Some(t) = (0..phi.len()).rev().find(|&y| fiber[&phi[y]] >= 2) else {
                break;
            };
            let ball: Vec<Face> = abs
                .iter()
                .filter(|ids| ids.contains(&t))
                .map(|ids| image(&phi, ids))
                .collect();
            let w = self.crt(&ball, "making the tree map injective")?;
            phi[t] = w;
        }
        let facets: Vec<Face> = abs.iter().map(|ids| image(&phi, ids)).collect();
        validate_simple_tree(&self.k, &facets).map_err(|e| internal("grown tree", e))
    }

    /// Circle `lk r` in cyclic order; it must contain every vertex outside `r`.
    fn circle(&self, r: &Face) -> Result<Vec<Label>> {
        let c = cycle_order(&self.k.link(r)?.facets())?;
        if c.len() + r.len() != self.k.n_vertices() {
            return Err(Error::HypothesisNotMet(format!(
                "link of {r} misses vertices"
            )));
        }
        Ok(c)
    }

    fn tree(&self, facets: &[Face], what: &str) -> Result<SimpleTree> {
        validate_simple_tree(&self.k, facets).map_err(|e| internal(what, e))
    }

    /// One nonedge-elimination cycle on `(x, y)`, given `R = rho0 ∪ {w1}` whose
    /// link is a circle through every other vertex. Returns the new `(rho0, w1)`.
    fn eliminate(
        &mut self,
        rho0: &Face,
        w1: &Label,
        x: &Label,
        y: &Label,
    ) -> Result<(Face, Label)> {
        let r = rho0.union(&single(w1));
        let mut c = self.circle(&r)?;
        let ix = c
            .iter()
            .position(|v| v == x)
            .ok_or_else(|| Error::HypothesisNotMet(format!("{x} not on the circle")))?;
        c.rotate_left(ix);
        let iy = c
            .iter()
            .position(|v| v == y)
            .ok_or_else(|| Error::HypothesisNotMet(format!("{y} not on the circle")))?;
        let vs: Vec<Label> = c[1..iy].to_vec();
        let us: Vec<Label> = c[iy + 1..].to_vec();
        debug_assert!(!vs.is_empty() && !us.is_empty());
        let w0 = rho0.vertices()[0].clone();
        let rho0p = rho0.minus(&single(&w0));

        // Step 1
        let p1 = &c[..=iy];
        let p2 = &c[iy - 1..];
        let t = self.tree(&path_facets(&r, &c), "step 1 tree T")?;
        let mut s = path_facets(&rho0p.union(&single(w1)), p1);
        s.extend(path_facets(&rho0p.union(&single(&w0)), p2));
        let w2 = self.crt(&t.facets, "step 1")?;
        let sw2: Vec<Face> = s.iter().map(|f| f.union(&single(&w2))).collect();
        let sw2 = self.tree(&sw2, "step 1 tree S * w2")?;
        let w3 = self.crt(&sw2.facets, "step 1")?;

        // Step 2
        let f = rho0p.union(&Face::of([w1.clone(), w2.clone(), w3.clone()]));
        self.k = Operation::Bistellar {
            f,
            g: Face::of([x.clone(), y.clone()]),
        }
        .record(&self.k, &mut self.log)
        .map_err(|e| internal("step 2", e))?;
        self.snapshot(format!("step 2: added edge {{{x}, {y}}}"));

        // Step 3
        let mut p4: Vec<Label> = vec![x.clone(), y.clone()];
        p4.extend(us.iter().cloned());
        p4.push(w0.clone());
        p4.extend(vs.iter().rev().cloned());
        let mut s4 = vec![
            rho0p.union(&Face::of([w2.clone(), x.clone(), y.clone()])),
            rho0p.union(&Face::of([x.clone(), w1.clone(), y.clone()])),
        ];
        s4.extend(path_facets(&rho0p.union(&single(&w2)), &p4[1..]));
        let t4: Vec<Face> = s4.iter().map(|f| f.union(&single(&w3))).collect();
        let t4 = self.tree(&t4, "step 3 tree T4")?;
        s4.push(rho0p.union(&Face::of([y.clone(), w1.clone(), w3.clone()])));
        let w4 = self.crt(&t4.facets, "step 3")?;
        let t5: Vec<Face> = s4.iter().map(|f| f.union(&single(&w4))).collect();
        let t5 = self.tree(&t5, "step 3 tree T5")?;
        let w5 = self.crt(&t5.facets, "step 3")?;
        Ok((rho0p.union(&single(&w4)), w5))
    }
}

/// Retriangulate a connected closed homology manifold (`d >= 4`) into a
/// 2-neighborly one with a spanning simple tree through a codimension-three
/// face, as required by [`realize_g_pair`](super::realize_g_pair).
pub fn two_neighborly_refit(k: &SimplicialComplex, opts: &RefitOptions) -> Result<Refit> {
    let d = k.d();
    if d < 4 {
        return Err(Error::HypothesisNotMet(format!("need d >= 4, got {d}")));
    }
    if !k.is_pure() || !k.is_connected() {
        return Err(Error::HypothesisNotMet(
            "complex must be pure and connected".into(),
        ));
    }
    let report = manifold_report(k, FieldSpec::Rationals)
        .map_err(|e| Error::HypothesisNotMet(e.to_string()))?;
    if !report.is_homology_manifold || !report.boundary.is_empty() {
        return Err(Error::HypothesisNotMet(
            "not a homology manifold without boundary".into(),
        ));
    }
    let mut p = Pipeline {
        k: k.clone(),
        log: MoveLog::new(),
        trace: Vec::new(),
        opts: *opts,
    };
    p.snapshot("input".into());

    if k.nonedges().is_empty() {
        if let Ok((rho, tree)) = super::realize::find_machine_tree(k, opts.search_budget) {
            return Ok(Refit {
                complex: p.k,
                tree,
                rho,
                log: p.log,
                trace: p.trace,
            });
        }
    }

    // a spanning tree through a growing core of retriangulation vertices
    let mut core = Face::empty();
    let mut tree = p.spanning_tree_through(&core)?;
    while core.len() + 3 < d {
        let w = p.crt(&tree.facets, "concentrating the tree")?;
        core = core.union(&single(&w));
        tree = p.spanning_tree_through(&core)?;
    }
    if p.k.nonedges().is_empty() {
        return Ok(Refit {
            complex: p.k,
            tree,
            rho: core,
            log: p.log,
            trace: p.trace,
        });
    }

    // remove nonedges one at a time
    let mut rho0 = core;
    let mut w1 = p.crt(&tree.facets, "opening the circle")?;
    while let Some((x, y)) = p.k.nonedges().into_iter().next() {
        let before = p.k.nonedges().len();
        (rho0, w1) = p.eliminate(&rho0, &w1, &x, &y)?;
        debug_assert_eq!(p.k.nonedges().len() + 1, before);
    }
    let r = rho0.union(&single(&w1));
    let c = p.circle(&r)?;
    let tree = order_check(&path_facets(&r, &c))?;
    Ok(Refit {
        complex: p.k,
        tree,
        rho: rho0,
        log: p.log,
        trace: p.trace,
    })
}
