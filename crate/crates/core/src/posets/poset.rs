use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::complex::{Label, SimplicialComplex};
use crate::enumeration::{flag_h_from_f, Coloring, FlagVector};
use crate::error::{Error, Result};

/// Finite graded poset with a least element `0̂` and a greatest element `1̂`.
///
/// Ranks are computed from the cover relations and validated.
#[derive(Debug, Clone)]
pub struct GradedPoset {
    names: Vec<String>,
    up: Vec<Vec<usize>>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
    /// Elements sorted by rank.
    order: Vec<usize>,
    /// Strict down-sets.
    below: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosetClass {
    Eulerian,
    SemiEulerian,
    Neither,
}

impl fmt::Display for PosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PosetClass::Eulerian => "Eulerian",
            PosetClass::SemiEulerian => "semi-Eulerian",
            PosetClass::Neither => "neither",
        })
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl GradedPoset {
    /// Build from element names and cover pairs `(x, y)` meaning `x ⋖ y`.
    pub fn from_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let n = names.len();
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(Error::InvalidPoset("duplicate element name".into()));
        }
        if n < 2 {
            return Err(Error::InvalidPoset("need distinct bottom and top".into()));
        }
        let lookup = |s: &str| {
            index.get(s).copied().ok_or_else(|| {
                Error::InvalidPoset(format!("unknown element {s:?} in cover relation"))
            })
        };
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (x, y) in covers {
            let (x, y) = (lookup(x)?, lookup(y)?);
            if x == y {
                return Err(Error::InvalidPoset(format!("self cover at {:?}", names[x])));
            }
            if !up[x].contains(&y) {
                up[x].push(y);
                down[y].push(x);
            }
        }
        let unique = |adj: &[Vec<usize>], what: &str| -> Result<usize> {
            let ends: Vec<usize> = (0..n).filter(|&i| adj[i].is_empty()).collect();
            match ends.as_slice() {
                [e] => Ok(*e),
                _ => Err(Error::InvalidPoset(format!(
                    "{} {what} elements, need exactly one",
                    ends.len()
                ))),
            }
        };
        let bottom = unique(&down, "minimal")?;
        let top = unique(&up, "maximal")?;

        // Kahn's order from the bottom, assigning ranks along the way
        let mut rank = vec![usize::MAX; n];
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut order = vec![bottom];
        rank[bottom] = 0;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &up[x] {
                if rank[y] == usize::MAX {
                    rank[y] = rank[x] + 1;
                } else if rank[y] != rank[x] + 1 {
                    return Err(Error::InvalidPoset(format!(
                        "not graded: {:?} has chains of lengths {} and {} below it",
                        names[y],
                        rank[y],
                        rank[x] + 1
                    )));
                }
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    order.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidPoset(
                "cover relation contains a cycle".into(),
            ));
        }
        order.sort_by_key(|&x| rank[x]);
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &y in &order {
            let mut set = FixedBitSet::with_capacity(n);
            for &x in &down[y] {
                set.union_with(&below[x]);
                set.insert(x);
            }
            below[y] = set;
        }
        Ok(GradedPoset {
            names,
            up,
            rank,
            bottom,
            top,
            order,
            below,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::NotFound(format!("element {name:?}")))
    }

    /// Rank of `1̂`.
    pub fn rank(&self) -> usize {
        self.rank[self.top]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements covering `x`.
    pub fn covers_of(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Element indices sorted by rank.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.below[y].contains(x)
    }

    /// Strictly smaller elements.
    pub fn strictly_below(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[y].ones()
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&x| self.rank[x] == r)
            .collect()
    }

    /// All cover pairs by name.
    pub fn cover_pairs(&self) -> Vec<(String, String)> {
        self.order
            .iter()
            .flat_map(|&x| {
                self.up[x]
                    .iter()
                    .map(move |&y| (self.names[x].clone(), self.names[y].clone()))
            })
            .collect()
    }

    /// `μ(x, z)` for every `z`, zero where `x ≰ z`.
    fn mobius_row(&self, x: usize) -> Vec<i64> {
        let mut row = vec![0i64; self.len()];
        row[x] = 1;
        for &y in &self.order {
            if self.rank[y] <= self.rank[x] || !self.below[y].contains(x) {
                continue;
            }
            row[y] = -self.below[y].ones().map(|z| row[z]).sum::<i64>();
        }
        row
    }

    /// Möbius function `μ(x, y)`.
    pub fn mobius(&self, x: &str, y: &str) -> Result<i64> {
        let (xi, yi) = (self.require(x)?, self.require(y)?);
        if !self.leq(xi, yi) {
            return Err(Error::NotComparable(x.into(), y.into()));
        }
        Ok(self.mobius_row(xi)[yi])
    }

    /// `μ(0̂, 1̂)`, the reduced Euler characteristic of the reduced order complex.
    pub fn mobius_total(&self) -> i64 {
        self.mobius_row(self.bottom)[self.top]
    }

    /// `χ(Δ_P)` of the reduced order complex.
    pub fn order_complex_euler(&self) -> i64 {
        self.mobius_total() + 1
    }

    pub fn classify(&self) -> PosetClass {
        for &x in &self.order {
            let row = self.mobius_row(x);
            for &y in &self.order {
                if (x, y) == (self.bottom, self.top) || !self.leq(x, y) {
                    continue;
                }
                if row[y] != sign(self.rank[y] - self.rank[x]) {
                    return PosetClass::Neither;
                }
            }
        }
        if self.mobius_total() == sign(self.rank()) {
            PosetClass::Eulerian
        } else {
            PosetClass::SemiEulerian
        }
    }

    /// Maximal chains from `0̂` to `1̂`.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chain = vec![self.bottom];
        self.extend_chains(&mut chain, &mut out);
        out
    }

    fn extend_chains(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().expect("nonempty");
        if last == self.top {
            out.push(chain.clone());
            return;
        }
        for &y in &self.up[last] {
            chain.push(y);
            self.extend_chains(chain, out);
            chain.pop();
        }
    }

    /// Flag f-vector of the reduced order complex, `S ⊆ [rank - 1]`.
    pub fn flag_f(&self) -> FlagVector {
        let d = self.rank() - 1;
        let width = 1usize << d;
        // chains[x][mask]: chains in the open interval ending at x with rank set mask
        let mut chains = vec![Vec::new(); self.len()];
        let mut out = FlagVector::zeros(d);
        for &y in &self.order {
            let r = self.rank[y];
            if y == self.bottom || y == self.top {
                continue;
            }
            let bit = 1usize << (r - 1);
            let mut row = vec![0i64; width];
            row[bit] = 1;
            for x in self.below[y].ones() {
                if x == self.bottom {
                    continue;
                }
                for (mask, &c) in chains[x].iter().enumerate() {
                    if c != 0 {
                        row[mask | bit] += c;
                    }
                }
            }
            for (mask, &c) in row.iter().enumerate() {
                out.entries[mask] += c;
            }
            chains[y] = row;
        }
        out.entries[0] = 1;
        out
    }
}

/// Face poset of `k`, with `0̂ = ∅`. With `augment` a top element `1̂` is
/// adjoined above the facets; without it `k` must have a single facet.
pub fn face_poset(k: &SimplicialComplex, augment: bool) -> Result<GradedPoset> {
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for size in 0..=k.d() {
        for face in k.faces_of_size(size) {
            let name = k.face_of(&face).to_string();
            for i in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(i);
                covers.push((k.face_of(&sub).to_string(), name.clone()));
            }
            names.push(name);
        }
    }
    if augment {
        names.push("top".into());
        for f in k.facet_ids() {
            covers.push((k.face_of(f).to_string(), "top".into()));
        }
    } else if k.n_facets() != 1 {
        return Err(Error::InvalidPoset(
            "face poset has no greatest element; adjoin a top".into(),
        ));
    }
    GradedPoset::from_covers(names, &covers)
}

/// Order complex: faces are chains. `reduced` drops `0̂` and `1̂`.
pub fn order_complex(p: &GradedPoset, reduced: bool) -> SimplicialComplex {
    let keep = |x: usize| !reduced || (x != p.bottom && x != p.top);
    let mut labels: Vec<Label> = (0..p.len())
        .filter(|&x| keep(x))
        .map(|x| Label::Str(p.names[x].clone()))
        .collect();
    labels.sort();
    let id: HashMap<&str, u32> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Label::Str(s) => (s.as_str(), i as u32),
            Label::Int(_) => unreachable!("string labels only"),
        })
        .collect();
    let facets = p
        .maximal_chains()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter(|&x| keep(x))
                .map(|x| id[p.names[x].as_str()])
                .collect()
        })
        .collect();
    SimplicialComplex::from_raw(&labels, facets, false)
}

/// Rank coloring of an order complex of `p`: type `(1, …, 1)`.
pub fn rank_coloring(p: &GradedPoset, oc: &SimplicialComplex) -> Result<Coloring> {
    let index: HashMap<&str, usize> = p
        .names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let shift = usize::from(oc.contains(&crate::complex::Face::of([Label::Str(
        p.names[p.bottom].clone(),
    )])));
    Coloring::by_rank(oc, |l| match l {
        Label::Str(s) => index.get(s.as_str()).map_or(0, |&x| p.rank[x] + shift),
        Label::Int(_) => 0,
    })
}

/// Flag f- and h-vectors of the reduced order complex.
pub fn flag_vectors(p: &GradedPoset) -> (FlagVector, FlagVector) {
    let f = p.flag_f();
    let h = flag_h_from_f(&f);
    (f, h)
}

/// Poset file: element names and cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<Label>,
    pub covers: Vec<(Label, Label)>,
}

impl PosetFile {
    /// Adds `bottom`/`top` below all minimal (above all maximal) elements
    /// when there is no unique one.
    pub fn into_poset(self) -> Result<GradedPoset> {
        let mut names: Vec<String> = self.elements.iter().map(Label::to_string).collect();
        let mut covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        let has_down: std::collections::HashSet<&String> = covers.iter().map(|(_, y)| y).collect();
        let has_up: std::collections::HashSet<&String> = covers.iter().map(|(x, _)| x).collect();
        let minimal: Vec<String> = names
            .iter()
            .filter(|s| !has_down.contains(s))
            .cloned()
            .collect();
        let maximal: Vec<String> = names
            .iter()
            .filter(|s| !has_up.contains(s))
            .cloned()
            .collect();
        if minimal.len() > 1 && !names.iter().any(|s| s == "bottom") {
            covers.extend(minimal.into_iter().map(|m| ("bottom".to_string(), m)));
            names.push("bottom".into());
        }
        if maximal.len() > 1 && !names.iter().any(|s| s == "top") {
            covers.extend(maximal.into_iter().map(|m| (m, "top".to_string())));
            names.push("top".into());
        }
        GradedPoset::from_covers(names, &covers)
    }
}

impl From<&GradedPoset> for PosetFile {
    fn from(p: &GradedPoset) -> Self {
        PosetFile {
            elements: p
                .order
                .iter()
                .map(|&x| Label::Str(p.names[x].clone()))
                .collect(),
            covers: p
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| (Label::Str(x), Label::Str(y)))
                .collect(),
        }
    }
}

pub fn parse_poset(text: &str) -> Result<GradedPoset> {
    let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_poset()
}

pub fn poset_to_json(p: &GradedPoset) -> String {
    serde_json::to_string_pretty(&PosetFile::from(p)).expect("serializable")
}
