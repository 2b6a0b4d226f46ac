use crate::complex::{Face, Label, SimplicialComplex};
use crate::constructions::bistellar::{apply_bistellar, BistellarMove};
use crate::constructions::movelog::f0_f1;
use crate::constructions::tree::{validate_simple_tree, SimpleTree};
use crate::enumeration::{f_vector, fine_ds_defect, fine_f, fine_h, h_vector, Coloring};
use crate::error::{Error, Result};
use crate::homology::betti;
use crate::posets::{toric_h, GradedPoset, PosetClass};
use crate::scalar::FieldSpec;

pub const CATALOG_NAMES: [&str; 7] = [
    "cp2_9",
    "cp2_tree",
    "s2xs2_sum",
    "s2xs2_moves",
    "s2xs2_tree",
    "bipyramid",
    "torus_poset",
];

#[derive(Debug, Clone)]
pub enum Payload {
    Complex(SimplicialComplex),
    /// A balanced complex with its coloring.
    Balanced {
        complex: SimplicialComplex,
        coloring: Coloring,
    },
    /// A spanning simple 2-tree in `lk rho` of `host`, listed by link facets.
    Tree {
        host: SimplicialComplex,
        rho: Face,
        tree: SimpleTree,
    },
    /// Moves applied in order to `host`, giving `result`.
    Moves {
        host: SimplicialComplex,
        moves: Vec<BistellarMove>,
        result: SimplicialComplex,
    },
    Poset(GradedPoset),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub payload: Payload,
}

impl CatalogEntry {
    /// The complex most naturally exported for this entry, if any.
    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match &self.payload {
            Payload::Complex(k) | Payload::Balanced { complex: k, .. } => Some(k),
            Payload::Tree { host, .. } => Some(host),
            Payload::Moves { result, .. } => Some(result),
            Payload::Poset(_) => None,
        }
    }
}

const CP2_FACETS: [[i64; 5]; 36] = [
    [1, 2, 3, 4, 5],
    [1, 2, 3, 4, 7],
    [1, 2, 3, 5, 8],
    [1, 2, 3, 7, 8],
    [1, 2, 4, 5, 6],
    [1, 2, 4, 6, 7],
    [1, 2, 5, 6, 8],
    [1, 2, 6, 7, 9],
    [1, 2, 6, 8, 9],
    [1, 2, 7, 8, 9],
    [1, 3, 4, 5, 9],
    [1, 3, 4, 7, 8],
    [1, 3, 4, 8, 9],
    [1, 3, 5, 6, 8],
    [1, 3, 5, 6, 9],
    [1, 3, 6, 8, 9],
    [1, 4, 5, 6, 7],
    [1, 4, 5, 7, 9],
    [1, 4, 7, 8, 9],
    [1, 5, 6, 7, 9],
    [2, 3, 4, 5, 9],
    [2, 3, 4, 6, 7],
    [2, 3, 4, 6, 9],
    [2, 3, 5, 7, 8],
    [2, 3, 5, 7, 9],
    [2, 3, 6, 7, 9],
    [2, 4, 5, 6, 8],
    [2, 4, 5, 8, 9],
    [2, 4, 6, 8, 9],
    [2, 5, 7, 8, 9],
    [3, 4, 6, 7, 8],
    [3, 4, 6, 8, 9],
    [3, 5, 6, 7, 8],
    [3, 5, 6, 7, 9],
    [4, 5, 6, 7, 8],
    [4, 5, 7, 8, 9],
];

const S2XS2_FACETS: [[i64; 5]; 90] = [
    [1, 2, 3, 4, 7],
    [1, 2, 3, 4, 10],
    [1, 2, 3, 7, 10],
    [1, 2, 4, 7, 8],
    [1, 2, 4, 8, 11],
    [1, 2, 4, 9, 10],
    [1, 2, 4, 9, 12],
    [1, 2, 4, 11, 12],
    [1, 2, 7, 8, 10],
    [1, 2, 8, 9, 10],
    [1, 2, 8, 9, 12],
    [1, 2, 8, 11, 12],
    [1, 3, 4, 7, 11],
    [1, 3, 4, 10, 11],
    [1, 3, 7, 8, 11],
    [1, 3, 7, 8, 12],
    [1, 3, 7, 9, 10],
    [1, 3, 7, 9, 12],
    [1, 3, 8, 11, 12],
    [1, 3, 9, 10, 12],
    [1, 3, 10, 11, 12],
    [1, 4, 7, 8, 11],
    [1, 4, 9, 10, 11],
    [1, 4, 9, 11, 12],
    [1, 7, 8, 9, 10],
    [1, 7, 8, 9, 12],
    [1, 9, 10, 11, 12],
    [2, 3, 4, 6, 9],
    [2, 3, 4, 6, 10],
    [2, 3, 4, 7, 12],
    [2, 3, 4, 9, 12],
    [2, 3, 5, 7, 9],
    [2, 3, 5, 7, 10],
    [2, 3, 5, 8, 10],
    [2, 3, 5, 8, 11],
    [2, 3, 5, 9, 11],
    [2, 3, 6, 9, 11],
    [2, 3, 6, 10, 11],
    [2, 3, 7, 9, 12],
    [2, 3, 8, 10, 11],
    [2, 4, 5, 7, 8],
    [2, 4, 5, 7, 12],
    [2, 4, 5, 8, 11],
    [2, 4, 5, 11, 12],
    [2, 4, 6, 9, 10],
    [2, 5, 7, 8, 10],
    [2, 5, 7, 9, 11],
    [2, 5, 7, 11, 12],
    [2, 6, 7, 9, 11],
    [2, 6, 7, 9, 12],
    [2, 6, 7, 11, 12],
    [2, 6, 8, 9, 10],
    [2, 6, 8, 9, 12],
    [2, 6, 8, 10, 12],
    [2, 6, 10, 11, 12],
    [2, 8, 10, 11, 12],
    [3, 4, 5, 8, 9],
    [3, 4, 5, 8, 12],
    [3, 4, 5, 9, 12],
    [3, 4, 6, 7, 11],
    [3, 4, 6, 7, 12],
    [3, 4, 6, 8, 9],
    [3, 4, 6, 8, 12],
    [3, 4, 6, 10, 11],
    [3, 5, 7, 9, 10],
    [3, 5, 8, 9, 11],
    [3, 5, 8, 10, 12],
    [3, 5, 9, 10, 12],
    [3, 6, 7, 8, 11],
    [3, 6, 7, 8, 12],
    [3, 6, 8, 9, 11],
    [3, 8, 10, 11, 12],
    [4, 5, 7, 8, 10],
    [4, 5, 7, 10, 12],
    [4, 5, 8, 9, 11],
    [4, 5, 8, 10, 12],
    [4, 5, 9, 11, 12],
    [4, 6, 7, 10, 11],
    [4, 6, 7, 10, 12],
    [4, 6, 8, 9, 10],
    [4, 6, 8, 10, 12],
    [4, 7, 8, 9, 10],
    [4, 7, 8, 9, 11],
    [4, 7, 9, 10, 11],
    [5, 7, 9, 10, 11],
    [5, 7, 10, 11, 12],
    [5, 9, 10, 11, 12],
    [6, 7, 8, 9, 11],
    [6, 7, 8, 9, 12],
    [6, 7, 10, 11, 12],
];

const CP2_TREE: [[i64; 3]; 5] = [[3, 4, 7], [3, 4, 5], [4, 5, 6], [5, 6, 8], [6, 8, 9]];

const S2XS2_MOVES: [([i64; 5], [i64; 5]); 3] = [
    ([1, 2, 3, 7, 10], [2, 3, 5, 7, 10]),
    ([2, 3, 5, 9, 11], [2, 3, 6, 9, 11]),
    ([1, 2, 4, 9, 10], [2, 4, 6, 9, 10]),
];

const S2XS2_TREE: [[i64; 3]; 8] = [
    [3, 5, 10],
    [5, 7, 10],
    [7, 8, 10],
    [8, 9, 10],
    [8, 9, 12],
    [4, 9, 12],
    [4, 6, 9],
    [4, 11, 12],
];

fn mismatch(name: &str, detail: impl Into<String>) -> Error {
    Error::CatalogMismatch {
        name: name.into(),
        detail: detail.into(),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(name: &str, what: &str, got: T, want: T) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(mismatch(
            name,
            format!("{what}: expected {want:?}, got {got:?}"),
        ))
    }
}

/// Check f, h and reduced Betti numbers `β̃_0, …, β̃_{d-1}` over the rationals.
fn check_complex(
    name: &str,
    k: &SimplicialComplex,
    f: &[i64],
    h: &[i64],
    reduced: &[i64],
) -> Result<()> {
    expect(name, "f", f_vector(k).proper().to_vec(), f.to_vec())?;
    expect(name, "h", h_vector(k).entries().to_vec(), h.to_vec())?;
    let b = betti(k, FieldSpec::Rationals);
    let got: Vec<i64> = (0..k.d() as isize).map(|i| b.get(i)).collect();
    expect(name, "reduced Betti numbers", got, reduced.to_vec())
}

/// The 9-vertex complex projective plane.
pub fn cp2_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets(CP2_FACETS).expect("static data")
}

/// The 12-vertex `(S^2 × S^2) # (S^2 × S^2)`.
pub fn s2xs2_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets(S2XS2_FACETS).expect("static data")
}

/// The three 1-moves that make [`s2xs2_complex`] 2-neighborly.
pub fn s2xs2_moves() -> Vec<BistellarMove> {
    S2XS2_MOVES
        .iter()
        .map(|(a, b)| {
            BistellarMove::from_facet_pair(&Face::of(*a), &Face::of(*b)).expect("static data")
        })
        .collect()
}

/// [`s2xs2_complex`] after the first `count` of [`s2xs2_moves`].
pub fn s2xs2_after_moves(count: usize) -> Result<SimplicialComplex> {
    let mut k = s2xs2_complex();
    for mv in s2xs2_moves().iter().take(count) {
        k = apply_bistellar(&k, mv)?;
    }
    Ok(k)
}

/// Pentagonal bipyramid: pentagon `1..5` colored 2, apexes 6, 7 colored 1.
pub fn bipyramid() -> (SimplicialComplex, Coloring) {
    let mut facets = Vec::new();
    for i in 0..5i64 {
        let j = (i + 1) % 5;
        facets.push([i + 1, j + 1, 6]);
        facets.push([i + 1, j + 1, 7]);
    }
    let k = SimplicialComplex::from_facets(facets).expect("static data");
    let colors = (1..=7i64)
        .map(|v| (Label::Int(v), if v <= 5 { 2 } else { 1 }))
        .collect();
    (k, Coloring::new(vec![1, 2], colors).expect("static data"))
}

/// Face poset of the torus cell decomposition with four vertices, eight edges
/// and four squares (a 2 × 2 grid with opposite sides identified), plus
/// `bottom` and `top`.
pub fn torus_poset() -> GradedPoset {
    let v = |i: usize, j: usize| format!("v{}{}", i % 2, j % 2);
    let mut names = vec!["bottom".to_string(), "top".to_string()];
    let mut covers = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            names.extend([
                v(i, j),
                format!("h{i}{j}"),
                format!("u{i}{j}"),
                format!("s{i}{j}"),
            ]);
            covers.push(("bottom".into(), v(i, j)));
            covers.push((v(i, j), format!("h{i}{j}")));
            covers.push((v(i + 1, j), format!("h{i}{j}")));
            covers.push((v(i, j), format!("u{i}{j}")));
            covers.push((v(i, j + 1), format!("u{i}{j}")));
            let s = format!("s{i}{j}");
            covers.push((format!("h{i}{j}"), s.clone()));
            covers.push((format!("h{}{}", i, (j + 1) % 2), s.clone()));
            covers.push((format!("u{i}{j}"), s.clone()));
            covers.push((format!("u{}{}", (i + 1) % 2, j), s.clone()));
            covers.push((s, "top".into()));
        }
    }
    GradedPoset::from_covers(names, &covers).expect("static data")
}

fn link_tree(
    name: &str,
    host: SimplicialComplex,
    rho: Face,
    facets: &[[i64; 3]],
) -> Result<Payload> {
    let lk = host.link(&rho)?;
    let faces: Vec<Face> = facets.iter().map(|f| Face::of(*f)).collect();
    let tree = validate_simple_tree(&lk, &faces).map_err(|e| mismatch(name, e.to_string()))?;
    expect(
        name,
        "tree spans the link",
        tree.natural_order.len(),
        lk.n_vertices(),
    )?;
    Ok(Payload::Tree { host, rho, tree })
}

/// Load a catalog entry and verify it against its recorded invariants.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let (description, payload) = match name {
        "cp2_9" => {
            let k = cp2_complex();
            check_complex(
                name,
                &k,
                &[9, 36, 84, 90, 36],
                &[1, 4, 10, 20, -1, 2],
                &[0, 0, 1, 0, 1],
            )?;
            (
                "9-vertex triangulation of CP^2, h_1 = 4, h_2 = 10",
                Payload::Complex(k),
            )
        }
        "cp2_tree" => (
            "spanning simple 2-tree in the link of [1,2] in cp2_9",
            link_tree(name, cp2_complex(), Face::of([1, 2]), &CP2_TREE)?,
        ),
        "s2xs2_sum" => {
            let k = s2xs2_complex();
            check_complex(
                name,
                &k,
                &[12, 63, 192, 225, 90],
                &[1, 7, 25, 65, -13, 5],
                &[0, 0, 4, 0, 1],
            )?;
            let nonedges: Vec<(Label, Label)> = [(1, 5), (1, 6), (5, 6)]
                .iter()
                .map(|&(a, b)| (Label::Int(a), Label::Int(b)))
                .collect();
            expect(name, "nonedges", k.nonedges(), nonedges)?;
            (
                "12-vertex triangulation of (S^2 x S^2) # (S^2 x S^2), h_1 = 7, g_2 = 18",
                Payload::Complex(k),
            )
        }
        "s2xs2_moves" => {
            let host = s2xs2_complex();
            let moves = s2xs2_moves();
            let mut k = host.clone();
            for (i, mv) in moves.iter().enumerate() {
                expect(name, "move index", mv.index(), 1)?;
                k = apply_bistellar(&k, mv)
                    .map_err(|e| mismatch(name, format!("move {}: {e}", i + 1)))?;
            }
            expect(name, "(f0, f1) after the moves", f0_f1(&k), (12, 66))?;
            (
                "three 1-moves making s2xs2_sum 2-neighborly",
                Payload::Moves {
                    host,
                    moves,
                    result: k,
                },
            )
        }
        "s2xs2_tree" => (
            "spanning simple 2-tree in the link of {1,2} after the s2xs2_moves",
            link_tree(name, s2xs2_after_moves(3)?, Face::of([1, 2]), &S2XS2_TREE)?,
        ),
        "bipyramid" => {
            let (k, coloring) = bipyramid();
            let ff = fine_f(&k, &coloring)?;
            let fh = fine_h(&ff);
            expect(name, "fine f", ff.entries.clone(), vec![1, 2, 5, 10, 5, 10])?;
            expect(name, "fine h", fh.entries.clone(), vec![1, 1, 3, 3, 1, 1])?;
            expect(
                name,
                "fine DS defect vanishes",
                fine_ds_defect(&fh, k.euler_characteristic()).is_zero(),
                true,
            )?;
            (
                "pentagonal bipyramid, balanced of type (1,2)",
                Payload::Balanced {
                    complex: k,
                    coloring,
                },
            )
        }
        "torus_poset" => {
            let p = torus_poset();
            expect(name, "class", p.classify(), PosetClass::SemiEulerian)?;
            expect(name, "toric h", toric_h(&p).th, vec![1, 1, 7, -1])?;
            (
                "face poset of a four-square torus decomposition",
                Payload::Poset(p),
            )
        }
        _ => return Err(Error::UnknownEntry(name.into())),
    };
    Ok(CatalogEntry {
        name: CATALOG_NAMES
            .iter()
            .find(|n| **n == name)
            .expect("matched above"),
        description,
        payload,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_self_checks() {
        for name in CATALOG_NAMES {
            let e = catalog(name).unwrap_or_else(|err| panic!("{name}: {err}"));
            assert_eq!(e.name, name);
        }
        assert_eq!(catalog("k3").unwrap_err(), Error::UnknownEntry("k3".into()));
    }

    #[test]
    fn tree_lengths() {
        let Payload::Tree { tree, .. } = catalog("cp2_tree").unwrap().payload else {
            panic!("tree payload")
        };
        assert_eq!(tree.len(), 5);
        let Payload::Tree { tree, .. } = catalog("s2xs2_tree").unwrap().payload else {
            panic!("tree payload")
        };
        assert_eq!(tree.len(), 8);
    }
}
