use super::*;
use crate::complex::SimplicialComplex;
use crate::enumeration::{h_vector, FlagVector};
use crate::error::Error;
use crate::homology::betti;
use crate::scalar::FieldSpec;

fn torus() -> GradedPoset {
    crate::constructions::torus_poset()
}

fn bipyramid() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..5i64 {
        let j = (i + 1) % 5;
        facets.push(vec![i + 1, j + 1, 6]);
        facets.push(vec![i + 1, j + 1, 7]);
    }
    SimplicialComplex::from_facets(facets).unwrap()
}

fn simplex(n: i64) -> SimplicialComplex {
    SimplicialComplex::from_facets([(1..=n).collect::<Vec<_>>()]).unwrap()
}

#[test]
fn triangle_boundary_face_poset() {
    let k = SimplicialComplex::from_facets([[1, 2], [2, 3], [1, 3]]).unwrap();
    let p = face_poset(&k, true).unwrap();
    assert_eq!(p.rank(), 3);
    assert_eq!(p.elements_of_rank(1).len(), 3);
    assert_eq!(p.elements_of_rank(2).len(), 3);
    assert_eq!(p.classify(), PosetClass::Eulerian);
    assert!(face_poset(&k, false).is_err());
}

/// Permutations of `[n]` counted by descent set (bit `i-1` for a descent at `i`).
fn descent_counts(n: usize) -> Vec<i64> {
    use itertools::Itertools;
    let mut out = vec![0; 1 << (n - 1)];
    for perm in (0..n).permutations(n) {
        let mask = (1..n)
            .filter(|&i| perm[i - 1] > perm[i])
            .fold(0, |m, i| m | 1 << (i - 1));
        out[mask] += 1;
    }
    out
}

#[test]
fn boolean_lattice_cd_small() {
    let p = face_poset(&simplex(3), false).unwrap();
    let cd = cd_index(&ab_polynomial(&p)).unwrap();
    assert_eq!(cd.terms, parse_word_polynomial("cc + d").unwrap());
}

#[test]
fn boolean_lattice() {
    for n in 1..=5 {
        let p = face_poset(&simplex(n), false).unwrap();
        assert_eq!(p.rank(), n as usize);
        assert_eq!(
            p.mobius("[]", p.name(p.top())).unwrap(),
            if n % 2 == 0 { 1 } else { -1 }
        );
        assert_eq!(p.classify(), PosetClass::Eulerian);
        let t = toric_h(&p);
        assert_eq!(t.th, vec![1; n as usize]);
        assert_eq!(t.g[0], 1);
        assert!(t.g[1..].iter().all(|&x| x == 0));
        let (_, h) = flag_vectors(&p);
        assert_eq!(h.entries, descent_counts(n as usize));
        let cd = cd_index(&ab_polynomial(&p)).unwrap();
        assert_eq!(cd.coefficient(&"c".repeat(n as usize - 1)), 1);
        assert!(cd.terms.values().all(|&c| c > 0));
        assert!(bayer_billera_defects(&p).iter().all(|b| b.residual() == 0));
        assert_eq!(toric_ds_defect(&p).unwrap(), vec![0; n as usize]);
    }
}

#[test]
fn simplex_with_extra_top_is_neither() {
    let p = face_poset(&simplex(3), true).unwrap();
    assert_eq!(p.classify(), PosetClass::Neither);
    assert_eq!(toric_ds_defect(&p), Err(Error::NotSemiEulerian));
    assert_eq!(semi_eulerian_correction(&p), Err(Error::NotSemiEulerian));
}

#[test]
fn mobius_errors_and_basics() {
    let p = torus();
    assert_eq!(p.mobius("v00", "v00").unwrap(), 1);
    assert_eq!(
        p.mobius("v00", "v11"),
        Err(Error::NotComparable("v00".into(), "v11".into()))
    );
    assert_eq!(p.mobius("bottom", "top").unwrap(), -1);
    assert!(matches!(p.mobius("nope", "top"), Err(Error::NotFound(_))));
}

#[test]
fn torus_toric_and_flag() {
    let p = torus();
    assert_eq!(p.rank(), 4);
    assert_eq!(p.classify(), PosetClass::SemiEulerian);
    assert_eq!(p.order_complex_euler(), 0);
    let t = toric_h(&p);
    assert_eq!(t.th, vec![1, 1, 7, -1]);
    assert_eq!(t.to_string(), "x^3 + x^2 + 7x - 1");
    assert_eq!(toric_ds_defect(&p).unwrap(), vec![0; 4]);

    let bb = bayer_billera_defects(&p);
    let bad: Vec<_> = bb.iter().filter(|b| b.residual() != 0).collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].is_euler(4));
    assert_eq!(bad[0].residual(), -2);

    let fx = semi_eulerian_correction(&p).unwrap();
    assert_eq!(fx.get(&[3]), -2);
    assert_eq!(fx.entries.iter().filter(|&&x| x != 0).count(), 1);

    match cd_index(&ab_polynomial(&p)) {
        Err(Error::NotInCdSpan(res)) => assert!(!res.is_empty()),
        other => panic!("expected residual, got {other:?}"),
    }
}

#[test]
fn bipyramid_cd_index() {
    let k = bipyramid();
    let p = face_poset(&k, true).unwrap();
    let (f, h) = flag_vectors(&p);
    assert_eq!(f.get(&[1]), 7);
    assert_eq!(f.get(&[1, 2, 3]), 60);
    let ab = ABPolynomial::from_flag_h(&h);
    let want =
        parse_word_polynomial("aaa + 6baa + 14aba + 9aab + 6abb + 14bab + 9bba + bbb").unwrap();
    assert_eq!(ab.terms, want);
    let cd = cd_index(&ab).unwrap();
    assert_eq!(cd.terms, parse_word_polynomial("ccc + 5dc + 8cd").unwrap());
    assert_eq!(cd.to_string(), "ccc + 5dc + 8cd");
    assert_eq!(cd.expand(), ab);
    assert!(bayer_billera_defects(&p).iter().all(|b| b.residual() == 0));
    assert_eq!(semi_eulerian_correction(&p).unwrap(), FlagVector::zeros(3));
    assert_eq!(toric_h(&p).th, h_vector(&k).entries().to_vec());
}

#[test]
fn chain_is_neither() {
    let names = ["0", "a", "b", "1"].map(String::from).to_vec();
    let covers = [("0", "a"), ("a", "b"), ("b", "1")].map(|(x, y)| (x.to_string(), y.to_string()));
    let p = GradedPoset::from_covers(names, &covers).unwrap();
    assert_eq!(p.classify(), PosetClass::Neither);
    let oc = order_complex(&p, false);
    assert_eq!(oc.n_facets(), 1);
    assert_eq!(oc.dim(), 3);
}

#[test]
fn order_complex_preserves_homology() {
    let k = bipyramid();
    let p = face_poset(&k, true).unwrap();
    let oc = order_complex(&p, true);
    assert_eq!(oc.dim(), 2);
    assert_eq!(
        betti(&oc, FieldSpec::Rationals),
        betti(&k, FieldSpec::Rationals)
    );
    let c = rank_coloring(&p, &oc).unwrap();
    assert_eq!(c.type_vector, vec![1, 1, 1]);
    crate::enumeration::check_balanced(&oc, &c).unwrap();
    let t = order_complex(&torus(), true);
    assert_eq!(betti(&t, FieldSpec::Rationals).reduced, vec![0, 0, 2, 1]);
}

#[test]
fn rejects_ungraded_and_cycles() {
    let names = ["0", "a", "b", "1"].map(String::from).to_vec();
    let covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b")]
        .map(|(x, y)| (x.to_string(), y.to_string()));
    assert!(matches!(
        GradedPoset::from_covers(names, &covers),
        Err(Error::InvalidPoset(_))
    ));
}

#[test]
fn json_auto_adds_bounds() {
    let text = r#"{"elements":["x","y","z"],"covers":[["x","z"],["y","z"]]}"#;
    let p = parse_poset(text).unwrap();
    assert_eq!(p.rank(), 2);
    assert_eq!(p.name(p.bottom()), "bottom");
    assert_eq!(p.name(p.top()), "z");
    let two_tops = parse_poset(r#"{"elements":["x","y"],"covers":[]}"#).unwrap();
    assert_eq!(two_tops.len(), 4);
    assert_eq!(two_tops.classify(), PosetClass::Eulerian);
    let again = parse_poset(&poset_to_json(&p)).unwrap();
    assert_eq!(again.len(), p.len());
    assert_eq!(toric_h(&again), toric_h(&p));
    assert!(matches!(parse_poset("{"), Err(Error::Parse { .. })));
}
