use facenum::constructions::*;
use facenum::enumeration::*;
use facenum::homology::betti;
use facenum::{manifold_report, FieldSpec};

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn move_log_round_trips_through_json() {
    let (start, k, log) = realize_space(Space::S2xS2Sum2, 7, 24).unwrap();
    let text = serde_json::to_string(&log).unwrap();
    let parsed = parse_move_log(&text).unwrap();
    assert_eq!(parsed, log);
    assert_eq!(replay(&start, &parsed).unwrap(), k);
    // each record carries the (f0, f1) it produced
    let last = log.last().unwrap();
    assert_eq!(last.resulting, f0_f1(&k));
}

#[test]
fn replay_reports_the_failing_step() {
    let (start, _, mut log) = realize_space(Space::CP2, 5, 12).unwrap();
    log.swap(0, 1);
    assert!(matches!(
        replay(&start, &log),
        Err(facenum::Error::Replay { step: 0, .. })
    ));
}

#[test]
fn refit_then_realize() {
    let base = stacked_sphere(9, 5).unwrap();
    let out = two_neighborly_refit(&base, &RefitOptions::default()).unwrap();
    assert!(out.complex.is_i_neighborly(2));
    assert_eq!(replay(&base, &out.log).unwrap(), out.complex);
    assert_eq!(betti(&out.complex, Q), betti(&base, Q));
    let h = h_vector(&out.complex);
    let (k, _) = realize_g_pair(&out.complex, &out.tree, &out.rho, h.h(1) + 2, h.h(2) + 7).unwrap();
    let hk = h_vector(&k);
    assert_eq!((hk.h(1), hk.h(2)), (h.h(1) + 2, h.h(2) + 7));
    assert!(manifold_report(&k, Q).unwrap().is_closed_manifold());
}

#[test]
fn even_euler_bounds_on_catalog() {
    let cp2 = audit(&cp2_complex(), Q, &Assertions::default()).unwrap();
    let a = cp2.get("even-euler-a").unwrap();
    // G = 10 against the degree-3 monomials in 4 variables
    assert_eq!(
        (a.status, a.lhs, a.rhs),
        (CheckStatus::Tight, Some(10), Some(10))
    );

    let s2 = audit(&s2xs2_complex(), Q, &Assertions::default()).unwrap();
    let a = s2.get("even-euler-a").unwrap();
    assert_eq!((a.lhs, a.rhs), (Some(40), Some(56)));
    let b = s2.get("even-euler-b").unwrap();
    // h2 - h1 = 18 = C(6,2) + 3, bound C(7,3) + C(4,2)
    assert_eq!((b.lhs, b.rhs), (Some(40), Some(35 + 6)));
    assert!(s2.proven_violations().is_empty());
}

#[test]
fn fill_hits_every_edge_count() {
    let start = kuhnel_lassmann(13, 2).unwrap();
    let want = betti(&start, Q);
    for edges in [65, 66, 70, 77, 78] {
        let (k, log) = s1xs3_fill(13, edges).unwrap();
        assert_eq!(f_vector(&k).f(1) as usize, edges);
        assert_eq!(log.len(), edges - 65);
        assert_eq!(betti(&k, Q), want);
    }
    assert!(matches!(
        s1xs3_fill(13, 79),
        Err(facenum::Error::TargetOutOfRange(_))
    ));
}
