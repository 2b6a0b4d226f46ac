//! Inequality auditor: evaluates the linear relations and inequalities for
//! homology manifolds on a concrete complex, each behind its hypotheses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{betti, manifold_report, BettiVector, ManifoldReport};
use crate::scalar::{binom, FieldSpec};

use super::macaulay::binomial_expansion;
use super::schenzel::{expected_top_h_prime, g_invariant, h_prime, short_h_recurrence_defect};
use super::vectors::{ds_defect_of, f_vector, h_from_f, phi, FVector, HVector};

/// How a check's statement is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A theorem; a violation means bad data or a bug.
    Proven,
    /// An identity expected to hold exactly.
    Identity,
    /// An open conjecture, reported for information only.
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Tight,
    Violated,
    Inapplicable,
}

/// One evaluated check, `lhs <= rhs` (or `lhs == rhs` for identities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub name: String,
    pub statement: String,
    pub kind: CheckKind,
    pub status: CheckStatus,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub notes: String,
}

/// Facts about the fundamental group that cannot be computed here.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertions {
    /// The first Betti number is positive (for π₁ based checks).
    pub beta1_positive: bool,
    /// π₁ has a subgroup of this index.
    pub subgroup_index: Option<i64>,
    /// Every vertex link is PL-homeomorphic to a simplex boundary.
    pub combinatorial_manifold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub field: FieldSpec,
    pub assertions: Assertions,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn get(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Proven checks and identities that fail.
    pub fn proven_violations(&self) -> Vec<&AuditEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == CheckStatus::Violated && e.kind != CheckKind::Conjecture)
            .collect()
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let w_name = self
            .entries
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        writeln!(
            f,
            "{:<w_name$}  {:<10}  {:<12}  {:>10}  {:>10}  notes",
            "check", "kind", "status", "lhs", "rhs"
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "{:<w_name$}  {:<10}  {:<12}  {:>10}  {:>10}  {}",
                e.name,
                format!("{:?}", e.kind).to_lowercase(),
                format!("{:?}", e.status).to_lowercase(),
                show(e.lhs),
                show(e.rhs),
                e.notes
            )?;
        }
        Ok(())
    }
}

/// Everything the checks need, computed once.
struct Context<'a> {
    k: &'a SimplicialComplex,
    d: i64,
    n: i64,
    f: FVector,
    h: HVector,
    chi: i64,
    report: ManifoldReport,
    betti_field: BettiVector,
    betti_q: BettiVector,
    assertions: &'a Assertions,
}

impl Context<'_> {
    fn h(&self, i: i64) -> i64 {
        self.h.h(i as isize)
    }

    fn beta_q(&self, i: i64) -> i64 {
        self.betti_q.get(i as isize)
    }

    fn manifold_without_boundary(&self) -> bool {
        self.report.is_homology_manifold && self.report.boundary.is_empty()
    }

    fn closed(&self) -> bool {
        self.report.is_homology_manifold && self.report.closed
    }

    fn beta1_positive(&self) -> (bool, &'static str) {
        if self.beta_q(1) > 0 {
            (true, "rational b1 > 0 computed")
        } else if self.assertions.beta1_positive {
            (true, "b1 > 0 asserted")
        } else {
            (false, "")
        }
    }

    fn pi1_nontrivial(&self) -> bool {
        self.beta1_positive().0 || self.assertions.subgroup_index.is_some_and(|t| t > 1)
    }

    /// Every link of a face with `size` vertices is a homology manifold without boundary.
    fn links_without_boundary(&self, size: usize) -> bool {
        if self.manifold_without_boundary() {
            return true;
        }
        let link_dim = self.d - size as i64 - 1;
        self.k.faces_of_size(size).iter().all(|rho| {
            let lk = self.k.link_ids(rho);
            if link_dim == 0 {
                return lk.n_vertices() == 2;
            }
            manifold_report(&lk, self.report.field)
                .map(|r| r.is_homology_manifold && r.boundary.is_empty())
                .unwrap_or(false)
        })
    }
}

fn ineq(
    name: &str,
    statement: &str,
    kind: CheckKind,
    lhs: i64,
    rhs: i64,
    notes: String,
) -> AuditEntry {
    let status = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => CheckStatus::Holds,
        std::cmp::Ordering::Equal => CheckStatus::Tight,
        std::cmp::Ordering::Greater => CheckStatus::Violated,
    };
    AuditEntry {
        name: name.into(),
        statement: statement.into(),
        kind,
        status,
        lhs: Some(lhs),
        rhs: Some(rhs),
        notes,
    }
}

fn identity(name: &str, statement: &str, lhs: i64, rhs: i64, notes: String) -> AuditEntry {
    AuditEntry {
        name: name.into(),
        statement: statement.into(),
        kind: CheckKind::Identity,
        status: if lhs == rhs {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        },
        lhs: Some(lhs),
        rhs: Some(rhs),
        notes,
    }
}

fn skip(name: &str, statement: &str, kind: CheckKind, why: &str) -> AuditEntry {
    AuditEntry {
        name: name.into(),
        statement: statement.into(),
        kind,
        status: CheckStatus::Inapplicable,
        lhs: None,
        rhs: None,
        notes: why.into(),
    }
}

/// `f_i(M^d)` for Kühnel's `2d+1` vertex manifold with stacked vertex links.
pub fn kuhnel_minimum_f(d: i64, i: i64) -> i64 {
    if i == 0 {
        return 2 * d + 1;
    }
    (2 * d + 1) * phi(2 * d, d - 1, i - 1).expect("valid range") / (i + 1)
}

/// Run every registered check on `k`.
pub fn audit(
    k: &SimplicialComplex,
    field: FieldSpec,
    assertions: &Assertions,
) -> Result<AuditReport> {
    k.require_pure()?;
    if !k.is_connected() {
        return Err(Error::NotConnected);
    }
    let f = f_vector(k);
    let h = h_from_f(&f);
    let report = manifold_report(k, field)?;
    let betti_field = betti(k, field);
    let betti_q = if field == FieldSpec::Rationals {
        betti_field.clone()
    } else {
        betti(k, FieldSpec::Rationals)
    };
    let cx = Context {
        k,
        d: k.d() as i64,
        n: k.n_vertices() as i64,
        chi: k.euler_characteristic(),
        f,
        h,
        report,
        betti_field,
        betti_q,
        assertions,
    };
    let mut entries = Vec::new();
    for check in REGISTRY {
        check(&cx, &mut entries);
    }
    Ok(AuditReport {
        field,
        assertions: assertions.clone(),
        entries,
    })
}

type Check = fn(&Context, &mut Vec<AuditEntry>);

const REGISTRY: &[Check] = &[
    check_klee,
    check_short_h,
    check_universal_g2,
    check_rigidity,
    check_kalai_lower_bound,
    check_covering_index,
    check_covering_beta1,
    check_bku,
    check_min_f,
    check_walkup_general,
    check_walkup_d5,
    check_edge_links,
    check_d7_corollary,
    check_even_euler,
    check_betti_top,
    check_betti_closed,
    check_kalai_conjecture,
    check_schenzel_top,
];

fn check_klee(cx: &Context, out: &mut Vec<AuditEntry>) {
    let (name, st) = ("klee", "h_{d-i} - h_i = (-1)^i C(d,i) (chi - chi(S^{d-1}))");
    if !crate::homology::is_semi_eulerian(cx.k).unwrap_or(false) {
        out.push(skip(name, st, CheckKind::Identity, "not semi-Eulerian"));
        return;
    }
    let defect = ds_defect_of(&cx.h, cx.chi);
    let total: i64 = defect.iter().map(|x| x.abs()).sum();
    out.push(identity(name, st, total, 0, format!("defect {defect:?}")));
}

fn check_short_h(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "(m+1) sh^(m+1)_{i-1} = i sh^(m)_i + (d-m-i+1) sh^(m)_{i-1}";
    let mut total = 0;
    for m in 0..cx.k.d().saturating_sub(1) {
        total += short_h_recurrence_defect(cx.k, m)
            .map(|v| v.iter().map(|x| x.abs()).sum::<i64>())
            .unwrap_or(0);
    }
    out.push(identity(
        "short-h-recurrence",
        st,
        total,
        0,
        "summed over all m".into(),
    ));
}

fn check_universal_g2(cx: &Context, out: &mut Vec<AuditEntry>) {
    let g2 = cx.h(2) - cx.h(1);
    out.push(ineq(
        "g2-upper",
        "h2 - h1 <= C(h1, 2)",
        CheckKind::Proven,
        g2,
        binom(cx.h(1), 2),
        String::new(),
    ));
}

fn check_rigidity(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st0 = "h0 <= h1";
    let st1 = "h1 <= h2";
    if !cx.manifold_without_boundary() || cx.d < 3 {
        let why = "needs a homology manifold without boundary, d >= 3";
        out.push(skip("rigidity-h0-h1", st0, CheckKind::Proven, why));
        out.push(skip("rigidity-h1-h2", st1, CheckKind::Proven, why));
        return;
    }
    out.push(ineq(
        "rigidity-h0-h1",
        st0,
        CheckKind::Proven,
        cx.h(0),
        cx.h(1),
        String::new(),
    ));
    let note = if cx.h(1) == cx.h(2) {
        "equality: stacked sphere"
    } else {
        ""
    };
    out.push(ineq(
        "rigidity-h1-h2",
        st1,
        CheckKind::Proven,
        cx.h(1),
        cx.h(2),
        note.into(),
    ));
}

fn check_kalai_lower_bound(cx: &Context, out: &mut Vec<AuditEntry>) {
    for i in 1..cx.d {
        let name = format!("stacked-lower-f{i}");
        let st = "phi_i(n, d) <= f_i";
        if !cx.manifold_without_boundary() || cx.n < cx.d + 1 {
            out.push(skip(
                &name,
                st,
                CheckKind::Proven,
                "needs a homology manifold without boundary",
            ));
            continue;
        }
        let bound = phi(cx.n, cx.d, i).expect("n >= d+1");
        out.push(ineq(
            &name,
            st,
            CheckKind::Proven,
            bound,
            cx.f.f(i as isize),
            String::new(),
        ));
    }
}

fn check_covering_index(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "(t-1)/t C(d+1,2) <= h2 - h1";
    match cx.assertions.subgroup_index {
        Some(t) if t >= 1 && cx.closed() => {
            let lhs = (t - 1) * binom(cx.d + 1, 2);
            let rhs = t * (cx.h(2) - cx.h(1));
            out.push(ineq(
                "covering-index",
                st,
                CheckKind::Proven,
                lhs,
                rhs,
                format!("scaled by t = {t} (asserted)"),
            ));
        }
        Some(_) => out.push(skip(
            "covering-index",
            st,
            CheckKind::Proven,
            "needs a closed homology manifold",
        )),
        None => out.push(skip(
            "covering-index",
            st,
            CheckKind::Proven,
            "no subgroup index asserted",
        )),
    }
}

fn check_covering_beta1(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "C(d+1,2) <= h2 - h1 when b1 > 0";
    let (positive, why) = cx.beta1_positive();
    if !cx.closed() {
        out.push(skip(
            "covering-b1",
            st,
            CheckKind::Proven,
            "needs a closed homology manifold",
        ));
    } else if !positive {
        out.push(skip(
            "covering-b1",
            st,
            CheckKind::Proven,
            "b1 > 0 neither computed nor asserted",
        ));
    } else {
        out.push(ineq(
            "covering-b1",
            st,
            CheckKind::Proven,
            binom(cx.d + 1, 2),
            cx.h(2) - cx.h(1),
            why.into(),
        ));
    }
}

fn check_bku(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "d + 1 <= h1 for combinatorial manifolds with nontrivial pi1";
    if !cx.assertions.combinatorial_manifold {
        out.push(skip(
            "nontrivial-pi1-h1",
            st,
            CheckKind::Proven,
            "combinatorial manifold not asserted",
        ));
    } else if !cx.pi1_nontrivial() {
        out.push(skip(
            "nontrivial-pi1-h1",
            st,
            CheckKind::Proven,
            "nontrivial pi1 not established",
        ));
    } else {
        out.push(ineq(
            "nontrivial-pi1-h1",
            st,
            CheckKind::Proven,
            cx.d + 1,
            cx.h(1),
            "asserted".into(),
        ));
    }
}

fn check_min_f(cx: &Context, out: &mut Vec<AuditEntry>) {
    let (positive, why) = cx.beta1_positive();
    for i in 0..cx.d {
        let name = format!("min-f{i}");
        let st = "f_i(M^d) <= f_i when b1 > 0";
        if !cx.manifold_without_boundary() || cx.d < 4 {
            out.push(skip(
                &name,
                st,
                CheckKind::Proven,
                "needs a homology manifold without boundary, d >= 4",
            ));
        } else if !positive {
            out.push(skip(
                &name,
                st,
                CheckKind::Proven,
                "b1 > 0 neither computed nor asserted",
            ));
        } else {
            out.push(ineq(
                &name,
                st,
                CheckKind::Proven,
                kuhnel_minimum_f(cx.d, i),
                cx.f.f(i as isize),
                why.into(),
            ));
        }
    }
}

fn check_walkup_general(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "(d-1) h1 <= 3 h3 + (d-4) h2";
    if cx.d < 4 || !cx.links_without_boundary(1) {
        out.push(skip(
            "vertex-link-sum",
            st,
            CheckKind::Proven,
            "needs vertex links without boundary, d >= 4",
        ));
        return;
    }
    let (lhs, rhs) = ((cx.d - 1) * cx.h(1), 3 * cx.h(3) + (cx.d - 4) * cx.h(2));
    let note = if lhs == rhs && cx.d >= 5 {
        "equality: Walkup class"
    } else {
        ""
    };
    out.push(ineq(
        "vertex-link-sum",
        st,
        CheckKind::Proven,
        lhs,
        rhs,
        note.into(),
    ));
}

fn check_walkup_d5(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "h2 - h1 >= -15/2 (chi - 2)";
    if cx.d != 5 || !cx.links_without_boundary(1) {
        out.push(skip(
            "walkup-d5",
            st,
            CheckKind::Proven,
            "needs d = 5 and vertex links without boundary",
        ));
        return;
    }
    out.push(ineq(
        "walkup-d5",
        st,
        CheckKind::Proven,
        -15 * (cx.chi - 2),
        2 * (cx.h(2) - cx.h(1)),
        "both sides doubled".into(),
    ));
}

fn edge_link_form(cx: &Context) -> i64 {
    let d = cx.d;
    12 * cx.h(4) + 6 * (d - 4) * cx.h(3) + (d - 2) * (d - 7) * cx.h(2) - (d - 1) * (d - 2) * cx.h(1)
}

fn check_edge_links(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "12 h4 + 6(d-4) h3 + (d-2)(d-7) h2 - (d-1)(d-2) h1 >= 0";
    if cx.d < 5 || !cx.links_without_boundary(2) {
        out.push(skip(
            "edge-link-sum",
            st,
            CheckKind::Proven,
            "needs edge links without boundary, d >= 5",
        ));
        return;
    }
    out.push(ineq(
        "edge-link-sum",
        st,
        CheckKind::Proven,
        0,
        edge_link_form(cx),
        String::new(),
    ));
}

fn check_d7_corollary(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "chi <= 2 + (h3 - h1)/14";
    if cx.d != 7 || !cx.manifold_without_boundary() {
        out.push(skip(
            "euler-d7",
            st,
            CheckKind::Proven,
            "needs a 6-dimensional homology manifold without boundary",
        ));
        return;
    }
    let lhs = 14 * (cx.chi - 2);
    let rhs = cx.h(3) - cx.h(1);
    // the same bound obtained from the edge-link inequality and Klee's relation
    let via_edges = edge_link_form(cx) >= 0;
    let direct = lhs <= rhs;
    let note = if via_edges == direct {
        "both routes agree".to_string()
    } else {
        format!("routes disagree: edge-link form {via_edges}, direct {direct}")
    };
    let mut e = ineq("euler-d7", st, CheckKind::Proven, lhs, rhs, note);
    if via_edges != direct {
        e.status = CheckStatus::Violated;
    }
    out.push(e);
}

/// `h2 - h1 = C(a,2) + b` with `a` maximal; then `b < a` automatically.
fn two_binomial(g2: i64) -> (i64, i64) {
    match binomial_expansion(g2.max(0), 2).as_slice() {
        [] => (1, 0),
        [(a, 2)] => (*a, 0),
        [(a, 2), (b, 1)] => (*a, *b),
        other => unreachable!("2-expansion has at most two terms: {other:?}"),
    }
}

fn check_even_euler(cx: &Context, out: &mut Vec<AuditEntry>) {
    let (sta, stb) = (
        "G + C(2m,m) b_{m-1} <= C(n-m-2, m+1)",
        "G + C(2m,m) b_{m-1} <= C(a+m-1, m+1) + C(b+m-1, m)",
    );
    let dim = cx.d - 1;
    let g = if dim >= 0 && dim % 2 == 0 && cx.manifold_without_boundary() {
        g_invariant(&cx.betti_q).ok()
    } else {
        None
    };
    let why = if dim % 2 != 0 {
        Some("needs even dimension")
    } else if !cx.manifold_without_boundary() {
        Some("needs a homology manifold without boundary")
    } else if g.unwrap_or(0) <= 0 {
        Some("needs G > 0 over the rationals")
    } else {
        None
    };
    if let Some(why) = why {
        out.push(skip("even-euler-a", sta, CheckKind::Proven, why));
        out.push(skip("even-euler-b", stb, CheckKind::Proven, why));
        return;
    }
    let g = g.expect("checked above");
    let m = dim / 2;
    let lhs = g + binom(2 * m, m) * cx.beta_q(m - 1);
    // degree m+1 monomials in g'_1 = n - 2m - 2 variables
    let rhs_a = binom(cx.n - m - 2, m + 1);
    out.push(ineq(
        "even-euler-a",
        sta,
        CheckKind::Proven,
        lhs,
        rhs_a,
        format!("G = {g}"),
    ));
    let (a, b) = two_binomial(cx.h(2) - cx.h(1));
    let rhs = binom(a + m - 1, m + 1) + binom(b + m - 1, m);
    out.push(ineq(
        "even-euler-b",
        stb,
        CheckKind::Proven,
        lhs,
        rhs,
        format!("G = {g}, h2 - h1 = C({a},2) + C({b},1)"),
    ));
}

fn check_betti_top(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "h'_{d-1} + (d-1) b_{d-3} <= h'_{d-2}";
    if !cx.report.is_homology_manifold || cx.d < 3 {
        out.push(skip(
            "betti-top",
            st,
            CheckKind::Proven,
            "needs a homology manifold",
        ));
        return;
    }
    let hp = h_prime(&cx.h, &cx.betti_q);
    let d = cx.d as usize;
    let lhs = hp[d - 1] + (cx.d - 1) * cx.beta_q(cx.d - 3);
    out.push(ineq(
        "betti-top",
        st,
        CheckKind::Proven,
        lhs,
        hp[d - 2],
        "rational Betti numbers".into(),
    ));
}

fn check_betti_closed(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "h1 + C(d+1,2) b1 - C(d-1,2) b2 <= h2";
    if !cx.closed() {
        out.push(skip(
            "betti-closed",
            st,
            CheckKind::Proven,
            "needs a closed homology manifold",
        ));
        return;
    }
    let lhs = cx.h(1) + binom(cx.d + 1, 2) * cx.beta_q(1) - binom(cx.d - 1, 2) * cx.beta_q(2);
    out.push(ineq(
        "betti-closed",
        st,
        CheckKind::Proven,
        lhs,
        cx.h(2),
        String::new(),
    ));
}

fn check_kalai_conjecture(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "C(d+1,2) b1 <= h2 - h1";
    if !cx.manifold_without_boundary() {
        out.push(skip(
            "b1-conjecture",
            st,
            CheckKind::Conjecture,
            "needs a homology manifold without boundary",
        ));
        return;
    }
    out.push(ineq(
        "b1-conjecture",
        st,
        CheckKind::Conjecture,
        binom(cx.d + 1, 2) * cx.beta_q(1),
        cx.h(2) - cx.h(1),
        "advisory".into(),
    ));
}

fn check_schenzel_top(cx: &Context, out: &mut Vec<AuditEntry>) {
    let st = "h'_d = 1 if orientable, 0 otherwise";
    if !cx.manifold_without_boundary() {
        out.push(skip(
            "top-h-prime",
            st,
            CheckKind::Identity,
            "needs a homology manifold without boundary",
        ));
        return;
    }
    let hp = h_prime(&cx.h, &cx.betti_field);
    let want = expected_top_h_prime(cx.report.orientable);
    out.push(identity(
        "top-h-prime",
        st,
        hp[cx.d as usize],
        want,
        format!("over {}", cx.report.field),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_binomial_decomposition() {
        assert_eq!(two_binomial(6), (4, 0));
        assert_eq!(two_binomial(7), (4, 1));
        assert_eq!(two_binomial(0), (1, 0));
        for g in 0..200 {
            let (a, b) = two_binomial(g);
            assert!(a > b);
            assert_eq!(binom(a, 2) + b, g);
        }
    }

    #[test]
    fn kuhnel_minimum_matches_small_case() {
        assert_eq!(kuhnel_minimum_f(5, 0), 11);
        assert_eq!(kuhnel_minimum_f(5, 1), 55);
        assert_eq!(kuhnel_minimum_f(5, 2), 110);
    }

    #[test]
    fn simplex_boundary_audit() {
        let facets: Vec<Vec<i64>> = (0..6)
            .map(|s| (0..6).filter(|&v| v != s).collect())
            .collect();
        let k = SimplicialComplex::from_facets(facets).unwrap();
        let r = audit(&k, FieldSpec::Rationals, &Assertions::default()).unwrap();
        assert!(r.proven_violations().is_empty(), "{r}");
        assert_eq!(r.get("rigidity-h1-h2").unwrap().status, CheckStatus::Tight);
        assert_eq!(
            r.get("covering-b1").unwrap().status,
            CheckStatus::Inapplicable
        );
    }
}
