//! Macaulay's binomial expansions and M-vectors.

use crate::scalar::binom;

/// Canonical `i`-binomial expansion `a = C(a_i,i) + … + C(a_j,j)` with
/// `a_i > a_{i-1} > … > a_j >= j >= 1`, returned as `(a_k, k)` pairs.
pub fn binomial_expansion(mut a: i64, i: i64) -> Vec<(i64, i64)> {
    assert!(a >= 0 && i >= 1, "expansion needs a >= 0, i >= 1");
    let mut out = Vec::new();
    let mut k = i;
    while a > 0 && k >= 1 {
        // largest n with C(n, k) <= a
        let mut n = k;
        while binom(n + 1, k) <= a {
            n += 1;
        }
        out.push((n, k));
        a -= binom(n, k);
        k -= 1;
    }
    out
}

/// `a^{<i>} = C(a_i+1, i+1) + … + C(a_j+1, j+1)`.
pub fn macaulay_pseudopower(a: i64, i: i64) -> i64 {
    binomial_expansion(a, i)
        .into_iter()
        .map(|(n, k)| binom(n + 1, k + 1))
        .sum()
}

/// `v_0 = 1`, all entries nonnegative, and `v_{i+1} <= v_i^{<i>}` for `i >= 1`.
pub fn is_m_vector(v: &[i64]) -> bool {
    if v.first() != Some(&1) || v.iter().any(|&x| x < 0) {
        return false;
    }
    (1..v.len().saturating_sub(1)).all(|i| v[i + 1] <= macaulay_pseudopower(v[i], i as i64))
}
