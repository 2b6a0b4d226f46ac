//! Betti-corrected h-vectors, the G invariant and short simplicial h-vectors.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::BettiVector;
use crate::scalar::binom;

use super::vectors::{h_vector, HVector};

/// `h'_i = h_i + C(d,i) Σ_{j=2}^{i-1} (-1)^{i-j-1} β_{j-1}`.
pub fn h_prime(hv: &HVector, b: &BettiVector) -> Vec<i64> {
    let d = hv.d() as i64;
    (0..=d)
        .map(|i| {
            let s: i64 = (2..i)
                .map(|j| {
                    let sign = if (i - j - 1) % 2 == 0 { 1 } else { -1 };
                    sign * b.get((j - 1) as isize)
                })
                .sum();
            hv.h(i as isize) + binom(d, i) * s
        })
        .collect()
}

/// The value `h'_d` takes on a closed-up homology manifold without boundary.
pub fn expected_top_h_prime(orientable: bool) -> i64 {
    i64::from(orientable)
}

/// `h'_{m+1} - h'_m` for a connected `2m`-dimensional homology manifold
/// without boundary, from the Betti numbers alone.
///
/// Evaluated as `C(2m+1,m) [(-1)^m (χ-2) + S_{m+1} - S_m]` with
/// `S_i = Σ_{k=1}^{i-2} (-1)^{i-k} β_k`, which combines Klee's relation with
/// the Betti correction; under Poincaré duality it equals `C(2m+1,m)(β_m - β_{m-1})`.
pub fn g_invariant(b: &BettiVector) -> Result<i64> {
    let top = b.reduced.len() as isize - 2;
    if top < 0 || top % 2 != 0 {
        return Err(Error::DimensionParity(top));
    }
    let m = top / 2;
    let chi = 1 + b.reduced_euler();
    let s = |i: isize| -> i64 {
        (1..=i - 2)
            .map(|k| {
                if (i - k) % 2 == 0 {
                    b.get(k)
                } else {
                    -b.get(k)
                }
            })
            .sum()
    };
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let c = binom(2 * m as i64 + 1, m as i64);
    Ok(c * (sign * (chi - 2) + s(m + 1) - s(m)))
}

/// `β_k = β_{top-k}` for `1 <= k < top` (unreduced equals reduced there).
pub fn satisfies_duality(b: &BettiVector) -> bool {
    let top = b.reduced.len() as isize - 2;
    (1..top).all(|k| b.get(k) == b.get(top - k))
}

/// `h̃^{(m)}_i = Σ_{|ρ|=m} h_i(lk ρ)`, for `0 <= m <= d`.
pub fn short_h(k: &SimplicialComplex, m: usize) -> Result<Vec<i64>> {
    k.require_pure()?;
    let d = k.d();
    if m > d {
        return Err(Error::ArgumentOutOfRange(format!(
            "m = {m} exceeds d = {d}"
        )));
    }
    let mut out = vec![0; d - m + 1];
    for rho in k.faces_of_size(m) {
        let lk = k.link_ids(&rho);
        let h = h_vector(&lk);
        for (i, v) in h.entries().iter().enumerate() {
            out[i] += v;
        }
    }
    Ok(out)
}

/// Residuals of `(m+1) h̃^{(m+1)}_{i-1} = i h̃^{(m)}_i + (d-m-i+1) h̃^{(m)}_{i-1}`
/// for `1 <= i <= d-m`.
pub fn short_h_recurrence_defect(k: &SimplicialComplex, m: usize) -> Result<Vec<i64>> {
    let d = k.d() as i64;
    let lo = short_h(k, m)?;
    let hi = short_h(k, m + 1)?;
    let mi = m as i64;
    Ok((1..=(d - mi))
        .map(|i| {
            let lhs = (mi + 1) * hi[(i - 1) as usize];
            let rhs = i * lo[i as usize] + (d - mi - i + 1) * lo[(i - 1) as usize];
            lhs - rhs
        })
        .collect())
}
