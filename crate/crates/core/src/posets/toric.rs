use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::sphere_euler;
use crate::scalar::binom;

use super::poset::{GradedPoset, PosetClass};

/// Toric h-polynomial `th(P,x) = th_d + th_{d-1} x + … + th_0 x^d` of a poset
/// of rank `d+1`, with its companion `ĝ`.
///
/// `th_i` is the coefficient of `x^{d-i}`; this is the reverse of the
/// ascending indexing used elsewhere in the literature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricPolynomial {
    pub d: usize,
    /// `th_0, …, th_d`.
    pub th: Vec<i64>,
    /// `ĝ_0, …, ĝ_m` with `m = ⌊d/2⌋`, in ascending powers of `x`.
    pub g: Vec<i64>,
}

impl ToricPolynomial {
    /// Coefficient of `x^k`.
    pub fn coefficient(&self, k: usize) -> i64 {
        self.th[self.d - k]
    }

    /// Coefficients in ascending powers of `x`.
    pub fn ascending(&self) -> Vec<i64> {
        self.th.iter().rev().copied().collect()
    }
}

impl fmt::Display for ToricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=self.d).rev() {
            let c = self.coefficient(k);
            if c == 0 {
                continue;
            }
            let (neg, a) = (c < 0, c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if a == 1 && k > 0 {
                String::new()
            } else {
                a.to_string()
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Multiply an ascending polynomial by `(x-1)`.
fn times_x_minus_one(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c;
    }
    out
}

fn truncate_g(h: &[i64]) -> Vec<i64> {
    let d = h.len() - 1;
    (0..=d / 2)
        .map(|k| h[k] - if k > 0 { h[k - 1] } else { 0 })
        .collect()
}

/// The toric h-polynomial via the interval recursion
/// `h(P) = Σ_{z < 1̂} ĝ([0̂,z]) (x-1)^{d - rank z}`, memoized per element.
pub fn toric_h(p: &GradedPoset) -> ToricPolynomial {
    let n = p.len();
    let mut g: Vec<Vec<i64>> = vec![Vec::new(); n];
    // powers[k] = (x-1)^k
    let mut powers = vec![vec![1i64]];
    for k in 1..=p.rank() {
        let next = times_x_minus_one(&powers[k - 1]);
        powers.push(next);
    }
    let mut top_h = Vec::new();
    for &z in p.order() {
        if z == p.bottom() {
            g[z] = vec![1];
            continue;
        }
        let d = p.rank_of(z) - 1;
        let mut h = vec![0i64; d + 1];
        for w in p.strictly_below(z) {
            let pw = &powers[d - p.rank_of(w)];
            for (i, &a) in g[w].iter().enumerate() {
                for (j, &b) in pw.iter().enumerate() {
                    h[i + j] += a * b;
                }
            }
        }
        g[z] = truncate_g(&h);
        if z == p.top() {
            top_h = h;
        }
    }
    let d = p.rank() - 1;
    ToricPolynomial {
        d,
        th: top_h.iter().rev().copied().collect(),
        g: g[p.top()].clone(),
    }
}

/// Entry `i`: `th_{d-i} - th_i - (-1)^i C(d,i) (χ(Δ_P) - χ(S^{d-1}))`.
pub fn toric_ds_defect(p: &GradedPoset) -> Result<Vec<i64>> {
    if p.classify() == PosetClass::Neither {
        return Err(Error::NotSemiEulerian);
    }
    let t = toric_h(p);
    let d = t.d;
    let excess = p.order_complex_euler() - sphere_euler(d as isize - 1);
    Ok((0..=d)
        .map(|i| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            t.th[d - i] - t.th[i] - s * binom(d as i64, i as i64) * excess
        })
        .collect())
}
