use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enumeration::FlagVector;
use crate::error::{Error, Result};
use crate::homology::sphere_euler;
use crate::scalar::{solve_dense, Field, Rationals, Solve};

use super::poset::{flag_vectors, GradedPoset, PosetClass};

/// Polynomial in noncommuting `a`, `b`, homogeneous of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABPolynomial {
    pub degree: usize,
    pub terms: BTreeMap<String, i64>,
}

/// Polynomial in noncommuting `c` (degree 1) and `d` (degree 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CDIndex {
    pub degree: usize,
    pub terms: BTreeMap<String, i64>,
}

impl ABPolynomial {
    /// `S ↦` the word with `b` at the positions in `S`.
    pub fn from_flag_h(h: &FlagVector) -> Self {
        ABPolynomial {
            degree: h.d,
            terms: h.ab_words().into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    /// From explicit word coefficients; all words must be over `{a,b}` and of one length.
    pub fn from_terms(terms: BTreeMap<String, i64>) -> Result<Self> {
        let degree = terms.keys().next().map_or(0, String::len);
        if let Some(w) = terms
            .keys()
            .find(|w| w.len() != degree || w.chars().any(|c| c != 'a' && c != 'b'))
        {
            return Err(Error::ArgumentOutOfRange(format!("ab-word {w:?}")));
        }
        Ok(ABPolynomial { degree, terms })
    }

    pub fn coefficient(&self, word: &str) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    /// Coefficients over all `2^n` words in flag order (position `i` is bit `i`).
    pub fn dense(&self) -> Vec<i64> {
        (0..1usize << self.degree)
            .map(|m| self.coefficient(&word_of(m, self.degree)))
            .collect()
    }
}

fn word_of(mask: usize, n: usize) -> String {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { 'b' } else { 'a' })
        .collect()
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&String, &i64)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (w, &c)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        } else if c < 0 {
            f.write_str("-")?;
        }
        if c.abs() != 1 {
            write!(f, "{}", c.abs())?;
        }
        f.write_str(w)?;
    }
    Ok(())
}

impl fmt::Display for ABPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().filter(|(_, c)| **c != 0).collect();
        terms.sort_by_key(|(w, _)| (w.matches('b').count(), w.to_string()));
        write_terms(f, &terms)
    }
}

impl fmt::Display for CDIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // c^n first, then the rest in reverse lexicographic order
        let mut terms: Vec<_> = self.terms.iter().filter(|(_, c)| **c != 0).collect();
        terms.sort_by(|(a, _), (b, _)| (a.contains('d')).cmp(&b.contains('d')).then(b.cmp(a)));
        write_terms(f, &terms)
    }
}

/// All cd-words of total degree `n`.
pub fn cd_monomials(n: usize) -> Vec<String> {
    match n {
        0 => vec![String::new()],
        1 => vec!["c".into()],
        _ => {
            let mut out: Vec<String> = cd_monomials(n - 1).into_iter().map(|w| w + "c").collect();
            out.extend(cd_monomials(n - 2).into_iter().map(|w| w + "d"));
            out
        }
    }
}

/// Expand a cd-word into ab-word masks (`c = a+b`, `d = ab+ba`), all coefficient 1.
fn expand_word(word: &str) -> Vec<usize> {
    let mut masks = vec![(0usize, 0usize)];
    for ch in word.chars() {
        masks = masks
            .into_iter()
            .flat_map(|(m, pos)| match ch {
                'c' => vec![(m, pos + 1), (m | 1 << pos, pos + 1)],
                _ => vec![(m | 1 << (pos + 1), pos + 2), (m | 1 << pos, pos + 2)],
            })
            .collect();
    }
    masks.into_iter().map(|(m, _)| m).collect()
}

impl CDIndex {
    pub fn coefficient(&self, word: &str) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    /// Expand over noncommuting `a`, `b`.
    pub fn expand(&self) -> ABPolynomial {
        let mut dense = vec![0i64; 1 << self.degree];
        for (w, &c) in &self.terms {
            for m in expand_word(w) {
                dense[m] += c;
            }
        }
        ABPolynomial {
            degree: self.degree,
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (word_of(m, self.degree), c))
                .collect(),
        }
    }
}

/// Write `ab` in the cd-monomial basis by an exact linear solve; on failure the
/// error carries the nonzero entries of the residual.
pub fn cd_index(ab: &ABPolynomial) -> Result<CDIndex> {
    let n = ab.degree;
    let monomials = cd_monomials(n);
    let q = Rationals;
    let rows = 1usize << n;
    let mut a = vec![vec![q.zero(); monomials.len()]; rows];
    for (j, w) in monomials.iter().enumerate() {
        for m in expand_word(w) {
            a[m][j] = q.one();
        }
    }
    let rhs: Vec<BigRational> = ab.dense().into_iter().map(|c| q.from_i64(c)).collect();
    match solve_dense(&q, &a, &rhs) {
        Solve::Solution(x) => {
            let mut terms = BTreeMap::new();
            for (w, v) in monomials.into_iter().zip(x) {
                let c = v
                    .to_integer()
                    .to_i64()
                    .filter(|_| v.is_integer())
                    .ok_or_else(|| {
                        Error::ArgumentOutOfRange(format!("non-integral cd coefficient {v}"))
                    })?;
                if c != 0 {
                    terms.insert(w, c);
                }
            }
            Ok(CDIndex { degree: n, terms })
        }
        Solve::Inconsistent { residual } => Err(Error::NotInCdSpan(
            residual
                .into_iter()
                .enumerate()
                .filter(|(_, r)| !r.is_zero())
                .map(|(m, r)| (word_of(m, n), r.to_string()))
                .collect(),
        )),
    }
}

/// ab-polynomial of the flag h-vector of `p`.
pub fn ab_polynomial(p: &GradedPoset) -> ABPolynomial {
    ABPolynomial::from_flag_h(&flag_vectors(p).1)
}

/// One instance `Σ_{j=i+1}^{k-1} (-1)^{j-i-1} f_{S∪j} = f_S (1 - (-1)^{k-i-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BayerBilleraInstance {
    pub set: Vec<usize>,
    pub i: usize,
    pub k: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl BayerBilleraInstance {
    pub fn residual(&self) -> i64 {
        self.lhs - self.rhs
    }

    /// The instance equivalent to Euler's formula: `S = ∅`, `i = 0`, `k = rank`.
    pub fn is_euler(&self, rank: usize) -> bool {
        self.set.is_empty() && self.i == 0 && self.k == rank
    }
}

/// Every instance of the Bayer–Billera relations on a flag f-vector of a
/// rank `flag_f.d + 1` poset. `i`, `k` range over consecutive members of `S ∪ {0, rank}`.
pub fn bayer_billera_instances(flag_f: &FlagVector) -> Vec<BayerBilleraInstance> {
    let rank = flag_f.d + 1;
    let mut out = Vec::new();
    for mask in 0..flag_f.entries.len() {
        let set = FlagVector::set_of(mask);
        let mut ends = vec![0];
        ends.extend(&set);
        ends.push(rank);
        for w in ends.windows(2) {
            let (i, k) = (w[0], w[1]);
            if k < i + 2 {
                continue;
            }
            let lhs = (i + 1..k)
                .map(|j| {
                    let s = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
                    s * flag_f.entries[mask | 1 << (j - 1)]
                })
                .sum();
            let factor = if (k - i - 1) % 2 == 0 { 0 } else { 2 };
            out.push(BayerBilleraInstance {
                set: set.clone(),
                i,
                k,
                lhs,
                rhs: factor * flag_f.entries[mask],
            });
        }
    }
    out
}

pub fn bayer_billera_defects(p: &GradedPoset) -> Vec<BayerBilleraInstance> {
    bayer_billera_instances(&p.flag_f())
}

/// The flag vector `f^X`, zero except `f_{{d-1}} = X = χ(Δ_P) - χ(S^{d-2})`,
/// for a semi-Eulerian poset of rank `d`. `f - f^X` satisfies every
/// Bayer–Billera relation.
pub fn semi_eulerian_correction(p: &GradedPoset) -> Result<FlagVector> {
    let class = p.classify();
    if class == PosetClass::Neither {
        return Err(Error::NotSemiEulerian);
    }
    let d = p.rank();
    let mut fx = FlagVector::zeros(d - 1);
    if d % 2 == 1 || class == PosetClass::Eulerian || d < 2 {
        return Ok(fx);
    }
    fx.entries[1 << (d - 2)] = p.order_complex_euler() - sphere_euler(d as isize - 2);
    let mut corrected = p.flag_f();
    for (c, x) in corrected.entries.iter_mut().zip(&fx.entries) {
        *c -= x;
    }
    assert!(
        bayer_billera_instances(&corrected)
            .iter()
            .all(|b| b.residual() == 0),
        "corrected flag f-vector must satisfy the Bayer–Billera relations"
    );
    Ok(fx)
}

/// Parse `"ccc + 5dc + 8cd"` style input (also used for ab-polynomials).
pub fn parse_word_polynomial(text: &str) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    let cleaned = text.replace('-', "+-");
    for term in cleaned.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (neg, rest) = match term.strip_prefix('-') {
            Some(r) => (true, r.trim()),
            None => (false, term),
        };
        let split = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let (num, word) = rest.split_at(split);
        let c: i64 = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| Error::Parse {
                line: 1,
                column: 0,
                message: format!("bad coefficient in {term:?}"),
            })?
        };
        *out.entry(word.trim().to_string()).or_insert(0) += if neg { -c } else { c };
    }
    Ok(out)
}
