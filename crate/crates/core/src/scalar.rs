//! Scalar traits: integer counts for invariant vectors and exact fields for elimination.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact signed integer type usable as an invariant-vector entry.
pub trait Count:
    Integer + Signed + Clone + Debug + FromPrimitive + ToPrimitive + std::hash::Hash + Send + Sync
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every Count type")
    }
}

impl<T> Count for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + FromPrimitive
        + ToPrimitive
        + std::hash::Hash
        + Send
        + Sync
{
}

/// Binomial coefficient `C(n, k)` in any count type; zero outside `0 <= k <= n`.
pub fn binomial<T: Count>(n: i64, k: i64) -> T {
    if k < 0 || n < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for j in 0..k {
        acc = acc * T::from_i64_exact(n - j) / T::from_i64_exact(j + 1);
    }
    acc
}

/// `C(n, k)` as `i64`; panics on overflow only for absurd arguments.
pub fn binom(n: i64, k: i64) -> i64 {
    binomial::<i64>(n, k)
}

/// Which coefficient field homology is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::PrimeField(2);

    pub fn is_valid(&self) -> bool {
        match *self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => is_prime(p) && p < (1 << 31),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Arithmetic of an exact field, carried by a descriptor value so that
/// runtime moduli are possible.
pub trait Field {
    type Elem: Clone + Debug + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

/// The rationals, with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
}

/// The prime field `GF(p)` with `p < 2^31`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Option<Self> {
        FieldSpec::PrimeField(p)
            .is_valid()
            .then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Sparse column: sorted `(row, value)` pairs with nonzero values.
pub type SparseColumn<E> = Vec<(usize, E)>;

/// Rank of a sparse matrix given by columns, by standard column reduction.
pub fn sparse_rank<F: Field>(field: &F, columns: Vec<SparseColumn<F::Elem>>) -> usize {
    // pivot row -> reduced column with that lowest row
    let mut pivots: std::collections::HashMap<usize, SparseColumn<F::Elem>> =
        std::collections::HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some((low, lv)) = col.last().cloned() {
            match pivots.get(&low) {
                Some(pcol) => {
                    let plv = &pcol.last().expect("pivot columns are nonempty").1;
                    let factor = field.mul(&lv, &field.inv(plv));
                    col = axpy(field, &col, &factor, pcol);
                }
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a - factor * b` on sorted sparse columns.
fn axpy<F: Field>(
    field: &F,
    a: &SparseColumn<F::Elem>,
    factor: &F::Elem,
    b: &SparseColumn<F::Elem>,
) -> SparseColumn<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = field.neg(&field.mul(factor, &b[j].1));
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of an integer matrix over the field named by `spec`.
pub fn rank_over(spec: FieldSpec, columns: Vec<SparseColumn<i64>>) -> usize {
    match spec {
        FieldSpec::Rationals => {
            let f = Rationals;
            sparse_rank(&f, convert(&f, columns))
        }
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p).expect("validated prime");
            sparse_rank(&f, convert(&f, columns))
        }
    }
}

fn convert<F: Field>(field: &F, columns: Vec<SparseColumn<i64>>) -> Vec<SparseColumn<F::Elem>> {
    columns
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter_map(|(r, v)| {
                    let e = field.from_i64(v);
                    (!field.is_zero(&e)).then_some((r, e))
                })
                .collect()
        })
        .collect()
}

/// Outcome of solving a dense linear system exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Solve<E> {
    /// One particular solution (free variables set to zero).
    Solution(Vec<E>),
    /// The system is inconsistent; carries `rhs - A x` for the pivot particular solution.
    Inconsistent { residual: Vec<E> },
}

/// Solve `A x = rhs` with `A` given row-major as `rows x cols`.
pub fn solve_dense<F: Field>(field: &F, a: &[Vec<F::Elem>], rhs: &[F::Elem]) -> Solve<F::Elem> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for k in c..=cols {
            m[r][k] = field.mul(&m[r][k], &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for k in c..=cols {
                    let t = field.mul(&factor, &m[r][k]);
                    m[i][k] = field.sub(&m[i][k], &t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut x = vec![field.zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    let consistent = (pivot_cols.len()..rows).all(|i| field.is_zero(&m[i][cols]));
    if consistent {
        return Solve::Solution(x);
    }
    let residual = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let ax = row.iter().zip(&x).fold(field.zero(), |acc, (aij, xj)| {
                field.add(&acc, &field.mul(aij, xj))
            });
            field.sub(b, &ax)
        })
        .collect();
    Solve::Inconsistent { residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(5, 7), 0);
        assert_eq!(binom(5, -1), 0);
        assert_eq!(binomial::<BigInt>(30, 15), BigInt::from(155117520));
    }

    #[test]
    fn rank_of_cycle_boundary() {
        // boundary of a triangle: edges 01, 02, 12 over vertices 0..3
        let cols = vec![
            vec![(0, -1), (1, 1)],
            vec![(0, -1), (2, 1)],
            vec![(1, -1), (2, 1)],
        ];
        assert_eq!(rank_over(FieldSpec::Rationals, cols.clone()), 2);
        assert_eq!(rank_over(FieldSpec::GF2, cols), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let cols = vec![vec![(0, 2)]];
        assert_eq!(rank_over(FieldSpec::Rationals, cols.clone()), 1);
        assert_eq!(rank_over(FieldSpec::GF2, cols), 0);
    }

    #[test]
    fn dense_solve_and_residual() {
        let f = Rationals;
        let a = vec![
            vec![f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(1), f.from_i64(0)],
        ];
        match solve_dense(&f, &a, &[f.from_i64(2), f.from_i64(2)]) {
            Solve::Solution(x) => assert_eq!(x[0], f.from_i64(2)),
            other => panic!("{other:?}"),
        }
        match solve_dense(&f, &a, &[f.from_i64(2), f.from_i64(3)]) {
            Solve::Inconsistent { residual } => {
                assert_eq!(residual, vec![f.zero(), f.from_i64(1)])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert!(PrimeField::new(9).is_none());
    }
}
