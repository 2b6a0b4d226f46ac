use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::sphere_euler;
use crate::scalar::{binom, binomial, Count};

/// Face numbers `f_{-1}, f_0, …, f_{d-1}` of a `(d-1)`-complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector<T = i64> {
    entries: Vec<T>,
}

/// `h_0, …, h_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HVector<T = i64> {
    entries: Vec<T>,
}

/// `g_0, …, g_{⌊d/2⌋}` with `g_i = h_i - h_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GVector<T = i64> {
    entries: Vec<T>,
}

impl<T: Count> FVector<T> {
    /// From `f_{-1}, …, f_{d-1}`; `f_{-1}` must be 1.
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.first() != Some(&T::one()) {
            return Err(Error::ArgumentOutOfRange("f_{-1} must equal 1".into()));
        }
        Ok(FVector { entries })
    }

    /// From `f_0, …, f_{d-1}`, prepending `f_{-1} = 1`.
    pub fn from_proper(f: &[T]) -> Self {
        let mut entries = vec![T::one()];
        entries.extend_from_slice(f);
        FVector { entries }
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    /// `f_i` for `-1 <= i <= d-1`, zero elsewhere.
    pub fn f(&self, i: isize) -> T {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.entries.get(k))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// All entries starting at `f_{-1}`.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `f_0, …, f_{d-1}`.
    pub fn proper(&self) -> &[T] {
        &self.entries[1..]
    }
}

impl<T: Count> HVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(HVector { entries })
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    /// `h_i`, zero outside `0..=d`.
    pub fn h(&self, i: isize) -> T {
        usize::try_from(i)
            .ok()
            .and_then(|k| self.entries.get(k))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

impl<T: Count> GVector<T> {
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn g(&self, i: usize) -> T {
        self.entries.get(i).cloned().unwrap_or_else(T::zero)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

impl<T: fmt::Display + Count> fmt::Display for FVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.proper())
    }
}

impl<T: fmt::Display> fmt::Display for HVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

impl<T: fmt::Display> fmt::Display for GVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

/// `h_i = Σ_{j<=i} (-1)^{i-j} C(d-j, i-j) f_{j-1}`.
pub fn h_from_f<T: Count>(fv: &FVector<T>) -> HVector<T> {
    let d = fv.d() as i64;
    let entries = (0..=d)
        .map(|i| {
            (0..=i).fold(T::zero(), |acc, j| {
                let term = binomial::<T>(d - j, i - j) * fv.entries[j as usize].clone();
                if (i - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    HVector { entries }
}

/// `f_{i-1} = Σ_{j<=i} C(d-j, i-j) h_j`.
pub fn f_from_h<T: Count>(hv: &HVector<T>) -> FVector<T> {
    let d = hv.d() as i64;
    let entries = (0..=d)
        .map(|i| {
            (0..=i).fold(T::zero(), |acc, j| {
                acc + binomial::<T>(d - j, i - j) * hv.entries[j as usize].clone()
            })
        })
        .collect();
    FVector { entries }
}

/// `g_0 = h_0`, `g_i = h_i - h_{i-1}` for `i <= ⌊d/2⌋`.
pub fn g_from_h<T: Count>(hv: &HVector<T>) -> GVector<T> {
    let m = hv.d() / 2;
    let entries = (0..=m as isize).map(|i| hv.h(i) - hv.h(i - 1)).collect();
    GVector { entries }
}

/// f-vector of a complex (`d` taken from the largest facet).
pub fn f_vector(k: &SimplicialComplex) -> FVector {
    FVector {
        entries: k.face_counts(),
    }
}

pub fn h_vector(k: &SimplicialComplex) -> HVector {
    h_from_f(&f_vector(k))
}

pub fn g_vector(k: &SimplicialComplex) -> GVector {
    g_from_h(&h_vector(k))
}

/// Defect in Klee's relations: entry `i` is
/// `h_{d-i} - h_i - (-1)^i C(d,i) (χ(K) - χ(S^{d-1}))`.
pub fn ds_defect(k: &SimplicialComplex) -> Result<Vec<i64>> {
    k.require_pure()?;
    Ok(ds_defect_of(&h_vector(k), k.euler_characteristic()))
}

/// Klee defect computed from an h-vector and an Euler characteristic.
pub fn ds_defect_of(hv: &HVector, chi: i64) -> Vec<i64> {
    let d = hv.d() as isize;
    let excess = chi - sphere_euler(d - 1);
    (0..=d)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            hv.h(d - i) - hv.h(i) - sign * binom(d as i64, i as i64) * excess
        })
        .collect()
}

/// Number of `i`-faces of a `(d-1)`-dimensional stacked sphere on `n` vertices.
pub fn phi(n: i64, d: i64, i: i64) -> Result<i64> {
    if d < 1 || n < d + 1 || i < 0 || i > d - 1 {
        return Err(Error::ArgumentOutOfRange(format!("phi({n}, {d}, {i})")));
    }
    Ok(phi_formula(n, d, i))
}

/// Closed form of `φ_i(n, d)` without the range check on `n`.
fn phi_formula(n: i64, d: i64, i: i64) -> i64 {
    if i == 0 {
        n
    } else if i <= d - 2 {
        binom(d, i) * n - binom(d + 1, i + 1) * i
    } else {
        (d - 1) * n - (d + 1) * (d - 2)
    }
}

/// `Σ_j φ_i(N_j, d)` over a composition of `N` into `n` parts; the value only
/// depends on `N` and `n` since `φ_i` is affine in its first argument.
pub fn big_phi(total: i64, n: i64, d: i64, i: i64) -> Result<i64> {
    if n < 1 || total < n || d < 1 || i < 0 || i > d - 1 {
        return Err(Error::ArgumentOutOfRange(format!(
            "Phi({total}, {n}, {d}, {i})"
        )));
    }
    let slope = phi_formula(1, d, i) - phi_formula(0, d, i);
    Ok(n * phi_formula(0, d, i) + slope * total)
}

/// `Σ_j φ_i(N_j, d)` for an explicit composition, each part by the closed form.
pub fn big_phi_of(parts: &[i64], d: i64, i: i64) -> Result<i64> {
    if parts.iter().any(|&p| p < 1) || d < 1 || i < 0 || i > d - 1 {
        return Err(Error::ArgumentOutOfRange(format!("Phi over {parts:?}")));
    }
    Ok(parts.iter().map(|&p| phi_formula(p, d, i)).sum())
}
