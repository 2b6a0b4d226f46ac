//! Fine and flag vectors of balanced complexes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Label, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::sphere_euler;
use crate::scalar::binom;

/// Vertex coloring `φ: V → {1..m}` together with a type vector `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub type_vector: Vec<usize>,
    pub colors: Vec<(Label, usize)>,
}

impl Coloring {
    /// Validates that colors lie in `1..=m` and every color is used.
    pub fn new(type_vector: Vec<usize>, colors: Vec<(Label, usize)>) -> Result<Self> {
        let m = type_vector.len();
        if m == 0 || type_vector.contains(&0) {
            return Err(Error::InvalidColoring(
                "type vector entries must be positive".into(),
            ));
        }
        let mut used = vec![false; m];
        for (l, c) in &colors {
            if *c == 0 || *c > m {
                return Err(Error::InvalidColoring(format!(
                    "vertex {l} has color {c} outside 1..={m}"
                )));
            }
            used[c - 1] = true;
        }
        if let Some(j) = used.iter().position(|u| !u) {
            return Err(Error::InvalidColoring(format!("color {} is unused", j + 1)));
        }
        Ok(Coloring {
            type_vector,
            colors,
        })
    }

    /// Every vertex gets color 1; type `(d)`.
    pub fn trivial(k: &SimplicialComplex) -> Self {
        Coloring {
            type_vector: vec![k.d()],
            colors: k.labels().iter().map(|l| (l.clone(), 1)).collect(),
        }
    }

    /// Color each vertex by a rank function, type `(1, …, 1)`.
    pub fn by_rank<F: Fn(&Label) -> usize>(k: &SimplicialComplex, rank: F) -> Result<Self> {
        let colors = k.labels().iter().map(|l| (l.clone(), rank(l))).collect();
        Coloring::new(vec![1; k.d()], colors)
    }

    pub fn d(&self) -> usize {
        self.type_vector.iter().sum()
    }
}

/// Map `b ≤ a` to an integer; entries are stored with `b_1` varying fastest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineVector {
    pub type_vector: Vec<usize>,
    pub entries: Vec<i64>,
}

impl FineVector {
    pub fn zeros(type_vector: Vec<usize>) -> Self {
        let n = type_vector.iter().map(|a| a + 1).product();
        FineVector {
            type_vector,
            entries: vec![0; n],
        }
    }

    pub fn index(&self, b: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (bj, aj) in b.iter().zip(&self.type_vector) {
            idx += bj * stride;
            stride *= aj + 1;
        }
        idx
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        self.type_vector
            .iter()
            .map(|aj| {
                let r = idx % (aj + 1);
                idx /= aj + 1;
                r
            })
            .collect()
    }

    pub fn get(&self, b: &[usize]) -> i64 {
        self.entries[self.index(b)]
    }

    /// `(b, value)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, i64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.multi_index(i), v))
    }

    /// `Σ_{|b|=i} entry_b` for each `i`.
    pub fn sum_by_degree(&self) -> Vec<i64> {
        let d: usize = self.type_vector.iter().sum();
        let mut out = vec![0; d + 1];
        for (b, v) in self.iter() {
            out[b.iter().sum::<usize>()] += v;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }
}

/// Flag vector indexed by subsets `S ⊆ [d]`, stored as bitmasks (bit `i-1` for `i ∈ S`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagVector {
    pub d: usize,
    pub entries: Vec<i64>,
}

impl FlagVector {
    pub fn zeros(d: usize) -> Self {
        FlagVector {
            d,
            entries: vec![0; 1 << d],
        }
    }

    pub fn mask(set: &[usize]) -> usize {
        set.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn set_of(mask: usize) -> Vec<usize> {
        (0..usize::BITS as usize)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn get(&self, set: &[usize]) -> i64 {
        self.entries[Self::mask(set)]
    }

    /// The flag vector viewed as a fine vector of type `(1, …, 1)`.
    pub fn as_fine(&self) -> FineVector {
        FineVector {
            type_vector: vec![1; self.d],
            entries: self.entries.clone(),
        }
    }

    pub fn from_fine(fine: &FineVector) -> Result<Self> {
        if fine.type_vector.iter().any(|&a| a != 1) {
            return Err(Error::TypeVectorMismatch(
                fine.type_vector.clone(),
                fine.type_vector.len(),
            ));
        }
        Ok(FlagVector {
            d: fine.type_vector.len(),
            entries: fine.entries.clone(),
        })
    }

    /// Encode as an `ab`-word map: position `i` is `b` when `i ∈ S`.
    pub fn ab_words(&self) -> Vec<(String, i64)> {
        (0..self.entries.len())
            .map(|mask| {
                let w: String = (0..self.d)
                    .map(|i| if mask >> i & 1 == 1 { 'b' } else { 'a' })
                    .collect();
                (w, self.entries[mask])
            })
            .collect()
    }
}

/// Color index (0-based) of each vertex of `k`.
fn color_table(k: &SimplicialComplex, coloring: &Coloring) -> Result<Vec<usize>> {
    let map: HashMap<&Label, usize> = coloring.colors.iter().map(|(l, c)| (l, *c)).collect();
    k.labels()
        .iter()
        .map(|l| {
            map.get(l)
                .map(|c| c - 1)
                .ok_or_else(|| Error::InvalidColoring(format!("vertex {l} has no color")))
        })
        .collect()
}

/// Check that every facet meets color class `j` in exactly `a_j` vertices.
pub fn check_balanced(k: &SimplicialComplex, coloring: &Coloring) -> Result<()> {
    let table = color_table(k, coloring)?;
    let a = &coloring.type_vector;
    for f in k.facet_ids() {
        let mut counts = vec![0; a.len()];
        for &v in f {
            counts[table[v as usize]] += 1;
        }
        if &counts != a {
            return Err(Error::NotBalanced {
                facet: k.face_of(f).to_string(),
                counts,
                expected: a.clone(),
            });
        }
    }
    Ok(())
}

/// `f_b`: faces meeting color class `j` in `b_j` vertices.
pub fn fine_f(k: &SimplicialComplex, coloring: &Coloring) -> Result<FineVector> {
    check_balanced(k, coloring)?;
    let table = color_table(k, coloring)?;
    let mut out = FineVector::zeros(coloring.type_vector.clone());
    for s in 0..=k.d() {
        for face in k.faces_of_size(s) {
            let mut b = vec![0; out.type_vector.len()];
            for v in face {
                b[table[v as usize]] += 1;
            }
            let i = out.index(&b);
            out.entries[i] += 1;
        }
    }
    Ok(out)
}

/// `h_b = Σ_{c ≤ b} f_c Π_j (-1)^{b_j-c_j} C(a_j - c_j, b_j - c_j)`.
pub fn fine_h(fine_f: &FineVector) -> FineVector {
    let a = &fine_f.type_vector;
    let mut out = FineVector::zeros(a.clone());
    for bi in 0..out.entries.len() {
        let b = out.multi_index(bi);
        let mut total = 0;
        for (c, fc) in fine_f.iter() {
            if c.iter().zip(&b).any(|(cj, bj)| cj > bj) {
                continue;
            }
            let mut coef = 1;
            for j in 0..a.len() {
                let sign = if (b[j] - c[j]).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                coef *= sign * binom((a[j] - c[j]) as i64, (b[j] - c[j]) as i64);
            }
            total += coef * fc;
        }
        out.entries[bi] = total;
    }
    out
}

/// Entry `b`: `h_{a-b} - h_b - (-1)^{|b|} (χ - χ(S^{d-1})) Π C(a_j, b_j)`.
pub fn fine_ds_defect(fine_h: &FineVector, chi: i64) -> FineVector {
    let a = fine_h.type_vector.clone();
    let d: usize = a.iter().sum();
    let excess = chi - sphere_euler(d as isize - 1);
    let mut out = FineVector::zeros(a.clone());
    for i in 0..out.entries.len() {
        let b = out.multi_index(i);
        let comp: Vec<usize> = a.iter().zip(&b).map(|(aj, bj)| aj - bj).collect();
        let size: usize = b.iter().sum();
        let sign = if size.is_multiple_of(2) { 1 } else { -1 };
        let prod: i64 = a
            .iter()
            .zip(&b)
            .map(|(&aj, &bj)| binom(aj as i64, bj as i64))
            .product();
        out.entries[i] = fine_h.get(&comp) - fine_h.get(&b) - sign * excess * prod;
    }
    out
}

/// `h_S = Σ_{T ⊆ S} (-1)^{|S-T|} f_T`.
pub fn flag_h_from_f(flag_f: &FlagVector) -> FlagVector {
    let entries = (0..flag_f.entries.len())
        .map(|s| {
            let mut total = 0;
            // iterate submasks t of s
            let mut t = s;
            loop {
                let sign = if (s & !t).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                };
                total += sign * flag_f.entries[t];
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            total
        })
        .collect();
    FlagVector {
        d: flag_f.d,
        entries,
    }
}

/// Entry `S`: `h_{[d]-S} - h_S - (-1)^{|S|} (χ - χ(S^{d-1}))`.
pub fn flag_ds_defect(flag_h: &FlagVector, chi: i64) -> FlagVector {
    let h = fine_ds_defect(&flag_h.as_fine(), chi);
    FlagVector {
        d: flag_h.d,
        entries: h.entries,
    }
}

/// Sum a flag vector over the block decomposition of `[d]` given by `a`.
pub fn specialize_flag(flag: &FlagVector, a: &[usize]) -> Result<FineVector> {
    if a.iter().sum::<usize>() != flag.d || a.contains(&0) {
        return Err(Error::TypeVectorMismatch(a.to_vec(), flag.d));
    }
    let mut block = Vec::with_capacity(flag.d);
    for (j, &aj) in a.iter().enumerate() {
        block.extend(std::iter::repeat_n(j, aj));
    }
    let mut out = FineVector::zeros(a.to_vec());
    for (mask, &v) in flag.entries.iter().enumerate() {
        let mut b = vec![0; a.len()];
        for (i, &blk) in block.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b[blk] += 1;
            }
        }
        let idx = out.index(&b);
        out.entries[idx] += v;
    }
    Ok(out)
}

/// Dimension of the affine span of fine h-vectors of type `a`:
/// `(n(a)-1)/2` when every `a_j` is even, else `(n(a)-2)/2`, with `n(a) = Π (a_j+1)`.
pub fn affine_span_dim(a: &[usize]) -> Result<i64> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::ArgumentOutOfRange(
            "type vector must be nonempty and positive".into(),
        ));
    }
    let n: i64 = a.iter().map(|&x| x as i64 + 1).product();
    Ok(if a.iter().all(|x| x % 2 == 0) {
        (n - 1) / 2
    } else {
        (n - 2) / 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_span_examples() {
        assert_eq!(affine_span_dim(&[2, 2]).unwrap(), 4);
        assert_eq!(affine_span_dim(&[1, 2]).unwrap(), 2);
        assert_eq!(affine_span_dim(&[5]).unwrap(), 2);
    }

    #[test]
    fn flag_masks() {
        assert_eq!(FlagVector::mask(&[1, 3]), 0b101);
        assert_eq!(FlagVector::set_of(0b101), vec![1, 3]);
    }

    #[test]
    fn trivial_coloring_gives_ordinary_h() {
        let k =
            SimplicialComplex::from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let c = Coloring::trivial(&k);
        let h = fine_h(&fine_f(&k, &c).unwrap());
        assert_eq!(h.entries, vec![1, 1, 1, 1]);
        assert!(fine_ds_defect(&h, 2).is_zero());
    }

    #[test]
    fn unbalanced_reports_facet() {
        let k = SimplicialComplex::from_facets([[1, 2], [2, 3], [1, 3]]).unwrap();
        let c = Coloring::new(
            vec![1, 1],
            vec![(1.into(), 1), (2.into(), 2), (3.into(), 2)],
        )
        .unwrap();
        assert!(matches!(fine_f(&k, &c), Err(Error::NotBalanced { .. })));
        assert!(Coloring::new(vec![1, 1], vec![(1.into(), 1)]).is_err());
    }

    #[test]
    fn specialize_to_single_block_is_total_count() {
        let flag = FlagVector {
            d: 2,
            entries: vec![1, 3, 3, 6],
        };
        let s = specialize_flag(&flag, &[2]).unwrap();
        assert_eq!(s.entries, vec![1, 6, 6]);
        assert_eq!(
            specialize_flag(&flag, &[1, 1]).unwrap().entries,
            flag.entries
        );
        assert!(specialize_flag(&flag, &[3]).is_err());
    }
}
