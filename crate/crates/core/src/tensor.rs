//! Dense covariant tensors over a fixed frame, and sparse exterior forms.
//!
//! Alternating tensors follow the determinant convention: `e¹∧e²(e₁,e₂) = 1`,
//! so a k-form is `Σ_{I increasing} α(e_I) e^I` and wedge products are shuffle sums.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Degree-k covariant tensor stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantTensor {
    dim: usize,
    degree: usize,
    data: Vec<f64>,
    alternating: bool,
}

/// Sign of the permutation sorting `idx`, or 0 if an index repeats.
pub fn sort_sign(idx: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0.0
    } else {
        sign
    }
}

/// Calls `f` on every multi-index in `0..dim` of length `degree`, row-major.
fn for_each_index(dim: usize, degree: usize, mut f: impl FnMut(&[usize])) {
    if degree == 0 {
        f(&[]);
        return;
    }
    if dim == 0 {
        return;
    }
    let mut idx = vec![0usize; degree];
    loop {
        f(&idx);
        let mut p = degree;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < dim {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Calls `f` on every strictly increasing multi-index.
pub fn for_each_increasing(dim: usize, degree: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        dim: usize,
        start: usize,
        cur: &mut Vec<usize>,
        left: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in start..dim {
            if dim - i < left {
                break;
            }
            cur.push(i);
            rec(dim, i + 1, cur, left - 1, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(degree);
    rec(dim, 0, &mut cur, degree, &mut f);
}

impl InvariantTensor {
    pub fn zeros(dim: usize, degree: usize, alternating: bool) -> Self {
        Self {
            dim,
            degree,
            data: vec![0.0; dim.pow(degree as u32)],
            alternating,
        }
    }

    /// General tensor with `T(i_1..i_k) = f(i_1..i_k)`.
    pub fn from_fn(dim: usize, degree: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(dim, degree, false);
        let mut pos = 0;
        for_each_index(dim, degree, |idx| {
            t.data[pos] = f(idx);
            pos += 1;
        });
        t
    }

    /// Alternating tensor whose values on increasing indices are `f`.
    pub fn alternating_from_fn(
        dim: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Self {
        let mut t = Self::zeros(dim, degree, true);
        let mut values = BTreeMap::new();
        for_each_increasing(dim, degree, |idx| {
            values.insert(idx.to_vec(), f(idx));
        });
        let mut pos = 0;
        let mut buf = vec![0usize; degree];
        for_each_index(dim, degree, |idx| {
            buf.copy_from_slice(idx);
            let s = sort_sign(&mut buf);
            if s != 0.0 {
                t.data[pos] = s * values[&buf];
            }
            pos += 1;
        });
        t
    }

    pub fn from_matrix(m: &DMatrix<f64>, alternating: bool) -> Self {
        let n = m.nrows();
        let mut t = Self::from_fn(n, 2, |i| m[(i[0], i[1])]);
        t.alternating = alternating;
        t
    }

    pub fn from_covector(v: &DVector<f64>) -> Self {
        let mut t = Self::from_fn(v.len(), 1, |i| v[i[0]]);
        t.alternating = true;
        t
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        assert_eq!(self.degree, 2);
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(&[i, j]))
    }

    pub fn to_covector(&self) -> DVector<f64> {
        assert_eq!(self.degree, 1);
        DVector::from_column_slice(&self.data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut t = self.clone();
        t.data.iter_mut().for_each(|x| *x *= s);
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut t = self.clone();
        t.data
            .iter_mut()
            .zip(&other.data)
            .for_each(|(a, b)| *a += b);
        t.alternating = self.alternating && other.alternating;
        Ok(t)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Max-norm of the componentwise difference.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |a, (x, y)| a.max((x - y).abs())))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "tensor shapes ({}, {}) and ({}, {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    /// Max deviation from full antisymmetry, over all adjacent transpositions.
    pub fn alternating_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        let mut buf = vec![0usize; self.degree];
        for_each_index(self.dim, self.degree, |idx| {
            let v = self.get(idx);
            for s in 0..self.degree.saturating_sub(1) {
                buf.copy_from_slice(idx);
                buf.swap(s, s + 1);
                let w = if buf[s] == buf[s + 1] {
                    0.0
                } else {
                    self.get(&buf)
                };
                worst = worst.max((v + w).abs());
                if idx[s] == idx[s + 1] {
                    worst = worst.max(v.abs());
                }
            }
        });
        worst
    }

    /// `T'(.., x, ..) = T(.., M x, ..)` in the given slot; `M` columns are images of frame vectors.
    pub fn transform_slot(&self, slot: usize, m: &DMatrix<f64>) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n, self.degree, false);
        let stride = n.pow((self.degree - slot - 1) as u32);
        for (pos, val) in out.data.iter_mut().enumerate() {
            let i = (pos / stride) % n;
            let base = pos - i * stride;
            let mut s = 0.0;
            for a in 0..n {
                let mai = m[(a, i)];
                if mai != 0.0 {
                    s += mai * self.data[base + a * stride];
                }
            }
            *val = s;
        }
        out
    }

    /// Apply `M` in every slot.
    pub fn pull_back(&self, m: &DMatrix<f64>) -> Self {
        let mut t = self.clone();
        for s in 0..self.degree {
            t = t.transform_slot(s, m);
        }
        t.alternating = self.alternating;
        t
    }

    /// Components over increasing indices as a sparse form (alternating tensors only).
    pub fn to_sparse_form(&self) -> SparseForm {
        let mut f = SparseForm::zero(self.degree);
        for_each_increasing(self.dim, self.degree, |idx| {
            let v = self.get(idx);
            if v != 0.0 {
                let mask = idx.iter().fold(0u64, |m, &i| m | (1u64 << i));
                f.terms.insert(mask, v);
            }
        });
        f
    }
}

/// Exterior form stored as bitmask → coefficient of `e^{i_1}∧…∧e^{i_k}`, `i_1 < … < i_k`.
/// Supports frames of dimension at most 64.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseForm {
    pub degree: usize,
    pub terms: BTreeMap<u64, f64>,
}

impl SparseForm {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        let mut f = Self::zero(0);
        f.terms.insert(0, 1.0);
        f
    }

    pub fn basis(indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        let s = sort_sign(&mut idx);
        let mut f = Self::zero(indices.len());
        if s != 0.0 {
            f.terms
                .insert(idx.iter().fold(0, |m, &i| m | (1u64 << i)), s);
        }
        f
    }

    pub fn add_assign(&mut self, other: &Self, scale: f64) {
        debug_assert_eq!(self.degree, other.degree);
        for (&k, &v) in &other.terms {
            *self.terms.entry(k).or_insert(0.0) += scale * v;
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (&ma, &va) in &self.terms {
            for (&mb, &vb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                // Count pairs (i ∈ a, j ∈ b) with i > j.
                let mut inversions = 0u32;
                let mut rest = ma;
                while rest != 0 {
                    let i = rest.trailing_zeros();
                    rest &= rest - 1;
                    inversions += (mb & ((1u64 << i) - 1)).count_ones();
                }
                let sign = if inversions.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                *out.terms.entry(ma | mb).or_insert(0.0) += sign * va * vb;
            }
        }
        out
    }

    pub fn coefficient(&self, mask: u64) -> f64 {
        self.terms.get(&mask).copied().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let a = SparseForm::basis(&[1]);
        let b = SparseForm::basis(&[0]);
        assert_eq!(a.wedge(&b).coefficient(0b11), -1.0);
        assert_eq!(b.wedge(&a).coefficient(0b11), 1.0);
        assert!(a.wedge(&a).terms.values().all(|v| *v == 0.0));
    }

    #[test]
    fn alternating_fill() {
        let t = InvariantTensor::alternating_from_fn(3, 3, |_| 2.0);
        assert_eq!(t.get(&[0, 1, 2]), 2.0);
        assert_eq!(t.get(&[1, 0, 2]), -2.0);
        assert_eq!(t.get(&[2, 0, 1]), 2.0);
        assert_eq!(t.get(&[0, 0, 2]), 0.0);
        assert_eq!(t.alternating_defect(), 0.0);
    }

    #[test]
    fn slot_transform_matches_definition() {
        let t = InvariantTensor::from_fn(3, 2, |i| (i[0] * 3 + i[1]) as f64);
        let m = DMatrix::from_fn(3, 3, |a, b| (a + 2 * b) as f64 - 1.0);
        let out = t.transform_slot(1, &m);
        for i in 0..3 {
            for j in 0..3 {
                let expect: f64 = (0..3).map(|a| m[(a, j)] * t.get(&[i, a])).sum();
                assert!((out.get(&[i, j]) - expect).abs() < 1e-12);
            }
        }
    }
}
