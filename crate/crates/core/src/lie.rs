//! Finite-dimensional real Lie algebras with inner products.
//!
//! A [`MetricLieAlgebra`] is a frame `e_0..e_{n-1}`, the structure constants
//! `[e_i, e_j] = Σ_k c^k_{ij} e_k`, and a Gram matrix `g_ij = g(e_i, e_j)`.
//! The metric need not be ad-invariant (Berger spheres are legal inputs);
//! ad-invariance is a query.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    cluster_sorted, column_space, from_columns, hstack, max_abs, null_space, random_vector,
    seeded_rng, sorted_sym_eigen, MetricFrame, DEFAULT_SEED, RANK_TOL,
};

/// Dense table of structure constants, antisymmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    /// `c[(i * dim + j) * dim + k] = c^k_{ij}`.
    c: Vec<f64>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            c: vec![0.0; dim * dim * dim],
        }
    }

    /// Builds constants from `(i, j, k, c^k_{ij})` entries with `i < j`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut sc = Self::zeros(dim);
        for &(i, j, k, v) in entries {
            if i >= j {
                return Err(Error::InvalidConstants(format!(
                    "entry ({i}, {j}, {k}) must have i < j"
                )));
            }
            if j >= dim || k >= dim {
                return Err(Error::InvalidConstants(format!(
                    "entry ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidConstants(format!(
                    "entry ({i}, {j}, {k}) is not finite"
                )));
            }
            let cur = sc.get(i, j, k);
            sc.set(i, j, k, cur + v);
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Sets `c^k_{ij} = v` and `c^k_{ji} = −v`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let d = self.dim;
        if i == j {
            return;
        }
        self.c[(i * d + j) * d + k] = v;
        self.c[(j * d + i) * d + k] = -v;
    }

    /// Nonzero entries with `i < j`, for serialization.
    pub fn entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
    }

    /// Matrix of `ad(e_i)`: column `j` holds the coordinates of `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let d = self.dim;
        DMatrix::from_fn(d, d, |k, j| self.get(i, j, k))
    }

    /// Matrix of `ad(x)` for a coordinate vector `x`.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    m[(k, j)] += x[i] * self.get(i, j, k);
                }
            }
        }
        m
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let d = self.dim;
        let mut out = DVector::zeros(d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += xy * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Max-norm of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` over all triples.
    pub fn jacobi_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    for l in 0..d {
                        let mut s = 0.0;
                        for m in 0..d {
                            s += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Constants expressed in the frame given by the columns of `p`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let d = self.dim;
        let k = p.ncols();
        if p.nrows() != d {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows, algebra has dimension {d}",
                p.nrows()
            )));
        }
        // Coordinates of brackets in the new frame by least squares, so that
        // `p` may also describe a subalgebra.
        let pinv = p
            .clone()
            .pseudo_inverse(1e-13)
            .map_err(|e| Error::DimensionMismatch(e.to_string()))?;
        let mut out = Self::zeros(k);
        let mut worst = 0.0_f64;
        for a in 0..k {
            for b in a + 1..k {
                let v = self.bracket(&p.column(a).into_owned(), &p.column(b).into_owned());
                let coeffs = &pinv * &v;
                worst = worst.max((p * &coeffs - &v).amax());
                for (c, &val) in coeffs.iter().enumerate() {
                    out.set(a, b, c, val);
                }
            }
        }
        let scale = self.max_abs().max(1.0) * max_abs(p).max(1.0).powi(2);
        if worst > 1e-8 * scale {
            return Err(Error::InvalidConstants(format!(
                "span is not closed under the bracket (residual {worst:.3e})"
            )));
        }
        Ok(out)
    }
}

/// Structure constants plus a symmetric positive definite Gram matrix.
#[derive(Debug, Clone)]
pub struct MetricLieAlgebra {
    constants: StructureConstants,
    gram: DMatrix<f64>,
    labels: Vec<String>,
    frame: MetricFrame,
}

impl MetricLieAlgebra {
    pub fn new(
        constants: StructureConstants,
        gram: DMatrix<f64>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = constants.dim();
        if gram.nrows() != n || gram.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "gram is {}x{}, algebra has dimension {n}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for dimension {n}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };
        let frame = MetricFrame::new(&gram)?;
        Ok(Self {
            constants,
            gram,
            labels,
            frame,
        })
    }

    /// Like [`MetricLieAlgebra::new`] but also rejects Jacobi violations.
    pub fn new_checked(
        constants: StructureConstants,
        gram: DMatrix<f64>,
        labels: Option<Vec<String>>,
        tol: f64,
    ) -> Result<Self> {
        let defect = constants.jacobi_defect();
        if defect > tol * constants.max_abs().max(1.0).powi(2) {
            return Err(Error::JacobiViolated(defect));
        }
        Self::new(constants, gram, labels)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(
            StructureConstants::zeros(dim),
            DMatrix::identity(dim, dim),
            Some((0..dim).map(|i| format!("h{i}")).collect()),
        )
        .expect("identity gram is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn frame(&self) -> &MetricFrame {
        &self.frame
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.constants.bracket(x, y)
    }

    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        self.constants.ad(x)
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    /// Absolute tolerance obtained by scaling a relative one with the largest constant.
    pub fn effective_tol(&self, tol: f64) -> f64 {
        tol * self.constants.max_abs().max(1.0)
    }

    pub fn jacobi_defect(&self) -> f64 {
        self.constants.jacobi_defect()
    }

    /// Max over basis triples of `|g([x,y],z) + g(y,[x,z])|`.
    pub fn ad_invariance_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            let ad = self.constants.ad_basis(i);
            let m = ad.transpose() * &self.gram + &self.gram * &ad;
            worst = worst.max(max_abs(&m));
        }
        worst
    }

    /// `B_ij = tr(ad(e_i) ad(e_j))`.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let n = self.dim();
        let ads: Vec<DMatrix<f64>> = (0..n).map(|i| self.constants.ad_basis(i)).collect();
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // tr(AB) = Σ_{kl} A_kl B_lk
                let v = ads[i].component_mul(&ads[j].transpose()).sum();
                b[(i, j)] = v;
                b[(j, i)] = v;
            }
        }
        b
    }

    /// g-orthonormal basis of the center.
    pub fn center(&self) -> DMatrix<f64> {
        let n = self.dim();
        if n == 0 {
            return DMatrix::zeros(0, 0);
        }
        // x is central iff ad(e_i) x = 0 for all i.
        let mut stack = DMatrix::zeros(n * n, n);
        for i in 0..n {
            stack
                .view_mut((i * n, 0), (n, n))
                .copy_from(&self.constants.ad_basis(i));
        }
        let ns = null_space(&stack, RANK_TOL);
        if ns.ncols() == 0 {
            return DMatrix::zeros(n, 0);
        }
        self.frame.orthonormal_span(&ns)
    }

    /// g-orthonormal basis of the derived subalgebra `[g, g]`.
    pub fn derived(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut cols = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                cols.push(DVector::from_fn(n, |k, _| self.constants.get(i, j, k)));
            }
        }
        if cols.is_empty() {
            return DMatrix::zeros(n, 0);
        }
        let span = column_space(&from_columns(n, &cols), RANK_TOL);
        if span.ncols() == 0 {
            return DMatrix::zeros(n, 0);
        }
        self.frame.orthonormal_span(&span)
    }

    /// Compactness test: the Killing form is negative semi-definite and
    /// its kernel is exactly the center.
    pub fn check_compact(&self, tol: f64) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        let b = self.killing_form();
        let scale = max_abs(&b).max(1.0);
        let (vals, _) = sorted_sym_eigen(&b);
        let top = *vals.last().expect("nonempty");
        if top > tol * scale {
            return Err(Error::NotCompact(top));
        }
        let kernel = vals.iter().filter(|v| v.abs() <= 1e-7 * scale).count();
        let center = self.center().ncols();
        if kernel != center {
            return Err(Error::NotCompact(
                vals.iter()
                    .filter(|v| v.abs() <= 1e-7 * scale)
                    .fold(0.0_f64, |a, v| a.max(v.abs()))
                    .max(f64::EPSILON),
            ));
        }
        Ok(())
    }

    /// g-orthonormal basis of the smallest ideal containing the columns of `seed`.
    pub fn ideal_closure(&self, seed: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut span = self.frame.orthonormal_span(seed);
        loop {
            let mut all = span.clone();
            for i in 0..n {
                let img = self.constants.ad_basis(i) * &span;
                all = hstack(&all, &img);
            }
            let next = self.frame.orthonormal_span(&all);
            if next.ncols() == span.ncols() {
                return span;
            }
            span = next;
        }
    }

    /// Derived subalgebra and its simple ideals (compact algebras only).
    pub fn derived_and_ideals(&self) -> Result<(DMatrix<f64>, Vec<DMatrix<f64>>)> {
        self.derived_and_ideals_with_seed(DEFAULT_SEED)
    }

    pub fn derived_and_ideals_with_seed(
        &self,
        seed: u64,
    ) -> Result<(DMatrix<f64>, Vec<DMatrix<f64>>)> {
        self.check_compact(1e-9)?;
        let derived = self.derived();
        let d = derived.ncols();
        if d == 0 {
            return Ok((derived, Vec::new()));
        }
        // On the derived part −B is positive definite and ad-invariant, so in
        // −B-orthonormal coordinates ad(x) is skew and −ad(x)² is symmetric.
        let neg_b = -(derived.transpose() * self.killing_form() * &derived);
        let kframe = MetricFrame::new(&((&neg_b + neg_b.transpose()) * 0.5))
            .map_err(|_| Error::NotCompact(0.0))?;
        let kbasis = derived.clone() * kframe.from_ortho(&DMatrix::identity(d, d));
        // Coordinates of vectors in the derived part relative to the
        // −B-orthonormal `kbasis` are `kbasisᵀ (−B) v`.
        let dual = kbasis.transpose() * (-self.killing_form());
        let coords = |v: &DMatrix<f64>| -> DMatrix<f64> { &dual * v };
        let mut rng = seeded_rng(seed);
        for _attempt in 0..16 {
            let x = &kbasis * random_vector(&mut rng, d);
            let a = coords(&(self.ad(&x) * &kbasis));
            let sq = a.transpose() * &a;
            let (vals, vecs) = sorted_sym_eigen(&sq);
            let top = vals.last().copied().unwrap_or(0.0).max(1e-300);
            let clusters = cluster_sorted(&vals, 1e-6 * top);
            let mut ok = true;
            let mut planes = Vec::new();
            for cl in &clusters {
                let v0 = vals[cl.start];
                if v0.abs() <= 1e-7 * top {
                    continue;
                }
                if cl.len() != 2 {
                    ok = false;
                    break;
                }
                planes.push(&kbasis * vecs.columns(cl.start, 2));
            }
            if !ok {
                continue;
            }
            let mut ideals: Vec<DMatrix<f64>> = Vec::new();
            for plane in planes {
                let v = plane.columns(0, 1).into_owned();
                let covered = ideals.iter().any(|ideal| {
                    let p = self.frame.projector(ideal);
                    (&v - &p * &v).amax() <= 1e-7 * v.amax()
                });
                if !covered {
                    ideals.push(self.ideal_closure(&v));
                }
            }
            let total: usize = ideals.iter().map(|i| i.ncols()).sum();
            if total != d {
                continue;
            }
            ideals.sort_by_key(|ideal| self.pivot_index(ideal));
            return Ok((derived, ideals));
        }
        Err(Error::NotCompact(f64::NAN))
    }

    /// First frame index with a significant component in the span.
    fn pivot_index(&self, basis: &DMatrix<f64>) -> usize {
        let p = self.frame.projector(basis);
        (0..self.dim())
            .find(|&i| p.column(i).amax() > 1e-6)
            .unwrap_or(usize::MAX)
    }

    /// Dimension of the centralizer of a generic element of the span, within the span.
    pub fn cartan_dim_in(&self, basis: &DMatrix<f64>, seed: u64) -> usize {
        let k = basis.ncols();
        if k == 0 {
            return 0;
        }
        let mut rng = seeded_rng(seed);
        let x = basis * random_vector(&mut rng, k);
        let img = self.ad(&x) * basis;
        null_space(&img, 1e-7).ncols()
    }

    /// Rank: dimension of the center plus the ranks of the simple ideals.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.ideal_types()?.iter().map(|t| t.rank()).sum::<usize>() + self.center().ncols())
    }

    /// Isomorphism types of the simple ideals, identified by (dimension, Cartan
    /// dimension). Where two types share both numbers, the candidate list has
    /// length two and the first entry is returned; `roots` refines this.
    pub fn ideal_types(&self) -> Result<Vec<SimpleType>> {
        let (_, ideals) = self.derived_and_ideals()?;
        ideals
            .iter()
            .map(|ideal| {
                let dim = ideal.ncols();
                let rank = self.cartan_dim_in(ideal, DEFAULT_SEED ^ 0xa5);
                SimpleType::candidates(dim, rank)
                    .first()
                    .copied()
                    .ok_or(Error::UnrecognizedIdeal { dim, rank })
            })
            .collect()
    }

    /// The algebra re-expressed in the frame given by the columns of `p`.
    /// When `p` has fewer columns than the dimension its span must be a subalgebra.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let constants = self.constants.change_basis(p)?;
        let gram = p.transpose() * &self.gram * p;
        let gram = (&gram + gram.transpose()) * 0.5;
        Self::new(constants, gram, None)
    }

    /// Whether the column span is closed under the bracket, as a residual.
    pub fn closure_defect(&self, basis: &DMatrix<f64>) -> f64 {
        let p = self.frame.projector(&self.frame.orthonormal_span(basis));
        let n = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..basis.ncols() {
            for b in a + 1..basis.ncols() {
                let v = self.bracket(&basis.column(a).into_owned(), &basis.column(b).into_owned());
                let r = (DMatrix::identity(n, n) - &p) * &v;
                worst = worst.max(r.amax());
            }
        }
        worst
    }
}

/// Block direct sum of metric Lie algebras; labels get a `p{index}:` prefix.
pub fn direct_sum(parts: &[MetricLieAlgebra]) -> Result<MetricLieAlgebra> {
    if parts.is_empty() {
        return Err(Error::EmptyList);
    }
    let n: usize = parts.iter().map(|p| p.dim()).sum();
    let mut sc = StructureConstants::zeros(n);
    let mut gram = DMatrix::zeros(n, n);
    let mut labels = Vec::with_capacity(n);
    let mut off = 0;
    for (idx, part) in parts.iter().enumerate() {
        let d = part.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let v = part.constants.get(i, j, k);
                    if v != 0.0 {
                        sc.set(off + i, off + j, off + k, v);
                    }
                }
            }
        }
        gram.view_mut((off, off), (d, d)).copy_from(&part.gram);
        labels.extend(part.labels.iter().map(|l| format!("p{idx}:{l}")));
        off += d;
    }
    MetricLieAlgebra::new(sc, gram, Some(labels))
}

/// Compact simple families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Su,
    So,
    Sp,
    G,
    F,
    E,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Su => "su",
            Family::So => "so",
            Family::Sp => "sp",
            Family::G => "g",
            Family::F => "f",
            Family::E => "e",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su" => Some(Family::Su),
            "so" => Some(Family::So),
            "sp" => Some(Family::Sp),
            "g" | "g2" => Some(Family::G),
            "f" | "f4" => Some(Family::F),
            "e" => Some(Family::E),
            _ => None,
        }
    }
}

/// A row of the simple-type table: a compact simple Lie algebra up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub param: u32,
}

impl SimpleType {
    pub const fn new(family: Family, param: u32) -> Self {
        Self { family, param }
    }

    /// Whether the pair names a row of the table (su k≥2, so k≥5, sp k≥2, g2, f4, e6–e8).
    pub fn is_valid(&self) -> bool {
        match self.family {
            Family::Su => self.param >= 2,
            Family::So => self.param >= 5,
            Family::Sp => self.param >= 2,
            Family::G => self.param == 2,
            Family::F => self.param == 4,
            Family::E => (6..=8).contains(&self.param),
        }
    }

    pub fn dim(&self) -> usize {
        let k = self.param as usize;
        match self.family {
            Family::Su => k * k - 1,
            Family::So => k * (k - 1) / 2,
            Family::Sp => k * (2 * k + 1),
            Family::G => 14,
            Family::F => 52,
            Family::E => match k {
                6 => 78,
                7 => 133,
                _ => 248,
            },
        }
    }

    pub fn rank(&self) -> usize {
        let k = self.param as usize;
        match self.family {
            Family::Su => k - 1,
            Family::So => k / 2,
            Family::Sp => k,
            Family::G | Family::F | Family::E => k,
        }
    }

    /// Representative under the low-rank isomorphisms sp(2) ≅ so(5) and so(6) ≅ su(4).
    pub fn canonical(self) -> Self {
        match (self.family, self.param) {
            (Family::Sp, 2) => Self::new(Family::So, 5),
            (Family::So, 6) => Self::new(Family::Su, 4),
            _ => self,
        }
    }

    /// Name of the compact simply-connected group with this Lie algebra.
    pub fn group_name(&self) -> String {
        let k = self.param;
        match self.family {
            Family::Su => format!("SU({k})"),
            Family::So => format!("Spin({k})"),
            Family::Sp => format!("Sp({k})"),
            Family::G => "G2".into(),
            Family::F => "F4".into(),
            Family::E => format!("E{k}"),
        }
    }

    /// Whether the catalog can realize this type by explicit matrices.
    pub fn constructible(&self) -> bool {
        match self.family {
            Family::Su => (2..=6).contains(&self.param),
            Family::So => (5..=8).contains(&self.param),
            Family::Sp => (2..=3).contains(&self.param),
            _ => false,
        }
    }

    /// All table rows (canonical representatives only) with dimension at most `max_dim`.
    pub fn table(max_dim: usize) -> Vec<SimpleType> {
        let mut rows = Vec::new();
        let mut k = 2;
        while SimpleType::new(Family::Su, k).dim() <= max_dim {
            rows.push(SimpleType::new(Family::Su, k));
            k += 1;
        }
        let mut k = 5;
        while SimpleType::new(Family::So, k).dim() <= max_dim {
            rows.push(SimpleType::new(Family::So, k));
            k += 1;
        }
        let mut k = 2;
        while SimpleType::new(Family::Sp, k).dim() <= max_dim {
            rows.push(SimpleType::new(Family::Sp, k));
            k += 1;
        }
        for t in [
            SimpleType::new(Family::G, 2),
            SimpleType::new(Family::F, 4),
            SimpleType::new(Family::E, 6),
            SimpleType::new(Family::E, 7),
            SimpleType::new(Family::E, 8),
        ] {
            if t.dim() <= max_dim {
                rows.push(t);
            }
        }
        let mut canon: Vec<SimpleType> = rows.into_iter().map(|t| t.canonical()).collect();
        canon.sort();
        canon.dedup();
        canon
    }

    /// Canonical types with the given dimension and rank.
    pub fn candidates(dim: usize, rank: usize) -> Vec<SimpleType> {
        Self::table(dim)
            .into_iter()
            .filter(|t| t.dim() == dim && t.rank() == rank)
            .collect()
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G | Family::F | Family::E => write!(f, "{}{}", self.family.name(), self.param),
            _ => write!(f, "{}({})", self.family.name(), self.param),
        }
    }
}

/// Catalog constructor for compact simple algebras and abelian algebras.
///
/// Simple families get the metric `scale·(−Killing)`. The frame is obtained
/// by Gram–Schmidt of a fixed matrix basis in the documented order:
/// * su(k): off-diagonal pairs `E_pq − E_qp`, `i(E_pq + E_qp)` for `p < q`
///   in row-major order, then the diagonal `i(E_pp − E_{p+1,p+1})`;
/// * so(k): `E_pq − E_qp` for `p < q` in row-major order;
/// * sp(k): block matrices `[[A, B], [−B̄, Ā]]`, first the u(k) part `A`
///   (su(k) order followed by `iE_pp`), then the symmetric part `B`
///   (`S_pq`, `iS_pq` for `p ≤ q`).
pub fn build_catalog(name: &str, param: i64, scale: f64) -> Result<MetricLieAlgebra> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::NonPositiveScale(scale));
    }
    let unsupported = || Error::UnsupportedFamily {
        family: name.to_string(),
        param,
    };
    let basis: Vec<DMatrix<f64>> = match name.to_ascii_lowercase().as_str() {
        "abelian" | "r" => {
            if param < 0 {
                return Err(unsupported());
            }
            return Ok(MetricLieAlgebra::abelian(param as usize));
        }
        "su" if (2..=6).contains(&param) => su_basis(param as usize),
        "so" if (5..=8).contains(&param) => so_basis(param as usize),
        "sp" if (2..=3).contains(&param) => sp_basis(param as usize),
        _ => return Err(unsupported()),
    };
    let family = Family::parse(name).ok_or_else(unsupported)?;
    let ty = SimpleType::new(family, param as u32);
    let raw = constants_from_matrices(&basis)?;
    let raw_alg = MetricLieAlgebra::new(raw, DMatrix::identity(basis.len(), basis.len()), None)?;
    let target = -raw_alg.killing_form() * scale;
    let p = gram_schmidt_upper(&target)?;
    let constants = raw_alg.constants.change_basis(&p)?;
    let n = basis.len();
    let labels = (0..n).map(|i| format!("{ty}[{i}]")).collect();
    MetricLieAlgebra::new(constants, DMatrix::identity(n, n), Some(labels))
}

/// Columns `p_a` orthonormal for `gram`, with `p_a` in the span of the first `a+1` frame vectors.
fn gram_schmidt_upper(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = gram.nrows();
    let mut p = DMatrix::<f64>::zeros(n, n);
    for a in 0..n {
        let mut v = DVector::<f64>::zeros(n);
        v[a] = 1.0;
        for b in 0..a {
            let pb = p.column(b).into_owned();
            let proj = (pb.transpose() * gram * &v)[(0, 0)];
            v -= pb * proj;
        }
        let nn = (v.transpose() * gram * &v)[(0, 0)];
        if !(nn > 1e-12) {
            return Err(Error::InvalidMetric("Gram–Schmidt breakdown".into()));
        }
        p.set_column(a, &(v / nn.sqrt()));
    }
    Ok(p)
}

/// Expands matrix commutators in a linearly independent matrix basis.
fn constants_from_matrices(basis: &[DMatrix<f64>]) -> Result<StructureConstants> {
    let n = basis.len();
    let frob = |a: &DMatrix<f64>, b: &DMatrix<f64>| a.component_mul(b).sum();
    let f = DMatrix::from_fn(n, n, |i, j| frob(&basis[i], &basis[j]));
    let finv = f
        .try_inverse()
        .ok_or_else(|| Error::InvalidConstants("matrix basis is dependent".into()))?;
    let mut sc = StructureConstants::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let comm = &basis[i] * &basis[j] - &basis[j] * &basis[i];
            let rhs = DVector::from_fn(n, |k, _| frob(&basis[k], &comm));
            let coeffs = &finv * rhs;
            for k in 0..n {
                let v = coeffs[k];
                // The catalog bases have integer structure constants up to the
                // Frobenius normalization; snap away roundoff.
                let snapped = (v * 2.0).round() / 2.0;
                let v = if (v - snapped).abs() < 1e-12 {
                    snapped
                } else {
                    v
                };
                if v != 0.0 {
                    sc.set(i, j, k, v);
                }
            }
        }
    }
    Ok(sc)
}

/// Real 2k×2k image of a complex k×k matrix given by real and imaginary parts.
fn realify(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<f64> {
    let k = re.nrows();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    m.view_mut((0, 0), (k, k)).copy_from(re);
    m.view_mut((k, k), (k, k)).copy_from(re);
    m.view_mut((0, k), (k, k)).copy_from(&(-im));
    m.view_mut((k, 0), (k, k)).copy_from(im);
    m
}

/// Complex anti-Hermitian `k×k` basis as (re, im) pairs; `traceless` drops `iE_pp`
/// in favour of `i(E_pp − E_{p+1,p+1})`.
fn anti_hermitian_parts(k: usize, traceless: bool) -> Vec<(DMatrix<f64>, DMatrix<f64>)> {
    let mut out = Vec::new();
    for p in 0..k {
        for q in p + 1..k {
            let mut re = DMatrix::zeros(k, k);
            re[(p, q)] = 1.0;
            re[(q, p)] = -1.0;
            out.push((re, DMatrix::zeros(k, k)));
            let mut im = DMatrix::zeros(k, k);
            im[(p, q)] = 1.0;
            im[(q, p)] = 1.0;
            out.push((DMatrix::zeros(k, k), im));
        }
    }
    if traceless {
        for p in 0..k.saturating_sub(1) {
            let mut im = DMatrix::zeros(k, k);
            im[(p, p)] = 1.0;
            im[(p + 1, p + 1)] = -1.0;
            out.push((DMatrix::zeros(k, k), im));
        }
    } else {
        for p in 0..k {
            let mut im = DMatrix::zeros(k, k);
            im[(p, p)] = 1.0;
            out.push((DMatrix::zeros(k, k), im));
        }
    }
    out
}

fn su_basis(k: usize) -> Vec<DMatrix<f64>> {
    anti_hermitian_parts(k, true)
        .iter()
        .map(|(re, im)| realify(re, im))
        .collect()
}

fn so_basis(k: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for p in 0..k {
        for q in p + 1..k {
            let mut m = DMatrix::zeros(k, k);
            m[(p, q)] = 1.0;
            m[(q, p)] = -1.0;
            out.push(m);
        }
    }
    out
}

fn sp_basis(k: usize) -> Vec<DMatrix<f64>> {
    // Complex 2k×2k matrices [[A, B], [−B̄, Ā]] with A ∈ u(k), B symmetric.
    let block = |a: &(DMatrix<f64>, DMatrix<f64>), b: &(DMatrix<f64>, DMatrix<f64>)| {
        let mut re = DMatrix::zeros(2 * k, 2 * k);
        let mut im = DMatrix::zeros(2 * k, 2 * k);
        re.view_mut((0, 0), (k, k)).copy_from(&a.0);
        im.view_mut((0, 0), (k, k)).copy_from(&a.1);
        re.view_mut((0, k), (k, k)).copy_from(&b.0);
        im.view_mut((0, k), (k, k)).copy_from(&b.1);
        re.view_mut((k, 0), (k, k)).copy_from(&(-&b.0));
        im.view_mut((k, 0), (k, k)).copy_from(&b.1);
        re.view_mut((k, k), (k, k)).copy_from(&a.0);
        im.view_mut((k, k), (k, k)).copy_from(&(-&a.1));
        realify(&re, &im)
    };
    let zero = (DMatrix::zeros(k, k), DMatrix::zeros(k, k));
    let mut out: Vec<DMatrix<f64>> = anti_hermitian_parts(k, false)
        .iter()
        .map(|a| block(a, &zero))
        .collect();
    for p in 0..k {
        for q in p..k {
            let mut s = DMatrix::zeros(k, k);
            s[(p, q)] = 1.0;
            s[(q, p)] = 1.0;
            out.push(block(&zero, &(s.clone(), DMatrix::zeros(k, k))));
            out.push(block(&zero, &(DMatrix::zeros(k, k), s)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2_unit() -> MetricLieAlgebra {
        // [e1,e2]=e3 cyclic
        let sc =
            StructureConstants::from_entries(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])
                .unwrap();
        MetricLieAlgebra::new(sc, DMatrix::identity(3, 3), None).unwrap()
    }

    #[test]
    fn killing_of_su2_is_minus_two() {
        let b = su2_unit().killing_form();
        assert!(max_abs(&(b + DMatrix::identity(3, 3) * 2.0)) < 1e-14);
    }

    #[test]
    fn su2_catalog_has_cyclic_brackets() {
        let a = build_catalog("su", 2, 0.125).unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!(
                (a.constants().get(i, j, k) - 2.0).abs() < 1e-12,
                "{i}{j}{k}"
            );
        }
    }

    #[test]
    fn catalog_dimensions_and_metric() {
        for (f, p, dim) in [
            ("su", 3, 8),
            ("so", 5, 10),
            ("sp", 2, 10),
            ("sp", 3, 21),
            ("so", 8, 28),
        ] {
            let a = build_catalog(f, p, 0.7).unwrap();
            assert_eq!(a.dim(), dim);
            assert!(a.jacobi_defect() < 1e-12);
            assert!(a.ad_invariance_defect() < 1e-12);
            let b = a.killing_form() * (-0.7);
            assert!(max_abs(&(b - a.gram())) < 1e-12, "{f}({p})");
        }
    }

    #[test]
    fn exceptional_and_out_of_range_rejected() {
        assert!(matches!(
            build_catalog("g2", 2, 1.0),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(matches!(
            build_catalog("so", 4, 1.0),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(matches!(
            build_catalog("su", 3, 0.0),
            Err(Error::NonPositiveScale(_))
        ));
    }

    #[test]
    fn ideals_of_two_su2_with_distinct_scales() {
        let a = direct_sum(&[
            build_catalog("su", 2, 1.0).unwrap(),
            build_catalog("su", 2, 3.0).unwrap(),
        ])
        .unwrap();
        let (derived, ideals) = a.derived_and_ideals().unwrap();
        assert_eq!(derived.ncols(), 6);
        assert_eq!(ideals.len(), 2);
        assert!(ideals.iter().all(|i| i.ncols() == 3));
    }

    #[test]
    fn ideals_of_two_equal_su2() {
        let s = build_catalog("su", 2, 1.0).unwrap();
        let a = direct_sum(&[s.clone(), s]).unwrap();
        let (_, ideals) = a.derived_and_ideals().unwrap();
        assert_eq!(ideals.len(), 2);
    }

    #[test]
    fn ranks() {
        assert_eq!(MetricLieAlgebra::abelian(3).rank().unwrap(), 3);
        assert_eq!(build_catalog("su", 3, 1.0).unwrap().rank().unwrap(), 2);
        let s = build_catalog("su", 2, 1.0).unwrap();
        let a = direct_sum(&[MetricLieAlgebra::abelian(2), s.clone(), s]).unwrap();
        assert_eq!(a.rank().unwrap(), 4);
    }

    #[test]
    fn heisenberg_is_not_compact() {
        let sc = StructureConstants::from_entries(3, &[(1, 2, 0, 1.0)]).unwrap();
        let h = MetricLieAlgebra::new(sc, DMatrix::identity(3, 3), None).unwrap();
        assert!(matches!(h.derived_and_ideals(), Err(Error::NotCompact(_))));
    }

    #[test]
    fn table_matches_classification() {
        let t = SimpleType::table(80);
        assert!(t.contains(&SimpleType::new(Family::G, 2)));
        assert!(t.contains(&SimpleType::new(Family::E, 6)));
        assert!(!t.contains(&SimpleType::new(Family::Sp, 2)));
        assert!(!t.contains(&SimpleType::new(Family::So, 6)));
        assert_eq!(SimpleType::new(Family::So, 7).dim(), 21);
        assert_eq!(SimpleType::candidates(21, 3).len(), 2);
    }

    #[test]
    fn reject_bad_entries() {
        assert!(StructureConstants::from_entries(3, &[(1, 0, 2, 1.0)]).is_err());
        assert!(StructureConstants::from_entries(3, &[(0, 1, 3, 1.0)]).is_err());
    }
}
