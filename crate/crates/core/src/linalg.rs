//! Dense linear-algebra helpers shared by the algebraic modules.
//!
//! Subspaces are passed around as matrices whose columns form a basis. Unless
//! stated otherwise the columns are orthonormal for a fixed Gram matrix, which
//! [`MetricFrame`] keeps together with its Cholesky factor.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Relative threshold used for every rank decision.
pub const RANK_TOL: f64 = 1e-8;

/// Default seed of the generator behind all "generic element" draws.
pub const DEFAULT_SEED: u64 = 0x5eed_b1c1;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.random_range(-1.0..1.0))
}

/// Full singular value decomposition `m = U Σ Vᵀ` with square `U` and `V`.
///
/// Computed with faer: nalgebra's bidiagonal SVD can return wrong singular
/// triples for rank-deficient inputs, which every subspace computation here
/// depends on.
fn full_svd(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let (r, c) = m.shape();
    let f = faer::Mat::<f64>::from_fn(r, c, |i, j| m[(i, j)]);
    let svd = f.svd().expect("SVD of a finite matrix converges");
    let s: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    let (u, v) = (svd.U(), svd.V());
    (
        s,
        DMatrix::from_fn(r, r, |i, j| u[(i, j)]),
        DMatrix::from_fn(c, c, |i, j| v[(i, j)]),
    )
}

/// Euclidean-orthonormal basis of the right null space of `m`.
pub fn null_space(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let (s, _, v) = full_svd(m);
    let smax = s.iter().copied().fold(0.0, f64::max);
    let thr = rel_tol * smax.max(1.0);
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| s.get(i).is_none_or(|&x| x <= thr))
        .map(|i| v.column(i).into_owned())
        .collect();
    from_columns(n, &cols)
}

/// Euclidean-orthonormal basis of the column space of `m`.
pub fn column_space(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return DMatrix::zeros(n, 0);
    }
    let (s, u, _) = full_svd(m);
    let smax = s.iter().copied().fold(0.0, f64::max);
    let thr = rel_tol * smax.max(1.0);
    let cols: Vec<DVector<f64>> = (0..s.len())
        .filter(|&i| s[i] > thr)
        .map(|i| u.column(i).into_owned())
        .collect();
    from_columns(n, &cols)
}

pub fn from_columns(rows: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

pub fn hstack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(a.nrows(), b.nrows());
    let mut m = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((0, a.ncols()), b.shape()).copy_from(b);
    m
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn sym_eigen(m: &DMatrix<f64>) -> SymmetricEigen<f64, Dyn> {
    let sym = (m + m.transpose()) * 0.5;
    SymmetricEigen::new(sym)
}

/// Eigenvalues (ascending) with matching eigenvector columns.
pub fn sorted_sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = sym_eigen(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let cols: Vec<DVector<f64>> = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    (vals, from_columns(m.nrows(), &cols))
}

/// Groups sorted values into clusters whose consecutive gaps stay below `gap`.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if start < i {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// A Gram matrix together with the factors needed to move between frame
/// coordinates and orthonormal coordinates.
#[derive(Debug, Clone)]
pub struct MetricFrame {
    gram: DMatrix<f64>,
    /// Lower Cholesky factor `L` with `gram = L Lᵀ`.
    lower: DMatrix<f64>,
    /// `L⁻ᵀ`, mapping orthonormal coordinates back to frame coordinates.
    lower_inv_t: DMatrix<f64>,
}

impl MetricFrame {
    pub fn new(gram: &DMatrix<f64>) -> Result<Self> {
        let n = gram.nrows();
        if gram.ncols() != n {
            return Err(Error::InvalidMetric("not square".into()));
        }
        let asym = max_abs(&(gram - gram.transpose()));
        if asym > 1e-12 * max_abs(gram).max(1.0) {
            return Err(Error::InvalidMetric(format!("asymmetry {asym:.3e}")));
        }
        if n == 0 {
            return Ok(Self {
                gram: gram.clone(),
                lower: gram.clone(),
                lower_inv_t: gram.clone(),
            });
        }
        let chol = Cholesky::new(gram.clone())
            .ok_or_else(|| Error::InvalidMetric("not positive definite".into()))?;
        let lower = chol.l();
        let lower_inv_t = lower
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidMetric("singular Cholesky factor".into()))?
            .transpose();
        let min_pivot = (0..n).map(|i| lower[(i, i)]).fold(f64::INFINITY, f64::min);
        if min_pivot <= 1e-10 {
            return Err(Error::InvalidMetric(format!(
                "smallest Cholesky pivot {min_pivot:.3e}"
            )));
        }
        Ok(Self {
            gram: gram.clone(),
            lower,
            lower_inv_t,
        })
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.gram * y)[(0, 0)]
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// Frame coordinates to orthonormal coordinates.
    pub fn to_ortho(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        self.lower.transpose() * m
    }

    /// Orthonormal coordinates back to frame coordinates.
    pub fn from_ortho(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        &self.lower_inv_t * m
    }

    /// A g-orthonormal basis of the span of the columns of `vectors`.
    pub fn orthonormal_span(&self, vectors: &DMatrix<f64>) -> DMatrix<f64> {
        let y = self.to_ortho(vectors);
        self.from_ortho(&column_space(&y, RANK_TOL))
    }

    /// g-orthonormal basis of the orthogonal complement of `basis` in the whole space.
    pub fn complement(&self, basis: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.dim();
        if basis.ncols() == 0 {
            return self.from_ortho(&DMatrix::identity(n, n));
        }
        let y = self.to_ortho(basis);
        let comp = null_space(&y.transpose(), RANK_TOL);
        if comp.ncols() == 0 {
            return DMatrix::zeros(n, 0);
        }
        self.from_ortho(&comp)
    }

    /// Orthogonal complement of `sub` inside the span of `outer`.
    pub fn complement_in(&self, sub: &DMatrix<f64>, outer: &DMatrix<f64>) -> DMatrix<f64> {
        let p = self.projector(sub);
        let n = self.dim();
        let residual = (DMatrix::identity(n, n) - p) * outer;
        self.orthonormal_span(&residual)
    }

    /// Matrix of the g-orthogonal projection onto the span of g-orthonormal columns.
    pub fn projector(&self, basis: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.dim();
        if basis.ncols() == 0 {
            return DMatrix::zeros(n, n);
        }
        basis * basis.transpose() * &self.gram
    }

    /// Basis of the intersection of two spans.
    pub fn intersection(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
        if a.ncols() == 0 || b.ncols() == 0 {
            return DMatrix::zeros(self.dim(), 0);
        }
        let a = self.orthonormal_span(a);
        let b = self.orthonormal_span(b);
        let stacked = hstack(&self.to_ortho(&a), &(-self.to_ortho(&b)));
        let ns = null_space(&stacked, RANK_TOL);
        if ns.ncols() == 0 {
            return DMatrix::zeros(self.dim(), 0);
        }
        let coeffs = ns.rows(0, a.ncols()).into_owned();
        self.orthonormal_span(&(a * coeffs))
    }

    /// Max-norm difference between the projectors of two subspaces.
    pub fn subspace_distance(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        max_abs(&(self.projector(a) - self.projector(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_rank_one_map() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&m, RANK_TOL);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&m * &ns)) < 1e-14);
    }

    #[test]
    fn complement_is_g_orthogonal() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.5, 0.0, 0.5, 1.0, 0.2, 0.0, 0.2, 3.0]);
        let frame = MetricFrame::new(&g).unwrap();
        let v = DMatrix::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let s = frame.orthonormal_span(&v);
        let c = frame.complement(&s);
        assert_eq!(c.ncols(), 2);
        assert!(max_abs(&(s.transpose() * &g * &c)) < 1e-12);
        assert!(max_abs(&(c.transpose() * &g * &c - DMatrix::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn intersection_of_planes() {
        let frame = MetricFrame::new(&DMatrix::identity(3, 3)).unwrap();
        let a = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let b = DMatrix::from_column_slice(3, 2, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let i = frame.intersection(&a, &b);
        assert_eq!(i.ncols(), 1);
        assert!((i[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_spd_metric_rejected() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(MetricFrame::new(&g).is_err());
    }
}
