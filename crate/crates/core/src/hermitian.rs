//! Invariant Hermitian calculus on a metric Lie algebra with an orthogonal
//! complex structure: fundamental form, exterior derivative, Levi-Civita and
//! Bismut connections, torsion, curvature, Ricci form, Lee form and the
//! BKL / CYT / Vaisman verdicts.
//!
//! Conventions:
//! * `J` is stored with columns `J e_i`, and `ω_ij = g(J e_i, e_j)`;
//! * `(dα)(x_0..x_k) = Σ_{i<j} (−1)^{i+j} α([x_i,x_j], x_0..x̂_i..x̂_j..x_k)`;
//! * `dᶜω(x,y,z) = −dω(Jx,Jy,Jz)` and the torsion 3-form is `T = −dᶜω`;
//! * `g(∇_x y, z) = g(D_x y, z) + ½ T(x,y,z)`;
//! * `gamma[i][j][k]` is the `e_k` coefficient of `∇_{e_i} e_j`;
//! * `R_{x,y} = ∇_x∇_y − ∇_y∇_x − ∇_{[x,y]}` and `R(x,y,z,v) = g(R_{x,y}z, v)`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::linalg::{max_abs, null_space, RANK_TOL};
use crate::tensor::{InvariantTensor, SparseForm};

/// Default relative tolerance of every verdict.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A metric Lie algebra with an orthogonal almost complex structure.
#[derive(Debug, Clone)]
pub struct HermitianData {
    alg: MetricLieAlgebra,
    j: DMatrix<f64>,
}

impl HermitianData {
    /// Validates `J² = −1` and `Jᵀ g J = g`; integrability is checked separately.
    pub fn new(alg: MetricLieAlgebra, j: DMatrix<f64>) -> Result<Self> {
        let n = alg.dim();
        if j.nrows() != n || j.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "J is {}x{}, algebra has dimension {n}",
                j.nrows(),
                j.ncols()
            )));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidComplexStructure(format!("odd dimension {n}")));
        }
        let jscale = max_abs(&j).max(1.0);
        let sq = &j * &j + DMatrix::identity(n, n);
        if max_abs(&sq) > 1e-12 * jscale * jscale {
            return Err(Error::InvalidComplexStructure(format!(
                "J² + 1 has size {:.3e}",
                max_abs(&sq)
            )));
        }
        let g = alg.gram();
        let orth = j.transpose() * g * &j - g;
        if max_abs(&orth) > 1e-12 * max_abs(g).max(1.0) * jscale * jscale {
            return Err(Error::InvalidComplexStructure(format!(
                "J is not g-orthogonal (defect {:.3e})",
                max_abs(&orth)
            )));
        }
        Ok(Self { alg, j })
    }

    pub fn alg(&self) -> &MetricLieAlgebra {
        &self.alg
    }

    pub fn j(&self) -> &DMatrix<f64> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn complex_dim(&self) -> usize {
        self.alg.dim() / 2
    }

    /// Max component of `N(x,y) = [Jx,Jy] − J[Jx,y] − J[x,Jy] − [x,y]` over frame pairs.
    pub fn nijenhuis_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..n {
            let x = self.alg.basis_vector(a);
            let jx = self.j.column(a).into_owned();
            for b in a + 1..n {
                let y = self.alg.basis_vector(b);
                let jy = self.j.column(b).into_owned();
                let v = self.alg.bracket(&jx, &jy)
                    - &self.j * self.alg.bracket(&jx, &y)
                    - &self.j * self.alg.bracket(&x, &jy)
                    - self.alg.bracket(&x, &y);
                worst = worst.max(v.amax());
            }
        }
        worst
    }

    pub fn check_integrable(&self, tol: f64) -> Result<()> {
        let d = self.nijenhuis_defect();
        if d > self.alg.effective_tol(tol) {
            return Err(Error::NonIntegrable(d));
        }
        Ok(())
    }
}

/// Invariant exterior derivative of an alternating tensor.
pub fn cartan_eilenberg_d(
    form: &InvariantTensor,
    alg: &MetricLieAlgebra,
) -> Result<InvariantTensor> {
    let n = alg.dim();
    let k = form.degree();
    if form.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "form over dimension {}, algebra has dimension {n}",
            form.dim()
        )));
    }
    if k + 1 > n {
        return Err(Error::DegreeOverflow { degree: k, dim: n });
    }
    let c = alg.constants();
    let mut buf = vec![0usize; k];
    Ok(InvariantTensor::alternating_from_fn(n, k + 1, |idx| {
        let mut total = 0.0;
        for a in 0..=k {
            for b in a + 1..=k {
                let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                let mut pos = 1;
                for (t, &v) in idx.iter().enumerate() {
                    if t != a && t != b {
                        buf[pos] = v;
                        pos += 1;
                    }
                }
                for m in 0..n {
                    let cm = c.get(idx[a], idx[b], m);
                    if cm == 0.0 {
                        continue;
                    }
                    buf[0] = m;
                    total += sign * cm * form.get(&buf);
                }
            }
        }
        total
    }))
}

/// `ω_ij = g(J e_i, e_j)`.
pub fn fundamental_form(h: &HermitianData) -> InvariantTensor {
    let m = h.j.transpose() * h.alg.gram();
    let m = (&m - m.transpose()) * 0.5;
    InvariantTensor::from_matrix(&m, true)
}

pub fn d_omega(h: &HermitianData) -> InvariantTensor {
    cartan_eilenberg_d(&fundamental_form(h), &h.alg).expect("degree 2 < dimension")
}

/// `dᶜω(x,y,z) = −dω(Jx,Jy,Jz)`.
pub fn dc_omega(h: &HermitianData) -> InvariantTensor {
    if h.dim() < 3 {
        return InvariantTensor::zeros(h.dim(), 3, true);
    }
    d_omega(h).pull_back(&h.j).scale(-1.0)
}

/// Bismut torsion 3-form `T = −dᶜω`.
pub fn torsion_form(h: &HermitianData) -> InvariantTensor {
    dc_omega(h).scale(-1.0)
}

/// Defect of `dω(Jx,Jy,Jz) − dω(x,y,Jz) − dω(x,Jy,z) − dω(Jx,y,z) = 0`.
pub fn dwj_defect(h: &HermitianData) -> f64 {
    if h.dim() < 3 {
        return 0.0;
    }
    let dw = d_omega(h);
    let all = dw.pull_back(&h.j);
    let mut total = all;
    for s in 0..3 {
        total = total.sub(&dw.transform_slot(s, &h.j)).expect("same shape");
    }
    total.max_abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConnectionKind {
    LeviCivita,
    Bismut,
}

/// Constant connection coefficients on the frame.
#[derive(Debug, Clone)]
pub struct ConnectionCoefficients {
    dim: usize,
    gamma: Vec<f64>,
    kind: ConnectionKind,
}

impl ConnectionCoefficients {
    /// From lowered coefficients `L[i][j][k] = g(∇_{e_i} e_j, e_k)`.
    fn from_lowered(
        alg: &MetricLieAlgebra,
        lowered: &InvariantTensor,
        kind: ConnectionKind,
    ) -> Self {
        let n = alg.dim();
        let ginv = alg
            .gram()
            .clone()
            .try_inverse()
            .expect("gram is positive definite");
        let raised = lowered.transform_slot(2, &ginv);
        Self {
            dim: n,
            gamma: raised.data().to_vec(),
            kind,
        }
    }

    pub fn kind(&self) -> ConnectionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_k` coefficient of `∇_{e_i} e_j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Matrix of `∇_{e_i}` acting on frame coordinates: entry `(k, j) = Γ^k_{ij}`.
    pub fn matrix(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j, k))
    }

    /// Matrix of `∇_x` for a coordinate vector `x`.
    pub fn matrix_along(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if x[i] != 0.0 {
                m += self.matrix(i) * x[i];
            }
        }
        m
    }

    /// `max |g(∇_i e_j, e_k) + g(e_j, ∇_i e_k)|`.
    pub fn metric_defect(&self, alg: &MetricLieAlgebra) -> f64 {
        let g = alg.gram();
        (0..self.dim)
            .map(|i| {
                let m = self.matrix(i);
                max_abs(&(m.transpose() * g + g * &m))
            })
            .fold(0.0, f64::max)
    }

    /// `max |∇_i J − J ∇_i|`.
    pub fn complex_defect(&self, j: &DMatrix<f64>) -> f64 {
        (0..self.dim)
            .map(|i| {
                let m = self.matrix(i);
                max_abs(&(&m * j - j * &m))
            })
            .fold(0.0, f64::max)
    }

    /// Torsion 3-tensor `g(∇_x y − ∇_y x − [x,y], z)` on the frame.
    pub fn torsion_tensor(&self, alg: &MetricLieAlgebra) -> InvariantTensor {
        let n = self.dim;
        let g = alg.gram();
        let c = alg.constants();
        InvariantTensor::from_fn(n, 3, |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            (0..n)
                .map(|m| (self.get(i, j, m) - self.get(j, i, m) - c.get(i, j, m)) * g[(m, k)])
                .sum()
        })
    }
}

/// `g(D_x y, z) = ½(g([x,y],z) − g([y,z],x) + g([z,x],y))` on frame vectors.
fn koszul_lowered(alg: &MetricLieAlgebra) -> InvariantTensor {
    let n = alg.dim();
    let g = alg.gram();
    let c = alg.constants();
    let low =
        |i: usize, j: usize, k: usize| -> f64 { (0..n).map(|m| c.get(i, j, m) * g[(m, k)]).sum() };
    let mut cl = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cl[(i * n + j) * n + k] = low(i, j, k);
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| cl[(i * n + j) * n + k];
    InvariantTensor::from_fn(n, 3, |idx| {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        0.5 * (at(x, y, z) - at(y, z, x) + at(z, x, y))
    })
}

pub fn levi_civita(alg: &MetricLieAlgebra) -> ConnectionCoefficients {
    ConnectionCoefficients::from_lowered(alg, &koszul_lowered(alg), ConnectionKind::LeviCivita)
}

/// Bismut connection `g(∇_x y, z) = g(D_x y, z) − ½dᶜω(x,y,z)`.
pub fn bismut_connection(h: &HermitianData) -> Result<ConnectionCoefficients> {
    bismut_connection_with_tol(h, DEFAULT_TOL)
}

pub fn bismut_connection_with_tol(h: &HermitianData, tol: f64) -> Result<ConnectionCoefficients> {
    h.check_integrable(tol)?;
    let lowered = koszul_lowered(&h.alg)
        .add(&torsion_form(h).scale(0.5))
        .expect("same shape");
    Ok(ConnectionCoefficients::from_lowered(
        &h.alg,
        &lowered,
        ConnectionKind::Bismut,
    ))
}

/// `(∇_i T)(j_1..j_k) = −Σ_s Σ_m Γ^m_{i j_s} T(.., m, ..)`; the direction is the first slot.
pub fn covariant_derivative_tensor(
    t: &InvariantTensor,
    conn: &ConnectionCoefficients,
) -> InvariantTensor {
    let n = t.dim();
    let k = t.degree();
    let mut buf = vec![0usize; k];
    InvariantTensor::from_fn(n, k + 1, |idx| {
        let i = idx[0];
        let rest = &idx[1..];
        let mut total = 0.0;
        for s in 0..k {
            buf.copy_from_slice(rest);
            for m in 0..n {
                let gm = conn.get(i, rest[s], m);
                if gm == 0.0 {
                    continue;
                }
                buf[s] = m;
                total -= gm * t.get(&buf);
            }
        }
        total
    })
}

/// Curvature of a constant-coefficient connection.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    /// `R(e_i, e_j, e_k, e_v)`.
    pub components: InvariantTensor,
    /// Operators `R_{e_i,e_j}` with entry `(l, k)` the `e_l` coefficient of `R_{e_i,e_j} e_k`.
    operators: Vec<DMatrix<f64>>,
    /// Bismut Ricci form `ρ(x,y) = Σ_a R(x, y, J u_a, u_a)` over a unitary frame.
    pub ricci_form: DMatrix<f64>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.components.dim()
    }

    pub fn operator(&self, i: usize, j: usize) -> &DMatrix<f64> {
        &self.operators[i * self.dim() + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.components.max_abs()
    }

    /// Max of `|R(X,Y,Z,V) − R(Z,V,X,Y)|`.
    pub fn pair_symmetry_defect(&self) -> f64 {
        let r = &self.components;
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for v in 0..n {
                        worst = worst.max((r.get(&[i, j, k, v]) - r.get(&[k, v, i, j])).abs());
                    }
                }
            }
        }
        worst
    }

    /// Max of `|R_{JX,JY} − R_{X,Y}|` as 4-tensors.
    pub fn complex_invariance_defect(&self, j: &DMatrix<f64>) -> f64 {
        let rjj = self.components.transform_slot(0, j).transform_slot(1, j);
        rjj.distance(&self.components).expect("same shape")
    }

    /// Max antisymmetry defect in `(X,Y)` and in `(Z,V)`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let r = &self.components;
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for v in 0..n {
                        let x = r.get(&[i, j, k, v]);
                        worst = worst.max((x + r.get(&[j, i, k, v])).abs());
                        worst = worst.max((x + r.get(&[i, j, v, k])).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Unitary g-orthonormal frame `(u_0, J u_0, u_1, J u_1, …)` built by Gram–Schmidt
/// interleaved with `J`; columns in frame coordinates.
pub fn unitary_frame(h: &HermitianData) -> DMatrix<f64> {
    let n = h.dim();
    let frame = h.alg.frame();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v = h.alg.basis_vector(i);
        for _ in 0..2 {
            for c in &cols {
                let p = frame.inner(c, &v);
                v -= c * p;
            }
        }
        let nv = frame.norm(&v);
        if nv <= 1e-8 {
            continue;
        }
        let v = v / nv;
        let jv = &h.j * &v;
        cols.push(v);
        cols.push(jv);
    }
    crate::linalg::from_columns(n, &cols)
}

pub fn curvature(
    conn: &ConnectionCoefficients,
    alg: &MetricLieAlgebra,
    h: &HermitianData,
) -> CurvatureTensor {
    let n = alg.dim();
    let c = alg.constants();
    let mats: Vec<DMatrix<f64>> = (0..n).map(|i| conn.matrix(i)).collect();
    let mut operators = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = &mats[i] * &mats[j] - &mats[j] * &mats[i];
            for (m, gamma) in mats.iter().enumerate() {
                let cm = c.get(i, j, m);
                if cm != 0.0 {
                    r -= gamma * cm;
                }
            }
            operators.push(r);
        }
    }
    let g = alg.gram();
    // R(i,j,k,v) = Σ_l R^l_{ijk} g_{lv}.
    let lowered: Vec<DMatrix<f64>> = operators.iter().map(|r| r.transpose() * g).collect();
    let components =
        InvariantTensor::from_fn(n, 4, |idx| lowered[idx[0] * n + idx[1]][(idx[2], idx[3])]);
    let u = unitary_frame(h);
    let mut proj = DMatrix::zeros(n, n);
    for a in (0..u.ncols()).step_by(2) {
        let col = u.column(a);
        proj += col * col.transpose();
    }
    let jp = h.j() * &proj;
    let ricci_form = DMatrix::from_fn(n, n, |i, j| {
        // Σ_a u_aᵀ g R_ij J u_a = tr(g R_ij J P).
        (g * &operators[i * n + j] * &jp).trace()
    });
    CurvatureTensor {
        components,
        operators,
        ricci_form,
    }
}

/// Max component of `R_{x,y}z + R_{y,z}x + R_{z,x}y` over frame triples.
pub fn bianchi_defect(r: &CurvatureTensor) -> f64 {
    let n = r.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = r.operator(i, j).column(k)
                    + r.operator(j, k).column(i)
                    + r.operator(k, i).column(j);
                worst = worst.max(v.amax());
            }
        }
    }
    worst
}

/// Lee form together with the least-squares residual of its defining equation.
#[derive(Debug, Clone)]
pub struct LeeForm {
    pub phi: DVector<f64>,
    pub residual: f64,
}

/// Solves `d(ω^{n−1}) = ω^{n−1} ∧ φ`, i.e. `(n−1) ω^{n−2} ∧ dω = ω^{n−1} ∧ φ`.
pub fn lee_form(h: &HermitianData) -> Result<LeeForm> {
    let cn = h.complex_dim();
    let n = h.dim();
    if cn < 2 {
        return Err(Error::LeeFormUndefined(cn));
    }
    if n > 64 {
        return Err(Error::DimensionMismatch(format!(
            "dimension {n} exceeds 64"
        )));
    }
    let u = unitary_frame(h);
    if u.ncols() != n {
        return Err(Error::DegenerateOmega);
    }
    // In the unitary frame ω = Σ_a u^{2a} ∧ u^{2a+1}.
    let pairs: Vec<SparseForm> = (0..cn)
        .map(|a| SparseForm::basis(&[2 * a, 2 * a + 1]))
        .collect();
    let mut omega = SparseForm::zero(2);
    for p in &pairs {
        omega.add_assign(p, 1.0);
    }
    let power = |k: usize| -> SparseForm {
        let mut f = SparseForm::one();
        for _ in 0..k {
            f = f.wedge(&omega);
        }
        f
    };
    let dw = d_omega(h).pull_back(&u).to_sparse_form();
    let lhs = power(cn - 2).wedge(&dw);
    let top = power(cn - 1);
    // Unknown φ' = Σ_a φ'_a u^a; columns are ω^{n−1} ∧ u^a.
    let masks: Vec<u64> = (0..n)
        .map(|skip| ((1u64 << n) - 1) & !(1u64 << skip))
        .collect();
    let mut m = DMatrix::zeros(n, n);
    for a in 0..n {
        let w = top.wedge(&SparseForm::basis(&[a]));
        for (row, mask) in masks.iter().enumerate() {
            m[(row, a)] = w.coefficient(*mask);
        }
    }
    let rhs = DVector::from_fn(n, |row, _| (cn as f64 - 1.0) * lhs.coefficient(masks[row]));
    if null_space(&m, RANK_TOL).ncols() > 0 {
        return Err(Error::DegenerateOmega);
    }
    let phi_u = m.clone().lu().solve(&rhs).ok_or(Error::DegenerateOmega)?;
    let residual = (&m * &phi_u - &rhs).amax();
    // φ(e_i) = Σ_a φ'(u_a) (U⁻¹)_{a i}.
    let uinv = u.try_inverse().ok_or(Error::DegenerateOmega)?;
    let phi = uinv.transpose() * phi_u;
    Ok(LeeForm { phi, residual })
}

/// `(α∧β)(x,y,z) = α(x,y)β(z) + α(y,z)β(x) + α(z,x)β(y)` for a 2-form and a 1-form.
pub fn wedge_2_1(alpha: &InvariantTensor, beta: &DVector<f64>) -> InvariantTensor {
    let n = alpha.dim();
    InvariantTensor::alternating_from_fn(n, 3, |i| {
        alpha.get(&[i[0], i[1]]) * beta[i[2]]
            + alpha.get(&[i[1], i[2]]) * beta[i[0]]
            + alpha.get(&[i[2], i[0]]) * beta[i[1]]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerdictFlags {
    pub kaehler: bool,
    pub pluriclosed: bool,
    pub parallel_torsion: bool,
    pub bkl: bool,
    pub bismut_flat: bool,
    pub cyt: bool,
    /// Not applicable in complex dimension one.
    pub vaisman: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub flags: VerdictFlags,
    pub defects: BTreeMap<String, f64>,
    pub tolerance: f64,
    /// Absolute thresholds: `tolerance·s` for quantities linear in the
    /// structure constants and `tolerance·s²` for quadratic ones, with
    /// `s = max(1, max|c|)`.
    pub thresholds: BTreeMap<String, f64>,
    pub lee_form: Option<Vec<f64>>,
    /// Whether the Bianchi verdict agrees with `bkl`.
    pub bianchi_agrees: bool,
}

/// Computes every defect and sets the flags by threshold.
pub fn classify(h: &HermitianData, tol: f64) -> Result<VerdictReport> {
    let alg = h.alg();
    let s = alg.constants().max_abs().max(1.0);
    let lin = tol * s;
    let quad = tol * s * s;
    let nij = h.nijenhuis_defect();
    if nij > lin {
        return Err(Error::NonIntegrable(nij));
    }
    let n = h.dim();
    let mut defects = BTreeMap::new();
    let mut thresholds = BTreeMap::new();
    let mut put = |name: &str, v: f64, thr: f64| {
        defects.insert(name.to_string(), v);
        thresholds.insert(name.to_string(), thr);
    };
    put("nijenhuis", nij, lin);
    let omega = fundamental_form(h);
    let dw = cartan_eilenberg_d(&omega, alg).ok();
    put("d_omega", dw.as_ref().map_or(0.0, |t| t.max_abs()), lin);
    let t3 = if n >= 3 {
        torsion_form(h)
    } else {
        InvariantTensor::zeros(n, 3, true)
    };
    let ddc = if n >= 4 {
        cartan_eilenberg_d(&t3, alg)?.max_abs()
    } else {
        0.0
    };
    put("ddc_omega", ddc, quad);
    let bismut = bismut_connection_with_tol(h, tol)?;
    let nabla_t = covariant_derivative_tensor(&t3, &bismut).max_abs();
    put("nabla_T", nabla_t, quad);
    let r = curvature(&bismut, alg, h);
    let bianchi = bianchi_defect(&r);
    put("bianchi", bianchi, quad);
    put("curvature", r.max_abs(), quad);
    put("rho", max_abs(&r.ricci_form), quad);

    let (vaisman, lee) = if h.complex_dim() >= 2 {
        let lee = lee_form(h)?;
        let lc = levi_civita(alg);
        let dphi =
            covariant_derivative_tensor(&InvariantTensor::from_covector(&lee.phi), &lc).max_abs();
        let cn = h.complex_dim() as f64;
        let eq = dw
            .as_ref()
            .map(|dw| {
                dw.distance(&wedge_2_1(&omega, &lee.phi).scale(1.0 / (cn - 1.0)))
                    .expect("same shape")
            })
            .unwrap_or(0.0);
        put("lee_residual", lee.residual, lin);
        put("lee_parallel", dphi, quad);
        put("vaisman_eq", eq, lin);
        (
            Some(dphi <= quad && eq <= lin),
            Some(lee.phi.iter().copied().collect()),
        )
    } else {
        (None, None)
    };

    let below = |k: &str| defects[k] <= thresholds[k];
    let pluriclosed = below("ddc_omega");
    let parallel_torsion = below("nabla_T");
    let bkl = pluriclosed && parallel_torsion;
    let flags = VerdictFlags {
        kaehler: below("d_omega"),
        pluriclosed,
        parallel_torsion,
        bkl,
        bismut_flat: below("curvature"),
        cyt: below("rho"),
        vaisman,
    };
    let bianchi_agrees = below("bianchi") == bkl;
    Ok(VerdictReport {
        flags,
        defects,
        tolerance: tol,
        thresholds,
        lee_form: lee,
        bianchi_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_catalog, StructureConstants};

    fn su2_unit_plus_r() -> HermitianData {
        // [e1,e2]=e3 cyclic on the first three vectors, e4 central.
        let sc =
            StructureConstants::from_entries(4, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])
                .unwrap();
        let alg = MetricLieAlgebra::new(sc, DMatrix::identity(4, 4), None).unwrap();
        // J e1 = e2, J e3 = e4.
        let mut j = DMatrix::zeros(4, 4);
        j[(1, 0)] = 1.0;
        j[(0, 1)] = -1.0;
        j[(3, 2)] = 1.0;
        j[(2, 3)] = -1.0;
        HermitianData::new(alg, j).unwrap()
    }

    #[test]
    fn d_of_dual_covector() {
        let alg = build_catalog("su", 2, 0.5).unwrap();
        let sc =
            StructureConstants::from_entries(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])
                .unwrap();
        let unit = MetricLieAlgebra::new(sc, DMatrix::identity(3, 3), None).unwrap();
        let e3 = InvariantTensor::from_covector(&DVector::from_vec(vec![0.0, 0.0, 1.0]));
        let d = cartan_eilenberg_d(&e3, &unit).unwrap();
        assert_eq!(d.get(&[0, 1]), -1.0);
        let dd = cartan_eilenberg_d(&cartan_eilenberg_d(&e3, &alg).unwrap(), &alg).unwrap();
        assert!(dd.max_abs() < 1e-14);
    }

    #[test]
    fn fundamental_form_of_product() {
        let h = su2_unit_plus_r();
        let w = fundamental_form(&h);
        assert_eq!(w.get(&[0, 1]), 1.0);
        assert_eq!(w.get(&[2, 3]), 1.0);
        assert_eq!(w.get(&[0, 2]), 0.0);
    }

    #[test]
    fn torsion_is_minus_bracket_on_bi_invariant_block() {
        let h = su2_unit_plus_r();
        let t = torsion_form(&h);
        assert!((t.get(&[0, 1, 2]) + 1.0).abs() < 1e-14);
        let dd = cartan_eilenberg_d(&d_omega(&h), h.alg()).unwrap();
        assert!(dd.max_abs() < 1e-14);
        assert!(dwj_defect(&h) < 1e-14);
    }

    #[test]
    fn levi_civita_of_bi_invariant_is_half_bracket() {
        let h = su2_unit_plus_r();
        let lc = levi_civita(h.alg());
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let half = 0.5 * h.alg().constants().get(i, j, k);
                    assert!((lc.get(i, j, k) - half).abs() < 1e-14);
                }
            }
        }
        let b = bismut_connection(&h).unwrap();
        assert!(b.metric_defect(h.alg()) < 1e-14);
        assert!(b.complex_defect(h.j()) < 1e-14);
        let tors = b.torsion_tensor(h.alg());
        assert!(tors.distance(&torsion_form(&h)).unwrap() < 1e-14);
    }

    #[test]
    fn round_hopf_verdicts() {
        let h = su2_unit_plus_r();
        let v = classify(&h, DEFAULT_TOL).unwrap();
        assert!(v.flags.bkl && v.flags.bismut_flat && v.flags.cyt);
        assert_eq!(v.flags.vaisman, Some(true));
        assert!(!v.flags.kaehler);
        assert!(v.bianchi_agrees);
    }

    #[test]
    fn flat_kaehler() {
        let alg = MetricLieAlgebra::abelian(4);
        let mut j = DMatrix::zeros(4, 4);
        j[(1, 0)] = 1.0;
        j[(0, 1)] = -1.0;
        j[(3, 2)] = 1.0;
        j[(2, 3)] = -1.0;
        let h = HermitianData::new(alg, j).unwrap();
        let v = classify(&h, DEFAULT_TOL).unwrap();
        assert!(v.flags.kaehler && v.flags.bkl && v.flags.cyt && v.flags.bismut_flat);
        assert!(v.lee_form.unwrap().iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn non_orthogonal_j_rejected() {
        let alg = MetricLieAlgebra::abelian(2);
        let j = DMatrix::from_row_slice(2, 2, &[0.0, -2.0, 0.5, 0.0]);
        assert!(matches!(
            HermitianData::new(alg, j),
            Err(Error::InvalidComplexStructure(_))
        ));
    }
}
