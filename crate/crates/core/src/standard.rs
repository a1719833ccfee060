//! Standard BKL models `ℝ^ℓ × S_1 × … × S_s × K` as single metric Lie
//! algebras with their standard complex structure.
//!
//! Frame order: the Euclidean vectors `H_1..H_ℓ`; each Sasaki block as
//! `(H, E, F)`; the maximal torus of `K`; the root planes `(X_α, Y_α)` of `K`
//! in the order produced by [`crate::roots`]. The distinguished vectors
//! `H_1..H_{2m}` are the Euclidean vectors, the Reeb vectors and the torus of
//! `K`, in this order; `J` acts on them by the matrix `A`.
//!
//! Sasaki blocks use an orthonormal frame with `[E,F] = 2cH`, `[H,E] = λF`,
//! `[H,F] = −λE`, where `λ = 2, 0, −2` for the Berger sphere, the Heisenberg
//! group and `SL(2,ℝ)`. The transverse complex structure is `(1/c)DH`, that
//! is `JE = −F`, `JF = E`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{cartan_eilenberg_d, levi_civita, wedge_2_1, HermitianData, DEFAULT_TOL};
use crate::lie::{build_catalog, direct_sum, MetricLieAlgebra, StructureConstants};
use crate::linalg::{from_columns, hstack, max_abs, random_vector, seeded_rng, DEFAULT_SEED};
use crate::roots::{cartan_subalgebra, root_decompose, Positivity};
use crate::tensor::InvariantTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SasakiModel {
    #[serde(rename = "su2-berger")]
    Su2Berger,
    #[serde(rename = "heisenberg")]
    Heisenberg,
    #[serde(rename = "sl2r")]
    Sl2r,
}

impl SasakiModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "su2-berger" => Ok(Self::Su2Berger),
            "heisenberg" => Ok(Self::Heisenberg),
            "sl2r" => Ok(Self::Sl2r),
            other => Err(Error::UnsupportedModel(other.to_string())),
        }
    }

    /// Rotation speed of the transverse frame along the Reeb flow.
    pub fn lambda(self) -> f64 {
        match self {
            Self::Su2Berger => 2.0,
            Self::Heisenberg => 0.0,
            Self::Sl2r => -2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SasakiSpec {
    pub model: SasakiModel,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    pub param: i64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TorusComplex {
    Token(String),
    Matrix(Vec<Vec<f64>>),
}

impl Default for TorusComplex {
    fn default() -> Self {
        TorusComplex::Token("canonical".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct StandardSpec {
    pub euclidean_rank: usize,
    #[serde(default)]
    pub sasaki: Vec<SasakiSpec>,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
    #[serde(default)]
    pub torus_complex: TorusComplex,
}

/// A three-dimensional Sasaki block with frame `(H, E, F)`; the Reeb index is 0.
#[derive(Debug, Clone)]
pub struct SasakiBlock {
    pub model: SasakiModel,
    pub c: f64,
    pub alg: MetricLieAlgebra,
}

impl SasakiBlock {
    pub const REEB: usize = 0;

    /// Transverse complex structure on the block frame (zero on the Reeb vector).
    pub fn transverse_j() -> DMatrix<f64> {
        let mut j = DMatrix::zeros(3, 3);
        j[(2, 1)] = -1.0;
        j[(1, 2)] = 1.0;
        j
    }
}

pub fn build_sasaki_block(model: SasakiModel, c: f64) -> Result<SasakiBlock> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::NonPositiveC(c));
    }
    let l = model.lambda();
    let mut entries = vec![(1, 2, 0, 2.0 * c)];
    if l != 0.0 {
        entries.push((0, 1, 2, l));
        entries.push((0, 2, 1, -l));
    }
    let sc = StructureConstants::from_entries(3, &entries)?;
    let labels = vec!["H".to_string(), "E".to_string(), "F".to_string()];
    let alg = MetricLieAlgebra::new(sc, DMatrix::identity(3, 3), Some(labels))?;
    Ok(SasakiBlock { model, c, alg })
}

/// Checks that `ξ` is a unit Killing field with
/// `(1/c²) D²_{X,Y} ξ = g(ξ,Y) X − g(X,Y) ξ` for `X, Y` in the span of `directions`.
/// Returns the largest violation among the three conditions.
pub fn sasaki_defect(
    alg: &MetricLieAlgebra,
    reeb: &DVector<f64>,
    c: f64,
    directions: &DMatrix<f64>,
) -> f64 {
    let lc = levi_civita(alg);
    let frame = alg.frame();
    let mut worst = (frame.norm(reeb) - 1.0).abs();
    // D_x ξ as a function of the frame vector x.
    let dxi = |x: &DVector<f64>| lc.matrix_along(x) * reeb;
    for a in 0..directions.ncols() {
        let x = directions.column(a).into_owned();
        let dx = dxi(&x);
        for b in 0..directions.ncols() {
            let y = directions.column(b).into_owned();
            let killing = frame.inner(&dx, &y) + frame.inner(&x, &dxi(&y));
            worst = worst.max(killing.abs());
            // D²_{x,y} ξ = D_x(D_y ξ) − D_{D_x y} ξ.
            let dy = dxi(&y);
            let dxy = lc.matrix_along(&x) * &y;
            let second = lc.matrix_along(&x) * dy - dxi(&dxy);
            let expect = &x * frame.inner(reeb, &y) - reeb * frame.inner(&x, &y);
            let diff = second / (c * c) - expect;
            worst = worst.max(diff.amax());
        }
    }
    worst
}

/// Index layout of a built standard model.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub euclidean: std::ops::Range<usize>,
    /// Start index of each Sasaki block (Reeb vector first).
    pub sasaki: Vec<usize>,
    pub k_torus: std::ops::Range<usize>,
    pub k_planes: std::ops::Range<usize>,
}

impl Layout {
    pub fn dim(&self) -> usize {
        self.k_planes.end
    }

    /// Indices of `H_1..H_{2m}`.
    pub fn distinguished(&self) -> Vec<usize> {
        self.euclidean
            .clone()
            .chain(self.sasaki.iter().copied())
            .chain(self.k_torus.clone())
            .collect()
    }

    pub fn k_range(&self) -> std::ops::Range<usize> {
        self.k_torus.start..self.k_planes.end
    }
}

/// The output of [`build_standard`].
#[derive(Debug, Clone)]
pub struct StandardModel {
    pub hermitian: HermitianData,
    pub layout: Layout,
}

impl StandardSpec {
    pub fn s(&self) -> usize {
        self.sasaki.len()
    }

    /// Total rank of the group factors.
    pub fn r(&self) -> Result<usize> {
        self.groups.iter().map(|g| group_algebra(g)?.rank()).sum()
    }

    /// `2m = ℓ + s + r`.
    pub fn two_m(&self) -> Result<usize> {
        Ok(self.euclidean_rank + self.s() + self.r()?)
    }

    pub fn validate(&self) -> Result<()> {
        for b in &self.sasaki {
            if !(b.c > 0.0) || !b.c.is_finite() {
                return Err(Error::NonPositiveC(b.c));
            }
        }
        let two_m = self.two_m()?;
        if two_m % 2 != 0 {
            return Err(Error::SpecInvariantViolated(format!(
                "ℓ + s + r = {two_m} is odd"
            )));
        }
        let (l, q) = (self.euclidean_rank, self.s() + self.r()?);
        if l > q {
            return Err(Error::SpecInvariantViolated(format!(
                "euclidean rank {l} exceeds s + r = {q}"
            )));
        }
        Ok(())
    }

    /// The matrix `A` acting on the distinguished frame.
    pub fn torus_matrix(&self) -> Result<DMatrix<f64>> {
        let two_m = self.two_m()?;
        match &self.torus_complex {
            TorusComplex::Token(t) if t == "canonical" => {
                Ok(canonical_torus_complex(self.euclidean_rank, two_m))
            }
            TorusComplex::Token(t) => Err(Error::NonUnitaryA(format!("unknown token {t:?}"))),
            TorusComplex::Matrix(rows) => {
                if rows.len() != two_m || rows.iter().any(|r| r.len() != two_m) {
                    return Err(Error::NonUnitaryA(format!("A must be {two_m}x{two_m}")));
                }
                let a = DMatrix::from_fn(two_m, two_m, |i, j| rows[i][j]);
                validate_torus_complex(&a)?;
                Ok(a)
            }
        }
    }
}

fn group_algebra(g: &GroupSpec) -> Result<MetricLieAlgebra> {
    build_catalog(&g.family, g.param, g.scale)
}

/// Canonical `A`: the i-th Euclidean vector is paired with the i-th
/// non-Euclidean distinguished vector, and the remaining non-Euclidean
/// vectors are paired consecutively. Pairs `(a, b)` get `Ja = b`, `Jb = −a`.
pub fn canonical_torus_complex(euclidean_rank: usize, two_m: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(two_m, two_m);
    let l = euclidean_rank;
    let mut pairs = Vec::new();
    for i in 0..l {
        pairs.push((i, l + i));
    }
    let mut k = 2 * l;
    while k + 1 < two_m {
        pairs.push((k, k + 1));
        k += 2;
    }
    for (p, q) in pairs {
        a[(q, p)] = 1.0;
        a[(p, q)] = -1.0;
    }
    a
}

/// `A` must be an orthogonal complex structure: `AᵀA = 1` and `A² = −1`.
pub fn validate_torus_complex(a: &DMatrix<f64>) -> Result<()> {
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let orth = max_abs(&(a.transpose() * a - &id));
    if orth > 1e-10 {
        return Err(Error::NonUnitaryA(format!("AᵀA − 1 has size {orth:.3e}")));
    }
    let sq = max_abs(&(a * a + &id));
    if sq > 1e-10 {
        return Err(Error::NonUnitaryA(format!("A² + 1 has size {sq:.3e}")));
    }
    Ok(())
}

/// Random orthogonal complex structure `Q J₀ Qᵀ` on `ℝ^{2m}`.
pub fn random_torus_complex(two_m: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = seeded_rng(seed);
    let cols: Vec<DVector<f64>> = (0..two_m).map(|_| random_vector(&mut rng, two_m)).collect();
    let q = from_columns(two_m, &cols).qr().q();
    let j0 = canonical_torus_complex(0, two_m);
    let a = &q * j0 * q.transpose();
    // Re-orthogonalize against roundoff: A ← ½(A − Aᵀ) keeps A² = −1 to first order.
    (&a - a.transpose()) * 0.5
}

/// `K` re-expressed in the frame (torus | X_1, Y_1 | X_2, Y_2 | …).
fn group_factor(groups: &[GroupSpec]) -> Result<(MetricLieAlgebra, usize)> {
    let parts = groups
        .iter()
        .map(group_algebra)
        .collect::<Result<Vec<_>>>()?;
    let k = direct_sum(&parts)?;
    let torus = cartan_subalgebra(&k)?;
    let datum = root_decompose(&k, &torus, &Positivity::Lexicographic)?;
    let mut p = hstack(&datum.center, &datum.torus);
    let mut labels: Vec<String> = (0..p.ncols()).map(|i| format!("t{i}")).collect();
    for (a, r) in datum.roots.iter().enumerate() {
        p = hstack(&p, &from_columns(k.dim(), &[r.x.clone(), r.y.clone()]));
        labels.push(format!("X{a}"));
        labels.push(format!("Y{a}"));
    }
    let rank = datum.rank();
    let kk = k.change_basis(&p)?.with_labels(labels)?;
    Ok((kk, rank))
}

pub fn build_standard(spec: &StandardSpec) -> Result<StandardModel> {
    spec.validate()?;
    let a = spec.torus_matrix()?;
    let l = spec.euclidean_rank;
    let mut parts = Vec::new();
    let mut labels = Vec::new();
    if l > 0 {
        parts.push(MetricLieAlgebra::abelian(l));
        labels.extend((0..l).map(|i| format!("R{i}")));
    }
    for (i, b) in spec.sasaki.iter().enumerate() {
        parts.push(build_sasaki_block(b.model, b.c)?.alg);
        labels.extend(["H", "E", "F"].iter().map(|x| format!("S{i}.{x}")));
    }
    let mut k_rank = 0;
    let mut k_dim = 0;
    if !spec.groups.is_empty() {
        let (k, rank) = group_factor(&spec.groups)?;
        labels.extend(k.labels().iter().map(|x| format!("K.{x}")));
        k_rank = rank;
        k_dim = k.dim();
        parts.push(k);
    }
    let alg = if parts.is_empty() {
        MetricLieAlgebra::abelian(0)
    } else {
        direct_sum(&parts)?.with_labels(labels)?
    };
    let n = alg.dim();
    let k_start = l + 3 * spec.s();
    let layout = Layout {
        euclidean: 0..l,
        sasaki: (0..spec.s()).map(|i| l + 3 * i).collect(),
        k_torus: k_start..k_start + k_rank,
        k_planes: k_start + k_rank..k_start + k_dim,
    };
    debug_assert_eq!(layout.dim(), n);

    let mut j = DMatrix::zeros(n, n);
    let hidx = layout.distinguished();
    for (p, &ip) in hidx.iter().enumerate() {
        for (q, &iq) in hidx.iter().enumerate() {
            j[(iq, ip)] = a[(q, p)];
        }
    }
    for &s in &layout.sasaki {
        let (e, f) = (s + 1, s + 2);
        j[(f, e)] = -1.0;
        j[(e, f)] = 1.0;
    }
    for x in layout.k_planes.clone().step_by(2) {
        j[(x + 1, x)] = 1.0;
        j[(x, x + 1)] = -1.0;
    }
    let h = HermitianData::new(alg, j)?;
    h.check_integrable(DEFAULT_TOL)?;
    Ok(StandardModel {
        hermitian: h,
        layout,
    })
}

/// Layout implied by a spec, without building.
pub fn layout_of(spec: &StandardSpec) -> Result<Layout> {
    let l = spec.euclidean_rank;
    let k_start = l + 3 * spec.s();
    let mut k_dim = 0;
    let mut k_rank = 0;
    for g in &spec.groups {
        let alg = group_algebra(g)?;
        k_dim += alg.dim();
        k_rank += alg.rank()?;
    }
    Ok(Layout {
        euclidean: 0..l,
        sasaki: (0..spec.s()).map(|i| l + 3 * i).collect(),
        k_torus: k_start..k_start + k_rank,
        k_planes: k_start + k_rank..k_start + k_dim,
    })
}

/// Closed form `T = Σ_i H*_i ∧ dH*_i + B`, with `B(V,W,Z) = −g([V,W],Z)` on `K`.
pub fn expected_torsion(spec: &StandardSpec, built: &HermitianData) -> Result<InvariantTensor> {
    let layout = layout_of(spec)?;
    let alg = built.alg();
    let n = alg.dim();
    if layout.dim() != n {
        return Err(Error::MismatchedSpec(format!(
            "spec describes dimension {}, structure has {n}",
            layout.dim()
        )));
    }
    let mut total = InvariantTensor::zeros(n, 3, true);
    if n < 3 {
        return Ok(total);
    }
    for &s in &layout.sasaki {
        let hstar = alg.gram().column(s).into_owned();
        let d = cartan_eilenberg_d(&InvariantTensor::from_covector(&hstar), alg)?;
        total = total.add(&wedge_2_1(&d, &hstar))?;
    }
    let k = layout.k_range();
    let g = alg.gram();
    let c = alg.constants();
    let b = InvariantTensor::from_fn(n, 3, |i| {
        if i.iter().all(|x| k.contains(x)) {
            -(0..n)
                .map(|m| c.get(i[0], i[1], m) * g[(m, i[2])])
                .sum::<f64>()
        } else {
            0.0
        }
    });
    total.add(&b)
}

/// Convenience constructor used by tests and the enumerator's witnesses.
pub fn spec(l: usize, sasaki: &[(SasakiModel, f64)], groups: &[(&str, i64, f64)]) -> StandardSpec {
    StandardSpec {
        euclidean_rank: l,
        sasaki: sasaki
            .iter()
            .map(|&(model, c)| SasakiSpec { model, c })
            .collect(),
        groups: groups
            .iter()
            .map(|&(f, p, s)| GroupSpec {
                family: f.to_string(),
                param: p,
                scale: s,
            })
            .collect(),
        torus_complex: TorusComplex::default(),
    }
}

/// Same spec with a random orthogonal complex structure on the distinguished frame.
pub fn with_random_a(mut s: StandardSpec, seed: u64) -> Result<StandardSpec> {
    let two_m = s.two_m()?;
    let a = random_torus_complex(two_m, seed);
    s.torus_complex = TorusComplex::Matrix(
        (0..two_m)
            .map(|i| (0..two_m).map(|j| a[(i, j)]).collect())
            .collect(),
    );
    Ok(s)
}

/// Default seed for [`with_random_a`] callers that do not care.
pub const A_SEED: u64 = DEFAULT_SEED ^ 0xa11ce;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{classify, dc_omega};

    #[test]
    fn sasaki_blocks_satisfy_the_sasaki_equation() {
        for (m, c) in [
            (SasakiModel::Heisenberg, 1.0),
            (SasakiModel::Su2Berger, 1.0),
            (SasakiModel::Su2Berger, 2.0),
            (SasakiModel::Sl2r, 0.7),
        ] {
            let b = build_sasaki_block(m, c).unwrap();
            let reeb = b.alg.basis_vector(0);
            let d = sasaki_defect(&b.alg, &reeb, c, &DMatrix::identity(3, 3));
            assert!(d < 1e-12, "{m:?} {c}: {d}");
        }
    }

    #[test]
    fn round_berger_is_su2() {
        let b = build_sasaki_block(SasakiModel::Su2Berger, 1.0).unwrap();
        assert!(b.alg.ad_invariance_defect() < 1e-14);
        assert_eq!(b.alg.constants().get(1, 2, 0), 2.0);
        assert_eq!(b.alg.constants().get(0, 1, 2), 2.0);
        assert_eq!(b.alg.constants().get(2, 0, 1), 2.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            build_standard(&spec(2, &[], &[])),
            Err(Error::SpecInvariantViolated(_))
        ));
        assert!(matches!(
            build_standard(&spec(0, &[(SasakiModel::Heisenberg, 1.0)], &[])),
            Err(Error::SpecInvariantViolated(_))
        ));
        assert!(matches!(
            build_sasaki_block(SasakiModel::Heisenberg, -1.0),
            Err(Error::NonPositiveC(_))
        ));
        let mut s = spec(1, &[(SasakiModel::Heisenberg, 1.0)], &[]);
        s.torus_complex = TorusComplex::Matrix(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(build_standard(&s), Err(Error::NonUnitaryA(_))));
        assert!(matches!(
            SasakiModel::parse("s3"),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn empty_spec_has_zero_torsion() {
        let s = spec(0, &[], &[]);
        let m = build_standard(&s).unwrap();
        assert_eq!(m.hermitian.dim(), 0);
        assert_eq!(expected_torsion(&s, &m.hermitian).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn hopf_model_is_bkl_and_vaisman() {
        let s = spec(1, &[(SasakiModel::Heisenberg, 1.0)], &[]);
        let m = build_standard(&s).unwrap();
        let v = classify(&m.hermitian, DEFAULT_TOL).unwrap();
        assert!(v.flags.bkl);
        assert_eq!(v.flags.vaisman, Some(true));
        // T = −dᶜω matches the closed form.
        let t = dc_omega(&m.hermitian).scale(-1.0);
        assert!(
            t.distance(&expected_torsion(&s, &m.hermitian).unwrap())
                .unwrap()
                < 1e-12
        );
        assert!((t.get(&[1, 2, 3]) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn lee_form_of_round_hopf_model() {
        let c = 1.5;
        let s = spec(1, &[(SasakiModel::Su2Berger, c)], &[]);
        let m = build_standard(&s).unwrap();
        let lee = crate::hermitian::lee_form(&m.hermitian).unwrap();
        // φ = 2c (JH)♭ with H the Reeb vector (index 1).
        let jh = m.hermitian.j().column(1).into_owned();
        let expect = m.hermitian.alg().gram() * jh * (2.0 * c);
        assert!((lee.phi - expect).amax() < 1e-12);
    }

    #[test]
    fn models_with_groups_match_closed_form_torsion() {
        use SasakiModel::*;
        let specs = [
            spec(0, &[], &[("su", 3, 1.0)]),
            spec(2, &[], &[("su", 3, 0.5)]),
            spec(1, &[(Sl2r, 0.5)], &[("so", 5, 2.0)]),
            spec(
                1,
                &[(Heisenberg, 1.0), (Su2Berger, 0.3)],
                &[("su", 3, 1.0), ("su", 2, 1.0)],
            ),
        ];
        for (i, s) in specs.into_iter().enumerate() {
            for s in [s.clone(), with_random_a(s, 11 + i as u64).unwrap()] {
                let m = build_standard(&s).unwrap();
                let t = dc_omega(&m.hermitian).scale(-1.0);
                let d = t
                    .distance(&expected_torsion(&s, &m.hermitian).unwrap())
                    .unwrap();
                assert!(d < 1e-9, "spec {i}: {d}");
                let v = classify(&m.hermitian, DEFAULT_TOL).unwrap();
                assert!(v.flags.bkl, "spec {i}: {:?}", v.defects);
            }
        }
    }

    #[test]
    fn random_a_is_orthogonal_complex_structure() {
        let a = random_torus_complex(6, 7);
        validate_torus_complex(&a).unwrap();
    }
}
