//! Structure of a BKL Hermitian Lie algebra: the torsion Lie algebra, the
//! Kähler part, the Samelson torus, the root planes, and the splitting into a
//! Euclidean part, Sasaki `su(2)` blocks and a Bismut-flat semisimple ideal.
//!
//! The torsion bracket is `g(T(x,y), z) = T(x,y,z)` with `T = −dᶜω`. On a BKL
//! structure it satisfies the Jacobi identity, `g` is bi-invariant for it and
//! `J` is an integrable complex structure for it.
//!
//! The Kähler part is the largest `J`-invariant subspace of the torsion center
//! that is an ideal of the frame algebra, whose orthocomplement is an ideal,
//! and that is Levi-Civita parallel. The Samelson torus is the space of `x`
//! with `[ad_T(x), J] = 0`; it is validated to be a self-centralizing abelian
//! subalgebra.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{
    bismut_connection, cartan_eilenberg_d, classify, curvature, levi_civita, torsion_form,
    CurvatureTensor, HermitianData, DEFAULT_TOL,
};
use crate::lie::{Family, MetricLieAlgebra, SimpleType, StructureConstants};
use crate::linalg::{from_columns, hstack, max_abs, null_space};
use crate::roots::{root_decompose, Positivity, Root, RootDatum};
use crate::tensor::InvariantTensor;

/// Absolute floor for structural verdicts, before scaling.
pub const STRUCTURE_TOL: f64 = 1e-8;

/// Relative tolerance for null spaces of the linear conditions used here.
const SPLIT_TOL: f64 = 1e-7;

/// The torsion 3-form read as a Lie bracket on the frame space.
#[derive(Debug, Clone)]
pub struct TorsionLieAlgebra {
    pub alg: MetricLieAlgebra,
    pub torsion: InvariantTensor,
    pub jacobi_defect: f64,
    pub bi_invariance_defect: f64,
    /// Nijenhuis tensor of `J` for the torsion bracket.
    pub complex_defect: f64,
}

/// Builds the torsion bracket. Refuses non-BKL input.
pub fn torsion_lie_algebra(h: &HermitianData) -> Result<TorsionLieAlgebra> {
    let report = classify(h, DEFAULT_TOL)?;
    if !report.flags.bkl {
        return Err(Error::NotBkl(format!(
            "ddc_omega = {:.3e}, nabla_T = {:.3e}",
            report.defects.get("ddc_omega").copied().unwrap_or(f64::NAN),
            report.defects.get("nabla_T").copied().unwrap_or(f64::NAN)
        )));
    }
    Ok(torsion_lie_algebra_unchecked(h))
}

/// Torsion bracket without the BKL precondition (used for negative controls).
pub fn torsion_lie_algebra_unchecked(h: &HermitianData) -> TorsionLieAlgebra {
    let alg = h.alg();
    let n = alg.dim();
    let t = torsion_form(h);
    // Raise the last index: c^k_ij = Σ_m T(i,j,m) g^{mk}.
    let raised = t.transform_slot(2, &inverse_gram(alg));
    let mut sc = StructureConstants::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                sc.set(i, j, k, raised.get(&[i, j, k]));
            }
        }
    }
    let talg = MetricLieAlgebra::new(sc, alg.gram().clone(), Some(alg.labels().to_vec()))
        .expect("gram already validated");
    let jacobi_defect = talg.jacobi_defect();
    let bi_invariance_defect = talg.ad_invariance_defect();
    let complex_defect = HermitianData::new(talg.clone(), h.j().clone())
        .map(|th| th.nijenhuis_defect())
        .unwrap_or(f64::INFINITY);
    TorsionLieAlgebra {
        alg: talg,
        torsion: t,
        jacobi_defect,
        bi_invariance_defect,
        complex_defect,
    }
}

fn inverse_gram(alg: &MetricLieAlgebra) -> DMatrix<f64> {
    alg.gram()
        .clone()
        .try_inverse()
        .expect("gram is positive definite")
}

/// `n × n` matrix whose first column is `v`, for contracting one tensor slot.
fn first_column(v: &DVector<f64>, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m.set_column(0, v);
    m
}

/// Largest subspace of `start` mapped into itself by every matrix in `maps`.
fn largest_invariant_subspace(
    alg: &MetricLieAlgebra,
    start: &DMatrix<f64>,
    maps: &[DMatrix<f64>],
) -> DMatrix<f64> {
    let frame = alg.frame();
    let n = alg.dim();
    let mut w = frame.orthonormal_span(start);
    loop {
        let k = w.ncols();
        if k == 0 {
            return w;
        }
        let perp = DMatrix::<f64>::identity(n, n) - frame.projector(&w);
        let mut stack = DMatrix::zeros(n * maps.len(), k);
        for (idx, m) in maps.iter().enumerate() {
            stack
                .view_mut((idx * n, 0), (n, k))
                .copy_from(&(&perp * m * &w));
        }
        let coeffs = null_space(&stack, SPLIT_TOL);
        if coeffs.ncols() == k {
            return w;
        }
        w = frame.orthonormal_span(&(&w * coeffs));
    }
}

/// Kähler part: see the module documentation.
pub fn kaehler_part(h: &HermitianData, torsion: &TorsionLieAlgebra) -> DMatrix<f64> {
    let alg = h.alg();
    let n = alg.dim();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let kernel = torsion.alg.center();
    let g = alg.gram();
    let ginv = inverse_gram(alg);
    let lc = levi_civita(alg);
    let mut maps = vec![h.j().clone()];
    for i in 0..n {
        let ad = alg.constants().ad_basis(i);
        maps.push(&ginv * ad.transpose() * g);
        maps.push(ad);
        maps.push(lc.matrix(i));
    }
    largest_invariant_subspace(alg, &kernel, &maps)
}

/// The Samelson torus `𝔱̃` together with `𝒵` (torsion center) and `𝒯 = 𝔱̃ ⊖ 𝒵`,
/// and the orthocomplement `𝒫`. All bases are g-orthonormal.
#[derive(Debug, Clone)]
pub struct SamelsonSplit {
    pub torus: DMatrix<f64>,
    pub center: DMatrix<f64>,
    pub transverse: DMatrix<f64>,
    pub planes: DMatrix<f64>,
}

pub fn samelson_split(talg: &MetricLieAlgebra, j: &DMatrix<f64>) -> Result<SamelsonSplit> {
    let n = talg.dim();
    let frame = talg.frame();
    let center = talg.center();
    if n == 0 {
        let e = DMatrix::zeros(0, 0);
        return Ok(SamelsonSplit {
            torus: e.clone(),
            center: e.clone(),
            transverse: e.clone(),
            planes: e,
        });
    }
    // x ↦ [ad(x), J] as an n² × n matrix.
    let mut cond = DMatrix::zeros(n * n, n);
    for i in 0..n {
        let ad = talg.constants().ad_basis(i);
        let comm = &ad * j - j * &ad;
        for (pos, v) in comm.iter().enumerate() {
            cond[(pos, i)] = *v;
        }
    }
    let torus = frame.orthonormal_span(&null_space(&cond, SPLIT_TOL));
    let t = torus.ncols();
    let scale = talg.constants().max_abs().max(1.0);
    let fail = || Error::NoSamelsonTorus(t);
    if !t.is_multiple_of(2) {
        return Err(fail());
    }
    // J-invariance.
    let jt = j * &torus;
    if (&jt - frame.projector(&torus) * &jt).amax() > SPLIT_TOL {
        return Err(fail());
    }
    // Abelian and self-centralizing.
    for a in 0..t {
        for b in a + 1..t {
            let v = talg.bracket(&torus.column(a).into_owned(), &torus.column(b).into_owned());
            if v.amax() > SPLIT_TOL * scale {
                return Err(fail());
            }
        }
    }
    let mut stack = DMatrix::zeros(n * t.max(1), n);
    for a in 0..t {
        stack
            .view_mut((a * n, 0), (n, n))
            .copy_from(&talg.ad(&torus.column(a).into_owned()));
    }
    if t > 0 && null_space(&stack, SPLIT_TOL).ncols() != t {
        return Err(fail());
    }
    if t == 0 && n > 0 {
        return Err(fail());
    }
    let transverse = frame.complement_in(&center, &torus);
    let planes = frame.complement(&torus);
    Ok(SamelsonSplit {
        torus,
        center,
        transverse,
        planes,
    })
}

/// Root planes of `𝒫` relative to the Samelson torus, oriented by `JX = Y`.
pub fn transverse_root_split(
    talg: &MetricLieAlgebra,
    split: &SamelsonSplit,
    j: &DMatrix<f64>,
) -> Result<RootDatum> {
    if !split.planes.ncols().is_multiple_of(2) {
        return Err(Error::OddBlock(split.planes.ncols()));
    }
    root_decompose(talg, &split.torus, &Positivity::ComplexStructure(j.clone()))
}

/// A Sasaki block: basis columns `(ξ, E, F)` with `T(E,F) = −2cξ`.
#[derive(Debug, Clone)]
pub struct SasakiPart {
    pub basis: DMatrix<f64>,
    pub reeb: DVector<f64>,
    pub c: f64,
    /// Bismut curvature restricted to the block vanishes (bi-invariant su(2)).
    pub bismut_flat: bool,
}

/// One simple factor of the flat ideal.
#[derive(Debug, Clone)]
pub struct FlatFactor {
    pub simple_type: SimpleType,
    pub basis: DMatrix<f64>,
}

/// Integer bookkeeping of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    /// Complex dimension.
    pub n: usize,
    pub kaehler_dim: usize,
    pub l: usize,
    pub s: usize,
    /// Sasaki blocks whose Bismut curvature does not vanish.
    pub s_non_flat: usize,
    pub r: usize,
    /// `q = s + r`.
    pub q: usize,
    /// `2m = ℓ + s + r`.
    pub m: usize,
    /// `r_B = ½(dim − dim(𝔱 + 𝔷))`, with the Kähler part counted in `𝔷`.
    pub r_b: usize,
}

/// Connection one-form `θ_α(x) = g(∇_x V_α, J V_α)` of a root plane.
#[derive(Debug, Clone)]
pub struct PlaneForm {
    pub root: usize,
    pub theta: DVector<f64>,
    /// Max of `|R(x,y,V,JV) − dθ(x,y)|`.
    pub curvature_defect: f64,
}

/// `‖θ_{α₃} − θ_{α₁} − θ_{α₂}‖∞` for positive roots with `α₁ + α₂ = α₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Additivity {
    pub roots: (usize, usize, usize),
    pub defect: f64,
}

#[derive(Debug, Clone)]
pub struct BklDecomposition {
    /// All bases are in frame coordinates of the input and g-orthonormal.
    pub kaehler: DMatrix<f64>,
    pub euclidean: DMatrix<f64>,
    pub transverse: DMatrix<f64>,
    pub samelson_torus: DMatrix<f64>,
    /// Sorted by increasing `c`.
    pub sasaki: Vec<SasakiPart>,
    /// Sorted by simple type.
    pub flat_ideal: Vec<FlatFactor>,
    /// Root planes with vectors in frame coordinates.
    pub roots: Vec<Root>,
    pub plane_forms: Vec<PlaneForm>,
    pub additivity: Vec<Additivity>,
    pub bookkeeping: Bookkeeping,
    pub post_checks: BTreeMap<String, f64>,
}

impl BklDecomposition {
    pub fn euclidean_rank(&self) -> usize {
        self.euclidean.ncols()
    }

    pub fn sasaki_constants(&self) -> Vec<f64> {
        self.sasaki.iter().map(|b| b.c).collect()
    }

    pub fn flat_types(&self) -> Vec<SimpleType> {
        self.flat_ideal.iter().map(|f| f.simple_type).collect()
    }

    /// Basis of the whole flat ideal.
    pub fn flat_basis(&self) -> DMatrix<f64> {
        let n = self.kaehler.nrows();
        self.flat_ideal
            .iter()
            .fold(DMatrix::zeros(n, 0), |acc, f| hstack(&acc, &f.basis))
    }
}

/// Chooses between the two types sharing dimension and rank (`so(2k+1)` and
/// `sp(k)`) by counting short positive roots: `k` for `so(2k+1)`, `k(k−1)` for `sp(k)`.
fn identify_ideal(dim: usize, rank: usize, root_norms: &[f64]) -> Result<SimpleType> {
    let cands = SimpleType::candidates(dim, rank);
    match cands.len() {
        0 => Err(Error::UnrecognizedIdeal { dim, rank }),
        1 => Ok(cands[0]),
        _ => {
            let min = root_norms.iter().copied().fold(f64::INFINITY, f64::min);
            let short = root_norms.iter().filter(|&&x| x < 1.2 * min).count();
            cands
                .into_iter()
                .find(|t| match t.family {
                    Family::So => short == t.rank(),
                    Family::Sp => short == t.rank() * (t.rank() - 1),
                    _ => false,
                })
                .ok_or(Error::UnrecognizedIdeal { dim, rank })
        }
    }
}

/// `θ_α` for every root plane and the curvature comparison `R_{·,·}V = dθ ⊗ JV`.
pub fn connection_one_forms(h: &HermitianData, roots: &[Root]) -> Result<Vec<PlaneForm>> {
    let alg = h.alg();
    let n = alg.dim();
    let frame = alg.frame();
    let conn = bismut_connection(h)?;
    let r = curvature(&conn, alg, h);
    let scale = alg.constants().max_abs().max(1.0);
    let mut out = Vec::with_capacity(roots.len());
    for (idx, root) in roots.iter().enumerate() {
        let v = &root.x / frame.norm(&root.x);
        let jv = h.j() * &v;
        let mut theta = DVector::zeros(n);
        for i in 0..n {
            let dv = conn.matrix(i) * &v;
            theta[i] = frame.inner(&dv, &jv);
            let off = (&dv - &jv * theta[i]).amax();
            if off > SPLIT_TOL * scale {
                return Err(Error::PlaneNotInvariant(off));
            }
        }
        let dtheta = cartan_eilenberg_d(&InvariantTensor::from_covector(&theta), alg)?;
        let rv = r
            .components
            .transform_slot(2, &first_column(&v, n))
            .transform_slot(3, &first_column(&jv, n));
        let mut defect = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let lhs = rv.get(&[a, b, 0, 0]);
                defect = defect.max((lhs - dtheta.get(&[a, b])).abs());
            }
        }
        out.push(PlaneForm {
            root: idx,
            theta,
            curvature_defect: defect,
        });
    }
    Ok(out)
}

/// Additivity of the plane forms over summable positive-root triples.
pub fn theta_additivity(datum: &RootDatum, forms: &[PlaneForm]) -> Vec<Additivity> {
    let mut out = Vec::new();
    let k = datum.roots.len();
    for a in 0..k {
        for b in a + 1..k {
            let sum = &datum.roots[a].alpha + &datum.roots[b].alpha;
            if let Some(c) = datum.find_root(&sum) {
                if c > 0 {
                    let c = (c - 1) as usize;
                    let d = &forms[c].theta - &forms[a].theta - &forms[b].theta;
                    out.push(Additivity {
                        roots: (a, b, c),
                        defect: d.amax(),
                    });
                }
            }
        }
    }
    out
}

/// Maximum of `|R(x,y,z,w)|` over adapted basis vectors with slot classes
/// accepted by `select`.
fn max_component(
    r: &CurvatureTensor,
    basis: &DMatrix<f64>,
    classes: &[usize],
    select: impl Fn([usize; 4]) -> bool,
) -> f64 {
    let n = basis.ncols();
    if n == 0 {
        return 0.0;
    }
    let mut square = DMatrix::zeros(r.dim(), r.dim());
    square.view_mut((0, 0), (basis.nrows(), n)).copy_from(basis);
    let pulled = r.components.pull_back(&square);
    let mut worst = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if select([classes[a], classes[b], classes[c], classes[d]]) {
                        worst = worst.max(pulled.get(&[a, b, c, d]).abs());
                    }
                }
            }
        }
    }
    worst
}

pub fn bkl_decompose(h: &HermitianData) -> Result<BklDecomposition> {
    bkl_decompose_with_tol(h, STRUCTURE_TOL)
}

pub fn bkl_decompose_with_tol(h: &HermitianData, tol: f64) -> Result<BklDecomposition> {
    let torsion = torsion_lie_algebra(h)?;
    let alg = h.alg();
    let frame = alg.frame();
    let n = alg.dim();
    let kaehler = kaehler_part(h, &torsion);

    // Restrict to the orthocomplement of the Kähler part, in an orthonormal basis.
    let q = frame.complement(&kaehler);
    let np = q.ncols();
    let to_q = q.transpose() * alg.gram();
    let (tr, jr) = if np > 0 {
        let tr = torsion.alg.change_basis(&q)?;
        let jr = &to_q * h.j() * &q;
        (tr, jr)
    } else {
        (MetricLieAlgebra::abelian(0), DMatrix::zeros(0, 0))
    };
    let split = samelson_split(&tr, &jr)?;
    let datum = if np > 0 {
        Some(transverse_root_split(&tr, &split, &jr)?)
    } else {
        None
    };
    let roots_r: Vec<Root> = datum.as_ref().map(|d| d.roots.clone()).unwrap_or_default();

    // Simple ideals of the torsion algebra.
    let ideals = if np > 0 {
        tr.derived_and_ideals()?.1
    } else {
        Vec::new()
    };
    let rframe = tr.frame();
    let mut sasaki = Vec::new();
    let mut flat_ideal = Vec::new();
    let mut r_total = 0;
    for ideal in &ideals {
        let ideal = rframe.orthonormal_span(ideal);
        let p = rframe.projector(&ideal);
        let members: Vec<usize> = (0..roots_r.len())
            .filter(|&a| (&p * &roots_r[a].x - &roots_r[a].x).amax() < 1e-6)
            .collect();
        let rank = rframe.intersection(&ideal, &split.torus).ncols();
        if rank == 1 {
            if ideal.ncols() != 3 || members.len() != 1 {
                return Err(Error::PostCheckFailed {
                    name: "rank_one_ideal_shape".into(),
                    value: ideal.ncols() as f64,
                    tol: 3.0,
                });
            }
            let root = &roots_r[members[0]];
            let e = &root.x / rframe.norm(&root.x);
            let f = -(&jr * &e);
            let tef = tr.bracket(&e, &f);
            let norm = rframe.norm(&tef);
            let xi = -&tef / norm;
            let basis = from_columns(np, &[xi.clone(), e, f]);
            sasaki.push(SasakiPart {
                basis: &q * basis,
                reeb: &q * xi,
                c: norm / 2.0,
                bismut_flat: false,
            });
        } else {
            r_total += rank;
            let norms: Vec<f64> = members.iter().map(|&a| roots_r[a].alpha.norm()).collect();
            let simple_type = identify_ideal(ideal.ncols(), rank, &norms)?;
            flat_ideal.push(FlatFactor {
                simple_type,
                basis: &q * ideal,
            });
        }
    }
    sasaki.sort_by(|a, b| a.c.total_cmp(&b.c));
    flat_ideal.sort_by_key(|f| f.simple_type);

    let l = split.center.ncols();
    let s = sasaki.len();
    let two_m = l + s + r_total;
    if two_m != split.torus.ncols() || two_m % 2 != 0 {
        return Err(Error::InconsistentBookkeeping(format!(
            "ℓ + s + r = {two_m}, Samelson torus has dimension {}",
            split.torus.ncols()
        )));
    }
    let mut bookkeeping = Bookkeeping {
        n: n / 2,
        kaehler_dim: kaehler.ncols(),
        l,
        s,
        s_non_flat: 0,
        r: r_total,
        q: s + r_total,
        m: two_m / 2,
        r_b: (n - kaehler.ncols() - two_m) / 2,
    };

    // Back to frame coordinates.
    let lift = |m: &DMatrix<f64>| -> DMatrix<f64> {
        if m.ncols() == 0 {
            DMatrix::zeros(n, 0)
        } else {
            &q * m
        }
    };
    let roots: Vec<Root> = roots_r
        .iter()
        .map(|r| Root {
            alpha: r.alpha.clone(),
            x: &q * &r.x,
            y: &q * &r.y,
        })
        .collect();
    let euclidean = lift(&split.center);
    let transverse = lift(&split.transverse);
    let samelson_torus = lift(&split.torus);

    let plane_forms = connection_one_forms(h, &roots)?;
    let additivity = datum
        .as_ref()
        .map(|d| theta_additivity(d, &plane_forms))
        .unwrap_or_default();

    // Post-checks.
    let scale = alg.constants().max_abs().max(1.0);
    let lin = tol * scale;
    let quad = tol * scale * scale;
    let conn = bismut_connection(h)?;
    let r = curvature(&conn, alg, h);
    // Adapted basis: Samelson torus (class 0), then root planes (class 1 + root index).
    let mut adapted = samelson_torus.clone();
    let mut classes = vec![0usize; samelson_torus.ncols()];
    for (a, root) in roots.iter().enumerate() {
        adapted = hstack(
            &adapted,
            &from_columns(n, &[root.x.clone(), root.y.clone()]),
        );
        classes.extend([a + 1, a + 1]);
    }
    let mut checks = BTreeMap::new();
    checks.insert("torsion_jacobi".to_string(), (torsion.jacobi_defect, quad));
    checks.insert(
        "torsion_bi_invariance".to_string(),
        (torsion.bi_invariance_defect, lin),
    );
    checks.insert(
        "torsion_complex_structure".to_string(),
        (torsion.complex_defect, quad),
    );
    checks.insert(
        "curvature_torus_slot".to_string(),
        (
            max_component(&r, &adapted, &classes, |c| c.contains(&0)),
            quad,
        ),
    );
    checks.insert(
        "curvature_cross_plane".to_string(),
        (
            max_component(&r, &adapted, &classes, |c| {
                !c.contains(&0) && c.iter().any(|&x| x != c[0])
            }),
            quad,
        ),
    );
    let flat = flat_ideal
        .iter()
        .fold(DMatrix::zeros(n, 0), |acc, f| hstack(&acc, &f.basis));
    let flat_classes = vec![0usize; flat.ncols()];
    checks.insert(
        "curvature_flat_ideal".to_string(),
        (max_component(&r, &flat, &flat_classes, |_| true), quad),
    );
    if kaehler.ncols() == 0 && np > 0 {
        // 𝒯 + J𝒯 = 𝒯 + 𝒵.
        let tj = hstack(&transverse, &(h.j() * &transverse));
        let a = frame.orthonormal_span(&tj);
        let b = frame.orthonormal_span(&samelson_torus);
        let dev = if a.ncols() == b.ncols() {
            max_abs(&(frame.projector(&a) - frame.projector(&b)))
        } else {
            f64::INFINITY
        };
        checks.insert("transverse_j_span".to_string(), (dev, tol));
        let q_ge_l = if bookkeeping.q >= l { 0.0 } else { 1.0 };
        checks.insert("q_at_least_l".to_string(), (q_ge_l, 0.5));
    }
    let theta_curv = plane_forms
        .iter()
        .map(|f| f.curvature_defect)
        .fold(0.0, f64::max);
    checks.insert("curvature_dtheta".to_string(), (theta_curv, quad));
    let add = additivity.iter().map(|a| a.defect).fold(0.0, f64::max);
    checks.insert("theta_additivity".to_string(), (add, lin));
    for (i, b) in sasaki.iter_mut().enumerate() {
        let d = crate::standard::sasaki_defect(alg, &b.reeb, b.c, &b.basis);
        checks.insert(format!("sasaki_block_{i}"), (d, lin));
        b.bismut_flat = max_component(&r, &b.basis, &[0, 0, 0], |_| true) <= quad;
    }
    bookkeeping.s_non_flat = sasaki.iter().filter(|b| !b.bismut_flat).count();
    let mut post_checks = BTreeMap::new();
    for (name, (value, limit)) in checks {
        if !(value <= limit) {
            return Err(Error::PostCheckFailed {
                name,
                value,
                tol: limit,
            });
        }
        post_checks.insert(name, value);
    }

    Ok(BklDecomposition {
        kaehler,
        euclidean,
        transverse,
        samelson_torus,
        sasaki,
        flat_ideal,
        roots,
        plane_forms,
        additivity,
        bookkeeping,
        post_checks,
    })
}
