//! Maximal tori, real root-space decompositions and η-coefficient tables of
//! compact Lie algebras with ad-invariant metrics.
//!
//! Conventions: for a positive root `α` with real root plane basis
//! `(X_α, Y_α)` and every torus vector `H`,
//! `[H, X_α] = α(H) Y_α` and `[H, Y_α] = −α(H) X_α`.
//! The complex root vectors `E_α = (X_α − iY_α)/√2` and
//! `E_{−α} = −(X_α + iY_α)/√2` only appear transiently, to read off the
//! structure constants `[E_μ, E_ν] = N_{μ,ν} E_{μ+ν}`; the stored table is
//! `η_{μ,ν} = N_{μ,ν}/√2`.
//!
//! Root indices in the η table are signed and one-based: `+(k+1)` is the
//! k-th positive root, `−(k+1)` its negative.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::linalg::{
    cluster_sorted, from_columns, null_space, random_vector, seeded_rng, sorted_sym_eigen,
    DEFAULT_SEED,
};

/// Rule selecting the positive roots.
#[derive(Debug, Clone)]
pub enum Positivity {
    /// First nonzero torus coordinate of `α` is positive.
    Lexicographic,
    /// `⟨c, α⟩ > 0` for a covector `c` over the torus basis.
    Covector(DVector<f64>),
    /// Orientation `J X_α = Y_α` for a complex structure preserving every root plane.
    ComplexStructure(DMatrix<f64>),
}

#[derive(Debug, Clone)]
pub struct Root {
    /// Coefficients of `α` over the torus basis: `alpha[j] = α(torus_j)`.
    pub alpha: DVector<f64>,
    pub x: DVector<f64>,
    pub y: DVector<f64>,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    /// g-orthonormal basis of the center.
    pub center: DMatrix<f64>,
    /// g-orthonormal basis of the semisimple part 𝔱 of the maximal torus.
    pub torus: DMatrix<f64>,
    /// Positive roots, ordered by height and then lexicographically.
    pub roots: Vec<Root>,
    /// Nonzero entries of `η_{μ,ν}` keyed by signed one-based root indices.
    pub eta: BTreeMap<(i32, i32), f64>,
    /// Seed used for the generic torus element.
    pub seed: u64,
}

/// `span(H_α, X_α, Y_α)` with `[H_α, X_α] = scale·Y_α`.
#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub h: DVector<f64>,
    pub x: DVector<f64>,
    pub y: DVector<f64>,
    pub scale: f64,
}

/// g-orthonormal basis of a maximal torus: the center followed by the
/// centralizer of a generic derived element, orthogonal to the center.
pub fn cartan_subalgebra(alg: &MetricLieAlgebra) -> Result<DMatrix<f64>> {
    cartan_subalgebra_with_seed(alg, DEFAULT_SEED)
}

pub fn cartan_subalgebra_with_seed(alg: &MetricLieAlgebra, seed: u64) -> Result<DMatrix<f64>> {
    alg.check_compact(1e-9)?;
    let n = alg.dim();
    let center = alg.center();
    let derived = alg.derived();
    if derived.ncols() == 0 {
        return Ok(alg.frame().orthonormal_span(&DMatrix::identity(n, n)));
    }
    let mut rng = seeded_rng(seed);
    let x = &derived * random_vector(&mut rng, derived.ncols());
    let centralizer = alg.frame().orthonormal_span(&null_space(&alg.ad(&x), 1e-7));
    let semisimple = alg.frame().complement_in(&center, &centralizer);
    Ok(crate::linalg::hstack(&center, &semisimple))
}

/// Real root-space decomposition relative to a maximal torus.
pub fn root_decompose(
    alg: &MetricLieAlgebra,
    torus: &DMatrix<f64>,
    positivity: &Positivity,
) -> Result<RootDatum> {
    root_decompose_with_seed(alg, torus, positivity, DEFAULT_SEED)
}

pub fn root_decompose_with_seed(
    alg: &MetricLieAlgebra,
    torus: &DMatrix<f64>,
    positivity: &Positivity,
    seed: u64,
) -> Result<RootDatum> {
    let n = alg.dim();
    if torus.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "torus vectors have {} entries, algebra has dimension {n}",
            torus.nrows()
        )));
    }
    let scale = alg.constants().max_abs().max(1.0);
    let inv = alg.ad_invariance_defect();
    if inv > 1e-8 * scale * crate::linalg::max_abs(alg.gram()).max(1.0) {
        return Err(Error::NonInvariantMetric(inv));
    }
    let frame = alg.frame();
    let torus = frame.orthonormal_span(torus);
    let t = torus.ncols();
    for a in 0..t {
        for b in a + 1..t {
            let v = alg.bracket(&torus.column(a).into_owned(), &torus.column(b).into_owned());
            if v.amax() > 1e-8 * scale {
                return Err(Error::NotMaximalTorus(format!(
                    "torus vectors {a} and {b} do not commute"
                )));
            }
        }
    }
    // Centralizer of the torus must be the torus itself.
    let mut stack = DMatrix::zeros(n * t.max(1), n);
    for a in 0..t {
        let ad = alg.ad(&torus.column(a).into_owned());
        stack.view_mut((a * n, 0), (n, n)).copy_from(&ad);
    }
    let centralizer = null_space(&stack, 1e-7).ncols();
    if centralizer != t {
        return Err(Error::NotMaximalTorus(format!(
            "centralizer has dimension {centralizer}, torus has {t}"
        )));
    }
    let center = alg.center();
    let tt = frame.complement_in(&center, &torus);
    let planes = frame.complement(&torus);
    let p = planes.ncols();
    if !p.is_multiple_of(2) {
        return Err(Error::OddBlock(p));
    }

    let mut rng = seeded_rng(seed);
    let mut found: Option<Vec<Root>> = None;
    'attempt: for _ in 0..16 {
        if p == 0 {
            found = Some(Vec::new());
            break;
        }
        let coeffs = random_vector(&mut rng, tt.ncols());
        let h = &tt * coeffs;
        let ad_h = alg.ad(&h);
        // Restriction of ad(H) to the orthocomplement, in orthonormal coordinates.
        let a = planes.transpose() * alg.gram() * &ad_h * &planes;
        let sq = a.transpose() * &a;
        let (vals, vecs) = sorted_sym_eigen(&sq);
        let top = vals.last().copied().unwrap_or(0.0);
        if vals[0] <= 1e-9 * top.max(1e-300) {
            continue;
        }
        let clusters = cluster_sorted(&vals, 1e-7 * top);
        let mut roots = Vec::new();
        for cl in clusters {
            if cl.len() != 2 {
                continue 'attempt;
            }
            let u = vecs.column(cl.start).into_owned();
            let x = &planes * u;
            let hx = &ad_h * &x;
            let y = &hx / frame.norm(&hx);
            let alpha = DVector::from_fn(tt.ncols(), |j, _| {
                let hj = tt.column(j).into_owned();
                frame.inner(&alg.bracket(&hj, &x), &y)
            });
            roots.push(Root { alpha, x, y });
        }
        found = Some(roots);
        break;
    }
    let mut roots = found.ok_or_else(|| {
        Error::NotMaximalTorus("no regular torus element separates the root planes".into())
    })?;

    // Reject repeated root functionals.
    let rnorm = roots.iter().map(|r| r.alpha.amax()).fold(0.0, f64::max);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let same = (&roots[i].alpha - &roots[j].alpha).amax() <= 1e-7 * rnorm
                || (&roots[i].alpha + &roots[j].alpha).amax() <= 1e-7 * rnorm;
            if same {
                return Err(Error::NotMaximalTorus("root of multiplicity > 1".into()));
            }
        }
    }

    for r in roots.iter_mut() {
        let positive = match positivity {
            Positivity::Lexicographic => {
                let lead = r
                    .alpha
                    .iter()
                    .find(|v| v.abs() > 1e-7 * rnorm)
                    .copied()
                    .ok_or(Error::IrregularPositivity)?;
                lead > 0.0
            }
            Positivity::Covector(c) => {
                if c.len() != r.alpha.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "positivity covector has {} entries, torus has {}",
                        c.len(),
                        r.alpha.len()
                    )));
                }
                let v = c.dot(&r.alpha);
                if v.abs() <= 1e-9 * rnorm * c.amax() {
                    return Err(Error::IrregularPositivity);
                }
                v > 0.0
            }
            Positivity::ComplexStructure(j) => {
                let jx = j * &r.x;
                let s = frame.inner(&jx, &r.y);
                if (s.abs() - 1.0).abs() > 1e-6 {
                    return Err(Error::PlaneNotInvariant((s.abs() - 1.0).abs()));
                }
                s > 0.0
            }
        };
        if !positive {
            r.alpha = -&r.alpha;
            r.y = -&r.y;
        }
    }

    let mut datum = RootDatum {
        center,
        torus: tt,
        roots,
        eta: BTreeMap::new(),
        seed,
    };
    datum.sort_roots(rnorm);
    datum.normalize_phases(alg)?;
    datum.eta = datum.compute_eta(alg);
    Ok(datum)
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.center.ncols() + self.torus.ncols()
    }

    /// `α` for a signed one-based index.
    pub fn signed_alpha(&self, idx: i32) -> DVector<f64> {
        let r = &self.roots[(idx.unsigned_abs() - 1) as usize];
        if idx > 0 {
            r.alpha.clone()
        } else {
            -&r.alpha
        }
    }

    fn root_scale(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| r.alpha.amax())
            .fold(0.0, f64::max)
            .max(1e-300)
    }

    /// Signed index of the root equal to `v`, if any.
    pub fn find_root(&self, v: &DVector<f64>) -> Option<i32> {
        let tol = 1e-6 * self.root_scale();
        for (k, r) in self.roots.iter().enumerate() {
            if (&r.alpha - v).amax() <= tol {
                return Some(k as i32 + 1);
            }
            if (&r.alpha + v).amax() <= tol {
                return Some(-(k as i32 + 1));
            }
        }
        None
    }

    pub fn eta(&self, a: i32, b: i32) -> f64 {
        self.eta.get(&(a, b)).copied().unwrap_or(0.0)
    }

    /// Positive roots that are not sums of two positive roots.
    pub fn simple_roots(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&g| {
                !(0..self.roots.len()).any(|a| {
                    a != g && {
                        let rest = &self.roots[g].alpha - &self.roots[a].alpha;
                        matches!(self.find_root(&rest), Some(k) if k > 0)
                    }
                })
            })
            .collect()
    }

    /// Coordinates of each positive root in the simple roots (nonnegative integers).
    pub fn simple_coordinates(&self) -> Vec<Vec<i64>> {
        let simple = self.simple_roots();
        if simple.is_empty() {
            return vec![Vec::new(); self.roots.len()];
        }
        let basis = from_columns(
            self.torus.ncols(),
            &simple
                .iter()
                .map(|&s| self.roots[s].alpha.clone())
                .collect::<Vec<_>>(),
        );
        let pinv = basis
            .pseudo_inverse(1e-12)
            .expect("simple roots are independent");
        self.roots
            .iter()
            .map(|r| {
                (&pinv * &r.alpha)
                    .iter()
                    .map(|c| c.round() as i64)
                    .collect()
            })
            .collect()
    }

    pub fn heights(&self) -> Vec<i64> {
        self.simple_coordinates()
            .iter()
            .map(|c| c.iter().sum())
            .collect()
    }

    fn sort_roots(&mut self, rnorm: f64) {
        let tol = 1e-7 * rnorm.max(1e-300);
        // Heights depend on the set only, not the order.
        let heights = self.heights();
        let mut idx: Vec<usize> = (0..self.roots.len()).collect();
        idx.sort_by(|&a, &b| {
            heights[a].cmp(&heights[b]).then_with(|| {
                for (x, y) in self.roots[a].alpha.iter().zip(self.roots[b].alpha.iter()) {
                    if (x - y).abs() > tol {
                        return y.total_cmp(x);
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        self.roots = idx.iter().map(|&i| self.roots[i].clone()).collect();
    }

    /// Rotates each non-simple root plane so that `E_γ` is a positive multiple
    /// of `[E_s, E_β]` for a simple `s` with `β = γ − s` processed earlier.
    /// This makes every `N_{μ,ν}` real.
    fn normalize_phases(&mut self, alg: &MetricLieAlgebra) -> Result<()> {
        let frame = alg.frame();
        let heights = self.heights();
        let simple = self.simple_roots();
        let mut order: Vec<usize> = (0..self.roots.len()).collect();
        order.sort_by_key(|&i| heights[i]);
        for &g in &order {
            if heights[g] <= 1 {
                continue;
            }
            let (s, b) = simple
                .iter()
                .find_map(|&s| {
                    let rest = &self.roots[g].alpha - &self.roots[s].alpha;
                    match self.find_root(&rest) {
                        Some(k) if k > 0 => Some((s, (k - 1) as usize)),
                        _ => None,
                    }
                })
                .ok_or_else(|| {
                    Error::MismatchedDatum("root not reachable from simple roots".into())
                })?;
            let (xs, ys) = (&self.roots[s].x, &self.roots[s].y);
            let (xb, yb) = (&self.roots[b].x, &self.roots[b].y);
            let v = alg.bracket(xs, xb) - alg.bracket(ys, yb);
            let (xg, yg) = (self.roots[g].x.clone(), self.roots[g].y.clone());
            let c = frame.inner(&v, &xg);
            let sn = frame.inner(&v, &yg);
            let r = (c * c + sn * sn).sqrt();
            if r <= 1e-9 {
                return Err(Error::MismatchedDatum("vanishing root bracket".into()));
            }
            let (c, sn) = (c / r, sn / r);
            self.roots[g].x = &xg * c + &yg * sn;
            self.roots[g].y = &yg * c - &xg * sn;
        }
        Ok(())
    }

    /// Complex root vector `E_μ` as (real, imaginary) parts.
    fn e_vector(&self, idx: i32) -> (DVector<f64>, DVector<f64>) {
        let r = &self.roots[(idx.unsigned_abs() - 1) as usize];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        if idx > 0 {
            (&r.x * s, &r.y * (-s))
        } else {
            (&r.x * (-s), &r.y * (-s))
        }
    }

    /// `N_{μ,ν} = ⟨[E_μ, E_ν], E_{μ+ν}⟩` as (real, imaginary) parts; zero if `μ+ν` is not a root.
    fn n_coefficient(&self, alg: &MetricLieAlgebra, a: i32, b: i32) -> (f64, f64) {
        let sum = self.signed_alpha(a) + self.signed_alpha(b);
        let Some(c) = self.find_root(&sum) else {
            return (0.0, 0.0);
        };
        let (ar, ai) = self.e_vector(a);
        let (br, bi) = self.e_vector(b);
        let (cr, ci) = self.e_vector(c);
        let re = alg.bracket(&ar, &br) - alg.bracket(&ai, &bi);
        let im = alg.bracket(&ar, &bi) + alg.bracket(&ai, &br);
        let frame = alg.frame();
        // Hermitian product ⟨u, w⟩ = g(u, conj w).
        let real = frame.inner(&re, &cr) + frame.inner(&im, &ci);
        let imag = frame.inner(&im, &cr) - frame.inner(&re, &ci);
        (real, imag)
    }

    fn signed_indices(&self) -> Vec<i32> {
        let k = self.roots.len() as i32;
        (1..=k).flat_map(|i| [i, -i]).collect()
    }

    fn compute_eta(&self, alg: &MetricLieAlgebra) -> BTreeMap<(i32, i32), f64> {
        let mut eta = BTreeMap::new();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for &a in &self.signed_indices() {
            for &b in &self.signed_indices() {
                if a == -b || a == b {
                    continue;
                }
                let (re, _) = self.n_coefficient(alg, a, b);
                if re.abs() > 1e-12 {
                    eta.insert((a, b), re * s);
                }
            }
        }
        eta
    }

    /// `H_α = [X_α, Y_α]` and the three-dimensional subalgebra it spans with the plane.
    pub fn sl2_triple(&self, alg: &MetricLieAlgebra, root: usize) -> Result<Sl2Triple> {
        let r = self.roots.get(root).ok_or(Error::RootNotFound(root))?;
        let h = alg.bracket(&r.x, &r.y);
        // Keep only the torus component.
        let proj = alg
            .frame()
            .projector(&crate::linalg::hstack(&self.center, &self.torus));
        let h = &proj * h;
        let hx = alg.bracket(&h, &r.x);
        let scale = alg.frame().inner(&hx, &r.y);
        Ok(Sl2Triple {
            h,
            x: r.x.clone(),
            y: r.y.clone(),
            scale,
        })
    }

    /// Maximum deviation of every bracket relation and η symmetry.
    pub fn verify_structure_coefficients(
        &self,
        alg: &MetricLieAlgebra,
    ) -> Result<BTreeMap<String, f64>> {
        let n = alg.dim();
        if self.torus.nrows() != n || self.center.nrows() != n {
            return Err(Error::MismatchedDatum(format!(
                "datum vectors have {} entries, algebra has dimension {n}",
                self.torus.nrows()
            )));
        }
        let expected = self.center.ncols() + self.torus.ncols() + 2 * self.roots.len();
        if expected != n {
            return Err(Error::MismatchedDatum(format!(
                "datum accounts for {expected} of {n} dimensions"
            )));
        }
        let mut out: BTreeMap<String, f64> = [
            "ad_action",
            "bracket_xx",
            "bracket_xy",
            "bracket_yy",
            "eta_antisymmetry",
            "eta_negation",
            "eta_cyclic",
            "eta_vanishing",
            "eta_reality",
        ]
        .iter()
        .map(|k| (k.to_string(), 0.0))
        .collect();
        let mut bump = |key: &str, v: f64| {
            let e = out.get_mut(key).expect("known key");
            *e = e.max(v);
        };
        for r in &self.roots {
            for j in 0..self.torus.ncols() {
                let h = self.torus.column(j).into_owned();
                let a = r.alpha[j];
                bump("ad_action", (alg.bracket(&h, &r.x) - &r.y * a).amax());
                bump("ad_action", (alg.bracket(&h, &r.y) + &r.x * a).amax());
            }
            for j in 0..self.center.ncols() {
                let h = self.center.column(j).into_owned();
                bump("ad_action", alg.bracket(&h, &r.x).amax());
            }
        }
        let k = self.roots.len() as i32;
        let zero = DVector::zeros(n);
        // Positive index and sign of α − β, following the sgn convention.
        let diff = |a: i32, b: i32| -> (f64, Option<usize>) {
            let d = self.signed_alpha(a) - self.signed_alpha(b);
            match self.find_root(&d) {
                Some(i) if i > 0 => (1.0, Some((i - 1) as usize)),
                Some(i) => (-1.0, Some((-i - 1) as usize)),
                None => (0.0, None),
            }
        };
        for a in 1..=k {
            for b in 1..=k {
                if a == b {
                    continue;
                }
                let ra = &self.roots[(a - 1) as usize];
                let rb = &self.roots[(b - 1) as usize];
                let sum = self.find_root(&(self.signed_alpha(a) + self.signed_alpha(b)));
                let (xs, ys) = match sum {
                    Some(i) => {
                        let r = &self.roots[(i.unsigned_abs() - 1) as usize];
                        (r.x.clone(), r.y.clone())
                    }
                    None => (zero.clone(), zero.clone()),
                };
                let (sg, dpos) = diff(a, b);
                let (xd, yd) = match dpos {
                    Some(i) => (self.roots[i].x.clone(), self.roots[i].y.clone()),
                    None => (zero.clone(), zero.clone()),
                };
                let e_ab = self.eta(a, b);
                let e_amb = self.eta(a, -b);
                let xx = &xs * e_ab - &xd * (sg * e_amb);
                let xy = &ys * e_ab + &yd * e_amb;
                let yy = -&xs * e_ab - &xd * (sg * e_amb);
                bump("bracket_xx", (alg.bracket(&ra.x, &rb.x) - xx).amax());
                bump("bracket_xy", (alg.bracket(&ra.x, &rb.y) - xy).amax());
                bump("bracket_yy", (alg.bracket(&ra.y, &rb.y) - yy).amax());
            }
        }
        for &a in &self.signed_indices() {
            for &b in &self.signed_indices() {
                if a == b || a == -b {
                    continue;
                }
                let e = self.eta(a, b);
                bump("eta_antisymmetry", (e + self.eta(b, a)).abs());
                bump("eta_negation", (e + self.eta(-a, -b)).abs());
                match self.find_root(&(self.signed_alpha(a) + self.signed_alpha(b))) {
                    Some(c) => {
                        bump("eta_cyclic", (e - self.eta(b, -c)).abs());
                        bump("eta_cyclic", (e - self.eta(-c, a)).abs());
                        bump("eta_reality", self.n_coefficient(alg, a, b).1.abs());
                    }
                    None => bump("eta_vanishing", e.abs()),
                }
            }
        }
        Ok(out)
    }

    /// Max deviation between the projector onto 𝔱 and onto `span(H_α)`.
    pub fn torus_spanned_by_coroots(&self, alg: &MetricLieAlgebra) -> Result<f64> {
        let frame = alg.frame();
        let hs: Vec<DVector<f64>> = (0..self.roots.len())
            .map(|i| self.sl2_triple(alg, i).map(|t| t.h))
            .collect::<Result<_>>()?;
        let span = frame.orthonormal_span(&from_columns(alg.dim(), &hs));
        Ok(frame.subspace_distance(&span, &self.torus))
    }

    /// Positive roots as unordered ± pairs, for comparing positivity choices.
    pub fn unsigned_roots(&self) -> Vec<DVector<f64>> {
        let tol = 1e-7 * self.root_scale();
        self.roots
            .iter()
            .map(|r| {
                let lead = r
                    .alpha
                    .iter()
                    .find(|v| v.abs() > tol)
                    .copied()
                    .unwrap_or(1.0);
                if lead < 0.0 {
                    -&r.alpha
                } else {
                    r.alpha.clone()
                }
            })
            .collect()
    }

    /// Matrix of the complex structure with `J X_α = Y_α` on every root plane,
    /// extended by `zero` elsewhere (columns are images of frame vectors).
    pub fn root_plane_complex_structure(&self, alg: &MetricLieAlgebra) -> DMatrix<f64> {
        let n = alg.dim();
        let mut j = DMatrix::zeros(n, n);
        let g = alg.gram();
        for r in &self.roots {
            // J = Y Xᵀ g − X Yᵀ g on the plane.
            j += &r.y * (r.x.transpose() * g) - &r.x * (r.y.transpose() * g);
        }
        j
    }
}
