//! Shared fixtures: the standard-model battery and random integrable inputs.
#![allow(dead_code)]

use bkl_core::hermitian::HermitianData;
use bkl_core::lie::{build_catalog, Family, MetricLieAlgebra, SimpleType, StructureConstants};
use bkl_core::linalg::{random_vector, seeded_rng};
use bkl_core::standard::{spec, with_random_a, SasakiModel, StandardSpec};
use nalgebra::DMatrix;

use SasakiModel::{Heisenberg as Hei, Sl2r, Su2Berger as Ber};

pub struct Case {
    pub name: &'static str,
    pub spec: StandardSpec,
    /// Expected decomposition: su(2) group factors appear as Sasaki blocks.
    pub l: usize,
    pub s: usize,
    pub groups: Vec<SimpleType>,
    /// Sorted Sasaki constants, including those of su(2) group factors.
    pub c: Vec<f64>,
}

/// `c` of an su(2) factor with metric `κ(−B)`: `[E,F] = 2cH` in an orthonormal frame.
pub fn su2_group_c(kappa: f64) -> f64 {
    1.0 / (2.0 * (2.0 * kappa).sqrt())
}

const SU3: SimpleType = SimpleType::new(Family::Su, 3);
const SO5: SimpleType = SimpleType::new(Family::So, 5);

fn case(
    name: &'static str,
    l: usize,
    sasaki: &[(SasakiModel, f64)],
    groups: &[(&str, i64, f64)],
    random_seed: Option<u64>,
) -> Case {
    let mut sp = spec(l, sasaki, groups);
    if let Some(seed) = random_seed {
        sp = with_random_a(sp, seed).expect("valid spec");
    }
    let mut c: Vec<f64> = sasaki.iter().map(|&(_, c)| c).collect();
    let mut types = Vec::new();
    for &(f, p, kappa) in groups {
        if f == "su" && p == 2 {
            c.push(su2_group_c(kappa));
        } else {
            types.push(match (f, p) {
                ("su", 3) => SU3,
                ("so", 5) => SO5,
                _ => panic!("battery uses su(3), so(5) and su(2) only"),
            });
        }
    }
    c.sort_by(f64::total_cmp);
    types.sort();
    Case {
        name,
        spec: sp,
        l,
        s: c.len(),
        groups: types,
        c,
    }
}

/// At least twelve standard models covering ℓ ∈ {0..3}, s ∈ {0..4}, the
/// groups su(3), so(5) and su(3) ⊕ su(2), mixed constants and both choices of `A`.
pub fn battery() -> Vec<Case> {
    vec![
        case("hopf-berger", 1, &[(Ber, 1.0)], &[], None),
        case("hopf-heisenberg", 1, &[(Hei, 0.6)], &[], None),
        case("hopf-sl2r", 1, &[(Sl2r, 0.8)], &[], Some(21)),
        case("s1s2", 0, &[(Hei, 1.0), (Ber, 0.7)], &[], None),
        case("r2s1s2", 2, &[(Hei, 0.5), (Ber, 1.5)], &[], Some(5)),
        case("r1s3", 1, &[(Ber, 0.4), (Sl2r, 1.1), (Hei, 2.0)], &[], None),
        case(
            "r3s3",
            3,
            &[(Hei, 0.9), (Ber, 1.3), (Sl2r, 0.35)],
            &[],
            Some(7),
        ),
        case(
            "s4",
            0,
            &[(Ber, 0.5), (Ber, 0.75), (Hei, 1.0), (Sl2r, 1.25)],
            &[],
            Some(9),
        ),
        case("su3", 0, &[], &[("su", 3, 1.0)], None),
        case("so5", 0, &[], &[("so", 5, 0.5)], None),
        case("r2-su3", 2, &[], &[("su", 3, 2.0)], None),
        case("r2-so5", 2, &[], &[("so", 5, 1.0)], Some(11)),
        case("r1s1-su3", 1, &[(Ber, 0.8)], &[("su", 3, 0.75)], None),
        case(
            "r1-su3-su2",
            1,
            &[],
            &[("su", 3, 1.0), ("su", 2, 0.5)],
            Some(13),
        ),
        case(
            "s2-su3",
            0,
            &[(Hei, 0.7), (Sl2r, 1.4)],
            &[("su", 3, 1.0)],
            None,
        ),
        case("r3s1-so5", 3, &[(Ber, 1.2)], &[("so", 5, 2.0)], Some(17)),
    ]
}

/// Re-expresses a Hermitian structure in the frame given by the columns of `p`.
pub fn change_frame(h: &HermitianData, p: &DMatrix<f64>) -> HermitianData {
    let alg = h.alg().change_basis(p).expect("invertible basis change");
    let pinv = p.clone().try_inverse().expect("invertible");
    let j = &pinv * h.j() * p;
    HermitianData::new(alg, j).expect("transformed structure is Hermitian")
}

/// Random well-conditioned frame change `Q D U` (orthogonal, diagonal, unit upper triangular).
pub fn random_frame(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = seeded_rng(seed);
    let cols: Vec<_> = (0..n).map(|_| random_vector(&mut rng, n)).collect();
    let q = bkl_core::linalg::from_columns(n, &cols).qr().q();
    let d = random_vector(&mut rng, n).map(|x| 1.25 + 0.75 * x);
    let mut u = DMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            u[(i, j)] = 0.3 * random_vector(&mut rng, 1)[0];
        }
    }
    q * DMatrix::from_diagonal(&d) * u
}

/// Two integrable but non-BKL nilpotent structures with the standard `J`.
pub fn nilpotent_non_bkl() -> Vec<HermitianData> {
    let mk = |n: usize, entries: &[(usize, usize, usize, f64)]| {
        let sc = StructureConstants::from_entries(n, entries).unwrap();
        let alg = MetricLieAlgebra::new(sc, DMatrix::identity(n, n), None).unwrap();
        let mut j = DMatrix::zeros(n, n);
        for a in (0..n).step_by(2) {
            j[(a + 1, a)] = 1.0;
            j[(a, a + 1)] = -1.0;
        }
        HermitianData::new(alg, j).unwrap()
    };
    vec![
        mk(6, &[(0, 1, 5, 1.0), (2, 3, 5, 1.0)]),
        mk(6, &[(0, 2, 4, 1.0), (1, 3, 4, 1.0)]),
    ]
}

/// Random integrable Hermitian structure number `k`: a battery model or a
/// nilpotent example with random constants, seen through a random frame.
pub fn random_integrable(k: u64) -> HermitianData {
    let mut rng = seeded_rng(0xfeed ^ k);
    let x = random_vector(&mut rng, 4);
    let base = match k % 4 {
        0 => {
            let c = 0.3 + 1.5 * x[0].abs();
            let sp =
                with_random_a(spec(1, &[(Ber, c)], &[("su", 3, 0.5 + x[1].abs())]), k).unwrap();
            bkl_core::standard::build_standard(&sp).unwrap().hermitian
        }
        1 => {
            let sp = with_random_a(
                spec(2, &[(Hei, 0.2 + x[0].abs()), (Sl2r, 0.2 + x[1].abs())], &[]),
                k,
            )
            .unwrap();
            bkl_core::standard::build_standard(&sp).unwrap().hermitian
        }
        2 => {
            let sp = with_random_a(spec(0, &[], &[("so", 5, 0.5 + x[0].abs())]), k).unwrap();
            bkl_core::standard::build_standard(&sp).unwrap().hermitian
        }
        _ => nilpotent_non_bkl()[(k / 4 % 2) as usize].clone(),
    };
    let p = random_frame(base.dim(), k ^ 0xabc);
    change_frame(&base, &p)
}

/// Catalog algebra helper for tests.
pub fn catalog(name: &str, p: i64, scale: f64) -> MetricLieAlgebra {
    build_catalog(name, p, scale).unwrap()
}
