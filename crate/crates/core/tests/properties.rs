//! Property tests for the invariants of the library.

mod common;

use bkl_core::decompose::bkl_decompose;
use bkl_core::enumerate::{enumerate_full_bkl, rank_rb, FactorType};
use bkl_core::hermitian::{cartan_eilenberg_d, classify, dc_omega, HermitianData, DEFAULT_TOL};
use bkl_core::io::{hermitian_to_json, parse_hermitian};
use bkl_core::lie::{Family, MetricLieAlgebra, SimpleType};
use bkl_core::standard::{build_standard, expected_torsion, spec, with_random_a, SasakiModel};
use bkl_core::tensor::{InvariantTensor, SparseForm};
use common::{catalog, change_frame, random_frame};
use proptest::prelude::*;

const MODELS: [SasakiModel; 3] = [
    SasakiModel::Su2Berger,
    SasakiModel::Heisenberg,
    SasakiModel::Sl2r,
];

/// A valid standard spec: Sasaki blocks, at most one group factor, and a
/// Euclidean rank chosen among the values allowed by the bookkeeping.
#[derive(Debug, Clone)]
struct RandomSpec {
    sasaki: Vec<(usize, f64)>,
    group: Option<(&'static str, i64, f64)>,
    l_choice: usize,
    seed: u64,
}

impl RandomSpec {
    fn build(
        &self,
    ) -> (
        bkl_core::standard::StandardSpec,
        usize,
        usize,
        Vec<SimpleType>,
    ) {
        let s = self.sasaki.len();
        let (r, types) = match self.group {
            Some(("su", 3, _)) => (2, vec![SimpleType::new(Family::Su, 3)]),
            Some(("so", 5, _)) => (2, vec![SimpleType::new(Family::So, 5)]),
            _ => (0, vec![]),
        };
        let allowed: Vec<usize> = (0..=s + r)
            .filter(|l| (l + s + r).is_multiple_of(2))
            .collect();
        let l = allowed[self.l_choice % allowed.len()];
        let sasaki: Vec<(SasakiModel, f64)> =
            self.sasaki.iter().map(|&(m, c)| (MODELS[m], c)).collect();
        let groups: Vec<(&str, i64, f64)> = self.group.into_iter().collect();
        let sp =
            with_random_a(spec(l, &sasaki, &groups), self.seed).expect("valid by construction");
        (sp, l, s, types)
    }
}

fn random_spec() -> impl Strategy<Value = RandomSpec> {
    (
        prop::collection::vec((0usize..3, 0.25f64..2.0), 0..=3),
        prop::option::of(prop_oneof![
            (0.5f64..2.0).prop_map(|k| ("su", 3i64, k)),
            (0.5f64..2.0).prop_map(|k| ("so", 5i64, k)),
        ]),
        0usize..8,
        any::<u64>(),
    )
        .prop_filter("non-empty model", |(s, g, _, _)| {
            !s.is_empty() || g.is_some()
        })
        .prop_map(|(sasaki, group, l_choice, seed)| RandomSpec {
            sasaki,
            group,
            l_choice,
            seed,
        })
}

fn random_form(dim: usize, degree: usize, coeffs: &[f64]) -> InvariantTensor {
    let mut k = 0;
    InvariantTensor::alternating_from_fn(dim, degree, |_| {
        k += 1;
        coeffs[(k - 1) % coeffs.len()]
    })
}

fn algebra(which: usize) -> MetricLieAlgebra {
    match which {
        0 => catalog("su", 3, 1.0),
        1 => catalog("so", 5, 0.5),
        _ => {
            let sp = spec(
                0,
                &[(SasakiModel::Heisenberg, 0.7), (SasakiModel::Sl2r, 1.3)],
                &[],
            );
            build_standard(&sp).unwrap().hermitian.alg().clone()
        }
    }
}

fn sparse_form(degree: usize, dim: usize, coeffs: &[f64]) -> SparseForm {
    let mut f = SparseForm::zero(degree);
    let mut k = 0;
    bkl_core::tensor::for_each_increasing(dim, degree, |idx| {
        f.add_assign(&SparseForm::basis(idx), coeffs[k % coeffs.len()]);
        k += 1;
    });
    f
}

fn form_distance(a: &SparseForm, b: &SparseForm) -> f64 {
    a.terms
        .keys()
        .chain(b.terms.keys())
        .map(|&m| (a.coefficient(m) - b.coefficient(m)).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exterior_derivative_squares_to_zero(
        which in 0usize..3,
        degree in 1usize..4,
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..40),
    ) {
        let alg = algebra(which);
        let form = random_form(alg.dim(), degree, &coeffs);
        let dd = cartan_eilenberg_d(&cartan_eilenberg_d(&form, &alg).unwrap(), &alg).unwrap();
        prop_assert!(dd.max_abs() < 1e-12, "d² = {:.3e}", dd.max_abs());
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        p in 0usize..4,
        q in 0usize..4,
        r in 0usize..3,
        a in prop::collection::vec(-1.0f64..1.0, 1..20),
        b in prop::collection::vec(-1.0f64..1.0, 1..20),
        c in prop::collection::vec(-1.0f64..1.0, 1..20),
    ) {
        let n = 7;
        let (x, y, z) = (sparse_form(p, n, &a), sparse_form(q, n, &b), sparse_form(r, n, &c));
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let mut swapped = SparseForm::zero(p + q);
        swapped.add_assign(&y.wedge(&x), sign);
        prop_assert!(form_distance(&x.wedge(&y), &swapped) < 1e-12);
        let left = x.wedge(&y).wedge(&z);
        let right = x.wedge(&y.wedge(&z));
        prop_assert!(form_distance(&left, &right) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn standard_models_are_bkl_and_decompose_back(rs in random_spec()) {
        let (sp, l, s, types) = rs.build();
        let h = build_standard(&sp).unwrap().hermitian;
        let report = classify(&h, DEFAULT_TOL).unwrap();
        prop_assert!(report.flags.bkl, "defects {:?}", report.defects);
        let t = dc_omega(&h).scale(-1.0);
        let closed = expected_torsion(&sp, &h).unwrap();
        prop_assert!(t.distance(&closed).unwrap() < 1e-9);

        let d = bkl_decompose(&h).unwrap();
        prop_assert_eq!(d.euclidean_rank(), l);
        prop_assert_eq!(d.sasaki.len(), s);
        prop_assert_eq!(d.flat_types(), types);
        let mut want: Vec<f64> = rs.sasaki.iter().map(|&(_, c)| c).collect();
        want.sort_by(f64::total_cmp);
        for (got, want) in d.sasaki_constants().iter().zip(&want) {
            prop_assert!((got - want).abs() < 1e-6, "c = {} vs {}", got, want);
        }
        let ft = FactorType::from(&d);
        prop_assert_eq!(rank_rb(&ft).unwrap(), d.bookkeeping.r_b);
    }

    #[test]
    fn json_round_trip_preserves_structure(rs in random_spec()) {
        let h = build_standard(&rs.build().0).unwrap().hermitian;
        let back = parse_hermitian(&hermitian_to_json(&h).to_string()).unwrap();
        prop_assert_eq!(back.alg().constants(), h.alg().constants());
        prop_assert_eq!(back.alg().gram(), h.alg().gram());
        prop_assert_eq!(back.j(), h.j());
    }

    #[test]
    fn verdicts_and_constants_survive_a_change_of_frame(rs in random_spec(), frame_seed in any::<u64>()) {
        let h: HermitianData = build_standard(&rs.build().0).unwrap().hermitian;
        let moved = change_frame(&h, &random_frame(h.dim(), frame_seed));
        let (a, b) = (classify(&h, DEFAULT_TOL).unwrap(), classify(&moved, DEFAULT_TOL).unwrap());
        prop_assert_eq!(a.flags, b.flags);
        let (da, db) = (bkl_decompose(&h).unwrap(), bkl_decompose(&moved).unwrap());
        prop_assert_eq!(da.bookkeeping.r_b, db.bookkeeping.r_b);
        prop_assert_eq!(da.flat_types(), db.flat_types());
        for (x, y) in da.sasaki_constants().iter().zip(db.sasaki_constants()) {
            prop_assert!((x - y).abs() < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn enumeration_invariants(n in 1usize..24) {
        let entries = enumerate_full_bkl(n).unwrap();
        let types: Vec<FactorType> = entries.iter().map(|e| e.factor_type()).collect();
        let mut sorted = types.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(&sorted, &types, "sorted and unique");
        for e in &entries {
            let t = e.factor_type();
            prop_assert!(t.validate().is_ok());
            prop_assert_eq!(rank_rb(&t).unwrap(), e.r_b);
            prop_assert!(e.r_b >= n.div_ceil(2) && e.r_b < n, "r_B = {} for n = {}", e.r_b, n);
            prop_assert_eq!(e.is_bismut_flat, e.s == 0);
            prop_assert_eq!(e.extremal_low, e.r_b == n.div_ceil(2));
            prop_assert_eq!(e.extremal_high, e.r_b == n - 1);
        }
    }
}
