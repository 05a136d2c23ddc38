//! Property tests for the geometric, curvature, form and word invariants.

use biorth::bivector::{sample_planes, Bivector, Plane};
use biorth::curvature::{ConeStatus, CONE_TOL};
use biorth::forms::{admits_psc, serre_normal_form, Builtin, HomeoTag, IntersectionForm, Parity};
use biorth::sumword::{certificate, normalize, word_class, Evidence, RewriteRules};
use biorth::testing::{
    random_fact_one_word, random_inside_operator, random_operator, random_orthogonal, random_unimodular_form,
};
use biorth::SumWord;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn plane(n: usize, seed: u64) -> Plane {
    sample_planes(n, 1, seed).unwrap().pop().unwrap()
}

fn vec4() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0..5.0f64, 4)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hodge_of_unit_plane_is_unit_decomposable_and_orthogonal(seed in any::<u64>()) {
        let b = plane(4, seed).bivector();
        let s = b.hodge_star().unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
        prop_assert!(s.is_decomposable(1e-12));
        prop_assert!(b.dot(&s).unwrap().abs() < 1e-12);
    }

    #[test]
    fn wedges_satisfy_plucker(x in vec4(), y in vec4()) {
        let b = Bivector::wedge(&x, &y).unwrap();
        let scale = 1.0 + b.norm() * b.norm();
        prop_assert!(b.wedge_square().iter().all(|v| v.abs() <= 1e-12 * scale));
    }

    #[test]
    fn self_dual_parts_reassemble_orthogonally(c in prop::collection::vec(-5.0..5.0f64, 6)) {
        let b = Bivector::from_coeffs(4, c).unwrap();
        let (p, m) = b.self_dual_parts().unwrap();
        prop_assert!(max_abs_diff(p.add(&m).unwrap().coeffs(), b.coeffs()) < 1e-12);
        prop_assert!(p.dot(&m).unwrap().abs() < 1e-12 * (1.0 + b.norm() * b.norm()));
    }

    #[test]
    fn orthogonal_plane_is_an_involution(seed in any::<u64>()) {
        let p = plane(4, seed);
        let back = p.orthogonal_plane().unwrap().orthogonal_plane().unwrap();
        prop_assert!(max_abs_diff(&back.projector(), &p.projector()) < 1e-12);
    }

    #[test]
    fn biorth_is_symmetric_under_complement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let op = random_operator(4, &mut r);
        let p = plane(4, r.random());
        prop_assert_eq!(op.biorth(&p).unwrap(), op.biorth(&p.orthogonal_plane().unwrap()).unwrap());
    }

    #[test]
    fn sec_ignores_in_plane_rotation(seed in any::<u64>(), n in 2usize..7, angle in -7.0..7.0f64) {
        let mut r = rng(seed);
        let op = random_operator(n, &mut r);
        let p = plane(n, r.random());
        let q = p.rotated(angle);
        prop_assert!(q.frame_defect() < 1e-12);
        prop_assert!((op.sec(&p).unwrap() - op.sec(&q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cone_is_convex(seed in any::<u64>(), t in 0.0..=1.0f64) {
        let mut r = rng(seed);
        let (a, b) = (random_inside_operator(&mut r), random_inside_operator(&mut r));
        prop_assert_eq!(a.lerp(&b, t).unwrap().in_cone(CONE_TOL).unwrap().status, ConeStatus::Inside);
    }

    #[test]
    fn cone_is_a_cone(seed in any::<u64>(), lambda in 1e-3..1e3f64) {
        let op = random_operator(4, &mut rng(seed));
        let base = op.in_cone(CONE_TOL).unwrap();
        // Away from the boundary band the status must not move.
        prop_assume!(base.min_value.abs() > 1e-6 || base.min_value == 0.0);
        prop_assert_eq!(op.scaled(lambda).in_cone(CONE_TOL).unwrap().status, base.status);
    }

    #[test]
    fn exact_minimum_is_o4_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let op = random_operator(4, &mut r);
        let q = random_orthogonal(4, &mut r);
        let (a, _) = op.min_biorth_exact4().unwrap();
        let (b, _) = op.conjugate(&q).unwrap().min_biorth_exact4().unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn scalar_curvature_from_three_biorthogonal_pairs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let op = random_operator(4, &mut r);
        let q = random_orthogonal(4, &mut r);
        let c = op.conjugate(&q).unwrap();
        let sum: f64 = [(0, 1), (0, 2), (0, 3)]
            .iter()
            .map(|&(i, j)| c.biorth(&Plane::coordinate(4, i, j)).unwrap())
            .sum();
        prop_assert!((c.scal() - 4.0 * sum).abs() <= 1e-9);
    }

    #[test]
    fn ricci_trace_is_scalar_curvature(seed in any::<u64>(), n in 2usize..8) {
        let op = random_operator(n, &mut rng(seed));
        prop_assert!((op.ricci().trace() - op.scal()).abs() <= 1e-10);
    }

    #[test]
    fn conjugation_by_identity_is_exact(seed in any::<u64>()) {
        let op = random_operator(4, &mut rng(seed));
        let same = op.conjugate(&DMatrix::identity(4, 4)).unwrap();
        prop_assert_eq!(same.matrix(), op.matrix());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariants_add_under_direct_sum(seed in any::<u64>(), r1 in 0usize..7, r2 in 0usize..7) {
        let mut r = rng(seed);
        let (a, sa) = random_unimodular_form(r1, &mut r);
        let (b, sb) = random_unimodular_form(r2, &mut r);
        let (ia, ib, is) = (a.invariants(), b.invariants(), a.direct_sum(&b).invariants());
        prop_assert_eq!(is.rank, ia.rank + ib.rank);
        prop_assert_eq!(is.signature, sa + sb);
        prop_assert_eq!(is.b_plus, ia.b_plus + ib.b_plus);
        prop_assert_eq!(is.b_minus, ia.b_minus + ib.b_minus);
        let both_even = ia.parity == Parity::Even && ib.parity == Parity::Even;
        prop_assert_eq!(is.parity == Parity::Even, both_even);
        prop_assert_eq!(a.direct_sum(&b).a_hat(), a.a_hat() + b.a_hat());
    }

    #[test]
    fn signature_of_congruent_diagonal_forms(seed in any::<u64>(), rank in 0usize..=12) {
        let (q, sig) = random_unimodular_form(rank, &mut rng(seed));
        let inv = q.invariants();
        prop_assert_eq!(inv.signature, sig);
        prop_assert_eq!(inv.rank, inv.b_plus + inv.b_minus);
        prop_assert_eq!(inv.determinant.abs(), 1);
        prop_assert_eq!(q.a_hat(), num_rational::Rational64::new(-sig, 8));
    }

    #[test]
    fn indefinite_forms_with_equal_invariants_share_a_class(seed in any::<u64>(), rank in 2usize..=10) {
        let mut r = rng(seed);
        let (a, _) = random_unimodular_form(rank, &mut r);
        // An odd form congruent to the diagonal one with the same invariants.
        let inv = a.invariants();
        prop_assume!(inv.b_plus > 0 && inv.b_minus > 0);
        let diag: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| if i != j { 0 } else if i < inv.b_plus { 1 } else { -1 }).collect())
            .collect();
        let b = IntersectionForm::from_i64(&diag).unwrap();
        prop_assert_eq!(serre_normal_form(&a, false).unwrap(), serre_normal_form(&b, false).unwrap());
    }

    #[test]
    fn even_indefinite_forms_classify_by_invariants(seed in any::<u64>(), h in 1usize..4, e in 0usize..2, neg in any::<bool>()) {
        let _ = seed;
        let mut q = IntersectionForm::empty();
        for _ in 0..h {
            q = q.direct_sum(&IntersectionForm::builtin(Builtin::H));
        }
        let e8 = IntersectionForm::builtin(Builtin::E8);
        let e8 = if neg { e8.negated() } else { e8 };
        for _ in 0..e {
            q = q.direct_sum(&e8);
        }
        let class = serre_normal_form(&q, false).unwrap();
        let s = if neg { -(e as i64) } else { e as i64 };
        let expected = if e == 0 { HomeoTag::SumS2xS2 { n: h as u64 } } else { HomeoTag::E8Family { s, n: h as u64 } };
        prop_assert_eq!(&class.tag, &expected);
        prop_assert_eq!(admits_psc(&class).admits, e == 0);
    }

    #[test]
    fn word_and_form_routes_agree(seed in any::<u64>()) {
        let w = random_fact_one_word(5, &mut rng(seed));
        let by_form = serre_normal_form(&w.to_form(), false).unwrap();
        prop_assert_eq!(word_class(&w, RewriteRules::default()).unwrap(), Some(by_form));
    }

    #[test]
    fn rewriting_preserves_form_invariants(seed in any::<u64>()) {
        let w = random_fact_one_word(5, &mut rng(seed));
        let (a, b) = (w.to_form().invariants(), normalize(&w, RewriteRules::default()).unwrap().to_form().invariants());
        prop_assert_eq!((a.rank, a.signature, a.parity), (b.rank, b.signature, b.parity));
    }

    #[test]
    fn canonical_printing_round_trips(counts in prop::array::uniform6(0u64..5)) {
        prop_assume!(counts.iter().any(|&c| c > 0));
        let w = SumWord::from_counts(counts).unwrap();
        prop_assert_eq!(SumWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn certificates_carry_positive_recomputed_values(seed in any::<u64>()) {
        let w = normalize(&random_fact_one_word(2, &mut rng(seed)), RewriteRules::default()).unwrap();
        let c = certificate(&w).unwrap();
        prop_assert_eq!(c.blocks.len() as u64, w.counts().iter().sum::<u64>());
        for b in &c.blocks {
            if let Evidence::Operator { min_biorth, .. } = b.evidence {
                prop_assert!(min_biorth > 0.0);
            }
        }
        prop_assert!(c.glue.hypotheses.iter().all(|h| h.verified));
    }
}
