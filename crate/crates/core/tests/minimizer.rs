//! Descent, determinism and consistency of the frame-pair minimizer.

use biorth::minimizer::{biorth_general, biorth_gradient, descend_from, minimize, FramePair};
use biorth::testing::{finite_difference_gradient, random_operator};
use biorth::{MinimizeOptions, Model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn relative_error(a: &[Vec<f64>; 4], b: &[Vec<f64>; 4]) -> f64 {
    let (mut diff, mut norm) = (0.0, 0.0);
    for c in 0..4 {
        for (u, v) in a[c].iter().zip(&b[c]) {
            diff += (u - v) * (u - v);
            norm += u * u;
        }
    }
    (diff / norm).sqrt()
}

#[test]
fn analytic_gradient_matches_central_differences() {
    for n in 4..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + n as u64);
        for _ in 0..100 {
            let op = random_operator(n, &mut rng);
            let fp = FramePair::random(n, rng.random()).unwrap();
            let err = relative_error(&biorth_gradient(&op, &fp).unwrap(), &finite_difference_gradient(&op, &fp, 1e-6));
            assert!(err <= 1e-5, "n = {n}: relative error {err:e}");
        }
    }
}

#[test]
fn descent_never_increases_the_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [4, 5, 7] {
        for _ in 0..10 {
            let op = random_operator(n, &mut rng);
            let start = FramePair::random(n, rng.random()).unwrap();
            let run = descend_from(&op, &start, &MinimizeOptions::default()).unwrap();
            assert_eq!(run.trace[0], biorth_general(&op, &start).unwrap());
            for w in run.trace.windows(2) {
                // Accepted steps decrease f exactly; the values are recomputed
                // from scratch, so allow their rounding.
                let slack = 1e-14 * w[0].abs().max(1.0);
                assert!(w[1] <= w[0] + slack, "n = {n}: {} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let op = random_operator(5, &mut ChaCha8Rng::seed_from_u64(12));
    let opts = MinimizeOptions { restarts: 16, seed: 99, ..MinimizeOptions::default() };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| minimize(&op, &opts).unwrap())
    };
    let serial = run(1);
    for threads in [2, 4] {
        let parallel = run(threads);
        assert_eq!(parallel, serial);
        assert_eq!(parallel.value.to_bits(), serial.value.to_bits());
    }
    assert_eq!(minimize(&op, &opts).unwrap(), serial);
}

#[test]
fn minimize_agrees_with_the_exact_certifier() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let opts = MinimizeOptions::default();
    for k in 0..100 {
        let op = random_operator(4, &mut rng);
        let (exact, _) = op.min_biorth_exact4().unwrap();
        let m = minimize(&op, &opts).unwrap();
        assert!(m.converged, "operator {k}: {} of {} restarts converged, best grad {:e}", m.converged_restarts, m.restarts_used, m.grad_norm);
        assert!((exact - m.value).abs() <= 1e-6, "operator {k}: exact {exact}, minimize {}", m.value);
    }
}

#[test]
fn sphere_times_line_has_minimum_one_half() {
    for n in 4..=7 {
        let op = Model::SphereTimesLine(n).operator().unwrap();
        let m = minimize(&op, &MinimizeOptions { restarts: 16, ..MinimizeOptions::default() }).unwrap();
        assert!((m.value - 0.5).abs() <= 1e-8, "n = {n}: {}", m.value);
    }
}

#[test]
fn sectional_minimum_of_cp2_converges() {
    let op = Model::Cp2FubiniStudy.operator().unwrap();
    let m = op.min_sec(&MinimizeOptions::default()).unwrap();
    assert!(m.converged);
    assert!((m.value - 1.0).abs() < 1e-12);
}
