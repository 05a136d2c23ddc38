//! Random inputs for property tests and the acceptance suite.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bivector::lambda2_dim;
use crate::curvature::CurvatureOperator;
use crate::forms::IntersectionForm;
use crate::minimizer::{biorth_general, gram_schmidt, FramePair};
use crate::sumword::SumWord;

/// Bianchi projection of a symmetric matrix with independent standard
/// normal entries on and above the diagonal.
pub fn random_operator<R: Rng>(n: usize, rng: &mut R) -> CurvatureOperator {
    let m = lambda2_dim(n);
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v: f64 = rng.sample(StandardNormal);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    CurvatureOperator::bianchi_project(a, n).expect("symmetric by construction")
}

/// [`random_operator`] rescaled to unit Frobenius norm.
pub fn random_unit_operator<R: Rng>(n: usize, rng: &mut R) -> CurvatureOperator {
    let r = random_operator(n, rng);
    let norm = r.matrix().norm();
    r.scaled(1.0 / norm)
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with
/// positive-diagonal normalization).
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    loop {
        let mut cols: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
        if gram_schmidt(&mut cols, n, n) {
            return DMatrix::from_column_slice(n, n, &cols);
        }
    }
}

/// Operator strictly inside the cone: a random operator shifted by a
/// multiple of the identity, which adds that multiple to every `sec⊥`.
pub fn random_inside_operator<R: Rng>(rng: &mut R) -> CurvatureOperator {
    let r = random_operator(4, rng);
    let (m, _) = r.min_biorth_exact4().expect("dimension 4");
    let margin = rng.random_range(0.1..1.0);
    r.add(&CurvatureOperator::identity(4).scaled(margin - m)).expect("same dimension")
}

/// Random unimodular form `P·D·Pᵀ` with `P` a product of elementary integer
/// operations and `D = diag(±1)`. Returns the form and `Σ D`.
pub fn random_unimodular_form<R: Rng>(rank: usize, rng: &mut R) -> (IntersectionForm, i64) {
    let d: Vec<i64> = (0..rank).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    let mut p: Vec<Vec<BigInt>> =
        (0..rank).map(|i| (0..rank).map(|j| BigInt::from(i64::from(i == j))).collect()).collect();
    if rank >= 2 {
        for _ in 0..3 * rank {
            let i = rng.random_range(0..rank);
            let mut j = rng.random_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            match rng.random_range(0..3) {
                0 => p.swap(i, j),
                1 => p[i].iter_mut().for_each(|v| *v = -v.clone()),
                _ => {
                    let k = BigInt::from(rng.random_range(-2i64..=2));
                    let row = p[j].clone();
                    p[i].iter_mut().zip(&row).for_each(|(a, b)| *a += &k * b);
                }
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| (0..rank).map(|k| &p[i][k] * &p[j][k] * d[k]).sum::<BigInt>())
                .collect()
        })
        .collect();
    let form = IntersectionForm::new(rows).expect("P·D·Pᵀ is unimodular");
    (form, d.iter().sum())
}

/// Random E8-free word with up to `max_count` copies of each block.
pub fn random_fact_one_word<R: Rng>(max_count: u64, rng: &mut R) -> SumWord {
    loop {
        let mut c = [0u64; 6];
        for v in c.iter_mut().take(4) {
            *v = rng.random_range(0..=max_count);
        }
        if let Ok(w) = SumWord::from_counts(c) {
            return w;
        }
    }
}

/// Central-difference gradient of `sec⊥` on frame pairs: the derivative
/// along the tangent projection of each ambient coordinate direction,
/// taken through the retraction.
pub fn finite_difference_gradient(op: &CurvatureOperator, fp: &FramePair, h: f64) -> [Vec<f64>; 4] {
    let n = fp.dim();
    let mut out: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; n]);
    for c in 0..4 {
        for i in 0..n {
            let mut e: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; n]);
            e[c][i] = 1.0;
            let d = fp.project_tangent(&e);
            let plus = biorth_general(op, &fp.retract(&d, h).expect("small step")).expect("valid pair");
            let minus = biorth_general(op, &fp.retract(&d, -h).expect("small step")).expect("valid pair");
            out[c][i] = (plus - minus) / (2.0 * h);
        }
    }
    out
}
