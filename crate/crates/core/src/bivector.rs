//! Exterior square of ℝⁿ: bivectors, oriented 2-planes, the Hodge star on
//! Λ²ℝ⁴ and rotation-invariant plane sampling.
//!
//! Bivectors are stored in the lexicographic basis
//! `e₁∧e₂, e₁∧e₃, …, e_{n−1}∧e_n`, which is taken to be orthonormal.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

/// Orthonormality defect accepted as-is by [`Plane::new`].
pub const FRAME_TOL: f64 = 1e-12;
/// Frames with a defect below this are repaired by Gram–Schmidt.
pub const FRAME_REPAIR_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires ambient dimension {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("frame is not orthonormal (defect {defect:e})")]
    NotOrthonormal { defect: f64 },
    #[error("bivector is zero or not decomposable")]
    NotDecomposable,
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
}

/// Number of coordinates of Λ²ℝⁿ.
pub const fn lambda2_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `e_i∧e_j` (`i < j`, zero-based) in the lexicographic basis.
#[inline]
pub const fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// The ordered pairs `(i, j)`, `i < j`, in basis order.
pub fn basis_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(lambda2_dim(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Writes the coefficients of `x∧y` into `out` without allocating.
#[inline]
pub(crate) fn wedge_into(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            out[k] = x[i] * y[j] - x[j] * y[i];
            k += 1;
        }
    }
}

/// Hodge star on Λ²ℝ⁴ in the lexicographic basis `(12, 13, 14, 23, 24, 34)`
/// with orientation `e₁∧e₂∧e₃∧e₄ > 0`.
#[inline]
pub(crate) fn hodge4(b: &[f64]) -> [f64; 6] {
    [b[5], -b[4], b[3], b[2], -b[1], b[0]]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    n: usize,
    coeffs: Vec<f64>,
}

impl Bivector {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![0.0; lambda2_dim(n)] }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::DimensionTooSmall(n));
        }
        if coeffs.len() != lambda2_dim(n) {
            return Err(GeometryError::BadLength { expected: lambda2_dim(n), got: coeffs.len() });
        }
        Ok(Self { n, coeffs })
    }

    /// `e_i∧e_j` for zero-based `i < j`.
    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut b = Self::zero(n);
        b.coeffs[pair_index(n, i, j)] = 1.0;
        b
    }

    /// `x∧y`, with coefficient `x_i y_j − x_j y_i` on slot `(i, j)`.
    pub fn wedge(x: &[f64], y: &[f64]) -> Result<Self, GeometryError> {
        if x.len() != y.len() {
            return Err(GeometryError::DimensionMismatch { left: x.len(), right: y.len() });
        }
        let n = x.len();
        if n < 2 {
            return Err(GeometryError::DimensionTooSmall(n));
        }
        let mut coeffs = vec![0.0; lambda2_dim(n)];
        wedge_into(x, y, &mut coeffs);
        Ok(Self { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient on `e_i∧e_j`; antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(self.n, i, j)],
            std::cmp::Ordering::Greater => -self.coeffs[pair_index(self.n, j, i)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    pub fn dot(&self, other: &Bivector) -> Result<f64, GeometryError> {
        self.same_dim(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &Bivector) -> Result<Bivector, GeometryError> {
        self.same_dim(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Bivector { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Bivector) -> Result<Bivector, GeometryError> {
        self.same_dim(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Bivector { n: self.n, coeffs })
    }

    pub fn scale(&self, s: f64) -> Bivector {
        Bivector { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    fn same_dim(&self, other: &Bivector) -> Result<(), GeometryError> {
        if self.n != other.n {
            return Err(GeometryError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn require4(&self) -> Result<(), GeometryError> {
        if self.n != 4 {
            return Err(GeometryError::UnsupportedDimension { expected: 4, got: self.n });
        }
        Ok(())
    }

    /// Hodge star on Λ²ℝ⁴. Sends the bivector of a plane to the bivector of
    /// its orthogonal complement.
    pub fn hodge_star(&self) -> Result<Bivector, GeometryError> {
        self.require4()?;
        Ok(Bivector { n: 4, coeffs: hodge4(&self.coeffs).to_vec() })
    }

    /// Coefficients of `b∧b` in the lexicographic basis of Λ⁴ℝⁿ
    /// (one per quadruple `i<j<k<l`).
    pub fn wedge_square(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let c = self.get(i, j) * self.get(k, l) - self.get(i, k) * self.get(j, l)
                            + self.get(i, l) * self.get(j, k);
                        out.push(2.0 * c);
                    }
                }
            }
        }
        out
    }

    /// Plücker test: `b∧b = 0` within `tol`.
    pub fn is_decomposable(&self, tol: f64) -> bool {
        self.wedge_square().iter().all(|c| c.abs() <= tol)
    }

    /// Splits `b` into its self-dual and anti-self-dual parts.
    pub fn self_dual_parts(&self) -> Result<(Bivector, Bivector), GeometryError> {
        self.require4()?;
        let star = hodge4(&self.coeffs);
        let plus = self.coeffs.iter().zip(star).map(|(b, s)| 0.5 * (b + s)).collect();
        let minus = self.coeffs.iter().zip(star).map(|(b, s)| 0.5 * (b - s)).collect();
        Ok((Bivector { n: 4, coeffs: plus }, Bivector { n: 4, coeffs: minus }))
    }
}

/// An oriented 2-plane in ℝⁿ, held as an orthonormal frame `(x, y)` together
/// with its Plücker coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    x: Vec<f64>,
    y: Vec<f64>,
    // `x∧y`, except for complements in ℝ⁴, which carry the exact Hodge image
    // of the original so that taking the complement twice is lossless.
    b: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn frame_defect(x: &[f64], y: &[f64]) -> f64 {
    let xx = (dot(x, x) - 1.0).abs();
    let yy = (dot(y, y) - 1.0).abs();
    let xy = dot(x, y).abs();
    xx.max(yy).max(xy)
}

/// Gram–Schmidt on a pair; `None` if the pair is (numerically) dependent.
pub(crate) fn orthonormalize_pair(x: &mut [f64], y: &mut [f64]) -> Option<()> {
    let nx = dot(x, x).sqrt();
    if !nx.is_finite() || nx <= 1e-300 {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= nx);
    let p = dot(x, y);
    y.iter_mut().zip(x.iter()).for_each(|(v, u)| *v -= p * u);
    let ny = dot(y, y).sqrt();
    if !ny.is_finite() || ny <= 1e-300 * nx.max(1.0) {
        return None;
    }
    y.iter_mut().for_each(|v| *v /= ny);
    Some(())
}

impl Plane {
    /// Accepts an orthonormal frame. Frames with defect in
    /// `(FRAME_TOL, FRAME_REPAIR_TOL)` are re-orthonormalized; worse ones are
    /// rejected.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, GeometryError> {
        if x.len() != y.len() {
            return Err(GeometryError::DimensionMismatch { left: x.len(), right: y.len() });
        }
        if x.len() < 2 {
            return Err(GeometryError::DimensionTooSmall(x.len()));
        }
        let defect = frame_defect(&x, &y);
        if defect <= FRAME_TOL {
            return Ok(Self::from_frame(x, y));
        }
        if defect < FRAME_REPAIR_TOL {
            let (mut x, mut y) = (x, y);
            orthonormalize_pair(&mut x, &mut y).ok_or(GeometryError::NotOrthonormal { defect })?;
            return Ok(Self::from_frame(x, y));
        }
        Err(GeometryError::NotOrthonormal { defect })
    }

    /// `span(e_i, e_j)`.
    pub fn coordinate(n: usize, i: usize, j: usize) -> Self {
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        x[i] = 1.0;
        y[j] = 1.0;
        Self::from_frame(x, y)
    }

    /// Spans an arbitrary (not necessarily orthonormal) independent pair.
    pub fn spanned_by(mut x: Vec<f64>, mut y: Vec<f64>) -> Result<Self, GeometryError> {
        if x.len() != y.len() {
            return Err(GeometryError::DimensionMismatch { left: x.len(), right: y.len() });
        }
        if x.len() < 2 {
            return Err(GeometryError::DimensionTooSmall(x.len()));
        }
        orthonormalize_pair(&mut x, &mut y).ok_or(GeometryError::NotDecomposable)?;
        Ok(Self::from_frame(x, y))
    }

    /// Recovers a frame from a nonzero decomposable bivector. The frame's
    /// wedge is `b / |b|`.
    pub fn from_bivector(b: &Bivector) -> Result<Self, GeometryError> {
        let n = b.dim();
        let norm = b.norm();
        if norm.is_nan() || norm <= 0.0 || !b.is_decomposable(1e-9 * norm * norm) {
            return Err(GeometryError::NotDecomposable);
        }
        // Columns of the skew matrix B = x yᵀ − y xᵀ lie in the plane, and
        // B w is w rotated by a quarter turn inside it.
        let col = |j: usize| -> Vec<f64> { (0..n).map(|i| b.get(i, j) / norm).collect() };
        let best = (0..n)
            .max_by(|&a, &c| {
                let na = dot(&col(a), &col(a));
                let nc = dot(&col(c), &col(c));
                na.total_cmp(&nc)
            })
            .expect("n >= 2");
        let mut w = col(best);
        let nw = dot(&w, &w).sqrt();
        w.iter_mut().for_each(|v| *v /= nw);
        let mut z: Vec<f64> = (0..n).map(|i| (0..n).map(|j| b.get(i, j) / norm * w[j]).sum()).collect();
        // w∧(Bw) = −b/|b|, so the frame (Bw, w) reproduces the orientation.
        orthonormalize_pair(&mut z, &mut w).ok_or(GeometryError::NotDecomposable)?;
        Ok(Self::from_frame(z, w))
    }

    fn from_frame(x: Vec<f64>, y: Vec<f64>) -> Self {
        let mut b = vec![0.0; lambda2_dim(x.len())];
        wedge_into(&x, &y, &mut b);
        Self { x, y, b }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn bivector(&self) -> Bivector {
        Bivector { n: self.dim(), coeffs: self.b.clone() }
    }

    pub(crate) fn plucker(&self) -> &[f64] {
        &self.b
    }

    /// Largest deviation of the frame from orthonormality.
    pub fn frame_defect(&self) -> f64 {
        frame_defect(&self.x, &self.y)
    }

    /// Rotates the frame by `angle` inside the plane.
    pub fn rotated(&self, angle: f64) -> Plane {
        let (s, c) = angle.sin_cos();
        let x = self.x.iter().zip(&self.y).map(|(a, b)| c * a + s * b).collect();
        let y = self.x.iter().zip(&self.y).map(|(a, b)| -s * a + c * b).collect();
        Plane::from_frame(x, y)
    }

    /// Orthogonal projector onto the plane, row-major `n×n`.
    pub fn projector(&self) -> Vec<f64> {
        let n = self.dim();
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                p[i * n + j] = self.x[i] * self.x[j] + self.y[i] * self.y[j];
            }
        }
        p
    }

    /// `σ⊥` for a plane in ℝ⁴.
    pub fn orthogonal_plane(&self) -> Result<Plane, GeometryError> {
        if self.dim() != 4 {
            return Err(GeometryError::UnsupportedDimension { expected: 4, got: self.dim() });
        }
        let star = hodge4(&self.b);
        let mut p = Plane::from_bivector(&Bivector { n: 4, coeffs: star.to_vec() })?;
        p.b = star.to_vec();
        Ok(p)
    }
}

/// Streams rotation-invariant random frames: each vector is Gaussian, then
/// the set is Gram–Schmidt orthonormalized.
pub(crate) struct FrameSampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl FrameSampler {
    pub(crate) fn new(n: usize, seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), n }
    }

    /// Fills `frame` (column-major, `k` columns of length `n`) with an
    /// orthonormal frame.
    pub(crate) fn fill(&mut self, frame: &mut [f64]) {
        let n = self.n;
        let k = frame.len() / n;
        loop {
            for v in frame.iter_mut() {
                *v = StandardNormal.sample(&mut self.rng);
            }
            if crate::minimizer::gram_schmidt(frame, n, k) {
                return;
            }
        }
    }
}

/// `count` planes in ℝⁿ drawn from the rotation-invariant measure on the
/// Grassmannian; deterministic in `seed`.
pub fn sample_planes(n: usize, count: usize, seed: u64) -> Result<Vec<Plane>, GeometryError> {
    if n < 2 {
        return Err(GeometryError::DimensionTooSmall(n));
    }
    let mut sampler = FrameSampler::new(n, seed);
    let mut buf = vec![0.0; 2 * n];
    Ok((0..count)
        .map(|_| {
            sampler.fill(&mut buf);
            Plane::from_frame(buf[..n].to_vec(), buf[n..].to_vec())
        })
        .collect())
}
