//! Minimization of averaged sectional curvature over pairs of orthogonal
//! planes in ℝⁿ, `n ≥ 4`.
//!
//! The search space is the Stiefel manifold of orthonormal 4-frames
//! `(x₁, x₂, y₁, y₂)`; the objective is
//! `½(sec span(x₁,x₂) + sec span(y₁,y₂))`. Each restart runs projected
//! gradient descent with a QR retraction and Armijo backtracking.

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bivector::{hodge4, lambda2_dim, wedge_into, FrameSampler, GeometryError, Plane};
use crate::curvature::CurvatureOperator;

/// Gram defect accepted for a [`FramePair`].
pub const GRAM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinimizeError {
    #[error("pairs of orthogonal planes need dimension at least 4, got {0}")]
    DimensionTooSmall(usize),
    #[error("restarts must be at least 1")]
    NoRestarts,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Modified Gram–Schmidt (two passes) on the `k` columns of a column-major
/// `n×k` buffer. Columns keep their orientation, so this is the Q factor of
/// a QR decomposition with positive diagonal. Returns `false` on rank loss.
pub(crate) fn gram_schmidt(frame: &mut [f64], n: usize, k: usize) -> bool {
    for c in 0..k {
        let (done, rest) = frame.split_at_mut(c * n);
        let col = &mut rest[..n];
        let start: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        for _ in 0..2 {
            for p in 0..c {
                let prev = &done[p * n..(p + 1) * n];
                let d: f64 = prev.iter().zip(col.iter()).map(|(a, b)| a * b).sum();
                col.iter_mut().zip(prev).for_each(|(v, u)| *v -= d * u);
            }
        }
        let norm: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 1e-10 * start || norm == 0.0 {
            return false;
        }
        col.iter_mut().for_each(|v| *v /= norm);
    }
    true
}

fn gram_defect(frame: &[f64], n: usize, k: usize) -> f64 {
    let mut d = 0.0f64;
    for a in 0..k {
        for b in a..k {
            let dot: f64 = (0..n).map(|i| frame[a * n + i] * frame[b * n + i]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            d = d.max((dot - target).abs());
        }
    }
    d
}

/// Four orthonormal vectors: `σ = span(x₁, x₂)` and `τ = span(y₁, y₂)` are
/// orthogonal planes.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePair {
    n: usize,
    // Column-major n×4: x₁, x₂, y₁, y₂.
    cols: Vec<f64>,
}

impl FramePair {
    pub fn new(x1: Vec<f64>, x2: Vec<f64>, y1: Vec<f64>, y2: Vec<f64>) -> Result<Self, MinimizeError> {
        let n = x1.len();
        for v in [&x2, &y1, &y2] {
            if v.len() != n {
                return Err(GeometryError::DimensionMismatch { left: n, right: v.len() }.into());
            }
        }
        if n < 4 {
            return Err(MinimizeError::DimensionTooSmall(n));
        }
        let cols = [x1, x2, y1, y2].concat();
        Self::from_columns(n, cols)
    }

    fn from_columns(n: usize, cols: Vec<f64>) -> Result<Self, MinimizeError> {
        let defect = gram_defect(&cols, n, 4);
        if defect.is_nan() || defect >= GRAM_TOL {
            return Err(GeometryError::NotOrthonormal { defect }.into());
        }
        Ok(Self { n, cols })
    }

    /// Frame pair whose `σ` is `p` and whose `τ` is `p⊥` (dimension 4 only).
    pub fn from_plane4(p: &Plane) -> Result<Self, MinimizeError> {
        let q = p.orthogonal_plane()?;
        Self::new(p.x().to_vec(), p.y().to_vec(), q.x().to_vec(), q.y().to_vec())
    }

    /// A rotation-invariant random frame pair, deterministic in `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self, MinimizeError> {
        if n < 4 {
            return Err(MinimizeError::DimensionTooSmall(n));
        }
        let mut cols = vec![0.0; 4 * n];
        FrameSampler::new(n, seed).fill(&mut cols);
        Ok(Self { n, cols })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, c: usize) -> &[f64] {
        &self.cols[c * self.n..(c + 1) * self.n]
    }

    /// Columns as owned vectors in the order `x₁, x₂, y₁, y₂`.
    pub fn columns(&self) -> [Vec<f64>; 4] {
        std::array::from_fn(|c| self.column(c).to_vec())
    }

    pub fn sigma(&self) -> Plane {
        Plane::new(self.column(0).to_vec(), self.column(1).to_vec()).expect("orthonormal by construction")
    }

    pub fn tau(&self) -> Plane {
        Plane::new(self.column(2).to_vec(), self.column(3).to_vec()).expect("orthonormal by construction")
    }

    pub fn gram_defect(&self) -> f64 {
        gram_defect(&self.cols, self.n, 4)
    }

    /// Orthogonal projection of an ambient direction onto the tangent space
    /// `{Z : XᵀZ skew}` of the Stiefel manifold at this frame.
    pub fn project_tangent(&self, dir: &[Vec<f64>; 4]) -> [Vec<f64>; 4] {
        let mut z = dir.concat();
        project_tangent(&self.cols, &mut z, self.n, 4);
        std::array::from_fn(|c| z[c * self.n..(c + 1) * self.n].to_vec())
    }

    /// QR retraction of `X + t·dir`.
    pub fn retract(&self, dir: &[Vec<f64>; 4], t: f64) -> Result<FramePair, MinimizeError> {
        let flat = dir.concat();
        if flat.len() != self.cols.len() {
            return Err(GeometryError::DimensionMismatch { left: self.cols.len(), right: flat.len() }.into());
        }
        let mut y: Vec<f64> = self.cols.iter().zip(&flat).map(|(x, d)| x + t * d).collect();
        if !gram_schmidt(&mut y, self.n, 4) {
            return Err(GeometryError::NotDecomposable.into());
        }
        Self::from_columns(self.n, y)
    }
}

/// `Z ← Z − X sym(XᵀZ)`.
fn project_tangent(x: &[f64], z: &mut [f64], n: usize, k: usize) {
    let mut xtz = [[0.0f64; 4]; 4];
    for a in 0..k {
        for b in 0..k {
            xtz[a][b] = (0..n).map(|i| x[a * n + i] * z[b * n + i]).sum();
        }
    }
    for b in 0..k {
        for a in 0..k {
            let s = 0.5 * (xtz[a][b] + xtz[b][a]);
            if s != 0.0 {
                for i in 0..n {
                    z[b * n + i] -= x[a * n + i] * s;
                }
            }
        }
    }
}

/// A weighted sum of sectional curvatures of planes spanned by column pairs
/// of a frame. A plane may be evaluated after projecting it onto the
/// orthogonal complement of an earlier one.
struct PlaneSum<'a> {
    n: usize,
    k: usize,
    planes: &'a [PlaneTerm],
    // Row-major copy of the operator matrix.
    mat: Vec<f64>,
    m: usize,
}

/// Columns `(p, q)`, weight, and the columns of the plane to project away.
type PlaneTerm = (usize, usize, f64, Option<(usize, usize)>);

const BIORTH_PLANES: [PlaneTerm; 2] = [(0, 1, 0.5, None), (2, 3, 0.5, Some((0, 1)))];
const SEC_PLANES: [PlaneTerm; 1] = [(0, 1, 1.0, None)];

/// Compensated dot product: as accurate as if computed in twice the working
/// precision. The leakage dot products are `O(ε)` sums of `O(1)` terms, so
/// plain summation would leave them with no correct digits.
fn dot2(a: &[f64], b: &[f64]) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for (x, y) in a.iter().zip(b) {
        let p = x * y;
        let pe = x.mul_add(*y, -p);
        let t = s + p;
        let z = t - s;
        let se = (s - (t - z)) + (p - z);
        s = t;
        c += pe + se;
    }
    s + c
}

/// `out += s·(a∧b)`.
fn wedge_acc(a: &[f64], b: &[f64], s: f64, out: &mut [f64]) {
    let n = a.len();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            out[k] += s * (a[i] * b[j] - a[j] * b[i]);
            k += 1;
        }
    }
}

impl<'a> PlaneSum<'a> {
    fn new(op: &CurvatureOperator, k: usize, planes: &'a [PlaneTerm]) -> Self {
        let m = lambda2_dim(op.dim());
        let mat = (0..m * m).map(|t| op.matrix()[(t / m, t % m)]).collect();
        Self { n: op.dim(), k, planes, mat, m }
    }

    fn col<'f>(&self, frame: &'f [f64], c: usize) -> &'f [f64] {
        &frame[c * self.n..(c + 1) * self.n]
    }

    fn bilinear(&self, a: &[f64], b: &[f64]) -> f64 {
        let m = self.m;
        let mut acc = 0.0;
        for i in 0..m {
            let row = &self.mat[i * m..(i + 1) * m];
            acc += a[i] * row.iter().zip(b).map(|(r, v)| r * v).sum::<f64>();
        }
        acc
    }

    /// Components of the plane's columns along the plane `against`: tiny on
    /// near-orthonormal frames, so they are kept apart from the columns
    /// rather than subtracted and rounded away.
    fn leakage(&self, frame: &[f64], p: usize, q: usize, against: Option<(usize, usize)>) -> [Vec<f64>; 2] {
        let mut c = [vec![0.0; self.n], vec![0.0; self.n]];
        if let Some((a, b)) = against {
            for (ci, col) in c.iter_mut().zip([p, q]) {
                let y = self.col(frame, col);
                for u in [self.col(frame, a), self.col(frame, b)] {
                    let d = dot2(u, y);
                    ci.iter_mut().zip(u).for_each(|(v, w)| *v += d * w);
                }
            }
        }
        c
    }

    /// Plücker coordinates `(y₁−c₁)∧(y₂−c₂)` of a term.
    fn plucker(&self, y1: &[f64], y2: &[f64], c: &[Vec<f64>; 2], out: &mut [f64]) {
        wedge_into(y1, y2, out);
        wedge_acc(&c[0], y2, -1.0, out);
        wedge_acc(y1, &c[1], -1.0, out);
        wedge_acc(&c[0], &c[1], 1.0, out);
    }

    /// Sum of Rayleigh quotients `w·⟨Rb, b⟩/|b|²`; equals the objective on
    /// orthonormal frames.
    fn value(&self, frame: &[f64]) -> f64 {
        let mut b = vec![0.0; self.m];
        self.planes
            .iter()
            .map(|&(p, q, w, against)| {
                let c = self.leakage(frame, p, q, against);
                self.plucker(self.col(frame, p), self.col(frame, q), &c, &mut b);
                let nu: f64 = b.iter().map(|v| v * v).sum();
                w * self.bilinear(&b, &b) / nu
            })
            .sum()
    }

    /// Euclidean gradient of the extension of the objective to all `n×k`
    /// matrices. Returns the objective value.
    fn gradient(&self, frame: &[f64], grad: &mut [f64]) -> f64 {
        let (n, m) = (self.n, self.m);
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut b = vec![0.0; m];
        let mut c = vec![0.0; m];
        let mut value = 0.0;
        for &(p, q, w, _) in self.planes {
            let (x, y) = (self.col(frame, p), self.col(frame, q));
            wedge_into(x, y, &mut b);
            for i in 0..m {
                c[i] = self.mat[i * m..(i + 1) * m].iter().zip(&b).map(|(r, v)| r * v).sum();
            }
            value += w * b.iter().zip(&c).map(|(u, v)| u * v).sum::<f64>();
            // ∂/∂x ⟨R(x∧y), x∧y⟩ = 2·G y and ∂/∂y = −2·G x, with G the skew
            // matrix carrying R(x∧y).
            let mut s = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let cij = 2.0 * w * c[s];
                    grad[p * n + i] += cij * y[j];
                    grad[p * n + j] -= cij * y[i];
                    grad[q * n + i] -= cij * x[j];
                    grad[q * n + j] += cij * x[i];
                    s += 1;
                }
            }
        }
        value
    }

    /// `f(to) − f(from)` from the differences of the frames, so that the
    /// Armijo test stays meaningful far below the rounding level of `f`.
    /// With `q = ⟨Rb, b⟩` and `ν = |b|²` each term changes by
    /// `(Δq − f₀·Δν)/ν₁`. Together with the projection of later planes this
    /// makes the result insensitive to the `O(ε)` loss of orthonormality left
    /// by re-orthonormalization.
    fn difference(&self, from: &[f64], to: &[f64]) -> f64 {
        let n = self.n;
        let mut db = vec![0.0; self.m];
        let mut sb = vec![0.0; self.m];
        let mut b0 = vec![0.0; self.m];
        let mut b1 = vec![0.0; self.m];
        let mut dy1 = vec![0.0; n];
        let mut dy2 = vec![0.0; n];
        let mut total = 0.0;
        for &(p, q, w, against) in self.planes {
            let (y10, y20) = (self.col(from, p), self.col(from, q));
            let (y11, y21) = (self.col(to, p), self.col(to, q));
            let c0 = self.leakage(from, p, q, against);
            let c1 = self.leakage(to, p, q, against);
            for i in 0..n {
                dy1[i] = y11[i] - y10[i];
                dy2[i] = y21[i] - y20[i];
            }
            // y₁'∧y₂' − y₁∧y₂ = dy₁∧y₂' + y₁∧dy₂; the leakage terms are
            // differenced directly, being small in absolute terms.
            wedge_into(&dy1, y21, &mut db);
            wedge_acc(y10, &dy2, 1.0, &mut db);
            if against.is_some() {
                wedge_acc(&c1[0], y21, -1.0, &mut db);
                wedge_acc(&c0[0], y20, 1.0, &mut db);
                wedge_acc(y11, &c1[1], -1.0, &mut db);
                wedge_acc(y10, &c0[1], 1.0, &mut db);
                wedge_acc(&c1[0], &c1[1], 1.0, &mut db);
                wedge_acc(&c0[0], &c0[1], -1.0, &mut db);
            }
            self.plucker(y10, y20, &c0, &mut b0);
            self.plucker(y11, y21, &c1, &mut b1);
            sb.iter_mut().zip(b0.iter().zip(&b1)).for_each(|(s, (a, b))| *s = a + b);
            let dq = self.bilinear(&db, &sb);
            let dnu: f64 = db.iter().zip(&sb).map(|(a, b)| a * b).sum();
            let nu0: f64 = b0.iter().map(|v| v * v).sum();
            let nu1: f64 = b1.iter().map(|v| v * v).sum();
            let f0 = self.bilinear(&b0, &b0) / nu0;
            total += w * (dq - f0 * dnu) / nu1;
        }
        total
    }

    fn riemannian_gradient(&self, frame: &[f64], grad: &mut [f64]) -> f64 {
        let v = self.gradient(frame, grad);
        project_tangent(frame, grad, self.n, self.k);
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    pub restarts: usize,
    pub seed: u64,
    pub gtol: f64,
    pub max_iter: usize,
    pub armijo_c: f64,
    pub backtrack: f64,
    pub initial_step: f64,
    pub max_backtracks: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 1,
            gtol: 1e-10,
            max_iter: 10_000,
            armijo_c: 1e-4,
            backtrack: 0.5,
            initial_step: 1.0,
            max_backtracks: 60,
        }
    }
}

/// Outcome of a single descent run.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDescent {
    pub value: f64,
    pub frame: Vec<f64>,
    pub iterations: usize,
    pub grad_norm: f64,
    pub converged: bool,
    /// Objective value at every visited iterate.
    pub trace: Vec<f64>,
}

fn descend(obj: &PlaneSum<'_>, start: Vec<f64>, opts: &MinimizeOptions) -> LocalDescent {
    let len = start.len();
    let mut x = start;
    let mut g = vec![0.0; len];
    let mut y = vec![0.0; len];
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut grad_norm;
    loop {
        obj.riemannian_gradient(&x, &mut g);
        trace.push(obj.value(&x));
        let g2: f64 = g.iter().map(|v| v * v).sum();
        grad_norm = g2.sqrt();
        if grad_norm < opts.gtol || iterations >= opts.max_iter {
            break;
        }
        let mut t = opts.initial_step;
        let mut accepted = false;
        for _ in 0..opts.max_backtracks {
            y.iter_mut().zip(x.iter().zip(&g)).for_each(|(yi, (xi, gi))| *yi = xi - t * gi);
            if gram_schmidt(&mut y, obj.n, obj.k) && obj.difference(&x, &y) <= -opts.armijo_c * t * g2 {
                accepted = true;
                break;
            }
            t *= opts.backtrack;
        }
        if !accepted {
            break;
        }
        std::mem::swap(&mut x, &mut y);
        iterations += 1;
    }
    LocalDescent {
        value: obj.value(&x),
        frame: x,
        iterations,
        grad_norm,
        converged: grad_norm < opts.gtol,
        trace,
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of restart `r`, a hash of `(seed, r)`.
pub fn restart_seed(seed: u64, r: usize) -> u64 {
    mix64(mix64(seed) ^ mix64((r as u64).wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

/// Result of a multi-start minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult {
    pub value: f64,
    pub witness: FramePair,
    pub restarts_used: usize,
    /// `true` unless every restart stopped without reaching `gtol`.
    pub converged: bool,
    pub converged_restarts: usize,
    pub best_restart: usize,
    pub grad_norm: f64,
}

/// Like [`MinimizeResult`] for the single-plane objective `sec`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecMinimum {
    pub value: f64,
    pub witness: Plane,
    pub restarts_used: usize,
    pub converged: bool,
    pub converged_restarts: usize,
    pub grad_norm: f64,
}

struct MultiStart {
    best: LocalDescent,
    best_restart: usize,
    converged_restarts: usize,
}

fn multi_start(obj: &PlaneSum<'_>, opts: &MinimizeOptions) -> Result<MultiStart, MinimizeError> {
    if opts.restarts == 0 {
        return Err(MinimizeError::NoRestarts);
    }
    let (n, k) = (obj.n, obj.k);
    let runs: Vec<LocalDescent> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut start = vec![0.0; n * k];
            FrameSampler::new(n, restart_seed(opts.seed, r)).fill(&mut start);
            descend(obj, start, opts)
        })
        .collect();
    let converged_restarts = runs.iter().filter(|d| d.converged).count();
    // Strict comparison keeps the lowest restart index on ties.
    let mut best_restart = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.value < runs[best_restart].value {
            best_restart = r;
        }
    }
    let best = runs.into_iter().nth(best_restart).expect("restarts >= 1");
    Ok(MultiStart { best, best_restart, converged_restarts })
}

fn require_dim(op: &CurvatureOperator) -> Result<(), MinimizeError> {
    if op.dim() < 4 {
        return Err(MinimizeError::DimensionTooSmall(op.dim()));
    }
    Ok(())
}

fn check_pair(op: &CurvatureOperator, fp: &FramePair) -> Result<(), MinimizeError> {
    require_dim(op)?;
    if op.dim() != fp.dim() {
        return Err(GeometryError::DimensionMismatch { left: op.dim(), right: fp.dim() }.into());
    }
    Ok(())
}

/// `(sec σ + sec τ)/2` for the orthogonal planes of a frame pair.
pub fn biorth_general(op: &CurvatureOperator, fp: &FramePair) -> Result<f64, MinimizeError> {
    check_pair(op, fp)?;
    Ok(PlaneSum::new(op, 4, &BIORTH_PLANES).value(&fp.cols))
}

/// Riemannian (projected) gradient of [`biorth_general`] at `fp`.
pub fn biorth_gradient(op: &CurvatureOperator, fp: &FramePair) -> Result<[Vec<f64>; 4], MinimizeError> {
    check_pair(op, fp)?;
    let obj = PlaneSum::new(op, 4, &BIORTH_PLANES);
    let mut g = vec![0.0; 4 * fp.n];
    obj.riemannian_gradient(&fp.cols, &mut g);
    Ok(std::array::from_fn(|c| g[c * fp.n..(c + 1) * fp.n].to_vec()))
}

/// Single descent run from `start`, keeping the objective trace.
pub fn descend_from(
    op: &CurvatureOperator,
    start: &FramePair,
    opts: &MinimizeOptions,
) -> Result<LocalDescent, MinimizeError> {
    check_pair(op, start)?;
    Ok(descend(&PlaneSum::new(op, 4, &BIORTH_PLANES), start.cols.clone(), opts))
}

/// Multi-start minimization of biorthogonal curvature over orthogonal plane
/// pairs. Restarts may run in parallel; the result does not depend on
/// scheduling.
pub fn minimize(op: &CurvatureOperator, opts: &MinimizeOptions) -> Result<MinimizeResult, MinimizeError> {
    require_dim(op)?;
    let obj = PlaneSum::new(op, 4, &BIORTH_PLANES);
    let ms = multi_start(&obj, opts)?;
    Ok(MinimizeResult {
        value: ms.best.value,
        witness: FramePair { n: op.dim(), cols: ms.best.frame },
        restarts_used: opts.restarts,
        converged: ms.converged_restarts > 0,
        converged_restarts: ms.converged_restarts,
        best_restart: ms.best_restart,
        grad_norm: ms.best.grad_norm,
    })
}

/// Multi-start minimization of sectional curvature over 2-planes.
pub fn minimize_sec(op: &CurvatureOperator, opts: &MinimizeOptions) -> Result<SecMinimum, MinimizeError> {
    let n = op.dim();
    if n < 2 {
        return Err(GeometryError::DimensionTooSmall(n).into());
    }
    let obj = PlaneSum::new(op, 2, &SEC_PLANES);
    let ms = multi_start(&obj, opts)?;
    let f = &ms.best.frame;
    Ok(SecMinimum {
        value: ms.best.value,
        witness: Plane::new(f[..n].to_vec(), f[n..].to_vec())?,
        restarts_used: opts.restarts,
        converged: ms.converged_restarts > 0,
        converged_restarts: ms.converged_restarts,
        grad_norm: ms.best.grad_norm,
    })
}

/// Minimum of the biorthogonal objective over `samples` random frame pairs
/// (in dimension 4: random planes with their forced complement).
pub fn grid_oracle(op: &CurvatureOperator, samples: usize, seed: u64) -> Result<f64, MinimizeError> {
    require_dim(op)?;
    let n = op.dim();
    let mut best = f64::INFINITY;
    if n == 4 {
        // biorth(b) = bᵀSb / |b|² with S = (R + ⋆R⋆)/2, so the sampled
        // frames need no orthonormalization.
        let r = op.matrix();
        let h: [[f64; 6]; 6] = std::array::from_fn(|j| hodge4(&std::array::from_fn::<f64, 6, _>(|k| f64::from(u8::from(k == j)))));
        let mut s = [[0.0f64; 6]; 6];
        for (i, row) in s.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let star: f64 = (0..6).flat_map(|a| (0..6).map(move |c| (a, c))).map(|(a, c)| h[i][a] * r[(a, c)] * h[j][c]).sum();
                *v = 0.5 * (r[(i, j)] + star);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = [0.0; 6];
        for _ in 0..samples {
            let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let y: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            wedge_into(&x, &y, &mut b);
            let nu: f64 = b.iter().map(|v| v * v).sum();
            if nu == 0.0 {
                continue;
            }
            let q: f64 = s.iter().zip(&b).map(|(row, bi)| bi * row.iter().zip(&b).map(|(a, c)| a * c).sum::<f64>()).sum();
            best = best.min(q / nu);
        }
    } else {
        let obj = PlaneSum::new(op, 4, &BIORTH_PLANES);
        let mut sampler = FrameSampler::new(n, seed);
        let mut frame = vec![0.0; 4 * n];
        for _ in 0..samples {
            sampler.fill(&mut frame);
            best = best.min(obj.value(&frame));
        }
    }
    Ok(best)
}

/// Random Gaussian ambient direction, for tests and diagnostics.
pub fn random_direction(n: usize, seed: u64) -> [Vec<f64>; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::array::from_fn(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
}
