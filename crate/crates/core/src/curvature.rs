//! Algebraic curvature operators on Λ²ℝⁿ and the biorthogonal curvature
//! cone in dimension 4.
//!
//! Conventions: the unit round sphere has `R = Id` and `sec = +1`; for a
//! unit decomposable `σ`, `sec(σ) = ⟨Rσ, σ⟩`.

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bivector::{hodge4, lambda2_dim, pair_index, Bivector, GeometryError, Plane};
use crate::minimizer::{self, MinimizeOptions};

pub const SYMMETRY_TOL: f64 = 1e-12;
pub const BIANCHI_TOL: f64 = 1e-10;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Default half-width of the cone boundary band.
pub const CONE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected} for dimension {n}")]
    WrongSize { n: usize, expected: usize, rows: usize, cols: usize },
    #[error("matrix is not symmetric (defect {defect:e})")]
    Asymmetric { defect: f64 },
    #[error("first Bianchi identity fails (defect {defect:e})")]
    Bianchi { defect: f64 },
    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Minimize(#[from] minimizer::MinimizeError),
}

/// A symmetric endomorphism of Λ²ℝⁿ satisfying the first Bianchi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureOperator {
    n: usize,
    mat: DMatrix<f64>,
}

fn symmetry_defect(mat: &DMatrix<f64>) -> f64 {
    let mut d = 0.0f64;
    for i in 0..mat.nrows() {
        for j in i + 1..mat.ncols() {
            d = d.max((mat[(i, j)] - mat[(j, i)]).abs());
        }
    }
    d
}

/// Quadruples `i<j<k<l` together with the three slot pairs that enter the
/// Bianchi sum `R_{ij,kl} − R_{ik,jl} + R_{il,jk}`.
fn bianchi_slots(n: usize) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let p = |a, b| pair_index(n, a, b);
                    out.push([(p(i, j), p(k, l)), (p(i, k), p(j, l)), (p(i, l), p(j, k))]);
                }
            }
        }
    }
    out
}

const BIANCHI_SIGNS: [f64; 3] = [1.0, -1.0, 1.0];

/// Largest absolute value of the Bianchi sum over all quadruples.
pub fn bianchi_defect(mat: &DMatrix<f64>, n: usize) -> f64 {
    bianchi_slots(n)
        .iter()
        .map(|slots| {
            slots.iter().zip(BIANCHI_SIGNS).map(|(&(a, b), s)| s * mat[(a, b)]).sum::<f64>().abs()
        })
        .fold(0.0, f64::max)
}

fn check_shape(mat: &DMatrix<f64>, n: usize) -> Result<(), OperatorError> {
    let expected = lambda2_dim(n);
    if n < 2 || mat.nrows() != expected || mat.ncols() != expected {
        return Err(OperatorError::WrongSize { n, expected, rows: mat.nrows(), cols: mat.ncols() });
    }
    if mat.iter().any(|v| !v.is_finite()) {
        return Err(OperatorError::NonFinite);
    }
    Ok(())
}

/// Orthonormal basis of Λ²ℝ⁴ adapted to the Hodge star: rows 0..3 span Λ⁺,
/// rows 3..6 span Λ⁻.
fn self_dual_basis() -> DMatrix<f64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut p = DMatrix::zeros(6, 6);
    // (12 ± 34), (13 ∓ 24), (14 ± 23)
    let rows = [(0, 5, 1.0), (1, 4, -1.0), (2, 3, 1.0)];
    for (k, &(a, b, s)) in rows.iter().enumerate() {
        p[(k, a)] = h;
        p[(k, b)] = s * h;
        p[(k + 3, a)] = h;
        p[(k + 3, b)] = -s * h;
    }
    p
}

/// Smallest eigenpair of a symmetric 3×3 block.
fn min_eigen3(m: Matrix3<f64>) -> (f64, [f64; 3]) {
    let eig = SymmetricEigen::new(m);
    let (idx, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i, *v))
        .expect("3 eigenvalues");
    let v = eig.eigenvectors.column(idx);
    (val, [v[0], v[1], v[2]])
}

/// `(A, B, C)` in `R = [[A, B], [Bᵀ, C]]` over `Λ⁺ ⊕ Λ⁻`.
pub type SelfDualBlocks = (Matrix3<f64>, Matrix3<f64>, Matrix3<f64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeStatus {
    Inside,
    Boundary,
    Outside,
}

impl ConeStatus {
    pub fn classify(min_value: f64, tol: f64) -> Self {
        if min_value > tol {
            ConeStatus::Inside
        } else if min_value < -tol {
            ConeStatus::Outside
        } else {
            ConeStatus::Boundary
        }
    }
}

/// Membership of an operator in the open cone `{sec⊥ > 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeVerdict {
    pub status: ConeStatus,
    pub min_value: f64,
    pub witness: Plane,
    pub tol: f64,
}

impl CurvatureOperator {
    /// Validates symmetry and the first Bianchi identity.
    pub fn from_matrix(mat: DMatrix<f64>, n: usize) -> Result<Self, OperatorError> {
        check_shape(&mat, n)?;
        let defect = symmetry_defect(&mat);
        if defect > SYMMETRY_TOL {
            return Err(OperatorError::Asymmetric { defect });
        }
        let defect = bianchi_defect(&mat, n);
        if defect > BIANCHI_TOL {
            return Err(OperatorError::Bianchi { defect });
        }
        Ok(Self { n, mat })
    }

    /// Frobenius-nearest operator satisfying the Bianchi identity: removes
    /// the Λ⁴ component of a symmetric matrix.
    pub fn bianchi_project(mat: DMatrix<f64>, n: usize) -> Result<Self, OperatorError> {
        check_shape(&mat, n)?;
        let defect = symmetry_defect(&mat);
        if defect > SYMMETRY_TOL {
            return Err(OperatorError::Asymmetric { defect });
        }
        let mut mat = mat;
        // Each quadruple owns a disjoint symmetric pattern S with |S|² = 6 and
        // ⟨M, S⟩ = 2·defect, so the projection subtracts (defect/3)·S.
        for slots in bianchi_slots(n) {
            let d: f64 = slots.iter().zip(BIANCHI_SIGNS).map(|(&(a, b), s)| s * mat[(a, b)]).sum();
            let t = d / 3.0;
            for (&(a, b), s) in slots.iter().zip(BIANCHI_SIGNS) {
                mat[(a, b)] -= t * s;
                mat[(b, a)] = mat[(a, b)];
            }
        }
        Ok(Self { n, mat })
    }

    pub fn zero(n: usize) -> Self {
        let m = lambda2_dim(n);
        Self { n, mat: DMatrix::zeros(m, m) }
    }

    pub fn identity(n: usize) -> Self {
        let m = lambda2_dim(n);
        Self { n, mat: DMatrix::identity(m, m) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }

    /// `⟨R(e_i∧e_j), e_k∧e_l⟩`, antisymmetric in each pair.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let slot = |a: usize, b: usize| -> Option<(usize, f64)> {
            match a.cmp(&b) {
                std::cmp::Ordering::Less => Some((pair_index(self.n, a, b), 1.0)),
                std::cmp::Ordering::Greater => Some((pair_index(self.n, b, a), -1.0)),
                std::cmp::Ordering::Equal => None,
            }
        };
        match (slot(i, j), slot(k, l)) {
            (Some((p, s)), Some((q, t))) => s * t * self.mat[(p, q)],
            _ => 0.0,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { n: self.n, mat: &self.mat * s }
    }

    /// `t·self + (1−t)·other`.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self, OperatorError> {
        self.same_dim(other.n)?;
        Ok(Self { n: self.n, mat: &self.mat * t + &other.mat * (1.0 - t) })
    }

    pub fn add(&self, other: &Self) -> Result<Self, OperatorError> {
        self.same_dim(other.n)?;
        Ok(Self { n: self.n, mat: &self.mat + &other.mat })
    }

    fn same_dim(&self, n: usize) -> Result<(), OperatorError> {
        if self.n != n {
            return Err(GeometryError::DimensionMismatch { left: self.n, right: n }.into());
        }
        Ok(())
    }

    fn require4(&self) -> Result<(), OperatorError> {
        if self.n != 4 {
            return Err(GeometryError::UnsupportedDimension { expected: 4, got: self.n }.into());
        }
        Ok(())
    }

    /// `⟨R b, b⟩` for an arbitrary coefficient vector.
    pub(crate) fn quadratic(&self, b: &[f64]) -> f64 {
        let m = b.len();
        let mut acc = 0.0;
        for i in 0..m {
            let mut row = 0.0;
            for j in 0..m {
                row += self.mat[(i, j)] * b[j];
            }
            acc += row * b[i];
        }
        acc
    }

    /// Quadratic form on bivectors, `⟨R b, b⟩`.
    pub fn quadratic_form(&self, b: &Bivector) -> Result<f64, OperatorError> {
        self.same_dim(b.dim())?;
        Ok(self.quadratic(b.coeffs()))
    }

    /// Sectional curvature of a plane.
    pub fn sec(&self, p: &Plane) -> Result<f64, OperatorError> {
        self.same_dim(p.dim())?;
        Ok(self.quadratic(p.plucker()))
    }

    /// Biorthogonal curvature `(sec σ + sec σ⊥)/2` in dimension 4.
    pub fn biorth(&self, p: &Plane) -> Result<f64, OperatorError> {
        self.require4()?;
        self.same_dim(p.dim())?;
        let b = p.plucker();
        Ok(0.5 * (self.quadratic(b) + self.quadratic(&hodge4(b))))
    }

    /// Scalar curvature `Σ_{i≠j} sec(e_i, e_j) = 2·tr`.
    pub fn scal(&self) -> f64 {
        2.0 * self.mat.trace()
    }

    /// `Ric(x, y) = Σ_i ⟨R(x∧e_i), y∧e_i⟩`; its trace equals [`scal`](Self::scal).
    pub fn ricci(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |a, b| (0..n).map(|i| self.component(a, i, b, i)).sum())
    }

    pub fn ricci_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.ricci()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// The blocks `(A, B, C)` of the operator in a Λ⁺ ⊕ Λ⁻ orthonormal basis.
    pub fn self_dual_blocks(&self) -> Result<SelfDualBlocks, OperatorError> {
        self.require4()?;
        let p = self_dual_basis();
        let m = &p * &self.mat * p.transpose();
        let block = |r: usize, c: usize| Matrix3::from_fn(|i, j| m[(r + i, c + j)]);
        let a = block(0, 0);
        let c = block(3, 3);
        // Symmetrize away rounding before the eigen-solve.
        Ok(((a + a.transpose()) * 0.5, block(0, 3), (c + c.transpose()) * 0.5))
    }

    /// Exact minimum of `sec⊥` over `Gr₂(ℝ⁴)` and a plane attaining it.
    ///
    /// For unit decomposable `σ = σ⁺ + σ⁻` one has `|σ±|² = 1/2` and
    /// `σ⊥ = σ⁺ − σ⁻`, so the mixed block cancels in the average and
    /// `sec⊥(σ) = ⟨Aσ⁺, σ⁺⟩ + ⟨Cσ⁻, σ⁻⟩`. The minimum is therefore
    /// `(λ_min(A) + λ_min(C)) / 2`.
    pub fn min_biorth_exact4(&self) -> Result<(f64, Plane), OperatorError> {
        let (a, _, c) = self.self_dual_blocks()?;
        let (la, u) = min_eigen3(a);
        let (lc, v) = min_eigen3(c);
        let p = self_dual_basis();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let coeffs: Vec<f64> =
            (0..6).map(|k| h * (0..3).map(|i| u[i] * p[(i, k)] + v[i] * p[(i + 3, k)]).sum::<f64>()).collect();
        let witness = Plane::from_bivector(&Bivector::from_coeffs(4, coeffs)?)?;
        Ok((0.5 * (la + lc), witness))
    }

    /// Classifies the operator against the cone `{sec⊥ > 0}` using the exact
    /// dimension-4 minimum.
    pub fn in_cone(&self, tol: f64) -> Result<ConeVerdict, OperatorError> {
        let (min_value, witness) = self.min_biorth_exact4()?;
        Ok(ConeVerdict { status: ConeStatus::classify(min_value, tol), min_value, witness, tol })
    }

    /// Pull-back by the isometry `q`: `sec_{q*R}(σ) = sec_R(qσ)`.
    pub fn conjugate(&self, q: &DMatrix<f64>) -> Result<Self, OperatorError> {
        let n = self.n;
        if q.nrows() != n || q.ncols() != n {
            return Err(GeometryError::DimensionMismatch { left: n, right: q.nrows() }.into());
        }
        let defect = (q.transpose() * q - DMatrix::<f64>::identity(n, n)).amax();
        if defect > ORTHOGONALITY_TOL {
            return Err(OperatorError::NotOrthogonal { defect });
        }
        let l = lambda2_action(q);
        Ok(Self { n, mat: l.transpose() * &self.mat * l })
    }

    /// Minimum sectional curvature, found numerically over 2-frames.
    pub fn min_sec(&self, opts: &MinimizeOptions) -> Result<minimizer::SecMinimum, OperatorError> {
        Ok(minimizer::minimize_sec(self, opts)?)
    }
}

/// Matrix of `Λ²q` in the lexicographic basis: column `(i,j)` is `qe_i∧qe_j`.
pub fn lambda2_action(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    let m = lambda2_dim(n);
    let mut l = DMatrix::zeros(m, m);
    for i in 0..n {
        for j in i + 1..n {
            let c = pair_index(n, i, j);
            for k in 0..n {
                for h in k + 1..n {
                    l[(pair_index(n, k, h), c)] = q[(k, i)] * q[(h, j)] - q[(h, i)] * q[(k, j)];
                }
            }
        }
    }
    l
}

/// Named model operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Euclidean space ℝⁿ.
    Flat(usize),
    /// Unit round sphere Sⁿ.
    RoundSphere(usize),
    /// Product S³×ℝ, the ℝ direction is `e₄`.
    S3xR,
    /// Product S²×ℝ², the sphere factor is `span(e₁, e₂)`.
    S2xR2,
    /// Product of unit spheres S²×S² on `span(e₁,e₂)` and `span(e₃,e₄)`.
    S2xS2Product,
    /// Fubini–Study metric on CP² with `sec ∈ [1, 4]`, `J e₁ = e₂`, `J e₃ = e₄`.
    Cp2FubiniStudy,
    /// Product S^{n−1}×ℝ, the ℝ direction is `e_n`.
    SphereTimesLine(usize),
}

impl Model {
    pub const NAMES: [&'static str; 7] =
        ["flat", "round_sphere", "S3xR", "S2xR2", "S2xS2_product", "CP2_fubini_study", "Sn-1xR"];

    /// Looks up a model by name; `dim` applies to the dimension-generic ones
    /// and defaults to 4.
    pub fn from_name(name: &str, dim: Option<usize>) -> Result<Self, OperatorError> {
        let n = dim.unwrap_or(4);
        let fixed = |m: Model| match dim {
            Some(d) if d != 4 => Err(GeometryError::UnsupportedDimension { expected: 4, got: d }.into()),
            _ => Ok(m),
        };
        match name {
            "flat" => Ok(Model::Flat(n)),
            "round_sphere" => Ok(Model::RoundSphere(n)),
            "S3xR" => fixed(Model::S3xR),
            "S2xR2" => fixed(Model::S2xR2),
            "S2xS2_product" => fixed(Model::S2xS2Product),
            "CP2_fubini_study" => fixed(Model::Cp2FubiniStudy),
            "Sn-1xR" => Ok(Model::SphereTimesLine(n)),
            other => Err(OperatorError::UnknownModel(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Flat(_) => "flat",
            Model::RoundSphere(_) => "round_sphere",
            Model::S3xR => "S3xR",
            Model::S2xR2 => "S2xR2",
            Model::S2xS2Product => "S2xS2_product",
            Model::Cp2FubiniStudy => "CP2_fubini_study",
            Model::SphereTimesLine(_) => "Sn-1xR",
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Model::Flat(n) | Model::RoundSphere(n) | Model::SphereTimesLine(n) => n,
            _ => 4,
        }
    }

    pub fn operator(&self) -> Result<CurvatureOperator, OperatorError> {
        let n = self.dim();
        if n < 2 {
            return Err(GeometryError::DimensionTooSmall(n).into());
        }
        Ok(match *self {
            Model::Flat(n) => CurvatureOperator::zero(n),
            Model::RoundSphere(n) => CurvatureOperator::identity(n),
            Model::S3xR => sphere_times_flat(3, 4)?,
            Model::S2xR2 => sphere_times_flat(2, 4)?,
            Model::S2xS2Product => {
                let mut op = CurvatureOperator::zero(4);
                op.mat[(pair_index(4, 0, 1), pair_index(4, 0, 1))] = 1.0;
                op.mat[(pair_index(4, 2, 3), pair_index(4, 2, 3))] = 1.0;
                op
            }
            Model::Cp2FubiniStudy => fubini_study(),
            Model::SphereTimesLine(n) => {
                if n < 2 {
                    return Err(GeometryError::DimensionTooSmall(n).into());
                }
                sphere_times_flat(n - 1, n)?
            }
        })
    }
}

/// Product of the unit sphere S^k (on `e₁…e_k`) with flat ℝ^{n−k}: the
/// operator is the identity on `Λ²span(e₁…e_k)` and zero elsewhere.
pub fn sphere_times_flat(k: usize, n: usize) -> Result<CurvatureOperator, OperatorError> {
    if n < 2 {
        return Err(GeometryError::DimensionTooSmall(n).into());
    }
    if k > n {
        return Err(GeometryError::DimensionMismatch { left: k, right: n }.into());
    }
    let mut op = CurvatureOperator::zero(n);
    for i in 0..k {
        for j in i + 1..k {
            let s = pair_index(n, i, j);
            op.mat[(s, s)] = 1.0;
        }
    }
    Ok(op)
}

/// Fubini–Study operator: `6` on the Kähler form, `0` on the rest of Λ⁺,
/// `2` on Λ⁻. In the lexicographic basis this is `diag(4,1,1,1,1,4)` with
/// off-diagonal `R_{12,34} = 2`, `R_{13,24} = 1`, `R_{14,23} = −1`.
fn fubini_study() -> CurvatureOperator {
    let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0, 1.0, 1.0, 1.0, 4.0]));
    for (a, b, v) in [(0, 5, 2.0), (1, 4, 1.0), (2, 3, -1.0)] {
        m[(a, b)] = v;
        m[(b, a)] = v;
    }
    CurvatureOperator { n: 4, mat: m }
}

/// On-disk operator: `dim` plus the row-major Λ² matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    pub lambda2_matrix: Vec<Vec<f64>>,
}

impl OperatorFile {
    pub fn from_operator(op: &CurvatureOperator) -> Self {
        let m = op.matrix();
        Self {
            dim: op.dim(),
            lambda2_matrix: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<CurvatureOperator, OperatorError> {
        let n = self.dim;
        let rows = self.lambda2_matrix.len();
        let expected = lambda2_dim(n);
        if let Some(bad) = self.lambda2_matrix.iter().find(|r| r.len() != expected) {
            return Err(OperatorError::WrongSize { n, expected, rows, cols: bad.len() });
        }
        let mat = DMatrix::from_fn(rows, expected, |i, j| self.lambda2_matrix[i][j]);
        CurvatureOperator::from_matrix(mat, n)
    }
}
