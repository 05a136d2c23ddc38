//! Intersection forms: exact invariants, the homeomorphism classifier for
//! smoothable closed simply-connected 4-manifolds and the curvature verdict.

pub mod exact;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::sumword::{self, Certificate, SumWord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("matrix is not square (row {row} has {len} entries, expected {rank})")]
    NotSquare { rank: usize, row: usize, len: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("form is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("declared rank {declared} does not match matrix size {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error("even form with signature {signature} not divisible by 8")]
    InvariantViolation { signature: i64 },
    #[error("certificate assembly failed: {0}")]
    Certificate(String),
}

/// A symmetric unimodular integer matrix. The empty matrix is the form of S⁴.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    rows: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    ZeroRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: i64,
    pub b_plus: usize,
    pub b_minus: usize,
    pub parity: Parity,
    pub definiteness: Definiteness,
    pub determinant: i64,
}

/// Built-in forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    One,
    MinusOne,
    /// Hyperbolic plane `[[0,1],[1,0]]`, the form of S²×S².
    H,
    /// The E8 Cartan matrix, even, positive definite, determinant 1.
    E8,
}

/// Edges of the E8 Dynkin diagram: a chain of seven nodes with the eighth
/// attached to the fifth, i.e. arms of lengths 4, 2 and 1 off the branch node.
const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

impl IntersectionForm {
    /// Validates squareness, symmetry and `det = ±1`.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, FormError> {
        let rank = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != rank {
                return Err(FormError::NotSquare { rank, row, len: r.len() });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if rows[i][j] != rows[j][i] {
                    return Err(FormError::Asymmetric { i, j });
                }
            }
        }
        let form = Self { rows };
        let det = form.components().iter().map(|c| exact::determinant(&form.block(c))).product::<BigInt>();
        if det.abs() != BigInt::one() {
            return Err(FormError::NotUnimodular { det });
        }
        Ok(form)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, FormError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn builtin(which: Builtin) -> Self {
        let rows: Vec<Vec<i64>> = match which {
            Builtin::One => vec![vec![1]],
            Builtin::MinusOne => vec![vec![-1]],
            Builtin::H => vec![vec![0, 1], vec![1, 0]],
            Builtin::E8 => {
                let mut m = vec![vec![0; 8]; 8];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for (a, b) in E8_EDGES {
                    m[a][b] = -1;
                    m[b][a] = -1;
                }
                m
            }
        };
        let form = Self::from_i64(&rows).expect("builtin forms are unimodular");
        if which == Builtin::E8 {
            let inv = form.invariants();
            assert!(
                inv.rank == 8 && inv.signature == 8 && inv.parity == Parity::Even && inv.determinant == 1,
                "E8 self-check failed: {inv:?}"
            );
        }
        form
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn negated(&self) -> Self {
        Self { rows: self.rows.iter().map(|r| r.iter().map(|v| -v).collect()).collect() }
    }

    /// Block-diagonal concatenation; the form of a connected sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut rows = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            rows[i][..a].clone_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            rows[a + i][a..].clone_from_slice(&other.rows[i]);
        }
        Self { rows }
    }

    /// Index sets of the diagonal blocks (connected components of the graph
    /// of nonzero off-diagonal entries), in order of first index.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                for j in 0..n {
                    if comp[j] == usize::MAX && !self.rows[i][j].is_zero() {
                        comp[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn block(&self, idx: &[usize]) -> Vec<Vec<BigInt>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.rows[i][j].clone()).collect()).collect()
    }

    /// Exact invariants. Eigenvalue signs are counted per diagonal block with
    /// a Sturm chain on the integer characteristic polynomial.
    pub fn invariants(&self) -> FormInvariants {
        let mut b_plus = 0;
        let mut b_minus = 0;
        let mut det = BigInt::one();
        for c in self.components() {
            let block = self.block(&c);
            det *= exact::determinant(&block);
            let chi = exact::Poly::from_integers(&exact::characteristic_polynomial(&block));
            let (neg, pos) = chi.roots_by_sign();
            b_minus += neg;
            b_plus += pos;
        }
        debug_assert_eq!(b_plus + b_minus, self.rank());
        let rank = self.rank();
        let parity = if self.rows.iter().enumerate().all(|(i, r)| r[i].is_even()) { Parity::Even } else { Parity::Odd };
        let definiteness = match (b_plus, b_minus) {
            (0, 0) => Definiteness::ZeroRank,
            (_, 0) => Definiteness::Positive,
            (0, _) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        };
        FormInvariants {
            rank,
            signature: b_plus as i64 - b_minus as i64,
            b_plus,
            b_minus,
            parity,
            definiteness,
            determinant: det.to_i64().expect("unimodular"),
        }
    }

    /// `Â = −signature/8`.
    pub fn a_hat(&self) -> Rational64 {
        a_hat_of(self.invariants().signature)
    }

    /// Whether the matrix is literally `±Id`.
    fn is_plus_minus_identity(&self) -> Option<i64> {
        let n = self.rank();
        let first = self.rows.first().map(|r| r[0].clone())?;
        let s = first.to_i64()?;
        if s.abs() != 1 {
            return None;
        }
        let ok = (0..n).all(|i| (0..n).all(|j| self.rows[i][j] == if i == j { first.clone() } else { BigInt::zero() }));
        ok.then_some(s)
    }
}

pub fn a_hat_of(signature: i64) -> Rational64 {
    Rational64::new(-signature, 8)
}

/// Homeomorphism types of smoothable closed simply-connected 4-manifolds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum HomeoTag {
    S4,
    /// `#ᵐCP² #ⁿ C̄P²` with `m + n ≥ 1`.
    #[serde(rename = "mCP2_nCP2bar")]
    MixedCp2 { m: u64, n: u64 },
    /// `#ⁿ(S²×S²)`, `n ≥ 1`.
    #[serde(rename = "n_S2xS2")]
    SumS2xS2 { n: u64 },
    /// `#^s M_{E8} #ⁿ(S²×S²)` with signed E8 count `s ≠ 0`.
    #[serde(rename = "E8_family")]
    E8Family { s: i64, n: u64 },
    /// Definite form not literally `±Id`; ℤ-equivalence is not decided.
    #[serde(rename = "definite_nondiagonal")]
    DefiniteNondiagonal { rank: usize, signature: i64, parity: Parity },
}

impl HomeoTag {
    /// Canonical connected-sum word of a class on the positive-curvature list.
    pub fn fact_one_word(&self) -> Option<SumWord> {
        match *self {
            HomeoTag::S4 => Some(SumWord::s4()),
            HomeoTag::MixedCp2 { m, n } => SumWord::from_counts([0, m, n, 0, 0, 0]).ok(),
            HomeoTag::SumS2xS2 { n } => SumWord::from_counts([0, 0, 0, n, 0, 0]).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for HomeoTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomeoTag::E8Family { s, n } => write!(f, "E8_family(s={s:+}, n={n})"),
            HomeoTag::DefiniteNondiagonal { rank, signature, .. } => {
                write!(f, "definite_nondiagonal(rank={rank}, signature={signature})")
            }
            other => write!(f, "{}", other.fact_one_word().expect("fact-one class")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomeoClass {
    #[serde(flatten)]
    pub tag: HomeoTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl HomeoClass {
    fn plain(tag: HomeoTag) -> Self {
        Self { tag, caveat: None }
    }
}

/// Serre classification of the form, with Donaldson's theorem applied to
/// definite forms when the manifold is assumed smoothable.
pub fn serre_normal_form(q: &IntersectionForm, assume_smoothable: bool) -> Result<HomeoClass, FormError> {
    classify_invariants(q, &q.invariants(), assume_smoothable)
}

fn classify_invariants(
    q: &IntersectionForm,
    inv: &FormInvariants,
    assume_smoothable: bool,
) -> Result<HomeoClass, FormError> {
    let (bp, bm) = (inv.b_plus as u64, inv.b_minus as u64);
    if inv.parity == Parity::Even && inv.signature % 8 != 0 {
        return Err(FormError::InvariantViolation { signature: inv.signature });
    }
    Ok(match (inv.definiteness, inv.parity) {
        (Definiteness::ZeroRank, _) => HomeoClass::plain(HomeoTag::S4),
        (Definiteness::Indefinite, Parity::Odd) => HomeoClass::plain(HomeoTag::MixedCp2 { m: bp, n: bm }),
        (Definiteness::Indefinite, Parity::Even) => {
            let s = inv.signature / 8;
            let n = (inv.rank as u64 - inv.signature.unsigned_abs()) / 2;
            if s == 0 {
                HomeoClass::plain(HomeoTag::SumS2xS2 { n })
            } else {
                HomeoClass::plain(HomeoTag::E8Family { s, n })
            }
        }
        (_, parity) => {
            if q.is_plus_minus_identity().is_some() {
                return Ok(HomeoClass::plain(HomeoTag::MixedCp2 { m: bp, n: bm }));
            }
            let tag = HomeoTag::DefiniteNondiagonal { rank: inv.rank, signature: inv.signature, parity };
            match (assume_smoothable, parity) {
                (true, Parity::Odd) => HomeoClass {
                    tag: HomeoTag::MixedCp2 { m: bp, n: bm },
                    caveat: Some(
                        "definite form not literally diagonal; smoothability forces the standard diagonal form \
                         (Donaldson)"
                            .into(),
                    ),
                },
                (true, Parity::Even) => HomeoClass {
                    tag,
                    caveat: Some(
                        "even definite forms are never intersection forms of smooth manifolds (Donaldson); \
                         the smoothability assumption is inconsistent with this input"
                            .into(),
                    ),
                },
                (false, _) => HomeoClass {
                    tag,
                    caveat: Some(
                        "realized by a topological manifold (Freedman); if smoothable it is diagonalizable \
                         (Donaldson), which is not checked here"
                            .into(),
                    ),
                },
            }
        }
    })
}

/// Whether the class admits `scal > 0`, equivalently `Ric > 0` and
/// `sec⊥ > 0`, for some smooth structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PscAnswer {
    pub admits: bool,
    pub conditional: bool,
    pub reason: String,
}

pub fn admits_psc(h: &HomeoClass) -> PscAnswer {
    let yes = |reason: &str| PscAnswer { admits: true, conditional: false, reason: reason.into() };
    match &h.tag {
        HomeoTag::S4 => yes("round metric"),
        HomeoTag::MixedCp2 { .. } => yes("connected sum of CP2 and its reverse"),
        HomeoTag::SumS2xS2 { .. } => yes("connected sum of S2xS2"),
        HomeoTag::E8Family { s, .. } => PscAnswer {
            admits: false,
            conditional: false,
            reason: format!("spin with A-hat = {} != 0", -s),
        },
        HomeoTag::DefiniteNondiagonal { parity: Parity::Even, signature, .. } => PscAnswer {
            admits: false,
            conditional: false,
            reason: format!(
                "even definite form: not smoothable (Donaldson), and spin with A-hat = {} != 0",
                a_hat_of(*signature)
            ),
        },
        HomeoTag::DefiniteNondiagonal { .. } => PscAnswer {
            admits: true,
            conditional: true,
            reason: "holds if the manifold is smoothable: the form is then diagonal (Donaldson)".into(),
        },
    }
}

fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn serialize_word<S: Serializer>(w: &Option<SumWord>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

/// The verdict on the three equivalent conditions `sec⊥ > 0`, `Ric > 0` and
/// `scal > 0`, at the level of homeomorphism type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub invariants: FormInvariants,
    pub class: HomeoClass,
    #[serde(serialize_with = "serialize_ratio")]
    pub a_hat: Rational64,
    /// One answer for all three conditions.
    pub holds: bool,
    pub conditional: bool,
    pub reason: String,
    /// The answer concerns some smooth structure on the topological manifold,
    /// not every one.
    pub scope: &'static str,
    #[serde(serialize_with = "serialize_word")]
    pub canonical_word: Option<SumWord>,
    pub certificate: Option<Certificate>,
}

pub const VERDICT_SCOPE: &str = "homeomorphism type; holds for some smooth structure";

pub fn theorem_verdict(q: &IntersectionForm, assume_smoothable: bool) -> Result<VerdictReport, FormError> {
    let invariants = q.invariants();
    let class = classify_invariants(q, &invariants, assume_smoothable)?;
    let answer = admits_psc(&class);
    let word = match (&class.tag, answer.admits) {
        (HomeoTag::DefiniteNondiagonal { signature, parity: Parity::Odd, .. }, true) => {
            let r = signature.unsigned_abs();
            let counts = if *signature > 0 { [0, r, 0, 0, 0, 0] } else { [0, 0, r, 0, 0, 0] };
            SumWord::from_counts(counts).ok()
        }
        (tag, true) => tag.fact_one_word(),
        _ => None,
    };
    let certificate = match &word {
        Some(w) => Some(sumword::certificate(w).map_err(|e| FormError::Certificate(e.to_string()))?),
        None => None,
    };
    Ok(VerdictReport {
        a_hat: a_hat_of(invariants.signature),
        invariants,
        class,
        holds: answer.admits,
        conditional: answer.conditional,
        reason: answer.reason,
        scope: VERDICT_SCOPE,
        canonical_word: word,
        certificate,
    })
}

/// On-disk form: `rank` plus the integer matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl FormFile {
    pub fn to_form(&self) -> Result<IntersectionForm, FormError> {
        if self.matrix.len() != self.rank {
            return Err(FormError::RankMismatch { declared: self.rank, actual: self.matrix.len() });
        }
        IntersectionForm::from_i64(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[&[i64]]) -> IntersectionForm {
        IntersectionForm::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn h() -> IntersectionForm {
        IntersectionForm::builtin(Builtin::H)
    }

    fn e8() -> IntersectionForm {
        IntersectionForm::builtin(Builtin::E8)
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(IntersectionForm::from_i64(&[vec![1, 0]]), Err(FormError::NotSquare { .. })));
        assert!(matches!(
            IntersectionForm::from_i64(&[vec![0, 1], vec![2, 0]]),
            Err(FormError::Asymmetric { i: 0, j: 1 })
        ));
        match IntersectionForm::from_i64(&[vec![2, 1], vec![1, 2]]) {
            Err(FormError::NotUnimodular { det }) => assert_eq!(det, BigInt::from(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn direct_sum_examples() {
        let one = IntersectionForm::builtin(Builtin::One);
        let m1 = IntersectionForm::builtin(Builtin::MinusOne);
        let s = one.direct_sum(&m1);
        assert_eq!(s, form(&[&[1, 0], &[0, -1]]));
        assert_eq!(s.invariants().signature, 0);
        let eh = e8().direct_sum(&h()).invariants();
        assert_eq!((eh.rank, eh.signature), (10, 8));
        assert_eq!(IntersectionForm::empty().direct_sum(&h()), h());
    }

    #[test]
    fn invariants_examples() {
        let i = h().invariants();
        assert_eq!(
            i,
            FormInvariants {
                rank: 2,
                signature: 0,
                b_plus: 1,
                b_minus: 1,
                parity: Parity::Even,
                definiteness: Definiteness::Indefinite,
                determinant: -1
            }
        );
        let i = e8().invariants();
        assert_eq!((i.rank, i.signature, i.parity, i.definiteness, i.determinant), (8, 8, Parity::Even, Definiteness::Positive, 1));
        let i = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]).invariants();
        assert_eq!((i.signature, i.parity, i.definiteness), (1, Parity::Odd, Definiteness::Indefinite));
        assert_eq!(IntersectionForm::empty().invariants().definiteness, Definiteness::ZeroRank);
    }

    #[test]
    fn e8_signature_matches_float_eigenvalues() {
        let m = nalgebra::DMatrix::from_fn(8, 8, |i, j| e8().rows()[i][j].to_f64().unwrap());
        let eig = nalgebra::SymmetricEigen::new(m).eigenvalues;
        assert!(eig.iter().all(|&v| v > 1e-3));
    }

    #[test]
    fn a_hat_values() {
        assert_eq!(e8().a_hat(), Rational64::from_integer(-1));
        assert_eq!(h().a_hat(), Rational64::zero());
        assert_eq!(e8().direct_sum(&e8()).a_hat(), Rational64::from_integer(-2));
    }

    #[test]
    fn serre_classes() {
        assert_eq!(serre_normal_form(&h().direct_sum(&h()), false).unwrap().tag, HomeoTag::SumS2xS2 { n: 2 });
        assert_eq!(
            serre_normal_form(&form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]), false).unwrap().tag,
            HomeoTag::MixedCp2 { m: 2, n: 1 }
        );
        assert_eq!(serre_normal_form(&e8().direct_sum(&h()), false).unwrap().tag, HomeoTag::E8Family { s: 1, n: 1 });
        assert_eq!(
            serre_normal_form(&e8().negated().direct_sum(&h()), false).unwrap().tag,
            HomeoTag::E8Family { s: -1, n: 1 }
        );
        assert_eq!(serre_normal_form(&IntersectionForm::empty(), false).unwrap().tag, HomeoTag::S4);
    }

    #[test]
    fn definite_forms() {
        let id3 = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(serre_normal_form(&id3, false).unwrap().tag, HomeoTag::MixedCp2 { m: 3, n: 0 });
        let neg = form(&[&[-1, 0], &[0, -1]]);
        assert_eq!(serre_normal_form(&neg, false).unwrap().tag, HomeoTag::MixedCp2 { m: 0, n: 2 });
        // P·Pᵀ with P = [[1,1],[0,1]]: diagonalizable over ℤ but not literally diagonal.
        let p = form(&[&[2, 1], &[1, 1]]);
        let c = serre_normal_form(&p, false).unwrap();
        assert!(matches!(c.tag, HomeoTag::DefiniteNondiagonal { rank: 2, signature: 2, parity: Parity::Odd }));
        assert!(c.caveat.is_some());
        let a = admits_psc(&c);
        assert!(a.admits && a.conditional);
        let smooth = serre_normal_form(&p, true).unwrap();
        assert_eq!(smooth.tag, HomeoTag::MixedCp2 { m: 2, n: 0 });
        // E8 alone: no smooth structure, no positive scalar curvature.
        let c = serre_normal_form(&e8(), true).unwrap();
        assert!(matches!(c.tag, HomeoTag::DefiniteNondiagonal { parity: Parity::Even, .. }));
        assert!(!admits_psc(&c).admits);
    }

    #[test]
    fn psc_answers() {
        assert!(admits_psc(&HomeoClass::plain(HomeoTag::SumS2xS2 { n: 3 })).admits);
        assert!(admits_psc(&HomeoClass::plain(HomeoTag::S4)).admits);
        let a = admits_psc(&HomeoClass::plain(HomeoTag::E8Family { s: 1, n: 1 }));
        assert!(!a.admits);
        assert!(a.reason.contains("-1"), "{}", a.reason);
    }

    #[test]
    fn verdicts() {
        let v = theorem_verdict(&h(), false).unwrap();
        assert!(v.holds);
        assert_eq!(v.class.tag, HomeoTag::SumS2xS2 { n: 1 });
        assert!(v.certificate.is_some());
        let v = theorem_verdict(&e8().direct_sum(&h()), false).unwrap();
        assert!(!v.holds);
        assert_eq!(v.a_hat, Rational64::from_integer(-1));
        assert!(v.certificate.is_none());
        let v = theorem_verdict(&IntersectionForm::empty(), false).unwrap();
        assert!(v.holds);
        assert_eq!(v.class.tag, HomeoTag::S4);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.blocks.len(), 1);
    }

    #[test]
    fn form_file_checks_rank() {
        let f = FormFile { rank: 3, matrix: vec![vec![0, 1], vec![1, 0]] };
        assert!(matches!(f.to_form(), Err(FormError::RankMismatch { declared: 3, actual: 2 })));
        let f = FormFile { rank: 2, matrix: vec![vec![0, 1], vec![1, 0]] };
        assert_eq!(f.to_form().unwrap(), h());
    }
}
