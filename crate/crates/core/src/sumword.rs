//! Connected-sum words over the blocks S⁴, CP², C̄P², S²×S² and ±E8,
//! their intersection forms, the diffeomorphism rewrite and `sec⊥ > 0`
//! certificates.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curvature::{sphere_times_flat, ConeStatus, CurvatureOperator, Model, OperatorError, CONE_TOL};
use crate::forms::{self, Builtin, FormError, HomeoClass, HomeoTag, IntersectionForm, VerdictReport};
use crate::testing::random_orthogonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Block {
    S4,
    CP2,
    CP2bar,
    S2xS2,
    E8,
    E8bar,
}

impl Block {
    pub const ALL: [Block; 6] = [Block::S4, Block::CP2, Block::CP2bar, Block::S2xS2, Block::E8, Block::E8bar];

    /// Token as written in words.
    pub fn token(self) -> &'static str {
        match self {
            Block::S4 => "S4",
            Block::CP2 => "CP2",
            Block::CP2bar => "CP2bar",
            Block::S2xS2 => "S2xS2",
            Block::E8 => "E8",
            Block::E8bar => "-E8",
        }
    }

    fn form(self) -> IntersectionForm {
        match self {
            Block::S4 => IntersectionForm::empty(),
            Block::CP2 => IntersectionForm::builtin(Builtin::One),
            Block::CP2bar => IntersectionForm::builtin(Builtin::MinusOne),
            Block::S2xS2 => IntersectionForm::builtin(Builtin::H),
            Block::E8 => IntersectionForm::builtin(Builtin::E8),
            Block::E8bar => IntersectionForm::builtin(Builtin::E8).negated(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("zero count at offset {offset}")]
    ZeroCount { offset: usize },
    #[error("count too large at offset {offset}")]
    CountOverflow { offset: usize },
    #[error("empty word; write S4 for the neutral manifold")]
    Empty,
    #[error("word contains E8 blocks, which have no rewrite rules")]
    ContainsE8,
    #[error("word is not in normal form (normalizes to {normal})")]
    NotNormalized { normal: String },
    #[error("classification routes disagree: form gives {form}, rewriting gives {word}")]
    RouteDisagreement { form: String, word: String },
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// A connected sum as a multiset of blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SumWord {
    counts: [u64; 6],
}

impl SumWord {
    /// Counts in the order of [`Block::ALL`].
    pub fn from_counts(counts: [u64; 6]) -> Result<Self, WordError> {
        if counts.iter().all(|&c| c == 0) {
            return Err(WordError::Empty);
        }
        Ok(Self { counts })
    }

    pub fn s4() -> Self {
        Self { counts: [1, 0, 0, 0, 0, 0] }
    }

    pub fn counts(&self) -> [u64; 6] {
        self.counts
    }

    pub fn count(&self, b: Block) -> u64 {
        self.counts[b as usize]
    }

    pub fn has_e8(&self) -> bool {
        self.count(Block::E8) + self.count(Block::E8bar) > 0
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        Parser { s: text.as_bytes(), pos: 0 }.word()
    }

    pub fn to_form(&self) -> IntersectionForm {
        let mut q = IntersectionForm::empty();
        for b in Block::ALL {
            let f = b.form();
            for _ in 0..self.count(b) {
                if f.rank() > 0 {
                    q = q.direct_sum(&f);
                }
            }
        }
        q
    }

    /// Homeomorphism class of a canonical word, if it is one.
    fn canonical_class(&self) -> Option<HomeoTag> {
        let [s4, m, n, k, e, eb] = self.counts;
        match (s4, m + n, k, e + eb) {
            (1, 0, 0, 0) => Some(HomeoTag::S4),
            (0, t, 0, 0) if t > 0 => Some(HomeoTag::MixedCp2 { m, n }),
            (0, 0, k, 0) if k > 0 => Some(HomeoTag::SumS2xS2 { n: k }),
            _ => None,
        }
    }
}

impl fmt::Display for SumWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Block::ALL {
            let c = self.count(b);
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" # ")?;
            }
            first = false;
            if c > 1 {
                write!(f, "{c}*")?;
            }
            f.write_str(b.token())?;
        }
        Ok(())
    }
}

impl FromStr for SumWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for SumWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, expected: &'static str) -> WordError {
        WordError::Syntax { offset: self.pos, expected }
    }

    fn word(mut self) -> Result<SumWord, WordError> {
        let mut counts = [0u64; 6];
        loop {
            self.skip_ws();
            let (count, block) = self.term()?;
            let slot = &mut counts[block as usize];
            *slot = slot.checked_add(count).ok_or(WordError::CountOverflow { offset: self.pos })?;
            self.skip_ws();
            match self.s.get(self.pos) {
                None => break,
                Some(b'#') => self.pos += 1,
                Some(_) => return Err(self.err("'#' or end of input")),
            }
        }
        SumWord::from_counts(counts)
    }

    fn term(&mut self) -> Result<(u64, Block), WordError> {
        let mut count = 1;
        if self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            let start = self.pos;
            while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
            count = digits.parse::<u64>().map_err(|_| WordError::CountOverflow { offset: start })?;
            if count == 0 {
                return Err(WordError::ZeroCount { offset: start });
            }
            self.skip_ws();
            if self.s.get(self.pos) != Some(&b'*') {
                return Err(self.err("'*'"));
            }
            self.pos += 1;
            self.skip_ws();
        }
        // Longest token first so that CP2bar is not read as CP2.
        const TOKENS: [Block; 6] = [Block::CP2bar, Block::S2xS2, Block::E8bar, Block::CP2, Block::S4, Block::E8];
        for b in TOKENS {
            if self.s[self.pos..].starts_with(b.token().as_bytes()) {
                self.pos += b.token().len();
                return Ok((count, b));
            }
        }
        Err(self.err("a block (S4, CP2, CP2bar, S2xS2, E8, -E8)"))
    }
}

/// Which rewrite rules [`normalize`] may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewriteRules {
    /// `CP² # S²×S² → 2CP² # C̄P²` and its orientation reversal.
    #[default]
    WithMirror,
    /// Only `CP² # S²×S² → 2CP² # C̄P²`.
    Literal,
}

/// Rewrites a word into canonical form: S⁴ is neutral and
/// `CP² # (S²×S²) ≅ 2CP² # C̄P²`.
pub fn normalize(w: &SumWord, rules: RewriteRules) -> Result<SumWord, WordError> {
    if w.has_e8() {
        return Err(WordError::ContainsE8);
    }
    let [_, mut cp2, mut cp2bar, mut s2, _, _] = w.counts;
    // Both rules trade one S²×S² for one CP² and one C̄P², and once either
    // has fired CP² ≥ 1, so the fixed point absorbs every S²×S² at once.
    let fires = cp2 >= 1 || (rules == RewriteRules::WithMirror && cp2bar >= 1);
    if s2 >= 1 && fires {
        cp2 += s2;
        cp2bar += s2;
        s2 = 0;
    }
    let s4 = u64::from(cp2 + cp2bar + s2 == 0);
    SumWord::from_counts([s4, cp2, cp2bar, s2, 0, 0])
}

/// Evidence that a block carries a `sec⊥ > 0` metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Operator { model: String, min_biorth: f64 },
    Citation { key: String, note: String, product_min_biorth: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockEvidence {
    pub block: Block,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub verified: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Glue {
    pub proposition: String,
    pub hypotheses: Vec<Hypothesis>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub word: SumWord,
    pub tol: f64,
    pub blocks: Vec<BlockEvidence>,
    pub glue: Glue,
}

pub const GLUE_PROPOSITION: &str =
    "sec⊥ > 0 is preserved under connected sums (surgery stability in codimension 4, Hoelzel criterion)";

pub const HYPOTHESES: [&str; 4] = ["cone open", "cone convex", "cone O(4)-invariant", "R_{S3xR} inside"];

const O4_SAMPLES: usize = 8;
const O4_TOL: f64 = 1e-9;
const CONE_CHECK_SEED: u64 = 0x5eed_c0de;

fn reflection4() -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]))
}

/// Fubini–Study with reversed orientation; sectional curvatures are unchanged.
fn cp2bar_operator() -> Result<CurvatureOperator, OperatorError> {
    Model::Cp2FubiniStudy.operator()?.conjugate(&reflection4())
}

fn min4(op: &CurvatureOperator) -> Result<f64, OperatorError> {
    Ok(op.min_biorth_exact4()?.0)
}

fn check_open(s3r: &CurvatureOperator) -> Result<Hypothesis, OperatorError> {
    let m = min4(s3r)?;
    let shifted = s3r.add(&CurvatureOperator::identity(4).scaled(-m / 2.0))?;
    let v = shifted.in_cone(CONE_TOL)?;
    Ok(Hypothesis {
        name: HYPOTHESES[0].into(),
        verified: v.status == ConeStatus::Inside,
        detail: format!("R_S3xR - ({}/2) Id has min sec⊥ {}", m, v.min_value),
    })
}

fn check_convex(ops: &[CurvatureOperator]) -> Result<Hypothesis, OperatorError> {
    let mins = ops.iter().map(min4).collect::<Result<Vec<_>, _>>()?;
    let mut worst = f64::INFINITY;
    let mut ok = true;
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            for t in [0.25, 0.5, 0.75] {
                let mix = ops[a].lerp(&ops[b], t)?;
                let m = min4(&mix)?;
                let bound = t * mins[a] + (1.0 - t) * mins[b];
                worst = worst.min(m - bound);
                ok &= m >= bound - 1e-12 && m > CONE_TOL;
            }
        }
    }
    Ok(Hypothesis {
        name: HYPOTHESES[1].into(),
        verified: ok,
        detail: format!("min over segments minus interpolated minima >= {worst:e}"),
    })
}

fn check_invariant(ops: &[CurvatureOperator]) -> Result<Hypothesis, OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(CONE_CHECK_SEED);
    let mut worst = 0.0f64;
    for op in ops {
        let m = min4(op)?;
        let mut qs: Vec<DMatrix<f64>> = (0..O4_SAMPLES).map(|_| random_orthogonal(4, &mut rng)).collect();
        qs.push(reflection4());
        for q in qs {
            worst = worst.max((min4(&op.conjugate(&q)?)? - m).abs());
        }
    }
    Ok(Hypothesis {
        name: HYPOTHESES[2].into(),
        verified: worst <= O4_TOL,
        detail: format!("max |change of min sec⊥| under O(4) = {worst:e}"),
    })
}

fn check_s3r(s3r: &CurvatureOperator) -> Result<Hypothesis, OperatorError> {
    let v = s3r.in_cone(CONE_TOL)?;
    Ok(Hypothesis {
        name: HYPOTHESES[3].into(),
        verified: v.status == ConeStatus::Inside,
        detail: format!("min sec⊥ = {}", v.min_value),
    })
}

/// Verifies the cone hypotheses of the gluing proposition afresh.
pub fn glue() -> Result<Glue, OperatorError> {
    let s3r = sphere_times_flat(3, 4)?;
    let samples = [
        CurvatureOperator::identity(4),
        Model::Cp2FubiniStudy.operator()?,
        cp2bar_operator()?,
        s3r.clone(),
    ];
    Ok(Glue {
        proposition: GLUE_PROPOSITION.into(),
        hypotheses: vec![check_open(&s3r)?, check_convex(&samples)?, check_invariant(&samples)?, check_s3r(&s3r)?],
    })
}

fn operator_evidence(model: &str, op: &CurvatureOperator) -> Result<Evidence, WordError> {
    let m = min4(op)?;
    if m <= CONE_TOL {
        return Err(WordError::CertificateFailed(format!("{model}: min sec⊥ = {m} is not positive")));
    }
    Ok(Evidence::Operator { model: model.into(), min_biorth: m })
}

/// Per-block evidence plus the verified gluing hypotheses for a normalized,
/// E8-free word. Every value is recomputed here.
pub fn certificate(w: &SumWord) -> Result<Certificate, WordError> {
    if w.has_e8() {
        return Err(WordError::ContainsE8);
    }
    let normal = normalize(w, RewriteRules::WithMirror)?;
    if normal != *w {
        return Err(WordError::NotNormalized { normal: normal.to_string() });
    }
    let mut blocks = Vec::new();
    for b in Block::ALL {
        for _ in 0..w.count(b) {
            let evidence = match b {
                Block::S4 => operator_evidence("round_sphere", &CurvatureOperator::identity(4))?,
                Block::CP2 => operator_evidence("CP2_fubini_study", &Model::Cp2FubiniStudy.operator()?)?,
                Block::CP2bar => operator_evidence("CP2_fubini_study, orientation reversed", &cp2bar_operator()?)?,
                Block::S2xS2 => Evidence::Citation {
                    key: "s2xs2-deformed-product-metric".into(),
                    note: "external construction of a sec⊥ > 0 metric; the product metric is not evidence".into(),
                    product_min_biorth: min4(&Model::S2xS2Product.operator()?)?,
                },
                Block::E8 | Block::E8bar => unreachable!("checked above"),
            };
            blocks.push(BlockEvidence { block: b, evidence });
        }
    }
    let glue = glue()?;
    if let Some(h) = glue.hypotheses.iter().find(|h| !h.verified) {
        return Err(WordError::CertificateFailed(format!("{}: {}", h.name, h.detail)));
    }
    Ok(Certificate { word: *w, tol: CONE_TOL, blocks, glue })
}

/// Verdict through the form route, cross-checked against the rewrite route
/// for E8-free words.
pub fn classify_word(w: &SumWord, assume_smoothable: bool, rules: RewriteRules) -> Result<VerdictReport, WordError> {
    let report = forms::theorem_verdict(&w.to_form(), assume_smoothable)?;
    if w.has_e8() {
        return Ok(report);
    }
    let normal = normalize(w, rules)?;
    // Under the literal rules a C̄P² # S²×S² word has no canonical form; the
    // rewrite route is then silent rather than contradictory.
    if let Some(tag) = normal.canonical_class() {
        if tag != report.class.tag {
            return Err(WordError::RouteDisagreement { form: report.class.tag.to_string(), word: normal.to_string() });
        }
    }
    Ok(report)
}

/// The class a canonical word names, for callers comparing routes.
pub fn word_class(w: &SumWord, rules: RewriteRules) -> Result<Option<HomeoClass>, WordError> {
    Ok(normalize(w, rules)?.canonical_class().map(|tag| HomeoClass { tag, caveat: None }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Parity;

    fn w(s: &str) -> SumWord {
        SumWord::parse(s).unwrap()
    }

    fn counts(c: [u64; 6]) -> SumWord {
        SumWord::from_counts(c).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("3*CP2 # CP2bar").counts(), [0, 3, 1, 0, 0, 0]);
        assert_eq!(w("S4").counts(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(SumWord::parse("CP2 ## S4"), Err(WordError::Syntax { offset: 5, expected: "a block (S4, CP2, CP2bar, S2xS2, E8, -E8)" }));
        assert_eq!(w(" -E8#E8 # 2 * -E8 ").counts(), [0, 0, 0, 0, 1, 3]);
        assert_eq!(w("CP2 # CP2").counts(), [0, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(SumWord::parse("0*CP2"), Err(WordError::ZeroCount { offset: 0 }));
        assert!(matches!(SumWord::parse(""), Err(WordError::Syntax { offset: 0, .. })));
        assert!(matches!(SumWord::parse("CP2 #"), Err(WordError::Syntax { offset: 5, .. })));
        assert!(matches!(SumWord::parse("CP2 bar"), Err(WordError::Syntax { offset: 4, .. })));
        assert!(matches!(SumWord::parse("2 CP2"), Err(WordError::Syntax { offset: 2, .. })));
        assert!(matches!(SumWord::parse("99999999999999999999*S4"), Err(WordError::CountOverflow { offset: 0 })));
        assert_eq!(SumWord::from_counts([0; 6]), Err(WordError::Empty));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(counts([0, 3, 1, 0, 0, 0]).to_string(), "3*CP2 # CP2bar");
        assert_eq!(SumWord::s4().to_string(), "S4");
        assert_eq!(counts([2, 0, 0, 1, 0, 1]).to_string(), "2*S4 # S2xS2 # -E8");
        for text in ["3*CP2 # CP2bar", "2*S4 # S2xS2 # -E8", "E8 # 4*S2xS2"] {
            let a = w(text);
            assert_eq!(w(&a.to_string()), a);
        }
    }

    #[test]
    fn forms_of_words() {
        let inv = w("CP2 # S2xS2").to_form().invariants();
        assert_eq!((inv.rank, inv.signature, inv.parity), (3, 1, Parity::Odd));
        assert_eq!(w("5*S4").to_form(), IntersectionForm::empty());
        let inv = w("E8 # S2xS2").to_form().invariants();
        assert_eq!((inv.rank, inv.signature, inv.parity), (10, 8, Parity::Even));
    }

    #[test]
    fn normalize_examples() {
        let d = RewriteRules::default();
        assert_eq!(normalize(&w("CP2 # S2xS2"), d).unwrap(), w("2*CP2 # CP2bar"));
        assert_eq!(normalize(&w("4*S2xS2"), d).unwrap(), w("4*S2xS2"));
        assert_eq!(normalize(&w("2*S4"), d).unwrap(), w("S4"));
        assert_eq!(normalize(&w("S4 # CP2bar # 2*S2xS2"), d).unwrap(), w("2*CP2 # 3*CP2bar"));
        assert_eq!(
            normalize(&w("CP2bar # S2xS2"), RewriteRules::Literal).unwrap(),
            w("CP2bar # S2xS2")
        );
        assert_eq!(normalize(&w("E8"), d), Err(WordError::ContainsE8));
    }

    #[test]
    fn rewrite_preserves_invariants() {
        for text in ["CP2 # S2xS2", "CP2bar # 3*S2xS2 # S4", "2*CP2 # 2*CP2bar # 5*S2xS2"] {
            let a = w(text);
            let b = normalize(&a, RewriteRules::default()).unwrap();
            let (ia, ib) = (a.to_form().invariants(), b.to_form().invariants());
            assert_eq!((ia.rank, ia.signature, ia.parity), (ib.rank, ib.signature, ib.parity));
        }
    }

    #[test]
    fn certificate_examples() {
        let c = certificate(&w("3*CP2")).unwrap();
        assert_eq!(c.blocks.len(), 3);
        for b in &c.blocks {
            match &b.evidence {
                Evidence::Operator { min_biorth, .. } => assert!((min_biorth - 1.0).abs() < 1e-12),
                other => panic!("{other:?}"),
            }
        }
        let names: Vec<&str> = c.glue.hypotheses.iter().map(|h| h.name.as_str()).collect();
        assert_eq!(names, HYPOTHESES);
        assert!(c.glue.hypotheses.iter().all(|h| h.verified));

        let c = certificate(&w("2*S2xS2")).unwrap();
        assert_eq!(c.blocks.len(), 2);
        for b in &c.blocks {
            match &b.evidence {
                Evidence::Citation { product_min_biorth, .. } => assert!(product_min_biorth.abs() < 1e-12),
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(certificate(&w("E8")), Err(WordError::ContainsE8));
        assert!(matches!(certificate(&w("CP2 # S2xS2")), Err(WordError::NotNormalized { .. })));
    }

    #[test]
    fn reversed_cp2_keeps_its_minimum() {
        let m = min4(&cp2bar_operator().unwrap()).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        let d = RewriteRules::default();
        let r = classify_word(&w("CP2 # S2xS2"), false, d).unwrap();
        assert_eq!(r.class.tag, HomeoTag::MixedCp2 { m: 2, n: 1 });
        assert!(r.holds);
        let r = classify_word(&w("E8 # S2xS2"), false, d).unwrap();
        assert!(!r.holds);
        assert_eq!(r.a_hat, num_rational::Rational64::from_integer(-1));
        let r = classify_word(&w("S4"), false, d).unwrap();
        assert_eq!(r.class.tag, HomeoTag::S4);
        assert!(r.holds);
    }

    #[test]
    fn literal_rules_leave_mirrored_words_to_the_form_route() {
        let a = w("CP2bar # S2xS2");
        assert_eq!(word_class(&a, RewriteRules::Literal).unwrap(), None);
        let r = classify_word(&a, false, RewriteRules::Literal).unwrap();
        assert_eq!(r.class.tag, HomeoTag::MixedCp2 { m: 1, n: 2 });
    }
}
