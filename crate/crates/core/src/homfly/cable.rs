use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::engine::Engine;
use crate::annulus::meridian_eigenvalue;
use crate::coefficients::{Exp, HalfLaurent, SkeinValue};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// Linear combination of braid patterns on a fixed number of strands, read
/// as closed braids in the solid torus. Zero strands is allowed and stands
/// for the empty pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CableExpression {
    strands: usize,
    terms: Vec<(SkeinValue, Vec<i32>)>,
}

impl CableExpression {
    pub fn new(strands: usize, terms: Vec<(SkeinValue, Vec<i32>)>) -> Result<Self> {
        for (_, w) in &terms {
            if strands == 0 && !w.is_empty() {
                return Err(Error::InvalidBraid("the empty pattern has no generators".into()));
            }
            if strands > 0 {
                BraidWord::new(strands, w.clone())?;
            }
        }
        Ok(CableExpression { strands, terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect() })
    }

    /// The pattern that deletes its companion.
    pub fn empty() -> Self {
        CableExpression { strands: 0, terms: vec![(SkeinValue::one(), Vec::new())] }
    }

    pub fn identity(strands: usize) -> Self {
        CableExpression { strands, terms: vec![(SkeinValue::one(), Vec::new())] }
    }

    pub fn single_strand() -> Self {
        CableExpression::identity(1)
    }

    pub fn from_braid(b: &BraidWord) -> Self {
        CableExpression { strands: b.strands(), terms: vec![(SkeinValue::one(), b.word().to_vec())] }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(&self) -> &[(SkeinValue, Vec<i32>)] {
        &self.terms
    }

    pub fn scale(&self, c: &SkeinValue) -> Self {
        let terms = self.terms.iter().map(|(d, w)| (c * d, w.clone())).filter(|(d, _)| !d.is_zero()).collect();
        CableExpression { strands: self.strands, terms }
    }

    fn check_same(&self, other: &CableExpression) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::InvalidBraid(format!(
                "patterns on {} and {} strands cannot be combined",
                self.strands, other.strands
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CableExpression) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(CableExpression { strands: self.strands, terms })
    }

    /// Stack `self` above `other`.
    pub fn compose(&self, other: &CableExpression) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                terms.push((c1 * c2, w));
            }
        }
        Ok(CableExpression { strands: self.strands, terms })
    }

    /// Coordinates `(c0, c1)` of a two-strand pattern in the basis `1, sigma`,
    /// using `sigma^2 = z sigma + 1`.
    pub fn reduce_two_strand(&self) -> Result<(SkeinValue, SkeinValue)> {
        if self.strands != 2 {
            return Err(Error::InvalidBraid(format!("expected a two-strand pattern, got {}", self.strands)));
        }
        let z = SkeinValue::z();
        let mut total = (SkeinValue::zero(), SkeinValue::zero());
        for (c, w) in &self.terms {
            let (mut c0, mut c1) = (c.clone(), SkeinValue::zero());
            for &g in w {
                (c0, c1) = if g > 0 {
                    (c1.clone(), &c0 + &(&z * &c1))
                } else {
                    (&c1 - &(&z * &c0), c0)
                };
            }
            total = (&total.0 + &c0, &total.1 + &c1);
        }
        Ok(total)
    }
}

/// Eigenprojections `(e_plus, e_minus)` of `sigma` on two strands, for the
/// eigenvalues `q^(1/2)` and `-q^(-1/2)`.
pub fn two_strand_idempotents() -> (CableExpression, CableExpression) {
    let norm = SkeinValue::from(&HalfLaurent::q_half() + &HalfLaurent::q_pow_half(-1)).inv().expect("nonzero");
    let plus = vec![
        (norm.clone(), vec![1]),
        (norm.mul_laurent(&HalfLaurent::q_pow_half(-1)), Vec::new()),
    ];
    let minus = vec![(norm.mul_laurent(&HalfLaurent::q_half()), Vec::new()), (-&norm, vec![1])];
    (
        CableExpression { strands: 2, terms: plus },
        CableExpression { strands: 2, terms: minus },
    )
}

/// Cabled braid: each component of `b` replaced by `widths[c]` parallel
/// strands, with `patterns[c]` inserted at the top of its first position.
fn cabled_word(b: &BraidWord, widths: &[usize], patterns: &[&[i32]]) -> (usize, Vec<i32>) {
    let comp = b.component_of_position();
    let width = |top: usize| widths[comp[top]];
    let total: usize = (0..b.strands()).map(width).sum();
    let mut word = Vec::new();
    for (c, positions) in b.components().iter().enumerate() {
        let offset: usize = (0..positions[0]).map(width).sum();
        word.extend(patterns[c].iter().map(|&g| g + g.signum() * offset as i32));
    }
    let mut at: Vec<usize> = (0..b.strands()).collect();
    for &g in b.word() {
        let i = g.unsigned_abs() as usize;
        let o: usize = at[..i - 1].iter().map(|&t| width(t)).sum();
        let (kl, kr) = (width(at[i - 1]), width(at[i]));
        for r in 0..kl {
            for j in (o + kl - r)..(o + kl + kr - r) {
                word.push(g.signum() * j as i32);
            }
        }
        at.swap(i - 1, i);
    }
    (total, word)
}

/// Satellite of the closure of `b` with one pattern per component (in the
/// order of [`BraidWord::components`]), evaluated in the three-sphere with
/// blackboard framing.
pub fn cable_components(b: &BraidWord, patterns: &[CableExpression]) -> Result<SkeinValue> {
    let ncomp = b.components().len();
    if patterns.len() != ncomp {
        return Err(Error::InvalidBraid(format!("{} patterns given for {ncomp} components", patterns.len())));
    }
    let widths: Vec<usize> = patterns.iter().map(CableExpression::strands).collect();
    let mut engine = Engine::default();
    let mut total = SkeinValue::zero();
    let mut choice = vec![0usize; ncomp];
    if patterns.iter().any(|p| p.terms.is_empty()) {
        return Ok(total);
    }
    loop {
        let coeff: SkeinValue = choice.iter().zip(patterns).map(|(&k, p)| p.terms[k].0.clone()).product();
        let words: Vec<&[i32]> = choice.iter().zip(patterns).map(|(&k, p)| p.terms[k].1.as_slice()).collect();
        let (n, word) = cabled_word(b, &widths, &words);
        let value = if n == 0 { SkeinValue::one() } else { engine.evaluate(&BraidWord::new(n, word)?)? };
        total = &total + &(&coeff * &value);
        let mut c = 0;
        loop {
            if c == ncomp {
                return Ok(total);
            }
            choice[c] += 1;
            if choice[c] < patterns[c].terms.len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

/// [`cable_components`] with the same pattern on every component.
pub fn cable(b: &BraidWord, pattern: &CableExpression) -> Result<SkeinValue> {
    let n = b.components().len();
    cable_components(b, &vec![pattern.clone(); n])
}

/// Match each two-strand idempotent with the partition whose meridian
/// eigenvalue it realises, by encircling its closure with a meridian.
pub fn label_idempotents() -> Result<BTreeMap<Partition, CableExpression>> {
    static LABELS: OnceLock<Result<BTreeMap<Partition, CableExpression>>> = OnceLock::new();
    LABELS.get_or_init(compute_labels).clone()
}

fn compute_labels() -> Result<BTreeMap<Partition, CableExpression>> {
    let (plus, minus) = two_strand_idempotents();
    let candidates = [Partition::row(2), Partition::column(2)];
    let mut out = BTreeMap::new();
    for e in [plus, minus] {
        let encircled = cable_components(&BraidWord::hopf(), &[e.clone(), CableExpression::single_strand()])?;
        let bare = cable(&BraidWord::unknot(), &e)?;
        let matches: Vec<&Partition> =
            candidates.iter().filter(|l| encircled == &bare * &meridian_eigenvalue(l)).collect();
        match matches.as_slice() {
            [l] if !out.contains_key(*l) => {
                out.insert((*l).clone(), e);
            }
            _ => {
                return Err(Error::Inconsistent(format!(
                    "idempotent matched {} meridian eigenvalues",
                    matches.len()
                )))
            }
        }
    }
    Ok(out)
}

/// Pattern realising `W_lambda` for `|lambda| <= 2`.
pub fn pattern_for(lambda: &Partition) -> Result<CableExpression> {
    match lambda.size() {
        0 => Ok(CableExpression::empty()),
        1 => Ok(CableExpression::single_strand()),
        2 => Ok(label_idempotents()?[lambda].clone()),
        n => Err(Error::ColorScope(n)),
    }
}

/// `theta_lambda = a^|lambda| q^(sum of contents)`, the scalar by which one
/// positive full twist of framing acts on `W_lambda`.
pub fn twist_eigenvalue(lambda: &Partition) -> Exp {
    Exp::new(lambda.size() as i32, 2 * lambda.total_content())
}

/// `prod_c theta_{lambda_c}^{w_c}` over components with self-writhe `w_c`.
pub fn framing_monomial(b: &BraidWord, colors: &[Partition]) -> SkeinValue {
    let mut e = Exp::new(0, 0);
    for (w, l) in b.self_writhes().into_iter().zip(colors) {
        let t = twist_eigenvalue(l);
        e = e + Exp::new(t.a * w, t.q2 * w);
    }
    SkeinValue::from(HalfLaurent::term(1.into(), e))
}

/// Framed value of the closure of `b` with component `c` coloured by `colors[c]`.
pub fn colored_homfly_components(b: &BraidWord, colors: &[Partition]) -> Result<SkeinValue> {
    let patterns = colors.iter().map(pattern_for).collect::<Result<Vec<_>>>()?;
    cable_components(b, &patterns)
}

/// Framed `lambda`-coloured value of the closure of `b`, every component
/// carrying `lambda`.
pub fn colored_homfly(b: &BraidWord, lambda: &Partition) -> Result<SkeinValue> {
    if !(1..=2).contains(&lambda.size()) {
        return Err(Error::ColorScope(lambda.size()));
    }
    cable(b, &pattern_for(lambda)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Blackboard framing of the braid closure.
    #[default]
    Framed,
    /// Framing contribution divided out; the unknot evaluates to `O`.
    Unframed,
}

/// A value together with the framing monomial separating its framed and
/// unframed normalisations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredEvaluation {
    pub value: SkeinValue,
    pub framing_monomial: SkeinValue,
    pub normalization: Normalization,
}

impl ColoredEvaluation {
    fn build(framed: SkeinValue, framing_monomial: SkeinValue, normalization: Normalization) -> Result<Self> {
        let value = match normalization {
            Normalization::Framed => framed,
            Normalization::Unframed => framed.div(&framing_monomial)?,
        };
        Ok(ColoredEvaluation { value, framing_monomial, normalization })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.to_string(),
            "framing_monomial": self.framing_monomial.to_string(),
            "normalization": self.normalization,
        })
    }
}

/// Uncoloured value; the unframed form divides by `a^writhe`.
pub fn homfly_evaluation(b: &BraidWord, normalization: Normalization) -> Result<ColoredEvaluation> {
    let framed = Engine::default().evaluate(b)?;
    let monomial = SkeinValue::from(HalfLaurent::monomial(1, b.writhe(), 0));
    ColoredEvaluation::build(framed, monomial, normalization)
}

/// Coloured value; the unframed form divides by [`framing_monomial`].
pub fn colored_evaluation(
    b: &BraidWord,
    lambda: &Partition,
    normalization: Normalization,
) -> Result<ColoredEvaluation> {
    let framed = colored_homfly(b, lambda)?;
    let colors = vec![lambda.clone(); b.components().len()];
    ColoredEvaluation::build(framed, framing_monomial(b, &colors), normalization)
}
