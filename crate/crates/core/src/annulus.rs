//! Positive part of the skein of the solid torus in the `W_lambda` basis.
//!
//! `W_lambda` is the eigenvector of the meridian map `P_{1,0}` with eigenvalue
//! `O + a z c_lambda(q)`, where `O` is the framed unknot and `c_lambda` the
//! content polynomial. Tensor squares carry formal framing variables `a1`, `a2`
//! and a formal signed monomial `gamma` as tags on their coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficients::{Exp, HalfLaurent, SkeinValue};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// Which of the two displayed evaluations of `W_lambda` in the three-sphere to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Standard,
    Conjugated,
}

/// Rendering style for skein elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Unicode,
    Ascii,
}

impl Notation {
    fn dot(self) -> &'static str {
        match self {
            Notation::Unicode => "·",
            Notation::Ascii => "*",
        }
    }

    fn tensor(self) -> &'static str {
        match self {
            Notation::Unicode => "⊗",
            Notation::Ascii => " (x) ",
        }
    }

    pub fn basis(self, lambda: &Partition) -> String {
        match self {
            Notation::Unicode if lambda.is_empty() => "W_∅".to_string(),
            Notation::Unicode => {
                let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
                format!("W_({})", parts.join(","))
            }
            Notation::Ascii => format!("W{lambda}"),
        }
    }

    pub fn unknot(self) -> &'static str {
        match self {
            Notation::Unicode => "○",
            Notation::Ascii => "O",
        }
    }

    fn gamma(self) -> &'static str {
        match self {
            Notation::Unicode => "γ",
            Notation::Ascii => "gamma",
        }
    }

    fn a_tag(self, i: u8) -> String {
        match (self, i) {
            (Notation::Unicode, 1) => "a₁".into(),
            (Notation::Unicode, _) => "a₂".into(),
            (Notation::Ascii, i) => format!("a{i}"),
        }
    }
}

/// The framed unknot `O = (a - a^(-1)) / (q^(1/2) - q^(-1/2))`.
pub fn unknot() -> SkeinValue {
    SkeinValue::unknot()
}

/// `a z c_lambda(q)`: the meridian eigenvalue minus the unknot.
pub fn meridian_deviation(lambda: &Partition) -> SkeinValue {
    SkeinValue::from(&(&HalfLaurent::a() * &HalfLaurent::z()) * &lambda.content_polynomial())
}

/// `O + a z c_lambda(q)`.
pub fn meridian_eigenvalue(lambda: &Partition) -> SkeinValue {
    &unknot() + &meridian_deviation(lambda)
}

/// Value of `W_lambda` in the skein of the three-sphere, as a product over
/// boxes of `(a q^(c/2) - a^(-1) q^(-c/2)) / (q^(h/2) - q^(-h/2))`. The
/// conjugated orientation uses `q^(-c/2)` in the numerator.
pub fn quantum_dimension(lambda: &Partition, orientation: Orientation) -> SkeinValue {
    let mut num = HalfLaurent::one();
    let mut den = HalfLaurent::one();
    for cell in lambda.cells() {
        let c = match orientation {
            Orientation::Standard => cell.content,
            Orientation::Conjugated => -cell.content,
        };
        let factor = &HalfLaurent::monomial(1, 1, c) - &HalfLaurent::monomial(1, -1, -c);
        num = &num * &factor;
        den = &den * &HalfLaurent::q_bracket(cell.hook as i32);
    }
    SkeinValue::new(num, den).expect("hook lengths are positive")
}

fn add_value<K: Ord + Clone>(map: &mut BTreeMap<K, SkeinValue>, key: K, c: &SkeinValue) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Finite combination of `W_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnulusElement {
    terms: BTreeMap<Partition, SkeinValue>,
}

impl AnnulusElement {
    pub fn zero() -> Self {
        AnnulusElement::default()
    }

    pub fn basis(lambda: Partition) -> Self {
        let mut x = AnnulusElement::zero();
        x.add_term(lambda, &SkeinValue::one());
        x
    }

    pub fn add_term(&mut self, lambda: Partition, c: &SkeinValue) {
        add_value(&mut self.terms, lambda, c);
    }

    pub fn terms(&self) -> &BTreeMap<Partition, SkeinValue> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> SkeinValue {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &SkeinValue) -> Self {
        let mut out = AnnulusElement::zero();
        for (l, d) in &self.terms {
            out.add_term(l.clone(), &(c * d));
        }
        out
    }

    /// Part of degree `d`, i.e. supported on partitions of `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        AnnulusElement {
            terms: self.terms.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    /// Apply the meridian map `P_{1,0}`.
    pub fn meridian_apply(&self) -> Self {
        let mut out = AnnulusElement::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), &(c * &meridian_eigenvalue(l)));
        }
        out
    }

    pub fn eval_s3(&self, orientation: Orientation) -> SkeinValue {
        self.terms.iter().map(|(l, c)| c * &quantum_dimension(l, orientation)).sum()
    }

    pub fn render(&self, notation: Notation) -> String {
        render_sum(self.terms.iter().map(|(l, c)| (notation.basis(l), coeff_prefix(c, notation))))
    }
}

impl std::ops::Add<&AnnulusElement> for &AnnulusElement {
    type Output = AnnulusElement;
    fn add(self, o: &AnnulusElement) -> AnnulusElement {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c);
        }
        out
    }
}

impl fmt::Display for AnnulusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Unicode))
    }
}

fn coeff_prefix(c: &SkeinValue, notation: Notation) -> String {
    if c.is_one() {
        String::new()
    } else {
        format!("({c}){}", notation.dot())
    }
}

fn render_sum(items: impl Iterator<Item = (String, String)>) -> String {
    let parts: Vec<String> = items.map(|(body, prefix)| format!("{prefix}{body}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Formal monomial `a1^a1 * a2^a2 * gamma^gamma` attached to a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Tag {
    pub a1: i32,
    pub a2: i32,
    pub gamma: u32,
}

impl Tag {
    pub const ONE: Tag = Tag { a1: 0, a2: 0, gamma: 0 };

    pub const fn new(a1: i32, a2: i32, gamma: u32) -> Self {
        Tag { a1, a2, gamma }
    }

    fn render(self, notation: Notation) -> String {
        let mut factors = Vec::new();
        let pow = |base: String, k: i64| match k {
            1 => base,
            k if k > 0 => format!("{base}^{k}"),
            k => format!("{base}^({k})"),
        };
        if self.gamma != 0 {
            factors.push(pow(notation.gamma().to_string(), self.gamma as i64));
        }
        if self.a1 != 0 {
            factors.push(pow(notation.a_tag(1), self.a1 as i64));
        }
        if self.a2 != 0 {
            factors.push(pow(notation.a_tag(2), self.a2 as i64));
        }
        factors.join(notation.dot())
    }
}

impl std::ops::Mul for Tag {
    type Output = Tag;
    fn mul(self, o: Tag) -> Tag {
        Tag::new(self.a1 + o.a1, self.a2 + o.a2, self.gamma + o.gamma)
    }
}

/// Polynomial in the formal tags with [`SkeinValue`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaggedCoeff {
    terms: BTreeMap<Tag, SkeinValue>,
}

impl TaggedCoeff {
    pub fn zero() -> Self {
        TaggedCoeff::default()
    }

    pub fn tagged(tag: Tag, c: SkeinValue) -> Self {
        let mut out = TaggedCoeff::zero();
        out.add_term(tag, &c);
        out
    }

    pub fn value(c: SkeinValue) -> Self {
        TaggedCoeff::tagged(Tag::ONE, c)
    }

    pub fn add_term(&mut self, tag: Tag, c: &SkeinValue) {
        add_value(&mut self.terms, tag, c);
    }

    pub fn terms(&self) -> &BTreeMap<Tag, SkeinValue> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &SkeinValue) -> Self {
        let mut out = TaggedCoeff::zero();
        for (t, d) in &self.terms {
            out.add_term(*t, &(c * d));
        }
        out
    }

    pub fn mul_tag(&self, tag: Tag) -> Self {
        TaggedCoeff { terms: self.terms.iter().map(|(t, c)| (*t * tag, c.clone())).collect() }
    }

    /// Set `a1 = a2 = a`, folding the framing tags into the coefficient.
    pub fn identify(&self) -> Self {
        let mut out = TaggedCoeff::zero();
        for (t, c) in &self.terms {
            out.add_term(Tag::new(0, 0, t.gamma), &c.shift(Exp::new(t.a1 + t.a2, 0)));
        }
        out
    }

    /// Coefficient of `gamma^k` with no framing tags, if that is the only term.
    pub fn as_single(&self) -> Option<(Tag, &SkeinValue)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().map(|(t, c)| (*t, c)).unwrap())
    }

    pub fn render(&self, notation: Notation) -> String {
        let pieces: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let tag = t.render(notation);
                match (c.is_one(), tag.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => tag,
                    (false, true) => format!("({c})"),
                    (false, false) => format!("({c}){}{tag}", notation.dot()),
                }
            })
            .collect();
        match pieces.len() {
            0 => "0".to_string(),
            _ => pieces.join(" + "),
        }
    }
}

impl std::ops::Add<&TaggedCoeff> for &TaggedCoeff {
    type Output = TaggedCoeff;
    fn add(self, o: &TaggedCoeff) -> TaggedCoeff {
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.add_term(*t, c);
        }
        out
    }
}

impl std::ops::Sub<&TaggedCoeff> for &TaggedCoeff {
    type Output = TaggedCoeff;
    fn sub(self, o: &TaggedCoeff) -> TaggedCoeff {
        self + &o.scale(&SkeinValue::integer(-1))
    }
}

impl std::ops::Mul<&TaggedCoeff> for &TaggedCoeff {
    type Output = TaggedCoeff;
    fn mul(self, o: &TaggedCoeff) -> TaggedCoeff {
        let mut out = TaggedCoeff::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &o.terms {
                out.add_term(*t1 * *t2, &(c1 * c2));
            }
        }
        out
    }
}

/// The parameter `gamma` weighting degree-`d` terms by `gamma^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gamma {
    /// Kept as the formal tag `gamma`.
    #[default]
    Formal,
    /// A concrete signed monomial `sign * a1^a1 * a2^a2`.
    Monomial { sign: i8, a1: i32, a2: i32 },
}

impl Gamma {
    pub const ONE: Gamma = Gamma::Monomial { sign: 1, a1: 0, a2: 0 };

    /// `gamma^d`.
    pub fn power(self, d: usize) -> TaggedCoeff {
        match self {
            Gamma::Formal => TaggedCoeff::tagged(Tag::new(0, 0, d as u32), SkeinValue::one()),
            Gamma::Monomial { sign, a1, a2 } => {
                let s = if sign < 0 && d % 2 == 1 { -1 } else { 1 };
                TaggedCoeff::tagged(Tag::new(a1 * d as i32, a2 * d as i32, 0), SkeinValue::integer(s))
            }
        }
    }
}

/// Which tensor factor an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Finite combination of `W_lambda (x) W_mu` with tagged coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Partition, Partition), TaggedCoeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn basis(lambda: Partition, mu: Partition) -> Self {
        let mut x = TensorElement::zero();
        x.add_term(lambda, mu, &TaggedCoeff::value(SkeinValue::one()));
        x
    }

    pub fn add_term(&mut self, lambda: Partition, mu: Partition, c: &TaggedCoeff) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, mu);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), TaggedCoeff> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition, mu: &Partition) -> TaggedCoeff {
        self.terms.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term has the form `W_lambda (x) W_lambda`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(l, m)| l == m)
    }

    pub fn identify(&self) -> Self {
        let mut out = TensorElement::zero();
        for ((l, m), c) in &self.terms {
            out.add_term(l.clone(), m.clone(), &c.identify());
        }
        out
    }

    /// Close one factor off into the three-sphere, leaving an element of the
    /// other factor.
    pub fn close_factor(&self, factor: Factor, orientation: Orientation) -> BTreeMap<Partition, TaggedCoeff> {
        let mut out: BTreeMap<Partition, TaggedCoeff> = BTreeMap::new();
        for ((l, m), c) in &self.terms {
            let (closed, kept) = match factor {
                Factor::First => (l, m),
                Factor::Second => (m, l),
            };
            let v = c.scale(&quantum_dimension(closed, orientation));
            let slot = out.entry(kept.clone()).or_default();
            *slot = &*slot + &v;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn render(&self, notation: Notation) -> String {
        render_sum(self.terms.iter().map(|((l, m), c)| {
            let body = format!("{}{}{}", notation.basis(l), notation.tensor(), notation.basis(m));
            let prefix = match c.render(notation).as_str() {
                "1" => String::new(),
                r if c.terms().len() == 1 && !r.starts_with('(') => format!("{r}{}", notation.dot()),
                r if c.terms().len() == 1 => format!("{r}{}", notation.dot()),
                r => format!("({r}){}", notation.dot()),
            };
            (body, prefix)
        }))
    }
}

impl std::ops::Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, m), c) in &o.terms {
            out.add_term(l.clone(), m.clone(), c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Unicode))
    }
}

/// Apply `(P_{1,0} - O) (x) a2 - a1 (x) (P_{1,0} - O)`.
pub fn ov_operator_apply(x: &TensorElement) -> TensorElement {
    ov_operator_apply_with(x, |_, l| meridian_deviation(l))
}

/// [`ov_operator_apply`] with the eigenvalue deviation `P_{1,0} - O` on each
/// factor supplied by the caller.
pub fn ov_operator_apply_with(
    x: &TensorElement,
    deviation: impl Fn(Factor, &Partition) -> SkeinValue,
) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((l, m), c) in &x.terms {
        let first = c.mul_tag(Tag::new(0, 1, 0)).scale(&deviation(Factor::First, l));
        let second = c.mul_tag(Tag::new(1, 0, 0)).scale(&deviation(Factor::Second, m));
        out.add_term(l.clone(), m.clone(), &(&first - &second));
    }
    out
}

/// `sum_{|lambda| <= max_degree} gamma^{|lambda|} W_lambda (x) W_lambda`.
pub fn build_psi(max_degree: usize, gamma: Gamma) -> TensorElement {
    let mut out = TensorElement::zero();
    for l in Partition::up_to(max_degree) {
        let c = gamma.power(l.size());
        out.add_term(l.clone(), l, &c);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonTensorTerm {
    left: Partition,
    right: Partition,
    coeff: String,
    a1: i32,
    a2: i32,
    gamma: u32,
}

impl TensorElement {
    /// One entry per `(lambda, mu, framing tag)` with its coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<JsonTensorTerm> = self
            .terms
            .iter()
            .flat_map(|((l, m), c)| {
                c.terms().iter().map(move |(t, v)| JsonTensorTerm {
                    left: l.clone(),
                    right: m.clone(),
                    coeff: v.to_string(),
                    a1: t.a1,
                    a2: t.a2,
                    gamma: t.gamma,
                })
            })
            .collect();
        serde_json::to_value(entries).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let entries: Vec<JsonTensorTerm> =
            serde_json::from_value(v.clone()).map_err(|e| Error::parse(0, e.to_string()))?;
        let mut out = TensorElement::zero();
        for e in entries {
            let c = TaggedCoeff::tagged(Tag::new(e.a1, e.a2, e.gamma), e.coeff.parse()?);
            out.add_term(e.left, e.right, &c);
        }
        Ok(out)
    }
}
