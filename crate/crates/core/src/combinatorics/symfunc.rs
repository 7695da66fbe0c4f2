use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{character, Partition};
use crate::coefficients::SkeinValue;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schur,
    PowerSum,
    Homogeneous,
    Elementary,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Schur, Basis::PowerSum, Basis::Homogeneous, Basis::Elementary];

    fn name(self) -> &'static str {
        match self {
            Basis::Schur => "schur",
            Basis::PowerSum => "powersum",
            Basis::Homogeneous => "homogeneous",
            Basis::Elementary => "elementary",
        }
    }

    fn letter(self) -> char {
        match self {
            Basis::Schur => 's',
            Basis::PowerSum => 'p',
            Basis::Homogeneous => 'h',
            Basis::Elementary => 'e',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown basis `{s}`")))
    }
}

type Expansion = BTreeMap<Partition, SkeinValue>;

fn add_into(acc: &mut Expansion, key: Partition, c: SkeinValue) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key.clone()).or_default();
    *slot = &*slot + &c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

/// Finitely supported symmetric function in one of the classical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: Expansion,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        let mut f = SymFunc::zero(basis);
        f.add_term(lambda, SkeinValue::one());
        f
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, SkeinValue)>) -> Self {
        let mut f = SymFunc::zero(basis);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Partition, c: SkeinValue) {
        add_into(&mut self.terms, lambda, c);
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    /// Re-express in another basis. Goes through the power-sum basis.
    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let mut cache = TransitionCache::default();
        let mut power = Expansion::new();
        for (lambda, c) in &self.terms {
            for (mu, d) in cache.into_power_sums(self.basis, lambda) {
                add_into(&mut power, mu, c * &d);
            }
        }
        if target == Basis::PowerSum {
            return SymFunc { basis: target, terms: power };
        }
        let mut out = Expansion::new();
        for (mu, c) in &power {
            for (lambda, d) in cache.from_power_sum(target, mu) {
                add_into(&mut out, lambda, c * &d);
            }
        }
        SymFunc { basis: target, terms: out }
    }
}

/// Per-degree transition data, built lazily.
#[derive(Default)]
struct TransitionCache {
    /// inverse of the (h or e) -> p matrix, keyed by basis and degree
    inverses: BTreeMap<(u8, usize), (Vec<Partition>, linalg::Matrix)>,
}

impl TransitionCache {
    fn into_power_sums(&mut self, basis: Basis, lambda: &Partition) -> Expansion {
        match basis {
            Basis::PowerSum => BTreeMap::from([(lambda.clone(), SkeinValue::one())]),
            Basis::Schur => schur_in_power_sums(lambda),
            Basis::Homogeneous | Basis::Elementary => multiplicative_in_power_sums(basis, lambda),
        }
    }

    fn from_power_sum(&mut self, target: Basis, mu: &Partition) -> Expansion {
        match target {
            Basis::PowerSum => BTreeMap::from([(mu.clone(), SkeinValue::one())]),
            Basis::Schur => Partition::all(mu.size())
                .into_iter()
                .map(|l| {
                    let chi = character(&l, mu).expect("equal sizes");
                    (l, SkeinValue::integer(chi))
                })
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            Basis::Homogeneous | Basis::Elementary => {
                let n = mu.size();
                let key = (target as u8, n);
                if !self.inverses.contains_key(&key) {
                    let parts = Partition::all(n);
                    let m: linalg::Matrix = parts
                        .iter()
                        .map(|l| {
                            let row = multiplicative_in_power_sums(target, l);
                            parts.iter().map(|c| row.get(c).cloned().unwrap_or_default()).collect()
                        })
                        .collect();
                    let inv = linalg::inverse(&m).expect("transition matrix is invertible");
                    self.inverses.insert(key, (parts, inv));
                }
                let (parts, inv) = &self.inverses[&key];
                // p_mu = sum_lambda inv[mu][lambda] b_lambda
                let row = parts.iter().position(|p| p == mu).expect("partition of n");
                parts
                    .iter()
                    .zip(&inv[row])
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| (l.clone(), c.clone()))
                    .collect()
            }
        }
    }
}

/// `s_lambda = sum_mu chi_lambda(mu) / z_mu p_mu`.
pub fn schur_in_power_sums(lambda: &Partition) -> BTreeMap<Partition, SkeinValue> {
    Partition::all(lambda.size())
        .into_iter()
        .filter_map(|mu| {
            let chi = character(lambda, &mu).expect("equal sizes");
            (chi != 0).then(|| {
                let c = SkeinValue::ratio(chi, mu.z()).expect("z_mu is positive");
                (mu, c)
            })
        })
        .collect()
}

/// `h_n` or `e_n` in power sums, extended multiplicatively over parts.
fn multiplicative_in_power_sums(basis: Basis, lambda: &Partition) -> Expansion {
    let mut acc: Expansion = BTreeMap::from([(Partition::empty(), SkeinValue::one())]);
    for &n in lambda.parts() {
        let mut next = Expansion::new();
        for mu in Partition::all(n) {
            let sign = if basis == Basis::Elementary && (n - mu.len()) % 2 == 1 { -1 } else { 1 };
            let c = SkeinValue::ratio(sign, mu.z()).expect("z_mu is positive");
            for (nu, d) in &acc {
                add_into(&mut next, nu.union(&mu), &c * d);
            }
        }
        acc = next;
    }
    acc
}

/// Element of `Lambda (x) Lambda` in the power-sum (x) power-sum basis.
pub type PowerSumTensor = BTreeMap<(Partition, Partition), SkeinValue>;

fn tensor_mul(x: &PowerSumTensor, y: &PowerSumTensor, max_degree: usize) -> PowerSumTensor {
    let mut out = PowerSumTensor::new();
    for ((a1, b1), c1) in x {
        for ((a2, b2), c2) in y {
            if a1.size() + a2.size() > max_degree {
                continue;
            }
            let key = (a1.union(a2), b1.union(b2));
            let slot = out.entry(key.clone()).or_default();
            *slot = &*slot + &(c1 * c2);
            if slot.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

/// `exp(sum_n weight(n) p_n (x) p_n)` truncated at total degree `max_degree` in
/// the first factor.
pub fn exponential_side(max_degree: usize, weight: impl Fn(usize) -> SkeinValue) -> PowerSumTensor {
    let x: PowerSumTensor = (1..=max_degree)
        .map(|n| ((Partition::row(n), Partition::row(n)), weight(n)))
        .collect();
    let mut total = PowerSumTensor::from([((Partition::empty(), Partition::empty()), SkeinValue::one())]);
    let mut power = total.clone();
    for k in 1..=max_degree {
        let inv_k = SkeinValue::ratio(1, k as i64).unwrap();
        power = tensor_mul(&power, &x, max_degree);
        power.values_mut().for_each(|c| *c = &*c * &inv_k);
        for (key, c) in &power {
            let slot = total.entry(key.clone()).or_default();
            *slot = &*slot + c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

/// `sum_{|lambda| = d} s_lambda (x) s_lambda` for `d <= max_degree`, expanded in power sums.
pub fn schur_diagonal_side(max_degree: usize) -> PowerSumTensor {
    let mut out = PowerSumTensor::new();
    for lambda in Partition::up_to(max_degree) {
        let s = SymFunc::basis_element(Basis::Schur, lambda).to_basis(Basis::PowerSum);
        for (mu, c1) in s.terms() {
            for (nu, c2) in s.terms() {
                let key = (mu.clone(), nu.clone());
                let slot = out.entry(key).or_default();
                *slot = &*slot + &(c1 * c2);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// First coefficient at which the two sides of the Cauchy identity disagree,
/// as `(key, schur side, exponential side)`.
pub type CauchyMismatch = ((Partition, Partition), SkeinValue, SkeinValue);

pub fn cauchy_mismatch(max_degree: usize, weight: impl Fn(usize) -> SkeinValue) -> Option<CauchyMismatch> {
    let lhs = schur_diagonal_side(max_degree);
    let rhs = exponential_side(max_degree, weight);
    let keys: BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
    keys.into_iter().find_map(|k| {
        let l = lhs.get(&k).cloned().unwrap_or_default();
        let r = rhs.get(&k).cloned().unwrap_or_default();
        (l != r).then_some((k, l, r))
    })
}

/// Checks `sum_lambda s_lambda (x) s_lambda = exp(sum_n p_n (x) p_n / n)` in every
/// degree up to `max_degree`, coefficientwise in power sums.
pub fn cauchy_check(max_degree: usize) -> bool {
    cauchy_mismatch(max_degree, |n| SkeinValue::ratio(1, n as i64).unwrap()).is_none()
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{}{}", self.basis.letter(), l)?;
            } else {
                write!(f, "({c})*{}{}", self.basis.letter(), l)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonSymFunc {
    basis: Basis,
    terms: Vec<JsonTerm>,
}

impl SymFunc {
    pub fn to_json(&self) -> serde_json::Value {
        let j = JsonSymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| JsonTerm { partition: l.clone(), coeff: c.to_string() })
                .collect(),
        };
        serde_json::to_value(j).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: JsonSymFunc =
            serde_json::from_value(v.clone()).map_err(|e| Error::parse(0, e.to_string()))?;
        let mut f = SymFunc::zero(j.basis);
        for t in j.terms {
            f.add_term(t.partition, t.coeff.parse()?);
        }
        Ok(f)
    }
}
