//! Skein reduction of closed braids to descending diagrams.
//!
//! Components are traversed in order of their smallest top position, each from
//! the top of that position. A crossing first met from below is switched with
//! `X+ - X- = z X0`; once every crossing is first met from above, the closure
//! is an unlink whose components carry their self-writhe as framing.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::braid::{cyclic_free_reduce, BraidWord};
use crate::coefficients::{Exp, HalfLaurent, SkeinValue};
use crate::error::{Error, Result};

/// Polynomial in the unknot `O` with Laurent coefficients; entry `k`
/// multiplies `O^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CirclePolynomial {
    coeffs: Vec<HalfLaurent>,
}

impl CirclePolynomial {
    pub fn zero() -> Self {
        CirclePolynomial::default()
    }

    pub fn one() -> Self {
        CirclePolynomial::monomial(0, 0)
    }

    pub fn circle() -> Self {
        CirclePolynomial::monomial(0, 1)
    }

    /// `a^a_power * O^circles`.
    pub fn monomial(a_power: i32, circles: usize) -> Self {
        let mut coeffs = vec![HalfLaurent::zero(); circles + 1];
        coeffs[circles] = HalfLaurent::monomial(1, a_power, 0);
        CirclePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[HalfLaurent] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(HalfLaurent::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn scale(&self, c: &HalfLaurent) -> Self {
        CirclePolynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }.trim()
    }

    pub fn shift_a(&self, k: i32) -> Self {
        CirclePolynomial { coeffs: self.coeffs.iter().map(|x| x.shift(Exp::new(k, 0))).collect() }
    }

    /// Substitute `O = (a - a^(-1)) / (q^(1/2) - q^(-1/2))`.
    pub fn to_value(&self) -> SkeinValue {
        let Some(top) = self.coeffs.len().checked_sub(1) else {
            return SkeinValue::zero();
        };
        let z = HalfLaurent::z();
        let bracket = HalfLaurent::a_bracket();
        let mut num = HalfLaurent::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                num += &(&(c * &bracket.pow(k as u32)) * &z.pow((top - k) as u32));
            }
        }
        SkeinValue::new(num, z.pow(top as u32)).expect("z is nonzero")
    }
}

impl std::ops::Add<&CirclePolynomial> for &CirclePolynomial {
    type Output = CirclePolynomial;
    fn add(self, rhs: &CirclePolynomial) -> CirclePolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        CirclePolynomial { coeffs }.trim()
    }
}

impl std::ops::Mul<&CirclePolynomial> for &CirclePolynomial {
    type Output = CirclePolynomial;
    fn mul(self, rhs: &CirclePolynomial) -> CirclePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return CirclePolynomial::zero();
        }
        let mut coeffs = vec![HalfLaurent::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(x * y);
            }
        }
        CirclePolynomial { coeffs }.trim()
    }
}

/// Which switchable crossing to resolve at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResolutionOrder {
    /// The first one met along the traversal.
    #[default]
    First,
    /// A uniformly random one, from a seeded generator.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Apply free reduction, splitting, destabilisation and memoisation
    /// before resolving. Without it every word is resolved down to
    /// descending diagrams directly.
    pub simplify: bool,
    pub order: ResolutionOrder,
    /// Maximum number of reduction nodes per engine.
    pub node_limit: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { simplify: true, order: ResolutionOrder::First, node_limit: 5_000_000 }
    }
}

impl EngineOptions {
    pub fn plain() -> Self {
        EngineOptions { simplify: false, ..EngineOptions::default() }
    }
}

/// Reusable evaluator; the memo table is private to one engine.
#[derive(Debug)]
pub struct Engine {
    opts: EngineOptions,
    memo: HashMap<(usize, Vec<i32>), CirclePolynomial>,
    nodes: usize,
    rng: Option<ChaCha8Rng>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineOptions::default())
    }
}

impl Engine {
    pub fn new(opts: EngineOptions) -> Self {
        let rng = match opts.order {
            ResolutionOrder::First => None,
            ResolutionOrder::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Engine { opts, memo: HashMap::new(), nodes: 0, rng }
    }

    pub fn nodes_visited(&self) -> usize {
        self.nodes
    }

    pub fn evaluate(&mut self, b: &BraidWord) -> Result<SkeinValue> {
        Ok(self.evaluate_circles(b)?.to_value())
    }

    pub fn evaluate_circles(&mut self, b: &BraidWord) -> Result<CirclePolynomial> {
        self.eval(b.strands(), b.word().to_vec())
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.node_limit {
            return Err(Error::ReductionLimit { limit: self.opts.node_limit });
        }
        Ok(())
    }

    fn eval(&mut self, n: usize, mut word: Vec<i32>) -> Result<CirclePolynomial> {
        self.tick()?;
        if !self.opts.simplify {
            return self.resolve(n, &word);
        }
        cyclic_free_reduce(&mut word);
        if n == 1 {
            return Ok(CirclePolynomial::circle());
        }
        if let Some(i) = (1..n as i32).find(|&i| !word.iter().any(|g| g.abs() == i)) {
            let left: Vec<i32> = word.iter().copied().filter(|g| g.abs() < i).collect();
            let right: Vec<i32> = word.iter().filter(|g| g.abs() > i).map(|&g| g - i * g.signum()).collect();
            let l = self.eval(i as usize, left)?;
            let r = self.eval(n - i as usize, right)?;
            return Ok(&l * &r);
        }
        for gen in [n as i32 - 1, 1] {
            let mut hits = word.iter().enumerate().filter(|(_, g)| g.abs() == gen);
            if let (Some((k, &g)), None) = (hits.next(), hits.next()) {
                word.rotate_left(k + 1);
                word.pop();
                if gen == 1 {
                    for x in &mut word {
                        *x -= x.signum();
                    }
                }
                return Ok(self.eval(n - 1, word)?.shift_a(g.signum()));
            }
        }
        let key = (n, min_rotation(&word));
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.resolve(n, &key.1)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// Switch crossings at a fixed base point until the diagram is
    /// descending. Only the smoothings recurse, on strictly shorter words.
    fn resolve(&mut self, n: usize, word: &[i32]) -> Result<CirclePolynomial> {
        let mut w = word.to_vec();
        let mut acc = CirclePolynomial::zero();
        loop {
            let scan = scan(n, &w);
            if scan.bad.is_empty() {
                return Ok(&acc + &CirclePolynomial::monomial(scan.self_writhe, scan.components));
            }
            self.tick()?;
            let k = match &mut self.rng {
                None => scan.bad[0],
                Some(rng) => scan.bad[rng.gen_range(0..scan.bad.len())],
            };
            let sign = w[k].signum();
            let mut deleted = w.clone();
            deleted.remove(k);
            let smoothed = self.eval(n, deleted)?;
            acc = &acc + &smoothed.scale(&HalfLaurent::z().scale(&sign.into()));
            w[k] = -w[k];
        }
    }
}

struct Scan {
    bad: Vec<usize>,
    components: usize,
    self_writhe: i32,
}

/// Walk the closure; collect crossings first met on the under strand, the
/// number of components and the total self-writhe.
fn scan(n: usize, word: &[i32]) -> Scan {
    let mut first: Vec<Option<usize>> = vec![None; word.len()];
    let mut visited = vec![false; n];
    let mut bad = Vec::new();
    let mut self_writhe = 0;
    let mut components = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let comp = components;
        components += 1;
        let mut p = start;
        loop {
            visited[p] = true;
            for (k, &g) in word.iter().enumerate() {
                let i = g.unsigned_abs() as usize;
                let over = if p + 1 == i {
                    p = i;
                    g > 0
                } else if p == i {
                    p = i - 1;
                    g < 0
                } else {
                    continue;
                };
                match first[k] {
                    None => {
                        first[k] = Some(comp);
                        if !over {
                            bad.push(k);
                        }
                    }
                    Some(c) if c == comp => self_writhe += g.signum(),
                    Some(_) => {}
                }
            }
            if p == start {
                break;
            }
        }
    }
    Scan { bad, components, self_writhe }
}

fn min_rotation(word: &[i32]) -> Vec<i32> {
    let m = word.len();
    (0..m.max(1))
        .map(|r| word[r.min(m)..].iter().chain(&word[..r.min(m)]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Framed value of the closure of `b` in the skein of the three-sphere.
pub fn homfly(b: &BraidWord) -> Result<SkeinValue> {
    Engine::default().evaluate(b)
}
