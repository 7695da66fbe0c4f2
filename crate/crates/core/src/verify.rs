//! Named, reproducible checks of the identities implemented by the crate.
//!
//! Every check accepts an optional [`Fixture`] that corrupts its target
//! identity; a correct suite fails under the matching fixture.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::annulus::{
    build_psi, meridian_eigenvalue, ov_operator_apply_with, quantum_dimension, AnnulusElement, Factor, Gamma,
    Orientation,
};
use crate::coefficients::{HalfLaurent, SkeinValue};
use crate::combinatorics::{cauchy_mismatch, Partition};
use crate::error::{Error, Result};
use crate::homfly::{
    cable, cable_components, framing_monomial, pattern_for, BraidWord, CableExpression, Engine, EngineOptions,
    ResolutionOrder,
};
use crate::ov::{normalize_unknot, ConstraintSystem};

pub const DEFAULT_SEED: u64 = 20_240_517;
pub const DEFAULT_MAX_DEGREE: usize = 6;

/// Deliberate corruption of one identity, for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    /// Replace `c_lambda(q)` by `c_lambda(q^(-1))` on the first tensor factor
    /// and in the expected meridian eigenvalue.
    FlipContentSign,
    /// Compare `<W_lambda>` rather than `<W_lambda'>` with the conjugated evaluation.
    DropConjugate,
    /// Use weight 1 instead of `1/n` in the exponential.
    UnitCauchyWeights,
    /// Exchange the patterns for `(2)` and `(1,1)`.
    SwapIdempotentLabels,
    /// Use `sum q^|c|` in place of the content polynomial.
    AbsoluteContent,
    /// Flip one crossing on the right-hand side of each braid identity.
    MutateBraids,
}

impl Fixture {
    pub const ALL: [Fixture; 6] = [
        Fixture::FlipContentSign,
        Fixture::DropConjugate,
        Fixture::UnitCauchyWeights,
        Fixture::SwapIdempotentLabels,
        Fixture::AbsoluteContent,
        Fixture::MutateBraids,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub degree: usize,
    pub max_degree: usize,
    pub seed: u64,
    /// Number of random braid identities.
    pub battery_size: usize,
    pub fixture: Option<Fixture>,
}

impl SuiteConfig {
    pub fn new(degree: usize) -> Self {
        SuiteConfig { degree, max_degree: DEFAULT_MAX_DEGREE, seed: DEFAULT_SEED, battery_size: 40, fixture: None }
    }

    fn has(&self, f: Fixture) -> bool {
        self.fixture == Some(f)
    }

    fn deviation(&self) -> impl Fn(Factor, &Partition) -> SkeinValue + Sync {
        let flip = self.has(Fixture::FlipContentSign);
        move |factor, l| {
            let c = l.content_polynomial();
            let c = if flip && factor == Factor::First { c.invert_q() } else { c };
            SkeinValue::from(&(&HalfLaurent::a() * &HalfLaurent::z()) * &c)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// The nonvanishing quantity or mismatching pair behind a failure.
    pub witness: Option<String>,
    pub detail: String,
    pub seed: u64,
    pub runtime_ms: f64,
}

impl CheckReport {
    pub fn to_json(&self, include_runtime: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "check": self.check,
            "status": if self.passed { "pass" } else { "fail" },
            "witness": self.witness,
            "detail": self.detail,
            "seed": self.seed,
        });
        if include_runtime {
            v["runtime_ms"] = serde_json::json!(self.runtime_ms);
        }
        v
    }
}

type Outcome = Result<std::result::Result<String, String>>;

type CheckFn = fn(&SuiteConfig) -> Outcome;

pub const CHECK_NAMES: [&str; 10] = [
    "meridian_diagonal",
    "conjugation_identity",
    "cauchy_identity",
    "ov_annihilation",
    "kernel_dimension",
    "unknot_normalization",
    "cabled_unknot",
    "hopf_eigenvalue",
    "content_injectivity",
    "braid_battery",
];

fn checks() -> [(&'static str, CheckFn); 10] {
    [
        (CHECK_NAMES[0], meridian_diagonal),
        (CHECK_NAMES[1], conjugation_identity),
        (CHECK_NAMES[2], cauchy_identity),
        (CHECK_NAMES[3], ov_annihilation),
        (CHECK_NAMES[4], kernel_dimension),
        (CHECK_NAMES[5], unknot_normalization),
        (CHECK_NAMES[6], cabled_unknot),
        (CHECK_NAMES[7], hopf_eigenvalue),
        (CHECK_NAMES[8], content_injectivity),
        (CHECK_NAMES[9], braid_battery_check),
    ]
}

/// Run every check in parallel; reports come back in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    if cfg.degree > cfg.max_degree {
        return Err(Error::DegreeScope { what: "the verification suite", degree: cfg.degree, max: cfg.max_degree });
    }
    checks().par_iter().map(|(name, f)| run_one(name, *f, cfg)).collect()
}

/// Run the check called `name`.
pub fn run_check(name: &str, cfg: &SuiteConfig) -> Result<CheckReport> {
    let (name, f) = checks()
        .into_iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Inconsistent(format!("no check named `{name}`")))?;
    run_one(name, f, cfg)
}

fn run_one(name: &str, f: CheckFn, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let outcome = f(cfg);
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let (passed, witness, detail) = match outcome {
        Ok(Ok(detail)) => (true, None, detail),
        Ok(Err(witness)) => (false, Some(witness), "identity does not hold".to_string()),
        Err(e @ Error::ReductionLimit { .. }) => return Err(e),
        Err(e) => (false, Some(e.to_string()), "check raised an error".to_string()),
    };
    Ok(CheckReport { check: name.to_string(), passed, witness, detail, seed: cfg.seed, runtime_ms })
}

fn mismatch(what: impl std::fmt::Display, expected: &SkeinValue, got: &SkeinValue) -> String {
    format!("{what}: expected {expected}, got {got}")
}

fn meridian_diagonal(cfg: &SuiteConfig) -> Outcome {
    let parts = Partition::up_to(cfg.degree);
    let mut x = AnnulusElement::zero();
    for l in &parts {
        x.add_term(l.clone(), &SkeinValue::one());
    }
    let y = x.meridian_apply();
    if y.terms().len() != parts.len() {
        return Ok(Err(format!("image has {} terms, expected {}", y.terms().len(), parts.len())));
    }
    let flip = cfg.has(Fixture::FlipContentSign);
    for l in &parts {
        let mut c = HalfLaurent::zero();
        for cell in l.cells() {
            let e = if flip { -cell.content } else { cell.content };
            c += &HalfLaurent::monomial(1, 0, 2 * e);
        }
        let expected = &SkeinValue::unknot() + &SkeinValue::from(&(&HalfLaurent::a() * &HalfLaurent::z()) * &c);
        let got = y.coeff(l);
        if got != expected {
            return Ok(Err(mismatch(l, &expected, &got)));
        }
    }
    Ok(Ok(format!("{} partitions", parts.len())))
}

fn conjugation_identity(cfg: &SuiteConfig) -> Outcome {
    let parts = Partition::up_to(cfg.degree);
    for l in &parts {
        let other = if cfg.has(Fixture::DropConjugate) { l.clone() } else { l.conjugate() };
        let lhs = quantum_dimension(&other, Orientation::Standard);
        let rhs = quantum_dimension(l, Orientation::Conjugated);
        if lhs != rhs {
            return Ok(Err(mismatch(l, &lhs, &rhs)));
        }
    }
    Ok(Ok(format!("{} partitions", parts.len())))
}

fn cauchy_identity(cfg: &SuiteConfig) -> Outcome {
    let unit = cfg.has(Fixture::UnitCauchyWeights);
    let weight = |n: usize| if unit { SkeinValue::one() } else { SkeinValue::ratio(1, n as i64).unwrap() };
    Ok(match cauchy_mismatch(cfg.degree, weight) {
        None => Ok(format!("degree {}", cfg.degree)),
        Some(((mu, nu), l, r)) => Err(format!("p{mu} (x) p{nu}: schur side {l}, exponential side {r}")),
    })
}

fn ov_annihilation(cfg: &SuiteConfig) -> Outcome {
    let psi = build_psi(cfg.degree, Gamma::Formal);
    let image = ov_operator_apply_with(&psi, cfg.deviation()).identify();
    Ok(match image.terms().iter().next() {
        None => Ok(format!("{} terms annihilated", psi.terms().len())),
        Some(((l, m), c)) => Err(format!("{l} (x) {m}: {}", c.render(Default::default()))),
    })
}

fn kernel_dimension(cfg: &SuiteConfig) -> Outcome {
    let mut dims = Vec::new();
    for d in 0..=cfg.degree {
        let sys = ConstraintSystem::with_deviation(d, d, cfg.deviation());
        let kernel = sys.kernel();
        let expected = Partition::all(d).len();
        if kernel.len() != expected {
            return Ok(Err(format!("degree {d}: kernel dimension {}, expected {expected}", kernel.len())));
        }
        if let Some(x) = kernel.iter().find(|x| !x.is_diagonal()) {
            return Ok(Err(format!("degree {d}: off-diagonal kernel vector {x}")));
        }
        dims.push(kernel.len().to_string());
    }
    Ok(Ok(format!("dimensions {}", dims.join(","))))
}

fn unknot_normalization(cfg: &SuiteConfig) -> Outcome {
    let r = normalize_unknot(cfg.degree)?;
    for (l, c) in &r.coefficients {
        if *c != Gamma::Formal.power(l.size()) {
            return Ok(Err(format!("{l}: coefficient {}", c.render(Default::default()))));
        }
    }
    let consistent: Vec<_> = r.branches.iter().filter(|b| b.consistent).collect();
    if cfg.degree >= 2 {
        if consistent.len() != 1 {
            return Ok(Err(format!("{} consistent closure branches", consistent.len())));
        }
        let both = r.branches.iter().find(|b| {
            b.branch.first == Orientation::Conjugated && b.branch.second == Orientation::Conjugated
        });
        if !both.is_some_and(|b| b.first_non_monomial && b.second_non_monomial) {
            return Ok(Err("conjugated branch not rejected by a non-monomial coefficient".into()));
        }
    }
    if !r.gamma_relation_holds() {
        return Ok(Err(format!("a2 gamma1 + a1 gamma2 = {}", r.gamma_relation.render(Default::default()))));
    }
    let image = ov_operator_apply_with(&r.psi, cfg.deviation()).identify();
    if let Some(((l, m), c)) = image.terms().iter().next() {
        return Ok(Err(format!("normalised solution not annihilated at {l} (x) {m}: {}", c.render(Default::default()))));
    }
    Ok(Ok(format!("{} coefficients equal gamma^|lambda|", r.coefficients.len())))
}

fn pattern(cfg: &SuiteConfig, l: &Partition) -> Result<CableExpression> {
    if cfg.has(Fixture::SwapIdempotentLabels) && l.size() == 2 {
        let other = if l.len() == 1 { Partition::column(2) } else { Partition::row(2) };
        return pattern_for(&other);
    }
    pattern_for(l)
}

fn small_colors(degree: usize) -> Vec<Partition> {
    Partition::up_to(degree.min(2)).into_iter().filter(|l| !l.is_empty()).collect()
}

fn cabled_unknot(cfg: &SuiteConfig) -> Outcome {
    let colors = small_colors(cfg.degree);
    let b = BraidWord::unknot();
    for l in &colors {
        let framed = cable(&b, &pattern(cfg, l)?)?;
        let got = framed.div(&framing_monomial(&b, std::slice::from_ref(l)))?;
        let expected = quantum_dimension(l, Orientation::Standard);
        if got != expected {
            return Ok(Err(mismatch(l, &expected, &got)));
        }
    }
    Ok(Ok(format!("{} colours", colors.len())))
}

fn hopf_eigenvalue(cfg: &SuiteConfig) -> Outcome {
    let colors = small_colors(cfg.degree);
    for l in &colors {
        let p = pattern(cfg, l)?;
        let encircled = cable_components(&BraidWord::hopf(), &[p.clone(), CableExpression::single_strand()])?;
        let bare = cable(&BraidWord::unknot(), &p)?;
        let expected = &meridian_eigenvalue(l) * &bare;
        if encircled != expected {
            return Ok(Err(mismatch(l, &expected, &encircled)));
        }
    }
    Ok(Ok(format!("{} colours", colors.len())))
}

fn content_injectivity(cfg: &SuiteConfig) -> Outcome {
    let absolute = cfg.has(Fixture::AbsoluteContent);
    let mut seen: HashMap<HalfLaurent, Partition> = HashMap::new();
    let parts = Partition::up_to(cfg.degree);
    for l in &parts {
        let key = if absolute {
            l.cells().iter().map(|c| HalfLaurent::monomial(1, 0, 2 * c.content.abs())).fold(HalfLaurent::zero(), |a, b| a + b)
        } else {
            l.content_polynomial()
        };
        if let Some(prev) = seen.insert(key, l.clone()) {
            return Ok(Err(format!("{prev} and {l} share a content polynomial")));
        }
    }
    Ok(Ok(format!("{} partitions", parts.len())))
}

fn braid_battery_check(cfg: &SuiteConfig) -> Outcome {
    let battery = BatteryConfig { count: cfg.battery_size, seed: cfg.seed, ..BatteryConfig::default() };
    let outcomes = braid_battery(&battery, cfg.has(Fixture::MutateBraids))?;
    Ok(match outcomes.iter().find(|o| !o.holds) {
        None => Ok(format!("{} identities", outcomes.len())),
        Some(o) => Err(format!("{:?} on {}", o.kind, o.braid)),
    })
}

/// Kinds of identity exercised by [`braid_battery`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// `sigma_i sigma_j = sigma_j sigma_i` for `|i - j| >= 2`.
    FarCommutation,
    /// `sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}`.
    BraidRelation,
    /// Closure of `w` equals closure of `g w g^(-1)`.
    Conjugation,
    /// Stabilisation multiplies the value by `a^(+-1)`.
    Stabilization,
    /// `V(.. sigma ..) - V(.. sigma^(-1) ..) = z V(.. ..)`.
    SkeinTriple,
    /// Random resolution order without simplification agrees with the default.
    Confluence,
}

const KINDS: [IdentityKind; 6] = [
    IdentityKind::FarCommutation,
    IdentityKind::BraidRelation,
    IdentityKind::Conjugation,
    IdentityKind::Stabilization,
    IdentityKind::SkeinTriple,
    IdentityKind::Confluence,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryConfig {
    pub count: usize,
    pub max_strands: usize,
    pub max_crossings: usize,
    /// Word length cap for the unsimplified engine in confluence identities.
    pub max_plain_crossings: usize,
    pub seed: u64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { count: 200, max_strands: 5, max_crossings: 14, max_plain_crossings: 9, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub kind: IdentityKind,
    /// The braid on the left-hand side.
    pub braid: BraidWord,
    /// Largest crossing count among the braids evaluated.
    pub crossings: usize,
    pub holds: bool,
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<i32> {
    if n < 2 {
        return Vec::new();
    }
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

fn sign(rng: &mut ChaCha8Rng) -> i32 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// One identity `lhs = factor * V(rhs)`.
struct Identity {
    kind: IdentityKind,
    lhs: BraidWord,
    lhs_value: Box<dyn FnOnce(&mut Engine) -> Result<SkeinValue>>,
    rhs: BraidWord,
    factor: SkeinValue,
}

fn generate(kind: IdentityKind, rng: &mut ChaCha8Rng, cfg: &BatteryConfig) -> Result<Identity> {
    let max_n = cfg.max_strands;
    let max_len = cfg.max_crossings;
    let plain = |b: BraidWord| -> Box<dyn FnOnce(&mut Engine) -> Result<SkeinValue>> {
        Box::new(move |e: &mut Engine| e.evaluate(&b))
    };
    match kind {
        IdentityKind::FarCommutation if max_n >= 4 && max_len >= 2 => {
            let n = rng.gen_range(4..=max_n);
            let i = rng.gen_range(1..n as i32 - 2);
            let j = rng.gen_range(i + 2..n as i32);
            let (si, sj) = (i * sign(rng), j * sign(rng));
            let len = rng.gen_range(0..=max_len - 2);
            let u = random_word(rng, n, len);
            let cut = rng.gen_range(0..=u.len());
            let (pre, post) = u.split_at(cut);
            let lhs = BraidWord::new(n, [pre, &[si, sj], post].concat())?;
            let rhs = BraidWord::new(n, [pre, &[sj, si], post].concat())?;
            Ok(Identity { kind, lhs: lhs.clone(), lhs_value: plain(lhs), rhs, factor: SkeinValue::one() })
        }
        IdentityKind::BraidRelation if max_n >= 3 && max_len >= 3 => {
            let n = rng.gen_range(3..=max_n);
            let i = rng.gen_range(1..n as i32 - 1);
            let s = sign(rng);
            let len = rng.gen_range(0..=max_len - 3);
            let u = random_word(rng, n, len);
            let cut = rng.gen_range(0..=u.len());
            let (pre, post) = u.split_at(cut);
            let lhs = BraidWord::new(n, [pre, &[s * i, s * (i + 1), s * i], post].concat())?;
            let rhs = BraidWord::new(n, [pre, &[s * (i + 1), s * i, s * (i + 1)], post].concat())?;
            Ok(Identity { kind, lhs: lhs.clone(), lhs_value: plain(lhs), rhs, factor: SkeinValue::one() })
        }
        IdentityKind::Conjugation if max_len >= 2 => {
            let n = rng.gen_range(2..=max_n.max(2));
            let k = rng.gen_range(1..=(max_len / 2).min(3));
            let len = rng.gen_range(0..=max_len - 2 * k);
            let w = BraidWord::new(n, random_word(rng, n, len))?;
            let g = random_word(rng, n, k);
            let rhs = w.conjugate_by(&g)?;
            Ok(Identity { kind, lhs: w.clone(), lhs_value: plain(w), rhs, factor: SkeinValue::one() })
        }
        IdentityKind::Stabilization if max_len >= 1 => {
            let n = rng.gen_range(1..max_n.max(2));
            let len = rng.gen_range(0..max_len);
            let w = BraidWord::new(n, random_word(rng, n, len))?;
            let s = sign(rng);
            let lhs = w.stabilize(s);
            let factor = SkeinValue::from(HalfLaurent::monomial(1, s, 0));
            Ok(Identity { kind, lhs: lhs.clone(), lhs_value: plain(lhs), rhs: w, factor })
        }
        IdentityKind::SkeinTriple if max_len >= 1 => {
            let n = rng.gen_range(2..=max_n.max(2));
            let len = rng.gen_range(1..=max_len);
            let w = random_word(rng, n, len);
            let p = rng.gen_range(0..w.len());
            let g = w[p].abs();
            let mut plus = w.clone();
            plus[p] = g;
            let mut minus = w.clone();
            minus[p] = -g;
            let mut deleted = w;
            deleted.remove(p);
            let lhs = BraidWord::new(n, plus)?;
            let minus = BraidWord::new(n, minus)?;
            let l2 = lhs.clone();
            let lhs_value = Box::new(move |e: &mut Engine| Ok(&e.evaluate(&l2)? - &e.evaluate(&minus)?));
            Ok(Identity { kind, lhs, lhs_value, rhs: BraidWord::new(n, deleted)?, factor: SkeinValue::z() })
        }
        IdentityKind::Confluence => {
            let n = rng.gen_range(2..=max_n.max(2));
            let len = rng.gen_range(0..=cfg.max_plain_crossings.min(max_len));
            let w = BraidWord::new(n, random_word(rng, n, len))?;
            let seed = rng.gen();
            let w2 = w.clone();
            let lhs_value = Box::new(move |_: &mut Engine| {
                let opts = EngineOptions { order: ResolutionOrder::Random { seed }, ..EngineOptions::plain() };
                Engine::new(opts).evaluate(&w2)
            });
            Ok(Identity { kind, lhs: w.clone(), lhs_value, rhs: w, factor: SkeinValue::one() })
        }
        _ => Err(Error::InvalidBraid(format!("battery bounds too small for {kind:?}"))),
    }
}

/// Flip the first crossing of `b`, or add a positive kink if it has none.
fn mutate(b: &BraidWord) -> BraidWord {
    let mut w = b.word().to_vec();
    match w.first_mut() {
        Some(g) => {
            *g = -*g;
            BraidWord::new(b.strands(), w).expect("same generators")
        }
        None => b.stabilize(1),
    }
}

/// Randomised identities on braids within the configured bounds. Identity
/// `k` uses its own generator seeded from `(seed, k)`, so results do not
/// depend on scheduling.
pub fn braid_battery(cfg: &BatteryConfig, mutated: bool) -> Result<Vec<IdentityOutcome>> {
    (0..cfg.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let kind = KINDS[k % KINDS.len()];
            let id = generate(kind, &mut rng, cfg)?;
            let mut engine = Engine::default();
            let rhs = if mutated { mutate(&id.rhs) } else { id.rhs.clone() };
            let crossings = id.lhs.len().max(rhs.len());
            let l = (id.lhs_value)(&mut engine)?;
            let r = &id.factor * &engine.evaluate(&rhs)?;
            Ok(IdentityOutcome { kind: id.kind, braid: id.lhs, crossings, holds: l == r })
        })
        .collect()
}
