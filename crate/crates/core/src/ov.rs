//! Solving the annihilation constraint `((P - O) (x) a2 - a1 (x) (P - O)) Psi = 0`,
//! fixing the diagonal coefficients from the unknot, and assembling partition
//! functions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annulus::{
    build_psi, meridian_deviation, meridian_eigenvalue, ov_operator_apply, ov_operator_apply_with, quantum_dimension,
    Factor, Gamma, Orientation, Tag, TaggedCoeff, TensorElement,
};
use crate::coefficients::{HalfLaurent, SkeinValue};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::homfly::{colored_homfly_components, framing_monomial, BraidWord};
use crate::linalg::{nullspace, Matrix};

/// The operator restricted to bidegree `(d1, d2)`, with `a1 = a2 = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub bidegree: (usize, usize),
    /// Unknown `n_{lambda,mu}` in column order.
    pub index: Vec<(Partition, Partition)>,
    /// Row `i`, column `j`: coefficient of `index[i]` in the image of `index[j]`.
    pub matrix: Matrix,
}

impl ConstraintSystem {
    pub fn new(d1: usize, d2: usize) -> Self {
        ConstraintSystem::with_deviation(d1, d2, |_, l| meridian_deviation(l))
    }

    /// As [`ConstraintSystem::new`] with the meridian eigenvalue deviation
    /// supplied by the caller.
    pub fn with_deviation(
        d1: usize,
        d2: usize,
        deviation: impl Fn(Factor, &Partition) -> SkeinValue + Sync,
    ) -> Self {
        let index: Vec<(Partition, Partition)> = Partition::all(d1)
            .into_iter()
            .flat_map(|l| Partition::all(d2).into_iter().map(move |m| (l.clone(), m)))
            .collect();
        let columns: Vec<Vec<SkeinValue>> = index
            .par_iter()
            .map(|(l, m)| {
                let image = ov_operator_apply_with(&TensorElement::basis(l.clone(), m.clone()), &deviation).identify();
                index
                    .iter()
                    .map(|(l2, m2)| {
                        let c = image.coeff(l2, m2);
                        c.terms().get(&Tag::ONE).cloned().unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        let n = index.len();
        let matrix = (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect();
        ConstraintSystem { bidegree: (d1, d2), index, matrix }
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    /// Exact kernel basis as tensor elements.
    pub fn kernel(&self) -> Vec<TensorElement> {
        nullspace(&self.matrix, self.index.len())
            .into_iter()
            .map(|v| {
                let mut x = TensorElement::zero();
                for ((l, m), c) in self.index.iter().zip(v) {
                    x.add_term(l.clone(), m.clone(), &TaggedCoeff::value(c));
                }
                x
            })
            .collect()
    }
}

/// Kernel of the operator on bidegree `(d, d)`.
pub fn solve_kernel(d: usize) -> Vec<TensorElement> {
    ConstraintSystem::new(d, d).kernel()
}

/// Certificate that `n_{lambda,mu}` must vanish: the operator acts on
/// `W_lambda (x) W_mu` by `a1 a2 z (c_lambda - c_mu)` once framing variables
/// are identified, and this is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffDiagonal {
    pub lambda: Partition,
    pub mu: Partition,
    /// `c_lambda(q) - c_mu(q)`.
    pub content_difference: HalfLaurent,
    /// `a1 a2 z (c_lambda - c_mu)`.
    pub entry: TaggedCoeff,
}

pub fn offdiagonal_certificate(d: usize) -> Result<Vec<OffDiagonal>> {
    let parts = Partition::all(d);
    let mut out = Vec::new();
    for l in &parts {
        for m in parts.iter().filter(|m| *m != l) {
            let diff = &l.content_polynomial() - &m.content_polynomial();
            let entry = TaggedCoeff::tagged(Tag::new(1, 1, 0), SkeinValue::from(&HalfLaurent::z() * &diff));
            let image = ov_operator_apply(&TensorElement::basis(l.clone(), m.clone())).identify();
            if diff.is_zero() || image.coeff(l, m) != entry.identify() {
                return Err(Error::Inconsistent(format!("operator entry on {l} (x) {m} does not certify vanishing")));
            }
            out.push(OffDiagonal { lambda: l.clone(), mu: m.clone(), content_difference: diff, entry });
        }
    }
    Ok(out)
}

/// How each closed-off factor is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// Orientation when the first factor is closed off into the three-sphere.
    pub first: Orientation,
    /// Orientation when the second factor is closed off.
    pub second: Orientation,
}

/// Outcome of one branch of the unknot normalisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    pub branch: Branch,
    pub consistent: bool,
    /// Smallest partition at which the two closures disagree, if any.
    pub witness: Option<Partition>,
    /// The candidate `n_lambda / gamma^|lambda|` at the witness is not a
    /// monomial in the first framing variable set.
    pub first_non_monomial: bool,
    /// Same for the second.
    pub second_non_monomial: bool,
}

/// Result of [`normalize_unknot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknotNormalization {
    pub psi: TensorElement,
    pub coefficients: BTreeMap<Partition, TaggedCoeff>,
    pub branches: Vec<BranchReport>,
    /// `a2 gamma1 + a1 gamma2` for the operator's framing factors
    /// `gamma1 = a2`, `gamma2 = -a1`.
    pub gamma_relation: TaggedCoeff,
}

impl UnknotNormalization {
    /// `a2 gamma1 + a1 gamma2` vanishes once `a1 = a2`.
    pub fn gamma_relation_holds(&self) -> bool {
        self.gamma_relation.identify().is_zero()
    }
}

/// `<W_lambda'> / <W_lambda>`: the extra factor `n_lambda / gamma^|lambda|`
/// forced by closing off in the conjugated orientation.
pub fn conjugation_ratio(lambda: &Partition) -> SkeinValue {
    quantum_dimension(lambda, Orientation::Conjugated)
        .div(&quantum_dimension(lambda, Orientation::Standard))
        .expect("quantum dimensions are nonzero")
}

/// Fix the diagonal coefficients `n_lambda`, `|lambda| <= n`, from the two
/// ways of closing off one factor of the unknot configuration.
///
/// Closing off a factor in orientation `o` forces `n_lambda = gamma^|lambda| r`
/// with `r = 1` (standard) or `r = <W_lambda'>/<W_lambda>` (conjugated) in the
/// framing variable of the closed factor. A branch is consistent when both
/// closures force the same coefficient, which needs `r` free of `a`.
pub fn normalize_unknot(n: usize) -> Result<UnknotNormalization> {
    let parts = Partition::up_to(n);
    let ratios: Vec<SkeinValue> = parts.par_iter().map(conjugation_ratio).collect();
    let factor = |o: Orientation, k: usize| match o {
        Orientation::Standard => SkeinValue::one(),
        Orientation::Conjugated => ratios[k].clone(),
    };
    let orientations = [Orientation::Standard, Orientation::Conjugated];
    let mut branches = Vec::new();
    for first in orientations {
        for second in orientations {
            let witness = (0..parts.len()).find(|&k| {
                let (r1, r2) = (factor(first, k), factor(second, k));
                !(r1.is_independent_of_a() && r2.is_independent_of_a() && r1 == r2)
            });
            let (first_non_monomial, second_non_monomial) = match witness {
                Some(k) => (!factor(first, k).is_monomial(), !factor(second, k).is_monomial()),
                None => (false, false),
            };
            branches.push(BranchReport {
                branch: Branch { first, second },
                consistent: witness.is_none(),
                witness: witness.map(|k| parts[k].clone()),
                first_non_monomial,
                second_non_monomial,
            });
        }
    }
    let consistent: Vec<&BranchReport> = branches.iter().filter(|b| b.consistent).collect();
    if consistent.is_empty() {
        return Err(Error::Inconsistent("no closure branch admits a common solution".into()));
    }
    let standard = Branch { first: Orientation::Standard, second: Orientation::Standard };
    if consistent.iter().any(|b| b.branch != standard) && n >= 2 {
        return Err(Error::Inconsistent("a non-standard closure branch is consistent".into()));
    }

    let psi = build_psi(n, Gamma::Formal);
    if !ov_operator_apply(&psi).identify().is_zero() {
        return Err(Error::Inconsistent("normalised solution is not annihilated".into()));
    }
    let coefficients = psi.terms().iter().map(|((l, _), c)| (l.clone(), c.clone())).collect();

    let gamma1 = TaggedCoeff::tagged(Tag::new(0, 1, 0), SkeinValue::one());
    let gamma2 = TaggedCoeff::tagged(Tag::new(1, 0, 0), SkeinValue::integer(-1));
    let gamma_relation = &gamma1.mul_tag(Tag::new(0, 1, 0)) + &gamma2.mul_tag(Tag::new(1, 0, 0));

    Ok(UnknotNormalization { psi, coefficients, branches, gamma_relation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Link {
    Unknot,
    Hopf,
}

impl std::str::FromStr for Link {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "unknot" => Ok(Link::Unknot),
            "hopf" => Ok(Link::Hopf),
            other => Err(Error::UnsupportedLink(other.to_string())),
        }
    }
}

impl Link {
    pub fn braid(self) -> BraidWord {
        match self {
            Link::Unknot => BraidWord::unknot(),
            Link::Hopf => BraidWord::hopf(),
        }
    }

    fn max_degree(self) -> usize {
        match self {
            Link::Unknot => usize::MAX,
            Link::Hopf => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCoefficient {
    pub value: SkeinValue,
    pub framing_monomial: SkeinValue,
}

/// `Z = sum_lambda P_{K,lambda} W_lambda` truncated at `|lambda| <= truncation`.
/// For the Hopf link the first component carries `lambda` and the second a
/// single strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFunction {
    pub link: Link,
    pub truncation: usize,
    pub coefficients: BTreeMap<Partition, PartitionCoefficient>,
}

pub fn partition_function(link: Link, n: usize) -> Result<PartitionFunction> {
    if n > link.max_degree() {
        return Err(Error::DegreeScope { what: "the Hopf partition function", degree: n, max: link.max_degree() });
    }
    let b = link.braid();
    let coefficients = Partition::up_to(n)
        .into_par_iter()
        .map(|l| {
            let dim = quantum_dimension(&l, Orientation::Standard);
            let (value, colors) = match link {
                Link::Unknot => (dim, vec![l.clone()]),
                Link::Hopf => (&meridian_eigenvalue(&l) * &dim, vec![l.clone(), Partition::row(1)]),
            };
            let monomial = framing_monomial(&b, &colors);
            if (1..=2).contains(&l.size()) {
                let engine = colored_homfly_components(&b, &colors)?.div(&monomial)?;
                if engine != value {
                    return Err(Error::Inconsistent(format!("cabled value for {l} disagrees with the closed form")));
                }
            }
            Ok((l, PartitionCoefficient { value, framing_monomial: monomial }))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(PartitionFunction { link, truncation: n, coefficients })
}

#[derive(Serialize)]
struct JsonCoefficient<'a> {
    partition: &'a Partition,
    value: String,
    framing_monomial: String,
}

impl PartitionFunction {
    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: Vec<JsonCoefficient> = self
            .coefficients
            .iter()
            .map(|(l, c)| JsonCoefficient {
                partition: l,
                value: c.value.to_string(),
                framing_monomial: c.framing_monomial.to_string(),
            })
            .collect();
        serde_json::json!({ "link": self.link, "truncation": self.truncation, "coefficients": coefficients })
    }
}
