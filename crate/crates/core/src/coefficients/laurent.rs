use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::{IntPoly, UPoly};
use crate::error::{Error, Result};

/// Exponent of a monomial `a^a * q^(q2/2)`.
///
/// The `q` exponent is stored in half-units, so `q2 == 1` is `q^(1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exp {
    pub a: i32,
    pub q2: i32,
}

impl Exp {
    pub const ZERO: Exp = Exp { a: 0, q2: 0 };

    pub const fn new(a: i32, q2: i32) -> Self {
        Exp { a, q2 }
    }
}

impl Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp::new(self.a + o.a, self.q2 + o.q2)
    }
}

impl Sub for Exp {
    type Output = Exp;
    fn sub(self, o: Exp) -> Exp {
        Exp::new(self.a - o.a, self.q2 - o.q2)
    }
}

impl Neg for Exp {
    type Output = Exp;
    fn neg(self) -> Exp {
        Exp::new(-self.a, -self.q2)
    }
}

/// Laurent polynomial in `a` and `q^(1/2)` with integer coefficients.
///
/// Stored sparsely; no stored coefficient is zero and the zero polynomial is
/// the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<Exp, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), Exp::ZERO)
    }

    pub fn term(c: BigInt, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        HalfLaurent { terms }
    }

    /// `c * a^a * q^(q2/2)`.
    pub fn monomial(c: i64, a: i32, q2: i32) -> Self {
        Self::term(BigInt::from(c), Exp::new(a, q2))
    }

    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn a_inv() -> Self {
        Self::monomial(1, -1, 0)
    }

    /// `q^(1/2)`.
    pub fn q_half() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `q^(k/2)`.
    pub fn q_pow_half(k: i32) -> Self {
        Self::monomial(1, 0, k)
    }

    /// `z = q^(1/2) - q^(-1/2)`.
    pub fn z() -> Self {
        Self::q_bracket(1)
    }

    /// `q^(k/2) - q^(-k/2)`.
    pub fn q_bracket(k: i32) -> Self {
        Self::from_terms([(Exp::new(0, k), BigInt::one()), (Exp::new(0, -k), -BigInt::one())])
    }

    /// `a - a^(-1)`.
    pub fn a_bracket() -> Self {
        Self::from_terms([(Exp::new(1, 0), BigInt::one()), (Exp::new(-1, 0), -BigInt::one())])
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut out = HalfLaurent::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exp::ZERO).is_some_and(|c| c.is_one())
    }

    /// A single term `c * a^i * q^(j/2)`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// A signed monomial, i.e. a unit of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Exp::ZERO).cloned(),
            _ => None,
        }
    }

    /// Largest exponent in the (a, q) lexicographic order, with its coefficient.
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum exponent.
    pub fn min_exp(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| Exp::new(m.a.min(e.a), m.q2.min(e.q2))))
    }

    /// Componentwise midpoint of the exponent range, rounded down.
    pub fn center_exp(&self) -> Option<Exp> {
        let lo = self.min_exp()?;
        let (mut hi_a, mut hi_q) = (lo.a, lo.q2);
        for e in self.terms.keys() {
            hi_a = hi_a.max(e.a);
            hi_q = hi_q.max(e.q2);
        }
        Some(Exp::new((lo.a + hi_a).div_euclid(2), (lo.q2 + hi_q).div_euclid(2)))
    }

    /// Gcd of the integer coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn shift(&self, by: Exp) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return HalfLaurent::zero();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Divide every coefficient by `k`; `k` must divide them all.
    pub(crate) fn div_integer(&self, k: &BigInt) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c / k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = HalfLaurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitution `q^(1/2) -> q^(-1/2)`.
    pub fn invert_q(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (Exp::new(e.a, -e.q2), c.clone())).collect(),
        }
    }

    /// Substitution `a -> a^(-1)`.
    pub fn invert_a(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (Exp::new(-e.a, e.q2), c.clone())).collect(),
        }
    }

    /// Whether every term has the same power of `a`.
    pub fn is_homogeneous_in_a(&self) -> bool {
        self.terms.keys().map(|e| e.a).all_equal_or_empty()
    }

    /// Exact quotient in the Laurent ring; errors when `y` does not divide `self`.
    pub fn exact_div(&self, y: &HalfLaurent) -> Result<HalfLaurent> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(HalfLaurent::zero());
        }
        if y.is_monomial() {
            let (e, c) = y.leading().unwrap();
            if self.terms.values().any(|v| !v.is_multiple_of(c)) {
                return Err(Error::NotDivisible);
            }
            return Ok(HalfLaurent {
                terms: self.terms.iter().map(|(ex, v)| (*ex - e, v / c)).collect(),
            });
        }
        let (px, sx) = self.to_poly();
        let (py, sy) = y.to_poly();
        let quo = px.quotient(&py).ok_or(Error::NotDivisible)?;
        Ok(HalfLaurent::from_poly(&quo, sx - sy))
    }

    /// Greatest common divisor in the Laurent ring, normalised so the lowest
    /// exponents are zero and the leading coefficient is positive.
    pub fn gcd(&self, y: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() {
            return y.normalized_associate();
        }
        if y.is_zero() {
            return self.normalized_associate();
        }
        if self.is_monomial() || y.is_monomial() {
            let g = self.content().gcd(&y.content());
            return HalfLaurent::constant(g);
        }
        let (px, _) = self.to_poly();
        let (py, _) = y.to_poly();
        HalfLaurent::from_poly(&px.gcd_with(&py), Exp::ZERO).normalized_associate()
    }

    /// The associate of `self` (under multiplication by a signed monomial)
    /// whose minimum exponents are zero and whose leading coefficient is positive.
    pub fn normalized_associate(&self) -> HalfLaurent {
        let Some(m) = self.min_exp() else {
            return HalfLaurent::zero();
        };
        let shifted = self.shift(-m);
        if shifted.leading().is_some_and(|(_, c)| c.is_negative()) {
            -shifted
        } else {
            shifted
        }
    }

    /// Polynomial in `q^(1/2)` over `Z[a]`, after shifting by the minimum exponent.
    pub(crate) fn to_poly(&self) -> (UPoly<IntPoly>, Exp) {
        let m = self.min_exp().unwrap_or_default();
        let mut outer: Vec<Vec<BigInt>> = Vec::new();
        for (e, c) in &self.terms {
            let j = (e.q2 - m.q2) as usize;
            let i = (e.a - m.a) as usize;
            if outer.len() <= j {
                outer.resize(j + 1, Vec::new());
            }
            let inner = &mut outer[j];
            if inner.len() <= i {
                inner.resize(i + 1, BigInt::zero());
            }
            inner[i] = c.clone();
        }
        let poly = UPoly::from_coeffs(outer.into_iter().map(UPoly::from_coeffs).collect());
        (poly, m)
    }

    pub(crate) fn from_poly(p: &UPoly<IntPoly>, shift: Exp) -> HalfLaurent {
        let mut terms = BTreeMap::new();
        for (j, inner) in p.coeffs().iter().enumerate() {
            for (i, c) in inner.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(Exp::new(i as i32 + shift.a, j as i32 + shift.q2), c.clone());
                }
            }
        }
        HalfLaurent { terms }
    }
}

trait AllEqualOrEmpty: Iterator {
    fn all_equal_or_empty(self) -> bool;
}

impl<I: Iterator<Item = i32>> AllEqualOrEmpty for I {
    fn all_equal_or_empty(mut self) -> bool {
        match self.next() {
            None => true,
            Some(first) => self.all(|x| x == first),
        }
    }
}

impl From<i64> for HalfLaurent {
    fn from(c: i64) -> Self {
        HalfLaurent::constant(c)
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, rhs: HalfLaurent) -> HalfLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(mut self, rhs: HalfLaurent) -> HalfLaurent {
        self -= &rhs;
        self
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -self.clone()
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

/// Polynomial in a formal `z` with `HalfLaurent` coefficients; `coeffs[k]`
/// multiplies `z^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPolynomial {
    coeffs: Vec<HalfLaurent>,
}

impl ZPolynomial {
    pub fn new(mut coeffs: Vec<HalfLaurent>) -> Self {
        while coeffs.last().is_some_and(HalfLaurent::is_zero) {
            coeffs.pop();
        }
        ZPolynomial { coeffs }
    }

    pub fn z() -> Self {
        ZPolynomial::new(vec![HalfLaurent::zero(), HalfLaurent::one()])
    }

    pub fn coeffs(&self) -> &[HalfLaurent] {
        &self.coeffs
    }

    /// Replace `z` by `q^(1/2) - q^(-1/2)` and expand.
    pub fn substitute_z(&self) -> HalfLaurent {
        let z = HalfLaurent::z();
        self.coeffs
            .iter()
            .rev()
            .fold(HalfLaurent::zero(), |acc, c| &(&acc * &z) + c)
    }
}

impl Mul<&ZPolynomial> for &ZPolynomial {
    type Output = ZPolynomial;
    fn mul(self, rhs: &ZPolynomial) -> ZPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return ZPolynomial::default();
        }
        let mut out = vec![HalfLaurent::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        ZPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i32) -> HalfLaurent {
        HalfLaurent::q_pow_half(k)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&s(1) + &(-s(1))).is_zero());
    }

    #[test]
    fn disjoint_support_sum() {
        let x = &HalfLaurent::a() + &HalfLaurent::a_inv();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coeff(Exp::new(1, 0)), BigInt::one());
        assert_eq!(x.coeff(Exp::new(-1, 0)), BigInt::one());
    }

    #[test]
    fn doubling_z() {
        let z = HalfLaurent::z();
        assert_eq!(&z + &z, &HalfLaurent::monomial(2, 0, 1) - &HalfLaurent::monomial(2, 0, -1));
    }

    #[test]
    fn difference_of_squares() {
        let p = &HalfLaurent::z() * &(&s(1) + &s(-1));
        assert_eq!(p, HalfLaurent::q_bracket(2));
    }

    #[test]
    fn products() {
        let ab = HalfLaurent::a_bracket();
        assert_eq!(&ab * &HalfLaurent::one(), ab);
        let plus = &HalfLaurent::a() + &HalfLaurent::a_inv();
        let expect = &HalfLaurent::monomial(1, 2, 0) - &HalfLaurent::monomial(1, -2, 0);
        assert_eq!(&ab * &plus, expect);
    }

    #[test]
    fn exact_division_examples() {
        let q = HalfLaurent::q_bracket(2).exact_div(&HalfLaurent::z()).unwrap();
        assert_eq!(q, &s(1) + &s(-1));
        assert!(HalfLaurent::zero().exact_div(&HalfLaurent::a()).unwrap().is_zero());
        let num = &HalfLaurent::monomial(1, 2, 0) - &HalfLaurent::monomial(1, -2, 0);
        assert_eq!(
            num.exact_div(&HalfLaurent::a_bracket()).unwrap(),
            &HalfLaurent::a() + &HalfLaurent::a_inv()
        );
    }

    #[test]
    fn non_divisible_is_signalled() {
        let x = &HalfLaurent::a() + &HalfLaurent::one();
        assert_eq!(x.exact_div(&HalfLaurent::z()), Err(Error::NotDivisible));
        assert_eq!(HalfLaurent::monomial(3, 0, 0).exact_div(&HalfLaurent::constant(2)), Err(Error::NotDivisible));
        assert_eq!(x.exact_div(&HalfLaurent::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(ZPolynomial::z().substitute_z(), &s(1) - &s(-1));
        let z2 = &ZPolynomial::z() * &ZPolynomial::z();
        let expect = HalfLaurent::from_terms([
            (Exp::new(0, 2), BigInt::one()),
            (Exp::new(0, 0), BigInt::from(-2)),
            (Exp::new(0, -2), BigInt::one()),
        ]);
        assert_eq!(z2.substitute_z(), expect);
        assert_eq!(ZPolynomial::new(vec![HalfLaurent::a()]).substitute_z(), HalfLaurent::a());
    }

    #[test]
    fn gcd_of_quantum_integers() {
        // [6] and [4] share [2] = q - q^-1 up to units
        let g = HalfLaurent::q_bracket(6).gcd(&HalfLaurent::q_bracket(4));
        assert_eq!(g, HalfLaurent::q_bracket(2).normalized_associate());
        let g = HalfLaurent::q_bracket(3).gcd(&HalfLaurent::q_bracket(2));
        assert_eq!(g, HalfLaurent::z().normalized_associate());
    }
}
