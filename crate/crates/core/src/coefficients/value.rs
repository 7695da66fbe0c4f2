use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::laurent::{Exp, HalfLaurent};
use crate::error::{Error, Result};

/// Element of the fraction field of [`HalfLaurent`].
///
/// Always stored in reduced canonical form: numerator and denominator share
/// no common factor, the denominator's exponent range is centred on zero in
/// each variable (rounding down) and its leading coefficient is positive.
/// Zero is `0/1`.
#[derive(Debug, Clone)]
pub struct SkeinValue {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl SkeinValue {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: HalfLaurent, den: HalfLaurent) -> Self {
        if num.is_zero() {
            return SkeinValue::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else if let Some(k) = g.as_constant() {
            (num.div_integer(&k), den.div_integer(&k))
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let m = den.center_exp().expect("nonzero denominator");
        let (mut num, mut den) = (num.shift(-m), den.shift(-m));
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        SkeinValue { num, den }
    }

    pub fn zero() -> Self {
        SkeinValue { num: HalfLaurent::zero(), den: HalfLaurent::one() }
    }

    pub fn one() -> Self {
        SkeinValue::from(HalfLaurent::one())
    }

    pub fn integer(n: i64) -> Self {
        SkeinValue::from(HalfLaurent::constant(n))
    }

    /// The rational number `n / d`.
    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        SkeinValue::new(HalfLaurent::constant(n), HalfLaurent::constant(d))
    }

    /// The framed unknot `(a - a^(-1)) / (q^(1/2) - q^(-1/2))`.
    pub fn unknot() -> Self {
        Self::reduce(HalfLaurent::a_bracket(), HalfLaurent::z())
    }

    pub fn z() -> Self {
        SkeinValue::from(HalfLaurent::z())
    }

    pub fn a() -> Self {
        SkeinValue::from(HalfLaurent::a())
    }

    pub fn numerator(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Laurent polynomial value, when the denominator is a unit.
    pub fn as_laurent(&self) -> Option<HalfLaurent> {
        self.den.is_one().then(|| self.num.clone())
    }

    /// `c * a^i * q^(j/2)` for a rational `c`.
    pub fn is_monomial(&self) -> bool {
        self.num.len() == 1 && self.den.len() == 1
    }

    /// Whether the value does not depend on `a` at all.
    pub fn is_independent_of_a(&self) -> bool {
        let num_a = self.num.terms().next().map(|(e, _)| e.a);
        let den_a = self.den.terms().next().map(|(e, _)| e.a);
        self.num.is_zero()
            || (self.num.is_homogeneous_in_a() && self.den.is_homogeneous_in_a() && num_a == den_a)
    }

    pub fn inv(&self) -> Result<Self> {
        SkeinValue::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &SkeinValue) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, n: u32) -> Self {
        SkeinValue { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn invert_q(&self) -> Self {
        Self::reduce(self.num.invert_q(), self.den.invert_q())
    }

    /// Multiply by the monomial `a^e.a * q^(e.q2/2)`.
    pub fn shift(&self, e: Exp) -> Self {
        SkeinValue { num: self.num.shift(e), den: self.den.clone() }
    }

    /// Multiply by a Laurent polynomial.
    pub fn mul_laurent(&self, p: &HalfLaurent) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }
}

impl Default for SkeinValue {
    fn default() -> Self {
        SkeinValue::zero()
    }
}

impl From<HalfLaurent> for SkeinValue {
    fn from(num: HalfLaurent) -> Self {
        Self::reduce(num, HalfLaurent::one())
    }
}

impl PartialEq for SkeinValue {
    fn eq(&self, o: &Self) -> bool {
        (self.num == o.num && self.den == o.den) || &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for SkeinValue {}

impl Hash for SkeinValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Add<&SkeinValue> for &SkeinValue {
    type Output = SkeinValue;
    fn add(self, o: &SkeinValue) -> SkeinValue {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return SkeinValue::reduce(&self.num + &o.num, self.den.clone());
        }
        SkeinValue::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Add for SkeinValue {
    type Output = SkeinValue;
    fn add(self, o: SkeinValue) -> SkeinValue {
        &self + &o
    }
}

impl Sub<&SkeinValue> for &SkeinValue {
    type Output = SkeinValue;
    fn sub(self, o: &SkeinValue) -> SkeinValue {
        self + &(-o)
    }
}

impl Sub for SkeinValue {
    type Output = SkeinValue;
    fn sub(self, o: SkeinValue) -> SkeinValue {
        &self - &o
    }
}

impl Neg for &SkeinValue {
    type Output = SkeinValue;
    fn neg(self) -> SkeinValue {
        SkeinValue { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for SkeinValue {
    type Output = SkeinValue;
    fn neg(self) -> SkeinValue {
        -&self
    }
}

impl Mul<&SkeinValue> for &SkeinValue {
    type Output = SkeinValue;
    fn mul(self, o: &SkeinValue) -> SkeinValue {
        if self.is_zero() || o.is_zero() {
            return SkeinValue::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return SkeinValue { num: &self.num * &o.num, den: HalfLaurent::one() };
        }
        SkeinValue::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Mul for SkeinValue {
    type Output = SkeinValue;
    fn mul(self, o: SkeinValue) -> SkeinValue {
        &self * &o
    }
}

impl std::iter::Sum for SkeinValue {
    fn sum<I: Iterator<Item = SkeinValue>>(iter: I) -> Self {
        iter.fold(SkeinValue::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for SkeinValue {
    fn product<I: Iterator<Item = SkeinValue>>(iter: I) -> Self {
        iter.fold(SkeinValue::one(), |acc, x| &acc * &x)
    }
}

impl SkeinValue {
    /// Rational constant value, if the value does not involve `a` or `q`.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        Some((self.num.as_constant()?, self.den.as_constant()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_times_z_is_a_bracket() {
        let v = &SkeinValue::unknot() * &SkeinValue::z();
        assert_eq!(v, SkeinValue::from(HalfLaurent::a_bracket()));
        assert_eq!(v.as_laurent(), Some(HalfLaurent::a_bracket()));
    }

    #[test]
    fn unknot_over_unknot() {
        let o = SkeinValue::unknot();
        assert!(o.div(&o).unwrap().is_one());
    }

    #[test]
    fn additive_identity_keeps_reduced_form() {
        let v = SkeinValue::new(HalfLaurent::a_bracket(), HalfLaurent::q_bracket(2)).unwrap();
        let w = &v + &SkeinValue::zero();
        assert_eq!(w.numerator(), v.numerator());
        assert_eq!(w.denominator(), v.denominator());
    }

    #[test]
    fn division_by_zero_is_signalled() {
        assert_eq!(SkeinValue::one().div(&SkeinValue::zero()), Err(Error::DivisionByZero));
        assert_eq!(SkeinValue::zero().inv(), Err(Error::DivisionByZero));
        assert!(SkeinValue::new(HalfLaurent::one(), HalfLaurent::zero()).is_err());
    }

    #[test]
    fn common_factor_is_cancelled() {
        // (q - q^-1) / (q^(1/2) - q^(-1/2)) reduces to q^(1/2) + q^(-1/2)
        let v = SkeinValue::new(HalfLaurent::q_bracket(2), HalfLaurent::z()).unwrap();
        assert!(v.denominator().is_one());
        assert_eq!(v.numerator(), &(&HalfLaurent::q_half() + &HalfLaurent::q_pow_half(-1)));
    }

    #[test]
    fn rationals() {
        let half = SkeinValue::ratio(1, 2).unwrap();
        let v = &half + &half;
        assert!(v.is_one());
        assert_eq!(SkeinValue::ratio(-2, -4).unwrap(), half);
        assert_eq!(SkeinValue::ratio(2, -4).unwrap().as_rational(), Some((BigInt::from(-1), BigInt::from(2))));
    }
}
