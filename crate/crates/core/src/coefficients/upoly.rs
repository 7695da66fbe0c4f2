//! Dense univariate polynomials over a gcd domain.
//!
//! Only used behind [`HalfLaurent`](super::HalfLaurent) for exact division and
//! gcd: a Laurent polynomial is shifted to an ordinary polynomial and viewed
//! as an element of `Z[a][q^(1/2)]`, i.e. `UPoly<UPoly<BigInt>>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait GcdDomain: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// Unit-normalised gcd.
    fn gcd(&self, o: &Self) -> Self;
    fn is_negative_normal(&self) -> bool;
    /// Largest absolute value of an integer coefficient.
    fn max_norm(&self) -> BigInt;
    /// Gcd of all integer coefficients.
    fn int_content(&self) -> BigInt;
    fn mul_int(&self, k: &BigInt) -> Self;
    fn div_int(&self, k: &BigInt) -> Self;
    /// Split every integer coefficient `c` as `d + xi * r` with `d` in the
    /// symmetric range `(-xi/2, xi/2]`; returns `(d, r)`.
    fn mods_split(&self, xi: &BigInt) -> (Self, Self);
    /// Heuristic gcd by evaluation at large integers; `None` when the
    /// heuristic gives up.
    fn heu_gcd(&self, o: &Self) -> Option<Self>;
}

impl GcdDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_negative_normal(&self) -> bool {
        self.is_negative()
    }
    fn max_norm(&self) -> BigInt {
        self.abs()
    }
    fn int_content(&self) -> BigInt {
        self.abs()
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self * k
    }
    fn div_int(&self, k: &BigInt) -> Self {
        self / k
    }
    fn mods_split(&self, xi: &BigInt) -> (Self, Self) {
        let mut d = self.mod_floor(xi);
        if &d * 2 > *xi {
            d -= xi;
        }
        let r = (self - &d) / xi;
        (d, r)
    }
    fn heu_gcd(&self, o: &Self) -> Option<Self> {
        Some(Integer::gcd(self, o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UPoly<R> {
    coeffs: Vec<R>,
}

pub(crate) type IntPoly = UPoly<BigInt>;

impl<R: GcdDomain> UPoly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    fn scale(&self, k: &R) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == R::one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c == R::one() {
            return self.clone();
        }
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x.div_exact(&c).expect("content divides")).collect())
    }

    /// Pseudo-remainder of `self` by `g`.
    fn pseudo_rem(&self, g: &Self) -> Self {
        let dg = g.degree().expect("nonzero divisor");
        let lc = g.lc().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let t = r.lc().unwrap().clone();
            let shift = dr - dg;
            let mut next: Vec<R> = r.coeffs.iter().map(|c| c.mul(&lc)).collect();
            for (i, gc) in g.coeffs.iter().enumerate() {
                next[i + shift] = next[i + shift].sub(&gc.mul(&t));
            }
            r = UPoly::from_coeffs(next);
        }
        r
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        UPoly { coeffs: vec![R::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = R::zero();
        UPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero).add(o.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        UPoly::from_coeffs(out)
    }

    fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(R::neg).collect() }
    }

    fn div_exact(&self, g: &Self) -> Option<Self> {
        let dg = g.degree()?;
        let lc = g.lc().unwrap();
        let mut r = self.clone();
        let mut quo = vec![R::zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = r.degree() {
            if dr < dg {
                return None;
            }
            let t = r.lc().unwrap().div_exact(lc)?;
            let shift = dr - dg;
            let mut next = r.coeffs.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                next[i + shift] = next[i + shift].sub(&gc.mul(&t));
            }
            quo[shift] = t;
            r = UPoly::from_coeffs(next);
        }
        Some(UPoly::from_coeffs(quo))
    }

    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let c = self.content().gcd(&o.content());
        let (mut f, mut g) = (self.primitive_part(), o.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        // primitive remainder sequence
        loop {
            let r = f.pseudo_rem(&g);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                return UPoly::from_coeffs(vec![c]).normalize();
            }
            f = g;
            g = r.primitive_part();
        }
        g.scale(&c).normalize()
    }

    fn is_negative_normal(&self) -> bool {
        self.lc().is_some_and(R::is_negative_normal)
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(R::max_norm).max().unwrap_or_default()
    }

    fn int_content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for c in &self.coeffs {
            g = Integer::gcd(&g, &c.int_content());
            if One::is_one(&g) {
                break;
            }
        }
        g
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.mul_int(k)).collect())
    }

    fn div_int(&self, k: &BigInt) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.div_int(k)).collect())
    }

    fn mods_split(&self, xi: &BigInt) -> (Self, Self) {
        let (d, r): (Vec<R>, Vec<R>) = self.coeffs.iter().map(|c| c.mods_split(xi)).unzip();
        (UPoly::from_coeffs(d), UPoly::from_coeffs(r))
    }

    fn heu_gcd(&self, o: &Self) -> Option<Self> {
        if self.is_zero() || o.is_zero() {
            return Some(GcdDomain::gcd(self, o));
        }
        let (ca, cb) = (self.int_content(), o.int_content());
        let c = Integer::gcd(&ca, &cb);
        let (a, b) = (self.div_int(&ca), o.div_int(&cb));
        let deg = a.coeffs.len().max(b.coeffs.len()) as u64;
        let mut xi: BigInt = a.max_norm().min(b.max_norm()) * 2u32 + 29u32;
        for _ in 0..6 {
            if xi.bits() * deg > 4_000_000 {
                return None;
            }
            if let Some(gamma) = a.eval(&xi).heu_gcd(&b.eval(&xi)) {
                let mut digits = Vec::new();
                let mut rest = gamma;
                while !rest.is_zero() {
                    let (d, r) = rest.mods_split(&xi);
                    digits.push(d);
                    rest = r;
                }
                let g = UPoly::from_coeffs(digits);
                if !g.is_zero() {
                    let g = g.div_int(&g.int_content());
                    if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                        return Some(g.mul_int(&c).normalize());
                    }
                }
            }
            xi = xi * 73794u32 / 27011u32;
        }
        None
    }
}

impl<R: GcdDomain> UPoly<R> {
    /// Value at the integer `x`.
    fn eval(&self, x: &BigInt) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul_int(x).add(c))
    }
}

impl<R: GcdDomain> UPoly<R> {
    /// Gcd, trying the evaluation heuristic before the remainder sequence.
    pub fn gcd_with(&self, o: &Self) -> Self {
        self.heu_gcd(o).unwrap_or_else(|| GcdDomain::gcd(self, o))
    }

    pub fn quotient(&self, o: &Self) -> Option<Self> {
        GcdDomain::div_exact(self, o)
    }

    fn normalize(&self) -> Self {
        if self.is_negative_normal() {
            GcdDomain::neg(self)
        } else {
            self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        UPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn integer_polynomial_gcd() {
        // (x+1)(x-2) and (x+1)(x+3)
        let f = ip(&[-2, -1, 1]);
        let g = ip(&[3, 4, 1]);
        assert_eq!(f.gcd(&g), ip(&[1, 1]));
        assert_eq!(ip(&[2, 4]).gcd(&ip(&[6])), ip(&[2]));
        assert_eq!(ip(&[1, 1]).gcd(&ip(&[1, -1])), ip(&[1]));
    }

    #[test]
    fn exact_division_and_remainder() {
        let f = ip(&[-2, -1, 1]);
        assert_eq!(f.div_exact(&ip(&[1, 1])), Some(ip(&[-2, 1])));
        assert_eq!(f.div_exact(&ip(&[1, 2])), None);
    }

    #[test]
    fn heuristic_agrees_with_remainder_sequence() {
        // (x + 1)^2 (x - 3) and (x + 1)(2x + 5)(x - 3)
        let f = ip(&[3, 1]).mul(&ip(&[1, 1])).mul(&ip(&[-3, 1]));
        let g = ip(&[1, 1]).mul(&ip(&[5, 2])).mul(&ip(&[-3, 1]));
        assert_eq!(f.heu_gcd(&g).unwrap(), GcdDomain::gcd(&f, &g));

        let bi = |rows: &[&[i64]]| UPoly::from_coeffs(rows.iter().map(|r| ip(r)).collect::<Vec<_>>());
        // (a t + 1)(t - a) and (a t + 1)(t + 2)
        let common = bi(&[&[1], &[0, 1]]);
        let f = common.mul(&bi(&[&[0, -1], &[1]]));
        let g = common.mul(&bi(&[&[2], &[1]]));
        assert_eq!(f.heu_gcd(&g).unwrap(), common);
        assert_eq!(f.gcd_with(&g), GcdDomain::gcd(&f, &g));
    }
}
