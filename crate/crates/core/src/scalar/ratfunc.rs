use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of two polynomials in canonical form: numerator and
/// denominator are coprime and the denominator's grlex-leading coefficient
/// is 1. Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: MultiPoly, den: MultiPoly) -> Self {
        let nvars = den.nvars();
        if num.is_zero() {
            return Self { num, den: MultiPoly::one(nvars) };
        }
        let g = MultiPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_term().expect("nonzero denominator").1.recip();
        Self { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        Self { num: p, den: MultiPoly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Equality decided by cross multiplication, independent of the
    /// canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn remap_vars(&self, nvars: usize, map: impl Fn(usize) -> usize + Copy) -> Self {
        Self::canonical(self.num.remap_vars(nvars, map), self.den.remap_vars(nvars, map))
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.den.as_constant().is_some() {
            return self.num.display_with(names);
        }
        format!("({})/({})", self.num.display_with(names), self.den.display_with(names))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::canonical(&self.num + &o.num, self.den.clone());
        }
        RatFunc::canonical(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::canonical(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics when dividing by the zero function.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    fn t() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    #[test]
    fn canonical_form_reduces_and_normalizes() {
        // (2t^2 - 2) / (4t + 4) = (t - 1)/2
        let num = (&t().pow(2) - &MultiPoly::one(1)).scale(&int(2));
        let den = (&t() + &MultiPoly::one(1)).scale(&int(4));
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.denom(), &MultiPoly::one(1));
        assert_eq!(f.numer(), &(&t() - &MultiPoly::one(1)).scale(&crate::scalar::rat(1, 2)));
    }

    #[test]
    fn a_minus_a_squared_is_b_squared() {
        let one = MultiPoly::one(1);
        let q = &one + &t().pow(2);
        let a = RatFunc::new(one.clone(), q.clone()).unwrap();
        let b = RatFunc::new(t(), q).unwrap();
        assert_eq!(&a - &(&a * &a), &b * &b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(t(), MultiPoly::zero(1)).is_err());
        assert!(RatFunc::zero(1).inv().is_err());
    }
}
