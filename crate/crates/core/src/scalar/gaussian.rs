use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct GaussianRational {
    #[serde(with = "rational::serde_fraction")]
    pub re: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Self::real(self.re * o.re),
            (true, false) => Self { im: &self.re * o.im, re: self.re * o.re },
            (false, true) => Self { im: self.im * &o.re, re: self.re * o.re },
            (false, false) => Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re },
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like the rational type it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) if (-&self.im).is_one() => write!(f, "-i"),
            (true, false) => write!(f, "{}*i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im < Rational::zero() { '-' } else { '+' };
                let im = num_traits::Signed::abs(&self.im);
                if im.is_one() {
                    write!(f, "({} {sign} i)", fmt_rat(&self.re))
                } else {
                    write!(f, "({} {sign} {}*i)", fmt_rat(&self.re), fmt_rat(&im))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, -GaussianRational::one());
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = g(3, 5, 4, 5);
        assert_eq!(z.norm_sq(), rat(1, 1));
        assert_eq!(z.inv().unwrap(), z.conj());
        assert!(GaussianRational::zero().inv().is_err());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn display() {
        assert_eq!(g(1, 2, 0, 1).to_string(), "1/2");
        assert_eq!(g(0, 1, 1, 1).to_string(), "i");
        assert_eq!(g(0, 1, -3, 4).to_string(), "-3/4*i");
        assert_eq!(g(1, 1, -1, 1).to_string(), "(1 - i)");
    }
}
