//! Exact scalars: rationals, Gaussian rationals, multivariate polynomials
//! and rational functions, plus the [`Scalar`] abstraction that lets the
//! Clifford layer run over either exact or double-precision coefficients.

pub mod gaussian;
pub mod poly;
pub mod ratfunc;
pub mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

pub use gaussian::GaussianRational;
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;
pub use rational::{int, parse_rational, rat, Rational};

/// Coefficient field of a complex Clifford algebra.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Whether values of this type are exact (comparisons are decisive).
    const EXACT: bool;

    fn conj(&self) -> Self;
    fn imag_unit() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Sign and magnitude for printing: `(negative, text)`, with `text`
    /// `None` when the magnitude is exactly one.
    fn display_parts(&self) -> (bool, Option<String>);

    fn is_real(&self) -> bool {
        self.to_complex().im == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn imag_unit() -> Self {
        GaussianRational::i()
    }
    fn from_rational(r: &Rational) -> Self {
        GaussianRational::real(r.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.re), rational::to_f64(&self.im))
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn display_parts(&self) -> (bool, Option<String>) {
        use num_traits::Signed;
        let text = |r: &Rational| {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => {
                let m = self.re.abs();
                (self.re.is_negative(), (!m.is_one()).then(|| text(&m)))
            }
            (true, false) => {
                let m = self.im.abs();
                let t = if m.is_one() { "i".to_string() } else { format!("{}*i", text(&m)) };
                (self.im.is_negative(), Some(t))
            }
            (false, false) => (false, Some(self.to_string())),
        }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn imag_unit() -> Self {
        Complex64::i()
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational::to_f64(r), 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn display_parts(&self) -> (bool, Option<String>) {
        match (self.re == 0.0, self.im == 0.0) {
            (_, true) => {
                let m = self.re.abs();
                (self.re < 0.0, (m != 1.0).then(|| format!("{m}")))
            }
            (true, false) => {
                let m = self.im.abs();
                let t = if m == 1.0 { "i".to_string() } else { format!("{m}*i") };
                (self.im < 0.0, Some(t))
            }
            (false, false) => {
                let sign = if self.im < 0.0 { '-' } else { '+' };
                (false, Some(format!("({} {sign} {}*i)", self.re, self.im.abs())))
            }
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}
