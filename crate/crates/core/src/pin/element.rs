use num_complex::Complex64;

use crate::clifford::{Blade, Multivector, Parity, Signature};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, GaussianRational, Scalar};

/// True when `x` is zero: structurally for exact scalars, up to `tol`
/// otherwise.
pub(crate) fn negligible<S: Scalar>(x: &Multivector<S>, tol: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.max_abs() <= tol
    }
}

pub(crate) fn matrix_negligible<S: Scalar>(m: &Matrix<S>, tol: f64) -> bool {
    let mut it = (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c)));
    if S::EXACT {
        it.all(|(r, c)| m.get(r, c).is_zero())
    } else {
        it.all(|(r, c)| m.get(r, c).magnitude() <= tol)
    }
}

/// Inverse of an element with `g·g*` a nonzero scalar.
pub(crate) fn unit_inverse<S: Scalar>(g: &Multivector<S>, tol: f64) -> Result<Multivector<S>> {
    let adj = g.star();
    let n = g.try_mul(&adj)?;
    let s = n.scalar_part();
    let rest = &n - &Multivector::scalar(n.signature(), s.clone());
    if !negligible(&rest, tol) {
        return Err(Error::NotPin("g·g* is not a scalar".into()));
    }
    let inv = s.try_inv().ok_or(Error::NotPin("g·g* vanishes".into()))?;
    Ok(adj.scale(&inv))
}

/// `ρ(g)(v) = (−1)^{|g|} g v g⁻¹`, as the matrix whose columns are the
/// images of the generators.
pub fn twisted_adjoint<S: Scalar>(g: &Multivector<S>, tol: f64) -> Result<Matrix<S>> {
    let parity = g.parity().ok_or(Error::MixedParity)?;
    let sig = g.signature();
    let ginv = unit_inverse(g, tol)?;
    let n = sig.dim();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut img = g.try_mul(&Multivector::generator(sig, k))?.try_mul(&ginv)?;
        if parity == Parity::Odd {
            img = -&img;
        }
        let stray = &img - &img.grade_part(1);
        if !negligible(&stray, tol) {
            return Err(Error::NotPin(format!("g e{} g⁻¹ is not a vector", k + 1)));
        }
        cols.push(img.vector_coords());
    }
    Ok(Matrix::from_fn(n, n, |r, c| cols[c][r].clone()))
}

/// A validated element of `Pin^c(V)`: homogeneous, `g·g* = 1`, and `ρ(g)`
/// a real orthogonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PinElement<S: Scalar = GaussianRational> {
    value: Multivector<S>,
    parity: Parity,
}

impl PinElement<GaussianRational> {
    /// `phase · v₁ ⋯ v_k` from unit vectors with real rational
    /// coefficients and a unit Gaussian-rational phase.
    pub fn from_factors(sig: Signature, vectors: &[Multivector], phase: GaussianRational) -> Result<Self> {
        if phase.norm_sq() != int(1) {
            return Err(Error::NotPin(format!("phase {phase} is not a unit complex number")));
        }
        let mut value = Multivector::scalar(sig, phase);
        for v in vectors {
            if v.signature() != sig {
                return Err(Error::SignatureMismatch { left: sig.to_string(), right: v.signature().to_string() });
            }
            if v.vector_norm_sq()? != int(1) {
                return Err(Error::NotPin(format!("{v} is not a unit vector")));
            }
            value = value.try_mul(v)?;
        }
        let parity = if vectors.len() % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(Self { value, parity })
    }

    pub fn to_float(&self) -> PinElement<Complex64> {
        PinElement { value: self.value.to_float(), parity: self.parity }
    }
}

impl<S: Scalar> PinElement<S> {
    /// Decides membership from the coefficients: homogeneous parity, unit
    /// norm and `ρ(g)` real orthogonal.
    pub fn validate(value: Multivector<S>, tol: f64) -> Result<Self> {
        let parity = value.parity().ok_or(Error::MixedParity)?;
        if value.is_zero() {
            return Err(Error::NotPin("zero".into()));
        }
        let unit = &value.try_mul(&value.star())? - &Multivector::one(value.signature());
        if !negligible(&unit, tol) {
            return Err(Error::NotPin(format!("g·g* differs from 1 by {:e}", unit.max_abs())));
        }
        let rho = twisted_adjoint(&value, tol)?;
        let n = rho.rows();
        let imag = rho.map(|x| x.clone() - x.conj());
        if !matrix_negligible(&imag, tol) {
            return Err(Error::NotPin("ρ(g) has non-real entries".into()));
        }
        let gram = rho.transpose().mul(&rho).sub(&Matrix::identity(n));
        if !matrix_negligible(&gram, tol) {
            return Err(Error::NotPin("ρ(g) is not orthogonal".into()));
        }
        Ok(Self { value, parity })
    }

    pub fn value(&self) -> &Multivector<S> {
        &self.value
    }

    pub fn into_value(self) -> Multivector<S> {
        self.value
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn signature(&self) -> Signature {
        self.value.signature()
    }

    /// Group product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let parity = if self.parity == other.parity { Parity::Even } else { Parity::Odd };
        Ok(Self { value: self.value.try_mul(&other.value)?, parity })
    }

    /// Group inverse `g* `.
    pub fn inverse(&self) -> Self {
        Self { value: self.value.star(), parity: self.parity }
    }

    pub fn real_conjugate(&self) -> Self {
        Self { value: self.value.real_conjugate(), parity: self.parity }
    }

    pub fn rho(&self, tol: f64) -> Result<Matrix<S>> {
        twisted_adjoint(&self.value, tol)
    }

    /// Coefficient of the smallest blade, used to fix sign conventions.
    pub fn leading(&self, tol: f64) -> Option<(Blade, S)> {
        self.value.terms().find(|(_, c)| c.magnitude() > tol).map(|(b, c)| (*b, c.clone()))
    }

    pub(crate) fn from_parts_unchecked(value: Multivector<S>, parity: Parity) -> Self {
        Self { value, parity }
    }
}
