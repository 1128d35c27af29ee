use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational, GaussianRational, Rational, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ComplexMatrix = Matrix<Complex64>;
pub type RealMatrix = Matrix<f64>;
pub type ExactMatrix = Matrix<GaussianRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        Self::from_fn(self.rows, o.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(r, k).clone() * o.get(k, c).clone())
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() - o.get(r, c).clone())
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(r, k).clone() * v[k].clone()))
            .collect()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }
}

impl ComplexMatrix {
    pub fn from_real(m: &RealMatrix) -> Self {
        m.map(|&x| Complex64::new(x, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn validate_finite(&self) -> Result<()> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self.get(r, c);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    /// Real part, if every imaginary part is below `tol`.
    pub fn to_real(&self, tol: f64) -> Option<RealMatrix> {
        self.data.iter().all(|z| z.im.abs() <= tol).then(|| self.map(|z| z.re))
    }

    pub fn determinant(&self) -> Result<Complex64> {
        self.require_square()?;
        Ok(self.to_nalgebra().determinant())
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl RealMatrix {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> Result<f64> {
        self.require_square()?;
        Ok(self.to_nalgebra().determinant())
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl ExactMatrix {
    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(|z| z.to_complex())
    }

    /// The rational matrix, if every entry is real.
    pub fn to_rational(&self) -> Option<Matrix<Rational>> {
        self.data.iter().all(GaussianRational::is_real).then(|| self.map(|z| z.re.clone()))
    }
}

/// `true` iff `‖M*M − I‖` (largest entry modulus) is at most `tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_residual(m)? <= tol)
}

pub fn unitarity_residual(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    Ok(m.adjoint().mul(m).sub(&ComplexMatrix::identity(m.rows)).max_abs())
}

pub fn orthogonality_residual(m: &RealMatrix) -> Result<f64> {
    m.require_square()?;
    Ok(m.transpose().mul(m).sub(&RealMatrix::identity(m.rows)).max_abs())
}

pub fn symmetry_residual(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    Ok(m.sub(&m.transpose()).max_abs())
}

// ---------------------------------------------------------------------------
// JSON: {"rows": n, "cols": m, "entries": [[[re, im], ...], ...]}, with each
// component a float or an exact "p/q" string.

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonNumber {
    Float(f64),
    Exact(String),
}

impl JsonNumber {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            JsonNumber::Float(x) => {
                rational::from_f64(*x).ok_or_else(|| Error::Parse(format!("non-finite number {x}")))
            }
            JsonNumber::Exact(s) => rational::parse_rational(s),
        }
    }

    fn to_f64(&self) -> Result<f64> {
        match self {
            JsonNumber::Float(x) => Ok(*x),
            JsonNumber::Exact(s) => Ok(rational::to_f64(&rational::parse_rational(s)?)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[JsonNumber; 2]>>,
}

impl MatrixJson {
    fn check_shape(&self) -> Result<()> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Dimension(format!("declared {}x{} but entries do not match", self.rows, self.cols)));
        }
        Ok(())
    }

    pub fn to_complex(&self) -> Result<ComplexMatrix> {
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|[re, im]| Ok(Complex64::new(re.to_f64()?, im.to_f64()?))).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let m = ComplexMatrix::from_rows(rows)?;
        let m = if self.rows == 0 { ComplexMatrix::zeros(0, self.cols) } else { m };
        m.validate_finite()?;
        Ok(m)
    }

    pub fn to_exact(&self) -> Result<ExactMatrix> {
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter().map(|[re, im]| Ok(GaussianRational::new(re.to_rational()?, im.to_rational()?))).collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        if self.rows == 0 {
            return Ok(ExactMatrix::zeros(0, self.cols));
        }
        ExactMatrix::from_rows(rows)
    }

    pub fn from_complex(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [JsonNumber::Float(z.re), JsonNumber::Float(z.im)]).collect())
                .collect(),
        }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        Self::from_complex(&ComplexMatrix::from_real(m))
    }

    pub fn from_exact(m: &ExactMatrix) -> Self {
        let s = |r: &Rational| JsonNumber::Exact(rational::to_fraction_string(r));
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [s(&z.re), s(&z.im)]).collect())
                .collect(),
        }
    }
}

pub fn parse_complex_matrix(json: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixJson>(json)?.to_complex()
}

pub fn parse_exact_matrix(json: &str) -> Result<ExactMatrix> {
    serde_json::from_str::<MatrixJson>(json)?.to_exact()
}
