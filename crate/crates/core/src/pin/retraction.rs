//! Conjugation-fixed representatives of conjugation-fixed classes in
//! `X ×_{U(n)} Y`, for `X` the `N×n` unitary frames (right action) and
//! `Y` the `n×M` complex matrices (left action).

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{random, symmetric_unitary_sqrt, unitarity_residual, ComplexMatrix, RealMatrix};

/// Output of [`fixed_point_retraction`].
#[derive(Clone, Debug)]
pub struct Retraction {
    /// `U` with `x̄ = x U*` and `ȳ = U y`.
    pub u: ComplexMatrix,
    /// Symmetric unitary square root of `U`.
    pub s: ComplexMatrix,
    /// `w = x S*`.
    pub w: ComplexMatrix,
    /// `z = S y`.
    pub z: ComplexMatrix,
    /// Largest imaginary part in `w` and `z`.
    pub fixed_residual: f64,
    /// With `g = x* w`: `max(‖g*g − 1‖, ‖x g − w‖, ‖g* y − z‖)`.
    pub orbit_residual: f64,
    /// Indices of eigenvalues of `U` near −1.
    pub branch_cut: Vec<usize>,
}

fn max_imag(m: &ComplexMatrix) -> f64 {
    m.to_rows().iter().flatten().map(|c| c.im.abs()).fold(0.0, f64::max)
}

/// Produces `(w, z) = (x S*, S y)` in the class of `(x, y)` with both
/// components real, where `S² = U` is symmetric.
pub fn fixed_point_retraction(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<Retraction> {
    x.validate_finite()?;
    y.validate_finite()?;
    let n = x.cols();
    if y.rows() != n {
        return Err(Error::Dimension(format!("frame has {n} columns but y has {} rows", y.rows())));
    }
    let gram = x.adjoint().mul(x).sub(&ComplexMatrix::identity(n)).max_abs();
    if gram > tol {
        return Err(Error::NotUnitary { residual: gram });
    }
    let u = x.conj().adjoint().mul(x);
    let residual = unitarity_residual(&u)?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    let class = x.mul(&u.adjoint()).sub(&x.conj()).max_abs().max(u.mul(y).sub(&y.conj()).max_abs());
    if class > tol {
        return Err(Error::Verification(format!("orbit is not conjugation-fixed (residual {class:e})")));
    }
    let sq = symmetric_unitary_sqrt(&u, tol)?;
    let s = sq.sqrt;
    let w = x.mul(&s.adjoint());
    let z = s.mul(y);
    let g = x.adjoint().mul(&w);
    let orbit_residual =
        unitarity_residual(&g)?.max(x.mul(&g).sub(&w).max_abs()).max(g.adjoint().mul(y).sub(&z).max_abs());
    Ok(Retraction {
        fixed_residual: max_imag(&w).max(max_imag(&z)),
        orbit_residual,
        branch_cut: sq.branch_cut,
        u,
        s,
        w,
        z,
    })
}

/// A class fixed by conjugation that is not fixed pointwise:
/// `(x₀ T, T* y₀)` with `x₀` a real frame, `y₀` real, `T` Haar unitary.
pub fn random_fixed_class<R: Rng + ?Sized>(
    big_n: usize,
    n: usize,
    m: usize,
    rng: &mut R,
) -> (ComplexMatrix, ComplexMatrix) {
    assert!(n <= big_n);
    let o = random::orthogonal(big_n, rng);
    let x0 = ComplexMatrix::from_real(&RealMatrix::from_fn(big_n, n, |r, c| *o.get(r, c)));
    let vals: Vec<f64> = (0..n * m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let y0 = ComplexMatrix::from_fn(n, m, |r, c| Complex64::new(vals[r * m + c], 0.0));
    let t = random::unitary(n, rng);
    (x0.mul(&t), t.adjoint().mul(&y0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_classes_retract() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=4 {
            for big_n in n..=8 {
                let (x, y) = random_fixed_class(big_n, n, 2, &mut rng);
                let r = fixed_point_retraction(&x, &y, 1e-9).unwrap();
                assert!(r.fixed_residual < 1e-10, "{}", r.fixed_residual);
                assert!(r.orbit_residual < 1e-9);
            }
        }
    }

    #[test]
    fn unfixed_class_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random::unitary(3, &mut rng);
        let y = ComplexMatrix::from_fn(3, 1, |r, _| Complex64::new(r as f64, 1.0));
        assert!(fixed_point_retraction(&x, &y, 1e-9).is_err());
    }
}
