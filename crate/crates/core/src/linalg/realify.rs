use num_complex::Complex64;

use super::matrix::{unitarity_residual, ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};

/// `U(n) → SO(2n)` in the interleaved basis: real coordinate `2j` is
/// `Re z_j`, coordinate `2j + 1` is `Im z_j` (zero-based).
pub fn realify(u: &ComplexMatrix, tol: f64) -> Result<RealMatrix> {
    u.require_square()?;
    u.validate_finite()?;
    let residual = unitarity_residual(u)?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    Ok(realify_unchecked(u))
}

pub(crate) fn realify_unchecked(u: &ComplexMatrix) -> RealMatrix {
    let n = u.rows();
    RealMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z: Complex64 = *u.get(r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

/// `D` negating the odd (imaginary, sign-representation) coordinates, so
/// that `realify(conj U) = D · realify(U) · D`.
pub fn sigma_flip(dim: usize) -> RealMatrix {
    RealMatrix::from_fn(dim, dim, |r, c| match (r == c, r % 2) {
        (false, _) => 0.0,
        (true, 0) => 1.0,
        (true, _) => -1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::orthogonality_residual;
    use crate::linalg::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_cases() {
        let one = ComplexMatrix::from_rows(vec![vec![Complex64::new(1.0, 0.0)]]).unwrap();
        assert_eq!(realify(&one, 1e-12).unwrap(), RealMatrix::identity(2));
        let i = ComplexMatrix::from_rows(vec![vec![Complex64::i()]]).unwrap();
        let expected = RealMatrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(realify(&i, 1e-12).unwrap(), expected);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::from_rows(vec![vec![Complex64::new(2.0, 0.0)]]).unwrap();
        assert!(matches!(realify(&m, 1e-9), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn homomorphism_orthogonality_and_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let u = random::unitary(3, &mut rng);
            let v = random::unitary(3, &mut rng);
            let ru = realify(&u, 1e-9).unwrap();
            assert!(orthogonality_residual(&ru).unwrap() < 1e-12);
            assert!((ru.determinant().unwrap() - 1.0).abs() < 1e-12);
            let lhs = realify(&u.mul(&v), 1e-9).unwrap();
            let rhs = ru.mul(&realify(&v, 1e-9).unwrap());
            assert!(lhs.sub(&rhs).max_abs() < 1e-10);
            let d = sigma_flip(6);
            let conj = realify(&u.conj(), 1e-9).unwrap();
            assert!(conj.sub(&d.mul(&ru).mul(&d)).max_abs() < 1e-14);
        }
    }
}
