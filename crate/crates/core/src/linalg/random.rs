//! Haar-distributed random matrices for property suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, RealMatrix};

/// Haar-random unitary via QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_nalgebra(&q)
}

/// Haar-random real orthogonal matrix.
pub fn orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    RealMatrix::from_nalgebra(&q)
}

/// Random element of SO(n).
pub fn rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealMatrix {
    let mut q = orthogonal(n, rng);
    if n > 0 && q.determinant().unwrap_or(1.0) < 0.0 {
        for i in 0..n {
            let v = -*q.get(i, 0);
            q.set(i, 0, v);
        }
    }
    q
}

/// `O · diag(e^{iθ}) · Oᵀ` with random orthogonal `O` and random phases.
pub fn symmetric_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let o = ComplexMatrix::from_real(&orthogonal(n, rng));
    let phases: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)))
        .collect();
    let d = ComplexMatrix::from_fn(n, n, |r, c| if r == c { phases[r] } else { Complex64::new(0.0, 0.0) });
    o.mul(&d).mul(&o.transpose())
}
