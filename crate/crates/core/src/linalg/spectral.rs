//! Spectral factorizations of unitary matrices.
//!
//! Both routines split a unitary `U` into commuting self-adjoint parts and
//! diagonalize them in turn: first one part, then the other restricted to
//! each eigenvalue cluster of the first. Clusters closer than the
//! tolerance are merged.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::matrix::{symmetry_residual, unitarity_residual, ComplexMatrix, RealMatrix};
use super::random;
use crate::error::{Error, Result};

/// `U = V · diag(λ) · V*` with `V` unitary and `|λ_j| = 1`.
#[derive(Clone, Debug)]
pub struct UnitaryEigen {
    pub vectors: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
}

impl UnitaryEigen {
    /// Principal arguments `θ_j ∈ (−π, π]`.
    pub fn angles(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().map(principal_arg).collect()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let d =
            ComplexMatrix::from_fn(n, n, |r, c| if r == c { self.eigenvalues[r] } else { Complex64::new(0.0, 0.0) });
        self.vectors.mul(&d).mul(&self.vectors.adjoint())
    }

    /// Groups of eigenvalue indices that agree within `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            match groups.iter_mut().find(|g| (self.eigenvalues[g[0]] - l).norm() <= tol) {
                Some(g) => g.push(j),
                None => groups.push(vec![j]),
            }
        }
        groups
    }

    /// Re-chooses the eigenbasis: each cluster of equal eigenvalues is
    /// rotated by a random unitary. The factorization stays valid.
    pub fn randomize_basis<R: Rng + ?Sized>(&self, tol: f64, rng: &mut R) -> UnitaryEigen {
        let mut vectors = self.vectors.clone();
        let n = vectors.rows();
        for group in self.clusters(tol) {
            let w = random::unitary(group.len(), rng);
            let block = ComplexMatrix::from_fn(n, group.len(), |r, c| *self.vectors.get(r, group[c]));
            let mixed = block.mul(&w);
            for (c, &j) in group.iter().enumerate() {
                for r in 0..n {
                    vectors.set(r, j, *mixed.get(r, c));
                }
            }
        }
        UnitaryEigen { vectors, eigenvalues: self.eigenvalues.clone() }
    }
}

/// Argument in `(−π, π]`; the negative real axis maps to `π`.
pub fn principal_arg(z: Complex64) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -std::f64::consts::PI || (z.im == 0.0 && z.re < 0.0) {
        std::f64::consts::PI
    } else {
        t
    }
}

fn clusters_of(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some(g) if (values[i] - values[*g.last().unwrap()]).abs() <= tol => g.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Eigendecomposition of a unitary matrix through the commuting Hermitian
/// pair `H = (U + U*)/2`, `K = (U − U*)/2i`.
pub fn unitary_eigen(u: &ComplexMatrix, tol: f64) -> Result<UnitaryEigen> {
    u.require_square()?;
    u.validate_finite()?;
    let residual = unitarity_residual(u)?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    let n = u.rows();
    let a = u.to_nalgebra();
    let adj = a.adjoint();
    let h = (&a + &adj) * Complex64::new(0.5, 0.0);
    let k = (&a - &adj) * Complex64::new(0.0, -0.5);
    let eig_h = h.symmetric_eigen();
    let hvals: Vec<f64> = eig_h.eigenvalues.iter().copied().collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    let mut col = 0;
    for group in clusters_of(&hvals, tol) {
        let q = DMatrix::from_fn(n, group.len(), |r, c| eig_h.eigenvectors[(r, group[c])]);
        let kc = q.adjoint() * &k * &q;
        let kc = (&kc + kc.adjoint()) * Complex64::new(0.5, 0.0);
        let eig_k = kc.symmetric_eigen();
        let refined = &q * &eig_k.eigenvectors;
        for c in 0..group.len() {
            vectors.set_column(col, &refined.column(c));
            col += 1;
        }
    }
    let d = vectors.adjoint() * &a * &vectors;
    let eigenvalues = (0..n)
        .map(|j| {
            let l = d[(j, j)];
            if l.norm() > 0.0 {
                l / l.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    Ok(UnitaryEigen { vectors: ComplexMatrix::from_nalgebra(&vectors), eigenvalues })
}

/// `U = O · diag(λ) · Oᵀ` with `O` real orthogonal, for symmetric unitary `U`.
#[derive(Clone, Debug)]
pub struct SymmetricUnitaryFactor {
    pub orthogonal: RealMatrix,
    pub eigenvalues: Vec<Complex64>,
}

/// Simultaneous diagonalization of `Re U` and `Im U`, which are real
/// symmetric and commute when `U` is symmetric unitary.
pub fn symmetric_unitary_factor(u: &ComplexMatrix, tol: f64) -> Result<SymmetricUnitaryFactor> {
    u.require_square()?;
    u.validate_finite()?;
    let residual = unitarity_residual(u)?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    let residual = symmetry_residual(u)?;
    if residual > tol {
        return Err(Error::NotSymmetric { residual });
    }
    let n = u.rows();
    let re = DMatrix::from_fn(n, n, |r, c| 0.5 * (u.get(r, c).re + u.get(c, r).re));
    let im = DMatrix::from_fn(n, n, |r, c| 0.5 * (u.get(r, c).im + u.get(c, r).im));
    let eig_re = re.clone().symmetric_eigen();
    let vals: Vec<f64> = eig_re.eigenvalues.iter().copied().collect();
    let mut o = DMatrix::<f64>::zeros(n, n);
    let mut col = 0;
    for group in clusters_of(&vals, tol) {
        let q = DMatrix::from_fn(n, group.len(), |r, c| eig_re.eigenvectors[(r, group[c])]);
        let ic = q.transpose() * &im * &q;
        let ic = (&ic + ic.transpose()) * 0.5;
        let eig_im = ic.symmetric_eigen();
        let refined = &q * &eig_im.eigenvectors;
        for c in 0..group.len() {
            o.set_column(col, &refined.column(c));
            col += 1;
        }
    }
    let eigenvalues = (0..n)
        .map(|j| {
            let v = o.column(j);
            let l = Complex64::new((v.transpose() * &re * v)[(0, 0)], (v.transpose() * &im * v)[(0, 0)]);
            if l.norm() > 0.0 {
                l / l.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    Ok(SymmetricUnitaryFactor { orthogonal: RealMatrix::from_nalgebra(&o), eigenvalues })
}

/// Result of [`symmetric_unitary_sqrt`].
#[derive(Clone, Debug)]
pub struct SymmetricSqrt {
    pub sqrt: ComplexMatrix,
    pub factor: SymmetricUnitaryFactor,
    /// Indices of eigenvalues within tolerance of −1, where the principal
    /// branch is discontinuous.
    pub branch_cut: Vec<usize>,
    pub square_residual: f64,
    pub symmetry_residual: f64,
    pub unitarity_residual: f64,
}

/// Symmetric unitary square root `S` of a symmetric unitary `U`:
/// `S² = U`, `Sᵀ = S`, principal branch `e^{iθ/2}` with `θ ∈ (−π, π]`.
pub fn symmetric_unitary_sqrt(u: &ComplexMatrix, tol: f64) -> Result<SymmetricSqrt> {
    let factor = symmetric_unitary_factor(u, tol)?;
    let n = u.rows();
    let o = ComplexMatrix::from_real(&factor.orthogonal);
    let mut branch_cut = Vec::new();
    let roots: Vec<Complex64> = factor
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            if (l + 1.0).norm() <= tol {
                branch_cut.push(j);
            }
            Complex64::from_polar(1.0, principal_arg(l) / 2.0)
        })
        .collect();
    let d = ComplexMatrix::from_fn(n, n, |r, c| if r == c { roots[r] } else { Complex64::new(0.0, 0.0) });
    let s = o.mul(&d).mul(&o.transpose());
    Ok(SymmetricSqrt {
        square_residual: s.mul(&s).sub(u).max_abs(),
        symmetry_residual: symmetry_residual(&s)?,
        unitarity_residual: unitarity_residual(&s)?,
        sqrt: s,
        factor,
        branch_cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sqrt_of_identity_is_identity() {
        let s = symmetric_unitary_sqrt(&ComplexMatrix::identity(3), 1e-9).unwrap();
        assert!(s.sqrt.sub(&ComplexMatrix::identity(3)).max_abs() < 1e-12);
        assert!(s.branch_cut.is_empty());
    }

    #[test]
    fn sqrt_of_i_is_eighth_root_of_unity() {
        let u = ComplexMatrix::from_rows(vec![vec![Complex64::i()]]).unwrap();
        let s = symmetric_unitary_sqrt(&u, 1e-9).unwrap();
        let expected = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!((s.sqrt.get(0, 0) - expected).norm() < 1e-12);
        assert!((s.sqrt.get(0, 0) * s.sqrt.get(0, 0) - Complex64::i()).norm() < 1e-12);
    }

    #[test]
    fn minus_one_maps_to_i_and_is_flagged() {
        let u = ComplexMatrix::from_rows(vec![vec![Complex64::new(-1.0, 0.0)]]).unwrap();
        let s = symmetric_unitary_sqrt(&u, 1e-9).unwrap();
        assert!((s.sqrt.get(0, 0) - Complex64::i()).norm() < 1e-12);
        assert_eq!(s.branch_cut, vec![0]);
    }

    #[test]
    fn rejects_non_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random::unitary(3, &mut rng);
        assert!(matches!(symmetric_unitary_sqrt(&u, 1e-9), Err(Error::NotSymmetric { .. })));
        let m = ComplexMatrix::from_rows(vec![vec![Complex64::new(2.0, 0.0)]]).unwrap();
        assert!(matches!(symmetric_unitary_sqrt(&m, 1e-9), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn degenerate_symmetric_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=6 {
            let o = ComplexMatrix::from_real(&random::orthogonal(n, &mut rng));
            // repeated eigenvalues, including the branch point
            let phases: Vec<f64> = (0..n).map(|j| [0.7, 0.7, std::f64::consts::PI, -2.0][j % 4]).collect();
            let d = ComplexMatrix::from_fn(n, n, |r, c| {
                if r == c {
                    Complex64::from_polar(1.0, phases[r])
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let u = o.mul(&d).mul(&o.transpose());
            let s = symmetric_unitary_sqrt(&u, 1e-9).unwrap();
            assert!(s.square_residual < 1e-9, "n={n}: {}", s.square_residual);
            assert!(s.symmetry_residual < 1e-9);
            assert!(s.unitarity_residual < 1e-9);
        }
    }

    #[test]
    fn unitary_eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            let u = random::unitary(n, &mut rng);
            let e = unitary_eigen(&u, 1e-9).unwrap();
            assert!(e.reconstruct().sub(&u).max_abs() < 1e-10);
            assert!(unitarity_residual(&e.vectors).unwrap() < 1e-10);
            let r = e.randomize_basis(1e-9, &mut rng);
            assert!(r.reconstruct().sub(&u).max_abs() < 1e-10);
        }
    }

    #[test]
    fn principal_arg_branch() {
        assert_eq!(principal_arg(Complex64::new(-1.0, -0.0)), std::f64::consts::PI);
        assert_eq!(principal_arg(Complex64::new(-1.0, 0.0)), std::f64::consts::PI);
        assert!((principal_arg(Complex64::new(0.0, -1.0)) + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
