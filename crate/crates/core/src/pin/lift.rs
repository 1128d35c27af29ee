use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::element::{twisted_adjoint, PinElement};
use crate::clifford::{FloatMultivector, Multivector, Parity, Presentation, Signature};
use crate::error::{Error, Result};
use crate::linalg::{orthogonality_residual, realify, unitary_eigen, ComplexMatrix, RealMatrix, UnitaryEigen};

/// Result of [`spin_lift`].
#[derive(Clone, Debug)]
pub struct SpinLift {
    pub element: PinElement<Complex64>,
    /// `‖ρ(g) − R‖_∞` (largest entry).
    pub rho_residual: f64,
    /// `‖g g* − 1‖_∞` (largest coefficient).
    pub unit_residual: f64,
    pub reflections: usize,
}

/// Fixes the sign of a lift: the smallest blade whose coefficient exceeds
/// `tol` gets a positive real part, or a positive imaginary part when the
/// real part is negligible.
pub fn normalize_sign(g: &FloatMultivector, tol: f64) -> FloatMultivector {
    match g.terms().find(|(_, c)| c.norm() > tol) {
        Some((_, c)) if c.re < -tol || (c.re.abs() <= tol && c.im < 0.0) => -g,
        _ => g.clone(),
    }
}

/// Householder vector `u` with `(I − 2uuᵀ) x = e_k`, computed without
/// cancellation when `x` is close to `e_k`; `x` has unit norm and zeros
/// above `k`.
fn householder_to_axis(x: &[f64], k: usize) -> Vec<f64> {
    let tail: f64 = x[k + 1..].iter().map(|t| t * t).sum();
    let mut u = x.to_vec();
    u[k] = if x[k] > 0.0 { -tail / (1.0 + x[k]) } else { x[k] - 1.0 };
    let norm = u.iter().map(|t| t * t).sum::<f64>().sqrt();
    u.iter_mut().for_each(|t| *t /= norm);
    u
}

/// Even element `g` of `Spin(n) ⊂ CCl(sig)` with `ρ(g) = R`, built as a
/// product of Householder reflections. `sig` must have `n` generators
/// squaring to one.
#[allow(clippy::needless_range_loop)]
pub fn spin_lift_in(sig: Signature, r: &RealMatrix, tol: f64) -> Result<SpinLift> {
    r.require_square()?;
    let n = r.rows();
    if sig.dim() != n || sig.presentation != Presentation::Clifford {
        return Err(Error::Dimension(format!("{n}x{n} rotation in {sig}")));
    }
    if (0..n).any(|i| (0..n).any(|j| !r.get(i, j).is_finite())) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    let residual = orthogonality_residual(r)?;
    if residual > tol {
        return Err(Error::NotPin(format!("matrix is not orthogonal (residual {residual:e})")));
    }
    let det = r.determinant()?;
    if det < 0.0 {
        return Err(Error::NotRotation { det });
    }

    let mut a = r.to_rows();
    let mut reflections: Vec<Vec<f64>> = Vec::new();
    let mut flips = Vec::new();
    for k in 0..n {
        let x: Vec<f64> = (0..n).map(|i| if i < k { 0.0 } else { a[i][k] }).collect();
        let off: f64 = x.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, t)| t * t).sum::<f64>().sqrt();
        if off <= tol * 1e-3 && x[k] > 0.0 {
            continue;
        }
        if off <= tol * 1e-3 {
            flips.push(k);
            continue;
        }
        let u = householder_to_axis(&x, k);
        for c in 0..n {
            let dot: f64 = (0..n).map(|i| u[i] * a[i][c]).sum();
            for i in 0..n {
                a[i][c] -= 2.0 * u[i] * dot;
            }
        }
        reflections.push(u);
    }

    // R = H_1 ⋯ H_m · D, with D the product of the reflections in the flipped axes
    let mut g = FloatMultivector::one(sig);
    for u in &reflections {
        let coords: Vec<Complex64> = u.iter().map(|&t| Complex64::new(t, 0.0)).collect();
        g = g.try_mul(&Multivector::vector(sig, &coords)?)?;
    }
    for &k in &flips {
        g = g.try_mul(&Multivector::generator(sig, k))?;
    }
    if (reflections.len() + flips.len()) % 2 == 1 {
        return Err(Error::NotRotation { det });
    }
    let g = normalize_sign(&g.prune(f64::EPSILON * 16.0), tol);
    let rho = twisted_adjoint(&g, tol)?;
    let rho_residual = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (rho.get(i, j) - r.get(i, j)).norm())
        .fold(0.0, f64::max);
    let unit_residual = g.try_mul(&g.star())?.distance(&FloatMultivector::one(sig));
    Ok(SpinLift {
        element: PinElement::from_parts_unchecked(g, Parity::Even),
        rho_residual,
        unit_residual,
        reflections: reflections.len() + flips.len(),
    })
}

/// [`spin_lift_in`] with the standard `CCl(n,0)`.
pub fn spin_lift(r: &RealMatrix, tol: f64) -> Result<SpinLift> {
    spin_lift_in(Signature::new(r.rows(), 0)?, r, tol)
}

/// Result of [`phi_lift`]; the element lives in `CCl(nρ)` with the
/// interleaved generator order.
#[derive(Clone, Debug)]
pub struct PhiLift {
    pub element: PinElement<Complex64>,
    /// `e^{iΣθ_j/2}`.
    pub central_phase: Complex64,
    pub det: Complex64,
    pub angles: Vec<f64>,
    /// Eigenvalues within tolerance of −1, where `θ = π` was chosen.
    pub branch_cut: Vec<usize>,
    pub rho_residual: f64,
    pub unit_residual: f64,
    /// `|z² − det U|` with `z` read off the element's largest coefficient.
    pub phase_residual: f64,
}

/// `φ(U) = S · ∏_j (cos(θ_j/2) − sin(θ_j/2) f_{2j−1}f_{2j}) e^{iΣθ_j/2} · S*`
/// where `U = V diag(e^{iθ_j}) V*` and `S` lifts `realify(V)`.
pub fn phi_lift(u: &ComplexMatrix, tol: f64) -> Result<PhiLift> {
    let eig = unitary_eigen(u, tol)?;
    phi_lift_from_eigen(u, &eig, tol)
}

pub fn phi_lift_from_eigen(u: &ComplexMatrix, eig: &UnitaryEigen, tol: f64) -> Result<PhiLift> {
    let n = u.rows();
    let sig = Signature::interleaved(n)?;
    let s = spin_lift_in(sig, &realify(&eig.vectors, tol)?, tol)?.element.into_value();
    let angles = eig.angles();
    let mut d = FloatMultivector::one(sig);
    for (j, &t) in angles.iter().enumerate() {
        let pair = Multivector::generator(sig, 2 * j).try_mul(&Multivector::generator(sig, 2 * j + 1))?;
        let factor = &FloatMultivector::scalar(sig, Complex64::new((t / 2.0).cos(), 0.0))
            - &pair.scale(&Complex64::new((t / 2.0).sin(), 0.0));
        d = d.try_mul(&factor)?;
    }
    let central_phase = Complex64::from_polar(1.0, angles.iter().sum::<f64>() / 2.0);
    let g = s.try_mul(&d.scale(&central_phase))?.try_mul(&s.star())?.prune(f64::EPSILON * 16.0);

    let det = u.determinant()?;
    let branch_cut =
        eig.eigenvalues.iter().enumerate().filter(|(_, l)| (*l + 1.0).norm() <= tol).map(|(j, _)| j).collect();
    let real = realify(u, tol)?;
    let rho = twisted_adjoint(&g, tol)?;
    let rho_residual = (0..2 * n)
        .flat_map(|i| (0..2 * n).map(move |j| (i, j)))
        .map(|(i, j)| (rho.get(i, j) - real.get(i, j)).norm())
        .fold(0.0, f64::max);
    let unit_residual = g.try_mul(&g.star())?.distance(&FloatMultivector::one(sig));
    let big = g.terms().map(|(_, c)| *c).fold(Complex64::new(0.0, 0.0), |m, c| if c.norm() > m.norm() { c } else { m });
    let z = big / big.norm();
    let phase_residual = (z * z - det).norm();
    Ok(PhiLift {
        element: PinElement::from_parts_unchecked(g, Parity::Even),
        central_phase,
        det,
        angles,
        branch_cut,
        rho_residual,
        unit_residual,
        phase_residual,
    })
}

/// Distance between the lifts computed from two eigendecompositions of
/// `U`: the library's and one with every eigenspace re-based by a random
/// unitary and the eigenvalues shuffled.
pub fn phi_canonicity_residual<R: Rng + ?Sized>(u: &ComplexMatrix, tol: f64, rng: &mut R) -> Result<f64> {
    let eig = unitary_eigen(u, tol)?;
    let other = eig.randomize_basis(tol, rng);
    let n = u.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let shuffled = UnitaryEigen {
        vectors: ComplexMatrix::from_fn(n, n, |r, c| *other.vectors.get(r, perm[c])),
        eigenvalues: perm.iter().map(|&j| other.eigenvalues[j]).collect(),
    };
    let a = phi_lift_from_eigen(u, &eig, tol)?;
    let b = phi_lift_from_eigen(u, &shuffled, tol)?;
    Ok(a.element.value().distance(b.element.value()))
}

/// `φ(Ū)` against `conj(φ(U))`.
#[derive(Clone, Debug)]
pub struct PhiRealCheck {
    pub holds: bool,
    pub residual: f64,
}

pub fn check_phi_real(u: &ComplexMatrix, tol: f64) -> Result<PhiRealCheck> {
    let lhs = phi_lift(&u.conj(), tol)?;
    let rhs = phi_lift(u, tol)?.element.real_conjugate();
    let residual = lhs.element.value().distance(rhs.value());
    Ok(PhiRealCheck { holds: residual <= tol, residual })
}

/// `g ∈ Spin^c(n)^{C₂} = Spin(n)`: an even element of `CCl(n,0)` fixed by
/// the Real structure.
pub fn is_fixed_spinc<S: crate::scalar::Scalar>(g: &PinElement<S>, tol: f64) -> Result<bool> {
    let sig = g.signature();
    if sig.q != 0 || sig.presentation != Presentation::Clifford {
        return Err(Error::InvalidSignature(format!("{sig} is not CCl(n,0)")));
    }
    if g.parity() != Parity::Even {
        return Err(Error::NotPin("odd element".into()));
    }
    let diff = g.real_conjugate().value() - g.value();
    Ok(super::element::negligible(&diff, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    const TOL: f64 = 1e-9;

    #[test]
    fn identity_lifts_to_one() {
        let l = spin_lift(&RealMatrix::identity(4), TOL).unwrap();
        assert!(l.element.value().distance(&FloatMultivector::one(Signature::new(4, 0).unwrap())) < 1e-15);
    }

    #[test]
    fn quarter_turn() {
        let r = RealMatrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let l = spin_lift(&r, TOL).unwrap();
        let g = l.element.value();
        assert!(l.rho_residual < 1e-12);
        assert!((g.scalar_part().re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((g.coeff(crate::clifford::Blade(0b11)).re + FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn reflections_are_rejected() {
        let r = RealMatrix::from_rows(vec![vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(spin_lift(&r, TOL), Err(Error::NotRotation { .. })));
    }

    #[test]
    fn random_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=8 {
            let r = random::rotation(n, &mut rng);
            let l = spin_lift(&r, TOL).unwrap();
            assert!(l.rho_residual < 1e-10, "n={n}: {}", l.rho_residual);
            assert!(l.unit_residual < 1e-10);
            assert!(is_fixed_spinc(&l.element, TOL).unwrap());
        }
    }

    #[test]
    fn phi_of_i() {
        let u = ComplexMatrix::from_rows(vec![vec![Complex64::i()]]).unwrap();
        let p = phi_lift(&u, TOL).unwrap();
        let g = p.element.value();
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!((g.scalar_part() - z * FRAC_1_SQRT_2).norm() < 1e-12);
        assert!((g.coeff(crate::clifford::Blade(0b11)) + z * FRAC_1_SQRT_2).norm() < 1e-12);
        assert!(p.rho_residual < 1e-12 && p.phase_residual < 1e-12);
        let c = check_phi_real(&u, TOL).unwrap();
        assert!(c.holds, "{}", c.residual);
    }

    #[test]
    fn phi_homomorphism_and_canonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let u = random::unitary(n, &mut rng);
            let v = random::unitary(n, &mut rng);
            let (pu, pv, puv) =
                (phi_lift(&u, TOL).unwrap(), phi_lift(&v, TOL).unwrap(), phi_lift(&u.mul(&v), TOL).unwrap());
            let prod = pu.element.value() * pv.element.value();
            assert!(puv.element.value().distance(&prod) < 1e-9);
            assert!(pu.rho_residual < 1e-9 && pu.phase_residual < 1e-9);
            assert!(phi_canonicity_residual(&u, TOL, &mut rng).unwrap() < 1e-9);
        }
    }

    #[test]
    fn degenerate_and_branch_cut() {
        let minus = ComplexMatrix::identity(2).scale(Complex64::new(-1.0, 0.0));
        let p = phi_lift(&minus, TOL).unwrap();
        assert_eq!(p.branch_cut, vec![0, 1]);
        assert!(p.rho_residual < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(phi_canonicity_residual(&minus, TOL, &mut rng).unwrap() < 1e-9);
    }

    #[test]
    fn phase_is_not_fixed() {
        let sig = Signature::new(2, 0).unwrap();
        let g = PinElement::from_parts_unchecked(
            FloatMultivector::scalar(sig, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
            Parity::Even,
        );
        assert!(!is_fixed_spinc(&g, TOL).unwrap());
    }
}
