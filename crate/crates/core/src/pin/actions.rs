use rand::Rng;

use super::element::{matrix_negligible, twisted_adjoint, unit_inverse, PinElement};
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, GaussianRational, MultiPoly, Rational, Scalar};

/// `D M D` with `D` the diagonal sign matrix of the C₂-action on `V`.
pub fn conjugate_orthogonal<S: Scalar>(sig: Signature, m: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        let x = m.get(r, c).conj();
        if sig.is_sign_generator(r) != sig.is_sign_generator(c) {
            -x
        } else {
            x
        }
    })
}

/// `ρ(ḡ) = conj(ρ(g))`, i.e. ρ is a Real homomorphism.
pub fn check_rho_real_equivariance<S: Scalar>(g: &PinElement<S>, tol: f64) -> Result<bool> {
    let lhs = g.real_conjugate().rho(tol)?;
    let rhs = conjugate_orthogonal(g.signature(), &g.rho(tol)?);
    Ok(matrix_negligible(&lhs.sub(&rhs), tol))
}

/// The model `v ⊗ f ↦ g v ⊗ (f ∘ ρ(g)⁻¹)` of `i_V(g)` on
/// `CCl(V) ⊗ (polynomials on V)`.
pub fn iv_model_action(g: &PinElement, x: &Multivector, f: &MultiPoly) -> Result<(Multivector, MultiPoly)> {
    let n = g.signature().dim();
    if f.nvars() != n {
        return Err(Error::Dimension(format!("polynomial in {} variables on a {n}-dimensional space", f.nvars())));
    }
    let rho = g.rho(0.0)?.map(|c| c.re.clone());
    // ρ is orthogonal, so ρ⁻¹ = ρᵀ and (ρ⁻¹ t)_i = Σ_j ρ_{ji} t_j
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut p = MultiPoly::zero(n);
            for j in 0..n {
                p = &p + &MultiPoly::var(n, j).scale(rho.get(j, i));
            }
            p
        })
        .collect();
    Ok((g.value().try_mul(x)?, f.compose(&images)))
}

/// Outcome of the Clifford identities behind the well-definedness of the
/// Bott-class map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaIdentities {
    /// `g⁻¹((g v g⁻¹)(g w)) = v w`.
    pub product: bool,
    /// `‖g v g⁻¹‖² = ‖v‖²`.
    pub norm: bool,
}

pub fn alpha_identities(g: &PinElement, v: &Multivector, w: &Multivector) -> Result<AlphaIdentities> {
    let ginv = unit_inverse(g.value(), 0.0)?;
    let gv = g.value().try_mul(v)?.try_mul(&ginv)?;
    let lhs = ginv.try_mul(&gv.try_mul(&g.value().try_mul(w)?)?)?;
    let product = lhs == v.try_mul(w)?;
    let norm = gv.vector_norm_sq()? == v.vector_norm_sq()?;
    Ok(AlphaIdentities { product, norm })
}

/// Random unit vector with rational coordinates: inverse stereographic
/// projection of an integer point, then a random signed permutation.
pub fn random_rational_unit_vector<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Vec<Rational> {
    assert!(n > 0);
    let a: Vec<i64> = (0..n - 1).map(|_| rng.random_range(-bound..=bound)).collect();
    let s: i64 = a.iter().map(|x| x * x).sum();
    let den = int(s + 1);
    let mut v: Vec<Rational> = a.iter().map(|x| int(2 * x) / den.clone()).collect();
    v.push(int(s - 1) / den);
    for k in (1..n).rev() {
        v.swap(k, rng.random_range(0..=k));
    }
    for x in v.iter_mut() {
        if rng.random_bool(0.5) {
            *x = -x.clone();
        }
    }
    v
}

/// Product of `k` random rational unit vectors times a random unit phase
/// from a Pythagorean triple.
pub fn random_pin<R: Rng + ?Sized>(sig: Signature, k: usize, rng: &mut R) -> PinElement {
    let n = sig.dim();
    let vectors: Vec<Multivector> = (0..k)
        .map(|_| {
            let c: Vec<GaussianRational> =
                random_rational_unit_vector(n, 4, rng).into_iter().map(GaussianRational::real).collect();
            Multivector::vector(sig, &c).expect("length matches")
        })
        .collect();
    let p = random_rational_unit_vector(2, 4, rng);
    let phase = GaussianRational::new(p[0].clone(), p[1].clone());
    PinElement::from_factors(sig, &vectors, phase).expect("factors are unit vectors")
}

/// Exact homomorphism check `ρ(gh) = ρ(g)ρ(h)`.
pub fn rho_homomorphism_holds(g: &PinElement, h: &PinElement) -> Result<bool> {
    let gh = twisted_adjoint(&g.compose(h)?.into_value(), 0.0)?;
    Ok(gh == g.rho(0.0)?.mul(&h.rho(0.0)?))
}
