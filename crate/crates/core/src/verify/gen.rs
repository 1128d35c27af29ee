use rand::Rng;

use crate::clifford::{Blade, Multivector, Signature};
use crate::scalar::{rat, GaussianRational, Rational};

/// `a/b` with `|a| ≤ num` and `1 ≤ b ≤ den`.
pub fn random_rational<R: Rng + ?Sized>(num: i64, den: i64, rng: &mut R) -> Rational {
    rat(rng.random_range(-num..=num), rng.random_range(1..=den))
}

/// `CCl(p, q)` with `1 ≤ p + q ≤ max_dim`.
pub fn random_signature<R: Rng + ?Sized>(max_dim: usize, rng: &mut R) -> Signature {
    let n = rng.random_range(1..=max_dim);
    let p = rng.random_range(0..=n);
    Signature::new(p, n - p).expect("dimension within bounds")
}

/// Sparse element with small Gaussian-rational coefficients; each blade is
/// present with probability `density`.
pub fn random_multivector<R: Rng + ?Sized>(sig: Signature, density: f64, rng: &mut R) -> Multivector {
    let mut terms = Vec::new();
    for m in 0..1u32 << sig.dim() {
        if rng.random_bool(density) {
            terms.push((Blade(m), GaussianRational::new(random_rational(5, 4, rng), random_rational(5, 4, rng))));
        }
    }
    Multivector::from_terms(sig, terms)
}

/// Grade-1 element with real rational coordinates.
pub fn random_vector<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Multivector {
    let c: Vec<GaussianRational> = (0..sig.dim()).map(|_| GaussianRational::real(random_rational(9, 5, rng))).collect();
    Multivector::vector(sig, &c).expect("length matches")
}
