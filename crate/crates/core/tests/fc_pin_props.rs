//! Functional calculus and lifts: comultiplication against the closed forms,
//! `fc` against direct coordinates, lift residuals on random matrices.

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realspin_core::clifford::{Blade, Multivector, Signature};
use realspin_core::functional_calculus::{
    comultiplication, fc_equivariance, fc_eval, flip, generator, iterated_closed_form, Generator, GradedRatFunc,
};
use realspin_core::linalg::random;
use realspin_core::pin::{phi_lift, spin_lift};
use realspin_core::scalar::{GaussianRational, Rational};

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ c_ij x^i y^j` over `i, j ≤ 1`, plus `c_22 y²`.
fn combine(x: &GradedRatFunc, y: &GradedRatFunc, c: &[Rational; 5]) -> GradedRatFunc {
    let slots = x.slots();
    let terms = [GradedRatFunc::one(slots), x.clone(), y.clone(), x.try_mul(y).unwrap(), y.try_mul(y).unwrap()];
    terms.iter().zip(c).fold(GradedRatFunc::zero(slots), |acc, (t, k)| acc.try_add(&t.scale(k)).unwrap())
}

fn coefficients() -> impl Strategy<Value = [Rational; 5]> {
    prop::array::uniform5((-4i64..=4, 1i64..=3).prop_map(|(n, d)| rational(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn comultiplication_is_the_closed_form_homomorphism(c in coefficients(), d in coefficients()) {
        let (a, b) = (generator(Generator::A), generator(Generator::B));
        let (a2, b2) = iterated_closed_form(2);
        let (x, y) = (combine(&a, &b, &c), combine(&a, &b, &d));
        let dx = comultiplication(&x).unwrap();
        prop_assert_eq!(&dx, &combine(&a2, &b2, &c));
        let dxy = comultiplication(&x.try_mul(&y).unwrap()).unwrap();
        prop_assert_eq!(dxy, dx.try_mul(&comultiplication(&y).unwrap()).unwrap());
        prop_assert_eq!(flip(&dx).unwrap(), dx.clone());
        prop_assert_eq!(dx.comultiply_slot(0).unwrap(), dx.comultiply_slot(1).unwrap());
    }

    #[test]
    fn fc_matches_coordinates(p in 0usize..=3, q in 0usize..=3, coords in prop::collection::vec((-7i64..=7, 1i64..=5), 6)) {
        prop_assume!(p + q > 0);
        let sig = Signature::new(p, q).unwrap();
        let c: Vec<Rational> = coords[..p + q].iter().map(|&(n, d)| rational(n, d)).collect();
        let v = Multivector::vector(sig, &c.iter().cloned().map(GaussianRational::real).collect::<Vec<_>>()).unwrap();
        let img = fc_eval(&v).unwrap();
        let norm: Rational = c.iter().map(|x| x * x).sum();
        let a = (Rational::one() + norm).recip();
        prop_assert_eq!(&img.a_img, &Multivector::scalar(sig, GaussianRational::real(a.clone())));
        for (k, ck) in c.iter().enumerate() {
            let coeff = img.b_img.coeff(Blade::generator(k));
            prop_assert_eq!(coeff, GaussianRational::real(ck * &a));
        }
        prop_assert!(img.relations().unwrap().all());
        prop_assert!(fc_equivariance(&v).unwrap());
    }

    #[test]
    fn spin_lift_residual(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random::rotation(n, &mut rng);
        let lift = spin_lift(&r, 1e-9).unwrap();
        prop_assert!(lift.rho_residual < 1e-9);
        prop_assert!(lift.unit_residual < 1e-9);
    }

    #[test]
    fn phi_phase_squares_to_determinant(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random::unitary(n, &mut rng);
        let lift = phi_lift(&u, 1e-9).unwrap();
        prop_assert!((lift.central_phase * lift.central_phase - lift.det).norm() < 1e-9);
        prop_assert!(lift.rho_residual < 1e-9 && lift.phase_residual < 1e-9);
    }
}
