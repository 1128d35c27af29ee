//! The functional-calculus map at a vector `v`: `a ↦ 1/(1+|v|²)` and
//! `b ↦ v/(1+|v|²)`, with its Clifford-level checks.

use num_traits::One;
use serde::Serialize;

use crate::clifford::{Multivector, Parity};
use crate::error::{Error, Result};
use crate::pin::{alpha_identities, PinElement};
use crate::scalar::{GaussianRational, Rational};

/// Images of the generators `a`, `b` at a fixed vector.
#[derive(Clone, PartialEq, Debug)]
pub struct FcImage {
    pub a_img: Multivector,
    pub b_img: Multivector,
}

/// Which relations of the generators hold for an [`FcImage`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FcRelations {
    /// `b² = a − a²`.
    pub quadratic: bool,
    /// `a` even, `b` odd (or zero).
    pub parity: bool,
    pub self_adjoint: bool,
    /// `a b = b a`.
    pub commute: bool,
}

impl FcRelations {
    pub fn all(&self) -> bool {
        self.quadratic && self.parity && self.self_adjoint && self.commute
    }
}

/// Evaluates at `v`; `v` must be a vector (or zero) with real rational
/// coefficients.
pub fn fc_eval(v: &Multivector) -> Result<FcImage> {
    let sig = v.signature();
    if v.is_zero() {
        return Ok(FcImage { a_img: Multivector::one(sig), b_img: Multivector::zero(sig) });
    }
    if !v.is_grade(1) || !v.has_real_coefficients() {
        return Err(Error::NotVector(format!("{v} is not a real grade-1 element")));
    }
    let norm = v.vector_norm_sq()?;
    let a = (Rational::one() + norm).recip();
    let a_gr = GaussianRational::real(a);
    Ok(FcImage { a_img: Multivector::scalar(sig, a_gr.clone()), b_img: v.scale(&a_gr) })
}

impl FcImage {
    pub fn relations(&self) -> Result<FcRelations> {
        let a2 = self.a_img.try_mul(&self.a_img)?;
        let b2 = self.b_img.try_mul(&self.b_img)?;
        let quadratic = b2 == self.a_img.try_sub(&a2)?;
        let parity = self.a_img.parity() == Some(Parity::Even)
            && (self.b_img.is_zero() || self.b_img.parity() == Some(Parity::Odd));
        let self_adjoint = self.a_img.star() == self.a_img && self.b_img.star() == self.b_img;
        let commute = self.a_img.commutator(&self.b_img)?.is_zero();
        Ok(FcRelations { quadratic, parity, self_adjoint, commute })
    }

    pub fn real_conjugate(&self) -> Self {
        Self { a_img: self.a_img.real_conjugate(), b_img: self.b_img.real_conjugate() }
    }
}

/// `fc(v̄) = conj(fc(v))`, compared exactly.
pub fn fc_equivariance(v: &Multivector) -> Result<bool> {
    Ok(fc_eval(&v.real_conjugate())? == fc_eval(v)?.real_conjugate())
}

/// For even unit `g`: `g⁻¹((g v g⁻¹)(g w)) = v w` and `‖g v g⁻¹‖² = ‖v‖²`.
pub fn alpha_conjugation_check(g: &PinElement, v: &Multivector, w: &Multivector) -> Result<bool> {
    if g.parity() != Parity::Even {
        return Err(Error::NotPin("alpha conjugation needs an even element".into()));
    }
    let r = alpha_identities(g, v, w)?;
    Ok(r.product && r.norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::pin::random_pin;
    use crate::scalar::{int, parse_rational, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gr(r: Rational) -> GaussianRational {
        GaussianRational::real(r)
    }

    fn vector(sig: Signature, xs: &[i64]) -> Multivector {
        Multivector::vector(sig, &xs.iter().map(|&x| gr(int(x))).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn zero_vector() {
        let sig = Signature::new(2, 0).unwrap();
        let f = fc_eval(&Multivector::zero(sig)).unwrap();
        assert!(f.a_img.is_one());
        assert!(f.b_img.is_zero());
        assert!(f.relations().unwrap().all());
    }

    #[test]
    fn unit_and_norm_25_vectors() {
        let sig = Signature::new(1, 0).unwrap();
        let f = fc_eval(&vector(sig, &[1])).unwrap();
        assert_eq!(f.a_img.scalar_part(), gr(rat(1, 2)));
        let b2 = f.b_img.try_mul(&f.b_img).unwrap();
        assert_eq!(b2, Multivector::scalar(sig, gr(rat(1, 4))));
        assert!(f.relations().unwrap().all());

        let sig = Signature::new(1, 1).unwrap();
        let v = vector(sig, &[3, 4]);
        let f = fc_eval(&v).unwrap();
        assert_eq!(f.a_img.scalar_part(), gr(rat(1, 26)));
        assert_eq!(f.b_img, v.scale(&gr(rat(1, 26))));
        assert_eq!(f.b_img.try_mul(&f.b_img).unwrap().scalar_part(), gr(rat(25, 676)));
        assert!(f.relations().unwrap().all());
    }

    #[test]
    fn rejects_non_vectors() {
        let sig = Signature::new(2, 0).unwrap();
        let e12 = Multivector::generator(sig, 0).try_mul(&Multivector::generator(sig, 1)).unwrap();
        assert!(fc_eval(&e12).is_err());
        let iv = Multivector::generator(sig, 0).scale(&GaussianRational::new(int(0), int(1)));
        assert!(fc_eval(&iv).is_err());
    }

    #[test]
    fn equivariance() {
        let sig = Signature::new(0, 1).unwrap();
        let w = Multivector::generator(sig, 0);
        let f = fc_eval(&w.real_conjugate()).unwrap();
        assert_eq!(f.a_img.scalar_part(), gr(rat(1, 2)));
        assert_eq!(f.b_img, w.scale(&gr(rat(-1, 2))));
        assert!(fc_equivariance(&w).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = rng.random_range(0..=4);
            let q = rng.random_range(0..=4 - p);
            if p + q == 0 {
                continue;
            }
            let sig = Signature::new(p, q).unwrap();
            let xs: Vec<GaussianRational> = (0..p + q)
                .map(|_| {
                    gr(parse_rational(&format!("{}/{}", rng.random_range(-9..=9), rng.random_range(1..=9))).unwrap())
                })
                .collect();
            assert!(fc_equivariance(&Multivector::vector(sig, &xs).unwrap()).unwrap());
        }
    }

    #[test]
    fn alpha_checks() {
        let sig = Signature::new(2, 0).unwrap();
        let (v1, v2) = (Multivector::generator(sig, 0), Multivector::generator(sig, 1));
        let one = PinElement::from_factors(sig, &[], GaussianRational::one()).unwrap();
        assert!(alpha_conjugation_check(&one, &v1, &v2).unwrap());
        let g = PinElement::from_factors(sig, &[v1.clone(), v2.clone()], GaussianRational::one()).unwrap();
        assert!(alpha_conjugation_check(&g, &v1, &v2).unwrap());
        let odd = PinElement::from_factors(sig, std::slice::from_ref(&v1), GaussianRational::one()).unwrap();
        assert!(alpha_conjugation_check(&odd, &v1, &v2).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sig = Signature::new(2, 2).unwrap();
        let g = random_pin(sig, 2, &mut rng);
        let v = vector(sig, &[1, -2, 0, 3]);
        let w = vector(sig, &[0, 1, 1, 1]);
        assert!(alpha_conjugation_check(&g, &v, &w).unwrap());
    }
}
