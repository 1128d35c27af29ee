use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::blade::{blade_product, Blade};
use super::signature::Signature;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational, Scalar};

/// ℤ/2-grading.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Element of a complex Clifford algebra, as a sparse map from blades to
/// coefficients. Zero coefficients are never stored.
///
/// `S = GaussianRational` is the exact algebra; `S = Complex64` carries
/// the transcendental elements produced by the spin lifts.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<S: Scalar = GaussianRational> {
    sig: Signature,
    terms: BTreeMap<Blade, S>,
}

pub type FloatMultivector = Multivector<Complex64>;

impl<S: Scalar> Multivector<S> {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: S) -> Self {
        Self::blade(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, S::one())
    }

    pub fn blade(sig: Signature, b: Blade, c: S) -> Self {
        let mut m = Self::zero(sig);
        m.add_term(b, c);
        m
    }

    /// Generator with zero-based index `k`.
    pub fn generator(sig: Signature, k: usize) -> Self {
        assert!(k < sig.dim(), "generator {k} out of range for {sig}");
        Self::blade(sig, Blade::generator(k), S::one())
    }

    /// `Σ coords[k] e_{k+1}`.
    pub fn vector(sig: Signature, coords: &[S]) -> Result<Self> {
        if coords.len() != sig.dim() {
            return Err(Error::Dimension(format!("{} coordinates for {sig}", coords.len())));
        }
        let mut m = Self::zero(sig);
        for (k, c) in coords.iter().enumerate() {
            m.add_term(Blade::generator(k), c.clone());
        }
        Ok(m)
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            m.add_term(b, c);
        }
        m
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coeff(Blade::SCALAR)
    }

    pub fn add_term(&mut self, b: Blade, c: S) {
        assert!(b.mask() & !self.sig.full_mask() == 0, "blade {b} outside {}", self.sig);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `Some(parity)` when every stored blade has the same grade mod 2.
    /// Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|b| b.is_odd());
        match it.next() {
            None => Some(Parity::Even),
            Some(first) => it.all(|o| o == first).then_some(if first { Parity::Odd } else { Parity::Even }),
        }
    }

    pub fn grade_part(&self, k: u32) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn is_grade(&self, k: u32) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    /// Coordinates of the grade-1 part.
    pub fn vector_coords(&self) -> Vec<S> {
        (0..self.sig.dim()).map(|k| self.coeff(Blade::generator(k))).collect()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(S::is_real)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(b, x)| (*b, x.clone() * c.clone())))
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    /// Same coefficients, read in another algebra with the same number of
    /// generators.
    pub fn with_signature(&self, sig: Signature) -> Result<Self> {
        if sig.dim() != self.sig.dim() {
            return Err(Error::SignatureMismatch { left: self.sig.to_string(), right: sig.to_string() });
        }
        Ok(Self { sig, terms: self.terms.clone() })
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch { left: self.sig.to_string(), right: other.sig.to_string() });
        }
        Ok(())
    }

    /// Clifford product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let neg_sq = self.sig.neg_square_mask();
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (blade, neg) = blade_product(*a, *b, neg_sq);
                let c = x.clone() * y.clone();
                out.add_term(blade, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Real structure: conjugate coefficients and negate each blade once per
    /// generator the C₂-action negates.
    pub fn real_conjugate(&self) -> Self {
        let neg = self.sig.conj_neg_mask();
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(b, c)| {
                let c = c.conj();
                (*b, if (b.mask() & neg).count_ones() % 2 == 1 { -c } else { c })
            }),
        )
    }

    /// The *-structure generated by self-adjoint generators (Kasparov's
    /// `e_j` are skew-adjoint): conjugate-linear and order-reversing.
    pub fn star(&self) -> Self {
        let neg = self.sig.star_neg_mask();
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(b, c)| {
                let c = c.conj();
                let flips = b.reversal_negates() ^ ((b.mask() & neg).count_ones() % 2 == 1);
                (*b, if flips { -c } else { c })
            }),
        )
    }

    /// Grade involution `x ↦ (−1)^{|x|} x` on each homogeneous part.
    pub fn grade_involution(&self) -> Self {
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(b, c)| (*b, if b.is_odd() { -c.clone() } else { c.clone() })),
        )
    }

    /// Inverse of an element whose product with its adjoint is a nonzero
    /// scalar (every Pin^c element, and every nonzero vector).
    pub fn versor_inverse(&self) -> Result<Self> {
        let adj = self.star();
        let n = self.try_mul(&adj)?;
        let s = n.scalar_part();
        if n.num_terms() > 1 || s.is_zero() {
            return Err(Error::NotPin("x·x* is not a nonzero scalar".into()));
        }
        let inv = s.try_inv().ok_or(Error::DivisionByZero)?;
        Ok(adj.scale(&inv))
    }

    /// Largest coefficient modulus of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let blades: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        blades.into_iter().map(|b| (self.coeff(*b) - other.coeff(*b)).magnitude()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(S::magnitude).fold(0.0, f64::max)
    }
}

impl Multivector<GaussianRational> {
    /// `⟨v, v⟩` for a grade-1 element with real coefficients; equals the
    /// scalar part of `v·v`.
    pub fn vector_norm_sq(&self) -> Result<Rational> {
        if !self.is_grade(1) {
            return Err(Error::NotVector(self.to_string()));
        }
        if !self.has_real_coefficients() {
            return Err(Error::NotVector(format!("{self} has non-real coefficients")));
        }
        let sq = self.try_mul(self)?;
        if sq.num_terms() > 1 {
            return Err(Error::NotVector(format!("{self} does not square to a scalar")));
        }
        Ok(sq.scalar_part().re)
    }

    pub fn to_float(&self) -> FloatMultivector {
        self.map_coeffs(Scalar::to_complex)
    }
}

impl FloatMultivector {
    /// Drops coefficients with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().filter(|(_, c)| c.norm() > tol).map(|(b, c)| (*b, *c)).collect(),
        }
    }

    pub fn vector_norm_sq_f64(&self) -> f64 {
        self.terms.iter().filter(|(b, _)| b.grade() == 1).map(|(_, c)| c.norm_sqr()).sum()
    }
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    /// Panics on signature mismatch; see [`Multivector::try_mul`].
    fn mul(self, o: &Multivector<S>) -> Multivector<S> {
        self.try_mul(o).expect("multivector signature mismatch")
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, o: &Multivector<S>) -> Multivector<S> {
        self.try_add(o).expect("multivector signature mismatch")
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, o: &Multivector<S>) -> Multivector<S> {
        self.try_sub(o).expect("multivector signature mismatch")
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector { sig: self.sig, terms: self.terms.iter().map(|(b, c)| (*b, -c.clone())).collect() }
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    /// Expression syntax accepted by the parser, e.g. `1/2 + 3/4*e1e3 - i*e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.display_parts();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (mag, *b == Blade::SCALAR) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{b}")?,
                (Some(m), true) => write!(f, "{m}")?,
                (Some(m), false) => write!(f, "{m}*{b}")?,
            }
        }
        Ok(())
    }
}

/// Image of `b` under the generator relabelling `k ↦ images[k]`, with the
/// sign of the permutation that sorts the relabelled index sequence.
pub(crate) fn relabel_blade(b: Blade, images: &[usize]) -> (Blade, bool) {
    let seq: Vec<usize> = b.indices().map(|k| images[k]).collect();
    let inversions = seq.iter().enumerate().map(|(i, x)| seq[i + 1..].iter().filter(|y| *y < x).count()).sum::<usize>();
    (Blade(seq.iter().fold(0, |m, k| m | 1 << k)), inversions % 2 == 1)
}

impl<S: Scalar> Multivector<S> {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.scalar_part().is_one()
    }

    /// Algebra map induced by sending generator `k` to generator
    /// `images[k]` of `target`. Injectivity is checked; whether the map
    /// respects squares and Real structures is up to the caller.
    pub fn relabel(&self, target: Signature, images: &[usize]) -> Result<Self> {
        if images.len() != self.sig.dim() {
            return Err(Error::Dimension(format!("{} images for {}", images.len(), self.sig)));
        }
        let mut seen = 0u32;
        for &k in images {
            if k >= target.dim() || seen >> k & 1 == 1 {
                return Err(Error::Dimension(format!("generator images {images:?} are not injective into {target}")));
            }
            seen |= 1 << k;
        }
        Ok(Multivector::from_terms(
            target,
            self.terms.iter().map(|(b, c)| {
                let (nb, neg) = relabel_blade(*b, images);
                (nb, if neg { -c.clone() } else { c.clone() })
            }),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn e(s: Signature, k: usize) -> Multivector {
        Multivector::generator(s, k)
    }

    fn real(s: Signature, r: Rational) -> Multivector {
        Multivector::scalar(s, GaussianRational::real(r))
    }

    #[test]
    fn generators_square_to_one() {
        let s = sig(1, 1);
        for k in 0..2 {
            assert!((&e(s, k) * &e(s, k)).is_one());
        }
    }

    #[test]
    fn distinct_generators_anticommute() {
        let s = sig(2, 0);
        assert_eq!(&e(s, 0) * &e(s, 1), -&(&e(s, 1) * &e(s, 0)));
        let b = &e(s, 0) * &e(s, 1);
        assert_eq!(&b * &b, real(s, int(-1)));
    }

    #[test]
    fn real_conjugate_examples() {
        let s = sig(1, 1);
        let (v1, w1) = (e(s, 0), e(s, 1));
        assert_eq!(w1.real_conjugate(), -&w1);
        let iv1 = v1.scale(&GaussianRational::i());
        assert_eq!(iv1.real_conjugate(), -&iv1);
        let vw = &v1 * &w1;
        assert_eq!(vw.real_conjugate(), -&vw);
        assert_eq!(vw.real_conjugate().real_conjugate(), vw);
    }

    #[test]
    fn star_examples() {
        let s = sig(2, 0);
        assert_eq!(e(s, 0).star(), e(s, 0));
        let e12 = &e(s, 0) * &e(s, 1);
        assert_eq!(e12.star(), &e(s, 1) * &e(s, 0));
        assert_eq!(e12.star(), -&e12);
        let i = Multivector::scalar(s, GaussianRational::i());
        assert_eq!(i.star(), -&i);
    }

    #[test]
    fn norm_squared() {
        let s = sig(1, 1);
        assert_eq!(e(s, 0).vector_norm_sq().unwrap(), int(1));
        let v = &e(s, 0).scale(&GaussianRational::real(int(3))) + &e(s, 1).scale(&GaussianRational::real(int(4)));
        assert_eq!(v.vector_norm_sq().unwrap(), int(25));
        assert_eq!(Multivector::zero(s).vector_norm_sq().unwrap(), int(0));
        assert!(real(s, int(1)).vector_norm_sq().is_err());
        assert!(e(s, 0).scale(&GaussianRational::i()).vector_norm_sq().is_err());
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        assert!(matches!(e(sig(1, 0), 0).try_mul(&e(sig(0, 1), 0)), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn versor_inverse() {
        let s = sig(2, 0);
        let v = &e(s, 0).scale(&GaussianRational::real(rat(3, 1))) + &e(s, 1);
        let inv = v.versor_inverse().unwrap();
        assert!((&v * &inv).is_one());
        assert!((&real(s, int(1)) + &e(s, 0)).versor_inverse().is_err());
    }

    #[test]
    fn kasparov_relations() {
        let k = Signature::kasparov(1, 1).unwrap();
        let (eps, ej) = (e(k, 0), e(k, 1));
        assert!((&eps * &eps).is_one());
        assert_eq!(&ej * &ej, real(k, int(-1)));
        assert_eq!(ej.real_conjugate(), ej);
        assert_eq!(ej.star(), -&ej);
        assert_eq!(eps.star(), eps);
    }

    #[test]
    fn display() {
        let s = sig(3, 0);
        let x = Multivector::from_terms(
            s,
            [
                (Blade(0), GaussianRational::real(rat(-1, 2))),
                (Blade(0b101), GaussianRational::real(rat(3, 4))),
                (Blade(0b10), GaussianRational::i()),
            ],
        );
        assert_eq!(x.to_string(), "-1/2 + i*e2 + 3/4*e1e3");
    }
}
