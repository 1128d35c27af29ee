//! `CCl(V ⊕ W) ≅ CCl(V) ⊗̂ CCl(W)` with the Koszul sign rule.

use std::collections::BTreeMap;

use super::blade::{blade_product, Blade};
use super::multivector::{relabel_blade, Multivector};
use super::signature::{Layout, Signature};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Partition of the generators of an algebra into a left and a right
/// factor. Each factor keeps the relative order of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    sig: Signature,
    left_mask: u32,
    left: Signature,
    right: Signature,
    /// Position of each generator inside its own factor.
    local: Vec<usize>,
}

impl SplitSpec {
    /// Split by an explicit mask of left-factor generators.
    pub fn new(sig: Signature, left_mask: u32) -> Result<Self> {
        if sig.layout != Layout::Blocked {
            return Err(Error::InvalidSplit(format!("{sig}: convert to the blocked layout first")));
        }
        if left_mask & !sig.full_mask() != 0 {
            return Err(Error::InvalidSplit(format!("mask {left_mask:#b} names generators outside {sig}")));
        }
        let count = |mask: u32, sign: bool| {
            (0..sig.dim()).filter(|&k| mask >> k & 1 == 1 && sig.is_sign_generator(k) == sign).count()
        };
        let right_mask = sig.full_mask() & !left_mask;
        let left =
            Signature::build(count(left_mask, false), count(left_mask, true), Layout::Blocked, sig.presentation)?;
        let right =
            Signature::build(count(right_mask, false), count(right_mask, true), Layout::Blocked, sig.presentation)?;
        let (mut nl, mut nr) = (0, 0);
        let local = (0..sig.dim())
            .map(|k| {
                let slot = if left_mask >> k & 1 == 1 { &mut nl } else { &mut nr };
                *slot += 1;
                *slot - 1
            })
            .collect();
        Ok(Self { sig, left_mask, left, right, local })
    }

    /// `ℝ^{p₁+p₂, q₁+q₂} = ℝ^{p₁,q₁} ⊕ ℝ^{p₂,q₂}`: the first `p₁` trivial and
    /// first `q₁` sign generators go left.
    pub fn blocks(sig: Signature, p1: usize, q1: usize) -> Result<Self> {
        if p1 > sig.p || q1 > sig.q {
            return Err(Error::InvalidSplit(format!("({p1},{q1}) does not fit in {sig}")));
        }
        let mask = ((1u32 << p1) - 1) | (((1u32 << q1) - 1) << sig.p);
        Self::new(sig, mask)
    }

    /// Requires the factors to be the given algebras.
    pub fn expect(self, left: Signature, right: Signature) -> Result<Self> {
        if self.left != left || self.right != right {
            return Err(Error::InvalidSplit(format!(
                "split of {} gives {} ⊗ {}, expected {left} ⊗ {right}",
                self.sig, self.left, self.right
            )));
        }
        Ok(self)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn left(&self) -> Signature {
        self.left
    }

    pub fn right(&self) -> Signature {
        self.right
    }

    /// Sign picked up by moving the left generators of `b` in front of its
    /// right generators.
    fn shuffle_negates(&self, b: Blade) -> bool {
        let (l, r) = (b.mask() & self.left_mask, b.mask() & !self.left_mask);
        // every (right, left) pair with right index below left index is an inversion
        let inv: u32 = Blade(r).indices().map(|k| (l >> k).count_ones()).sum();
        inv % 2 == 1
    }

    fn local_blade(&self, mask: u32) -> Blade {
        Blade(Blade(mask).indices().fold(0, |m, k| m | 1 << self.local[k]))
    }

    fn global_images(&self, left: bool) -> Vec<usize> {
        (0..self.sig.dim()).filter(|&k| (self.left_mask >> k & 1 == 1) == left).collect()
    }

    pub fn split<S: Scalar>(&self, x: &Multivector<S>) -> Result<GradedTensor<S>> {
        if x.signature() != self.sig {
            return Err(Error::SignatureMismatch { left: x.signature().to_string(), right: self.sig.to_string() });
        }
        let mut t = GradedTensor::zero(self.left, self.right);
        for (b, c) in x.terms() {
            let lb = self.local_blade(b.mask() & self.left_mask);
            let rb = self.local_blade(b.mask() & !self.left_mask);
            t.add_term(lb, rb, if self.shuffle_negates(*b) { -c.clone() } else { c.clone() });
        }
        Ok(t)
    }

    /// `a ⊗ b ↦ ι(a)·ι(b)`.
    pub fn merge<S: Scalar>(&self, t: &GradedTensor<S>) -> Result<Multivector<S>> {
        if t.left != self.left || t.right != self.right {
            return Err(Error::InvalidSplit(format!(
                "tensor {} ⊗ {} does not match split of {}",
                t.left, t.right, self.sig
            )));
        }
        let (li, ri) = (self.global_images(true), self.global_images(false));
        let mut out = Multivector::zero(self.sig);
        for ((a, b), c) in &t.terms {
            let (ga, na) = relabel_blade(*a, &li);
            let (gb, nb) = relabel_blade(*b, &ri);
            let (g, nm) = blade_product(ga, gb, self.sig.neg_square_mask());
            out.add_term(g, if na ^ nb ^ nm { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }
}

/// Element of `A ⊗̂ B` for two Clifford algebras, in the basis of pairs of
/// blades.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedTensor<S: Scalar> {
    left: Signature,
    right: Signature,
    terms: BTreeMap<(Blade, Blade), S>,
}

impl<S: Scalar> GradedTensor<S> {
    pub fn zero(left: Signature, right: Signature) -> Self {
        Self { left, right, terms: BTreeMap::new() }
    }

    pub fn pure(a: &Multivector<S>, b: &Multivector<S>) -> Self {
        let mut t = Self::zero(a.signature(), b.signature());
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                t.add_term(*x, *y, c.clone() * d.clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, a: Blade, b: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&(a, b)).map_or(c.clone(), |old| old + c);
        if !sum.is_zero() {
            self.terms.insert((a, b), sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Blade, Blade), &S)> {
        self.terms.iter()
    }

    pub fn left(&self) -> Signature {
        self.left
    }

    pub fn right(&self) -> Signature {
        self.right
    }

    /// `(a ⊗ b)(c ⊗ d) = (−1)^{|b||c|} ac ⊗ bd`.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.left != o.left || self.right != o.right {
            return Err(Error::SignatureMismatch {
                left: format!("{} ⊗ {}", self.left, self.right),
                right: format!("{} ⊗ {}", o.left, o.right),
            });
        }
        let mut out = Self::zero(self.left, self.right);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &o.terms {
                let (ac, n1) = blade_product(*a, *c, self.left.neg_square_mask());
                let (bd, n2) = blade_product(*b, *d, self.right.neg_square_mask());
                let koszul = b.is_odd() && c.is_odd();
                let v = x.clone() * y.clone();
                out.add_term(ac, bd, if n1 ^ n2 ^ koszul { -v } else { v });
            }
        }
        Ok(out)
    }

    /// `conj(a ⊗ b) = conj(a) ⊗ conj(b)`.
    pub fn real_conjugate(&self) -> Self {
        self.factorwise(|m| m.real_conjugate(), false)
    }

    /// `(a ⊗ b)* = (−1)^{|a||b|} a* ⊗ b*`.
    pub fn star(&self) -> Self {
        self.factorwise(|m| m.star(), true)
    }

    fn factorwise(&self, f: impl Fn(&Multivector<S>) -> Multivector<S>, koszul: bool) -> Self {
        let mut out = Self::zero(self.left, self.right);
        for ((a, b), c) in &self.terms {
            let fa = f(&Multivector::blade(self.left, *a, c.clone()));
            let fb = f(&Multivector::blade(self.right, *b, S::one()));
            let sign = koszul && a.is_odd() && b.is_odd();
            for (x, cx) in fa.terms() {
                for (y, cy) in fb.terms() {
                    let v = cx.clone() * cy.clone();
                    out.add_term(*x, *y, if sign { -v } else { v });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn gen(s: Signature, k: usize) -> Multivector {
        Multivector::generator(s, k)
    }

    #[test]
    fn generator_splits_as_pure_tensor() {
        let s = Signature::new(3, 2).unwrap();
        let spec = SplitSpec::blocks(s, 2, 1).unwrap();
        assert_eq!(spec.left(), Signature::new(2, 1).unwrap());
        assert_eq!(spec.right(), Signature::new(1, 1).unwrap());
        let e1 = gen(s, 0);
        let t = spec.split(&e1).unwrap();
        let one_r = Multivector::<GaussianRational>::one(spec.right());
        assert_eq!(t, GradedTensor::pure(&gen(spec.left(), 0), &one_r));
        assert_eq!(spec.merge(&t).unwrap(), e1);
    }

    #[test]
    fn koszul_sign() {
        let s = Signature::new(3, 2).unwrap();
        let spec = SplitSpec::blocks(s, 2, 1).unwrap();
        let (l, r) = (spec.left(), spec.right());
        let one_l = Multivector::<GaussianRational>::one(l);
        let one_r = Multivector::<GaussianRational>::one(r);
        // (1 ⊗ e1')(e2 ⊗ 1) = −(e2 ⊗ e1')
        let x = GradedTensor::pure(&one_l, &gen(r, 0));
        let y = GradedTensor::pure(&gen(l, 1), &one_r);
        let xy = x.try_mul(&y).unwrap();
        assert_eq!(xy, GradedTensor::pure(&-&gen(l, 1), &gen(r, 0)));
        // merged side: e1' is global generator 2 (v3), e2 is global 1
        let merged = &gen(s, 2) * &gen(s, 1);
        assert_eq!(spec.merge(&xy).unwrap(), merged);
    }

    #[test]
    fn rejects_bad_partitions() {
        let s = Signature::new(2, 1).unwrap();
        assert!(SplitSpec::new(s, 0b1000).is_err());
        assert!(SplitSpec::blocks(s, 3, 0).is_err());
        assert!(SplitSpec::blocks(s, 1, 1)
            .unwrap()
            .expect(Signature::new(1, 0).unwrap(), Signature::new(1, 1).unwrap())
            .is_err());
        assert!(SplitSpec::new(Signature::interleaved(1).unwrap(), 1).is_err());
    }
}
