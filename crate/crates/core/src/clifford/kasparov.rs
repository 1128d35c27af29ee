//! Changes of presentation: `CCl_{p,q} ≅ C_{p,q}` and the blocked versus
//! interleaved generator orderings of `CCl(nρ)`.

use super::multivector::Multivector;
use super::signature::{Layout, Presentation, Signature};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `i^k` for the number of sign generators in a blade.
fn i_pow<S: Scalar>(k: u32) -> S {
    match k % 4 {
        0 => S::one(),
        1 => S::imag_unit(),
        2 => -S::one(),
        _ => -S::imag_unit(),
    }
}

/// `v_i ↦ ε_i`, `w_j ↦ i e_j`.
pub fn to_kasparov<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let sig = x.signature();
    sig.require_clifford_blocked()?;
    let target = Signature::kasparov(sig.p, sig.q)?;
    let w = sig.sign_mask();
    Ok(Multivector::from_terms(target, x.terms().map(|(b, c)| (*b, c.clone() * i_pow((b.mask() & w).count_ones())))))
}

/// Inverse of [`to_kasparov`]: `e_j ↦ −i w_j`.
pub fn from_kasparov<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let sig = x.signature();
    if sig.presentation != Presentation::Kasparov {
        return Err(Error::InvalidSignature(format!("{sig} is not a Kasparov presentation")));
    }
    let target = Signature::new(sig.p, sig.q)?;
    let w = sig.sign_mask();
    Ok(Multivector::from_terms(
        target,
        x.terms().map(|(b, c)| (*b, c.clone() * i_pow(4 - (b.mask() & w).count_ones() % 4))),
    ))
}

/// Generator images for `v_j ↦ f_{2j−1}`, `w_j ↦ f_{2j}` (one-based).
fn blocked_to_interleaved_images(n: usize) -> Vec<usize> {
    (0..n).map(|j| 2 * j).chain((0..n).map(|j| 2 * j + 1)).collect()
}

/// `CCl(n,n)` in blocked order to `CCl(nρ)` in interleaved order.
pub fn blocked_to_interleaved<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let sig = x.signature();
    sig.require_clifford_blocked()?;
    if sig.p != sig.q {
        return Err(Error::InvalidSignature(format!("{sig} is not of the form CCl(n,n)")));
    }
    x.relabel(Signature::interleaved(sig.p)?, &blocked_to_interleaved_images(sig.p))
}

pub fn interleaved_to_blocked<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let sig = x.signature();
    if sig.layout != Layout::Interleaved {
        return Err(Error::InvalidSignature(format!("{sig} is not interleaved")));
    }
    let n = sig.p;
    let fwd = blocked_to_interleaved_images(n);
    let mut back = vec![0; 2 * n];
    for (k, &img) in fwd.iter().enumerate() {
        back[img] = k;
    }
    x.relabel(Signature::new(n, n)?, &back)
}
