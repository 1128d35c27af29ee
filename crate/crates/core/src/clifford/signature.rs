use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators (blade masks are 16 bits wide).
pub const MAX_GENERATORS: usize = 16;

/// Placement of the sign generators among the generator indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// `v_1..v_p` then `w_1..w_q`.
    Blocked,
    /// `ℝ^{n,n} = nρ`: odd positions trivial, even positions sign
    /// (one-based), i.e. `(Re z_1, Im z_1, Re z_2, ...)`.
    Interleaved,
}

/// Which relations the generators satisfy.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    /// `CCl_{p,q}`: every generator squares to 1, the Real structure
    /// negates the sign generators, every generator is self-adjoint.
    Clifford,
    /// Kasparov's `C_{p,q}`: `ε_i² = 1`, `e_j² = −1`, the Real structure
    /// fixes every generator and `e_j* = −e_j`.
    Kasparov,
}

/// A complex Clifford algebra with Real structure, determined by the
/// C₂-representation `ℝ^p ⊕ ℝ^q σ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub layout: Layout,
    pub presentation: Presentation,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        Self::build(p, q, Layout::Blocked, Presentation::Clifford)
    }

    /// `CCl(nρ)` in the interleaved basis.
    pub fn interleaved(n: usize) -> Result<Self> {
        Self::build(n, n, Layout::Interleaved, Presentation::Clifford)
    }

    pub fn kasparov(p: usize, q: usize) -> Result<Self> {
        Self::build(p, q, Layout::Blocked, Presentation::Kasparov)
    }

    pub fn build(p: usize, q: usize, layout: Layout, presentation: Presentation) -> Result<Self> {
        if p + q > MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!("p + q = {} exceeds {MAX_GENERATORS}", p + q)));
        }
        if layout == Layout::Interleaved && (p != q || presentation != Presentation::Clifford) {
            return Err(Error::InvalidSignature("interleaved layout requires CCl(n,n)".into()));
        }
        Ok(Self { p, q, layout, presentation })
    }

    /// Parses `p,q`.
    pub fn parse(s: &str) -> Result<Self> {
        let (p, q) =
            s.split_once(',').ok_or_else(|| Error::Parse(format!("signature `{s}` is not of the form p,q")))?;
        let p = p.trim().parse().map_err(|_| Error::Parse(format!("bad p in `{s}`")))?;
        let q = q.trim().parse().map_err(|_| Error::Parse(format!("bad q in `{s}`")))?;
        Self::new(p, q)
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Mask with a bit for every generator.
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.dim()) - 1
    }

    /// Generators negated by the C₂-action on the underlying vector space.
    pub fn sign_mask(&self) -> u32 {
        match self.layout {
            Layout::Blocked => self.full_mask() & !((1u32 << self.p) - 1),
            Layout::Interleaved => (0..self.dim()).filter(|k| k % 2 == 1).fold(0, |m, k| m | 1 << k),
        }
    }

    pub fn is_sign_generator(&self, k: usize) -> bool {
        self.sign_mask() >> k & 1 == 1
    }

    pub(crate) fn neg_square_mask(&self) -> u32 {
        match self.presentation {
            Presentation::Clifford => 0,
            Presentation::Kasparov => self.sign_mask(),
        }
    }

    pub(crate) fn conj_neg_mask(&self) -> u32 {
        match self.presentation {
            Presentation::Clifford => self.sign_mask(),
            Presentation::Kasparov => 0,
        }
    }

    pub(crate) fn star_neg_mask(&self) -> u32 {
        match self.presentation {
            Presentation::Clifford => 0,
            Presentation::Kasparov => self.sign_mask(),
        }
    }

    pub fn require_clifford_blocked(&self) -> Result<()> {
        if self.presentation == Presentation::Clifford && self.layout == Layout::Blocked {
            Ok(())
        } else {
            Err(Error::InvalidSignature(format!("{self} must be a blocked CCl(p,q)")))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.presentation, self.layout) {
            (Presentation::Clifford, Layout::Blocked) => write!(f, "CCl({},{})", self.p, self.q),
            (Presentation::Clifford, Layout::Interleaved) => write!(f, "CCl({}ρ)", self.p),
            (Presentation::Kasparov, _) => write!(f, "C({},{})", self.p, self.q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        let s = Signature::new(2, 1).unwrap();
        assert_eq!(s.sign_mask(), 0b100);
        let n = Signature::interleaved(2).unwrap();
        assert_eq!(n.sign_mask(), 0b1010);
        assert_eq!(Signature::kasparov(1, 2).unwrap().neg_square_mask(), 0b110);
    }

    #[test]
    fn bounds() {
        assert!(Signature::new(10, 6).is_ok());
        assert!(Signature::new(10, 7).is_err());
        assert!(Signature::build(2, 1, Layout::Interleaved, Presentation::Clifford).is_err());
        assert_eq!(Signature::parse(" 2 , 1").unwrap(), Signature::new(2, 1).unwrap());
        assert!(Signature::parse("2;1").is_err());
    }
}
