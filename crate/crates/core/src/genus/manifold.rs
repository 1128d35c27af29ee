use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::charclass::{ahat_genus, cp_projective_data, product_data, CharClassData, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Product of complex projective spaces, e.g. `CP2^2 x CP4`. The empty
/// product is the point `pt`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ManifoldSpec {
    /// `n ↦ multiplicity of CP^n`.
    factors: BTreeMap<u32, u32>,
}

impl ManifoldSpec {
    pub fn point() -> Self {
        Self::default()
    }

    pub fn cp(n: u32) -> Result<Self> {
        Self::point().times(&Self { factors: BTreeMap::from([(n, 1)]) })
    }

    pub fn dim(&self) -> u64 {
        self.factors.iter().map(|(n, k)| 2 * u64::from(*n) * u64::from(*k)).sum()
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        for (n, k) in &other.factors {
            *factors.entry(*n).or_insert(0) += k;
        }
        let out = Self { factors };
        if out.dim() > u64::from(MAX_DIM) {
            return Err(Error::OutOfRange(format!("{out} has dimension above {MAX_DIM}")));
        }
        Ok(out)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.factors.iter().map(|(n, k)| (*n, *k))
    }

    pub fn data(&self) -> Result<CharClassData> {
        let mut acc = CharClassData::point();
        for (n, k) in self.factors() {
            let d = cp_projective_data(n)?;
            for _ in 0..k {
                acc = product_data(&acc, &d)?;
            }
        }
        Ok(acc)
    }

    /// Parses `pt`, `CP<n>`, products with `x` and powers with `^`.
    /// Case and whitespace are ignored.
    pub fn parse(input: &str) -> Result<Self> {
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        if text.is_empty() {
            return Err(Error::Parse("empty manifold spec".into()));
        }
        let mut acc = Self::point();
        for factor in text.split('x') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => {
                    if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(Error::Parse(format!("bad exponent in `{factor}`")));
                    }
                    let k: u32 = p.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (b, k)
                }
                None => (factor, 1),
            };
            let one = if base == "pt" {
                Self::point()
            } else if let Some(n) = base.strip_prefix("cp") {
                if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad factor `{base}`")));
                }
                let n: u32 = n.parse().map_err(|_| Error::OutOfRange(format!("factor `{base}` too large")))?;
                if n == 0 {
                    return Err(Error::Parse("CP0 is written pt".into()));
                }
                Self { factors: BTreeMap::from([(n, 1)]) }
            } else {
                return Err(Error::Parse(format!("unknown factor `{base}`")));
            };
            if power > MAX_DIM {
                return Err(Error::OutOfRange(format!("exponent {power} too large")));
            }
            for _ in 0..power {
                acc = acc.times(&one)?;
            }
        }
        Ok(acc)
    }
}

impl FromStr for ManifoldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "pt");
        }
        let parts: Vec<String> =
            self.factors().map(|(n, k)| if k == 1 { format!("CP{n}") } else { format!("CP{n}^{k}") }).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Integer combination of manifold products.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BordismElement {
    terms: BTreeMap<ManifoldSpec, BigInt>,
}

impl BordismElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(m: ManifoldSpec) -> Self {
        Self { terms: BTreeMap::from([(m, BigInt::one())]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ManifoldSpec, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let s = terms.remove(m).unwrap_or_default() + c;
            if !s.is_zero() {
                terms.insert(m.clone(), s);
            }
        }
        Self { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).filter(|(_, k)| !k.is_zero()).collect() }
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out = out.add(&Self { terms: BTreeMap::from([(a.times(b)?, x * y)]) });
            }
        }
        Ok(out)
    }

    /// Dimension, when every term has the same one.
    pub fn dim(&self) -> Option<u64> {
        let mut dims = self.terms.keys().map(ManifoldSpec::dim);
        let first = dims.next().unwrap_or(0);
        dims.all(|d| d == first).then_some(first)
    }

    /// Â, extended linearly.
    pub fn ahat(&self) -> Result<Rational> {
        self.terms
            .iter()
            .try_fold(Rational::zero(), |acc, (m, c)| Ok(acc + ahat_genus(&m.data()?)? * Rational::from(c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn spec_round_trip() {
        for s in ["CP2", "CP4", "CP2 x CP2", "cp2^2", "pt", "CP2xCP4xCP2", "pt x CP2"] {
            let m = ManifoldSpec::parse(s).unwrap();
            assert_eq!(ManifoldSpec::parse(&m.to_string()).unwrap(), m, "{s}");
        }
        assert_eq!(ManifoldSpec::parse("CP2 x CP2").unwrap().to_string(), "CP2^2");
    }

    #[test]
    fn spec_errors() {
        for s in ["", "CP", "CP0", "RP2", "CP2^", "CP2xx", "CP40", "CP2^99"] {
            assert!(ManifoldSpec::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn bordism_linear_combinations() {
        let g = BordismElement::generator(ManifoldSpec::cp(2).unwrap());
        assert_eq!(g.ahat().unwrap(), rat(-1, 8));
        let sq = g.times(&g).unwrap();
        assert_eq!(sq.ahat().unwrap(), rat(1, 64));
        let two = g.add(&g);
        assert_eq!(two.ahat().unwrap(), rat(-1, 4));
        assert_eq!(g.add(&g.scale(&BigInt::from(-1))), BordismElement::zero());
        let mixed = g.add(&sq);
        assert_eq!(mixed.dim(), None);
    }
}
