use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::multseq::MultSeq;
use crate::error::{Error, Result};
use crate::scalar::rational::{parse_rational, to_fraction_string};
use crate::scalar::{int, Rational};

/// Largest manifold dimension handled.
pub const MAX_DIM: u32 = 32;

/// Partition with parts in decreasing order; names the monomial
/// `p_{i₁} ⋯ p_{i_r}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `"2,1,1"`; the empty partition is `""`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|&k| k > MAX_DIM / 4) {
            return Err(Error::OutOfRange(format!("partition `{s}` has a part above {}", MAX_DIM / 4)));
        }
        Self::new(parts)
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                prefix.push(k);
                go(n - k, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn from_exponents(e: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &k) in e.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, k as usize));
        }
        Self(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Dimension and Pontryagin numbers `⟨p_λ, [M]⟩` of an oriented manifold
/// class. Partitions absent from the map have value zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharClassData {
    dim: u32,
    numbers: BTreeMap<Partition, Rational>,
}

impl CharClassData {
    pub fn new(dim: u32, numbers: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::OutOfRange(format!("dimension {dim} above {MAX_DIM}")));
        }
        let mut map = BTreeMap::new();
        for (part, value) in numbers {
            if !dim.is_multiple_of(4) || part.size() != dim / 4 {
                return Err(Error::Dimension(format!("p_{{{part}}} cannot be evaluated on a {dim}-manifold")));
            }
            if map.insert(part.clone(), value).is_some() {
                return Err(Error::Parse(format!("partition {part} given twice")));
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Self { dim, numbers: map })
    }

    /// The point: dimension 0 and `⟨1, [pt]⟩ = 1`.
    pub fn point() -> Self {
        Self { dim: 0, numbers: BTreeMap::from([(Partition::default(), Rational::one())]) }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn number(&self, part: &Partition) -> Rational {
        self.numbers.get(part).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn numbers(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.numbers.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            numbers: self.numbers.iter().map(|(k, v)| (k.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("cannot add classes of dimension {} and {}", self.dim, other.dim)));
        }
        let mut numbers = self.numbers.clone();
        for (k, v) in &other.numbers {
            let s = numbers.remove(k).unwrap_or_else(Rational::zero) + v;
            if !s.is_zero() {
                numbers.insert(k.clone(), s);
            }
        }
        Ok(Self { dim: self.dim, numbers })
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64) / int((i + 1) as i64))
}

/// `CP^n`: total Pontryagin class `(1 + x²)^{n+1}`, so `p_i = C(n+1, i) x^{2i}`
/// and `⟨p_λ, [CP^n]⟩ = ∏ C(n+1, λ_j)` when `2|λ| = n`.
pub fn cp_projective_data(n: u32) -> Result<CharClassData> {
    if n == 0 {
        return Ok(CharClassData::point());
    }
    let dim = 2 * n;
    if dim > MAX_DIM {
        return Err(Error::OutOfRange(format!("CP{n} has dimension above {MAX_DIM}")));
    }
    let numbers: Vec<(Partition, Rational)> = if n.is_multiple_of(2) {
        Partition::all(n / 2)
            .into_iter()
            .map(|l| {
                let v = l.parts().iter().map(|&k| binomial(n + 1, k)).product();
                (l, v)
            })
            .collect()
    } else {
        Vec::new()
    };
    CharClassData::new(dim, numbers)
}

/// Whitney product: `p_k(A × B) = Σ_{i+j=k} p_i(A) p_j(B)`, evaluated on
/// `[A] × [B]` by keeping the bidegree `(dim A, dim B)` component.
pub fn product_data(a: &CharClassData, b: &CharClassData) -> Result<CharClassData> {
    let dim = a.dim + b.dim;
    if dim > MAX_DIM {
        return Err(Error::OutOfRange(format!("product dimension {dim} above {MAX_DIM}")));
    }
    if !dim.is_multiple_of(4) || !a.dim.is_multiple_of(4) {
        return CharClassData::new(dim, []);
    }
    let (ka, kb) = (a.dim / 4, b.dim / 4);
    let mut numbers = Vec::new();
    for lam in Partition::all(dim / 4) {
        // choose how much of each factor p_{λ_t} falls on A
        let mut total = Rational::zero();
        let mut split = vec![0u32; lam.parts().len()];
        loop {
            if split.iter().sum::<u32>() == ka {
                let mu = Partition::new(split.iter().copied().filter(|&x| x > 0).collect())?;
                let nu =
                    Partition::new(lam.parts().iter().zip(&split).map(|(l, s)| l - s).filter(|&x| x > 0).collect())?;
                debug_assert_eq!(nu.size(), kb);
                total += a.number(&mu) * b.number(&nu);
            }
            // odometer over 0..=λ_t
            let mut t = 0;
            while t < split.len() && split[t] == lam.parts()[t] {
                split[t] = 0;
                t += 1;
            }
            if t == split.len() {
                break;
            }
            split[t] += 1;
        }
        numbers.push((lam, total));
    }
    CharClassData::new(dim, numbers)
}

/// `⟨K_{dim/4}(p), [M]⟩`; zero when the dimension is not divisible by 4.
pub fn genus_evaluate(seq: &MultSeq, m: &CharClassData) -> Result<Rational> {
    if !m.dim.is_multiple_of(4) {
        return Ok(Rational::zero());
    }
    let k = (m.dim / 4) as usize;
    let poly = seq.polynomial(k)?;
    Ok(poly.terms().map(|(e, c)| c * m.number(&Partition::from_exponents(e))).sum())
}

/// Â of a class, expanding the sequence as far as needed.
pub fn ahat_genus(m: &CharClassData) -> Result<Rational> {
    if !m.dim.is_multiple_of(4) {
        return Ok(Rational::zero());
    }
    let k = (m.dim / 4) as usize;
    if k == 0 {
        return Ok(m.number(&Partition::default()));
    }
    genus_evaluate(&MultSeq::ahat(k)?, m)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumberJson {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharClassJson {
    dim: u32,
    pontryagin: BTreeMap<String, NumberJson>,
}

impl CharClassData {
    /// `{"dim": 8, "pontryagin": {"1,1": "18/1", "2": "9/1"}}`.
    pub fn from_json(input: &str) -> Result<Self> {
        let raw: CharClassJson = serde_json::from_str(input)?;
        let numbers = raw
            .pontryagin
            .iter()
            .map(|(k, v)| {
                let value = match v {
                    NumberJson::Text(s) => parse_rational(s)?,
                    NumberJson::Int(i) => int(*i),
                };
                Ok((Partition::parse(k)?, value))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.dim, numbers)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = CharClassJson {
            dim: self.dim,
            pontryagin: self
                .numbers
                .iter()
                .map(|(k, v)| (k.to_string(), NumberJson::Text(to_fraction_string(v))))
                .collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn projective_spaces() {
        let cp2 = cp_projective_data(2).unwrap();
        assert_eq!((cp2.dim(), cp2.number(&part("1"))), (4, int(3)));
        let cp1 = cp_projective_data(1).unwrap();
        assert_eq!(cp1.numbers().count(), 0);
        assert_eq!(ahat_genus(&cp1).unwrap(), int(0));
        let cp4 = cp_projective_data(4).unwrap();
        assert_eq!(cp4.number(&part("1,1")), int(25));
        assert_eq!(cp4.number(&part("2")), int(10));
    }

    #[test]
    fn products() {
        let cp2 = cp_projective_data(2).unwrap();
        let sq = product_data(&cp2, &cp2).unwrap();
        assert_eq!(sq.dim(), 8);
        assert_eq!(sq.number(&part("1,1")), int(18));
        assert_eq!(sq.number(&part("2")), int(9));
        assert_eq!(product_data(&CharClassData::point(), &cp2).unwrap(), cp2);
        assert_eq!(product_data(&cp2, &CharClassData::point()).unwrap(), cp2);
    }

    #[test]
    fn ahat_values() {
        let cp2 = cp_projective_data(2).unwrap();
        assert_eq!(ahat_genus(&cp2).unwrap(), rat(-1, 8));
        let sq = product_data(&cp2, &cp2).unwrap();
        assert_eq!(ahat_genus(&sq).unwrap(), rat(1, 64));
        assert_eq!(ahat_genus(&CharClassData::point()).unwrap(), int(1));
    }

    #[test]
    fn json_round_trip() {
        let d = CharClassData::from_json(r#"{"dim":8,"pontryagin":{"1,1":"18/1","2":"9/1"}}"#).unwrap();
        assert_eq!(ahat_genus(&d).unwrap(), rat(1, 64));
        assert_eq!(CharClassData::from_json(&d.to_json().to_string()).unwrap(), d);
        assert!(CharClassData::from_json(r#"{"dim":8,"pontryagin":{"1":"3"}}"#).is_err());
        assert!(CharClassData::from_json(r#"{"dim":4,"pontryagin":{"1":"3"},"x":1}"#).is_err());
        assert_eq!(
            CharClassData::from_json(r#"{"dim":4,"pontryagin":{"1":3}}"#).unwrap(),
            cp_projective_data(2).unwrap()
        );
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(part("1,2").to_string(), "2,1");
        assert!(Partition::parse("0").is_err());
        assert_eq!(Partition::from_exponents(&[2, 1]), part("2,1,1"));
    }
}
