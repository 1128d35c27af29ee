//! Multivector expressions such as `3/4*e1e3 + i*e2 - 1/2` and the JSON
//! term-list encoding.

use serde::{Deserialize, Serialize};

use super::blade::Blade;
use super::multivector::Multivector;
use super::signature::Signature;
use crate::error::{Error, Result};
use crate::scalar::rational::{parse_rational, to_fraction_string};
use crate::scalar::GaussianRational;

const MAX_DEPTH: usize = 64;
const MAX_INPUT: usize = 1 << 16;
/// Cap on `terms(x)·terms(y)` for a single product inside an expression.
const MAX_PRODUCT_WORK: usize = 1 << 22;

/// Parses an expression over `sig`. Whitespace is ignored and tokens are
/// case-insensitive. Products need an explicit `*`; `/` divides by a
/// nonzero scalar.
pub fn parse_multivector(sig: Signature, input: &str) -> Result<Multivector> {
    if input.len() > MAX_INPUT {
        return Err(Error::Parse(format!("expression longer than {MAX_INPUT} bytes")));
    }
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_ascii_lowercase()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { sig, chars, pos: 0, depth: 0 };
    let x = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(x)
}

struct Parser {
    sig: Signature,
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Multivector> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Multivector> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                if acc.num_terms().saturating_mul(rhs.num_terms()) > MAX_PRODUCT_WORK {
                    return Err(Error::OutOfRange("product too large to expand".into()));
                }
                acc = &acc * &rhs;
            } else {
                if !rhs.is_grade(0) {
                    return Err(Error::Parse("division by a non-scalar".into()));
                }
                let inv = rhs.scalar_part().inv().map_err(|_| Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Multivector> {
        match self.peek() {
            Some(c @ ('-' | '+')) => {
                self.enter()?;
                self.pos += 1;
                let x = self.unary()?;
                self.depth -= 1;
                Ok(if c == '-' { -&x } else { x })
            }
            _ => self.atom(),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse(format!("nesting deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<Multivector> {
        match self.peek() {
            None => Err(Error::Parse("unexpected end of expression".into())),
            Some('(') => {
                self.enter()?;
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(x)
            }
            Some('i') => {
                self.pos += 1;
                Ok(Multivector::scalar(self.sig, GaussianRational::i()))
            }
            Some('e') => self.blade(),
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let r = parse_rational(&text)?;
                Ok(Multivector::scalar(self.sig, GaussianRational::real(r)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }

    /// One or more `e<index>` tokens, multiplied left to right.
    fn blade(&mut self) -> Result<Multivector> {
        let mut acc = Multivector::one(self.sig);
        while self.peek() == Some('e') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let k: usize = text.parse().map_err(|_| Error::Parse("generator index missing after `e`".into()))?;
            if k == 0 || k > self.sig.dim() {
                return Err(Error::Parse(format!("generator e{k} outside {}", self.sig)));
            }
            acc = &acc * &Multivector::generator(self.sig, k - 1);
        }
        Ok(acc)
    }
}

/// JSON form: the signature with its layout and presentation, and the
/// terms sorted by blade mask as `[mask, ["re", "im"]]`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MultivectorJson {
    pub signature: Signature,
    pub terms: Vec<(u32, [String; 2])>,
}

impl From<&Multivector> for MultivectorJson {
    fn from(x: &Multivector) -> Self {
        let mut terms: Vec<_> =
            x.terms().map(|(b, c)| (b.mask(), [to_fraction_string(&c.re), to_fraction_string(&c.im)])).collect();
        terms.sort_by_key(|t| t.0);
        Self { signature: x.signature(), terms }
    }
}

impl MultivectorJson {
    pub fn to_multivector(&self) -> Result<Multivector> {
        let sig =
            Signature::build(self.signature.p, self.signature.q, self.signature.layout, self.signature.presentation)?;
        let mut x = Multivector::zero(sig);
        let mut last = None;
        for (mask, [re, im]) in &self.terms {
            if mask & !sig.full_mask() != 0 {
                return Err(Error::Parse(format!("blade mask {mask} outside {sig}")));
            }
            if last.is_some_and(|l| l >= *mask) {
                return Err(Error::Parse("terms must be sorted by mask without repeats".into()));
            }
            last = Some(*mask);
            x.add_term(Blade(*mask), GaussianRational::new(parse_rational(re)?, parse_rational(im)?));
        }
        Ok(x)
    }
}

pub fn multivector_to_json(x: &Multivector) -> serde_json::Value {
    serde_json::to_value(MultivectorJson::from(x)).expect("multivector JSON is always serializable")
}

pub fn parse_multivector_json(input: &str) -> Result<Multivector> {
    serde_json::from_str::<MultivectorJson>(input)?.to_multivector()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s() -> Signature {
        Signature::new(2, 1).unwrap()
    }

    #[test]
    fn example_expression() {
        let x = parse_multivector(s(), "3/4*e1e3 + i*e2 - 1/2").unwrap();
        assert_eq!(x.coeff(Blade(0b101)), GaussianRational::real(rat(3, 4)));
        assert_eq!(x.coeff(Blade(0b10)), GaussianRational::i());
        assert_eq!(x.coeff(Blade::SCALAR), GaussianRational::real(rat(-1, 2)));
        assert_eq!(x.num_terms(), 3);
    }

    #[test]
    fn case_and_space_insensitive() {
        let a = parse_multivector(s(), "E1 E3*I").unwrap();
        let b = parse_multivector(s(), "i*e1e3").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_multivector(s(), "e2e1").unwrap(), -&parse_multivector(s(), "e1e2").unwrap());
        assert_eq!(parse_multivector(s(), "-(1 + e1)*(1 - e1)").unwrap(), Multivector::zero(s()));
        assert_eq!(parse_multivector(s(), "0.25").unwrap(), parse_multivector(s(), "1/4").unwrap());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "e4", "e0", "e", "1 +", "(1", "1)", "2e1", "e1/e2", "1/0", "x", "1**2", &"(".repeat(100)] {
            assert!(parse_multivector(s(), bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for text in ["3/4*e1e3 + i*e2 - 1/2", "-e1", "(1 + i)*e1e2e3", "0", "-i"] {
            let x = parse_multivector(s(), text).unwrap();
            assert_eq!(parse_multivector(s(), &x.to_string()).unwrap(), x, "{text} -> {x}");
        }
    }

    #[test]
    fn json_round_trip() {
        let x = parse_multivector(s(), "3/4*e1e3 + i*e2 - 1/2").unwrap();
        let v = multivector_to_json(&x);
        assert_eq!(v["signature"]["layout"], "blocked");
        assert_eq!(v["terms"][0][1][0], "-1/2");
        assert_eq!(parse_multivector_json(&v.to_string()).unwrap(), x);
        let unsorted = r#"{"signature":{"p":1,"q":0,"layout":"blocked","presentation":"clifford"},"terms":[[1,["1","0"]],[0,["1","0"]]]}"#;
        assert!(parse_multivector_json(unsorted).is_err());
    }
}
