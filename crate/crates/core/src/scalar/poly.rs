use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored. Arithmetic between polynomials with
/// different variable counts panics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value if the polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Leading exponent and coefficient in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    /// Substitutes `x_i ↦ images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Moves variable `i` to position `map(i)` in a ring with `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: impl Fn(usize) -> usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[map(i)] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Scales so the grlex-leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. A single divisor is its own Gröbner basis, so leading-term
    /// reduction decides divisibility.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lead_e, lead_c) = divisor.leading_term()?;
        let (lead_e, lead_c) = (lead_e.clone(), lead_c.clone());
        let mut quotient = MultiPoly::zero(self.nvars);
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading_term() {
            if !re.iter().zip(&lead_e).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Exponents = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let t = MultiPoly::monomial(self.nvars, e, rc / &lead_c);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Some(quotient)
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|e| e.iter().rposition(|&k| k > 0)).max()
    }

    /// Coefficient of `x_v^k`, as a polynomial not involving `x_v`.
    fn coeff_in(&self, v: usize, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut ne = e.clone();
                ne[v] = 0;
                out.terms.insert(ne, c.clone());
            }
        }
        out
    }

    fn shift_var(&self, v: usize, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[v] += k;
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Content with respect to `x_v`: gcd of the coefficients of the powers of `x_v`.
    fn content_in(&self, v: usize) -> MultiPoly {
        let deg = self.degree_in(v).unwrap_or(0);
        let mut g = MultiPoly::zero(self.nvars);
        for k in 0..=deg {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                g = MultiPoly::gcd(&g, &c);
                if g.as_constant().is_some() {
                    break;
                }
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides polynomial")
    }

    /// Pseudo-remainder of `self` by `g` as polynomials in `x_v`.
    fn pseudo_rem_in(&self, g: &MultiPoly, v: usize) -> MultiPoly {
        let n = g.degree_in(v).unwrap_or(0);
        let lc_g = g.coeff_in(v, n);
        let mut r = self.clone();
        while let Some(d) = r.degree_in(v) {
            if d < n {
                break;
            }
            let lc_r = r.coeff_in(v, d);
            r = &(&lc_g * &r) - &(&lc_r * &g.shift_var(v, d - n));
        }
        r
    }

    /// Greatest common divisor, normalized to be monic in grlex order.
    /// Recursive primitive pseudo-remainder sequences over ℚ.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        assert_eq!(a.nvars, b.nvars);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let v = match (a.max_var(), b.max_var()) {
            (None, None) => return MultiPoly::one(a.nvars),
            (x, y) => x.max(y).unwrap(),
        };
        let (ca, cb) = (a.content_in(v), b.content_in(v));
        let content = MultiPoly::gcd(&ca, &cb);
        let mut f = a.div_exact(&ca).expect("content divides");
        let mut g = b.div_exact(&cb).expect("content divides");
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = f.pseudo_rem_in(&g, v);
            if r.is_zero() {
                break;
            }
            f = g;
            g = r.primitive_part_in(v);
        }
        (&content * &g.primitive_part_in(v)).monic()
    }

    /// Formats with the given variable names (`x1..xn` by default).
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let mut out = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string());
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let coeff =
                if mag.denom().is_one() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{coeff}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(3, int(n))
    }

    #[test]
    fn exact_division() {
        let a = &(&x(0) + &c(1)) * &(&x(1) - &x(2));
        let b = &x(0) + &c(1);
        assert_eq!(a.div_exact(&b).unwrap(), &x(1) - &x(2));
        assert!(a.div_exact(&(&x(0) - &c(1))).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = &(&x(0) * &x(1)) + &c(1);
        let f = &common * &(&x(0).pow(2) + &x(2));
        let g = &common * &(&x(1) - &c(3));
        assert_eq!(MultiPoly::gcd(&f, &g), common);
        assert_eq!(MultiPoly::gcd(&x(0), &x(1)), c(1));
        let scaled = common.scale(&rat(-7, 3));
        assert_eq!(MultiPoly::gcd(&scaled, &MultiPoly::zero(3)), common);
    }

    #[test]
    fn gcd_of_univariate_pair() {
        // (t^2 + 1)(t - 2) and (t^2 + 1)^2
        let t = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let q = &t.pow(2) + &one;
        let f = &q * &(&t - &one.scale(&int(2)));
        let g = q.pow(2);
        assert_eq!(MultiPoly::gcd(&f, &g), q);
    }

    #[test]
    fn compose_and_eval() {
        // f(x, y, z) = x*y, substitute x -> y + z
        let f = &x(0) * &x(1);
        let g = f.compose(&[&x(1) + &x(2), x(1), x(2)]);
        assert_eq!(g, &x(1).pow(2) + &(&x(1) * &x(2)));
        assert_eq!(g.eval(&[int(0), int(2), int(3)]), int(10));
    }

    #[test]
    fn display() {
        let p = &(&x(0).pow(2).scale(&rat(7, 5760)) - &x(1).scale(&rat(1, 1440))) + &c(1);
        assert_eq!(p.display_with(&["p1", "p2"]), "7/5760*p1^2 - 1/1440*p2 + 1");
    }
}
