//! Graded tensor powers of the even/odd function algebra, realized as
//! rational functions in commuting variables `t_1..t_k` times blades in
//! auxiliary odd generators `ε_1..ε_k` with `ε_j² = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{blade_product, Blade};
use crate::error::{Error, Result};
use crate::scalar::{int, MultiPoly, RatFunc, Rational};

/// Most tensor slots handled.
pub const MAX_SLOTS: usize = 8;

/// `Σ_B f_B(t) ε_B`; slot `j` owns variable `t_j` and generator `ε_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedRatFunc {
    slots: usize,
    terms: BTreeMap<Blade, RatFunc>,
}

/// Which generator of the one-slot algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    A,
    B,
}

fn one_plus_sum_of_squares(n: usize) -> MultiPoly {
    (0..n).fold(MultiPoly::one(n), |acc, i| &acc + &MultiPoly::var(n, i).pow(2))
}

impl GradedRatFunc {
    pub fn zero(slots: usize) -> Self {
        assert!(slots <= MAX_SLOTS, "at most {MAX_SLOTS} slots");
        Self { slots, terms: BTreeMap::new() }
    }

    pub fn from_terms(slots: usize, terms: impl IntoIterator<Item = (Blade, RatFunc)>) -> Result<Self> {
        if slots > MAX_SLOTS {
            return Err(Error::OutOfRange(format!("at most {MAX_SLOTS} slots")));
        }
        let mut out = Self::zero(slots);
        for (b, f) in terms {
            if b.mask() >> slots != 0 {
                return Err(Error::Dimension(format!("blade {b:?} outside {slots} slots")));
            }
            if f.nvars() != slots {
                return Err(Error::Dimension(format!("coefficient in {} variables, expected {slots}", f.nvars())));
            }
            out.add_term(b, f);
        }
        Ok(out)
    }

    /// A function with no odd generator.
    pub fn scalar(f: RatFunc) -> Self {
        let slots = f.nvars();
        let mut out = Self::zero(slots);
        out.add_term(Blade::SCALAR, f);
        out
    }

    pub fn constant(slots: usize, c: Rational) -> Self {
        Self::scalar(RatFunc::constant(slots, c))
    }

    pub fn one(slots: usize) -> Self {
        Self::constant(slots, int(1))
    }

    fn add_term(&mut self, b: Blade, f: RatFunc) {
        let sum = match self.terms.remove(&b) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(b, sum);
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: Blade) -> RatFunc {
        self.terms.get(&b).cloned().unwrap_or_else(|| RatFunc::zero(self.slots))
    }

    pub fn scalar_part(&self) -> RatFunc {
        self.coeff(Blade::SCALAR)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.slots != o.slots {
            return Err(Error::Dimension(format!("{} slots vs {}", self.slots, o.slots)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (b, f) in &o.terms {
            out.add_term(*b, f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(&int(-1)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.slots);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                let (c, neg) = blade_product(*a, *b, 0);
                let h = f * g;
                out.add_term(c, if neg { -&h } else { h });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.slots);
        for (b, f) in &self.terms {
            out.add_term(*b, f.scale(c));
        }
        out
    }

    /// Coefficients are real functions, so `*` only reverses blades.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.slots);
        for (b, f) in &self.terms {
            out.add_term(*b, if b.reversal_negates() { -f } else { f.clone() });
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.star() == *self
    }

    /// `Some(true)` when every blade is odd, `Some(false)` when every blade
    /// is even, `None` for mixed (the zero element counts as even).
    pub fn is_odd(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|b| b.is_odd());
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    /// Sum of the grade-1 coefficients, i.e. the image under `ε_j ↦ 1`
    /// restricted to the odd linear part.
    pub fn odd_readoff(&self) -> RatFunc {
        (0..self.slots).fold(RatFunc::zero(self.slots), |acc, j| &acc + &self.coeff(Blade::generator(j)))
    }

    /// Relabels slots: `t_j ↦ t_{perm[j]}`, `ε_j ↦ ε_{perm[j]}`.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.slots];
        if perm.len() != self.slots || perm.iter().any(|&p| p >= self.slots || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Dimension("slot map is not a permutation".into()));
        }
        let mut out = Self::zero(self.slots);
        for (b, f) in &self.terms {
            let (c, neg) = crate::clifford::relabel_blade(*b, perm);
            let g = f.remap_vars(self.slots, |i| perm[i]);
            out.add_term(c, if neg { -&g } else { g });
        }
        Ok(out)
    }

    /// Applies the comultiplication in slot `j`: `t_j² ↦ t_j² + t_{j+1}²`
    /// and `t_j ε_j ↦ t_j ε_j + t_{j+1} ε_{j+1}`, shifting later slots up.
    pub fn comultiply_slot(&self, j: usize) -> Result<Self> {
        if j >= self.slots {
            return Err(Error::Dimension(format!("slot {j} of {}", self.slots)));
        }
        let k = self.slots + 1;
        if k > MAX_SLOTS {
            return Err(Error::OutOfRange(format!("at most {MAX_SLOTS} slots")));
        }
        let shift = |i: usize| if i <= j { i } else { i + 1 };
        let images: Vec<MultiPoly> = (0..self.slots)
            .map(|i| {
                if i == j {
                    &MultiPoly::var(k, j).pow(2) + &MultiPoly::var(k, j + 1).pow(2)
                } else {
                    MultiPoly::var(k, shift(i))
                }
            })
            .collect();
        let linear = |coef: RatFunc| {
            let mut out = Self::zero(k);
            out.add_term(Blade::generator(j), &coef * &RatFunc::from_poly(MultiPoly::var(k, j)));
            out.add_term(Blade::generator(j + 1), &coef * &RatFunc::from_poly(MultiPoly::var(k, j + 1)));
            out
        };
        let mut out = Self::zero(k);
        for (b, f) in &self.terms {
            let carries = b.mask() >> j & 1 == 1;
            let rest = Blade(b.indices().filter(|&i| i != j).fold(0, |m, i| m | 1 << shift(i)));
            let even = if carries {
                let t = RatFunc::from_poly(MultiPoly::var(self.slots, j));
                let g = f / &t;
                even_part_in(&g, j).ok_or_else(|| {
                    Error::NotFunctionOfGenerator(format!(
                        "coefficient of an ε_{} term is not odd in t_{}",
                        j + 1,
                        j + 1
                    ))
                })?
            } else {
                even_part_in(f, j).ok_or_else(|| {
                    Error::NotFunctionOfGenerator(format!(
                        "coefficient of a term without ε_{} is not even in t_{}",
                        j + 1,
                        j + 1
                    ))
                })?
            };
            let sub = RatFunc::new(even.0.compose(&images), even.1.compose(&images))?;
            let piece = if carries { linear(sub) } else { Self::scalar(sub) };
            // ε_before · piece · ε_after keeps the original generator order
            let before = Blade(rest.mask() & ((1 << j) - 1));
            let after = Blade(rest.mask() & !((1 << (j + 2)) - 1));
            let left = Self::blade_unit(k, before);
            let right = Self::blade_unit(k, after);
            out = out.try_add(&left.try_mul(&piece)?.try_mul(&right)?)?;
        }
        Ok(out)
    }

    fn blade_unit(slots: usize, b: Blade) -> Self {
        let mut out = Self::zero(slots);
        out.add_term(b, RatFunc::one(slots));
        out
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, f)| {
                let eps: String = b.indices().map(|i| format!("ε{}", i + 1)).collect();
                if eps.is_empty() {
                    format!("({})", f.display_with(names))
                } else {
                    format!("({})*{eps}", f.display_with(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for GradedRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(&[]))
    }
}

/// If `f` is even in `t_j`, returns numerator and denominator with `t_j²`
/// replaced by `t_j`.
fn even_part_in(f: &RatFunc, j: usize) -> Option<(MultiPoly, MultiPoly)> {
    let halve = |p: &MultiPoly| -> Option<MultiPoly> {
        if p.terms().any(|(e, _)| e[j] % 2 == 1) {
            return None;
        }
        Some(MultiPoly::from_terms(
            p.nvars(),
            p.terms().map(|(e, c)| {
                let mut e = e.clone();
                e[j] /= 2;
                (e, c.clone())
            }),
        ))
    };
    Some((halve(f.numer())?, halve(f.denom())?))
}

/// `a(t) = 1/(1+t²)` and `b(t) = t ε/(1+t²)` in one slot.
pub fn s_generators() -> (GradedRatFunc, GradedRatFunc) {
    let den = one_plus_sum_of_squares(1);
    let a = RatFunc::new(MultiPoly::one(1), den.clone()).expect("nonzero denominator");
    let bcoef = RatFunc::new(MultiPoly::var(1, 0), den).expect("nonzero denominator");
    let mut b = GradedRatFunc::zero(1);
    b.add_term(Blade::generator(0), bcoef);
    (GradedRatFunc::scalar(a), b)
}

pub fn generator(g: Generator) -> GradedRatFunc {
    let (a, b) = s_generators();
    match g {
        Generator::A => a,
        Generator::B => b,
    }
}

/// `Δ` on a one-slot element.
pub fn comultiplication(x: &GradedRatFunc) -> Result<GradedRatFunc> {
    if x.slots() != 1 {
        return Err(Error::Dimension(format!("comultiplication takes a one-slot element, got {} slots", x.slots())));
    }
    x.comultiply_slot(0)
}

/// `(1 + Σ t_i²)⁻¹` and `Σ t_i ε_i / (1 + Σ t_i²)` in `k` slots: the
/// closed forms of the iterated comultiplication of `a` and `b`.
pub fn iterated_closed_form(k: usize) -> (GradedRatFunc, GradedRatFunc) {
    let den = one_plus_sum_of_squares(k);
    let a = RatFunc::new(MultiPoly::one(k), den.clone()).expect("nonzero denominator");
    let mut b = GradedRatFunc::zero(k);
    for i in 0..k {
        b.add_term(Blade::generator(i), RatFunc::new(MultiPoly::var(k, i), den.clone()).expect("nonzero denominator"));
    }
    (GradedRatFunc::scalar(a), b)
}

/// The swap `(t_1, ε_1) ↔ (t_2, ε_2)`.
pub fn flip(x: &GradedRatFunc) -> Result<GradedRatFunc> {
    if x.slots() != 2 {
        return Err(Error::Dimension("flip acts on two slots".into()));
    }
    x.permute_slots(&[1, 0])
}
