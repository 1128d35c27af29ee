use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, MultiPoly, Rational};

/// Largest weighted degree a sequence is expanded to.
pub const MAX_DEGREE: usize = 8;

/// Multiplicative sequence `K_0, K_1, …` determined by a characteristic
/// power series `Q(z) = 1 + q_1 z + …` in `z = x²`. `K_k` is a polynomial
/// in `p_1..p_{max}` of weighted degree `k`, where `p_i` has weight `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultSeq {
    series: Vec<Rational>,
    polys: Vec<MultiPoly>,
}

fn weight(e: &[u32]) -> usize {
    e.iter().enumerate().map(|(i, &k)| (i + 1) * k as usize).sum()
}

fn truncate(p: &MultiPoly, max: usize) -> MultiPoly {
    MultiPoly::from_terms(p.nvars(), p.terms().filter(|(e, _)| weight(e) <= max).map(|(e, c)| (e.clone(), c.clone())))
}

/// Coefficients of `log Q` up to `z^max` for `Q(0) = 1`, from
/// `z L' = z Q' / Q`.
fn series_log(q: &[Rational], max: usize) -> Vec<Rational> {
    // n l_n = n q_n − Σ_{k=1}^{n−1} k l_k q_{n−k}
    let mut l = vec![Rational::zero(); max + 1];
    for n in 1..=max {
        let mut acc = int(n as i64) * q[n].clone();
        for k in 1..n {
            acc -= int(k as i64) * l[k].clone() * q[n - k].clone();
        }
        l[n] = acc / int(n as i64);
    }
    l
}

impl MultSeq {
    /// Expands `Q` to weighted degree `max`. `series[0]` must be 1.
    pub fn from_series(series: &[Rational], max: usize) -> Result<Self> {
        if max == 0 || max > MAX_DEGREE {
            return Err(Error::OutOfRange(format!("degree {max} outside 1..={MAX_DEGREE}")));
        }
        if series.len() <= max {
            return Err(Error::Dimension(format!("{} series coefficients for degree {max}", series.len())));
        }
        if !series[0].is_one() {
            return Err(Error::OutOfRange("characteristic series must start with 1".into()));
        }
        let series = series[..=max].to_vec();
        let logq = series_log(&series, max);

        // Newton: s_k = Σ_{i<k} (−1)^{i−1} p_i s_{k−i} + (−1)^{k−1} k p_k
        let n = max;
        let mut s: Vec<MultiPoly> = vec![MultiPoly::zero(n)];
        for k in 1..=max {
            let mut acc = MultiPoly::var(n, k - 1).scale(&int(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
            for i in 1..k {
                let term = &MultiPoly::var(n, i - 1) * &s[k - i];
                acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            s.push(acc);
        }

        // log ∏ Q(z_j) = Σ_k l_k s_k; exponentiate with truncation
        let mut log_total = MultiPoly::zero(n);
        for k in 1..=max {
            log_total = &log_total + &s[k].scale(&logq[k]);
        }
        let mut total = MultiPoly::one(n);
        let mut power = MultiPoly::one(n);
        let mut fact = Rational::one();
        for j in 1..=max {
            power = truncate(&(&power * &log_total), max);
            fact *= int(j as i64);
            total = &total + &power.scale(&(Rational::one() / fact.clone()));
        }
        let polys = (0..=max)
            .map(|k| {
                MultiPoly::from_terms(
                    n,
                    total.terms().filter(|(e, _)| weight(e) == k).map(|(e, c)| (e.clone(), c.clone())),
                )
            })
            .collect();
        Ok(Self { series, polys })
    }

    /// The Â-genus: `Q(z) = (√z/2) / sinh(√z/2)`.
    pub fn ahat(max: usize) -> Result<Self> {
        Self::from_series(&ahat_series(max), max)
    }

    /// The L-genus: `Q(z) = √z / tanh √z`.
    pub fn l_genus(max: usize) -> Result<Self> {
        Self::from_series(&l_series(max), max)
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn series(&self) -> &[Rational] {
        &self.series
    }

    /// `K_k` in the variables `p_1..p_max`.
    pub fn polynomial(&self, k: usize) -> Result<&MultiPoly> {
        self.polys.get(k).ok_or_else(|| Error::OutOfRange(format!("degree {k} beyond {}", self.max_degree())))
    }
}

/// `(√z/2) / sinh(√z/2)` to `z^max`, by inverting
/// `sinh(y)/y = Σ (z/4)^k / (2k+1)!`.
pub fn ahat_series(max: usize) -> Vec<Rational> {
    let mut fact = Rational::one();
    let mut quarter = Rational::one();
    let mut s = vec![Rational::one()];
    for k in 1..=max {
        fact *= int((2 * k) as i64) * int((2 * k + 1) as i64);
        quarter /= int(4);
        s.push(quarter.clone() / fact.clone());
    }
    let mut q = vec![Rational::one()];
    for n in 1..=max {
        let acc: Rational = (1..=n).map(|k| s[k].clone() * q[n - k].clone()).sum();
        q.push(-acc);
    }
    q
}

/// `√z / tanh √z = (Σ z^k/(2k)!) / (Σ z^k/(2k+1)!)` to `z^max`.
pub fn l_series(max: usize) -> Vec<Rational> {
    let mut cosh = vec![Rational::one()];
    let mut sinh = vec![Rational::one()];
    let mut fact = Rational::one();
    for k in 1..=max {
        fact *= int((2 * k - 1) as i64) * int((2 * k) as i64);
        cosh.push(Rational::one() / fact.clone());
        sinh.push(Rational::one() / (fact.clone() * int((2 * k + 1) as i64)));
    }
    let mut q: Vec<Rational> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let acc: Rational = (1..=n).map(|k| sinh[k].clone() * q[n - k].clone()).sum();
        q.push(cosh[n].clone() - acc);
    }
    q
}

/// `Â_k` as a polynomial in `p_1..p_k`, for `1 ≤ k ≤ 4`.
pub fn ahat_polynomial(k: usize) -> Result<MultiPoly> {
    if !(1..=4).contains(&k) {
        return Err(Error::OutOfRange(format!("Â_{k}: supported degrees are 1..=4")));
    }
    Ok(MultSeq::ahat(k)?.polynomial(k)?.clone())
}
