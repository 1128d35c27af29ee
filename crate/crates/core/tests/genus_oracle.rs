//! A-hat values checked against power series in the hyperplane classes,
//! computed here without the multiplicative-sequence machinery.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use realspin_core::genus::{ahat_genus, ahat_polynomial, CharClassData, ManifoldSpec, Partition};
use realspin_core::scalar::Rational;

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * r(k))
}

/// Coefficients of `(u/2) / sinh(u/2)` in `w = u²`, up to `w^len`.
fn ahat_char_series(len: usize) -> Vec<Rational> {
    // sinh(u/2)/(u/2) = sum w^j / (4^j (2j+1)!)
    let s: Vec<Rational> =
        (0..=len).map(|j| Rational::one() / (factorial(2 * j as u64 + 1) * r(4).pow(j as i32))).collect();
    let mut inv = vec![Rational::zero(); len + 1];
    inv[0] = Rational::one();
    for k in 1..=len {
        let acc: Rational = (1..=k).map(|j| &s[j] * &inv[k - j]).sum();
        inv[k] = -acc;
    }
    inv
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `<A-hat, CP^n>` as the `u^n` coefficient of `((u/2)/sinh(u/2))^{n+1}`.
fn ahat_cp_oracle(n: u32) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let k = (n / 2) as usize;
    let f = ahat_char_series(k);
    let mut acc = vec![Rational::zero(); k + 1];
    acc[0] = Rational::one();
    for _ in 0..=n {
        acc = series_mul(&acc, &f);
    }
    acc[k].clone()
}

/// Polynomials in `w_i = u_i²`, one variable per factor.
type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binom(n: u32, k: u32) -> Rational {
    factorial(n.into()) / (factorial(k.into()) * factorial((n - k).into()))
}

/// Pontryagin class `p_j` of `CP^{n_1} x ... x CP^{n_r}`, from
/// `p = prod (1 + w_i)^{n_i + 1}`.
fn pontryagin_class(factors: &[u32], j: u32) -> Poly {
    let r_ = factors.len();
    let mut total = Poly::from([(vec![0; r_], Rational::one())]);
    for (i, &n) in factors.iter().enumerate() {
        let f: Poly = (0..=n + 1)
            .map(|k| {
                let mut e = vec![0; r_];
                e[i] = k;
                (e, binom(n + 1, k))
            })
            .collect();
        total = poly_mul(&total, &f);
    }
    total.into_iter().filter(|(e, _)| e.iter().sum::<u32>() == j).collect()
}

/// `<p_part, CP^{n_1} x ... >`: the coefficient of `prod u_i^{n_i}`.
fn pontryagin_number(factors: &[u32], part: &[u32]) -> Rational {
    if factors.iter().any(|n| n % 2 == 1) {
        return Rational::zero();
    }
    let top: Vec<u32> = factors.iter().map(|n| n / 2).collect();
    let class = part.iter().fold(Poly::from([(vec![0; factors.len()], Rational::one())]), |acc, &j| {
        poly_mul(&acc, &pontryagin_class(factors, j))
    });
    class.get(&top).cloned().unwrap_or_else(Rational::zero)
}

fn spec(factors: &[u32]) -> ManifoldSpec {
    factors.iter().fold(ManifoldSpec::point(), |m, &n| m.times(&ManifoldSpec::cp(n).unwrap()).unwrap())
}

/// Exponent vector of a partition, indexed by part size.
fn exponents(part: &[u32], k: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    for &p in part {
        e[p as usize - 1] += 1;
    }
    e
}

#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[c];
                b[r] -= t;
            }
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

#[test]
fn cp_values_match_series() {
    for n in 0..=12 {
        let got = ahat_genus(&ManifoldSpec::cp(n).unwrap().data().unwrap()).unwrap();
        assert_eq!(got, ahat_cp_oracle(n), "CP{n}");
    }
    assert_eq!(ahat_cp_oracle(2), Rational::new(BigInt::from(-1), BigInt::from(8)));
}

#[test]
fn pontryagin_numbers_match_oracle() {
    for factors in [vec![2], vec![4], vec![2, 2], vec![6], vec![4, 2], vec![2, 2, 2], vec![3, 1]] {
        let m = spec(&factors);
        let data = m.data().unwrap();
        let k = (m.dim() / 4) as u32;
        for part in Partition::all(k) {
            assert_eq!(data.number(&part), pontryagin_number(&factors, part.parts()), "{factors:?} {part}");
        }
    }
    assert_eq!(pontryagin_number(&[2, 2], &[1, 1]), r(18));
    assert_eq!(pontryagin_number(&[2, 2], &[2]), r(9));
}

/// Recovers each `A-hat_k` by solving for its coefficients from the values
/// on the products `CP^{2 lambda_1} x ...` over partitions `lambda` of `k`.
#[test]
fn ahat_polynomials_by_linear_solve() {
    for k in 1..=3usize {
        let parts = Partition::all(k as u32);
        let basis: Vec<Vec<u32>> = parts.iter().map(|l| l.parts().iter().map(|x| 2 * x).collect()).collect();
        let matrix: Vec<Vec<Rational>> =
            basis.iter().map(|f| parts.iter().map(|mu| pontryagin_number(f, mu.parts())).collect()).collect();
        let values: Vec<Rational> = basis.iter().map(|f| f.iter().map(|&n| ahat_cp_oracle(n)).product()).collect();
        let coeffs = solve(matrix, values);
        let poly = ahat_polynomial(k).unwrap();
        for (mu, c) in parts.iter().zip(&coeffs) {
            assert_eq!(poly.coeff(&exponents(mu.parts(), k)), *c, "A-hat_{k}, {mu}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_match_series(factors in prop::collection::vec(1u32..=4, 1..=3)) {
        let m = spec(&factors);
        let want: Rational = factors.iter().map(|&n| ahat_cp_oracle(n)).product();
        prop_assert_eq!(ahat_genus(&m.data().unwrap()).unwrap(), want);
    }

    #[test]
    fn specs_and_data_round_trip(factors in prop::collection::vec(1u32..=5, 0..=3)) {
        let m = spec(&factors);
        prop_assert_eq!(ManifoldSpec::parse(&m.to_string()).unwrap(), m.clone());
        let data = m.data().unwrap();
        prop_assert_eq!(CharClassData::from_json(&data.to_json().to_string()).unwrap(), data);
    }
}
