//! The integrality obstruction: if `Â(γ) = q` and the conjugate class has
//! `Â(γ̄) = n − q` for some integer `n`, then `α = γ²` satisfies
//! `Â(α + ᾱ) = q² + (n − q)²`, which must be an integer because
//! `α + ᾱ = res(tr(α))`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genus::ManifoldSpec;
use crate::scalar::rational::{frac, serde_fraction, to_fraction_string};
use crate::scalar::{int, rat, MultiPoly, Rational};

/// Longest period enumerated.
pub const MAX_PERIOD: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No integer `m` makes `f(m)` integral.
    Obstructed,
    /// Smallest `m ≥ 0` with `f(m) ∈ ℤ`.
    Witness { m: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ObstructionCertificate {
    #[serde(with = "serde_fraction")]
    pub q: Rational,
    pub period: u64,
    /// Fractional parts of `f(m)` for `m = 0..period`.
    #[serde(serialize_with = "fractions")]
    pub residues: Vec<Rational>,
    pub verdict: Verdict,
}

fn fractions<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_fraction_string))
}

impl ObstructionCertificate {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }
}

/// `f(m) = q² + (m − q)² = 2q² − 2qm + m²`.
pub fn obstruction_value(q: &Rational, m: &BigInt) -> Rational {
    let m = Rational::from(m.clone());
    int(2) * q * q - int(2) * q * &m + &m * &m
}

/// Enumerates `f(m) mod 1` over one period `m ∈ [0, den(2q))`.
pub fn fixed_point_obstruction(q: &Rational) -> Result<ObstructionCertificate> {
    let two_q = int(2) * q;
    let period = two_q
        .denom()
        .to_u64()
        .filter(|&p| p <= MAX_PERIOD)
        .ok_or_else(|| Error::OutOfRange(format!("period of {} exceeds {MAX_PERIOD}", to_fraction_string(q))))?;
    let residues: Vec<Rational> = (0..period).map(|m| frac(&obstruction_value(q, &BigInt::from(m)))).collect();

    // f(m + P) − f(m) = P(P − 2q + 2m) is integral since P·2q is
    let p = BigInt::from(period);
    for m in [BigInt::zero(), BigInt::one(), p.clone(), -&p - 3] {
        let shift = obstruction_value(q, &(&m + &p)) - obstruction_value(q, &m);
        if !shift.is_integer() {
            return Err(Error::Verification(format!("f is not {period}-periodic at m = {m}")));
        }
    }

    let verdict =
        residues.iter().position(Zero::is_zero).map_or(Verdict::Obstructed, |m| Verdict::Witness { m: m as u64 });
    Ok(ObstructionCertificate { q: q.clone(), period, residues, verdict })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ChainLink {
    pub step: &'static str,
    pub value: String,
    pub expected: Option<String>,
    pub ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TheoremReport {
    /// Set when the genus was overridden, i.e. the general-`q` procedure.
    pub extension: bool,
    pub gamma: String,
    #[serde(with = "serde_fraction")]
    pub ahat_gamma: Rational,
    /// `Â(γ̄)` as a polynomial in the free integer `n`.
    pub ahat_gamma_bar: String,
    pub alpha: String,
    #[serde(with = "serde_fraction")]
    pub ahat_alpha: Rational,
    /// `Â(α + ᾱ)` as a polynomial in `n`.
    pub ahat_res_tr_alpha: String,
    pub chain: Vec<ChainLink>,
    pub certificate: ObstructionCertificate,
    pub obstructed: bool,
}

impl TheoremReport {
    pub fn all_links_ok(&self) -> bool {
        self.chain.iter().all(|l| l.ok)
    }
}

fn poly_n(c0: Rational, c1: Rational, c2: Rational) -> MultiPoly {
    MultiPoly::from_terms(1, [(vec![0], c0), (vec![1], c1), (vec![2], c2)])
}

/// Runs the chain `γ = CP² → Â(γ̄) = n − Â(γ) → α = γ² → f(n) ∉ ℤ`.
/// Without an override, every link is compared with its known value and
/// any deviation is an error.
pub fn theorem_report(genus_override: Option<&Rational>) -> Result<TheoremReport> {
    let gamma = ManifoldSpec::cp(2)?;
    let alpha = gamma.times(&gamma)?;
    let computed_gamma = crate::genus::ahat_genus(&gamma.data()?)?;
    let computed_alpha = crate::genus::ahat_genus(&alpha.data()?)?;
    let mut chain = Vec::new();
    let mut link = |step, value: &Rational, expected: Option<Rational>| {
        let ok = expected.as_ref().is_none_or(|e| e == value);
        chain.push(ChainLink {
            step,
            value: to_fraction_string(value),
            expected: expected.as_ref().map(to_fraction_string),
            ok,
        });
        ok
    };

    let extension = genus_override.is_some();
    let q = genus_override.cloned().unwrap_or_else(|| computed_gamma.clone());
    let ahat_alpha = &q * &q;
    let mut ok = true;
    if extension {
        link("genus of CP2 (overridden)", &q, None);
        link("genus of CP2 x CP2, by multiplicativity", &ahat_alpha, None);
    } else {
        ok &= link("genus of CP2", &computed_gamma, Some(rat(-1, 8)));
        ok &= link("genus of CP2 x CP2", &computed_alpha, Some(rat(1, 64)));
        ok &= link("multiplicativity on CP2 x CP2", &computed_alpha, Some(&q * &q));
    }

    // Â(α + ᾱ) = q² + (n − q)², as a polynomial in n
    let res_tr = poly_n(int(2) * &q * &q, int(-2) * &q, int(1));
    if !extension {
        let expected = poly_n(rat(1, 32), rat(1, 4), int(1));
        let agree = res_tr == expected;
        chain.push(ChainLink {
            step: "genus of alpha + conj(alpha) as a polynomial in n",
            value: res_tr.display_with(&["n"]),
            expected: Some("(8n+1)/32 + n^2".into()),
            ok: agree,
        });
        ok &= agree;
    }

    let certificate = fixed_point_obstruction(&q)?;
    if !extension {
        let want = [rat(1, 32), rat(9, 32), rat(17, 32), rat(25, 32)];
        let agree = certificate.is_obstructed() && certificate.period == 4 && certificate.residues == want;
        chain.push(ChainLink {
            step: "residues of (8n+1)/32 + n^2 over n mod 4",
            value: certificate.residues.iter().map(to_fraction_string).collect::<Vec<_>>().join(", "),
            expected: Some("1/32, 9/32, 17/32, 25/32".into()),
            ok: agree,
        });
        ok &= agree;
    }
    if !ok {
        let bad: Vec<&str> = chain.iter().filter(|l| !l.ok).map(|l| l.step).collect();
        return Err(Error::Verification(format!("link(s) deviate: {}", bad.join("; "))));
    }

    let gamma_bar = poly_n(-q.clone(), int(1), int(0)).display_with(&["n"]);
    Ok(TheoremReport {
        extension,
        gamma: gamma.to_string(),
        ahat_gamma: q.clone(),
        ahat_gamma_bar: gamma_bar,
        alpha: alpha.to_string(),
        ahat_alpha,
        ahat_res_tr_alpha: res_tr.display_with(&["n"]),
        obstructed: certificate.is_obstructed(),
        certificate,
        chain,
    })
}
