use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, Config, Tally};
use crate::error::Result;
use crate::genus::{ahat_genus, ahat_polynomial, genus_evaluate, BordismElement, ManifoldSpec, MultSeq, MAX_DEGREE};
use crate::scalar::{int, rat, Rational};

/// Random product of projective spaces of real dimension at most `max_dim`.
fn random_manifold(max_dim: u64, rng: &mut ChaCha8Rng) -> ManifoldSpec {
    let mut m = ManifoldSpec::point();
    loop {
        let n = rng.random_range(1..=4u32);
        match m.times(&ManifoldSpec::cp(n).expect("small")) {
            Ok(next) if next.dim() <= max_dim => m = next,
            _ => return m,
        }
        if rng.random_bool(0.3) {
            return m;
        }
    }
}

fn ahat_of(m: &ManifoldSpec) -> Result<Rational> {
    ahat_genus(&m.data()?)
}

pub(super) fn run(cfg: &Config, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut fixtures = Tally::exact("A-hat of CP2 is -1/8 and of CP2 x CP2 is 1/64 by both routes");
    fixtures.check(
        (|| {
            let cp2 = ahat_of(&ManifoldSpec::cp(2)?)?;
            let sq = ManifoldSpec::cp(2)?.times(&ManifoldSpec::cp(2)?)?;
            // ⟨p₁², CP2 x CP2⟩ = 18 and ⟨p₂, CP2 x CP2⟩ = 9
            let a2 = ahat_polynomial(2)?;
            let direct = a2.coeff(&[2, 0]) * int(18) + a2.coeff(&[0, 1]) * int(9);
            Ok(cp2 == rat(-1, 8) && ahat_of(&sq)? == rat(1, 64) && direct == rat(1, 64) && &cp2 * &cp2 == direct)
        })(),
        || "fixtures".into(),
    );

    let l = MultSeq::l_genus(MAX_DEGREE).expect("degree in range");
    let ahat = MultSeq::ahat(MAX_DEGREE).expect("degree in range");
    let mut mult = Tally::exact("A-hat is multiplicative on products");
    let mut l_mult = Tally::exact("L-genus is multiplicative on products");
    let mut signature = Tally::exact("L-genus of CP2k is 1");
    let mut linear = Tally::exact("genus is linear on bordism combinations");

    for i in 0..cfg.cases {
        let (a, b) = (random_manifold(12, rng), random_manifold(12, rng));
        let case = || format!("case {i}: {a} and {b}");
        let ab = a.times(&b);
        mult.check(
            (|| {
                let ab = ab.clone()?;
                Ok(ahat_of(&ab)? == ahat_of(&a)? * ahat_of(&b)? && genus_evaluate(&ahat, &ab.data()?)? == ahat_of(&ab)?)
            })(),
            case,
        );
        l_mult.check(
            (|| {
                let ab = ab.clone()?;
                Ok(genus_evaluate(&l, &ab.data()?)?
                    == genus_evaluate(&l, &a.data()?)? * genus_evaluate(&l, &b.data()?)?)
            })(),
            case,
        );
        let k = rng.random_range(1..=4u32);
        signature.check((|| Ok(genus_evaluate(&l, &ManifoldSpec::cp(2 * k)?.data()?)?.is_one()))(), || {
            format!("CP{}", 2 * k)
        });
        let (x, y) = (BigInt::from(rng.random_range(-5..=5)), BigInt::from(rng.random_range(-5..=5)));
        linear.check(
            (|| {
                let combo =
                    BordismElement::generator(a.clone()).scale(&x).add(&BordismElement::generator(b.clone()).scale(&y));
                Ok(combo.ahat()? == ahat_of(&a)? * Rational::from(x.clone()) + ahat_of(&b)? * Rational::from(y.clone()))
            })(),
            case,
        );
    }
    [fixtures, mult, l_mult, signature, linear].into_iter().map(Tally::finish).collect()
}
