use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::{random_multivector, random_signature, random_vector};
use super::{CheckResult, Config, Tally};
use crate::clifford::{from_kasparov, to_kasparov, Multivector, SplitSpec};
use crate::error::Result;
use crate::scalar::{int, GaussianRational, Rational};

/// `Σ v_k w_k` straight from the coordinates.
fn bilinear(v: &Multivector, w: &Multivector) -> GaussianRational {
    let s: Rational = v.vector_coords().iter().zip(w.vector_coords()).map(|(a, b)| a.re.clone() * b.re.clone()).sum();
    GaussianRational::real(s)
}

fn kasparov_preserves(a: &Multivector, b: &Multivector) -> Result<bool> {
    let (ka, kb) = (to_kasparov(a)?, to_kasparov(b)?);
    Ok(to_kasparov(&a.try_mul(b)?)? == ka.try_mul(&kb)?
        && from_kasparov(&ka)? == *a
        && to_kasparov(&a.real_conjugate())? == ka.real_conjugate()
        && to_kasparov(&a.star())? == ka.star())
}

pub(super) fn run(cfg: &Config, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut assoc = Tally::exact("associativity (ab)c = a(bc)");
    let mut polar = Tally::exact("polarization vw + wv = 2<v,w>");
    let mut conj_mul = Tally::exact("real conjugation is multiplicative");
    let mut conj_inv = Tally::exact("real conjugation is an involution");
    let mut star_anti = Tally::exact("star is anti-multiplicative");
    let mut star_inv = Tally::exact("star is an involution");
    let mut kasparov = Tally::exact("Kasparov presentation preserves products and involutions");
    let mut tensor = Tally::exact("graded tensor split is multiplicative");

    for i in 0..cfg.cases {
        let sig = random_signature(6, rng);
        let (a, b, c) =
            (random_multivector(sig, 0.3, rng), random_multivector(sig, 0.3, rng), random_multivector(sig, 0.3, rng));
        let (v, w) = (random_vector(sig, rng), random_vector(sig, rng));
        let case = || format!("case {i} in {sig}");

        assoc.check((|| Ok(a.try_mul(&b)?.try_mul(&c)? == a.try_mul(&b.try_mul(&c)?)?))(), case);
        polar.check(
            (|| {
                let two = GaussianRational::real(int(2));
                Ok(v.anticommutator(&w)? == Multivector::scalar(sig, bilinear(&v, &w) * two))
            })(),
            case,
        );
        conj_mul.check(
            (|| Ok(a.try_mul(&b)?.real_conjugate() == a.real_conjugate().try_mul(&b.real_conjugate())?))(),
            case,
        );
        conj_inv.check(Ok(a.real_conjugate().real_conjugate() == a), case);
        star_anti.check((|| Ok(a.try_mul(&b)?.star() == b.star().try_mul(&a.star())?))(), case);
        star_inv.check(Ok(a.star().star() == a), case);
        kasparov.check(kasparov_preserves(&a, &b), case);
        tensor.check(
            (|| {
                let mask = rng.random_range(0..=sig.full_mask());
                let spec = SplitSpec::new(sig, mask)?;
                let (sa, sb) = (spec.split(&a)?, spec.split(&b)?);
                Ok(spec.split(&a.try_mul(&b)?)? == sa.try_mul(&sb)? && spec.merge(&sa)? == a)
            })(),
            case,
        );
    }
    [assoc, polar, conj_mul, conj_inv, star_anti, star_inv, kasparov, tensor].into_iter().map(Tally::finish).collect()
}
