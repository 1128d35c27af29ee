use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::{random_rational, random_signature, random_vector};
use super::{CheckResult, Config, Tally};
use crate::clifford::Blade;
use crate::error::Result;
use crate::functional_calculus::{
    alpha_conjugation_check, comultiplication, fc_equivariance, fc_eval, flip, iterated_closed_form, s_generators,
    GradedRatFunc,
};
use crate::pin::random_pin;

/// `c₀ + c₁ a + c₂ b + c₃ ab + c₄ a²` with small rational `c_k`.
fn random_element(a: &GradedRatFunc, b: &GradedRatFunc, rng: &mut ChaCha8Rng) -> Result<GradedRatFunc> {
    let monomials = [GradedRatFunc::one(1), a.clone(), b.clone(), a.try_mul(b)?, a.try_mul(a)?];
    monomials.iter().try_fold(GradedRatFunc::zero(1), |acc, m| acc.try_add(&m.scale(&random_rational(3, 2, rng))))
}

fn delta_identities() -> Result<[bool; 5]> {
    let (a, b) = s_generators();
    let (da, db) = (comultiplication(&a)?, comultiplication(&b)?);
    let (ca, cb) = iterated_closed_form(2);
    let (ta, tb) = iterated_closed_form(3);
    let sq = db.try_mul(&db)?;
    Ok([
        da == ca && db == cb,
        sq == da.try_sub(&da.try_mul(&da)?)?,
        sq.coeff(Blade(0b11)).is_zero(),
        flip(&da)? == da && flip(&db)? == db,
        da.comultiply_slot(0)? == ta
            && da.comultiply_slot(1)? == ta
            && db.comultiply_slot(0)? == tb
            && db.comultiply_slot(1)? == tb,
    ])
}

pub(super) fn run(cfg: &Config, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let (a, b) = s_generators();
    let mut gens = Tally::exact("b^2 = a - a^2, ab = ba, a and b self-adjoint, a even and b odd");
    gens.check(
        (|| {
            Ok(b.try_mul(&b)? == a.try_sub(&a.try_mul(&a)?)?
                && a.try_mul(&b)? == b.try_mul(&a)?
                && a.is_self_adjoint()
                && b.is_self_adjoint()
                && a.is_odd() == Some(false)
                && b.is_odd() == Some(true))
        })(),
        || "generators".into(),
    );

    let names = [
        "Delta(a) = 1/(1+x^2+y^2) and Delta(b) = (x e1 + y e2)/(1+x^2+y^2)",
        "Delta(b)^2 = Delta(a) - Delta(a)^2",
        "cross term of Delta(b)^2 vanishes",
        "Delta is cocommutative",
        "Delta is coassociative",
    ];
    let outcome = delta_identities();
    let delta: Vec<Tally> = names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut t = Tally::exact(name);
            t.check(outcome.clone().map(|o| o[k]), || "generators".into());
            t
        })
        .collect();

    let mut hom = Tally::exact("Delta(xy) = Delta(x) Delta(y)");
    for i in 0..cfg.cases.min(10) {
        hom.check(
            (|| {
                let (x, y) = (random_element(&a, &b, rng)?, random_element(&a, &b, rng)?);
                Ok(comultiplication(&x.try_mul(&y)?)? == comultiplication(&x)?.try_mul(&comultiplication(&y)?)?)
            })(),
            || format!("case {i}"),
        );
    }

    let mut rel = Tally::exact("fc images satisfy the generator relations");
    let mut equiv = Tally::exact("fc is equivariant for real conjugation");
    let mut alpha = Tally::exact("alpha conjugation identities for even g");
    for i in 0..cfg.cases {
        let sig = random_signature(4, rng);
        let v = random_vector(sig, rng);
        let case = || format!("case {i} in {sig}");
        rel.check(fc_eval(&v).and_then(|f| f.relations()).map(|r| r.all()), case);
        equiv.check(fc_equivariance(&v), case);
        let g = random_pin(sig, 2 * rng.random_range(0..=2), rng);
        let w = random_vector(sig, rng);
        alpha.check(alpha_conjugation_check(&g, &v, &w), case);
    }

    let mut out = vec![gens.finish()];
    out.extend(delta.into_iter().map(Tally::finish));
    out.extend([hom, rel, equiv, alpha].into_iter().map(Tally::finish));
    out
}
