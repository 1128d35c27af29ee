use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::{random_multivector, random_rational, random_signature};
use super::{CheckResult, Config, Tally};
use crate::clifford::Multivector;
use crate::error::Result;
use crate::linalg::{random, realify, Matrix};
use crate::pin::{
    check_phi_real, check_rho_real_equivariance, fixed_point_retraction, iv_model_action, phi_canonicity_residual,
    phi_lift, random_fixed_class, random_pin, rho_homomorphism_holds, spin_lift, PinElement,
};
use crate::scalar::{GaussianRational, MultiPoly};

fn exactly_orthogonal(g: &PinElement) -> Result<bool> {
    let rho = g.rho(0.0)?;
    let real = rho.to_rows().iter().flatten().all(|c| c.im.is_zero());
    Ok(real && rho.transpose().mul(&rho) == Matrix::<GaussianRational>::identity(rho.rows()))
}

fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for _ in 0..3 {
        let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..=1)).collect();
        p.add_term(e, random_rational(4, 3, rng));
    }
    p
}

fn action_composes(g: &PinElement, h: &PinElement, x: &Multivector, f: &MultiPoly) -> Result<bool> {
    let (hx, hf) = iv_model_action(h, x, f)?;
    let (ghx, ghf) = iv_model_action(g, &hx, &hf)?;
    let (x2, f2) = iv_model_action(&g.compose(h)?, x, f)?;
    Ok(ghx == x2 && ghf == f2)
}

pub(super) fn run(cfg: &Config, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut hom = Tally::exact("rho(gh) = rho(g) rho(h)");
    let mut orth = Tally::exact("rho(g) is real orthogonal");
    let mut equiv = Tally::exact("rho(conj g) = conj(rho(g))");
    let mut raw = Tally::exact("certified products pass the raw Pin^c test");
    let mut action = Tally::exact("Clifford-times-polynomial model action composes");

    for i in 0..cfg.cases {
        let sig = random_signature(5, rng);
        let g = random_pin(sig, rng.random_range(0..=4), rng);
        let h = random_pin(sig, rng.random_range(0..=4), rng);
        let case = || format!("case {i} in {sig}");
        hom.check(rho_homomorphism_holds(&g, &h), case);
        orth.check(exactly_orthogonal(&g), case);
        equiv.check(check_rho_real_equivariance(&g, 0.0), case);
        raw.check(PinElement::validate(g.value().clone(), 0.0).map(|p| p.parity() == g.parity()), case);
        if i % 5 == 0 {
            let x = random_multivector(sig, 0.2, rng);
            let f = random_poly(sig.dim(), rng);
            action.check(action_composes(&g, &h, &x, &f), case);
        }
    }

    let tol = cfg.tol;
    let mut spin = Tally::within("spin_lift: |rho(lift R) - R| for R in SO(n), n = 2..8", tol);
    let mut phi_rho = Tally::within("phi_lift: |rho(phi U) - realify U|", tol);
    let mut phi_hom = Tally::within("phi_lift: |phi(UV) - phi(U) phi(V)|", tol);
    let mut phi_conj = Tally::within("phi_lift: |phi(conj U) - conj(phi U)|", tol);
    let mut phi_canon = Tally::within("phi_lift: independent of the eigendecomposition", tol);
    let mut fixed = Tally::within("retraction: imaginary part of the representative", tol / 10.0);
    let mut orbit = Tally::within("retraction: distance to the original orbit", tol);

    for i in 0..cfg.float_cases() {
        let n = 2 + i % 7;
        let r = random::rotation(n, rng);
        spin.residual(spin_lift(&r, tol).map(|l| l.rho_residual), || format!("case {i}, n = {n}"));

        let n = 1 + i % 4;
        let (u, v) = (random::unitary(n, rng), random::unitary(n, rng));
        let case = || format!("case {i}, n = {n}");
        phi_rho.residual(
            phi_lift(&u, tol).and_then(|p| {
                let real = realify(&u, tol)?;
                let rho = p.element.rho(tol)?;
                Ok((0..2 * n)
                    .flat_map(|a| (0..2 * n).map(move |b| (a, b)))
                    .map(|(a, b)| (rho.get(a, b) - real.get(a, b)).norm())
                    .fold(0.0, f64::max))
            }),
            case,
        );
        phi_hom.residual(
            (|| {
                let uv = phi_lift(&u.mul(&v), tol)?;
                let prod = phi_lift(&u, tol)?.element.compose(&phi_lift(&v, tol)?.element)?;
                Ok(uv.element.value().distance(prod.value()))
            })(),
            case,
        );
        phi_conj.residual(check_phi_real(&u, tol).map(|c| c.residual), case);
        phi_canon.residual(phi_canonicity_residual(&u, tol, rng), case);

        let big_n = rng.random_range(n..=8);
        let m = rng.random_range(1..=3);
        let (x, y) = random_fixed_class(big_n, n, m, rng);
        let case = || format!("case {i}, n = {n}, N = {big_n}");
        match fixed_point_retraction(&x, &y, tol) {
            Ok(r) => {
                fixed.residual(Ok(r.fixed_residual), case);
                orbit.residual(Ok(r.orbit_residual), case);
            }
            Err(e) => {
                fixed.residual(Err(e.clone()), case);
                orbit.residual(Err(e), case);
            }
        }
    }

    [hom, orth, equiv, raw, action, spin, phi_rho, phi_hom, phi_conj, phi_canon, fixed, orbit]
        .into_iter()
        .map(Tally::finish)
        .collect()
}
