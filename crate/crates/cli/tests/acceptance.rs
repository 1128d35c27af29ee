//! Acceptance run: one PASS/FAIL line per criterion, with its runtime.
//! Tolerances and time limits are fixed here and never relaxed.

use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realspin_core::genus::{ahat_genus, ahat_polynomial, ManifoldSpec};
use realspin_core::linalg::Matrix;
use realspin_core::linalg::{random, realify, unitarity_residual, ComplexMatrix};
use realspin_core::mackey::{
    broken_transfer_fixture, burnside_fixture, check_mackey_axioms, swap_fixture, MackeyPresentation,
};
use realspin_core::pin::{
    check_phi_real, check_rho_real_equivariance, fixed_point_retraction, phi_canonicity_residual, phi_lift,
    random_fixed_class, random_pin, rho_homomorphism_holds, spin_lift, PinElement,
};
use realspin_core::scalar::{int, rat, GaussianRational};
use realspin_core::verify::{random_signature, run_suite, Config, Suite};
use serde_json::Value;

const TOL: f64 = 1e-9;
const FIXED_TOL: f64 = 1e-10;
const SEED: u64 = 20_241_015;

type Outcome = Result<String, String>;

/// Name, optional time limit and check.
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn realspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realspin")).args(args).output().expect("binary runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).max_abs()
}

fn ahat_cp2() -> Outcome {
    let value = ahat_genus(&ManifoldSpec::cp(2).and_then(|m| m.data()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(value == rat(-1, 8), || format!("got {value}"))?;
    let out = realspin(&["ahat", "--manifold", "CP2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text.trim() == "-1/8", || format!("CLI printed {text:?}"))?;
    Ok(format!("A-hat(CP2) = {value}"))
}

fn ahat_cp2_squared() -> Outcome {
    let e = |e: realspin_core::Error| e.to_string();
    let cp2 = ManifoldSpec::cp(2).map_err(e)?;
    let single = ahat_genus(&cp2.data().map_err(e)?).map_err(e)?;
    let multiplicative = &single * &single;
    let product = ahat_genus(&cp2.times(&cp2).map_err(e)?.data().map_err(e)?).map_err(e)?;
    // Direct route: the degree-two polynomial paired with p1^2 = 18 and p2 = 9.
    let a2 = ahat_polynomial(2).map_err(e)?;
    let direct = a2.coeff(&[2, 0]) * int(18) + a2.coeff(&[0, 1]) * int(9);
    ensure(multiplicative == rat(1, 64), || format!("multiplicative route gave {multiplicative}"))?;
    ensure(direct == rat(1, 64), || format!("direct route gave {direct}"))?;
    ensure(product == direct && multiplicative == direct, || {
        format!("routes disagree: {multiplicative}, {direct}, {product}")
    })?;
    Ok("both routes give 1/64".into())
}

fn obstruction_cli() -> Outcome {
    let out = realspin(&["obstruction", "--genus", "-1/8", "--json"]);
    ensure(out.status.code() == Some(0), || format!("-1/8 exited with {:?}", out.status.code()))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let o = &v["outputs"];
    ensure(o["verdict"]["kind"] == "obstructed", || format!("verdict {}", o["verdict"]))?;
    ensure(o["period"] == 4, || format!("period {}", o["period"]))?;
    let residues: Vec<&str> = o["residues"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    ensure(residues == ["1/32", "9/32", "17/32", "25/32"], || format!("residues {residues:?}"))?;

    let out = realspin(&["obstruction", "--genus", "0", "--json"]);
    ensure(out.status.code() == Some(2), || format!("0 exited with {:?}", out.status.code()))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["outputs"]["verdict"]["kind"] == "witness", || format!("verdict {}", v["outputs"]["verdict"]))?;
    Ok(format!("-1/8 obstructed, period 4; 0 has witness m = {}", v["outputs"]["verdict"]["m"]))
}

fn suite(s: Suite, cases: usize) -> Outcome {
    let r = run_suite(s, &Config { seed: SEED, cases, tol: TOL });
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.ok()).map(|c| c.name.as_str()).collect();
    ensure(r.passed && failed.is_empty(), || format!("failed checks: {failed:?}"))?;
    Ok(format!("{} checks x {cases} cases", r.checks.len()))
}

fn exactly_orthogonal(g: &PinElement) -> bool {
    let Ok(rho) = g.rho(0.0) else { return false };
    rho.to_rows().iter().flatten().all(|c| c.im == rat(0, 1))
        && rho.transpose().mul(&rho) == Matrix::<GaussianRational>::identity(rho.rows())
}

fn rho_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..500 {
        let sig = random_signature(5, &mut rng);
        let g = random_pin(sig, rng.random_range(1..=4), &mut rng);
        let h = random_pin(sig, rng.random_range(1..=4), &mut rng);
        ensure(matches!(rho_homomorphism_holds(&g, &h), Ok(true)), || format!("homomorphism, case {i} in {sig}"))?;
        ensure(exactly_orthogonal(&g), || format!("orthogonality, case {i} in {sig}"))?;
        ensure(matches!(check_rho_real_equivariance(&g, 0.0), Ok(true)), || {
            format!("equivariance, case {i} in {sig}")
        })?;
    }
    Ok("500 products".into())
}

fn spin_lifts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 2 + i % 7;
        let r = random::rotation(n, &mut rng);
        let lift = spin_lift(&r, TOL).map_err(|e| format!("case {i}, n = {n}: {e}"))?;
        let rho = lift.element.rho(TOL).map_err(|e| e.to_string())?;
        let residual = diff(&rho, &ComplexMatrix::from_real(&r));
        worst = worst.max(residual);
        ensure(residual < TOL, || format!("case {i}, n = {n}: residual {residual:e}"))?;
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn phi_lifts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = 1 + i % 4;
        let (u, v) = (random::unitary(n, &mut rng), random::unitary(n, &mut rng));
        let e = |e: realspin_core::Error| format!("case {i}, n = {n}: {e}");
        let pu = phi_lift(&u, TOL).map_err(e)?;
        let rho = pu.element.rho(TOL).map_err(e)?;
        let real = ComplexMatrix::from_real(&realify(&u, TOL).map_err(e)?);
        let uv = phi_lift(&u.mul(&v), TOL).map_err(e)?;
        let prod = pu.element.compose(&phi_lift(&v, TOL).map_err(e)?.element).map_err(e)?;
        let residuals = [
            ("rho", diff(&rho, &real)),
            ("homomorphism", uv.element.value().distance(prod.value())),
            ("conjugation", check_phi_real(&u, TOL).map_err(e)?.residual),
            ("canonicity", phi_canonicity_residual(&u, TOL, &mut rng).map_err(e)?),
        ];
        for (name, r) in residuals {
            worst = worst.max(r);
            ensure(r < TOL, || format!("case {i}, n = {n}: {name} residual {r:e}"))?;
        }
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn max_imag(m: &ComplexMatrix) -> f64 {
    m.to_rows().iter().flatten().map(|c| c.im.abs()).fold(0.0, f64::max)
}

fn retractions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst_fixed, mut worst_orbit) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let n = 1 + i % 4;
        let big_n = rng.random_range(n..=8);
        let m = rng.random_range(1..=3);
        let (x, y) = random_fixed_class(big_n, n, m, &mut rng);
        let r = fixed_point_retraction(&x, &y, TOL).map_err(|e| format!("case {i}: {e}"))?;
        // Recomputed here from (x, y, S, w, z) rather than read off the result.
        let fixed = max_imag(&r.w).max(max_imag(&r.z));
        let orbit = unitarity_residual(&r.s)
            .map_err(|e| e.to_string())?
            .max(diff(&x.mul(&r.s.adjoint()), &r.w))
            .max(diff(&r.s.mul(&y), &r.z));
        worst_fixed = worst_fixed.max(fixed);
        worst_orbit = worst_orbit.max(orbit);
        ensure(fixed < FIXED_TOL, || format!("case {i}, n = {n}, N = {big_n}: fixed residual {fixed:e}"))?;
        ensure(orbit < TOL, || format!("case {i}, n = {n}, N = {big_n}: orbit residual {orbit:e}"))?;
    }
    Ok(format!("max fixed {worst_fixed:.1e}, max orbit {worst_orbit:.1e}"))
}

/// `res(tr(e_j)) - e_j - conj(e_j)` vanishes in `M(e)` for every generator.
fn double_coset_on_generators(m: &MackeyPresentation) -> bool {
    let k = m.m_e().generators();
    (0..k).all(|j| {
        let e: Vec<BigInt> = (0..k).map(|i| BigInt::from(u8::from(i == j))).collect();
        let lhs = m.res().apply(&m.tr().apply(&e));
        let bar = m.conj().apply(&e);
        let defect: Vec<BigInt> = lhs.iter().zip(&e).zip(&bar).map(|((a, b), c)| a - b - c).collect();
        m.m_e().is_zero(&defect)
    })
}

fn mackey() -> Outcome {
    let cases = [
        ("burnside", burnside_fixture(), [true; 4], true),
        ("broken transfer", broken_transfer_fixture(), [true, true, true, false], false),
        ("swap", swap_fixture(), [true; 4], true),
    ];
    for (name, m, pattern, valid) in cases {
        let got = check_mackey_axioms(&m).pattern();
        ensure(got == pattern, || format!("{name}: pattern {got:?}, expected {pattern:?}"))?;
        ensure(double_coset_on_generators(&m) == valid, || format!("{name}: res(tr(y)) = y + conj(y) is {}", !valid))?;
    }
    Ok("3 fixtures".into())
}

fn determinism() -> Outcome {
    let run = || realspin(&["verify", "--suite", "all", "--seed", "7", "--json"]);
    let (a, b) = (run(), run());
    ensure(a.status.success(), || format!("first run exited with {:?}", a.status.code()))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ".into())?;
    serde_json::from_slice::<Value>(&a.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("A-hat(CP2) = -1/8", Some(Duration::from_secs(1)), ahat_cp2),
        ("A-hat(CP2 x CP2) = 1/64 by both routes", Some(Duration::from_secs(1)), ahat_cp2_squared),
        ("obstruction --genus -1/8 and 0", Some(Duration::from_secs(1)), obstruction_cli),
        ("Clifford suite, 1000 exact cases", Some(Duration::from_secs(10)), || suite(Suite::Clifford, 1000)),
        ("rho: homomorphism, orthogonality, equivariance", Some(Duration::from_secs(10)), rho_suite),
        ("spin_lift on 100 rotations, n = 2..8", Some(Duration::from_secs(30)), spin_lifts),
        ("phi_lift on 50 pairs, n <= 4", Some(Duration::from_secs(60)), phi_lifts),
        ("fixed-point retraction, 100 instances", None, retractions),
        ("functional-calculus suite", Some(Duration::from_secs(5)), || suite(Suite::FunctionalCalculus, 100)),
        ("Mackey fixtures and res(tr(y)) = y + conj(y)", None, mackey),
        ("verify --suite all --seed 7 is deterministic", None, determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failures += usize::from(outcome.is_err());
        println!("{tag} {:>2}. {name}: {detail} ({:.3} s)", i + 1, elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
