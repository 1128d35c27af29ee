use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use realspin_core::clifford::{
    multivector_to_json, parse_multivector, to_kasparov, FloatMultivector, Multivector, Signature,
};
use realspin_core::genus::{ahat_genus, CharClassData, ManifoldSpec};
use realspin_core::linalg::parse_complex_matrix;
use realspin_core::mackey::{check_mackey_axioms, fixed_point_obstruction, theorem_report, MackeyPresentation};
use realspin_core::pin::{phi_lift, spin_lift};
use realspin_core::scalar::rational::to_fraction_string;
use realspin_core::scalar::{parse_rational, Rational};
use realspin_core::verify::{run_verify, Config, Suite};
use realspin_core::{Error, Result};
use serde_json::{json, Value};

use crate::report::{residual_lines, Outcome, Report, Verdict};

/// Upper bound on input file size.
const MAX_FILE: u64 = 1 << 20;

fn read(path: &Path) -> Result<String> {
    let meta = fs::metadata(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if meta.len() > MAX_FILE {
        return Err(Error::OutOfRange(format!("{} is larger than {MAX_FILE} bytes", path.display())));
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn float_terms(x: &FloatMultivector) -> Value {
    Value::Array(x.terms().map(|(b, c)| json!([b.mask(), c.re, c.im])).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CliffordOp {
    Mul,
    Add,
    Sub,
    Conj,
    Star,
    /// Image in the Kasparov presentation.
    Kasparov,
}

pub fn clifford(op: CliffordOp, signature: &str, a: &str, b: Option<&str>) -> Result<Outcome> {
    let sig = Signature::parse(signature)?;
    let x = parse_multivector(sig, a)?;
    let y = b.map(|b| parse_multivector(sig, b)).transpose()?;
    let need = |y: Option<Multivector>| y.ok_or_else(|| Error::Parse("this operation needs --b".into()));
    let result = match op {
        CliffordOp::Mul => x.try_mul(&need(y.clone())?)?,
        CliffordOp::Add => x.try_add(&need(y.clone())?)?,
        CliffordOp::Sub => x.try_sub(&need(y.clone())?)?,
        CliffordOp::Conj => x.real_conjugate(),
        CliffordOp::Star => x.star(),
        CliffordOp::Kasparov => to_kasparov(&x)?,
    };
    let op_name = format!("{op:?}").to_lowercase();
    let report = Report {
        command: "clifford".into(),
        inputs: json!({"op": op_name, "signature": sig.to_string(), "a": x.to_string(), "b": y.as_ref().map(ToString::to_string)}),
        outputs: json!({"result": result.to_string(), "terms": multivector_to_json(&result)}),
        residuals: BTreeMap::new(),
        verdict: Verdict::Value,
    };
    Ok(Outcome::new(report, format!("{result}\n")))
}

pub fn spin_lift_cmd(path: &Path, tol: f64) -> Result<Outcome> {
    let m = parse_complex_matrix(&read(path)?)?;
    let r = m.to_real(tol).ok_or_else(|| Error::Parse("rotation matrix has imaginary entries".into()))?;
    let lift = spin_lift(&r, tol)?;
    let residuals = BTreeMap::from([("rho".to_string(), lift.rho_residual), ("unit".to_string(), lift.unit_residual)]);
    let ok = lift.rho_residual <= tol && lift.unit_residual <= tol;
    let g = lift.element.value();
    let report = Report {
        command: "spin-lift".into(),
        inputs: json!({"matrix": path.display().to_string(), "n": r.rows(), "tol": tol}),
        outputs: json!({"element": g.to_string(), "terms": float_terms(g), "reflections": lift.reflections}),
        residuals,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    };
    let human = format!(
        "lift: {g}\nreflections: {}\nresiduals:\n{}verdict: {}\n",
        lift.reflections,
        residual_lines(&report.residuals),
        if ok { "pass" } else { "fail" }
    );
    Ok(Outcome::new(report, human))
}

pub fn phi_lift_cmd(path: &Path, tol: f64) -> Result<Outcome> {
    let u = parse_complex_matrix(&read(path)?)?;
    let lift = phi_lift(&u, tol)?;
    let residuals = BTreeMap::from([
        ("rho".to_string(), lift.rho_residual),
        ("unit".to_string(), lift.unit_residual),
        ("phase".to_string(), lift.phase_residual),
    ]);
    let ok = residuals.values().all(|r| *r <= tol);
    let g = lift.element.value();
    let report = Report {
        command: "phi-lift".into(),
        inputs: json!({"unitary": path.display().to_string(), "n": u.rows(), "tol": tol}),
        outputs: json!({
            "element": g.to_string(),
            "terms": float_terms(g),
            "central_phase": [lift.central_phase.re, lift.central_phase.im],
            "det": [lift.det.re, lift.det.im],
            "angles": lift.angles,
            "branch_cut": lift.branch_cut,
        }),
        residuals,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    };
    let mut human = format!("lift: {g}\ncentral phase: {}\ndet: {}\n", lift.central_phase, lift.det);
    if !lift.branch_cut.is_empty() {
        human.push_str(&format!("eigenvalues at -1 (branch cut): {:?}\n", lift.branch_cut));
    }
    human.push_str(&format!(
        "residuals:\n{}verdict: {}\n",
        residual_lines(&report.residuals),
        if ok { "pass" } else { "fail" }
    ));
    Ok(Outcome::new(report, human))
}

pub fn ahat(manifold: Option<&str>, pontryagin: Option<&Path>) -> Result<Outcome> {
    let (input, data) = match (manifold, pontryagin) {
        (Some(spec), None) => {
            let m = ManifoldSpec::parse(spec)?;
            (json!({"manifold": m.to_string()}), m.data()?)
        }
        (None, Some(path)) => {
            let d = CharClassData::from_json(&read(path)?)?;
            (json!({"pontryagin": d.to_json()}), d)
        }
        _ => return Err(Error::Parse("give exactly one of --manifold and --pontryagin".into())),
    };
    let value = ahat_genus(&data)?;
    let report = Report {
        command: "ahat".into(),
        inputs: input,
        outputs: json!({"dim": data.dim(), "ahat": to_fraction_string(&value), "integral": value.is_integer()}),
        residuals: BTreeMap::new(),
        verdict: Verdict::Value,
    };
    Ok(Outcome::new(report, format!("{value}\n")))
}

fn fraction_list(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn obstruction(genus: &str) -> Result<Outcome> {
    let q = parse_rational(genus)?;
    let cert = fixed_point_obstruction(&q)?;
    let obstructed = cert.is_obstructed();
    let verdict_line = match &cert.verdict {
        realspin_core::mackey::Verdict::Obstructed => "obstructed".to_string(),
        realspin_core::mackey::Verdict::Witness { m } => format!("witness m = {m}"),
    };
    let report = Report {
        command: "obstruction".into(),
        inputs: json!({"genus": to_fraction_string(&q)}),
        outputs: serde_json::to_value(&cert).expect("serializable"),
        residuals: BTreeMap::new(),
        verdict: Verdict::Value,
    };
    let human = format!(
        "q: {q}\nperiod: {}\nresidues: {}\nverdict: {verdict_line}\n",
        cert.period,
        fraction_list(&cert.residues)
    );
    Ok(Outcome::new(report, human).with_exit(if obstructed { 0 } else { 2 }))
}

pub fn theorem(genus: Option<&str>) -> Result<Outcome> {
    let q = genus.map(parse_rational).transpose()?;
    let r = theorem_report(q.as_ref())?;
    let mut human = String::new();
    if r.extension {
        human.push_str("genus overridden: general-q extension of the obstruction\n");
    }
    human.push_str(&format!(
        "gamma = {}: A-hat = {}\nconj(gamma): A-hat = {}\nalpha = {}: A-hat = {}\nalpha + conj(alpha) = res(tr(alpha)): A-hat = {}\n",
        r.gamma,
        r.ahat_gamma,
        r.ahat_gamma_bar,
        r.alpha,
        r.ahat_alpha,
        r.ahat_res_tr_alpha
    ));
    for l in &r.chain {
        human.push_str(&format!("  [{}] {}: {}\n", if l.ok { "ok" } else { "FAIL" }, l.step, l.value));
    }
    human.push_str(&format!(
        "residues over one period: {}\nverdict: {}\n",
        fraction_list(&r.certificate.residues),
        if r.obstructed { "obstructed" } else { "not obstructed" }
    ));
    let code = if r.obstructed { 0 } else { 2 };
    let report = Report {
        command: "theorem".into(),
        inputs: json!({"genus": q.as_ref().map(to_fraction_string)}),
        outputs: serde_json::to_value(&r).expect("serializable"),
        residuals: BTreeMap::new(),
        verdict: Verdict::Value,
    };
    Ok(Outcome::new(report, human).with_exit(code))
}

pub fn mackey(path: &Path) -> Result<Outcome> {
    let m = MackeyPresentation::from_json(&read(path)?)?;
    let r = check_mackey_axioms(&m);
    let ok = r.all_hold();
    let mut human = format!("M(C2) = {}\nM(e) = {}\n", r.m_c2, r.m_e);
    for a in &r.axioms {
        human.push_str(&format!("  {} {}", if a.holds { "PASS" } else { "FAIL" }, a.statement));
        if !a.holds {
            human.push_str(&format!("  (generators {:?})", a.failing_generators));
        }
        human.push('\n');
    }
    let report = Report {
        command: "mackey".into(),
        inputs: json!({"presentation": path.display().to_string()}),
        outputs: serde_json::to_value(&r).expect("serializable"),
        residuals: BTreeMap::new(),
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    };
    Ok(Outcome::new(report, human))
}

pub fn verify(suite: &str, seed: u64, cases: usize, tol: f64) -> Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let cfg = Config { seed, cases, tol };
    let v = run_verify(&suites, &cfg);
    let mut residuals = BTreeMap::new();
    let mut human = String::new();
    for s in &v.suites {
        let (passed, total) = (s.checks.iter().filter(|c| c.ok()).count(), s.checks.len());
        human.push_str(&format!("{} ({passed}/{total} checks)\n", s.suite));
        for c in &s.checks {
            human.push_str(&format!(
                "  {} {:>5}/{:<5} {}",
                if c.ok() { "PASS" } else { "FAIL" },
                c.passed,
                c.cases,
                c.name
            ));
            if let Some(r) = c.max_residual {
                human.push_str(&format!("  (max residual {r:e})"));
                residuals.insert(format!("{}: {}", s.suite, c.name), r);
            }
            if let Some(f) = &c.first_failure {
                human.push_str(&format!("  first failure: {f}"));
            }
            human.push('\n');
        }
    }
    human.push_str(&format!("seed {seed}, {cases} cases: {}\n", if v.passed { "pass" } else { "fail" }));
    let report = Report {
        command: "verify".into(),
        inputs: json!({"suite": suite, "seed": seed, "cases": cases, "tol": tol}),
        outputs: serde_json::to_value(&v).expect("serializable"),
        residuals,
        verdict: if v.passed { Verdict::Pass } else { Verdict::Fail },
    };
    Ok(Outcome::new(report, human))
}
