use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::random_rational;
use super::{CheckResult, Config, Tally};
use crate::error::Result;
use crate::mackey::{
    broken_transfer_fixture, burnside_fixture, check_mackey_axioms, fixed_point_obstruction, obstruction_value,
    swap_fixture, theorem_report, AbelianGroup, IntMatrix, MackeyPresentation,
};
use crate::scalar::{int, Rational};

fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                out[r0 + r][c0 + c] = b.get(r, c).clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    IntMatrix::from_rows(rows, cols, out).expect("shape is consistent")
}

/// Random unimodular `P` and its inverse, as products of elementary moves.
fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let k: i64 = rng.random_range(-2..=2);
        let mut e = vec![vec![0i64; n]; n];
        let mut f = vec![vec![0i64; n]; n];
        for d in 0..n {
            e[d][d] = 1;
            f[d][d] = 1;
        }
        e[i][j] = k;
        f[i][j] = -k;
        let rows = |m: Vec<Vec<i64>>| {
            IntMatrix::from_rows(n, n, m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
                .expect("square")
        };
        p = rows(e).mul(&p).expect("square");
        q = q.mul(&rows(f)).expect("square");
    }
    (p, q)
}

/// Direct sum of valid fixtures, re-based by random unimodular changes of
/// coordinates on both groups.
fn random_valid(rng: &mut ChaCha8Rng) -> Result<MackeyPresentation> {
    let pool = [burnside_fixture(), swap_fixture()];
    let parts: Vec<&MackeyPresentation> = (0..rng.random_range(1..=3)).map(|_| &pool[rng.random_range(0..2)]).collect();
    let res = block_diag(&parts.iter().map(|m| m.res()).collect::<Vec<_>>());
    let tr = block_diag(&parts.iter().map(|m| m.tr()).collect::<Vec<_>>());
    let conj = block_diag(&parts.iter().map(|m| m.conj()).collect::<Vec<_>>());
    let (ge, gc) = (conj.rows(), tr.rows());
    let (pe, pe_inv) = unimodular(ge, rng);
    let (pc, pc_inv) = unimodular(gc, rng);
    MackeyPresentation::new(
        AbelianGroup::free(gc),
        AbelianGroup::free(ge),
        pe.mul(&res)?.mul(&pc_inv)?,
        pc.mul(&tr)?.mul(&pe_inv)?,
        pe.mul(&conj)?.mul(&pe_inv)?,
    )
}

fn perturb_transfer(m: &MackeyPresentation, rng: &mut ChaCha8Rng) -> Result<MackeyPresentation> {
    let mut rows = m.tr().to_rows();
    let r = rng.random_range(0..rows.len());
    let c = rng.random_range(0..rows[0].len());
    rows[r][c] += BigInt::one();
    let tr = IntMatrix::from_rows(m.tr().rows(), m.tr().cols(), rows)?;
    MackeyPresentation::new(m.m_c2().clone(), m.m_e().clone(), m.res().clone(), tr, m.conj().clone())
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

pub(super) fn run(cfg: &Config, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut fixtures = Tally::exact("fixture presentations give the expected axiom pattern");
    fixtures.check(
        Ok(check_mackey_axioms(&burnside_fixture()).pattern() == [true; 4]
            && check_mackey_axioms(&broken_transfer_fixture()).pattern() == [true, true, true, false]
            && check_mackey_axioms(&swap_fixture()).pattern() == [true; 4]),
        || "fixtures".into(),
    );
    let mut theorem = Tally::exact("default obstruction chain is obstructed");
    theorem.check(theorem_report(None).map(|r| r.obstructed && r.all_links_ok()), || "default chain".into());

    let mut valid = Tally::exact("re-based sums of fixtures satisfy all axioms");
    let mut defect = Tally::exact("res(tr(y)) - y - conj(y) = 0 on every generator");
    let mut perturbed = Tally::exact("perturbing the transfer breaks res o tr = id + conj");
    let mut shift = Tally::exact("obstruction verdict and residues invariant under q -> q + k");
    let mut period = Tally::exact("f(m + period) - f(m) is an integer");
    let mut integral = Tally::exact("integral genus has a witness");

    for i in 0..cfg.cases {
        let case = || format!("case {i}");
        match random_valid(rng) {
            Ok(m) => {
                valid.check(Ok(check_mackey_axioms(&m).all_hold()), case);
                defect.check(
                    Ok((0..m.m_e().generators()).all(|j| m.double_coset_defect(j).iter().all(Zero::is_zero))),
                    case,
                );
                perturbed.check(perturb_transfer(&m, rng).map(|p| !check_mackey_axioms(&p).axioms[3].holds), case);
            }
            Err(e) => {
                valid.check(Err(e.clone()), case);
                defect.check(Err(e.clone()), case);
                perturbed.check(Err(e), case);
            }
        }

        let q = random_rational(200, 64, rng);
        let k = int(rng.random_range(-50..=50));
        shift.check(
            (|| {
                let (a, b) = (fixed_point_obstruction(&q)?, fixed_point_obstruction(&(&q + &k))?);
                Ok(a.is_obstructed() == b.is_obstructed()
                    && a.period == b.period
                    && sorted(a.residues) == sorted(b.residues))
            })(),
            || format!("q = {q}, k = {k}"),
        );
        period.check(
            (|| {
                let p = BigInt::from(fixed_point_obstruction(&q)?.period);
                let m = BigInt::from(rng.random_range(-1000..=1000));
                Ok((obstruction_value(&q, &(&m + &p)) - obstruction_value(&q, &m)).is_integer())
            })(),
            || format!("q = {q}"),
        );
        integral.check(fixed_point_obstruction(&k).map(|c| !c.is_obstructed()), || format!("q = {k}"));
    }
    [fixtures, theorem, valid, defect, perturbed, shift, period, integral].into_iter().map(Tally::finish).collect()
}
