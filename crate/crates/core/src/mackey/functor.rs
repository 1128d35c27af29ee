use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::{is_well_defined, AbelianGroup, GroupJson, IntMatrix};
use crate::error::{Error, Result};

/// A C₂-Mackey functor on finitely generated abelian groups. Matrices act
/// on generator coordinates: `res` is `g_e × g_C2`, `tr` is `g_C2 × g_e`,
/// `conj` is `g_e × g_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyPresentation {
    m_c2: AbelianGroup,
    m_e: AbelianGroup,
    res: IntMatrix,
    tr: IntMatrix,
    conj: IntMatrix,
}

/// Which of the four axioms.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `conj ∘ res = res`
    ConjRes,
    /// `tr ∘ conj = tr`
    TrConj,
    /// `conj² = id`
    ConjInvolution,
    /// `res ∘ tr = id + conj`
    ResTr,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::ConjRes, Axiom::TrConj, Axiom::ConjInvolution, Axiom::ResTr];

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::ConjRes => "conj o res = res",
            Axiom::TrConj => "tr o conj = tr",
            Axiom::ConjInvolution => "conj o conj = id",
            Axiom::ResTr => "res o tr = id + conj",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub statement: &'static str,
    pub holds: bool,
    /// Generators (of the domain) on which the two sides differ.
    pub failing_generators: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AxiomReport {
    pub m_c2: String,
    pub m_e: String,
    pub axioms: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    pub fn pattern(&self) -> [bool; 4] {
        let mut out = [false; 4];
        for (o, a) in out.iter_mut().zip(&self.axioms) {
            *o = a.holds;
        }
        out
    }
}

impl MackeyPresentation {
    /// Rejects inconsistent shapes and maps that do not respect relations.
    pub fn new(m_c2: AbelianGroup, m_e: AbelianGroup, res: IntMatrix, tr: IntMatrix, conj: IntMatrix) -> Result<Self> {
        for (name, f, a, b) in [("res", &res, &m_c2, &m_e), ("tr", &tr, &m_e, &m_c2), ("conj", &conj, &m_e, &m_e)] {
            if !is_well_defined(f, a, b).map_err(|e| Error::Dimension(format!("{name}: {e}")))? {
                return Err(Error::IllDefined(format!("{name} does not respect the relations of its domain")));
            }
        }
        Ok(Self { m_c2, m_e, res, tr, conj })
    }

    pub fn m_c2(&self) -> &AbelianGroup {
        &self.m_c2
    }

    pub fn m_e(&self) -> &AbelianGroup {
        &self.m_e
    }

    pub fn res(&self) -> &IntMatrix {
        &self.res
    }

    pub fn tr(&self) -> &IntMatrix {
        &self.tr
    }

    pub fn conj(&self) -> &IntMatrix {
        &self.conj
    }

    /// `res(tr(y)) − y − conj(y)` on the `j`-th generator of `M(e)`.
    pub fn double_coset_defect(&self, j: usize) -> Vec<BigInt> {
        let lhs = self.res.mul(&self.tr).expect("shapes checked").column(j);
        let conj = self.conj.column(j);
        lhs.iter().zip(&conj).enumerate().map(|(i, (a, c))| a - c - if i == j { 1 } else { 0 }).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MackeyJson = serde_json::from_str(text)?;
        raw.to_presentation()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MackeyJson::from_presentation(self)).expect("serializable")
    }
}

/// Checks the axioms on every generator; two sides are compared in the
/// target group, i.e. modulo its relations.
pub fn check_mackey_axioms(m: &MackeyPresentation) -> AxiomReport {
    let ge = m.m_e.generators();
    let gc = m.m_c2.generators();
    let id_e = IntMatrix::identity(ge);
    let prod = |a: &IntMatrix, b: &IntMatrix| a.mul(b).expect("shapes checked");
    let cases = [
        (Axiom::ConjRes, prod(&m.conj, &m.res), m.res.clone(), &m.m_e, gc),
        (Axiom::TrConj, prod(&m.tr, &m.conj), m.tr.clone(), &m.m_c2, ge),
        (Axiom::ConjInvolution, prod(&m.conj, &m.conj), id_e.clone(), &m.m_e, ge),
        (Axiom::ResTr, prod(&m.res, &m.tr), id_e.add(&m.conj).expect("square"), &m.m_e, ge),
    ];
    let axioms = cases
        .into_iter()
        .map(|(axiom, lhs, rhs, target, n)| {
            let failing: Vec<usize> = (0..n).filter(|&j| !target.equal(&lhs.column(j), &rhs.column(j))).collect();
            AxiomResult { axiom, statement: axiom.statement(), holds: failing.is_empty(), failing_generators: failing }
        })
        .collect();
    AxiomReport { m_c2: m.m_c2.to_string(), m_e: m.m_e.to_string(), axioms }
}

/// Wire format. Matrices are lists of rows.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MackeyJson {
    pub m_c2: GroupJson,
    pub m_e: GroupJson,
    pub res: Vec<Vec<i64>>,
    pub tr: Vec<Vec<i64>>,
    pub conj: Vec<Vec<i64>>,
}

fn matrix(name: &str, rows: &[Vec<i64>], r: usize, c: usize) -> Result<IntMatrix> {
    IntMatrix::from_rows(r, c, rows.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect())
        .map_err(|e| Error::Dimension(format!("{name}: {e}")))
}

fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|v| i64::try_from(v).expect("entries come from i64 input")).collect())
        .collect()
}

impl MackeyJson {
    pub fn to_presentation(&self) -> Result<MackeyPresentation> {
        let m_c2 = self.m_c2.to_group()?;
        let m_e = self.m_e.to_group()?;
        let (gc, ge) = (m_c2.generators(), m_e.generators());
        let res = matrix("res", &self.res, ge, gc)?;
        let tr = matrix("tr", &self.tr, gc, ge)?;
        let conj = matrix("conj", &self.conj, ge, ge)?;
        MackeyPresentation::new(m_c2, m_e, res, tr, conj)
    }

    fn from_presentation(m: &MackeyPresentation) -> Self {
        let group = |g: &AbelianGroup| {
            GroupJson::Relations(super::group::RelationsJson {
                generators: g.generators(),
                relations: (0..g.relations().cols())
                    .map(|c| g.relations().column(c).iter().map(|v| i64::try_from(v).expect("i64 input")).collect())
                    .collect(),
            })
        };
        Self {
            m_c2: group(&m.m_c2),
            m_e: group(&m.m_e),
            res: to_i64_rows(&m.res),
            tr: to_i64_rows(&m.tr),
            conj: to_i64_rows(&m.conj),
        }
    }
}

/// `M(C₂) = M(e) = ℤ`, `res = 1`, `tr = 2`, trivial action.
pub fn burnside_fixture() -> MackeyPresentation {
    let z = AbelianGroup::free(1);
    MackeyPresentation::new(
        z.clone(),
        z,
        IntMatrix::from_i64(&[&[1]]),
        IntMatrix::from_i64(&[&[2]]),
        IntMatrix::from_i64(&[&[1]]),
    )
    .expect("fixture is well defined")
}

/// As [`burnside_fixture`] with `tr = 1`; breaks `res ∘ tr = id + conj`.
pub fn broken_transfer_fixture() -> MackeyPresentation {
    let z = AbelianGroup::free(1);
    MackeyPresentation::new(
        z.clone(),
        z,
        IntMatrix::from_i64(&[&[1]]),
        IntMatrix::from_i64(&[&[1]]),
        IntMatrix::from_i64(&[&[1]]),
    )
    .expect("fixture is well defined")
}

/// `M(e) = ℤ²` with the swap action, `M(C₂) = ℤ` embedded diagonally.
pub fn swap_fixture() -> MackeyPresentation {
    MackeyPresentation::new(
        AbelianGroup::free(1),
        AbelianGroup::free(2),
        IntMatrix::from_i64(&[&[1], &[1]]),
        IntMatrix::from_i64(&[&[1, 1]]),
        IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
    )
    .expect("fixture is well defined")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_patterns() {
        assert_eq!(check_mackey_axioms(&burnside_fixture()).pattern(), [true; 4]);
        let broken = check_mackey_axioms(&broken_transfer_fixture());
        assert_eq!(broken.pattern(), [true, true, true, false]);
        assert_eq!(broken.axioms[3].failing_generators, vec![0]);
        assert_eq!(check_mackey_axioms(&swap_fixture()).pattern(), [true; 4]);
    }

    #[test]
    fn defect_vanishes_on_valid_fixtures() {
        for m in [burnside_fixture(), swap_fixture()] {
            for j in 0..m.m_e().generators() {
                assert!(m.double_coset_defect(j).iter().all(|x| *x == BigInt::from(0)));
            }
        }
        assert_eq!(broken_transfer_fixture().double_coset_defect(0), vec![BigInt::from(-1)]);
    }

    #[test]
    fn torsion_is_respected() {
        // Z/2 with trivial action, tr = 0: res∘tr = 0 = 1 + 1 mod 2
        let z2 = AbelianGroup::from_torsion(0, &[2]).unwrap();
        let m = MackeyPresentation::new(
            z2.clone(),
            z2,
            IntMatrix::from_i64(&[&[1]]),
            IntMatrix::from_i64(&[&[0]]),
            IntMatrix::from_i64(&[&[1]]),
        )
        .unwrap();
        assert!(check_mackey_axioms(&m).all_hold());
    }

    #[test]
    fn rejects_bad_shapes_and_maps() {
        let json = r#"{"m_c2":{"free":1},"m_e":{"free":2},"res":[[1]],"tr":[[1,1]],"conj":[[0,1],[1,0]]}"#;
        assert!(matches!(MackeyPresentation::from_json(json), Err(Error::Dimension(_))));
        let json = r#"{"m_c2":{"free":0,"torsion":[2]},"m_e":{"free":1},"res":[[1]],"tr":[[2]],"conj":[[1]]}"#;
        assert!(matches!(MackeyPresentation::from_json(json), Err(Error::IllDefined(_))));
        let json = r#"{"m_c2":{"free":1},"m_e":{"free":1},"res":[[1]],"tr":[[2]],"conj":[[1]],"extra":1}"#;
        assert!(MackeyPresentation::from_json(json).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"m_c2":{"free":1},"m_e":{"generators":2,"relations":[]},"res":[[1],[1]],"tr":[[1,1]],"conj":[[0,1],[1,0]]}"#;
        let m = MackeyPresentation::from_json(json).unwrap();
        assert_eq!(check_mackey_axioms(&m).pattern(), [true; 4]);
        assert_eq!(MackeyPresentation::from_json(&m.to_json()).unwrap(), m);
    }
}
