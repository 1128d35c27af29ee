//! C₂-Mackey functors on finitely generated abelian groups and the
//! integrality obstruction built on `res ∘ tr = id + conj`.

mod functor;
mod group;
mod obstruction;

pub use functor::{
    broken_transfer_fixture, burnside_fixture, check_mackey_axioms, swap_fixture, Axiom, AxiomReport, AxiomResult,
    MackeyJson, MackeyPresentation,
};
pub use group::{
    is_well_defined, smith_normal_form, AbelianGroup, GroupJson, IntMatrix, RelationsJson, SmithForm, TorsionJson,
    MAX_GENERATORS,
};
pub use obstruction::{
    fixed_point_obstruction, obstruction_value, theorem_report, ChainLink, ObstructionCertificate, TheoremReport,
    Verdict, MAX_PERIOD,
};
