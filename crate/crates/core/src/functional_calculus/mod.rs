//! Generators `a`, `b` of the even/odd function algebra, the
//! comultiplication in a graded model, and the functional-calculus map.

mod fc;
mod graded;

pub use fc::{alpha_conjugation_check, fc_equivariance, fc_eval, FcImage, FcRelations};
pub use graded::{
    comultiplication, flip, generator, iterated_closed_form, s_generators, Generator, GradedRatFunc, MAX_SLOTS,
};
