//! Complex Clifford algebras `CCl(p,q)` with their Real structure and
//! *-structure.

mod blade;
mod kasparov;
mod multivector;
mod parse;
mod signature;
mod tensor;

pub use blade::{blade_product, Blade};
pub use kasparov::{blocked_to_interleaved, from_kasparov, interleaved_to_blocked, to_kasparov};
pub(crate) use multivector::relabel_blade;
pub use multivector::{FloatMultivector, Multivector, Parity};
pub use parse::{multivector_to_json, parse_multivector, parse_multivector_json, MultivectorJson};
pub use signature::{Layout, Presentation, Signature, MAX_GENERATORS};
pub use tensor::{GradedTensor, SplitSpec};
