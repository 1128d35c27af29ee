//! Multiplicative sequences, Pontryagin numbers and the Â-genus.

mod charclass;
mod manifold;
mod multseq;

pub use charclass::{ahat_genus, cp_projective_data, genus_evaluate, product_data, CharClassData, Partition, MAX_DIM};
pub use manifold::{BordismElement, ManifoldSpec};
pub use multseq::{ahat_polynomial, ahat_series, l_series, MultSeq, MAX_DEGREE};
