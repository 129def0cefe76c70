pub mod isotypic;
pub mod lie;
pub mod signature;
pub mod spn;

pub use isotypic::{isotypic_decompose, IsotypicComponent, IsotypicDecomposition};
pub use lie::{
    a_algebra, cartan_weight_check, lefschetz_operators, lie_closure, LieAlgebraSpan, OperatorSet,
};
pub use signature::{
    hodge_riemann_scan, hodge_riemann_signature, primitive_weight1_pairing,
    primitive_weight1_report, Verdict,
};
pub use spn::{commutant_dimension, spn_action};
