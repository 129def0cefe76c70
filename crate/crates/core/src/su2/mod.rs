pub mod algebra;
pub mod ops;
pub mod probes;
pub mod vpq;
pub mod weights;

pub use algebra::{omega_algebra, xi_form, OmegaAlgebraReport, XiReport};
pub use ops::{apply, apply_pow, casimir, op_matrix, Su2Op};
pub use probes::{probe_weak_positivity, ProbeReport};
pub use vpq::{lambda_constant, v_matrix, v_pq};
pub use weights::{
    plus_dimension, project_plus, r_form, r_inverse_form, r_iso, weight_decompose, Subspace,
    WeightDecomposition,
};
