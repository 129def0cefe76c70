pub mod metric;
pub mod ops;
pub mod potential;

pub use metric::{
    balanced_identity_check, lefschetz_omega_iso, torsion_and_hkt_checks, torsion_square_residual,
    HermitianMetricField, PointMetric, TorsionReport,
};
pub use ops::{
    del, del_j, del_j_via_twisted, delbar, delbar_j, exterior_d, hodge_components, twisted_d,
    twisted_d_plain,
};
pub use potential::{
    banos_swann_check, banos_swann_kappa, box_mu, box_operator, fourth_order_constant,
    monge_ampere, quaternionic_hessian,
};
