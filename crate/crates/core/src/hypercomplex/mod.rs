pub mod standard;
pub mod structure;

pub use standard::{
    forms_from_metric, metric_field_from_omega, metric_from_omega, positivity_check, reality_check,
    standard_forms, standard_volume, Gram, Positivity, StandardForms,
};
pub use structure::{
    act_derivation, act_inverse, act_multiplicative, bidegree_split, build_structure,
    generator_images, StructureTriple, Unit,
};
