//! Orthogonal Vectors reductions as executable instance transformations,
//! and a harness that checks each one against the OV oracle.

mod embed;
mod gadget;
mod verify;

pub use embed::{
    embed_euclid, embed_frechet, euclid_point_a, euclid_point_b, frechet_curve_a,
    frechet_curve_b, reduce_ov_to_bcp, EuclidEmbedding, FrechetEmbedding,
};
pub use gadget::{
    or_gadget, point_s, point_s_star, point_t, point_t_star, validate_gadget_config,
    validated_default, vector_gadget, GadgetConfig, GadgetValidation, OrGadgetOutput, Side,
    ValidationOptions, VALIDATION_MAX_D, VALIDATION_MAX_N,
};
pub use verify::{
    run_sweep, sweep_instances, verify_reduction, KindSummary, ReductionKind, ReductionReport,
    SweepOptions, SweepSummary, VerifyCaps, VerifyContext,
};
