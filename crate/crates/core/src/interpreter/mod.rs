//! Ball systems, affine models and certified interpreters.

mod affine;
mod certificate;
mod dominance;
mod system;

pub use affine::{
    interpolate, interpolate_at_centers, synthesize_matching, synthesize_piecewise_affine,
    AffinePiece, Interpolation, PiecewiseAffine,
};
pub use certificate::{
    check_inclusion_by_commutation, check_inclusion_by_commutation_ok, conjugate_affine_isometry,
    conjugate_ball, cycle_multiplier, good_reduction_check, multiplier_report,
    robust_exactness_certificate, stratum_signature, BallReport, CertifiedReport, Commutation,
    CommutationWitness, GoodReduction, MultiplierEntry, NotStrictReason, RobustRoute,
    StabilityClass, VerdictSource,
};
pub use dominance::{
    check_linear_dominance, classify_ball, classify_ball_enumerated,
    dominance_perturbation_threshold, image_ball, Classification, DominanceVerdict,
    EnumeratedClassification, InterpretationKind, InterpretationType,
};
pub use system::{ball_system_from_graph, BallSystem};
