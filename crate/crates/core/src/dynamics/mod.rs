//! Arithmetic of finite dynamics: Chinese remainder splitting across
//! moduli and lifting along `p`-adic towers.

mod dcrt;
mod hensel;
mod tower;

pub use dcrt::{
    count_congruence_preserving_maps, crt, dcrt_assemble, dcrt_decompose, factorize,
    is_congruence_preserving, is_congruence_preserving_with_limit, theta_index,
    verify_product_phase_space, CpVerdict, CpWitness, Dcrt, ProductCheck, CP_SIZE_LIMIT,
};
pub use hensel::{hensel_lift_cycle, orbit_multiplier, HenselLiftResult};
pub use tower::{
    build_tower, build_tower_with_limit, check_tower_compatibility, detect_parabolic_growth,
    locally_constant_lift_check, reduction_preserves_cycles, rigidity_check, route2_cauchy_check,
    shifted_sequence, ParabolicGrowth, Rigidity, Route2Verdict, Tower, TowerCheck, TowerWitness,
};
