//! Brute-force point counts over small prime fields: Grassmannians, flags,
//! punctual Quot and nested Hilbert schemes, and Hilbert–Samuel strata.
//! Counts are exact or refused with `InfeasibleSize`; never partial.

mod ambient;
mod counts;
mod enumerate;
mod field;
pub(crate) mod linalg;

pub use ambient::{
    ambient_dimension, build_ambient, FiniteModulePresentation, MAX_AMBIENT_DIMENSION,
};
pub use counts::{
    count_flag_points, count_grassmannian_points, count_punctual_nested, count_punctual_quot,
    count_stratum, verify_global_congruence, verify_grassmannian_counts, verify_stratum_motives,
    FLAG_LIMIT, GRASSMANNIAN_LIMIT,
};
pub use enumerate::{
    enumerate_submodules, enumerate_submodules_exhaustive, hs_function_of, SubmoduleWitness,
    EXHAUSTIVE_LIMIT, NODE_LIMIT,
};
pub use field::PrimeField;
