//! Correlation of symbolic sequences, joinings of shift-invariant measures,
//! lifting of generic points and ergodicity of step cocycles over rotations.

pub mod circle;
pub mod cocycle;
pub mod empirical;
pub mod error;
pub mod joinings;
pub mod lifting;
pub mod symbolic;

pub use error::{Error, Result};

/// Names of the public operations, grouped by module. The command-line
/// frontend maps each of them to one subcommand.
pub const OPERATIONS: &[&str] = &[
    "circ_norm",
    "cf_expand",
    "verify_convergent_bounds",
    "weyl_pair_average",
    "block_corr",
    "corr_curve",
    "dbar_estimate",
    "gen_rotation_itinerary",
    "gen_cocycle_itinerary",
    "gen_mobius",
    "code_pi",
    "code_pi_prime",
    "empirical_measure",
    "dm_distance",
    "is_generic",
    "check_suffix_lemma",
    "check_trim_concat_lemma",
    "semigeneration_scan",
    "product_joining",
    "diagonal_joining",
    "mixture_joining",
    "joining_corr",
    "coupling_upper_bound",
    "build_schedule",
    "lift",
    "lift_semigeneric",
    "two_jump",
    "four_jump",
    "n_step",
    "l1_distance_to_one",
    "ergodicity_l1_test",
    "four_jump_criterion",
    "density_pair_test",
    "example3_integral",
    "example2_experiment",
    "example3_experiment",
];
