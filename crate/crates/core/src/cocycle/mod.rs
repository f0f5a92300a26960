//! Step cocycles over irrational rotations, their ergodicity tests and the
//! correlation experiments built on their itineraries.

pub mod ergodicity;
pub mod experiments;
pub mod step;

pub use ergodicity::{
    density_pair_test, ergodicity_l1_test, four_jump_criterion, four_jump_trace, DensityStats, ErgodicityVerdict,
    EvidenceRow, VerdictStatus,
};
pub use experiments::{example2_experiment, example3_experiment, example3_integral, Example3Integral, SampleStats};
pub use step::StepCocycle;
