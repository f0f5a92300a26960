//! Empirical measures of blocks, the `d^(m)` distance and genericity.

pub mod lemmas;
pub mod measure;
pub mod scan;

pub use lemmas::{check_concat_lemma, check_suffix_lemma, check_trim_lemma, LemmaVerdict};
pub use measure::{
    dm_distance, dm_distance_at, empirical_measure, empirical_measure_pair, is_generic, CylinderWeights,
    EmpiricalMeasure, Genericity,
};
pub use scan::{semigeneration_scan, ScanResult};
