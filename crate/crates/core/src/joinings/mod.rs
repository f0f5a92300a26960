//! Block measures, canonical joinings, the correlation of a joining and a
//! coupling bound for the supremum over joinings.

pub mod block_measure;
pub mod coupling;
pub mod format;
pub mod joining;
pub mod transport;

pub use block_measure::{BlockMeasure, Level, DEFAULT_MAX_ORDER};
pub use coupling::{
    correlation_interval, coupling_upper_bound, CorrelationInterval, CouplingBound, OrderOneLaw, DEFAULT_THETA_GRID,
};
pub use format::{FrequencyTable, LoadedMeasure, MeasureDoc};
pub use joining::{diagonal_joining, joining_corr, mixture_joining, product_joining, symbol_variance, JoiningMeasure};
pub use transport::{solve_max, TransportSolution};
