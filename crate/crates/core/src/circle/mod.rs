//! Arithmetic on the circle `[0, 1)`.

pub mod cf;
pub mod number;
pub mod orbit;
pub mod real;
pub mod weyl;

pub use cf::{cf_expand, verify_convergent_bounds, BoundCheck, BoundsReport, CfExpansion};
pub use number::{CircleNumber, Mode, DEFAULT_PRECISION_BITS};
pub use real::{format_rational, parse_rational, QuadReal, Rational};
pub use weyl::{circ_norm, weyl_pair_average, QSequence};
