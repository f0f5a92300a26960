//! Symbols, blocks, sequence generators, sliding codes and correlations.

pub mod alphabet;
pub mod block;
pub mod codes;
pub mod corr;
pub mod generators;
pub mod io;

pub use alphabet::{Alphabet, Symbol};
pub use block::{pair_codes, Block, SymbolSpace};
pub use codes::{code_pi, code_pi_prime};
pub use corr::{block_corr, corr_curve, dbar_estimate, ExactComplex};
pub use generators::{gen_cocycle_itinerary, gen_mobius, gen_rotation_itinerary, Generator, SymbolicSequence};
