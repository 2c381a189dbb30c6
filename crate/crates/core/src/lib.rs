//! Conditional (Artin conjecture + GRH) lower bounds on root conductors of
//! Artin L-functions of a fixed Galois type, and transfer of completeness
//! results from Galois number-field lists to initial segments of Artin
//! L-functions ordered by conductor.
//!
//! The crate is organized around a rational character table (`char_table`),
//! explicit-formula kernels and the optimized bound `M(n, r, u)` (`kernel`),
//! tame conductor exponents and the exponent bracket (`tame`), auxiliary
//! character search over the polytope of normalized nonnegative characters
//! (`polytope`, `bound_search`), conductor arithmetic on factored resolvent
//! discriminants (`factored`, `transfer`), and asymptotic floors
//! (`asymptotics`).
//!
//! All character-table arithmetic is exact (arbitrary-precision rationals);
//! floating point appears only in the analytic kernel and in display
//! rounding.  With the default `parallel` feature the hot loops (vertex
//! enumeration, candidate evaluation, per-record conductor computation) run
//! on rayon; without it every code path falls back to the sequential
//! equivalents.

pub mod asymptotics;
pub mod bound_search;
pub mod bundled;
pub mod char_table;
pub mod display;
pub mod factored;
pub mod kernel;
pub mod linalg;
pub mod polytope;
pub mod quad;
pub mod tame;
pub mod transfer;

/// Exact rational scalar used throughout the table-arithmetic modules.
pub type Rat = num_rational::BigRational;

pub use bound_search::{search_bound, AuxCandidate, AuxMethod, BoundReport, ExponentMode};
pub use char_table::{CharacterTable, ClassFunction, ConjClass, GaloisTypeQuery};
pub use kernel::{big_m, kernels, KernelValue, MResult};
pub use tame::ExponentBracket;
pub use transfer::{FieldRecord, PermBasisSolution, Segment, SegmentEntry};
