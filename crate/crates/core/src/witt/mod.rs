//! Truncated `p`-typical Witt vectors: universal polynomials, ring
//! operations, the Brylinski–Kato filtration over Laurent series fields,
//! tame Kummer traces and lengths of Witt divisorial sheaf cohomology.

mod filtration;
mod lengths;
mod poly;
mod trace;
mod universal;
mod vector;

pub use filtration::{bk_member, bk_min_ceil, bk_report, coordinate_valuations, FiltrationQuery, FiltrationReport};
pub use lengths::{witt_cohomology_lengths, WittLengths};
pub use poly::{IntPoly, Monomial};
pub use trace::{witt_include, witt_kummer_trace};
pub use universal::{ab_monomial, ghost_poly, Family, WittUniversalPolys, MAX_LENGTH};
pub use vector::WittVector;
