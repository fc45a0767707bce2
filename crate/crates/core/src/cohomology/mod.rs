//! Character-graded Čech cohomology of torus-equivariant sheaves on fans
//! with at most two maximal cones.
//!
//! A character `m` contributes `χ^m · c` to the sections over a cone when
//! for every ray `ρ` of the cone `s = <m, v_ρ> + n_ρ >= 0`, and when `s = 0`
//! on a ray without a log pole the contraction of `c` with `v_ρ` vanishes.
//! Per-character data is constant on the cells of the line arrangement of
//! the forms `<m, v_ρ> + n_ρ`, so all totals reduce to a finite scan over a
//! derived box (see [`cells`]).

pub mod cells;
mod cech;
mod linalg;
mod sheaf;

pub use cech::{cech_h, h1_at, CohomologyReport, Dimension, SectionRegion};
pub use linalg::{rref, Subspace};
pub use sheaf::{contraction_rows, subsets, EquivariantSheaf, RayCondition, RayConstraint};
