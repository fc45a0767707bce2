//! Smooth fans in rank 1 and 2, torus-invariant Q-divisors, fan maps and
//! star subdivision.
//!
//! Rays are the lattice generators `v`; the divisor of a ray is the one on
//! which a character `m` vanishes to order `<m, v>`. On the affine plane ray
//! `(1,0)` is `{x = 0}` and ray `(0,1)` is `{y = 0}`.

mod divisor;
mod fan;
mod map;

pub use divisor::{QDivisor, ScaledCeiling};
pub use fan::{det, dot, Fan, RayId, StandardFan, Vector};
pub use map::{apply, matmul, star_subdivision, FanMap, Matrix, ToricModulusPair, IDENTITY};
