//! Exact-arithmetic toolkit for cohomology of Q-modulus pairs at desk scale.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`]: rationals, finite fields, `F_q(u)` and truncated Laurent series;
//! - [`toric`]: smooth rank-2 fans, Q-divisors, fan maps, star subdivision;
//! - [`cohomology`]: character-graded Čech cohomology of equivariant sheaves;
//! - [`witt`]: truncated Witt vectors and the Brylinski–Kato filtration;
//! - [`logforms`]: differential forms over `F_q(u)((t))` and the log filtration;
//! - [`modulus`]: modulus sheaves on toric models and the verification suites.

pub mod cohomology;
pub mod error;
pub mod logforms;
pub mod modulus;
pub mod scalar;
pub mod toric;
pub mod witt;

pub use error::{Error, Result};
pub use scalar::Rational;
