//! Exact scalars: rationals, finite fields `F_q` (`q = p^k`, `k <= 4`), the
//! function field `F_q(u)` and truncated Laurent series over any of them.

mod finite_field;
mod kummer;
mod laurent;
mod poly;
mod ratfunc;
mod rational;
mod ring;

pub use finite_field::{elements, is_irreducible, is_prime, root_of_unity, FiniteField, Fq, MAX_EXTENSION_DEGREE};
pub use kummer::KummerExtension;
pub use laurent::{Laurent, Valuation, DEFAULT_PRECISION};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{ceil_q, Rational};
pub use ring::{Field, Ring};
