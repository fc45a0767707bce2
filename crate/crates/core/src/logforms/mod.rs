//! Differential forms over `L = F_q(u)((t))` in the basis `{du, dlog t}`,
//! the logarithmic filtration and tame Kummer traces.
//!
//! In this basis both `Fil_r` (threshold `1 - ceil(r)` on every slot) and
//! `Ω^q(O_L)` (threshold `0`, or `1` on slots carrying `dlog t`) are
//! valuation tests on the components.

mod filtration;
mod form;
mod trace;

use std::sync::Arc;

use rand::Rng;

pub use filtration::{in_log_lattice, is_integral, log_fil_member, log_fil_min_ceil, log_fil_report, omega_max_check};
pub use form::{euler, partial_u, LogForm, Series, MAX_DEGREE};
pub use trace::{form_include, form_kummer_trace};

use crate::scalar::{FiniteField, Fq, RatFunc};

/// A Laurent polynomial with up to `terms` terms, exponents in
/// `vmin..=vmax` and random coefficients in `F_q(u)`.
pub fn random_series<R: Rng + ?Sized>(
    field: &Arc<FiniteField>,
    vmin: i64,
    vmax: i64,
    terms: usize,
    rng: &mut R,
) -> Series {
    let zero = RatFunc::constant(Fq::zero(field));
    let picked: Vec<(i64, RatFunc)> =
        (0..terms).map(|_| (rng.gen_range(vmin..=vmax), RatFunc::random(field, 1, rng))).collect();
    Series::from_terms(&zero, picked, None)
}

/// A form of the given degree whose components are [`random_series`].
pub fn random_form<R: Rng + ?Sized>(field: &Arc<FiniteField>, degree: usize, vmin: i64, vmax: i64, rng: &mut R) -> LogForm {
    let n = if degree == 1 { 2 } else { 1 };
    let comps = (0..n).map(|_| random_series(field, vmin, vmax, 2, rng)).collect();
    LogForm::from_components(degree, comps).expect("degree is at most 2")
}

