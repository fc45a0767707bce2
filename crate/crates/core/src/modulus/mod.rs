//! Modulus sheaves on toric models, the `(m, m')` construction, and the
//! checks that compare both sides of the comparison statements.

mod construction;
mod sheaves;
mod suites;
mod valuation;
mod verify;

pub use construction::{
    check_admissible, construction_c, construction_m, smallest_admissible_n, valid_m_by_search, HirzebruchParams, D0, D_INF, E,
};
pub use sheaves::{momega_sheaf, mwitt_divisor, mwitt_lengths, mwitt_slot_sheaves};
pub use valuation::{
    form_generators, monomial_bound_inequality, monomial_filtration_check, witt_generators, ChartSection, MonomialValuation,
};
pub use verify::{
    blowup_pairs, psi_map, psi_pullback_identity, theta_map, theta_pullback_identity, verify_blowup_omega, verify_blowup_witt,
    verify_hirzebruch, verify_left_continuity, SheafKind, SideCohomology, VerificationReport, MAX_LEVEL,
};
pub use suites::{closed_form_h1, run_suite, sort_reports, Grid, Suite, SuiteRun, ORACLE_BOX, RNG_NAME};
