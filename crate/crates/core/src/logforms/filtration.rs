use super::form::LogForm;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Valuation};
use crate::witt::{FiltrationQuery, FiltrationReport};

fn valuations(w: &LogForm) -> Result<Vec<Valuation>> {
    crate::witt::coordinate_valuations(w.components())
}

/// Least valuation each component needs for `w ∈ Ω^q(O_L)`. The `dlog t`
/// slot needs one more, since `dt = t dlog t`.
fn integral_bounds(degree: usize) -> &'static [i64] {
    match degree {
        0 => &[0],
        1 => &[0, 1],
        _ => &[1],
    }
}

/// `w ∈ Ω^q(O_L)`.
pub fn is_integral(w: &LogForm) -> Result<bool> {
    let vals = valuations(w)?;
    Ok(vals.iter().zip(integral_bounds(w.degree())).all(|(v, b)| v.at_least(*b)))
}

/// `w ∈ t^k Ω^q(O_L)(log)`: every component has valuation at least `k`.
pub fn in_log_lattice(w: &LogForm, k: i64) -> Result<bool> {
    Ok(valuations(w)?.iter().all(|v| v.at_least(k)))
}

/// `w ∈ Fil_r Ω^q_L`: integral for `r = 0`, otherwise in
/// `t^(1 - ceil(r)) Ω^q(O_L)(log)`.
pub fn log_fil_member(w: &LogForm, r: &Rational) -> Result<bool> {
    let q = FiltrationQuery::new(r.clone())?;
    if q.ceil() == 0 {
        return is_integral(w);
    }
    in_log_lattice(w, 1 - q.ceil())
}

/// Least `l >= 0` with `w ∈ Fil_r` whenever `ceil(r) = l`.
pub fn log_fil_min_ceil(w: &LogForm) -> Result<i64> {
    if is_integral(w)? {
        return Ok(0);
    }
    Ok(valuations(w)?.iter().filter_map(|v| v.finite()).map(|v| 1 - v).fold(1, i64::max))
}

pub fn log_fil_report(w: &LogForm) -> Result<FiltrationReport> {
    Ok(FiltrationReport { min_ceil: log_fil_min_ceil(w)? })
}

/// Both sides of `w ∈ t Ω^q(O_L)(log) ⟺ w∧dlog t ∈ Ω^(q+1)(O_L)` for an
/// integral form `w` of degree 0 or 1.
pub fn omega_max_check(w: &LogForm) -> Result<(bool, bool)> {
    if !is_integral(w)? {
        return Err(Error::Precondition(format!("{w} is not in Ω^{}(O_L)", w.degree())));
    }
    let lhs = in_log_lattice(w, 1)?;
    let rhs = is_integral(&w.wedge(&LogForm::dlog_t(w.ctx()))?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logforms::Series;
    use crate::scalar::{FiniteField, Fq, RatFunc, Ring};

    fn ctx() -> RatFunc {
        RatFunc::constant(Fq::zero(&FiniteField::prime(3).unwrap()))
    }

    fn t(k: i64) -> Series {
        Series::monomial(ctx().one_like(), k)
    }

    fn u() -> Series {
        Series::constant(RatFunc::u(ctx().field()))
    }

    #[test]
    fn min_ceil_of_polar_du() {
        let w = LogForm::du(&ctx()).scale(&t(-2));
        assert_eq!(log_fil_min_ceil(&w).unwrap(), 3);
        assert!(!log_fil_member(&w, &Rational::from(2)).unwrap());
        assert!(log_fil_member(&w, &Rational::frac(5, 2)).unwrap());
        assert_eq!(serde_json::to_string(&log_fil_report(&w).unwrap()).unwrap(), r#"{"min_ceil":3}"#);
    }

    #[test]
    fn dlog_t_is_in_every_positive_level_only() {
        let w = LogForm::dlog_t(&ctx());
        assert!(!log_fil_member(&w, &Rational::zero()).unwrap());
        for r in [Rational::frac(1, 7), Rational::one(), Rational::from(9)] {
            assert!(log_fil_member(&w, &r).unwrap());
        }
        assert_eq!(log_fil_min_ceil(&w).unwrap(), 1);
    }

    #[test]
    fn integral_forms_are_in_fil_zero() {
        let forms = [
            LogForm::scalar(u().add(&t(3))),
            LogForm::one_form(u(), t(1)),
            LogForm::two_form(t(1).mul(&u())),
        ];
        for w in forms {
            assert!(log_fil_member(&w, &Rational::zero()).unwrap());
            assert_eq!(log_fil_min_ceil(&w).unwrap(), 0);
        }
    }

    #[test]
    fn omega_max_examples() {
        let z = ctx();
        assert_eq!(omega_max_check(&LogForm::du(&z).scale(&t(1))).unwrap(), (true, true));
        assert_eq!(omega_max_check(&LogForm::du(&z)).unwrap(), (false, false));
        // u dt = u t dlog t, whose wedge with dlog t vanishes
        let w = LogForm::dlog_t(&z).scale(&t(1).mul(&u()));
        assert!(w.wedge(&LogForm::dlog_t(&z)).unwrap().is_zero());
        assert_eq!(omega_max_check(&w).unwrap(), (true, true));
        assert!(matches!(omega_max_check(&LogForm::dlog_t(&z)), Err(Error::Precondition(_))));
    }
}
