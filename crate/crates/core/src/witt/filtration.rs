use serde::Serialize;

use super::vector::WittVector;
use crate::error::{Error, Result};
use crate::scalar::{Laurent, Rational, Ring, Valuation};

/// A filtration level `r >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiltrationQuery {
    level: Rational,
}

impl FiltrationQuery {
    pub fn new(level: Rational) -> Result<Self> {
        if level.is_negative() {
            return Err(Error::Precondition(format!("filtration level {level} must be >= 0")));
        }
        Ok(FiltrationQuery { level })
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn ceil(&self) -> i64 {
        self.level.ceil_i64()
    }
}

/// Serialized as `{"min_ceil": l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub min_ceil: i64,
}

/// Valuation of every coordinate; a coordinate that vanishes only within
/// its precision is an error.
pub fn coordinate_valuations<F: Ring>(coords: &[Laurent<F>]) -> Result<Vec<Valuation>> {
    coords
        .iter()
        .map(|c| {
            c.determinate_valuation().map_err(|_| {
                Error::InsufficientPrecision("a coordinate vanishes within its precision; valuation unknown".into())
            })
        })
        .collect()
}

/// Brylinski–Kato membership `a ∈ Fil_r W_n(L)`: for `r = 0` every `a_i` is
/// integral, otherwise `p^(n-1) v(a_i) + p^i (ceil(r) - 1) >= 0` for all `i`.
pub fn bk_member<F: Ring>(a: &WittVector<Laurent<F>>, r: &Rational) -> Result<bool> {
    let q = FiltrationQuery::new(r.clone())?;
    let vals = coordinate_valuations(a.coords())?;
    if q.ceil() == 0 {
        return Ok(vals.iter().all(|v| v.at_least(0)));
    }
    let (p, n) = (a.p() as i64, a.len() as u32);
    Ok(vals.iter().enumerate().all(|(i, v)| match v {
        Valuation::Infinite => true,
        Valuation::Finite(v) => p.pow(n - 1) * v + p.pow(i as u32) * (q.ceil() - 1) >= 0,
    }))
}

/// Least `l >= 0` with `a ∈ Fil_r` whenever `ceil(r) = l`; `0` iff `a` is integral.
pub fn bk_min_ceil<F: Ring>(a: &WittVector<Laurent<F>>) -> Result<i64> {
    let vals = coordinate_valuations(a.coords())?;
    if vals.iter().all(|v| v.at_least(0)) {
        return Ok(0);
    }
    let (p, n) = (a.p() as i64, a.len() as u32);
    // p^i divides p^(n-1) v_i, so the threshold is exact
    Ok(vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|v| 1 - p.pow(n - 1 - i as u32) * v))
        .fold(1, i64::max))
}

pub fn bk_report<F: Ring>(a: &WittVector<Laurent<F>>) -> Result<FiltrationReport> {
    Ok(FiltrationReport { min_ceil: bk_min_ceil(a)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Fq};

    fn f2() -> Fq {
        Fq::zero(&FiniteField::prime(2).unwrap())
    }

    fn witt(p: u64, vals: &[Option<i64>], ctx: &Fq) -> WittVector<Laurent<Fq>> {
        let coords = vals
            .iter()
            .map(|v| match v {
                Some(k) => Laurent::monomial(ctx.one_like(), *k),
                None => Laurent::zero(ctx),
            })
            .collect();
        WittVector::new(p, coords).unwrap()
    }

    #[test]
    fn min_ceil_example() {
        let a = witt(2, &[Some(-1), Some(-3)], &f2());
        assert_eq!(bk_min_ceil(&a).unwrap(), 4);
        assert!(!bk_member(&a, &Rational::from(3)).unwrap());
        assert!(bk_member(&a, &Rational::frac(7, 2)).unwrap());
        assert!(bk_member(&a, &Rational::from(4)).unwrap());
        assert_eq!(serde_json::to_string(&bk_report(&a).unwrap()).unwrap(), r#"{"min_ceil":4}"#);
    }

    #[test]
    fn integral_vectors_sit_in_fil_zero_and_fil_one() {
        let a = witt(2, &[Some(0), Some(2)], &f2());
        assert_eq!(bk_min_ceil(&a).unwrap(), 0);
        assert!(bk_member(&a, &Rational::zero()).unwrap());
        assert!(bk_member(&a, &Rational::one()).unwrap());
        // Fil_1 = Fil_0: a non-integral vector is in neither
        let b = witt(2, &[None, Some(-1)], &f2());
        assert!(!bk_member(&b, &Rational::zero()).unwrap());
        assert!(!bk_member(&b, &Rational::one()).unwrap());
        assert_eq!(bk_min_ceil(&b).unwrap(), 2);
    }

    #[test]
    fn zero_is_in_every_level() {
        let z = witt(3, &[None, None, None], &Fq::zero(&FiniteField::prime(3).unwrap()));
        for r in [Rational::zero(), Rational::frac(1, 3), Rational::from(5)] {
            assert!(bk_member(&z, &r).unwrap());
        }
    }

    #[test]
    fn undetermined_coordinate_is_an_error() {
        let ctx = f2();
        let vague = Laurent::from_terms(&ctx, [], Some(5));
        let a = WittVector::new(2, vec![Laurent::monomial(ctx.one_like(), -1), vague]).unwrap();
        assert!(matches!(bk_min_ceil(&a), Err(Error::InsufficientPrecision(_))));
        assert!(bk_member(&a, &Rational::from(2)).is_err());
        assert!(bk_member(&a, &Rational::from(-1)).is_err());
    }
}
