use serde::Serialize;

use crate::error::{Error, Result};
use crate::toric::{Fan, QDivisor, ToricModulusPair};
use crate::Rational;

/// `c = a + b - (a + b + 1) / (N + 1)`.
pub fn construction_c(a: &Rational, b: &Rational, n: i64) -> Rational {
    let s = a + b;
    &s - &(&(&s + &Rational::one()) / &Rational::from(n + 1))
}

/// Check the hypotheses of the `(m, m')` construction, naming the first
/// that fails.
pub fn check_admissible(a: &Rational, b: &Rational, n: i64) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::Precondition("a ≠ 0 required, got a = 0".into()));
    }
    if a.is_negative() || b.is_negative() {
        return Err(Error::Precondition(format!("a, b >= 0 required, got a = {a}, b = {b}")));
    }
    if n < 1 {
        return Err(Error::Precondition(format!("N must be a positive integer, got {n}")));
    }
    let c = construction_c(a, b, n);
    if !c.is_positive() {
        return Err(Error::Precondition(format!("c = a + b - (a+b+1)/(N+1) = {c} not positive")));
    }
    let slack = &(a * &Rational::from(n)) - &Rational::one();
    if !slack.is_positive() {
        return Err(Error::Precondition(format!("Na - 1 = {slack} not positive")));
    }
    Ok(c)
}

/// Integers `m, m' >= 0` with `m + m' = N`, `mc <= Na - 1`, `m'c <= Nb`,
/// taking the largest such `m`: `m = min(N, floor((Na - 1) / c))`. The
/// `m'` condition only gets easier as `m` grows, so this `m` is valid
/// whenever any is.
pub fn construction_m(a: &Rational, b: &Rational, n: i64) -> Result<(i64, i64)> {
    let c = check_admissible(a, b, n)?;
    let slack = &(a * &Rational::from(n)) - &Rational::one();
    let m = slack.checked_div(&c)?.floor_i64().min(n);
    let m_prime = n - m;
    if &Rational::from(m_prime) * &c > b * &Rational::from(n) {
        return Err(Error::Precondition(format!("m'c <= Nb fails for (m, m') = ({m}, {m_prime}), c = {c}")));
    }
    Ok((m, m_prime))
}

/// Every `m` in `0..=N` whose pair satisfies the three conditions.
pub fn valid_m_by_search(a: &Rational, b: &Rational, n: i64) -> Vec<i64> {
    let c = construction_c(a, b, n);
    let (na1, nb) = (&(a * &Rational::from(n)) - &Rational::one(), b * &Rational::from(n));
    (0..=n).filter(|&m| &Rational::from(m) * &c <= na1 && &Rational::from(n - m) * &c <= nb).collect()
}

/// Smallest admissible `N` for `(a, b)`, searched up to `limit`.
pub fn smallest_admissible_n(a: &Rational, b: &Rational, limit: i64) -> Result<i64> {
    (1..=limit)
        .find(|&n| check_admissible(a, b, n).is_ok())
        .ok_or_else(|| Error::Precondition(format!("no admissible N <= {limit} for a = {a}, b = {b}")))
}

/// The pair `(Δ_n, a D_0 + b D_∞ + c E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchParams {
    pub n: u32,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// Ray indices of `D_0`, `E`, `D_∞` in [`Fan::delta`].
pub const D0: usize = 0;
pub const E: usize = 1;
pub const D_INF: usize = 2;

impl HirzebruchParams {
    pub fn new(n: u32, a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let params = HirzebruchParams { n, a, b, c };
        if !params.divisor().is_effective() {
            return Err(Error::Precondition(format!(
                "a D_0 + b D_∞ + c E must be effective, got ({}, {}, {})",
                params.a, params.b, params.c
            )));
        }
        Ok(params)
    }

    pub fn divisor(&self) -> QDivisor {
        QDivisor::from_pairs([(D0, self.a.clone()), (D_INF, self.b.clone()), (E, self.c.clone())])
    }

    pub fn pair(&self) -> ToricModulusPair {
        ToricModulusPair::new(Fan::delta(self.n), self.divisor()).expect("effective by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(construction_c(&q("1"), &q("0"), 2), q("1/3"));
        assert_eq!(construction_m(&q("1"), &q("0"), 2).unwrap(), (2, 0));
        assert_eq!(construction_m(&q("2"), &q("0"), 1).unwrap(), (1, 0));
        assert_eq!(construction_m(&q("1/2"), &q("1/2"), 3).unwrap(), (1, 2));
        assert_eq!(valid_m_by_search(&q("1/2"), &q("1/2"), 3), vec![0, 1]);
    }

    #[test]
    fn failing_inequality_is_named() {
        let err = construction_m(&q("1"), &q("1"), 1).unwrap_err().to_string();
        assert!(err.contains("Na - 1 = 0 not positive"), "{err}");
        let err = construction_m(&q("0"), &q("1"), 3).unwrap_err().to_string();
        assert!(err.contains("a ≠ 0"), "{err}");
        let err = construction_m(&q("1/10"), &q("0"), 1).unwrap_err().to_string();
        assert!(err.contains("c = "), "{err}");
    }

    #[test]
    fn hirzebruch_divisor_uses_the_delta_ray_order() {
        let h = HirzebruchParams::new(1, q("1"), q("2"), q("3")).unwrap();
        let fan = Fan::delta(1);
        assert_eq!(fan.ray(D0), [1, 0]);
        assert_eq!(fan.ray(E), [0, 1]);
        assert_eq!(fan.ray(D_INF), [-1, 1]);
        assert_eq!(h.divisor().coeff(D_INF), q("2"));
        assert!(HirzebruchParams::new(1, q("-1"), q("0"), q("0")).is_err());
    }

    proptest! {
        #[test]
        fn largest_valid_m(an in 1i64..30, ad in 1i64..6, bn in 0i64..30, bd in 1i64..6, n in 1i64..40) {
            let (a, b) = (Rational::frac(an, ad), Rational::frac(bn, bd));
            prop_assume!(check_admissible(&a, &b, n).is_ok());
            let (m, m_prime) = construction_m(&a, &b, n).unwrap();
            let valid = valid_m_by_search(&a, &b, n);
            prop_assert_eq!(m + m_prime, n);
            prop_assert_eq!(valid.last().copied(), Some(m));
        }
    }
}
