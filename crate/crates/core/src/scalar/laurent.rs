//! Truncated Laurent series `F((t))` with explicit precision tracking.
//!
//! A series is a finite set of known nonzero terms plus an optional absolute
//! precision `P`: every coefficient of `t^k` with `k < P` is known (absent
//! means zero) and nothing is known at or above `P`. A series without a
//! precision bound is an exact Laurent polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Number of coefficient slots produced when an exact input has to be
/// expanded into an infinite series (inversion).
pub const DEFAULT_PRECISION: i64 = 64;

/// A discrete valuation value; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= bound`, with `Infinite` above every integer.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Laurent<F: Ring> {
    zero: F,
    terms: BTreeMap<i64, F>,
    prec: Option<i64>,
}

impl<F: Ring> Laurent<F> {
    pub fn from_terms(ctx: &F, terms: impl IntoIterator<Item = (i64, F)>, prec: Option<i64>) -> Self {
        let mut map: BTreeMap<i64, F> = BTreeMap::new();
        for (k, c) in terms {
            if prec.is_some_and(|p| k >= p) {
                continue;
            }
            let e = map.entry(k).or_insert_with(|| ctx.zero_like());
            *e = e.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        Laurent { zero: ctx.zero_like(), terms: map, prec }
    }

    pub fn zero(ctx: &F) -> Self {
        Laurent { zero: ctx.zero_like(), terms: BTreeMap::new(), prec: None }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: F, k: i64) -> Self {
        let ctx = c.zero_like();
        Self::from_terms(&ctx, [(k, c)], None)
    }

    /// The uniformizer `t`.
    pub fn t(ctx: &F) -> Self {
        Self::monomial(ctx.one_like(), 1)
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Absolute precision: coefficients of `t^k` are known for `k` below it.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// Number of known coefficient slots above the valuation.
    pub fn relative_precision(&self) -> Option<i64> {
        let p = self.prec?;
        Some(match self.terms.keys().next() {
            Some(&v) => p - v,
            None => 0,
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Valuation of the known part; a series that vanishes within its
    /// precision reports `Infinite`.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    /// Valuation that must be certain: a series that vanishes only within
    /// its precision is an error rather than `Infinite`.
    pub fn determinate_valuation(&self) -> Result<Valuation> {
        if self.terms.is_empty() && self.prec.is_some() {
            return Err(Error::IndeterminateValuation);
        }
        Ok(self.valuation())
    }

    pub fn leading(&self) -> Option<(i64, &F)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Result<F> {
        if self.prec.is_some_and(|p| k >= p) {
            return Err(Error::InsufficientPrecision(format!("coefficient of t^{k} is not known")));
        }
        Ok(self.terms.get(&k).cloned().unwrap_or_else(|| self.zero.clone()))
    }

    /// Lower bound on the true valuation: exact for nonzero series, the
    /// precision for a series that vanishes within its precision.
    fn valuation_lower_bound(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.prec)
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// Forget everything at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let p = match self.prec {
            Some(q) => q.min(prec),
            None => prec,
        };
        Self::from_terms(&self.zero, self.terms.iter().map(|(k, c)| (*k, c.clone())), Some(p))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            zero: self.zero.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(&self.zero, self.terms.iter().map(|(k, c)| (*k, c.mul(s))), self.prec)
    }

    /// Apply `f(k, c_k)` to every known coefficient; `f` must send zero to zero
    /// (as additive maps and coefficient derivations do).
    pub fn map_terms(&self, f: impl Fn(i64, &F) -> F) -> Self {
        Self::from_terms(&self.zero, self.terms.iter().map(|(k, c)| (*k, f(*k, c))), self.prec)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            &self.zero,
            self.terms.iter().map(|(k, c)| (k - 1, c.scale_int(*k))),
            self.prec.map(|p| p - 1),
        )
    }

    /// Keep only the terms whose exponent satisfies `pred`; precision is kept.
    pub fn filter_exponents(&self, pred: impl Fn(i64) -> bool) -> Self {
        Laurent {
            zero: self.zero.clone(),
            terms: self.terms.iter().filter(|(k, _)| pred(**k)).map(|(k, c)| (*k, c.clone())).collect(),
            prec: self.prec,
        }
    }

    /// Divide every exponent by `e`; all exponents must be multiples of `e`.
    /// Precision becomes `ceil(P / e)`.
    pub fn compress_exponents(&self, e: i64) -> Result<Self> {
        if let Some((k, _)) = self.terms.iter().find(|(k, _)| *k % e != 0) {
            return Err(Error::Mismatch(format!("exponent {k} not divisible by {e}")));
        }
        Ok(Laurent {
            zero: self.zero.clone(),
            terms: self.terms.iter().map(|(k, c)| (k / e, c.clone())).collect(),
            prec: self.prec.map(|p| p.div_euclid(e) + i64::from(p.rem_euclid(e) != 0)),
        })
    }
}

impl<F: Field> Laurent<F> {
    /// Multiplicative inverse. An exact monomial inverts exactly; anything
    /// else yields a series carrying the input's relative precision, or
    /// [`DEFAULT_PRECISION`] slots for exact input.
    pub fn inverse(&self) -> Result<Self> {
        let (v, lead) = self
            .leading()
            .ok_or_else(|| Error::InsufficientPrecision("leading term of divisor not determined".into()))?;
        let lead_inv = lead.inv().ok_or(Error::DivisionByZero)?;
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Self::monomial(lead_inv, -v));
        }
        let rel = self.relative_precision().unwrap_or(DEFAULT_PRECISION);
        // normalized unit 1 + g with g_j = c_{v+j}/c_v
        let g: Vec<(i64, F)> =
            self.terms.iter().skip(1).map(|(k, c)| (k - v, c.mul(&lead_inv))).filter(|(j, _)| *j < rel).collect();
        let mut h: Vec<F> = Vec::with_capacity(rel as usize);
        h.push(self.zero.one_like());
        for k in 1..rel {
            let mut acc = self.zero.clone();
            for (j, gj) in &g {
                if *j > k {
                    break;
                }
                acc = acc.sub(&gj.mul(&h[(k - j) as usize]));
            }
            h.push(acc);
        }
        Ok(Self::from_terms(
            &self.zero,
            h.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c.mul(&lead_inv))),
            Some(rel - v),
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Substitute `t -> c * t^e` with `e >= 1`; for `c = 1` this is the
    /// inclusion of a totally ramified degree-`e` extension.
    pub fn substitute(&self, c: &F, e: i64) -> Result<Self> {
        if e < 1 {
            return Err(Error::Precondition(format!("substitution exponent {e} must be >= 1")));
        }
        let c_inv = c.inv().ok_or(Error::DivisionByZero)?;
        let power = |k: i64| if k >= 0 { c.pow(k as u64) } else { c_inv.pow(k.unsigned_abs()) };
        Ok(Self::from_terms(
            &self.zero,
            self.terms.iter().map(|(k, a)| (k * e, a.mul(&power(*k)))),
            self.prec.map(|p| p * e),
        ))
    }
}

impl<F: Ring> Ring for Laurent<F> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }

    /// Zero as far as known.
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let prec = match (self.prec, rhs.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let terms = self.terms.iter().chain(rhs.terms.iter()).map(|(k, c)| (*k, c.clone()));
        Self::from_terms(&self.zero, terms, prec)
    }

    fn neg(&self) -> Self {
        Laurent {
            zero: self.zero.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            prec: self.prec,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Self::zero(&self.zero);
        }
        let from_self = self.prec.zip(rhs.valuation_lower_bound()).map(|(p, v)| p + v);
        let from_rhs = rhs.prec.zip(self.valuation_lower_bound()).map(|(p, v)| p + v);
        let prec = match (from_self, from_rhs) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out: BTreeMap<i64, F> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                let k = i + j;
                if prec.is_some_and(|p| k >= p) {
                    continue;
                }
                let e = out.entry(k).or_insert_with(|| self.zero.clone());
                *e = e.add(&a.mul(b));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Laurent { zero: self.zero.clone(), terms: out, prec }
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::constant(self.zero.from_int_like(n))
    }

    fn characteristic(&self) -> u64 {
        self.zero.characteristic()
    }
}

impl<F: Ring + fmt::Display> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in &self.terms {
            let cs = c.to_string();
            let cs = if cs.contains(['+', '/', ' ']) { format!("({cs})") } else { cs };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            parts.push(match (c.is_one(), mono.is_empty()) {
                (_, true) => cs,
                (true, false) => mono,
                (false, false) => format!("{cs}*{mono}"),
            });
        }
        if let Some(p) = self.prec {
            parts.push(format!("O(t^{p})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<F: Ring> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Laurent").field("terms", &self.terms).field("prec", &self.prec).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Fq, RatFunc};

    fn f7() -> Fq {
        Fq::zero(&FiniteField::prime(7).unwrap())
    }

    fn series(terms: &[(i64, i64)]) -> Laurent<Fq> {
        let z = f7();
        Laurent::from_terms(&z, terms.iter().map(|&(k, c)| (k, Fq::from_i64(z.field(), c))), None)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(series(&[(-3, 1), (1, 1)]).valuation(), Valuation::Finite(-3));
        assert_eq!(Laurent::zero(&f7()).valuation(), Valuation::Infinite);
        assert_eq!(Laurent::zero(&f7()).determinate_valuation(), Ok(Valuation::Infinite));
        let unknown = Laurent::zero(&f7()).truncate(5);
        assert_eq!(unknown.valuation(), Valuation::Infinite);
        assert_eq!(unknown.determinate_valuation(), Err(Error::IndeterminateValuation));

        let field = FiniteField::prime(5).unwrap();
        let u = RatFunc::u(&field);
        let unit = u.mul(&u.add(&u.one_like()).inv().unwrap());
        assert_eq!(Laurent::monomial(unit, 2).valuation(), Valuation::Finite(2));
    }

    #[test]
    fn arithmetic_examples() {
        let one_plus_t = series(&[(0, 1), (1, 1)]);
        let one_minus_t = series(&[(0, 1), (1, -1)]);
        assert_eq!(one_plus_t.mul(&one_minus_t), series(&[(0, 1), (2, -1)]));

        let inv = one_minus_t.inverse().unwrap();
        assert_eq!(inv.precision(), Some(DEFAULT_PRECISION));
        assert!((0..DEFAULT_PRECISION).all(|k| inv.coeff(k).unwrap().is_one()));
        assert!(inv.coeff(DEFAULT_PRECISION).is_err());

        let sub = series(&[(1, 1), (3, 1)]).substitute(&f7().one_like(), 2).unwrap();
        assert_eq!(sub, series(&[(2, 1), (6, 1)]));
        assert!(series(&[(1, 1)]).substitute(&f7().one_like(), 0).is_err());
    }

    #[test]
    fn precision_propagates_through_products() {
        let a = series(&[(-2, 1), (0, 3)]).truncate(4); // rel prec 6
        let b = series(&[(1, 2)]).truncate(3); // rel prec 2
        let c = a.mul(&b);
        assert_eq!(c.valuation(), Valuation::Finite(-1));
        assert_eq!(c.precision(), Some(1)); // min(4 + 1, 3 - 2)
        let inv = a.inverse().unwrap();
        assert_eq!(inv.relative_precision(), Some(6));
        assert!(a.mul(&inv).sub(&a.one_like()).terms().next().is_none());
        assert!(Laurent::zero(&f7()).truncate(3).inverse().is_err());
    }

    #[test]
    fn display_is_sparse_and_ordered() {
        assert_eq!(series(&[(1, 1), (-3, 1)]).to_string(), "t^-3 + t");
        assert_eq!(series(&[(0, 2), (2, 5)]).truncate(4).to_string(), "2 + 5*t^2 + O(t^4)");
    }
}
