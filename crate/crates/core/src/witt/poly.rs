//! Sparse integer polynomials in at most eight variables, used for the
//! universal Witt addition and multiplication polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector packed one byte per variable.
pub type Monomial = u64;

pub const MAX_VARS: usize = 8;

pub fn exponent(m: Monomial, var: usize) -> u32 {
    ((m >> (8 * var)) & 0xff) as u32
}

pub fn var_monomial(var: usize, e: u32) -> Monomial {
    debug_assert!(var < MAX_VARS && e < 256);
    u64::from(e) << (8 * var)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    terms: HashMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), 0)
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: usize) -> Self {
        Self::term(BigInt::one(), var_monomial(v, 1))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma + mb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntPoly { terms: acc }
    }

    /// Power by repeated multiplication with `self`. For sparse polynomials
    /// with many terms this beats squaring, whose intermediate products of
    /// two large factors dominate.
    pub fn pow_sequential(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::constant(1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::constant(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Divide every coefficient by `d`; `None` if some division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.terms.insert(*m, q);
        }
        Some(out)
    }

    /// Substitute `var -> var^k` for every variable (all exponents times `k`).
    pub fn inflate(&self, k: u32) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let mut nm = 0;
            for v in 0..MAX_VARS {
                nm |= var_monomial(v, exponent(*m, v) * k);
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Coefficients reduced into `[0, p)`, zero terms dropped.
    pub fn reduce_mod(&self, p: u64) -> Vec<(Monomial, u64)> {
        let modulus = BigInt::from(p);
        let mut out: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let r = c.mod_floor(&modulus);
                (!r.is_zero()).then(|| (*m, r.iter_u64_digits().next().unwrap_or(0)))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Terms sorted by monomial, for deterministic iteration.
    pub fn sorted_terms(&self) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_unstable_by_key(|(m, _)| *m);
        v
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = IntPoly::var(0);
        let y = IntPoly::var(1);
        let s = x.add(&y);
        let cube = s.pow(3);
        assert_eq!(cube.num_terms(), 4);
        assert_eq!(cube.coeff(var_monomial(0, 2) + var_monomial(1, 1)), BigInt::from(3));
        let d = cube.sub(&x.pow(3)).sub(&y.pow(3)).exact_div(&BigInt::from(3)).unwrap();
        assert_eq!(d, x.pow(2).mul(&y).add(&x.mul(&y.pow(2))));
        assert!(cube.exact_div(&BigInt::from(3)).is_none());
        assert_eq!(s.inflate(2), x.pow(2).add(&y.pow(2)));
        assert_eq!(cube.reduce_mod(3).len(), 2);
    }
}
