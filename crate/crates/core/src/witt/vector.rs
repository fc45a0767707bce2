use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use super::poly::{exponent, MAX_VARS};
use super::universal::{Family, WittUniversalPolys};
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// A length-`n` `p`-typical Witt vector with coordinates in `R`.
#[derive(Clone, PartialEq)]
pub struct WittVector<R: Ring> {
    p: u64,
    coords: Vec<R>,
}

/// Evaluate integer polynomials at ring elements, caching powers.
struct Evaluator<'a, R: Ring> {
    vars: &'a [R],
    powers: Vec<Vec<R>>,
}

impl<'a, R: Ring> Evaluator<'a, R> {
    fn new(vars: &'a [R]) -> Self {
        let powers = vars.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        Evaluator { vars, powers }
    }

    fn power(&mut self, var: usize, e: u32) -> &R {
        let table = &mut self.powers[var];
        while table.len() <= e as usize {
            let next = table.last().unwrap().mul(&self.vars[var]);
            table.push(next);
        }
        &table[e as usize]
    }

    /// `sum coeff * monomial`, with each coefficient already in the ring.
    fn eval(&mut self, terms: impl Iterator<Item = (u64, R)>) -> R {
        let mut acc = self.vars[0].zero_like();
        'terms: for (m, c) in terms {
            let mut value = c;
            for v in 0..self.vars.len().min(MAX_VARS) {
                let e = exponent(m, v);
                if e == 0 {
                    continue;
                }
                let pw = self.power(v, e);
                if pw.is_zero() {
                    continue 'terms;
                }
                value = value.mul(pw);
            }
            acc = acc.add(&value);
        }
        acc
    }
}

impl<R: Ring> WittVector<R> {
    pub fn new(p: u64, coords: Vec<R>) -> Result<Self> {
        WittUniversalPolys::get(p, coords.len())?;
        Ok(WittVector { p, coords })
    }

    pub fn zero(p: u64, n: usize, ctx: &R) -> Result<Self> {
        Self::new(p, vec![ctx.zero_like(); n])
    }

    pub fn one(p: u64, n: usize, ctx: &R) -> Result<Self> {
        Self::teichmuller(p, n, &ctx.one_like())
    }

    /// `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(p: u64, n: usize, a: &R) -> Result<Self> {
        let mut coords = vec![a.zero_like(); n];
        if let Some(first) = coords.first_mut() {
            *first = a.clone();
        }
        Self::new(p, coords)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    fn ctx(&self) -> &R {
        &self.coords[0]
    }

    fn tables(&self) -> Arc<WittUniversalPolys> {
        WittUniversalPolys::get(self.p, self.len()).expect("validated on construction")
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.p != rhs.p || self.len() != rhs.len() {
            return Err(Error::Mismatch(format!(
                "W_{}(p = {}) against W_{}(p = {})",
                self.len(),
                self.p,
                rhs.len(),
                rhs.p
            )));
        }
        Ok(())
    }

    /// Evaluate a family of universal polynomials at the given variables.
    /// Over a ring of characteristic `p` the coefficients are reduced first,
    /// which discards most terms.
    fn evaluate(&self, family: Family, vars: &[R]) -> Result<Vec<R>> {
        let ctx = self.ctx();
        let tables = self.tables();
        let mut ev = Evaluator::new(vars);
        if ctx.characteristic() == self.p {
            let consts: Vec<R> = (0..self.p).map(|c| ctx.from_int_like(&BigInt::from(c))).collect();
            Ok(tables
                .reduced_terms(family)?
                .iter()
                .map(|terms| ev.eval(terms.iter().map(|&(m, c)| (m, consts[c as usize].clone()))))
                .collect())
        } else {
            Ok(tables
                .integer_terms(family)?
                .iter()
                .map(|terms| ev.eval(terms.iter().map(|(m, c)| (*m, ctx.from_int_like(c)))))
                .collect())
        }
    }

    fn binary(&self, rhs: &Self, family: Family) -> Result<Self> {
        self.check_compatible(rhs)?;
        let vars: Vec<R> = self.coords.iter().chain(&rhs.coords).cloned().collect();
        Ok(WittVector { p: self.p, coords: self.evaluate(family, &vars)? })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.binary(rhs, Family::Sum)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.binary(rhs, Family::Product)
    }

    pub fn neg(&self) -> Self {
        // for odd p the negation polynomials are -X_i
        if self.p != 2 {
            return WittVector { p: self.p, coords: self.coords.iter().map(Ring::neg).collect() };
        }
        let coords = self.evaluate(Family::Negation, &self.coords).expect("negation tables are built eagerly");
        WittVector { p: self.p, coords }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// `k * self` by double-and-add.
    pub fn scale_int(&self, k: i64) -> Self {
        let mut acc = WittVector { p: self.p, coords: vec![self.ctx().zero_like(); self.len()] };
        let mut base = if k < 0 { self.neg() } else { self.clone() };
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("same shape");
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base).expect("same shape");
            }
        }
        acc
    }

    /// Shift coordinates right, dropping the last: `(0, a_0, ..., a_{n-2})`.
    pub fn verschiebung(&self) -> Self {
        let mut coords = vec![self.ctx().zero_like()];
        coords.extend(self.coords[..self.len() - 1].iter().cloned());
        WittVector { p: self.p, coords }
    }

    /// Drop the last coordinate.
    pub fn truncate(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::Mismatch("cannot truncate a length-1 Witt vector".into()));
        }
        Ok(WittVector { p: self.p, coords: self.coords[..self.len() - 1].to_vec() })
    }

    /// Coordinate-wise `p`-th power; only meaningful in characteristic `p`.
    pub fn frobenius(&self) -> Result<Self> {
        if self.ctx().characteristic() != self.p {
            return Err(Error::Mismatch(format!(
                "coordinate-wise Frobenius needs characteristic {}, coefficients have characteristic {}",
                self.p,
                self.ctx().characteristic()
            )));
        }
        Ok(WittVector { p: self.p, coords: self.coords.iter().map(|a| a.pow(self.p)).collect() })
    }

    /// Ghost components `w_i = sum_{j <= i} p^j a_j^{p^(i-j)}`.
    pub fn ghost(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.len());
        // frob[j] = a_j^(p^(i-j)) for the current i
        let mut frob: Vec<R> = Vec::new();
        for (i, a) in self.coords.iter().enumerate() {
            for f in frob.iter_mut() {
                *f = f.pow(self.p);
            }
            frob.push(a.clone());
            let mut w = a.zero_like();
            for (j, f) in frob.iter().enumerate() {
                w = w.add(&f.mul(&a.from_int_like(&BigInt::from(self.p).pow(j as u32))));
            }
            debug_assert_eq!(frob.len(), i + 1);
            out.push(w);
        }
        out
    }

    /// Apply a ring map to every coordinate.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WittVector<S> {
        WittVector { p: self.p, coords: self.coords.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<WittVector<S>> {
        Ok(WittVector { p: self.p, coords: self.coords.iter().map(f).collect::<Result<_>>()? })
    }

    /// Additive order, searched up to `bound`.
    pub fn additive_order(&self, bound: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.add(self).expect("same shape");
        }
        None
    }
}

impl WittVector<BigInt> {
    /// The unique integral Witt vector with the given ghost components, if
    /// one exists.
    pub fn from_ghost(p: u64, ghosts: &[BigInt]) -> Result<Self> {
        let pb = BigInt::from(p);
        let mut coords: Vec<BigInt> = Vec::with_capacity(ghosts.len());
        for (i, w) in ghosts.iter().enumerate() {
            let mut rest = w.clone();
            for (j, a) in coords.iter().enumerate() {
                rest -= pb.pow(j as u32) * a.pow(p.pow((i - j) as u32) as u32);
            }
            let (q, r) = rest.div_rem(&pb.pow(i as u32));
            if !Ring::is_zero(&r) {
                return Err(Error::NonExactDivision { p, index: i });
            }
            coords.push(q);
        }
        Self::new(p, coords)
    }

    /// Ring operations computed through ghost components (torsion-free
    /// coefficients only): the oracle for the polynomial route.
    pub fn ghost_add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let g: Vec<BigInt> = self.ghost().iter().zip(rhs.ghost()).map(|(a, b)| a + b).collect();
        Self::from_ghost(self.p, &g)
    }

    pub fn ghost_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let g: Vec<BigInt> = self.ghost().iter().zip(rhs.ghost()).map(|(a, b)| a * b).collect();
        Self::from_ghost(self.p, &g)
    }

    /// Frobenius `W_{n+1} -> W_n` defined by `w_i(F a) = w_{i+1}(a)`.
    pub fn ghost_frobenius(&self) -> Result<Self> {
        let g = self.ghost();
        Self::from_ghost(self.p, &g[1..])
    }
}

impl<R: Ring + fmt::Display> fmt::Display for WittVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<R: Ring> fmt::Debug for WittVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WittVector").field("p", &self.p).field("coords", &self.coords).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Fq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64, coords: &[i64]) -> WittVector<Fq> {
        let f = FiniteField::prime(p).unwrap();
        WittVector::new(p, coords.iter().map(|&c| Fq::from_i64(&f, c)).collect()).unwrap()
    }

    fn int(p: u64, coords: &[i64]) -> WittVector<BigInt> {
        WittVector::new(p, coords.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
    }

    #[test]
    fn one_plus_one_in_w2_f2() {
        let one = fp(2, &[1, 0]);
        assert_eq!(one.add(&one).unwrap(), fp(2, &[0, 1]));
        assert_eq!(fp(2, &[1]).verschiebung(), fp(2, &[0]));
        assert_eq!(one.verschiebung(), fp(2, &[0, 1]));
    }

    #[test]
    fn small_witt_rings_are_cyclic() {
        for (p, n) in [(2, 1), (2, 3), (3, 2), (5, 2), (2, 4), (3, 4)] {
            let one = WittVector::one(p, n, &Fq::zero(&FiniteField::prime(p).unwrap())).unwrap();
            assert_eq!(one.additive_order(p.pow(n as u32)), Some(p.pow(n as u32)), "p={p} n={n}");
        }
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let f = FiniteField::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, b) = (Fq::random(&f, &mut rng), Fq::random(&f, &mut rng));
            let ta = WittVector::teichmuller(3, 3, &a).unwrap();
            let tb = WittVector::teichmuller(3, 3, &b).unwrap();
            assert_eq!(ta.mul(&tb).unwrap(), WittVector::teichmuller(3, 3, &a.mul(&b)).unwrap());
        }
    }

    #[test]
    fn polynomial_route_matches_ghost_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, n) in [(2, 4), (3, 3), (5, 3), (7, 2)] {
            for _ in 0..10 {
                let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
                let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
                let (x, y) = (int(p, &a), int(p, &b));
                assert_eq!(x.add(&y).unwrap(), x.ghost_add(&y).unwrap());
                assert_eq!(x.mul(&y).unwrap(), x.ghost_mul(&y).unwrap());
                assert_eq!(x.add(&x.neg()).unwrap(), int(p, &vec![0; n]));
            }
        }
    }

    #[test]
    fn frobenius_after_verschiebung_is_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FiniteField::prime(3).unwrap();
        for _ in 0..100 {
            let x = WittVector::new(3, (0..3).map(|_| Fq::random(&f, &mut rng)).collect()).unwrap();
            assert_eq!(x.verschiebung().frobenius().unwrap(), x.scale_int(3));
        }
        assert!(int(3, &[1, 2]).frobenius().is_err());
    }

    #[test]
    fn ghost_frobenius_reduces_to_coordinate_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in [2u64, 3, 5] {
            let f = FiniteField::prime(p).unwrap();
            for _ in 0..20 {
                let lift = int(p, &(0..3).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
                let reduce = |x: &BigInt| Fq::zero(&f).from_int_like(x);
                let via_ghost = lift.ghost_frobenius().unwrap().map(reduce);
                let coordinatewise = lift.truncate().unwrap().map(reduce).frobenius().unwrap();
                assert_eq!(via_ghost, coordinatewise);
            }
        }
    }

    #[test]
    fn display_as_tuple() {
        assert_eq!(fp(3, &[1, 2, 0]).to_string(), "(1, 2, 0)");
    }
}
