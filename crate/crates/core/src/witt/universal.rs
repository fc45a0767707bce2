use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use once_cell::sync::{Lazy, OnceCell};

use super::poly::{IntPoly, Monomial};
use crate::error::{Error, Result};
use crate::scalar::is_prime;

/// Largest supported Witt length.
pub const MAX_LENGTH: usize = 4;

/// The integer polynomials `S_i`, `P_i`, `N_i` expressing the coordinates of
/// a sum, product and negative of length-`n` `p`-typical Witt vectors.
/// Variables `0..n` are the coordinates of the first operand and `n..2n`
/// those of the second.
#[derive(Debug)]
pub struct WittUniversalPolys {
    p: u64,
    n: usize,
    sum: Vec<IntPoly>,
    negation: Vec<IntPoly>,
    product: OnceCell<Vec<IntPoly>>,
    integer_terms: [OnceCell<Vec<Vec<(Monomial, BigInt)>>>; 3],
    reduced_terms: [OnceCell<Vec<Vec<(Monomial, u64)>>>; 3],
}

/// Which universal family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Sum = 0,
    Product = 1,
    Negation = 2,
}

/// Ghost component `w_i = sum_{j <= i} p^j x_j^{p^(i-j)}` of the Witt vector
/// whose coordinates are the variables `offset..offset+n`.
pub fn ghost_poly(p: u64, i: usize, offset: usize) -> IntPoly {
    (0..=i).fold(IntPoly::zero(), |acc, j| {
        let term = IntPoly::var(offset + j).pow(pow_u32(p, i - j)).scale(&BigInt::from(p).pow(j as u32));
        acc.add(&term)
    })
}

fn pow_u32(p: u64, e: usize) -> u32 {
    u32::try_from(p.pow(e as u32)).expect("exponent fits")
}

/// Solve `w_i(X) = ghosts[i]` for the coordinates `X_i`, dividing by `p^i`
/// at each step. The division is exact exactly when the ghost family comes
/// from an integral Witt vector.
fn invert_ghost(p: u64, ghosts: &[IntPoly]) -> Result<Vec<IntPoly>> {
    let mut coords: Vec<IntPoly> = Vec::with_capacity(ghosts.len());
    // powers[j] holds X_j^(p^(i-j)) for the current i
    let mut powers: Vec<IntPoly> = Vec::with_capacity(ghosts.len());
    for (i, g) in ghosts.iter().enumerate() {
        for pw in powers.iter_mut() {
            *pw = pw.pow_sequential(p as u32);
        }
        let mut rest = g.clone();
        for (j, pw) in powers.iter().enumerate() {
            rest = rest.sub(&pw.scale(&BigInt::from(p).pow(j as u32)));
        }
        let x = rest.exact_div(&BigInt::from(p).pow(i as u32)).ok_or(Error::NonExactDivision { p, index: i })?;
        powers.push(x.clone());
        coords.push(x);
    }
    Ok(coords)
}

static CACHE: Lazy<Mutex<HashMap<(u64, usize), Arc<WittUniversalPolys>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl WittUniversalPolys {
    /// Shared, lazily built tables for `(p, n)`.
    pub fn get(p: u64, n: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Mismatch(format!("{p} is not prime")));
        }
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::Unsupported(format!("Witt length {n}; supported 1..={MAX_LENGTH}")));
        }
        if let Some(t) = CACHE.lock().expect("cache lock").get(&(p, n)) {
            return Ok(t.clone());
        }
        let built = Arc::new(Self::build(p, n)?);
        Ok(CACHE.lock().expect("cache lock").entry((p, n)).or_insert(built).clone())
    }

    fn build(p: u64, n: usize) -> Result<Self> {
        let sum_ghosts: Vec<IntPoly> = (0..n).map(|i| ghost_poly(p, i, 0).add(&ghost_poly(p, i, n))).collect();
        let neg_ghosts: Vec<IntPoly> = (0..n).map(|i| ghost_poly(p, i, 0).scale(&BigInt::from(-1))).collect();
        Ok(WittUniversalPolys {
            p,
            n,
            sum: invert_ghost(p, &sum_ghosts)?,
            negation: invert_ghost(p, &neg_ghosts)?,
            product: OnceCell::new(),
            integer_terms: Default::default(),
            reduced_terms: Default::default(),
        })
    }

    pub fn family(&self, family: Family) -> Result<&[IntPoly]> {
        match family {
            Family::Sum => Ok(&self.sum),
            Family::Product => self.product(),
            Family::Negation => Ok(&self.negation),
        }
    }

    /// Terms of each polynomial of a family, sorted by monomial.
    pub fn integer_terms(&self, family: Family) -> Result<&[Vec<(Monomial, BigInt)>]> {
        self.integer_terms[family as usize]
            .get_or_try_init(|| Ok(self.family(family)?.iter().map(IntPoly::sorted_terms).collect()))
            .map(Vec::as_slice)
    }

    /// Terms reduced modulo `p`, zero terms dropped.
    pub fn reduced_terms(&self, family: Family) -> Result<&[Vec<(Monomial, u64)>]> {
        self.reduced_terms[family as usize]
            .get_or_try_init(|| Ok(self.family(family)?.iter().map(|poly| poly.reduce_mod(self.p)).collect()))
            .map(Vec::as_slice)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sum(&self) -> &[IntPoly] {
        &self.sum
    }

    pub fn negation(&self) -> &[IntPoly] {
        &self.negation
    }

    /// Product polynomials, built on first use (the largest tables).
    pub fn product(&self) -> Result<&[IntPoly]> {
        self.product
            .get_or_try_init(|| {
                let ghosts: Vec<IntPoly> =
                    (0..self.n).map(|i| ghost_poly(self.p, i, 0).mul(&ghost_poly(self.p, i, self.n))).collect();
                invert_ghost(self.p, &ghosts)
            })
            .map(Vec::as_slice)
    }

    /// Check `w_i(X) = target_i` symbolically for each family.
    pub fn verify_ghost_identities(&self) -> Result<bool> {
        let (p, n) = (self.p, self.n);
        let ghost_of = |coords: &[IntPoly], i: usize| -> IntPoly {
            (0..=i).fold(IntPoly::zero(), |acc, j| {
                acc.add(&coords[j].pow(pow_u32(p, i - j)).scale(&BigInt::from(p).pow(j as u32)))
            })
        };
        let product = self.product()?;
        Ok((0..n).all(|i| {
            let (wa, wb) = (ghost_poly(p, i, 0), ghost_poly(p, i, n));
            ghost_of(&self.sum, i) == wa.add(&wb)
                && ghost_of(product, i) == wa.mul(&wb)
                && ghost_of(&self.negation, i) == wa.scale(&BigInt::from(-1))
        }))
    }
}

/// Monomial in the first (`a`) and second (`b`) operand's coordinates.
pub fn ab_monomial(n: usize, a: &[u32], b: &[u32]) -> Monomial {
    use super::poly::var_monomial;
    let mut m = 0;
    for (i, &e) in a.iter().enumerate() {
        m += var_monomial(i, e);
    }
    for (i, &e) in b.iter().enumerate() {
        m += var_monomial(n + i, e);
    }
    m
}
