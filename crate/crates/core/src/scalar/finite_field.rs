use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Conway polynomials for `F_{p^k}`, `k <= 4`, coefficients listed from the
/// constant term up (the leading `1` included).
const CONWAY: &[(u64, &[u64])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (5, &[3, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (5, &[2, 4, 4, 0, 1]),
    (7, &[4, 1]),
    (7, &[3, 6, 1]),
    (7, &[4, 0, 6, 1]),
    (7, &[3, 4, 5, 0, 1]),
    (11, &[9, 1]),
    (11, &[2, 7, 1]),
    (11, &[9, 2, 0, 1]),
    (11, &[2, 10, 8, 0, 1]),
    (13, &[11, 1]),
    (13, &[2, 12, 1]),
    (13, &[11, 2, 0, 1]),
    (13, &[2, 12, 3, 0, 1]),
];

pub const MAX_EXTENSION_DEGREE: usize = 4;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field `F_q = F_p[a]/(f(a))` for a monic irreducible `f` of degree `k <= 4`.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

impl FiniteField {
    /// `F_{p^k}` built from the shipped Conway polynomial table.
    pub fn new(p: u64, degree: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        if degree == 0 || degree > MAX_EXTENSION_DEGREE {
            return Err(Error::Unsupported(format!(
                "extension degree {degree} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let modulus = CONWAY
            .iter()
            .find(|(q, m)| *q == p && m.len() == degree + 1)
            .map(|(_, m)| m.to_vec())
            .ok_or_else(|| Error::Unsupported(format!("no modulus polynomial shipped for {p}^{degree}")))?;
        Ok(Arc::new(FiniteField { p, modulus }))
    }

    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(p, 1)
    }

    /// A field with a caller-supplied monic modulus; irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || degree > MAX_EXTENSION_DEGREE || modulus[degree] != 1 {
            return Err(Error::Unsupported("modulus must be monic of degree 1..=4".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Unsupported("modulus coefficients must be reduced".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::Unsupported("modulus polynomial is reducible".into()));
        }
        Ok(Arc::new(FiniteField { p, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let k = self.degree();
        let p = self.p;
        while c.len() > k {
            let top = c.pop().unwrap();
            if top != 0 {
                let shift = c.len() - k;
                for (i, &m) in self.modulus[..k].iter().enumerate() {
                    c[shift + i] = (c[shift + i] + (p - top) * m) % p;
                }
            }
        }
        c.resize(k, 0);
        c
    }
}

pub fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let degree = modulus.len() - 1;
    // trial division by all monic polynomials of degree 1..=degree/2
    for d in 1..=degree / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            if poly_rem_u64(p, modulus, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_u64(p: u64, num: &[u64], div: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let d = div.len() - 1;
    while r.len() > d {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - d;
            for i in 0..d {
                r[shift + i] = (r[shift + i] + (p - top) * div[i]) % p;
            }
        }
    }
    r
}

/// An element of a [`FiniteField`], stored as reduced coefficients of `1, a, a^2, ...`.
#[derive(Clone)]
pub struct Fq {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl Fq {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        Fq { field: field.clone(), coeffs: vec![0; field.degree()] }
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: &Arc<FiniteField>, n: i64) -> Self {
        let p = field.p as i64;
        let mut c = vec![0; field.degree()];
        c[0] = n.rem_euclid(p) as u64;
        Fq { field: field.clone(), coeffs: c }
    }

    pub fn from_coeffs(field: &Arc<FiniteField>, coeffs: &[u64]) -> Self {
        let c = coeffs.iter().map(|&x| x % field.p).collect();
        Fq { field: field.clone(), coeffs: field.reduce(c) }
    }

    /// The class of the adjoined root `a`; a generator of `F_q^*` for the
    /// shipped (primitive) moduli.
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        Self::from_coeffs(field, &[0, 1])
    }

    /// Index of this element in the enumeration order of [`elements`].
    pub fn index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn from_index(field: &Arc<FiniteField>, mut idx: u64) -> Self {
        let mut c = Vec::with_capacity(field.degree());
        for _ in 0..field.degree() {
            c.push(idx % field.p);
            idx /= field.p;
        }
        Fq { field: field.clone(), coeffs: c }
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &Arc<FiniteField>, rng: &mut R) -> Self {
        let idx = rng.gen_range(0..field.order());
        Self::from_index(field, idx)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(field: &Arc<FiniteField>, rng: &mut R) -> Self {
        let idx = rng.gen_range(1..field.order());
        Self::from_index(field, idx)
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if Ring::is_zero(self) {
            return None;
        }
        let group = self.field.order() - 1;
        let mut order = group;
        for d in divisors(group) {
            if self.pow(d).is_one() {
                order = d;
                break;
            }
        }
        Some(order)
    }

    /// The integer value of a prime-field element.
    pub fn to_u64(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// All elements of the field, in index order.
pub fn elements(field: &Arc<FiniteField>) -> impl Iterator<Item = Fq> + '_ {
    (0..field.order()).map(move |i| Fq::from_index(field, i))
}

/// A primitive `e`-th root of unity, i.e. an element of exact multiplicative order `e`.
pub fn root_of_unity(field: &Arc<FiniteField>, e: u64) -> Result<Fq> {
    let group = field.order() - 1;
    if e == 0 || group % e != 0 {
        return Err(Error::NonKummer(format!(
            "F_{} has no primitive {e}-th root of unity",
            field.order()
        )));
    }
    let g = elements(field)
        .find(|x| x.multiplicative_order() == Some(group))
        .expect("finite fields have cyclic unit groups");
    Ok(g.pow(group / e))
}

impl Ring for Fq {
    fn zero_like(&self) -> Self {
        Fq::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        Fq::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        Fq { field: self.field.clone(), coeffs }
    }

    fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        Fq { field: self.field.clone(), coeffs }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.field.p;
        let k = self.field.degree();
        if k == 1 {
            return Fq { field: self.field.clone(), coeffs: vec![self.coeffs[0] * rhs.coeffs[0] % p] };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        Fq { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        let p = BigInt::from(self.field.p);
        let r = ((n % &p) + &p) % &p;
        Fq::from_i64(&self.field, r.to_i64().expect("reduced residue fits"))
    }

    fn characteristic(&self) -> u64 {
        self.field.p
    }
}

impl Field for Fq {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.pow(self.field.order() - 2))
        }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_u64() {
            return write!(f, "{v}");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}a"),
                _ => format!("{coef}a^{i}"),
            });
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.field.p)
    }
}
