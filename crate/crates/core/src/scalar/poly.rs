use std::fmt;

use super::ring::{Field, Ring};

/// Dense univariate polynomial over a field, trimmed of trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    zero: F,
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ctx: &F) -> Self {
        Poly { zero: ctx.zero_like(), coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(&c, vec![c.clone()])
    }

    /// The variable itself.
    pub fn x(ctx: &F) -> Self {
        Self::from_coeffs(ctx, vec![ctx.zero_like(), ctx.one_like()])
    }

    pub fn from_coeffs(ctx: &F, coeffs: Vec<F>) -> Self {
        let mut p = Poly { zero: ctx.zero_like(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Self::from_coeffs(&self.zero, c)
    }

    pub fn neg(&self) -> Self {
        Poly { zero: self.zero.clone(), coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.zero, c)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_coeffs(&self.zero, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, rhs: &Self) -> Option<(Self, Self)> {
        let lead_inv = rhs.leading()?.inv()?;
        let d = rhs.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero.clone(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let factor = top.mul(&lead_inv);
            let shift = rem.len() - d;
            quot[shift] = factor.clone();
            for i in 0..d {
                rem[shift + i] = rem[shift + i].sub(&factor.mul(&rhs.coeffs[i]));
            }
        }
        Some((Self::from_coeffs(&self.zero, quot), Self::from_coeffs(&self.zero, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale_int(i as i64))
            .collect();
        Self::from_coeffs(&self.zero, c)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    pub fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result
    where
        F: fmt::Display,
    {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match (i, c.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{cs}{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{cs}{var}^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("x", f)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}
