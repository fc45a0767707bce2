use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::finite_field::{FiniteField, Fq};
use super::poly::Poly;
use super::ring::{Field, Ring};

/// An element of the rational function field `F_q(u)`, stored as a reduced
/// fraction with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<Fq>,
    den: Poly<Fq>,
}

impl RatFunc {
    pub fn new(num: Poly<Fq>, den: Poly<Fq>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead_inv = den.leading()?.inv()?;
        Some(RatFunc { num: num.scale(&lead_inv), den: den.scale(&lead_inv) })
    }

    pub fn from_poly(num: Poly<Fq>) -> Self {
        let one = Poly::constant(num.ctx().one_like());
        RatFunc { num, den: one }
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The transcendental `u`.
    pub fn u(field: &Arc<FiniteField>) -> Self {
        Self::from_poly(Poly::x(&Fq::zero(field)))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.num.ctx().field()
    }

    pub fn numer(&self) -> &Poly<Fq> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Fq> {
        &self.den
    }

    /// `d/du` by the quotient rule.
    pub fn derivative(&self) -> Self {
        let top = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(top, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// A random element with numerator and denominator of degree at most `max_degree`.
    pub fn random<R: rand::Rng + ?Sized>(field: &Arc<FiniteField>, max_degree: usize, rng: &mut R) -> Self {
        let zero = Fq::zero(field);
        loop {
            let nd = rng.gen_range(0..=max_degree);
            let dd = rng.gen_range(0..=max_degree);
            let num = Poly::from_coeffs(&zero, (0..=nd).map(|_| Fq::random(field, rng)).collect());
            let den = Poly::from_coeffs(&zero, (0..=dd).map(|_| Fq::random(field, rng)).collect());
            if let Some(r) = Self::new(num, den) {
                return r;
            }
        }
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        Self::from_poly(Poly::zero(self.num.ctx()))
    }

    fn one_like(&self) -> Self {
        Self::constant(self.num.ctx().one_like())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let top = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(top, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominator")
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::constant(self.num.ctx().from_int_like(n))
    }

    fn characteristic(&self) -> u64 {
        self.field().p()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.degree() == Some(0);
        let compound = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if den_is_one {
            return self.num.fmt_in("u", f);
        }
        if compound {
            write!(f, "(")?;
            self.num.fmt_in("u", f)?;
            write!(f, ")")?;
        } else {
            self.num.fmt_in("u", f)?;
        }
        write!(f, "/(")?;
        self.den.fmt_in("u", f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
