use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::fan::RayId;
use crate::scalar::Rational;

/// A torus-invariant Q-divisor: rational coefficients keyed by ray index.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<RayId, Rational>", into = "BTreeMap<RayId, Rational>")]
pub struct QDivisor {
    coeffs: BTreeMap<RayId, Rational>,
}

impl From<BTreeMap<RayId, Rational>> for QDivisor {
    fn from(map: BTreeMap<RayId, Rational>) -> Self {
        Self::from_pairs(map)
    }
}

impl From<QDivisor> for BTreeMap<RayId, Rational> {
    fn from(d: QDivisor) -> Self {
        d.coeffs
    }
}

/// Result of rounding `(1 - eps) D` upward: the divisor is constant for
/// every `0 < eps < threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledCeiling {
    pub threshold: Rational,
    pub value: QDivisor,
}

impl QDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (RayId, Rational)>) -> Self {
        let mut d = Self::zero();
        for (r, c) in pairs {
            d.add_to(r, &c);
        }
        d
    }

    /// A single prime divisor with coefficient `c`.
    pub fn prime(ray: RayId, c: Rational) -> Self {
        Self::from_pairs([(ray, c)])
    }

    pub fn coeff(&self, ray: RayId) -> Rational {
        self.coeffs.get(&ray).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, ray: RayId, c: Rational) {
        if c.is_zero() {
            self.coeffs.remove(&ray);
        } else {
            self.coeffs.insert(ray, c);
        }
    }

    fn add_to(&mut self, ray: RayId, c: &Rational) {
        let sum = self.coeff(ray) + c;
        self.set(ray, sum);
    }

    pub fn iter(&self) -> impl Iterator<Item = (RayId, &Rational)> {
        self.coeffs.iter().map(|(r, c)| (*r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }

    pub fn support(&self) -> BTreeSet<RayId> {
        self.coeffs.keys().copied().collect()
    }

    /// Largest ray index mentioned, if any.
    pub fn max_ray(&self) -> Option<RayId> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, rhs: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (r, c) in rhs.iter() {
            out.add_to(r, c);
        }
        out
    }

    pub fn sub(&self, rhs: &QDivisor) -> QDivisor {
        self.add(&rhs.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, s: &Rational) -> QDivisor {
        Self::from_pairs(self.iter().map(|(r, c)| (r, c * s)))
    }

    fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> QDivisor {
        Self::from_pairs(self.iter().map(|(r, c)| (r, f(c))))
    }

    pub fn ceil(&self) -> QDivisor {
        self.map_coeffs(|c| Rational::from(c.ceil()))
    }

    pub fn floor(&self) -> QDivisor {
        self.map_coeffs(|c| Rational::from(c.floor()))
    }

    /// The reduced divisor on the support.
    pub fn support_divisor(&self) -> QDivisor {
        self.map_coeffs(|_| Rational::one())
    }

    /// `ceil(D) - |D|`: coefficient `ceil(d) - 1` on the support, 0 elsewhere.
    pub fn modulus_twist(&self) -> QDivisor {
        self.ceil().sub(&self.support_divisor())
    }

    /// Coefficient-wise ceiling of `(1 - eps) D` for small `eps > 0`,
    /// together with the supremum of the `eps` for which it holds.
    pub fn scaled_ceiling(&self) -> ScaledCeiling {
        let one = Rational::one();
        let mut threshold = one.clone();
        let mut value = QDivisor::zero();
        for (r, d) in self.iter() {
            let (c, eps) = if d.is_positive() {
                let c = Rational::from(d.ceil());
                let eps = &one - &(&(&c - &one) / d);
                (c, eps)
            } else {
                let c = Rational::from(d.floor()) + Rational::one();
                let eps = if c.is_zero() { one.clone() } else { &one - &(&c / d) };
                (c, eps)
            };
            if eps < threshold {
                threshold = eps;
            }
            value.set(r, c);
        }
        ScaledCeiling { threshold, value }
    }

    /// Coefficient-wise ceiling of `(1 - eps) D` at a specific `eps`.
    pub fn ceil_of_scaled(&self, eps: &Rational) -> QDivisor {
        self.scale(&(Rational::one() - eps)).ceil()
    }
}
