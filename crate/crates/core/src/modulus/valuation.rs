//! Boundedness of modulus sheaf sections at monomial valuations.
//!
//! On the chart of a smooth cone with rays `v_j`, the coordinate `x_j`
//! vanishes to order one along the divisor of `v_j`. A monomial valuation
//! sends `x_j` to `unit_j * t^(e_j)`, with `e_j = 0` off the modulus
//! support, and `v_L` of the pulled-back modulus is `sum_j e_j d_j`.

use std::sync::Arc;

use serde::Serialize;

use super::sheaves::{momega_sheaf, mwitt_divisor};
use crate::error::{Error, Result};
use crate::logforms::{log_fil_member, LogForm, Series};
use crate::scalar::{Field, FiniteField, Fq, Laurent, Poly, RatFunc, Ring};
use crate::toric::ToricModulusPair;
use crate::witt::{bk_member, WittVector};
use crate::Rational;

/// Nonnegative weights, not all zero, on the chart coordinates that cut
/// the modulus support (in cone order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialValuation {
    weights: Vec<u32>,
}

impl MonomialValuation {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.iter().all(|&e| e == 0) {
            return Err(Error::Precondition("monomial valuation needs a positive weight".into()));
        }
        Ok(MonomialValuation { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

/// `sum e_i (ceil(r_i) - 1) <= ceil(sum e_i r_i) - 1`.
pub fn monomial_bound_inequality(e: &MonomialValuation, r: &[Rational]) -> Result<bool> {
    if e.weights.len() != r.len() {
        return Err(Error::Mismatch(format!("{} weights for {} coefficients", e.weights.len(), r.len())));
    }
    if let Some(bad) = r.iter().find(|x| !x.is_positive()) {
        return Err(Error::Precondition(format!("coefficients must be positive, got {bad}")));
    }
    let mut lhs = 0i64;
    let mut total = Rational::zero();
    for (&w, x) in e.weights.iter().zip(r) {
        lhs += i64::from(w) * (x.ceil_i64() - 1);
        total = &total + &(x * &Rational::from(i64::from(w)));
    }
    Ok(lhs < total.ceil_i64())
}

/// A monomial section on the chart of a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartSection {
    /// `x^k ∧_{j ∈ dlog} dlog x_j`, positions taken within the cone.
    Form { cone: usize, exponent: Vec<i64>, dlog: Vec<usize> },
    /// The Witt vector with `x^k` in coordinate `slot` and zeros elsewhere.
    Witt { cone: usize, p: u64, n: usize, slot: usize, exponent: Vec<i64> },
    Zero,
}

impl ChartSection {
    pub fn cone(&self) -> Option<usize> {
        match self {
            ChartSection::Form { cone, .. } | ChartSection::Witt { cone, .. } => Some(*cone),
            ChartSection::Zero => None,
        }
    }

    /// The same section multiplied by `x^shift`.
    pub fn shifted(&self, shift: &[i64]) -> ChartSection {
        let add = |k: &[i64]| k.iter().zip(shift).map(|(a, b)| a + b).collect();
        match self {
            ChartSection::Form { cone, exponent, dlog } => {
                ChartSection::Form { cone: *cone, exponent: add(exponent), dlog: dlog.clone() }
            }
            ChartSection::Witt { cone, p, n, slot, exponent } => {
                ChartSection::Witt { cone: *cone, p: *p, n: *n, slot: *slot, exponent: add(exponent) }
            }
            ChartSection::Zero => ChartSection::Zero,
        }
    }
}

fn subsets_of(len: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << len).filter(|m| m.count_ones() as usize == size).map(|m| (0..len).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Monomial generators of `Ω^q(log |D|)(ceil(D) - |D|)` on every chart:
/// `x^k dlog x_S` with `k_j = -twist_j`, plus one for `dlog x_j` along a ray
/// without a log pole (which needs `x_j dlog x_j = dx_j`).
pub fn form_generators(pair: &ToricModulusPair, q: usize) -> Result<Vec<ChartSection>> {
    let sheaf = momega_sheaf(pair, q)?;
    let mut out = Vec::new();
    for (ci, cone) in pair.fan().cones().iter().enumerate() {
        for s in subsets_of(cone.len(), q) {
            let exponent = cone
                .iter()
                .enumerate()
                .map(|(pos, &r)| -sheaf.twists()[r] + i64::from(s.contains(&pos) && !sheaf.log_poles()[r]))
                .collect();
            out.push(ChartSection::Form { cone: ci, exponent, dlog: s });
        }
    }
    Ok(out)
}

/// Generators of the modulus Witt sheaf: coordinate `i` carries
/// `x^k` with `k_j = -floor(p^i D'_j)`, `D' = (ceil(D) - |D|) / p^(n-1)`.
pub fn witt_generators(pair: &ToricModulusPair, p: u64, n: usize) -> Vec<ChartSection> {
    let d = mwitt_divisor(pair.modulus(), p, n);
    let mut out = Vec::new();
    for (ci, cone) in pair.fan().cones().iter().enumerate() {
        for slot in 0..n {
            let scale = Rational::from((p as i64).pow(slot as u32));
            let exponent = cone.iter().map(|&r| -(&d.coeff(r) * &scale).floor_i64()).collect();
            out.push(ChartSection::Witt { cone: ci, p, n, slot, exponent });
        }
    }
    out
}

/// Units `u`, `u + 1`, `u + 2`, ... standing in front of `t^(e_j)`.
fn chart_units(field: &Arc<FiniteField>, len: usize) -> Vec<RatFunc> {
    let zero = Fq::zero(field);
    (0..len)
        .map(|j| RatFunc::from_poly(Poly::from_coeffs(&zero, vec![Fq::from_i64(field, j as i64), zero.one_like()])))
        .collect()
}

/// `v_L` of the pulled-back modulus and the per-coordinate weights.
fn chart_weights(pair: &ToricModulusPair, cone: usize, val: &MonomialValuation) -> Result<(Vec<i64>, Rational)> {
    let rays = pair.fan().cones().get(cone).ok_or_else(|| Error::Mismatch(format!("no cone {cone}")))?;
    let support = pair.support_rays();
    let cutting: Vec<usize> = rays.iter().copied().filter(|r| support.contains(r)).collect();
    if cutting.len() != val.weights.len() {
        return Err(Error::Mismatch(format!(
            "chart {cone} has {} support coordinates, valuation has {} weights",
            cutting.len(),
            val.weights.len()
        )));
    }
    let mut weights = Vec::with_capacity(rays.len());
    let mut level = Rational::zero();
    let mut it = val.weights.iter();
    for r in rays {
        let e = if support.contains(r) { i64::from(*it.next().expect("counted above")) } else { 0 };
        level = &level + &(&pair.modulus().coeff(*r) * &Rational::from(e));
        weights.push(e);
    }
    Ok((weights, level))
}

fn monomial(units: &[RatFunc], exponent: &[i64], weights: &[i64]) -> Result<Series> {
    let mut coeff = units[0].one_like();
    for (u, &k) in units.iter().zip(exponent) {
        let base = if k < 0 { u.inv().ok_or(Error::DivisionByZero)? } else { u.clone() };
        coeff = coeff.mul(&base.pow(k.unsigned_abs()));
    }
    let valuation = exponent.iter().zip(weights).map(|(k, e)| k * e).sum();
    Ok(Series::monomial(coeff, valuation))
}

/// Pull `section` back along `val` and test membership in
/// `Fil_r` with `r = v_L(pullback of D)`.
pub fn monomial_filtration_check(section: &ChartSection, pair: &ToricModulusPair, val: &MonomialValuation) -> Result<bool> {
    let Some(cone) = section.cone() else {
        return Ok(true);
    };
    let (weights, level) = chart_weights(pair, cone, val)?;
    match section {
        ChartSection::Form { exponent, dlog, .. } => {
            let field = FiniteField::prime(5)?;
            let units = chart_units(&field, weights.len());
            let mut form = LogForm::scalar(monomial(&units, exponent, &weights)?);
            for &j in dlog {
                let dlog_unit = units[j].derivative().mul(&units[j].inv().ok_or(Error::DivisionByZero)?);
                let factor = LogForm::one_form(Series::constant(dlog_unit), Series::constant(units[j].from_int_like(&weights[j].into())));
                form = form.wedge(&factor)?;
            }
            log_fil_member(&form, &level)
        }
        ChartSection::Witt { p, n, slot, exponent, .. } => {
            let field = FiniteField::prime(*p)?;
            let units = chart_units(&field, weights.len());
            let value = monomial(&units, exponent, &weights)?;
            let zero = Laurent::zero(value.ctx());
            let coords = (0..*n).map(|i| if i == *slot { value.clone() } else { zero.clone() }).collect();
            bk_member(&WittVector::new(*p, coords)?, &level)
        }
        ChartSection::Zero => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::EquivariantSheaf;
    use crate::toric::{star_subdivision, Fan, QDivisor, StandardFan};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn val(w: &[u32]) -> MonomialValuation {
        MonomialValuation::new(w.to_vec()).unwrap()
    }

    fn plane(a: &str, b: &str) -> ToricModulusPair {
        let d = QDivisor::from_pairs([(0, q(a)), (1, q(b))]);
        ToricModulusPair::new(Fan::standard(StandardFan::AffinePlane), d).unwrap()
    }

    #[test]
    fn rounding_inequality_examples() {
        assert!(monomial_bound_inequality(&val(&[1, 1]), &[q("1/2"), q("1/2")]).unwrap());
        assert!(monomial_bound_inequality(&val(&[2, 3]), &[q("3/2"), q("1/3")]).unwrap());
        assert!(monomial_bound_inequality(&val(&[1]), &[q("2")]).unwrap());
        assert!(monomial_bound_inequality(&val(&[1]), &[q("0")]).is_err());
        assert!(monomial_bound_inequality(&val(&[1, 2]), &[q("1")]).is_err());
        assert!(MonomialValuation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn polar_dlog_section() {
        let pair = plane("3/2", "0");
        // x^-1 dlog x with x the coordinate cutting L
        let s = ChartSection::Form { cone: 0, exponent: vec![-1, 0], dlog: vec![0] };
        assert!(monomial_filtration_check(&s, &pair, &val(&[1])).unwrap());
        // one more pole is not bounded by (3/2) L
        assert!(!monomial_filtration_check(&s.shifted(&[-1, 0]), &pair, &val(&[1])).unwrap());
        assert!(monomial_filtration_check(&ChartSection::Zero, &pair, &val(&[3])).unwrap());
    }

    #[test]
    fn witt_section() {
        let pair = plane("2", "0");
        // D' = (1/2) L for p = 2, n = 2: coordinate 1 may carry x^-1
        let s = ChartSection::Witt { cone: 0, p: 2, n: 2, slot: 1, exponent: vec![-1, 0] };
        assert!(monomial_filtration_check(&s, &pair, &val(&[1])).unwrap());
        assert_eq!(witt_generators(&pair, 2, 2)[1], s);
        let worse = ChartSection::Witt { cone: 0, p: 2, n: 2, slot: 0, exponent: vec![-1, 0] };
        assert!(!monomial_filtration_check(&worse, &pair, &val(&[1])).unwrap());
    }

    #[test]
    fn weights_must_match_the_support() {
        let pair = plane("1", "1");
        let s = ChartSection::Form { cone: 0, exponent: vec![0, 0], dlog: vec![] };
        assert!(monomial_filtration_check(&s, &pair, &val(&[1])).is_err());
    }

    #[test]
    fn degree_zero_generators_are_sections() {
        let pair = plane("7/3", "5/2");
        let (_, map) = star_subdivision(pair.fan(), [0, 1]).unwrap();
        let up = pair.pullback(&map).unwrap();
        for pair in [pair, up] {
            let sheaf: EquivariantSheaf = momega_sheaf(&pair, 0).unwrap();
            for g in form_generators(&pair, 0).unwrap() {
                let ChartSection::Form { cone, exponent, .. } = &g else { unreachable!() };
                let rays = &pair.fan().cones()[*cone];
                let (v, w) = (pair.fan().ray(rays[0]), pair.fan().ray(rays[1]));
                // character m with <m, v> = k_0, <m, w> = k_1 (the cone is unimodular)
                let det = v[0] * w[1] - v[1] * w[0];
                let m = [
                    (exponent[0] * w[1] - exponent[1] * v[1]) * det,
                    (exponent[1] * v[0] - exponent[0] * w[0]) * det,
                ];
                assert_eq!(sheaf.sections_at_character(*cone, m).dim(), 1, "{g:?}");
            }
        }
    }
}
