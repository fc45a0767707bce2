//! Checks comparing the two sides of the blow-up and Hirzebruch statements
//! in the toric model, each returning a [`VerificationReport`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::construction::{construction_c, construction_m, smallest_admissible_n, HirzebruchParams, D0, D_INF, E};
use super::sheaves::{momega_sheaf, mwitt_lengths, mwitt_slot_sheaves};
use crate::cohomology::{cech_h, CohomologyReport, Dimension};
use crate::error::{Error, Result};
use crate::toric::{star_subdivision, Fan, FanMap, QDivisor, StandardFan, ToricModulusPair};
use crate::witt::WittLengths;
use crate::Rational;

/// Largest `N` tried when looking for an admissible Hirzebruch level.
pub const MAX_LEVEL: i64 = 10_000;

/// One checked parameter tuple. `lhs` and `rhs` carry an `h0_region` and
/// the dimensions `h = [h0, h1, h2]` of each side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(suite: &str, params: &[(&str, String)], lhs: Value, rhs: Value, pass: bool) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs,
            rhs,
            pass,
        }
    }
}

/// Which modulus sheaf a check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheafKind {
    Omega { q: usize },
    Witt { p: u64, n: usize },
}

impl SheafKind {
    fn params(&self) -> Vec<(&'static str, String)> {
        match self {
            SheafKind::Omega { q } => vec![("sheaf", "omega".into()), ("q", q.to_string())],
            SheafKind::Witt { p, n } => vec![("sheaf", "witt".into()), ("p", p.to_string()), ("n", n.to_string())],
        }
    }
}

/// Cohomology of the chosen modulus sheaf, as one report per Witt slot.
#[derive(Clone, Debug)]
pub struct SideCohomology {
    slots: Vec<CohomologyReport>,
}

impl SideCohomology {
    pub fn of(pair: &ToricModulusPair, kind: SheafKind) -> Result<Self> {
        let slots = match kind {
            SheafKind::Omega { q } => vec![cech_h(&momega_sheaf(pair, q)?)?],
            SheafKind::Witt { p, n } => mwitt_lengths(pair, p, n)?.slots().to_vec(),
        };
        Ok(SideCohomology { slots })
    }

    pub fn higher_vanish(&self) -> bool {
        self.slots.iter().all(CohomologyReport::higher_vanish)
    }

    /// First slot and character where the `H^0` regions disagree.
    pub fn first_h0_difference(&self, other: &SideCohomology) -> Result<Option<(usize, [i64; 2])>> {
        for (j, (a, b)) in self.slots.iter().zip(&other.slots).enumerate() {
            if let Some(m) = a.h0_region.first_difference(&b.h0_region)? {
                return Ok(Some((j, m)));
            }
        }
        Ok(None)
    }

    pub fn summary(&self) -> Value {
        let h = |i: usize| self.slots.iter().map(|s| s.h(i)).fold(Dimension::Finite(0), |a, b| a + b);
        let region: Value = if self.slots.len() == 1 {
            json!(self.slots[0].h0_region.conditions())
        } else {
            json!(self.slots.iter().map(|s| s.h0_region.conditions()).collect::<Vec<_>>())
        };
        json!({ "h0_region": region, "h": [h(0), h(1), h(2)] })
    }
}

impl From<WittLengths> for SideCohomology {
    fn from(w: WittLengths) -> Self {
        SideCohomology { slots: w.slots().to_vec() }
    }
}

fn rational(x: &Rational) -> String {
    x.to_string()
}

/// `D = aL + bL'` on the affine plane and its pullback to the blow-up of
/// the origin. The exceptional ray is index 2.
pub fn blowup_pairs(a: &Rational, b: &Rational) -> Result<(ToricModulusPair, ToricModulusPair)> {
    if a.is_zero() {
        return Err(Error::Precondition("a ≠ 0 required, got a = 0".into()));
    }
    if a.is_negative() || b.is_negative() {
        return Err(Error::Precondition(format!("a, b >= 0 required, got a = {a}, b = {b}")));
    }
    let d = QDivisor::from_pairs([(0, a.clone()), (1, b.clone())]);
    let pair = ToricModulusPair::new(Fan::standard(StandardFan::AffinePlane), d)?;
    let (_, map) = star_subdivision(pair.fan(), [0, 1])?;
    let up = pair.pullback(&map)?;
    Ok((pair, up))
}

fn blowup_report(suite: &str, params: Vec<(&str, String)>, below: SideCohomology, up: SideCohomology) -> Result<VerificationReport> {
    let diff = below.first_h0_difference(&up)?;
    let vanish = up.higher_vanish();
    let mut rhs = up.summary();
    if let Some((slot, m)) = diff {
        rhs["h0_difference"] = json!({ "slot": slot, "character": m });
    }
    Ok(VerificationReport::new(suite, &params, below.summary(), rhs, diff.is_none() && vanish))
}

/// `MΩ^q` on `(A^2, aL + bL')` against its blow-up at the origin: equal
/// `H^0` regions and vanishing higher cohomology upstairs.
pub fn verify_blowup_omega(a: &Rational, b: &Rational, q: usize) -> Result<VerificationReport> {
    let (pair, up) = blowup_pairs(a, b)?;
    let kind = SheafKind::Omega { q };
    let params = vec![("a", rational(a)), ("b", rational(b)), ("q", q.to_string())];
    blowup_report("blowup-omega", params, SideCohomology::of(&pair, kind)?, SideCohomology::of(&up, kind)?)
}

/// `MW_n` on the same pairs, slot by slot.
pub fn verify_blowup_witt(a: &Rational, b: &Rational, p: u64, n: usize) -> Result<VerificationReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::Precondition(format!("1 <= n <= 4 required, got n = {n}")));
    }
    let (pair, up) = blowup_pairs(a, b)?;
    let kind = SheafKind::Witt { p, n };
    let params = vec![("a", rational(a)), ("b", rational(b)), ("p", p.to_string()), ("n", n.to_string())];
    blowup_report("blowup-witt", params, SideCohomology::of(&pair, kind)?, SideCohomology::of(&up, kind)?)
}

/// `Δ_N -> Δ_1`, `(x, y) -> (Nx, y)`.
pub fn theta_map(n: u32) -> Result<FanMap> {
    FanMap::new([[n as i64, 0], [0, 1]], Fan::delta(n), Fan::delta(1))
}

/// `Δ_N -> Δ_0`, `(x, y) -> (x, mx + y)`, defined for `0 <= m <= N`.
pub fn psi_map(n: u32, m: i64) -> Result<FanMap> {
    FanMap::new([[1, 0], [m, 1]], Fan::delta(n), Fan::delta(0))
}

/// `θ_N^*(a D_0 + b D_∞ + c E) = Na D_0 + Nb D_∞ + c E`.
pub fn theta_pullback_identity(a: &Rational, b: &Rational, c: &Rational, n: u32) -> Result<bool> {
    let d = HirzebruchParams { n: 1, a: a.clone(), b: b.clone(), c: c.clone() }.divisor();
    let big = Rational::from(n as i64);
    let expected = HirzebruchParams { n, a: a * &big, b: b * &big, c: c.clone() }.divisor();
    Ok(theta_map(n)?.pullback(&d)? == expected)
}

/// `ψ_{m,m'}^*(D_0 + c E) = (mc + 1) D_0 + m'c D_∞ + c E`.
pub fn psi_pullback_identity(m: i64, m_prime: i64, c: &Rational) -> Result<bool> {
    if m < 0 || m_prime < 0 {
        return Err(Error::Precondition(format!("m, m' >= 0 required, got ({m}, {m_prime})")));
    }
    let n = u32::try_from(m + m_prime).map_err(|_| Error::Precondition("N out of range".into()))?;
    let d = QDivisor::from_pairs([(D0, Rational::one()), (E, c.clone())]);
    let expected = QDivisor::from_pairs([
        (D0, &(&Rational::from(m) * c) + &Rational::one()),
        (D_INF, &Rational::from(m_prime) * c),
        (E, c.clone()),
    ]);
    Ok(psi_map(n, m)?.pullback(&d)? == expected)
}

/// Higher vanishing on `Δ_1` with `(a, b, a + b)` and on the `Δ_0` endpoint
/// `(1, 0, c)` reached through `θ_N` and `ψ_{m,m'}` for the smallest
/// admissible `N`.
pub fn verify_hirzebruch(a: &Rational, b: &Rational, kind: SheafKind) -> Result<VerificationReport> {
    if a.is_zero() {
        return Err(Error::Precondition("a ≠ 0 required, got a = 0".into()));
    }
    let on_delta1 = HirzebruchParams::new(1, a.clone(), b.clone(), a + b)?;
    let n = smallest_admissible_n(a, b, MAX_LEVEL)?;
    let c = construction_c(a, b, n);
    let (m, m_prime) = construction_m(a, b, n)?;
    let level = u32::try_from(n).expect("bounded by MAX_LEVEL");
    let endpoint = HirzebruchParams::new(0, Rational::one(), Rational::zero(), c.clone())?;

    let lhs = SideCohomology::of(&on_delta1.pair(), kind)?;
    let rhs = SideCohomology::of(&endpoint.pair(), kind)?;
    let theta = theta_pullback_identity(a, b, &c, level)?;
    let psi = psi_pullback_identity(m, m_prime, &c)?;
    // ψ^*(D_0 + cE) <= θ^*(a, b, c) on Δ_N
    let na = a * &Rational::from(n);
    let nb = b * &Rational::from(n);
    let dominated = &(&Rational::from(m) * &c) + &Rational::one() <= na && &Rational::from(m_prime) * &c <= nb;

    let mut params = vec![("a", rational(a)), ("b", rational(b))];
    params.extend(kind.params());
    params.extend([("N", n.to_string()), ("c", rational(&c)), ("m", m.to_string()), ("m'", m_prime.to_string())]);
    let mut rhs_value = rhs.summary();
    rhs_value["theta_identity"] = json!(theta);
    rhs_value["psi_identity"] = json!(psi);
    rhs_value["psi_dominated"] = json!(dominated);
    let pass = lhs.higher_vanish() && rhs.higher_vanish() && theta && psi && dominated;
    Ok(VerificationReport::new("hirzebruch", &params, lhs.summary(), rhs_value, pass))
}

/// Modulus sheaves of `(1 - ε) D` against those of `D`, at several `ε`
/// below the threshold of [`QDivisor::scaled_ceiling`]; when the threshold
/// is below 1, the `q = 0` sheaf must change at `ε = threshold`.
pub fn verify_left_continuity(pair: &ToricModulusPair, witt: &[(u64, usize)]) -> Result<VerificationReport> {
    let d = pair.modulus();
    let threshold = d.scaled_ceiling().threshold;
    let probes = [Rational::frac(1, 1000), Rational::frac(1, 2), Rational::frac(99, 100)].map(|s| &s * &threshold);
    let mut stable = true;
    for eps in &probes {
        let shrunk = ToricModulusPair::new(pair.fan().clone(), d.scale(&(Rational::one() - eps)))?;
        for q in 0..=pair.fan().rank() {
            stable &= momega_sheaf(&shrunk, q)? == momega_sheaf(pair, q)?;
        }
        for &(p, n) in witt {
            stable &= mwitt_slot_sheaves(&shrunk, p, n)? == mwitt_slot_sheaves(pair, p, n)?;
        }
    }
    let sharp = if threshold < Rational::one() {
        let at = ToricModulusPair::new(pair.fan().clone(), d.scale(&(Rational::one() - &threshold)))?;
        Some(momega_sheaf(&at, 0)? != momega_sheaf(pair, 0)?)
    } else {
        None
    };
    let params = [("divisor", serde_json::to_string(d).expect("divisors serialize")), ("rays", pair.fan().num_rays().to_string())];
    let lhs = json!({ "threshold": rational(&threshold), "probes": probes.iter().map(rational).collect::<Vec<_>>() });
    let rhs = json!({ "stable": stable, "sharp": sharp });
    Ok(VerificationReport::new("left-continuity", &params, lhs, rhs, stable && sharp != Some(false)))
}
