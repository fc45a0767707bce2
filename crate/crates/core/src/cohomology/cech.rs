use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cells::{Arrangement, SignPattern};
use super::linalg::Subspace;
use super::sheaf::{sections_under, EquivariantSheaf, RayConstraint};
use crate::error::{Error, Result};
use crate::scalar::{Field, FiniteField, Fq, Rational};
use crate::toric::Vector;

/// Dimension of a character-graded vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn is_zero(self) -> bool {
        self == Dimension::Finite(0)
    }
}

impl std::ops::Add for Dimension {
    type Output = Dimension;

    fn add(self, rhs: Dimension) -> Dimension {
        match (self, rhs) {
            (Dimension::Finite(x), Dimension::Finite(y)) => Dimension::Finite(x + y),
            _ => Dimension::Infinite,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(d) => s.serialize_u64(*d),
            Dimension::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// The characters carrying global sections, described by one half-plane
/// condition per ray (plus residue conditions on rays without log poles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRegion {
    rank: usize,
    degree: usize,
    characteristic: u64,
    constraints: Vec<RayConstraint>,
}

impl SectionRegion {
    pub fn of(sheaf: &EquivariantSheaf) -> Self {
        SectionRegion {
            rank: sheaf.fan().rank(),
            degree: sheaf.degree(),
            characteristic: sheaf.characteristic(),
            constraints: sheaf.constraints(),
        }
    }

    pub fn constraints(&self) -> &[RayConstraint] {
        &self.constraints
    }

    fn arrangement(&self) -> Arrangement {
        Arrangement::new(self.rank, self.constraints.iter().map(|c| (c.ray, c.twist)).collect())
    }

    pub fn sections_at<F: Field>(&self, ctx: &F, m: Vector) -> Subspace<F> {
        let refs: Vec<&RayConstraint> = self.constraints.iter().collect();
        sections_under(ctx, self.rank, self.degree, &refs, m)
    }

    pub fn dim_at(&self, m: Vector) -> usize {
        self.sections_at(&Rational::zero(), m).dim()
    }

    /// Human-readable conditions, e.g. `m1 >= -1` or `m1 + m2 >= 0`.
    pub fn conditions(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.constraints {
            let form = linear_form(c.ray, self.rank);
            out.push(format!("{form} >= {}", -c.twist));
            if !c.log_pole && self.degree > 0 {
                out.push(format!("{form} = {} => residue along ({}) vanishes", -c.twist, ray_text(c.ray, self.rank)));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Total dimension: finite iff every cell with sections is bounded.
    pub fn dimension(&self) -> Dimension {
        with_field(self.characteristic, |field| match field {
            FieldCtx::Rational(z) => self.dimension_over(&z),
            FieldCtx::Prime(z) => self.dimension_over(&z),
        })
    }

    fn dimension_over<F: Field>(&self, ctx: &F) -> Dimension {
        let arr = self.arrangement();
        let mut cache: HashMap<SignPattern, usize> = HashMap::new();
        let mut total = 0u64;
        for m in arr.points(arr.radius()) {
            let signs = arr.signs(m);
            let d = *cache.entry(signs.clone()).or_insert_with(|| self.sections_at(ctx, m).dim());
            if d > 0 && arr.is_unbounded(&signs) {
                return Dimension::Infinite;
            }
            total += d as u64;
        }
        Dimension::Finite(total)
    }

    /// A character where the two regions carry different sections, if any.
    /// Both regions must live in the same lattice with the same degree.
    pub fn first_difference(&self, other: &SectionRegion) -> Result<Option<Vector>> {
        if (self.rank, self.degree, self.characteristic) != (other.rank, other.degree, other.characteristic) {
            return Err(Error::Mismatch("regions of different sheaf types".into()));
        }
        Ok(with_field(self.characteristic, |field| match field {
            FieldCtx::Rational(z) => self.first_difference_over(&z, other),
            FieldCtx::Prime(z) => self.first_difference_over(&z, other),
        }))
    }

    fn first_difference_over<F: Field>(&self, ctx: &F, other: &SectionRegion) -> Option<Vector> {
        let forms = self.constraints.iter().chain(&other.constraints).map(|c| (c.ray, c.twist)).collect();
        let arr = Arrangement::new(self.rank, forms);
        let mut seen: HashSet<SignPattern> = HashSet::new();
        let found = arr.points(arr.radius()).find(|&m| {
            if !seen.insert(arr.signs(m)) {
                return false;
            }
            !self.sections_at(ctx, m).same_as(&other.sections_at(ctx, m))
        });
        found
    }
}

impl Serialize for SectionRegion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SectionRegion", 2)?;
        st.serialize_field("conditions", &self.conditions())?;
        st.serialize_field("dimension", &self.dimension())?;
        st.end()
    }
}

fn linear_form(v: Vector, rank: usize) -> String {
    let mut parts = String::new();
    for (i, &c) in v[..rank].iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("m{}", i + 1);
        let mag = if c.abs() == 1 { var } else { format!("{}*{var}", c.abs()) };
        if parts.is_empty() {
            parts = if c < 0 { format!("-{mag}") } else { mag };
        } else {
            parts.push_str(if c < 0 { " - " } else { " + " });
            parts.push_str(&mag);
        }
    }
    parts
}

fn ray_text(v: Vector, rank: usize) -> String {
    v[..rank].iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) enum FieldCtx {
    Rational(Rational),
    Prime(Fq),
}

pub(crate) fn with_field<T>(p: u64, f: impl FnOnce(FieldCtx) -> T) -> T {
    if p == 0 {
        f(FieldCtx::Rational(Rational::zero()))
    } else {
        let field = FiniteField::prime(p).expect("characteristic is validated as prime");
        f(FieldCtx::Prime(Fq::zero(&field)))
    }
}

/// Čech cohomology over the cover by maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h0: Dimension,
    pub h0_region: SectionRegion,
    pub h1: Dimension,
    /// Characters with nonzero `H^1` in bounded cells, sorted. When `h1` is
    /// infinite this lists only the bounded part.
    pub h1_support: Vec<Vector>,
    rank: usize,
}

impl CohomologyReport {
    /// `H^i` for any `i`; zero from degree 2 on.
    pub fn h(&self, i: usize) -> Dimension {
        match i {
            0 => self.h0,
            1 => self.h1,
            _ => Dimension::Finite(0),
        }
    }

    pub fn higher_vanish(&self) -> bool {
        self.h1.is_zero()
    }
}

impl Serialize for CohomologyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum H0<'a> {
            Dim(Dimension),
            Region(&'a SectionRegion),
        }
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Entry<'a> {
            H0(H0<'a>),
            Dim(Dimension),
        }
        let h0 = match self.h0 {
            Dimension::Finite(_) => H0::Dim(self.h0),
            Dimension::Infinite => H0::Region(&self.h0_region),
        };
        let support: Vec<&[i64]> = self.h1_support.iter().map(|m| &m[..self.rank]).collect();
        let mut st = s.serialize_struct("CohomologyReport", 2)?;
        st.serialize_field("h", &[Entry::H0(h0), Entry::Dim(self.h1), Entry::Dim(self.h(2))])?;
        st.serialize_field("support", &support)?;
        st.end()
    }
}

/// Character-by-character Čech cohomology on a fan with one or two maximal
/// cones.
pub fn cech_h(sheaf: &EquivariantSheaf) -> Result<CohomologyReport> {
    let cones = sheaf.fan().cones().len();
    if cones > 2 {
        return Err(Error::UnsupportedFanShape(format!("{cones} maximal cones; at most 2 are supported")));
    }
    let h0_region = SectionRegion::of(sheaf);
    let h0 = h0_region.dimension();
    let (h1, h1_support) = with_field(sheaf.characteristic(), |field| match field {
        FieldCtx::Rational(z) => h1_over(&z, sheaf),
        FieldCtx::Prime(z) => h1_over(&z, sheaf),
    });
    Ok(CohomologyReport { h0, h0_region, h1, h1_support, rank: sheaf.fan().rank() })
}

/// `h^1(m) = dim V01 - dim(V0 + V1)` for the two charts and their overlap.
pub fn h1_at<F: Field>(ctx: &F, sheaf: &EquivariantSheaf, m: Vector) -> usize {
    let cones = sheaf.fan().cones();
    if cones.len() < 2 {
        return 0;
    }
    let overlap = sheaf.fan().common_face(0, 1);
    let v0 = sheaf.sections_on(ctx, &cones[0], m);
    let v1 = sheaf.sections_on(ctx, &cones[1], m);
    let v01 = sheaf.sections_on(ctx, &overlap, m);
    v01.dim() - v0.sum(&v1).dim()
}

fn h1_over<F: Field>(ctx: &F, sheaf: &EquivariantSheaf) -> (Dimension, Vec<Vector>) {
    if sheaf.fan().cones().len() < 2 {
        return (Dimension::Finite(0), Vec::new());
    }
    let arr = Arrangement::new(sheaf.fan().rank(), sheaf.constraints().iter().map(|c| (c.ray, c.twist)).collect());
    let mut cache: HashMap<SignPattern, usize> = HashMap::new();
    let mut total = 0u64;
    let mut infinite = false;
    let mut support = Vec::new();
    for m in arr.points(arr.radius()) {
        let signs = arr.signs(m);
        let h = *cache.entry(signs.clone()).or_insert_with(|| h1_at(ctx, sheaf, m));
        if h == 0 {
            continue;
        }
        if arr.is_unbounded(&signs) {
            infinite = true;
        } else {
            total += h as u64;
            support.push(m);
        }
    }
    support.sort();
    let dim = if infinite { Dimension::Infinite } else { Dimension::Finite(total) };
    (dim, support)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::toric::{Fan, QDivisor, StandardFan};

    fn line_bundle(d: i64) -> EquivariantSheaf {
        EquivariantSheaf::divisorial(&Fan::proj_line(), &QDivisor::prime(0, Rational::from(d))).unwrap()
    }

    #[test]
    fn projective_line_bundles() {
        for d in -8..=8 {
            let r = cech_h(&line_bundle(d)).unwrap();
            assert_eq!(r.h0, Dimension::Finite((d + 1).max(0) as u64), "d = {d}");
            assert_eq!(r.h1, Dimension::Finite((-d - 1).max(0) as u64), "d = {d}");
        }
        let at_zero = cech_h(&line_bundle(-2)).unwrap();
        assert_eq!(at_zero.h1_support, vec![[1, 0]]);
        // the same bundle written as -2 times the point at infinity
        let at_infinity = QDivisor::prime(1, Rational::from(-2));
        let r = cech_h(&EquivariantSheaf::divisorial(&Fan::proj_line(), &at_infinity).unwrap()).unwrap();
        assert_eq!(r.h1_support, vec![[-1, 0]]);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"h":[0,1,0],"support":[[-1]]}"#);
    }

    #[test]
    fn projective_line_differentials() {
        let omega = EquivariantSheaf::log_differential(&Fan::proj_line(), 1, &BTreeSet::new(), &QDivisor::zero()).unwrap();
        let r = cech_h(&omega).unwrap();
        assert_eq!((r.h0, r.h1), (Dimension::Finite(0), Dimension::Finite(1)));
        assert_eq!(r.h1_support, vec![[0, 0]]);
    }

    #[test]
    fn blowup_of_twice_the_exceptional_curve() {
        let blow = Fan::standard(StandardFan::BlowupAffinePlane);
        let sheaf = EquivariantSheaf::divisorial(&blow, &QDivisor::prime(1, Rational::from(2))).unwrap();
        let r = cech_h(&sheaf).unwrap();
        assert_eq!(r.h1, Dimension::Finite(1));
        assert_eq!(r.h1_support, vec![[-1, -1]]);
        assert_eq!(r.h0, Dimension::Infinite);
    }

    #[test]
    fn delta_zero_multiples_of_the_zero_section() {
        for k in 0..6 {
            let sheaf = EquivariantSheaf::divisorial(&Fan::delta(0), &QDivisor::prime(1, Rational::from(k))).unwrap();
            assert_eq!(cech_h(&sheaf).unwrap().h1, Dimension::Finite(0));
        }
    }

    #[test]
    fn infinite_first_cohomology_is_reported() {
        // Ω^1 on Δ_0 without log poles along the outer rays: residues along m1 = 0
        let log = BTreeSet::from([1]);
        let sheaf = EquivariantSheaf::log_differential(&Fan::delta(0), 1, &log, &QDivisor::zero()).unwrap();
        assert_eq!(cech_h(&sheaf).unwrap().h1, Dimension::Infinite);
    }

    #[test]
    fn too_many_cones_rejected() {
        let (sub, _) = crate::toric::star_subdivision(&Fan::delta(1), [0, 1]).unwrap();
        let sheaf = EquivariantSheaf::divisorial(&sub, &QDivisor::zero()).unwrap();
        assert!(matches!(cech_h(&sheaf), Err(Error::UnsupportedFanShape(_))));
    }

    #[test]
    fn region_conditions_and_equality() {
        let a2 = Fan::affine_plane();
        let d = QDivisor::prime(0, Rational::from(1));
        let region = SectionRegion::of(&EquivariantSheaf::divisorial(&a2, &d).unwrap());
        assert_eq!(region.conditions(), vec!["m1 >= -1".to_string(), "m2 >= 0".to_string()]);
        let (blow, map) = crate::toric::star_subdivision(&a2, [0, 1]).unwrap();
        let up = map.pullback(&d).unwrap();
        let region_up = SectionRegion::of(&EquivariantSheaf::divisorial(&blow, &up).unwrap());
        assert_eq!(region.first_difference(&region_up).unwrap(), None);
        let shifted = SectionRegion::of(&EquivariantSheaf::divisorial(&a2, &QDivisor::zero()).unwrap());
        assert!(region.first_difference(&shifted).unwrap().is_some());
    }

    #[test]
    fn characteristic_changes_residue_rank() {
        // Ω^1 on Δ_3, no log poles on the outer rays: rows (1,0) and (-1,3)
        let fan = Fan::delta(3);
        let log = BTreeSet::from([1]);
        let sheaf = EquivariantSheaf::log_differential(&fan, 1, &log, &QDivisor::zero()).unwrap();
        let q_dim = SectionRegion::of(&sheaf).dim_at([0, 0]);
        let region3 = SectionRegion::of(&sheaf.clone().with_characteristic(3));
        let f3 = Fq::zero(&FiniteField::prime(3).unwrap());
        assert_eq!(q_dim, 0);
        assert_eq!(region3.sections_at(&f3, [0, 0]).dim(), 1);
    }
}
