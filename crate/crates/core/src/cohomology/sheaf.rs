use std::collections::BTreeSet;

use serde::Serialize;

use super::linalg::Subspace;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};
use crate::toric::{dot, Fan, QDivisor, RayId, Vector};

/// A torus-equivariant sheaf of the form `Ω^q(log S)(F)` with `F` an integral
/// divisor, presented by per-ray data on a fan. The coefficient space at a
/// character is spanned by the wedge monomials of `dlog` of the lattice
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantSheaf {
    fan: Fan,
    degree: usize,
    twists: Vec<i64>,
    log_poles: Vec<bool>,
    characteristic: u64,
}

/// How one ray constrains the coefficients at a given character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayCondition {
    /// Order along the ray is negative: no sections.
    Excluded,
    /// Order exactly zero without a log pole: the residue must vanish.
    Residue,
    Free,
}

/// One per-ray half-plane condition, with the residue flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayConstraint {
    pub ray: Vector,
    pub twist: i64,
    pub log_pole: bool,
}

impl RayConstraint {
    pub fn condition(&self, degree: usize, m: Vector) -> RayCondition {
        let s = dot(m, self.ray) + self.twist;
        if s < 0 {
            RayCondition::Excluded
        } else if s == 0 && !self.log_pole && degree > 0 {
            RayCondition::Residue
        } else {
            RayCondition::Free
        }
    }
}

/// Increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// Rows expressing "contraction with `v` vanishes" on degree-`q` wedge
/// coefficients in a rank-`rank` lattice.
pub fn contraction_rows(rank: usize, degree: usize, v: Vector) -> Vec<Vec<i64>> {
    if degree == 0 {
        return Vec::new();
    }
    let basis = subsets(rank, degree);
    subsets(rank, degree - 1)
        .into_iter()
        .map(|lower| {
            basis
                .iter()
                .map(|upper| {
                    let extra: Vec<usize> = upper.iter().copied().filter(|i| !lower.contains(i)).collect();
                    match extra.as_slice() {
                        [i] if upper.len() == lower.len() + 1 && lower.iter().all(|j| upper.contains(j)) => {
                            let pos = upper.iter().position(|x| x == i).unwrap();
                            let sign = if pos % 2 == 0 { 1 } else { -1 };
                            sign * v[*i]
                        }
                        _ => 0,
                    }
                })
                .collect()
        })
        .collect()
}

/// Sections at a character cut out by a set of ray constraints.
pub fn sections_under<F: Field>(
    ctx: &F,
    rank: usize,
    degree: usize,
    constraints: &[&RayConstraint],
    m: Vector,
) -> Subspace<F> {
    let dim = subsets(rank, degree).len();
    let mut rows = Vec::new();
    for c in constraints {
        match c.condition(degree, m) {
            RayCondition::Excluded => return Subspace::zero(dim),
            RayCondition::Residue => {
                for row in contraction_rows(rank, degree, c.ray) {
                    rows.push(row.into_iter().map(|x| ctx.one_like().scale_int(x)).collect());
                }
            }
            RayCondition::Free => {}
        }
    }
    Subspace::kernel(ctx, dim, rows)
}

impl EquivariantSheaf {
    pub fn new(fan: Fan, degree: usize, twists: Vec<i64>, log_poles: Vec<bool>) -> Result<Self> {
        if degree > fan.rank() {
            return Err(Error::Precondition(format!("degree {degree} exceeds lattice rank {}", fan.rank())));
        }
        if twists.len() != fan.num_rays() || log_poles.len() != fan.num_rays() {
            return Err(Error::Mismatch("per-ray data does not match the number of rays".into()));
        }
        Ok(EquivariantSheaf { fan, degree, twists, log_poles, characteristic: 0 })
    }

    /// `O(floor(D))`.
    pub fn divisorial(fan: &Fan, d: &QDivisor) -> Result<Self> {
        let twists = floor_twists(fan, d)?;
        Self::new(fan.clone(), 0, twists, vec![true; fan.num_rays()])
    }

    /// `Ω^q(log S)(floor(E))`.
    pub fn log_differential(fan: &Fan, degree: usize, log_rays: &BTreeSet<RayId>, twist: &QDivisor) -> Result<Self> {
        if let Some(r) = log_rays.iter().find(|&&r| r >= fan.num_rays()) {
            return Err(Error::Mismatch(format!("log ray {r} is not a ray of the fan")));
        }
        let twists = floor_twists(fan, twist)?;
        let log = (0..fan.num_rays()).map(|r| log_rays.contains(&r)).collect();
        Self::new(fan.clone(), degree, twists, log)
    }

    /// Compute dimensions over `F_p` instead of `Q`. Residue conditions from
    /// different rays can become dependent modulo `p`.
    pub fn with_characteristic(mut self, p: u64) -> Self {
        self.characteristic = p;
        self
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn log_poles(&self) -> &[bool] {
        &self.log_poles
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Rank of the coefficient space: `binomial(lattice rank, q)`.
    pub fn rank(&self) -> usize {
        subsets(self.fan.rank(), self.degree).len()
    }

    pub fn constraint(&self, ray: RayId) -> RayConstraint {
        RayConstraint { ray: self.fan.ray(ray), twist: self.twists[ray], log_pole: self.log_poles[ray] }
    }

    pub fn constraints(&self) -> Vec<RayConstraint> {
        (0..self.fan.num_rays()).map(|r| self.constraint(r)).collect()
    }

    /// Sections over the affine chart of the cone spanned by `rays`
    /// (all rays of a maximal cone, a shared face, or none).
    pub fn sections_on<F: Field>(&self, ctx: &F, rays: &[RayId], m: Vector) -> Subspace<F> {
        let cs: Vec<RayConstraint> = rays.iter().map(|&r| self.constraint(r)).collect();
        let refs: Vec<&RayConstraint> = cs.iter().collect();
        sections_under(ctx, self.fan.rank(), self.degree, &refs, m)
    }

    /// Sections over a maximal cone, as a subspace of `Q^rank`.
    pub fn sections_at_character(&self, cone: usize, m: Vector) -> Subspace<Rational> {
        self.sections_on(&Rational::zero(), &self.fan.cones()[cone], m)
    }
}

fn floor_twists(fan: &Fan, d: &QDivisor) -> Result<Vec<i64>> {
    if let Some(r) = d.max_ray().filter(|&r| r >= fan.num_rays()) {
        return Err(Error::Mismatch(format!("divisor mentions ray {r} absent from the fan")));
    }
    Ok((0..fan.num_rays()).map(|r| d.coeff(r).floor_i64()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::StandardFan;

    #[test]
    fn contraction_rows_by_degree() {
        assert!(contraction_rows(2, 0, [1, 2]).is_empty());
        assert_eq!(contraction_rows(2, 1, [3, -1]), vec![vec![3, -1]]);
        // i_v(e0 ^ e1) = v0 e1 - v1 e0
        assert_eq!(contraction_rows(2, 2, [3, -1]), vec![vec![1], vec![3]]);
        assert_eq!(contraction_rows(1, 1, [-1, 0]), vec![vec![-1]]);
    }

    #[test]
    fn sections_examples() {
        let p1 = Fan::proj_line();
        let omega = EquivariantSheaf::log_differential(&p1, 1, &BTreeSet::new(), &QDivisor::zero()).unwrap();
        assert_eq!(omega.sections_at_character(0, [0, 0]).dim(), 0);
        assert_eq!(omega.sections_at_character(0, [1, 0]).dim(), 1);

        let blow = Fan::standard(StandardFan::BlowupAffinePlane);
        let d = QDivisor::prime(1, Rational::from(2));
        let o2e = EquivariantSheaf::divisorial(&blow, &d).unwrap();
        assert_eq!(o2e.sections_at_character(0, [-1, -1]).dim(), 0);
    }

    #[test]
    fn sheaf_constructors() {
        let p1 = Fan::proj_line();
        let half = EquivariantSheaf::divisorial(&p1, &QDivisor::prime(0, Rational::frac(1, 2))).unwrap();
        assert_eq!(half.twists(), &[0, 0]);
        let three = EquivariantSheaf::divisorial(&p1, &QDivisor::prime(0, Rational::from(3))).unwrap();
        assert_eq!(three.twists(), &[3, 0]);

        let a2 = Fan::affine_plane();
        let all = BTreeSet::from([0, 1]);
        let free = EquivariantSheaf::log_differential(&a2, 1, &all, &QDivisor::prime(0, Rational::one())).unwrap();
        assert_eq!(free.rank(), 2);
        assert_eq!(free.twists(), &[1, 0]);
        assert_eq!(free.sections_at_character(0, [-1, 0]).dim(), 2);

        let blow = Fan::standard(StandardFan::BlowupAffinePlane);
        let top = EquivariantSheaf::log_differential(&blow, 2, &BTreeSet::from([0, 1, 2]), &QDivisor::zero()).unwrap();
        assert_eq!(top.rank(), 1);
        assert_eq!(top.twists(), &[0, 0, 0]);
        assert!(EquivariantSheaf::log_differential(&a2, 3, &all, &QDivisor::zero()).is_err());
    }
}
