use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice vector (or character). Rank-1 lattices use the first slot only.
pub type Vector = [i64; 2];

pub fn det(a: Vector, b: Vector) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn dot(a: Vector, b: Vector) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Index of a ray within its fan.
pub type RayId = usize;

/// A smooth complete-or-not fan in a lattice of rank 1 or 2, stored by its
/// rays and maximal cones.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanData", into = "FanData")]
pub struct Fan {
    rank: usize,
    rays: Vec<Vector>,
    cones: Vec<Vec<RayId>>,
}

#[derive(Serialize, Deserialize)]
struct FanData {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<RayId>>,
}

impl TryFrom<FanData> for Fan {
    type Error = Error;

    fn try_from(d: FanData) -> Result<Self> {
        let rays = d
            .rays
            .iter()
            .map(|r| match (d.rank, r.as_slice()) {
                (1, [x]) => Ok([*x, 0]),
                (2, [x, y]) => Ok([*x, *y]),
                _ => Err(Error::InvalidFan(format!("ray {r:?} does not match rank {}", d.rank))),
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::new(d.rank, rays, d.cones)
    }
}

impl From<Fan> for FanData {
    fn from(f: Fan) -> Self {
        let rays = f.rays.iter().map(|r| r[..f.rank].to_vec()).collect();
        FanData { rank: f.rank, rays, cones: f.cones }
    }
}

/// The shapes with a closed-form construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardFan {
    AffinePlane,
    AffineLine,
    ProjLine,
    /// Total space of `O(-n)` over the projective line.
    Delta(u32),
    BlowupAffinePlane,
}

impl Fan {
    /// Build and validate a fan from rays and maximal cones.
    pub fn new(rank: usize, rays: Vec<Vector>, cones: Vec<Vec<RayId>>) -> Result<Self> {
        let fan = Fan { rank, rays, cones };
        fan.validate()?;
        Ok(fan)
    }

    pub fn standard(kind: StandardFan) -> Fan {
        let (rank, rays, cones) = match kind {
            StandardFan::AffinePlane => (2, vec![[1, 0], [0, 1]], vec![vec![0, 1]]),
            StandardFan::AffineLine => (1, vec![[1, 0]], vec![vec![0]]),
            StandardFan::ProjLine => (1, vec![[1, 0], [-1, 0]], vec![vec![0], vec![1]]),
            StandardFan::Delta(n) => {
                (2, vec![[1, 0], [0, 1], [-1, i64::from(n)]], vec![vec![0, 1], vec![1, 2]])
            }
            StandardFan::BlowupAffinePlane => {
                (2, vec![[1, 0], [1, 1], [0, 1]], vec![vec![0, 1], vec![1, 2]])
            }
        };
        Fan::new(rank, rays, cones).expect("standard fans are valid")
    }

    pub fn affine_plane() -> Fan {
        Self::standard(StandardFan::AffinePlane)
    }

    pub fn proj_line() -> Fan {
        Self::standard(StandardFan::ProjLine)
    }

    pub fn delta(n: u32) -> Fan {
        Self::standard(StandardFan::Delta(n))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn ray(&self, id: RayId) -> Vector {
        self.rays[id]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Vec<RayId>] {
        &self.cones
    }

    pub fn ray_id(&self, v: Vector) -> Option<RayId> {
        self.rays.iter().position(|r| *r == v)
    }

    fn validate(&self) -> Result<()> {
        if self.rank != 1 && self.rank != 2 {
            return Err(Error::InvalidFan(format!("lattice rank {} unsupported", self.rank)));
        }
        for (i, r) in self.rays.iter().enumerate() {
            if self.rank == 1 && r[1] != 0 {
                return Err(Error::InvalidFan(format!("ray {i} has a second coordinate in rank 1")));
            }
            if r[0].gcd(&r[1]) != 1 {
                return Err(Error::InvalidFan(format!("ray {i} = {r:?} is not primitive")));
            }
        }
        let distinct: BTreeSet<Vector> = self.rays.iter().copied().collect();
        if distinct.len() != self.rays.len() {
            return Err(Error::InvalidFan("repeated ray".into()));
        }
        if self.cones.is_empty() {
            return Err(Error::InvalidFan("no maximal cones".into()));
        }
        let mut used = vec![false; self.rays.len()];
        for (ci, cone) in self.cones.iter().enumerate() {
            if cone.len() != self.rank {
                return Err(Error::InvalidFan(format!("cone {ci} is not of full dimension")));
            }
            for &r in cone {
                if r >= self.rays.len() {
                    return Err(Error::InvalidFan(format!("cone {ci} references missing ray {r}")));
                }
                used[r] = true;
            }
            if self.rank == 2 && det(self.rays[cone[0]], self.rays[cone[1]]).abs() != 1 {
                return Err(Error::InvalidFan(format!("cone {ci} is not smooth")));
            }
        }
        if let Some(r) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!("ray {r} lies in no maximal cone")));
        }
        // cones meet along common faces: no generator of one cone may lie in
        // another cone unless it is one of that cone's generators
        for (ci, a) in self.cones.iter().enumerate() {
            for (cj, b) in self.cones.iter().enumerate() {
                if ci == cj {
                    continue;
                }
                if BTreeSet::from_iter(a) == BTreeSet::from_iter(b) {
                    return Err(Error::InvalidFan(format!("cones {ci} and {cj} coincide")));
                }
                for &r in b {
                    if !a.contains(&r) && self.cone_contains(ci, self.rays[r]) {
                        return Err(Error::InvalidFan(format!("cones {ci} and {cj} overlap")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coordinates of `w` in the basis of a maximal cone's generators, if `w`
    /// lies in that cone. Smoothness makes them integers.
    pub fn cone_coordinates(&self, cone: usize, w: Vector) -> Option<Vec<i64>> {
        let gens = &self.cones[cone];
        if self.rank == 1 {
            let v = self.rays[gens[0]][0];
            let lambda = w[0] * v; // v = +-1
            return (lambda >= 0).then(|| vec![lambda]);
        }
        let (a, b) = (self.rays[gens[0]], self.rays[gens[1]]);
        let d = det(a, b);
        let lambda = det(w, b) * d; // d = +-1, so division is multiplication
        let mu = det(a, w) * d;
        (lambda >= 0 && mu >= 0).then(|| vec![lambda, mu])
    }

    pub fn cone_contains(&self, cone: usize, w: Vector) -> bool {
        self.cone_coordinates(cone, w).is_some()
    }

    /// A maximal cone containing `w`, with `w`'s coordinates in its generators.
    pub fn locate(&self, w: Vector) -> Option<(usize, Vec<i64>)> {
        (0..self.cones.len()).find_map(|c| self.cone_coordinates(c, w).map(|x| (c, x)))
    }

    /// Position of the maximal cone with exactly these generators.
    pub fn find_cone(&self, gens: &[RayId]) -> Option<usize> {
        let want: BTreeSet<_> = gens.iter().collect();
        self.cones.iter().position(|c| c.iter().collect::<BTreeSet<_>>() == want)
    }

    /// Same rays and cones up to reordering.
    pub fn equivalent(&self, other: &Fan) -> bool {
        let key = |f: &Fan| -> (BTreeSet<Vector>, BTreeSet<BTreeSet<Vector>>) {
            (
                f.rays.iter().copied().collect(),
                f.cones.iter().map(|c| c.iter().map(|&r| f.rays[r]).collect()).collect(),
            )
        };
        self.rank == other.rank && key(self) == key(other)
    }

    /// Rays shared by two maximal cones (the generators of their intersection).
    pub fn common_face(&self, a: usize, b: usize) -> Vec<RayId> {
        self.cones[a].iter().copied().filter(|r| self.cones[b].contains(r)).collect()
    }
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<&[i64]> = self.rays.iter().map(|r| &r[..self.rank]).collect();
        f.debug_struct("Fan").field("rays", &rays).field("cones", &self.cones).finish()
    }
}
