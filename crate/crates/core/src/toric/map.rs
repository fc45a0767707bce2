use std::collections::BTreeSet;

use super::divisor::QDivisor;
use super::fan::{det, Fan, RayId, Vector};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Integer matrix acting on column vectors. Rank-1 maps use entry `[0][0]`.
pub type Matrix = [[i64; 2]; 2];

pub const IDENTITY: Matrix = [[1, 0], [0, 1]];

pub fn apply(a: &Matrix, v: Vector) -> Vector {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// A toric morphism between fans of equal rank, induced by a lattice map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMap {
    matrix: Matrix,
    source: Fan,
    target: Fan,
}

impl FanMap {
    /// Validate the lattice map and cone compatibility. For rank-1 fans only
    /// `matrix[0][0]` is read.
    pub fn new(matrix: Matrix, source: Fan, target: Fan) -> Result<Self> {
        if source.rank() != target.rank() {
            return Err(Error::IncompatibleFanMap(format!(
                "source rank {} differs from target rank {}",
                source.rank(),
                target.rank()
            )));
        }
        let matrix = if source.rank() == 1 { [[matrix[0][0], 0], [0, 1]] } else { matrix };
        let d = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if d == 0 {
            return Err(Error::IncompatibleFanMap("matrix is singular".into()));
        }
        let map = FanMap { matrix, source, target };
        for (ci, cone) in map.source.cones().iter().enumerate() {
            let images: Vec<Vector> = cone.iter().map(|&r| map.image(r)).collect();
            let fits = (0..map.target.cones().len())
                .any(|tc| images.iter().all(|&w| map.target.cone_contains(tc, w)));
            if !fits {
                let gens: Vec<Vector> = cone.iter().map(|&r| map.source.ray(r)).collect();
                return Err(Error::IncompatibleFanMap(format!(
                    "image of source cone {ci} generated by {gens:?} lies in no target cone"
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(fan: &Fan) -> Self {
        Self::new(IDENTITY, fan.clone(), fan.clone()).expect("identity is compatible")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    fn image(&self, ray: RayId) -> Vector {
        apply(&self.matrix, self.source.ray(ray))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FanMap) -> Result<FanMap> {
        if other.source != self.target {
            return Err(Error::Mismatch("composed maps do not share a fan".into()));
        }
        FanMap::new(matmul(&other.matrix, &self.matrix), self.source.clone(), other.target.clone())
    }

    /// Pull back a Q-divisor on the target: the coefficient on a source ray
    /// is the target support function evaluated at the ray's image.
    pub fn pullback(&self, d: &QDivisor) -> Result<QDivisor> {
        if let Some(r) = d.max_ray().filter(|&r| r >= self.target.num_rays()) {
            return Err(Error::Mismatch(format!("divisor mentions ray {r} absent from the target fan")));
        }
        let mut out = QDivisor::zero();
        for r in 0..self.source.num_rays() {
            let w = self.image(r);
            let (cone, coords) = self.target.locate(w).ok_or_else(|| {
                Error::OutsideSupport(format!("image {:?} of source ray {r}", &w[..self.source.rank()]))
            })?;
            let mut value = Rational::zero();
            for (&g, &lambda) in self.target.cones()[cone].iter().zip(&coords) {
                value += &(Rational::from(lambda) * d.coeff(g));
            }
            out.set(r, value);
        }
        Ok(out)
    }
}

/// Subdivide a smooth maximal rank-2 cone at the sum of its generators.
/// The new ray is appended, and the returned identity map goes from the
/// subdivided fan back to the original.
pub fn star_subdivision(fan: &Fan, cone: [RayId; 2]) -> Result<(Fan, FanMap)> {
    let pos = (fan.rank() == 2).then(|| fan.find_cone(&cone)).flatten().ok_or_else(|| {
        Error::NotMaximalSmoothCone(format!("rays {cone:?} do not span a maximal cone of the fan"))
    })?;
    let [a, b] = cone;
    let (va, vb) = (fan.ray(a), fan.ray(b));
    if det(va, vb).abs() != 1 {
        return Err(Error::NotMaximalSmoothCone(format!("rays {cone:?} span a singular cone")));
    }
    let mut rays = fan.rays().to_vec();
    let new = rays.len();
    rays.push([va[0] + vb[0], va[1] + vb[1]]);
    let mut cones = fan.cones().to_vec();
    cones.splice(pos..=pos, [vec![a, new], vec![new, b]]);
    let sub = Fan::new(2, rays, cones)?;
    let map = FanMap::new(IDENTITY, sub.clone(), fan.clone())?;
    Ok((sub, map))
}

/// A smooth toric variety with an effective Q-divisor as modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricModulusPair {
    fan: Fan,
    modulus: QDivisor,
}

impl ToricModulusPair {
    pub fn new(fan: Fan, modulus: QDivisor) -> Result<Self> {
        if !modulus.is_effective() {
            return Err(Error::Precondition("modulus must be effective".into()));
        }
        if modulus.max_ray().is_some_and(|r| r >= fan.num_rays()) {
            return Err(Error::Mismatch("modulus mentions a ray outside the fan".into()));
        }
        Ok(ToricModulusPair { fan, modulus })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn modulus(&self) -> &QDivisor {
        &self.modulus
    }

    pub fn support_rays(&self) -> BTreeSet<RayId> {
        self.modulus.support()
    }

    /// The pair obtained by pulling the modulus back along `map`.
    pub fn pullback(&self, map: &FanMap) -> Result<ToricModulusPair> {
        if map.target() != &self.fan {
            return Err(Error::Mismatch("map does not land on this pair's fan".into()));
        }
        ToricModulusPair::new(map.source().clone(), map.pullback(&self.modulus)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::StandardFan;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    // ray indices on the Delta fans
    const D0: RayId = 0;
    const E: RayId = 1;
    const DINF: RayId = 2;

    #[test]
    fn theta_scales_the_outer_rays() {
        for n in 1..6 {
            let theta = FanMap::new([[n, 0], [0, 1]], Fan::delta(n as u32), Fan::delta(1)).unwrap();
            let d = QDivisor::from_pairs([(D0, q(1, 2)), (DINF, q(2, 3)), (E, q(5, 4))]);
            let pulled = theta.pullback(&d).unwrap();
            let want = QDivisor::from_pairs([(D0, q(n, 2)), (DINF, q(2 * n, 3)), (E, q(5, 4))]);
            assert_eq!(pulled, want);
        }
    }

    #[test]
    fn shear_pullback_matches_closed_form() {
        for n in 0..5i64 {
            for m in 0..=n {
                let psi = FanMap::new([[1, 0], [m, 1]], Fan::delta(n as u32), Fan::delta(0)).unwrap();
                let c = q(3, 7);
                let d = QDivisor::from_pairs([(D0, q(1, 1)), (E, c.clone())]);
                let want = QDivisor::from_pairs([
                    (D0, Rational::from(m) * &c + Rational::one()),
                    (DINF, Rational::from(n - m) * &c),
                    (E, c.clone()),
                ]);
                assert_eq!(psi.pullback(&d).unwrap(), want);
            }
        }
    }

    #[test]
    fn incompatible_maps_are_rejected() {
        let err = FanMap::new([[1, 0], [3, 1]], Fan::delta(2), Fan::delta(0)).unwrap_err();
        assert!(matches!(err, Error::IncompatibleFanMap(_)));
        let singular = FanMap::new([[1, 1], [1, 1]], Fan::affine_plane(), Fan::affine_plane());
        assert!(singular.is_err());
        let flip = FanMap::new([[-1, 0], [0, 1]], Fan::proj_line(), Fan::proj_line());
        assert!(flip.is_ok());
    }

    #[test]
    fn pullback_outside_support() {
        // proj_line -> affine_line with a positive matrix sends ray -1 outside
        let line = Fan::standard(StandardFan::AffineLine);
        let err = FanMap::new(IDENTITY, Fan::proj_line(), line);
        assert!(err.is_err());
    }

    #[test]
    fn blowup_is_star_subdivision() {
        let (sub, map) = star_subdivision(&Fan::affine_plane(), [0, 1]).unwrap();
        assert!(sub.equivalent(&Fan::standard(StandardFan::BlowupAffinePlane)));
        let d = QDivisor::from_pairs([(0, q(3, 2)), (1, q(1, 2))]);
        let pulled = map.pullback(&d).unwrap();
        assert_eq!(pulled.coeff(2), q(2, 1));
        assert_eq!(pulled.coeff(0), q(3, 2));
        assert_eq!(pulled.coeff(1), q(1, 2));

        let (sub1, _) = star_subdivision(&Fan::delta(1), [0, 1]).unwrap();
        assert_eq!(sub1.num_rays(), 4);
        assert!(matches!(star_subdivision(&Fan::delta(1), [0, 2]), Err(Error::NotMaximalSmoothCone(_))));
        assert!(star_subdivision(&Fan::proj_line(), [0, 1]).is_err());
    }

    #[test]
    fn modulus_pairs_pull_back() {
        let pair = ToricModulusPair::new(Fan::affine_plane(), QDivisor::prime(0, q(1, 1))).unwrap();
        let (_, map) = star_subdivision(pair.fan(), [0, 1]).unwrap();
        let up = pair.pullback(&map).unwrap();
        assert_eq!(up.support_rays(), BTreeSet::from([0, 2]));
        assert!(ToricModulusPair::new(Fan::affine_plane(), QDivisor::prime(0, q(-1, 1))).is_err());
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #[test]
        fn pullback_is_q_linear(
            a in prop::collection::vec(small_q(), 3),
            b in prop::collection::vec(small_q(), 3),
            s in small_q(),
            n in 0u32..5,
            m_frac in 0u32..=100,
        ) {
            let m = i64::from(m_frac * n / 100);
            let psi = FanMap::new([[1, 0], [m, 1]], Fan::delta(n), Fan::delta(0)).unwrap();
            let da = QDivisor::from_pairs(a.into_iter().enumerate());
            let db = QDivisor::from_pairs(b.into_iter().enumerate());
            let lhs = psi.pullback(&da.add(&db)).unwrap();
            let rhs = psi.pullback(&da).unwrap().add(&psi.pullback(&db).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(psi.pullback(&da.scale(&s)).unwrap(), psi.pullback(&da).unwrap().scale(&s));
        }

        #[test]
        fn pullback_respects_composition(a in prop::collection::vec(small_q(), 3), n in 1u32..5) {
            // star subdivision of Delta_n's first cone, then theta_n down to Delta_1
            let (sub, blow) = star_subdivision(&Fan::delta(n), [0, 1]).unwrap();
            let theta = FanMap::new([[i64::from(n), 0], [0, 1]], Fan::delta(n), Fan::delta(1)).unwrap();
            let both = blow.then(&theta).unwrap();
            prop_assert_eq!(both.source(), &sub);
            let d = QDivisor::from_pairs(a.into_iter().enumerate());
            let stepwise = blow.pullback(&theta.pullback(&d).unwrap()).unwrap();
            prop_assert_eq!(both.pullback(&d).unwrap(), stepwise);
        }

        #[test]
        fn subdivision_keeps_fans_valid(n in 0u32..8, which in 0usize..2) {
            let fan = Fan::delta(n);
            let cone = fan.cones()[which].clone();
            let (sub, _) = star_subdivision(&fan, [cone[0], cone[1]]).unwrap();
            prop_assert_eq!(sub.cones().len(), 3);
        }

        #[test]
        fn scaled_ceiling_is_left_limit(a in prop::collection::vec(small_q(), 3)) {
            let d = QDivisor::from_pairs(a.into_iter().enumerate());
            let s = d.scaled_ceiling();
            prop_assert!(s.threshold.is_positive());
            let half = &s.threshold * &Rational::frac(1, 2);
            let tiny = &s.threshold * &Rational::frac(1, 1000);
            prop_assert_eq!(d.ceil_of_scaled(&half), s.value.clone());
            prop_assert_eq!(d.ceil_of_scaled(&tiny), s.value.clone());
            if d.is_effective() {
                prop_assert_eq!(s.value, d.ceil());
            }
        }
    }
}
