//! Integer cells of a line arrangement in the character lattice.
//!
//! Every quantity computed per character depends only on the sign pattern
//! of the affine forms `<m, v> + n`. The integer characters with a given
//! pattern are the lattice points of a polyhedron `P` whose facets lie on
//! lines `<m, v> = -n + j`, `j in {-1, 0, 1}`. Writing a lattice point of `P`
//! as a convex combination of vertices plus `mu_1 d_1 + mu_2 d_2` along the
//! primitive recession rays and subtracting `floor(mu_i) d_i` gives another
//! lattice point of `P` of max-norm at most `V + 2D`, where `V` bounds the
//! vertices and `D` the rays. So scanning that box meets every nonempty cell,
//! and a bounded cell lies entirely inside it.

use super::super::toric::{det, dot, Vector};

#[derive(Clone, Debug)]
pub struct Arrangement {
    rank: usize,
    forms: Vec<(Vector, i64)>,
}

/// Sign of each affine form at a character: -1, 0 or 1.
pub type SignPattern = Vec<i8>;

impl Arrangement {
    /// Affine forms `m -> <m, v> + n`. In rank 2 the normals must span the
    /// plane (true for any fan with a full-dimensional cone).
    pub fn new(rank: usize, forms: Vec<(Vector, i64)>) -> Self {
        Arrangement { rank, forms }
    }

    pub fn signs(&self, m: Vector) -> SignPattern {
        self.forms.iter().map(|&(v, n)| (dot(m, v) + n).signum() as i8).collect()
    }

    /// Box radius guaranteed to meet every nonempty cell.
    pub fn radius(&self) -> i64 {
        let offsets = |n: i64| [-n - 1, -n, -n + 1];
        let mut vertex_bound = 0i64;
        let mut ray_bound = 1i64;
        for (i, &(v, n)) in self.forms.iter().enumerate() {
            ray_bound = ray_bound.max(v[0].abs()).max(v[1].abs());
            if self.rank == 1 {
                for r in offsets(n) {
                    vertex_bound = vertex_bound.max(r.abs());
                }
                continue;
            }
            for &(w, k) in &self.forms[i + 1..] {
                let d = det(v, w);
                if d == 0 {
                    continue;
                }
                for r in offsets(n) {
                    for s in offsets(k) {
                        let x = r * w[1] - v[1] * s;
                        let y = v[0] * s - w[0] * r;
                        let ceil_div = |a: i64| (a.abs() + d.abs() - 1) / d.abs();
                        vertex_bound = vertex_bound.max(ceil_div(x)).max(ceil_div(y));
                    }
                }
            }
        }
        vertex_bound + 2 * ray_bound
    }

    /// All characters in the box of the given radius.
    pub fn points(&self, radius: i64) -> impl Iterator<Item = Vector> + '_ {
        let second = if self.rank == 2 { radius } else { 0 };
        (-radius..=radius).flat_map(move |x| (-second..=second).map(move |y| [x, y]))
    }

    /// Whether the (nonempty) cell with this pattern has lattice points
    /// going off to infinity. Recession rays of a pointed planar polyhedron
    /// are perpendicular to one of its facet normals, so only those
    /// directions need testing.
    pub fn is_unbounded(&self, signs: &[i8]) -> bool {
        let candidates: Vec<Vector> = if self.rank == 1 {
            vec![[1, 0], [-1, 0]]
        } else {
            self.forms.iter().flat_map(|&(v, _)| [[-v[1], v[0]], [v[1], -v[0]]]).collect()
        };
        candidates.iter().any(|&d| {
            self.forms.iter().zip(signs).all(|(&(v, _), &s)| {
                let slope = dot(d, v);
                match s {
                    -1 => slope <= 0,
                    0 => slope == 0,
                    _ => slope >= 0,
                }
            })
        })
    }
}
