use crate::scalar::Field;

/// Reduce rows to reduced row echelon form, dropping zero rows. Returns the
/// pivot column of each surviving row.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A linear subspace of `F^n`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ctx: &F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { ctx.one_like() } else { ctx.zero_like() }).collect())
            .collect();
        Subspace { ambient, basis }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let (basis, _) = rref(vectors, ambient);
        Subspace { ambient, basis }
    }

    /// Common zero set of the given linear functionals.
    pub fn kernel(ctx: &F, ambient: usize, functionals: Vec<Vec<F>>) -> Self {
        let (rows, pivots) = rref(functionals, ambient);
        let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![ctx.zero_like(); ambient];
                v[f] = ctx.one_like();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = row[f].neg();
                }
                v
            })
            .collect();
        Self::span(ambient, basis)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned().collect())
    }

    /// Equality as subspaces (echelon bases are canonical).
    pub fn same_as(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Fq, Rational, Ring};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn kernel_and_sum() {
        let z = Rational::zero();
        let k = Subspace::kernel(&z, 2, vec![q(&[1, -2])]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![Rational::one(), Rational::frac(1, 2)]);
        let other = Subspace::kernel(&z, 2, vec![q(&[1, 1])]);
        assert_eq!(k.sum(&other).dim(), 2);
        assert!(k.sum(&k).same_as(&k));
        assert_eq!(Subspace::kernel(&z, 2, vec![q(&[1, 0]), q(&[0, 3])]).dim(), 0);
        assert_eq!(Subspace::kernel(&z, 1, vec![]).dim(), 1);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // rows (1,0) and (-1,3): independent over Q, dependent mod 3
        let z = Rational::zero();
        assert_eq!(Subspace::kernel(&z, 2, vec![q(&[1, 0]), q(&[-1, 3])]).dim(), 0);
        let f3 = Fq::zero(&FiniteField::prime(3).unwrap());
        let rows = vec![
            vec![f3.from_int_like(&1.into()), f3.zero_like()],
            vec![f3.from_int_like(&(-1).into()), f3.from_int_like(&3.into())],
        ];
        assert_eq!(Subspace::kernel(&f3, 2, rows).dim(), 1);
    }
}
