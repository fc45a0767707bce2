use std::sync::Arc;

use super::finite_field::{root_of_unity, FiniteField, Fq, MAX_EXTENSION_DEGREE};
use super::laurent::Laurent;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// The tame totally ramified extension `L' = L(t')` with `t'^e = t` over a
/// coefficient field `F_q` that contains the `e`-th roots of unity.
#[derive(Clone, Debug)]
pub struct KummerExtension {
    e: u64,
    field: Arc<FiniteField>,
    zeta: Fq,
}

impl KummerExtension {
    pub fn new(field: &Arc<FiniteField>, e: u64) -> Result<Self> {
        if e == 0 {
            return Err(Error::NonKummer("ramification index must be positive".into()));
        }
        if e % field.p() == 0 {
            return Err(Error::NonKummer(format!("p = {} divides e = {e}", field.p())));
        }
        let zeta = root_of_unity(field, e)?;
        Ok(KummerExtension { e, field: field.clone(), zeta })
    }

    /// Over the smallest `F_{p^k}` (`k <= 4`) containing `mu_e`.
    pub fn smallest(p: u64, e: u64) -> Result<Self> {
        if e == 0 || e % p == 0 {
            return Err(Error::NonKummer(format!("p = {p} divides e = {e}")));
        }
        let k = (1..=MAX_EXTENSION_DEGREE)
            .find(|&k| (p.pow(k as u32) - 1) % e == 0)
            .ok_or_else(|| Error::NonKummer(format!("mu_{e} is not contained in F_{{{p}^k}} for k <= 4")))?;
        Self::new(&FiniteField::new(p, k)?, e)
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// The chosen primitive `e`-th root of unity.
    pub fn zeta(&self) -> &Fq {
        &self.zeta
    }

    /// `zeta^j` for `j = 0..e`: the embeddings `t' -> zeta^j t'` over `L`.
    pub fn roots(&self) -> Vec<Fq> {
        (0..self.e).map(|j| self.zeta.pow(j)).collect()
    }

    /// Inclusion `L -> L'`, `t -> t'^e`.
    pub fn include<F: Field>(&self, f: &Laurent<F>) -> Result<Laurent<F>> {
        f.substitute(&f.ctx().one_like(), self.e as i64)
    }

    /// Inverse of [`include`](Self::include) on series in `t'^e`.
    pub fn descend<F: Ring>(&self, f: &Laurent<F>) -> Result<Laurent<F>> {
        f.compress_exponents(self.e as i64)
    }

    /// Reject coefficient fields that differ from the extension's.
    pub fn check_field(&self, field: &Arc<FiniteField>) -> Result<()> {
        if **field != *self.field {
            return Err(Error::Mismatch(format!(
                "coefficients in F_{} but the extension is over F_{}",
                field.order(),
                self.field.order()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_fields() {
        for (p, e, q) in [(3, 2, 3), (3, 4, 9), (5, 2, 5), (5, 3, 25), (5, 4, 5), (2, 3, 4), (7, 3, 7)] {
            let ext = KummerExtension::smallest(p, e).unwrap();
            assert_eq!(ext.field().order(), q, "p={p} e={e}");
            assert_eq!(ext.zeta().multiplicative_order(), Some(e));
        }
    }

    #[test]
    fn rejects_wild_and_missing_roots() {
        assert!(matches!(KummerExtension::smallest(3, 3), Err(Error::NonKummer(_))));
        assert!(matches!(KummerExtension::smallest(2, 4), Err(Error::NonKummer(_))));
        let f3 = FiniteField::prime(3).unwrap();
        assert!(matches!(KummerExtension::new(&f3, 4), Err(Error::NonKummer(_))));
    }

    #[test]
    fn include_then_descend() {
        let ext = KummerExtension::smallest(5, 3).unwrap();
        let ctx = Fq::zero(ext.field());
        let f = Laurent::from_terms(&ctx, [(-2, Fq::from_i64(ext.field(), 3)), (1, ctx.one_like())], None);
        let up = ext.include(&f).unwrap();
        assert_eq!(up.valuation().finite(), Some(-6));
        assert_eq!(ext.descend(&up).unwrap(), f);
    }
}
