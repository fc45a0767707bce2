use super::vector::WittVector;
use crate::error::{Error, Result};
use crate::scalar::{Fq, KummerExtension, Laurent};

/// `Tr_{L'/L}` on `W_n`: the Witt sum of the `e` conjugates
/// `t' -> zeta^j t'`, read back in `t = t'^e`.
pub fn witt_kummer_trace(a: &WittVector<Laurent<Fq>>, ext: &KummerExtension) -> Result<WittVector<Laurent<Fq>>> {
    ext.check_field(a.coords()[0].ctx().field())?;
    if ext.field().p() != a.p() {
        return Err(Error::Mismatch(format!(
            "Witt vectors for p = {} over a field of characteristic {}",
            a.p(),
            ext.field().p()
        )));
    }
    let mut acc: Option<WittVector<Laurent<Fq>>> = None;
    for zeta in ext.roots() {
        let conj = a.try_map(|c| c.substitute(&zeta, 1))?;
        acc = Some(match acc {
            None => conj,
            Some(s) => s.add(&conj)?,
        });
    }
    let sum = acc.expect("e >= 1");
    sum.try_map(|c| ext.descend(c))
}

/// `L -> L'` on every coordinate.
pub fn witt_include(a: &WittVector<Laurent<Fq>>, ext: &KummerExtension) -> Result<WittVector<Laurent<Fq>>> {
    a.try_map(|c| ext.include(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use crate::witt::{bk_member, bk_min_ceil};
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(ctx: &Fq, c: i64, k: i64) -> Laurent<Fq> {
        Laurent::monomial(Fq::from_i64(ctx.field(), c), k)
    }

    #[test]
    fn teichmuller_of_uniformizer_traces_to_zero() {
        let ext = KummerExtension::smallest(3, 2).unwrap();
        let ctx = Fq::zero(ext.field());
        let a = WittVector::new(3, vec![mono(&ctx, 1, 1), Laurent::zero(&ctx)]).unwrap();
        let tr = witt_kummer_trace(&a, &ext).unwrap();
        assert!(tr.is_zero());
    }

    #[test]
    fn trace_of_polar_vector() {
        let ext = KummerExtension::smallest(3, 2).unwrap();
        let ctx = Fq::zero(ext.field());
        let a = WittVector::new(3, vec![mono(&ctx, 1, -1), mono(&ctx, 1, -2)]).unwrap();
        let tr = witt_kummer_trace(&a, &ext).unwrap();
        assert_eq!(tr.coords(), &[Laurent::zero(&ctx), mono(&ctx, 2, -1)]);
    }

    #[test]
    fn trace_of_pullback_is_multiplication_by_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, e, n) in [(3, 2, 2), (5, 3, 2), (5, 4, 2), (3, 4, 3)] {
            let ext = KummerExtension::smallest(p, e).unwrap();
            let ctx = Fq::zero(ext.field());
            for _ in 0..5 {
                let coords = (0..n)
                    .map(|_| {
                        let terms: Vec<(i64, Fq)> =
                            (0..2).map(|_| (rng.gen_range(-3..3), Fq::random(ext.field(), &mut rng))).collect();
                        Laurent::from_terms(&ctx, terms, None)
                    })
                    .collect();
                let a = WittVector::new(p, coords).unwrap();
                let tr = witt_kummer_trace(&witt_include(&a, &ext).unwrap(), &ext).unwrap();
                assert_eq!(tr, a.scale_int(e as i64), "p={p} e={e}");
            }
        }
    }

    #[test]
    fn trace_lowers_the_filtration_level() {
        let ext = KummerExtension::smallest(5, 2).unwrap();
        let ctx = Fq::zero(ext.field());
        let a = WittVector::new(5, vec![mono(&ctx, 2, -3), mono(&ctx, 1, -7)]).unwrap();
        let l = bk_min_ceil(&a).unwrap();
        let tr = witt_kummer_trace(&a, &ext).unwrap();
        for k in 0..=2 * l {
            let r = Rational::frac(k, 2);
            if bk_member(&a, &r).unwrap() {
                assert!(bk_member(&tr, &(&r / &Rational::from(2))).unwrap());
            }
        }
    }

    #[test]
    fn rejects_mismatched_fields() {
        let ext = KummerExtension::smallest(5, 3).unwrap();
        let ctx = Fq::zero(&crate::scalar::FiniteField::prime(5).unwrap());
        let a = WittVector::new(5, vec![Laurent::constant(ctx.one_like())]).unwrap();
        assert!(witt_kummer_trace(&a, &ext).is_err());
    }
}
