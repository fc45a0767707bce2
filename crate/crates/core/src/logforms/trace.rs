use super::form::{LogForm, Series};
use crate::error::Result;
use crate::scalar::{Field, KummerExtension, Ring};

/// `Tr_{L'/L}` on forms over `L' = L(t')`, `t'^e = t`.
///
/// Components over `L'` are taken in the basis `{du, dlog t'}`. Since
/// `dlog t' = (1/e) dlog t`, the `dlog t'` slot is divided by `e`, and then
/// the field trace `sum_j g_j(t) t'^j -> e g_0(t)` is applied to each slot.
pub fn form_kummer_trace(w: &LogForm, ext: &KummerExtension) -> Result<LogForm> {
    ext.check_field(w.ctx().field())?;
    let e = ext.e() as i64;
    let e_inv = w.ctx().from_int_like(&e.into()).inv().expect("p does not divide e");
    let rescaled: Vec<Series> = w
        .components()
        .iter()
        .enumerate()
        .map(|(slot, c)| if dlog_slot(w.degree(), slot) { c.scale(&e_inv) } else { c.clone() })
        .collect();
    let comps = rescaled
        .iter()
        .map(|c| ext.descend(&c.filter_exponents(|k| k % e == 0)).map(|g| g.scale_int(e)))
        .collect::<Result<Vec<_>>>()?;
    LogForm::from_components(w.degree(), comps)
}

/// Pullback along `L -> L'`: `t -> t'^e` and `dlog t -> e dlog t'`.
pub fn form_include(w: &LogForm, ext: &KummerExtension) -> Result<LogForm> {
    let e = ext.e() as i64;
    let comps = w
        .components()
        .iter()
        .enumerate()
        .map(|(slot, c)| {
            let up = ext.include(c)?;
            Ok(if dlog_slot(w.degree(), slot) { up.scale_int(e) } else { up })
        })
        .collect::<Result<Vec<_>>>()?;
    LogForm::from_components(w.degree(), comps)
}

/// Whether a component slot carries a `dlog t` factor.
fn dlog_slot(degree: usize, slot: usize) -> bool {
    matches!((degree, slot), (1, 1) | (2, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logforms::{in_log_lattice, random_form};
    use crate::scalar::RatFunc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// The trace as a sum over the embeddings `t' -> zeta^j t'`, which fix
    /// `du` and `dlog t'`.
    fn trace_by_conjugates(w: &LogForm, ext: &KummerExtension) -> LogForm {
        let mut acc = LogForm::zero(w.ctx(), w.degree()).unwrap();
        for zeta in ext.roots() {
            let conj = w.try_map(|c| c.substitute(&RatFunc::constant(zeta.clone()), 1)).unwrap();
            acc = acc.add(&conj).unwrap();
        }
        let e_inv = w.ctx().from_int_like(&(ext.e() as i64).into()).inv().unwrap();
        let comps = acc
            .components()
            .iter()
            .enumerate()
            .map(|(slot, c)| {
                let c = if dlog_slot(w.degree(), slot) { c.scale(&e_inv) } else { c.clone() };
                ext.descend(&c).unwrap()
            })
            .collect();
        LogForm::from_components(w.degree(), comps).unwrap()
    }

    fn ctx(ext: &KummerExtension) -> RatFunc {
        RatFunc::constant(crate::scalar::Fq::zero(ext.field()))
    }

    #[test]
    fn trace_of_t_prime_dt_prime() {
        let ext = KummerExtension::smallest(3, 2).unwrap();
        let z = ctx(&ext);
        // t' dt' = t'^2 dlog t'
        let w = LogForm::dlog_t(&z).scale(&Series::monomial(z.one_like(), 2));
        let tr = form_kummer_trace(&w, &ext).unwrap();
        assert_eq!(tr, LogForm::one_form(Series::zero(&z), Series::monomial(z.one_like(), 1)));
    }

    #[test]
    fn off_diagonal_powers_trace_to_zero() {
        let ext = KummerExtension::smallest(5, 4).unwrap();
        let z = ctx(&ext);
        for j in [1, 2, 3, 5, -1, -6] {
            let w = LogForm::du(&z).scale(&Series::monomial(z.one_like(), j));
            assert!(form_kummer_trace(&w, &ext).unwrap().is_zero(), "j={j}");
        }
    }

    #[test]
    fn trace_matches_conjugate_sum_and_pullback() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, e) in [(3, 2), (3, 4), (5, 2), (5, 3), (5, 4)] {
            let ext = KummerExtension::smallest(p, e).unwrap();
            for degree in 0..=2 {
                for _ in 0..10 {
                    let w = random_form(ext.field(), degree, -6, 6, &mut rng);
                    assert_eq!(form_kummer_trace(&w, &ext).unwrap(), trace_by_conjugates(&w, &ext), "p={p} e={e}");
                    let up = form_include(&w, &ext).unwrap();
                    let e_times = w.scale(&Series::constant(w.ctx().from_int_like(&(e as i64).into())));
                    assert_eq!(form_kummer_trace(&up, &ext).unwrap(), e_times);
                }
            }
        }
    }

    #[test]
    fn trace_preserves_the_positive_log_lattice() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ext = KummerExtension::smallest(5, 3).unwrap();
        for _ in 0..50 {
            let w = random_form(ext.field(), 1, 1, 8, &mut rng);
            assert!(in_log_lattice(&w, 1).unwrap());
            assert!(in_log_lattice(&form_kummer_trace(&w, &ext).unwrap(), 1).unwrap());
        }
    }
}
