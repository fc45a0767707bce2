//! Lengths of `H^i(X, W_n O(D))` on toric models.
//!
//! A Witt vector `(a_0, ..., a_{n-1})` is a section of `W_n O(D)` iff each
//! `a_i` is a section of `O(floor(p^i D))`. Restriction `W_n -> W_{n-1}` is
//! therefore onto on every Čech cochain group, the kernel being
//! `O(floor(p^(n-1) D))` placed in the last slot, so lengths add up over
//! the slots. Frobenius pushforward leaves the additive group unchanged, so
//! the lengths are prime-field dimensions.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::universal::WittUniversalPolys;
use crate::cohomology::{cech_h, CohomologyReport, Dimension, EquivariantSheaf, SectionRegion};
use crate::error::Result;
use crate::toric::{Fan, QDivisor, Vector};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittLengths {
    p: u64,
    slots: Vec<CohomologyReport>,
}

impl WittLengths {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// Cohomology of `O(floor(p^j D))`, one report per Witt slot `j`.
    pub fn slots(&self) -> &[CohomologyReport] {
        &self.slots
    }

    pub fn slot_regions(&self) -> impl Iterator<Item = &SectionRegion> {
        self.slots.iter().map(|s| &s.h0_region)
    }

    /// Length of `H^i`.
    pub fn h(&self, i: usize) -> Dimension {
        self.slots.iter().map(|s| s.h(i)).fold(Dimension::Finite(0), |a, b| a + b)
    }

    pub fn higher_vanish(&self) -> bool {
        self.slots.iter().all(CohomologyReport::higher_vanish)
    }

    /// First slot and character where the H^0 descriptions disagree.
    pub fn first_h0_difference(&self, other: &WittLengths) -> Result<Option<(usize, Vector)>> {
        for (j, (a, b)) in self.slot_regions().zip(other.slot_regions()).enumerate() {
            if let Some(m) = a.first_difference(b)? {
                return Ok(Some((j, m)));
            }
        }
        Ok(None)
    }
}

impl Serialize for WittLengths {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WittLengths", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("lengths", &[self.h(0), self.h(1), self.h(2)])?;
        st.serialize_field("slots", &self.slots)?;
        st.end()
    }
}

/// `l(H^i(W_n O(D))) = sum_{j<n} h^i(O(floor(p^j D)))`.
pub fn witt_cohomology_lengths(fan: &Fan, d: &QDivisor, p: u64, n: usize) -> Result<WittLengths> {
    WittUniversalPolys::get(p, n)?;
    let mut slots = Vec::with_capacity(n);
    let mut scale = Rational::one();
    for _ in 0..n {
        let sheaf = EquivariantSheaf::divisorial(fan, &d.scale(&scale))?.with_characteristic(p);
        slots.push(cech_h(&sheaf)?);
        scale = &scale * &Rational::from(p as i64);
    }
    Ok(WittLengths { p, slots })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::scalar::{elements, FiniteField, Fq, Laurent, Ring};
    use crate::toric::StandardFan;
    use crate::witt::WittVector;

    fn half_at_zero() -> QDivisor {
        QDivisor::prime(0, Rational::frac(1, 2))
    }

    #[test]
    fn projective_line_example() {
        let fan = Fan::standard(StandardFan::ProjLine);
        let w = witt_cohomology_lengths(&fan, &half_at_zero(), 2, 2).unwrap();
        assert_eq!(w.slots()[0].h0, Dimension::Finite(1));
        assert_eq!(w.slots()[1].h0, Dimension::Finite(2));
        assert_eq!(w.h(0), Dimension::Finite(3));
        assert_eq!(w.h(1), Dimension::Finite(0));
    }

    #[test]
    fn length_one_is_the_divisorial_sheaf() {
        let fan = Fan::standard(StandardFan::Delta(1));
        let d = QDivisor::from_pairs([(0, Rational::frac(3, 2)), (2, Rational::frac(1, 3))]);
        let w = witt_cohomology_lengths(&fan, &d, 3, 1).unwrap();
        let direct = cech_h(&EquivariantSheaf::divisorial(&fan, &d).unwrap()).unwrap();
        assert_eq!(w.slots()[0], cech_h(&EquivariantSheaf::divisorial(&fan, &d).unwrap().with_characteristic(3)).unwrap());
        assert_eq!((w.h(0), w.h(1)), (direct.h0, direct.h1));
    }

    #[test]
    fn blowup_of_affine_plane_has_no_h1() {
        // modulus Witt divisor of a = b = 1: (ceil D - |D|) / p^(n-1) pulled back
        let fan = Fan::standard(StandardFan::BlowupAffinePlane);
        let d = QDivisor::from_pairs([(1, Rational::frac(1, 2))]);
        let w = witt_cohomology_lengths(&fan, &d, 2, 2).unwrap();
        assert!(w.higher_vanish());
        assert_eq!(w.h(0), Dimension::Infinite);
    }

    /// Every Witt vector over `F_p[x, 1/x]` whose slot `j` uses only the
    /// characters allowed by slot `j`'s H^0 region.
    fn brute_force_sections(fan: &Fan, d: &QDivisor, p: u64, n: usize) -> (usize, bool) {
        let w = witt_cohomology_lengths(fan, d, p, n).unwrap();
        let f = FiniteField::prime(p).unwrap();
        let ctx = Fq::zero(&f);
        let allowed: Vec<Vec<i64>> = w
            .slot_regions()
            .map(|r| (-20..=20).filter(|&m| r.dim_at([m, 0]) == 1).collect())
            .collect();
        let mut slot_values: Vec<Vec<Laurent<Fq>>> = Vec::new();
        for chars in &allowed {
            let mut values = vec![Laurent::zero(&ctx)];
            for &m in chars {
                values = values
                    .iter()
                    .flat_map(|v| elements(&f).map(move |c| v.add(&Laurent::monomial(c, m))))
                    .collect();
            }
            slot_values.push(values);
        }
        let mut stack = vec![Vec::new()];
        for values in &slot_values {
            stack = stack
                .into_iter()
                .flat_map(|prefix: Vec<Laurent<Fq>>| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v.clone());
                        next
                    })
                })
                .collect();
        }
        let set: Vec<WittVector<Laurent<Fq>>> =
            stack.into_iter().map(|coords| WittVector::new(p, coords).unwrap()).collect();
        let in_set = |x: &WittVector<Laurent<Fq>>| {
            x.coords().iter().zip(&allowed).all(|(c, chars)| c.terms().all(|(k, _)| chars.contains(&k)))
        };
        let closed = set.iter().all(|x| in_set(&x.neg()) && set.iter().all(|y| in_set(&x.add(y).unwrap())));
        let distinct: HashSet<String> = set.iter().map(|x| x.to_string()).collect();
        (distinct.len(), closed)
    }

    #[test]
    fn lengths_count_the_section_group() {
        let cases = [
            (half_at_zero(), 2, 2),
            (QDivisor::from_pairs([(0, Rational::frac(1, 3)), (1, Rational::frac(1, 2))]), 3, 2),
            (QDivisor::prime(1, Rational::frac(1, 4)), 2, 3),
        ];
        let fan = Fan::standard(StandardFan::ProjLine);
        for (d, p, n) in cases {
            let Dimension::Finite(l) = witt_cohomology_lengths(&fan, &d, p, n).unwrap().h(0) else {
                panic!("finite on a complete curve")
            };
            let (count, closed) = brute_force_sections(&fan, &d, p, n);
            assert!(closed, "sections not a subgroup for p={p} n={n}");
            assert_eq!(count as u64, p.pow(l as u32), "p={p} n={n}");
        }
    }
}
