use crate::cohomology::EquivariantSheaf;
use crate::error::Result;
use crate::toric::{QDivisor, ToricModulusPair};
use crate::witt::{witt_cohomology_lengths, WittLengths};
use crate::Rational;

/// `Ω^q(log |D|)(ceil(D) - |D|)` on the pair's fan.
pub fn momega_sheaf(pair: &ToricModulusPair, q: usize) -> Result<EquivariantSheaf> {
    EquivariantSheaf::log_differential(pair.fan(), q, &pair.support_rays(), &pair.modulus().modulus_twist())
}

/// `(ceil(D) - |D|) / p^(n-1)`, the divisor whose Witt divisorial sheaf is
/// the modulus Witt sheaf.
pub fn mwitt_divisor(d: &QDivisor, p: u64, n: usize) -> QDivisor {
    let scale = Rational::frac(1, (p as i64).pow(n as u32 - 1));
    d.modulus_twist().scale(&scale)
}

/// The divisorial sheaves `O(floor(p^i D'))` whose lengths add up to those
/// of the modulus Witt sheaf.
pub fn mwitt_slot_sheaves(pair: &ToricModulusPair, p: u64, n: usize) -> Result<Vec<EquivariantSheaf>> {
    let d = mwitt_divisor(pair.modulus(), p, n);
    (0..n)
        .map(|i| {
            let scaled = d.scale(&Rational::from((p as i64).pow(i as u32)));
            Ok(EquivariantSheaf::divisorial(pair.fan(), &scaled)?.with_characteristic(p))
        })
        .collect()
}

pub fn mwitt_lengths(pair: &ToricModulusPair, p: u64, n: usize) -> Result<WittLengths> {
    witt_cohomology_lengths(pair.fan(), &mwitt_divisor(pair.modulus(), p, n), p, n)
}
