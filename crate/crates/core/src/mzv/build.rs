use num_traits::ToPrimitive;

use crate::config::MAX_KZ_WEIGHT;
use crate::error::{Error, Result};
use crate::mzv::index::MzvIndex;
use crate::mzv::regularize::{amplification, convergent_combination};
use crate::mzv::table::MzvTable;
use crate::ncseries::{Alphabet, Series};
use crate::scalar::bigfloat::{bits_for_digits, BigFloat};
use crate::scalar::BigComplex;

/// Digits kept above the loss from regularisation, so that the default
/// threshold `10^-(p-15)` stays meaningful.
const HEADROOM_DIGITS: u32 = 16;

/// A candidate associator `(mu, phi)`.
#[derive(Clone, Debug)]
pub struct AssociatorCandidate {
    pub mu: BigComplex,
    pub phi: Series<BigComplex>,
}

/// Smallest precision `build_phi_kz` accepts at weight `n`.
pub fn required_digits(n: usize) -> u32 {
    let worst = Alphabet::x01()
        .words_up_to(n)
        .iter()
        .map(|w| amplification(w).to_f64().unwrap_or(f64::INFINITY))
        .fold(1.0_f64, f64::max);
    worst.log10().ceil().max(0.0) as u32 + HEADROOM_DIGITS
}

/// The Drinfeld associator to weight `n` at `digits` decimal digits,
/// paired with `mu = 2 pi i`.
pub fn build_phi_kz(n: usize, digits: u32, table: &mut MzvTable) -> Result<AssociatorCandidate> {
    if n > MAX_KZ_WEIGHT {
        return Err(Error::Precondition(format!("weight {n} exceeds the configured maximum {MAX_KZ_WEIGHT}")));
    }
    let required = required_digits(n);
    if digits < required {
        return Err(Error::PrecisionTooLow { weight: n, required, given: digits });
    }
    if table.digits() < digits {
        return Err(Error::Precondition(format!("MZV table holds {} digits, {digits} requested", table.digits())));
    }
    table.fill_to_weight(n)?;
    let alphabet = Alphabet::x01();
    let bits = bits_for_digits(digits);
    let mut phi = Series::zero(&alphabet, n, &digits);
    for w in alphabet.words_up_to(n) {
        let mut acc = BigFloat::zero(bits);
        for (u, c) in convergent_combination(&w) {
            let v = match MzvIndex::from_word(&u) {
                Some(idx) => {
                    let z = table.real(&idx)?;
                    if idx.depth() % 2 == 0 {
                        z
                    } else {
                        z.neg()
                    }
                }
                None => BigFloat::from_i64(1, bits),
            };
            acc = acc.add(&v.mul(&BigFloat::from_rational(&c, bits)));
        }
        if !acc.is_zero() {
            phi.add_term(w, BigComplex::from_real(acc, digits));
        }
    }
    Ok(AssociatorCandidate { mu: BigComplex::two_pi_i(digits), phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{Word, X0, X1};
    use crate::scalar::Scalar;

    #[test]
    fn weight_two_is_the_commutator_of_zeta_two() {
        let mut t = MzvTable::new(30);
        let kz = build_phi_kz(2, 30, &mut t).unwrap();
        let z2 = t.value(&"2".parse().unwrap()).unwrap();
        assert_eq!(kz.phi.len(), 3);
        let c01 = kz.phi.coeff(&Word::from_letters(&[X0, X1]));
        let c10 = kz.phi.coeff(&Word::from_letters(&[X1, X0]));
        assert!(c01.add(&z2).magnitude() < 1e-28);
        assert!(c10.sub(&z2).magnitude() < 1e-28);
    }

    #[test]
    fn refuses_low_precision_and_high_weight() {
        let mut t = MzvTable::new(10);
        assert!(matches!(build_phi_kz(4, 10, &mut t), Err(Error::PrecisionTooLow { .. })));
        assert!(build_phi_kz(MAX_KZ_WEIGHT + 1, 40, &mut MzvTable::new(40)).is_err());
    }
}
