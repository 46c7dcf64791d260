//! Numerical checks of closed-form MZV identities.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::Result;
use crate::mzv::index::MzvIndex;
use crate::mzv::table::MzvTable;
use crate::report::ResidualReport;
use crate::scalar::bigfloat::{bits_for_digits, BigFloat};
use crate::scalar::Rational;

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn idx(k: Vec<u32>) -> MzvIndex {
    MzvIndex::new(k).expect("positive entries")
}

fn report(equation: String, lhs: &BigFloat, rhs: &BigFloat, weight: usize) -> ResidualReport {
    ResidualReport::new(&equation, lhs.sub(rhs).to_f64().abs(), false, None, weight)
}

/// Both sides of Zagier's formula
/// `zeta(2^a, 3, 2^b) = 2 sum_{r=1}^{a+b+1} (-1)^r (A^r - B^r) zeta(2r+1) zeta(2^{a+b+1-r})`
/// with `A^r = binom(2r, 2a+2)` and `B^r = (1 - 2^-2r) binom(2r, 2b+1)`.
pub fn zagier_sides(a: usize, b: usize, table: &mut MzvTable) -> Result<(BigFloat, BigFloat)> {
    let bits = bits_for_digits(table.digits());
    let mut k = vec![2; a];
    k.push(3);
    k.extend(std::iter::repeat(2).take(b));
    let lhs = table.real(&idx(k))?;
    let big_k = a + b + 1;
    let mut rhs = BigFloat::zero(bits);
    for r in 1..=big_k {
        let a_r = Rational::from_integer(binom(2 * r as u64, 2 * a as u64 + 2));
        let quarter_pow = Rational::new(BigInt::from(1), BigInt::from(1) << (2 * r));
        let b_r = (Rational::from_integer(BigInt::from(1)) - quarter_pow) * binom(2 * r as u64, 2 * b as u64 + 1);
        let mut coeff = (a_r - b_r) * BigInt::from(2);
        if r % 2 == 1 {
            coeff = -coeff;
        }
        let odd = table.real(&idx(vec![2 * r as u32 + 1]))?;
        let twos = if big_k == r { BigFloat::from_i64(1, bits) } else { table.real(&MzvIndex::twos(big_k - r))? };
        rhs = rhs.add(&odd.mul(&twos).mul(&BigFloat::from_rational(&coeff, bits)));
    }
    Ok((lhs, rhs))
}

pub fn zagier_check(a: usize, b: usize, table: &mut MzvTable) -> Result<ResidualReport> {
    let (lhs, rhs) = zagier_sides(a, b, table)?;
    Ok(report(format!("zagier(a={a},b={b})"), &lhs, &rhs, 2 * (a + b) + 3))
}

/// `zeta(a) zeta(b) = zeta(a,b) + zeta(a+b) + zeta(b,a)` (stuffle).
pub fn euler_stuffle_check(a: u32, b: u32, table: &mut MzvTable) -> Result<ResidualReport> {
    let lhs = table.real(&idx(vec![a]))?.mul(&table.real(&idx(vec![b]))?);
    let rhs = table.real(&idx(vec![a, b]))?.add(&table.real(&idx(vec![a + b]))?).add(&table.real(&idx(vec![b, a]))?);
    Ok(report(format!("stuffle(a={a},b={b})"), &lhs, &rhs, (a + b) as usize))
}

/// `zeta(a) zeta(b) = sum_i binom(b-1+i, i) zeta(a-i, b+i) + sum_j binom(a-1+j, j) zeta(b-j, a+j)`
/// (shuffle).
pub fn euler_shuffle_check(a: u32, b: u32, table: &mut MzvTable) -> Result<ResidualReport> {
    let bits = bits_for_digits(table.digits());
    let lhs = table.real(&idx(vec![a]))?.mul(&table.real(&idx(vec![b]))?);
    let mut rhs = BigFloat::zero(bits);
    for (p, q) in [(a, b), (b, a)] {
        for i in 0..p {
            let c = BigFloat::from_bigint(binom((q - 1 + i) as u64, i as u64), bits);
            rhs = rhs.add(&table.real(&idx(vec![p - i, q + i]))?.mul(&c));
        }
    }
    Ok(report(format!("shuffle(a={a},b={b})"), &lhs, &rhs, (a + b) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zagier_base_case_collapses_to_zeta_three() {
        // RHS = 2 (-1) (1 - 3/2) zeta(3)
        let mut t = MzvTable::new(30);
        let (lhs, rhs) = zagier_sides(0, 0, &mut t).unwrap();
        assert!(lhs.sub(&rhs).to_f64().abs() < 1e-30);
    }
}
