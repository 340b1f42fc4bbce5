//! Classical congruential generators used as a reference: LCG, ICG, EICG
//! and the compound EICG combination over several prime moduli.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{gcd_unchecked, is_prime, mod_inverse, mul_mod, reduce, MAX_MODULUS};
use crate::theta::{u_value, ModulusShape, UnitFraction};

/// Modulus, multiplier, increment and starting seed or index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruentialParams {
    pub q: u64,
    pub a: i64,
    pub b: i64,
    pub start: u64,
}

fn check_q(q: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&q) {
        return Err(Error::InvalidModulus { q, min: 2 });
    }
    Ok(())
}

/// `x_{n+1} = a x_n + b mod q`; returns `x_1 ..= x_count`.
pub fn lcg_seq(q: u64, a: i64, b: i64, x0: u64, count: usize) -> Result<Vec<u64>> {
    check_q(q)?;
    let (a, b) = (reduce(a, q), reduce(b, q));
    let mut x = x0 % q;
    Ok((0..count)
        .map(|_| {
            x = ((mul_mod(a, x, q) as u128 + b as u128) % q as u128) as u64;
            x
        })
        .collect())
}

/// Modular inverse with `inv(0) := 0`, the EICG convention.
fn inv_or_zero(v: u64, q: u64) -> Result<u64> {
    if v == 0 {
        Ok(0)
    } else {
        mod_inverse(v as i64, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EicgMode {
    Prime,
    /// `q = 2^ω`: every argument `a n + b` must be odd.
    PowerOfTwo,
}

fn eicg_mode(q: u64, a: i64) -> Result<EicgMode> {
    check_q(q)?;
    let mode = if is_prime(q) {
        EicgMode::Prime
    } else if q >= 4 && q.is_power_of_two() {
        EicgMode::PowerOfTwo
    } else {
        return Err(Error::UnsupportedModulus { q });
    };
    if reduce(a, q) == 0 {
        return Err(Error::InvalidConfig(format!("EICG multiplier {a} vanishes modulo {q}")));
    }
    Ok(mode)
}

/// `x_n = inv(a n + b) mod q` for `n = n0 .. n0 + count`.
///
/// For prime `q` one full period is a permutation of `Z_q`. For `q = 2^ω`
/// the arguments must all be odd (e.g. `a` even, `b` odd) and the output
/// runs over the odd residues.
pub fn eicg_seq(q: u64, a: i64, b: i64, n0: u64, count: usize) -> Result<Vec<u64>> {
    let mode = eicg_mode(q, a)?;
    let (a, b) = (reduce(a, q), reduce(b, q));
    (0..count as u64)
        .map(|i| {
            let n = (n0 as u128 + i as u128) % q as u128;
            let arg = ((a as u128 * n + b as u128) % q as u128) as u64;
            match mode {
                EicgMode::Prime => inv_or_zero(arg, q),
                EicgMode::PowerOfTwo if arg % 2 == 1 => mod_inverse(arg as i64, q),
                EicgMode::PowerOfTwo => Err(Error::NoInverse { a: arg as i64, q }),
            }
        })
        .collect()
}

/// `x_{n+1} = a inv(x_n) + b mod q` with `inv(0) := 0`, `q` prime.
/// Provided for comparison; no statistical claims are made for it.
pub fn icg_seq(q: u64, a: i64, b: i64, x0: u64, count: usize) -> Result<Vec<u64>> {
    if eicg_mode(q, a)? != EicgMode::Prime {
        return Err(Error::UnsupportedModulus { q });
    }
    let (a, b) = (reduce(a, q), reduce(b, q));
    let mut x = x0 % q;
    (0..count)
        .map(|_| {
            let inv = inv_or_zero(x, q)?;
            x = ((mul_mod(a, inv, q) as u128 + b as u128) % q as u128) as u64;
            Ok(x)
        })
        .collect()
}

/// Compound value `frac(Σ_i u_p^{(i)})` over pairwise distinct primes `q_i >= 5`,
/// each component being the odd-prime sequence `(4p)⁻¹ mod q_i / q_i`.
/// The result is exact with denominator `Π q_i`.
pub fn compound_u(moduli: &[u64], p: u64) -> Result<UnitFraction> {
    if moduli.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total: u64 = 1;
    for (i, &q) in moduli.iter().enumerate() {
        if q < 5 || !is_prime(q) {
            return Err(Error::InvalidConfig(format!("compound modulus {q} is not a prime >= 5")));
        }
        if moduli[..i].contains(&q) {
            return Err(Error::InvalidConfig(format!("compound modulus {q} repeated")));
        }
        total = total
            .checked_mul(q)
            .filter(|&t| t <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidConfig("product of compound moduli overflows".into()))?;
        if gcd_unchecked(p % q, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
    }
    // Σ x_i / q_i = Σ x_i (Q / q_i) / Q.
    let mut numer: u128 = 0;
    for &q in moduli {
        let x = u_value(ModulusShape::OddPrime, p % q, q)?.numer;
        numer = (numer + x as u128 * (total / q) as u128) % total as u128;
    }
    Ok(UnitFraction {
        numer: numer as u64,
        denom: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::u_seq;

    #[test]
    fn lcg_examples() {
        assert_eq!(lcg_seq(8, 5, 1, 0, 4), Ok(vec![1, 6, 7, 4]));
        assert_eq!(lcg_seq(11, 1, 0, 4, 3), Ok(vec![4, 4, 4]));
        assert_eq!(lcg_seq(7, 3, 0, 1, 6), Ok(vec![3, 2, 6, 4, 5, 1]));
        assert_eq!(lcg_seq(7, 3, 0, 1, 0), Ok(vec![]));
    }

    #[test]
    fn eicg_examples() {
        assert_eq!(eicg_seq(7, 1, 0, 0, 7), Ok(vec![0, 1, 4, 5, 2, 3, 6]));
        // 3·2 + 1 = 7 ≡ 0.
        assert_eq!(eicg_seq(7, 3, 1, 2, 1), Ok(vec![0]));
        assert!(matches!(eicg_seq(9, 1, 0, 0, 3), Err(Error::UnsupportedModulus { q: 9 })));
        assert!(eicg_seq(7, 7, 0, 0, 3).is_err());
    }

    #[test]
    fn eicg_full_period_is_permutation() {
        for q in (2..3000u64).filter(|&q| is_prime(q)) {
            for (a, b) in [(1, 0), (4, 0), (q as i64 - 1, 3), (17, -5)] {
                if reduce(a, q) == 0 {
                    continue;
                }
                let mut xs = eicg_seq(q, a, b, 0, q as usize).unwrap();
                xs.sort_unstable();
                assert!(xs.iter().copied().eq(0..q), "q={q} a={a} b={b}");
            }
        }
    }

    #[test]
    fn power_of_two_mode_matches_normalized_sequence() {
        for w in 2..=10 {
            let q = 1u64 << w;
            let xs = eicg_seq(q, 2, -1, 0, q as usize).unwrap();
            for v in u_seq(q).unwrap() {
                assert_eq!(xs[v.p as usize], v.u.numer);
            }
        }
        assert!(eicg_seq(8, 1, 0, 0, 2).is_err());
    }

    #[test]
    fn odd_prime_sequence_is_eicg_with_multiplier_four() {
        for q in [3u64, 5, 7, 101, 997] {
            let xs = eicg_seq(q, 4, 0, 0, q as usize).unwrap();
            assert_eq!(xs[0], 0);
            for v in u_seq(q).unwrap() {
                assert_eq!(xs[v.p as usize], v.u.numer);
            }
        }
    }

    #[test]
    fn icg_runs() {
        // 1 → 3·1 + 1 = 4 → 3·2 + 1 = 7 ≡ 0 → 3·0 + 1 = 1.
        assert_eq!(icg_seq(7, 3, 1, 1, 4), Ok(vec![4, 0, 1, 4]));
        assert!(icg_seq(8, 3, 1, 1, 4).is_err());
    }

    #[test]
    fn compound_examples() {
        assert_eq!(compound_u(&[5, 7], 1), Ok(UnitFraction { numer: 3, denom: 35 }));
        assert_eq!(compound_u(&[5, 7], 2), Ok(UnitFraction { numer: 19, denom: 35 }));
        for p in 1..5 {
            let single = compound_u(&[5], p).unwrap();
            assert_eq!(single, u_value(ModulusShape::OddPrime, p, 5).unwrap());
        }
        assert!(compound_u(&[3, 7], 1).is_err());
        assert!(compound_u(&[7, 7], 1).is_err());
        assert!(compound_u(&[5, 7], 5).is_err());
        assert!(compound_u(&[], 1).is_err());
    }

    #[test]
    fn compound_full_period_hits_every_unit_fraction() {
        let mut numers: Vec<u64> = (1..35u64)
            .filter(|&p| gcd_unchecked(p, 35) == 1)
            .map(|p| compound_u(&[5, 7], p).unwrap().numer)
            .collect();
        numers.sort_unstable();
        let expected: Vec<u64> = (1..35).filter(|&k| gcd_unchecked(k, 35) == 1).collect();
        assert_eq!(numers, expected);
    }
}
