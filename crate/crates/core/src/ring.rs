//! Exact integer and finite-ring arithmetic.
//!
//! Moduli are limited to the signed 63-bit range so that residues can be
//! negated without overflow; products go through `u128`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = i64::MAX as u64;

/// The three corner-count regimes of a denominator `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityClass {
    /// `q` odd.
    OddQ,
    /// `q ≡ 2 (mod 4)`, i.e. `q/2` odd.
    HalfOdd,
    /// `q ≡ 0 (mod 4)`, i.e. `q/2` even.
    HalfEven,
}

impl ParityClass {
    /// Classifies any `q >= 1`. Use [`parity_class`] when `q` is untrusted.
    pub fn of(q: u64) -> Self {
        if q % 2 == 1 {
            ParityClass::OddQ
        } else if (q / 2) % 2 == 1 {
            ParityClass::HalfOdd
        } else {
            ParityClass::HalfEven
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParityClass::OddQ => "odd-q",
            ParityClass::HalfOdd => "half-odd",
            ParityClass::HalfEven => "half-even",
        }
    }
}

impl std::fmt::Display for ParityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated modulus together with its parity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    q: u64,
    parity_class: ParityClass,
}

impl RingParams {
    pub fn new(q: u64) -> Result<Self> {
        check_modulus(q)?;
        Ok(RingParams {
            q,
            parity_class: ParityClass::of(q),
        })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn parity_class(&self) -> ParityClass {
        self.parity_class
    }
}

/// A residue `p` in `[0, q)` with `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitResidue {
    p: u64,
    q: u64,
}

impl UnitResidue {
    /// Reduces `p` modulo `q` and checks coprimality.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        check_modulus(q)?;
        let p = p % q;
        if gcd_unchecked(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(UnitResidue { p, q })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }
}

fn check_modulus(q: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&q) {
        return Err(Error::InvalidModulus { q, min: 2 });
    }
    Ok(())
}

#[inline]
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Greatest common divisor. `gcd(0, n) = n`; `gcd(0, 0)` is an error.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_unchecked(a, b))
}

/// Reduces a signed integer into `[0, q)`.
#[inline]
pub fn reduce(a: i64, q: u64) -> u64 {
    (a as i128).rem_euclid(q as i128) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Multiplicative inverse of `a` modulo `q` by the extended Euclidean
/// algorithm. The result lies in `[1, q)`.
pub fn mod_inverse(a: i64, q: u64) -> Result<u64> {
    check_modulus(q)?;
    let a_red = reduce(a, q);
    // Invariant: old_s * a ≡ old_r (mod q).
    let (mut old_r, mut r) = (a_red as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(Error::NoInverse { a, q });
    }
    Ok(old_s.rem_euclid(q as i128) as u64)
}

/// Inverse in `Z_q` for `q >= 1`, where `Z_1 = {0}` and the inverse is 0.
pub(crate) fn mod_inverse_or_trivial(a: i64, q: u64) -> Result<u64> {
    if q == 1 {
        Ok(0)
    } else {
        mod_inverse(a, q)
    }
}

/// Euler's totient, by trial factorisation.
pub fn totient(q: u64) -> u64 {
    if q == 0 {
        return 0;
    }
    let mut n = q;
    let mut result = q;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Validating form of [`ParityClass::of`].
pub fn parity_class(q: u64) -> Result<ParityClass> {
    check_modulus(q)?;
    Ok(ParityClass::of(q))
}

/// All units of `Z_q` in ascending order.
pub fn units(q: u64) -> Result<Vec<UnitResidue>> {
    check_modulus(q)?;
    Ok((1..q)
        .filter(|&p| gcd_unchecked(p, q) == 1)
        .map(|p| UnitResidue { p, q })
        .collect())
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(12, 18), Ok(6));
        assert_eq!(gcd(1, 97), Ok(1));
        assert_eq!(gcd(0, 7), Ok(7));
        assert_eq!(gcd(0, 0), Err(Error::GcdOfZeros));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(3, 7), Ok(5));
        assert_eq!(mod_inverse(1, 13), Ok(1));
        assert_eq!(mod_inverse(4, 8), Err(Error::NoInverse { a: 4, q: 8 }));
        assert_eq!(mod_inverse(0, 5), Err(Error::NoInverse { a: 0, q: 5 }));
        assert_eq!(mod_inverse(-1, 8), Ok(7));
        assert!(matches!(mod_inverse(1, 1), Err(Error::InvalidModulus { .. })));
    }

    #[test]
    fn inverse_near_modulus_limit() {
        let q = MAX_MODULUS; // 2^63 - 1 = 7^2 * 73 * 127 * 337 * 92737 * 649657
        let a = 1_000_003i64;
        let inv = mod_inverse(a, q).unwrap();
        assert_eq!(mul_mod(a as u64, inv, q), 1);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(7), 6);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(1 << 14), 1 << 13);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_class(7), Ok(ParityClass::OddQ));
        assert_eq!(parity_class(6), Ok(ParityClass::HalfOdd));
        assert_eq!(parity_class(8), Ok(ParityClass::HalfEven));
        assert!(parity_class(1).is_err());
    }

    #[test]
    fn unit_examples() {
        let ps = |q| units(q).unwrap().iter().map(|u| u.p()).collect::<Vec<_>>();
        assert_eq!(ps(8), vec![1, 3, 5, 7]);
        assert_eq!(ps(7), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(ps(12), vec![1, 5, 7, 11]);
        assert!(UnitResidue::new(4, 8).is_err());
        assert_eq!(UnitResidue::new(9, 8).unwrap().p(), 1);
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(MAX_MODULUS));
    }

    #[test]
    fn ring_laws_exhaustive_to_ten_thousand() {
        for q in 2..=10_000u64 {
            let us = units(q).unwrap();
            assert_eq!(us.len() as u64, totient(q), "q = {q}");
            for u in us {
                let inv = mod_inverse(u.p() as i64, q).unwrap();
                assert_eq!(mul_mod(u.p(), inv, q), 1);
                assert_eq!(mod_inverse(inv as i64, q).unwrap(), u.p());
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_is_involution(q in 2u64..1_000_000_000, a in any::<i64>()) {
            match mod_inverse(a, q) {
                Ok(inv) => {
                    prop_assert!(inv >= 1 && inv < q);
                    prop_assert_eq!(mul_mod(reduce(a, q), inv, q), 1);
                    prop_assert_eq!(mod_inverse(inv as i64, q).unwrap(), reduce(a, q));
                }
                Err(_) => prop_assert_ne!(gcd_unchecked(reduce(a, q), q), 1),
            }
        }
    }
}
