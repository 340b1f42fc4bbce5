//! Generalized quadratic Gauss sums `G(-p, m, q) = Σ_n exp(2πi(-p n² + m n)/q)`.
//!
//! Everything here is evaluated by direct O(q) summation. The exponent is
//! reduced modulo `q` in integer arithmetic before any trigonometry, so the
//! phase error does not grow with `n`. This module is the number-theoretic
//! reference against which the closed-form angles in [`crate::theta`] are
//! checked.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{gcd_unchecked, mul_mod, reduce, ParityClass};

/// Which of the three magnitudes `|G(-p, m, q)|` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MagnitudeClass {
    /// `√q`, for odd `q`.
    SqrtQ,
    /// `√(2q)`, for even `q` with `q/2 ≡ m (mod 2)`.
    Sqrt2Q,
    /// `0`, for even `q` with `q/2 ≢ m (mod 2)`.
    Zero,
}

impl MagnitudeClass {
    pub fn expected_modulus(self, q: u64) -> f64 {
        match self {
            MagnitudeClass::SqrtQ => (q as f64).sqrt(),
            MagnitudeClass::Sqrt2Q => (2.0 * q as f64).sqrt(),
            MagnitudeClass::Zero => 0.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MagnitudeClass::SqrtQ => "sqrt-q",
            MagnitudeClass::Sqrt2Q => "sqrt-2q",
            MagnitudeClass::Zero => "zero",
        }
    }
}

/// A Gauss sum together with its classification and phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub value: Complex64,
    pub q: u64,
    pub p: u64,
    pub m: i64,
    pub magnitude_class: MagnitudeClass,
    /// `arg(value)` in `[0, 2π)`; `None` when the sum vanishes.
    pub phase: Option<f64>,
}

impl GaussSumValue {
    pub fn evaluate(p: u64, m: i64, q: u64) -> Result<Self> {
        let value = gauss_sum(p, m, q)?;
        let magnitude_class = magnitude_class(p, m, q);
        let phase = match magnitude_class {
            MagnitudeClass::Zero => None,
            _ => Some(normalize_angle(value.arg())),
        };
        Ok(GaussSumValue {
            value,
            q,
            p,
            m,
            magnitude_class,
            phase,
        })
    }
}

fn check_unit(p: u64, q: u64) -> Result<()> {
    if q == 0 || q > crate::ring::MAX_MODULUS {
        return Err(Error::InvalidModulus { q, min: 1 });
    }
    if gcd_unchecked(p % q, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed distance between two angles, folded into `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

/// `G(-p, m, q)` by direct summation. Accepts `q >= 1`; `m` is reduced mod `q`.
pub fn gauss_sum(p: u64, m: i64, q: u64) -> Result<Complex64> {
    check_unit(p, q)?;
    let neg_p = q - p % q;
    let m = reduce(m, q);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..q {
        let quad = mul_mod(neg_p, mul_mod(n, n, q), q);
        let lin = mul_mod(m, n, q);
        let e = (quad + lin) % q;
        let (s, c) = (TAU * e as f64 / q as f64).sin_cos();
        acc += Complex64::new(c, s);
    }
    Ok(acc)
}

/// Magnitude class of `G(-p, m, q)`, read off from the parities of `q`, `q/2` and `m`.
pub fn magnitude_class(_p: u64, m: i64, q: u64) -> MagnitudeClass {
    if q % 2 == 1 {
        MagnitudeClass::SqrtQ
    } else if ((q / 2) as i64 - m).rem_euclid(2) == 0 {
        MagnitudeClass::Sqrt2Q
    } else {
        MagnitudeClass::Zero
    }
}

/// `arg G(-p, m, q)` in `[0, 2π)`.
pub fn phase(p: u64, m: i64, q: u64) -> Result<f64> {
    let v = GaussSumValue::evaluate(p, m, q)?;
    v.phase.ok_or(Error::PhaseUndefined { p, m, q })
}

/// The pair of Gauss-sum indices whose phase difference is the angle at
/// vertex `m`: `(m, m+1)`, `(2m-1, 2m+1)` or `(2m, 2m+2)` by parity class.
pub fn successor_indices(m: i64, q: u64) -> (i64, i64) {
    match ParityClass::of(q) {
        ParityClass::OddQ => (m, m + 1),
        ParityClass::HalfOdd => (2 * m - 1, 2 * m + 1),
        ParityClass::HalfEven => (2 * m, 2 * m + 2),
    }
}

fn increment_from(base: Complex64, succ: Complex64, q: u64) -> f64 {
    normalize_angle((succ * base.conj() / q as f64).arg())
}

/// `arg(G(-p, succ, q) · conj(G(-p, base, q)))` in `[0, 2π)`.
pub fn phase_increment(p: u64, m: i64, q: u64) -> Result<f64> {
    let (base, succ) = successor_indices(m, q);
    let gb = GaussSumValue::evaluate(p, base, q)?;
    let gs = GaussSumValue::evaluate(p, succ, q)?;
    if gb.magnitude_class == MagnitudeClass::Zero {
        return Err(Error::ZeroGaussSum { p, m: base, q });
    }
    if gs.magnitude_class == MagnitudeClass::Zero {
        return Err(Error::ZeroGaussSum { p, m: succ, q });
    }
    Ok(increment_from(gb.value, gs.value, q))
}

/// Batch evaluator for a fixed modulus.
///
/// Performs the same direct summation as [`gauss_sum`], but looks the unit
/// roots `exp(2πik/q)` up in a table built once per `q` instead of calling
/// `sin_cos` for every term.
#[derive(Debug, Clone)]
pub struct GaussTable {
    q: u64,
    roots: Vec<Complex64>,
}

impl GaussTable {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q > u32::MAX as u64 {
            return Err(Error::InvalidModulus { q, min: 1 });
        }
        let roots = (0..q)
            .map(|k| {
                let (s, c) = (TAU * k as f64 / q as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        Ok(GaussTable { q, roots })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn quadratic_exponents(&self, p: u64) -> Vec<u64> {
        let q = self.q;
        let neg_p = q - p % q;
        (0..q).map(|n| mul_mod(neg_p, mul_mod(n, n, q), q)).collect()
    }

    fn sum_with(&self, quad: &[u64], m: u64) -> Complex64 {
        let q = self.q;
        let (mut re, mut im) = (0.0, 0.0);
        let mut lin = 0u64;
        for &a in quad {
            let mut e = a + lin;
            if e >= q {
                e -= q;
            }
            let r = self.roots[e as usize];
            re += r.re;
            im += r.im;
            lin += m;
            if lin >= q {
                lin -= q;
            }
        }
        Complex64::new(re, im)
    }

    pub fn sum(&self, p: u64, m: i64) -> Result<Complex64> {
        check_unit(p, self.q)?;
        let quad = self.quadratic_exponents(p);
        Ok(self.sum_with(&quad, reduce(m, self.q)))
    }

    /// `G(-p, m, q)` for every `m` in `[0, q)`.
    pub fn sums_for(&self, p: u64) -> Result<Vec<Complex64>> {
        check_unit(p, self.q)?;
        let quad = self.quadratic_exponents(p);
        Ok((0..self.q).map(|m| self.sum_with(&quad, m)).collect())
    }

    /// Phase increment at vertex `m`, given the full row from [`Self::sums_for`].
    pub fn phase_increment_from(&self, sums: &[Complex64], p: u64, m: i64) -> Result<f64> {
        let q = self.q;
        let (base, succ) = successor_indices(m, q);
        for idx in [base, succ] {
            if magnitude_class(p, idx, q) == MagnitudeClass::Zero {
                return Err(Error::ZeroGaussSum { p, m: idx, q });
            }
        }
        let gb = sums[reduce(base, q) as usize];
        let gs = sums[reduce(succ, q) as usize];
        Ok(increment_from(gb, gs, q))
    }
}
