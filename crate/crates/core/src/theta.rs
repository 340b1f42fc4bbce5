//! Closed-form vertex angles and the normalized sequences `u_p`.
//!
//! The angle at vertex `m` of the polygon at time `p/q` depends on `p` only
//! through a modular inverse `φ(p)`:
//!
//! | class       | `φ(p)`               | angle                              |
//! |-------------|----------------------|------------------------------------|
//! | `q` odd     | `(4p)⁻¹ mod q`       | `(2π φ (2m+1) + θ0) / q`           |
//! | `q ≡ 2 (4)` | `p⁻¹ mod q/2`        | `(2π φ m + θ0) / (q/2)`            |
//! | `q ≡ 0 (4)` | `p⁻¹ mod q`          | `(2π φ (2m+1) + 2θ0) / q`          |

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{gcd_unchecked, is_prime, mod_inverse, mod_inverse_or_trivial, ParityClass, RingParams, UnitResidue};

/// Modulus, vertex index and torsion offset for the angle generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams {
    ring: RingParams,
    pub m: u64,
    pub theta0: f64,
}

impl ThetaParams {
    pub fn new(q: u64, m: u64, theta0: f64) -> Result<Self> {
        if !(theta0.is_finite() && theta0 >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "theta0 must be finite and >= 0, got {theta0}"
            )));
        }
        Ok(ThetaParams {
            ring: RingParams::new(q)?,
            m,
            theta0,
        })
    }

    /// Uses the default vertex index for the class of `q`.
    pub fn with_default_m(q: u64, theta0: f64) -> Result<Self> {
        let ring = RingParams::new(q)?;
        Self::new(q, default_m(ring.parity_class()), theta0)
    }

    pub fn q(&self) -> u64 {
        self.ring.q()
    }

    pub fn parity_class(&self) -> ParityClass {
        self.ring.parity_class()
    }

    /// True when `m` shares a factor with the relevant modulus, so that the
    /// angles over `p` repeat with a shorter period.
    pub fn is_degenerate(&self) -> bool {
        let q = self.q();
        match self.parity_class() {
            ParityClass::HalfOdd => gcd_unchecked(q / 2, self.m) != 1,
            _ => gcd_unchecked(q, 2 * self.m + 1) != 1,
        }
    }
}

/// `m = 1` when `q ≡ 2 (mod 4)`, otherwise `m = 0`.
pub fn default_m(class: ParityClass) -> u64 {
    match class {
        ParityClass::HalfOdd => 1,
        ParityClass::OddQ | ParityClass::HalfEven => 0,
    }
}

/// `φ(p)` for the parity class of `q`.
pub fn phi_of_p(p: &UnitResidue) -> Result<u64> {
    let (p, q) = (p.p(), p.q());
    match ParityClass::of(q) {
        ParityClass::OddQ => mod_inverse(((4 * p as u128) % q as u128) as i64, q),
        ParityClass::HalfOdd => mod_inverse_or_trivial((p % (q / 2)) as i64, q / 2),
        ParityClass::HalfEven => mod_inverse(p as i64, q),
    }
}

/// Vertex angle in radians (not reduced modulo 2π). With `theta0 = 0`
/// this is the planar angle.
pub fn vartheta(params: &ThetaParams, p: &UnitResidue) -> Result<f64> {
    if p.q() != params.q() {
        return Err(Error::InvalidConfig(format!(
            "residue modulus {} does not match q = {}",
            p.q(),
            params.q()
        )));
    }
    let q = params.q();
    let phi = phi_of_p(p)?;
    let m = params.m;
    // φ·(2m+1) and φ·m are reduced in exact arithmetic first; only the
    // fractional turn matters.
    let angle = match params.parity_class() {
        ParityClass::OddQ => {
            let k = (phi as u128 * (2 * m as u128 + 1)) % q as u128;
            (TAU * k as f64 + params.theta0) / q as f64
        }
        ParityClass::HalfOdd => {
            let h = q / 2;
            let k = (phi as u128 * m as u128) % h as u128;
            (TAU * k as f64 + params.theta0) / h as f64
        }
        ParityClass::HalfEven => {
            let k = (phi as u128 * (2 * m as u128 + 1)) % q as u128;
            (TAU * k as f64 + 2.0 * params.theta0) / q as f64
        }
    };
    Ok(angle)
}

/// Torsion contribution to the vertex angle, per parity class.
pub fn torsion_offset(class: ParityClass, q: u64, theta0: f64) -> f64 {
    match class {
        ParityClass::OddQ => theta0 / q as f64,
        ParityClass::HalfOdd => theta0 / (q / 2) as f64,
        ParityClass::HalfEven => 2.0 * theta0 / q as f64,
    }
}

/// Modulus shapes for which the normalized sequence `u_p` is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulusShape {
    /// `q` an odd prime: `x_p = (4p)⁻¹ mod q`, `u_p = x_p / q`.
    OddPrime,
    /// `q/2` an odd prime: `x_p = p⁻¹ mod q/2`, `u_p = x_p / (q/2)`.
    TwiceOddPrime,
    /// `q = 2^ω`, `ω >= 2`: `x_p = (2p-1)⁻¹ mod q`, `u_p = x_p / q`; includes `p = 0`.
    PowerOfTwo,
}

impl ModulusShape {
    pub fn of(q: u64) -> Result<Self> {
        if q % 2 == 1 && is_prime(q) {
            Ok(ModulusShape::OddPrime)
        } else if q % 4 == 2 && is_prime(q / 2) {
            Ok(ModulusShape::TwiceOddPrime)
        } else if q >= 4 && q.is_power_of_two() {
            Ok(ModulusShape::PowerOfTwo)
        } else {
            Err(Error::UnsupportedModulus { q })
        }
    }

    /// Denominator of `u_p`.
    pub fn denominator(self, q: u64) -> u64 {
        match self {
            ModulusShape::TwiceOddPrime => q / 2,
            _ => q,
        }
    }

    /// Whether `p` belongs to the seed set of this shape.
    pub fn admits(self, p: u64, q: u64) -> bool {
        p < q && (gcd_unchecked(p, q) == 1 || (self == ModulusShape::PowerOfTwo && p == 0))
    }
}

/// An exact fraction `numer / denom`, kept unreduced so `numer` is the
/// generator output `x_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitFraction {
    pub numer: u64,
    pub denom: u64,
}

impl UnitFraction {
    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

/// One element of the normalized sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqValue {
    pub p: u64,
    pub u: UnitFraction,
}

/// `u_p` for a single seed `p`.
pub fn u_value(shape: ModulusShape, p: u64, q: u64) -> Result<UnitFraction> {
    if !shape.admits(p, q) {
        return Err(Error::NotCoprime { p, q });
    }
    let numer = match shape {
        ModulusShape::OddPrime => mod_inverse(((4 * p as u128) % q as u128) as i64, q)?,
        ModulusShape::TwiceOddPrime => mod_inverse((p % (q / 2)) as i64, q / 2)?,
        ModulusShape::PowerOfTwo => mod_inverse(2 * p as i64 - 1, q)?,
    };
    Ok(UnitFraction {
        numer,
        denom: shape.denominator(q),
    })
}

/// Lazily yields `(p, u_p)` over the admissible seeds in ascending `p`.
#[derive(Debug, Clone)]
pub struct USeq {
    shape: ModulusShape,
    q: u64,
    next_p: u64,
}

impl Iterator for USeq {
    type Item = SeqValue;

    fn next(&mut self) -> Option<SeqValue> {
        while self.next_p < self.q {
            let p = self.next_p;
            self.next_p += 1;
            if self.shape.admits(p, self.q) {
                let u = u_value(self.shape, p, self.q).expect("admissible seed has an inverse");
                return Some(SeqValue { p, u });
            }
        }
        None
    }
}

pub fn u_seq_iter(q: u64) -> Result<USeq> {
    Ok(USeq {
        shape: ModulusShape::of(q)?,
        q,
        next_p: 0,
    })
}

pub fn u_seq(q: u64) -> Result<Vec<SeqValue>> {
    Ok(u_seq_iter(q)?.collect())
}
