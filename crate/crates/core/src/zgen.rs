//! Points `z_{q,m}(p)` on a circumference, one generator per polygon family.
//!
//! The real part of `z` is the triple product of three consecutive tangent
//! vectors and the imaginary part is the scalar product of the first and
//! the third. For the three hyperbolic families
//! `z = i cosh²ρ + i sinh²ρ · e^{-iϑ}`; for the Euclidean helical polygon
//! `z = i cos²ρ − i sin²ρ · e^{iϑ}`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{gcd_unchecked, RingParams, UnitResidue};
use crate::theta::{default_m, torsion_offset, u_seq_iter, vartheta, ThetaParams, USeq, UnitFraction};

/// Polygon family whose evolution produces the points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PlanarHyperbolic,
    HyperbolicHelical,
    CircularHelical,
    EuclideanHelical,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::PlanarHyperbolic,
        Family::HyperbolicHelical,
        Family::CircularHelical,
        Family::EuclideanHelical,
    ];

    /// Whether tangents live on the hyperboloid of Minkowski 3-space.
    pub fn is_hyperbolic(self) -> bool {
        !matches!(self, Family::EuclideanHelical)
    }

    pub fn is_helical(self) -> bool {
        !matches!(self, Family::PlanarHyperbolic)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::PlanarHyperbolic => "planar-hyperbolic",
            Family::HyperbolicHelical => "hyperbolic-helical",
            Family::CircularHelical => "circular-helical",
            Family::EuclideanHelical => "euclidean-helical",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family {s:?}")))
    }
}

/// Generator configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub family: Family,
    pub q: u64,
    pub m: u64,
    /// Torsion angle in radians; zero for the planar family.
    pub theta0: f64,
    /// Corner angle `ρ_q`; fixes the circle, not the angles.
    pub rho: f64,
    /// Side length `l`, descriptive only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub side_length: Option<f64>,
    /// Number of sides `M`, descriptive only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sides: Option<u32>,
}

impl FamilyConfig {
    /// A configuration with the default vertex index for the class of `q`.
    pub fn new(family: Family, q: u64, theta0: f64, rho: f64) -> Result<Self> {
        let ring = RingParams::new(q)?;
        let cfg = FamilyConfig {
            family,
            q,
            m: default_m(ring.parity_class()),
            theta0,
            rho,
            side_length: None,
            sides: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        RingParams::new(self.q)?;
        if !(self.rho.is_finite() && self.rho >= 0.0) {
            return Err(Error::InvalidConfig(format!("rho must be finite and >= 0, got {}", self.rho)));
        }
        if !(self.theta0.is_finite() && self.theta0 >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "theta0 must be finite and >= 0, got {}",
                self.theta0
            )));
        }
        if self.family == Family::PlanarHyperbolic && self.theta0 != 0.0 {
            return Err(Error::InvalidConfig("planar-hyperbolic requires theta0 = 0".into()));
        }
        Ok(())
    }

    pub fn theta_params(&self) -> Result<ThetaParams> {
        ThetaParams::new(self.q, self.m, self.theta0)
    }

    pub fn uses_default_m(&self) -> bool {
        self.m == default_m(crate::ring::ParityClass::of(self.q))
    }
}

/// Center and radius of the circumference carrying a family's points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

/// A generated point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CirclePoint {
    pub p: u64,
    pub z: Complex64,
    /// Exact normalized seed output, when the modulus has a supported shape.
    pub u: Option<UnitFraction>,
    pub center: Complex64,
    pub radius: f64,
}

impl CirclePoint {
    /// `| |z − center| − radius |`.
    pub fn circle_residual(&self) -> f64 {
        ((self.z - self.center).norm() - self.radius).abs()
    }
}

/// `(i cosh²ρ, sinh²ρ)` for the hyperbolic families, `(i cos²ρ, sin²ρ)` otherwise.
pub fn circle_params(config: &FamilyConfig) -> Circle {
    circle_for(config.family, config.rho)
}

pub fn circle_for(family: Family, rho: f64) -> Circle {
    let (c2, s2) = if family.is_hyperbolic() {
        (rho.cosh().powi(2), rho.sinh().powi(2))
    } else {
        (rho.cos().powi(2), rho.sin().powi(2))
    };
    Circle {
        center: Complex64::new(0.0, c2),
        radius: s2,
    }
}

/// The point on the family's circle at vertex angle `angle`.
pub fn z_from_angle(family: Family, circle: &Circle, angle: f64) -> Complex64 {
    let (s, c) = angle.sin_cos();
    let r = circle.radius;
    if family.is_hyperbolic() {
        // i c̃² + i s̃² e^{-iϑ}
        Complex64::new(r * s, circle.center.im + r * c)
    } else {
        // i c² − i s² e^{iϑ}
        Complex64::new(r * s, circle.center.im - r * c)
    }
}

/// `z_{q,m}(p)` from the closed-form vertex angle.
pub fn z_point(config: &FamilyConfig, p: &UnitResidue) -> Result<CirclePoint> {
    config.validate()?;
    let params = config.theta_params()?;
    let angle = vartheta(&params, p)?;
    let circle = circle_params(config);
    Ok(CirclePoint {
        p: p.p(),
        z: z_from_angle(config.family, &circle, angle),
        u: None,
        center: circle.center,
        radius: circle.radius,
    })
}

/// Point placed by an explicit `u_p`: angle `2π u_p` plus the torsion offset of the class.
pub fn z_from_u(config: &FamilyConfig, p: u64, u: UnitFraction) -> CirclePoint {
    let circle = circle_params(config);
    let class = crate::ring::ParityClass::of(config.q);
    let angle = TAU * u.numer as f64 / u.denom as f64 + torsion_offset(class, config.q, config.theta0);
    CirclePoint {
        p,
        z: z_from_angle(config.family, &circle, angle),
        u: Some(u),
        center: circle.center,
        radius: circle.radius,
    }
}

#[derive(Debug, Clone)]
enum Source {
    Units { next_p: u64 },
    Normalized(USeq),
}

/// Single-pass iterator over the points of a configuration, ascending in `p`.
#[derive(Debug, Clone)]
pub struct PointStream {
    config: FamilyConfig,
    source: Source,
}

impl PointStream {
    pub fn config(&self) -> &FamilyConfig {
        &self.config
    }
}

impl Iterator for PointStream {
    type Item = CirclePoint;

    fn next(&mut self) -> Option<CirclePoint> {
        match &mut self.source {
            Source::Units { next_p } => {
                let q = self.config.q;
                while *next_p < q {
                    let p = *next_p;
                    *next_p += 1;
                    if gcd_unchecked(p, q) == 1 {
                        let unit = UnitResidue::new(p, q).expect("coprime residue");
                        return Some(z_point(&self.config, &unit).expect("validated config"));
                    }
                }
                None
            }
            Source::Normalized(seq) => seq.next().map(|v| z_from_u(&self.config, v.p, v.u)),
        }
    }
}

/// Streams the points of `config`.
///
/// With `with_u`, the seeds and their `u_p` come from the normalized
/// sequence of the modulus shape (which for `q = 2^ω` includes `p = 0`) and
/// each point is placed at angle `2π u_p` plus the torsion offset. This
/// requires the default vertex index. Without `with_u`, every unit `p` is
/// mapped through the closed-form angle for any `q` and `m`.
pub fn stream(config: &FamilyConfig, with_u: bool) -> Result<PointStream> {
    config.validate()?;
    let source = if with_u {
        if !config.uses_default_m() {
            return Err(Error::InvalidConfig(format!(
                "u_p is defined for the default vertex index only (m = {} for q = {})",
                default_m(crate::ring::ParityClass::of(config.q)),
                config.q
            )));
        }
        Source::Normalized(u_seq_iter(config.q)?)
    } else {
        Source::Units { next_p: 0 }
    };
    Ok(PointStream {
        config: config.clone(),
        source,
    })
}
