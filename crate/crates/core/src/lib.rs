//! Pseudorandom points on circumferences generated by the evolution of
//! polygonal vortex filaments at rational times.
//!
//! At time `p/q` the tangent vectors of a regular polygon (planar or helical,
//! in Euclidean or Minkowski 3-space) turn through angles that depend on `p`
//! only through a modular inverse `φ(p)`. Packing the triple product of three
//! consecutive tangents and the scalar product of the outer two into a
//! complex number yields points on a fixed circle, placed by an explicit
//! inversive congruential sequence.
//!
//! * [`ring`] — gcd, inverses, totients, parity classes of `q`.
//! * [`gauss`] — generalized quadratic Gauss sums by direct summation.
//! * [`theta`] — closed-form vertex angles and the sequences `u_p`.
//! * [`zgen`] — the four point generators and a streaming interface.
//! * [`oracle`] — corner matrices, tangent chains, and the cross-check.
//! * [`eicg`] — LCG / ICG / EICG / compound references.
//! * [`stats`] — discrepancy, chi-square, permutation and circle tests.
//! * [`export`] — CSV and JSON encodings of point streams.

pub mod eicg;
pub mod error;
pub mod export;
pub mod gauss;
pub mod oracle;
pub mod ring;
pub mod stats;
pub mod theta;
pub mod zgen;

pub use error::{Error, Result};
pub use gauss::{GaussSumValue, MagnitudeClass};
pub use oracle::{FrameMatrix, Geometry, SpaceVector};
pub use ring::{ParityClass, RingParams, UnitResidue};
pub use stats::{TestReport, Threshold};
pub use theta::{ModulusShape, ThetaParams, UnitFraction};
pub use zgen::{Circle, CirclePoint, Family, FamilyConfig};
