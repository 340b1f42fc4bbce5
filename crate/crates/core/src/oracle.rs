//! First-principles check of the generators: corner transition matrices in
//! Euclidean and Minkowski 3-space, tangent vectors obtained by chaining them,
//! and the triple/scalar products computed directly from those tangents.
//!
//! A corner of weight `ρ e^{iθ}` acts on the frame `(T, e₁, e₂)` by
//! `H = exp(ρK)` with
//!
//! ```text
//! Euclidean:  K = [[0, cosθ, sinθ], [-cosθ, 0, 0], [-sinθ, 0, 0]],  H = I + sin ρ K + (1 − cos ρ) K²
//! Minkowski:  K = [[0, cosθ, sinθ], [ cosθ, 0, 0], [ sinθ, 0, 0]],  H = I + sinh ρ K + (cosh ρ − 1) K²
//! ```
//!
//! The tangent after a run of corners is the first row of the ordered product,
//! starting from the canonical frame. The Minkowski form is `diag(1, −1, −1)`
//! and `a ∧₋ b = η (a × b)`, so the triple product is `det[a; b; c]` in both
//! geometries.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{phase, successor_indices};
use crate::ring::{units, ParityClass, UnitResidue};
use crate::zgen::{z_point, Family, FamilyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    Euclidean,
    Minkowski,
}

impl Geometry {
    pub fn of(family: Family) -> Self {
        if family.is_hyperbolic() {
            Geometry::Minkowski
        } else {
            Geometry::Euclidean
        }
    }

    /// The bilinear form: `I` or `η = diag(1, −1, −1)`.
    pub fn metric(self) -> Matrix3<f64> {
        match self {
            Geometry::Euclidean => Matrix3::identity(),
            Geometry::Minkowski => Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        }
    }
}

/// A vector tagged with the geometry it lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceVector {
    pub coords: Vector3<f64>,
    pub geometry: Geometry,
}

impl SpaceVector {
    pub fn new(geometry: Geometry, x: f64, y: f64, z: f64) -> Self {
        SpaceVector {
            coords: Vector3::new(x, y, z),
            geometry,
        }
    }
}

/// A 3×3 frame isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMatrix {
    pub entries: Matrix3<f64>,
    pub geometry: Geometry,
}

impl FrameMatrix {
    pub fn identity(geometry: Geometry) -> Self {
        FrameMatrix {
            entries: Matrix3::identity(),
            geometry,
        }
    }

    pub fn first_row(&self) -> SpaceVector {
        let r = self.entries.row(0);
        SpaceVector::new(self.geometry, r[0], r[1], r[2])
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &FrameMatrix) -> Result<FrameMatrix> {
        if self.geometry != rhs.geometry {
            return Err(Error::GeometryMismatch);
        }
        Ok(FrameMatrix {
            entries: self.entries * rhs.entries,
            geometry: self.geometry,
        })
    }

    /// Largest entry of `Hᵀ G H − G` (and `|det H − 1|` for rotations).
    pub fn isometry_defect(&self) -> f64 {
        let g = self.geometry.metric();
        let h = &self.entries;
        let d = (h.transpose() * g * h - g).abs().max();
        match self.geometry {
            Geometry::Euclidean => d.max((h.determinant() - 1.0).abs()),
            Geometry::Minkowski => d,
        }
    }

    /// Rotation of the `(e₁, e₂)` plane, fixing the first axis. An isometry
    /// of both geometries.
    pub fn spatial_rotation(geometry: Geometry, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        FrameMatrix {
            entries: Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c),
            geometry,
        }
    }

    /// Euclidean rotation from z-y-z Euler angles.
    pub fn euler_rotation(alpha: f64, beta: f64, gamma: f64) -> Self {
        let rz = |a: f64| {
            let (s, c) = a.sin_cos();
            Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
        };
        let (s, c) = beta.sin_cos();
        let ry = Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c);
        FrameMatrix {
            entries: rz(alpha) * ry * rz(gamma),
            geometry: Geometry::Euclidean,
        }
    }

    /// Proper orthochronous Lorentz transformation `R(α) B(β) R(γ)`, with
    /// `B` a boost of rapidity `β` along the second axis.
    pub fn lorentz(alpha: f64, rapidity: f64, gamma: f64) -> Self {
        let (sh, ch) = (rapidity.sinh(), rapidity.cosh());
        let boost = Matrix3::new(ch, sh, 0.0, sh, ch, 0.0, 0.0, 0.0, 1.0);
        let ra = Self::spatial_rotation(Geometry::Minkowski, alpha).entries;
        let rg = Self::spatial_rotation(Geometry::Minkowski, gamma).entries;
        FrameMatrix {
            entries: ra * boost * rg,
            geometry: Geometry::Minkowski,
        }
    }

    pub fn apply(&self, v: &SpaceVector) -> Result<SpaceVector> {
        if self.geometry != v.geometry {
            return Err(Error::GeometryMismatch);
        }
        Ok(SpaceVector {
            coords: self.entries * v.coords,
            geometry: self.geometry,
        })
    }
}

/// Transition matrix across a corner of weight `ρ e^{iθ}`.
pub fn corner_matrix(geometry: Geometry, rho: f64, theta: f64) -> FrameMatrix {
    let (s, c) = theta.sin_cos();
    let (k, a, b) = match geometry {
        Geometry::Euclidean => (
            Matrix3::new(0.0, c, s, -c, 0.0, 0.0, -s, 0.0, 0.0),
            rho.sin(),
            1.0 - rho.cos(),
        ),
        Geometry::Minkowski => (
            Matrix3::new(0.0, c, s, c, 0.0, 0.0, s, 0.0, 0.0),
            rho.sinh(),
            rho.cosh() - 1.0,
        ),
    };
    FrameMatrix {
        entries: Matrix3::identity() + k * a + k * k * b,
        geometry,
    }
}

/// Tangent vectors `[T₀, T₁, …, Tₙ]` across `n` successive corners, with
/// `T₀ = (1, 0, 0)` and `Tₖ` the first row of `H(θₖ₋₁) ⋯ H(θ₀)`.
pub fn tangent_chain(geometry: Geometry, rho: f64, thetas: &[f64]) -> Result<Vec<SpaceVector>> {
    if thetas.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::with_capacity(thetas.len() + 1);
    let mut acc = FrameMatrix::identity(geometry);
    out.push(acc.first_row());
    for &theta in thetas {
        acc = corner_matrix(geometry, rho, theta).compose(&acc)?;
        out.push(acc.first_row());
    }
    Ok(out)
}

fn same_geometry(vs: &[&SpaceVector]) -> Result<Geometry> {
    let g = vs[0].geometry;
    if vs.iter().any(|v| v.geometry != g) {
        return Err(Error::GeometryMismatch);
    }
    Ok(g)
}

/// `a · b` or `a ∘₋ b = a₁b₁ − a₂b₂ − a₃b₃`.
pub fn scalar_product(a: &SpaceVector, b: &SpaceVector) -> Result<f64> {
    let g = same_geometry(&[a, b])?;
    Ok(a.coords.dot(&(g.metric() * b.coords)))
}

/// `a × b` or `a ∧₋ b = η (a × b)`.
pub fn cross_product(a: &SpaceVector, b: &SpaceVector) -> Result<SpaceVector> {
    let g = same_geometry(&[a, b])?;
    Ok(SpaceVector {
        coords: g.metric() * a.coords.cross(&b.coords),
        geometry: g,
    })
}

/// `(a ∧ b) ∘ c`.
pub fn triple_product(a: &SpaceVector, b: &SpaceVector, c: &SpaceVector) -> Result<f64> {
    same_geometry(&[a, b, c])?;
    scalar_product(&cross_product(a, b)?, c)
}

/// Corner angles at the two Gauss-sum indices that bracket vertex `m`,
/// including the per-index torsion offset `k θ0 / q` for helical families.
fn corner_angles(config: &FamilyConfig, p: u64) -> Result<[f64; 2]> {
    let q = config.q;
    let (base, succ) = successor_indices(config.m as i64, q);
    let torsion = if config.family.is_helical() { config.theta0 / q as f64 } else { 0.0 };
    Ok([
        phase(p, base, q)? + base as f64 * torsion,
        phase(p, succ, q)? + succ as f64 * torsion,
    ])
}

/// `(x, y)` = (triple product of three consecutive tangents, scalar product
/// of the first and third), computed from the Gauss-sum phases and explicit
/// corner matrices.
pub fn oracle_xy(config: &FamilyConfig, p: &UnitResidue) -> Result<(f64, f64)> {
    config.validate()?;
    if p.q() != config.q {
        return Err(Error::InvalidConfig(format!("residue modulus {} != q = {}", p.q(), config.q)));
    }
    let thetas = corner_angles(config, p.p())?;
    let geometry = Geometry::of(config.family);
    let t = tangent_chain(geometry, config.rho, &thetas)?;
    Ok((triple_product(&t[0], &t[1], &t[2])?, scalar_product(&t[0], &t[2])?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub x_closed: f64,
    pub y_closed: f64,
    pub x_oracle: f64,
    pub y_oracle: f64,
    pub max_abs_err: f64,
    pub pass: bool,
}

/// Compares the closed-form point against the oracle.
pub fn cross_check(config: &FamilyConfig, p: &UnitResidue, tol: f64) -> Result<CrossCheck> {
    let z = z_point(config, p)?.z;
    let (x, y) = oracle_xy(config, p)?;
    let max_abs_err = (z.re - x).abs().max((z.im - y).abs());
    Ok(CrossCheck {
        x_closed: z.re,
        y_closed: z.im,
        x_oracle: x,
        y_oracle: y,
        max_abs_err,
        pass: max_abs_err <= tol,
    })
}

/// Summary of a cross-check over every unit `p` of one modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: Family,
    pub q: u64,
    pub class: ParityClass,
    pub count: usize,
    pub max_abs_err: f64,
    pub pass: bool,
    /// `(p, m)` of the largest error.
    #[serde(skip)]
    pub worst: Option<(u64, u64)>,
}

pub fn sweep_modulus(config: &FamilyConfig, tol: f64) -> Result<SweepRecord> {
    let mut record = SweepRecord {
        family: config.family,
        q: config.q,
        class: ParityClass::of(config.q),
        count: 0,
        max_abs_err: 0.0,
        pass: true,
        worst: None,
    };
    for p in units(config.q)? {
        let check = cross_check(config, &p, tol)?;
        record.count += 1;
        // NaN must not slip through as a pass.
        if check.max_abs_err.is_nan() || check.max_abs_err > record.max_abs_err {
            record.max_abs_err = check.max_abs_err;
            record.worst = Some((p.p(), config.m));
        }
        record.pass &= check.pass;
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: Geometry = Geometry::Euclidean;
    const M: Geometry = Geometry::Minkowski;

    fn assert_mat_close(a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) {
        assert!((a - b).abs().max() <= tol, "{a} vs {b}");
    }

    #[test]
    fn corner_matrix_examples() {
        let rho = 0.37f64;
        let (s, c) = rho.sin_cos();
        let rot = Matrix3::new(c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0);
        assert_mat_close(&corner_matrix(E, rho, 0.0).entries, &rot, 1e-15);
        let (sh, ch) = (rho.sinh(), rho.cosh());
        let boost = Matrix3::new(ch, sh, 0.0, sh, ch, 0.0, 0.0, 0.0, 1.0);
        assert_mat_close(&corner_matrix(M, rho, 0.0).entries, &boost, 1e-15);
        for g in [E, M] {
            assert_mat_close(&corner_matrix(g, 0.0, 1.3).entries, &Matrix3::identity(), 0.0);
        }
    }

    #[test]
    fn first_rows() {
        let (rho, theta) = (0.8f64, 2.1f64);
        let r = corner_matrix(E, rho, theta).first_row().coords;
        let want = Vector3::new(rho.cos(), rho.sin() * theta.cos(), rho.sin() * theta.sin());
        assert!((r - want).norm() < 1e-15);
        let r = corner_matrix(M, rho, theta).first_row().coords;
        let want = Vector3::new(rho.cosh(), rho.sinh() * theta.cos(), rho.sinh() * theta.sin());
        assert!((r - want).norm() < 1e-15);
    }

    #[test]
    fn corner_matrices_are_isometries() {
        for g in [E, M] {
            for i in 0..40 {
                let h = corner_matrix(g, 0.05 * i as f64, 0.37 * i as f64);
                assert!(h.isometry_defect() < 1e-12, "{g:?} i={i}");
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        for g in [E, M] {
            let a = corner_matrix(g, 0.4, 0.1);
            let b = corner_matrix(g, 0.9, 2.2);
            let c = corner_matrix(g, 1.3, -0.7);
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            assert_mat_close(&l.entries, &r.entries, 1e-12);
            assert!(l.isometry_defect() < 1e-12);
        }
        assert!(corner_matrix(E, 0.1, 0.1).compose(&corner_matrix(M, 0.1, 0.1)).is_err());
    }

    #[test]
    fn tangent_chain_examples() {
        let rho = 0.6f64;
        let t = tangent_chain(E, rho, &[1.1]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].coords, Vector3::new(1.0, 0.0, 0.0));
        let want = Vector3::new(rho.cos(), rho.sin() * 1.1f64.cos(), rho.sin() * 1.1f64.sin());
        assert!((t[1].coords - want).norm() < 1e-15);

        let t = tangent_chain(M, rho, &[0.0, 0.0]).unwrap();
        let want = Vector3::new((2.0 * rho).cosh(), (2.0 * rho).sinh(), 0.0);
        assert!((t[2].coords - want).norm() < 1e-14);

        for g in [E, M] {
            let t = tangent_chain(g, 0.9, &[0.3, 1.7, -2.2, 4.0, 0.0]).unwrap();
            for v in &t {
                assert!((scalar_product(v, v).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(tangent_chain(E, 0.1, &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn product_examples() {
        let e1 = SpaceVector::new(M, 1.0, 0.0, 0.0);
        let e2 = SpaceVector::new(M, 0.0, 1.0, 0.0);
        let e3 = SpaceVector::new(M, 0.0, 0.0, 1.0);
        assert_eq!(triple_product(&e1, &e2, &e3), Ok(1.0));
        assert_eq!(scalar_product(&e1, &e1), Ok(1.0));
        let rho = 0.7f64;
        let b = SpaceVector::new(M, rho.cosh(), rho.sinh(), 0.0);
        let w = cross_product(&e1, &b).unwrap();
        assert!((w.coords - Vector3::new(0.0, 0.0, -rho.sinh())).norm() < 1e-15);
        let f = SpaceVector::new(E, 1.0, 0.0, 0.0);
        assert_eq!(scalar_product(&e1, &f), Err(Error::GeometryMismatch));
        assert_eq!(triple_product(&e1, &e2, &f), Err(Error::GeometryMismatch));
    }

    #[test]
    fn triple_is_determinant() {
        let a = SpaceVector::new(M, 0.3, -1.2, 2.0);
        let b = SpaceVector::new(M, 1.1, 0.4, -0.5);
        let c = SpaceVector::new(M, -0.7, 0.9, 0.25);
        let det = Matrix3::from_rows(&[a.coords.transpose(), b.coords.transpose(), c.coords.transpose()]).determinant();
        assert!((triple_product(&a, &b, &c).unwrap() - det).abs() < 1e-14);
    }

    #[test]
    fn oracle_examples() {
        let cfg = FamilyConfig::new(Family::PlanarHyperbolic, 5, 0.0, 0.5).unwrap();
        let (x, y) = oracle_xy(&cfg, &UnitResidue::new(1, 5).unwrap()).unwrap();
        let (s2, c2) = (0.5f64.sinh().powi(2), 0.5f64.cosh().powi(2));
        let a = 8.0 * std::f64::consts::PI / 5.0;
        assert!((x - s2 * a.sin()).abs() < 1e-12);
        assert!((y - (c2 + s2 * a.cos())).abs() < 1e-12);

        for family in Family::ALL {
            let theta0 = if family.is_helical() { 0.4 } else { 0.0 };
            let cfg = FamilyConfig::new(family, 9, theta0, 0.0).unwrap();
            let (x, y) = oracle_xy(&cfg, &UnitResidue::new(2, 9).unwrap()).unwrap();
            assert!(x.abs() < 1e-15 && (y - 1.0).abs() < 1e-15);
        }

        let cfg = FamilyConfig::new(Family::EuclideanHelical, 5, 0.3, 0.4).unwrap();
        let (x, y) = oracle_xy(&cfg, &UnitResidue::new(2, 5).unwrap()).unwrap();
        let (s2, c2) = (0.4f64.sin().powi(2), 0.4f64.cos().powi(2));
        assert!((x * x + (y - c2).powi(2) - s2 * s2).abs() < 1e-14);
    }

    #[test]
    fn cross_check_examples() {
        let check = |family, q, theta0, rho, p, m| {
            let cfg = FamilyConfig::new(family, q, theta0, rho).unwrap().with_m(m);
            cross_check(&cfg, &UnitResidue::new(p, q).unwrap(), 1e-10).unwrap()
        };
        assert!(check(Family::PlanarHyperbolic, 3, 0.0, 0.5, 1, 0).pass);
        assert!(check(Family::PlanarHyperbolic, 6, 0.0, 0.5, 1, 1).pass);
        assert!(check(Family::HyperbolicHelical, 6, 0.7, 0.5, 5, 1).pass);
        assert!(check(Family::EuclideanHelical, 8, 0.7, 0.3, 3, 0).pass);
    }

    #[test]
    fn cross_check_every_vertex_small_moduli() {
        for q in 2..=40u64 {
            for family in Family::ALL {
                let theta0 = if family.is_helical() { 1.3 } else { 0.0 };
                for m in 0..q {
                    let cfg = FamilyConfig::new(family, q, theta0, 0.45).unwrap().with_m(m);
                    let rec = sweep_modulus(&cfg, 1e-10).unwrap();
                    assert!(rec.pass, "{family} q={q} m={m}: {}", rec.max_abs_err);
                }
            }
        }
    }
}
