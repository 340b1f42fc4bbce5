//! Interchange encodings of point streams.
//!
//! CSV: header `p,u,re_z,im_z`, one row per point, floats in scientific
//! notation with 17 significant digits, empty `u` when not requested.
//! JSON: `{"header": {...}, "points": [{"p", "u", "z": [re, im]}, ...]}`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::zgen::{circle_params, CirclePoint, Family, FamilyConfig};

pub const CSV_HEADER: &str = "p,u,re_z,im_z";

/// 17 significant digits; parses back to the same `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(pt: &CirclePoint) -> String {
    let u = pt.u.map(|u| format_f64(u.to_f64())).unwrap_or_default();
    format!("{},{},{},{}", pt.p, u, format_f64(pt.z.re), format_f64(pt.z.im))
}

pub fn write_csv<W: Write>(mut out: W, points: impl IntoIterator<Item = CirclePoint>) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for pt in points {
        writeln!(out, "{}", csv_row(&pt))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamHeader {
    pub family: Family,
    pub q: u64,
    pub m: u64,
    pub theta0: f64,
    pub rho: f64,
    pub center: [f64; 2],
    pub radius: f64,
}

impl StreamHeader {
    pub fn new(config: &FamilyConfig) -> Self {
        let circle = circle_params(config);
        StreamHeader {
            family: config.family,
            q: config.q,
            m: config.m,
            theta0: config.theta0,
            rho: config.rho,
            center: [circle.center.re, circle.center.im],
            radius: circle.radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonPoint {
    pub p: u64,
    pub u: Option<f64>,
    pub z: [f64; 2],
}

impl From<&CirclePoint> for JsonPoint {
    fn from(pt: &CirclePoint) -> Self {
        JsonPoint {
            p: pt.p,
            u: pt.u.map(|u| u.to_f64()),
            z: [pt.z.re, pt.z.im],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamDocument {
    pub header: StreamHeader,
    pub points: Vec<JsonPoint>,
}

impl StreamDocument {
    pub fn new(config: &FamilyConfig, points: impl IntoIterator<Item = CirclePoint>) -> Self {
        StreamDocument {
            header: StreamHeader::new(config),
            points: points.into_iter().map(|pt| JsonPoint::from(&pt)).collect(),
        }
    }
}
