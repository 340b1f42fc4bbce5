//! Empirical randomness checks: exact star discrepancy in one and two
//! dimensions, chi-square uniformity, permutation structure and circle
//! membership.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;

use crate::eicg::eicg_seq;
use crate::error::{Error, Result};
use crate::theta::{u_seq_iter, ModulusShape};
use crate::zgen::CirclePoint;

/// Largest sample accepted by the one-dimensional discrepancy.
pub const STAR_CAP: usize = 1_000_000;
/// Largest sample accepted by the serial (two-dimensional) discrepancy.
pub const SERIAL_CAP: usize = 5_000;

fn check_unit_interval(points: &[f64]) -> Result<()> {
    if let Some(x) = points.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::InvalidConfig(format!("sample value {x} outside [0, 1]")));
    }
    Ok(())
}

/// Exact `D*_N = max_i max(i/N − x_(i), x_(i) − (i−1)/N)` over the sorted sample.
pub fn star_discrepancy(points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.len() > STAR_CAP {
        return Err(Error::SampleCap { what: "star discrepancy", cap: STAR_CAP, got: points.len() });
    }
    check_unit_interval(points)?;
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as f64;
            ((i + 1.0) / n - x).max(x - i / n)
        })
        .fold(0.0, f64::max))
}

fn ranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut grid: Vec<f64> = values.to_vec();
    grid.push(1.0);
    grid.sort_unstable_by(f64::total_cmp);
    grid.dedup();
    let idx = values
        .iter()
        .map(|v| grid.partition_point(|g| g < v))
        .collect();
    (grid, idx)
}

/// Exact star discrepancy of a two-dimensional point set over anchored boxes
/// `[0, a) × [0, b)`.
///
/// The supremum is attained with `a` and `b` on the grid of observed
/// coordinates plus 1, comparing the volume against the strictly-inside
/// count and the closed count against the volume. Cost is
/// `O(|X| · |Y|)` after sorting.
pub fn star_discrepancy_2d(points: &[[f64; 2]]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = points.iter().map(|p| p[1]).collect();
    check_unit_interval(&xs)?;
    check_unit_interval(&ys)?;
    let (xgrid, xr) = ranks(&xs);
    let (ygrid, yr) = ranks(&ys);

    let mut by_x: Vec<Vec<usize>> = vec![Vec::new(); xgrid.len()];
    for (k, &i) in xr.iter().enumerate() {
        by_x[i].push(yr[k]);
    }

    let n = points.len() as f64;
    let mut column = vec![0u32; ygrid.len()];
    let mut best = 0.0f64;
    for (i, &a) in xgrid.iter().enumerate() {
        // Points with x < a are already in `column`.
        let mut open = 0u32;
        for (j, &b) in ygrid.iter().enumerate() {
            best = best.max(a * b - open as f64 / n);
            open += column[j];
        }
        for &j in &by_x[i] {
            column[j] += 1;
        }
        let mut closed = 0u32;
        for (j, &b) in ygrid.iter().enumerate() {
            closed += column[j];
            best = best.max(closed as f64 / n - a * b);
        }
    }
    Ok(best)
}

/// How consecutive values are grouped into pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// `(u_0,u_1), (u_1,u_2), …` — `N − 1` pairs.
    #[default]
    Overlapping,
    /// `(u_0,u_1), (u_2,u_3), …` — `⌊N/2⌋` pairs.
    Disjoint,
}

/// Serial test: star discrepancy of successive pairs.
pub fn serial_discrepancy(points: &[f64], dim: usize, mode: PairMode) -> Result<f64> {
    if dim != 2 {
        return Err(Error::Unsupported(format!("serial test in dimension {dim}")));
    }
    if points.len() < dim {
        return Err(Error::InsufficientSamples { what: "serial test", need: dim, got: points.len() });
    }
    if points.len() > SERIAL_CAP {
        return Err(Error::SampleCap { what: "serial test", cap: SERIAL_CAP, got: points.len() });
    }
    let pairs: Vec<[f64; 2]> = match mode {
        PairMode::Overlapping => points.windows(2).map(|w| [w[0], w[1]]).collect(),
        PairMode::Disjoint => points.chunks_exact(2).map(|w| [w[0], w[1]]).collect(),
    };
    star_discrepancy_2d(&pairs)
}

/// Overlapping-pair serial discrepancy.
pub fn serial_pairs_discrepancy(points: &[f64], dim: usize) -> Result<f64> {
    serial_discrepancy(points, dim, PairMode::Overlapping)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Upper tail `P(χ²_dof >= statistic)`.
pub fn chi_square_p_value(statistic: f64, dof: usize) -> f64 {
    if statistic <= 0.0 {
        return 1.0;
    }
    gamma_ur(dof as f64 / 2.0, statistic / 2.0)
}

/// Pearson chi-square against the uniform law on `bins` equal cells of `[0, 1)`.
pub fn chi_square_uniform(points: &[f64], bins: usize) -> Result<ChiSquare> {
    if bins < 2 {
        return Err(Error::InvalidConfig(format!("chi-square needs at least 2 bins, got {bins}")));
    }
    if points.len() < 5 * bins {
        return Err(Error::InsufficientSamples {
            what: "chi-square",
            need: 5 * bins,
            got: points.len(),
        });
    }
    check_unit_interval(points)?;
    let mut counts = vec![0u64; bins];
    for &x in points {
        counts[((x * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let expected = points.len() as f64 / bins as f64;
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = bins - 1;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: chi_square_p_value(statistic, dof),
    })
}

/// Generator whose full-period output is checked by [`permutation_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// The normalized filament sequence of the given modulus shape.
    Filament(ModulusShape),
    /// `inv(a n + b)` over `n = 0 .. q`.
    Eicg { a: i64, b: i64 },
}

/// True iff one full run of the generator produces each expected residue
/// exactly once: `{1..q−1}` (odd prime), `{1..q/2−1}` (twice an odd prime),
/// the odd residues (power of two), or `Z_q` (EICG).
pub fn permutation_check(q: u64, spec: GeneratorSpec) -> Result<bool> {
    let (mut got, expected): (Vec<u64>, Vec<u64>) = match spec {
        GeneratorSpec::Filament(shape) => {
            let actual = ModulusShape::of(q)?;
            if actual != shape {
                return Err(Error::UnsupportedModulus { q });
            }
            let got = u_seq_iter(q)?.map(|v| v.u.numer).collect();
            let expected = match shape {
                ModulusShape::OddPrime => (1..q).collect(),
                ModulusShape::TwiceOddPrime => (1..q / 2).collect(),
                ModulusShape::PowerOfTwo => (1..q).step_by(2).collect(),
            };
            (got, expected)
        }
        GeneratorSpec::Eicg { a, b } => (eicg_seq(q, a, b, 0, q as usize)?, (0..q).collect()),
    };
    got.sort_unstable();
    Ok(got == expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleReport {
    pub pass: bool,
    /// Largest `| |z − c| − r | / r` (absolute when `r = 0`).
    pub max_rel_residual: f64,
    /// Star discrepancy of the angles `arg(z − c) / 2π`; `None` on a
    /// degenerate circle.
    pub angle_discrepancy: Option<f64>,
}

/// Checks that every point lies on its circumference within `tol · radius`.
pub fn circle_test(points: &[CirclePoint], tol: f64) -> Result<CircleReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pass = true;
    let mut worst = 0.0f64;
    for pt in points {
        let residual = pt.circle_residual();
        pass &= residual <= tol * pt.radius;
        let rel = if pt.radius > 0.0 { residual / pt.radius } else { residual };
        if rel.is_nan() || rel > worst {
            worst = rel;
        }
    }
    let angle_discrepancy = if points.iter().all(|pt| pt.radius > 0.0) && points.len() <= STAR_CAP {
        let angles: Vec<f64> = points
            .iter()
            .map(|pt| crate::gauss::normalize_angle((pt.z - pt.center).arg()) / TAU)
            .collect();
        Some(star_discrepancy(&angles)?)
    } else {
        None
    };
    Ok(CircleReport {
        pass,
        max_rel_residual: worst,
        angle_discrepancy,
    })
}

/// Pass rule of a test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    AtMost(f64),
    /// Strictly greater than.
    Above(f64),
    /// Open interval.
    Between(f64, f64),
}

impl Threshold {
    pub fn admits(&self, value: f64) -> bool {
        match *self {
            Threshold::AtMost(max) => value <= max,
            Threshold::Above(min) => value > min,
            Threshold::Between(lo, hi) => value > lo && value < hi,
        }
    }
}

/// Outcome of one statistical test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test: String,
    pub n: usize,
    pub statistic: f64,
    pub threshold: Threshold,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub metadata: BTreeMap<String, String>,
}

impl TestReport {
    /// Builds a report whose pass flag is `threshold.admits(statistic)`.
    pub fn new(test: &str, n: usize, statistic: f64, threshold: Threshold) -> Self {
        TestReport {
            test: test.to_string(),
            n,
            statistic,
            threshold,
            pass: threshold.admits(statistic),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zgen::{stream, Family, FamilyConfig};
    use num_complex::Complex64;
    use proptest::prelude::*;

    /// Evaluates `|count/N − t|` at every breakpoint directly.
    fn brute_star(points: &[f64]) -> f64 {
        let n = points.len() as f64;
        let mut ts: Vec<f64> = points.to_vec();
        ts.push(1.0);
        let mut best = 0.0f64;
        for &t in &ts {
            let below = points.iter().filter(|&&x| x < t).count() as f64;
            let at_or_below = points.iter().filter(|&&x| x <= t).count() as f64;
            best = best.max(t - below / n).max(at_or_below / n - t);
        }
        best
    }

    fn brute_star_2d(points: &[[f64; 2]]) -> f64 {
        let n = points.len() as f64;
        let mut a_s: Vec<f64> = points.iter().map(|p| p[0]).collect();
        let mut b_s: Vec<f64> = points.iter().map(|p| p[1]).collect();
        a_s.push(1.0);
        b_s.push(1.0);
        let mut best = 0.0f64;
        for &a in &a_s {
            for &b in &b_s {
                let open = points.iter().filter(|p| p[0] < a && p[1] < b).count() as f64;
                let closed = points.iter().filter(|p| p[0] <= a && p[1] <= b).count() as f64;
                best = best.max(a * b - open / n).max(closed / n - a * b);
            }
        }
        best
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_discrepancy(&[0.5]), Ok(0.5));
        assert!((star_discrepancy(&[0.25, 0.5, 0.75]).unwrap() - 0.25).abs() < 1e-15);
        assert!((star_discrepancy(&[0.8, 0.2, 0.6, 0.4]).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(star_discrepancy(&[]), Err(Error::EmptyInput));
        assert!(star_discrepancy(&[1.5]).is_err());
    }

    #[test]
    fn serial_examples() {
        assert!((serial_pairs_discrepancy(&[0.5, 0.5, 0.5], 2).unwrap() - 0.75).abs() < 1e-15);
        assert!((star_discrepancy_2d(&[[0.5, 0.5]]).unwrap() - 0.75).abs() < 1e-15);
        let grid: Vec<[f64; 2]> = (0..32)
            .flat_map(|i| (0..32).map(move |j| [(i as f64 + 0.5) / 32.0, (j as f64 + 0.5) / 32.0]))
            .collect();
        let d = star_discrepancy_2d(&grid).unwrap();
        assert!((d - 0.031005859375).abs() < 1e-12, "{d}");
        assert!(d <= 2.0 / 32.0);
        assert!(matches!(serial_pairs_discrepancy(&[0.1, 0.2, 0.3], 3), Err(Error::Unsupported(_))));
        assert!(matches!(serial_pairs_discrepancy(&[0.1], 2), Err(Error::InsufficientSamples { .. })));
        let big = vec![0.5; SERIAL_CAP + 1];
        assert!(matches!(serial_pairs_discrepancy(&big, 2), Err(Error::SampleCap { .. })));
    }

    #[test]
    fn disjoint_pairs() {
        let u = [0.1, 0.9, 0.4, 0.6, 0.7];
        let d = serial_discrepancy(&u, 2, PairMode::Disjoint).unwrap();
        assert_eq!(d, brute_star_2d(&[[0.1, 0.9], [0.4, 0.6]]));
    }

    #[test]
    fn chi_square_examples() {
        let even: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let c = chi_square_uniform(&even, 10).unwrap();
        assert_eq!((c.statistic, c.p_value, c.dof), (0.0, 1.0, 9));
        let lumped = vec![0.1; 100];
        assert!((chi_square_uniform(&lumped, 2).unwrap().statistic - 100.0).abs() < 1e-12);
        assert!(chi_square_uniform(&lumped, 1).is_err());
        assert!(matches!(chi_square_uniform(&lumped, 30), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn chi_square_tail_reference_values() {
        // scipy.stats.chi2.sf
        assert!((chi_square_p_value(3.841458820694124, 1) - 0.05).abs() < 1e-10);
        assert!((chi_square_p_value(49.0, 49) - 0.4731282956547652).abs() < 1e-10);
        assert!((chi_square_p_value(80.0, 49) - 0.0034012114117295514).abs() < 1e-10);
        assert!((chi_square_p_value(2.0, 4) - 0.7357588823428847).abs() < 1e-10);
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation_check(7, GeneratorSpec::Filament(ModulusShape::OddPrime)), Ok(true));
        assert_eq!(permutation_check(22, GeneratorSpec::Filament(ModulusShape::TwiceOddPrime)), Ok(true));
        assert_eq!(permutation_check(8, GeneratorSpec::Filament(ModulusShape::PowerOfTwo)), Ok(false));
        assert_eq!(
            permutation_check(9, GeneratorSpec::Filament(ModulusShape::OddPrime)),
            Err(Error::UnsupportedModulus { q: 9 })
        );
        assert_eq!(
            permutation_check(11, GeneratorSpec::Filament(ModulusShape::PowerOfTwo)),
            Err(Error::UnsupportedModulus { q: 11 })
        );
        assert_eq!(permutation_check(13, GeneratorSpec::Eicg { a: 3, b: 5 }), Ok(true));
    }

    #[test]
    fn circle_examples() {
        let cfg = FamilyConfig::new(Family::PlanarHyperbolic, 7, 0.0, 0.5).unwrap();
        let mut pts: Vec<CirclePoint> = stream(&cfg, true).unwrap().collect();
        let r = circle_test(&pts, 1e-12).unwrap();
        assert!(r.pass && r.angle_discrepancy.is_some());
        pts[2].z += Complex64::new(1e-3, 0.0);
        assert!(!circle_test(&pts, 1e-6).unwrap().pass);

        let flat = FamilyConfig::new(Family::HyperbolicHelical, 7, 0.2, 0.0).unwrap();
        let pts: Vec<CirclePoint> = stream(&flat, true).unwrap().collect();
        let r = circle_test(&pts, 1e-12).unwrap();
        assert!(r.pass && r.angle_discrepancy.is_none());
        assert_eq!(circle_test(&[], 1e-12), Err(Error::EmptyInput));
    }

    #[test]
    fn frozen_values_for_q_10007() {
        // Independently computed with numpy for u_p = (4p)^{-1} mod 10007 / 10007.
        let u: Vec<f64> = u_seq_iter(10007).unwrap().map(|v| v.u.to_f64()).collect();
        assert!((star_discrepancy(&u).unwrap() - 9.9930048965724e-05).abs() < 1e-12);
        let s = serial_pairs_discrepancy(&u[..2000], 2).unwrap();
        assert!((s - 0.037117626300125245).abs() < 1e-12, "{s}");
    }

    #[test]
    fn threshold_rules() {
        assert!(Threshold::AtMost(0.1).admits(0.1));
        assert!(!Threshold::Between(0.0, 1.0).admits(1.0));
        assert!(Threshold::Above(0.001).admits(1.0) && !Threshold::Above(0.001).admits(0.001));
        assert!(!Threshold::AtMost(0.1).admits(f64::NAN));
        let r = TestReport::new("x", 3, 0.5, Threshold::Between(0.001, 0.999)).with_meta("q", 7);
        assert!(r.pass && r.metadata["q"] == "7");
    }

    proptest! {
        #[test]
        fn star_matches_brute_force(points in prop::collection::vec(0.0f64..1.0, 1..200)) {
            let fast = star_discrepancy(&points).unwrap();
            prop_assert!((fast - brute_star(&points)).abs() < 1e-12);
        }

        #[test]
        fn star_2d_matches_brute_force(
            points in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..40),
            snap in any::<bool>(),
        ) {
            // Snapping to a coarse grid exercises ties.
            let pts: Vec<[f64; 2]> = points
                .iter()
                .map(|&(x, y)| if snap { [(x * 8.0).floor() / 8.0, (y * 8.0).floor() / 8.0] } else { [x, y] })
                .collect();
            let fast = star_discrepancy_2d(&pts).unwrap();
            prop_assert!((fast - brute_star_2d(&pts)).abs() < 1e-12);
        }

        #[test]
        fn chi_square_tail_is_monotone(dof in 1usize..200, a in 0.0f64..400.0, b in 0.0f64..400.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(chi_square_p_value(hi, dof) <= chi_square_p_value(lo, dof));
        }
    }
}
