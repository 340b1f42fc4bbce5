use std::fs::File;

use filament_rng::stats::{
    chi_square_uniform, circle_test, serial_discrepancy, star_discrepancy, TestReport, Threshold,
};
use filament_rng::zgen::circle_for;
use filament_rng::{CirclePoint, Family};
use num_complex::Complex64;

use crate::args::{StatsArgs, TestName};
use crate::{output, Failure};

/// Columns pulled from the input CSV.
struct Sample {
    u: Vec<f64>,
    z: Vec<Complex64>,
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

fn read_sample(args: &StatsArgs, need_u: bool, need_z: bool) -> Result<Sample, Failure> {
    let path = &args.input;
    let file = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Failure::Usage(format!("{}: line 1: {e}", path.display())))?
        .clone();
    let want = |name: &str, needed: bool| -> Result<Option<usize>, Failure> {
        match (column(&headers, name), needed) {
            (None, true) => Err(Failure::Usage(format!("{}: line 1: missing column {name:?}", path.display()))),
            (idx, _) => Ok(idx.filter(|_| needed)),
        }
    };
    let u_col = want("u", need_u)?;
    let re_col = want("re_z", need_z)?;
    let im_col = want("im_z", need_z)?;

    let mut sample = Sample { u: Vec::new(), z: Vec::new() };
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Failure::Usage(format!("{}: line {line}: {e}", path.display()))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |idx: usize, name: &str| -> Result<f64, Failure> {
            let raw = record.get(idx).unwrap_or("").trim();
            raw.parse::<f64>().map_err(|_| {
                Failure::Usage(format!("{}: line {line}: bad {name} value {raw:?}", path.display()))
            })
        };
        if let Some(i) = u_col {
            sample.u.push(field(i, "u")?);
        }
        if let (Some(r), Some(i)) = (re_col, im_col) {
            sample.z.push(Complex64::new(field(r, "re_z")?, field(i, "im_z")?));
        }
    }
    if sample.u.is_empty() && sample.z.is_empty() {
        return Err(Failure::Usage(format!("{}: no data rows", path.display())));
    }
    Ok(sample)
}

pub fn run(args: &StatsArgs) -> Result<(), Failure> {
    let need_u = args.tests.iter().any(|t| *t != TestName::Circle);
    let need_z = args.tests.contains(&TestName::Circle);
    let circle = if need_z {
        let family: Family = args
            .family
            .ok_or_else(|| Failure::Usage("the circle test needs --family".into()))?
            .into();
        let rho = args.rho.ok_or_else(|| Failure::Usage("the circle test needs --rho".into()))?;
        Some(circle_for(family, rho))
    } else {
        None
    };
    let sample = read_sample(args, need_u, need_z)?;
    let n = sample.u.len();

    let mut reports = Vec::new();
    for test in &args.tests {
        let report = match test {
            TestName::Discrepancy => TestReport::new(
                "discrepancy",
                n,
                star_discrepancy(&sample.u)?,
                Threshold::AtMost(args.max_discrepancy),
            ),
            TestName::Chi2 => {
                let c = chi_square_uniform(&sample.u, args.bins)?;
                let band = if args.chi2_max_p >= 1.0 {
                    Threshold::Above(args.chi2_min_p)
                } else {
                    Threshold::Between(args.chi2_min_p, args.chi2_max_p)
                };
                TestReport::new("chi2", n, c.p_value, band)
                    .with_meta("statistic", c.statistic)
                    .with_meta("bins", args.bins)
                    .with_meta("dof", c.dof)
            }
            TestName::Serial => {
                let k = args.serial_points.unwrap_or(n).min(n);
                let d = serial_discrepancy(&sample.u[..k], 2, args.pair_mode.into())?;
                TestReport::new("serial", k, d, Threshold::AtMost(args.max_serial))
                    .with_meta("pair_mode", format!("{:?}", args.pair_mode).to_lowercase())
            }
            TestName::Circle => {
                let c = circle.expect("circle resolved above");
                let points: Vec<CirclePoint> = sample
                    .z
                    .iter()
                    .enumerate()
                    .map(|(i, &z)| CirclePoint {
                        p: i as u64,
                        z,
                        u: None,
                        center: c.center,
                        radius: c.radius,
                    })
                    .collect();
                let r = circle_test(&points, args.tol)?;
                let mut report = TestReport::new(
                    "circle",
                    points.len(),
                    r.max_rel_residual,
                    Threshold::AtMost(args.tol),
                );
                // A degenerate circle is judged on absolute residuals.
                report.pass = r.pass;
                if let Some(d) = r.angle_discrepancy {
                    report = report.with_meta("angle_discrepancy", d);
                }
                report
            }
        };
        reports.push(report);
    }
    output::write_json(args.output.as_deref(), &reports)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.test.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed tests: {}", failed.join(", "))))
    }
}
