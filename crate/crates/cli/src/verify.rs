use filament_rng::gauss::{angle_distance, magnitude_class, GaussTable};
use filament_rng::oracle::sweep_modulus;
use filament_rng::ring::units;
use filament_rng::theta::{vartheta, ThetaParams};
use filament_rng::{Family, FamilyConfig, ParityClass};
use serde::Serialize;

use crate::args::VerifyArgs;
use crate::{output, Failure};

/// Largest accepted `||G| − expected| / √q`.
const MAGNITUDE_TOL: f64 = 1e-9;

#[derive(Debug, Serialize)]
struct VerifyRecord {
    family: String,
    q: u64,
    class: ParityClass,
    count: usize,
    max_abs_err: f64,
    pass: bool,
}

struct Mismatch {
    family: String,
    q: u64,
    p: u64,
    m: u64,
}

#[derive(Default)]
struct Worst {
    err: f64,
    at: Option<(u64, u64)>,
    count: usize,
}

impl Worst {
    fn observe(&mut self, err: f64, p: u64, m: u64) {
        self.count += 1;
        if err.is_nan() || err > self.err {
            self.err = err;
            self.at = Some((p, m));
        }
    }
}

/// Magnitude law and phase-increment law for every unit `p` and every `m`.
fn gauss_records(q: u64, angle_tol: f64) -> Result<[(VerifyRecord, Option<Mismatch>); 2], Failure> {
    let table = GaussTable::new(q)?;
    let root_q = (q as f64).sqrt();
    let mut magnitude = Worst::default();
    let mut angle = Worst::default();
    for p in units(q)? {
        let sums = table.sums_for(p.p())?;
        for m in 0..q {
            let want = magnitude_class(p.p(), m as i64, q).expected_modulus(q);
            magnitude.observe((sums[m as usize].norm() - want).abs() / root_q, p.p(), m);
            let direct = table.phase_increment_from(&sums, p.p(), m as i64)?;
            let closed = vartheta(&ThetaParams::new(q, m, 0.0)?, &p)?;
            angle.observe(angle_distance(direct, closed), p.p(), m);
        }
    }
    let record = |name: &str, w: Worst, tol: f64| {
        let pass = w.err <= tol;
        let mismatch = (!pass).then(|| {
            let (p, m) = w.at.unwrap_or_default();
            Mismatch { family: name.to_string(), q, p, m }
        });
        (
            VerifyRecord {
                family: name.to_string(),
                q,
                class: ParityClass::of(q),
                count: w.count,
                max_abs_err: w.err,
                pass,
            },
            mismatch,
        )
    };
    Ok([
        record("gauss-magnitude", magnitude, MAGNITUDE_TOL),
        record("gauss-theta", angle, angle_tol),
    ])
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    if args.q_min < 2 || args.q_max < args.q_min {
        return Err(Failure::Usage(format!(
            "empty sweep: need 2 <= q-min <= q-max, got q-min = {}, q-max = {}",
            args.q_min, args.q_max
        )));
    }
    let mut records = Vec::new();
    let mut mismatches = Vec::new();
    for q in args.q_min..=args.q_max {
        for family in Family::ALL {
            let theta0 = if family.is_helical() { args.theta0 } else { 0.0 };
            let config = FamilyConfig::new(family, q, theta0, args.rho)?;
            let rec = sweep_modulus(&config, args.tol)?;
            if !rec.pass {
                let (p, m) = rec.worst.unwrap_or_default();
                mismatches.push(Mismatch { family: family.to_string(), q, p, m });
            }
            records.push(VerifyRecord {
                family: family.to_string(),
                q,
                class: rec.class,
                count: rec.count,
                max_abs_err: rec.max_abs_err,
                pass: rec.pass,
            });
        }
        for (rec, mismatch) in gauss_records(q, args.angle_tol)? {
            records.push(rec);
            mismatches.extend(mismatch);
        }
    }
    output::write_json(args.output.as_deref(), &records)?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = mismatches
            .iter()
            .map(|m| format!("(family={}, q={}, p={}, m={})", m.family, m.q, m.p, m.m))
            .collect();
        Err(Failure::Check(format!("verification failed at {}", list.join(", "))))
    }
}
