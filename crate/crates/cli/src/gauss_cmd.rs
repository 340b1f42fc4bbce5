use filament_rng::gauss::{phase_increment, GaussSumValue};
use filament_rng::theta::{default_m, vartheta, ThetaParams};
use filament_rng::{ParityClass, UnitResidue};
use serde::Serialize;

use crate::args::GaussArgs;
use crate::{output, Failure};

#[derive(Serialize)]
struct GaussReport {
    q: u64,
    p: u64,
    m: i64,
    value: [f64; 2],
    class: &'static str,
    phase: Option<f64>,
    phase_increment: f64,
    vartheta: Option<f64>,
}

pub fn run(args: &GaussArgs) -> Result<(), Failure> {
    let q = args.q;
    let m = args.m.unwrap_or(default_m(ParityClass::of(q.max(1))) as i64);
    let g = GaussSumValue::evaluate(args.p, m, q)?;
    let increment = phase_increment(args.p, m, q)?;
    let closed = if q >= 2 && m >= 0 {
        let params = ThetaParams::new(q, m as u64, 0.0)?;
        Some(vartheta(&params, &UnitResidue::new(args.p, q)?)?)
    } else {
        None
    };
    let report = GaussReport {
        q,
        p: args.p,
        m,
        value: [g.value.re, g.value.im],
        class: g.magnitude_class.as_str(),
        phase: g.phase,
        phase_increment: increment,
        vartheta: closed,
    };
    output::write_json(None, &report)?;
    Ok(())
}
