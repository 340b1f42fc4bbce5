use std::io::Write;

use filament_rng::eicg::{compound_u, eicg_seq, icg_seq, lcg_seq};
use filament_rng::export::{format_f64, write_csv, StreamDocument};
use filament_rng::ring::{gcd, ParityClass};
use filament_rng::theta::default_m;
use filament_rng::zgen::stream;
use filament_rng::{CirclePoint, FamilyConfig};
use serde::Serialize;

use crate::args::{Format, GenArgs, GeneratorArg, VertexIndex};
use crate::{output, Failure};

pub fn run(args: &GenArgs) -> Result<(), Failure> {
    match args.generator {
        GeneratorArg::Filament => filament(args),
        GeneratorArg::Compound => compound(args),
        GeneratorArg::Lcg | GeneratorArg::Icg | GeneratorArg::Eicg => congruential(args),
    }
}

fn require_q(args: &GenArgs) -> Result<u64, Failure> {
    args.q.ok_or_else(|| Failure::Usage("--q is required".into()))
}

fn in_range(args: &GenArgs, p: u64) -> bool {
    args.p_min.map_or(true, |lo| p >= lo) && args.p_max.map_or(true, |hi| p <= hi)
}

fn filament(args: &GenArgs) -> Result<(), Failure> {
    let q = require_q(args)?;
    let mut config = FamilyConfig::new(args.family.into(), q, args.theta0, args.rho)?;
    config.m = match args.m {
        VertexIndex::Auto => default_m(ParityClass::of(q)),
        VertexIndex::Fixed(m) => m,
    };
    let points: Vec<CirclePoint> = stream(&config, !args.no_u)?.filter(|pt| in_range(args, pt.p)).collect();
    let out_path = args.output.as_deref();
    match args.format {
        Format::Csv => {
            let mut out = output::open(out_path)?;
            write_csv(&mut out, points)?;
            out.flush()?;
        }
        Format::Json => output::write_json(out_path, &StreamDocument::new(&config, points))?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SeqHeader<'a> {
    generator: &'a str,
    q: u64,
    a: i64,
    b: i64,
    start: u64,
}

#[derive(Serialize)]
struct SeqRow {
    n: u64,
    x: u64,
    u: f64,
}

#[derive(Serialize)]
struct SeqDocument<'a> {
    header: SeqHeader<'a>,
    values: Vec<SeqRow>,
}

fn congruential(args: &GenArgs) -> Result<(), Failure> {
    let q = require_q(args)?;
    let count = args.count.unwrap_or(q as usize);
    let (name, xs, first_n) = match args.generator {
        GeneratorArg::Lcg => ("lcg", lcg_seq(q, args.a, args.b, args.start, count)?, 1),
        GeneratorArg::Icg => ("icg", icg_seq(q, args.a, args.b, args.start, count)?, 1),
        _ => ("eicg", eicg_seq(q, args.a, args.b, args.start, count)?, args.start),
    };
    let rows: Vec<SeqRow> = xs
        .into_iter()
        .enumerate()
        .map(|(i, x)| SeqRow {
            n: first_n + i as u64,
            x,
            u: x as f64 / q as f64,
        })
        .collect();
    let out_path = args.output.as_deref();
    match args.format {
        Format::Csv => {
            let mut out = output::open(out_path)?;
            writeln!(out, "n,x,u")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.n, r.x, format_f64(r.u))?;
            }
            out.flush()?;
        }
        Format::Json => {
            let doc = SeqDocument {
                header: SeqHeader {
                    generator: name,
                    q,
                    a: args.a,
                    b: args.b,
                    start: args.start,
                },
                values: rows,
            };
            output::write_json(out_path, &doc)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CompoundRow {
    p: u64,
    numer: u64,
    denom: u64,
    u: f64,
}

#[derive(Serialize)]
struct CompoundDocument<'a> {
    moduli: &'a [u64],
    values: Vec<CompoundRow>,
}

fn compound(args: &GenArgs) -> Result<(), Failure> {
    if args.moduli.is_empty() {
        return Err(Failure::Usage("--moduli is required for the compound generator".into()));
    }
    let period = args
        .moduli
        .iter()
        .try_fold(1u64, |acc, &q| acc.checked_mul(q))
        .ok_or_else(|| Failure::Usage("product of moduli overflows".into()))?;
    // Validates the moduli even when the p-range is empty.
    compound_u(&args.moduli, 1)?;
    let lo = args.p_min.unwrap_or(1);
    let hi = args.p_max.unwrap_or(period - 1);
    let mut rows = Vec::new();
    for p in lo..=hi {
        if gcd(p, period)? != 1 {
            continue;
        }
        let u = compound_u(&args.moduli, p)?;
        rows.push(CompoundRow {
            p,
            numer: u.numer,
            denom: u.denom,
            u: u.to_f64(),
        });
    }
    let out_path = args.output.as_deref();
    match args.format {
        Format::Csv => {
            let mut out = output::open(out_path)?;
            writeln!(out, "p,u")?;
            for r in &rows {
                writeln!(out, "{},{}", r.p, format_f64(r.u))?;
            }
            out.flush()?;
        }
        Format::Json => output::write_json(
            out_path,
            &CompoundDocument {
                moduli: &args.moduli,
                values: rows,
            },
        )?,
    }
    Ok(())
}
