use std::fmt::Write as _;

use hyperchaos_core::horseshoe::{
    conjugacy_check, leading_symbol, level_rectangles, verify_hyperbolic_conditions, SymbolicRectangle,
};
use hyperchaos_core::sample::random_periodic;
use hyperchaos_core::{Alphabet, BiSequence, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{write_csv, write_json};
use crate::CliError;

#[derive(Serialize)]
struct RectangleRow {
    word: String,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

#[derive(Serialize)]
struct ConjugacyEntry {
    itinerary: BiSequence,
    defect: f64,
    bound: f64,
    holds: bool,
}

#[derive(Serialize)]
struct ConjugacyFile {
    lambda: f64,
    mu: f64,
    depth: usize,
    max_defect: f64,
    holds: bool,
    entries: Vec<ConjugacyEntry>,
}

const PALETTE: [&str; 2] = ["#3b6ea5", "#d9822b"];

pub fn svg(rects: &[SymbolicRectangle]) -> String {
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n",
    );
    for r in rects {
        let colour = PALETTE[(leading_symbol(r) - 1) as usize % PALETTE.len()];
        let _ = writeln!(
            out,
            "  <rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"{colour}\"><title>{}</title></rect>",
            1000.0 * r.x.lo,
            1000.0 * (1.0 - r.y.hi),
            1000.0 * r.x.width(),
            1000.0 * r.y.width(),
            r.cylinder
        );
    }
    out.push_str("</svg>\n");
    out
}

fn cap_error(e: Error) -> CliError {
    match e {
        Error::RectangleCap { .. } => CliError::Config(e.to_string()),
        other => CliError::Failed(other.to_string()),
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let hp = config.horseshoe;
    let rects = level_rectangles(&hp, config.k, config.n).map_err(cap_error)?;
    let hyperbolic = verify_hyperbolic_conditions(&hp, config.diagonal_depth).map_err(cap_error)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let entries = (0..config.itineraries)
        .map(|_| {
            let s = random_periodic(&mut rng, Alphabet::BINARY, config.max_period);
            let report = conjugacy_check(&s, &hp, config.conjugacy_depth).map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(ConjugacyEntry {
                itinerary: s,
                defect: report.defect,
                bound: report.bound,
                holds: report.holds,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let conjugacy = ConjugacyFile {
        lambda: hp.lambda(),
        mu: hp.mu(),
        depth: config.conjugacy_depth,
        max_defect: entries.iter().map(|e| e.defect).fold(0.0, f64::max),
        holds: entries.iter().all(|e| e.holds),
        entries,
    };

    std::fs::create_dir_all(&config.out)?;
    if config.formats.csv {
        let rows: Vec<RectangleRow> = rects
            .iter()
            .map(|r| RectangleRow {
                word: r.cylinder.to_string(),
                x_lo: r.x.lo,
                x_hi: r.x.hi,
                y_lo: r.y.lo,
                y_hi: r.y.hi,
            })
            .collect();
        write_csv(&config.out.join("rectangles.csv"), &rows)?;
    }
    if config.formats.json {
        write_json(&config.out.join("hyperbolic.json"), &hyperbolic)?;
        write_json(&config.out.join("conjugacy.json"), &conjugacy)?;
    }
    if config.formats.svg {
        std::fs::write(config.out.join("rectangles.svg"), svg(&rects))?;
    }

    println!("rectangles             {:>8}  (k = {}, n = {})", rects.len(), config.k, config.n);
    println!(
        "hyperbolic conditions  {:>8}  (epsilon0 = {:.6}, brute-force gap = {:.6})",
        if hyperbolic.holds { "hold" } else { "fail" },
        hyperbolic.epsilon0,
        hyperbolic.brute_force_gap
    );
    println!(
        "conjugacy              {:>8}  ({} itineraries, max defect = {:.3e})",
        if conjugacy.holds { "hold" } else { "fail" },
        conjugacy.entries.len(),
        conjugacy.max_defect
    );

    let mut failures = Vec::new();
    if !hyperbolic.holds {
        failures.push("hyperbolic conditions");
    }
    if !conjugacy.holds {
        failures.push("conjugacy");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.join(", ")))
    }
}
