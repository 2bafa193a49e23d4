use std::collections::BTreeMap;
use std::path::PathBuf;

use hyperchaos_core::certify::{Certificate, CertificateKind, Certifier, UnstableSetId};
use hyperchaos_core::metric::{separation_by_enumeration, SeparationReport};
use hyperchaos_core::sample::{random_target, random_unstable_set};
use hyperchaos_core::symbolic::ToggleMask;
use hyperchaos_core::{BiSequence, CylinderSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{write_csv, write_json};
use crate::CliError;

enum Task {
    Transitivity(UnstableSetId, CylinderSet),
    Density(BiSequence, f64),
    Sensitivity(BiSequence, f64),
    Recurrence(UnstableSetId),
    LiYorke(UnstableSetId),
    Stable(BiSequence, BiSequence),
    Unstable(BiSequence, BiSequence),
}

struct Job {
    name: String,
    task: Task,
}

#[derive(Serialize)]
struct SeparationFile {
    closed_form: Vec<SeparationReport>,
    enumerated: Vec<SeparationReport>,
    agree: bool,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    check: &'a str,
    kind: &'a str,
    status: &'a str,
    headline: f64,
}

fn plan(config: &RunConfig) -> Vec<Job> {
    let alphabet = config.alphabet;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sets: Vec<UnstableSetId> = (0..config.sets)
        .map(|_| random_unstable_set(&mut rng, alphabet))
        .collect();
    let mut jobs = Vec::new();
    for (i, u) in sets.iter().enumerate() {
        let point = u.universal_member(alphabet);
        for t in 0..config.targets {
            let target = random_target(&mut rng, alphabet, config.target_back, config.target_forward);
            jobs.push(Job {
                name: format!("transitivity_s{i:02}_t{t:02}"),
                task: Task::Transitivity(u.clone(), target),
            });
        }
        for (d, &delta) in config.deltas.iter().enumerate() {
            jobs.push(Job {
                name: format!("periodic_density_s{i:02}_d{d}"),
                task: Task::Density(point.clone(), delta),
            });
        }
        for (e, &eps) in config.epsilons.iter().enumerate() {
            jobs.push(Job {
                name: format!("sensitivity_s{i:02}_e{e}"),
                task: Task::Sensitivity(point.clone(), eps),
            });
        }
    }
    let first = &sets[0];
    let s = first.universal_member(alphabet);
    jobs.push(Job {
        name: "poisson_recurrence".into(),
        task: Task::Recurrence(first.clone()),
    });
    jobs.push(Job {
        name: "li_yorke".into(),
        task: Task::LiYorke(first.clone()),
    });
    let toggle_at = |j: i64| BiSequence::toggled(s.clone(), alphabet, ToggleMask::Window { start: j, len: 1 });
    jobs.push(Job {
        name: "stable_convergence".into(),
        task: Task::Stable(s.clone(), toggle_at(0)),
    });
    jobs.push(Job {
        name: "unstable_convergence".into(),
        task: Task::Unstable(s.clone(), toggle_at(1)),
    });
    jobs
}

fn execute(ctx: &Certifier, config: &RunConfig, task: &Task) -> hyperchaos_core::Result<Certificate> {
    match task {
        Task::Transitivity(u, target) => ctx.transitivity_witness(u, target),
        Task::Density(s, delta) => ctx.periodic_density_witness(s, *delta),
        Task::Sensitivity(s, eps) => ctx.sensitivity_witness(s, *eps),
        Task::Recurrence(u) => ctx.poisson_recurrence_witness(u, config.recurrence_depths),
        Task::LiYorke(u) => ctx.li_yorke_pair(u, config.horizon),
        Task::Stable(s, t) => ctx.stable_set_convergence(s, t, config.convergence_steps),
        Task::Unstable(s, t) => ctx.unstable_set_convergence(s, t, config.convergence_steps),
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let ctx = Certifier::new(config.alphabet, config.metric, config.tolerance)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let jobs = plan(config);
    let results: Vec<(String, hyperchaos_core::Result<Certificate>)> = jobs
        .par_iter()
        .map(|job| (job.name.clone(), execute(&ctx, config, &job.task).and_then(|c| c.verify().map(|_| c))))
        .collect();

    let metric = config.metric;
    let diameter = metric
        .check_diameter_condition(config.diameter_depth)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let closed_form = (1..=config.separation_depth)
        .map(|n| metric.check_separation(config.alphabet, n))
        .collect::<hyperchaos_core::Result<Vec<_>>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let enumerated: Vec<SeparationReport> = (1..=config.separation_depth)
        .filter_map(|n| separation_by_enumeration(&metric, config.alphabet, n).ok())
        .collect();
    let agree = enumerated
        .iter()
        .zip(&closed_form)
        .all(|(a, b)| a.epsilon0 == b.epsilon0);

    let mut failures = Vec::new();
    if !diameter.holds {
        failures.push("diameter".to_string());
    }
    if !agree {
        failures.push("separation".to_string());
    }

    let cert_dir: PathBuf = config.out.join("certificates");
    let mut summary = Vec::new();
    let mut table: BTreeMap<CertificateKind, (usize, usize, f64, f64)> = BTreeMap::new();
    for (name, result) in &results {
        match result {
            Ok(cert) => {
                if config.formats.json {
                    write_json(&cert_dir.join(format!("{name}.json")), cert)?;
                }
                let h = cert.headline();
                let entry = table.entry(cert.kind()).or_insert((0, 0, f64::INFINITY, f64::NEG_INFINITY));
                entry.0 += 1;
                entry.1 += 1;
                entry.2 = entry.2.min(h);
                entry.3 = entry.3.max(h);
                summary.push((name.as_str(), cert.kind().as_str(), "verified", h));
            }
            Err(e) => {
                eprintln!("{name}: {e}");
                failures.push(name.clone());
                summary.push((name.as_str(), "error", "failed", f64::NAN));
            }
        }
    }
    if config.formats.json {
        write_json(&config.out.join("diameter.json"), &diameter)?;
        write_json(
            &config.out.join("separation.json"),
            &SeparationFile {
                closed_form: closed_form.clone(),
                enumerated,
                agree,
            },
        )?;
    }
    if config.formats.csv {
        let rows: Vec<SummaryRow> = summary
            .iter()
            .map(|&(check, kind, status, headline)| SummaryRow {
                check,
                kind,
                status,
                headline,
            })
            .collect();
        write_csv(&config.out.join("summary.csv"), &rows)?;
    }

    println!("{:<22} {:>6} {:>9} {:>14} {:>14}", "check", "count", "verified", "min headline", "max headline");
    for (kind, (count, ok, lo, hi)) in &table {
        println!("{:<22} {count:>6} {ok:>9} {lo:>14.6e} {hi:>14.6e}", kind.as_str());
    }
    println!(
        "{:<22} {:>6} {:>9} {:>14.6e} {:>14}",
        "diameter",
        diameter.rows.len(),
        if diameter.holds { "yes" } else { "no" },
        diameter.final_diameter().unwrap_or(f64::NAN),
        ""
    );
    println!(
        "{:<22} {:>6} {:>9} {:>14.6e} {:>14}",
        "separation",
        closed_form.len(),
        if agree { "yes" } else { "no" },
        closed_form.iter().map(|r| r.epsilon0).fold(f64::INFINITY, f64::min),
        ""
    );

    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.join(", ")))
    }
}
