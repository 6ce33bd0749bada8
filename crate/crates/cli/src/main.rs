use std::collections::{BTreeMap, HashSet};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use supeval::io::{read_report, render_table, table_row, write_table};
use supeval::pipeline::{run_evaluate, run_gen_synthetic, run_score, Evaluation};
use supeval::supervisors::RuleConfig;
use supeval::{Error, MetricsReport};

/// Evaluate anomaly-score supervisors on inlier/outlier cases.
#[derive(Parser)]
#[command(name = "supeval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute metrics, curves and plots for one or more case manifests.
    Evaluate {
        #[arg(long, required = true, num_args = 1..)]
        manifest: Vec<PathBuf>,
        /// Output directory. With several manifests each case goes to
        /// `<out>/<manifest file stem>`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of manifests evaluated concurrently.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
    },
    /// Score a feature CSV with a built-in rule.
    Score {
        #[arg(long, value_enum)]
        rule: Rule,
        /// Inlier training features for fitted rules.
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Neighbour rank for `knn`.
        #[arg(long)]
        k: Option<usize>,
        /// Retained components for `linear_recon`.
        #[arg(long)]
        components: Option<usize>,
    },
    /// Merge per-case reports into one comparison table.
    Compare {
        #[arg(long, required = true, num_args = 1..)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic Gaussian case and a manifest that evaluates it.
    GenSynthetic {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Rule {
    SoftmaxMax,
    GaussianNll,
    Knn,
    LinearRecon,
}

/// Failure classes: bad input (exit 2) or a fault in the tool or its
/// environment (exit 1).
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| {
        eprintln!("supeval: internal error: {info}");
    }));
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("supeval: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(_) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Evaluate { manifest, out, parallel } => evaluate(&manifest, out.as_deref(), parallel.into()),
        Command::Score { rule, train, features, out, k, components } => {
            let rule = match rule {
                Rule::SoftmaxMax => RuleConfig::SoftmaxMax,
                Rule::GaussianNll => RuleConfig::GaussianNll,
                Rule::Knn => RuleConfig::Knn { k: k.ok_or_else(|| Failure::Input("--rule knn needs --k".into()))? },
                Rule::LinearRecon => RuleConfig::LinearRecon {
                    components: components
                        .ok_or_else(|| Failure::Input("--rule linear_recon needs --components".into()))?,
                },
            };
            let rows = run_score(&rule, train.as_deref(), &features, &out)?;
            eprintln!("supeval: scored {rows} rows into {}", out.display());
            Ok(())
        }
        Command::Compare { reports, out } => compare(&reports, &out),
        Command::GenSynthetic { spec, out } => {
            for p in run_gen_synthetic(&spec, &out)? {
                eprintln!("supeval: wrote {}", p.display());
            }
            Ok(())
        }
    }
}

fn out_dirs(manifests: &[PathBuf], out: Option<&Path>) -> Result<Vec<Option<PathBuf>>, Failure> {
    match out {
        None => Ok(vec![None; manifests.len()]),
        Some(o) if manifests.len() == 1 => Ok(vec![Some(o.to_owned())]),
        Some(o) => {
            let mut seen = HashSet::new();
            manifests
                .iter()
                .map(|m| {
                    let stem = m.file_stem().unwrap_or(m.as_os_str());
                    if !seen.insert(stem.to_owned()) {
                        return Err(Failure::Input(format!(
                            "manifests share the file stem {stem:?}; their outputs would collide under {}",
                            o.display()
                        )));
                    }
                    Ok(Some(o.join(stem)))
                })
                .collect()
        }
    }
}

fn evaluate(manifests: &[PathBuf], out: Option<&Path>, parallel: usize) -> Result<(), Failure> {
    let dirs = out_dirs(manifests, out)?;
    let results: Vec<Mutex<Option<Result<Evaluation, Error>>>> = manifests.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..parallel.min(manifests.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= manifests.len() {
                    break;
                }
                let r = run_evaluate(&manifests[i], dirs[i].as_deref());
                *results[i].lock().unwrap() = Some(r);
            });
        }
    });

    let mut done: Vec<MetricsReport> = Vec::new();
    let mut worst: Option<Failure> = None;
    for (m, slot) in manifests.iter().zip(results) {
        match slot.into_inner().unwrap().expect("every manifest was evaluated") {
            Ok(ev) => {
                for n in &ev.notices {
                    eprintln!("supeval: note: {n}");
                }
                done.push(ev.report.report);
            }
            Err(e) => {
                let f = Failure::from(e);
                if manifests.len() > 1 {
                    eprintln!("supeval: {}: {}", m.display(), f.message());
                }
                if worst.as_ref().map_or(true, |w| f.code() < w.code()) {
                    worst = Some(f);
                }
            }
        }
    }

    if !done.is_empty() {
        let refs: Vec<&MetricsReport> = done.iter().collect();
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        render_table(&mut lock, &refs).and_then(|()| lock.flush()).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    match worst {
        None => Ok(()),
        Some(f) if manifests.len() == 1 => Err(f),
        Some(f) => Err(match f {
            Failure::Input(_) => Failure::Input("some manifests failed".into()),
            Failure::Internal(_) => Failure::Internal("some manifests failed".into()),
        }),
    }
}

fn compare(paths: &[PathBuf], out: &Path) -> Result<(), Failure> {
    let mut rows: BTreeMap<(String, String), MetricsReport> = BTreeMap::new();
    for p in paths {
        let r = read_report(p)?.report;
        let key = (r.case_name.clone(), r.supervisor_name.clone());
        if rows.contains_key(&key) {
            return Err(Failure::Input(format!(
                "duplicate (supervisor, case) pair ({:?}, {:?}) in {}",
                key.1,
                key.0,
                p.display()
            )));
        }
        rows.insert(key, r);
    }
    let refs: Vec<&MetricsReport> = rows.values().collect();
    write_table(out, &refs)?;
    for r in refs {
        eprintln!("supeval: {}", table_row(r).join(","));
    }
    Ok(())
}
