//! Command-line front end: coherence measurement of named or user-supplied
//! product ensembles, parameter sweeps with CSV/SVG output, restricted
//! one-way discrimination runs, and the reference-value table.

mod fmt;
mod reproduce;
mod svg;
mod sweep;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use enscoh::ensembles::{self, ProductEnsemble, NAMED_ENSEMBLES};
use enscoh::qcore::Operator;
use enscoh::{mec, success_probability, CoherenceMeasure, CoherenceReport, OptimizerConfig};

use fmt::fmt_sig;
use sweep::{SuccessCriterion, SweepFamily, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    L1,
    Rel,
}

impl From<MeasureArg> for CoherenceMeasure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::L1 => CoherenceMeasure::L1,
            MeasureArg::Rel => CoherenceMeasure::RelativeEntropy,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "enscoh",
    about = "Coherence-based quantumness measures for orthogonal product-state ensembles",
    after_help = "Named ensembles: e1, e2, computational-2x3, computational-3x3, nlwe,\n\
                  nlwe-minus-fourth, tiles, tiles-minus-stopper, pyramid.\n\
                  Anything else is treated as a path to an ensemble JSON file.\n\
                  ENSCOH_THREADS caps the number of worker threads."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute tau, MEC, normalized MEC, coherence deficit, and C_r.
    Measure {
        /// Named ensemble or path to an ensemble JSON file.
        ensemble: String,
        #[arg(long, value_enum, default_value = "l1")]
        measure: MeasureArg,
        /// Override the restart budget.
        #[arg(long)]
        restarts: Option<usize>,
        /// Override the optimizer seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a random ensemble family and write one CSV row per sample.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = enscoh::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "l1")]
        measure: MeasureArg,
        #[arg(long)]
        restarts: Option<usize>,
        /// Which success-probability convention goes into the p_succ column.
        #[arg(long, value_enum, default_value = "worst")]
        criterion: SuccessCriterion,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG scatter output path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the restricted one-way discrimination pipeline (B measures first).
    Discriminate {
        /// Named ensemble or path to an ensemble JSON file.
        ensemble: String,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "worst")]
        criterion: SuccessCriterion,
    },
    /// Recompute the reference-value table; exit 0 only if every row passes.
    Reproduce {
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() {
    if let Ok(v) = std::env::var("ENSCOH_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Measure {
            ensemble,
            measure,
            restarts,
            seed,
            out,
        } => cmd_measure(&ensemble, measure.into(), restarts, seed, out.as_deref()),
        Cmd::Sweep {
            family,
            samples,
            seed,
            measure,
            restarts,
            criterion,
            out,
            svg,
        } => cmd_sweep(
            &SweepSpec {
                family,
                samples: samples.max(1),
                seed,
                measure: measure.into(),
                restarts,
                criterion,
            },
            &out,
            svg.as_deref(),
        ),
        Cmd::Discriminate {
            ensemble,
            restarts,
            seed,
            criterion,
        } => cmd_discriminate(&ensemble, restarts, seed, criterion),
        Cmd::Reproduce { restarts, seed } => {
            let rows = reproduce::reference_table(seed, restarts);
            let all = reproduce::print_table(&rows);
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn load_ensemble(name_or_path: &str) -> Result<ProductEnsemble> {
    if let Some(e) = ensembles::named(name_or_path) {
        return Ok(e);
    }
    let path = std::path::Path::new(name_or_path);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading ensemble file {}", path.display()))?;
        return ensembles::from_json_str(&text)
            .map_err(|e| anyhow!("parsing ensemble file {}: {e}", path.display()));
    }
    bail!(
        "unknown ensemble '{name_or_path}' and no such file; named ensembles: {}",
        NAMED_ENSEMBLES.join(", ")
    )
}

fn config_for(e: &ProductEnsemble, restarts: Option<usize>, seed: Option<u64>) -> OptimizerConfig {
    let mut cfg = OptimizerConfig::for_dims(e.d1(), e.d2());
    if let Some(r) = restarts {
        cfg = cfg.with_restarts(r);
    }
    if let Some(s) = seed {
        cfg = cfg.with_seed(s);
    }
    cfg
}

fn describe(e: &ProductEnsemble) -> String {
    let class = e
        .class()
        .map(|c| format!(", class: {c}"))
        .unwrap_or_default();
    format!(
        "{} ({}x{}, {} states{class})",
        e.label(),
        e.d1(),
        e.d2(),
        e.len()
    )
}

fn operator_json(op: &Operator) -> serde_json::Value {
    let d = op.dim();
    let rows: Vec<Vec<[f64; 2]>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let z = op.entries()[(i, j)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    serde_json::json!(rows)
}

fn cmd_measure(
    name: &str,
    measure: CoherenceMeasure,
    restarts: Option<usize>,
    seed: Option<u64>,
    out: Option<&std::path::Path>,
) -> Result<i32> {
    let e = load_ensemble(name)?;
    let cfg = config_for(&e, restarts, seed);
    let report: CoherenceReport = mec(&e, measure, &cfg);
    let c_r = e.relative_local_coherence().ok();

    println!("ensemble: {}", describe(&e));
    println!("measure:  {}", measure.name());
    println!("tau      {}", fmt_sig(report.tau, 6));
    println!("mec      {}", fmt_sig(report.mec, 6));
    println!("mec_n    {}", fmt_sig(report.mec_normalized, 6));
    println!("cd       {}", fmt_sig(report.deficit, 6));
    match c_r {
        Some(v) => println!("c_r      {}", fmt_sig(v, 6)),
        None => println!("c_r      (not defined: ensemble is not two-block)"),
    }
    if report.tau_ties.len() > 1 {
        println!("tau ties: {} distinct minimizer pairs", report.tau_ties.len());
    }

    if let Some(path) = out {
        let json = serde_json::json!({
            "ensemble": e.label(),
            "measure": measure.name(),
            "tau": report.tau,
            "mec": report.mec,
            "mec_normalized": report.mec_normalized,
            "coherence_deficit": report.deficit,
            "c_r": c_r,
            "u1_star": operator_json(&report.u1_star),
            "u2_star": operator_json(&report.u2_star),
            "tau_tie_count": report.tau_ties.len(),
        });
        std::fs::write(path, serde_json::to_string_pretty(&json)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn cmd_sweep(spec: &SweepSpec, out: &std::path::Path, svg: Option<&std::path::Path>) -> Result<i32> {
    let rows = sweep::run_sweep(spec);
    std::fs::write(out, sweep::to_csv(&rows))
        .with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    if let Some(path) = svg {
        std::fs::write(path, sweep::to_svg(&rows, spec))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote scatter plot to {}", path.display());
    }
    Ok(0)
}

fn cmd_discriminate(
    name: &str,
    restarts: Option<usize>,
    seed: Option<u64>,
    criterion: SuccessCriterion,
) -> Result<i32> {
    let e = load_ensemble(name)?;
    let cfg = config_for(&e, restarts, seed);
    let result = success_probability(&e, &cfg).map_err(|err| {
        anyhow!(
            "{err}; the restricted protocol (Bob measures first, one round of \
             communication) is defined for two-block 2xd ensembles only"
        )
    })?;

    println!("ensemble: {}", describe(&e));
    let pairing: Vec<String> = result
        .config
        .pairing()
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("eta1[{i}] <-> eta2[{j}]"))
        .collect();
    println!("configuration: {}", pairing.join(", "));
    println!("projector directions:");
    for (k, dir) in result.projectors.directions().iter().enumerate() {
        let comps: Vec<String> = (0..dir.dim())
            .map(|i| {
                let z = dir.amp(i);
                format!("({}, {})", fmt_sig(z.re, 6), fmt_sig(z.im, 6))
            })
            .collect();
        println!("  P{k}: {}", comps.join(" "));
    }
    let headline = match criterion {
        SuccessCriterion::Worst => result.p_succ_worst,
        SuccessCriterion::Avg => result.p_succ_avg,
    };
    println!("p_succ          {}", fmt_sig(headline, 6));
    println!("p_succ (worst)  {}", fmt_sig(result.p_succ_worst, 6));
    println!("p_succ (avg)    {}", fmt_sig(result.p_succ_avg, 6));
    println!("reduced sets:");
    for (k, rs) in result.reduced_sets.iter().enumerate() {
        println!(
            "  P{k} -> {{ |0> eta1[{}], |1> eta2[{}] }}",
            rs.first_index, rs.second_index
        );
    }
    Ok(0)
}
