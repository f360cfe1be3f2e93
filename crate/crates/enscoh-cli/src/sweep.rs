//! Parameter sweeps over the eta-parameterized ensemble families,
//! reproducing the scatter trends of the normalized MEC, coherence deficit,
//! and one-way success probability against the relative local coherence.

use clap::ValueEnum;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

use enscoh::ensembles::{make_arb_2x2, make_arb_2x3, ProductEnsemble};
use enscoh::{mec, success_probability, CoherenceMeasure, OptimizerConfig};

use crate::fmt::fmt_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// 2x2 two-block ensembles with real coefficients.
    Arb2x2Real,
    /// 2x2 two-block ensembles with complex phases.
    Arb2x2Complex,
    /// 2x3 two-block ensembles with real coefficients.
    Arb2x3Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuccessCriterion {
    /// Smallest squared adjacent overlap at the optimum.
    Worst,
    /// Mean squared adjacent overlap.
    Avg,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub samples: usize,
    pub seed: u64,
    pub measure: CoherenceMeasure,
    pub restarts: Option<usize>,
    pub criterion: SuccessCriterion,
}

/// One computed sweep sample.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub c_r: f64,
    pub mec_n_l1: f64,
    pub mec_n_rel: f64,
    pub cd_l1: f64,
    pub p_succ: f64,
}

pub const CSV_HEADER: &str = "theta1,phi1,theta2,phi2,c_r,mec_n_l1,mec_n_rel,cd_l1,p_succ";

fn build(family: SweepFamily, p: [f64; 4]) -> ProductEnsemble {
    match family {
        SweepFamily::Arb2x2Real | SweepFamily::Arb2x2Complex => {
            make_arb_2x2(p[0], p[2], p[1], p[3])
        }
        SweepFamily::Arb2x3Real => make_arb_2x3(p[0], p[1], p[2], p[3]),
    }
}

fn draw(family: SweepFamily, rng: &mut ChaCha8Rng) -> [f64; 4] {
    match family {
        SweepFamily::Arb2x2Real => [rng.gen_range(0.0..PI), 0.0, rng.gen_range(0.0..PI), 0.0],
        SweepFamily::Arb2x2Complex => [
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
        ],
        SweepFamily::Arb2x3Real => [
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
        ],
    }
}

/// Samples the family and computes every row. Parameters are drawn
/// sequentially from one seeded stream and rows are computed in parallel,
/// so the output is identical for a fixed spec regardless of thread count.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let params: Vec<[f64; 4]> = (0..spec.samples).map(|_| draw(spec.family, &mut rng)).collect();

    params
        .par_iter()
        .enumerate()
        .map(|(i, &p)| {
            let e = build(spec.family, p);
            let mut cfg = OptimizerConfig::for_dims(e.d1(), e.d2()).with_seed(
                spec.seed
                    .wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            );
            if let Some(r) = spec.restarts {
                cfg = cfg.with_restarts(r);
            }
            let c_r = e
                .relative_local_coherence()
                .expect("sweep families are two-block");
            let l1 = mec(&e, CoherenceMeasure::L1, &cfg);
            let rel = mec(&e, CoherenceMeasure::RelativeEntropy, &cfg);
            let disc = success_probability(&e, &cfg).expect("sweep families are two-block");
            let p_succ = match spec.criterion {
                SuccessCriterion::Worst => disc.p_succ_worst,
                SuccessCriterion::Avg => disc.p_succ_avg,
            };
            SweepRow {
                theta1: p[0],
                phi1: p[1],
                theta2: p[2],
                phi2: p[3],
                c_r,
                mec_n_l1: l1.mec_normalized,
                mec_n_rel: rel.mec_normalized,
                cd_l1: l1.deficit,
                p_succ,
            }
        })
        .collect()
}

/// CSV rendering: header row, 9 significant digits, '.' decimal, LF endings.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.theta1, r.phi1, r.theta2, r.phi2, r.c_r, r.mec_n_l1, r.mec_n_rel, r.cd_l1, r.p_succ,
        ];
        let line: Vec<String> = cols.iter().map(|&v| fmt_sig(v, 9)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Scatter plot of the sweep against C_r. The selected measure picks which
/// normalized MEC series is shown.
pub fn to_svg(rows: &[SweepRow], spec: &SweepSpec) -> String {
    let mec_series: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            (
                r.c_r,
                match spec.measure {
                    CoherenceMeasure::L1 => r.mec_n_l1,
                    CoherenceMeasure::RelativeEntropy => r.mec_n_rel,
                },
            )
        })
        .collect();
    let mec_label = match spec.measure {
        CoherenceMeasure::L1 => "normalized MEC (l1)",
        CoherenceMeasure::RelativeEntropy => "normalized MEC (rel)",
    };
    let series = [
        crate::svg::Series {
            label: mec_label,
            color: "green",
            points: mec_series,
        },
        crate::svg::Series {
            label: "coherence deficit (l1)",
            color: "blue",
            points: rows.iter().map(|r| (r.c_r, r.cd_l1)).collect(),
        },
        crate::svg::Series {
            label: "success probability",
            color: "red",
            points: rows.iter().map(|r| (r.c_r, r.p_succ)).collect(),
        },
    ];
    let family = format!("{:?}", spec.family);
    crate::svg::scatter(
        &format!("{family}: coherence measures vs relative local coherence"),
        "relative local coherence C_r",
        &series,
    )
}
