//! Acceptance suite: every headline quantity and trend property at its
//! stated tolerance, one pass/fail line per check.
//!
//! Three reference rows (normalized MEC and coherence deficit of the Tiles
//! UPB, and the Pyramid MEC) are known not to reproduce: those references
//! correspond to a stationary point of the tau objective (the identity
//! rotation pair for Tiles) that is not its minimum, and the optimizer
//! reports the strictly better optimum. See
//! `unitary_opt::tests::tiles_identity_is_not_the_tau_minimum` for a frozen
//! witness. The affected checks are asserted at their stated tolerances
//! anyway and fail honestly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::process::Command;
use std::sync::LazyLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use enscoh::coherence::{c_l1, c_rel, coherence, pure_c_l1, pure_c_rel};
use enscoh::ensembles::{
    make_arb_2x2, make_arb_2x3, make_computational, make_e2, make_nlwe, make_nlwe_minus_fourth,
    make_pyramid, make_tiles, make_tiles_minus_stopper,
};
use enscoh::qcore::{dephase, DensityMatrix, Ket};
use enscoh::testutil;
use enscoh::{
    brute_force_oracle, check_observation1, inner_product, mec, success_probability,
    CoherenceMeasure, CoherenceReport, OptimizerConfig,
};

const SAMPLING_SEED: u64 = 0x5EED_ACCE;

struct Table {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Table {
    fn new(criterion: &'static str) -> Self {
        Self {
            criterion,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, expected: f64, actual: f64, tol: f64) {
        let ok = (actual - expected).abs() <= tol;
        println!(
            "ACCEPTANCE {} | {name}: expected {expected:.6} actual {actual:.6} tol {tol:.1e} -> {}",
            self.criterion,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            self.failures
                .push(format!("{name}: expected {expected} got {actual} (tol {tol})"));
        }
    }

    fn check_bool(&mut self, name: &str, ok: bool) {
        println!(
            "ACCEPTANCE {} | {name}: {}",
            self.criterion,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    fn finish(self) {
        println!(
            "ACCEPTANCE {}: {}",
            self.criterion,
            if self.failures.is_empty() { "PASS" } else { "FAIL" }
        );
        assert!(
            self.failures.is_empty(),
            "criterion {} failed:\n  {}",
            self.criterion,
            self.failures.join("\n  ")
        );
    }
}

fn cfg22() -> OptimizerConfig {
    OptimizerConfig::for_dims(2, 2)
}

fn cfg33() -> OptimizerConfig {
    OptimizerConfig::for_dims(3, 3)
}

static NLWE_L1: LazyLock<CoherenceReport> =
    LazyLock::new(|| mec(&make_nlwe(), CoherenceMeasure::L1, &cfg33()));
static TILES_L1: LazyLock<CoherenceReport> =
    LazyLock::new(|| mec(&make_tiles(), CoherenceMeasure::L1, &cfg33()));

#[test]
fn c01_mec_of_computational_basis_is_exact() {
    let mut t = Table::new("C1 computational 2x2");
    let report = mec(&make_computational(2, 2), CoherenceMeasure::L1, &cfg22());
    t.check("MEC_l1(E1)", 3.0, report.mec, 1e-9);
    // The shortcut pins both unitaries to the identity exactly.
    let identity_used = report.u1_star.entries()[(0, 0)].re == 1.0
        && report.u2_star.entries()[(0, 0)].re == 1.0
        && report.tau == 0.0;
    t.check_bool("identity unitaries via shortcut", identity_used);
    t.finish();
}

#[test]
fn c02_mec_of_one_way_basis() {
    let mut t = Table::new("C2 one-way basis E2");
    let report = mec(&make_e2(), CoherenceMeasure::L1, &cfg22());
    t.check("MEC_l1(E2)", 1.914, report.mec, 0.005);
    t.check("MEC^n_l1(E2)", 0.638, report.mec_normalized, 0.002);
    t.finish();
}

#[test]
fn c03_normalized_mec_of_qutrit_families() {
    let mut t = Table::new("C3 qutrit families MEC^n");
    t.check("MEC^n_l1(NLWE)", 0.491, NLWE_L1.mec_normalized, 0.01);
    t.check("MEC^n_l1(Tiles)", 0.772, TILES_L1.mec_normalized, 0.01);
    let r = mec(&make_nlwe_minus_fourth(), CoherenceMeasure::L1, &cfg33());
    t.check("MEC^n_l1(NLWE minus fourth)", 0.567, r.mec_normalized, 0.01);
    let r = mec(&make_tiles_minus_stopper(), CoherenceMeasure::L1, &cfg33());
    t.check("MEC^n_l1(Tiles minus stopper)", 0.875, r.mec_normalized, 0.01);
    t.finish();
}

#[test]
fn c04_coherence_deficits() {
    let mut t = Table::new("C4 coherence deficits");
    t.check("CD_l1(NLWE)", 4.076, NLWE_L1.deficit, 0.02);
    t.check("CD_l1(Tiles)", 1.823, TILES_L1.deficit, 0.02);
    let r = mec(&make_pyramid(), CoherenceMeasure::L1, &cfg33());
    t.check("MEC_l1(Pyramid)", 7.055, r.mec, 0.02);
    t.check("CD_l1(Pyramid)", 1.197, r.deficit, 0.02);
    t.finish();
}

#[test]
fn c05_complex_pair_regression() {
    let mut t = Table::new("C5 complex pair");
    let e = make_arb_2x2(FRAC_PI_2, FRAC_PI_4, FRAC_PI_2, FRAC_PI_2);
    let blocks = e.two_block_split().unwrap();
    t.check(
        "|<eta1|eta2>|",
        0.92388,
        inner_product(&blocks.first[0], &blocks.second[0])
            .unwrap()
            .norm(),
        1e-5,
    );
    let cr = e.relative_local_coherence().unwrap();
    t.check_bool("C_r > 0.3", cr > 0.3);
    let l1 = mec(&e, CoherenceMeasure::L1, &cfg22());
    t.check("MEC_l1 maximal", 3.0, l1.mec, 1e-3);
    let rel = mec(&e, CoherenceMeasure::RelativeEntropy, &cfg22());
    t.check("MEC_rel maximal", 2.0, rel.mec, 1e-3);
    t.finish();
}

// --- figure-trend criteria via the CLI binary -------------------------------

struct CsvRow {
    c_r: f64,
    mec_n_l1: f64,
    p_succ: f64,
}

fn run_sweep_binary(family: &str, samples: usize, seed: u64, out: &std::path::Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_enscoh"))
        .args([
            "sweep",
            "--family",
            family,
            "--samples",
            &samples.to_string(),
            "--seed",
            &seed.to_string(),
            "--out",
        ])
        .arg(out)
        .status()
        .expect("failed to run enscoh binary");
    assert!(status.success(), "sweep command failed");
}

fn parse_csv(path: &std::path::Path) -> Vec<CsvRow> {
    let text = std::fs::read_to_string(path).expect("reading sweep CSV");
    let mut lines = text.lines();
    let header = lines.next().expect("CSV header");
    assert_eq!(
        header,
        "theta1,phi1,theta2,phi2,c_r,mec_n_l1,mec_n_rel,cd_l1,p_succ"
    );
    lines
        .map(|line| {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.parse::<f64>().expect("numeric CSV column"))
                .collect();
            assert_eq!(cols.len(), 9);
            CsvRow {
                c_r: cols[4],
                mec_n_l1: cols[5],
                p_succ: cols[8],
            }
        })
        .collect()
}

/// Max per bin over 10 equal-width C_r bins; non-increasing over the
/// non-empty bins.
fn envelope_non_increasing(rows: &[(f64, f64)]) -> bool {
    let lo = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let width = ((hi - lo) / 10.0).max(1e-12);
    let mut bins = vec![f64::NEG_INFINITY; 10];
    for &(x, y) in rows {
        let b = (((x - lo) / width) as usize).min(9);
        bins[b] = bins[b].max(y);
    }
    let mut last = f64::INFINITY;
    for &b in bins.iter().filter(|b| b.is_finite()) {
        if b > last + 1e-9 {
            return false;
        }
        last = b;
    }
    true
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

#[test]
fn c06_figure_trend_properties() {
    let mut t = Table::new("C6 figure trends");
    let dir = std::env::temp_dir();

    let path = dir.join("enscoh_accept_2x2.csv");
    run_sweep_binary("arb2x2-real", 500, enscoh::DEFAULT_SEED, &path);
    let rows = parse_csv(&path);
    assert_eq!(rows.len(), 500);

    let degenerate_ok = rows
        .iter()
        .filter(|r| r.c_r < 1e-9)
        .all(|r| (r.mec_n_l1 - 1.0).abs() <= 1e-3 && (r.p_succ - 1.0).abs() <= 1e-6);
    t.check_bool("(a) vanishing C_r rows are maximal", degenerate_ok);

    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.c_r, r.p_succ)).collect();
    t.check_bool(
        "(b) P_succ envelope non-increasing in C_r",
        envelope_non_increasing(&pairs),
    );

    let xs: Vec<f64> = rows.iter().map(|r| r.mec_n_l1).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.p_succ).collect();
    let corr = pearson(&xs, &ys);
    t.check_bool(
        &format!("(c) Pearson(MEC^n_l1, P_succ) = {corr:.4} >= 0.9"),
        corr >= 0.9,
    );

    let path = dir.join("enscoh_accept_2x3.csv");
    run_sweep_binary("arb2x3-real", 500, enscoh::DEFAULT_SEED, &path);
    let rows = parse_csv(&path);
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.c_r, r.p_succ)).collect();
    t.check_bool(
        "(2x3) P_succ envelope non-increasing in C_r",
        envelope_non_increasing(&pairs),
    );

    t.finish();
}

#[test]
fn c07_oracle_equivalence() {
    let mut t = Table::new("C7 oracle equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);

    let mut worst_gap = 0.0f64;
    for _ in 0..100 {
        let e = make_arb_2x2(rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), 0.0, 0.0);
        let p = success_probability(&e, &cfg22()).unwrap().p_succ_worst;
        let oracle = brute_force_oracle(&e, 1e-3).unwrap();
        worst_gap = worst_gap.max((p - oracle).abs());
    }
    t.check_bool(
        &format!("100 real 2x2 ensembles, max |opt - oracle| = {worst_gap:.2e} <= 1e-3"),
        worst_gap <= 1e-3,
    );

    let cfg = OptimizerConfig::for_dims(2, 3);
    let mut worst_gap = 0.0f64;
    for _ in 0..20 {
        let e = make_arb_2x3(
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
        );
        let p = success_probability(&e, &cfg).unwrap().p_succ_worst;
        let oracle = brute_force_oracle(&e, 2e-2).unwrap();
        worst_gap = worst_gap.max((p - oracle).abs());
    }
    t.check_bool(
        &format!("20 real 2x3 ensembles, max |opt - oracle| = {worst_gap:.2e} <= 5e-3"),
        worst_gap <= 5e-3,
    );
    t.finish();
}

#[test]
fn c08_analytic_crosscheck() {
    let mut t = Table::new("C8 analytic cross-check");
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED ^ 0x8);
    let mut worst_p = 0.0f64;
    let mut worst_cr = 0.0f64;
    for _ in 0..50 {
        // The half-angle optimum describes pairings within |delta| <= pi/2.
        let t1 = rng.gen_range(0.0..PI);
        let delta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let e = make_arb_2x2(t1, t1 + delta, 0.0, 0.0);
        let p = success_probability(&e, &cfg22()).unwrap().p_succ_worst;
        worst_p = worst_p.max((p - (delta / 4.0).cos().powi(2)).abs());
        let cr = e.relative_local_coherence().unwrap();
        worst_cr = worst_cr.max((cr - delta.sin().abs()).abs());
    }
    t.check_bool(
        &format!("P_succ = cos^2(delta/4), max err {worst_p:.2e} <= 1e-4"),
        worst_p <= 1e-4,
    );
    t.check_bool(
        &format!("C_r = |sin delta|, max err {worst_cr:.2e} <= 1e-9"),
        worst_cr <= 1e-9,
    );
    t.finish();
}

#[test]
fn c09_maximal_coherence_of_aligned_families() {
    let mut t = Table::new("C9 aligned families");
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED ^ 0x9);
    let ok22 = (0..50).all(|_| {
        let theta = rng.gen_range(0.0..PI);
        check_observation1(&make_arb_2x2(theta, theta, 0.0, 0.0), &cfg22()).unwrap()
    });
    t.check_bool("50 aligned 2x2 ensembles maximally coherent", ok22);
    let cfg = OptimizerConfig::for_dims(2, 3);
    let ok23 = (0..50).all(|_| {
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..TAU);
        check_observation1(&make_arb_2x3(theta, phi, theta, phi), &cfg).unwrap()
    });
    t.check_bool("50 aligned 2x3 ensembles maximally coherent", ok23);
    t.finish();
}

#[test]
fn c10_coherence_ax_suite() {
    let mut t = Table::new("C10 coherence axioms");
    let mut rng = testutil::rng(SAMPLING_SEED ^ 0x10);
    let mut ok_bounds = true;
    let mut ok_dephase = true;
    let mut ok_covariance = true;

    for i in 0..1000 {
        let d = 2 + i % 3; // dimensions 2, 3, 4
        let basis = testutil::computational_basis(d);
        if i % 2 == 0 {
            let psi = testutil::random_ket(&mut rng, d);
            let l1 = pure_c_l1(&psi);
            let rel = pure_c_rel(&psi);
            ok_bounds &= (0.0..=(d - 1) as f64 + 1e-10).contains(&l1)
                && (0.0..=(d as f64).log2() + 1e-10).contains(&rel);
            // The pure fast paths must agree with the density route.
            let rho = DensityMatrix::from_pure(&psi);
            ok_bounds &= (l1 - c_l1(&rho, &basis).unwrap()).abs() <= 1e-8
                && (rel - c_rel(&rho, &basis).unwrap()).abs() <= 1e-8;
        } else {
            let rho = testutil::random_density(&mut rng, d);
            let deph = dephase(&rho, &basis).unwrap();
            ok_dephase &= c_l1(&deph, &basis).unwrap() <= 1e-10
                && c_rel(&deph, &basis).unwrap() <= 1e-8;
            if i % 10 == 1 {
                let v = testutil::random_unitary(&mut rng, d);
                let rotated = testutil::conjugate(&rho, &v);
                let rotated_basis = testutil::rotate_basis(&basis, &v);
                for m in [CoherenceMeasure::L1, CoherenceMeasure::RelativeEntropy] {
                    ok_covariance &= (coherence(m, &rho, &basis).unwrap()
                        - coherence(m, &rotated, &rotated_basis).unwrap())
                    .abs()
                        <= 1e-8;
                }
            }
        }
    }
    t.check_bool("bounds on 500 random pure states", ok_bounds);
    t.check_bool("dephasing kills coherence on 500 random mixed states", ok_dephase);
    t.check_bool("basis covariance under random unitaries", ok_covariance);
    t.finish();
}

#[test]
fn c11_sweep_csv_is_deterministic() {
    let mut t = Table::new("C11 CSV determinism");
    let dir = std::env::temp_dir();
    let a = dir.join("enscoh_det_a.csv");
    let b = dir.join("enscoh_det_b.csv");
    run_sweep_binary("arb2x2-real", 40, 9001, &a);
    run_sweep_binary("arb2x2-real", 40, 9001, &b);
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    t.check_bool("two runs byte-identical", bytes_a == bytes_b);
    t.check_bool("non-empty output", !bytes_a.is_empty());
    t.finish();
}
