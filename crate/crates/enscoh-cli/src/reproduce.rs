//! Reference-value table: recomputes every headline number and reports
//! expected vs actual with a per-row verdict.

use enscoh::ensembles;
use enscoh::qcore::inner_product;
use enscoh::{mec, success_probability, CoherenceMeasure, OptimizerConfig};

use crate::fmt::fmt_sig;

pub struct Row {
    pub name: &'static str,
    pub expected: f64,
    pub actual: f64,
    pub tol: f64,
}

impl Row {
    pub fn pass(&self) -> bool {
        (self.actual - self.expected).abs() <= self.tol
    }
}

/// Computes the full table. Two Tiles rows and the Pyramid MEC row are known
/// to disagree: those reference values sit at a stationary point of the
/// minimization (the identity rotation pair for Tiles) that is not the
/// minimum, and the optimizer reports the strictly better optimum it finds.
pub fn reference_table(seed: Option<u64>, restarts: Option<usize>) -> Vec<Row> {
    let cfg_for = |d1: usize, d2: usize| {
        let mut cfg = OptimizerConfig::for_dims(d1, d2);
        if let Some(s) = seed {
            cfg = cfg.with_seed(s);
        }
        if let Some(r) = restarts {
            cfg = cfg.with_restarts(r);
        }
        cfg
    };

    let mut rows = Vec::new();

    let e1 = ensembles::make_computational(2, 2);
    let r = mec(&e1, CoherenceMeasure::L1, &cfg_for(2, 2));
    rows.push(Row {
        name: "MEC_l1(E1)",
        expected: 3.0,
        actual: r.mec,
        tol: 1e-9,
    });

    let e2 = ensembles::make_e2();
    let r = mec(&e2, CoherenceMeasure::L1, &cfg_for(2, 2));
    rows.push(Row {
        name: "MEC_l1(E2)",
        expected: 1.914,
        actual: r.mec,
        tol: 0.005,
    });
    rows.push(Row {
        name: "MEC^n_l1(E2)",
        expected: 0.638,
        actual: r.mec_normalized,
        tol: 0.002,
    });

    let nlwe = ensembles::make_nlwe();
    let r_nlwe = mec(&nlwe, CoherenceMeasure::L1, &cfg_for(3, 3));
    rows.push(Row {
        name: "MEC^n_l1(NLWE)",
        expected: 0.491,
        actual: r_nlwe.mec_normalized,
        tol: 0.01,
    });

    let tiles = ensembles::make_tiles();
    let r_tiles = mec(&tiles, CoherenceMeasure::L1, &cfg_for(3, 3));
    rows.push(Row {
        name: "MEC^n_l1(Tiles)",
        expected: 0.772,
        actual: r_tiles.mec_normalized,
        tol: 0.01,
    });

    let r = mec(
        &ensembles::make_nlwe_minus_fourth(),
        CoherenceMeasure::L1,
        &cfg_for(3, 3),
    );
    rows.push(Row {
        name: "MEC^n_l1(NLWE minus fourth)",
        expected: 0.567,
        actual: r.mec_normalized,
        tol: 0.01,
    });

    let r = mec(
        &ensembles::make_tiles_minus_stopper(),
        CoherenceMeasure::L1,
        &cfg_for(3, 3),
    );
    rows.push(Row {
        name: "MEC^n_l1(Tiles minus stopper)",
        expected: 0.875,
        actual: r.mec_normalized,
        tol: 0.01,
    });

    rows.push(Row {
        name: "CD_l1(NLWE)",
        expected: 4.076,
        actual: r_nlwe.deficit,
        tol: 0.02,
    });
    rows.push(Row {
        name: "CD_l1(Tiles)",
        expected: 1.823,
        actual: r_tiles.deficit,
        tol: 0.02,
    });

    let pyramid = ensembles::make_pyramid();
    let r_pyr = mec(&pyramid, CoherenceMeasure::L1, &cfg_for(3, 3));
    rows.push(Row {
        name: "MEC_l1(Pyramid)",
        expected: 7.055,
        actual: r_pyr.mec,
        tol: 0.02,
    });
    rows.push(Row {
        name: "CD_l1(Pyramid)",
        expected: 1.197,
        actual: r_pyr.deficit,
        tol: 0.02,
    });

    // Complex eta pair: overlap 0.92388 with maximal MEC in both measures.
    let pair = ensembles::make_arb_2x2(
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
    );
    let blocks = pair.two_block_split().expect("two-block by construction");
    rows.push(Row {
        name: "|<eta1|eta2>| (complex pair)",
        expected: 0.92388,
        actual: inner_product(&blocks.first[0], &blocks.second[0])
            .unwrap()
            .norm(),
        tol: 1e-5,
    });
    rows.push(Row {
        name: "C_r(complex pair)",
        expected: std::f64::consts::FRAC_1_SQRT_2,
        actual: pair.relative_local_coherence().unwrap(),
        tol: 1e-9,
    });
    let r = mec(&pair, CoherenceMeasure::L1, &cfg_for(2, 2));
    rows.push(Row {
        name: "MEC_l1(complex pair)",
        expected: 3.0,
        actual: r.mec,
        tol: 1e-3,
    });
    let r = mec(&pair, CoherenceMeasure::RelativeEntropy, &cfg_for(2, 2));
    rows.push(Row {
        name: "MEC_rel(complex pair)",
        expected: 2.0,
        actual: r.mec,
        tol: 1e-3,
    });

    // One-way discrimination heads.
    let d = success_probability(&e2, &cfg_for(2, 2)).unwrap();
    rows.push(Row {
        name: "P_succ(E2)",
        expected: 0.8535533905932737,
        actual: d.p_succ_worst,
        tol: 1e-4,
    });
    let d = success_probability(&e1, &cfg_for(2, 2)).unwrap();
    rows.push(Row {
        name: "P_succ(E1)",
        expected: 1.0,
        actual: d.p_succ_worst,
        tol: 1e-6,
    });

    rows
}

/// Prints the table; returns true when every row passes.
pub fn print_table(rows: &[Row]) -> bool {
    println!(
        "{:<32} {:>12} {:>12} {:>9}  {}",
        "quantity", "expected", "actual", "tol", "verdict"
    );
    let mut all = true;
    for row in rows {
        let ok = row.pass();
        all &= ok;
        println!(
            "{:<32} {:>12} {:>12} {:>9}  {}",
            row.name,
            fmt_sig(row.expected, 6),
            fmt_sig(row.actual, 6),
            fmt_sig(row.tol, 2),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    all
}
