//! Scratch probe: dissect optimizer-vs-oracle gaps on real 2x3 ensembles.

use enscoh::ensembles::make_arb_2x3;
use enscoh::{brute_force_oracle, find_configuration, success_probability, OptimizerConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_ACCE);
    // Skip the 100 qubit draws to reach the same 2x3 stream position as the
    // acceptance test.
    for _ in 0..200 {
        let _: f64 = rng.gen_range(0.0..PI);
    }
    let cfg = OptimizerConfig::for_dims(2, 3);
    for k in 0..20 {
        let t1 = rng.gen_range(0.0..PI);
        let p1 = rng.gen_range(0.0..TAU);
        let t2 = rng.gen_range(0.0..PI);
        let p2 = rng.gen_range(0.0..TAU);
        let e = make_arb_2x3(t1, p1, t2, p2);
        let d = success_probability(&e, &cfg).unwrap();
        let oracle = brute_force_oracle(&e, 2e-2).unwrap();
        let config = find_configuration(&e).unwrap();
        let gap = d.p_succ_worst - oracle;
        println!(
            "{k:2}: opt={:.6} oracle={oracle:.6} gap={gap:+.2e} config={:?} params=({t1:.3},{p1:.3},{t2:.3},{p2:.3})",
            d.p_succ_worst,
            config.pairing(),
        );
    }
}
