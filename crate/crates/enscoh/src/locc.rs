//! Restricted one-way LOCC discrimination of two-block 2 tensor d ensembles:
//! Bob measures first with rank-1 projectors, sends one round of classical
//! communication, and Alice finishes in the computational basis.
//!
//! The pipeline follows three steps: find the configuration (the pairing
//! between Bob's two bases with maximal total overlap), optimize Bob's
//! rank-1 projector set (maximizing the summed adjacent overlaps), and read
//! off the success probabilities. Alice's computational measurement is
//! deterministic on every reduced set, so it contributes no probability loss.
//!
//! A grid-search oracle over the explicit projector family provides an
//! independent check of the optimizer path.

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::ensembles::ProductEnsemble;
use crate::error::{Error, Result};
use crate::optim::{multi_restart_minimize, RestartEndpoint};
use crate::qcore::{inner_product_unchecked, is_orthonormal_set, Ket};
use crate::unitary_opt::{unitary_matrix, OptimizerConfig};

/// Largest Bob dimension for which the d! configuration search runs.
pub const MAX_CONFIG_DIM: usize = 6;

/// A pairing between Bob's first-block states and their "adjacent"
/// second-block states: first_i is paired with second_{pairing[i]}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    d: usize,
    pairing: Vec<usize>,
}

impl Configuration {
    pub fn new(d: usize, pairing: Vec<usize>) -> Result<Self> {
        if pairing.len() != d {
            return Err(Error::ConfigMismatch(format!(
                "pairing has {} entries for dimension {d}",
                pairing.len()
            )));
        }
        let mut seen = vec![false; d];
        for &j in &pairing {
            if j >= d || seen[j] {
                return Err(Error::ConfigMismatch("pairing is not a bijection".into()));
            }
            seen[j] = true;
        }
        Ok(Self { d, pairing })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }
}

/// Bob's measurement: d mutually orthonormal rank-1 projector directions.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    directions: Vec<Ket>,
}

impl ProjectorSet {
    pub fn new(directions: Vec<Ket>) -> Result<Self> {
        if !is_orthonormal_set(&directions, 1e-10) {
            return Err(Error::NotOrthonormal(1e-10));
        }
        Ok(Self { directions })
    }

    pub fn d(&self) -> usize {
        self.directions.len()
    }

    pub fn directions(&self) -> &[Ket] {
        &self.directions
    }
}

/// The two-element sub-ensemble {|0 eta1^(i)>, |1 eta2^(j)>} certified by a
/// projector outcome; Alice's computational measurement then separates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedSet {
    /// Index into Bob's first-block basis.
    pub first_index: usize,
    /// Index into Bob's second-block basis.
    pub second_index: usize,
}

/// Outcome of a discrimination run.
#[derive(Debug, Clone)]
pub struct DiscriminationResult {
    pub config: Configuration,
    pub projectors: ProjectorSet,
    /// Smallest squared adjacent overlap at the optimum (the worst case).
    pub p_succ_worst: f64,
    /// Mean squared adjacent overlap (the average case).
    pub p_succ_avg: f64,
    /// Reduced set certified by each projector, indexed like `projectors`.
    pub reduced_sets: Vec<ReducedSet>,
}

/// Fixes the irrelevant global phase: the largest-modulus component is made
/// real and positive.
fn canonical_phase(k: &Ket) -> Ket {
    let lead = (0..k.dim())
        .max_by(|&a, &b| k.amp(a).norm().partial_cmp(&k.amp(b).norm()).unwrap())
        .unwrap();
    let phase = k.amp(lead) / k.amp(lead).norm();
    Ket::new(k.amplitudes().iter().map(|a| a / phase).collect()).expect("phase preserves norm")
}

fn overlap_matrix(dirs: &[Ket], states: &[Ket]) -> Vec<Vec<f64>> {
    dirs.iter()
        .map(|d| {
            states
                .iter()
                .map(|s| inner_product_unchecked(d, s).norm())
                .collect()
        })
        .collect()
}

/// Step 1: the permutation maximizing the total overlap between Bob's two
/// bases, found by exhaustive search over all d! pairings. Ties go to the
/// lexicographically smallest permutation.
pub fn find_configuration(e: &ProductEnsemble) -> Result<Configuration> {
    let blocks = e.two_block_split()?;
    let d = e.d2();
    if d > MAX_CONFIG_DIM {
        return Err(Error::UnsupportedDimension(
            d,
            "configuration search is capped at d <= 6",
        ));
    }
    let o = overlap_matrix(&blocks.first, &blocks.second);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for perm in (0..d).permutations(d) {
        let total: f64 = perm.iter().enumerate().map(|(i, &j)| o[i][j]).sum();
        if best.as_ref().map_or(true, |(b, _)| total > *b) {
            best = Some((total, perm));
        }
    }
    let (_, pairing) = best.expect("d >= 2 yields permutations");
    Configuration::new(d, pairing)
}

/// Scores one candidate projector set against a fixed configuration.
struct CandidateScore {
    /// Sum of the 2d adjacent overlap moduli (the optimization objective).
    sum: f64,
    /// min of the 2d squared adjacent overlaps.
    worst_sq: f64,
    /// mean of the 2d squared adjacent overlaps.
    avg_sq: f64,
    /// Pair index claimed by each projector.
    assignment: Vec<usize>,
}

fn score_candidate(
    dirs: &[Ket],
    first: &[Ket],
    second: &[Ket],
    pairing: &[usize],
) -> CandidateScore {
    let d = dirs.len();
    let o1 = overlap_matrix(dirs, first);
    let o2 = overlap_matrix(dirs, second);
    let mut sum = 0.0;
    let mut worst_sq = f64::INFINITY;
    let mut avg_acc = 0.0;
    let mut assignment = Vec::with_capacity(d);
    for k in 0..d {
        // Each projector claims the adjacency pair it overlaps most.
        let mut best_i = 0;
        let mut best_s = f64::NEG_INFINITY;
        for i in 0..d {
            let s = o1[k][i] + o2[k][pairing[i]];
            if s > best_s {
                best_s = s;
                best_i = i;
            }
        }
        let a = o1[k][best_i];
        let b = o2[k][pairing[best_i]];
        sum += best_s;
        worst_sq = worst_sq.min(a * a).min(b * b);
        avg_acc += a * a + b * b;
        assignment.push(best_i);
    }
    CandidateScore {
        sum,
        worst_sq,
        avg_sq: avg_acc / (2.0 * d as f64),
        assignment,
    }
}

/// Step 2: searches over orthonormal projector sets (columns of a
/// parameterized unitary) for the one maximizing the summed adjacent
/// overlaps under the given configuration. Reports the worst- and
/// average-case squared overlaps at the optimum.
pub fn optimize_projectors(
    e: &ProductEnsemble,
    config: &Configuration,
    cfg: &OptimizerConfig,
) -> Result<DiscriminationResult> {
    let blocks = e.two_block_split()?;
    let d = e.d2();
    if config.d() != d {
        return Err(Error::ConfigMismatch(format!(
            "configuration dimension {} vs ensemble {}",
            config.d(),
            d
        )));
    }

    let columns = |params: &[f64]| -> Vec<Ket> {
        let m = unitary_matrix(d, params);
        (0..d)
            .map(|j| {
                Ket::new((0..d).map(|i| m[(i, j)]).collect())
                    .expect("unitary columns are normalized")
            })
            .collect()
    };

    let objective = |params: &[f64]| {
        let dirs = columns(params);
        -score_candidate(&dirs, &blocks.first, &blocks.second, config.pairing()).sum
    };

    let mut endpoints: Vec<RestartEndpoint> =
        multi_restart_minimize(objective, d * d, cfg.restarts, cfg.max_evals, cfg.seed);
    endpoints.sort_by(|a, b| {
        a.f.partial_cmp(&b.f)
            .unwrap()
            .then_with(|| a.x.partial_cmp(&b.x).unwrap())
    });
    let best_f = endpoints[0].f;
    let threshold = cfg.f_tol * (1.0 + best_f.abs());

    // Among sum-objective ties, prefer the endpoint with the better worst
    // case, then the lexicographically smallest parameters.
    let mut chosen: Option<(f64, &RestartEndpoint)> = None;
    for ep in endpoints.iter().filter(|ep| ep.f <= best_f + threshold) {
        let dirs = columns(&ep.x);
        let s = score_candidate(&dirs, &blocks.first, &blocks.second, config.pairing());
        if chosen.as_ref().map_or(true, |(w, _)| s.worst_sq > *w) {
            chosen = Some((s.worst_sq, ep));
        }
    }
    let (_, winner) = chosen.expect("at least one endpoint");
    let dirs: Vec<Ket> = columns(&winner.x).iter().map(canonical_phase).collect();
    let score = score_candidate(&dirs, &blocks.first, &blocks.second, config.pairing());

    Ok(DiscriminationResult {
        config: config.clone(),
        projectors: ProjectorSet::new(dirs)?,
        p_succ_worst: score.worst_sq,
        p_succ_avg: score.avg_sq,
        reduced_sets: score
            .assignment
            .iter()
            .map(|&i| ReducedSet {
                first_index: i,
                second_index: config.pairing()[i],
            })
            .collect(),
    })
}

/// Full pipeline: configuration search followed by projector optimization.
pub fn success_probability(
    e: &ProductEnsemble,
    cfg: &OptimizerConfig,
) -> Result<DiscriminationResult> {
    let config = find_configuration(e)?;
    optimize_projectors(e, &config, cfg)
}

// --- grid-search oracle ---------------------------------------------------

/// Candidate scoring used by the oracle: the configuration and the
/// projector-to-pair matching are both left free, which reduces to two
/// independent assignment problems over Bob's two bases.
fn oracle_score(dirs: &[[Complex64; 3]], d: usize, first: &[Ket], second: &[Ket]) -> (f64, f64) {
    let abs_overlaps = |states: &[Ket]| -> Vec<Vec<f64>> {
        dirs[..d]
            .iter()
            .map(|dir| {
                states
                    .iter()
                    .map(|s| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (i, a) in s.amplitudes().iter().enumerate() {
                            acc += dir[i].conj() * a;
                        }
                        acc.norm()
                    })
                    .collect()
            })
            .collect()
    };
    let a = abs_overlaps(first);
    let b = abs_overlaps(second);

    let best_assignment = |m: &[Vec<f64>]| -> (f64, f64) {
        let mut best_sum = f64::NEG_INFINITY;
        let mut min_at_best = 0.0;
        for perm in (0..d).permutations(d) {
            let mut sum = 0.0;
            let mut low = f64::INFINITY;
            for (k, &j) in perm.iter().enumerate() {
                sum += m[k][j];
                low = low.min(m[k][j]);
            }
            if sum > best_sum {
                best_sum = sum;
                min_at_best = low;
            }
        }
        (best_sum, min_at_best)
    };

    let (sum_a, min_a) = best_assignment(&a);
    let (sum_b, min_b) = best_assignment(&b);
    let low = min_a.min(min_b);
    (sum_a + sum_b, low * low)
}

fn qubit_dirs(a: f64, beta: f64) -> [[Complex64; 3]; 2] {
    let (s, c) = a.sin_cos();
    let e_pos = Complex64::from_polar(1.0, beta);
    let e_neg = Complex64::from_polar(1.0, -beta);
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(c, 0.0), e_pos * s, zero],
        [-e_neg * s, Complex64::new(c, 0.0), zero],
    ]
}

fn qutrit_dirs(theta: f64, phi: f64, p1: f64, p2: f64) -> [[Complex64; 3]; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let e1 = Complex64::from_polar(1.0, p1);
    let e2 = Complex64::from_polar(1.0, p2);
    [
        [
            Complex64::new(st * cp, 0.0),
            e1 * (st * sp),
            e2 * ct,
        ],
        [Complex64::new(-sp, 0.0), e1 * cp, Complex64::new(0.0, 0.0)],
        [
            Complex64::new(ct * cp, 0.0),
            e1 * (ct * sp),
            e2 * (-st),
        ],
    ]
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    (0..=n).map(|t| (lo + t as f64 * step).min(hi)).collect()
}

/// Exhaustive grid search over the explicit projector family (one angle and
/// one phase for d = 2; the four-parameter {phi, phi-perp, phi-perp-perp}
/// family for d = 3), over all configurations and assignments. The grid
/// optimum of the summed adjacent overlaps is refined once at step/25, and
/// the worst-case squared overlap there is returned.
///
/// Real ensembles are recognized and searched with real projectors only;
/// for complex ensembles with d = 3 the two phases are gridded no finer
/// than pi/8.
pub fn brute_force_oracle(e: &ProductEnsemble, grid_step: f64) -> Result<f64> {
    let blocks = e.two_block_split()?;
    let d = e.d2();
    let real = e.is_real(1e-12);
    let pi = std::f64::consts::PI;

    match d {
        2 => {
            let betas = if real {
                vec![0.0]
            } else {
                grid(0.0, 2.0 * pi, grid_step)
            };
            let coarse = |a_values: &[f64], b_values: &[f64]| {
                let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
                for &a in a_values {
                    for &beta in b_values {
                        let dirs = qubit_dirs(a, beta);
                        let (sum, worst) = oracle_score(&dirs, 2, &blocks.first, &blocks.second);
                        if sum > best.0 {
                            best = (sum, worst, a, beta);
                        }
                    }
                }
                best
            };
            let best = coarse(&grid(0.0, pi, grid_step), &betas);
            let fine_a = grid(best.2 - 1.5 * grid_step, best.2 + 1.5 * grid_step, grid_step / 25.0);
            let fine_b = if real {
                vec![0.0]
            } else {
                grid(best.3 - 1.5 * grid_step, best.3 + 1.5 * grid_step, grid_step / 25.0)
            };
            let refined = coarse(&fine_a, &fine_b);
            Ok(if refined.0 >= best.0 { refined.1 } else { best.1 })
        }
        3 => {
            let phase_step = grid_step.max(pi / 8.0);
            let phases = if real {
                vec![(0.0, 0.0)]
            } else {
                let vals = grid(0.0, 2.0 * pi, phase_step);
                vals.iter()
                    .flat_map(|&p1| vals.iter().map(move |&p2| (p1, p2)))
                    .collect()
            };
            let scan = |thetas: &[f64], phis: &[f64]| {
                thetas
                    .par_iter()
                    .map(|&theta| {
                        let mut best = (f64::NEG_INFINITY, 0.0, theta, 0.0, 0.0, 0.0);
                        for &phi in phis {
                            for &(p1, p2) in &phases {
                                let dirs = qutrit_dirs(theta, phi, p1, p2);
                                let (sum, worst) =
                                    oracle_score(&dirs, 3, &blocks.first, &blocks.second);
                                if sum > best.0 {
                                    best = (sum, worst, theta, phi, p1, p2);
                                }
                            }
                        }
                        best
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .fold((f64::NEG_INFINITY, 0.0, 0.0, 0.0, 0.0, 0.0), |acc, b| {
                        if b.0 > acc.0 {
                            b
                        } else {
                            acc
                        }
                    })
            };
            let best = scan(&grid(0.0, pi, grid_step), &grid(0.0, 2.0 * pi, grid_step));
            // One refinement pass around the coarse optimum (phases stay coarse).
            let fine_t = grid(best.2 - 1.5 * grid_step, best.2 + 1.5 * grid_step, grid_step / 25.0);
            let fine_p = grid(best.3 - 1.5 * grid_step, best.3 + 1.5 * grid_step, grid_step / 25.0);
            let refined = scan(&fine_t, &fine_p);
            Ok(if refined.0 >= best.0 { refined.1 } else { best.1 })
        }
        other => Err(Error::UnsupportedDimension(
            other,
            "grid oracle supports d in {2, 3}",
        )),
    }
}
