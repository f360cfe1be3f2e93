//! Local-unitary parameterization and the ensemble coherence quantities
//! built on it: total local coherence (the minimum over local unitaries of
//! the summed single-party coherences), minimum ensemble coherence (MEC),
//! its normalized form, and the coherence deficit.
//!
//! The objective separates over the two parties, so each side is minimized
//! independently on its own d^2-parameter unitary group; the reported tau is
//! the sum of the side minima and the minimizer pairs are the cross product
//! of the side ties.

use ndarray::Array2;
use num_complex::Complex64;

use crate::coherence::{max_coherence, pure_coherence, CoherenceMeasure};
use crate::ensembles::ProductEnsemble;
use crate::error::{Error, Result};
use crate::optim::{multi_restart_minimize, RestartEndpoint};
use crate::qcore::{apply_matrix_unchecked, Ket, Operator};

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xE25C_0DE5;

/// Real parameter vector of length d^2 encoding an element of U(d):
/// d(d-1)/2 complex Givens rotations (one angle, one phase each) followed
/// by d diagonal phases. The map is surjective onto U(d).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryParams {
    d: usize,
    params: Vec<f64>,
}

impl UnitaryParams {
    pub fn new(d: usize, params: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if params.len() != d * d {
            return Err(Error::DimensionMismatch(params.len(), d * d));
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::Precondition("non-finite unitary parameter".into()));
        }
        Ok(Self { d, params })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            d,
            params: vec![0.0; d * d],
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }
}

/// Builds the unitary matrix for a parameter vector:
/// U = D(lambda) * prod_{i<j, lex order} G_ij(theta_ij, phi_ij).
pub fn unitary_from_params(p: &UnitaryParams) -> Operator {
    let m = unitary_matrix(p.d, &p.params);
    Operator::unitary(m).expect("Givens composition is unitary by construction")
}

/// Raw matrix construction used inside optimizer loops.
pub(crate) fn unitary_matrix(d: usize, params: &[f64]) -> Array2<Complex64> {
    debug_assert_eq!(params.len(), d * d);
    let mut m = Array2::eye(d);
    let mut idx = 0;
    for i in 0..d {
        for j in (i + 1)..d {
            let theta = params[idx];
            let phi = params[idx + 1];
            idx += 2;
            let (s, c) = theta.sin_cos();
            if s == 0.0 {
                continue;
            }
            let e_pos = Complex64::from_polar(s, phi); //  s e^{i phi}
            let e_neg = Complex64::from_polar(s, -phi); // s e^{-i phi}
            // Right-multiply by G acting on columns (i, j):
            //   col_i <- c col_i + s e^{-i phi} col_j
            //   col_j <- -s e^{i phi} col_i + c col_j
            for r in 0..d {
                let a = m[(r, i)];
                let b = m[(r, j)];
                m[(r, i)] = c * a + e_neg * b;
                m[(r, j)] = -e_pos * a + c * b;
            }
        }
    }
    for (k, lam) in params[d * (d - 1)..].iter().enumerate() {
        let phase = Complex64::from_polar(1.0, *lam);
        for cidx in 0..d {
            m[(k, cidx)] *= phase;
        }
    }
    m
}

/// Multi-restart search budget. Defaults follow the problem size: 40
/// restarts for subsystem dimensions up to 3, 120 for 3x3 joint problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_evals: usize,
    /// Relative tolerance used both to terminate local searches and to
    /// accept near-ties among minimizers.
    pub f_tol: f64,
    pub seed: u64,
}

impl OptimizerConfig {
    pub fn for_dims(d1: usize, d2: usize) -> Self {
        Self {
            restarts: if d1 * d2 >= 9 { 120 } else { 40 },
            max_evals: 20_000,
            f_tol: 1e-8,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }
}

/// Evaluates sum_i [C(U1 |psi_i>) + C(U2 |phi_i>)] in the computational
/// basis for fixed local unitaries (the objective of the tau minimization).
pub fn total_local_coherence(
    e: &ProductEnsemble,
    u1: &Operator,
    u2: &Operator,
    measure: CoherenceMeasure,
) -> Result<f64> {
    if u1.dim() != e.d1() {
        return Err(Error::DimensionMismatch(u1.dim(), e.d1()));
    }
    if u2.dim() != e.d2() {
        return Err(Error::DimensionMismatch(u2.dim(), e.d2()));
    }
    let mut total = 0.0;
    for (a, b) in e.states() {
        total += pure_coherence(measure, &apply_matrix_unchecked(u1.entries(), a));
        total += pure_coherence(measure, &apply_matrix_unchecked(u2.entries(), b));
    }
    Ok(total)
}

/// Outcome of the tau minimization: the best objective found and the
/// deduplicated list of minimizer pairs achieving it within tolerance.
#[derive(Debug, Clone)]
pub struct TauMinimization {
    pub tau: f64,
    pub minimizers: Vec<(Operator, Operator)>,
}

/// Per-side minimization result.
struct SideOutcome {
    best: f64,
    /// Distinct minimizers, each with its per-state coherence profile.
    ties: Vec<Operator>,
}

fn all_computational(states: &[Ket]) -> bool {
    states.iter().all(|k| {
        k.amplitudes()
            .iter()
            .any(|a| (a.norm() - 1.0).abs() <= 1e-10)
    })
}

fn side_states(e: &ProductEnsemble, side: usize) -> Vec<Ket> {
    e.states()
        .iter()
        .map(|(a, b)| if side == 0 { a.clone() } else { b.clone() })
        .collect()
}

fn quantized_profile(values: impl Iterator<Item = f64>) -> Vec<i64> {
    values.map(|v| (v * 1e6).round() as i64).collect()
}

fn optimize_side(
    states: &[Ket],
    d: usize,
    measure: CoherenceMeasure,
    cfg: &OptimizerConfig,
    seed: u64,
) -> SideOutcome {
    // A side living entirely in the computational basis is already
    // incoherent: the minimizing unitary is the identity.
    if all_computational(states) {
        return SideOutcome {
            best: 0.0,
            ties: vec![Operator::identity(d)],
        };
    }

    let objective = |p: &[f64]| {
        let u = unitary_matrix(d, p);
        states
            .iter()
            .map(|s| pure_coherence(measure, &apply_matrix_unchecked(&u, s)))
            .sum::<f64>()
    };

    let mut endpoints: Vec<RestartEndpoint> =
        multi_restart_minimize(objective, d * d, cfg.restarts, cfg.max_evals, seed);
    endpoints.sort_by(|a, b| {
        a.f.partial_cmp(&b.f)
            .unwrap()
            .then_with(|| a.x.partial_cmp(&b.x).unwrap())
    });

    let best = endpoints[0].f;
    let threshold = cfg.f_tol * (1.0 + best.abs());
    let mut ties: Vec<Operator> = Vec::new();
    let mut seen: Vec<Vec<i64>> = Vec::new();
    for e in endpoints.iter().filter(|e| e.f <= best + threshold) {
        let u = unitary_matrix(d, &e.x);
        let profile = quantized_profile(
            states
                .iter()
                .map(|s| pure_coherence(measure, &apply_matrix_unchecked(&u, s))),
        );
        if !seen.contains(&profile) {
            seen.push(profile);
            ties.push(Operator::unitary(u).expect("Givens composition is unitary"));
        }
    }
    SideOutcome { best, ties }
}

/// Minimizes the total local coherence over pairs of local unitaries.
/// Returns the minimum and every distinct minimizer pair found within
/// `cfg.f_tol * (1 + |tau|)` of it.
pub fn minimize_tau(
    e: &ProductEnsemble,
    measure: CoherenceMeasure,
    cfg: &OptimizerConfig,
) -> TauMinimization {
    let alice = optimize_side(&side_states(e, 0), e.d1(), measure, cfg, cfg.seed);
    let bob = optimize_side(
        &side_states(e, 1),
        e.d2(),
        measure,
        cfg,
        cfg.seed ^ 0x51DE_B0B5,
    );
    let tau = alice.best + bob.best;
    let mut minimizers = Vec::with_capacity(alice.ties.len() * bob.ties.len());
    for ua in &alice.ties {
        for ub in &bob.ties {
            minimizers.push((ua.clone(), ub.clone()));
        }
    }
    TauMinimization { tau, minimizers }
}

/// Everything the tau/MEC pipeline produces for one ensemble and measure.
#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub measure: CoherenceMeasure,
    /// Minimum total local coherence.
    pub tau: f64,
    /// The minimizer pair whose rotated superposed state attains `mec`.
    pub u1_star: Operator,
    pub u2_star: Operator,
    /// Coherence of the rotated superposed state, minimized over ties.
    pub mec: f64,
    /// `mec` divided by the measure's maximum in dimension d1*d2.
    pub mec_normalized: f64,
    /// |tau - mec|.
    pub deficit: f64,
    /// All distinct minimizer pairs within tolerance of tau.
    pub tau_ties: Vec<(Operator, Operator)>,
}

fn rotate_superposed(u1: &Operator, u2: &Operator, psi: &Ket, d1: usize, d2: usize) -> Ket {
    let a = u1.entries();
    let b = u2.entries();
    let mut amps = vec![Complex64::new(0.0, 0.0); d1 * d2];
    for i in 0..d1 {
        for j in 0..d2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..d1 {
                for l in 0..d2 {
                    s += a[(i, k)] * b[(j, l)] * psi.amp(k * d2 + l);
                }
            }
            amps[i * d2 + j] = s;
        }
    }
    Ket::new(amps).expect("local rotation preserves the norm")
}

/// Runs the full pipeline: minimize tau, rotate the equal superposition of
/// the ensemble by each minimizer pair, and report the minimum coherence
/// over ties as the MEC, together with its normalized value and the
/// coherence deficit.
pub fn mec(e: &ProductEnsemble, measure: CoherenceMeasure, cfg: &OptimizerConfig) -> CoherenceReport {
    let t = minimize_tau(e, measure, cfg);
    let psi = e.superposed_state();
    let mut best: Option<(f64, usize)> = None;
    for (idx, (u1, u2)) in t.minimizers.iter().enumerate() {
        let rotated = rotate_superposed(u1, u2, &psi, e.d1(), e.d2());
        let c = pure_coherence(measure, &rotated);
        if best.map_or(true, |(bc, _)| c < bc) {
            best = Some((c, idx));
        }
    }
    let (mec_value, idx) = best.expect("at least one minimizer");
    let (u1_star, u2_star) = t.minimizers[idx].clone();
    CoherenceReport {
        measure,
        tau: t.tau,
        u1_star,
        u2_star,
        mec: mec_value,
        mec_normalized: mec_value / max_coherence(measure, e.d1() * e.d2()),
        deficit: (t.tau - mec_value).abs(),
        tau_ties: t.minimizers,
    }
}

/// For a real two-block ensemble with coinciding Bob bases (C_r = 0) in
/// 2x2 or 2x3, checks that the rotated superposed state is maximally
/// coherent: C_l1 within 1e-3 of d1 d2 - 1.
pub fn check_observation1(e: &ProductEnsemble, cfg: &OptimizerConfig) -> Result<bool> {
    if !e.is_real(1e-9) {
        return Err(Error::Precondition(
            "ensemble must have real coefficients".into(),
        ));
    }
    if e.d2() != 2 && e.d2() != 3 {
        return Err(Error::Precondition(
            "only 2x2 and 2x3 ensembles are covered".into(),
        ));
    }
    let cr = e.relative_local_coherence()?;
    if cr > 1e-9 {
        return Err(Error::Precondition(format!(
            "relative local coherence must vanish (got {cr:.3e})"
        )));
    }
    let report = mec(e, CoherenceMeasure::L1, cfg);
    let max = max_coherence(CoherenceMeasure::L1, e.d1() * e.d2());
    Ok((report.mec - max).abs() <= 1e-3)
}
