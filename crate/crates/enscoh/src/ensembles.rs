//! Construction, validation, and classification metadata of orthogonal
//! product-state ensembles, plus the superposed state and relative local
//! coherence.
//!
//! The named constructors cover the computational bases, the one-way set
//! E2, the arbitrary eta-parameterized 2x2 / 2x3 / 2xd families, the NLWE
//! nine-state qutrit basis and its four-round truncation, the Tiles UPB and
//! its stopper-free truncation, and the Pyramid UPB.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::qcore::{inner_product_unchecked, is_orthonormal_set, tensor_product, Ket};

/// LOCC distinguishability classes. Metadata supplied by constructors from
/// known protocol structure; never computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistinguishabilityClass {
    /// Perfectly distinguishable with one round, either party starting.
    TwoWayMinRound,
    /// Perfectly distinguishable with one round, but only one starting party works.
    OneWayMinRound,
    /// Distinguishable with finitely many (more than the minimum) rounds.
    FiniteMultiRound,
    /// Not distinguishable by any finite or infinite LOCC protocol.
    Indistinguishable,
}

impl std::fmt::Display for DistinguishabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::TwoWayMinRound => "two-way, minimum rounds",
            Self::OneWayMinRound => "one-way, minimum rounds",
            Self::FiniteMultiRound => "finite multi-round",
            Self::Indistinguishable => "LOCC-indistinguishable",
        };
        f.write_str(s)
    }
}

/// An ordered list of mutually orthogonal bipartite product states.
/// Incomplete bases (fewer than d1*d2 members) are allowed.
#[derive(Debug, Clone)]
pub struct ProductEnsemble {
    d1: usize,
    d2: usize,
    states: Vec<(Ket, Ket)>,
    label: String,
    class: Option<DistinguishabilityClass>,
}

impl ProductEnsemble {
    pub fn new(
        d1: usize,
        d2: usize,
        states: Vec<(Ket, Ket)>,
        label: impl Into<String>,
        class: Option<DistinguishabilityClass>,
    ) -> Result<Self> {
        if d1 < 2 {
            return Err(Error::DimensionTooSmall(d1));
        }
        if d2 < 2 {
            return Err(Error::DimensionTooSmall(d2));
        }
        if states.is_empty() || states.len() > d1 * d2 {
            return Err(Error::BadEnsembleSize(states.len(), d1 * d2));
        }
        for (a, b) in &states {
            if a.dim() != d1 {
                return Err(Error::DimensionMismatch(a.dim(), d1));
            }
            if b.dim() != d2 {
                return Err(Error::DimensionMismatch(b.dim(), d2));
            }
        }
        // <psi_i phi_i | psi_j phi_j> factorizes over the parties.
        for i in 0..states.len() {
            for j in (i + 1)..states.len() {
                let oa = inner_product_unchecked(&states[i].0, &states[j].0);
                let ob = inner_product_unchecked(&states[i].1, &states[j].1);
                if (oa * ob).norm() > 1e-10 {
                    return Err(Error::NotOrthonormal(1e-10));
                }
            }
        }
        Ok(Self {
            d1,
            d2,
            states,
            label: label.into(),
            class,
        })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn class(&self) -> Option<DistinguishabilityClass> {
        self.class
    }

    pub fn states(&self) -> &[(Ket, Ket)] {
        &self.states
    }

    pub fn alice(&self, i: usize) -> &Ket {
        &self.states[i].0
    }

    pub fn bob(&self, i: usize) -> &Ket {
        &self.states[i].1
    }

    /// The joint state |psi_i> tensor |phi_i>.
    pub fn joint(&self, i: usize) -> Ket {
        tensor_product(&self.states[i].0, &self.states[i].1)
    }

    /// Same states in a different order; label retained.
    pub fn relabeled(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.states.len() {
            return Err(Error::DimensionMismatch(order.len(), self.states.len()));
        }
        let states = order.iter().map(|&i| self.states[i].clone()).collect();
        Self::new(self.d1, self.d2, states, self.label.clone(), self.class)
    }

    /// True when every amplitude on both sides is real within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.states
            .iter()
            .all(|(a, b)| a.is_real(tol) && b.is_real(tol))
    }

    /// Equal-weight superposition (1/sqrt N) sum_i |psi_i> tensor |phi_i>.
    /// Unit norm is guaranteed by the mutual orthogonality of the terms.
    pub fn superposed_state(&self) -> Ket {
        let n = self.states.len();
        let dim = self.d1 * self.d2;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        let w = 1.0 / (n as f64).sqrt();
        for i in 0..n {
            let joint = self.joint(i);
            for (k, a) in amps.iter_mut().enumerate() {
                *a += w * joint.amp(k);
            }
        }
        Ket::new(amps).expect("orthogonal terms sum to a normalized state")
    }

    /// Splits a 2 tensor d ensemble into its two Bob-side blocks: the states
    /// paired with Alice's |0> and those paired with Alice's |1>. Each block
    /// must be a complete orthonormal d-basis.
    pub fn two_block_split(&self) -> Result<TwoBlockForm> {
        if self.d1 != 2 {
            return Err(Error::NotTwoBlock(format!(
                "Alice dimension is {} (need 2)",
                self.d1
            )));
        }
        let mut first = Vec::new();
        let mut second = Vec::new();
        for (a, b) in &self.states {
            let on_zero = a.amp(0).norm();
            let on_one = a.amp(1).norm();
            if (on_zero - 1.0).abs() <= 1e-9 {
                first.push(b.clone());
            } else if (on_one - 1.0).abs() <= 1e-9 {
                second.push(b.clone());
            } else {
                return Err(Error::NotTwoBlock(
                    "an Alice state is not a computational basis element".into(),
                ));
            }
        }
        if first.len() != self.d2 || second.len() != self.d2 {
            return Err(Error::NotTwoBlock(format!(
                "blocks have {} and {} states (need {} each)",
                first.len(),
                second.len(),
                self.d2
            )));
        }
        Ok(TwoBlockForm { first, second })
    }

    /// Relative local coherence C_r: the average l1 coherence of Bob's
    /// second-block basis states measured in his first-block basis.
    /// Zero exactly when the two blocks coincide up to relabeling and phases.
    pub fn relative_local_coherence(&self) -> Result<f64> {
        let blocks = self.two_block_split()?;
        let d = self.d2 as f64;
        let mut total = 0.0;
        for eta2 in &blocks.second {
            let moduli_sum: f64 = blocks
                .first
                .iter()
                .map(|eta1| inner_product_unchecked(eta1, eta2).norm())
                .sum();
            total += (moduli_sum * moduli_sum - 1.0).max(0.0);
        }
        Ok(total / d)
    }
}

/// Bob's two orthonormal bases from a two-block 2 tensor d ensemble.
#[derive(Debug, Clone)]
pub struct TwoBlockForm {
    /// Basis paired with Alice's |0> (the eta1 family).
    pub first: Vec<Ket>,
    /// Basis paired with Alice's |1> (the eta2 family).
    pub second: Vec<Ket>,
}

// --- qubit / qutrit basis helpers ------------------------------------------

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
pub fn eta_qubit(theta: f64, phi: f64) -> Ket {
    let (s, c) = (0.5 * theta).sin_cos();
    Ket::new(vec![
        Complex64::new(c, 0.0),
        Complex64::from_polar(s, phi),
    ])
    .unwrap()
}

/// The orthogonal complement of a qubit (a, b): (-conj(b), conj(a)).
/// For eta_qubit this is -e^{-i phi} sin(theta/2)|0> + cos(theta/2)|1>.
pub fn qubit_orthocomplement(k: &Ket) -> Ket {
    assert_eq!(k.dim(), 2, "qubit expected");
    Ket::new(vec![-k.amp(1).conj(), k.amp(0).conj()]).unwrap()
}

/// Real qutrit triple {eta, eta-perp, eta-perp-perp} for
/// eta = (sin t cos p, sin t sin p, cos t).
pub fn qutrit_triple(theta: f64, phi: f64) -> [Ket; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let eta = Ket::from_reals(&[st * cp, st * sp, ct]).unwrap();
    let perp = Ket::from_reals(&[-sp, cp, 0.0]).unwrap();
    let perp2 = Ket::from_reals(&[ct * cp, ct * sp, -st]).unwrap();
    [eta, perp, perp2]
}

fn sup(i: usize, j: usize, dim: usize, sign: f64) -> Ket {
    let mut amps = vec![0.0; dim];
    let w = 1.0 / 2f64.sqrt();
    amps[i] = w;
    amps[j] = sign * w;
    Ket::from_reals(&amps).unwrap()
}

/// (|i> + |j>)/sqrt 2.
fn plus_of(i: usize, j: usize, dim: usize) -> Ket {
    sup(i, j, dim, 1.0)
}

/// (|i> - |j>)/sqrt 2.
fn minus_of(i: usize, j: usize, dim: usize) -> Ket {
    sup(i, j, dim, -1.0)
}

// --- named constructors ------------------------------------------------------

/// Full computational product basis of d1 tensor d2.
pub fn make_computational(d1: usize, d2: usize) -> ProductEnsemble {
    let mut states = Vec::with_capacity(d1 * d2);
    for i in 0..d1 {
        for j in 0..d2 {
            states.push((Ket::basis_state(d1, i), Ket::basis_state(d2, j)));
        }
    }
    ProductEnsemble::new(
        d1,
        d2,
        states,
        format!("computational {d1}x{d2}"),
        Some(DistinguishabilityClass::TwoWayMinRound),
    )
    .expect("computational basis is orthonormal")
}

/// {|00>, |01>, |1+>, |1->}: one-way distinguishable with minimum rounds
/// (Alice must start).
pub fn make_e2() -> ProductEnsemble {
    let zero = Ket::basis_state(2, 0);
    let one = Ket::basis_state(2, 1);
    let plus = plus_of(0, 1, 2);
    let minus = minus_of(0, 1, 2);
    ProductEnsemble::new(
        2,
        2,
        vec![
            (zero.clone(), zero.clone()),
            (zero, one.clone()),
            (one.clone(), plus),
            (one, minus),
        ],
        "E2",
        Some(DistinguishabilityClass::OneWayMinRound),
    )
    .expect("E2 is orthonormal")
}

/// {|0 eta1>, |0 eta1-perp>, |1 eta2>, |1 eta2-perp>} with
/// eta_i = cos(theta_i/2)|0> + e^{i phi_i} sin(theta_i/2)|1>.
pub fn make_arb_2x2(theta1: f64, theta2: f64, phi1: f64, phi2: f64) -> ProductEnsemble {
    let zero = Ket::basis_state(2, 0);
    let one = Ket::basis_state(2, 1);
    let eta1 = eta_qubit(theta1, phi1);
    let eta2 = eta_qubit(theta2, phi2);
    let eta1p = qubit_orthocomplement(&eta1);
    let eta2p = qubit_orthocomplement(&eta2);
    ProductEnsemble::new(
        2,
        2,
        vec![
            (zero.clone(), eta1),
            (zero, eta1p),
            (one.clone(), eta2),
            (one, eta2p),
        ],
        format!("arb 2x2 (theta1={theta1:.4}, theta2={theta2:.4}, phi1={phi1:.4}, phi2={phi2:.4})"),
        None,
    )
    .expect("two-block construction is orthonormal")
}

/// {|0 eta1>, |0 eta1-perp>, |0 eta1-perp-perp>, |1 eta2>, ...} built from
/// two real qutrit triples.
pub fn make_arb_2x3(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> ProductEnsemble {
    let zero = Ket::basis_state(2, 0);
    let one = Ket::basis_state(2, 1);
    let t1 = qutrit_triple(theta1, phi1);
    let t2 = qutrit_triple(theta2, phi2);
    let mut states = Vec::with_capacity(6);
    for eta in t1 {
        states.push((zero.clone(), eta));
    }
    for eta in t2 {
        states.push((one.clone(), eta));
    }
    ProductEnsemble::new(
        2,
        3,
        states,
        format!("arb 2x3 (theta1={theta1:.4}, phi1={phi1:.4}, theta2={theta2:.4}, phi2={phi2:.4})"),
        None,
    )
    .expect("two-block construction is orthonormal")
}

/// {|0> tensor basis1} plus {|1> tensor basis2} for two orthonormal d-bases.
pub fn make_arb_2xd(basis1: &[Ket], basis2: &[Ket]) -> Result<ProductEnsemble> {
    let d = basis1.first().map(Ket::dim).unwrap_or(0);
    if basis1.len() != d || basis2.len() != d || basis2.iter().any(|k| k.dim() != d) {
        return Err(Error::InvalidBasis { dim: d });
    }
    if !is_orthonormal_set(basis1, 1e-10) || !is_orthonormal_set(basis2, 1e-10) {
        return Err(Error::NotOrthonormal(1e-10));
    }
    let zero = Ket::basis_state(2, 0);
    let one = Ket::basis_state(2, 1);
    let mut states = Vec::with_capacity(2 * d);
    for eta in basis1 {
        states.push((zero.clone(), eta.clone()));
    }
    for eta in basis2 {
        states.push((one.clone(), eta.clone()));
    }
    ProductEnsemble::new(2, d, states, format!("arb 2x{d}"), None)
}

/// The nine-state qutrit basis showing nonlocality without entanglement.
pub fn make_nlwe() -> ProductEnsemble {
    let b = |k: usize| Ket::basis_state(3, k);
    let states = vec![
        (b(1), b(1)),
        (b(0), plus_of(0, 1, 3)),
        (b(0), minus_of(0, 1, 3)),
        (b(2), plus_of(1, 2, 3)),
        (b(2), minus_of(1, 2, 3)),
        (plus_of(1, 2, 3), b(0)),
        (minus_of(1, 2, 3), b(0)),
        (plus_of(0, 1, 3), b(2)),
        (minus_of(0, 1, 3), b(2)),
    ];
    ProductEnsemble::new(
        3,
        3,
        states,
        "NLWE",
        Some(DistinguishabilityClass::Indistinguishable),
    )
    .expect("NLWE basis is orthonormal")
}

/// NLWE without its fourth state |2>|1+2>: distinguishable with four rounds
/// of LOCC when Bob starts.
pub fn make_nlwe_minus_fourth() -> ProductEnsemble {
    let full = make_nlwe();
    let states: Vec<(Ket, Ket)> = full
        .states()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != 3)
        .map(|(_, s)| s.clone())
        .collect();
    ProductEnsemble::new(
        3,
        3,
        states,
        "NLWE minus fourth",
        Some(DistinguishabilityClass::FiniteMultiRound),
    )
    .expect("truncated NLWE is orthonormal")
}

/// The Tiles unextendible product basis, stopper included.
pub fn make_tiles() -> ProductEnsemble {
    let b = |k: usize| Ket::basis_state(3, k);
    let w = 1.0 / 3.0f64.sqrt();
    let stopper_side = Ket::from_reals(&[w; 3]).unwrap();
    let states = vec![
        (b(0), minus_of(0, 1, 3)),
        (b(2), minus_of(1, 2, 3)),
        (minus_of(1, 2, 3), b(0)),
        (minus_of(0, 1, 3), b(2)),
        (stopper_side.clone(), stopper_side),
    ];
    ProductEnsemble::new(
        3,
        3,
        states,
        "Tiles UPB",
        Some(DistinguishabilityClass::Indistinguishable),
    )
    .expect("Tiles UPB is orthonormal")
}

/// Tiles without the stopper: distinguishable with three rounds of LOCC,
/// either party starting.
pub fn make_tiles_minus_stopper() -> ProductEnsemble {
    let full = make_tiles();
    let states: Vec<(Ket, Ket)> = full.states()[..4].to_vec();
    ProductEnsemble::new(
        3,
        3,
        states,
        "Tiles minus stopper",
        Some(DistinguishabilityClass::FiniteMultiRound),
    )
    .expect("truncated Tiles is orthonormal")
}

/// The Pyramid unextendible product basis built on five unit vectors
/// v_i = N (cos(2 pi i / 5), sin(2 pi i / 5), h) whose adjacent pairs are
/// orthogonal.
pub fn make_pyramid() -> ProductEnsemble {
    let h = (1.0 + 5f64.sqrt()).sqrt() / 2.0;
    let n = 2.0 / (5.0 + 5f64.sqrt()).sqrt();
    let v: Vec<Ket> = (0..5)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / 5.0;
            Ket::from_reals(&[n * a.cos(), n * a.sin(), n * h]).unwrap()
        })
        .collect();
    let states = vec![
        (v[0].clone(), v[0].clone()),
        (v[1].clone(), v[2].clone()),
        (v[2].clone(), v[4].clone()),
        (v[3].clone(), v[1].clone()),
        (v[4].clone(), v[3].clone()),
    ];
    ProductEnsemble::new(
        3,
        3,
        states,
        "Pyramid UPB",
        Some(DistinguishabilityClass::Indistinguishable),
    )
    .expect("Pyramid UPB is orthonormal")
}

/// Registry of named ensembles for the CLI and tests.
pub fn named(name: &str) -> Option<ProductEnsemble> {
    match name.to_ascii_lowercase().replace('_', "-").as_str() {
        "e1" | "computational-2x2" => Some(make_computational(2, 2)),
        "e2" => Some(make_e2()),
        "computational-2x3" => Some(make_computational(2, 3)),
        "computational-3x3" => Some(make_computational(3, 3)),
        "nlwe" => Some(make_nlwe()),
        "nlwe-minus-fourth" | "nlwe-4th" => Some(make_nlwe_minus_fourth()),
        "tiles" => Some(make_tiles()),
        "tiles-minus-stopper" => Some(make_tiles_minus_stopper()),
        "pyramid" => Some(make_pyramid()),
        _ => None,
    }
}

/// Names accepted by [`named`], for help text.
pub const NAMED_ENSEMBLES: &[&str] = &[
    "e1",
    "e2",
    "computational-2x3",
    "computational-3x3",
    "nlwe",
    "nlwe-minus-fourth",
    "tiles",
    "tiles-minus-stopper",
    "pyramid",
];

// --- JSON schema --------------------------------------------------------------

#[derive(Deserialize)]
struct EnsembleJson {
    d1: usize,
    d2: usize,
    states: Vec<StateJson>,
    #[serde(default)]
    label: String,
}

#[derive(Deserialize)]
struct StateJson {
    alice: Vec<[f64; 2]>,
    bob: Vec<[f64; 2]>,
}

fn ket_from_pairs(pairs: &[[f64; 2]]) -> Result<Ket> {
    Ket::new(
        pairs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

/// Parses the ensemble JSON schema:
/// `{"d1":int, "d2":int, "states":[{"alice":[[re,im],..], "bob":[[re,im],..]},..], "label":str}`.
pub fn from_json_str(s: &str) -> Result<ProductEnsemble> {
    let parsed: EnsembleJson = serde_json::from_str(s)?;
    let mut states = Vec::with_capacity(parsed.states.len());
    for st in &parsed.states {
        states.push((ket_from_pairs(&st.alice)?, ket_from_pairs(&st.bob)?));
    }
    let label = if parsed.label.is_empty() {
        "custom".to_string()
    } else {
        parsed.label
    };
    ProductEnsemble::new(parsed.d1, parsed.d2, states, label, None)
}
