//! Seeded random generators shared by tests and the acceptance suite.

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qcore::{apply_unitary, DensityMatrix, Ket, Operator};
use crate::unitary_opt::{unitary_from_params, UnitaryParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One standard normal draw (Box-Muller).
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Haar-like random pure state: normalized complex Gaussian vector.
pub fn random_ket(rng: &mut ChaCha8Rng, dim: usize) -> Ket {
    loop {
        let raw: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return Ket::new(raw.into_iter().map(|z| z / norm).collect()).unwrap();
        }
    }
}

/// Random full-rank density matrix G G† / Tr(G G†).
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let g: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
        .collect();
    let g = Array2::from_shape_vec((dim, dim), g).unwrap();
    let mut rho = Array2::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                s += g[(i, k)] * g[(j, k)].conj();
            }
            rho[(i, j)] = s;
        }
    }
    let tr: f64 = (0..dim).map(|i| rho[(i, i)].re).sum();
    rho.mapv_inplace(|z| z / tr);
    // Re-symmetrize to kill rounding drift before validation.
    for i in 0..dim {
        for j in (i + 1)..dim {
            let avg = 0.5 * (rho[(i, j)] + rho[(j, i)].conj());
            rho[(i, j)] = avg;
            rho[(j, i)] = avg.conj();
        }
    }
    DensityMatrix::new(rho).unwrap()
}

/// Random unitary drawn through the Givens parameterization.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> Operator {
    let params: Vec<f64> = (0..dim * dim)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    unitary_from_params(&UnitaryParams::new(dim, params).unwrap())
}

/// U rho U†.
pub fn conjugate(rho: &DensityMatrix, u: &Operator) -> DensityMatrix {
    let d = rho.dim();
    let ue = u.entries();
    let re = rho.entries();
    let mut out = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..d {
                for l in 0..d {
                    s += ue[(i, k)] * re[(k, l)] * ue[(j, l)].conj();
                }
            }
            out[(i, j)] = s;
        }
    }
    DensityMatrix::new(out).expect("unitary conjugation preserves density matrices")
}

/// Rotates each basis ket by U (the transformed reference basis).
pub fn rotate_basis(basis: &[Ket], u: &Operator) -> Vec<Ket> {
    basis
        .iter()
        .map(|b| apply_unitary(u, b).unwrap())
        .collect()
}

/// The computational basis of the given dimension.
pub fn computational_basis(dim: usize) -> Vec<Ket> {
    (0..dim).map(|k| Ket::basis_state(dim, k)).collect()
}
