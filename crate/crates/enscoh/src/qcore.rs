//! Complex finite-dimensional linear algebra for pure states and operators:
//! tensor products, inner products, dephasing, von Neumann entropy.
//!
//! All values are immutable after construction and every operation is pure,
//! so everything here is safe to share across threads.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (normalization, orthogonality, unitarity).
pub const TOL_ALGEBRAIC: f64 = 1e-10;
/// Tolerance for spectral quantities; eigensolvers are iterative.
pub const TOL_SPECTRAL: f64 = 1e-8;

/// A normalized pure state over a fixed computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Array1<Complex64>,
}

impl Ket {
    /// Builds a ket from amplitudes, enforcing `dim >= 2` and unit norm
    /// within [`TOL_ALGEBRAIC`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let amps = Array1::from_vec(amplitudes);
        if amps.len() < 2 {
            return Err(Error::DimensionTooSmall(amps.len()));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_ALGEBRAIC {
            return Err(Error::NotNormalized((norm_sq.sqrt() - 1.0).abs()));
        }
        Ok(Self { amps })
    }

    /// Builds a ket from real amplitudes.
    pub fn from_reals(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state |k> in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(dim >= 2 && k < dim, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Self {
            amps: Array1::from_vec(amps),
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, k: usize) -> Complex64 {
        self.amps[k]
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True when every amplitude has negligible imaginary part.
    pub fn is_real(&self, tol: f64) -> bool {
        self.amps.iter().all(|a| a.im.abs() <= tol)
    }

    /// Internal constructor for amplitudes that are normalized by construction.
    pub(crate) fn from_array_unchecked(amps: Array1<Complex64>) -> Self {
        debug_assert!(amps.len() >= 2);
        Self { amps }
    }
}

/// A square complex matrix. Unitary and projector instances are validated
/// by their constructors.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: Array2<Complex64>,
}

impl Operator {
    /// Builds an operator tagged unitary: rejects matrices with
    /// max |U†U - I| above [`TOL_ALGEBRAIC`].
    pub fn unitary(entries: Array2<Complex64>) -> Result<Self> {
        let op = Self::general(entries)?;
        let dev = op.unitarity_deviation();
        if dev > TOL_ALGEBRAIC {
            return Err(Error::NotUnitary(dev));
        }
        Ok(op)
    }

    /// Builds an untagged operator (square, dim >= 2).
    pub fn general(entries: Array2<Complex64>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c {
            return Err(Error::DimensionMismatch(r, c));
        }
        if r < 2 {
            return Err(Error::DimensionTooSmall(r));
        }
        Ok(Self { entries })
    }

    /// Rank-1 projector |k><k| onto the given direction.
    pub fn rank1_projector(direction: &Ket) -> Self {
        let d = direction.dim();
        let mut entries = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                entries[(i, j)] = direction.amp(i) * direction.amp(j).conj();
            }
        }
        Self { entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: Array2::eye(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// max entry of |U†U - I|.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.entries[(k, i)].conj() * self.entries[(k, j)];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((s - target).norm());
            }
        }
        dev
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim();
        let mut entries = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                entries[(i, j)] = self.entries[(j, i)].conj();
            }
        }
        Self { entries }
    }

    /// Matrix whose columns are the given kets.
    pub fn from_columns(cols: &[Ket]) -> Result<Self> {
        let d = cols.first().map(Ket::dim).unwrap_or(0);
        if cols.len() != d {
            return Err(Error::DimensionMismatch(cols.len(), d));
        }
        let mut entries = Array2::zeros((d, d));
        for (j, c) in cols.iter().enumerate() {
            if c.dim() != d {
                return Err(Error::DimensionMismatch(c.dim(), d));
            }
            for i in 0..d {
                entries[(i, j)] = c.amp(i);
            }
        }
        Self::general(entries)
    }
}

/// A density matrix: Hermitian, unit trace, positive semidefinite
/// (all within the stated tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Array2<Complex64>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c {
            return Err(Error::DimensionMismatch(r, c));
        }
        if r < 2 {
            return Err(Error::DimensionTooSmall(r));
        }
        let mut herm_dev: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                herm_dev = herm_dev.max((entries[(i, j)] - entries[(j, i)].conj()).norm());
            }
        }
        if herm_dev > TOL_ALGEBRAIC {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian: deviation {herm_dev:.3e}"
            )));
        }
        let trace: Complex64 = (0..r).map(|i| entries[(i, i)]).sum();
        if (trace.re - 1.0).abs() > TOL_ALGEBRAIC || trace.im.abs() > TOL_ALGEBRAIC {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace = {trace} (expected 1)"
            )));
        }
        let rho = Self { entries };
        let min_eig = rho
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -TOL_ALGEBRAIC {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(rho)
    }

    /// |psi><psi| for a pure state; valid by construction.
    pub fn from_pure(psi: &Ket) -> Self {
        Self {
            entries: Operator::rank1_projector(psi).entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// Eigenvalues in ascending order, with values in [-1e-10, 0) clamped to 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut evs = hermitian_eigenvalues(&self.entries);
        for ev in evs.iter_mut() {
            if *ev < 0.0 && *ev > -TOL_ALGEBRAIC {
                *ev = 0.0;
            }
        }
        evs
    }
}

/// Kronecker product of two pure states: amplitude at `i * b.dim() + j`
/// is `a[i] * b[j]`.
pub fn tensor_product(a: &Ket, b: &Ket) -> Ket {
    let (da, db) = (a.dim(), b.dim());
    let mut amps = Array1::zeros(da * db);
    for i in 0..da {
        for j in 0..db {
            amps[i * db + j] = a.amp(i) * b.amp(j);
        }
    }
    Ket::from_array_unchecked(amps)
}

/// <a|b>, with the conjugation on `a`.
pub fn inner_product(a: &Ket, b: &Ket) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(inner_product_unchecked(a, b))
}

pub(crate) fn inner_product_unchecked(a: &Ket, b: &Ket) -> Complex64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes().iter())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Checks pairwise |<i|j>| <= tol for i != j and each norm within tol of 1.
pub fn is_orthonormal_set(kets: &[Ket], tol: f64) -> bool {
    if kets.is_empty() {
        return true;
    }
    let d = kets[0].dim();
    if kets.iter().any(|k| k.dim() != d) {
        return false;
    }
    for (i, a) in kets.iter().enumerate() {
        if (a.norm() - 1.0).abs() > tol {
            return false;
        }
        for b in kets.iter().skip(i + 1) {
            if inner_product_unchecked(a, b).norm() > tol {
                return false;
            }
        }
    }
    true
}

fn validate_basis(basis: &[Ket], dim: usize) -> Result<()> {
    if basis.len() != dim || basis.iter().any(|b| b.dim() != dim) {
        return Err(Error::InvalidBasis { dim });
    }
    if !is_orthonormal_set(basis, TOL_ALGEBRAIC) {
        return Err(Error::InvalidBasis { dim });
    }
    Ok(())
}

/// Dephasing map in the given orthonormal basis:
/// `sum_k <b_k|rho|b_k> |b_k><b_k|`. The result is diagonal in that basis
/// (its entries here are expressed back in the computational frame).
pub fn dephase(rho: &DensityMatrix, basis: &[Ket]) -> Result<DensityMatrix> {
    let d = rho.dim();
    validate_basis(basis, d)?;
    let mut entries = Array2::zeros((d, d));
    for b in basis {
        let p = expectation(rho, b);
        for i in 0..d {
            for j in 0..d {
                entries[(i, j)] += Complex64::new(p, 0.0) * b.amp(i) * b.amp(j).conj();
            }
        }
    }
    // Valid by construction: convex mixture of rank-1 projectors.
    Ok(DensityMatrix { entries })
}

/// <b|rho|b>, clamped into [0, 1].
pub(crate) fn expectation(rho: &DensityMatrix, b: &Ket) -> f64 {
    let d = rho.dim();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            s += b.amp(i).conj() * rho.entries[(i, j)] * b.amp(j);
        }
    }
    s.re.clamp(0.0, 1.0)
}

/// Von Neumann entropy -Tr(rho log2 rho), in bits, with 0 log 0 := 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy_bits(&rho.eigenvalues())
}

/// Shannon entropy of a probability vector, in bits.
pub(crate) fn shannon_entropy_bits(p: &[f64]) -> f64 {
    let mut h = 0.0;
    for &x in p {
        if x > 0.0 {
            h -= x * x.log2();
        }
    }
    h
}

/// Applies a unitary to a ket. The output keeps unit norm because the input
/// does; dimension mismatch is the only failure mode.
pub fn apply_unitary(u: &Operator, k: &Ket) -> Result<Ket> {
    if u.dim() != k.dim() {
        return Err(Error::DimensionMismatch(u.dim(), k.dim()));
    }
    debug_assert!(u.is_unitary(1e-8), "apply_unitary expects a unitary operator");
    Ok(apply_matrix_unchecked(u.entries(), k))
}

pub(crate) fn apply_matrix_unchecked(m: &Array2<Complex64>, k: &Ket) -> Ket {
    let d = k.dim();
    let mut amps = Array1::zeros(d);
    for i in 0..d {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..d {
            s += m[(i, j)] * k.amp(j);
        }
        amps[i] = s;
    }
    Ket::from_array_unchecked(amps)
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// returned in ascending order. Quadratically convergent and exact enough
/// for the small dimensions (d <= 9) used throughout this crate.
pub fn hermitian_eigenvalues(m: &Array2<Complex64>) -> Vec<f64> {
    let d = m.nrows();
    assert_eq!(d, m.ncols(), "matrix must be square");
    let mut h = m.clone();

    let scale: f64 = h
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let stop = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                off = off.max(h[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let z = h[(p, q)];
                let zn = z.norm();
                if zn <= stop {
                    continue;
                }
                // Unitary 2x2 rotation annihilating h[(p, q)]:
                //   J_pp = c, J_pq = -s e^{i phi}, J_qp = s e^{-i phi}, J_qq = c
                // with phi = arg(h_pq) and tan(2 theta) = 2|h_pq| / (h_pp - h_qq).
                let phase = z / zn;
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                let theta = 0.5 * (2.0 * zn).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let sp = phase * s; // s e^{i phi}

                for k in 0..d {
                    if k == p || k == q {
                        continue;
                    }
                    let hkp = h[(k, p)];
                    let hkq = h[(k, q)];
                    let new_kp = c * hkp + sp.conj() * hkq;
                    let new_kq = -sp * hkp + c * hkq;
                    h[(k, p)] = new_kp;
                    h[(p, k)] = new_kp.conj();
                    h[(k, q)] = new_kq;
                    h[(q, k)] = new_kq.conj();
                }
                let new_pp = c * c * app + aqq * s * s + 2.0 * c * s * zn;
                let new_qq = app + aqq - new_pp;
                h[(p, p)] = Complex64::new(new_pp, 0.0);
                h[(q, q)] = Complex64::new(new_qq, 0.0);
                h[(p, q)] = Complex64::new(0.0, 0.0);
                h[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }

    let mut evs: Vec<f64> = (0..d).map(|i| h[(i, i)].re).collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    evs
}
