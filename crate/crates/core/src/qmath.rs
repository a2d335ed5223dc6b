//! Dense complex linear algebra for bipartite `n ⊗ n` systems.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Subsystem ordering follows the
//! usual convention: the basis ket `|i j⟩` sits at index `i * n + j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tol;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A dense Hermitian matrix.
#[derive(Clone, PartialEq)]
pub struct HermitianOperator {
    m: DMatrix<C64>,
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HermitianOperator")
            .field("dim", &self.dim())
            .field("entries", &self.m)
            .finish()
    }
}

impl HermitianOperator {
    /// Wraps `m` after checking that it is square and Hermitian to within
    /// [`tol::ALGEBRA`] (relative to the largest entry when that exceeds 1).
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                actual: m.ncols(),
            });
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let deviation = hermitian_deviation(&m);
        if deviation > tol::ALGEBRA * scale {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::symmetrized(m))
    }

    /// Projects onto the Hermitian part without checking. Used internally for
    /// matrices that are Hermitian by construction.
    pub(crate) fn symmetrized(m: DMatrix<C64>) -> Self {
        let adj = m.adjoint();
        Self { m: (m + adj) * C64::new(0.5, 0.0) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { m: DMatrix::identity(dim, dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: DMatrix::zeros(dim, dim) }
    }

    pub fn diag(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&v| C64::new(v, 0.0)));
        Self { m: DMatrix::from_diagonal(&d) }
    }

    /// Rank-one projector `|ψ⟩⟨ψ|`.
    pub fn projector(psi: &DVector<C64>) -> Self {
        Self::symmetrized(psi * psi.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// `Tr(self · other)`, real for two Hermitian operators.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "trace_product dimension mismatch");
        // Tr(AB) = Σ_ij A_ij B_ji
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += (self.m[(i, j)] * other.m[(j, i)]).re;
            }
        }
        acc
    }

    /// `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &DVector<C64>) -> f64 {
        assert_eq!(v.len(), self.dim(), "expectation dimension mismatch");
        v.dotc(&(&self.m * v)).re
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { m: &self.m * C64::new(s, 0.0) }
    }

    /// Plain matrix product; generally not Hermitian.
    pub fn matmul(&self, other: &HermitianOperator) -> DMatrix<C64> {
        &self.m * &other.m
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Self {
        Self::symmetrized(u * &self.m * u.adjoint())
    }

    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        max_abs_diff(&self.m, &other.m)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.m.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(self)
    }

    /// Largest eigenvalue together with a unit eigenvector.
    pub fn top_eigenpair(&self) -> (f64, DVector<C64>) {
        let eig = SymmetricEigen::new(self.m.clone());
        let (idx, val) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        (val, eig.eigenvectors.column(idx).into_owned())
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: Self) -> HermitianOperator {
        HermitianOperator { m: &self.m + &rhs.m }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: Self) -> HermitianOperator {
        HermitianOperator { m: &self.m - &rhs.m }
    }
}

impl Neg for &HermitianOperator {
    type Output = HermitianOperator;
    fn neg(self) -> HermitianOperator {
        HermitianOperator { m: -&self.m }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scale(rhs)
    }
}

/// `max |Mᵢⱼ − conj(Mⱼᵢ)|`.
pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Kronecker product `x ⊗ y`.
pub fn tensor(x: &HermitianOperator, y: &HermitianOperator) -> HermitianOperator {
    HermitianOperator { m: x.m.kronecker(&y.m) }
}

/// Transpose on the second factor of an `n ⊗ n` operator.
pub fn partial_transpose(rho: &HermitianOperator, subsystem_dim: usize) -> Result<HermitianOperator> {
    let n = subsystem_dim;
    if n == 0 || rho.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: rho.dim(),
        });
    }
    // ⟨i j|ρ^{T_B}|k l⟩ = ⟨i l|ρ|k j⟩
    let m = DMatrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (r / n, r % n);
        let (k, l) = (c / n, c % n);
        rho.m[(i * n + l, k * n + j)]
    });
    Ok(HermitianOperator { m })
}

/// The particle swap `Π|i j⟩ = |j i⟩` on `n ⊗ n`.
pub fn swap_operator(local_dim: usize) -> HermitianOperator {
    let n = local_dim;
    let mut m = DMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            m[(j * n + i, i * n + j)] = ONE;
        }
    }
    HermitianOperator { m }
}

/// The `n² − 1` generalized Gell-Mann matrices in the standard physics order.
///
/// For each column `k = 1 … n−1`: the symmetric and antisymmetric pair for
/// every row `j < k`, then the diagonal generator
/// `√(2/(k(k+1))) · diag(1,…,1, −k, 0,…)`. For `n = 2` these are the Pauli
/// matrices; for `n = 3` the usual `λ₁ … λ₈`. Normalization: `Tr(λᵢλⱼ) = 2δᵢⱼ`.
pub fn gell_mann_basis(n: usize) -> Vec<HermitianOperator> {
    let mut out = Vec::with_capacity(n * n - 1);
    for k in 1..n {
        for j in 0..k {
            let mut sym = DMatrix::zeros(n, n);
            sym[(j, k)] = ONE;
            sym[(k, j)] = ONE;
            out.push(HermitianOperator { m: sym });

            let mut asym = DMatrix::zeros(n, n);
            asym[(j, k)] = C64::new(0.0, -1.0);
            asym[(k, j)] = C64::new(0.0, 1.0);
            out.push(HermitianOperator { m: asym });
        }
        let norm = (2.0 / (k * (k + 1)) as f64).sqrt();
        let mut d = vec![0.0; n];
        for v in d.iter_mut().take(k) {
            *v = norm;
        }
        d[k] = -(k as f64) * norm;
        out.push(HermitianOperator::diag(&d));
    }
    out
}

pub fn min_eigenvalue(x: &HermitianOperator) -> f64 {
    SymmetricEigen::new(x.m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// A normalized pure state in canonical phase: the first component of
/// largest modulus is real and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: DVector<C64>,
}

impl PureState {
    /// Requires unit norm (within [`tol::ALGEBRA`]); the phase is canonicalized.
    pub fn new(amps: DVector<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidState("empty amplitude vector".into()));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::ALGEBRA {
            return Err(Error::InvalidState(format!("norm {norm} differs from 1")));
        }
        Ok(Self { amps: canonical_phase(amps) })
    }

    /// Normalizes and canonicalizes any nonzero vector.
    pub fn normalized(amps: DVector<C64>) -> Result<Self> {
        let norm = amps.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Ok(Self { amps: canonical_phase(amps.unscale(norm)) })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized(DVector::from_iterator(values.len(), values.iter().map(|&v| C64::new(v, 0.0))))
    }

    /// Haar-random state from complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let v = DVector::from_fn(dim, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
            if let Ok(s) = Self::normalized(v) {
                return s;
            }
        }
    }

    /// Computational basis ket `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = DVector::zeros(dim);
        amps[index] = ONE;
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }
}

fn canonical_phase(mut v: DVector<C64>) -> DVector<C64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let Some(lead) = v.iter().find(|z| z.norm() >= max - tol::ALGEBRA).copied() else {
        return v;
    };
    if lead.norm() > 0.0 {
        let phase = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
    v
}

/// `|α⟩ ⊗ |β⟩` with equal local dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    a: PureState,
    b: PureState,
}

impl ProductState {
    pub fn new(a: PureState, b: PureState) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                actual: b.dim(),
            });
        }
        Ok(Self { a, b })
    }

    /// Independent Haar-random factors.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let a = PureState::random(dim, rng);
        let b = PureState::random(dim, rng);
        Self { a, b }
    }

    pub fn a(&self) -> &PureState {
        &self.a
    }

    pub fn b(&self) -> &PureState {
        &self.b
    }

    pub fn local_dim(&self) -> usize {
        self.a.dim()
    }

    /// The two factors exchanged, `|β⟩ ⊗ |α⟩`.
    pub fn swapped(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn vector(&self) -> DVector<C64> {
        self.a.amps.kronecker(&self.b.amps)
    }

    pub fn density(&self) -> HermitianOperator {
        HermitianOperator::projector(&self.vector())
    }
}

/// Zero vector helper for callers building amplitudes by hand.
pub fn zero_vector(dim: usize) -> DVector<C64> {
    DVector::from_element(dim, ZERO)
}
