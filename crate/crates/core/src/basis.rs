//! The orthogonal operator family built from the cyclic shift.
//!
//! For local dimension `n`:
//!
//! ```text
//! Oₖ = (1/n) Σᵢ (I ⊗ Sᵏ)|ii⟩⟨ii|(I ⊗ Sᵏ†)   k = 1 … n−1
//! Oₙ = |ψ⟩⟨ψ|,  |ψ⟩ = (1/√n) Σᵢ |ii⟩
//! ```
//!
//! so `Oₖ` is the uniform mixture of `|i, i+k mod n⟩`. The operators are
//! mutually orthogonal, positive, trace one, and `Oₙ` has rank one.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qmath::{swap_operator, zero_vector, HermitianOperator, C64};
use crate::tol;

/// `S|i⟩ = |i+1 mod n⟩`. Real, unitary, not Hermitian for `n > 2`, so it is
/// returned as a plain matrix.
pub fn shift_operator(n: usize) -> DMatrix<C64> {
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        s[((i + 1) % n, i)] = C64::new(1.0, 0.0);
    }
    s
}

#[derive(Debug, Clone)]
pub struct OperatorBasis {
    local_dim: usize,
    ops: Vec<HermitianOperator>,
}

impl OperatorBasis {
    /// Builds `{O₁, …, Oₙ}` for `n ≥ 2`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        let id = DMatrix::<C64>::identity(n, n);
        let shift = shift_operator(n);
        let inv_n = 1.0 / n as f64;
        let mut ops = Vec::with_capacity(n);
        let mut shift_k = shift.clone();
        for _k in 1..n {
            let local = id.kronecker(&shift_k);
            let mut acc = DMatrix::zeros(n * n, n * n);
            for i in 0..n {
                let mut ii = zero_vector(n * n);
                ii[i * n + i] = C64::new(1.0, 0.0);
                let ket = &local * ii;
                acc += &ket * ket.adjoint();
            }
            ops.push(HermitianOperator::symmetrized(acc * C64::new(inv_n, 0.0)));
            shift_k = &shift * shift_k;
        }
        let mut psi = zero_vector(n * n);
        for i in 0..n {
            psi[i * n + i] = C64::new(inv_n.sqrt(), 0.0);
        }
        ops.push(HermitianOperator::projector(&psi));
        Ok(Self { local_dim: n, ops })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Number of operators, equal to `n`.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[HermitianOperator] {
        &self.ops
    }

    /// `Oᵢ` with a 1-based index.
    pub fn op(&self, index: usize) -> &HermitianOperator {
        &self.ops[index - 1]
    }

    /// `Σ cᵢ Oᵢ`.
    pub fn combination(&self, coeffs: &[f64]) -> Result<HermitianOperator> {
        if coeffs.len() != self.ops.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ops.len(),
                actual: coeffs.len(),
            });
        }
        let d = self.local_dim * self.local_dim;
        Ok(self
            .ops
            .iter()
            .zip(coeffs)
            .fold(HermitianOperator::zeros(d), |acc, (o, &c)| &acc + &o.scale(c)))
    }

    /// For every 1-based index `i`, the index `j` with `Π Oᵢ Π = Oⱼ`.
    pub fn permutation_images(&self) -> Result<BTreeMap<usize, usize>> {
        let pi = swap_operator(self.local_dim);
        let mut map = BTreeMap::new();
        for (i, op) in self.ops.iter().enumerate() {
            let image = op.conjugate_by(pi.matrix());
            let j = self
                .ops
                .iter()
                .position(|o| o.max_abs_diff(&image) <= tol::ALGEBRA)
                .ok_or_else(|| Error::InvalidArgument(format!("Π O{} Π is not a basis element", i + 1)))?;
            map.insert(i + 1, j + 1);
        }
        Ok(map)
    }

    /// Applies the swap image to a coefficient vector: the returned vector `c'`
    /// satisfies `Σ c'ⱼ Oⱼ = Π (Σ cᵢ Oᵢ) Π`.
    pub fn permute_coefficients(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        let images = self.permutation_images()?;
        let mut out = vec![0.0; coeffs.len()];
        for (i, j) in images {
            out[j - 1] = coeffs[i - 1];
        }
        Ok(out)
    }
}
