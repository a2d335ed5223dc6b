//! Local decompositions `W = Σ cᵢⱼ λᵢ ⊗ λⱼ` with `λ₀ = I` and `λ₁ … λ_{n²−1}`
//! the Gell-Mann generators. Each nonzero correlation term `λᵢ ⊗ λⱼ` with
//! `i, j ≥ 1` is one local measurement setting.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qmath::{gell_mann_basis, tensor, HermitianOperator};

/// Coefficients with magnitude above this count as nonzero.
pub const SETTING_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    n: usize,
    /// `(n² × n²)` table indexed by `(i, j)`, index 0 being the identity.
    coeffs: DMatrix<f64>,
}

/// `I` followed by the Gell-Mann generators.
fn local_ops(n: usize) -> Vec<HermitianOperator> {
    std::iter::once(HermitianOperator::identity(n))
        .chain(gell_mann_basis(n))
        .collect()
}

/// Expands `w` on `n ⊗ n` in the local operator basis. With
/// `Tr(λᵢλⱼ) = 2δᵢⱼ` and `Tr I = n` the coefficient of `λᵢ ⊗ λⱼ` is
/// `Tr(W·(λᵢ⊗λⱼ)) / (‖λᵢ‖²‖λⱼ‖²)`.
pub fn decompose(w: &HermitianOperator, n: usize) -> Result<LocalDecomposition> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if w.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: w.dim(),
        });
    }
    let ops = local_ops(n);
    let norm = |i: usize| if i == 0 { n as f64 } else { 2.0 };
    let m = n * n;
    let coeffs = DMatrix::from_fn(m, m, |i, j| w.trace_product(&tensor(&ops[i], &ops[j])) / (norm(i) * norm(j)));
    Ok(LocalDecomposition { n, coeffs })
}

impl LocalDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `λᵢ ⊗ λⱼ`; index 0 is the identity, `1 … n²−1` the
    /// generators in standard order.
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        self.coeffs[(i, j)]
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    /// The correlation block `cᵢⱼ`, `i, j ≥ 1`.
    pub fn correlations(&self) -> DMatrix<f64> {
        let m = self.n * self.n;
        self.coeffs.view((1, 1), (m - 1, m - 1)).into_owned()
    }

    /// Nonzero `(i, j)` terms with `i, j ≥ 1`, in row-major order.
    pub fn nonzero_correlations(&self) -> Vec<(usize, usize, f64)> {
        let m = self.n * self.n;
        let mut out = Vec::new();
        for i in 1..m {
            for j in 1..m {
                let c = self.coeffs[(i, j)];
                if c.abs() > SETTING_THRESHOLD {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// Number of local measurement settings: nonzero correlation terms.
    pub fn settings_count(&self) -> usize {
        self.nonzero_correlations().len()
    }

    /// Nonzero terms `λᵢ ⊗ I` or `I ⊗ λⱼ`.
    pub fn single_sided_count(&self) -> usize {
        let m = self.n * self.n;
        (1..m)
            .filter(|&k| self.coeffs[(k, 0)].abs() > SETTING_THRESHOLD)
            .count()
            + (1..m)
                .filter(|&k| self.coeffs[(0, k)].abs() > SETTING_THRESHOLD)
                .count()
    }

    /// `Σ cᵢⱼ λᵢ ⊗ λⱼ`.
    pub fn reconstruct(&self) -> HermitianOperator {
        let ops = local_ops(self.n);
        let m = self.n * self.n;
        let mut acc = HermitianOperator::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let c = self.coeffs[(i, j)];
                if c != 0.0 {
                    acc = &acc + &tensor(&ops[i], &ops[j]).scale(c);
                }
            }
        }
        acc
    }
}
