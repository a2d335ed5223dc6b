//! Seesaw maximization of `⟨α⊗β|H|α⊗β⟩` over product states.
//!
//! With `|α⟩` fixed the objective is `⟨β|M_B(α)|β⟩`, where `M_B(α)` is the
//! partial trace of `(|α⟩⟨α| ⊗ I)·H` over the first factor; the optimal `|β⟩`
//! is its top eigenvector. The roles then swap. Every half-step is an exact
//! maximization, so the objective never decreases.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{dot, p_vector, PVector};
use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::qmath::{HermitianOperator, ProductState, PureState, C64};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Per-restart cap. Alternating ascent converges linearly and can need a
    /// few thousand sweeps near flat maxima.
    pub max_iters: usize,
    pub step_tol: f64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0x5EED,
            max_iters: 5000,
            step_tol: tol::SEESAW_STEP,
        }
    }
}

impl SeesawConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub value: f64,
    pub state: ProductState,
    pub converged: bool,
    pub iterations: usize,
}

/// Result of maximizing `c·p` over product states.
#[derive(Debug, Clone)]
pub struct MaximizationResult {
    pub value: f64,
    pub argmax: ProductState,
    pub pvec: PVector,
    /// Restarts whose final value lies within [`tol::FACE_POOL`] of `value`.
    pub restarts_agreeing: usize,
    pub restarts_converged: usize,
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> DVector<C64> {
    let v = DVector::from_fn(n, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let norm = v.norm();
    v.unscale(norm)
}

/// `M_B[j,l] = Σ_{i,k} conj(aᵢ) H[(i,j),(k,l)] a_k`
fn reduce_onto_second(h: &DMatrix<C64>, a: &DVector<C64>, n: usize) -> HermitianOperator {
    let m = DMatrix::from_fn(n, n, |j, l| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let ai = a[i].conj();
            for k in 0..n {
                acc += ai * h[(i * n + j, k * n + l)] * a[k];
            }
        }
        acc
    });
    HermitianOperator::symmetrized(m)
}

/// `M_A[i,k] = Σ_{j,l} conj(βⱼ) H[(i,j),(k,l)] β_l`
fn reduce_onto_first(h: &DMatrix<C64>, b: &DVector<C64>, n: usize) -> HermitianOperator {
    let m = DMatrix::from_fn(n, n, |i, k| {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            let bj = b[j].conj();
            for l in 0..n {
                acc += bj * h[(i * n + j, k * n + l)] * b[l];
            }
        }
        acc
    });
    HermitianOperator::symmetrized(m)
}

fn single_restart(h: &DMatrix<C64>, n: usize, cfg: &SeesawConfig, index: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut a = random_unit(n, &mut rng);
    let mut b = random_unit(n, &mut rng);
    let mut value = f64::NEG_INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        iterations += 1;
        b = reduce_onto_second(h, &a, n).top_eigenpair().1;
        let (v, next_a) = reduce_onto_first(h, &b, n).top_eigenpair();
        a = next_a;
        let step = v - value;
        value = v;
        if step.abs() < cfg.step_tol {
            converged = true;
            break;
        }
    }
    let state = ProductState::new(
        PureState::normalized(a).expect("eigenvector is a unit vector"),
        PureState::normalized(b).expect("eigenvector is a unit vector"),
    )
    .expect("equal local dimensions");
    RestartOutcome {
        value,
        state,
        converged,
        iterations,
    }
}

/// Runs every restart of the seesaw on `h` (acting on `n ⊗ n`) and returns
/// the outcomes in restart order. Restarts run in parallel; each one owns an
/// RNG stream derived from the seed and its index, so results are
/// reproducible.
pub fn run_restarts(h: &HermitianOperator, n: usize, cfg: &SeesawConfig) -> Result<Vec<RestartOutcome>> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    if h.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: h.dim(),
        });
    }
    let m = h.matrix();
    Ok((0..cfg.restarts)
        .into_par_iter()
        .map(|i| single_restart(m, n, cfg, i))
        .collect())
}

fn best_outcome(outcomes: &[RestartOutcome]) -> Result<&RestartOutcome> {
    let best = outcomes
        .iter()
        .reduce(|best, o| if o.value > best.value { o } else { best })
        .expect("nonempty outcomes");
    if !outcomes.iter().any(|o| o.converged) {
        return Err(Error::NonConvergence {
            iterations: best.iterations,
            best: best.value,
        });
    }
    Ok(best)
}

/// `max ⟨α⊗β|h|α⊗β⟩` over product states, with the maximizer.
pub fn maximize_product_expectation(
    h: &HermitianOperator,
    n: usize,
    cfg: &SeesawConfig,
) -> Result<(f64, ProductState)> {
    let outcomes = run_restarts(h, n, cfg)?;
    let best = best_outcome(&outcomes)?;
    Ok((best.value, best.state.clone()))
}

/// Maximizes `Σ cᵢ pᵢ` over product states.
///
/// Fails with [`Error::NonConvergence`] only when no restart met the step
/// tolerance; unconverged restarts still contribute their (achieved) values.
pub fn maximize_functional(coeffs: &[f64], basis: &OperatorBasis, cfg: &SeesawConfig) -> Result<MaximizationResult> {
    let h = basis.combination(coeffs)?;
    let outcomes = run_restarts(&h, basis.local_dim(), cfg)?;
    let best = best_outcome(&outcomes)?;
    let pvec = p_vector(&best.state, basis)?;
    let value = dot(coeffs, pvec.as_slice());
    Ok(MaximizationResult {
        value,
        argmax: best.state.clone(),
        pvec,
        restarts_agreeing: outcomes.iter().filter(|o| o.value >= best.value - tol::FACE_POOL).count(),
        restarts_converged: outcomes.iter().filter(|o| o.converged).count(),
    })
}
