//! Mixtures of the basis operators, their PPT status, and classification
//! against the witness families.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::qmath::{partial_transpose, HermitianOperator, C64};
use crate::region::dot;
use crate::tol;
use crate::witness::{DetectedState, WitnessFamily};

/// A state `Σ aᵢ Oᵢ` with `aᵢ ≥ 0` and `Σ aᵢ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureState {
    weights: Vec<f64>,
}

impl MixtureState {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!("{} weights", weights.len())));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidWeights(format!("weight {w} is negative or not finite")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(Self { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn density(&self, basis: &OperatorBasis) -> Result<HermitianOperator> {
        basis.combination(&self.weights)
    }

    /// PPT test from the weights alone (`n ∈ {3, 4}`).
    pub fn ppt_closed_form(&self) -> Result<bool> {
        ppt_closed_form(&self.weights)
    }
}

/// `ρ_β = (β/7)·O₁ + ((5−β)/7)·O₂ + (2/7)·O₃` for `β ∈ [0, 5]`.
pub fn horodecki(beta: f64) -> Result<MixtureState> {
    if !(0.0..=5.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta = {beta} outside [0, 5]")));
    }
    MixtureState::new(vec![beta / 7.0, (5.0 - beta) / 7.0, 2.0 / 7.0])
}

/// `ρ_β` is separable on `β ∈ [2, 3]`.
pub fn horodecki_known_separable(beta: f64) -> bool {
    (2.0..=3.0).contains(&beta)
}

/// `ϱ = (β·O₁ + γ·O₂ + (10−β)·O₃ + 3·O₄)/(13 + γ)` for `β ∈ [0, 10]`, `γ ≥ 0`.
pub fn varrho(beta: f64, gamma: f64) -> Result<MixtureState> {
    if !(0.0..=10.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta = {beta} outside [0, 10]")));
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma} must be non-negative")));
    }
    let z = 13.0 + gamma;
    MixtureState::new(vec![beta / z, gamma / z, (10.0 - beta) / z, 3.0 / z])
}

/// The partial transpose of `Σ aᵢOᵢ` is block diagonal; its blocks give
/// `a₁a₂ ≥ a₃²` for `n = 3` and `a₁a₃ ≥ a₄²`, `a₂ ≥ a₄` for `n = 4`.
pub fn ppt_closed_form(weights: &[f64]) -> Result<bool> {
    let slack = tol::EIGEN;
    match *weights {
        [a1, a2, a3] => Ok(a1 * a2 - a3 * a3 >= -slack),
        [a1, a2, a3, a4] => Ok(a1 * a3 - a4 * a4 >= -slack && a2 - a4 >= -slack),
        _ => Err(Error::UnsupportedDimension(weights.len())),
    }
}

/// PPT test from the spectrum of the partial transpose.
pub fn ppt_eigen(rho: &HermitianOperator, local_dim: usize) -> Result<bool> {
    Ok(partial_transpose(rho, local_dim)?.min_eigenvalue() >= -tol::EIGEN)
}

/// `Tr(W(α)·ρ)` for a family member and a mixture.
pub fn trace_against_family(
    state: &MixtureState,
    family: &WitnessFamily,
    alpha: f64,
    basis: &OperatorBasis,
) -> Result<f64> {
    check_dim(state, basis)?;
    let w = family.materialize(alpha, basis)?;
    Ok(w.trace_product(&state.density(basis)?))
}

fn check_dim(state: &MixtureState, basis: &OperatorBasis) -> Result<()> {
    if state.n() != basis.local_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.local_dim(),
            actual: state.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SeparableConsistent,
    PptEntangled,
    FreeEntangled,
    Unknown,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SeparableConsistent => "separable_consistent",
            Classification::PptEntangled => "ppt_entangled",
            Classification::FreeEntangled => "free_entangled",
            Classification::Unknown => "unknown",
        }
    }
}

/// The most negative sampled member of one family on a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub family: &'static str,
    pub alpha: f64,
    pub trace: f64,
}

#[derive(Debug, Clone)]
pub struct DetectionReport {
    pub weights: Vec<f64>,
    pub ppt: bool,
    pub detected_by: Vec<Detection>,
    pub classification: Classification,
}

/// Parameter samples per family used by [`classify`].
pub const CLASSIFY_SAMPLES: usize = 25;

/// Classifies a mixture:
/// not PPT gives `FreeEntangled`; PPT and negative on some sampled family
/// member gives `PptEntangled`; PPT, undetected and inside a known separable
/// set gives `SeparableConsistent`; anything else is `Unknown`.
pub fn classify(
    state: &MixtureState,
    families: &[WitnessFamily],
    basis: &OperatorBasis,
    known_separable: bool,
) -> Result<DetectionReport> {
    check_dim(state, basis)?;
    let rho = state.density(basis)?;
    let ppt = ppt_eigen(&rho, basis.local_dim())?;
    let mut detected_by = Vec::new();
    for family in families {
        if family.n() != state.n() {
            return Err(Error::DimensionMismatch {
                expected: state.n(),
                actual: family.n(),
            });
        }
        let mut best: Option<Detection> = None;
        for alpha in family.sample_alphas(CLASSIFY_SAMPLES) {
            let trace = family.materialize(alpha, basis)?.trace_product(&rho);
            if trace < -tol::DETECTION && best.as_ref().is_none_or(|b| trace < b.trace) {
                best = Some(Detection {
                    family: family.label(),
                    alpha,
                    trace,
                });
            }
        }
        detected_by.extend(best);
    }
    let classification = if !ppt {
        Classification::FreeEntangled
    } else if !detected_by.is_empty() {
        Classification::PptEntangled
    } else if known_separable {
        Classification::SeparableConsistent
    } else {
        Classification::Unknown
    };
    Ok(DetectionReport {
        weights: state.weights.clone(),
        ppt,
        detected_by,
        classification,
    })
}

/// Random density matrices drawn by [`find_detected_state`].
pub const RANDOM_SCAN: usize = 10_000;

fn simplex_grid(n: usize, steps: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, left: usize, steps: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == n - 1 {
            out.push(cur.iter().chain([&left]).map(|&k| k as f64 / steps as f64).collect());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, steps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, steps, steps, &mut Vec::new(), &mut out);
    out
}

/// Named mixtures scanned before the generic simplex grid.
fn named_candidates(n: usize) -> Vec<(String, MixtureState)> {
    match n {
        3 => (0..=50)
            .map(|k| {
                let beta = k as f64 / 10.0;
                (format!("rho_beta(beta={beta})"), horodecki(beta).expect("beta in range"))
            })
            .collect(),
        4 => (0..=20)
            .flat_map(|i| (0..=10).map(move |g| (i as f64 / 2.0, g as f64)))
            .map(|(beta, gamma)| {
                (
                    format!("varrho(beta={beta},gamma={gamma})"),
                    varrho(beta, gamma).expect("parameters in range"),
                )
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn random_density(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Searches for `ρ` with `Tr(wρ) < −1e-10`: named mixtures, the weight
/// simplex at step 1/20, then [`RANDOM_SCAN`] random density matrices
/// `GG†/Tr(GG†)` with complex Gaussian `G`.
pub fn find_detected_state(w: &HermitianOperator, basis: &OperatorBasis, seed: u64) -> Result<Option<DetectedState>> {
    let n = basis.local_dim();
    if w.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: w.dim(),
        });
    }
    let per_op: Vec<f64> = basis.ops().iter().map(|o| w.trace_product(o)).collect();

    let mixtures = named_candidates(n)
        .into_iter()
        .chain(simplex_grid(n, 20).into_iter().map(|a| {
            let label = format!("mixture{a:?}");
            (label, MixtureState { weights: a })
        }));
    for (label, state) in mixtures {
        let trace = dot(&per_op, &state.weights);
        if trace < -tol::DETECTION {
            return Ok(Some(DetectedState {
                label,
                trace,
                rho: state.density(basis)?,
            }));
        }
    }

    let d = n * n;
    let wm = w.matrix();
    let found = (0..RANDOM_SCAN).into_par_iter().find_map_first(|k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let g = random_density(d, &mut rng);
        let norm = g.norm_squared();
        let wg = wm * &g;
        let trace = g.zip_fold(&wg, 0.0, |acc, x, y| acc + (x.conj() * y).re) / norm;
        (trace < -tol::DETECTION).then_some((k, trace, g, norm))
    });
    match found {
        Some((k, trace, g, norm)) => Ok(Some(DetectedState {
            label: format!("random#{k}"),
            trace,
            rho: HermitianOperator::symmetrized((&g * g.adjoint()).unscale(norm)),
        })),
        None => Ok(None),
    }
}
