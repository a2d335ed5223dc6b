//! Witness operators from supporting hyperplanes.
//!
//! A plane `c·p ≤ r` that no product state violates gives the operator
//! `W = (r·I − Σ cᵢOᵢ)/|r|`, whose expectation on every product state is
//! `(r − c·p)/|r| ≥ 0`. Parametric plane families therefore give parametric
//! witness families.

use std::fmt;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::qmath::HermitianOperator;
use crate::region::{maximize_product_expectation, AlphaInterval, Hyperplane, SeesawConfig};
use crate::states;
use crate::tol;

/// `W = (r·I − Σ cᵢOᵢ)/|r|`. For `r > 0` the identity coefficient is 1.
pub fn witness_from_plane(h: &Hyperplane, basis: &OperatorBasis) -> Result<HermitianOperator> {
    if h.offset() == 0.0 {
        return Err(Error::ZeroOffset);
    }
    let n = basis.local_dim();
    let r = h.offset();
    let comb = basis.combination(h.coeffs())?;
    Ok((&HermitianOperator::identity(n * n).scale(r) - &comb).scale(1.0 / r.abs()))
}

/// A one-parameter family of supporting planes and their witnesses.
#[derive(Clone)]
pub struct WitnessFamily {
    label: &'static str,
    n: usize,
    plane_fn: fn(f64) -> Result<Hyperplane>,
    /// Where the family is a valid supporting plane. May be unbounded.
    domain: Vec<AlphaInterval>,
    /// `α = 0` denotes the face `pₙ ≥ 0`, whose witness is `Oₙ` itself.
    zero_face: bool,
    /// Bounded stand-in for `domain`, used when sampling.
    sweep: Vec<AlphaInterval>,
}

impl fmt::Debug for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WitnessFamily")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("domain", &self.domain)
            .field("zero_face", &self.zero_face)
            .finish()
    }
}

/// Sweeps stop at |α| = 8 on unbounded domains.
pub const SWEEP_CAP: f64 = 8.0;

impl WitnessFamily {
    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &[AlphaInterval] {
        &self.domain
    }

    pub fn sweep_intervals(&self) -> &[AlphaInterval] {
        &self.sweep
    }

    pub fn contains(&self, alpha: f64) -> bool {
        (self.zero_face && alpha == 0.0) || self.domain.iter().any(|i| i.contains(alpha))
    }

    /// The supporting plane at `α`, without a domain check.
    pub fn plane(&self, alpha: f64) -> Result<Hyperplane> {
        if alpha == 0.0 && self.zero_face {
            let mut c = vec![0.0; self.n];
            c[self.n - 1] = -1.0;
            return Hyperplane::new(c, 0.0);
        }
        (self.plane_fn)(alpha)
    }

    /// Coefficients `c(α)` of the plane `c·p = 1` (or the face at `α = 0`).
    pub fn coefficients(&self, alpha: f64) -> Result<Vec<f64>> {
        Ok(self.plane(alpha)?.coeffs().to_vec())
    }

    pub fn materialize(&self, alpha: f64, basis: &OperatorBasis) -> Result<HermitianOperator> {
        if !self.contains(alpha) {
            return Err(Error::AlphaOutOfRange {
                family: self.label.to_string(),
                alpha,
            });
        }
        self.materialize_unchecked(alpha, basis)
    }

    /// Builds the operator even outside the validity domain, e.g. to show that
    /// a rotated plane has stopped being a witness.
    pub fn materialize_unchecked(&self, alpha: f64, basis: &OperatorBasis) -> Result<HermitianOperator> {
        if basis.local_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: basis.local_dim(),
            });
        }
        let plane = self.plane(alpha)?;
        if plane.offset() == 0.0 {
            return Ok(-&basis.combination(plane.coeffs())?);
        }
        witness_from_plane(&plane, basis)
    }

    /// `count` parameter values spread over the sweep intervals in proportion
    /// to their widths.
    pub fn sample_alphas(&self, count: usize) -> Vec<f64> {
        let total: f64 = self.sweep.iter().map(|i| i.hi - i.lo).sum();
        let mut out = Vec::with_capacity(count);
        let mut remaining = count;
        for (k, interval) in self.sweep.iter().enumerate() {
            let share = if k + 1 == self.sweep.len() {
                remaining
            } else {
                (((interval.hi - interval.lo) / total) * count as f64).round() as usize
            };
            let share = share.min(remaining);
            out.extend(interval.linspace(share));
            remaining -= share;
        }
        out
    }
}

fn inv(alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        Err(Error::InvalidArgument("alpha = 0 has no plane in this family".into()))
    } else {
        Ok(1.0 / alpha)
    }
}

fn w3(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![inv(a)?, 3.0, 2.0 - inv(3.0 * a)?], 1.0)
}

fn w3_swapped(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![3.0, inv(a)?, 2.0 - inv(3.0 * a)?], 1.0)
}

fn w3_coherent(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![3.0, 3.0, inv(a)?], 1.0)
}

fn w4(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![inv(a)?, 4.0, 4.0, 2.0 - inv(4.0 * a)?], 1.0)
}

fn w4_swapped(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![4.0, 4.0, inv(a)?, 2.0 - inv(4.0 * a)?], 1.0)
}

fn w4_middle(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![4.0, inv(a)?, 4.0, 2.0 - inv(4.0 * a)?], 1.0)
}

fn w4_coherent(a: f64) -> Result<Hyperplane> {
    Hyperplane::new(vec![4.0, 4.0, 4.0, inv(a)?], 1.0)
}

fn rotation_domain() -> Vec<AlphaInterval> {
    vec![
        AlphaInterval {
            lo: f64::NEG_INFINITY,
            hi: 0.0,
            lo_open: true,
            hi_open: true,
        },
        AlphaInterval {
            lo: 1.0,
            hi: f64::INFINITY,
            lo_open: false,
            hi_open: true,
        },
    ]
}

fn rotation_sweep() -> Vec<AlphaInterval> {
    vec![
        AlphaInterval::right_open(-SWEEP_CAP, 0.0),
        AlphaInterval::closed(1.0, SWEEP_CAP),
    ]
}

/// The built-in families for `n ∈ {3, 4}`.
///
/// | label   | n | plane coefficients `c(α)`            | domain            |
/// |---------|---|--------------------------------------|-------------------|
/// | `W3`    | 3 | `(1/α, 3, 2 − 1/(3α))`               | `[1/3, 2/3]`      |
/// | `W3p`   | 3 | `(3, 1/α, 2 − 1/(3α))`               | `[1/3, 2/3]`      |
/// | `W3pp`  | 3 | `(3, 3, 1/α)`, face `p₃ ≥ 0` at 0    | `α < 0`, `α ≥ 1`  |
/// | `W4`    | 4 | `(1/α, 4, 4, 2 − 1/(4α))`            | `(1/4, 1/3]`      |
/// | `W4p`   | 4 | `(4, 4, 1/α, 2 − 1/(4α))`            | `(1/4, 1/3]`      |
/// | `W4pp`  | 4 | `(4, 1/α, 4, 2 − 1/(4α))`            | `α ≥ 1/4`         |
/// | `W4ppp` | 4 | `(4, 4, 4, 1/α)`, face `p₄ ≥ 0` at 0 | `α < 0`, `α ≥ 1`  |
pub fn builtin_families(n: usize) -> Result<Vec<WitnessFamily>> {
    let third = 1.0 / 3.0;
    match n {
        3 => Ok(vec![
            WitnessFamily {
                label: "W3",
                n,
                plane_fn: w3,
                domain: vec![AlphaInterval::closed(third, 2.0 * third)],
                zero_face: false,
                sweep: vec![AlphaInterval::closed(third, 2.0 * third)],
            },
            WitnessFamily {
                label: "W3p",
                n,
                plane_fn: w3_swapped,
                domain: vec![AlphaInterval::closed(third, 2.0 * third)],
                zero_face: false,
                sweep: vec![AlphaInterval::closed(third, 2.0 * third)],
            },
            WitnessFamily {
                label: "W3pp",
                n,
                plane_fn: w3_coherent,
                domain: rotation_domain(),
                zero_face: true,
                sweep: rotation_sweep(),
            },
        ]),
        4 => Ok(vec![
            WitnessFamily {
                label: "W4",
                n,
                plane_fn: w4,
                domain: vec![AlphaInterval::left_open(0.25, third)],
                zero_face: false,
                sweep: vec![AlphaInterval::left_open(0.25, third)],
            },
            WitnessFamily {
                label: "W4p",
                n,
                plane_fn: w4_swapped,
                domain: vec![AlphaInterval::left_open(0.25, third)],
                zero_face: false,
                sweep: vec![AlphaInterval::left_open(0.25, third)],
            },
            WitnessFamily {
                label: "W4pp",
                n,
                plane_fn: w4_middle,
                domain: vec![AlphaInterval::right_open(0.25, f64::INFINITY)],
                zero_face: false,
                sweep: vec![AlphaInterval::closed(0.25, SWEEP_CAP)],
            },
            WitnessFamily {
                label: "W4ppp",
                n,
                plane_fn: w4_coherent,
                domain: rotation_domain(),
                zero_face: true,
                sweep: rotation_sweep(),
            },
        ]),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// Looks up a built-in family by label across both dimensions.
pub fn family_by_label(label: &str) -> Result<WitnessFamily> {
    [3, 4]
        .into_iter()
        .flat_map(|n| builtin_families(n).expect("supported dimension"))
        .find(|f| f.label.eq_ignore_ascii_case(label))
        .ok_or_else(|| Error::UnknownFamily(label.to_string()))
}

/// A state on which a witness was found negative.
#[derive(Debug, Clone)]
pub struct DetectedState {
    pub label: String,
    pub trace: f64,
    pub rho: HermitianOperator,
}

#[derive(Debug, Clone)]
pub struct WitnessCertificate {
    /// `min ⟨α⊗β|W|α⊗β⟩` over product states.
    pub min_product_expectation: f64,
    pub min_eigenvalue: f64,
    pub is_positive_operator: bool,
    pub detected_state_found: bool,
    pub detecting_state: Option<DetectedState>,
}

impl WitnessCertificate {
    /// Non-negative on product states and negative on some scanned state.
    pub fn is_witness(&self) -> bool {
        self.min_product_expectation >= -1e-9 && self.detected_state_found
    }
}

/// Checks `w` on product states (seesaw on `−w`), tests operator positivity,
/// and, for non-positive `w`, scans the candidate states of
/// [`states::detection_candidates`] for `Tr(wρ) < −1e-10`.
///
/// An empty scan only reports that nothing was found among the candidates.
pub fn certify_witness(w: &HermitianOperator, basis: &OperatorBasis, cfg: &SeesawConfig) -> Result<WitnessCertificate> {
    let n = basis.local_dim();
    let (neg_max, _) = maximize_product_expectation(&-w, n, cfg)?;
    let min_eigenvalue = w.min_eigenvalue();
    let is_positive_operator = min_eigenvalue >= -tol::EIGEN;
    let detecting_state = if is_positive_operator {
        None
    } else {
        states::find_detected_state(w, basis, cfg.seed)?
    };
    Ok(WitnessCertificate {
        min_product_expectation: -neg_max,
        min_eigenvalue,
        is_positive_operator,
        detected_state_found: detecting_state.is_some(),
        detecting_state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::swap_operator;
    use crate::region::{p_vector, AlphaInterval};

    fn basis(n: usize) -> OperatorBasis {
        OperatorBasis::new(n).unwrap()
    }

    fn family(label: &str) -> WitnessFamily {
        family_by_label(label).unwrap()
    }

    #[test]
    fn best_three_dim_witness_matches_explicit_form() {
        let b = basis(3);
        let w = family("W3").materialize(2.0 / 3.0, &b).unwrap();
        let expected = &(&HermitianOperator::identity(9) - &b.op(1).scale(1.5)) - &(&b.op(2).scale(3.0) + &b.op(3).scale(1.5));
        assert!(w.max_abs_diff(&expected) < 1e-12);
        assert!(w.min_eigenvalue() < -0.1);
    }

    #[test]
    fn coherent_family_matches_explicit_form() {
        let b = basis(3);
        let f = family("W3pp");
        for a in [-2.0, -0.5, 1.0, 3.0] {
            let w = f.materialize(a, &b).unwrap();
            let expected = &(&HermitianOperator::identity(9) - &(b.op(1) + b.op(2)).scale(3.0)) - &b.op(3).scale(1.0 / a);
            assert!(w.max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn zero_parameter_gives_coherent_projector() {
        let b = basis(3);
        let w = family("W3pp").materialize(0.0, &b).unwrap();
        assert!(w.max_abs_diff(b.op(3)) < 1e-15);
        let b4 = basis(4);
        let w4 = family("W4ppp").materialize(0.0, &b4).unwrap();
        assert!(w4.max_abs_diff(b4.op(4)) < 1e-15);
    }

    #[test]
    fn family_coefficients_at_endpoints() {
        let c = family("W3").coefficients(1.0 / 3.0).unwrap();
        for (x, e) in c.iter().zip([3.0, 3.0, 1.0]) {
            assert!((x - e).abs() < 1e-12);
        }
        let c = family("W4").coefficients(1.0 / 3.0).unwrap();
        for (x, e) in c.iter().zip([3.0, 4.0, 4.0, 1.25]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_boundary_witness_is_positive() {
        let b = basis(3);
        let w = family("W3").materialize(1.0 / 3.0, &b).unwrap();
        let wp = family("W3p").materialize(1.0 / 3.0, &b).unwrap();
        assert!(w.max_abs_diff(&wp) < 1e-12);
        assert!(w.min_eigenvalue() >= -1e-12);
    }

    #[test]
    fn four_dim_boundary_witness_is_positive() {
        let b = basis(4);
        let h = Hyperplane::new(vec![4.0, 4.0, 4.0, 1.0], 1.0).unwrap();
        let w = witness_from_plane(&h, &b).unwrap();
        let expected = &(&HermitianOperator::identity(16) - &(&(b.op(1) + b.op(2)) + b.op(3)).scale(4.0)) - b.op(4);
        assert!(w.max_abs_diff(&expected) < 1e-12);
        assert!(w.min_eigenvalue() >= -1e-12);
    }

    #[test]
    fn zero_offset_plane_is_rejected() {
        let h = Hyperplane::new(vec![0.0, 0.0, -1.0], 0.0).unwrap();
        assert_eq!(witness_from_plane(&h, &basis(3)).unwrap_err(), Error::ZeroOffset);
    }

    #[test]
    fn swap_maps_family_to_partner() {
        let b = basis(3);
        let pi = swap_operator(3);
        for a in AlphaInterval::left_open(1.0 / 3.0, 2.0 / 3.0).linspace(10) {
            let w = family("W3").materialize(a, &b).unwrap();
            let wp = family("W3p").materialize(a, &b).unwrap();
            assert!(w.conjugate_by(pi.matrix()).max_abs_diff(&wp) < 1e-12);
        }
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let b = basis(3);
        let err = family("W3").materialize(0.9, &b).unwrap_err();
        assert!(matches!(err, Error::AlphaOutOfRange { .. }));
        assert!(family("W3pp").materialize(0.5, &b).is_err());
        assert!(family("W4").materialize(0.25, &basis(4)).is_err());
        assert!(family("W4pp").materialize(100.0, &basis(4)).is_ok());
    }

    #[test]
    fn unknown_label() {
        assert!(matches!(family_by_label("W9"), Err(Error::UnknownFamily(_))));
        assert!(builtin_families(5).is_err());
    }

    #[test]
    fn sampling_stays_in_domain() {
        for n in [3, 4] {
            for f in builtin_families(n).unwrap() {
                let alphas = f.sample_alphas(25);
                assert_eq!(alphas.len(), 25, "{}", f.label());
                assert!(alphas.iter().all(|&a| f.contains(a)), "{}", f.label());
            }
        }
    }

    #[test]
    fn expectation_on_products_is_plane_gap() {
        use crate::qmath::{ProductState, PureState};
        use nalgebra::DVector;
        use rand::{Rng, SeedableRng};
        let b = basis(3);
        let h = Hyperplane::new(vec![1.7, 3.0, 0.4], 1.0).unwrap();
        let w = witness_from_plane(&h, &b).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut draw = || {
            let v = DVector::from_fn(3, |_, _| crate::C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            PureState::normalized(v).unwrap()
        };
        for _ in 0..1000 {
            let s = ProductState::new(draw(), draw()).unwrap();
            let lhs = w.expectation(&s.vector());
            let rhs = 1.0 - h.value(&p_vector(&s, &b).unwrap());
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_identity_is_not_a_witness() {
        let b = basis(3);
        let w = HermitianOperator::identity(9).scale(-1.0);
        let cert = certify_witness(&w, &b, &SeesawConfig::default().with_restarts(4)).unwrap();
        assert!((cert.min_product_expectation + 1.0).abs() < 1e-12);
        assert!(!cert.is_witness());
    }
}
