//! The product-state feasible region.
//!
//! Every pure product state `|α⟩⊗|β⟩` maps to the point
//! `p = (⟨O₁⟩, …, ⟨Oₙ⟩)`; the feasible region is the convex hull of these
//! points. A hyperplane `c·p = r` bounds the region exactly when the largest
//! value of `c·p` over product states equals `r`.

mod certify;
mod grid;
mod seesaw;

use std::fmt;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::qmath::ProductState;
use crate::tol;

pub use certify::{
    affine_rank, certify_plane, certify_plane_with_tol, conjectured_boundary_check, fit_plane, refine_boundary,
    tangency_interval, Certification, RefineStep, TangencyThreshold,
};
pub use grid::grid_oracle_max;
pub use seesaw::{
    maximize_functional, maximize_product_expectation, run_restarts, MaximizationResult, RestartOutcome, SeesawConfig,
};

/// A point of the feasible-region space.
#[derive(Debug, Clone, PartialEq)]
pub struct PVector(Vec<f64>);

impl PVector {
    /// Checks `pᵢ ∈ [0, 1/n]` and `Σ pᵢ ≤ 1`, both up to [`tol::ALGEBRA`].
    pub fn new(p: Vec<f64>) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty p-vector".into()));
        }
        let cap = 1.0 / n as f64 + tol::ALGEBRA;
        if let Some(bad) = p.iter().find(|&&x| !(-tol::ALGEBRA..=cap).contains(&x)) {
            return Err(Error::InvalidArgument(format!("p component {bad} outside [0, 1/{n}]")));
        }
        if p.iter().sum::<f64>() > 1.0 + tol::ALGEBRA {
            return Err(Error::InvalidArgument("p components sum above 1".into()));
        }
        Ok(Self(p))
    }

    /// Skips validation; for points that are only used as plane anchors.
    pub fn unchecked(p: Vec<f64>) -> Self {
        Self(p)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs_diff(&self, other: &PVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Display for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v:.10}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneStatus {
    Unverified,
    /// Touches the region on a full `(n−1)`-dimensional face.
    ExactBoundary,
    /// Touches the region on a lower-dimensional face.
    Tangent,
    /// Some product state lies strictly beyond the plane.
    Intersecting,
    /// The whole region lies strictly inside; the plane does not touch it.
    Detached,
}

impl PlaneStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PlaneStatus::Unverified => "unverified",
            PlaneStatus::ExactBoundary => "exact_boundary",
            PlaneStatus::Tangent => "tangent",
            PlaneStatus::Intersecting => "intersecting",
            PlaneStatus::Detached => "detached",
        }
    }
}

impl fmt::Display for PlaneStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `c·p = r`, oriented so that the feasible region satisfies `c·p ≤ r`.
/// Faces such as `pᵢ ≥ 0` are stored as `−pᵢ ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    coeffs: Vec<f64>,
    offset: f64,
    status: PlaneStatus,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<f64>, offset: f64) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidPlane("all coefficients are zero".into()));
        }
        if coeffs.iter().chain(std::iter::once(&offset)).any(|v| !v.is_finite()) {
            return Err(Error::InvalidPlane("non-finite coefficient".into()));
        }
        Ok(Self {
            coeffs,
            offset,
            status: PlaneStatus::Unverified,
        })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn status(&self) -> PlaneStatus {
        self.status
    }

    pub fn with_status(mut self, status: PlaneStatus) -> Self {
        self.status = status;
        self
    }

    pub fn value(&self, p: &PVector) -> f64 {
        dot(&self.coeffs, p.as_slice())
    }

    /// Rescaled to offset 1 when the offset is positive; otherwise unchanged.
    pub fn normalized(&self) -> Self {
        if self.offset > 0.0 {
            Self {
                coeffs: self.coeffs.iter().map(|c| c / self.offset).collect(),
                offset: 1.0,
                status: self.status,
            }
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:+.6}·p{}", i + 1))
            .collect();
        write!(f, "{} ≤ {:.6} [{}]", terms.join(" "), self.offset, self.status)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A real parameter interval with open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl AlphaInterval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: false, hi_open: false }
    }

    /// `(lo, hi]`
    pub fn left_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: true, hi_open: false }
    }

    /// `[lo, hi)`
    pub fn right_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: false, hi_open: true }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        let above = if self.lo_open { alpha > self.lo } else { alpha >= self.lo };
        let below = if self.hi_open { alpha < self.hi } else { alpha <= self.hi };
        above && below
    }

    /// `count` evenly spaced points inside the interval; open ends are
    /// excluded, closed ends included.
    pub fn linspace(&self, count: usize) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        let width = self.hi - self.lo;
        if count == 1 {
            return vec![if self.hi_open { self.lo + 0.5 * width } else { self.hi }];
        }
        let (start, denom) = match (self.lo_open, self.hi_open) {
            (false, false) => (0, count - 1),
            (true, false) => (1, count),
            (false, true) => (0, count),
            (true, true) => (1, count + 1),
        };
        (0..count)
            .map(|k| {
                let t = (start + k) as f64 / denom as f64;
                if !self.hi_open && start + k == denom {
                    self.hi
                } else {
                    self.lo + width * t
                }
            })
            .collect()
    }
}

impl fmt::Display for AlphaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// `pᵢ = ⟨α⊗β|Oᵢ|α⊗β⟩` from the closed-form expressions:
///
/// * `pₖ = (1/n) Σᵢ |αᵢ|² |β_{i+k mod n}|²` for `k < n`,
/// * `pₙ = (1/n) |Σᵢ αᵢ βᵢ|²`.
pub fn p_vector(s: &ProductState, basis: &OperatorBasis) -> Result<PVector> {
    let n = basis.local_dim();
    if s.local_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.local_dim(),
        });
    }
    let a = s.a().amplitudes();
    let b = s.b().amplitudes();
    let inv_n = 1.0 / n as f64;
    let mut p = Vec::with_capacity(n);
    for k in 1..n {
        let sum: f64 = (0..n).map(|i| a[i].norm_sqr() * b[(i + k) % n].norm_sqr()).sum();
        p.push(sum * inv_n);
    }
    let coherent = (0..n).map(|i| a[i] * b[i]).sum::<num_complex::Complex64>();
    p.push(coherent.norm_sqr() * inv_n);
    // Rounding can push a zero component to -1e-17; the formulas are nonnegative.
    Ok(PVector(p.into_iter().map(|x| x.max(0.0)).collect()))
}

/// Same quantity through `⟨v|Oᵢ|v⟩` on the `n²`-dimensional product vector.
pub fn p_vector_matrix(s: &ProductState, basis: &OperatorBasis) -> Result<PVector> {
    if s.local_dim() != basis.local_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.local_dim(),
            actual: s.local_dim(),
        });
    }
    let v = s.vector();
    Ok(PVector(basis.ops().iter().map(|o| o.expectation(&v)).collect()))
}
