//! Numerical tolerances shared across the crate.

/// Algebraic identities that hold exactly in real arithmetic
/// (Hermiticity, orthogonality, reconstruction, trace formulas).
pub const ALGEBRA: f64 = 1e-12;

/// Positivity buffer for eigenvalue tests (PPT, operator positivity).
pub const EIGEN: f64 = 1e-10;

/// A witness detects a state when `Tr(Wρ)` is below `-DETECTION`.
pub const DETECTION: f64 = 1e-10;

/// Gap between a functional's maximum and a plane's offset below which the
/// plane is considered to touch the feasible region.
pub const CERTIFY: f64 = 1e-6;

/// Touching test used while bisecting a family parameter. Seesaw values are
/// accurate to ~1e-14, and a looser gap biases the threshold upward when the
/// overshoot grows only quadratically past it.
pub const CERTIFY_STRICT: f64 = 1e-9;

/// Restart maximizers whose value is this close to the best are pooled for
/// the face-dimension probe.
pub const FACE_POOL: f64 = 1e-8;

/// Singular values above this count towards the affine rank of a point set.
pub const AFFINE_RANK: f64 = 1e-6;

/// Absolute accuracy of bisected family thresholds.
pub const ALPHA_THRESHOLD: f64 = 1e-3;

/// Seesaw stopping rule: successive values closer than this.
pub const SEESAW_STEP: f64 = 1e-12;
