//! Exhaustive grid lower bound for `max Σ cᵢ pᵢ`.
//!
//! `p₁ … p_{n−1}` depend only on the moduli `|αᵢ|²`, `|βⱼ|²`, so the grid runs
//! over pairs of points on the probability simplex at the given resolution.
//! The coherent term `|Σ αᵢβᵢ|²` takes, over all phases, every value between
//! `(max(0, 2·maxᵢ rᵢ − Σ rᵢ))²` and `(Σ rᵢ)²` with `rᵢ = |αᵢ||βᵢ|`; the grid
//! uses the end favoured by the sign of `cₙ`. Every grid value is attained by
//! some product state, so the result is a lower bound on the true maximum.

use rayon::prelude::*;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};

fn simplex_points(n: usize, resolution: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, left: usize, res: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&k| k as f64 / res as f64).collect());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, res, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, resolution, resolution, &mut Vec::with_capacity(n), &mut out);
    out
}

fn grid_value(c: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let inv_n = 1.0 / n as f64;
    let mut total = 0.0;
    for k in 1..n {
        let pk: f64 = (0..n).map(|i| x[i] * y[(i + k) % n]).sum();
        total += c[k - 1] * pk * inv_n;
    }
    let mut sum = 0.0;
    let mut largest: f64 = 0.0;
    for i in 0..n {
        let r = (x[i] * y[i]).sqrt();
        sum += r;
        largest = largest.max(r);
    }
    let coherent = if c[n - 1] >= 0.0 { sum } else { (2.0 * largest - sum).max(0.0) };
    total + c[n - 1] * coherent * coherent * inv_n
}

/// Grid maximum of `Σ cᵢ pᵢ`; requires `resolution ≥ 8` and `n ≤ 4`.
pub fn grid_oracle_max(coeffs: &[f64], basis: &OperatorBasis, resolution: usize) -> Result<f64> {
    let n = basis.local_dim();
    if coeffs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: coeffs.len(),
        });
    }
    if n > 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    if resolution < 8 {
        return Err(Error::InvalidArgument(format!("grid resolution {resolution} below 8")));
    }
    let points = simplex_points(n, resolution);
    Ok(points
        .par_iter()
        .map(|x| points.iter().map(|y| grid_value(coeffs, x, y)).fold(f64::NEG_INFINITY, f64::max))
        .reduce(|| f64::NEG_INFINITY, f64::max))
}
