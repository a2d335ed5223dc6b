use nalgebra::{DMatrix, DVector};

use super::seesaw::{run_restarts, SeesawConfig};
use super::{p_vector, AlphaInterval, Hyperplane, PVector, PlaneStatus};
use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::qmath::ProductState;
use crate::tol;

/// Outcome of checking a hyperplane against the feasible region.
#[derive(Debug, Clone)]
pub struct Certification {
    /// The input plane with its status filled in.
    pub plane: Hyperplane,
    /// `max c·p` over product states.
    pub max_value: f64,
    pub argmax: ProductState,
    pub argmax_p: PVector,
    /// Distinct maximizing points found across restarts.
    pub contact: Vec<PVector>,
    /// Affine rank of `contact`.
    pub face_rank: usize,
}

/// Number of singular values of `{pᵢ − p₀}` above [`tol::AFFINE_RANK`].
pub fn affine_rank(points: &[PVector]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let dim = points[0].n();
    let rows = points.len() - 1;
    let d = DMatrix::from_fn(rows, dim, |r, c| points[r + 1].as_slice()[c] - points[0].as_slice()[c]);
    d.singular_values().iter().filter(|&&s| s > tol::AFFINE_RANK).count()
}

fn dedup_points(points: Vec<PVector>) -> Vec<PVector> {
    let mut out: Vec<PVector> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.max_abs_diff(&p) < tol::AFFINE_RANK) {
            out.push(p);
        }
    }
    out
}

/// [`certify_plane_with_tol`] at the default gap [`tol::CERTIFY`].
pub fn certify_plane(h: &Hyperplane, basis: &OperatorBasis, cfg: &SeesawConfig) -> Result<Certification> {
    certify_plane_with_tol(h, basis, cfg, tol::CERTIFY)
}

/// Maximizes `c·p`, compares with the offset, and probes the dimension of the
/// contact face from the pooled restart maximizers.
///
/// The gap is measured relative to `|r|` (or to `max|cᵢ|` when `r = 0`), so a
/// plane and any positive multiple of it certify identically.
pub fn certify_plane_with_tol(
    h: &Hyperplane,
    basis: &OperatorBasis,
    cfg: &SeesawConfig,
    gap_tol: f64,
) -> Result<Certification> {
    let n = basis.local_dim();
    if h.n() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: h.n() });
    }
    let op = basis.combination(h.coeffs())?;
    let outcomes = run_restarts(&op, n, cfg)?;
    if !outcomes.iter().any(|o| o.converged) {
        let best = outcomes.iter().map(|o| o.value).fold(f64::NEG_INFINITY, f64::max);
        return Err(Error::NonConvergence { iterations: cfg.max_iters, best });
    }

    let mut scored = Vec::with_capacity(outcomes.len());
    for o in &outcomes {
        let p = p_vector(&o.state, basis)?;
        scored.push((h.value(&p), p, &o.state));
    }
    let (best_idx, _) = scored
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.0 > acc.1 { (i, s.0) } else { acc });
    let max_value = scored[best_idx].0;
    let argmax = scored[best_idx].2.clone();
    let argmax_p = scored[best_idx].1.clone();

    let scale = if h.offset() != 0.0 {
        h.offset().abs()
    } else {
        h.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max)
    };
    let contact = dedup_points(
        scored
            .into_iter()
            .filter(|(v, _, _)| *v >= max_value - tol::FACE_POOL * scale)
            .map(|(_, p, _)| p)
            .collect(),
    );
    let face_rank = affine_rank(&contact);

    let gap = (max_value - h.offset()) / scale;
    let status = if gap > gap_tol {
        PlaneStatus::Intersecting
    } else if gap < -gap_tol {
        PlaneStatus::Detached
    } else if face_rank + 1 >= n {
        PlaneStatus::ExactBoundary
    } else {
        PlaneStatus::Tangent
    };

    Ok(Certification {
        plane: h.clone().with_status(status),
        max_value,
        argmax,
        argmax_p,
        contact,
        face_rank,
    })
}

/// The hyperplane through `n` affinely independent points in `ℝⁿ`.
///
/// When the plane misses the origin it is returned as `c·p = 1`, which orients
/// the origin side inwards. A plane through the origin is returned with
/// `r = 0`, `max|cᵢ| = 1`, oriented so the maximally mixed point
/// `(1/n², …, 1/n²)` lies on the inner side.
pub fn fit_plane(points: &[PVector]) -> Result<Hyperplane> {
    let n = points.first().map(PVector::n).unwrap_or(0);
    if n == 0 || points.len() != n || points.iter().any(|p| p.n() != n) {
        return Err(Error::InvalidArgument(format!(
            "need exactly n points of dimension n, got {} points",
            points.len()
        )));
    }
    let rank = affine_rank(points);
    if rank + 1 < n {
        return Err(Error::DegenerateVertices { rank, needed: n - 1 });
    }
    let v = DMatrix::from_fn(n, n, |r, c| points[r].as_slice()[c]);
    let svd = v.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin > 1e-10 * smax {
        let c = v
            .lu()
            .solve(&DVector::from_element(n, 1.0))
            .ok_or(Error::DegenerateVertices { rank, needed: n - 1 })?;
        return Hyperplane::new(c.iter().copied().collect(), 1.0);
    }
    let v_t = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let mut c: Vec<f64> = v_t.row(idx).iter().copied().collect();
    let inf = c.iter().map(|x| x.abs()).fold(0.0, f64::max);
    c.iter_mut().for_each(|x| *x /= inf);
    let centre = 1.0 / (n * n) as f64;
    if c.iter().sum::<f64>() * centre > 0.0 {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    Hyperplane::new(c, 0.0)
}

/// One round of the vertex walk.
#[derive(Debug, Clone)]
pub struct RefineStep {
    /// Indices into the vertex pool (seeds first, then discoveries in order).
    pub active: Vec<usize>,
    pub certification: Certification,
    /// The maximizer's point when the plane was cut, with its pool index.
    pub new_vertex: Option<(usize, PVector)>,
}

/// Re-enacts the fit-maximize-extend walk over feasible-region vertices.
///
/// Round 0 fits a plane through `seeds`; round `r ≥ 1` uses the pool indices in
/// `script[r − 1]`. Whenever the fitted plane is cut, the maximizer's point is
/// appended to the pool. The walk stops after `max_rounds` rounds, when the
/// fitted plane is not intersecting, or when the script runs out.
pub fn refine_boundary(
    seeds: &[PVector],
    basis: &OperatorBasis,
    max_rounds: usize,
    script: &[Vec<usize>],
    cfg: &SeesawConfig,
) -> Result<Vec<RefineStep>> {
    let n = basis.local_dim();
    if seeds.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} seed vertices, got {}", seeds.len())));
    }
    let mut pool: Vec<PVector> = seeds.to_vec();
    let mut steps = Vec::new();
    for round in 0..max_rounds {
        let active: Vec<usize> = if round == 0 {
            (0..n).collect()
        } else {
            match script.get(round - 1) {
                Some(sel) => sel.clone(),
                None => break,
            }
        };
        if let Some(&bad) = active.iter().find(|&&i| i >= pool.len()) {
            return Err(Error::InvalidArgument(format!(
                "vertex index {bad} not in pool of {}",
                pool.len()
            )));
        }
        let chosen: Vec<PVector> = active.iter().map(|&i| pool[i].clone()).collect();
        let plane = fit_plane(&chosen)?;
        let certification = certify_plane(&plane, basis, cfg)?;
        let cut = certification.plane.status() == PlaneStatus::Intersecting;
        let new_vertex = cut.then(|| {
            pool.push(certification.argmax_p.clone());
            (pool.len() - 1, certification.argmax_p.clone())
        });
        steps.push(RefineStep {
            active,
            certification,
            new_vertex,
        });
        if !cut {
            break;
        }
    }
    Ok(steps)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TangencyThreshold {
    /// Largest sampled/bisected parameter at which the plane still does not cut
    /// the region; the first cutting parameter lies within the stated width.
    Crossing { alpha: f64, bracket_width: f64 },
    /// No sampled parameter cuts the region.
    NonIntersectingThroughout { checked_up_to: f64 },
    /// Already the lowest sampled parameter cuts the region.
    IntersectingThroughout { lowest_sample: f64 },
}

/// Locates the largest `α` in `range` for which `family(α)` does not cut the
/// feasible region. The range is first sampled at `samples` points to check
/// that the predicate switches at most once; the crossing is then bisected
/// below [`tol::ALPHA_THRESHOLD`].
///
/// The touching test uses [`tol::CERTIFY_STRICT`].
pub fn tangency_interval<F>(
    family: F,
    range: AlphaInterval,
    samples: usize,
    basis: &OperatorBasis,
    cfg: &SeesawConfig,
) -> Result<TangencyThreshold>
where
    F: Fn(f64) -> Result<Hyperplane>,
{
    if samples < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 samples, got {samples}")));
    }
    let touches = |alpha: f64| -> Result<bool> {
        let plane = family(alpha)?;
        let cert = certify_plane_with_tol(&plane, basis, cfg, tol::CERTIFY_STRICT)?;
        Ok(cert.plane.status() != PlaneStatus::Intersecting)
    };

    let alphas = range.linspace(samples);
    let flags = alphas.iter().map(|&a| touches(a)).collect::<Result<Vec<bool>>>()?;
    let switches = flags.windows(2).filter(|w| w[0] != w[1]).count();
    if switches > 1 || (switches == 1 && !flags[0]) {
        let listing: Vec<String> = alphas
            .iter()
            .zip(&flags)
            .map(|(a, &f)| format!("{a:.6}:{}", if f { "ok" } else { "cut" }))
            .collect();
        return Err(Error::NonMonotone(listing.join(" ")));
    }
    if flags.iter().all(|&f| f) {
        return Ok(TangencyThreshold::NonIntersectingThroughout {
            checked_up_to: *alphas.last().expect("samples ≥ 16"),
        });
    }
    if !flags[0] {
        return Ok(TangencyThreshold::IntersectingThroughout { lowest_sample: alphas[0] });
    }
    let first_cut = flags.iter().position(|&f| !f).expect("a cut sample exists");
    let (mut lo, mut hi) = (alphas[first_cut - 1], alphas[first_cut]);
    while hi - lo > 0.1 * tol::ALPHA_THRESHOLD {
        let mid = 0.5 * (lo + hi);
        if touches(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TangencyThreshold::Crossing {
        alpha: lo,
        bracket_width: hi - lo,
    })
}

/// Certifies `n(p₁ + … + p_{n−1}) + pₙ = 1` for `2 ≤ n ≤ 5`.
pub fn conjectured_boundary_check(n: usize, cfg: &SeesawConfig) -> Result<Certification> {
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let basis = OperatorBasis::new(n)?;
    let mut coeffs = vec![n as f64; n];
    coeffs[n - 1] = 1.0;
    certify_plane(&Hyperplane::new(coeffs, 1.0)?, &basis, cfg)
}
