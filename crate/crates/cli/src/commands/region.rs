use serde_json::{json, Value};
use wf_core::region::{
    certify_plane_with_tol, conjectured_boundary_check, grid_oracle_max, maximize_functional,
    refine_boundary, tangency_interval, AlphaInterval, Certification, RefineStep, TangencyThreshold,
};
use wf_core::witness::family_by_label;
use wf_core::{tol, Hyperplane, MaximizationResult, PVector, PlaneStatus};

use super::{basis, expect_len, matches, CliError, CliResult, Ctx};
use crate::args::RegionCmd;
use crate::golden::{self, Maximum, PlaneStatusCase, Threshold};
use crate::report::{product_state, pvec, Check, Report};

/// Grid resolution for the cross-check oracle; none above n = 4.
fn grid_resolution(n: usize) -> Option<usize> {
    match n {
        3 => Some(64),
        4 => Some(16),
        _ => None,
    }
}

pub fn run(ctx: &Ctx, cmd: &RegionCmd) -> CliResult<Report> {
    let mut report = ctx.report();
    let cfg = ctx.cfg();
    let tol = ctx.global.tol;
    match cmd {
        RegionCmd::Maximize { n, c } => {
            let b = basis(*n)?;
            expect_len("-c", &c.0, *n)?;
            let r = maximize_functional(&c.0, &b, &cfg)?;
            let grid = grid_resolution(*n).map(|res| grid_oracle_max(&c.0, &b, res)).transpose()?;
            report.result = maximization_json(&c.0, &r, grid);
            if let Some(g) = grid {
                report.checks.push(Check::judged(
                    "seesaw_not_below_grid",
                    json!(g),
                    json!(r.value),
                    Some(tol::CERTIFY),
                    r.value >= g - tol::CERTIFY,
                ));
            }
            if let Some(m) = golden::MAXIMA.iter().find(|m| matches(&c.0, m.coeffs)) {
                report.checks.extend(maximum_checks(m, &r, tol));
            }
        }
        RegionCmd::Certify { n, c, offset } => {
            let b = basis(*n)?;
            expect_len("-c", &c.0, *n)?;
            let h = Hyperplane::new(c.0.clone(), *offset)?;
            let cert = certify_plane_with_tol(&h, &b, &cfg, tol.unwrap_or(tol::CERTIFY))?;
            report.result = certification_json(&cert);
            if let Some(case) = golden::PLANES.iter().find(|p| matches(&c.0, p.coeffs) && matches(&[*offset], &[p.offset])) {
                report.checks.extend(plane_checks(case, &cert, tol));
            }
        }
        RegionCmd::Refine { n, seeds, script, rounds } => {
            let b = basis(*n)?;
            let seeds = seeds
                .0
                .iter()
                .map(|p| {
                    expect_len("seed vertex", p, *n)?;
                    Ok(PVector::new(p.clone())?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let steps = refine_boundary(&seeds, &b, *rounds, &script.0, &cfg)?;
            report.result = json!({
                "n": n,
                "seeds": seeds.iter().map(pvec).collect::<Vec<_>>(),
                "steps": steps.iter().map(step_json).collect::<Vec<_>>(),
            });
        }
        RegionCmd::Interval { family, from, to, open_from, samples } => {
            let fam = family_by_label(family)?;
            if from >= to {
                return Err(CliError::Usage(format!("empty range [{from}, {to}]")));
            }
            let range = if *open_from {
                AlphaInterval::left_open(*from, *to)
            } else {
                AlphaInterval::closed(*from, *to)
            };
            let b = basis(fam.n())?;
            let t = tangency_interval(|a| fam.plane(a), range, *samples, &b, &cfg)?;
            report.result = json!({
                "family": fam.label(),
                "range": {"from": from, "to": to, "open_from": open_from},
                "samples": samples,
                "threshold": threshold_json(&t),
            });
            let golden = golden::THRESHOLDS_S2.iter().chain(&golden::THRESHOLDS_S3).find(|g| {
                g.family == fam.label() && matches(&[*from, *to], &[g.from, g.to]) && g.open_from == *open_from
            });
            if let Some(g) = golden {
                report.checks.push(threshold_check(g, &t, tol));
            }
        }
        RegionCmd::Conjecture { n } => {
            let cert = conjectured_boundary_check(*n, &cfg)?;
            report.result = certification_json(&cert);
            if matches!(n, 3 | 4) {
                report.checks.push(Check::exact(
                    format!("conjectured_plane_n{n}_status"),
                    json!(PlaneStatus::ExactBoundary.as_str()),
                    json!(cert.plane.status().as_str()),
                ));
            }
        }
    }
    Ok(report)
}

pub fn maximization_json(c: &[f64], r: &MaximizationResult, grid: Option<f64>) -> Value {
    json!({
        "coeffs": c,
        "value": r.value,
        "argmax": product_state(&r.argmax),
        "p": pvec(&r.pvec),
        "restarts_agreeing": r.restarts_agreeing,
        "restarts_converged": r.restarts_converged,
        "grid_oracle": grid,
    })
}

pub fn certification_json(c: &Certification) -> Value {
    json!({
        "coeffs": c.plane.coeffs(),
        "offset": c.plane.offset(),
        "status": c.plane.status().as_str(),
        "max_value": c.max_value,
        "argmax": product_state(&c.argmax),
        "argmax_p": pvec(&c.argmax_p),
        "contact": c.contact.iter().map(pvec).collect::<Vec<_>>(),
        "face_rank": c.face_rank,
    })
}

fn step_json(s: &RefineStep) -> Value {
    json!({
        "active": s.active,
        "plane": {"coeffs": s.certification.plane.coeffs(), "offset": s.certification.plane.offset()},
        "status": s.certification.plane.status().as_str(),
        "max_value": s.certification.max_value,
        "argmax_p": pvec(&s.certification.argmax_p),
        "new_vertex": s.new_vertex.as_ref().map(|(i, p)| json!({"index": i, "p": pvec(p)})),
    })
}

pub fn threshold_json(t: &TangencyThreshold) -> Value {
    match t {
        TangencyThreshold::Crossing { alpha, bracket_width } => {
            json!({"kind": "crossing", "alpha": alpha, "bracket_width": bracket_width})
        }
        TangencyThreshold::NonIntersectingThroughout { checked_up_to } => {
            json!({"kind": "non_intersecting_throughout", "checked_up_to": checked_up_to})
        }
        TangencyThreshold::IntersectingThroughout { lowest_sample } => {
            json!({"kind": "intersecting_throughout", "lowest_sample": lowest_sample})
        }
    }
}

pub fn maximum_checks(m: &Maximum, r: &MaximizationResult, tol: Option<f64>) -> Vec<Check> {
    let mut out = vec![Check::scalar(
        format!("max {}", m.name),
        m.max.value(),
        r.value,
        tol.unwrap_or(golden::MAX_TOL),
    )];
    if let Some((p, argmax_tol)) = m.argmax {
        out.push(Check::vector(
            format!("argmax {}", m.name),
            &golden::values(p),
            r.pvec.as_slice(),
            tol.unwrap_or(argmax_tol),
        ));
    }
    out
}

pub fn plane_checks(case: &PlaneStatusCase, cert: &Certification, tol: Option<f64>) -> Vec<Check> {
    let mut out = vec![Check::exact(
        format!("status {}", case.name),
        json!(case.status),
        json!(cert.plane.status().as_str()),
    )];
    if case.name == "4(p1+p2+p3+p4)=1" {
        out.push(Check::vector(
            format!("argmax {}", case.name),
            &golden::values(&golden::AXIS_PLANE_4_ARGMAX),
            cert.argmax_p.as_slice(),
            tol.unwrap_or(1e-6),
        ));
    }
    out
}

pub fn threshold_check(g: &Threshold, t: &TangencyThreshold, tol: Option<f64>) -> Check {
    let tolerance = tol.unwrap_or(tol::ALPHA_THRESHOLD);
    let expected = g.alpha.value();
    let item = format!("threshold {}", g.family);
    match t {
        TangencyThreshold::Crossing { alpha, .. } => Check::scalar(item, expected, *alpha, tolerance),
        other => Check::judged(item, json!(expected), threshold_json(other), Some(tolerance), false),
    }
}
