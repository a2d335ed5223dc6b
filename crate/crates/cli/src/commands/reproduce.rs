use serde_json::json;
use wf_core::decomp::decompose;
use wf_core::region::{
    certify_plane, certify_plane_with_tol, maximize_functional, p_vector, tangency_interval, AlphaInterval,
};
use wf_core::states::{classify, horodecki, horodecki_known_separable, varrho};
use wf_core::witness::{builtin_families, family_by_label};
use wf_core::{tol, Hyperplane, ProductState, PureState};

use super::region::{maximum_checks, plane_checks, threshold_check};
use super::witness::{decomposition_checks, reference_block};
use super::{basis, CliResult, Ctx};
use crate::args::Section;
use crate::golden::{self, Threshold};
use crate::report::{Check, Report};

pub fn run(ctx: &Ctx, section: Section) -> CliResult<Report> {
    let mut report = ctx.report();
    let mut sections = Vec::new();
    if matches!(section, Section::S2 | Section::All) {
        report.checks.extend(three_dim(ctx)?);
        sections.push("s2");
    }
    if matches!(section, Section::S3 | Section::All) {
        report.checks.extend(four_dim(ctx)?);
        sections.push("s3");
    }
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.item.as_str()).collect();
    report.result = json!({"sections": sections, "failed_items": failed});
    Ok(report)
}

fn three_dim(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let tol = ctx.global.tol;
    let b = basis(3)?;
    let mut out = Vec::new();

    for row in &golden::VERTICES {
        let Some((a, bb)) = &row.state else { continue };
        let s = ProductState::new(
            PureState::from_real(&golden::amplitudes(a))?,
            PureState::from_real(&golden::amplitudes(bb))?,
        )?;
        let listed = golden::values(&row.p);
        let p = p_vector(&s, &b)?;
        out.push(Check::vector(
            format!("vertex {:?}", row.p.map(|r| format!("{}/{}", r.0, r.1))),
            &listed,
            p.as_slice(),
            tol.unwrap_or(golden::VERTEX_TOL),
        ));
    }

    out.extend(maxima(ctx, 3)?);
    out.extend(planes(ctx, 3)?);
    for t in &golden::THRESHOLDS_S2 {
        out.push(threshold(ctx, t)?);
    }

    let fams = builtin_families(3)?;
    for k in 0..=50u32 {
        let beta = f64::from(k) / 10.0;
        let r = classify(&horodecki(beta)?, &fams, &b, horodecki_known_separable(beta))?;
        out.push(Check::exact(
            format!("classify rho_beta beta={beta}"),
            json!(golden::horodecki_class(k)),
            json!(r.classification.as_str()),
        ));
    }

    out.extend(decompositions(&["W3", "W3p"], tol)?);
    Ok(out)
}

fn four_dim(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let tol = ctx.global.tol;
    let b = basis(4)?;
    let mut out = Vec::new();

    out.extend(maxima(ctx, 4)?);
    out.extend(planes(ctx, 4)?);
    for t in &golden::THRESHOLDS_S3 {
        out.push(threshold(ctx, t)?);
    }

    let middle = family_by_label("W4pp")?;
    for alpha in golden::TANGENT_GRID_S3 {
        let a = alpha.value();
        let cert = certify_plane(&middle.plane(a)?, &b, &ctx.cfg())?;
        out.push(Check::exact(
            format!("status W4pp at {a}"),
            json!("tangent"),
            json!(cert.plane.status().as_str()),
        ));
    }

    let fams = builtin_families(4)?;
    for beta in 0..=10u32 {
        for gamma in golden::VARRHO_GAMMAS {
            let r = classify(&varrho(f64::from(beta), f64::from(gamma))?, &fams, &b, false)?;
            out.push(Check::exact(
                format!("classify varrho beta={beta} gamma={gamma}"),
                json!(golden::varrho_class(beta, gamma)),
                json!(r.classification.as_str()),
            ));
        }
    }

    out.extend(decompositions(&["W4", "W4p"], tol)?);
    Ok(out)
}

fn maxima(ctx: &Ctx, n: usize) -> CliResult<Vec<Check>> {
    let b = basis(n)?;
    let mut out = Vec::new();
    for m in golden::MAXIMA.iter().filter(|m| m.coeffs.len() == n) {
        let r = maximize_functional(&golden::values(m.coeffs), &b, &ctx.cfg())?;
        out.extend(maximum_checks(m, &r, ctx.global.tol));
    }
    Ok(out)
}

fn planes(ctx: &Ctx, n: usize) -> CliResult<Vec<Check>> {
    let b = basis(n)?;
    let mut out = Vec::new();
    for case in golden::PLANES.iter().filter(|p| p.coeffs.len() == n) {
        let h = Hyperplane::new(golden::values(case.coeffs), case.offset.value())?;
        let cert = certify_plane_with_tol(&h, &b, &ctx.cfg(), tol::CERTIFY)?;
        out.extend(plane_checks(case, &cert, ctx.global.tol));
    }
    Ok(out)
}

fn threshold(ctx: &Ctx, t: &Threshold) -> CliResult<Check> {
    let fam = family_by_label(t.family)?;
    let range = if t.open_from {
        AlphaInterval::left_open(t.from.value(), t.to.value())
    } else {
        AlphaInterval::closed(t.from.value(), t.to.value())
    };
    let found = tangency_interval(|a| fam.plane(a), range, 16, &basis(fam.n())?, &ctx.cfg())?;
    Ok(threshold_check(t, &found, ctx.global.tol))
}

/// Ten samples per family over the range where the reference setting count holds.
fn decompositions(labels: &[&str], tol: Option<f64>) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for label in labels {
        let fam = family_by_label(label)?;
        let b = basis(fam.n())?;
        let (_, _, range) = reference_block(fam.label()).expect("tabulated family");
        for alpha in range.linspace(10) {
            let d = decompose(&fam.materialize(alpha, &b)?, fam.n())?;
            out.extend(decomposition_checks(&fam, alpha, &d, tol));
        }
    }
    Ok(out)
}
