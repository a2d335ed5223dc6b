use serde_json::{json, Value};
use wf_core::decomp::{decompose, LocalDecomposition};
use wf_core::region::AlphaInterval;
use wf_core::states::trace_against_family;
use wf_core::witness::{certify_witness, family_by_label, witness_from_plane};
use wf_core::{tol, Hyperplane, WitnessFamily};

use super::{basis, chosen_state, expect_len, CliError, CliResult, Ctx};
use crate::args::{DecomposeArgs, WitnessAction, WitnessArgs};
use crate::golden::{self, CoefficientTable};
use crate::report::{matrix, Check, Report};

pub fn run(ctx: &Ctx, args: &WitnessArgs) -> CliResult<Report> {
    let mut report = ctx.report();
    let fam = family_by_label(&args.family)?;
    let b = basis(fam.n())?;
    let alpha = args.alpha;
    let head = json!({"family": fam.label(), "alpha": alpha, "n": fam.n()});
    let mut result = head.as_object().cloned().expect("object literal");
    match args.action {
        WitnessAction::Materialize => {
            let w = fam.materialize(alpha, &b)?;
            let plane = fam.plane(alpha)?;
            result.insert("coeffs".into(), json!(plane.coeffs()));
            result.insert("offset".into(), json!(plane.offset()));
            result.insert("matrix".into(), matrix(&w));
        }
        WitnessAction::Certify => {
            let w = fam.materialize_unchecked(alpha, &b)?;
            let cert = certify_witness(&w, &b, &ctx.cfg())?;
            result.insert("in_domain".into(), json!(fam.contains(alpha)));
            result.insert("min_product_expectation".into(), json!(cert.min_product_expectation));
            result.insert("min_eigenvalue".into(), json!(cert.min_eigenvalue));
            result.insert("is_positive_operator".into(), json!(cert.is_positive_operator));
            result.insert("detected_state_found".into(), json!(cert.detected_state_found));
            result.insert(
                "detecting_state".into(),
                json!(cert.detecting_state.as_ref().map(|d| json!({"label": d.label, "trace": d.trace}))),
            );
            result.insert("is_witness".into(), json!(cert.is_witness()));
        }
        WitnessAction::Decompose => {
            let d = decompose(&fam.materialize(alpha, &b)?, fam.n())?;
            result.extend(decomposition_json(&d).as_object().cloned().expect("object literal"));
            report.checks.extend(decomposition_checks(&fam, alpha, &d, ctx.global.tol));
        }
        WitnessAction::Trace => {
            let chosen = chosen_state(&args.state, fam.n())?;
            let t = trace_against_family(&chosen.state, &fam, alpha, &b)?;
            result.insert("weights".into(), json!(chosen.state.weights()));
            result.insert("trace".into(), json!(t));
            result.insert("detected".into(), json!(t < -tol::DETECTION));
        }
    }
    report.result = Value::Object(result);
    Ok(report)
}

pub fn run_decompose(ctx: &Ctx, args: &DecomposeArgs) -> CliResult<Report> {
    let mut report = ctx.report();
    match (&args.family, args.alpha, &args.c, args.n) {
        (Some(label), Some(alpha), None, _) => {
            let fam = family_by_label(label)?;
            let d = decompose(&fam.materialize(alpha, &basis(fam.n())?)?, fam.n())?;
            let mut r = decomposition_json(&d);
            r["family"] = json!(fam.label());
            r["alpha"] = json!(alpha);
            report.result = r;
            report.checks.extend(decomposition_checks(&fam, alpha, &d, ctx.global.tol));
        }
        (None, None, Some(c), Some(n)) => {
            expect_len("-c", &c.0, n)?;
            let w = witness_from_plane(&Hyperplane::new(c.0.clone(), 1.0)?, &basis(n)?)?;
            let d = decompose(&w, n)?;
            let mut r = decomposition_json(&d);
            r["coeffs"] = json!(c.0);
            report.result = r;
        }
        _ => return Err(CliError::Usage("give either -f with -a, or -c with -n".into())),
    }
    Ok(report)
}

pub fn decomposition_json(d: &LocalDecomposition) -> Value {
    let single: Vec<Value> = (1..d.n() * d.n())
        .flat_map(|k| [(k, 0), (0, k)])
        .filter(|&(i, j)| d.coefficient(i, j).abs() > wf_core::decomp::SETTING_THRESHOLD)
        .map(|(i, j)| json!([i, j, d.coefficient(i, j)]))
        .collect();
    json!({
        "n": d.n(),
        "identity": d.coefficient(0, 0),
        "single_sided": single,
        "correlations": d.nonzero_correlations().iter().map(|(i, j, c)| json!([i, j, c])).collect::<Vec<_>>(),
        "settings_count": d.settings_count(),
        "single_sided_count": d.single_sided_count(),
    })
}

/// The reference coefficient table and setting count of `label`, with the
/// range where that count holds.
pub fn reference_block(label: &str) -> Option<(CoefficientTable, usize, AlphaInterval)> {
    let third = 1.0 / 3.0;
    match label {
        "W3" => Some((golden::su3_block(false), golden::SETTINGS_3, AlphaInterval::left_open(third, 2.0 * third))),
        "W3p" => Some((golden::su3_block(true), golden::SETTINGS_3, AlphaInterval::left_open(third, 2.0 * third))),
        "W4" => Some((golden::su4_block(false), golden::SETTINGS_4, AlphaInterval::left_open(0.25, third))),
        "W4p" => Some((golden::su4_block(true), golden::SETTINGS_4, AlphaInterval::left_open(0.25, third))),
        _ => None,
    }
}

/// Compares every entry of the decomposition with the reference table: listed
/// entries against their formula, all others against zero.
pub fn decomposition_checks(fam: &WitnessFamily, alpha: f64, d: &LocalDecomposition, tol: Option<f64>) -> Vec<Check> {
    let Some((table, settings, range)) = reference_block(fam.label()) else {
        return Vec::new();
    };
    let tolerance = tol.unwrap_or(golden::DECOMP_TOL);
    let n2 = d.n() * d.n();
    let mut out = Vec::new();
    for i in 0..n2 {
        for j in 0..n2 {
            let want = table.iter().find(|(a, b, _)| (*a, *b) == (i, j)).map_or(0.0, |(_, _, f)| f(alpha));
            let got = d.coefficient(i, j);
            let listed = table.iter().any(|(a, b, _)| (*a, *b) == (i, j));
            if listed || (got - want).abs() > tolerance {
                out.push(Check::scalar(format!("{} coefficient ({i},{j}) at {alpha}", fam.label()), want, got, tolerance));
            }
        }
    }
    if range.contains(alpha) {
        out.push(Check::exact(
            format!("{} settings at {alpha}", fam.label()),
            json!(settings),
            json!(d.settings_count()),
        ));
    }
    out
}
