use serde_json::json;
use wf_core::states::classify;
use wf_core::witness::builtin_families;

use super::{basis, chosen_state, CliResult, Ctx};
use crate::args::StateCmd;
use crate::report::Report;

pub fn run(ctx: &Ctx, cmd: &StateCmd) -> CliResult<Report> {
    let StateCmd::Classify { n, state } = cmd;
    let b = basis(*n)?;
    let chosen = chosen_state(state, *n)?;
    let r = classify(&chosen.state, &builtin_families(*n)?, &b, chosen.known_separable)?;
    let mut report = ctx.report();
    report.result = json!({
        "n": n,
        "weights": r.weights,
        "ppt": r.ppt,
        "ppt_closed_form": chosen.state.ppt_closed_form()?,
        "known_separable": chosen.known_separable,
        "detected_by": r.detected_by.iter().map(|d| json!({
            "family": d.family,
            "alpha": d.alpha,
            "trace": d.trace,
        })).collect::<Vec<_>>(),
        "classification": r.classification.as_str(),
    });
    Ok(report)
}
