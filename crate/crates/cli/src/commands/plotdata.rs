use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wf_core::region::p_vector;
use wf_core::{ProductState, PureState};

use super::{basis, CliError, CliResult, Ctx};
use crate::args::PlotArgs;
use crate::golden;

/// CSV text and the number of samples violating `3(p₁+p₂)+p₃ ≤ 1`.
pub struct PlotData {
    pub csv: String,
    pub violations: usize,
}

pub fn run(ctx: &Ctx, args: &PlotArgs) -> CliResult<PlotData> {
    if args.n != 3 {
        return Err(CliError::Usage(format!("plot data is only produced for n = 3, got {}", args.n)));
    }
    let b = basis(3)?;
    let mut csv = String::from("p1,p2,p3,kind\n");
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.global.seed);
    let mut violations = 0;
    for _ in 0..args.samples {
        let s = ProductState::random(3, &mut rng);
        let p = p_vector(&s, &b)?;
        let p = p.as_slice();
        if 3.0 * (p[0] + p[1]) + p[2] > 1.0 + 1e-9 {
            violations += 1;
        }
        row(&mut csv, p, "sample");
    }
    for v in &golden::VERTICES {
        let Some((a, bb)) = &v.state else { continue };
        let s = ProductState::new(
            PureState::from_real(&golden::amplitudes(a))?,
            PureState::from_real(&golden::amplitudes(bb))?,
        )?;
        row(&mut csv, p_vector(&s, &b)?.as_slice(), "vertex");
    }
    // Plane rows carry coefficients scaled to `c·p = 1`.
    for (c, r) in &golden::PLOT_PLANES {
        let c: Vec<f64> = golden::values(c).iter().map(|x| x / r.value()).collect();
        row(&mut csv, &c, "plane");
    }
    Ok(PlotData { csv, violations })
}

fn row(csv: &mut String, p: &[f64], kind: &str) {
    writeln!(csv, "{},{},{},{kind}", p[0], p[1], p[2]).expect("writing to a String");
}
