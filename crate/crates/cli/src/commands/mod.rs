pub mod plotdata;
pub mod region;
pub mod reproduce;
pub mod state;
pub mod witness;

use std::fmt;

use wf_core::states::{horodecki, horodecki_known_separable, varrho, MixtureState};
use wf_core::{OperatorBasis, SeesawConfig};

use crate::args::{Global, StateArgs};
use crate::report::Report;

#[derive(Debug)]
pub enum CliError {
    Core(wf_core::Error),
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(wf_core::Error::NonConvergence { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<wf_core::Error> for CliError {
    fn from(e: wf_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What every command needs besides its own arguments.
pub struct Ctx {
    pub global: Global,
    pub command: String,
}

impl Ctx {
    pub fn cfg(&self) -> SeesawConfig {
        SeesawConfig {
            max_iters: self.global.max_iters,
            ..SeesawConfig::default()
                .with_restarts(self.global.restarts)
                .with_seed(self.global.seed)
        }
    }

    pub fn report(&self) -> Report {
        Report::new(self.command.clone(), self.global.seed, self.global.restarts)
    }
}

pub fn basis(n: usize) -> CliResult<OperatorBasis> {
    Ok(OperatorBasis::new(n)?)
}

pub fn expect_len(what: &str, values: &[f64], n: usize) -> CliResult<()> {
    if values.len() == n {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} needs {n} entries, got {}", values.len())))
    }
}

/// A mixture picked on the command line, with whether it lies in a known
/// separable range.
pub struct ChosenState {
    pub state: MixtureState,
    pub known_separable: bool,
}

/// `--weights` gives any mixture; `--beta` alone the three-dimensional
/// one-parameter family, `--beta` with `--gamma` the four-dimensional one.
pub fn chosen_state(choice: &StateArgs, n: usize) -> CliResult<ChosenState> {
    match (&choice.weights, choice.beta, choice.gamma) {
        (Some(w), None, None) => {
            expect_len("--weights", &w.0, n)?;
            Ok(ChosenState {
                state: MixtureState::new(w.0.clone())?,
                known_separable: false,
            })
        }
        (None, Some(beta), None) if n == 3 => Ok(ChosenState {
            state: horodecki(beta)?,
            known_separable: horodecki_known_separable(beta),
        }),
        (None, Some(beta), Some(gamma)) if n == 4 => Ok(ChosenState {
            state: varrho(beta, gamma)?,
            known_separable: false,
        }),
        _ => Err(CliError::Usage(format!(
            "for n = {n} give either --weights, or {}",
            if n == 3 { "--beta" } else { "--beta with --gamma" }
        ))),
    }
}

/// Whether `values` equals the rationals `golden` to within `1e-12`.
pub fn matches(values: &[f64], golden: &[crate::golden::Ratio]) -> bool {
    values.len() == golden.len() && values.iter().zip(golden).all(|(v, g)| (v - g.value()).abs() < 1e-12)
}
