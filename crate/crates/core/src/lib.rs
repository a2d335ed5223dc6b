//! Parametric entanglement-witness families for `n ⊗ n` systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`qmath`]: Hermitian operators, Kronecker products, partial transpose,
//!   the particle swap, generalized Gell-Mann generators.
//! * [`basis`]: the cyclic-shift operator family `O₁ … Oₙ`.
//! * [`region`]: the product-state feasible region in `p`-space: the
//!   `p`-vector map, seesaw maximization of linear functionals, a grid
//!   oracle, plane certification, vertex walks and tangency thresholds.
//! * [`witness`]: witness operators built from certified planes and the
//!   built-in parametric families.
//! * [`states`]: mixture states `Σ aᵢOᵢ`, PPT tests and detection scans.
//! * [`decomp`]: local Gell-Mann decompositions and setting counts.

pub mod basis;
pub mod decomp;
mod error;
pub mod qmath;
pub mod region;
pub mod states;
pub mod tol;
pub mod witness;

pub use basis::OperatorBasis;
pub use error::{Error, Result};
pub use qmath::{HermitianOperator, ProductState, PureState, C64};
pub use region::{Hyperplane, MaximizationResult, PVector, PlaneStatus, SeesawConfig};
pub use witness::WitnessFamily;
