//! Numerical solvers for ordinary differential equations that mix classical
//! derivatives with Caputo or Riemann-Liouville fractional derivatives of
//! order `0 <= alpha < 1`.
//!
//! The crate is organised bottom-up:
//!
//! - [`special`]: gamma, the two-parameter Mittag-Leffler function and its
//!   composite x-derivative series.
//! - [`analytic`]: closed-form solutions of the six linear model equations.
//! - [`discretization`]: the four discrete Caputo forms and the discrete
//!   Riemann-Liouville integral, as history convolutions on a uniform grid.
//! - [`steppers`]: Euler, Adams fourth-order and Gear (Nordsieck) stepping
//!   primitives.
//! - [`algorithms`]: full trajectory solvers built from the pieces above.
//! - [`batch`]: many independent solves at once (rayon when the `parallel`
//!   feature is on, a plain loop otherwise).
//! - [`harness`]: run configurations, error reports, table and figure
//!   reproduction, CSV output.

pub mod algorithms;
pub mod analytic;
pub mod batch;
pub mod discretization;
mod error;
pub mod harness;
pub mod special;
pub mod steppers;

pub use algorithms::{solve, AlgorithmId, DeviationFlag, Method, SolutionTrace};
pub use analytic::{EquationClass, InitialConditions, ProblemSpec};
pub use discretization::{CaputoForm, DerivativeHistory, Grid};
pub use error::{Error, Result};
