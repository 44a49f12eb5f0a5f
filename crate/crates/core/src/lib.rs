//! Exact Riemann solvers for the nonsymmetric Keyfitz–Kranzer system with Chaplygin
//! pressure and for the pressureless gas system, both forced by a time-dependent
//! Coulomb-like friction term `alpha(t) rho`.
//!
//! Solutions are built in closed form ([`kk`], [`pressureless`]), analysed in the
//! vanishing-pressure and critical-`mu` limits ([`limits`]), and checked against
//! the distributional weak form ([`weak`]) and an independent finite-volume
//! solver ([`fvm`]).

pub mod cli;
pub mod config;
pub mod error;
pub mod friction;
pub mod fvm;
pub mod kk;
pub mod limits;
pub mod pressureless;
pub mod quadrature;
pub mod state;
pub mod wave;
pub mod weak;

pub use error::{Error, Result};
pub use friction::{FrictionKind, FrictionTerm, Trajectory};
pub use kk::{KkProblem, KkSolution, Region, RiemannData};
pub use pressureless::{PressurelessProblem, PressurelessSolution};
pub use state::{Profile, Singular, State};
pub use wave::{Piece, RiemannSolution, TimeSlice};
