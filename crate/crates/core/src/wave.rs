//! Fixed-time snapshots of a Riemann solution as a sequence of smooth pieces
//! separated by wave positions, plus an optional Dirac part.

use crate::error::{Error, Result};
use crate::state::{check_grid, check_sample_time, Profile, Singular};

/// The bounded part of the solution on one piece between consecutive waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Constant { rho: f64, u: f64 },
    /// Vacuum fan: `rho = 0`, `u = (x - b_shift)/t + a_shift`.
    Vacuum { t: f64, a_shift: f64, b_shift: f64 },
}

impl Piece {
    /// `(rho, u)` at position `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        match *self {
            Piece::Constant { rho, u } => (rho, u),
            Piece::Vacuum { t, a_shift, b_shift } => (0.0, (x - b_shift) / t + a_shift),
        }
    }
}

/// The solution at a fixed time `t > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlice {
    pub t: f64,
    /// Wave positions, non-decreasing; `pieces.len() == waves.len() + 1`.
    pub waves: Vec<f64>,
    pub pieces: Vec<Piece>,
    pub singular: Option<Singular>,
    /// `alpha(t)`, `A(t)`, `B(t)`.
    pub alpha: f64,
    pub a_shift: f64,
    pub b_shift: f64,
}

impl TimeSlice {
    pub(crate) fn new(
        t: f64,
        waves: Vec<f64>,
        pieces: Vec<Piece>,
        singular: Option<Singular>,
        alpha: f64,
        a_shift: f64,
        b_shift: f64,
    ) -> Result<Self> {
        check_sample_time(t)?;
        if pieces.len() != waves.len() + 1 {
            return Err(Error::InvalidInput("a slice needs one more piece than waves".into()));
        }
        if waves.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::QuadratureFailure(format!("wave positions out of order: {waves:?}")));
        }
        Ok(Self { t, waves, pieces, singular, alpha, a_shift, b_shift })
    }

    /// Index of the piece containing `x`; a point on a wave belongs to the piece on its right.
    pub fn piece_index(&self, x: f64) -> usize {
        self.waves.partition_point(|&w| w <= x)
    }

    pub fn state_at(&self, x: f64) -> (f64, f64) {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// Samples the bounded part on `grid` and attaches the singular record.
    pub fn profile(&self, grid: &[f64]) -> Result<Profile> {
        check_grid(grid)?;
        let (rho, u) = grid.iter().map(|&x| self.state_at(x)).unzip();
        Ok(Profile { t: self.t, grid: grid.to_vec(), rho, u, singular: self.singular })
    }
}

/// Anything that can be evaluated as a [`TimeSlice`] at a given time.
pub trait RiemannSolution {
    fn slice(&self, t: f64) -> Result<TimeSlice>;

    /// Coefficient of the `mu u` flux term (0 for the pressureless system).
    fn mu(&self) -> f64;

    fn alpha(&self, t: f64) -> f64;
}
