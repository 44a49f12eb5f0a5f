//! Exact Riemann solver for the pressureless gas system with time-dependent friction:
//! a vacuum fan when `u_- < u_+`, a delta-shock when `u_- > u_+`.

use crate::error::Result;
use crate::friction::{FrictionTerm, Trajectory};
use crate::state::{check_sample_time, Profile, Singular, State};
use crate::wave::{Piece, RiemannSolution, TimeSlice};

#[derive(Debug, Clone)]
pub enum PressurelessSolution {
    VacuumFan {
        x_minus: Trajectory,
        x_plus: Trajectory,
    },
    DeltaShock {
        u_delta0: f64,
        w_slope: f64,
        x_delta: Trajectory,
    },
    /// `u_- = u_+`: a single contact moving with the common velocity.
    SingleContact {
        x_contact: Trajectory,
    },
}

impl PressurelessSolution {
    pub fn branch_name(&self) -> &'static str {
        match self {
            PressurelessSolution::VacuumFan { .. } => "vacuum_fan",
            PressurelessSolution::DeltaShock { .. } => "delta_shock",
            PressurelessSolution::SingleContact { .. } => "single_contact",
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, PressurelessSolution::DeltaShock { .. })
    }

    pub fn delta_shock(u_delta0: f64, w_slope: f64, friction: FrictionTerm) -> Self {
        PressurelessSolution::DeltaShock {
            u_delta0,
            w_slope,
            x_delta: Trajectory::new(u_delta0, friction),
        }
    }

    pub fn slice(&self, left: State, right: State, f: &FrictionTerm, t: f64) -> Result<TimeSlice> {
        check_sample_time(t)?;
        let (a, b) = f.shifts(t)?;
        let alpha = f.alpha(t);
        let outer = |s: State| Piece::Constant { rho: s.rho, u: s.u + a };
        match self {
            PressurelessSolution::VacuumFan { x_minus, x_plus } => TimeSlice::new(
                t,
                vec![x_minus.speed_const() * t + b, x_plus.speed_const() * t + b],
                vec![outer(left), Piece::Vacuum { t, a_shift: a, b_shift: b }, outer(right)],
                None,
                alpha,
                a,
                b,
            ),
            PressurelessSolution::DeltaShock { u_delta0, w_slope, x_delta } => {
                let x = x_delta.speed_const() * t + b;
                TimeSlice::new(
                    t,
                    vec![x],
                    vec![outer(left), outer(right)],
                    Some(Singular { x_pos: x, weight: w_slope * t, u_delta: u_delta0 + a }),
                    alpha,
                    a,
                    b,
                )
            }
            PressurelessSolution::SingleContact { x_contact } => TimeSlice::new(
                t,
                vec![x_contact.speed_const() * t + b],
                vec![outer(left), outer(right)],
                None,
                alpha,
                a,
                b,
            ),
        }
    }
}

/// Delta-shock constants `(u_delta0, w_slope)` for `u_- > u_+`:
/// the square-root-of-density weighted mean velocity and `sqrt(rho_- rho_+)(u_- - u_+)`.
pub fn pressureless_delta_params(left: State, right: State) -> (f64, f64) {
    let (sl, sr) = (left.rho.sqrt(), right.rho.sqrt());
    let u_delta0 = (sl * left.u + sr * right.u) / (sl + sr);
    let w_slope = (left.rho * right.rho).sqrt() * (left.u - right.u);
    (u_delta0, w_slope)
}

pub fn solve_pressureless(left: State, right: State, f: &FrictionTerm) -> Result<PressurelessSolution> {
    left.validate()?;
    right.validate()?;
    Ok(if left.u < right.u {
        PressurelessSolution::VacuumFan {
            x_minus: Trajectory::new(left.u, f.clone()),
            x_plus: Trajectory::new(right.u, f.clone()),
        }
    } else if left.u > right.u {
        let (u_delta0, w_slope) = pressureless_delta_params(left, right);
        PressurelessSolution::delta_shock(u_delta0, w_slope, f.clone())
    } else {
        PressurelessSolution::SingleContact { x_contact: Trajectory::new(left.u, f.clone()) }
    })
}

pub fn sample_pressureless(
    sol: &PressurelessSolution,
    left: State,
    right: State,
    f: &FrictionTerm,
    t: f64,
    grid: &[f64],
) -> Result<Profile> {
    sol.slice(left, right, f, t)?.profile(grid)
}

/// A pressureless solution bound to its states and friction term.
#[derive(Debug, Clone)]
pub struct PressurelessProblem {
    pub solution: PressurelessSolution,
    pub left: State,
    pub right: State,
    pub friction: FrictionTerm,
}

impl PressurelessProblem {
    pub fn solve(left: State, right: State, friction: FrictionTerm) -> Result<Self> {
        let solution = solve_pressureless(left, right, &friction)?;
        Ok(Self { solution, left, right, friction })
    }
}

impl RiemannSolution for PressurelessProblem {
    fn slice(&self, t: f64) -> Result<TimeSlice> {
        self.solution.slice(self.left, self.right, &self.friction, t)
    }

    fn mu(&self) -> f64 {
        0.0
    }

    fn alpha(&self, t: f64) -> f64 {
        self.friction.alpha(t)
    }
}
