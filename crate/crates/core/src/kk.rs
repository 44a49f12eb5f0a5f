//! Exact Riemann solver for the nonsymmetric Keyfitz–Kranzer system with Chaplygin
//! pressure and time-dependent friction:
//!
//! ```text
//! rho_t + (rho u)_x = 0
//! (rho u)_t + (rho u (u + mu/rho))_x = alpha(t) rho
//! ```
//!
//! Both characteristic fields are linearly degenerate. When `u_- < u_+ + mu/rho_+`
//! the solution is a pair of contact discontinuities; otherwise it is a delta-shock
//! whose weight and speed follow from the generalized Rankine–Hugoniot relations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::friction::{FrictionTerm, Trajectory};
use crate::state::{check_sample_time, Profile, Singular, State};
use crate::wave::{Piece, RiemannSolution, TimeSlice};

/// Relative width of the band around the IV/V boundary classified as `SDelta`.
pub const CLASSIFY_REL_TOL: f64 = 1e-12;

/// Riemann data for the Keyfitz–Kranzer system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct RiemannData {
    pub left: State,
    pub right: State,
    pub mu: f64,
}

impl RiemannData {
    pub fn new(left: State, right: State, mu: f64) -> Result<Self> {
        let d = Self { left, right, mu };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        self.left.validate()?;
        self.right.validate()?;
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return Err(Error::InvalidInput(format!("mu must be finite and > 0, got {}", self.mu)));
        }
        Ok(())
    }

    /// `u_+ + mu/rho_+`, the second characteristic speed of the right state.
    pub fn right_lambda2(&self) -> f64 {
        self.right.u + self.mu / self.right.rho
    }

    /// Jumps `([rho], [rho u], [rho u^2 + mu u])` with `[q] = q_- - q_+`.
    pub fn jumps(&self) -> (f64, f64, f64) {
        let (l, r, mu) = (self.left, self.right, self.mu);
        (
            l.rho - r.rho,
            l.rho * l.u - r.rho * r.u,
            l.rho * l.u * l.u + mu * l.u - r.rho * r.u * r.u - mu * r.u,
        )
    }

    /// `[rho u]^2 - [rho][rho u^2 + mu u]` evaluated from the jumps directly.
    pub fn discriminant_expanded(&self) -> f64 {
        let (jr, jm, je) = self.jumps();
        jm * jm - jr * je
    }

    /// The same discriminant in factored form
    /// `rho_- rho_+ (u_- - u_+)(u_- - u_+ + mu/rho_- - mu/rho_+)`.
    pub fn discriminant(&self) -> f64 {
        let (l, r, mu) = (self.left, self.right, self.mu);
        let du = l.u - r.u;
        l.rho * r.rho * du * (du + mu / l.rho - mu / r.rho)
    }
}

/// Position of the right state in the phase plane relative to the left state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    I,
    II,
    III,
    IV,
    V,
    #[serde(rename = "S_delta")]
    SDelta,
}

impl Region {
    pub fn is_delta(self) -> bool {
        matches!(self, Region::V | Region::SDelta)
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
            Region::V => "V",
            Region::SDelta => "S_delta",
        }
    }
}

/// Classifies `(rho_+, u_+)` relative to `(rho_-, u_-)`.
///
/// Boundary conventions: `u_+ = u_-` belongs to I/II; a right state on the
/// 2-contact curve through the left state (`rho_+ = mu/v1`) belongs to I when
/// `u_+ >= u_-` and to IV otherwise; `u_+ = eta` belongs to II.
pub fn classify(data: &RiemannData) -> Result<Region> {
    data.validate()?;
    let (l, r, mu) = (data.left, data.right, data.mu);
    if l == r {
        return Err(Error::DegenerateData);
    }
    let eta = l.u + mu / l.rho;
    if r.u >= l.u {
        if r.u >= eta {
            return Ok(Region::II);
        }
        let rho_j2 = mu / (eta - r.u);
        return Ok(if r.rho >= rho_j2 { Region::I } else { Region::II });
    }
    let rho_j2 = mu / (eta - r.u);
    let rho_sd = mu / (l.u - r.u);
    if (r.rho - rho_sd).abs() <= CLASSIFY_REL_TOL * rho_sd {
        Ok(Region::SDelta)
    } else if r.rho > rho_sd {
        Ok(Region::V)
    } else if r.rho >= rho_j2 {
        Ok(Region::IV)
    } else {
        Ok(Region::III)
    }
}

/// An exact solution of the Keyfitz–Kranzer Riemann problem.
///
/// Velocities stored here are the friction-free constants; the time-dependent
/// fields add `A(t)` to every velocity and `B(t)` to every wave position.
#[derive(Debug, Clone)]
pub enum KkSolution {
    TwoContact {
        intermediate: State,
        x1: Trajectory,
        x2: Trajectory,
    },
    DeltaShock {
        u_delta0: f64,
        w_slope: f64,
        x_delta: Trajectory,
    },
}

impl KkSolution {
    pub fn is_delta(&self) -> bool {
        matches!(self, KkSolution::DeltaShock { .. })
    }

    pub fn branch_name(&self) -> &'static str {
        match self {
            KkSolution::TwoContact { .. } => "two_contact",
            KkSolution::DeltaShock { .. } => "delta_shock",
        }
    }

    /// Delta-shock with the given constants; the path speed is `u_delta0`.
    pub fn delta_shock(u_delta0: f64, w_slope: f64, friction: FrictionTerm) -> Self {
        KkSolution::DeltaShock { u_delta0, w_slope, x_delta: Trajectory::new(u_delta0, friction) }
    }

    /// The solution at time `t`, with wave positions and velocities shifted by `f`.
    pub fn slice(&self, data: &RiemannData, f: &FrictionTerm, t: f64) -> Result<TimeSlice> {
        check_sample_time(t)?;
        let (a, b) = f.shifts(t)?;
        let (l, r) = (data.left, data.right);
        let outer = |s: State| Piece::Constant { rho: s.rho, u: s.u + a };
        match self {
            KkSolution::TwoContact { intermediate, x1, x2 } => TimeSlice::new(
                t,
                vec![x1.speed_const() * t + b, x2.speed_const() * t + b],
                vec![outer(l), outer(*intermediate), outer(r)],
                None,
                f.alpha(t),
                a,
                b,
            ),
            KkSolution::DeltaShock { u_delta0, w_slope, x_delta } => {
                let x = x_delta.speed_const() * t + b;
                TimeSlice::new(
                    t,
                    vec![x],
                    vec![outer(l), outer(r)],
                    Some(Singular { x_pos: x, weight: w_slope * t, u_delta: u_delta0 + a }),
                    f.alpha(t),
                    a,
                    b,
                )
            }
        }
    }
}

/// `rho_* = mu rho_+ / (mu + rho_+ (u_+ - u_-))`, the intermediate density on the
/// 1-contact curve of the left state and the 2-contact curve of the right state.
pub fn intermediate_density(data: &RiemannData) -> f64 {
    let (l, r, mu) = (data.left, data.right, data.mu);
    mu * r.rho / (mu + r.rho * (r.u - l.u))
}

/// Solves the Riemann problem; regions I–IV give two contacts, V and `S_delta` a delta-shock.
///
/// Identical states produce a two-contact solution with zero-strength waves.
pub fn solve(data: &RiemannData, f: &FrictionTerm) -> Result<KkSolution> {
    data.validate()?;
    let l = data.left;
    let region = match classify(data) {
        Ok(region) => Some(region),
        Err(Error::DegenerateData) => None,
        Err(e) => return Err(e),
    };
    if region.is_some_and(Region::is_delta) {
        let (u_delta0, w_slope) = delta_shock_params(data)?;
        return Ok(KkSolution::delta_shock(u_delta0, w_slope, f.clone()));
    }
    let intermediate = State { rho: intermediate_density(data), u: l.u };
    if !(intermediate.rho > 0.0) || !intermediate.rho.is_finite() {
        return Err(Error::InvalidInput(format!(
            "intermediate density {} is not positive and finite",
            intermediate.rho
        )));
    }
    Ok(KkSolution::TwoContact {
        intermediate,
        x1: Trajectory::new(l.u, f.clone()),
        x2: Trajectory::new(data.right_lambda2(), f.clone()),
    })
}

/// `(u_delta0, w_slope)` of the admissible delta-shock.
///
/// Equal densities reduce the quadratic to a linear equation; otherwise the root
/// `([rho u] - sqrt(D)) / [rho]` is selected, evaluated in whichever algebraically
/// equivalent form avoids cancellation.
pub fn delta_shock_params(data: &RiemannData) -> Result<(f64, f64)> {
    match classify(data) {
        Ok(region) if region.is_delta() => {}
        Ok(_) | Err(Error::DegenerateData) => return Err(Error::NotDeltaRegime),
        Err(e) => return Err(e),
    }
    let (l, r, mu) = (data.left, data.right, data.mu);
    let (jr, jm, je) = data.jumps();
    if jr == 0.0 {
        return Ok((0.5 * (l.u + r.u + mu / r.rho), r.rho * (l.u - r.u)));
    }
    let disc = data.discriminant();
    if !(disc >= 0.0) {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let sq = disc.sqrt();
    let u_delta0 = if jm >= 0.0 { je / (jm + sq) } else { (jm - sq) / jr };
    Ok((u_delta0, sq))
}

/// Outcome of an admissibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCheck {
    pub admissible: bool,
    pub violations: Vec<String>,
}

/// Checks the over-compressive bracket for delta-shocks and the Lax-type
/// conditions for two-contact solutions at each sample time.
pub fn check_entropy(
    sol: &KkSolution,
    data: &RiemannData,
    f: &FrictionTerm,
    t_samples: &[f64],
) -> Result<EntropyCheck> {
    let mut violations = Vec::new();
    let mu = data.mu;
    for &t in t_samples {
        let a = f.primitive(t)?;
        match sol {
            KkSolution::DeltaShock { u_delta0, .. } => {
                let lo = data.right_lambda2() + a;
                let hi = data.left.u + a;
                let s = u_delta0 + a;
                if !leq(lo, s) {
                    violations.push(format!("t={t}: u_+ + mu/rho_+ + A = {lo} > u_delta = {s}"));
                }
                if !leq(s, hi) {
                    violations.push(format!("t={t}: u_delta = {s} > u_- + A = {hi}"));
                }
            }
            KkSolution::TwoContact { intermediate, x1, x2 } => {
                let lambda1 = intermediate.u + a;
                let lambda2 = intermediate.u + mu / intermediate.rho + a;
                let s1 = x1.speed_const() + a;
                let s2 = x2.speed_const() + a;
                if !(s1 < lambda2) {
                    violations.push(format!("t={t}: x1' = {s1} >= lambda2(*) = {lambda2}"));
                }
                if !(s2 > lambda1) {
                    violations.push(format!("t={t}: x2' = {s2} <= lambda1(*) = {lambda1}"));
                }
            }
        }
    }
    Ok(EntropyCheck { admissible: violations.is_empty(), violations })
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Samples the solution at time `t` on `grid`.
pub fn sample(
    sol: &KkSolution,
    data: &RiemannData,
    f: &FrictionTerm,
    t: f64,
    grid: &[f64],
) -> Result<Profile> {
    sol.slice(data, f, t)?.profile(grid)
}

/// A Keyfitz–Kranzer solution bound to its data and friction term.
#[derive(Debug, Clone)]
pub struct KkProblem {
    pub solution: KkSolution,
    pub data: RiemannData,
    pub friction: FrictionTerm,
}

impl KkProblem {
    pub fn solve(data: RiemannData, friction: FrictionTerm) -> Result<Self> {
        let solution = solve(&data, &friction)?;
        Ok(Self { solution, data, friction })
    }
}

impl RiemannSolution for KkProblem {
    fn slice(&self, t: f64) -> Result<TimeSlice> {
        self.solution.slice(&self.data, &self.friction, t)
    }

    fn mu(&self) -> f64 {
        self.data.mu
    }

    fn alpha(&self, t: f64) -> f64 {
        self.friction.alpha(t)
    }
}
