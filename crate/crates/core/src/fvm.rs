//! First-order finite-volume solver used as an independent check on the exact
//! solutions.
//!
//! Local Lax–Friedrichs (Rusanov) fluxes for `(rho, m)` with flux
//! `(m, m u + mu u)`, Strang splitting for the friction source and zero-gradient
//! boundaries. The source sub-steps are solved exactly: density is frozen and
//! `m` gains `(A(t1) - A(t0)) rho`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::friction::FrictionTerm;
use crate::state::{Profile, State};

/// Cells at each end that must stay untouched by the waves.
pub const BOUNDARY_CELLS: usize = 5;

/// Fraction of the domain width kept free of waves when a run is set up.
pub const DOMAIN_MARGIN: f64 = 0.1;

const MIN_CELLS: usize = 16;

/// Relative change of a boundary cell that counts as a wave arriving there.
const CONTAMINATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    LocalLaxFriedrichs,
}

fn default_rho_floor() -> f64 {
    1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvmConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    #[serde(default = "default_rho_floor")]
    pub rho_floor: f64,
    #[serde(default)]
    pub scheme: Scheme,
}

impl FvmConfig {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, cfl: f64, t_end: f64) -> Result<Self> {
        let cfg = Self { x_min, x_max, n_cells, cfl, t_end, rho_floor: default_rho_floor(), scheme: Scheme::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return bad(format!("need finite x_min < x_max, got [{}, {}]", self.x_min, self.x_max));
        }
        if self.n_cells < MIN_CELLS {
            return bad(format!("n_cells must be >= {MIN_CELLS}, got {}", self.n_cells));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return bad(format!("cfl must lie in (0, 1), got {}", self.cfl));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end must be finite and > 0, got {}", self.t_end));
        }
        if !(self.rho_floor >= 0.0 && self.rho_floor.is_finite()) {
            return bad(format!("rho_floor must be finite and >= 0, got {}", self.rho_floor));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn centers(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n_cells).map(|i| self.x_min + (i as f64 + 0.5) * dx).collect()
    }
}

/// Cell averages of density and momentum at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvmState {
    pub x_min: f64,
    pub dx: f64,
    pub rho: Vec<f64>,
    pub m: Vec<f64>,
    pub t: f64,
}

impl FvmState {
    /// Cell averages of the Riemann data with the jump at `x = 0`.
    pub fn riemann(cfg: &FvmConfig, left: State, right: State) -> Self {
        let dx = cfg.dx();
        let mut rho = Vec::with_capacity(cfg.n_cells);
        let mut m = Vec::with_capacity(cfg.n_cells);
        for i in 0..cfg.n_cells {
            let a = cfg.x_min + i as f64 * dx;
            let mut frac_left = ((0.0 - a) / dx).clamp(0.0, 1.0);
            if frac_left < 1e-9 || frac_left > 1.0 - 1e-9 {
                frac_left = frac_left.round();
            }
            let r = frac_left * left.rho + (1.0 - frac_left) * right.rho;
            rho.push(r);
            m.push(frac_left * left.momentum() + (1.0 - frac_left) * right.momentum());
        }
        Self { x_min: cfg.x_min, dx, rho, m, t: 0.0 }
    }

    /// Treats a sampled profile on a uniform grid as cell averages.
    pub fn from_profile(p: &Profile) -> Result<Self> {
        if p.grid.len() < 2 {
            return Err(Error::InvalidInput("profile needs at least two grid points".into()));
        }
        let dx = p.grid[1] - p.grid[0];
        let uniform = p.grid.windows(2).all(|w| ((w[1] - w[0]) - dx).abs() <= 1e-9 * dx);
        if !uniform {
            return Err(Error::InvalidInput("profile grid must be uniform".into()));
        }
        Ok(Self { x_min: p.grid[0] - 0.5 * dx, dx, rho: p.rho.clone(), m: p.momentum(), t: p.t })
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x_min + (i as f64 + 0.5) * self.dx).collect()
    }

    pub fn velocity(&self, rho_floor: f64) -> Vec<f64> {
        self.rho.iter().zip(&self.m).map(|(&r, &m)| velocity(r, m, rho_floor)).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.dx
    }

    pub fn total_momentum(&self) -> f64 {
        self.m.iter().sum::<f64>() * self.dx
    }
}

fn velocity(rho: f64, m: f64, rho_floor: f64) -> f64 {
    if rho > rho_floor {
        m / rho
    } else {
        0.0
    }
}

/// Mass and momentum fluxes through the two domain ends during the last step,
/// already multiplied by the step length.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BoundaryTransfer {
    pub mass_in: f64,
    pub mass_out: f64,
    pub momentum_in: f64,
    pub momentum_out: f64,
}

/// A finite-volume run for one Riemann problem.
#[derive(Debug, Clone)]
pub struct FvmSolver {
    cfg: FvmConfig,
    mu: f64,
    friction: FrictionTerm,
    left: State,
    right: State,
    state: FvmState,
    last_transfer: BoundaryTransfer,
    steps: usize,
    check_boundaries: bool,
}

impl FvmSolver {
    /// Sets up the run and checks that every characteristic of the data stays at least
    /// `DOMAIN_MARGIN` of the domain width away from both ends up to `t_end`.
    pub fn new(left: State, right: State, mu: f64, friction: FrictionTerm, cfg: FvmConfig) -> Result<Self> {
        cfg.validate()?;
        left.validate()?;
        right.validate()?;
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::InvalidInput(format!("mu must be finite and >= 0, got {mu}")));
        }
        let mut speeds = vec![left.u, right.u];
        if mu > 0.0 {
            speeds.push(left.u + mu / left.rho);
            speeds.push(right.u + mu / right.rho);
        }
        if left == right {
            speeds.clear();
        }
        let (c_lo, c_hi) = speeds.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &c| (a.min(c), b.max(c)));
        let margin = DOMAIN_MARGIN * (cfg.x_max - cfg.x_min);
        const SAMPLES: usize = 64;
        for k in (0..=SAMPLES).filter(|_| !speeds.is_empty()) {
            let t = cfg.t_end * k as f64 / SAMPLES as f64;
            let b = friction.double_primitive(t)?;
            let (lo, hi) = (c_lo * t + b, c_hi * t + b);
            if lo < cfg.x_min + margin || hi > cfg.x_max - margin {
                return Err(Error::InvalidInput(format!(
                    "domain [{}, {}] too narrow: waves span [{lo}, {hi}] at t = {t}",
                    cfg.x_min, cfg.x_max
                )));
            }
        }
        let state = FvmState::riemann(&cfg, left, right);
        Ok(Self {
            cfg,
            mu,
            friction,
            left,
            right,
            state,
            last_transfer: BoundaryTransfer::default(),
            steps: 0,
            check_boundaries: true,
        })
    }

    /// A run starting from arbitrary cell averages; no boundary checks are made.
    pub fn from_state(state: FvmState, mu: f64, friction: FrictionTerm, cfg: FvmConfig) -> Result<Self> {
        cfg.validate()?;
        if state.len() != cfg.n_cells {
            return Err(Error::InvalidInput("state length differs from n_cells".into()));
        }
        let left = State { rho: state.rho[0], u: velocity(state.rho[0], state.m[0], cfg.rho_floor) };
        let n = state.len() - 1;
        let right = State { rho: state.rho[n], u: velocity(state.rho[n], state.m[n], cfg.rho_floor) };
        Ok(Self {
            cfg,
            mu,
            friction,
            left,
            right,
            state,
            last_transfer: BoundaryTransfer::default(),
            steps: 0,
            check_boundaries: false,
        })
    }

    pub fn state(&self) -> &FvmState {
        &self.state
    }

    pub fn config(&self) -> &FvmConfig {
        &self.cfg
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn last_transfer(&self) -> BoundaryTransfer {
        self.last_transfer
    }

    fn speed_bound(&self, rho: f64, m: f64) -> f64 {
        let u = velocity(rho, m, self.cfg.rho_floor);
        if self.mu > 0.0 && rho > self.cfg.rho_floor {
            u.abs().max((u + self.mu / rho).abs())
        } else {
            u.abs()
        }
    }

    fn flux(&self, rho: f64, m: f64) -> (f64, f64) {
        let u = velocity(rho, m, self.cfg.rho_floor);
        (m, m * u + self.mu * u)
    }

    /// Largest stable step for the current state.
    pub fn stable_dt(&self) -> f64 {
        let s = &self.state;
        let a = s.rho.iter().zip(&s.m).map(|(&r, &m)| self.speed_bound(r, m)).fold(0.0, f64::max);
        if a > 0.0 {
            self.cfg.cfl * s.dx / a
        } else {
            f64::INFINITY
        }
    }

    fn source(&mut self, t0: f64, t1: f64) -> Result<()> {
        if self.friction.is_zero() {
            return Ok(());
        }
        let da = self.friction.primitive(t1)? - self.friction.primitive(t0)?;
        for (m, r) in self.state.m.iter_mut().zip(&self.state.rho) {
            *m += da * r;
        }
        Ok(())
    }

    fn hyperbolic(&mut self, dt: f64) {
        let n = self.state.len();
        let lambda = dt / self.state.dx;
        let (rho, m) = (&self.state.rho, &self.state.m);
        // interface i sits between cells i-1 and i; ghosts copy the end cells
        let mut fr = vec![0.0; n + 1];
        let mut fm = vec![0.0; n + 1];
        for i in 0..=n {
            let (l, r) = (i.saturating_sub(1), i.min(n - 1));
            let (fl, fr_) = (self.flux(rho[l], m[l]), self.flux(rho[r], m[r]));
            let a = self.speed_bound(rho[l], m[l]).max(self.speed_bound(rho[r], m[r]));
            fr[i] = 0.5 * (fl.0 + fr_.0) - 0.5 * a * (rho[r] - rho[l]);
            fm[i] = 0.5 * (fl.1 + fr_.1) - 0.5 * a * (m[r] - m[l]);
        }
        self.last_transfer = BoundaryTransfer {
            mass_in: dt * fr[0],
            mass_out: dt * fr[n],
            momentum_in: dt * fm[0],
            momentum_out: dt * fm[n],
        };
        let floor = self.cfg.rho_floor;
        for i in 0..n {
            let r = self.state.rho[i] - lambda * (fr[i + 1] - fr[i]);
            self.state.m[i] -= lambda * (fm[i + 1] - fm[i]);
            self.state.rho[i] = r.max(floor);
        }
    }

    /// One Strang step of length `dt` (no CFL check).
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let t = self.state.t;
        if !(dt > 0.0) || !dt.is_finite() || dt < 1e-14 * t.max(1.0) {
            return Err(Error::CflViolation { dt, t });
        }
        self.source(t, t + 0.5 * dt)?;
        self.hyperbolic(dt);
        self.source(t + 0.5 * dt, t + dt)?;
        self.state.t = t + dt;
        self.steps += 1;
        if self.check_boundaries {
            self.check_contamination()?;
        }
        Ok(())
    }

    fn check_contamination(&self) -> Result<()> {
        let s = &self.state;
        let a = self.friction.primitive(s.t)?;
        let n = s.len();
        let ends = [(self.left, 0..BOUNDARY_CELLS.min(n)), (self.right, n.saturating_sub(BOUNDARY_CELLS)..n)];
        for (st, range) in ends {
            let m_ref = st.rho * (st.u + a);
            let scale = st.rho.max(m_ref.abs()).max(1.0);
            for i in range {
                if (s.rho[i] - st.rho).abs() > CONTAMINATION_TOL * scale
                    || (s.m[i] - m_ref).abs() > CONTAMINATION_TOL * scale
                {
                    return Err(Error::BoundaryContamination { t: s.t });
                }
            }
        }
        Ok(())
    }

    /// Advances with CFL-limited steps to exactly `t`.
    pub fn advance_to(&mut self, t: f64) -> Result<()> {
        while self.state.t < t {
            let remaining = t - self.state.t;
            let mut dt = self.stable_dt();
            if !dt.is_finite() {
                dt = remaining;
            }
            if dt < 1e-14 * t.max(1.0) {
                return Err(Error::CflViolation { dt, t: self.state.t });
            }
            // a leftover far below one CFL step is folded into this one
            if dt >= remaining || remaining - dt <= 1e-6 * dt {
                self.step(remaining)?;
                self.state.t = t;
            } else {
                self.step(dt)?;
            }
        }
        Ok(())
    }

    /// Runs to each of `times` (ascending, within `(0, t_end]`) and returns the snapshots.
    pub fn run(&mut self, times: &[f64]) -> Result<Vec<FvmState>> {
        let t_end = self.cfg.t_end;
        if times.iter().any(|&t| !(t > 0.0) || t > t_end) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!("snapshot times must increase within (0, {t_end}]")));
        }
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            self.advance_to(t)?;
            out.push(self.state.clone());
        }
        Ok(out)
    }
}

/// Runs the scheme from Riemann data; snapshots at `times`, or only at `t_end` when empty.
pub fn fvm_run(
    left: State,
    right: State,
    mu: f64,
    f: &FrictionTerm,
    cfg: &FvmConfig,
    times: &[f64],
) -> Result<Vec<FvmState>> {
    let mut solver = FvmSolver::new(left, right, mu, f.clone(), cfg.clone())?;
    if times.is_empty() {
        solver.run(&[cfg.t_end])
    } else {
        solver.run(times)
    }
}

/// Location and size of a density spike above the two-plateau background.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpikeDiagnostics {
    pub center: f64,
    pub excess_mass: f64,
}

const SPIKE_ITERATIONS: usize = 4;

/// Excess mass over the background `rho_-` / `rho_+` split at the spike, and its centroid.
///
/// The split starts at the density maximum and is then moved to the centroid a few times.
pub fn spike_diagnostics(state: &FvmState, left: State, right: State, expected_weight: f64) -> Result<SpikeDiagnostics> {
    if state.is_empty() {
        return Err(Error::EmptyInput("empty state".into()));
    }
    let no_spike = |excess| Err(Error::NoSpike { excess, expected: expected_weight });
    let plateau = left.rho.max(right.rho);
    let (imax, &rmax) = state.rho.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    if rmax <= plateau * (1.0 + 1e-9) {
        return no_spike(0.0);
    }
    let x = state.centers();
    let mut split = x[imax];
    let mut diag = SpikeDiagnostics { center: split, excess_mass: 0.0 };
    for _ in 0..SPIKE_ITERATIONS {
        let (mut mass, mut moment) = (0.0, 0.0);
        for (xi, ri) in x.iter().zip(&state.rho) {
            let bg = if *xi < split { left.rho } else { right.rho };
            let e = (ri - bg).max(0.0) * state.dx;
            mass += e;
            moment += e * xi;
        }
        if mass <= 0.0 {
            return no_spike(0.0);
        }
        diag = SpikeDiagnostics { center: moment / mass, excess_mass: mass };
        split = diag.center;
    }
    if diag.excess_mass < 0.01 * expected_weight {
        return no_spike(diag.excess_mass);
    }
    Ok(diag)
}

/// L1 distances in density and momentum between `state` and a profile sampled at the cell centers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L1Error {
    pub rho: f64,
    pub m: f64,
}

pub fn l1_error(state: &FvmState, exact: &Profile) -> Result<L1Error> {
    if exact.singular.is_some() {
        return Err(Error::SingularProfile);
    }
    if exact.len() != state.len() {
        return Err(Error::InvalidInput("profile and state sizes differ".into()));
    }
    let centers = state.centers();
    if centers.iter().zip(&exact.grid).any(|(a, b)| (a - b).abs() > 1e-9 * state.dx) {
        return Err(Error::InvalidInput("profile must be sampled at the cell centers".into()));
    }
    let rho = state.rho.iter().zip(&exact.rho).map(|(a, b)| (a - b).abs()).sum::<f64>() * state.dx;
    let m = state.m.iter().zip(exact.momentum()).map(|(a, b)| (a - b).abs()).sum::<f64>() * state.dx;
    Ok(L1Error { rho, m })
}

/// Least-squares slope of `-log(err)` against `log(n)`; `None` for fewer than two usable points.
pub fn empirical_order(ns: &[usize], errs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errs)
        .filter(|(_, e)| **e > 0.0 && e.is_finite())
        .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(rho: f64, u: f64) -> State {
        State::new(rho, u).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(FvmConfig::new(-1.0, 1.0, 100, 0.5, 1.0).is_ok());
        assert!(FvmConfig::new(1.0, -1.0, 100, 0.5, 1.0).is_err());
        assert!(FvmConfig::new(-1.0, 1.0, 8, 0.5, 1.0).is_err());
        assert!(FvmConfig::new(-1.0, 1.0, 100, 1.0, 1.0).is_err());
        assert!(FvmConfig::new(-1.0, 1.0, 100, 0.5, 0.0).is_err());
    }

    #[test]
    fn jump_sits_on_an_interface() {
        let cfg = FvmConfig::new(-1.0, 1.0, 20, 0.5, 1.0).unwrap();
        let s = FvmState::riemann(&cfg, st(1.0, 0.0), st(3.0, 0.0));
        assert_eq!(s.rho[9], 1.0);
        assert_eq!(s.rho[10], 3.0);
        let cfg = FvmConfig::new(-1.0, 1.0, 21, 0.5, 1.0).unwrap();
        let s = FvmState::riemann(&cfg, st(1.0, 0.0), st(3.0, 0.0));
        assert!((s.rho[10] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_domain_rejected() {
        let cfg = FvmConfig::new(-1.0, 1.0, 100, 0.5, 1.0).unwrap();
        assert!(FvmSolver::new(st(1.0, 2.0), st(1.0, 0.0), 0.0, FrictionTerm::zero(), cfg).is_err());
    }

    #[test]
    fn uniform_state_with_constant_friction() {
        let cfg = FvmConfig::new(-1.0, 1.0, 64, 0.5, 1.0).unwrap();
        let s = st(0.7, 0.3);
        let mut run = FvmSolver::new(s, s, 0.5, FrictionTerm::constant(2.0).unwrap(), cfg).unwrap();
        let out = run.run(&[0.5, 1.0]).unwrap();
        for snap in out {
            for (r, u) in snap.rho.iter().zip(snap.velocity(1e-12)) {
                assert_eq!(*r, 0.7);
                assert!((u - (0.3 + 2.0 * snap.t)).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn spike_and_l1_edge_cases() {
        let cfg = FvmConfig::new(-1.0, 1.0, 20, 0.5, 1.0).unwrap();
        let s = FvmState::riemann(&cfg, st(1.0, 0.0), st(3.0, 0.0));
        assert!(matches!(spike_diagnostics(&s, st(1.0, 0.0), st(3.0, 0.0), 1.0), Err(Error::NoSpike { .. })));
        let p = Profile {
            t: 1.0,
            grid: s.centers(),
            rho: s.rho.clone(),
            u: vec![0.0; 20],
            singular: None,
        };
        let e = l1_error(&s, &p).unwrap();
        assert_eq!((e.rho, e.m), (0.0, 0.0));
        let back = FvmState::from_profile(&p).unwrap();
        assert!((back.x_min - s.x_min).abs() < 1e-12);
        let mut q = p.clone();
        q.singular = Some(crate::state::Singular { x_pos: 0.0, weight: 1.0, u_delta: 0.0 });
        assert_eq!(l1_error(&s, &q).unwrap_err(), Error::SingularProfile);
    }
}
