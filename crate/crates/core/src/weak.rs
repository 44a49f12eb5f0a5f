//! Distributional residuals of exact solutions against compactly supported bump
//! test functions.
//!
//! For a solution `rho = rho_hat + w delta_L`, `u = u_hat` (with `u = u_delta` on `L`)
//! the residuals are
//!
//! ```text
//! r_mass     = <rho, phi_t> + <rho u, phi_x>
//! r_momentum = <rho u, phi_t> + <rho u^2, phi_x> + int int mu u phi_x + <alpha rho, phi>
//! ```
//!
//! where every bracket splits into an area integral of the bounded part and a line
//! integral `int w(t) g(x_delta(t), t) dt` along the delta path. Area integrals use a
//! tensor Gauss–Legendre rule: one rule in time, and for each time node one rule per
//! spatial piece between consecutive wave positions, so no cell straddles a wave.
//! The `mu u` term only sees the bounded velocity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::friction::FrictionTerm;
use crate::kk::{KkProblem, KkSolution, RiemannData};
use crate::pressureless::{PressurelessProblem, PressurelessSolution};
use crate::quadrature::GaussLegendre;
use crate::state::State;
use crate::wave::{RiemannSolution, TimeSlice};

/// Default number of Gauss nodes per axis segment.
pub const DEFAULT_ORDER: usize = 64;

/// Residual magnitude accepted as "exact" for unit-order data.
pub const RESIDUAL_THRESHOLD: f64 = 1e-8;

/// Below this distance from the edge of the support the bump and its derivative are set to 0.
const EDGE_CLAMP: f64 = 1e-14;

/// `psi(s) = exp(-1/(1-s^2))` on |s| < 1 and its derivative.
fn bump(s: f64) -> (f64, f64) {
    let gap = 1.0 - s.abs();
    if gap <= EDGE_CLAMP {
        return (0.0, 0.0);
    }
    let q = 1.0 - s * s;
    let v = (-1.0 / q).exp();
    (v, v * (-2.0 * s / (q * q)))
}

/// `phi(x, t) = psi((x - x0)/rx) psi((t - t0)/rt)`, supported in `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct TestFunction {
    pub x0: f64,
    pub t0: f64,
    pub rx: f64,
    pub rt: f64,
}

/// `phi` with its first partial derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValue {
    pub phi: f64,
    pub phi_x: f64,
    pub phi_t: f64,
}

impl TestFunction {
    pub fn new(x0: f64, t0: f64, rx: f64, rt: f64) -> Result<Self> {
        let phi = Self { x0, t0, rx, rt };
        if !phi.is_valid() {
            return Err(Error::InvalidInput(format!(
                "test function needs rx > 0, rt > 0 and t0 - rt > 0: {phi:?}"
            )));
        }
        Ok(phi)
    }

    pub fn is_valid(&self) -> bool {
        [self.x0, self.t0, self.rx, self.rt].iter().all(|v| v.is_finite())
            && self.rx > 0.0
            && self.rt > 0.0
            && self.t0 - self.rt > 0.0
    }

    pub fn x_support(&self) -> (f64, f64) {
        (self.x0 - self.rx, self.x0 + self.rx)
    }

    pub fn t_support(&self) -> (f64, f64) {
        (self.t0 - self.rt, self.t0 + self.rt)
    }

    pub fn eval(&self, x: f64, t: f64) -> PhiValue {
        let (px, dpx) = bump((x - self.x0) / self.rx);
        let (pt, dpt) = bump((t - self.t0) / self.rt);
        PhiValue { phi: px * pt, phi_x: dpx * pt / self.rx, phi_t: px * dpt / self.rt }
    }
}

/// Which weak formulation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// The balance law with its friction source, in the physical velocity `u`.
    Original,
    /// The source-free system in the shifted velocity `u - A(t)` with fluxes carrying `A(t)`.
    Transformed,
}

/// Contributions to the residuals, split by origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    /// `(mass, momentum)` area contributions per smooth piece, left to right.
    pub pieces: Vec<(f64, f64)>,
    /// `(mass, momentum)` contributions of the line integral along the delta path.
    pub line: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub r_mass: f64,
    pub r_momentum: f64,
    pub quadrature_order: usize,
    pub decomposition: Decomposition,
}

impl ResidualReport {
    pub fn max_abs(&self) -> f64 {
        self.r_mass.abs().max(self.r_momentum.abs())
    }
}

/// Weak-form residuals of any [`RiemannSolution`] against `phi` with `n` nodes per axis segment.
pub fn residual<S: RiemannSolution + ?Sized>(
    sol: &S,
    phi: &TestFunction,
    n: usize,
    form: Formulation,
) -> Result<ResidualReport> {
    if !phi.is_valid() {
        return Err(Error::InvalidInput(format!("test function not supported in t > 0: {phi:?}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("quadrature order must be >= 1".into()));
    }
    let rule = GaussLegendre::new(n);
    let mu = sol.mu();
    let (xa, xb) = phi.x_support();
    let (ta, tb) = phi.t_support();
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    let mut line = (0.0, 0.0);
    let mut breaks = Vec::new();
    let panels = time_breaks(sol, ta, tb, xa, xb)?;
    let nodes = panels.windows(2).flat_map(|p| rule.mapped(p[0], p[1]));

    for (t, wt) in nodes {
        let slice = sol.slice(t)?;
        let (alpha, shift) = match form {
            Formulation::Original => (slice.alpha, 0.0),
            Formulation::Transformed => (0.0, slice.a_shift),
        };
        if pieces.len() < slice.pieces.len() {
            pieces.resize(slice.pieces.len(), (0.0, 0.0));
        }

        breaks.clear();
        breaks.push(xa);
        breaks.extend(active_waves(&slice).filter(|&w| w > xa && w < xb));
        breaks.push(xb);
        for seg in breaks.windows(2) {
            let (p, q) = (seg[0], seg[1]);
            if q <= p {
                continue;
            }
            let k = slice.piece_index(0.5 * (p + q));
            let piece = slice.pieces[k];
            let (mut m_acc, mut p_acc) = (0.0, 0.0);
            for (x, wx) in rule.mapped(p, q) {
                let (rho, u_full) = piece.eval(x);
                let v = phi.eval(x, t);
                let u = u_full - shift;
                m_acc += wx * (rho * v.phi_t + rho * u_full * v.phi_x);
                p_acc += wx * (rho * u * v.phi_t + (rho * u * u_full + mu * u) * v.phi_x + alpha * rho * v.phi);
            }
            // Every node of this segment must lie in one piece.
            let lo = rule.mapped(p, q).next().map(|(x, _)| x).unwrap_or(p);
            let hi = rule.mapped(p, q).last().map(|(x, _)| x).unwrap_or(q);
            if slice.pieces[slice.piece_index(lo)] != piece || slice.pieces[slice.piece_index(hi)] != piece {
                return Err(Error::QuadratureFailure(format!(
                    "segment [{p}, {q}] at t = {t} crosses a wave"
                )));
            }
            pieces[k].0 += wt * m_acc;
            pieces[k].1 += wt * p_acc;
        }

        if let Some(s) = slice.singular {
            let v = phi.eval(s.x_pos, t);
            let ud = s.u_delta - shift;
            line.0 += wt * s.weight * (v.phi_t + s.u_delta * v.phi_x);
            line.1 += wt * s.weight * (ud * v.phi_t + ud * s.u_delta * v.phi_x + alpha * v.phi);
        }
    }

    let r_mass = pieces.iter().map(|p| p.0).sum::<f64>() + line.0;
    let r_momentum = pieces.iter().map(|p| p.1).sum::<f64>() + line.1;
    Ok(ResidualReport {
        r_mass,
        r_momentum,
        quadrature_order: n,
        decomposition: Decomposition { pieces, line },
    })
}

/// Wave positions across which the solution actually jumps or carries a delta.
fn active_waves(slice: &TimeSlice) -> impl Iterator<Item = f64> + '_ {
    slice.waves.iter().enumerate().filter_map(move |(i, &w)| {
        let on_delta = slice.singular.is_some_and(|s| s.x_pos == w);
        (on_delta || slice.pieces[i] != slice.pieces[i + 1]).then_some(w)
    })
}

/// Number of uniform samples used to locate the times at which waves enter or leave the x-support.
const CROSSING_SAMPLES: usize = 64;

/// `[ta, ..., tb]` split at the times where a wave crosses `xa` or `xb`.
///
/// Along such a crossing the integrand in `t` picks up the flat edge of the bump in its
/// interior, which the Gauss rule resolves poorly unless it sits on a panel boundary.
fn time_breaks<S: RiemannSolution + ?Sized>(
    sol: &S,
    ta: f64,
    tb: f64,
    xa: f64,
    xb: f64,
) -> Result<Vec<f64>> {
    let times: Vec<f64> = (0..=CROSSING_SAMPLES)
        .map(|i| ta + (tb - ta) * i as f64 / CROSSING_SAMPLES as f64)
        .collect();
    let waves: Vec<Vec<f64>> =
        times.iter().map(|&t| sol.slice(t).map(|s| active_waves(&s).collect())).collect::<Result<_>>()?;
    let mut out = vec![ta, tb];
    for j in 0..CROSSING_SAMPLES {
        let (w0, w1) = (&waves[j], &waves[j + 1]);
        for i in 0..w0.len().min(w1.len()) {
            for edge in [xa, xb] {
                let (g0, g1) = (w0[i] - edge, w1[i] - edge);
                if g0 == 0.0 || g0.signum() == g1.signum() {
                    continue;
                }
                let (mut lo, mut hi) = (times[j], times[j + 1]);
                let mut g_lo = g0;
                while hi - lo > 4.0 * f64::EPSILON * hi.abs() {
                    let mid = 0.5 * (lo + hi);
                    let g = active_waves(&sol.slice(mid)?).nth(i).unwrap_or(edge) - edge;
                    if g.signum() == g_lo.signum() {
                        lo = mid;
                        g_lo = g;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
    Ok(out)
}

/// Residuals of a Keyfitz–Kranzer solution in the original formulation.
pub fn residual_kk(
    sol: &KkSolution,
    data: &RiemannData,
    f: &FrictionTerm,
    phi: &TestFunction,
    n: usize,
) -> Result<ResidualReport> {
    let problem = KkProblem { solution: sol.clone(), data: *data, friction: f.clone() };
    residual(&problem, phi, n, Formulation::Original)
}

/// Residuals of a pressureless solution in the original formulation.
pub fn residual_pressureless(
    sol: &PressurelessSolution,
    left: State,
    right: State,
    f: &FrictionTerm,
    phi: &TestFunction,
    n: usize,
) -> Result<ResidualReport> {
    let problem = PressurelessProblem { solution: sol.clone(), left, right, friction: f.clone() };
    residual(&problem, phi, n, Formulation::Original)
}

/// One row of a residual sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub order: usize,
    pub max_mass: f64,
    pub max_momentum: f64,
}

impl SweepRow {
    pub fn max_residual(&self) -> f64 {
        self.max_mass.max(self.max_momentum)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Number of test functions used after dropping unsupported ones.
    pub n_test_functions: usize,
}

impl SweepTable {
    /// True when the max residual strictly decreases between consecutive orders
    /// until it first drops to `floor`, and the last order is at or below `floor`.
    pub fn decays_to(&self, floor: f64) -> bool {
        let ok_steps = self.rows.windows(2).all(|w| {
            let (a, b) = (w[0].max_residual(), w[1].max_residual());
            a <= floor || b < a
        });
        ok_steps && self.rows.last().is_some_and(|r| r.max_residual() <= floor)
    }

    pub fn final_max(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, SweepRow::max_residual)
    }
}

/// Max residual over `phis` for each quadrature order in `orders`.
pub fn residual_sweep<S: RiemannSolution + ?Sized>(
    sol: &S,
    phis: &[TestFunction],
    orders: &[usize],
) -> Result<SweepTable> {
    let phis: Vec<_> = phis.iter().filter(|p| p.is_valid()).collect();
    if phis.is_empty() {
        return Err(Error::EmptyInput("no test function supported in t > 0".into()));
    }
    if orders.is_empty() {
        return Err(Error::EmptyInput("no quadrature orders".into()));
    }
    let mut rows = Vec::with_capacity(orders.len());
    for &order in orders {
        let mut row = SweepRow { order, max_mass: 0.0, max_momentum: 0.0 };
        for phi in &phis {
            let r = residual(sol, phi, order, Formulation::Original)?;
            row.max_mass = row.max_mass.max(r.r_mass.abs());
            row.max_momentum = row.max_momentum.max(r.r_momentum.abs());
        }
        rows.push(row);
    }
    Ok(SweepTable { rows, n_test_functions: phis.len() })
}
