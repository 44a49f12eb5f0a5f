//! Parameter limits of the Keyfitz–Kranzer solutions: `mu -> 0` (towards the
//! pressureless system) and `mu -> mu0` (mass concentration into a delta-shock).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::friction::FrictionTerm;
use crate::kk::{classify, solve, KkSolution, Region, RiemannData};
use crate::pressureless::{solve_pressureless, PressurelessSolution};
use crate::quadrature::GaussLegendre;
use crate::state::{check_sample_time, State};

/// Number of terms in the default geometric sequences.
pub const DEFAULT_TERMS: u32 = 40;

/// `mu0 = rho_+ (u_- - u_+)`: below it the data sits in the delta region.
pub fn mu_critical(left: State, right: State) -> Result<f64> {
    left.validate()?;
    right.validate()?;
    if left.u <= right.u {
        return Err(Error::NotApplicable(format!(
            "critical mu needs u_- > u_+, got u_- = {}, u_+ = {}",
            left.u, right.u
        )));
    }
    Ok(right.rho * (left.u - right.u))
}

/// The `mu -> 0` limit, which is the pressureless solution itself.
pub fn mu_zero_limit(left: State, right: State, f: &FrictionTerm) -> Result<PressurelessSolution> {
    if left.u == right.u {
        return Err(Error::NotApplicable("mu -> 0 limit needs u_- != u_+".into()));
    }
    solve_pressureless(left, right, f)
}

/// `mu_k = 2^-k`, k = 1..=n.
pub fn vanishing_sequence(n: u32) -> Vec<f64> {
    (1..=n).map(|k| 0.5f64.powi(k as i32)).collect()
}

/// `mu_k = mu0 (1 + 2^-k)`, k = 1..=n.
pub fn critical_sequence(mu0: f64, n: u32) -> Vec<f64> {
    (1..=n).map(|k| mu0 * (1.0 + 0.5f64.powi(k as i32))).collect()
}

/// First-order Richardson extrapolation to `mu = 0` of `v(mu) = L + c mu` from two samples.
pub fn richardson(mu1: f64, v1: f64, mu2: f64, v2: f64) -> f64 {
    (mu1 * v2 - mu2 * v1) / (mu1 - mu2)
}

/// One KK solution in a `mu`-sequence, evaluated at the study time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRecord {
    pub mu: f64,
    pub region: Region,
    pub branch: &'static str,
    /// Intermediate density (two-contact branch only).
    pub rho_star: Option<f64>,
    pub u_delta0: Option<f64>,
    pub w_slope: Option<f64>,
    /// Wave velocities at the study time; both equal the delta velocity on the delta branch.
    pub speed1: f64,
    pub speed2: f64,
    /// Mass of the intermediate plateau (two-contact branch only).
    pub plateau_mass: Option<f64>,
}

/// A `mu`-sequence study at a fixed time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitStudy {
    pub t: f64,
    pub records: Vec<LimitRecord>,
}

impl LimitStudy {
    pub fn mu_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.mu).collect()
    }

    /// Richardson estimate (towards `mu = 0`) of a recorded quantity from the last two records.
    pub fn extrapolate(&self, field: impl Fn(&LimitRecord) -> Option<f64>) -> Option<f64> {
        let n = self.records.len();
        if n < 2 {
            return None;
        }
        let (a, b) = (&self.records[n - 2], &self.records[n - 1]);
        Some(richardson(a.mu, field(a)?, b.mu, field(b)?))
    }
}

fn check_decreasing(mu_seq: &[f64]) -> Result<()> {
    if mu_seq.is_empty() {
        return Err(Error::EmptyInput("empty mu sequence".into()));
    }
    if mu_seq.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
        return Err(Error::InvalidInput("mu values must be finite and > 0".into()));
    }
    if mu_seq.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput("mu sequence must be strictly decreasing".into()));
    }
    Ok(())
}

/// `x2' - x1'` written over the same denominator as the intermediate density,
/// so that their product is `mu` to a few ulps even when `mu` is close to `mu0`.
fn spread_rate(data: &RiemannData) -> f64 {
    let (l, r, mu) = (data.left, data.right, data.mu);
    (mu + r.rho * (r.u - l.u)) / r.rho
}

/// Solves the KK problem for `mu` and summarizes it at time `t`.
pub fn limit_record(left: State, right: State, mu: f64, f: &FrictionTerm, t: f64) -> Result<LimitRecord> {
    check_sample_time(t)?;
    let data = RiemannData::new(left, right, mu)?;
    let region = classify(&data)?;
    let a = f.primitive(t)?;
    let sol = solve(&data, f)?;
    let rec = match &sol {
        KkSolution::TwoContact { intermediate, x1, x2 } => {
            let (s1, s2) = (x1.speed_const(), x2.speed_const());
            LimitRecord {
                mu,
                region,
                branch: sol.branch_name(),
                rho_star: Some(intermediate.rho),
                u_delta0: None,
                w_slope: None,
                speed1: s1 + a,
                speed2: s2 + a,
                plateau_mass: Some(intermediate.rho * spread_rate(&data) * t),
            }
        }
        KkSolution::DeltaShock { u_delta0, w_slope, .. } => LimitRecord {
            mu,
            region,
            branch: sol.branch_name(),
            rho_star: None,
            u_delta0: Some(*u_delta0),
            w_slope: Some(*w_slope),
            speed1: u_delta0 + a,
            speed2: u_delta0 + a,
            plateau_mass: None,
        },
    };
    Ok(rec)
}

/// KK solutions along an arbitrary `mu` sequence (no ordering requirement).
pub fn mu_sweep(left: State, right: State, f: &FrictionTerm, mu_seq: &[f64], t: f64) -> Result<Vec<LimitRecord>> {
    mu_seq.iter().map(|&mu| limit_record(left, right, mu, f, t)).collect()
}

/// Vanishing-pressure study along a strictly decreasing `mu` sequence.
pub fn vanishing_pressure_study(
    left: State,
    right: State,
    f: &FrictionTerm,
    mu_seq: &[f64],
    t: f64,
) -> Result<LimitStudy> {
    check_decreasing(mu_seq)?;
    Ok(LimitStudy { t, records: mu_sweep(left, right, f, mu_seq, t)? })
}

/// Critical study along a strictly decreasing sequence `mu -> mu0` from above.
///
/// Records on the two-contact branch have plateau mass `mu t`. A `mu` within the
/// classification tolerance of `mu0` lands in `S_delta` and gives a delta-shock record.
pub fn mu_to_mu0_study(
    left: State,
    right: State,
    f: &FrictionTerm,
    mu_seq: &[f64],
    t: f64,
) -> Result<LimitStudy> {
    let mu0 = mu_critical(left, right)?;
    check_decreasing(mu_seq)?;
    if let Some(&mu) = mu_seq.iter().find(|&&mu| mu <= mu0) {
        return Err(Error::MuBelowCritical { mu, mu0 });
    }
    Ok(LimitStudy { t, records: mu_sweep(left, right, f, mu_seq, t)? })
}

/// The delta-shock obtained as `mu` decreases to `mu0`:
/// it moves with `u_- + A(t)` and carries weight `mu0 t`.
pub fn concentration_limit(left: State, right: State, f: &FrictionTerm) -> Result<KkSolution> {
    let mu0 = mu_critical(left, right)?;
    Ok(KkSolution::delta_shock(left.u, mu0, f.clone()))
}

/// Mass of the intermediate plateau from `n`-point Gauss quadrature of the sampled profile on `[x1(t), x2(t)]`.
pub fn plateau_mass_quadrature(data: &RiemannData, f: &FrictionTerm, t: f64, n: usize) -> Result<f64> {
    let sol = solve(data, f)?;
    if sol.is_delta() {
        return Err(Error::NotApplicable("plateau mass needs the two-contact branch".into()));
    }
    let slice = sol.slice(data, f, t)?;
    let (x1, x2) = (slice.waves[0], slice.waves[1]);
    if x2 <= x1 {
        return Ok(0.0);
    }
    let rule = GaussLegendre::new(n);
    let nodes: Vec<(f64, f64)> = rule.mapped(x1, x2).collect();
    let grid: Vec<f64> = nodes.iter().map(|p| p.0).collect();
    let profile = slice.profile(&grid)?;
    Ok(nodes.iter().zip(&profile.rho).map(|((_, w), r)| w * r).sum())
}

/// Bisection for the `mu` where `pred` switches from true (at `lo`) to false (at `hi`).
fn bisect_mu(mut lo: f64, mut hi: f64, rel_tol: f64, pred: impl Fn(f64) -> Result<bool>) -> Result<f64> {
    if !pred(lo)? || pred(hi)? {
        return Err(Error::NotApplicable("classification does not flip around mu0".into()));
    }
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Where the classification leaves region V as `mu` grows.
///
/// Between V and IV lies the thin boundary band S_delta, so two switches are
/// located by bisection (V to S_delta, then S_delta to IV) and their midpoint is returned.
pub fn delta_onset_mu(left: State, right: State, rel_tol: f64) -> Result<f64> {
    let mu0 = mu_critical(left, right)?;
    let region = |mu: f64| -> Result<Region> { classify(&RiemannData::new(left, right, mu)?) };
    let (lo, hi) = (0.5 * mu0, 2.0 * mu0);
    let leave_v = bisect_mu(lo, hi, rel_tol, |mu| Ok(region(mu)? == Region::V))?;
    let leave_band = bisect_mu(lo, hi, rel_tol, |mu| Ok(region(mu)?.is_delta()))?;
    Ok(0.5 * (leave_v + leave_band))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn st(rho: f64, u: f64) -> State {
        State::new(rho, u).unwrap()
    }

    #[test]
    fn critical_values() {
        assert_eq!(mu_critical(st(1.0, 2.0), st(0.5, 0.0)).unwrap(), 1.0);
        assert_eq!(mu_critical(st(3.0, 1.0), st(1.0, 0.0)).unwrap(), 1.0);
        assert!(matches!(mu_critical(st(1.0, 0.0), st(1.0, 1.0)), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn zero_limit_is_pressureless() {
        let f = FrictionTerm::zero();
        let PressurelessSolution::DeltaShock { u_delta0, w_slope, .. } =
            mu_zero_limit(st(1.0, 1.0), st(4.0, 0.0), &f).unwrap()
        else {
            panic!()
        };
        assert_relative_eq!(u_delta0, 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(w_slope, 2.0, epsilon = 1e-15);
        assert!(matches!(mu_zero_limit(st(1.0, 0.0), st(2.0, 1.0), &f).unwrap(), PressurelessSolution::VacuumFan { .. }));
        assert!(mu_zero_limit(st(1.0, 1.0), st(2.0, 1.0), &f).is_err());
    }

    #[test]
    fn equal_density_delta_tends_to_midpoint() {
        let f = FrictionTerm::zero();
        let study = vanishing_pressure_study(st(1.0, 2.0), st(1.0, 0.0), &f, &vanishing_sequence(20), 1.0).unwrap();
        let u = study.extrapolate(|r| r.u_delta0).unwrap();
        let w = study.extrapolate(|r| r.w_slope).unwrap();
        assert_relative_eq!(u, 1.0, epsilon = 1e-12);
        assert_relative_eq!(w, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn critical_study_examples() {
        let (l, r) = (st(1.0, 2.0), st(0.5, 0.0));
        let f = FrictionTerm::zero();
        let study = mu_to_mu0_study(l, r, &f, &[2.0, 1.01], 1.0).unwrap();
        let a = &study.records[0];
        assert_relative_eq!(a.rho_star.unwrap(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(a.speed2 - a.speed1, 2.0, epsilon = 1e-14);
        assert_relative_eq!(a.plateau_mass.unwrap(), 2.0, epsilon = 1e-14);
        let b = &study.records[1];
        assert_relative_eq!(b.rho_star.unwrap(), 50.5, max_relative = 1e-12);
        assert_relative_eq!(b.plateau_mass.unwrap(), 1.01, max_relative = 1e-12);
        assert_eq!(
            mu_to_mu0_study(l, r, &f, &[2.0, 1.0], 1.0).unwrap_err(),
            Error::MuBelowCritical { mu: 1.0, mu0: 1.0 }
        );
        assert!(mu_to_mu0_study(l, r, &f, &[1.5, 2.0], 1.0).is_err());
        let q = plateau_mass_quadrature(&RiemannData::new(l, r, 1.01).unwrap(), &f, 1.0, 8).unwrap();
        assert_relative_eq!(q, 1.01, max_relative = 1e-12);
    }

    #[test]
    fn concentration_examples() {
        let f = FrictionTerm::zero();
        let sol = concentration_limit(st(1.0, 2.0), st(0.5, 0.0), &f).unwrap();
        let KkSolution::DeltaShock { u_delta0, w_slope, x_delta } = &sol else { panic!() };
        assert_eq!((*u_delta0, *w_slope), (2.0, 1.0));
        assert_eq!(x_delta.position(3.0).unwrap(), 6.0);

        let f = FrictionTerm::constant(1.0).unwrap();
        let sol = concentration_limit(st(1.0, 1.0), st(1.0, 0.0), &f).unwrap();
        let KkSolution::DeltaShock { w_slope, x_delta, .. } = &sol else { panic!() };
        assert_eq!(*w_slope, 1.0);
        assert_relative_eq!(x_delta.position(2.0).unwrap(), 4.0, epsilon = 1e-14);
        assert!(concentration_limit(st(1.0, 0.0), st(1.0, 0.0), &f).is_err());
    }

    #[test]
    fn onset_is_at_mu0() {
        let (l, r) = (st(1.3, 1.7), st(0.8, -0.4));
        let mu0 = mu_critical(l, r).unwrap();
        let flip = delta_onset_mu(l, r, 1e-13).unwrap();
        assert!(((flip - mu0) / mu0).abs() <= 1e-12, "flip={flip} mu0={mu0}");
    }
}
