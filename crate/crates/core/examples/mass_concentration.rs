//! As mu decreases to mu0 the intermediate plateau collapses into a delta-shock
//! that carries mass mu0 t.

use delta_riemann::kk::KkSolution;
use delta_riemann::limits::{concentration_limit, critical_sequence, mu_critical, mu_to_mu0_study, plateau_mass_quadrature};
use delta_riemann::{FrictionTerm, RiemannData, State};

fn main() -> delta_riemann::Result<()> {
    let (l, r) = (State::new(1.0, 2.0)?, State::new(0.5, 0.0)?);
    let f = FrictionTerm::constant(1.0)?;
    let mu0 = mu_critical(l, r)?;
    let t = 1.0;
    let study = mu_to_mu0_study(l, r, &f, &critical_sequence(mu0, 20), t)?;
    println!("mu0 = {mu0}");
    for rec in study.records.iter().step_by(4) {
        let q = plateau_mass_quadrature(&RiemannData::new(l, r, rec.mu)?, &f, t, 16)?;
        println!(
            "mu - mu0 = {:.2e}: rho_* = {:.4e}  x2' - x1' = {:.3e}  mass = {:.12} (quadrature {:.12})",
            rec.mu - mu0,
            rec.rho_star.unwrap(),
            rec.speed2 - rec.speed1,
            rec.plateau_mass.unwrap(),
            q
        );
    }
    if let KkSolution::DeltaShock { u_delta0, w_slope, x_delta } = concentration_limit(l, r, &f)? {
        println!("limit: x_delta(1) = {}, w(t) = {w_slope} t, velocity {u_delta0} + A(t)", x_delta.position(1.0)?);
    }
    Ok(())
}
