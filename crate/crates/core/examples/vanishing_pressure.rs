//! As mu -> 0 the Keyfitz–Kranzer solutions approach the pressureless ones.

use delta_riemann::limits::{mu_zero_limit, vanishing_pressure_study, vanishing_sequence};
use delta_riemann::pressureless::PressurelessSolution;
use delta_riemann::{FrictionTerm, State};

fn main() -> delta_riemann::Result<()> {
    let f = FrictionTerm::zero();
    let (l, r) = (State::new(1.0, 1.0)?, State::new(4.0, 0.0)?);
    let study = vanishing_pressure_study(l, r, &f, &vanishing_sequence(20), 1.0)?;
    for rec in study.records.iter().step_by(4) {
        println!("mu = {:.3e}: u_delta0 = {:.12}  w_slope = {:.12}", rec.mu, rec.u_delta0.unwrap(), rec.w_slope.unwrap());
    }
    let PressurelessSolution::DeltaShock { u_delta0, w_slope, .. } = mu_zero_limit(l, r, &f)? else {
        unreachable!()
    };
    println!("Richardson limit: u_delta0 = {:.12}", study.extrapolate(|r| r.u_delta0).unwrap());
    println!("pressureless:     u_delta0 = {u_delta0:.12}, w_slope = {w_slope:.12}");

    let (l, r) = (State::new(1.0, 0.0)?, State::new(2.0, 1.0)?);
    let study = vanishing_pressure_study(l, r, &f, &vanishing_sequence(20), 1.0)?;
    let last = study.records.last().unwrap();
    println!("\ndiverging data: rho_* = {:.3e} at mu = {:.3e} (vacuum forms)", last.rho_star.unwrap(), last.mu);
    Ok(())
}
