//! Delta-shock of the Keyfitz–Kranzer system under constant friction:
//! position, weight and velocity of the Dirac part over time.

use delta_riemann::kk::{check_entropy, delta_shock_params, solve};
use delta_riemann::{FrictionTerm, RiemannData, State};

fn main() -> delta_riemann::Result<()> {
    let data = RiemannData::new(State::new(1.0, 2.0)?, State::new(1.0, 0.0)?, 1.0)?;
    let f = FrictionTerm::constant(1.0)?;
    let (u0, w0) = delta_shock_params(&data)?;
    println!("u_delta0 = {u0}, w_slope = {w0}");

    let sol = solve(&data, &f)?;
    let times = [0.25, 0.5, 1.0, 2.0];
    for &t in &times {
        let s = sol.slice(&data, &f, t)?.singular.expect("delta branch");
        println!("t = {t:4}: x_delta = {:.6}  w = {:.6}  u_delta = {:.6}", s.x_pos, s.weight, s.u_delta);
    }
    let check = check_entropy(&sol, &data, &f, &times)?;
    println!("entropy condition holds: {}", check.admissible);

    let unequal = RiemannData::new(State::new(1.0, 3.0)?, State::new(2.0, 0.0)?, 1.0)?;
    let (u1, w1) = delta_shock_params(&unequal)?;
    println!("\nunequal densities (1,3)/(2,0): u_delta0 = {u1:.12}, w_slope = {w1:.12}");
    Ok(())
}
