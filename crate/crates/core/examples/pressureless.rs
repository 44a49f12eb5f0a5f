//! Pressureless gas: vacuum fan for diverging data, delta-shock for colliding data.

use delta_riemann::pressureless::{solve_pressureless, PressurelessSolution};
use delta_riemann::state::linspace;
use delta_riemann::{FrictionTerm, PressurelessProblem, RiemannSolution, State};

fn main() -> delta_riemann::Result<()> {
    let f = FrictionTerm::gradually_degenerate(1.0, 2.0)?;

    let fan = PressurelessProblem::solve(State::new(1.0, 0.0)?, State::new(1.0, 1.0)?, f.clone())?;
    println!("{} at t = 1:", fan.solution.branch_name());
    let p = fan.slice(1.0)?.profile(&linspace(-0.5, 2.0, 6))?;
    for i in 0..p.len() {
        println!("  x = {:5.2}  rho = {:.3}  u = {:.6}", p.grid[i], p.rho[i], p.u[i]);
    }

    let sol = solve_pressureless(State::new(1.0, 1.0)?, State::new(4.0, 0.0)?, &f)?;
    if let PressurelessSolution::DeltaShock { u_delta0, w_slope, x_delta } = &sol {
        println!("\ndelta_shock: u_delta0 = {u_delta0}, w_slope = {w_slope}");
        for t in [0.5, 1.0, 4.0] {
            println!("  t = {t}: x_delta = {:.6}, w = {:.6}", x_delta.position(t)?, w_slope * t);
        }
    }
    Ok(())
}
