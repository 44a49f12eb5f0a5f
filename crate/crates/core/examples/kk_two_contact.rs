//! Classical solution: two contact discontinuities around an intermediate state,
//! sampled at a few times under constant friction.

use delta_riemann::kk::{sample, solve, KkSolution};
use delta_riemann::state::linspace;
use delta_riemann::{FrictionTerm, RiemannData, State};

fn main() -> delta_riemann::Result<()> {
    let data = RiemannData::new(State::new(1.0, 0.0)?, State::new(2.0, 1.0)?, 1.0)?;
    let f = FrictionTerm::constant(1.0)?;
    let sol = solve(&data, &f)?;
    let KkSolution::TwoContact { intermediate, x1, x2 } = &sol else {
        unreachable!("this data lies in the classical region")
    };
    println!("rho_* = {}, u_* = {}", intermediate.rho, intermediate.u);
    println!("contact speeds (friction-free) {} and {}", x1.speed_const(), x2.speed_const());

    for t in [0.5, 1.0, 2.0] {
        println!("\nt = {t}: x1 = {:.6}, x2 = {:.6}", x1.position(t)?, x2.position(t)?);
        let p = sample(&sol, &data, &f, t, &linspace(-1.0, 5.0, 7))?;
        for i in 0..p.len() {
            println!("  x = {:5.2}  rho = {:.6}  u = {:.6}", p.grid[i], p.rho[i], p.u[i]);
        }
    }
    Ok(())
}
