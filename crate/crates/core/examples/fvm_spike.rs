//! Finite-volume run of a pressureless delta-shock; the density spike is compared
//! with the exact position and weight.

use delta_riemann::fvm::{spike_diagnostics, FvmConfig, FvmSolver};
use delta_riemann::{FrictionTerm, PressurelessProblem, RiemannSolution, State};

fn main() -> delta_riemann::Result<()> {
    let (l, r) = (State::new(1.0, 1.0)?, State::new(4.0, 0.0)?);
    let f = FrictionTerm::constant(1.0)?;
    let cfg = FvmConfig::new(-1.0, 2.0, 2000, 0.5, 1.0)?;
    let exact = PressurelessProblem::solve(l, r, f.clone())?;
    let mut run = FvmSolver::new(l, r, 0.0, f, cfg.clone())?;
    for snap in run.run(&[0.2, 0.4, 0.6, 0.8, 1.0])? {
        let s = exact.slice(snap.t)?.singular.expect("delta-shock");
        let d = spike_diagnostics(&snap, l, r, s.weight)?;
        println!(
            "t = {:.1}: center {:.5} (exact {:.5}, {:+.2} cells)  mass {:.5} (exact {:.5})",
            snap.t,
            d.center,
            s.x_pos,
            (d.center - s.x_pos) / cfg.dx(),
            d.excess_mass,
            s.weight
        );
    }
    println!("{} steps", run.steps());
    Ok(())
}
