//! Checks exact solutions against the distributional weak form and shows how
//! a wrong delta velocity is detected.

use delta_riemann::weak::{residual, residual_sweep, Formulation, TestFunction};
use delta_riemann::{FrictionTerm, KkProblem, KkSolution, PressurelessProblem, RiemannData, State};

fn main() -> delta_riemann::Result<()> {
    let phis: Vec<TestFunction> = [(-0.5, 1.0), (0.5, 1.2), (1.0, 1.0), (1.5, 0.9), (2.5, 1.3)]
        .iter()
        .map(|&(x0, t0)| TestFunction::new(x0, t0, 1.0, 0.5))
        .collect::<Result<_, _>>()?;

    let f = FrictionTerm::gradually_degenerate(1.0, 2.0)?;
    let data = RiemannData::new(State::new(1.0, 3.0)?, State::new(2.0, 0.0)?, 1.0)?;
    let kk = KkProblem::solve(data, f.clone())?;
    let table = residual_sweep(&kk, &phis, &[8, 16, 32, 64])?;
    println!("KK delta-shock (1,3)/(2,0), mu = 1:");
    for row in &table.rows {
        println!("  n = {:2}: mass {:.3e}  momentum {:.3e}", row.order, row.max_mass, row.max_momentum);
    }

    let pl = PressurelessProblem::solve(State::new(1.0, 1.0)?, State::new(4.0, 0.0)?, FrictionTerm::zero())?;
    let phi = TestFunction::new(1.0 / 3.0, 1.0, 0.8, 0.5)?;
    let exact = residual(&pl, &phi, 64, Formulation::Original)?;
    println!("\npressureless delta-shock: max residual {:.3e}", exact.max_abs());
    println!("  line-integral part: {:?}", exact.decomposition.line);

    let mut wrong = KkProblem::solve(RiemannData::new(State::new(1.0, 2.0)?, State::new(1.0, 0.0)?, 1.0)?, f)?;
    if let KkSolution::DeltaShock { u_delta0, w_slope, .. } = wrong.solution.clone() {
        wrong.solution = KkSolution::delta_shock(u_delta0 + 0.1, w_slope, wrong.friction.clone());
    }
    let phi = TestFunction::new(1.5, 1.0, 1.0, 0.5)?;
    let r = residual(&wrong, &phi, 64, Formulation::Original)?;
    println!("\nperturbed delta velocity: momentum residual {:.3e}", r.r_momentum);
    Ok(())
}
