//! L1 convergence of the finite-volume scheme towards a classical two-contact solution.

use delta_riemann::fvm::{fvm_run, l1_error, FvmConfig};
use delta_riemann::{FrictionTerm, KkProblem, RiemannData, RiemannSolution, State};

fn main() -> delta_riemann::Result<()> {
    let (l, r) = (State::new(1.0, 0.0)?, State::new(2.0, 1.0)?);
    let f = FrictionTerm::zero();
    let exact = KkProblem::solve(RiemannData::new(l, r, 1.0)?, f.clone())?;
    let mut prev: Option<f64> = None;
    for n in [250, 500, 1000, 2000] {
        let cfg = FvmConfig::new(-1.0, 2.5, n, 0.5, 0.5)?;
        let snap = fvm_run(l, r, 1.0, &f, &cfg, &[])?.remove(0);
        let p = exact.slice(snap.t)?.profile(&snap.centers())?;
        let e = l1_error(&snap, &p)?;
        let order = prev.map(|p| (p / e.rho).log2());
        println!("n = {n:5}: L1(rho) = {:.6e}  L1(m) = {:.6e}  order {:?}", e.rho, e.m, order);
        prev = Some(e.rho);
    }
    Ok(())
}
