use approx::assert_relative_eq;
use delta_riemann::fvm::{
    empirical_order, fvm_run, l1_error, spike_diagnostics, FvmConfig, FvmSolver, FvmState,
};
use delta_riemann::pressureless::solve_pressureless;
use delta_riemann::{Error, FrictionTerm, KkProblem, RiemannData, RiemannSolution, State};

fn st(rho: f64, u: f64) -> State {
    State::new(rho, u).unwrap()
}

fn cfg(x_min: f64, x_max: f64, n: usize, t_end: f64) -> FvmConfig {
    FvmConfig::new(x_min, x_max, n, 0.5, t_end).unwrap()
}

#[test]
fn uniform_state_is_a_fixed_point() {
    let s = st(1.3, 0.4);
    for mu in [0.0, 1.0] {
        let out = fvm_run(s, s, mu, &FrictionTerm::zero(), &cfg(-1.0, 1.0, 100, 2.0), &[0.5, 2.0]).unwrap();
        for snap in out {
            assert!(snap.rho.iter().all(|&r| r == 1.3));
            assert!(snap.m.iter().all(|&m| (m - 1.3 * 0.4).abs() <= 1e-15));
        }
    }
}

#[test]
fn uniform_state_with_constant_friction() {
    let s = st(2.0, -0.3);
    let a = 1.7;
    let f = FrictionTerm::constant(a).unwrap();
    let times = [0.25, 1.0, 3.0];
    let out = fvm_run(s, s, 0.5, &f, &cfg(-1.0, 1.0, 64, 3.0), &times).unwrap();
    for (snap, t) in out.iter().zip(times) {
        assert!(snap.rho.iter().all(|&r| r == 2.0));
        for u in snap.velocity(1e-12) {
            assert!((u - (-0.3 + a * t)).abs() <= 1e-10, "u = {u} at t = {t}");
        }
    }
}

#[test]
fn mass_is_conserved_per_step() {
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let c = cfg(-1.0, 1.0, 400, 0.5);
    let mut solver = FvmSolver::new(l, r, 0.0, FrictionTerm::constant(1.0).unwrap(), c).unwrap();
    while solver.state().t < 0.5 {
        let before = solver.state().total_mass();
        let dt = solver.stable_dt().min(0.5 - solver.state().t);
        solver.step(dt).unwrap();
        let tr = solver.last_transfer();
        let change = solver.state().total_mass() - before;
        assert!((change - (tr.mass_in - tr.mass_out)).abs() <= 1e-12, "mass defect at t = {}", solver.state().t);
    }
}

/// Per-step defect of `d/dt sum m dx - alpha sum rho dx`, with boundary fluxes removed.
fn momentum_defect(dt: f64) -> f64 {
    let (l, r) = (st(1.0, 0.5), st(2.0, 0.2));
    let f = FrictionTerm::gradually_degenerate(3.0, 2.0).unwrap();
    let c = cfg(-1.5, 2.5, 200, 0.5);
    let mut solver = FvmSolver::new(l, r, 1.0, f.clone(), c).unwrap();
    let mut worst: f64 = 0.0;
    while solver.state().t + dt <= 0.5 + 1e-12 {
        let (t, p0, m0) = (solver.state().t, solver.state().total_momentum(), solver.state().total_mass());
        solver.step(dt).unwrap();
        let tr = solver.last_transfer();
        let (p1, m1) = (solver.state().total_momentum(), solver.state().total_mass());
        let rate = (p1 - p0 - (tr.momentum_in - tr.momentum_out)) / dt;
        worst = worst.max((rate - f.alpha(t + 0.5 * dt) * 0.5 * (m0 + m1)).abs());
    }
    worst
}

#[test]
fn momentum_balance_defect_shrinks_with_dt() {
    let coarse = momentum_defect(4e-3);
    let fine = momentum_defect(2e-3);
    assert!(fine <= 0.5 * coarse, "{coarse} -> {fine}");
}

#[test]
fn density_stays_above_floor_in_vacuum() {
    let (l, r) = (st(1.0, -1.0), st(1.0, 1.0));
    let c = cfg(-2.0, 2.0, 400, 0.8);
    let floor = c.rho_floor;
    let mut solver = FvmSolver::new(l, r, 0.0, FrictionTerm::zero(), c).unwrap();
    let mut min_rho = f64::INFINITY;
    while solver.state().t < 0.8 {
        let dt = solver.stable_dt().min(0.8 - solver.state().t);
        solver.step(dt).unwrap();
        min_rho = min_rho.min(solver.state().rho.iter().copied().fold(f64::INFINITY, f64::min));
    }
    assert!(min_rho >= floor);
    assert!(min_rho < 0.05, "vacuum never formed: {min_rho}");
}

#[test]
fn l1_error_of_exact_profile_is_zero() {
    let d = RiemannData::new(st(1.0, 0.0), st(2.0, 1.0), 1.0).unwrap();
    let p = KkProblem::solve(d, FrictionTerm::zero()).unwrap();
    let c = cfg(-1.0, 2.0, 300, 1.0);
    let profile = p.slice(1.0).unwrap().profile(&c.centers()).unwrap();
    let state = FvmState::from_profile(&profile).unwrap();
    let e = l1_error(&state, &profile).unwrap();
    assert_eq!((e.rho, e.m), (0.0, 0.0));

    let singular = KkProblem::solve(RiemannData::new(st(1.0, 2.0), st(1.0, 0.0), 1.0).unwrap(), FrictionTerm::zero())
        .unwrap()
        .slice(1.0)
        .unwrap()
        .profile(&c.centers())
        .unwrap();
    assert!(matches!(l1_error(&state, &singular), Err(Error::SingularProfile)));
}

#[test]
fn plateaus_alone_are_not_a_spike() {
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let sol = solve_pressureless(l, r, &FrictionTerm::zero()).unwrap();
    let c = cfg(-1.0, 1.0, 200, 0.5);
    let p = sol.slice(l, r, &FrictionTerm::zero(), 0.5).unwrap().profile(&c.centers()).unwrap();
    let state = FvmState::from_profile(&p).unwrap();
    assert!(matches!(spike_diagnostics(&state, l, r, 1.0), Err(Error::NoSpike { .. })));
}

fn classical_l1(l: State, r: State, mu: f64, domain: (f64, f64), t: f64, ns: &[usize]) -> Vec<f64> {
    let f = FrictionTerm::zero();
    let exact: Box<dyn RiemannSolution> = if mu > 0.0 {
        Box::new(KkProblem::solve(RiemannData::new(l, r, mu).unwrap(), f.clone()).unwrap())
    } else {
        Box::new(delta_riemann::PressurelessProblem::solve(l, r, f.clone()).unwrap())
    };
    ns.iter()
        .map(|&n| {
            let c = cfg(domain.0, domain.1, n, t);
            let s = fvm_run(l, r, mu, &f, &c, &[]).unwrap().remove(0);
            let p = exact.slice(t).unwrap().profile(&s.centers()).unwrap();
            l1_error(&s, &p).unwrap().rho
        })
        .collect()
}

#[test]
fn two_contact_converges_in_l1() {
    let ns = [100, 200, 400, 800];
    let e = classical_l1(st(1.0, 0.0), st(2.0, 1.0), 1.0, (-1.0, 2.5), 0.5, &ns);
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
    assert!(empirical_order(&ns, &e).unwrap() >= 0.4, "{e:?}");
}

#[test]
fn vacuum_fan_converges_in_l1() {
    let ns = [100, 200, 400, 800];
    let e = classical_l1(st(1.0, -0.5), st(1.0, 0.5), 0.0, (-1.0, 1.0), 0.5, &ns);
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
}

#[test]
fn delta_spike_carries_the_weight() {
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let c = cfg(-1.0, 1.0, 1000, 0.5);
    let s = fvm_run(l, r, 0.0, &FrictionTerm::zero(), &c, &[]).unwrap().remove(0);
    let d = spike_diagnostics(&s, l, r, 1.0).unwrap();
    assert_relative_eq!(d.excess_mass, 1.0, max_relative = 0.05);
    assert!((d.center - 1.0 / 6.0).abs() < 0.05, "center {}", d.center);
}

/// The spike lags the exact path by several cells at any fixed `n`, but the lag shrinks in `x`.
#[test]
fn spike_center_converges_in_x() {
    let (l, r) = (st(1.0, 2.0), st(1.0, 0.0));
    let errs: Vec<f64> = [250, 500, 1000]
        .iter()
        .map(|&n| {
            let c = cfg(-0.5, 2.0, n, 0.5);
            let s = fvm_run(l, r, 1.0, &FrictionTerm::zero(), &c, &[]).unwrap().remove(0);
            (spike_diagnostics(&s, l, r, 1.0).unwrap().center - 0.75).abs()
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn narrow_domain_is_rejected() {
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let c = cfg(-0.2, 0.2, 100, 2.0);
    assert!(matches!(FvmSolver::new(l, r, 0.0, FrictionTerm::zero(), c), Err(Error::InvalidInput(_))));
}

#[test]
fn waves_reaching_the_boundary_are_reported() {
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let c = cfg(-1.0, 1.0, 100, 0.5);
    let mut solver = FvmSolver::new(l, r, 0.0, FrictionTerm::constant(40.0).unwrap(), c.clone());
    assert!(solver.is_err());
    let start = FvmState::riemann(&c, l, r);
    solver = FvmSolver::from_state(start, 0.0, FrictionTerm::zero(), c);
    assert!(solver.unwrap().advance_to(0.5).is_ok());
}

#[test]
fn degenerate_steps_are_rejected() {
    let s = st(1.0, 0.0);
    let mut solver = FvmSolver::new(s, s, 1.0, FrictionTerm::zero(), cfg(-1.0, 1.0, 32, 1.0)).unwrap();
    assert!(matches!(solver.step(0.0), Err(Error::CflViolation { .. })));
    assert!(matches!(solver.step(f64::NAN), Err(Error::CflViolation { .. })));
}
