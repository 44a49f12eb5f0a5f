use approx::assert_relative_eq;
use delta_riemann::pressureless::{sample_pressureless, solve_pressureless};
use delta_riemann::state::linspace;
use delta_riemann::{FrictionTerm, PressurelessSolution, State};

fn st(rho: f64, u: f64) -> State {
    State::new(rho, u).unwrap()
}

#[test]
fn delta_shock_example() {
    let sol = solve_pressureless(st(1.0, 1.0), st(4.0, 0.0), &FrictionTerm::zero()).unwrap();
    let PressurelessSolution::DeltaShock { u_delta0, w_slope, .. } = sol else { panic!("expected a delta-shock") };
    assert_relative_eq!(u_delta0, 1.0 / 3.0, max_relative = 1e-15);
    assert_relative_eq!(w_slope, 2.0, max_relative = 1e-15);
    assert_relative_eq!(w_slope, -u_delta0 * (1.0 - 4.0) + 1.0, max_relative = 1e-15);
}

#[test]
fn vacuum_fan_example() {
    let f = FrictionTerm::zero();
    let (l, r) = (st(1.0, 0.0), st(1.0, 1.0));
    let sol = solve_pressureless(l, r, &f).unwrap();
    let PressurelessSolution::VacuumFan { x_minus, x_plus } = &sol else { panic!("expected a fan") };
    assert_eq!((x_minus.speed_const(), x_plus.speed_const()), (0.0, 1.0));
    let p = sample_pressureless(&sol, l, r, &f, 2.0, &[-1.0, 1.0, 3.0]).unwrap();
    assert_eq!(p.rho, vec![1.0, 0.0, 1.0]);
    assert_eq!(p.u[1], 0.5);
}

#[test]
fn identical_states_single_contact() {
    let s = st(0.7, -0.2);
    let f = FrictionTerm::constant(1.0).unwrap();
    let sol = solve_pressureless(s, s, &f).unwrap();
    assert_eq!(sol.branch_name(), "single_contact");
    let p = sample_pressureless(&sol, s, s, &f, 1.0, &linspace(-2.0, 2.0, 9)).unwrap();
    assert!(p.rho.iter().all(|&r| r == 0.7));
    assert!(p.u.iter().all(|&u| (u - 0.8).abs() < 1e-15));
}

#[test]
fn delta_shock_with_constant_friction() {
    let f = FrictionTerm::constant(3.0).unwrap();
    let (l, r) = (st(1.0, 1.0), st(4.0, 0.0));
    let sol = solve_pressureless(l, r, &f).unwrap();
    let p = sample_pressureless(&sol, l, r, &f, 1.0, &[-50.0, 50.0]).unwrap();
    let s = p.singular.unwrap();
    assert_relative_eq!(s.x_pos, 1.0 / 3.0 + 1.5, max_relative = 1e-15);
    assert_relative_eq!(s.weight, 2.0, max_relative = 1e-15);
    assert_relative_eq!(s.u_delta, 1.0 / 3.0 + 3.0, max_relative = 1e-15);
    assert_eq!((p.rho[0], p.u[0]), (1.0, 4.0));
}

#[test]
fn fan_interior_with_friction() {
    let f = FrictionTerm::gradually_degenerate(-1.0, 1.0).unwrap();
    let (l, r) = (st(2.0, -1.0), st(0.5, 2.0));
    let sol = solve_pressureless(l, r, &f).unwrap();
    let t = 1.7;
    let (a, b) = f.shifts(t).unwrap();
    let grid = linspace(-t + b + 1e-9, 2.0 * t + b - 1e-9, 7);
    let p = sample_pressureless(&sol, l, r, &f, t, &grid).unwrap();
    for (x, u) in grid.iter().zip(&p.u) {
        assert_relative_eq!(*u, (x - b) / t + a, max_relative = 1e-12);
    }
    assert!(p.rho.iter().all(|&r| r == 0.0));
}
