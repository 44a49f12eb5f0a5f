use approx::assert_relative_eq;
use delta_riemann::quadrature::integrate_adaptive;
use delta_riemann::{Error, FrictionTerm, Trajectory};

const BETAS: [f64; 6] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0];

#[test]
fn family_values() {
    assert_eq!(FrictionTerm::zero().alpha(3.0), 0.0);
    assert_eq!(FrictionTerm::constant(2.0).unwrap().alpha(5.0), 2.0);
    assert_eq!(FrictionTerm::gradually_degenerate(1.0, 2.0).unwrap().alpha(1.0), 0.25);

    let c = FrictionTerm::constant(0.7).unwrap();
    assert_relative_eq!(c.primitive(3.0).unwrap(), 2.1, max_relative = 1e-15);
    assert_relative_eq!(c.double_primitive(3.0).unwrap(), 0.7 * 4.5, max_relative = 1e-15);

    let g1 = FrictionTerm::gradually_degenerate(1.0, 1.0).unwrap();
    assert_relative_eq!(g1.primitive(std::f64::consts::E - 1.0).unwrap(), 1.0, max_relative = 1e-15);
    let g2 = FrictionTerm::gradually_degenerate(1.0, 2.0).unwrap();
    assert_relative_eq!(g2.primitive(1.0).unwrap(), 0.5, max_relative = 1e-15);
    assert_relative_eq!(g2.double_primitive(1.0).unwrap(), 1.0 - 2f64.ln(), max_relative = 1e-14);
    assert_eq!(FrictionTerm::zero().double_primitive(7.0).unwrap(), 0.0);
}

#[test]
fn primitives_vanish_at_zero() {
    let mut fams = vec![FrictionTerm::zero(), FrictionTerm::constant(-3.0).unwrap()];
    for beta in BETAS {
        fams.push(FrictionTerm::gradually_degenerate(-1.0, beta).unwrap());
    }
    fams.push(FrictionTerm::general_default(|t| (3.0 * t).sin()));
    for f in fams {
        assert_eq!(f.primitive(0.0).unwrap(), 0.0);
        assert_eq!(f.double_primitive(0.0).unwrap(), 0.0);
    }
}

#[test]
fn closed_forms_match_nested_quadrature() {
    for theta in [1.0, -1.0] {
        for beta in BETAS {
            let f = FrictionTerm::gradually_degenerate(theta, beta).unwrap();
            let alpha = |s: f64| f.alpha(s);
            for k in 0..=20 {
                let t = 0.5 * k as f64;
                let a = integrate_adaptive(alpha, 0.0, t, 1e-13).unwrap();
                let b = integrate_adaptive(|r| integrate_adaptive(alpha, 0.0, r, 1e-13).unwrap(), 0.0, t, 1e-12).unwrap();
                assert!((f.primitive(t).unwrap() - a).abs() <= 1e-9, "A theta={theta} beta={beta} t={t}");
                assert!((f.double_primitive(t).unwrap() - b).abs() <= 1e-9, "B theta={theta} beta={beta} t={t}");
            }
        }
    }
}

#[test]
fn finite_differences() {
    let fams = [
        FrictionTerm::constant(1.5).unwrap(),
        FrictionTerm::gradually_degenerate(1.0, 1.0).unwrap(),
        FrictionTerm::gradually_degenerate(-1.0, 2.0).unwrap(),
        FrictionTerm::gradually_degenerate(1.0, 0.5).unwrap(),
        FrictionTerm::general_default(|t| 1.0 + t.cos()),
    ];
    for f in &fams {
        for t in [0.3, 1.0, 2.5, 7.0] {
            let h = 1e-4;
            let da = (f.primitive(t + h).unwrap() - f.primitive(t - h).unwrap()) / (2.0 * h);
            let db = (f.double_primitive(t + h).unwrap() - f.double_primitive(t - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(da, f.alpha(t), max_relative = 1e-6);
            assert_relative_eq!(db, f.primitive(t).unwrap(), max_relative = 1e-6);
        }
    }
}

#[test]
fn general_matches_closed_form() {
    let closed = FrictionTerm::gradually_degenerate(1.0, 1.5).unwrap();
    let general = FrictionTerm::general(|t| (1.0 + t).powf(-1.5), 1e-12).unwrap();
    for t in [0.5, 3.0, 10.0] {
        assert_relative_eq!(general.primitive(t).unwrap(), closed.primitive(t).unwrap(), epsilon = 1e-11);
        assert_relative_eq!(general.double_primitive(t).unwrap(), closed.double_primitive(t).unwrap(), epsilon = 1e-10);
    }
}

#[test]
fn invalid_parameters() {
    assert!(matches!(FrictionTerm::gradually_degenerate(1.0, -0.5), Err(Error::InvalidInput(_))));
    assert!(FrictionTerm::general(|_| 1.0, 0.0).is_err());
    assert!(FrictionTerm::general(|_| 1.0, -1e-3).is_err());
}

#[test]
fn trajectory_form() {
    let f = FrictionTerm::gradually_degenerate(2.0, 2.0).unwrap();
    let tr = Trajectory::new(-0.75, f.clone());
    assert_eq!(tr.position(0.0).unwrap(), 0.0);
    for t in [0.1, 1.0, 4.0] {
        assert_relative_eq!(tr.position(t).unwrap(), -0.75 * t + f.double_primitive(t).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(tr.velocity(t).unwrap(), -0.75 + f.primitive(t).unwrap(), max_relative = 1e-15);
    }
}
