//! Time-dependent Coulomb-like friction coefficient `alpha(t)` and its primitives.
//!
//! Every wave path of both systems has the form `x(t) = c t + B(t)` where
//! `A(t) = int_0^t alpha` and `B(t) = int_0^t int_0^r alpha`. The friction term
//! therefore only shifts velocities by `A(t)` and positions by `B(t)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, DEFAULT_TOL};

/// A user-supplied friction coefficient `t -> alpha(t)`.
pub type AlphaFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The family a [`FrictionTerm`] belongs to.
#[derive(Clone)]
pub enum FrictionKind {
    Zero,
    Constant { a: f64 },
    /// `alpha(t) = theta / (1 + t)^beta`; `theta` carries its own sign.
    GraduallyDegenerate { theta: f64, beta: f64 },
    General { alpha: AlphaFn, tol: f64 },
}

impl fmt::Debug for FrictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrictionKind::Zero => write!(f, "Zero"),
            FrictionKind::Constant { a } => f.debug_struct("Constant").field("a", a).finish(),
            FrictionKind::GraduallyDegenerate { theta, beta } => f
                .debug_struct("GraduallyDegenerate")
                .field("theta", theta)
                .field("beta", beta)
                .finish(),
            FrictionKind::General { tol, .. } => {
                f.debug_struct("General").field("tol", tol).finish_non_exhaustive()
            }
        }
    }
}

/// The friction coefficient `alpha(t)` of the momentum source `alpha(t) rho`.
///
/// Immutable after construction; `General` closures are required to be `Send + Sync`
/// so a term can be shared across threads.
#[derive(Clone, Debug)]
pub struct FrictionTerm {
    kind: FrictionKind,
}

impl Default for FrictionTerm {
    fn default() -> Self {
        Self::zero()
    }
}

impl FrictionTerm {
    pub fn zero() -> Self {
        Self { kind: FrictionKind::Zero }
    }

    pub fn constant(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidInput(format!("constant friction must be finite, got {a}")));
        }
        Ok(Self { kind: FrictionKind::Constant { a } })
    }

    pub fn gradually_degenerate(theta: f64, beta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!("theta must be finite, got {theta}")));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::InvalidInput(format!("beta must be a finite value >= 0, got {beta}")));
        }
        Ok(Self { kind: FrictionKind::GraduallyDegenerate { theta, beta } })
    }

    /// A general continuous coefficient integrated numerically to absolute tolerance `tol`.
    pub fn general<F>(alpha: F, tol: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("quadrature tolerance must be > 0, got {tol}")));
        }
        Ok(Self { kind: FrictionKind::General { alpha: Arc::new(alpha), tol } })
    }

    /// [`FrictionTerm::general`] with the default tolerance.
    pub fn general_default<F>(alpha: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::general(alpha, DEFAULT_TOL).expect("default tolerance is positive")
    }

    pub fn kind(&self) -> &FrictionKind {
        &self.kind
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, FrictionKind::Zero)
    }

    /// `alpha(t)`.
    pub fn alpha(&self, t: f64) -> f64 {
        match &self.kind {
            FrictionKind::Zero => 0.0,
            FrictionKind::Constant { a } => *a,
            FrictionKind::GraduallyDegenerate { theta, beta } => theta / (1.0 + t).powf(*beta),
            FrictionKind::General { alpha, .. } => alpha(t),
        }
    }

    /// `A(t) = int_0^t alpha(s) ds`.
    pub fn primitive(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            FrictionKind::Zero => 0.0,
            FrictionKind::Constant { a } => a * t,
            FrictionKind::GraduallyDegenerate { theta, beta } => {
                let l = t.ln_1p();
                if *beta == 1.0 {
                    theta * l
                } else if *beta == 2.0 {
                    theta * t / (t + 1.0)
                } else {
                    let k = 1.0 - beta;
                    theta / k * (k * l).exp_m1()
                }
            }
            FrictionKind::General { alpha, tol } => integrate_adaptive(|s| alpha(s), 0.0, t, *tol)?,
        })
    }

    /// `B(t) = int_0^t int_0^r alpha(s) ds dr`.
    ///
    /// For general coefficients this uses the single integral `int_0^t (t - s) alpha(s) ds`.
    pub fn double_primitive(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            FrictionKind::Zero => 0.0,
            FrictionKind::Constant { a } => 0.5 * a * t * t,
            FrictionKind::GraduallyDegenerate { theta, beta } => {
                let l = t.ln_1p();
                if *beta == 1.0 {
                    theta * ((t + 1.0) * l - t)
                } else if *beta == 2.0 {
                    theta * (t - l)
                } else {
                    let k1 = 1.0 - beta;
                    let k2 = 2.0 - beta;
                    theta / k1 * ((k2 * l).exp_m1() / k2 - t)
                }
            }
            FrictionKind::General { alpha, tol } => {
                integrate_adaptive(|s| (t - s) * alpha(s), 0.0, t, *tol)?
            }
        })
    }

    /// `(A(t), B(t))` in one call.
    pub fn shifts(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.primitive(t)?, self.double_primitive(t)?))
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// A wave path `x(t) = speed * t + B(t)` starting at the origin.
#[derive(Clone, Debug)]
pub struct Trajectory {
    speed: f64,
    friction: FrictionTerm,
}

impl Trajectory {
    pub fn new(speed: f64, friction: FrictionTerm) -> Self {
        Self { speed, friction }
    }

    /// The constant part `c` of the velocity `c + A(t)`.
    pub fn speed_const(&self) -> f64 {
        self.speed
    }

    pub fn friction(&self) -> &FrictionTerm {
        &self.friction
    }

    pub fn position(&self, t: f64) -> Result<f64> {
        Ok(self.speed * t + self.friction.double_primitive(t)?)
    }

    pub fn velocity(&self, t: f64) -> Result<f64> {
        Ok(self.speed + self.friction.primitive(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn families() -> Vec<FrictionTerm> {
        vec![
            FrictionTerm::zero(),
            FrictionTerm::constant(2.0).unwrap(),
            FrictionTerm::constant(-0.7).unwrap(),
            FrictionTerm::gradually_degenerate(1.0, 0.0).unwrap(),
            FrictionTerm::gradually_degenerate(-1.0, 0.5).unwrap(),
            FrictionTerm::gradually_degenerate(1.0, 1.0).unwrap(),
            FrictionTerm::gradually_degenerate(1.0, 2.0).unwrap(),
            FrictionTerm::gradually_degenerate(-1.0, 3.0).unwrap(),
            FrictionTerm::general_default(|t: f64| (2.0 * t).cos() - 0.3),
        ]
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(FrictionTerm::zero().alpha(3.0), 0.0);
        assert_eq!(FrictionTerm::constant(2.0).unwrap().alpha(5.0), 2.0);
        let g = FrictionTerm::gradually_degenerate(1.0, 2.0).unwrap();
        assert_relative_eq!(g.alpha(1.0), 0.25);
    }

    #[test]
    fn primitive_examples() {
        let c = FrictionTerm::constant(1.5).unwrap();
        assert_relative_eq!(c.primitive(4.0).unwrap(), 6.0);
        assert_relative_eq!(c.double_primitive(4.0).unwrap(), 12.0);

        let g1 = FrictionTerm::gradually_degenerate(1.0, 1.0).unwrap();
        assert_relative_eq!(g1.primitive(std::f64::consts::E - 1.0).unwrap(), 1.0, epsilon = 1e-15);

        let g2 = FrictionTerm::gradually_degenerate(1.0, 2.0).unwrap();
        assert_relative_eq!(g2.primitive(1.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(g2.double_primitive(1.0).unwrap(), 1.0 - 2f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(g2.double_primitive(1.0).unwrap(), 0.306_853, epsilon = 1e-6);

        assert_eq!(FrictionTerm::zero().double_primitive(7.0).unwrap(), 0.0);
    }

    #[test]
    fn primitives_vanish_at_zero() {
        for f in families() {
            assert_eq!(f.primitive(0.0).unwrap(), 0.0);
            assert_eq!(f.double_primitive(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn finite_difference_derivatives() {
        let h = 1e-5;
        for f in families() {
            for i in 1..=20 {
                let t = 0.25 * i as f64;
                let da = (f.primitive(t + h).unwrap() - f.primitive(t - h).unwrap()) / (2.0 * h);
                let a = f.alpha(t);
                assert!(
                    (da - a).abs() <= 1e-6 * a.abs().max(1.0),
                    "{f:?} t={t}: dA/dt={da} alpha={a}"
                );
                let db = (f.double_primitive(t + h).unwrap() - f.double_primitive(t - h).unwrap())
                    / (2.0 * h);
                let pa = f.primitive(t).unwrap();
                assert!(
                    (db - pa).abs() <= 1e-6 * pa.abs().max(1.0),
                    "{f:?} t={t}: dB/dt={db} A={pa}"
                );
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(FrictionTerm::gradually_degenerate(1.0, -0.5).is_err());
        assert!(FrictionTerm::gradually_degenerate(1.0, f64::NAN).is_err());
        assert!(FrictionTerm::general(|_| 1.0, 0.0).is_err());
        assert!(FrictionTerm::constant(f64::INFINITY).is_err());
        assert!(FrictionTerm::zero().primitive(-1.0).is_err());
    }

    #[test]
    fn trajectory_has_canonical_form() {
        let f = FrictionTerm::constant(1.0).unwrap();
        let tr = Trajectory::new(1.5, f);
        assert_eq!(tr.position(0.0).unwrap(), 0.0);
        assert_relative_eq!(tr.position(2.0).unwrap(), 5.0);
        assert_relative_eq!(tr.velocity(2.0).unwrap(), 3.5);
    }

    #[test]
    fn general_family_is_shareable_across_threads() {
        let f = FrictionTerm::general_default(|t: f64| t.sin());
        let handles: Vec<_> = (1..4)
            .map(|k| {
                let f = f.clone();
                std::thread::spawn(move || f.primitive(k as f64).unwrap())
            })
            .collect();
        for (k, h) in (1..4).zip(handles) {
            let v = h.join().unwrap();
            assert!((v - (1.0 - (k as f64).cos())).abs() < 1e-10);
        }
    }
}
