use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A constant gas state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub u: f64,
}

impl State {
    /// A validated state; density must be positive and both fields finite.
    pub fn new(rho: f64, u: f64) -> Result<Self> {
        let s = Self { rho, u };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(Error::InvalidInput(format!("density must be finite and > 0, got {}", self.rho)));
        }
        if !self.u.is_finite() {
            return Err(Error::InvalidInput(format!("velocity must be finite, got {}", self.u)));
        }
        Ok(())
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.u
    }
}

/// The Dirac part of a sampled density: weight `w` concentrated at `x_pos`, moving with `u_delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Singular {
    pub x_pos: f64,
    pub weight: f64,
    pub u_delta: f64,
}

/// A solution sampled at a fixed time.
///
/// `rho` and `u` hold the bounded part on `grid`; a delta-shock contributes
/// only through `singular` and is never rasterized onto the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub t: f64,
    pub grid: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub singular: Option<Singular>,
}

impl Profile {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn momentum(&self) -> Vec<f64> {
        self.rho.iter().zip(&self.u).map(|(r, u)| r * u).collect()
    }
}

/// Rejects grids that are not strictly increasing or contain non-finite points.
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("grid contains non-finite points".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("grid must be strictly increasing".into()));
    }
    Ok(())
}

pub(crate) fn check_sample_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidTime(t));
    }
    Ok(())
}

/// `n` equally spaced points covering [a, b].
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { b } else { a + h * i as f64 }).collect()
        }
    }
}
