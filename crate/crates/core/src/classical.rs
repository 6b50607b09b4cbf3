//! Correlated (persistent) classical random walk on the line.
//!
//! The state is a probability mass over `(site, direction)`. Each step first
//! keeps the direction with probability `(1 + delta)/2` and flips it otherwise,
//! then moves up-mass one site right and down-mass one site left.

use crate::error::{Error, Result};
use crate::io::{csv, num};
use crate::lattice::{shift_step, site, slot};
use crate::quantum::SpatialDistribution;

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && (-1.0..=1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::domain("delta", delta, "[-1, 1]"))
    }
}

/// Correlation coefficient and initial direction pmf `(up, down)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationParams {
    delta: f64,
    up: f64,
    down: f64,
}

impl CorrelationParams {
    pub fn new(delta: f64, up: f64, down: f64) -> Result<Self> {
        check_delta(delta)?;
        for (field, v) in [("q0_up", up), ("q0_down", down)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(field, v, "[0, 1]"));
            }
        }
        if (up + down - 1.0).abs() > 1e-12 {
            return Err(Error::domain("q0_up + q0_down", up + down, "{1}"));
        }
        Ok(CorrelationParams { delta, up, down })
    }

    /// Direction pmf `(q0_up, 1 - q0_up)`.
    pub fn with_up(delta: f64, q0_up: f64) -> Result<Self> {
        CorrelationParams::new(delta, q0_up, 1.0 - q0_up)
    }

    pub fn symmetric(delta: f64) -> Result<Self> {
        CorrelationParams::new(delta, 0.5, 0.5)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn up(&self) -> f64 {
        self.up
    }
    pub fn down(&self) -> f64 {
        self.down
    }
}

/// Velocity transition matrix `[[(1+d)/2, (1-d)/2], [(1-d)/2, (1+d)/2]]`.
pub fn transition_matrix(delta: f64) -> Result<[[f64; 2]; 2]> {
    check_delta(delta)?;
    let stay = 0.5 * (1.0 + delta);
    let flip = 0.5 * (1.0 - delta);
    Ok([[stay, flip], [flip, stay]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalJointState {
    n: usize,
    up: Vec<f64>,
    down: Vec<f64>,
}

impl ClassicalJointState {
    pub(crate) fn from_parts(n: usize, up: Vec<f64>, down: Vec<f64>) -> Self {
        assert_eq!(up.len(), 2 * n + 1);
        assert_eq!(down.len(), 2 * n + 1);
        ClassicalJointState { n, up, down }
    }

    pub fn initial(params: &CorrelationParams) -> Self {
        ClassicalJointState::from_parts(0, vec![params.up], vec![params.down])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(mass(j, up), mass(j, down))`; zero outside the window.
    pub fn mass(&self, j: i64) -> (f64, f64) {
        slot(j, self.n)
            .map(|i| (self.up[i], self.down[i]))
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        self.up
            .iter()
            .zip(&self.down)
            .enumerate()
            .map(move |(i, (&u, &d))| (site(i, self.n), u, d))
    }

    pub fn total(&self) -> f64 {
        self.up.iter().chain(&self.down).sum()
    }

    pub fn max_deviation(&self, other: &ClassicalJointState) -> f64 {
        assert_eq!(self.n, other.n, "states at different steps");
        self.iter()
            .zip(other.iter())
            .map(|((_, u1, d1), (_, u2, d2))| (u1 - u2).abs().max((d1 - d2).abs()))
            .fold(0.0, f64::max)
    }

    /// CSV `j,p_up,p_down` over the whole window.
    pub fn to_csv(&self) -> String {
        csv(
            "j,p_up,p_down",
            self.iter().map(|(j, u, d)| [j.to_string(), num(u), num(d)]),
        )
    }
}

pub fn step(state: &ClassicalJointState, delta: f64) -> Result<ClassicalJointState> {
    let m = transition_matrix(delta)?;
    let (up, down) = shift_step(&state.up, &state.down, m);
    Ok(ClassicalJointState {
        n: state.n + 1,
        up,
        down,
    })
}

pub fn evolve(params: &CorrelationParams, n: usize) -> ClassicalJointState {
    evolve_with(params, n, |_| {})
}

pub fn evolve_with<F>(params: &CorrelationParams, n: usize, mut visit: F) -> ClassicalJointState
where
    F: FnMut(&ClassicalJointState),
{
    let m = transition_matrix(params.delta).expect("validated delta");
    let mut state = ClassicalJointState::initial(params);
    visit(&state);
    for _ in 0..n {
        let (up, down) = shift_step(&state.up, &state.down, m);
        state = ClassicalJointState {
            n: state.n + 1,
            up,
            down,
        };
        visit(&state);
    }
    state
}

/// Spatial marginal `p(j) = mass(j, up) + mass(j, down)`.
pub fn marginal(state: &ClassicalJointState) -> SpatialDistribution {
    let pmf = state.iter().map(|(_, u, d)| u + d).collect();
    SpatialDistribution::new(state.n, pmf).expect("stochastic evolution keeps mass nonnegative")
}

/// Variance of the walk started with direction pmf `(1/2, 1/2)`:
/// `(1+d)/(1-d) n - 2d(1 - d^n)/(1-d)^2`, valid for `d ∈ [-1, 1)`.
///
/// At `d = 1` the walk never turns and the variance is exactly `n^2`; callers
/// wanting that case must handle it themselves.
pub fn gillis_variance(delta: f64, n: usize) -> Result<f64> {
    check_delta(delta)?;
    if delta == 1.0 {
        return Err(Error::SingularParameter(
            "gillis_variance is singular at delta = 1 (variance is n^2 there)",
        ));
    }
    let nf = n as f64;
    let one_minus = 1.0 - delta;
    let dn = delta.powf(nf);
    Ok((1.0 + delta) / one_minus * nf - 2.0 * delta * (1.0 - dn) / (one_minus * one_minus))
}

/// Variance at `n` for any `delta ∈ [-1, 1]`, using `n^2` at `delta = 1`.
pub fn symmetric_variance(delta: f64, n: usize) -> Result<f64> {
    if delta == 1.0 {
        Ok((n * n) as f64)
    } else {
        gillis_variance(delta, n)
    }
}
