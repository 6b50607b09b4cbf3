//! Limiting densities of the rescaled walks.
//!
//! For a non-trivial coin, `X_n / n` converges weakly to a law on `(-|a|, |a|)`
//! with density
//!
//! ```text
//! f(x) = sqrt(1 - a^2) (1 - lambda x) / (pi (1 - x^2) sqrt(a^2 - x^2))
//! ```
//!
//! The correlated classical walk instead converges after `sqrt(n)` scaling, to
//! a centred Gaussian of variance `(1 + delta)/(1 - delta)`.
//!
//! Integrals use `x = a sin(u)`, which cancels the inverse square root at both
//! endpoints and leaves a smooth integrand on `(-pi/2, pi/2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::classical::{evolve as classical_evolve, marginal, CorrelationParams};
use crate::coin::{is_trivial, lambda_of, theta_is_trivial, CoinSetup};
use crate::error::{Error, Result};
use crate::quantum::{distribution, evolve, SpatialDistribution};

/// Absolute tolerance requested from each quadrature call.
pub const QUAD_TOL: f64 = 1e-12;
/// Bisection depth before giving up on a quadrature.
pub const QUAD_MAX_DEPTH: u32 = 12;

/// Slack on `|lambda| <= 1/|a|`.
const LAMBDA_SLACK: f64 = 1e-12;

/// Support half-width `|a|` and tilt `lambda` of the limiting density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitParams {
    a_abs: f64,
    lambda: f64,
}

impl LimitParams {
    pub fn new(a_abs: f64, lambda: f64) -> Result<Self> {
        if !(a_abs > 0.0 && a_abs < 1.0) {
            return Err(Error::domain("a_abs", a_abs, "(0, 1)"));
        }
        if !lambda.is_finite() || lambda.abs() > 1.0 / a_abs + LAMBDA_SLACK {
            return Err(Error::LambdaOutOfBound {
                lambda,
                bound: 1.0 / a_abs,
            });
        }
        Ok(LimitParams { a_abs, lambda })
    }

    /// `(|cos theta|, lambda)` for a coin angle and an explicit tilt.
    pub fn from_theta(theta: f64, lambda: f64) -> Result<Self> {
        if theta_is_trivial(theta) {
            return Err(Error::NoLimitingDistribution);
        }
        LimitParams::new(theta.cos().abs(), lambda)
    }

    /// `(|cos theta|, lambda_of(setup))`, the coin's own asymmetry parameter.
    pub fn of_coin(setup: &CoinSetup) -> Result<Self> {
        if is_trivial(setup) {
            return Err(Error::NoLimitingDistribution);
        }
        LimitParams::new(setup.theta().cos().abs(), lambda_of(setup)?)
    }

    /// Parameters of the density that the simulated walk converges to.
    ///
    /// Up-spin moves right here, which mirrors the density in `x`: the walk
    /// with coin parameter `lambda` follows the density with tilt `-lambda`.
    pub fn of_walk(setup: &CoinSetup) -> Result<Self> {
        let p = LimitParams::of_coin(setup)?;
        Ok(p.mirrored())
    }

    /// `f(x; lambda) -> f(-x; lambda) = f(x; -lambda)`.
    pub fn mirrored(&self) -> Self {
        LimitParams {
            a_abs: self.a_abs,
            lambda: -self.lambda,
        }
    }

    pub fn a_abs(&self) -> f64 {
        self.a_abs
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Integrand after `x = a sin(u)`: `f(x) dx = g(u) du`.
    fn substituted(&self, u: f64) -> f64 {
        let (a, b) = (self.a_abs, (1.0 - self.a_abs * self.a_abs).sqrt());
        let s = u.sin();
        let tilt = (1.0 - self.lambda * a * s).max(0.0);
        b * tilt / (PI * (1.0 - a * a * s * s))
    }

    fn u_of(&self, x: f64) -> f64 {
        (x / self.a_abs).clamp(-1.0, 1.0).asin()
    }
}

pub fn density(p: &LimitParams, x: f64) -> f64 {
    let a = p.a_abs;
    if !(x.abs() < a) {
        return 0.0;
    }
    let b = (1.0 - a * a).sqrt();
    let tilt = (1.0 - p.lambda * x).max(0.0);
    b * tilt / (PI * (1.0 - x * x) * (a * a - x * x).sqrt())
}

/// Samples of the density on `grid`.
pub fn density_curve(p: &LimitParams, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter().map(|&x| (x, density(p, x))).collect()
}

fn integrate<F>(f: &F, lo: f64, hi: f64, tol: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if hi <= lo {
        return Ok(0.0);
    }
    let out = quadrature::integrate(f, lo, hi, tol);
    if out.integral.is_finite() && out.error_estimate <= tol {
        return Ok(out.integral);
    }
    if depth == 0 {
        return Err(Error::Quadrature {
            estimate: out.error_estimate,
            target: tol,
        });
    }
    let mid = 0.5 * (lo + hi);
    Ok(integrate(f, lo, mid, 0.5 * tol, depth - 1)? + integrate(f, mid, hi, 0.5 * tol, depth - 1)?)
}

fn integrate_u<F>(f: F, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(&f, lo, hi, QUAD_TOL, QUAD_MAX_DEPTH)
}

/// `∫ f dx` over the support; 1 up to quadrature error.
pub fn integrate_density(p: &LimitParams) -> Result<f64> {
    integrate_u(|u| p.substituted(u), -FRAC_PI_2, FRAC_PI_2)
}

/// `∫ x f(x) dx`.
pub fn limit_mean(p: &LimitParams) -> Result<f64> {
    integrate_u(|u| p.a_abs * u.sin() * p.substituted(u), -FRAC_PI_2, FRAC_PI_2)
}

/// `∫_{-a}^{x} f`.
pub fn limit_cdf(p: &LimitParams, x: f64) -> Result<f64> {
    if x <= -p.a_abs {
        return Ok(0.0);
    }
    if x >= p.a_abs {
        return Ok(1.0);
    }
    integrate_u(|u| p.substituted(u), -FRAC_PI_2, p.u_of(x))
}

/// Sup distance between the step CDF of `dist` read at `x = j / scale` and a
/// continuous CDF, over the jump points of the former.
fn sup_cdf_distance<F>(dist: &SpatialDistribution, scale: f64, mut cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut below = 0.0;
    let mut worst: f64 = 0.0;
    for (j, p) in dist.support() {
        let limit = cdf(j as f64 / scale)?;
        let above = below + p;
        worst = worst.max((below - limit).abs()).max((above - limit).abs());
        below = above;
    }
    Ok(worst)
}

/// Empirical CDF of `j / n` as `(x, F(x))` at the jump points.
pub fn empirical_cdf(dist: &SpatialDistribution) -> Vec<(f64, f64)> {
    let n = dist.n().max(1) as f64;
    let mut acc = 0.0;
    dist.support()
        .map(|(j, p)| {
            acc += p;
            (j as f64 / n, acc)
        })
        .collect()
}

/// Sup distance between the CDF of `X_n / n` and the limiting CDF.
pub fn empirical_vs_limit(setup: &CoinSetup, n: usize) -> Result<f64> {
    let p = LimitParams::of_walk(setup)?;
    if n == 0 {
        return Err(Error::domain("n", 0.0, "n >= 1"));
    }
    let dist = distribution(&evolve(setup, n));
    // accumulate the limit CDF between consecutive jump points
    let mut u_prev = -FRAC_PI_2;
    let mut acc = 0.0;
    sup_cdf_distance(&dist, n as f64, |x| {
        if x <= -p.a_abs {
            return Ok(0.0);
        }
        if x >= p.a_abs {
            return Ok(1.0);
        }
        let u = p.u_of(x);
        acc += integrate_u(|v| p.substituted(v), u_prev, u)?;
        u_prev = u;
        Ok(acc)
    })
}

/// Rescaled pmf as a density: `x = j / scale`, `f = scale p / 2` (sites of
/// one parity are two apart).
pub fn rescaled_density(dist: &SpatialDistribution, scale: f64) -> Vec<(f64, f64)> {
    dist.support()
        .map(|(j, p)| (j as f64 / scale, 0.5 * scale * p))
        .collect()
}

fn gaussian(delta: f64) -> Result<Normal> {
    if !(delta > -1.0 && delta < 1.0) {
        return Err(Error::domain("delta", delta, "(-1, 1)"));
    }
    let sd = ((1.0 + delta) / (1.0 - delta)).sqrt();
    Ok(Normal::new(0.0, sd).expect("positive standard deviation"))
}

/// Centred Gaussian density with variance `(1 + delta)/(1 - delta)`, the limit
/// of `X_n / sqrt(n)` for the correlated walk.
pub fn classical_limit_density(delta: f64, x: f64) -> Result<f64> {
    Ok(gaussian(delta)?.pdf(x))
}

pub fn classical_limit_cdf(delta: f64, x: f64) -> Result<f64> {
    Ok(gaussian(delta)?.cdf(x))
}

/// Sup distance between the CDF of `X_n / sqrt(n)` (walk started with
/// direction pmf `(1/2, 1/2)`) and its Gaussian limit.
pub fn classical_empirical_vs_limit(delta: f64, n: usize) -> Result<f64> {
    let g = gaussian(delta)?;
    if n == 0 {
        return Err(Error::domain("n", 0.0, "n >= 1"));
    }
    let dist = marginal(&classical_evolve(&CorrelationParams::symmetric(delta)?, n));
    sup_cdf_distance(&dist, (n as f64).sqrt(), |x| Ok(g.cdf(x)))
}
