//! Direct state-vector evolution of the coined walk.
//!
//! This is the reference every closed form in the crate is checked against.

use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::coin::{CoinMatrix, CoinSetup};
use crate::error::{Error, Result};
use crate::io::{csv, num};
use crate::lattice::{shift_step, site, slot};

/// Amplitudes `(alpha_j, beta_j)` after `n` steps, stored densely over `[-n, n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    n: usize,
    alpha: Vec<Complex64>,
    beta: Vec<Complex64>,
}

impl WalkState {
    pub(crate) fn from_parts(n: usize, alpha: Vec<Complex64>, beta: Vec<Complex64>) -> Self {
        assert_eq!(alpha.len(), 2 * n + 1);
        assert_eq!(beta.len(), 2 * n + 1);
        WalkState { n, alpha, beta }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Amplitude pair at site `j`; zero outside `[-n, n]`.
    pub fn amplitude(&self, j: i64) -> (Complex64, Complex64) {
        slot(j, self.n)
            .map(|i| (self.alpha[i], self.beta[i]))
            .unwrap_or_default()
    }

    /// `(j, alpha_j, beta_j)` for every site in the window, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64, Complex64)> + '_ {
        self.alpha
            .iter()
            .zip(&self.beta)
            .enumerate()
            .map(move |(i, (&a, &b))| (site(i, self.n), a, b))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.iter().map(|(_, a, b)| a.norm_sqr() + b.norm_sqr()).sum()
    }

    /// Largest per-amplitude modulus difference against another state at the same step.
    pub fn max_deviation(&self, other: &WalkState) -> f64 {
        assert_eq!(self.n, other.n, "states at different steps");
        self.iter()
            .zip(other.iter())
            .map(|((_, a1, b1), (_, a2, b2))| (a1 - a2).norm().max((b1 - b2).norm()))
            .fold(0.0, f64::max)
    }

    /// CSV `j,re_alpha,im_alpha,re_beta,im_beta` over the whole window.
    pub fn to_csv(&self) -> String {
        csv(
            "j,re_alpha,im_alpha,re_beta,im_beta",
            self.iter()
                .map(|(j, a, b)| [j.to_string(), num(a.re), num(a.im), num(b.re), num(b.im)]),
        )
    }
}

/// Normalised probability mass over sites after `n` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialDistribution {
    n: usize,
    pmf: Vec<f64>,
}

impl SpatialDistribution {
    /// Builds a distribution over `[-n, n]`; tiny negative values from
    /// cancellation are clamped to zero.
    pub fn new(n: usize, mut pmf: Vec<f64>) -> Result<Self> {
        if pmf.len() != 2 * n + 1 {
            return Err(Error::Parse(format!(
                "pmf has {} entries, expected {}",
                pmf.len(),
                2 * n + 1
            )));
        }
        for p in &mut pmf {
            if !p.is_finite() || *p < -1e-15 {
                return Err(Error::domain("pmf", *p, "[0, 1]"));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        Ok(SpatialDistribution { n, pmf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prob(&self, j: i64) -> f64 {
        slot(j, self.n).map(|i| self.pmf[i]).unwrap_or(0.0)
    }

    /// `(j, p)` for every site in `[-n, n]`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.pmf.iter().enumerate().map(move |(i, &p)| (site(i, self.n), p))
    }

    /// Sites carrying positive mass.
    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.iter().filter(|&(_, p)| p > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.pmf.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(j, p)| j as f64 * p).sum()
    }

    /// `sum j^2 p(j)`; unlike the variance this does not depend on the coin state.
    pub fn second_moment(&self) -> f64 {
        self.iter().map(|(j, p)| (j * j) as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        variance(self)
    }

    pub fn max_abs_diff(&self, other: &SpatialDistribution) -> f64 {
        let n = self.n.max(other.n) as i64;
        (-n..=n)
            .map(|j| (self.prob(j) - other.prob(j)).abs())
            .fold(0.0, f64::max)
    }

    /// Whether `p(j) = p(-j)` for all `j` up to `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.n as i64;
        (1..=n).all(|j| (self.prob(j) - self.prob(-j)).abs() <= tol)
    }

    /// CSV `j,p` over the support, ascending.
    pub fn to_csv(&self) -> String {
        csv("j,p", self.support().map(|(j, p)| [j.to_string(), num(p)]))
    }

    /// JSON `{"n": .., "pmf": {"j": p, ..}}` over the support, ascending.
    pub fn to_json(&self) -> String {
        let mut pmf = Map::new();
        for (j, p) in self.support() {
            pmf.insert(j.to_string(), Value::from(p));
        }
        let mut obj = Map::new();
        obj.insert("n".into(), Value::from(self.n));
        obj.insert("pmf".into(), Value::Object(pmf));
        Value::Object(obj).to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let entries = v["pmf"].as_object().ok_or_else(|| bad("missing pmf"))?;
        let mut pmf = vec![0.0; 2 * n + 1];
        for (k, p) in entries {
            let j: i64 = k.parse().map_err(|_| bad("non-integer site"))?;
            let i = slot(j, n).ok_or_else(|| bad("site outside [-n, n]"))?;
            pmf[i] = p.as_f64().ok_or_else(|| bad("non-numeric probability"))?;
        }
        SpatialDistribution::new(n, pmf)
    }
}

/// Spatial variance `sum j^2 p(j) - (sum j p(j))^2`.
pub fn variance(dist: &SpatialDistribution) -> f64 {
    let (m1, m2) = dist.iter().fold((0.0, 0.0), |(m1, m2), (j, p)| {
        let j = j as f64;
        (m1 + j * p, m2 + j * j * p)
    });
    m2 - m1 * m1
}

/// The particle at the origin in the setup's coin state.
pub fn initial_state(setup: &CoinSetup) -> WalkState {
    let s = setup.state();
    WalkState::from_parts(0, vec![s.alpha], vec![s.beta])
}

/// One application of the walk operator: coin toss, then conditional shift.
pub fn step(state: &WalkState, coin: &CoinMatrix) -> WalkState {
    let (alpha, beta) = shift_step(&state.alpha, &state.beta, coin.as_array());
    WalkState {
        n: state.n + 1,
        alpha,
        beta,
    }
}

pub fn evolve(setup: &CoinSetup, n: usize) -> WalkState {
    evolve_with(setup, n, |_| {})
}

/// Like [`evolve`], calling `visit` on every intermediate state including
/// the initial and the final one.
pub fn evolve_with<F>(setup: &CoinSetup, n: usize, mut visit: F) -> WalkState
where
    F: FnMut(&WalkState),
{
    let coin = setup.coin();
    let mut state = initial_state(setup);
    visit(&state);
    for _ in 0..n {
        state = step(&state, &coin);
        visit(&state);
    }
    state
}

pub fn distribution(state: &WalkState) -> SpatialDistribution {
    let pmf = state
        .iter()
        .map(|(_, a, b)| a.norm_sqr() + b.norm_sqr())
        .collect();
    SpatialDistribution::new(state.n, pmf).expect("squared moduli are valid probabilities")
}

/// Variance of the spatial distribution at every step `0..=n`.
pub fn variance_series(setup: &CoinSetup, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    evolve_with(setup, n, |s| out.push(variance(&distribution(s))));
    out
}
