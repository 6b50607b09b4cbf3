//! Canonical representatives of coin setups.
//!
//! Two setups are *distributionally equivalent* when their spatial
//! distributions agree at every step, and *asymptotically equivalent* when
//! their rescaled limits agree. The maps below pick one setup per class
//! (surjectively for the former, bijectively for the latter).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use serde::Serialize;

use crate::coin::{is_symmetric, is_trivial, lambda_of, reduce_angle, CoinSetup, ANGLE_TOL};
use crate::error::{Error, Result};
use crate::quantum::{distribution, initial_state, step};

/// Restriction of an angle in `[0, 2pi)` to `[0, pi/2]` preserving `cos^2` and `sin^2`.
pub fn rho(x: f64) -> Result<f64> {
    if !x.is_finite() || !(0.0..TAU).contains(&x) {
        return Err(Error::domain("x", x, "[0, 2pi)"));
    }
    Ok(if x < FRAC_PI_2 {
        x
    } else if x < PI {
        PI - x
    } else if x < 3.0 * FRAC_PI_2 {
        x - PI
    } else {
        TAU - x
    })
}

fn rho_of(setup: &CoinSetup) -> f64 {
    rho(setup.theta()).expect("validated theta")
}

/// Representative of a symmetric class, determined by `theta` alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalSymmetric {
    pub theta: f64,
}

impl CanonicalSymmetric {
    pub fn to_setup(&self) -> CoinSetup {
        CoinSetup::symmetric_representative(self.theta).expect("theta in [0, pi/2]")
    }
}

/// Representative `(varphi, xi, theta)` with `phi1 = phi2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalTriple {
    pub varphi: f64,
    pub xi: f64,
    pub theta: f64,
}

impl CanonicalTriple {
    pub fn to_setup(&self) -> CoinSetup {
        CoinSetup::new(self.theta, 0.0, 0.0, self.varphi, self.xi).expect("canonical ranges")
    }
}

/// Representative of an asymptotic class, with `xi ∈ {0, pi}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticTriple {
    varphi: f64,
    xi: f64,
    theta: f64,
}

impl AsymptoticTriple {
    /// Accepts only points of the region
    /// `xi = 0, varphi ∈ [theta/2, pi/4 + theta/2]` or
    /// `xi = pi, varphi ∈ (pi/4 - theta/2, (pi - theta)/2]`, with `theta ∈ (0, pi/2)`.
    pub fn new(varphi: f64, xi: f64, theta: f64) -> Result<Self> {
        let tol = ANGLE_TOL;
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(Error::domain("theta", theta, "(0, pi/2)"));
        }
        let ok = if xi == 0.0 {
            varphi >= 0.5 * theta - tol && varphi <= FRAC_PI_4 + 0.5 * theta + tol
        } else if xi == PI {
            varphi > FRAC_PI_4 - 0.5 * theta - tol && varphi <= 0.5 * (PI - theta) + tol
        } else {
            return Err(Error::domain("xi", xi, "{0, pi}"));
        };
        if ok {
            Ok(AsymptoticTriple { varphi, xi, theta })
        } else {
            Err(Error::domain("varphi", varphi, "the asymptotic region for this xi"))
        }
    }

    pub fn varphi(&self) -> f64 {
        self.varphi
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_setup(&self) -> CoinSetup {
        let varphi = self.varphi.clamp(0.0, FRAC_PI_2);
        CoinSetup::new(self.theta, 0.0, 0.0, varphi, self.xi).expect("region lies in domain")
    }
}

pub fn canonical_symmetric(setup: &CoinSetup) -> Result<CanonicalSymmetric> {
    if !is_symmetric(setup) {
        return Err(Error::Precondition("canonical_symmetric needs a symmetric setup"));
    }
    Ok(CanonicalSymmetric {
        theta: rho_of(setup),
    })
}

/// Drops `phi1` and `phi2` and restricts `theta` and `xi`.
///
/// The distribution sees `xi` only through `cos(theta) sin(theta) cos(xi - phi2)`.
/// Folding `theta` into `[0, pi/2]` makes the first factor nonnegative, so
/// `xi` is reflected onto `[0, pi]` with the sign of the original product
/// carried over.
pub fn canonical_distributional(setup: &CoinSetup) -> CanonicalTriple {
    let theta = rho_of(setup);
    let d = reduce_angle(setup.xi() - setup.phi2(), TAU);
    let (s, c) = setup.theta().sin_cos();
    let xi = if s * c >= 0.0 {
        if d <= PI {
            d
        } else {
            TAU - d
        }
    } else if d <= PI {
        PI - d
    } else {
        d - PI
    };
    CanonicalTriple {
        varphi: setup.varphi(),
        xi,
        theta,
    }
}

pub fn canonical_asymptotic(setup: &CoinSetup) -> Result<AsymptoticTriple> {
    if is_trivial(setup) {
        return Err(Error::NoLimitingDistribution);
    }
    let theta = rho_of(setup);
    let lambda = lambda_of(setup)?;
    let spread = (lambda * theta.cos()).clamp(-1.0, 1.0).acos();
    let (varphi, xi) = if lambda >= 0.0 {
        (0.5 * (theta + spread), 0.0)
    } else {
        (0.5 * (spread - theta), PI)
    };
    AsymptoticTriple::new(varphi, xi, theta)
}

/// `sup_{n <= n_max, j} |p_1(j, n) - p_2(j, n)|` by direct evolution.
pub fn max_distribution_gap(s1: &CoinSetup, s2: &CoinSetup, n_max: usize) -> f64 {
    let (c1, c2) = (s1.coin(), s2.coin());
    let mut w1 = initial_state(s1);
    let mut w2 = initial_state(s2);
    let mut gap = distribution(&w1).max_abs_diff(&distribution(&w2));
    for _ in 0..n_max {
        w1 = step(&w1, &c1);
        w2 = step(&w2, &c2);
        gap = gap.max(distribution(&w1).max_abs_diff(&distribution(&w2)));
    }
    gap
}

pub fn distributions_equal_up_to(s1: &CoinSetup, s2: &CoinSetup, n_max: usize, tol: f64) -> bool {
    max_distribution_gap(s1, s2, n_max) <= tol
}

/// Number of grid cells `[xi_k, xi_{k+1})` of a cyclic grid of spacing `step`
/// over `[0, 2pi)` on which `Re(a alpha conj(b beta))` vanishes, at `varphi = pi/4`.
pub fn count_symmetric_xi(theta: f64, phi1: f64, phi2: f64, step: f64) -> Result<usize> {
    if !(step > 0.0 && step < PI) {
        return Err(Error::domain("step", step, "(0, pi)"));
    }
    let cross = |xi: f64| -> Result<f64> {
        let s = CoinSetup::new(theta, phi1, phi2, FRAC_PI_4, xi)?;
        let (coin, st) = (s.coin(), s.state());
        Ok((coin.a * st.alpha * (coin.b * st.beta).conj()).re)
    };
    let cells = (TAU / step).ceil() as usize;
    let values = (0..cells)
        .map(|k| cross((k as f64 * step).min(TAU - f64::EPSILON)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..cells)
        .filter(|&k| {
            let (here, next) = (values[k], values[(k + 1) % cells]);
            here == 0.0 || here * next < 0.0
        })
        .count())
}

/// Everything the classifiers say about one setup.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub setup: CoinSetup,
    pub symmetric: bool,
    pub trivial: bool,
    pub lambda: Option<f64>,
    pub canonical: CanonicalTriple,
    pub canonical_symmetric: Option<CanonicalSymmetric>,
    pub asymptotic: Option<AsymptoticTriple>,
    pub note: Option<String>,
}

pub fn classify(setup: &CoinSetup) -> Classification {
    let trivial = is_trivial(setup);
    let asymptotic = canonical_asymptotic(setup).ok();
    let note = trivial.then(|| {
        "trivial coin: the walk is ballistic or oscillating, no limiting density".to_string()
    });
    Classification {
        setup: *setup,
        symmetric: is_symmetric(setup),
        trivial,
        lambda: lambda_of(setup).ok(),
        canonical: canonical_distributional(setup),
        canonical_symmetric: canonical_symmetric(setup).ok(),
        asymptotic,
        note,
    }
}

impl Classification {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }
}
