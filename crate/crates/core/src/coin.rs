//! Coins, coin states and the scalar classifiers built from them.
//!
//! Coins are special unitaries in Hopf coordinates `(theta, phi1, phi2)`:
//!
//! ```text
//! a =  cos(theta) e^{ i(phi1+phi2)/2}    b = sin(theta) e^{ i(phi1-phi2)/2}
//! c = -sin(theta) e^{-i(phi1-phi2)/2}    d = cos(theta) e^{-i(phi1+phi2)/2}
//! ```
//!
//! and coin states are `(cos(varphi), sin(varphi) e^{i xi})`. Neither carries a
//! global phase, since it never shows up in a spatial distribution.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for angle comparisons after reduction.
pub const ANGLE_TOL: f64 = 1e-12;

/// Reduces `x` into `[0, period)`.
pub fn reduce_angle(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can return `period` itself for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Whether `x ≡ y (mod period)` up to [`ANGLE_TOL`].
pub fn congruent(x: f64, y: f64, period: f64) -> bool {
    let r = reduce_angle(x - y, period);
    r <= ANGLE_TOL || period - r <= ANGLE_TOL
}

fn check(field: &'static str, value: f64, lo: f64, hi: f64, closed: bool) -> Result<()> {
    let domain = match (field, closed) {
        ("theta" | "xi", _) => "[0, 2pi)",
        ("phi1" | "phi2", _) => "[0, pi)",
        ("varphi", _) => "[0, pi/2]",
        _ => "its domain",
    };
    let ok = value.is_finite() && value >= lo && if closed { value <= hi } else { value < hi };
    if ok {
        Ok(())
    } else {
        Err(Error::domain(field, value, domain))
    }
}

/// The five angles that fully specify a coined walk started at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSetup")]
pub struct CoinSetup {
    theta: f64,
    phi1: f64,
    phi2: f64,
    varphi: f64,
    xi: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSetup {
    theta: f64,
    phi1: f64,
    phi2: f64,
    varphi: f64,
    xi: f64,
}

impl TryFrom<RawSetup> for CoinSetup {
    type Error = Error;

    fn try_from(r: RawSetup) -> Result<Self> {
        CoinSetup::new(r.theta, r.phi1, r.phi2, r.varphi, r.xi)
    }
}

impl CoinSetup {
    pub fn new(theta: f64, phi1: f64, phi2: f64, varphi: f64, xi: f64) -> Result<Self> {
        check("theta", theta, 0.0, TAU, false)?;
        check("phi1", phi1, 0.0, PI, false)?;
        check("phi2", phi2, 0.0, PI, false)?;
        check("varphi", varphi, 0.0, FRAC_PI_2, true)?;
        check("xi", xi, 0.0, TAU, false)?;
        Ok(CoinSetup {
            theta,
            phi1,
            phi2,
            varphi,
            xi,
        })
    }

    /// The symmetric representative with real coin entries: `phi1 = phi2 = 0`,
    /// coin state `(|up> + i|down>)/sqrt(2)`.
    pub fn symmetric_representative(theta: f64) -> Result<Self> {
        CoinSetup::new(theta, 0.0, 0.0, FRAC_PI_4, FRAC_PI_2)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn phi1(&self) -> f64 {
        self.phi1
    }
    pub fn phi2(&self) -> f64 {
        self.phi2
    }
    pub fn varphi(&self) -> f64 {
        self.varphi
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn coin(&self) -> CoinMatrix {
        CoinMatrix::from_hopf(self.theta, self.phi1, self.phi2)
    }

    pub fn state(&self) -> CoinState {
        CoinState::from_angles(self.varphi, self.xi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("setup serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A special-unitary 2x2 coin `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl CoinMatrix {
    fn from_hopf(theta: f64, phi1: f64, phi2: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let sum = Complex64::from_polar(1.0, 0.5 * (phi1 + phi2));
        let diff = Complex64::from_polar(1.0, 0.5 * (phi1 - phi2));
        CoinMatrix {
            a: sum * c,
            b: diff * s,
            c: -diff.conj() * s,
            d: sum.conj() * c,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Largest entry of `|C^dagger C - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = [[self.a, self.b], [self.c, self.d]];
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    s += m[k][i].conj() * m[k][j];
                }
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn as_array(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

/// Builds the coin for Hopf coordinates `theta ∈ [0, 2pi)`, `phi1, phi2 ∈ [0, pi)`.
pub fn build_coin(theta: f64, phi1: f64, phi2: f64) -> Result<CoinMatrix> {
    check("theta", theta, 0.0, TAU, false)?;
    check("phi1", phi1, 0.0, PI, false)?;
    check("phi2", phi2, 0.0, PI, false)?;
    Ok(CoinMatrix::from_hopf(theta, phi1, phi2))
}

/// Initial coin state `alpha |up> + beta |down>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinState {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl CoinState {
    fn from_angles(varphi: f64, xi: f64) -> Self {
        let (s, c) = varphi.sin_cos();
        CoinState {
            alpha: Complex64::new(c, 0.0),
            beta: Complex64::from_polar(s, xi),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }
}

pub fn build_coin_state(varphi: f64, xi: f64) -> Result<CoinState> {
    check("varphi", varphi, 0.0, FRAC_PI_2, true)?;
    check("xi", xi, 0.0, TAU, false)?;
    Ok(CoinState::from_angles(varphi, xi))
}

/// `abcd = 0`, i.e. theta is a multiple of pi/2.
pub fn theta_is_trivial(theta: f64) -> bool {
    congruent(theta, 0.0, FRAC_PI_2)
}

pub fn is_trivial(setup: &CoinSetup) -> bool {
    theta_is_trivial(setup.theta)
}

/// The asymmetry parameter of the limiting density,
/// `|alpha|^2 - |beta|^2 + 2 Re(a alpha conj(b beta)) / |a|^2`.
///
/// Defined whenever `|a| != 0`; for trivial coins with `b = c = 0` it reduces
/// to `cos(2 varphi)`.
pub fn lambda_of(setup: &CoinSetup) -> Result<f64> {
    if congruent(setup.theta, FRAC_PI_2, PI) {
        return Err(Error::SingularCoin("lambda needs |a| > 0"));
    }
    let coin = setup.coin();
    let state = setup.state();
    let cross = coin.a * state.alpha * (coin.b * state.beta).conj();
    Ok(state.alpha.norm_sqr() - state.beta.norm_sqr() + 2.0 * cross.re / coin.a.norm_sqr())
}

/// `cos(2 varphi) + sin(2 varphi) tan(theta) cos(xi)`, the form of [`lambda_of`]
/// for setups with `phi1 = phi2 = 0`.
pub fn lambda_real_representative(theta: f64, varphi: f64, xi: f64) -> f64 {
    (2.0 * varphi).cos() + (2.0 * varphi).sin() * theta.tan() * xi.cos()
}

/// Whether the walk is spatially symmetric in distribution at every step.
pub fn is_symmetric(setup: &CoinSetup) -> bool {
    if (setup.varphi - FRAC_PI_4).abs() > ANGLE_TOL {
        return false;
    }
    is_trivial(setup) || congruent(setup.phi2, FRAC_PI_2 + setup.xi, PI)
}

/// Coin states (at `varphi = pi/4`) that make a coin symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetricStates {
    /// Exactly these two `xi` values, ascending, in `[0, 2pi)`.
    Two([f64; 2]),
    /// Trivial coin: every `xi` works.
    AnyXi,
}

impl SymmetricStates {
    pub fn admits(&self, xi: f64) -> bool {
        match self {
            SymmetricStates::Two(v) => v.iter().any(|&x| congruent(x, xi, TAU)),
            SymmetricStates::AnyXi => true,
        }
    }
}

pub fn symmetric_coin_states(theta: f64, phi1: f64, phi2: f64) -> Result<SymmetricStates> {
    build_coin(theta, phi1, phi2)?;
    if theta_is_trivial(theta) {
        return Ok(SymmetricStates::AnyXi);
    }
    let first = reduce_angle(phi2 - FRAC_PI_2, PI);
    Ok(SymmetricStates::Two([first, first + PI]))
}
