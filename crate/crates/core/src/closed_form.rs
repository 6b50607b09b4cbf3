//! Closed-form amplitudes and the Fourier / Fibonacci–Horner route to them.
//!
//! Both walks have the same structure in momentum space: one step multiplies
//! the transformed state by a 2x2 symbol `C_k` (quantum) or `M_k` (classical),
//! so `n` steps need `C_k^n`. Cayley–Hamilton gives
//! `A^n = f_n I + f_{n-1} (A - c0 I)` with `f_k = c0 f_{k-1} + c1 f_{k-2}`,
//! where `chi(x) = x^2 - c0 x - c1`. Expanding `f_n` in powers of `e^{ik}` and
//! transforming back yields the lattice sums
//!
//! ```text
//! F(N, m) = sum_h kappa(N, m, h) x^h y^{(N-h)/2}
//! ```
//!
//! with `(x, y) = (cos theta, -1)` for the quantum walk and
//! `((1+delta)/2, -delta)` for the classical one. The sums alternate in sign
//! and their terms grow like `(1 + sqrt 2)^N`, so they are accumulated in
//! double-double precision from exact integer prefactors.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::classical::{ClassicalJointState, CorrelationParams};
use crate::coin::CoinSetup;
use crate::error::{Error, Result};
use crate::quantum::WalkState;

/// Amplitude table produced by the closed forms; same layout as a [`WalkState`].
pub type AmplitudeTable = WalkState;

fn binomial_u128(m: u64, k: u64) -> Option<u128> {
    let k = k.min(m - k);
    let mut r: u128 = 1;
    for i in 1..=k as u128 {
        r = r.checked_mul(m as u128 - k as u128 + i)? / i;
    }
    Some(r)
}

fn binomial_big(m: u64, k: u64) -> BigUint {
    let k = k.min(m - k);
    let mut r = BigUint::one();
    for i in 1..=k {
        r = r * BigUint::from(m - k + i) / BigUint::from(i);
    }
    r
}

/// Splits `(n, j, h)` into the multinomial parts `(A; B, C, D)` of kappa, or
/// `None` when any part is negative or fractional.
fn kappa_parts(n: i64, j: i64, h: i64) -> Option<(u64, u64, u64)> {
    let (nh, hm, hp) = (n - h, h - j, h + j);
    if nh < 0 || hm < 0 || hp < 0 || nh % 2 != 0 || hm % 2 != 0 {
        return None;
    }
    let top = ((n + h) / 2) as u64;
    Some((top, (nh / 2) as u64, (hm / 2) as u64))
}

/// Combinatorial prefactor
/// `((n+h)/2)! / [((n-h)/2)! ((h-j)/2)! ((h+j)/2)!]`, zero whenever one of the
/// halves is negative or not an integer.
pub fn kappa(n: i64, j: i64, h: i64) -> BigUint {
    match kappa_parts(n, j, h) {
        None => BigUint::zero(),
        Some((top, b, c)) => binomial_big(top, b) * binomial_big(top - b, c),
    }
}

/// kappa rounded to double-double.
fn kappa_dd(n: i64, j: i64, h: i64) -> TwoFloat {
    let Some((top, b, c)) = kappa_parts(n, j, h) else {
        return TwoFloat::from(0.0);
    };
    let small = binomial_u128(top, b)
        .and_then(|x| binomial_u128(top - b, c).and_then(|y| x.checked_mul(y)));
    match small {
        Some(k) => TwoFloat::from(k),
        None => {
            // beyond u128: split into leading double and exact remainder
            let k = BigInt::from(binomial_big(top, b) * binomial_big(top - b, c));
            let hi = k.to_f64().unwrap_or(f64::INFINITY);
            let lo = BigInt::from_f64(hi)
                .and_then(|r| (k - r).to_f64())
                .unwrap_or(0.0);
            TwoFloat::new_add(hi, lo)
        }
    }
}

/// `F(N, m) = sum_h kappa(N, m, h) x^h y^{(N-h)/2}` for all `m ∈ [-N, N]`,
/// indexed by `m + N`. Empty for negative `N`.
fn lattice_sums(big_n: i64, x: f64, y: f64) -> Vec<TwoFloat> {
    if big_n < 0 {
        return Vec::new();
    }
    let nu = big_n as usize;
    let mut xp = vec![TwoFloat::from(1.0); nu + 1];
    let mut yp = vec![TwoFloat::from(1.0); nu / 2 + 1];
    for h in 1..=nu {
        xp[h] = xp[h - 1] * x;
    }
    for k in 1..yp.len() {
        yp[k] = yp[k - 1] * y;
    }
    (-big_n..=big_n)
        .map(|m| {
            if (big_n - m).rem_euclid(2) != 0 {
                return TwoFloat::from(0.0);
            }
            let mut acc = TwoFloat::from(0.0);
            let mut h = m.abs();
            while h <= big_n {
                let k = kappa_dd(big_n, m, h);
                acc += k * xp[h as usize] * yp[((big_n - h) / 2) as usize];
                h += 2;
            }
            acc
        })
        .collect()
}

fn lookup(sums: &[TwoFloat], big_n: i64, m: i64) -> TwoFloat {
    if big_n < 0 || m.abs() > big_n {
        TwoFloat::from(0.0)
    } else {
        sums[(m + big_n) as usize]
    }
}

/// Closed-form amplitudes of the coined walk after `n` steps.
pub fn quantum_amplitudes_closed(setup: &CoinSetup, n: usize) -> AmplitudeTable {
    let (s, c) = setup.theta().sin_cos();
    let half_sum = 0.5 * (setup.phi1() + setup.phi2());
    let half_diff = 0.5 * (setup.phi1() - setup.phi2());
    let state = setup.state();
    let (alpha0, beta0) = (state.alpha, state.beta);
    let ni = n as i64;

    let outer = lattice_sums(ni, c, -1.0);
    let inner = lattice_sums(ni - 1, c, -1.0);

    let e = |angle: f64| Complex64::from_polar(1.0, angle);
    let mut alpha = Vec::with_capacity(2 * n + 1);
    let mut beta = Vec::with_capacity(2 * n + 1);
    for j in -ni..=ni {
        let s0 = lookup(&outer, ni, j);
        let s_right = lookup(&inner, ni - 1, j + 1);
        let s_left = lookup(&inner, ni - 1, j - 1);
        let jf = j as f64;

        // alpha: same-direction paths (s0 - c s_right) plus a turn from beta
        let same = f64::from(s0 - s_right * c);
        let turn = s * f64::from(s_left);
        alpha.push(
            e(jf * half_sum) * same * alpha0 + e((jf - 1.0) * half_sum + half_diff) * turn * beta0,
        );

        // beta: the turn from alpha carries the coin's -sin(theta)
        let same = f64::from(s0 - s_left * c);
        let turn = -s * f64::from(s_right);
        beta.push(
            e(jf * half_sum) * same * beta0 + e((jf + 1.0) * half_sum - half_diff) * turn * alpha0,
        );
    }
    WalkState::from_parts(n, alpha, beta)
}

/// Closed-form joint components `(r_n(j, up), r_n(j, down))` of the
/// correlated walk with direction pmf `q0 = (up, down)`.
pub fn classical_components_closed(
    delta: f64,
    q0: (f64, f64),
    n: usize,
) -> Result<ClassicalJointState> {
    let params = CorrelationParams::new(delta, q0.0, q0.1)?;
    Ok(classical_closed(&params, n))
}

pub fn classical_closed(params: &CorrelationParams, n: usize) -> ClassicalJointState {
    let delta = params.delta();
    let stay = 0.5 * (1.0 + delta);
    let flip = 0.5 * (1.0 - delta);
    let (a, b) = (params.up(), params.down());
    let ni = n as i64;

    let outer = lattice_sums(ni, stay, -delta);
    let inner = lattice_sums(ni - 1, stay, -delta);

    let mut up = Vec::with_capacity(2 * n + 1);
    let mut down = Vec::with_capacity(2 * n + 1);
    for j in -ni..=ni {
        let s0 = lookup(&outer, ni, j);
        let s_right = lookup(&inner, ni - 1, j + 1);
        let s_left = lookup(&inner, ni - 1, j - 1);
        let u = (s0 - s_right * stay) * a + s_left * flip * b;
        let d = (s0 - s_left * stay) * b + s_right * flip * a;
        // exact zeros stay zero, rounding residue below 0 is clamped
        up.push(f64::from(u).max(0.0));
        down.push(f64::from(d).max(0.0));
    }
    ClassicalJointState::from_parts(n, up, down)
}

/// General complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Mat2([[o, z], [z, o]])
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2::identity() * s
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: Complex64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|z| z * s)))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z += rhs.0[i][j];
            }
        }
        Mat2(out)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs * Complex64::new(-1.0, 0.0)
    }
}

/// Fibonacci–Horner coefficients for `chi(x) = x^2 - c0 x - c1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FHCoefficients {
    pub c0: Complex64,
    pub c1: Complex64,
    /// `f_0 ..= f_n`.
    pub f: Vec<Complex64>,
}

/// `f_0 = 1`, `f_1 = c0`, `f_k = c0 f_{k-1} + c1 f_{k-2}`.
pub fn fib_horner(c0: Complex64, c1: Complex64, n: usize) -> FHCoefficients {
    let mut f = Vec::with_capacity(n + 1);
    f.push(Complex64::new(1.0, 0.0));
    if n >= 1 {
        f.push(c0);
    }
    for k in 2..=n {
        let next = c0 * f[k - 1] + c1 * f[k - 2];
        f.push(next);
    }
    FHCoefficients { c0, c1, f }
}

/// `A^n = f_n I + f_{n-1} (A - c0 I)` with `c0 = tr A`, `c1 = -det A`.
pub fn matrix_power_fh(a: &Mat2, n: usize) -> Mat2 {
    if n == 0 {
        return Mat2::identity();
    }
    let c0 = a.trace();
    let fh = fib_horner(c0, -a.det(), n);
    Mat2::scalar(fh.f[n]) + (*a - Mat2::scalar(c0)) * fh.f[n - 1]
}

/// Momentum-space propagation and inverse transform on a uniform grid of
/// `grid` points `k_m = -pi + 2 pi m / grid`.
///
/// Exact up to rounding as long as `grid > 2n`, since the transformed state
/// is a trigonometric polynomial of degree at most `n`.
fn fourier_propagate<F>(
    n: usize,
    grid: usize,
    init: [Complex64; 2],
    symbol: F,
) -> (Vec<Complex64>, Vec<Complex64>)
where
    F: Fn(f64) -> Mat2,
{
    let ks: Vec<f64> = (0..grid)
        .map(|m| -PI + 2.0 * PI * m as f64 / grid as f64)
        .collect();
    let transformed: Vec<[Complex64; 2]> = ks
        .iter()
        .map(|&k| matrix_power_fh(&symbol(k), n).apply(init))
        .collect();
    let scale = 1.0 / grid as f64;
    let ni = n as i64;
    let mut up = Vec::with_capacity(2 * n + 1);
    let mut down = Vec::with_capacity(2 * n + 1);
    for j in -ni..=ni {
        let mut acc = [Complex64::new(0.0, 0.0); 2];
        for (&k, v) in ks.iter().zip(&transformed) {
            let w = Complex64::from_polar(scale, -k * j as f64);
            acc[0] += w * v[0];
            acc[1] += w * v[1];
        }
        up.push(acc[0]);
        down.push(acc[1]);
    }
    (up, down)
}

fn check_grid(n: usize, grid: usize) -> Result<()> {
    if grid > 2 * n {
        Ok(())
    } else {
        Err(Error::domain(
            "grid",
            grid as f64,
            "more than 2n points (aliasing otherwise)",
        ))
    }
}

/// Quantum symbol `C_k = [[e^{ik} a, e^{ik} b], [e^{-ik} c, e^{-ik} d]]`.
pub fn quantum_symbol(setup: &CoinSetup, k: f64) -> Mat2 {
    let coin = setup.coin();
    let (fw, bw) = (Complex64::from_polar(1.0, k), Complex64::from_polar(1.0, -k));
    Mat2([[fw * coin.a, fw * coin.b], [bw * coin.c, bw * coin.d]])
}

/// Classical symbol `M_k`, the velocity matrix with the same phase pattern.
pub fn classical_symbol(delta: f64, k: f64) -> Mat2 {
    let stay = 0.5 * (1.0 + delta);
    let flip = 0.5 * (1.0 - delta);
    let (fw, bw) = (Complex64::from_polar(1.0, k), Complex64::from_polar(1.0, -k));
    Mat2([[fw * stay, fw * flip], [bw * flip, bw * stay]])
}

/// Amplitudes after `n` steps via `C_k^n` and a discrete inverse transform
/// on `2n + 2` grid points.
pub fn fourier_oracle(setup: &CoinSetup, n: usize) -> AmplitudeTable {
    fourier_oracle_with_grid(setup, n, 2 * n + 2).expect("default grid is large enough")
}

pub fn fourier_oracle_with_grid(setup: &CoinSetup, n: usize, grid: usize) -> Result<AmplitudeTable> {
    check_grid(n, grid)?;
    let s = setup.state();
    let (alpha, beta) = fourier_propagate(n, grid, [s.alpha, s.beta], |k| quantum_symbol(setup, k));
    Ok(WalkState::from_parts(n, alpha, beta))
}

/// Classical joint state via `M_k^n`; imaginary residue is discarded.
pub fn classical_fourier_oracle(params: &CorrelationParams, n: usize) -> ClassicalJointState {
    let init = [
        Complex64::new(params.up(), 0.0),
        Complex64::new(params.down(), 0.0),
    ];
    let (up, down) = fourier_propagate(n, 2 * n + 2, init, |k| classical_symbol(params.delta(), k));
    let real = |v: Vec<Complex64>| v.into_iter().map(|z| z.re.max(0.0)).collect();
    ClassicalJointState::from_parts(n, real(up), real(down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical;
    use crate::quantum::{distribution, evolve};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_2};

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(0, 0, 0), BigUint::from(1u32));
        assert_eq!(kappa(2, 0, 2), BigUint::from(2u32));
        assert_eq!(kappa(3, 2, 1), BigUint::zero());
        assert_eq!(kappa(3, 0, 1), BigUint::zero());
        assert_eq!(kappa(4, 0, 1), BigUint::zero());
        // 15! / (5! 5! 5!)
        assert_eq!(kappa(20, 0, 10), BigUint::from(756_756u32));
    }

    #[test]
    fn kappa_beyond_u128() {
        // 200! / (0! 100! 100!) = C(200, 100)
        let k = kappa(200, 0, 200);
        let expected: BigUint = "90548514656103281165404177077484163874504589675413336841320"
            .parse()
            .unwrap();
        assert_eq!(k, expected);
        let dd = kappa_dd(200, 0, 200);
        assert!((dd.hi() / 9.054851465610328e58 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fib_horner_examples() {
        let c0 = Complex64::new(0.3, -0.2);
        let c1 = Complex64::new(-1.1, 0.4);
        let fh = fib_horner(c0, c1, 2);
        assert_eq!(fh.f[0], Complex64::new(1.0, 0.0));
        assert_eq!(fh.f[1], c0);
        assert!((fh.f[2] - (c0 * c0 + c1)).norm() < 1e-15);
        assert_eq!(fib_horner(c0, c1, 0).f.len(), 1);
    }

    #[test]
    fn matrix_power_examples() {
        assert!(matrix_power_fh(&Mat2::identity(), 17).max_diff(&Mat2::identity()) < 1e-15);
        let z = Complex64::new(0.0, 0.0);
        let w = Complex64::from_polar(1.0, PI / 5.0);
        let d = Mat2([[w, z], [z, w.conj()]]);
        let minus = Mat2::scalar(Complex64::new(-1.0, 0.0));
        assert!(matrix_power_fh(&d, 5).max_diff(&minus) < 1e-14);
        assert!(matrix_power_fh(&d, 10).max_diff(&Mat2::identity()) < 1e-14);
        assert_eq!(matrix_power_fh(&d, 0), Mat2::identity());
        assert!(matrix_power_fh(&d, 1).max_diff(&d) < 1e-15);
    }

    #[test]
    fn closed_form_zero_steps_is_initial_state() {
        let setup = CoinSetup::new(0.7, 0.3, 0.8, 0.4, 2.0).unwrap();
        let t = quantum_amplitudes_closed(&setup, 0);
        let s = setup.state();
        assert_eq!(t.amplitude(0), (s.alpha, s.beta));
        let f = fourier_oracle(&setup, 0);
        assert!(f.max_deviation(&t) < 1e-15);
    }

    #[test]
    fn closed_form_matches_direct_evolution() {
        let setup = CoinSetup::new(FRAC_PI_4, 0.3, 0.7, 0.2, 1.1).unwrap();
        let dev = quantum_amplitudes_closed(&setup, 10).max_deviation(&evolve(&setup, 10));
        assert!(dev < 1e-12, "deviation {dev:e}");
    }

    #[test]
    fn closed_form_identity_coin() {
        let setup = CoinSetup::symmetric_representative(0.0).unwrap();
        let d = distribution(&quantum_amplitudes_closed(&setup, 6));
        assert!((d.prob(6) - 0.5).abs() < 1e-15);
        assert!((d.prob(-6) - 0.5).abs() < 1e-15);
        assert!((d.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_matches_direct_evolution() {
        let setup = CoinSetup::symmetric_representative(FRAC_PI_4).unwrap();
        let dev = fourier_oracle(&setup, 15).max_deviation(&evolve(&setup, 15));
        assert!(dev < 1e-12, "deviation {dev:e}");
    }

    #[test]
    fn fourier_grid_size_is_irrelevant_above_nyquist() {
        let setup = CoinSetup::new(1.0, 0.5, 0.1, 0.9, 3.0).unwrap();
        let n = 12;
        let small = fourier_oracle_with_grid(&setup, n, 2 * n + 2).unwrap();
        let large = fourier_oracle_with_grid(&setup, n, 4 * n).unwrap();
        assert!(small.max_deviation(&large) < 1e-12);
        assert!(fourier_oracle_with_grid(&setup, n, 2 * n).is_err());
    }

    #[test]
    fn classical_examples() {
        let n = 9;
        let joint = classical_components_closed(0.0, (0.5, 0.5), n).unwrap();
        let m = classical::marginal(&joint);
        for k in 0..=n {
            let j = 2 * k as i64 - n as i64;
            let expected = (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
                / 2f64.powi(n as i32);
            assert!((m.prob(j) - expected).abs() < 1e-15, "j = {j}");
        }

        let straight = classical_components_closed(1.0, (1.0, 0.0), 7).unwrap();
        assert_eq!(straight.mass(7), (1.0, 0.0));
        assert!((straight.total() - 1.0).abs() < 1e-15);

        let p = CorrelationParams::new(0.5, 0.3, 0.7).unwrap();
        let dev = classical_closed(&p, 8).max_deviation(&classical::evolve(&p, 8));
        assert!(dev < 1e-15, "deviation {dev:e}");

        assert!(classical_components_closed(0.5, (0.3, 0.6), 3).is_err());
    }

    #[test]
    fn classical_fourier_matches_markov() {
        let p = CorrelationParams::new(-0.4, 0.8, 0.2).unwrap();
        let dev = classical_fourier_oracle(&p, 14).max_deviation(&classical::evolve(&p, 14));
        assert!(dev < 1e-13, "deviation {dev:e}");
    }

    /// Beta sums with the turn term carrying `+sin` instead of `-sin`.
    fn beta_with_flipped_turn_sign(setup: &CoinSetup, n: usize, j: i64) -> Complex64 {
        let (s, c) = setup.theta().sin_cos();
        let hs = 0.5 * (setup.phi1() + setup.phi2());
        let hd = 0.5 * (setup.phi1() - setup.phi2());
        let st = setup.state();
        let ni = n as i64;
        let term = |nn: i64, jj: i64, h: i64, pow_extra: i32| -> f64 {
            let k = kappa(nn, jj, h).to_f64().unwrap();
            if k == 0.0 {
                return 0.0;
            }
            let sign_exp = (nn + pow_extra as i64 - h) / 2;
            k * c.powi(h as i32) * if sign_exp % 2 == 0 { 1.0 } else { -1.0 }
        };
        let e = |x: f64| Complex64::from_polar(1.0, x);
        let mut first = Complex64::new(0.0, 0.0);
        for h in 0..=ni {
            first += e(-hs) * term(ni, j, h, 0) * st.beta;
        }
        let mut second = Complex64::new(0.0, 0.0);
        let mut third = Complex64::new(0.0, 0.0);
        for h in 0..ni {
            second += e(-hd) * s * term(ni - 1, j + 1, h, 0) * st.alpha;
            third += e(-hs) * c * term(ni - 1, j - 1, h, 2) * st.beta;
        }
        e((j + 1) as f64 * hs) * (first + second + third)
    }

    #[test]
    fn flipped_turn_sign_disagrees_with_evolution() {
        let setup = CoinSetup::new(0.9, 0.3, 0.7, 0.6, 1.1).unwrap();
        let direct = evolve(&setup, 3);
        // alpha turning into beta contributes at j = n - 2
        let flipped = beta_with_flipped_turn_sign(&setup, 3, 1);
        assert!((flipped - direct.amplitude(1).1).norm() > 1e-2);
        let derived = quantum_amplitudes_closed(&setup, 3);
        assert!((derived.amplitude(1).1 - direct.amplitude(1).1).norm() < 1e-15);
        // with alpha = 1, beta = 0 only the turn term survives at j = -1 after one step
        let up = CoinSetup::new(0.9, 0.3, 0.7, 0.0, 0.0).unwrap();
        let flipped = beta_with_flipped_turn_sign(&up, 1, -1);
        let truth = evolve(&up, 1).amplitude(-1).1;
        assert!((flipped + truth).norm() < 1e-15);
    }

    /// Classical down-component sums; `first` multiplies the leading sum.
    /// The correct factor is `beta`; passing `alpha` mixes the components.
    fn classical_down_sums(delta: f64, first: f64, a: f64, b: f64, n: i64, j: i64) -> f64 {
        let stay = 0.5 * (1.0 + delta);
        let flip = 0.5 * (1.0 - delta);
        let term = |nn: i64, jj: i64, h: i64| -> f64 {
            let k = kappa(nn, jj, h).to_f64().unwrap();
            k * stay.powi(h as i32) * (-delta).powi(((nn - h) / 2) as i32)
        };
        let mut out = 0.0;
        for h in 0..=n {
            out += term(n, j, h) * first;
        }
        for h in 0..n {
            out -= term(n - 1, j - 1, h) * stay * b;
            out += term(n - 1, j + 1, h) * flip * a;
        }
        out
    }

    #[test]
    fn classical_down_leading_sum_multiplies_beta() {
        let (delta, a, b) = (0.3, 0.8, 0.2);
        let p = CorrelationParams::new(delta, a, b).unwrap();
        let markov = classical::evolve(&p, 4);
        for j in [-4, -2, 0, 2] {
            let truth = markov.mass(j).1;
            let flipped = classical_down_sums(delta, a, a, b, 4, j);
            let derived = classical_down_sums(delta, b, a, b, 4, j);
            assert!((derived - truth).abs() < 1e-15, "j = {j}");
            assert!((classical_closed(&p, 4).mass(j).1 - truth).abs() < 1e-15);
            if j == -4 {
                assert!((flipped - truth).abs() > 1e-2);
            }
        }
    }

    #[test]
    fn flip_coin_closed_form() {
        let setup = CoinSetup::symmetric_representative(FRAC_PI_2).unwrap();
        let d = distribution(&quantum_amplitudes_closed(&setup, 9));
        assert!((d.prob(1) - 0.5).abs() < 1e-14 && (d.prob(-1) - 0.5).abs() < 1e-14);
    }
}
