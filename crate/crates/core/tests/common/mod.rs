#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use coinwalk_core::coin::theta_is_trivial;
use coinwalk_core::CoinSetup;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_setup<R: Rng>(rng: &mut R) -> CoinSetup {
    CoinSetup::new(
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..=FRAC_PI_2),
        rng.random_range(0.0..TAU),
    )
    .unwrap()
}

pub fn random_nontrivial_setup<R: Rng>(rng: &mut R) -> CoinSetup {
    loop {
        let s = random_setup(rng);
        if !theta_is_trivial(s.theta()) {
            return s;
        }
    }
}

/// Spatial pmf by summing amplitudes over every chirality path of length `n`.
pub fn path_sum_pmf(setup: &CoinSetup, n: usize) -> Vec<f64> {
    let coin = setup.coin().as_array();
    let st = setup.state();
    let init = [st.alpha, st.beta];
    let mut amps = vec![[Complex64::new(0.0, 0.0); 2]; 2 * n + 1];
    for start in 0..2 {
        for path in 0..(1u64 << n) {
            let mut amp = init[start];
            let mut prev = start;
            let mut pos = n as i64;
            for i in 0..n {
                let next = ((path >> i) & 1) as usize;
                amp *= coin[next][prev];
                pos += if next == 0 { 1 } else { -1 };
                prev = next;
            }
            amps[pos as usize][prev] += amp;
        }
    }
    amps.iter().map(|[u, d]| u.norm_sqr() + d.norm_sqr()).collect()
}

/// Ordinary least squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(n, d), &(x, y)| {
        (n + (x - mx) * (y - my), d + (x - mx) * (x - mx))
    });
    num / den
}
