use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use crate::classical::{self, CorrelationParams};
use crate::classify::{
    canonical_asymptotic, canonical_distributional, count_symmetric_xi, max_distribution_gap, rho,
};
use crate::closed_form::{
    classical_closed, fib_horner, fourier_oracle, fourier_oracle_with_grid, kappa,
    matrix_power_fh, quantum_amplitudes_closed, quantum_symbol, Mat2,
};
use crate::coin::{
    build_coin, is_symmetric, lambda_of, lambda_real_representative, symmetric_coin_states,
    theta_is_trivial, CoinSetup, SymmetricStates,
};
use crate::limit::{density, integrate_density, LimitParams};
use crate::quantum::{distribution, evolve, evolve_with, SpatialDistribution};

fn setup() -> impl Strategy<Value = CoinSetup> {
    (0.0..TAU, 0.0..PI, 0.0..PI, 0.0..=FRAC_PI_2, 0.0..TAU)
        .prop_map(|(t, p1, p2, v, x)| CoinSetup::new(t, p1, p2, v, x).unwrap())
}

fn nontrivial_setup() -> impl Strategy<Value = CoinSetup> {
    setup().prop_filter("non-trivial coin", |s| !theta_is_trivial(s.theta()))
}

fn symmetric_setup() -> impl Strategy<Value = CoinSetup> {
    (0.01..FRAC_PI_2 - 0.01, 0.0..PI, 0.0..PI, 0usize..2).prop_map(|(t, p1, p2, k)| {
        let SymmetricStates::Two(xis) = symmetric_coin_states(t, p1, p2).unwrap() else {
            unreachable!()
        };
        CoinSetup::new(t, p1, p2, FRAC_PI_4, xis[k]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coin_is_special_unitary(s in setup()) {
        let c = s.coin();
        prop_assert!(c.unitarity_defect() < 1e-14);
        prop_assert!((c.det() - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn lambda_bounded_by_support_width(s in nontrivial_setup()) {
        let bound = 1.0 / rho(s.theta()).unwrap().cos();
        prop_assert!(lambda_of(&s).unwrap().abs() <= bound + 1e-12 * bound.max(1.0));
    }

    #[test]
    fn symmetric_setups_have_zero_lambda_and_even_pmf(s in symmetric_setup()) {
        prop_assert!(is_symmetric(&s));
        prop_assert!(lambda_of(&s).unwrap().abs() < 1e-12);
        evolve_with(&s, 25, |w| assert!(distribution(w).is_symmetric(1e-12)));
    }

    #[test]
    fn norm_is_conserved(s in setup(), n in 0usize..=50) {
        let mut worst: f64 = 0.0;
        evolve_with(&s, n, |w| {
            worst = worst.max((w.norm_sqr() - 1.0).abs());
            // opposite-parity sites never carry amplitude
            for (j, a, b) in w.iter() {
                if (j + w.n() as i64) % 2 != 0 {
                    assert!(a.norm() == 0.0 && b.norm() == 0.0);
                }
            }
        });
        prop_assert!(worst < 1e-12);
    }

    #[test]
    fn second_moment_ignores_coin_state(
        theta in 0.0..TAU, phi1 in 0.0..PI, phi2 in 0.0..PI,
        v1 in 0.0..=FRAC_PI_2, x1 in 0.0..TAU, v2 in 0.0..=FRAC_PI_2, x2 in 0.0..TAU,
    ) {
        let s1 = CoinSetup::new(theta, phi1, phi2, v1, x1).unwrap();
        let s2 = CoinSetup::new(theta, phi1, phi2, v2, x2).unwrap();
        let mut m1 = Vec::new();
        evolve_with(&s1, 20, |w| m1.push(distribution(w).second_moment()));
        let mut i = 0;
        evolve_with(&s2, 20, |w| {
            assert!((distribution(w).second_moment() - m1[i]).abs() < 1e-10);
            i += 1;
        });
    }

    #[test]
    fn closed_form_matches_evolution(s in setup(), n in 0usize..=30) {
        let direct = evolve(&s, n);
        prop_assert!(quantum_amplitudes_closed(&s, n).max_deviation(&direct) < 1e-10);
        prop_assert!(fourier_oracle(&s, n).max_deviation(&direct) < 1e-10);
    }

    #[test]
    fn fourier_grid_above_nyquist_is_exact(s in setup(), n in 0usize..=15, extra in 1usize..=20) {
        let base = fourier_oracle(&s, n);
        let wide = fourier_oracle_with_grid(&s, n, 2 * n + 1 + extra).unwrap();
        prop_assert!(base.max_deviation(&wide) < 1e-12);
    }

    #[test]
    fn matrix_power_matches_repeated_product(s in setup(), k in -PI..PI, n in 0usize..=40) {
        let a = quantum_symbol(&s, k);
        let mut slow = Mat2::identity();
        for _ in 0..n {
            slow = slow * a;
        }
        prop_assert!(matrix_power_fh(&a, n).max_diff(&slow) < 1e-12);
    }

    #[test]
    fn kappa_is_even_in_j(n in 0i64..60, j in -60i64..60, h in 0i64..60) {
        prop_assert_eq!(kappa(n, j, h), kappa(n, -j, h));
    }

    #[test]
    fn classical_mass_is_conserved(delta in -1.0..=1.0f64, up in 0.0..=1.0f64, n in 0usize..=50) {
        let p = CorrelationParams::new(delta, up, 1.0 - up).unwrap();
        classical::evolve_with(&p, n, |st| {
            assert!((st.total() - 1.0).abs() < 1e-12);
            assert!(st.iter().all(|(_, u, d)| u >= 0.0 && d >= 0.0));
        });
    }

    #[test]
    fn classical_closed_form_matches_markov(delta in -1.0..=1.0f64, up in 0.0..=1.0f64, n in 0usize..=20) {
        let p = CorrelationParams::new(delta, up, 1.0 - up).unwrap();
        prop_assert!(classical_closed(&p, n).max_deviation(&classical::evolve(&p, n)) < 1e-12);
    }

    #[test]
    fn rho_folds_and_preserves_squares(x in 0.0..TAU) {
        let r = rho(x).unwrap();
        prop_assert!((0.0..=FRAC_PI_2).contains(&r));
        prop_assert_eq!(rho(r).unwrap(), r);
        prop_assert!((r.cos().powi(2) - x.cos().powi(2)).abs() < 1e-14);
        prop_assert!((r.sin().powi(2) - x.sin().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn canonical_distributional_is_idempotent_and_equivalent(s in setup()) {
        let c = canonical_distributional(&s);
        prop_assert_eq!(canonical_distributional(&c.to_setup()), c);
        prop_assert!(max_distribution_gap(&s, &c.to_setup(), 10) <= 1e-10);
    }

    #[test]
    fn canonical_asymptotic_determines_theta_and_lambda(s in nontrivial_setup()) {
        let t = canonical_asymptotic(&s).unwrap();
        let lambda = lambda_of(&s).unwrap();
        prop_assert!((t.theta() - rho(s.theta()).unwrap()).abs() < 1e-15);
        let back = lambda_real_representative(t.theta(), t.varphi(), t.xi());
        prop_assert!((back - lambda).abs() < 1e-10 * lambda.abs().max(1.0));
    }

    #[test]
    fn density_nonnegative_and_mirrored(theta in 0.05..FRAC_PI_2 - 0.05, lh in -1.0..=1.0f64, u in -1.0..1.0f64) {
        let a = theta.cos();
        let p = LimitParams::new(a, lh / a).unwrap();
        let x = u * a;
        prop_assert!(density(&p, x) >= 0.0);
        prop_assert!((density(&p, x) - density(&p.mirrored(), -x)).abs() <= 1e-12 * density(&p, x).max(1.0));
    }

    #[test]
    fn setup_json_roundtrip(s in setup()) {
        prop_assert_eq!(CoinSetup::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn distribution_json_roundtrip(s in setup(), n in 0usize..=20) {
        let d = distribution(&evolve(&s, n));
        let back = SpatialDistribution::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn symmetric_states_make_walk_symmetric(theta in 0.0..TAU, phi1 in 0.0..PI, phi2 in 0.0..PI) {
        match symmetric_coin_states(theta, phi1, phi2).unwrap() {
            SymmetricStates::Two(xis) => {
                for xi in xis {
                    let s = CoinSetup::new(theta, phi1, phi2, FRAC_PI_4, xi).unwrap();
                    prop_assert!(is_symmetric(&s));
                }
                prop_assert_eq!(count_symmetric_xi(theta, phi1, phi2, 1e-3).unwrap(), 2);
            }
            SymmetricStates::AnyXi => prop_assert!(theta_is_trivial(theta)),
        }
    }

    #[test]
    fn density_integrates_to_one(theta in 0.1..FRAC_PI_2 - 0.1, lh in -1.0..=1.0f64) {
        let a = theta.cos();
        let p = LimitParams::new(a, lh / a).unwrap();
        prop_assert!((integrate_density(&p).unwrap() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn central_variance_does_depend_on_coin_state() {
    let up = CoinSetup::new(0.7, 0.2, 1.1, 0.0, 0.0).unwrap();
    let other = CoinSetup::new(0.7, 0.2, 1.1, 0.3, 1.0).unwrap();
    let (d1, d2) = (distribution(&evolve(&up, 10)), distribution(&evolve(&other, 10)));
    assert!((d1.second_moment() - d2.second_moment()).abs() < 1e-10);
    assert!((d1.variance() - d2.variance()).abs() > 1.0);
}

#[test]
fn fib_horner_matches_explicit_sum() {
    // f_n = sum_k C(n-k, k) c0^(n-2k) c1^k, exact in integers for c0 = 2, c1 = 3
    let fh = fib_horner(Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), 25);
    for n in 0..=25u32 {
        let mut explicit: u128 = 0;
        for k in 0..=n / 2 {
            let binom = (0..k).fold(1u128, |acc, i| acc * (n - k - i) as u128 / (i + 1) as u128);
            explicit += binom * 2u128.pow(n - 2 * k) * 3u128.pow(k);
        }
        let closed = (3u128.pow(n + 1) as i128 - if n % 2 == 0 { -1 } else { 1 }) / 4;
        assert_eq!(explicit as i128, closed);
        let got = fh.f[n as usize];
        assert_eq!(got.im, 0.0);
        assert_eq!(got.re, explicit as f64, "n = {n}");
    }
}

#[test]
fn boundary_probability_follows_power_law() {
    for theta in [0.2, 0.7, 1.3] {
        let s = CoinSetup::symmetric_representative(theta).unwrap();
        evolve_with(&s, 25, |w| {
            let n = w.n() as i32;
            if n >= 1 {
                let expected = 0.5 * theta.cos().powi(2 * (n - 1));
                assert!((distribution(w).prob(n as i64) - expected).abs() < 1e-14);
            }
        });
    }
}

#[test]
fn trivial_coin_admits_every_state() {
    for theta in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        assert_eq!(
            symmetric_coin_states(theta, 0.3, 0.9).unwrap(),
            SymmetricStates::AnyXi
        );
        assert!(build_coin(theta, 0.3, 0.9).is_ok());
    }
}
