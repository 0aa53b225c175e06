use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use parabolic_lab::experiment::{ParamRange, Span};
use parabolic_lab::moments::MomentProblem;
use parabolic_lab::multiplier::{empirical_mq_norm, marcinkiewicz_constant, MultiplierSeq, DEFAULT_MAX_LEVEL};
use parabolic_lab::paths::BrownianPath;
use parabolic_lab::spaces::{besov_norm, bessel_norm, default_grid_points, NormSpec};
use parabolic_lab::spectral::{blow_up_time, lp_condition, InitialDatum, ModelParams, SpectralField};

fn field_strategy(max_truncation: usize) -> impl Strategy<Value = SpectralField> {
    (1..=max_truncation).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * n + 1).prop_map(move |cs| {
            SpectralField::new(n, cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bessel_norm_is_homogeneous(f in field_strategy(12), lambda in -5.0f64..5.0, q in 1.2f64..6.0, s in -1.0f64..2.0) {
        let grid = default_grid_points(f.truncation(), q);
        let a = bessel_norm(&f.scale(Complex64::new(lambda, 0.0)), s, q, grid).unwrap();
        let b = lambda.abs() * bessel_norm(&f, s, q, grid).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b));
    }

    #[test]
    fn bessel_norm_satisfies_triangle_inequality(f in field_strategy(8), g in field_strategy(8), q in 1.2f64..6.0) {
        let n = f.truncation().max(g.truncation());
        let (f, g) = (f.retruncate(n), g.retruncate(n));
        let grid = default_grid_points(n, q);
        let sum = bessel_norm(&f.add(&g).unwrap(), 0.0, q, grid).unwrap();
        let parts = bessel_norm(&f, 0.0, q, grid).unwrap() + bessel_norm(&g, 0.0, q, grid).unwrap();
        prop_assert!(sum <= parts * (1.0 + 1e-12));
    }

    #[test]
    fn besov_norm_decreases_in_summability(f in field_strategy(32), s in -1.0f64..2.0, p1 in 1.0f64..4.0, dp in 0.0f64..4.0) {
        let grid = default_grid_points(f.truncation(), 2.0);
        let a = besov_norm(&f, s, 2.0, p1, grid).unwrap();
        let b = besov_norm(&f, s, 2.0, p1 + dp, grid).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-12));
    }

    #[test]
    fn lp_condition_is_monotone_in_p(alpha in 0.0f64..1.0, beta in 0.0f64..1.0, p in 1.01f64..6.0, dp in 0.0f64..3.0) {
        let low = ModelParams::hilbert(alpha, beta, p).unwrap();
        let high = ModelParams::hilbert(alpha, beta, p + dp).unwrap();
        prop_assert!(!lp_condition(&high).holds || lp_condition(&low).holds);
        prop_assert!(blow_up_time(&high, 1.0) <= blow_up_time(&low, 1.0));
    }

    #[test]
    fn pure_transport_noise_gives_deterministic_moment(f in field_strategy(6), alpha in 0.0f64..0.7, p in 1.1f64..4.0, t in 0.0f64..1.0) {
        // With beta = 0 the noise only rotates phases, so ||U(t)||_{L^2} is not random.
        let params = ModelParams::hilbert(alpha, 0.0, p).unwrap();
        let problem = MomentProblem::second_order(
            params, InitialDatum::Coefficients(f.clone()), NormSpec::bessel(0.0, 2.0), f.truncation(),
        ).unwrap();
        let got = problem.expected_norm_p(t).unwrap().value;
        let l2sq: f64 = 2.0 * PI * f
            .iter()
            .map(|(n, c)| (-2.0 * t * (n * n) as f64 * (1.0 - 2.0 * alpha * alpha)).exp() * c.norm_sqr())
            .sum::<f64>();
        let want = l2sq.powf(0.5 * p);
        prop_assert!((got - want).abs() <= 1e-9 * want.max(1e-300), "{got} vs {want}");
    }

    #[test]
    fn marcinkiewicz_constant_dominates_sup(values in prop::collection::vec(-3.0f64..3.0, 1..40)) {
        let mut sym = values.clone();
        if sym.len() % 2 == 0 { sym.push(0.0); }
        let m = MultiplierSeq::from_values("random", sym.iter().map(|&v| Complex64::new(v, 0.0)).collect());
        let rep = marcinkiewicz_constant(&m, DEFAULT_MAX_LEVEL).unwrap();
        let sup = sym.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!(rep.k >= sup);
    }

    #[test]
    fn empirical_norm_is_at_least_the_sup(values in prop::collection::vec(-3.0f64..3.0, 9), q in 1.2f64..5.0, seed in 0u64..1000) {
        let m = MultiplierSeq::from_values("random", values.iter().map(|&v| Complex64::new(v, 0.0)).collect());
        let est = empirical_mq_norm(&m, q, 2, 4, seed).unwrap();
        prop_assert!(est >= m.sup_abs(4) * (1.0 - 1e-12));
    }

    #[test]
    fn coarsening_keeps_the_path(steps_log in 2u32..8, factor_log in 0u32..2, seed in 0u64..100) {
        let fine = BrownianPath::uniform(1.5, 1 << (steps_log + factor_log), seed, 0).unwrap();
        let coarse = fine.coarsen(1 << factor_log).unwrap();
        prop_assert_eq!(coarse.steps(), 1 << steps_log);
        prop_assert!((coarse.final_value() - fine.final_value()).abs() < 1e-12);
        for (k, w) in coarse.values().iter().enumerate() {
            prop_assert!((w - fine.values()[k << factor_log]).abs() < 1e-12);
        }
    }

    #[test]
    fn ranges_include_their_endpoints(start in -5.0f64..5.0, count in 0usize..50, step in 0.01f64..1.0) {
        let stop = start + count as f64 * step;
        let vals = ParamRange::Range(Span { start, stop, step }).values();
        prop_assert_eq!(vals.len(), count + 1);
        prop_assert!((vals[count] - stop).abs() < 1e-9);
    }
}
