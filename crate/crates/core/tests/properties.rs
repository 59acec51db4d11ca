use std::sync::Arc;

use dunkl_lab::battery::schwartz_battery;
use dunkl_lab::cli::{RunConfig, Suite};
use dunkl_lab::family::{coefficient_norm, OrthonormalFamily};
use dunkl_lab::geometry::{kernel_1d, kernel_1d_imag, DunklGeometry};
use dunkl_lab::grid::{make_grid, GridKind};
use dunkl_lab::output::fmt17;
use dunkl_lab::restriction::{
    beta, dual, exponent_table, lambda0, schatten_from_singular, schatten_norm, singular_values, SurfaceKind,
};
use dunkl_lab::transforms::TransformPlan;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = DMatrix<Complex64>> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), r * c)
            .prop_map(move |v| DMatrix::from_iterator(r, c, v.into_iter().map(|(a, b)| Complex64::new(a, b))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_is_bounded_on_imaginary_axis(kappa in 0.0f64..3.0, t in -60.0f64..60.0) {
        let e = kernel_1d_imag(kappa, t);
        prop_assert!(e.norm() <= 1.0 + 1e-12, "{e}");
        prop_assert!((kernel_1d_imag(kappa, -t) - e.conj()).norm() <= 1e-14);
    }

    #[test]
    fn kernel_is_positive_and_dominated_on_real_axis(kappa in 0.0f64..3.0, x in -15.0f64..15.0) {
        let e = kernel_1d(kappa, Complex64::new(x, 0.0));
        prop_assert!(e.re > 0.0 && e.im.abs() <= 1e-12 * e.re);
        prop_assert!(e.re <= x.abs().exp() * (1.0 + 1e-12));
    }

    #[test]
    fn weight_is_homogeneous(k1 in 0.0f64..2.5, k2 in 0.0f64..2.5, y1 in -5.0f64..5.0, y2 in -5.0f64..5.0, l in 0.1f64..4.0) {
        let g = DunklGeometry::new(0, vec![k1, k2]).unwrap();
        let h = g.weight_h2(&[y1, y2]).unwrap();
        let scaled = g.weight_h2(&[l * y1, l * y2]).unwrap();
        prop_assert!((scaled - l.powf(2.0 * g.gamma_kappa()) * h).abs() <= 1e-12 * scaled.max(1e-300));
    }

    #[test]
    fn schatten_norms_decrease_in_the_index(a in matrix(), p in 1.0f64..6.0, dp in 0.0f64..6.0) {
        let s = singular_values(&a);
        let lo = schatten_from_singular(&s, p).unwrap();
        let hi = schatten_from_singular(&s, p + dp).unwrap();
        prop_assert!(hi <= lo * (1.0 + 1e-10));
        prop_assert!(schatten_from_singular(&s, f64::INFINITY).unwrap() <= hi * (1.0 + 1e-10));
    }

    #[test]
    fn schatten_interpolation(a in matrix(), lambda in 1.0f64..5.0) {
        let lhs = schatten_norm(&a, 2.0 * lambda).unwrap();
        let rhs = schatten_norm(&a, 2.0).unwrap().powf(1.0 / lambda)
            * schatten_norm(&a, f64::INFINITY).unwrap().powf(1.0 - 1.0 / lambda);
        prop_assert!(lhs <= rhs * (1.0 + 1e-10) + 1e-300);
    }

    #[test]
    fn schatten_two_is_frobenius(a in matrix()) {
        let frob = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((schatten_norm(&a, 2.0).unwrap() - frob).abs() <= 1e-12 * frob.max(1.0));
    }

    #[test]
    fn coefficient_norm_decreases_in_beta(c in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..20), b in 1.0f64..4.0) {
        let c: Vec<Complex64> = c.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        prop_assert!(coefficient_norm(&c, b + 0.5) <= coefficient_norm(&c, b) * (1.0 + 1e-12));
        prop_assert!(coefficient_norm(&c, f64::INFINITY) <= coefficient_norm(&c, b + 0.5) * (1.0 + 1e-12));
    }

    #[test]
    fn random_families_are_orthonormal(size in 1usize..12, seed in any::<u64>()) {
        let measure: Vec<f64> = (0..40).map(|k| 0.1 + (k % 7) as f64 * 0.3).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family = OrthonormalFamily::random(&measure, size, &mut rng).unwrap();
        prop_assert!(family.gram_defect() <= 1e-12);
    }

    #[test]
    fn floats_round_trip_through_csv_format(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn config_round_trips(seed in any::<u64>(), kappa in prop::collection::vec(0.0f64..3.0, 1..4), n in 0usize..3, pick in 0usize..64) {
        let mut cfg = RunConfig::default();
        cfg.seed = seed;
        cfg.geometry.n = n;
        cfg.geometry.kappa = kappa;
        cfg.suites = Suite::ALL.iter().enumerate().filter(|(k, _)| pick & (1 << k) != 0).map(|(_, s)| *s).collect();
        prop_assert_eq!(RunConfig::parse(&cfg.to_toml().unwrap()).unwrap(), cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exponent_relations(n in 1usize..3, halves in prop::collection::vec(0i64..6, 1..3)) {
        let kappa: Vec<f64> = halves.iter().map(|&h| h as f64 / 2.0).collect();
        let g = DunklGeometry::new(n, kappa).unwrap();
        let Ok(t) = exponent_table(SurfaceKind::Paraboloid, &g) else { return Ok(()) };
        let nk = t.n_kappa;
        let one = Rational64::from_integer(1);
        prop_assert_eq!(beta(t.r_orthonormal.lo), (nk + one) / nk);
        let p = t.p_restriction.hi.unwrap();
        let l = lambda0(p);
        prop_assert_eq!(Rational64::from_integer(2) * l / (l + one), p);
        prop_assert_eq!(dual(dual(p).unwrap()).unwrap(), p);
        prop_assert_eq!(dual(p).unwrap(), t.p_dual);
    }

    #[test]
    fn transform_is_unitary_on_battery_combinations(
        kappa in prop::sample::select(vec![0.0, 0.5, 1.0, 1.5]),
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 12),
    ) {
        let g = DunklGeometry::new(0, vec![kappa]).unwrap();
        let grid = make_grid(&g, &[8.5], &[140], GridKind::GaussHermite).unwrap();
        let plan = TransformPlan::new(Arc::clone(&grid)).unwrap();
        let battery = schwartz_battery();
        let f = grid.sample(|v| {
            battery.iter().zip(&coeffs).map(|(tf, &(a, b))| (tf.eval)(v) * Complex64::new(a, b)).sum()
        });
        let fh = plan.forward(&f).unwrap();
        let norm = f.lp_norm(2.0).unwrap();
        prop_assume!(norm > 1e-3);
        prop_assert!((fh.lp_norm(2.0).unwrap() - norm).abs() <= 1e-6 * norm);
        let back = plan.inverse(&fh).unwrap();
        let err = back.values().iter().zip(f.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-6 * norm.max(1.0));
    }
}
