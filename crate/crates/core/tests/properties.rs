use nls_lab::diagnostics::{mass, partition_series, sobolev_norm};
use nls_lab::lab::{fit_power_law, RandomFieldSpec};
use nls_lab::solver::{free_evolve, strang_step};
use nls_lab::spectral::{apply_multiplier, cutoff_phi, symbol_m, Grid, MultiplierSpec, Repr, SpectralField};
use num_complex::Complex64;
use proptest::prelude::*;

fn field(dim: usize, n: usize, seed: u64, amplitude: f64) -> SpectralField {
    let grid = Grid::new(dim, n, 7.0).unwrap();
    RandomFieldSpec::sobolev_decay(0.8, 0.01, amplitude, seed).generate(grid, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_are_unitary(dim in 1usize..=3, seed in any::<u64>()) {
        let u = field(dim, 8, seed, 1.0);
        let hat = u.in_repr(Repr::Frequency);
        prop_assert!((hat.norm_sqr() - u.norm_sqr()).abs() <= 1e-12 * u.norm_sqr());
        prop_assert!(hat.into_physical().distance(&u).unwrap() <= 1e-12 * u.l2_norm());
    }

    #[test]
    fn free_flow_is_a_unitary_group(seed in any::<u64>(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let u = field(2, 16, seed, 1.0);
        let a = free_evolve(&free_evolve(&u, s), t);
        let b = free_evolve(&u, s + t);
        prop_assert!(a.distance(&b).unwrap() <= 1e-12 * u.l2_norm());
        prop_assert!((mass(&a) - mass(&u)).abs() <= 1e-12 * mass(&u));
    }

    #[test]
    fn strang_step_conserves_mass(seed in any::<u64>(), amplitude in 0.01f64..1.0, dt in 1e-4f64..1e-2) {
        let u = field(2, 16, seed, amplitude);
        let v = strang_step(&u, dt, true);
        prop_assert!((mass(&v) - mass(&u)).abs() <= 1e-12 * mass(&u));
    }

    #[test]
    fn i_symbol_is_monotone_and_bounded(n in 0.5f64..64.0, s in 0.51f64..0.99, a in 0.0f64..300.0, b in 0.0f64..300.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (ml, mh) = (symbol_m(lo, n, s), symbol_m(hi, n, s));
        prop_assert!(mh <= ml + 1e-15);
        prop_assert!(mh > 0.0 && ml <= 1.0);
        prop_assert!((0.0..=1.0).contains(&cutoff_phi(a / n)));
    }

    #[test]
    fn i_operator_is_contractive_and_amplitude_linear(seed in any::<u64>(), n in 1.0f64..16.0, c in 0.1f64..10.0) {
        let u = field(2, 16, seed, 1.0);
        let op = MultiplierSpec::IOperator { n, s: 0.7 };
        let iu = apply_multiplier(&u, &op);
        prop_assert!(iu.l2_norm() <= u.l2_norm() * (1.0 + 1e-12));
        let scaled = apply_multiplier(&u.clone().scaled(Complex64::new(c, 0.0)), &op);
        let lhs = sobolev_norm(&scaled, 1.0, true);
        prop_assert!((lhs - c * sobolev_norm(&iu, 1.0, true)).abs() <= 1e-12 * lhs.max(1e-300));
    }

    #[test]
    fn greedy_partition_tiles_and_respects_budget(
        values in prop::collection::vec(0.0f64..0.2, 2..60),
        eps in 0.3f64..1.0,
    ) {
        let times: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.1).collect();
        let t_end = *times.last().unwrap();
        let p = partition_series(&times, &values, eps, (0.0, t_end)).unwrap();
        prop_assert!(p.tiles((0.0, t_end)));
        prop_assert!(p.respects_budget(1e-9));
    }

    #[test]
    fn exact_power_laws_are_recovered(exponent in -3.0f64..3.0, constant in 0.01f64..100.0) {
        let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x| (x, constant * f64::powf(x, exponent))).collect();
        let fit = fit_power_law(&pts).unwrap();
        prop_assert!((fit.exponent - exponent).abs() < 1e-12);
        prop_assert!((fit.constant / constant - 1.0).abs() < 1e-12);
    }

    #[test]
    fn refinement_preserves_the_field(seed in any::<u64>()) {
        let u = field(2, 8, seed, 1.0);
        let fine = u.refined(2).unwrap();
        prop_assert!((fine.l2_norm() - u.l2_norm()).abs() <= 1e-12 * u.l2_norm());
        prop_assert!((sobolev_norm(&fine, 1.0, true) - sobolev_norm(&u, 1.0, true)).abs() <= 1e-10 * sobolev_norm(&u, 1.0, true));
    }
}
