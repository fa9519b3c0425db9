use homtree::boundary::CylFunction;
use homtree::harness::{random_cyl_function, Distribution};
use homtree::spectral::{phi_explicit, tau, SpectralParam};
use homtree::transform::poisson_transform;
use homtree::treeops::{eigen_residual, epsilon_n};
use homtree::{Complex64, TreeParams};
use proptest::prelude::*;

fn boundary(q: u32, depth: usize, level: usize, seed: u64) -> CylFunction {
    let params = TreeParams::new(q, depth).unwrap();
    random_cyl_function(seed, params, level, Distribution::ComplexDisc).unwrap()
}

fn spectral() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..3.0f64, -1.5..1.5f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn differences_telescope(q in 2u32..=4, level in 0usize..=4, seed in any::<u64>()) {
        let f = boundary(q, 4, level, seed);
        let mut acc = CylFunction::zero(f.params(), 0).unwrap();
        for j in 0..=level {
            acc = &acc + &f.difference(j);
        }
        prop_assert!(acc.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn conditional_expectation_is_idempotent(level in 0usize..=5, n in 0usize..=5, seed in any::<u64>()) {
        let f = boundary(2, 5, level, seed);
        let once = f.cond_expect(n);
        prop_assert!(once.cond_expect(n).max_abs_diff(&once) < 1e-14);
        prop_assert!((once.integral() - f.integral()).norm() < 1e-12);
    }

    #[test]
    fn epsilon_is_idempotent(seed in any::<u64>(), n in 0usize..=6, (re, im) in spectral()) {
        let sp = SpectralParam::new(2, Complex64::new(re, im)).unwrap();
        let u = poisson_transform(&boundary(2, 6, 3, seed), &sp);
        let once = epsilon_n(&u, n);
        prop_assert!(epsilon_n(&once, n).max_abs_diff(&once) <= 1e-12 * (1.0 + once.max_abs()));
    }

    #[test]
    fn transform_is_linear(s1 in any::<u64>(), s2 in any::<u64>(), a in -2.0..2.0f64, (re, im) in spectral()) {
        let sp = SpectralParam::new(3, Complex64::new(re, im)).unwrap();
        let (f, g) = (boundary(3, 5, 2, s1), boundary(3, 5, 3, s2));
        let c = Complex64::new(a, 0.5);
        let lhs = poisson_transform(&(&f + &(&g * c)), &sp);
        let rhs = poisson_transform(&f, &sp).linear_combination(Complex64::new(1.0, 0.0), &poisson_transform(&g, &sp), c).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn transforms_are_eigenfunctions(q in 2u32..=3, seed in any::<u64>(), (re, im) in spectral()) {
        let sp = SpectralParam::new(q, Complex64::new(re, im)).unwrap();
        let u = poisson_transform(&boundary(q, 6, 2, seed), &sp);
        prop_assert!(eigen_residual(&u, &sp).unwrap() <= 1e-10 * (1.0 + u.max_abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn phi_is_even_and_periodic(q in 2u32..=5, (re, im) in spectral()) {
        let z = Complex64::new(re, im);
        let sp = SpectralParam::new(q, z).unwrap();
        let neg = SpectralParam::new(q, -z).unwrap();
        let shifted = SpectralParam::new(q, z + tau(q)).unwrap();
        for n in 0..=12 {
            let v = phi_explicit(&sp, n);
            let scale = 1.0 + v.norm();
            prop_assert!((phi_explicit(&neg, n) - v).norm() <= 1e-10 * scale);
            prop_assert!((phi_explicit(&shifted, n) - v).norm() <= 1e-10 * scale);
        }
    }
}
