use mfold_bounds::bounds::{class_bounds, theorem1_bounds, theorem2_bounds};
use mfold_bounds::inversion::invert;
use mfold_bounds::operators::{ruscheweyh, ruscheweyh_mfold};
use mfold_bounds::series::symmetrize;
use mfold_bounds::{ClassParams, Complex64, MFoldFn, TruncatedSeries};
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(1.0), order + 1).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

/// Series with zero constant term, usable as the inner function of a composition.
fn inner(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Complex64::new(0.0, 0.0);
        TruncatedSeries::new(c).unwrap()
    })
}

fn normalized(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(0.5), order - 1).prop_map(|tail| {
        let mut c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        c.extend(tail);
        TruncatedSeries::new(c).unwrap()
    })
}

fn unit_constant(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Complex64::new(1.0, 0.0);
        for x in c.iter_mut().skip(1) {
            *x *= 0.5;
        }
        TruncatedSeries::new(c).unwrap()
    })
}

fn params() -> impl Strategy<Value = ClassParams> {
    (
        complex(3.0),
        0.0..3.0f64,
        0.0..=1.0f64,
        0u32..6,
        1u32..6,
        0.05..=1.0f64,
        any::<bool>(),
    )
        .prop_filter_map("tau must be nonzero", |(tau, l, g, d, m, s, q)| {
            if tau.norm() < 1e-3 {
                return None;
            }
            if q {
                ClassParams::q(tau, l, g, d, m, s).ok()
            } else {
                ClassParams::theta(tau, l, g, d, m, s.min(0.99)).ok()
            }
        })
}

proptest! {
    #[test]
    fn ring_axioms(a in series(8), b in series(8), c in series(8)) {
        let tol = 1e-12;
        prop_assert!((&a + &b).max_abs_diff(&(&b + &a)) <= tol);
        prop_assert!((&a * &b).max_abs_diff(&(&b * &a)) <= tol);
        prop_assert!((&(&a * &b) * &c).max_abs_diff(&(&a * &(&b * &c))) <= tol);
        prop_assert!((&a * &(&b + &c)).max_abs_diff(&(&(&a * &b) + &(&a * &c))) <= tol);
        prop_assert!((&a - &a).max_abs_diff(&TruncatedSeries::zero(8)) == 0.0);
    }

    #[test]
    fn composition_is_associative(f in series(7), g in inner(7), h in inner(7)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn real_powers_add(u in unit_constant(8), s in -2.0..2.0f64, t in -2.0..2.0f64) {
        let lhs = &u.pow_real(s).unwrap() * &u.pow_real(t).unwrap();
        let rhs = u.pow_real(s + t).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn exp_inverts_log(u in unit_constant(9)) {
        let back = u.log1().unwrap().exp0().unwrap();
        prop_assert!(back.max_abs_diff(&u) <= 1e-12);
    }

    #[test]
    fn symmetrization_support(f in normalized(7), m in 1u32..6) {
        let g = symmetrize(&f, m, 5).unwrap().embed();
        for (i, a) in g.coeffs().iter().enumerate().skip(2) {
            if (i - 1) % m as usize != 0 {
                prop_assert_eq!(a.norm(), 0.0);
            }
        }
    }

    #[test]
    fn symmetrized_power_recovers_function(f in normalized(6), m in 1u32..5) {
        let k = 5usize;
        let g = symmetrize(&f, m, k).unwrap();
        let u = g.embed().shift_down(1).unwrap();
        let lhs = u.pow_real(m as f64).unwrap();
        let rhs = f.truncate(k + 1).shift_down(1).unwrap().substitute_power(m as usize);
        let n = lhs.order().min(rhs.order());
        prop_assert!(lhs.truncate(n).max_abs_diff(&rhs.truncate(n)) <= 1e-10);
    }

    #[test]
    fn inversion_is_an_involution(f in normalized(8)) {
        let g = invert(&f, 8).unwrap();
        let back = invert(&g, 8).unwrap();
        prop_assert!(back.max_abs_diff(&f) <= 1e-10);
        prop_assert!(f.compose(&g).unwrap().max_abs_diff(&TruncatedSeries::identity(8)) <= 1e-10);
    }

    #[test]
    fn mfold_inverse_stays_mfold(coeffs in prop::collection::vec(complex(1.0), 4), m in 1u32..5) {
        let f = MFoldFn::new(m, coeffs).unwrap();
        let g = invert(&f.embed(), f.order()).unwrap();
        prop_assert!(MFoldFn::from_series(&g, m).is_ok());
    }

    #[test]
    fn ruscheweyh_is_affine(a in normalized(6), b in normalized(6), t in 0.0..=1.0f64, d in 0u32..8) {
        let mix = &a.scale_real(t) + &b.scale_real(1.0 - t);
        let lhs = ruscheweyh(&mix, d).unwrap();
        let rhs = &ruscheweyh(&a, d).unwrap().scale_real(t) + &ruscheweyh(&b, d).unwrap().scale_real(1.0 - t);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn ruscheweyh_zero_is_identity(coeffs in prop::collection::vec(complex(1.0), 4), m in 1u32..5) {
        let f = MFoldFn::new(m, coeffs).unwrap();
        prop_assert_eq!(ruscheweyh_mfold(&f, 0).unwrap(), f);
    }

    #[test]
    fn q_bound_bridges_to_theta_sqrt_branch(p in params()) {
        let q = ClassParams::q(p.tau, p.lambda, p.gamma, p.delta, p.m, 1.0).unwrap();
        let t = ClassParams::theta(p.tau, p.lambda, p.gamma, p.delta, p.m, 0.0).unwrap();
        let a = theorem1_bounds(&q).unwrap().bound_am1;
        let b = theorem2_bounds(&t).unwrap().alt_values.square_root.unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn bounds_shrink_with_delta(p in params()) {
        // with complex tau the class-Q denominator can lose modulus as delta grows
        let p = ClassParams { tau: Complex64::new(p.tau.norm(), 0.0), ..p };
        let next = ClassParams { delta: p.delta + 1, ..p };
        let (a, b) = (class_bounds(&p).unwrap(), class_bounds(&next).unwrap());
        prop_assert!(b.bound_am1 <= a.bound_am1 * (1.0 + 1e-12));
        prop_assert!(b.bound_a2m1 <= a.bound_a2m1 * (1.0 + 1e-12));
    }

    #[test]
    fn theta_bounds_shrink_with_beta(p in params(), step in 0.0..0.5f64) {
        if let Some(beta) = p.beta() {
            let hi = ClassParams::theta(p.tau, p.lambda, p.gamma, p.delta, p.m, beta + step * (0.99 - beta)).unwrap();
            let (a, b) = (theorem2_bounds(&p).unwrap(), theorem2_bounds(&hi).unwrap());
            prop_assert!(b.bound_am1 <= a.bound_am1 * (1.0 + 1e-12));
            prop_assert!(b.bound_a2m1 <= a.bound_a2m1 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn theta_active_branch_is_the_minimum(p in params()) {
        if p.beta().is_some() {
            let r = theorem2_bounds(&p).unwrap();
            let (l, s) = (r.alt_values.linear.unwrap(), r.alt_values.square_root.unwrap());
            prop_assert_eq!(r.bound_am1, l.min(s));
        }
    }
}
