use hhbound::bounds::{
    convexity_profile, hermite_hadamard, n_value, quarter_defect_sandwich, quarter_upper,
    simpson_defect_sandwich, symmetric_pair_triple, Convexity,
};
use hhbound::{integrate_mean, parse, Expression, Interval, WeightPair};
use proptest::prelude::*;

const CONVEX: [&str; 6] = ["exp(x)", "1/x", "-log(x)", "x*log(x)", "x^3.3", "hyp(x - 1, 0.2)"];

fn convex_case() -> impl Strategy<Value = (Expression, Interval)> {
    (0..CONVEX.len(), 0.1f64..4.9, 0.01f64..3.0).prop_map(|(k, a, w)| {
        let b = (a + w).min(5.0);
        (parse(CONVEX[k]).unwrap(), Interval::new(a, b).unwrap())
    })
}

/// `f` with every `x` replaced by `inner`.
fn compose(f: &Expression, inner: &Expression) -> Expression {
    use Expression::*;
    let go = |e: &Expression| Box::new(compose(e, inner));
    match f {
        Const(c) => Const(*c),
        Var => inner.clone(),
        Neg(u) => Neg(go(u)),
        Call(func, u) => Call(*func, go(u)),
        Add(l, r) => Add(go(l), go(r)),
        Sub(l, r) => Sub(go(l), go(r)),
        Mul(l, r) => Mul(go(l), go(r)),
        Div(l, r) => Div(go(l), go(r)),
        Pow(u, p) => Pow(go(u), *p),
        Hyp(u, e) => Hyp(go(u), go(e)),
    }
}

fn mean(f: &Expression, iv: Interval) -> f64 {
    integrate_mean(f, iv, 1e-12).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn oracle_is_additive((f, iv) in convex_case(), split in 0.1f64..0.9) {
        let c = iv.a() + split * iv.width();
        let left = Interval::new(iv.a(), c).unwrap();
        let right = Interval::new(c, iv.b()).unwrap();
        let whole = mean(&f, iv) * iv.width();
        let parts = mean(&f, left) * left.width() + mean(&f, right) * right.width();
        prop_assert!((whole - parts).abs() <= 1e-10 * (1.0 + whole.abs()), "{whole} vs {parts}");
    }

    #[test]
    fn oracle_matches_closed_forms(a in 0.1f64..3.0, w in 0.01f64..2.0) {
        let b = a + w;
        let iv = Interval::new(a, b).unwrap();
        let exp_mean = (b.exp() - a.exp()) / w;
        prop_assert!((mean(&parse("exp(x)").unwrap(), iv) - exp_mean).abs() <= 1e-11 * exp_mean);
        let recip_mean = (b / a).ln() / w;
        prop_assert!((mean(&parse("1/x").unwrap(), iv) - recip_mean).abs() <= 1e-11 * recip_mean);
    }

    #[test]
    fn bound_chain((f, iv) in convex_case()) {
        let hh = hermite_hadamard(&f, iv).unwrap();
        let m = mean(&f, iv);
        let q = quarter_upper(&f, iv).unwrap();
        let slack = 1e-10 * (1.0 + hh.upper.abs());
        prop_assert!(hh.lower <= m + slack);
        prop_assert!(m <= q + slack);
        prop_assert!(q <= hh.upper + slack);
    }

    #[test]
    fn endpoint_weight_monotone((f, iv) in convex_case(), a1 in 0.25f64..0.5, a2 in 0.25f64..0.5) {
        // larger endpoint weight, larger N for convex f
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let n_lo = n_value(&f, iv, WeightPair::from_endpoint(lo).unwrap()).unwrap();
        let n_hi = n_value(&f, iv, WeightPair::from_endpoint(hi).unwrap()).unwrap();
        prop_assert!(n_lo <= n_hi + 1e-12 * (1.0 + n_hi.abs()));
    }

    #[test]
    fn affine_integrands_are_exact(c0 in -5.0f64..5.0, c1 in -5.0f64..5.0, a in -3.0f64..3.0, w in 0.01f64..4.0) {
        let f = Expression::constant(c0) + Expression::constant(c1) * Expression::var();
        let iv = Interval::new(a, a + w).unwrap();
        let exact = c0 + c1 * iv.mid();
        let tol = 1e-12 * (1.0 + exact.abs() + c1.abs() * (a.abs() + w));
        let hh = hermite_hadamard(&f, iv).unwrap();
        for v in [hh.lower, hh.upper, quarter_upper(&f, iv).unwrap(), n_value(&f, iv, WeightPair::SIMPSON).unwrap(), mean(&f, iv)] {
            prop_assert!((v - exact).abs() <= tol, "{v} vs {exact}");
        }
        let p = convexity_profile(&f, iv, 65).unwrap();
        let q = quarter_defect_sandwich(&f, iv, &p).unwrap();
        prop_assert!(q.defect.lower.abs() <= 1e-12 && q.defect.upper.abs() <= 1e-12);
    }

    #[test]
    fn translation_covariance((f, iv) in convex_case(), shift in -0.09f64..2.0) {
        // g(x) = f(x + shift) on [a - shift, b - shift] has the same bounds
        let g = compose(&f, &(Expression::var() + Expression::constant(shift)));
        let moved = Interval::new(iv.a() - shift, iv.b() - shift).unwrap();
        let (q, qg) = (quarter_upper(&f, iv).unwrap(), quarter_upper(&g, moved).unwrap());
        prop_assert!((q - qg).abs() <= 1e-10 * (1.0 + q.abs()));
        let (m, mg) = (mean(&f, iv), mean(&g, moved));
        prop_assert!((m - mg).abs() <= 1e-10 * (1.0 + m.abs()));
    }

    #[test]
    fn scale_covariance((f, iv) in convex_case(), c in 0.1f64..10.0) {
        let g = Expression::constant(c) * f.clone();
        let p = convexity_profile(&f, iv, 65).unwrap();
        let pg = convexity_profile(&g, iv, 65).unwrap();
        prop_assert_eq!(p.f_convex, pg.f_convex);
        prop_assert_eq!(p.f2_shape, pg.f2_shape);
        prop_assume!(p.f2_shape.is_determinate());
        let s = quarter_defect_sandwich(&f, iv, &p).unwrap();
        let sg = quarter_defect_sandwich(&g, iv, &pg).unwrap();
        prop_assert!((c * s.defect.lower - sg.defect.lower).abs() <= 1e-12 * (1.0 + sg.defect.lower.abs()));
        prop_assert!((c * s.defect.upper - sg.defect.upper).abs() <= 1e-12 * (1.0 + sg.defect.upper.abs()));
        let t = simpson_defect_sandwich(&f, iv, &p).unwrap();
        let tg = simpson_defect_sandwich(&g, iv, &pg).unwrap();
        prop_assert!((c * t.defect.upper - tg.defect.upper).abs() <= 1e-12 * (1.0 + tg.defect.upper.abs()));
    }

    #[test]
    fn convex_corpus_profiles_convex((f, iv) in convex_case()) {
        prop_assert_eq!(convexity_profile(&f, iv, 65).unwrap().f_convex, Convexity::Yes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symmetric_pair_triple_is_monotone((f, iv) in convex_case(), t in 0.0f64..=1.0) {
        let [m, pair, ends] = symmetric_pair_triple(&f, iv, t).unwrap();
        let slack = 1e-12 * (1.0 + ends.abs());
        prop_assert!(m <= pair + slack && pair <= ends + slack, "{m} {pair} {ends}");
    }
}
