use conequant_core::algebra::rational::{frac, int};
use conequant_core::algebra::ring::RatFunRing;
use conequant_core::algebra::{Poly, RatFun};
use conequant_core::cone::bracket;
use conequant_core::curve::{AnyChart, Place, RationalDifferential};
use conequant_core::gen;
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn derivative_n(f: &RatFun, n: usize) -> RatFun {
    (0..n).fold(f.clone(), |acc, _| acc.derivative())
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn ratfun_field_axioms(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (a, b, c) = (gen::ratfun(r), gen::ratfun(r), gen::ratfun(r));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn ratfun_reduction_is_canonical(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (p, q) = (gen::poly(r, 3), gen::denominator(r));
        let c = gen::denominator(r);
        let f = RatFun::new(p.clone(), q.clone());
        prop_assert_eq!(RatFun::new(&p * &c, &q * &c), f.clone());
        if !p.is_zero() {
            let g = (&p * &c).gcd(&(&q * &c));
            prop_assert!(g.div_exact(&c).is_some() || c.div_exact(&g).is_some());
            prop_assert!((&p * &c).div_exact(&g).is_some());
        }
        prop_assert_eq!(f.den().leading(), int(1));
    }

    #[test]
    fn ratfun_derivation(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (a, b) = (gen::ratfun(r), gen::ratfun(r));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        let ds = a.derivatives(3);
        for (n, d) in ds.iter().enumerate() {
            prop_assert_eq!(d, &derivative_n(&a, n));
        }
    }

    #[test]
    fn expansion_is_a_ring_morphism(seed in any::<u64>(), c in -3i64..=3, at_inf: bool) {
        let r = &mut gen::rng(seed);
        let (f, g) = (gen::ratfun(r), gen::ratfun(r));
        let place = if at_inf { Place::Infinity } else { Place::Finite(int(c)) };
        let AnyChart::Rat(chart) = place.chart() else { unreachable!() };
        let prec = 8;
        let lhs = chart.expand(&(&f * &g), prec);
        let rhs = chart.expand(&f, prec).mul(&chart.expand(&g, prec));
        prop_assert!(lhs.agrees(&rhs), "{} vs {}", lhs.fmt_var("u"), rhs.fmt_var("u"));
        let sum = chart.expand(&(&f + &g), prec);
        prop_assert!(sum.agrees(&chart.expand(&f, prec).add(&chart.expand(&g, prec))));
    }

    #[test]
    fn expansion_commutes_with_derivative(seed in any::<u64>(), c in -3i64..=3) {
        let r = &mut gen::rng(seed);
        let f = gen::ratfun(r);
        let AnyChart::Rat(chart) = Place::Finite(int(c)).chart() else { unreachable!() };
        let d = chart.expand(&f.derivative(), 6);
        prop_assert!(d.agrees(&chart.expand(&f, 7).derivative()));
    }

    #[test]
    fn diffpoly_leibniz(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (p, q) = (gen::sparse_body(r, 0), gen::sparse_body(r, 1));
        prop_assert_eq!(p.mul(&q).derive(), p.derive().mul(&q).add(&p.mul(&q.derive())));
    }
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn operator_products_associate(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (t, u, v) = (gen::light_psido(r), gen::light_psido(r), gen::light_psido(r));
        let floor = Some(t.top() + u.top() + v.top() - 8);
        let left = t.mul_to(&u, floor).unwrap().mul_to(&v, floor).unwrap();
        let right = t.mul_to(&u.mul_to(&v, floor).unwrap(), floor).unwrap();
        prop_assert!(left.agrees(&right));
        let (a, b, c) = (gen::laurent_psido(r), gen::laurent_psido(r), gen::laurent_psido(r));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        prop_assert!(left.agrees(&a.mul(&b.mul(&c).unwrap()).unwrap()));
    }

    #[test]
    fn operator_products_distribute(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let (t, u, v) = (gen::ratfun_psido(r), gen::ratfun_psido(r), gen::ratfun_psido(r));
        let lhs = t.mul(&u.add(&v).unwrap()).unwrap();
        prop_assert!(lhs.agrees(&t.mul(&u).unwrap().add(&t.mul(&v).unwrap()).unwrap()));
    }

    #[test]
    fn inverses_on_both_sides(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let t = gen::light_psido(r);
        let inv = t.invert_to(Some(-t.top() - 6)).unwrap();
        let one = conequant_core::PsiDO::one(RatFunRing::standard());
        prop_assert!(t.mul(&inv).unwrap().agrees(&one));
        prop_assert!(inv.mul(&t).unwrap().agrees(&one));
    }

    #[test]
    fn change_of_derivation_roundtrips(seed in any::<u64>()) {
        let r = &mut gen::rng(seed);
        let t = gen::poly_psido(r, 0);
        let g = gen::nonzero_ratfun(r);
        let floor = Some(t.top() - 6);
        let there = t.change_derivation_to(&g, RatFunRing::new(g.clone()), floor).unwrap();
        let back = there.change_derivation_to(&g.inv().unwrap(), RatFunRing::standard(), floor).unwrap();
        prop_assert!(back.agrees(&t));
    }

    #[test]
    fn twists_compose(seed in any::<u64>(), l in -3i64..=3, m in 1i64..=3) {
        let r = &mut gen::rng(seed);
        let t = gen::laurent_psido(r);
        let (a, b) = (frac(l, 2), frac(1, m));
        let lhs = t.twist(&a).unwrap().twist(&b).unwrap();
        prop_assert!(lhs.agrees(&t.twist(&(&a + &b)).unwrap()));
        prop_assert!(t.twist(&int(0)).unwrap().agrees(&t));
    }

    #[test]
    fn bracket_is_a_lie_bracket(seed in any::<u64>(), i in 0u32..=2, j in 0u32..=2, k in 0u32..=2) {
        let r = &mut gen::rng(seed);
        let w = |r: &mut gen::Rng8, n| RationalDifferential::new(RatFun::from_poly(gen::poly(r, 3)), n);
        let (a, b, c) = (w(r, i), w(r, j), w(r, k));
        let ab = bracket(&a, &b);
        prop_assert_eq!(ab.f.clone(), -&bracket(&b, &a).f);
        let jac = &(&bracket(&a, &bracket(&b, &c)).f + &bracket(&b, &bracket(&c, &a)).f) + &bracket(&c, &bracket(&a, &b)).f;
        prop_assert!(jac.is_zero());
        // Leibniz in the second slot
        let lhs = bracket(&a, &b.mul(&c)).f;
        let rhs = &(&bracket(&a, &b).f * &c.f) + &(&b.f * &bracket(&a, &c).f);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn poly_gcd_small_cases() {
    let z = Poly::z();
    let one = Poly::one();
    let a = &(&z - &one) * &(&z + &one);
    let b = &(&z - &one) * &z;
    assert_eq!(a.gcd(&b), &z - &one);
    assert_eq!(a.gcd(&Poly::zero()), a);
}
