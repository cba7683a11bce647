use proptest::prelude::*;

use svpsido::expr::parse_symbol;
use svpsido::psido::{HalfInt, SymVar, Symbol};
use svpsido::ring::{CoeffFn, GaussRat, Scalar, Var};

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| &GaussRat::frac(a, b) + &(&GaussRat::frac(c, d) * &GaussRat::i()))
}

fn coeff() -> impl Strategy<Value = CoeffFn> {
    prop::collection::vec((gauss(), -2i32..=2, -3i32..=3, -3i32..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(CoeffFn::zero(), |acc, (c, k, p, q)| &acc + &CoeffFn::raw(c, k, p, q))
    })
}

fn symbol(var: SymVar, halves: bool) -> impl Strategy<Value = Symbol> {
    let orders = if halves { -6i64..=4 } else { -3i64..=2 };
    prop::collection::vec((coeff(), orders), 1..3).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(c, o)| (if halves { HalfInt::halves(o) } else { HalfInt::int(o) }, c));
        Symbol::from_terms(var, terms)
    })
}

fn top(s: &Symbol) -> HalfInt {
    s.top().unwrap_or(HalfInt::ZERO)
}

const FL: HalfInt = HalfInt(-6);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_ring_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivatives_are_derivations(a in coeff(), b in coeff()) {
        for v in [Var::T, Var::X] {
            let lhs = (&a * &b).deriv(v);
            let rhs = &(&a.deriv(v) * &b) + &(&a * &b.deriv(v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn residue_of_a_derivative_vanishes(a in coeff()) {
        prop_assert!(a.dx().residue(Var::X).is_zero());
        prop_assert!(a.dt().residue(Var::T).is_zero());
        prop_assert!(a.dx().double_residue().is_zero());
    }

    #[test]
    fn scalar_units_invert(c in gauss(), k in -3i32..=3) {
        prop_assume!(!c.is_zero());
        let s = Scalar::monomial(c, k);
        prop_assert_eq!(&s * &s.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn symbol_product_is_associative(a in symbol(SymVar::R, false), b in symbol(SymVar::R, false), c in symbol(SymVar::R, false)) {
        let lhs = a.mul(&b, FL - top(&c)).unwrap().mul(&c, FL).unwrap();
        let rhs = a.mul(&b.mul(&c, FL - top(&a)).unwrap(), FL).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn half_order_product_is_associative(a in symbol(SymVar::Xi, true), b in symbol(SymVar::Xi, true), c in symbol(SymVar::Xi, true)) {
        let lhs = a.mul(&b, FL - top(&c)).unwrap().mul(&c, FL).unwrap();
        let rhs = a.mul(&b.mul(&c, FL - top(&a)).unwrap(), FL).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn jacobi_identity(a in symbol(SymVar::R, false), b in symbol(SymVar::R, false), c in symbol(SymVar::R, false)) {
        let term = |x: &Symbol, y: &Symbol, z: &Symbol| x.bracket(&y.bracket(z, FL - top(x)).unwrap(), FL).unwrap();
        let sum = term(&a, &b, &c).add(&term(&b, &c, &a)).unwrap().add(&term(&c, &a, &b)).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn trace_kills_brackets(a in symbol(SymVar::R, false), b in symbol(SymVar::R, false)) {
        let br = a.bracket(&b, HalfInt::int(-1)).unwrap();
        prop_assert!(br.adler_trace().unwrap().is_zero());
    }

    #[test]
    fn deeper_floors_refine_shallower_ones(a in symbol(SymVar::Xi, true), b in symbol(SymVar::Xi, true)) {
        let shallow = a.mul(&b, HalfInt::int(-2)).unwrap();
        let deep = a.mul(&b, HalfInt::int(-5)).unwrap();
        let cut = deep.filter_orders(|o| o >= HalfInt::int(-2));
        prop_assert!(shallow.filter_orders(|o| o >= HalfInt::int(-2)).sub(&cut).unwrap().is_zero());
        prop_assert!(shallow.floor().map_or(true, |f| f <= HalfInt::int(-2)));
    }

    #[test]
    fn coefficients_round_trip(a in coeff()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<CoeffFn>().unwrap(), a);
    }

    #[test]
    fn symbols_round_trip(a in symbol(SymVar::Xi, true), b in symbol(SymVar::R, false), f in -4i64..=0) {
        let truncated = a.mul(&Symbol::d(SymVar::Xi, HalfInt::HALF), HalfInt::halves(f)).unwrap();
        for (s, var) in [(a, SymVar::Xi), (b, SymVar::R), (truncated, SymVar::Xi)] {
            let text = s.to_string();
            prop_assert_eq!(parse_symbol(&text, var).unwrap(), s);
        }
    }
}
