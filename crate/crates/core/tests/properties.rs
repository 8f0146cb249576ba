use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vflab_core::algebra::groebner::is_groebner_basis;
use vflab_core::bs::qhom::sigma_set_with_order;
use vflab_core::rational::{int, rat};
use vflab_core::vfilt::{act_derivation, act_dt, act_s, act_t, act_x};
use vflab_core::weyl::twisted_context;
use vflab_core::*;

fn xy() -> Arc<VarSet> {
    VarSet::new(["x", "y"]).unwrap()
}

fn poly_strategy(vars: Arc<VarSet>, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(&vars);
        for (e, num, den) in terms {
            p.add_term(Monomial::new(e), rat(num, den));
        }
        p
    })
}

fn random_coefficient(rng: &mut ChaCha8Rng, vars: &Arc<VarSet>, max_exp: u32) -> Polynomial {
    let mut h = Polynomial::zero(vars);
    for _ in 0..rng.gen_range(1..=2) {
        let m = Monomial::new((0..vars.len()).map(|_| rng.gen_range(0..=max_exp)).collect());
        h.add_term(m, rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    }
    h
}

fn random_operator(seed: u64, ctx: &Arc<WeylContext>, max_exp: u32) -> WeylOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut op = WeylOperator::zero(ctx);
    for _ in 0..rng.gen_range(1..=3) {
        let h = random_coefficient(&mut rng, ctx.coeff_vars(), max_exp);
        let beta = Monomial::new((0..ctx.nvars()).map(|_| rng.gen_range(0..=2)).collect());
        op = op.try_add(&WeylOperator::term(ctx, h, beta).unwrap()).unwrap();
    }
    op
}

fn random_element(seed: u64, module: &Arc<BfModule>) -> BfElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps: Vec<(u32, Polynomial)> = (0..rng.gen_range(1..=3))
        .map(|_| (rng.gen_range(0..=3), random_coefficient(&mut rng, module.vars(), 3)))
        .collect();
    BfElement::from_components(module, comps).unwrap()
}

fn sample_f(k: usize) -> Polynomial {
    let texts = ["x^2 + y^3", "x*y", "x^2*y^3", "x^3 + y^4 + x*y^2"];
    parse_polynomial(texts[k % texts.len()], &xy()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(
        a in poly_strategy(xy(), 4, 3),
        b in poly_strategy(xy(), 4, 3),
        c in poly_strategy(xy(), 4, 3),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&xy()), a.clone());
    }

    #[test]
    fn parse_round_trip(p in poly_strategy(xy(), 5, 4)) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text, &xy()).unwrap(), p);
    }

    #[test]
    fn product_rule_for_partials(a in poly_strategy(xy(), 3, 3), b in poly_strategy(xy(), 3, 3)) {
        for i in 0..2 {
            let lhs = (&a * &b).partial(i);
            let rhs = &(&a.partial(i) * &b) + &(&a * &b.partial(i));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_properties(
        g1 in poly_strategy(xy(), 3, 3),
        g2 in poly_strategy(xy(), 3, 3),
        h in poly_strategy(xy(), 2, 2),
    ) {
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let ideal = Ideal::new(&xy(), [g1.clone(), g2.clone()]).unwrap();
            let gb = groebner_basis(&ideal, &order);
            prop_assert!(is_groebner_basis(&gb, &order));
            for g in [&g1, &g2] {
                prop_assert!(normal_form(g, &gb, &order).is_zero());
            }
            let again = groebner_basis(&Ideal::new(&xy(), gb.clone()).unwrap(), &order);
            prop_assert_eq!(&again, &gb);
            let member = &(&g1 * &h) + &g2;
            prop_assert!(ideal_membership(&member, &ideal, &order).unwrap());
        }
    }

    #[test]
    fn standard_monomials_form_an_order_ideal(
        a in 1u32..=4,
        b in 1u32..=4,
        g in poly_strategy(xy(), 3, 3),
    ) {
        let x = Polynomial::var_at(&xy(), 0).pow(a);
        let y = Polynomial::var_at(&xy(), 1).pow(b);
        let ideal = Ideal::new(&xy(), [x, y, g]).unwrap();
        let basis = standard_monomials(&ideal, &MonomialOrder::GrevLex, 1000).unwrap();
        prop_assert!(basis.finite);
        prop_assert!(basis.monomials.len() <= (a * b) as usize);
        for m in &basis.monomials {
            for i in 0..2 {
                if m.exps()[i] > 0 {
                    let down = m.with_exp(i, m.exps()[i] - 1);
                    prop_assert!(basis.monomials.contains(&down));
                }
            }
        }
    }

    #[test]
    fn sigma_multiset_is_order_independent(a in 2u32..=6, b in 2u32..=6, c in 0u32..=4) {
        let text = if c < 2 {
            format!("x^{a} + y^{b}")
        } else {
            format!("x^{a} + y^{b} + z^{c}")
        };
        let f = parse_polynomial_auto(&text).unwrap();
        let mut w = vec![rat(1, a as i64), rat(1, b as i64)];
        if c >= 2 {
            w.push(rat(1, c as i64));
        }
        let w = validate_weighted_homogeneous(&f, &w).unwrap();
        let grevlex = sigma_set_with_order(&f, &w, &MonomialOrder::GrevLex).unwrap();
        let lex = sigma_set_with_order(&f, &w, &MonomialOrder::Lex).unwrap();
        let weighted = MonomialOrder::weighted(w.weights().to_vec(), MonomialOrder::Lex).unwrap();
        let weighted = sigma_set_with_order(&f, &w, &weighted).unwrap();
        prop_assert_eq!(&grevlex, &lex);
        prop_assert_eq!(&grevlex, &weighted);
        let mut mu = (a - 1) * (b - 1);
        if c >= 2 {
            mu *= c - 1;
        }
        prop_assert_eq!(grevlex.milnor_number(), mu as usize);
    }

    #[test]
    fn weyl_product_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let ctx = WeylContext::with_s(&xy()).unwrap();
        let (p, q, r) = (
            random_operator(s1, &ctx, 2),
            random_operator(s2, &ctx, 2),
            random_operator(s3, &ctx, 2),
        );
        let left = p.try_mul(&q).unwrap().try_mul(&r).unwrap();
        let right = p.try_mul(&q.try_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn adjoint_reverses_products(s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = WeylContext::with_s(&xy()).unwrap();
        let (p, q) = (random_operator(s1, &ctx, 2), random_operator(s2, &ctx, 2));
        let lhs = p.try_mul(&q).unwrap().adjoint();
        let rhs = q.adjoint().try_mul(&p.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn twisted_action_is_a_module_action(s1 in any::<u64>(), s2 in any::<u64>(), k in 0usize..4) {
        let f = sample_f(k);
        let ctx = twisted_context(f.vars()).unwrap();
        let (p, q) = (random_operator(s1, &ctx, 1), random_operator(s2, &ctx, 1));
        let fs = TwistedElement::f_power_s(&ctx, &f, 0).unwrap();
        let lhs = act_on_twisted(&p.try_mul(&q).unwrap(), &fs).unwrap();
        let rhs = act_on_twisted(&p, &act_on_twisted(&q, &fs).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bf_actions_satisfy_weyl_relations(seed in any::<u64>(), k in 0usize..4) {
        let module = BfModule::new(sample_f(k)).unwrap();
        let e = random_element(seed, &module);
        let comm = act_dt(&act_t(&e)).try_sub(&act_t(&act_dt(&e))).unwrap();
        prop_assert_eq!(comm, e.clone());
        for i in 0..2 {
            for j in 0..2 {
                let lhs = act_derivation(i, &act_x(j, &e).unwrap()).unwrap();
                let rhs = act_x(j, &act_derivation(i, &e).unwrap()).unwrap();
                let comm = lhs.try_sub(&rhs).unwrap();
                let want = if i == j { e.clone() } else { BfElement::zero(&module) };
                prop_assert_eq!(comm, want);
            }
            // derivations commute with t
            let lhs = act_derivation(i, &act_t(&e)).unwrap();
            let rhs = act_t(&act_derivation(i, &e).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        let s_def = act_dt(&act_t(&e)).scale(&int(-1));
        prop_assert_eq!(act_s(&e), s_def);
    }

    #[test]
    fn tau_intertwines_s_and_t(
        coeffs in prop::collection::vec(-4i64..=4, 1..=4),
        u in poly_strategy(xy(), 2, 2),
        k in 0usize..4,
    ) {
        let f = sample_f(k);
        let module = BfModule::new(f.clone()).unwrap();
        let p = UniPoly::new(coeffs.into_iter().map(int).collect());
        let base = tau(&p, &u, &module).unwrap();
        let sp = p.mul(&UniPoly::s());
        prop_assert_eq!(tau(&sp, &u, &module).unwrap(), act_s(&base));
        let shifted = p.shift(&int(1));
        let uf = &u * &f;
        prop_assert_eq!(tau(&shifted, &uf, &module).unwrap(), act_t(&base));
    }
}

fn exponents() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=6, 1..=3).prop_filter("not all zero", |a| a.iter().any(|&x| x > 0))
}

fn lambda() -> impl Strategy<Value = Rational> {
    (0i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplier_ideals_are_periodic(a in exponents(), l in lambda()) {
        let d = MonomialDivisor::new(a.clone()).unwrap();
        let j = multiplier_ideal_monomial(&d, &l);
        let j1 = multiplier_ideal_monomial(&d, &(&l + int(1)));
        let f = Monomial::new(a);
        let times_f: Vec<Monomial> = j.generators().iter().map(|g| g.mul(&f)).collect();
        prop_assert_eq!(j1.generators(), &times_f[..]);
    }

    #[test]
    fn multiplier_ideals_decrease(a in exponents(), l in lambda(), m in lambda()) {
        let d = MonomialDivisor::new(a).unwrap();
        let (lo, hi) = if l <= m { (l, m) } else { (m, l) };
        let big = multiplier_ideal_monomial(&d, &lo);
        let small = multiplier_ideal_monomial(&d, &hi);
        prop_assert!(small.is_subset_of(&big));
    }

    #[test]
    fn one_is_always_a_jumping_number(a in exponents(), extra in 0i64..=3) {
        let d = MonomialDivisor::new(a.clone()).unwrap();
        let bound = int(1 + extra);
        let jumps = jumping_numbers_monomial(&d, &bound);
        prop_assert!(jumps.contains(&int(1)));
        let lct = rat(1, *a.iter().max().unwrap() as i64);
        prop_assert_eq!(jumps.first(), Some(&lct));
        for j in jumps.iter().filter(|j| *j + int(1) <= bound) {
            prop_assert!(jumps.contains(&(j + int(1))));
        }
    }
}
