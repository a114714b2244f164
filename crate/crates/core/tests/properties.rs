use proptest::prelude::*;

use cmweyl::free::{AutGenerator, Automorphism, FreeElement, Letter};
use cmweyl::groebner::rmul_monomial;
use cmweyl::matrix::dot;
use cmweyl::rat::{rat, ratq};
use cmweyl::resolution::{compatibility_defect, delta_x_recurrence, g2_on_x};
use cmweyl::skew::product_equals;
use cmweyl::{
    delta_x, equivalent, groebner, omega_ideal, theta, CMPoint, Chirality, Exp, Json, Matrix, Rat,
    RatMatrix, SkewSum, ThetaOptions, UniPoly, WeylElement,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratq(n, d))
}

fn weyl(max_deg: usize, max_terms: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -5i64..=5), 0..=max_terms)
        .prop_map(|ts| WeylElement::from_terms(ts.into_iter().map(|(k, l, c)| (k, l, rat(c)))))
}

fn free(max_len: usize, max_terms: usize) -> impl Strategy<Value = FreeElement> {
    let word = prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..=max_len);
    prop::collection::vec((word, -4i64..=4), 0..=max_terms).prop_map(|ts| {
        ts.into_iter().fold(FreeElement::zero(), |acc, (w, c)| {
            acc.add(&FreeElement::word(w, rat(c)))
        })
    })
}

fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rat(), n * n).prop_map(move |d| Matrix::new(n, n, d))
}

fn invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    matrix(n).prop_filter("singular", |g| g.det() != rat(0))
}

/// Points with diagonal `X`: one-point `(a, b)` or two distinct eigenvalues.
fn point() -> impl Strategy<Value = CMPoint> {
    prop_oneof![
        (small_rat(), small_rat()).prop_map(|(a, b)| CMPoint::single(a, b)),
        (small_rat(), small_rat(), small_rat(), small_rat())
            .prop_filter("distinct eigenvalues", |(a1, a2, _, _)| a1 != a2)
            .prop_map(|(a1, a2, b1, b2)| CMPoint::diagonal(&[a1, a2], &[b1, b2]).unwrap()),
    ]
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(|c| UniPoly::from_ints(&c))
}

fn aut_generator() -> impl Strategy<Value = AutGenerator> {
    prop_oneof![
        small_poly().prop_map(AutGenerator::ShiftY),
        small_poly().prop_map(AutGenerator::ShiftX),
        (-2i64..=2).prop_map(|t| AutGenerator::Linear([rat(1), rat(t), rat(0), rat(1)])),
        Just(AutGenerator::Linear([rat(0), rat(1), rat(-1), rat(0)])),
    ]
}

fn unit(n: usize, r: usize) -> Vec<Rat> {
    (0..n)
        .map(|t| if t == r { rat(1) } else { rat(0) })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_product_is_associative(a in weyl(3, 4), b in weyl(3, 4), c in weyl(2, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn weyl_product_distributes(a in weyl(3, 4), b in weyl(3, 4), c in weyl(3, 4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn commutator_is_one(k in 0usize..5, l in 0usize..5) {
        // [x, x^k y^l] = l x^k y^(l-1)
        let m = WeylElement::monomial(k, l, rat(1));
        let lhs = &(&WeylElement::x() * &m) - &(&m * &WeylElement::x());
        let rhs = if l == 0 { WeylElement::zero() } else { WeylElement::monomial(k, l - 1, rat(l as i64)) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_reverses_monomials(k in 0usize..5, l in 0usize..5, a in weyl(3, 4)) {
        let m = WeylElement::monomial(k, l, rat(1));
        let reversed = &WeylElement::monomial(0, l, rat(1)) * &WeylElement::monomial(k, 0, rat(1));
        prop_assert_eq!(m.tau(), reversed);
        prop_assert_eq!(a.tau().leading_exp(), a.leading_exp());
    }

    #[test]
    fn reversed_evaluation_is_anti_multiplicative(a in free(3, 4), b in free(3, 4), x in matrix(2), y in matrix(2)) {
        let ab = a.mul(&b).eval_reversed(&x, &y);
        prop_assert_eq!(ab, b.eval_reversed(&x, &y).mul(&a.eval_reversed(&x, &y)));
    }

    #[test]
    fn right_action_kills_the_relation_ideal(p in point(), a in free(4, 4)) {
        // m(a w + ε(a)) = 0 with m(a) = a^τ(X, Y) i and ε(a) = j m(a)
        let (x, y) = (FreeElement::x(), FreeElement::y());
        let w = x.mul(&y).sub(&y.mul(&x)).sub(&FreeElement::one());
        let m = |f: &FreeElement| f.eval_reversed(&p.x, &p.y).apply(&p.i);
        let eps = dot(&p.j, &m(&a));
        let lhs = a.mul(&w).add(&FreeElement::one().scale(&eps));
        prop_assert!(m(&lhs).iter().all(|c| *c == rat(0)));
    }

    #[test]
    fn leading_exponents_add(a in weyl(3, 4), b in weyl(3, 4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (ea, eb) = (a.leading_exp().unwrap(), b.leading_exp().unwrap());
        prop_assert_eq!((&a * &b).leading_exp(), Some(Exp::new(ea.k + eb.k, ea.l + eb.l)));
    }

    #[test]
    fn eval_tau_matches_reversed_words(a in weyl(3, 4), x in matrix(2), y in matrix(2)) {
        let direct = a.eval_tau(&x, &y).unwrap();
        let words = FreeElement::lift(&a).eval_reversed(&x, &y);
        prop_assert_eq!(direct, words);
    }

    #[test]
    fn adjugate_inverts_up_to_determinant(m in matrix(3)) {
        let d = m.det();
        let id = Matrix::<Rat>::identity(3).scale(&d);
        prop_assert_eq!(m.adjugate().mul(&m), id.clone());
        prop_assert_eq!(m.mul(&m.adjugate()), id);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }

    #[test]
    fn points_satisfy_rank_one_and_trace(p in point()) {
        prop_assert!(p.validate());
        prop_assert_eq!(p.trace_ji(), rat(p.n as i64));
    }

    #[test]
    fn conjugates_are_equivalent(p in point(), g in invertible(2)) {
        prop_assume!(p.n == 2);
        let q = p.conjugate(&g).unwrap();
        prop_assert!(q.validate());
        prop_assert_eq!(p.lambda_table(4), q.lambda_table(4));
        let eq = equivalent(&p, &q).unwrap();
        prop_assert!(eq.equivalent);
        let h = eq.intertwiner.unwrap();
        prop_assert_eq!(h.mul(&p.x), q.x.mul(&h));
        prop_assert_eq!(h.mul(&p.y), q.y.mul(&h));
    }

    #[test]
    fn chi_kappa_is_one(p in point()) {
        let (kappa, chi) = p.kappa();
        prop_assert!(product_equals(&chi, &kappa, &SkewSum::one(Chirality::XY)).unwrap());
        prop_assert!(p.kappa_series_check(3));
    }

    #[test]
    fn resolution_identities(p in point(), k in 0usize..3, m in 0usize..5) {
        prop_assert!(g2_on_x(&p).iter().all(SkewSum::is_zero));
        for r in 0..p.n {
            let v = unit(p.n, r);
            prop_assert!(delta_x(&p, &v, k, m).sub(&delta_x_recurrence(&p, &v, k, m)).unwrap().is_zero());
        }
        prop_assert!(compatibility_defect(&p).is_zero());
    }

    #[test]
    fn act_respects_composition(p in point(), s in aut_generator(), t in aut_generator()) {
        let sa = Automorphism::from_generator(&s).unwrap();
        let ta = Automorphism::from_generator(&t).unwrap();
        let once = p.act(&sa.compose(&ta)).unwrap();
        let twice = p.act(&ta).unwrap().act(&sa).unwrap();
        prop_assert_eq!(once.x, twice.x);
        prop_assert_eq!(once.y, twice.y);
        let back = p.act(&sa).unwrap().act(&sa.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.x, p.x);
        prop_assert_eq!(back.y, p.y);
    }

    #[test]
    fn automorphisms_are_algebra_maps(s in aut_generator(), a in weyl(2, 3), b in weyl(2, 3)) {
        let sa = Automorphism::from_generator(&s).unwrap();
        prop_assert_eq!(sa.apply(&(&a * &b)), &sa.apply(&a) * &sa.apply(&b));
        prop_assert_eq!(sa.inverse().unwrap().apply(&sa.apply(&a)), a);
    }

    #[test]
    fn normal_form_is_a_well_defined_reduction(p in point(), a in weyl(3, 4), c in weyl(2, 2)) {
        let gb = groebner(&omega_ideal(&p).unwrap().cleared_generators()).unwrap();
        let nf = gb.normal_form(&a).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(nf.iter().all(|(e, _)| !gb.contains_exp(*e)));
        let mut shifted = a.clone();
        for g in &gb.basis {
            shifted = &shifted + &(g * &c);
        }
        prop_assert_eq!(gb.normal_form(&shifted).unwrap(), nf);
        for g in &gb.generators {
            prop_assert!(gb.normal_form(&rmul_monomial(g, Exp::new(1, 1))).unwrap().is_zero());
        }
        prop_assert_eq!(gb.complement().unwrap().len(), p.n);
    }

    #[test]
    fn theta_inverts_omega_on_random_points(p in point()) {
        let gens = omega_ideal(&p).unwrap().cleared_generators();
        let q = theta(&gens, ThetaOptions::default()).unwrap().point;
        prop_assert!(equivalent(&p, &q).unwrap().equivalent);
    }

    #[test]
    fn json_round_trips(p in point(), a in weyl(3, 4)) {
        prop_assert_eq!(CMPoint::from_json_str(&p.to_json_string()).unwrap(), p.clone());
        prop_assert_eq!(WeylElement::from_json_str(&a.to_json_string()).unwrap(), a);
        let (kappa, _) = p.kappa();
        let back = SkewSum::from_json_str(&kappa.to_json_string()).unwrap();
        prop_assert!(back.sub(&kappa).unwrap().is_zero());
    }
}
