use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use z2q::calculus::{coaction, de_rham, omega, Side};
use z2q::engine::{normal_form, Letter, Monomial, Strategy as Rewrite};
use z2q::expr::{eval_str, Value};
use z2q::hopf::coproduct;
use z2q::{Degree, Element, FreeElement, Presentation, QScalar, TensorElement};

fn pres(name: &str) -> Arc<Presentation> {
    Presentation::builtin(name).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((rational(), -3i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(QScalar::zero(), |acc, (c, e)| acc + QScalar::monomial(c, e))
    })
}

fn nonzero_scalar() -> impl Strategy<Value = QScalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn word(p: Arc<Presentation>, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let n = p.num_generators();
    let laurent: Vec<bool> = p.generators().iter().map(|g| g.laurent).collect();
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        ls.into_iter()
            .map(|(g, inv)| if inv && laurent[g] { Letter::inv(g) } else { Letter::new(g) })
            .collect()
    })
}

fn element(p: Arc<Presentation>, max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(p.clone(), max_len), nonzero_scalar()), 0..4).prop_map(move |terms| {
        terms.iter().fold(Element::zero(&p), |acc, (w, c)| acc + Element::from_word(&p, w).scale(c))
    })
}

fn any_presentation() -> impl Strategy<Value = Arc<Presentation>> {
    prop::sample::select(vec!["dqsp", "dqsp-ext", "dqsp-omega", "dqsp-ops", "manin-sp", "z22-commutative"])
        .prop_map(pres)
}

fn monomial_in(p: Arc<Presentation>, max_exp: i32) -> impl Strategy<Value = Monomial> {
    let gens = p.generators().to_vec();
    let ranges: Vec<_> = gens
        .iter()
        .map(|g| {
            if g.nilpotent {
                0..=1
            } else if g.laurent {
                -max_exp..=max_exp
            } else {
                0..=max_exp
            }
        })
        .collect();
    ranges.prop_map(Monomial::from_exponents)
}

fn word_degree(p: &Presentation, w: &[Letter]) -> Degree {
    w.iter().fold(Degree::zero(p.degree_len()), |d, l| d.add(&p.generator(l.gen).degree).unwrap())
}

const Q_VALUES: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 3)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, QScalar::zero());
        prop_assert_eq!(&a * &QScalar::one(), a.clone());
    }

    #[test]
    fn scalar_eval_is_a_homomorphism(a in scalar(), b in scalar(), i in 0usize..3) {
        let (n, d) = Q_VALUES[i];
        let q0 = BigRational::new(n.into(), d.into());
        let ev = |s: &QScalar| s.eval(&q0).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<QScalar>().unwrap(), a);
    }

    #[test]
    fn normal_form_is_idempotent_and_strategy_free(
        (p, w) in any_presentation().prop_flat_map(|p| (Just(p.clone()), word(p, 10))),
        c in nonzero_scalar(),
    ) {
        let fast = Element::from_word(&p, &w).scale(&c);
        let left = FreeElement::word(&p, w.clone(), c.clone()).normal_form(Rewrite::Leftmost);
        let right = FreeElement::word(&p, w.clone(), c.clone()).normal_form(Rewrite::Rightmost);
        prop_assert_eq!(&left, &fast);
        prop_assert_eq!(&right, &fast);
        let again = fast.terms().fold(Element::zero(&p), |acc, (m, k)| {
            acc + normal_form(&p, &m.word(), k.clone())
        });
        prop_assert_eq!(again, fast);
    }

    #[test]
    fn products_preserve_the_grading(
        (p, w) in any_presentation().prop_flat_map(|p| (Just(p.clone()), word(p, 10))),
    ) {
        let e = Element::from_word(&p, &w);
        let expected = word_degree(&p, &w);
        for (m, _) in e.terms() {
            prop_assert_eq!(m.degree(&p), expected);
        }
        if !e.is_zero() {
            prop_assert_eq!(e.homogeneous_degree(), Some(expected));
        }
    }

    #[test]
    fn multiplication_is_associative(
        (a, b, c) in any_presentation().prop_flat_map(|p| (element(p.clone(), 3), element(p.clone(), 3), element(p, 3))),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn render_then_parse_is_identity(
        (p, e) in prop::sample::select(vec!["dqsp", "dqsp-ext", "dqsp-omega", "dqsp-ops", "manin-sp"])
            .prop_flat_map(|n| { let p = pres(n); (Just(p.clone()), element(p, 4)) }),
    ) {
        let text = e.to_string();
        let back = match eval_str(&text, &p).unwrap() {
            Value::Element(x) => x,
            Value::Scalar(s) => Element::scalar(&p, s),
            Value::Tensor(t) => panic!("unexpected tensor {t}"),
        };
        prop_assert_eq!(back, e, "{}", text);
    }
}

fn dqsp_element(max_len: usize) -> impl Strategy<Value = Element> {
    element(pres("dqsp"), max_len)
}

fn pure_tensor() -> impl Strategy<Value = TensorElement> {
    (dqsp_element(2), dqsp_element(2)).prop_map(|(a, b)| TensorElement::pure(&[&a, &b]))
}

fn homogeneous_tensor() -> impl Strategy<Value = TensorElement> {
    let p = pres("dqsp");
    (monomial_in(p.clone(), 2), monomial_in(p.clone(), 2), nonzero_scalar()).prop_map(move |(a, b, c)| {
        TensorElement::pure(&[&Element::from_monomial(&p, a, c), &Element::from_monomial(&p, b, QScalar::one())])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_product_is_associative(s in pure_tensor(), t in pure_tensor(), u in pure_tensor()) {
        let left = s.try_mul(&t).unwrap().try_mul(&u).unwrap();
        let right = s.try_mul(&t.try_mul(&u).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn swap_is_an_involution(t in homogeneous_tensor()) {
        prop_assert_eq!(t.swap().unwrap().swap().unwrap(), t);
    }

    #[test]
    fn coproduct_preserves_degree(m in monomial_in(pres("dqsp-ext"), 4)) {
        let p = pres("dqsp-ext");
        let e = Element::from_monomial(&p, m.clone(), QScalar::one());
        let delta = coproduct(&e).unwrap();
        for (key, _) in delta.terms() {
            let total = key[0].degree(&p).add(&key[1].degree(&p)).unwrap();
            prop_assert_eq!(total, m.degree(&p));
        }
    }

    #[test]
    fn coproduct_is_multiplicative(a in dqsp_element(3), b in dqsp_element(3)) {
        let lhs = coproduct(&(&a * &b)).unwrap();
        let rhs = coproduct(&a).unwrap().try_mul(&coproduct(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_leibniz(a in monomial_in(omega(), 2), b in element(omega(), 3)) {
        let w = omega();
        let a = Element::from_monomial(&w, a, QScalar::one());
        let sign = if a.terms().next().map_or(0, |(m, _)| m.form_degree(&w)) % 2 == 1 { -1 } else { 1 };
        let lhs = de_rham(&(&a * &b)).unwrap();
        let rhs = &de_rham(&a).unwrap() * &b + (&a * &de_rham(&b).unwrap()).scale(&QScalar::from_int(sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squares_to_zero(e in element(omega(), 5)) {
        prop_assert!(de_rham(&de_rham(&e).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn coaction_bimodule_rule(a in monomial_in(pres("dqsp"), 3), g in 0usize..4, left in any::<bool>()) {
        let w = omega();
        let a = Element::from_monomial(&pres("dqsp"), a, QScalar::one()).transport(&w).unwrap();
        let form = Element::generator(&w, ["dx", "dxi", "dtheta", "dz"][g]).unwrap();
        let side = if left { Side::Left } else { Side::Right };
        let lhs = coaction(side, &(&a * &form)).unwrap();
        let rhs = coproduct(&a.transport(&pres("dqsp")).unwrap())
            .unwrap()
            .transport(&[w.clone(), w.clone()])
            .unwrap()
            .try_mul(&coaction(side, &form).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
