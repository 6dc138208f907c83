//! Ring axioms, printing, parsing and substitution of exact polynomials.

use germlab_core::poly::{jacobian_minor_ideal, parse_polynomial, rat, Monomial, Poly, Replacement, VarList};
use proptest::prelude::*;

fn xy() -> VarList {
    VarList::new(["x", "y"])
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), -6i64..=6, 1i64..=3), 0..6).prop_map(|terms| {
        let v = xy();
        terms
            .into_iter()
            .fold(Poly::zero(&v), |acc, ((a, b), p, q)| acc + Poly::monomial(&v, Monomial(vec![a, b]), rat(p, q)))
    })
}

fn p(s: &str) -> Poly {
    parse_polynomial(s, &xy()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&xy()), a.clone());
    }

    #[test]
    fn print_then_parse_is_identity(a in poly_strategy()) {
        prop_assert_eq!(parse_polynomial(&a.to_string(), &xy()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), s in poly_strategy()) {
        let v = xy();
        let subst = |q: &Poly| q.substitute(&[("x", Replacement::Poly(s.clone()))]).unwrap().with_vars(&v).unwrap();
        prop_assert_eq!(subst(&(&a * &b)), &subst(&a) * &subst(&b));
        prop_assert_eq!(subst(&(&a + &b)), &subst(&a) + &subst(&b));
    }
}

#[test]
fn parsing_examples() {
    let v = xy();
    let expected =
        Poly::monomial(&v, Monomial(vec![0, 3]), rat(1, 1)) - Poly::monomial(&v, Monomial(vec![2, 1]), rat(1, 1));
    assert_eq!(p("y^3 - x^2*y"), expected);
    assert_eq!(p("x*y + y*x"), Poly::monomial(&v, Monomial(vec![1, 1]), rat(2, 1)));
    let zero = parse_polynomial("0", &VarList::new(["x"])).unwrap();
    assert!(zero.is_zero());
    assert_eq!(zero.num_terms(), 0);
    assert!(parse_polynomial("x*z", &v).is_err());
    assert!(parse_polynomial("x^-1", &v).is_err());
    assert!(parse_polynomial("2x", &v).is_err());
}

#[test]
fn substitution_examples() {
    let y = VarList::new(["y"]);
    let y1 = VarList::new(["y1"]);
    let r = parse_polynomial("y^2", &y).unwrap().substitute(&[("y", Poly::var(&y1, "y1").unwrap().into())]).unwrap();
    assert_eq!(r.to_string(), "y1^2");

    let xyt = VarList::new(["x", "y", "t"]);
    let ruas = parse_polynomial("x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6 + t*y^7", &xyt).unwrap();
    let at_zero = ruas.substitute(&[("t", rat(0, 1).into())]).unwrap();
    assert_eq!(at_zero, p("x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6"));

    let cut = p("y^3 - x^2*y").substitute(&[("x", rat(0, 1).into())]).unwrap();
    assert_eq!(cut.to_string(), "y^3");

    let twice = p("x").substitute(&[("x", rat(1, 1).into()), ("x", rat(2, 1).into())]);
    assert!(twice.is_err());
}

#[test]
fn maximal_minors() {
    let v = xy();
    let minors = jacobian_minor_ideal(&[p("y^2 - x^3"), p("y")], &v).unwrap();
    assert_eq!(minors, vec![p("-3*x^2")]);
    let unit = jacobian_minor_ideal(&[p("x")], &v).unwrap();
    assert_eq!(unit, vec![p("1")]);

    // cofactor expansion oracle on (xy, x - y) in (x, y, z)
    let xyz = VarList::new(["x", "y", "z"]);
    let g = |s: &str| parse_polynomial(s, &xyz).unwrap();
    let minors = jacobian_minor_ideal(&[g("x*y"), g("x - y")], &xyz).unwrap();
    // columns (x,y): y*(-1) - x*1; (x,z) and (y,z) vanish
    assert_eq!(minors, vec![g("-x - y")]);
    assert!(jacobian_minor_ideal(&[g("x"), g("y"), g("z"), g("x*y")], &xyz).is_err());
}
