//! Local quotient dimensions against the Macaulay matrix oracle.

mod common;

use common::{oracle_local_dimension, poly_from};
use germlab_core::local::{local_dimension, LocalDimension, LocalError, LocalOptions};
use germlab_core::poly::{parse_polynomial, Poly, VarList};
use proptest::prelude::*;

const NOCACHE: LocalOptions = LocalOptions { degree_cap: 60, use_cache: false };

fn check(vars: &VarList, gens: &[Poly]) {
    let r = match local_dimension(vars, gens, NOCACHE) {
        Ok(r) => r,
        // a refusal is never a wrong answer; the oracle has nothing to compare
        Err(LocalError::CoefficientLimit { .. }) => return,
        Err(e) => panic!("gens {gens:?}: {e}"),
    };
    match r {
        // the oracle matrix grows like the cube of the colength; skip huge cases
        LocalDimension::Finite(d) if vars.len() > 2 && d > 24 => {}
        LocalDimension::Finite(d) => {
            let o = oracle_local_dimension(vars, gens, d as u32 + 2);
            assert_eq!(o, Some(d as usize), "gens {gens:?}");
        }
        LocalDimension::Infinite => {
            assert_eq!(oracle_local_dimension(vars, gens, 7), None, "gens {gens:?}");
        }
    }
}

#[test]
fn coefficient_blowup_is_refused_quickly() {
    // infinite colength, but the homogeneous fallback run explodes over Q
    let v = VarList::new(["x", "y", "z"]);
    let gens: Vec<Poly> = [
        "-3*x^3*y^3*z^2 + 2*x^2*y*z^3 + x*y*z^2",
        "-3*y^3*z^3 - 5*x^2*z^2 - x*y^2",
        "-x^2*y^3*z + 2*x^3*y^2 + 2*x*z + 3*y",
    ]
    .iter()
    .map(|s| parse_polynomial(s, &v).unwrap())
    .collect();
    match local_dimension(&v, &gens, NOCACHE) {
        Ok(LocalDimension::Infinite) | Err(LocalError::CoefficientLimit { .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn known_ideals_match_macaulay_oracle() {
    let v = VarList::new(["x", "y", "z"]);
    let cases: &[&[&str]] = &[
        &["x^2 + y^3", "x*y", "z^2 - x"],
        &["x*y*z", "x^2 + y^2 + z^2", "x + y + z + x*y^4"],
        &["x - y^2 + z^3", "y - z^2 + x^3", "z^2 - x^5 + y*z"],
        &["1 + x*y", "z"],
        &["x^2", "y^2", "x*z", "z^3 - x*y"],
    ];
    for gens in cases {
        let g: Vec<Poly> = gens.iter().map(|s| parse_polynomial(s, &v).unwrap()).collect();
        check(&v, &g);
    }
}

fn term_strategy(n: usize) -> impl Strategy<Value = (Vec<u32>, i64)> {
    (prop::collection::vec(0u32..4, n), -3i64..=3)
}

fn ideal_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
    prop::collection::vec(prop::collection::vec(term_strategy(n), 1..5), n..n + 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_ideals_in_two_variables(gens in ideal_strategy(2)) {
        let v = VarList::new(["x", "y"]);
        let g: Vec<Poly> = gens.iter().map(|t| poly_from(&v, t)).collect();
        check(&v, &g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_ideals_in_three_variables(gens in ideal_strategy(3)) {
        let v = VarList::new(["x", "y", "z"]);
        let g: Vec<Poly> = gens.iter().map(|t| poly_from(&v, t)).collect();
        check(&v, &g);
    }
}
