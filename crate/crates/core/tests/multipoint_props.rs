//! Multiple point spaces: divided differences, symmetry, the diagonal,
//! dimensions and the iteration principle.

mod common;

use common::{complete_homogeneous, oracle_local_dimension};
use germlab_core::local::{local_dimension, GenericOptions, LocalDimension, LocalOptions};
use germlab_core::multipoint::{
    divided_differences, multiple_point_generators, multiple_point_ideal, pair_multiple_point_generators, stratum_ring,
    verify_multiple_point_structure, StratumStatus,
};
use germlab_core::poly::{parse_polynomial, rat, Poly, Rational, Replacement, VarList};
use germlab_core::symrep::PartitionData;
use germlab_core::GermSpec;
use proptest::prelude::*;

fn corpus_mono() -> Vec<GermSpec> {
    [
        ("cross-cap", 2, vec!["x1", "y^2", "x1*y"]),
        ("S1", 2, vec!["x1", "y^2", "y^3 - x1^2*y"]),
        ("S2", 2, vec!["x1", "y^2", "y^3 - x1^3*y"]),
        ("H2", 2, vec!["x1", "y^3", "x1*y + y^5"]),
        ("cusp", 1, vec!["y^2", "y^3"]),
        ("S1 n3", 3, vec!["x1", "x2", "y^2", "y^3 + x1^2*y + x2^2*y"]),
    ]
    .into_iter()
    .map(|(name, n, comps)| GermSpec::mono(name, n, &comps).unwrap())
    .collect()
}

fn opts() -> GenericOptions {
    GenericOptions::default()
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `y^m [y1, ..., yi] = h_{m-i+1}(y1, ..., yi)`, extended linearly over
    /// coefficients in `x`.
    #[test]
    fn divided_differences_of_monomials(terms in prop::collection::vec((0u32..3, 1u32..8, -5i64..=5), 1..4), k in 2usize..5) {
        let src = VarList::new(["x1", "y"]);
        let ring = stratum_ring(2, k);
        let mut h = Poly::zero(&src);
        let mut expected: Vec<Poly> = vec![Poly::zero(&ring); k];
        for &(a, m, c) in &terms {
            let mono = parse_polynomial(&format!("{c}*x1^{a}*y^{m}"), &src).unwrap();
            h = h + mono;
            let xa = parse_polynomial(&format!("{c}*x1^{a}"), &ring).unwrap();
            for (i, e) in expected.iter_mut().enumerate() {
                // order i + 1 uses the first i + 1 points
                let idx: Vec<usize> = (1..=i + 1).collect();
                if m as usize >= i {
                    *e = &*e + &(&xa * &complete_homogeneous(&ring, &idx, m - i as u32));
                }
            }
        }
        let positions: Vec<usize> = (0..k).collect();
        let dd = divided_differences(&h, &ring, &positions, 2).unwrap();
        prop_assert_eq!(dd, expected);
    }

    /// On the diagonal the divided difference of order `i` is the
    /// `(i-1)`-th derivative divided by `(i-1)!`; in particular the second
    /// order one is `dh/dy`, which lies in the Jacobian ideal in `y`.
    #[test]
    fn diagonal_specialisation(terms in prop::collection::vec((0u32..3, 1u32..7, -5i64..=5), 1..4), k in 2usize..5) {
        let src = VarList::new(["x1", "y"]);
        let ring = stratum_ring(2, k);
        let h = terms.iter().fold(Poly::zero(&src), |acc, &(a, m, c)| {
            acc + parse_polynomial(&format!("{c}*x1^{a}*y^{m}"), &src).unwrap()
        });
        let positions: Vec<usize> = (0..k).collect();
        let dd = divided_differences(&h, &ring, &positions, 2).unwrap();
        let y1 = Poly::var(&ring, "y1").unwrap();
        let diag: Vec<(String, Replacement)> = (2..=k).map(|i| (format!("y{i}"), Replacement::Poly(y1.clone()))).collect();
        let refs: Vec<(&str, Replacement)> = diag.iter().map(|(s, r)| (s.as_str(), r.clone())).collect();
        let back = VarList::new(["x1", "y1"]);
        let mut derivative = h.clone();
        for (i, g) in dd.iter().enumerate() {
            let on_diagonal = g.substitute(&refs).unwrap().with_vars(&back).unwrap();
            let expected = derivative.scale(&Rational::new(1.into(), factorial(i as u32).into())).rename(&back).unwrap();
            prop_assert_eq!(on_diagonal, expected);
            derivative = derivative.derivative(1);
        }
    }
}

/// `I + L` versus `I + sigma(I) + L` for a fixed linear form `L` cutting the
/// stratum down to a point (nothing is added when the stratum is a point).
fn invariant_under(ring: &VarList, gens: &[Poly], swap: (usize, usize), cut: usize) {
    let (a, b) = swap;
    let ya = Poly::var(ring, &format!("y{a}")).unwrap();
    let yb = Poly::var(ring, &format!("y{b}")).unwrap();
    let perm = [(format!("y{a}"), yb), (format!("y{b}"), ya)];
    let refs: Vec<(&str, Replacement)> = perm.iter().map(|(s, p)| (s.as_str(), Replacement::Poly(p.clone()))).collect();
    let permuted: Vec<Poly> = gens.iter().map(|g| g.substitute(&refs).unwrap().with_vars(ring).unwrap()).collect();
    let mut base: Vec<Poly> = gens.to_vec();
    for c in 0..cut {
        // distinct slopes keep the cuts independent
        let form: Vec<String> = ring
            .names()
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}*{v}", (i + 2 * c + 3) * (c + 1) + i * i))
            .collect();
        base.push(parse_polynomial(&form.join(" + "), ring).unwrap());
    }
    let mut bigger = base.clone();
    bigger.extend(permuted);
    let lo = LocalOptions::default();
    let d0 = local_dimension(ring, &base, lo).unwrap();
    assert!(matches!(d0, LocalDimension::Finite(_)), "cut did not reach a point");
    assert_eq!(d0, local_dimension(ring, &bigger, lo).unwrap(), "swap {swap:?} changes the ideal");
}

#[test]
fn multiple_point_ideals_are_symmetric() {
    for f in corpus_mono() {
        let n = f.source_dim;
        for k in 2..=3usize {
            let (ring, gens) = multiple_point_generators(&f, &vec![0; k]).unwrap();
            if gens.iter().any(|g| !g.constant_term().eq(&rat(0, 1))) {
                continue;
            }
            let dim = n as i64 + 1 - k as i64;
            if dim < 0 {
                continue;
            }
            for a in 1..=k {
                for b in a + 1..=k {
                    invariant_under(&ring, &gens, (a, b), dim as usize);
                }
            }
        }
    }
}

#[test]
fn documented_strata() {
    let [cc, s1, _, h2, _, _]: [GermSpec; 6] = corpus_mono().try_into().unwrap();
    let r = verify_multiple_point_structure(&cc, opts()).unwrap();
    let d2 = r.entries(&PartitionData::from_parts(&[1, 1])).next().unwrap();
    assert_eq!(d2.stratum.status, StratumStatus::Icis { dim: 1, mu: 0 });
    assert!(r.is_empty_level(3));
    assert_eq!(r.d, 2);
    assert!(r.stable);

    let r = verify_multiple_point_structure(&s1, opts()).unwrap();
    assert_eq!(r.total_mu(&PartitionData::from_parts(&[1, 1])), 1);
    assert_eq!(r.total_m0(&PartitionData::from_parts(&[2])), 2);
    let (ring, gens) = multiple_point_generators(&s1, &[0, 0]).unwrap();
    let fixed: Vec<Poly> = gens
        .iter()
        .map(|g| {
            g.substitute(&[("y2", Replacement::Poly(Poly::var(&ring, "y1").unwrap()))])
                .unwrap()
                .with_vars(&ring)
                .unwrap()
        })
        .collect();
    let mut with_diag = fixed;
    with_diag.push(parse_polynomial("y1 - y2", &ring).unwrap());
    assert_eq!(oracle_local_dimension(&ring, &with_diag, 10), Some(2));

    let r = verify_multiple_point_structure(&h2, opts()).unwrap();
    assert_eq!(r.total_m0(&PartitionData::from_parts(&[1, 1, 1])), 6);
    let (ring, gens) = multiple_point_generators(&h2, &[0, 0, 0]).unwrap();
    assert_eq!(oracle_local_dimension(&ring, &gens, 12), Some(6));

    let imm = GermSpec::mono("imm", 2, &["x1", "y", "0"]).unwrap();
    assert_eq!(multiple_point_ideal(&imm, 2, &[0, 0], opts()).unwrap().status, StratumStatus::Empty);
    assert_eq!(multiple_point_ideal(&cc, 3, &[0, 0, 0], opts()).unwrap().status, StratumStatus::Empty);
}

#[test]
fn strata_have_the_expected_dimension() {
    let mut germs = corpus_mono();
    germs.push(
        GermSpec::parse(
            "four planes",
            2,
            &[
                ("a", &["x1", "y", "0"]),
                ("b", &["x1", "x1", "y"]),
                ("c", &["x1", "y", "x1"]),
                ("d", &["x1", "y", "x1 + y"]),
            ],
        )
        .unwrap(),
    );
    for f in germs {
        let r = verify_multiple_point_structure(&f, opts()).unwrap();
        assert!(r.violations.is_empty(), "{}: {:?}", f.name, r.violations);
        for level in &r.levels {
            for e in &level.entries {
                let st = &e.stratum;
                let expected = f.source_dim as i64 + 1 - 2 * level.k as i64 + e.gamma.num_parts() as i64;
                assert_eq!(st.expected_dim, expected);
                match st.status {
                    StratumStatus::Icis { dim, .. } => assert_eq!(dim as i64, expected),
                    StratumStatus::ZeroDim { .. } => assert_eq!(expected, 0),
                    StratumStatus::NegativeDim => assert!(expected < 0),
                    StratumStatus::Empty => {}
                    StratumStatus::Irregular { .. } => panic!("{}: irregular stratum", f.name),
                }
            }
        }
    }
}

#[test]
fn iteration_principle_generators_coincide() {
    for f in corpus_mono() {
        for k in 2..=3u32 {
            let (pair_ring, pair_gens) = pair_multiple_point_generators(&f, k).unwrap();
            let (ring, gens) = multiple_point_generators(&f, &vec![0; k as usize + 1]).unwrap();
            assert_eq!(pair_ring, ring);
            assert_eq!(pair_gens, gens, "{} at k = {k}", f.name);
        }
    }
}
