//! Independent reference implementations used by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use germlab_core::poly::{Monomial, Poly, Rational, VarList};
use num_traits::{One, Zero};

/// All exponent vectors in `n` variables of total degree below `bound`.
pub fn monomials_below(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut cur = vec![0u32; n];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if bound > 0 {
        go(0, bound - 1, &mut cur, &mut out);
    }
    out
}

/// Rank of a family of sparse rational vectors by Gaussian elimination.
pub fn rank(rows: Vec<BTreeMap<Vec<u32>, Rational>>) -> usize {
    let mut pivots: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, Rational>> = BTreeMap::new();
    for mut row in rows {
        while let Some((lead, c)) = row.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            match pivots.get(&lead) {
                Some(p) => {
                    for (m, pc) in p {
                        let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                        *e -= &c * pc;
                        if e.is_zero() {
                            row.remove(m);
                        }
                    }
                }
                None => {
                    let inv = Rational::one() / c;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `dim k[x] / (I + m^N)` computed from the Macaulay matrix.
pub fn truncated_dimension(vars: &VarList, gens: &[Poly], bound: u32) -> usize {
    let n = vars.len();
    let monos = monomials_below(n, bound);
    let mut rows = Vec::new();
    for g in gens {
        for m in &monos {
            let mut row = BTreeMap::new();
            for (gm, c) in g.terms() {
                let e: Vec<u32> = gm.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() < bound {
                    row.insert(e, c.clone());
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

/// Local dimension by Hilbert–Samuel stabilisation: `Some(d)` once
/// consecutive truncations agree, `None` if they keep growing up to `max_bound`.
pub fn oracle_local_dimension(vars: &VarList, gens: &[Poly], max_bound: u32) -> Option<usize> {
    let mut prev = truncated_dimension(vars, gens, 1);
    for b in 2..=max_bound {
        let cur = truncated_dimension(vars, gens, b);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

pub fn poly_from(vars: &VarList, terms: &[(Vec<u32>, i64)]) -> Poly {
    Poly::from_terms(vars, terms.iter().map(|(e, c)| (Monomial(e.clone()), Rational::from_integer((*c).into()))))
}

/// Complete homogeneous symmetric polynomial `h_d` in the given variables.
pub fn complete_homogeneous(vars: &VarList, idx: &[usize], d: u32) -> Poly {
    let mut out = Poly::zero(vars);
    for e in monomials_below(idx.len(), d + 1) {
        if e.iter().sum::<u32>() != d {
            continue;
        }
        let mut full = vec![0; vars.len()];
        for (k, &i) in idx.iter().enumerate() {
            full[i] += e[k];
        }
        out = out + Poly::monomial(vars, Monomial(full), Rational::one());
    }
    out
}
