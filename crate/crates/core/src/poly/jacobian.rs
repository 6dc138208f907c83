//! Jacobian matrices and their maximal minors.

use super::{Poly, PolyError, VarList};

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn determinant(vars: &VarList, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(vars);
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(vars, m, 0, &cols)
}

fn det_rec(vars: &VarList, m: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(vars, m, row + 1, &rest);
        let t = entry * &minor;
        acc = if k % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

/// All nonzero maximal minors of the Jacobian matrix of `rows`
/// (one row per polynomial, one column per variable), columns taken in
/// lexicographic order of subsets.
pub fn jacobian_minor_ideal(rows: &[Poly], vars: &VarList) -> Result<Vec<Poly>, PolyError> {
    let r = rows.len();
    let n = vars.len();
    if r > n {
        return Err(PolyError::DimensionMismatch(format!("{r} functions in {n} variables have no maximal minors")));
    }
    let jac: Vec<Vec<Poly>> = rows
        .iter()
        .map(|p| {
            let p = p.with_vars(vars)?;
            Ok((0..n).map(|j| p.derivative(j)).collect())
        })
        .collect::<Result<_, PolyError>>()?;
    let mut out = Vec::new();
    for cols in combinations(n, r) {
        let sub: Vec<Vec<Poly>> = jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = determinant(vars, &sub);
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

/// k-subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn minors_of_a_curve_pair() {
        let v = VarList::new(["x", "y", "z"]);
        let g = parse_polynomial("x^2 + y^2 + z^2", &v).unwrap();
        let p = parse_polynomial("x", &v).unwrap();
        let minors = jacobian_minor_ideal(&[g, p], &v).unwrap();
        // columns (x,y), (x,z), (y,z)
        let s: Vec<String> = minors.iter().map(|m| m.to_string()).collect();
        assert_eq!(s, vec!["-2*y", "-2*z"]);
    }

    #[test]
    fn too_many_rows() {
        let v = VarList::new(["x"]);
        let a = parse_polynomial("x", &v).unwrap();
        assert!(jacobian_minor_ideal(&[a.clone(), a], &v).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }
}
