//! Exact multivariate polynomials with rational coefficients.
//!
//! A [`Poly`] owns a shared [`VarList`] and a map from dense exponent
//! vectors to nonzero coefficients. Arithmetic between polynomials requires
//! identical variable lists; use [`Poly::with_vars`] to embed into a larger
//! ring first.

mod jacobian;
pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use jacobian::{determinant, jacobian_minor_ideal};
pub use parse::{parse_polynomial, ParseError};

pub type Rational = BigRational;

/// Convenience constructor for `a/b`.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is assigned more than once")]
    DuplicateAssignment(String),
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarList(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    fn same(&self, other: &VarList) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

impl fmt::Display for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// Dense exponent vector, one slot per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Degree reverse lexicographic comparison (global order, used for printing).
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

/// Value substituted for a variable.
#[derive(Clone, Debug)]
pub enum Replacement {
    Poly(Poly),
    Constant(Rational),
}

impl From<Poly> for Replacement {
    fn from(p: Poly) -> Self {
        Replacement::Poly(p)
    }
}

impl From<Rational> for Replacement {
    fn from(c: Rational) -> Self {
        Replacement::Constant(c)
    }
}

#[derive(Clone)]
pub struct Poly {
    vars: VarList,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.same(&other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(vars: &VarList) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarList) -> Self {
        Poly::constant(vars, Rational::one())
    }

    pub fn from_int(vars: &VarList, c: i64) -> Self {
        Poly::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn var(vars: &VarList, name: &str) -> Result<Self, PolyError> {
        let i = vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var_at(vars, i))
    }

    pub fn var_at(vars: &VarList, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Poly::monomial(vars, Monomial(e), Rational::one())
    }

    pub fn monomial(vars: &VarList, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, combining duplicates.
    pub fn from_terms<I>(vars: &VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree (the order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Whether variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch { left: self.vars.to_string(), right: other.vars.to_string() })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.mul_truncated(other, None)
    }

    /// Product with all terms of degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Poly, max_degree: Option<u32>) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut r = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(d) = max_degree {
                    if ma.degree() + mb.degree() > d {
                        continue;
                    }
                }
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_truncated(e, None)
    }

    pub fn pow_truncated(&self, mut e: u32, max_degree: Option<u32>) -> Poly {
        let mut result = Poly::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_truncated(&base, max_degree).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, max_degree).expect("same ring");
            }
        }
        result
    }

    /// Drops every term of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, c * Rational::from_integer(e.into()));
        }
        r
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over `vars`. Every variable that occurs
    /// must be present in the new list; unused variables may be dropped.
    pub fn with_vars(&self, vars: &VarList) -> Result<Poly, PolyError> {
        if self.vars.same(vars) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            let target = vars.index_of(name);
            if target.is_none() && self.involves(i) {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
            map.push(target);
        }
        let mut r = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &ex) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += ex;
                }
            }
            r.add_term(Monomial(e), c.clone());
        }
        Ok(r)
    }

    /// Renames variables in place (same positions, new names).
    pub fn rename(&self, vars: &VarList) -> Result<Poly, PolyError> {
        if vars.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch(format!("rename {} variables to {}", self.nvars(), vars.len())));
        }
        Ok(Poly { vars: vars.clone(), terms: self.terms.clone() })
    }

    /// Exact polynomial composition.
    ///
    /// The result lives over the unassigned variables of `self` followed by
    /// any new variables introduced by the replacement polynomials.
    pub fn substitute(&self, assignment: &[(&str, Replacement)]) -> Result<Poly, PolyError> {
        self.substitute_truncated(assignment, None)
    }

    pub fn substitute_truncated(
        &self,
        assignment: &[(&str, Replacement)],
        max_degree: Option<u32>,
    ) -> Result<Poly, PolyError> {
        for (i, (a, _)) in assignment.iter().enumerate() {
            if assignment[..i].iter().any(|(b, _)| b == a) {
                return Err(PolyError::DuplicateAssignment(a.to_string()));
            }
        }
        let assigned = |name: &str| assignment.iter().position(|(a, _)| *a == name);

        let mut names: Vec<String> = self.vars.names().iter().filter(|n| assigned(n).is_none()).cloned().collect();
        for (_, r) in assignment {
            if let Replacement::Poly(p) = r {
                for n in p.vars.names() {
                    if !names.contains(n) {
                        names.push(n.clone());
                    }
                }
            }
        }
        let out = if names.as_slice() == self.vars.names() { self.vars.clone() } else { VarList::new(names) };

        let images: Vec<Poly> = self
            .vars
            .names()
            .iter()
            .map(|name| match assigned(name) {
                None => Poly::var(&out, name),
                Some(k) => match &assignment[k].1 {
                    Replacement::Poly(p) => p.with_vars(&out),
                    Replacement::Constant(c) => Ok(Poly::constant(&out, c.clone())),
                },
            })
            .collect::<Result<_, _>>()?;

        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&out), p.clone()]).collect();
        let mut result = Poly::zero(&out);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&out, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_truncated(&images[i], max_degree).expect("same ring");
                    powers[i].push(next);
                }
                t = t.mul_truncated(&powers[i][e as usize], max_degree).expect("same ring");
                if t.is_zero() {
                    break;
                }
            }
            for (m2, c2) in t.terms {
                result.add_term(m2, c2);
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / (x_u - x_v)`; fails unless `self` vanishes on `x_u = x_v`.
    pub fn div_by_difference(&self, u: usize, v: usize) -> Result<Poly, PolyError> {
        assert_ne!(u, v);
        let mut quotient = Poly::zero(&self.vars);
        let mut remainder = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let eu = m.0[u];
            let mut rem = m.clone();
            rem.0[v] += eu;
            rem.0[u] = 0;
            remainder.add_term(rem, c.clone());
            // x_u^e = (x_u - x_v) * sum_{i+j=e-1} x_u^i x_v^j + x_v^e
            for i in 0..eu {
                let mut q = m.clone();
                q.0[u] = i;
                q.0[v] += eu - 1 - i;
                quotient.add_term(q, c.clone());
            }
        }
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(PolyError::NotDivisible(format!("{} - {}", self.vars.names()[u], self.vars.names()[v])))
        }
    }

    /// Terms in descending degree reverse lexicographic order.
    pub fn terms_degrevlex(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_degrevlex(a.0));
        v
    }

    /// Scales so the degrevlex-leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.terms_degrevlex().first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_degrevlex();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names()[i], e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars, self)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// The operator impls panic on mismatched variable lists, like shape
// mismatches in array libraries; the `checked_*` methods return errors.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials over different variable lists")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarList {
        VarList::new(["x", "y"])
    }

    #[test]
    fn display_is_degrevlex_descending() {
        let v = xy();
        let p = parse_polynomial("1 - x + y^3 - x^2*y + 3/2*x*y", &v).unwrap();
        assert_eq!(p.to_string(), "-x^2*y + y^3 + 3/2*x*y - x + 1");
    }

    #[test]
    fn substitute_renames_and_specializes() {
        let v = xy();
        let p = parse_polynomial("y^2", &v).unwrap();
        let y1 = VarList::new(["y1"]);
        let r = p.substitute(&[("y", Poly::var(&y1, "y1").unwrap().into())]).unwrap();
        assert_eq!(r.vars().names(), &["x".to_string(), "y1".to_string()]);
        assert_eq!(r.to_string(), "y1^2");

        let q = parse_polynomial("y^3 - x^2*y", &v).unwrap();
        let s = q.substitute(&[("x", Rational::zero().into())]).unwrap();
        assert_eq!(s.to_string(), "y^3");
        assert_eq!(s.nvars(), 1);
    }

    #[test]
    fn substitute_specializes_family_parameter() {
        let v = VarList::new(["x", "y", "t"]);
        let p = parse_polynomial("x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6 + t*y^7", &v).unwrap();
        let s = p.substitute(&[("t", Rational::zero().into())]).unwrap();
        let expected = parse_polynomial("x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6", &xy()).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn duplicate_assignment_is_rejected() {
        let v = xy();
        let p = parse_polynomial("x*y", &v).unwrap();
        let err = p.substitute(&[("x", Rational::one().into()), ("x", Rational::zero().into())]).unwrap_err();
        assert_eq!(err, PolyError::DuplicateAssignment("x".into()));
    }

    #[test]
    fn exact_division_by_difference() {
        let v = VarList::new(["a", "b"]);
        let p = parse_polynomial("a^3 - b^3", &v).unwrap();
        let q = p.div_by_difference(0, 1).unwrap();
        assert_eq!(q, parse_polynomial("a^2 + a*b + b^2", &v).unwrap());
        let bad = parse_polynomial("a^2 + b", &v).unwrap();
        assert!(bad.div_by_difference(0, 1).is_err());
    }

    #[test]
    fn truncated_products_drop_high_degree() {
        let v = xy();
        let p = parse_polynomial("1 + x + y", &v).unwrap();
        let sq = p.pow_truncated(2, Some(1));
        assert_eq!(sq, parse_polynomial("1 + 2*x + 2*y", &v).unwrap());
    }

    #[test]
    fn mismatched_rings_error() {
        let a = Poly::one(&xy());
        let b = Poly::one(&VarList::new(["z"]));
        assert!(a.checked_add(&b).is_err());
    }
}
