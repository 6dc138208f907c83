//! Local algebra at the origin: quotient dimensions, Milnor and Tjurina numbers.
//!
//! All ideals are taken in the localisation of the polynomial ring at the
//! origin; use [`translate_to_origin`] for germs based elsewhere.

pub mod cache;
pub mod sbasis;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{jacobian_minor_ideal, Poly, PolyError, Rational, Replacement, VarList};
use crate::seed;

use sbasis::{EngineOptions, LeadingData, SPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("standard basis computation exceeded the degree cap {cap}")]
    CapExceeded { cap: u32 },
    #[error("standard basis coefficients exceeded {bits} bits")]
    CoefficientLimit { bits: u64 },
    #[error("the germ is empty: the ideal is the unit ideal at the origin")]
    EmptyGerm,
    #[error("not an isolated complete intersection singularity: {0}")]
    NotIsolated(String),
    #[error("{0}")]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalDimension {
    Finite(u64),
    Infinite,
}

impl LocalDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            LocalDimension::Finite(d) => Some(d),
            LocalDimension::Infinite => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LocalOptions {
    pub degree_cap: u32,
    pub use_cache: bool,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions { degree_cap: 60, use_cache: true }
    }
}

fn check_ring(gens: &[Poly]) -> Result<Option<VarList>, LocalError> {
    let Some(first) = gens.first() else { return Ok(None) };
    for g in gens {
        if g.vars() != first.vars() {
            return Err(
                PolyError::VariableMismatch { left: first.vars().to_string(), right: g.vars().to_string() }.into()
            );
        }
    }
    Ok(Some(first.vars().clone()))
}

/// Leading module data of the submodule of `O^rank` generated by `gens`.
pub fn module_leading_data(
    nvars: usize,
    rank: usize,
    gens: &[Vec<Poly>],
    opts: LocalOptions,
) -> Result<LeadingData, LocalError> {
    let flat: Vec<Poly> = gens.iter().flatten().cloned().collect();
    check_ring(&flat)?;
    if let Some(p) = flat.first() {
        if p.nvars() != nvars {
            return Err(PolyError::DimensionMismatch(format!("expected {nvars} variables, found {}", p.nvars())).into());
        }
    }
    let sp: Vec<SPoly> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), rank, "module element has wrong rank");
            sbasis::to_spoly(g)
        })
        .collect();
    let key = opts.use_cache.then(|| cache::key(nvars, rank, opts.degree_cap, &sp));
    if let Some(k) = &key {
        if let Some(hit) = cache::lookup(k) {
            return Ok(hit);
        }
    }
    let eng = EngineOptions { degree_cap: opts.degree_cap, ..EngineOptions::default() };
    let data = sbasis::leading_data(nvars, rank, &sp, eng)?;
    if let Some(k) = &key {
        cache::store(k, &data);
    }
    Ok(data)
}

/// Leading ideal data of the ideal generated by `gens` in `vars`.
pub fn leading_data(vars: &VarList, gens: &[Poly], opts: LocalOptions) -> Result<LeadingData, LocalError> {
    let gens: Vec<Vec<Poly>> = gens.iter().map(|g| g.with_vars(vars).map(|p| vec![p])).collect::<Result<_, _>>()?;
    module_leading_data(vars.len(), 1, &gens, opts)
}

/// `dim_C O/I` for the ideal `I` generated by `gens`.
pub fn local_dimension(vars: &VarList, gens: &[Poly], opts: LocalOptions) -> Result<LocalDimension, LocalError> {
    Ok(dimension_of(&leading_data(vars, gens, opts)?))
}

/// `dim_C O^rank / M`.
pub fn module_local_dimension(
    nvars: usize,
    rank: usize,
    gens: &[Vec<Poly>],
    opts: LocalOptions,
) -> Result<LocalDimension, LocalError> {
    Ok(dimension_of(&module_leading_data(nvars, rank, gens, opts)?))
}

fn dimension_of(d: &LeadingData) -> LocalDimension {
    match d.dimension() {
        Some(n) => LocalDimension::Finite(n),
        None => LocalDimension::Infinite,
    }
}

/// Rewrites `p` in coordinates centred at `point`.
pub fn translate_to_origin(p: &Poly, point: &[Rational]) -> Result<Poly, LocalError> {
    if point.iter().all(Zero::is_zero) {
        return Ok(p.clone());
    }
    let vars = p.vars().clone();
    let names: Vec<String> = vars.names().to_vec();
    let assignment: Vec<(&str, Replacement)> = names
        .iter()
        .zip(point)
        .map(|(n, c)| {
            let shifted = Poly::var(&vars, n).expect("own variable") + Poly::constant(&vars, c.clone());
            (n.as_str(), Replacement::Poly(shifted))
        })
        .collect();
    Ok(p.substitute(&assignment)?.with_vars(&vars)?)
}

/// Outcome of a Milnor number computation that relies on random linear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledValue {
    pub value: u64,
    /// Independent samples disagreed; the minimum was reported.
    pub disagreement: bool,
}

/// Options for computations that draw generic linear forms.
#[derive(Clone, Copy, Debug)]
pub struct GenericOptions {
    pub local: LocalOptions,
    pub seed: u64,
    pub resample_limit: usize,
}

impl Default for GenericOptions {
    fn default() -> Self {
        GenericOptions { local: LocalOptions::default(), seed: seed::DEFAULT_SEED, resample_limit: 4 }
    }
}

pub(crate) fn random_linear_coefficients(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.random_range(-40..=40)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// Milnor number of the ICIS defined by `gens` (dimension `nvars - gens.len()`).
///
/// Uses the Lê–Greuel recursion with random linear forms. Two independent
/// samples are drawn; if they disagree, further samples are drawn up to the
/// resample limit and the minimum is reported with a flag.
pub fn milnor_icis(vars: &VarList, gens: &[Poly], opts: GenericOptions, tag: &str) -> Result<SampledValue, LocalError> {
    let gens: Vec<Poly> = gens.iter().map(|g| g.with_vars(vars)).collect::<Result<_, _>>()?;
    if gens.len() > vars.len() {
        return Err(LocalError::NotIsolated(format!("{} equations in {} variables", gens.len(), vars.len())));
    }
    for g in &gens {
        if !g.constant_term().is_zero() {
            return Err(LocalError::EmptyGerm);
        }
    }
    let needs_forms = gens.len() < vars.len() && !gens.is_empty();
    let mut rng = seed::rng_for(opts.seed, &format!("milnor:{tag}"));
    let first = lg_recursion(vars, &gens, &mut rng, opts.local)?;
    if !needs_forms {
        return Ok(SampledValue { value: first, disagreement: false });
    }
    let second = lg_recursion(vars, &gens, &mut rng, opts.local)?;
    if first == second {
        return Ok(SampledValue { value: first, disagreement: false });
    }
    let mut best = first.min(second);
    for _ in 0..opts.resample_limit {
        best = best.min(lg_recursion(vars, &gens, &mut rng, opts.local)?);
    }
    Ok(SampledValue { value: best, disagreement: true })
}

fn lg_recursion(vars: &VarList, gens: &[Poly], rng: &mut ChaCha8Rng, opts: LocalOptions) -> Result<u64, LocalError> {
    let n = vars.len();
    let k = gens.len();
    if k == 0 {
        return Ok(0);
    }
    if k == n {
        return match local_dimension(vars, gens, opts)? {
            LocalDimension::Finite(0) => Err(LocalError::EmptyGerm),
            LocalDimension::Finite(d) => Ok(d - 1),
            LocalDimension::Infinite => Err(LocalError::NotIsolated("zero-dimensional expected".into())),
        };
    }
    let coeffs = random_linear_coefficients(rng, n);
    let p = Poly::from_terms(
        vars,
        coeffs.iter().enumerate().map(|(i, &c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (crate::poly::Monomial(e), Rational::from_integer(c.into()))
        }),
    );
    let mut rows = gens.to_vec();
    rows.push(p);
    let mut ideal = gens.to_vec();
    ideal.extend(jacobian_minor_ideal(&rows, vars)?);
    let total = match local_dimension(vars, &ideal, opts)? {
        LocalDimension::Finite(d) => d,
        LocalDimension::Infinite => return Err(LocalError::NotIsolated("polar quotient is infinite".into())),
    };
    // Solve p = 0 for the last variable with a nonzero coefficient.
    let j = (0..n).rev().find(|&i| coeffs[i] != 0).expect("nonzero form");
    let cj = Rational::from_integer(coeffs[j].into());
    let mut solved = Poly::zero(vars);
    for i in (0..n).filter(|&i| i != j && coeffs[i] != 0) {
        solved = solved - Poly::var_at(vars, i).scale(&(Rational::from_integer(coeffs[i].into()) / &cj));
    }
    let reduced_names: Vec<String> =
        vars.names().iter().enumerate().filter(|&(i, _)| i != j).map(|(_, s)| s.clone()).collect();
    let reduced_vars = VarList::new(reduced_names);
    let solved = solved.with_vars(&reduced_vars)?;
    let restricted: Vec<Poly> = gens
        .iter()
        .map(|g| {
            g.substitute(&[(vars.names()[j].as_str(), Replacement::Poly(solved.clone()))])
                .and_then(|r| r.with_vars(&reduced_vars))
        })
        .collect::<Result<_, _>>()?;
    let section = lg_recursion(&reduced_vars, &restricted, rng, opts)?;
    total
        .checked_sub(section)
        .ok_or_else(|| LocalError::NotIsolated(format!("negative Milnor number ({total} - {section})")))
}

/// Milnor number of an isolated hypersurface singularity, `dim O/(dg)`.
pub fn milnor_hypersurface(vars: &VarList, g: &Poly, opts: LocalOptions) -> Result<u64, LocalError> {
    let g = g.with_vars(vars)?;
    if !g.constant_term().is_zero() {
        return Err(LocalError::EmptyGerm);
    }
    let partials: Vec<Poly> = (0..vars.len()).map(|i| g.derivative(i)).collect();
    match local_dimension(vars, &partials, opts)? {
        LocalDimension::Finite(d) => Ok(d),
        LocalDimension::Infinite => Err(LocalError::NotIsolated("non-isolated hypersurface".into())),
    }
}

/// Tjurina number `dim O^k / (J(g) O^n + (g) O^k)` of the ICIS `g`.
pub fn tjurina_icis(vars: &VarList, gens: &[Poly], opts: LocalOptions) -> Result<u64, LocalError> {
    let gens: Vec<Poly> = gens.iter().map(|g| g.with_vars(vars)).collect::<Result<_, _>>()?;
    let k = gens.len();
    let n = vars.len();
    if k == 0 {
        return Ok(0);
    }
    let mut module: Vec<Vec<Poly>> = (0..n).map(|i| gens.iter().map(|g| g.derivative(i)).collect()).collect();
    for g in &gens {
        for c in 0..k {
            let mut col = vec![Poly::zero(vars); k];
            col[c] = g.clone();
            module.push(col);
        }
    }
    match module_local_dimension(n, k, &module, opts)? {
        LocalDimension::Finite(d) => Ok(d),
        LocalDimension::Infinite => Err(LocalError::NotIsolated("infinite Tjurina module".into())),
    }
}

/// Multiplicity `dim O / f*m` of a map germ at the origin, with components
/// `f` taken minus their values at the origin.
pub fn germ_multiplicity(
    vars: &VarList,
    components: &[Poly],
    opts: LocalOptions,
) -> Result<LocalDimension, LocalError> {
    let gens: Vec<Poly> = components
        .iter()
        .map(|c| {
            let c = c.with_vars(vars)?;
            let value = Poly::constant(vars, c.constant_term());
            Ok(c - value)
        })
        .collect::<Result<_, PolyError>>()?;
    local_dimension(vars, &gens, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ps(v: &VarList, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| parse_polynomial(x, v).unwrap()).collect()
    }

    #[test]
    fn plane_curve_milnor_numbers() {
        let v = VarList::new(["x", "y"]);
        let opts = GenericOptions::default();
        let node = ps(&v, &["x*y"]);
        assert_eq!(milnor_icis(&v, &node, opts, "t").unwrap().value, 1);
        let cusp = ps(&v, &["x^2 - y^3"]);
        assert_eq!(milnor_icis(&v, &cusp, opts, "t").unwrap().value, 2);
        assert_eq!(milnor_hypersurface(&v, &cusp[0], LocalOptions::default()).unwrap(), 2);
        let smooth = ps(&v, &["x + y^2"]);
        assert_eq!(milnor_icis(&v, &smooth, opts, "t").unwrap().value, 0);
    }

    #[test]
    fn space_curve_icis() {
        // (x^2 + y^2 + z^2, x) restricts to the node y^2 + z^2.
        let v = VarList::new(["x", "y", "z"]);
        let g = ps(&v, &["x^2 + y^2 + z^2", "x"]);
        assert_eq!(milnor_icis(&v, &g, GenericOptions::default(), "t").unwrap().value, 1);
        // S_5 space curve singularity (x^2 + y^2 + z^2, yz) has mu = 5.
        let s5 = ps(&v, &["x^2 + y^2 + z^2", "y*z"]);
        assert_eq!(milnor_icis(&v, &s5, GenericOptions::default(), "t").unwrap().value, 5);
        assert_eq!(tjurina_icis(&v, &s5, LocalOptions::default()).unwrap(), 5);
    }

    #[test]
    fn zero_dimensional_icis() {
        let v = VarList::new(["x", "y"]);
        let g = ps(&v, &["x^2", "y^3"]);
        assert_eq!(milnor_icis(&v, &g, GenericOptions::default(), "t").unwrap().value, 5);
    }

    #[test]
    fn multiplicities_of_map_germs() {
        let v = VarList::new(["x", "y"]);
        let m = |c: &[&str]| germ_multiplicity(&v, &ps(&v, c), LocalOptions::default()).unwrap();
        assert_eq!(m(&["x", "y^2", "x*y"]), LocalDimension::Finite(2));
        assert_eq!(m(&["x", "y", "0"]), LocalDimension::Finite(1));
        assert_eq!(m(&["x", "x*y"]), LocalDimension::Infinite);
        let t = VarList::new(["t"]);
        let cusp = germ_multiplicity(&t, &ps(&t, &["t^2", "t^3 + 1"]), LocalOptions::default()).unwrap();
        assert_eq!(cusp, LocalDimension::Finite(2));
    }

    #[test]
    fn translation_moves_base_point() {
        let v = VarList::new(["x"]);
        let p = parse_polynomial("(x - 1)^2", &v).unwrap();
        let q = translate_to_origin(&p, &[Rational::from_integer(1.into())]).unwrap();
        assert_eq!(q.to_string(), "x^2");
    }
}
