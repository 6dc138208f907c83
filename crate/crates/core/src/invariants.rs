//! Image and double point Milnor numbers, alternating Milnor numbers and the
//! counting identities relating them.
//!
//! Everything is derived from the table of strata `D^k(f, gamma)`. The Euler
//! characteristic of the image of a stable perturbation is
//! `sum_{k, gamma} a_gamma chi(D^k(f_t, gamma))`, and the image has the
//! homotopy type of a wedge of `mu_I` spheres of dimension `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::germ::GermSpec;
use crate::local::{germ_multiplicity, GenericOptions};
use crate::multipoint::{
    double_point_projection, sign_pow, verify_multiple_point_structure, DoublePointPair, MultipointError,
    StratumStatus, StructureReport,
};
use crate::poly::Rational;
use crate::symrep::{
    binomial, factorial, isotype_rank_points, marar_coefficient, partitions_of, stated_weighted_rank, top_row_ranks,
    Isotype, PartitionData, SymrepError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("strata are not complete intersections of the expected dimension (not A-finite, or a bug): {0:?}")]
    NotAFiniteOrBug(Vec<String>),
    #[error("{what} evaluates to {value}, which is not a non-negative integer")]
    NonIntegerResult { what: String, value: String },
    #[error("{what} = {value} is not divisible into free orbits")]
    NonIntegerOrbitCount { what: String, value: String },
    #[error("alternating Milnor numbers {alt:?} sum to {sum}, but the image Milnor number is {mu_image}")]
    HoustonSumViolation { alt: Vec<i64>, sum: i64, mu_image: u64 },
    #[error("identity check failed: {0:?}")]
    CheckFailed(Vec<String>),
    #[error("{0} is only available for source dimension {1}")]
    UnsupportedDimension(&'static str, &'static str),
    #[error(transparent)]
    Multipoint(#[from] MultipointError),
    #[error(transparent)]
    Symrep(#[from] SymrepError),
}

impl From<crate::local::LocalError> for InvariantError {
    fn from(e: crate::local::LocalError) -> Self {
        InvariantError::Multipoint(e.into())
    }
}

/// One row of the equivariant table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: u32,
    pub gamma: PartitionData,
    pub branch_tuple: Vec<usize>,
    pub multiplicity: u64,
    pub expected_dim: i64,
    pub status: StratumStatus,
    /// Number of connected components of the stable fibre.
    pub beta0: u64,
    /// The coefficient `a_gamma`, as a reduced fraction.
    pub marar_coefficient: String,
    /// Euler characteristic of the stable fibre, zero for strata that do not
    /// meet a stable perturbation.
    pub euler_characteristic: i64,
}

/// The stratum data entering the Euler characteristic of the image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivariantTable {
    pub source_dim: usize,
    pub branches: usize,
    pub d: u32,
    pub stable: bool,
    pub genericity_disagreement: bool,
    pub rows: Vec<TableRow>,
    #[serde(skip)]
    pub structure: Option<StructureReport>,
}

impl EquivariantTable {
    pub fn structure(&self) -> &StructureReport {
        self.structure.as_ref().expect("table built from a structure report")
    }
}

/// Builds the table of strata. Fails if some stratum of non-negative expected
/// dimension is not a complete intersection of that dimension.
pub fn equivariant_euler_data(f: &GermSpec, opts: GenericOptions) -> Result<EquivariantTable, InvariantError> {
    let structure = verify_multiple_point_structure(f, opts)?;
    table_from_structure(structure)
}

pub fn table_from_structure(structure: StructureReport) -> Result<EquivariantTable, InvariantError> {
    if !structure.violations.is_empty() {
        return Err(InvariantError::NotAFiniteOrBug(structure.violations.clone()));
    }
    let mut rows = Vec::new();
    for level in &structure.levels {
        for e in &level.entries {
            let st = &e.stratum;
            let beta0 = match st.status {
                StratumStatus::Icis { .. } => 1,
                StratumStatus::ZeroDim { m0 } => m0,
                _ => 0,
            };
            rows.push(TableRow {
                k: level.k,
                gamma: e.gamma.clone(),
                branch_tuple: st.branch_tuple.clone(),
                multiplicity: e.multiplicity,
                expected_dim: st.expected_dim,
                status: st.status.clone(),
                beta0,
                marar_coefficient: marar_coefficient(&e.gamma).to_string(),
                euler_characteristic: st.status.euler_characteristic(),
            });
        }
    }
    Ok(EquivariantTable {
        source_dim: structure.source_dim,
        branches: structure.branches,
        d: structure.d,
        stable: structure.stable,
        genericity_disagreement: structure.genericity_disagreement,
        rows,
        structure: Some(structure),
    })
}

fn non_negative_integer(what: &str, r: &Rational) -> Result<u64, InvariantError> {
    if r.is_integer() && !r.is_negative() {
        if let Some(v) = r.to_integer().to_u64() {
            return Ok(v);
        }
    }
    Err(InvariantError::NonIntegerResult { what: what.into(), value: r.to_string() })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Euler characteristic of the image of a stable perturbation.
fn image_euler_characteristic(table: &EquivariantTable) -> Rational {
    let s = table.structure();
    // each branch of a smooth source is contractible
    let mut chi = int(table.branches as i64);
    for level in &s.levels {
        for gamma in partitions_of(level.k) {
            chi += marar_coefficient(&gamma) * int(s.euler_characteristic(&gamma));
        }
    }
    chi
}

/// `mu_I(f)`, solved from the Euler characteristic of the image.
pub fn image_milnor_number(table: &EquivariantTable) -> Result<u64, InvariantError> {
    let chi = image_euler_characteristic(table);
    let mu = (chi - int(1)) * int(sign_pow(table.source_dim as u32));
    non_negative_integer("image Milnor number", &mu)
}

/// `mu_I(D^2(f), pi)`, with the multiple point spaces of `pi` read off from
/// those of `f` through the iteration table. For a multi-germ the image of
/// `pi` has one component per branch carrying double points, and the Milnor
/// numbers of these components add up.
pub fn image_milnor_number_of_pair(pair: &DoublePointPair) -> Result<u64, InvariantError> {
    let mut chi = int(pair.euler_characteristic);
    for e in &pair.iteration {
        chi += marar_coefficient(&e.gamma) * int(e.euler_characteristic);
    }
    let mu = (chi - int(pair.target_points as i64)) * int(sign_pow(pair.source_dim as u32));
    non_negative_integer("image Milnor number of (D^2(f), pi)", &mu)
}

/// `mu_D(f) = mu_I(D^2(f), pi)`; zero when there are no double points.
pub fn double_point_milnor(table: &EquivariantTable) -> Result<u64, InvariantError> {
    match double_point_projection(table.structure()) {
        Ok(pair) => image_milnor_number_of_pair(&pair),
        Err(MultipointError::EmptyDoublePoints) => Ok(0),
        Err(e) => Err(e.into()),
    }
}

/// `mu(D^2(f))`, summed over branch pairs.
pub fn double_point_space_milnor(table: &EquivariantTable) -> u64 {
    table.structure().total_mu(&PartitionData::from_parts(&[1, 1]))
}

/// Equivariant Euler characteristic `(1/k!) sum class_size sign chi(D^k(f_t)^gamma)`.
pub fn alternating_euler_characteristic(table: &EquivariantTable, k: u32) -> Rational {
    let s = table.structure();
    let mut acc = Rational::zero();
    for g in partitions_of(k) {
        acc += int(g.class_size as i64 * g.sign as i64 * s.euler_characteristic(&g));
    }
    acc / int(factorial(k as u64) as i64)
}

/// `(mu_1^Alt, ..., mu_{d+1}^Alt)`; the sum must equal `mu_image`.
pub fn alternating_milnor_numbers(table: &EquivariantTable, mu_image: u64) -> Result<Vec<i64>, InvariantError> {
    let s = table.structure();
    let n = table.source_dim as i64;
    let d = table.d;
    // a smooth source has mu(X) = 0
    let mut out = vec![0i64];
    for k in 2..=d {
        let chi_alt = alternating_euler_characteristic(table, k);
        let fixcounts: BTreeMap<Vec<u32>, u64> =
            partitions_of(k).into_iter().map(|g| (g.parts.clone(), s.nonempty_tuple_fixcount(&g))).collect();
        let h0_alt = isotype_rank_points(&fixcounts, k, Isotype::Alternating)?;
        let dim = n + 1 - k as i64;
        let mu = (chi_alt - int(h0_alt as i64)) * int(sign_pow(dim as u32));
        let v = non_negative_integer(&format!("alternating Milnor number mu_{k}"), &mu)?;
        out.push(v as i64);
    }
    let s_f = table.branches as u32;
    out.push(if s_f > d { binomial(s_f as u64 - 1, d as u64) as i64 } else { 0 });
    let sum: i64 = out.iter().sum();
    if sum != mu_image as i64 {
        return Err(InvariantError::HoustonSumViolation { alt: out, sum, mu_image });
    }
    Ok(out)
}

/// Numbers of 0-stable singularities in a stable perturbation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroStableCounts {
    /// Cross-caps (`n = 2`).
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub cross_caps: Option<u64>,
    /// Triple points (`n = 2`).
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub triple_points: Option<u64>,
    /// Quadruple points (`n = 3`).
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub quadruple_points: Option<u64>,
}

fn orbit_count(what: &str, total: u64, k: u64) -> Result<u64, InvariantError> {
    let order = factorial(k);
    if !total.is_multiple_of(order) {
        return Err(InvariantError::NonIntegerOrbitCount { what: what.into(), value: format!("{total}/{order}") });
    }
    Ok(total / order)
}

pub fn zero_stable_counts(table: &EquivariantTable) -> Result<ZeroStableCounts, InvariantError> {
    let s = table.structure();
    match table.source_dim {
        2 => Ok(ZeroStableCounts {
            cross_caps: Some(s.total_m0(&PartitionData::from_parts(&[2]))),
            triple_points: Some(orbit_count("m0(D^3)", s.total_m0(&PartitionData::from_parts(&[1, 1, 1])), 3)?),
            quadruple_points: None,
        }),
        3 => Ok(ZeroStableCounts {
            cross_caps: None,
            triple_points: None,
            quadruple_points: Some(orbit_count("m0(D^4)", s.total_m0(&PartitionData::from_parts(&[1, 1, 1, 1])), 4)?),
        }),
        _ => Err(InvariantError::UnsupportedDimension("0-stable counting", "2 or 3")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
    /// `mu_3^T` back-solved from the quadruple point identity (`n = 3`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu3_t: Option<i64>,
}

impl CheckReport {
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    fn push(&mut self, name: &str, status: CheckStatus, detail: String) {
        self.checks.push(Check { name: name.into(), status, detail });
    }

    fn assert(&mut self, name: &str, ok: bool, detail: String) {
        self.push(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail);
    }
}

/// Values the identity checks are evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInvariants {
    pub mu_image: u64,
    pub mu_double: u64,
    pub mu_d2: u64,
    pub mu_alt: Vec<i64>,
    pub counts: Option<ZeroStableCounts>,
}

/// Evaluates the closed-form identities on `f` and fails on any violation.
pub fn special_formula_checks(table: &EquivariantTable, v: &CoreInvariants) -> Result<CheckReport, InvariantError> {
    let r = formula_checks(table, v);
    let failures = r.failures();
    if failures.is_empty() {
        Ok(r)
    } else {
        Err(InvariantError::CheckFailed(failures))
    }
}

/// Evaluates the closed-form identities on `f`, recording failures in the
/// report. The triple and quadruple point identities are stated for
/// mono-germs and are reported as not applicable otherwise.
pub fn formula_checks(table: &EquivariantTable, v: &CoreInvariants) -> CheckReport {
    let mut r = CheckReport::default();
    let mono = table.branches == 1;
    let n = table.source_dim;
    let s = table.structure();
    match (n, &v.counts) {
        (2, Some(c)) if mono => {
            let t = c.triple_points.unwrap_or(0);
            r.assert(
                "mu_D = mu(D^2) + 3T",
                v.mu_double == v.mu_d2 + 3 * t,
                format!("{} = {} + 3*{}", v.mu_double, v.mu_d2, t),
            );
        }
        (3, Some(c)) if mono => {
            let q = c.quadruple_points.unwrap_or(0) as i64;
            let mu_d3 = s.total_mu(&PartitionData::from_parts(&[1, 1, 1])) as i64;
            let alt3 = v.mu_alt.get(2).copied().unwrap_or(0);
            let mu3t = mu_d3 + alt3 - 2 * (v.mu_double as i64 - 4 * q - v.mu_d2 as i64);
            r.mu3_t = Some(mu3t);
            r.assert(
                "mu_3^T is a non-negative integer",
                mu3t >= 0,
                format!(
                    "mu(D^3) + mu_3^Alt - 2(mu_D - 4Q - mu(D^2)) = {mu_d3} + {alt3} - 2({} - 4*{q} - {}) = {mu3t}",
                    v.mu_double, v.mu_d2
                ),
            );
        }
        _ => r.push(
            "triple/quadruple point identity",
            CheckStatus::NotApplicable,
            "stated for mono-germs with n = 2 or n = 3".into(),
        ),
    }
    r.assert("mu_I <= mu_D", v.mu_image <= v.mu_double, format!("{} <= {}", v.mu_image, v.mu_double));
    let a = v.mu_image == 0;
    let b = v.mu_double == 0;
    r.assert(
        "mu_I = 0 <=> mu_D = 0 <=> stable",
        a == b && b == table.stable,
        format!("mu_I = {}, mu_D = {}, stable = {}", v.mu_image, v.mu_double, table.stable),
    );
    r
}

/// Top row ranks for multi-germs with more branches than `d(f)`, with the
/// closed form of the weighted rank in its two written versions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopRowReport {
    pub s: u32,
    pub d: u32,
    pub corner_rank: u64,
    /// Direct evaluation of the weighted alternating sum.
    pub weighted_rank: u64,
    /// `d s^2 / (s-1) * C(s-1,d)`; differs from `weighted_rank` unless `s = 1`.
    pub stated_weighted_rank: String,
}

pub fn top_row_report(table: &EquivariantTable) -> Result<Option<TopRowReport>, InvariantError> {
    let s = table.branches as u32;
    let d = table.d;
    if s <= d || d == 0 {
        return Ok(None);
    }
    let t = top_row_ranks(s, d)?;
    Ok(Some(TopRowReport {
        s,
        d,
        corner_rank: t.corner_rank,
        weighted_rank: t.weighted_rank,
        stated_weighted_rank: stated_weighted_rank(s, d).to_string(),
    }))
}

/// Computes `mu_I`, `mu_D`, `mu(D^2)`, the alternating Milnor numbers and the
/// 0-stable counts.
pub fn core_invariants(table: &EquivariantTable) -> Result<CoreInvariants, InvariantError> {
    let mu_image = image_milnor_number(table)?;
    let mu_double = double_point_milnor(table)?;
    let mu_alt = alternating_milnor_numbers(table, mu_image)?;
    let counts = match table.source_dim {
        2 | 3 => Some(zero_stable_counts(table)?),
        _ => None,
    };
    Ok(CoreInvariants { mu_image, mu_double, mu_d2: double_point_space_milnor(table), mu_alt, counts })
}

/// Convenience wrapper: `mu_I(f)`.
pub fn image_milnor_number_of(f: &GermSpec, opts: GenericOptions) -> Result<u64, InvariantError> {
    image_milnor_number(&equivariant_euler_data(f, opts)?)
}

/// Both sides of the Le-Greuel type formula counting critical points of a
/// generic linear form on the strata of a stable perturbation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeGreuelReport {
    pub mu_image: u64,
    /// `mu_I` of a generic transverse slice (`n >= 2`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_slice: Option<u64>,
    /// Multiplicity of the germ (`n = 1`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    /// Number of critical points on all strata.
    pub critical_points: u64,
    pub genericity_disagreement: bool,
}

/// `mu_I(f) + mu_I(slice)` for `n >= 2`; `mu_I(f) + m_0(f) - 1` for curves.
pub fn le_greuel_report(f: &GermSpec, opts: GenericOptions) -> Result<LeGreuelReport, crate::equising::EquisingError> {
    let table = equivariant_euler_data(f, opts)?;
    let mu_image = image_milnor_number(&table)?;
    if f.source_dim == 1 {
        let mut m0 = 0u64;
        for b in &f.branches {
            let m = germ_multiplicity(&f.vars, &b.components, opts.local)?
                .finite()
                .ok_or_else(|| InvariantError::NotAFiniteOrBug(vec![format!("branch {} is not finite", b.label)]))?;
            m0 += m;
        }
        let sigma = (mu_image + m0).checked_sub(1).ok_or_else(|| InvariantError::NonIntegerResult {
            what: "critical point count".into(),
            value: "-1".into(),
        })?;
        return Ok(LeGreuelReport {
            mu_image,
            mu_slice: None,
            multiplicity: Some(m0),
            critical_points: sigma,
            genericity_disagreement: table.genericity_disagreement,
        });
    }
    let slice = crate::equising::generic_slice(f, opts, "le-greuel")?;
    Ok(LeGreuelReport {
        mu_image,
        mu_slice: Some(slice.mu_image),
        multiplicity: None,
        critical_points: mu_image + slice.mu_image,
        genericity_disagreement: table.genericity_disagreement || slice.genericity_disagreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core(comps: &[&str]) -> CoreInvariants {
        let f = GermSpec::mono("g", 2, comps).unwrap();
        let t = equivariant_euler_data(&f, GenericOptions::default()).unwrap();
        let v = core_invariants(&t).unwrap();
        special_formula_checks(&t, &v).unwrap();
        v
    }

    #[test]
    fn cross_cap_is_stable() {
        let v = core(&["x1", "y^2", "x1*y"]);
        assert_eq!((v.mu_image, v.mu_double), (0, 0));
        assert_eq!(v.mu_alt, vec![0, 0, 0]);
    }

    #[test]
    fn s1_values() {
        let v = core(&["x1", "y^2", "y^3 - x1^2*y"]);
        assert_eq!((v.mu_image, v.mu_double, v.mu_d2), (1, 1, 1));
        assert_eq!(v.mu_alt, vec![0, 1, 0]);
        let c = v.counts.unwrap();
        assert_eq!((c.cross_caps, c.triple_points), (Some(2), Some(0)));
    }

    #[test]
    fn h2_values() {
        let v = core(&["x1", "y^3", "x1*y + y^5"]);
        assert_eq!((v.mu_image, v.mu_double, v.mu_d2), (2, 4, 1));
        assert_eq!(v.mu_alt, vec![0, 1, 1, 0]);
        assert_eq!(v.counts.unwrap().triple_points, Some(1));
    }
}
