//! The full invariant report of a germ.

use serde::{Deserialize, Serialize};

use crate::equising::{mu_star_sequences, EquisingError};
use crate::germ::{GermFile, GermSpec};
use crate::invariants::{
    alternating_milnor_numbers, double_point_milnor, double_point_space_milnor, equivariant_euler_data, formula_checks,
    image_milnor_number, le_greuel_report, top_row_report, zero_stable_counts, CheckReport, CoreInvariants,
    InvariantError, LeGreuelReport, TableRow, TopRowReport, ZeroStableCounts,
};
use crate::local::GenericOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

/// Multi-germ strata of positive dimension are assumed connected per branch tuple.
pub const FLAG_ASSUMED_CONNECTED: &str = "ASSUMED_CONNECTED";
/// Independent random samples disagreed somewhere; minima were reported.
pub const FLAG_GENERICITY_DISAGREEMENT: &str = "GENERICITY_DISAGREEMENT";
/// The two written closed forms of the weighted top-row rank differ.
pub const FLAG_WEIGHTED_RANK_DISCREPANCY: &str = "WEIGHTED_RANK_DISCREPANCY";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub germ: GermFile,
    pub seed: u64,
    pub d: u32,
    pub s: usize,
    pub stable: bool,
    #[serde(rename = "mu_I")]
    pub mu_image: u64,
    #[serde(rename = "mu_D")]
    pub mu_double: u64,
    #[serde(rename = "mu_D2")]
    pub mu_d2: u64,
    /// Absent when the alternating numbers do not add up to `mu_I`.
    pub mu_alt: Option<Vec<i64>>,
    pub counts: Option<ZeroStableCounts>,
    pub checks: CheckReport,
    pub top_row: Option<TopRowReport>,
    #[serde(rename = "mu_I_star")]
    pub mu_star: Vec<u64>,
    #[serde(rename = "mu_tilde_I_star")]
    pub mu_tilde_star: Vec<u64>,
    pub le_greuel: LeGreuelReport,
    pub table: Vec<TableRow>,
    pub flags: Vec<String>,
    pub consistency: Consistency,
    pub problems: Vec<String>,
}

/// Computes every invariant of `f`. Violated identities do not abort: they
/// are listed in `problems` and the report is marked inconsistent.
pub fn invariant_report(f: &GermSpec, opts: GenericOptions) -> Result<InvariantReport, EquisingError> {
    let table = equivariant_euler_data(f, opts)?;
    let mu_image = image_milnor_number(&table)?;
    let mu_double = double_point_milnor(&table)?;
    let mu_d2 = double_point_space_milnor(&table);
    let mut problems = Vec::new();
    let mu_alt = match alternating_milnor_numbers(&table, mu_image) {
        Ok(v) => Some(v),
        Err(e @ InvariantError::HoustonSumViolation { .. }) => {
            problems.push(e.to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let counts = match f.source_dim {
        2 | 3 => Some(zero_stable_counts(&table)?),
        _ => None,
    };
    let core = CoreInvariants {
        mu_image,
        mu_double,
        mu_d2,
        mu_alt: mu_alt.clone().unwrap_or_default(),
        counts: counts.clone(),
    };
    let checks = formula_checks(&table, &core);
    problems.extend(checks.failures());
    let top_row = top_row_report(&table)?;
    let star = mu_star_sequences(f, opts)?;
    let le_greuel = match star.chain.levels.get(1) {
        Some(slice) => LeGreuelReport {
            mu_image,
            mu_slice: Some(slice.mu_image),
            multiplicity: None,
            critical_points: mu_image + slice.mu_image,
            genericity_disagreement: slice.genericity_disagreement,
        },
        None => le_greuel_report(f, opts)?,
    };

    let mut flags = Vec::new();
    if f.num_branches() > 1 {
        flags.push(FLAG_ASSUMED_CONNECTED.to_string());
    }
    if table.genericity_disagreement || star.genericity_disagreement() || le_greuel.genericity_disagreement {
        flags.push(FLAG_GENERICITY_DISAGREEMENT.to_string());
    }
    if top_row.as_ref().is_some_and(|t| t.stated_weighted_rank != t.weighted_rank.to_string()) {
        flags.push(FLAG_WEIGHTED_RANK_DISCREPANCY.to_string());
    }
    let consistency = if problems.is_empty() { Consistency::Consistent } else { Consistency::Inconsistent };
    Ok(InvariantReport {
        germ: GermFile::from_germ(f),
        seed: opts.seed,
        d: table.d,
        s: f.num_branches(),
        stable: table.stable,
        mu_image,
        mu_double,
        mu_d2,
        mu_alt,
        counts,
        checks,
        top_row,
        mu_star: star.mu_i_star,
        mu_tilde_star: star.mu_tilde_star,
        le_greuel,
        table: table.rows,
        flags,
        consistency,
        problems,
    })
}
