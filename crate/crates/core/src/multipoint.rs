//! Multiple point spaces `D^k(f)` of corank-one germs and their fixed-point
//! strata `D^k(f, gamma)`.
//!
//! For a branch `(x, h1(x,y), h2(x,y))`, `D^k` lives in the variables
//! `x1..x_{n-1}, y1..yk` and is cut out by the iterated divided differences
//! `h_j[y1,...,yi]`, `2 <= i <= k`. Points on distinct branches are matched by
//! equating the components directly.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::germ::GermSpec;
use crate::local::{local_dimension, milnor_icis, GenericOptions, LocalDimension, LocalError};
use crate::poly::{Poly, PolyError, Replacement, VarList};
use crate::symrep::{factorial, partitions_of, PartitionData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultipointError {
    #[error("multiple point spaces need k >= 2, got {0}")]
    LevelTooSmall(u32),
    #[error("branch index {index} out of range for {branches} branches")]
    BadBranch { index: usize, branches: usize },
    #[error("branch tuple has length {found}, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("the branch tuple {tuple:?} is not fixed by a permutation of type {gamma}")]
    NotFixed { tuple: Vec<usize>, gamma: String },
    #[error("fixed-point strata are taken inside a full multiple point space")]
    NotFull,
    #[error("the double point space is empty")]
    EmptyDoublePoints,
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Geometry of a stratum germ at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StratumStatus {
    /// The ideal is the unit ideal.
    Empty,
    /// A zero-dimensional complete intersection of multiplicity `m0`.
    ZeroDim { m0: u64 },
    /// An isolated complete intersection of positive dimension.
    Icis { dim: u32, mu: u64 },
    /// Nonempty at the origin although the expected dimension is negative.
    NegativeDim,
    /// Not a complete intersection of the expected dimension.
    Irregular { reason: String },
}

impl StratumStatus {
    pub fn is_empty(&self) -> bool {
        matches!(self, StratumStatus::Empty)
    }

    /// Euler characteristic of the stable fibre: `1 + (-1)^d mu` in positive
    /// dimension, `m0` for points, and zero otherwise.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            StratumStatus::Icis { dim, mu } => 1 + sign_pow(*dim) * *mu as i64,
            StratumStatus::ZeroDim { m0 } => *m0 as i64,
            _ => 0,
        }
    }

    /// Smooth of the expected dimension, or empty.
    pub fn is_stable(&self) -> bool {
        match self {
            StratumStatus::Empty => true,
            StratumStatus::ZeroDim { m0 } => *m0 == 1,
            StratumStatus::Icis { mu, .. } => *mu == 0,
            StratumStatus::NegativeDim | StratumStatus::Irregular { .. } => false,
        }
    }
}

pub(crate) fn sign_pow(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One stratum `D^k(f, gamma)` for a branch tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplePointStratum {
    pub k: u32,
    pub branch_tuple: Vec<usize>,
    /// `None` for the full space `D^k`.
    pub gamma: Option<PartitionData>,
    #[serde(skip)]
    pub vars: Option<VarList>,
    #[serde(skip)]
    pub generators: Vec<Poly>,
    pub expected_dim: i64,
    pub status: StratumStatus,
    /// Independent generic samples disagreed on the Milnor number.
    pub genericity_disagreement: bool,
}

impl MultiplePointStratum {
    pub fn ring(&self) -> &VarList {
        self.vars.as_ref().expect("stratum ring")
    }

    /// Generators as strings, for reports.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(Poly::to_string).collect()
    }
}

/// `x1..x_{n-1}, y1..y_m`.
pub fn stratum_ring(n: usize, m: usize) -> VarList {
    let mut names: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("y{i}")));
    VarList::new(names)
}

/// Copy of the branch function `h(x, y)` in `ring`, with `y` renamed to `y{p+1}`.
fn lift(h: &Poly, ring: &VarList, p: usize) -> Result<Poly, PolyError> {
    let y = Poly::var(ring, &format!("y{}", p + 1))?;
    h.substitute(&[("y", Replacement::Poly(y))])?.with_vars(ring)
}

/// The divided differences `h[y_{p0}], h[y_{p0}, y_{p1}], ...,
/// h[y_{p0}, ..., y_{p_{m-1}}]` of a branch function, as polynomials in `ring`.
pub fn divided_differences(h: &Poly, ring: &VarList, positions: &[usize], n: usize) -> Result<Vec<Poly>, PolyError> {
    let mut row: Vec<Poly> = positions.iter().map(|&p| lift(h, ring, p)).collect::<Result<_, _>>()?;
    let mut out = vec![row[0].clone()];
    for order in 1..positions.len() {
        let mut next = Vec::with_capacity(row.len() - 1);
        for i in 0..row.len() - 1 {
            let diff = &row[i] - &row[i + 1];
            let u = n - 1 + positions[i];
            let v = n - 1 + positions[i + order];
            next.push(diff.div_by_difference(u, v)?);
        }
        out.push(next[0].clone());
        row = next;
    }
    Ok(out)
}

/// Generators of `D^k(f)` for a branch tuple, in `stratum_ring(n, k)`.
pub fn multiple_point_generators(f: &GermSpec, tuple: &[usize]) -> Result<(VarList, Vec<Poly>), MultipointError> {
    let n = f.source_dim;
    let k = tuple.len();
    for &b in tuple {
        if b >= f.num_branches() {
            return Err(MultipointError::BadBranch { index: b, branches: f.num_branches() });
        }
    }
    let ring = stratum_ring(n, k);
    // group positions by branch, in order of first appearance
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (p, &b) in tuple.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| *g == b) {
            Some((_, ps)) => ps.push(p),
            None => groups.push((b, vec![p])),
        }
    }
    let mut gens = Vec::with_capacity(2 * (k - 1));
    for h_index in 0..2 {
        for (b, ps) in &groups {
            let h = f.branches[*b].h()[h_index];
            gens.extend(divided_differences(h, &ring, ps, n)?.into_iter().skip(1));
        }
        for w in groups.windows(2) {
            let a = lift(f.branches[w[0].0].h()[h_index], &ring, w[0].1[0])?;
            let b = lift(f.branches[w[1].0].h()[h_index], &ring, w[1].1[0])?;
            gens.push(a - b);
        }
    }
    Ok((ring, gens))
}

/// Cycle blocks `[start, end)` of the canonical permutation of type `gamma`:
/// consecutive positions, parts in non-increasing order.
pub fn canonical_blocks(gamma: &PartitionData) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut at = 0;
    for &r in &gamma.parts {
        out.push((at, at + r as usize));
        at += r as usize;
    }
    out
}

fn tag_for(k: u32, gamma: Option<&PartitionData>, tuple: &[usize]) -> String {
    let g = gamma.map_or("full".to_string(), |g| g.to_string());
    format!("stratum:k{k}:{g}:{tuple:?}")
}

fn classify(
    ring: &VarList,
    gens: &[Poly],
    expected_dim: i64,
    opts: GenericOptions,
    tag: &str,
) -> Result<(StratumStatus, bool), MultipointError> {
    if gens.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok((StratumStatus::Empty, false));
    }
    if expected_dim < 0 {
        return Ok((StratumStatus::NegativeDim, false));
    }
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let codim = ring.len() as i64 - expected_dim;
    if (nonzero.len() as i64) < codim {
        return Ok((StratumStatus::Irregular { reason: "fewer nonzero equations than the codimension".into() }, false));
    }
    if expected_dim == 0 {
        return Ok(match local_dimension(ring, &nonzero, opts.local)? {
            LocalDimension::Finite(m0) => (StratumStatus::ZeroDim { m0 }, false),
            LocalDimension::Infinite => {
                (StratumStatus::Irregular { reason: "positive-dimensional, expected a point".into() }, false)
            }
        });
    }
    match milnor_icis(ring, &nonzero, opts, tag) {
        Ok(v) => Ok((StratumStatus::Icis { dim: expected_dim as u32, mu: v.value }, v.disagreement)),
        Err(LocalError::NotIsolated(reason)) => Ok((StratumStatus::Irregular { reason }, false)),
        Err(LocalError::EmptyGerm) => Ok((StratumStatus::Empty, false)),
        Err(e) => Err(e.into()),
    }
}

/// The full multiple point space `D^k(f)` for a branch tuple.
pub fn multiple_point_ideal(
    f: &GermSpec,
    k: u32,
    tuple: &[usize],
    opts: GenericOptions,
) -> Result<MultiplePointStratum, MultipointError> {
    if k < 2 {
        return Err(MultipointError::LevelTooSmall(k));
    }
    if tuple.len() != k as usize {
        return Err(MultipointError::TupleLength { expected: k as usize, found: tuple.len() });
    }
    let (ring, gens) = multiple_point_generators(f, tuple)?;
    let expected_dim = f.source_dim as i64 + 1 - k as i64;
    let (status, flag) = classify(&ring, &gens, expected_dim, opts, &tag_for(k, None, tuple))?;
    Ok(MultiplePointStratum {
        k,
        branch_tuple: tuple.to_vec(),
        gamma: None,
        vars: Some(ring),
        generators: gens,
        expected_dim,
        status,
        genericity_disagreement: flag,
    })
}

/// The subspace of `d` fixed by the canonical permutation of type `gamma`.
pub fn fixed_point_stratum(
    d: &MultiplePointStratum,
    gamma: &PartitionData,
    opts: GenericOptions,
) -> Result<MultiplePointStratum, MultipointError> {
    if d.gamma.is_some() {
        return Err(MultipointError::NotFull);
    }
    if gamma.k != d.k {
        return Err(MultipointError::TupleLength { expected: d.k as usize, found: gamma.k as usize });
    }
    let blocks = canonical_blocks(gamma);
    for &(a, b) in &blocks {
        if d.branch_tuple[a..b].iter().any(|&x| x != d.branch_tuple[a]) {
            return Err(MultipointError::NotFixed { tuple: d.branch_tuple.clone(), gamma: gamma.to_string() });
        }
    }
    let ring = d.ring();
    let nx = ring.len() - d.k as usize;
    let m = blocks.len();
    let reduced = stratum_ring(nx + 1, m);
    // y_p -> y_{block index + 1}; x variables keep their names
    let mut assignment: Vec<(String, Replacement)> = Vec::new();
    for (bi, &(a, b)) in blocks.iter().enumerate() {
        let target = Poly::var(&reduced, &format!("y{}", bi + 1))?;
        for p in a..b {
            assignment.push((format!("y{}", p + 1), Replacement::Poly(target.clone())));
        }
    }
    let refs: Vec<(&str, Replacement)> = assignment.iter().map(|(s, r)| (s.as_str(), r.clone())).collect();
    let gens: Vec<Poly> = d
        .generators
        .iter()
        .map(|g| g.substitute(&refs).and_then(|p| p.with_vars(&reduced)))
        .collect::<Result<_, _>>()?;
    let expected_dim = nx as i64 + 2 - 2 * d.k as i64 + m as i64;
    let (status, flag) = if d.status.is_empty() {
        (StratumStatus::Empty, false)
    } else {
        classify(&reduced, &gens, expected_dim, opts, &tag_for(d.k, Some(gamma), &d.branch_tuple))?
    };
    Ok(MultiplePointStratum {
        k: d.k,
        branch_tuple: d.branch_tuple.clone(),
        gamma: Some(gamma.clone()),
        vars: Some(reduced),
        generators: gens,
        expected_dim,
        status,
        genericity_disagreement: flag,
    })
}

/// A stratum together with the number of branch tuples it represents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub gamma: PartitionData,
    /// Branch label of each cycle block of the canonical permutation.
    pub block_labels: Vec<usize>,
    /// Number of tuples fixed by the canonical permutation whose stratum is
    /// isomorphic to this one.
    pub multiplicity: u64,
    pub stratum: MultiplePointStratum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelData {
    pub k: u32,
    pub entries: Vec<StratumEntry>,
}

/// All strata `D^k(f, gamma)` and the checks on their dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub source_dim: usize,
    pub branches: usize,
    /// `d(f)`: the largest `k` with `D^k` nonempty and of non-negative expected dimension.
    pub d: u32,
    pub levels: Vec<LevelData>,
    /// Descriptions of strata that are not complete intersections of the
    /// expected dimension.
    pub violations: Vec<String>,
    /// All strata are empty or smooth of the expected dimension.
    pub stable: bool,
    pub genericity_disagreement: bool,
}

/// Nondecreasing label sequences of length `r` over `0..s`, with the number
/// of distinct arrangements of each.
fn multisets(r: usize, s: usize) -> Vec<(Vec<usize>, u64)> {
    fn go(r: usize, s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for b in start..s {
            cur.push(b);
            go(r, s, b, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(r, s, 0, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|m| {
            let mut counts = BTreeMap::new();
            for &b in &m {
                *counts.entry(b).or_insert(0u64) += 1;
            }
            let denom: u64 = counts.values().map(|&c| factorial(c)).product();
            (m, factorial(r as u64) / denom)
        })
        .collect()
}

/// Block labellings of the canonical permutation of type `gamma`, up to
/// permuting blocks of equal length.
fn block_labellings(gamma: &PartitionData, s: usize) -> Vec<(Vec<usize>, u64)> {
    let mut runs: Vec<usize> = Vec::new();
    let mut prev = 0;
    for &p in &gamma.parts {
        if p == prev {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
            prev = p;
        }
    }
    let mut acc: Vec<(Vec<usize>, u64)> = vec![(Vec::new(), 1)];
    for r in runs {
        let choices = multisets(r, s);
        acc = acc
            .into_iter()
            .flat_map(|(labels, mult)| {
                choices.iter().map(move |(c, m)| {
                    let mut l = labels.clone();
                    l.extend(c);
                    (l, mult * m)
                })
            })
            .collect();
    }
    acc
}

fn expand_labels(gamma: &PartitionData, labels: &[usize]) -> Vec<usize> {
    gamma.parts.iter().zip(labels).flat_map(|(&r, &b)| std::iter::repeat_n(b, r as usize)).collect()
}

/// Computes every stratum `D^k(f, gamma)` for `2 <= k <= n + 2`, stopping at
/// the first level where all full spaces are empty.
pub fn verify_multiple_point_structure(f: &GermSpec, opts: GenericOptions) -> Result<StructureReport, MultipointError> {
    let n = f.source_dim;
    let s = f.num_branches();
    let mut levels = Vec::new();
    let mut d = 1u32;
    for k in 2..=(n as u32 + 2) {
        let parts = partitions_of(k);
        let identity = parts.last().expect("identity class").clone();
        let full_jobs = block_labellings(&identity, s);
        let full: Vec<(Vec<usize>, u64, MultiplePointStratum)> = full_jobs
            .into_par_iter()
            .map(|(labels, mult)| {
                let tuple = expand_labels(&identity, &labels);
                multiple_point_ideal(f, k, &tuple, opts).map(|st| (labels, mult, st))
            })
            .collect::<Result<_, _>>()?;
        if full.iter().all(|(_, _, st)| st.status.is_empty()) {
            break;
        }
        if k <= n as u32 + 1 {
            d = k;
        }
        let by_multiset: BTreeMap<Vec<usize>, MultiplePointStratum> =
            full.iter().map(|(l, _, st)| (l.clone(), st.clone())).collect();
        let jobs: Vec<(PartitionData, Vec<usize>, u64)> = parts
            .iter()
            .filter(|g| g.parts.len() < k as usize)
            .flat_map(|g| block_labellings(g, s).into_iter().map(move |(l, m)| (g.clone(), l, m)))
            .collect();
        let fixed: Vec<StratumEntry> = jobs
            .into_par_iter()
            .map(|(gamma, labels, mult)| {
                let tuple = expand_labels(&gamma, &labels);
                let mut key = tuple.clone();
                key.sort_unstable();
                // a permuted tuple has an isomorphic full space
                let sorted = &by_multiset[&key];
                let parent = if sorted.branch_tuple == tuple {
                    sorted.clone()
                } else {
                    let (ring, generators) = multiple_point_generators(f, &tuple)?;
                    MultiplePointStratum { branch_tuple: tuple.clone(), vars: Some(ring), generators, ..sorted.clone() }
                };
                let stratum = fixed_point_stratum(&parent, &gamma, opts)?;
                Ok(StratumEntry { gamma, block_labels: labels, multiplicity: mult, stratum })
            })
            .collect::<Result<_, MultipointError>>()?;
        let mut entries: Vec<StratumEntry> = fixed;
        entries.extend(full.into_iter().map(|(labels, mult, stratum)| StratumEntry {
            gamma: identity.clone(),
            block_labels: labels,
            multiplicity: mult,
            stratum,
        }));
        levels.push(LevelData { k, entries });
    }
    let mut violations = Vec::new();
    let mut stable = true;
    let mut flag = false;
    for level in &levels {
        for e in &level.entries {
            flag |= e.stratum.genericity_disagreement;
            stable &= e.stratum.status.is_stable();
            if let StratumStatus::Irregular { reason } = &e.stratum.status {
                violations.push(format!(
                    "D^{}(f,{}) on branches {:?}: {} (expected dimension {})",
                    level.k, e.gamma, e.stratum.branch_tuple, reason, e.stratum.expected_dim
                ));
            }
        }
    }
    Ok(StructureReport { source_dim: n, branches: s, d, levels, violations, stable, genericity_disagreement: flag })
}

impl StructureReport {
    pub fn level(&self, k: u32) -> Option<&LevelData> {
        self.levels.iter().find(|l| l.k == k)
    }

    /// Entries of type `gamma` (all branch tuples).
    pub fn entries(&self, gamma: &PartitionData) -> impl Iterator<Item = &StratumEntry> + '_ {
        let gamma = gamma.clone();
        self.level(gamma.k).into_iter().flat_map(|l| l.entries.iter()).filter(move |e| e.gamma == gamma)
    }

    /// `chi` of the stable fibre of `D^k(f)^sigma`, `sigma` of type `gamma`,
    /// summed over branch tuples.
    pub fn euler_characteristic(&self, gamma: &PartitionData) -> i64 {
        self.entries(gamma).map(|e| e.multiplicity as i64 * e.stratum.status.euler_characteristic()).sum()
    }

    /// Number of tuples fixed by a permutation of type `gamma` whose full
    /// multiple point space is nonempty at the origin.
    pub fn nonempty_tuple_fixcount(&self, gamma: &PartitionData) -> u64 {
        let Some(level) = self.level(gamma.k) else { return 0 };
        let identity = PartitionData::from_parts(&vec![1; gamma.k as usize]);
        let nonempty: Vec<Vec<usize>> = level
            .entries
            .iter()
            .filter(|e| e.gamma == identity && !e.stratum.status.is_empty())
            .map(|e| e.block_labels.clone())
            .collect();
        self.entries(gamma)
            .filter(|e| {
                let mut key = expand_labels(gamma, &e.block_labels);
                key.sort_unstable();
                nonempty.contains(&key)
            })
            .map(|e| e.multiplicity)
            .sum()
    }

    /// Sum of `m0` over the zero-dimensional strata of type `gamma`.
    pub fn total_m0(&self, gamma: &PartitionData) -> u64 {
        self.entries(gamma)
            .map(|e| match e.stratum.status {
                StratumStatus::ZeroDim { m0 } => e.multiplicity * m0,
                _ => 0,
            })
            .sum()
    }

    /// Sum of Milnor numbers over the positive-dimensional strata of type `gamma`.
    pub fn total_mu(&self, gamma: &PartitionData) -> u64 {
        self.entries(gamma)
            .map(|e| match e.stratum.status {
                StratumStatus::Icis { mu, .. } => e.multiplicity * mu,
                StratumStatus::ZeroDim { m0 } => e.multiplicity * (m0 - 1),
                _ => 0,
            })
            .sum()
    }

    /// Whether the full `D^k` is empty for every branch tuple.
    pub fn is_empty_level(&self, k: u32) -> bool {
        self.level(k).is_none_or(|l| l.entries.iter().all(|e| e.stratum.status.is_empty()))
    }
}

/// One row of the iteration table: `D^k(pi, gamma)` read off as
/// `D^{k+1}(f, gamma + (1))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationEntry {
    pub k: u32,
    pub gamma: PartitionData,
    pub lifted: PartitionData,
    pub euler_characteristic: i64,
    pub expected_dim: i64,
}

/// The double point space with its projection `pi: D^2(f) -> C^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublePointPair {
    /// Dimension of `D^2(f)`, i.e. `n - 1`.
    pub source_dim: usize,
    /// Number of branch pairs with nonempty double points.
    pub points: u64,
    /// Number of branches of `f` carrying double points; `pi` maps into
    /// one copy of `C^n` per branch.
    pub target_points: u64,
    /// Sum of the Milnor numbers of the double point germs.
    pub milnor: u64,
    /// Euler characteristic of the stable fibre of `D^2(f)`.
    pub euler_characteristic: i64,
    pub iteration: Vec<IterationEntry>,
}

/// Packages `(D^2(f), pi)` and the iteration table `D^k(pi) = D^{k+1}(f)`.
pub fn double_point_projection(report: &StructureReport) -> Result<DoublePointPair, MultipointError> {
    if report.is_empty_level(2) {
        return Err(MultipointError::EmptyDoublePoints);
    }
    let identity = PartitionData::from_parts(&[1, 1]);
    let nonempty: Vec<&StratumEntry> = report.entries(&identity).filter(|e| !e.stratum.status.is_empty()).collect();
    let points: u64 = nonempty.iter().map(|e| e.multiplicity).sum();
    let mut carriers: Vec<usize> = nonempty.iter().flat_map(|e| e.block_labels.iter().copied()).collect();
    carriers.sort_unstable();
    carriers.dedup();
    let mut iteration = Vec::new();
    for level in report.levels.iter().filter(|l| l.k >= 3) {
        let k = level.k - 1;
        for gamma in partitions_of(k) {
            let lifted = gamma.with_fixed_point();
            iteration.push(IterationEntry {
                k,
                euler_characteristic: report.euler_characteristic(&lifted),
                expected_dim: report.source_dim as i64 - 1 + 1 - 2 * k as i64 + gamma.num_parts() as i64,
                gamma,
                lifted,
            });
        }
    }
    Ok(DoublePointPair {
        source_dim: report.source_dim - 1,
        points,
        target_points: carriers.len() as u64,
        milnor: report.total_mu(&identity),
        euler_characteristic: report.euler_characteristic(&identity),
        iteration,
    })
}

/// Generators of `D^k(pi)` for the projection of the double point space of a
/// mono-germ, built directly from the generators of `D^2(f)`: the equations
/// of `D^2` at each point `(x, y1, z_i)` and their divided differences in `z`.
/// The ring is `x, y1, z1..zk`, named `y1, ..., y_{k+1}`.
pub fn pair_multiple_point_generators(f: &GermSpec, k: u32) -> Result<(VarList, Vec<Poly>), MultipointError> {
    let n = f.source_dim;
    let (_, d2) = multiple_point_generators(f, &[0, 0])?;
    let ring = stratum_ring(n, k as usize + 1);
    let mut gens = Vec::new();
    // D^2 generators come as [h1[y1,y2], h2[y1,y2]]
    for g in &d2 {
        let mut row: Vec<Poly> = (0..k as usize)
            .map(|i| {
                let z = Poly::var(&ring, &format!("y{}", i + 2))?;
                g.substitute(&[("y2", Replacement::Poly(z))])?.with_vars(&ring)
            })
            .collect::<Result<_, PolyError>>()?;
        gens.push(row[0].clone());
        for order in 1..k as usize {
            let mut next = Vec::new();
            for i in 0..row.len() - 1 {
                let diff = &row[i] - &row[i + 1];
                next.push(diff.div_by_difference(n + i, n + i + order)?);
            }
            gens.push(next[0].clone());
            row = next;
        }
    }
    Ok((ring, gens))
}
