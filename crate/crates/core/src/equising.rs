//! Transverse slices, the `mu_I*` sequences and Whitney equisingularity of
//! one-parameter families.
//!
//! A slice restricts `f` over a random hyperplane `p = 0` of the target. In
//! normal form `p o f` is linear in some source coordinate `x_j` plus higher
//! order terms, so `x_j` is solved as a truncated power series by fixed-point
//! iteration and substituted back.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::germ::{source_variables, FamilySpec, GermError, GermFile, GermSpec};
use crate::invariants::{core_invariants, equivariant_euler_data, InvariantError};
use crate::local::{random_linear_coefficients, GenericOptions, LocalError};
use crate::multipoint::MultipointError;
use crate::poly::{Monomial, Poly, PolyError, Rational, Replacement, VarList};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquisingError {
    #[error("transverse slices need source dimension at least 2, got {0}")]
    TooSmall(usize),
    #[error("slice level {level} is out of range for source dimension {n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("no admissible linear form found after {attempts} attempts")]
    DegenerateForm { attempts: usize },
    #[error("the linear form {form:?} does not cut a transverse slice")]
    NotTransverse { form: Vec<i64> },
    #[error("the slice did not stabilise below the degree cap {cap}")]
    TruncationUnstable { cap: u32 },
    #[error("the member at t = {t} is not A-finite: {reason}")]
    UnstableGenericMember { t: String, reason: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<LocalError> for EquisingError {
    fn from(e: LocalError) -> Self {
        EquisingError::Invariant(e.into())
    }
}

/// A slice germ and the data used to produce it.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceData {
    pub germ: GermSpec,
    /// Coefficients of the linear form on the target coordinates.
    pub form: Vec<i64>,
    /// The source variable eliminated by the slice.
    pub solved_variable: String,
    /// Total degree at which the implicit solution was truncated.
    pub truncation: u32,
}

fn linear_coefficient(p: &Poly, i: usize) -> Rational {
    let mut e = vec![0; p.nvars()];
    e[i] = 1;
    p.coefficient(&Monomial(e))
}

/// Slices `f` by the hyperplane with coefficients `form` (one per target
/// coordinate), truncating the implicit solution at `truncation`.
pub fn slice_with_form(f: &GermSpec, form: &[i64], truncation: u32) -> Result<SliceData, EquisingError> {
    let n = f.source_dim;
    if n < 2 {
        return Err(EquisingError::TooSmall(n));
    }
    assert_eq!(form.len(), n + 1, "one coefficient per target coordinate");
    let vars = &f.vars;
    let c = |i: usize| Rational::from_integer(form[i].into());
    // p o f for every branch
    let pulled: Vec<Poly> = f
        .branches
        .iter()
        .map(|b| {
            let mut acc = Poly::zero(vars);
            for (i, comp) in b.components.iter().enumerate() {
                acc = acc + comp.scale(&c(i));
            }
            acc
        })
        .collect();
    // the eliminated variable must be a target coordinate with nonzero
    // coefficient and appear linearly in every p o f
    let j = (0..n - 1)
        .rev()
        .find(|&j| form[j] != 0 && pulled.iter().all(|p| !num_traits::Zero::is_zero(&linear_coefficient(p, j))))
        .ok_or_else(|| EquisingError::NotTransverse { form: form.to_vec() })?;
    let name = vars.names()[j].clone();
    let reduced_names: Vec<String> =
        vars.names().iter().enumerate().filter(|&(i, _)| i != j).map(|(_, s)| s.clone()).collect();
    let reduced = VarList::new(reduced_names);
    let target = source_variables(n - 1);
    let mut branches = Vec::new();
    for (b, p) in f.branches.iter().zip(&pulled) {
        let lin = linear_coefficient(p, j);
        let rest = p - &Poly::var_at(vars, j).scale(&lin);
        let factor = -(Rational::from_integer(1.into()) / lin);
        let mut phi = Poly::zero(vars);
        for _ in 0..=truncation {
            let next = rest
                .substitute_truncated(&[(name.as_str(), Replacement::Poly(phi.clone()))], Some(truncation))?
                .with_vars(vars)?
                .scale(&factor)
                .truncate(truncation);
            if next == phi {
                break;
            }
            phi = next;
        }
        let phi = phi.with_vars(&reduced)?;
        let mut comps = Vec::with_capacity(n);
        for (i, comp) in b.components.iter().enumerate() {
            if i == j {
                continue;
            }
            let s = comp
                .substitute_truncated(&[(name.as_str(), Replacement::Poly(phi.clone()))], Some(truncation))?
                .with_vars(&reduced)?
                .truncate(truncation);
            comps.push(s.rename(&target)?);
        }
        branches.push((b.label.clone(), comps));
    }
    let germ = GermSpec::new(&format!("{}/slice", f.name), n - 1, branches)?;
    Ok(SliceData { germ, form: form.to_vec(), solved_variable: name, truncation })
}

/// A random transverse slice. Degenerate forms are redrawn up to the
/// resample limit.
pub fn transverse_slice(f: &GermSpec, opts: GenericOptions, tag: &str) -> Result<SliceData, EquisingError> {
    let n = f.source_dim;
    if n < 2 {
        return Err(EquisingError::TooSmall(n));
    }
    let truncation = initial_truncation(f, opts);
    let mut rng = seed::rng_for(opts.seed, &format!("slice:{tag}"));
    let attempts = opts.resample_limit + 1;
    for _ in 0..attempts {
        let form = random_linear_coefficients(&mut rng, n + 1);
        match slice_with_form(f, &form, truncation) {
            Err(EquisingError::NotTransverse { .. }) => continue,
            other => return other,
        }
    }
    Err(EquisingError::DegenerateForm { attempts })
}

fn initial_truncation(f: &GermSpec, opts: GenericOptions) -> u32 {
    (2 * f.max_degree() + 2).min(opts.local.degree_cap)
}

/// Invariants recorded at each level of a slice chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceLevel {
    pub level: usize,
    pub germ: GermFile,
    /// Empty at level 0.
    pub form: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solved_variable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    pub mu_image: u64,
    pub mu_double: u64,
    pub mu_d2: u64,
    /// Independent samples disagreed somewhere on this level.
    pub genericity_disagreement: bool,
}

/// Levels `0..n-1` of successive generic slices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceChain {
    pub levels: Vec<SliceLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Measured {
    mu_image: u64,
    mu_double: u64,
    mu_d2: u64,
    disagreement: bool,
}

fn measure(f: &GermSpec, opts: GenericOptions) -> Result<Measured, EquisingError> {
    let table = equivariant_euler_data(f, opts)?;
    let v = core_invariants(&table)?;
    Ok(Measured {
        mu_image: v.mu_image,
        mu_double: v.mu_double,
        mu_d2: v.mu_d2,
        disagreement: table.genericity_disagreement,
    })
}

/// Slices with one form, raising the truncation until the invariants of the
/// slice no longer change.
fn stable_slice(f: &GermSpec, form: &[i64], opts: GenericOptions) -> Result<(SliceData, Measured), EquisingError> {
    let cap = opts.local.degree_cap;
    let step = f.max_degree().max(4);
    let mut order = initial_truncation(f, opts);
    let mut slice = slice_with_form(f, form, order)?;
    let mut value = measure(&slice.germ, opts)?;
    while order + step <= cap {
        let finer = slice_with_form(f, form, order + step)?;
        let finer_value = measure(&finer.germ, opts)?;
        if finer_value == value {
            return Ok((slice, value));
        }
        order += step;
        slice = finer;
        value = finer_value;
    }
    Err(EquisingError::TruncationUnstable { cap })
}

fn is_degenerate(e: &EquisingError) -> bool {
    matches!(
        e,
        EquisingError::NotTransverse { .. }
            | EquisingError::Invariant(InvariantError::NotAFiniteOrBug(_))
            | EquisingError::Invariant(InvariantError::Multipoint(MultipointError::Local(LocalError::NotIsolated(_))))
    )
}

/// One generic slice with the two-sample genericity protocol: forms are
/// drawn until two admissible ones are found; if their slices disagree,
/// further forms are drawn up to the resample limit and the slice with the
/// smallest image Milnor number is kept.
fn certified_slice(
    f: &GermSpec,
    opts: GenericOptions,
    tag: &str,
) -> Result<(SliceData, Measured, bool), EquisingError> {
    let n = f.source_dim;
    let mut rng = seed::rng_for(opts.seed, &format!("slice:{tag}"));
    let budget = 2 * (opts.resample_limit + 2);
    let mut found: Vec<(SliceData, Measured)> = Vec::new();
    let mut extra = 0;
    for _ in 0..budget {
        let form = random_linear_coefficients(&mut rng, n + 1);
        match stable_slice(f, &form, opts) {
            Ok(r) => found.push(r),
            Err(e) if is_degenerate(&e) => continue,
            Err(e) => return Err(e),
        }
        if found.len() == 2 && found[0].1 == found[1].1 {
            let (s, m) = found.swap_remove(0);
            return Ok((s, m, false));
        }
        if found.len() > 2 {
            extra += 1;
            if extra >= opts.resample_limit {
                break;
            }
        }
    }
    if found.is_empty() {
        return Err(EquisingError::DegenerateForm { attempts: budget });
    }
    let disagreement = found.len() > 1;
    let best = found
        .into_iter()
        .enumerate()
        .min_by_key(|(i, (_, m))| (m.mu_image, m.mu_double, *i))
        .map(|(_, r)| r)
        .expect("nonempty");
    Ok((best.0, best.1, disagreement))
}

/// The slice chain `f = f_(0), f_(1), ..., f_(n-1)`.
pub fn slice_chain(f: &GermSpec, opts: GenericOptions) -> Result<SliceChain, EquisingError> {
    slice_chain_to(f, f.source_dim - 1, opts)
}

/// The slice chain truncated after `f_(last)`.
pub fn slice_chain_to(f: &GermSpec, last: usize, opts: GenericOptions) -> Result<SliceChain, EquisingError> {
    if last >= f.source_dim {
        return Err(EquisingError::LevelOutOfRange { level: last, n: f.source_dim });
    }
    let top = measure(f, opts)?;
    let mut levels = vec![SliceLevel {
        level: 0,
        germ: GermFile::from_germ(f),
        form: Vec::new(),
        solved_variable: None,
        truncation: None,
        mu_image: top.mu_image,
        mu_double: top.mu_double,
        mu_d2: top.mu_d2,
        genericity_disagreement: top.disagreement,
    }];
    let mut current = f.clone();
    for level in 1..=last {
        let (slice, m, flag) = certified_slice(&current, opts, &format!("level{level}"))?;
        levels.push(SliceLevel {
            level,
            germ: GermFile::from_germ(&slice.germ),
            form: slice.form.clone(),
            solved_variable: Some(slice.solved_variable.clone()),
            truncation: Some(slice.truncation),
            mu_image: m.mu_image,
            mu_double: m.mu_double,
            mu_d2: m.mu_d2,
            genericity_disagreement: flag || m.disagreement,
        });
        current = slice.germ;
    }
    Ok(SliceChain { levels })
}

/// A generic slice together with its invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericSlice {
    pub slice: SliceData,
    pub mu_image: u64,
    pub mu_double: u64,
    pub mu_d2: u64,
    pub genericity_disagreement: bool,
}

/// A generic transverse slice, certified by the two-sample protocol and
/// stable under raising the truncation order.
pub fn generic_slice(f: &GermSpec, opts: GenericOptions, tag: &str) -> Result<GenericSlice, EquisingError> {
    let (slice, m, flag) = certified_slice(f, opts, tag)?;
    Ok(GenericSlice {
        slice,
        mu_image: m.mu_image,
        mu_double: m.mu_double,
        mu_d2: m.mu_d2,
        genericity_disagreement: flag || m.disagreement,
    })
}

/// `mu_I*(f)` and `mu~_I*(D^2(f), pi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuStar {
    /// `(mu_I(f_(0)), ..., mu_I(f_(n-1)))`.
    pub mu_i_star: Vec<u64>,
    /// `(mu_D(f_(1)), ..., mu_D(f_(n-2)))`: the sequence of the pair
    /// `(D^2(f), pi)` with its first entry dropped.
    pub mu_tilde_star: Vec<u64>,
    pub chain: SliceChain,
}

impl MuStar {
    pub fn genericity_disagreement(&self) -> bool {
        self.chain.levels.iter().any(|l| l.genericity_disagreement)
    }
}

pub fn mu_star_sequences(f: &GermSpec, opts: GenericOptions) -> Result<MuStar, EquisingError> {
    let chain = slice_chain(f, opts)?;
    let mu_i_star = chain.levels.iter().map(|l| l.mu_image).collect();
    let n = f.source_dim;
    let mu_tilde_star = chain.levels.iter().filter(|l| l.level >= 1 && l.level + 2 <= n).map(|l| l.mu_double).collect();
    Ok(MuStar { mu_i_star, mu_tilde_star, chain })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    WhitneyEquisingular,
    TargetOnly,
    NotEquisingular,
}

/// Invariants of one member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEvidence {
    pub t: String,
    pub mu_i_star: Vec<u64>,
    pub mu_tilde_star: Vec<u64>,
    /// `mu(D^2(f_t))`.
    pub mu_d2: u64,
    pub mu_double: u64,
    pub genericity_disagreement: bool,
}

/// An entry that differs from its value at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub sequence: String,
    pub index: usize,
    pub t: String,
    pub at_zero: u64,
    pub at_t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub family: String,
    pub verdict: Verdict,
    /// Evidence at `t = 0` followed by the sampled values.
    pub evidence: Vec<SampleEvidence>,
    pub jumps: Vec<Jump>,
    pub samples: usize,
    pub seed: u64,
    /// `mu_I(f_0) >= mu_I(f_t)` at every sample.
    pub semicontinuity_holds: bool,
    /// Finite sampling certifies only that no jump was detected.
    pub note: String,
}

/// Random parameter values `a/b` with `a` in `[-40, 40] \ {0}` and `b` in `[41, 100]`.
pub fn sample_parameters(opts: GenericOptions, tag: &str, count: usize) -> Vec<Rational> {
    use rand::Rng;
    let mut rng = seed::rng_for(opts.seed, &format!("parameter:{tag}"));
    (0..count)
        .map(|_| {
            let a = loop {
                let a: i64 = rng.random_range(-40..=40);
                if a != 0 {
                    break a;
                }
            };
            let b: i64 = rng.random_range(41..=100);
            Rational::new(a.into(), b.into())
        })
        .collect()
}

fn evidence_for(fam: &FamilySpec, t: &Rational, opts: GenericOptions) -> Result<SampleEvidence, EquisingError> {
    let member = fam.specialize(t)?;
    let star = mu_star_sequences(&member, opts)?;
    let top = &star.chain.levels[0];
    Ok(SampleEvidence {
        t: t.to_string(),
        mu_d2: top.mu_d2,
        mu_double: top.mu_double,
        genericity_disagreement: star.genericity_disagreement(),
        mu_i_star: star.mu_i_star,
        mu_tilde_star: star.mu_tilde_star,
    })
}

fn jumps(name: &str, zero: &[u64], other: &[u64], t: &str) -> Vec<Jump> {
    zero.iter()
        .zip(other)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(index, (&at_zero, &at_t))| Jump { sequence: name.into(), index, t: t.into(), at_zero, at_t })
        .collect()
}

/// Decides Whitney equisingularity of `fam` by comparing `mu_I*` and
/// `mu~_I*` at `t = 0` with their values at `t_samples` random parameters.
pub fn whitney_verdict(
    fam: &FamilySpec,
    t_samples: usize,
    opts: GenericOptions,
) -> Result<FamilyVerdict, EquisingError> {
    let zero = Rational::from_integer(0.into());
    let ts = sample_parameters(opts, &fam.name, t_samples);
    let at_zero = evidence_for(fam, &zero, opts)?;
    let sampled: Vec<SampleEvidence> = ts
        .par_iter()
        .map(|t| {
            evidence_for(fam, t, opts).map_err(|e| match e {
                EquisingError::Invariant(InvariantError::NotAFiniteOrBug(v)) => {
                    EquisingError::UnstableGenericMember { t: t.to_string(), reason: v.join("; ") }
                }
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let mut all_jumps = Vec::new();
    let mut star_constant = true;
    let mut tilde_constant = true;
    let mut semicontinuity_holds = true;
    for e in &sampled {
        let a = jumps("mu_I*", &at_zero.mu_i_star, &e.mu_i_star, &e.t);
        let b = jumps("mu~_I*", &at_zero.mu_tilde_star, &e.mu_tilde_star, &e.t);
        star_constant &= a.is_empty() && at_zero.mu_i_star.len() == e.mu_i_star.len();
        tilde_constant &= b.is_empty() && at_zero.mu_tilde_star.len() == e.mu_tilde_star.len();
        semicontinuity_holds &= at_zero.mu_i_star[0] >= e.mu_i_star[0];
        all_jumps.extend(a);
        all_jumps.extend(b);
    }
    let verdict = match (star_constant, tilde_constant) {
        (true, true) => Verdict::WhitneyEquisingular,
        (true, false) => Verdict::TargetOnly,
        (false, _) => Verdict::NotEquisingular,
    };
    let mut evidence = vec![at_zero];
    evidence.extend(sampled);
    Ok(FamilyVerdict {
        family: fam.name.clone(),
        verdict,
        evidence,
        jumps: all_jumps,
        samples: t_samples,
        seed: opts.seed,
        semicontinuity_holds,
        note: "constancy is tested at t = 0 against finitely many random parameter values; \
               agreement means that no jump was detected"
            .into(),
    })
}
