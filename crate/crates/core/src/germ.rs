//! Corank-one map germs and one-parameter families in normal form.
//!
//! A germ `(C^n, S) -> (C^{n+1}, 0)` is stored branch by branch. Each branch is
//! written in local coordinates `x1, ..., x_{n-1}, y` centred at its base point
//! and has components `(x1, ..., x_{n-1}, h1, h2)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{parse_polynomial, ParseError, Poly, PolyError, Rational, Replacement, VarList};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GermError {
    #[error("the source dimension must be at least 1")]
    ZeroSourceDimension,
    #[error("a germ needs at least one branch")]
    NoBranches,
    #[error("branch `{branch}` has {found} components, expected {expected}")]
    WrongComponentCount { branch: String, expected: usize, found: usize },
    #[error("branch `{branch}`: component {index} is `{found}`, the normal form requires `{expected}`")]
    NormalFormViolation { branch: String, index: usize, expected: String, found: String },
    #[error("branch `{branch}`: component {index} does not vanish at the base point")]
    NotVanishing { branch: String, index: usize },
    #[error("branch `{branch}`, component {index}: {source}")]
    Parse {
        branch: String,
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("parameter `{0}` clashes with a source variable")]
    ParameterClash(String),
    #[error("expected exactly one parameter, found {0}")]
    ParameterCount(usize),
    #[error("{0}")]
    Poly(#[from] PolyError),
}

/// Names `x1, ..., x_{n-1}, y` of the source coordinates.
pub fn source_variables(n: usize) -> VarList {
    let mut names: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    names.push("y".into());
    VarList::new(names)
}

/// One branch of a multi-germ.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub label: String,
    /// All `n + 1` components over the source variables.
    pub components: Vec<Poly>,
}

impl Branch {
    /// The two non-trivial components `(h1, h2)`.
    pub fn h(&self) -> [&Poly; 2] {
        let n = self.components.len() - 1;
        [&self.components[n - 1], &self.components[n]]
    }
}

/// A corank-one multi-germ in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct GermSpec {
    pub name: String,
    pub source_dim: usize,
    pub vars: VarList,
    pub branches: Vec<Branch>,
}

fn check_normal_form(
    label: &str,
    n: usize,
    vars: &VarList,
    components: &[Poly],
    vanishing: impl Fn(&Poly) -> bool,
) -> Result<(), GermError> {
    if components.len() != n + 1 {
        return Err(GermError::WrongComponentCount { branch: label.into(), expected: n + 1, found: components.len() });
    }
    for (i, c) in components.iter().enumerate().take(n - 1) {
        let expected = Poly::var_at(vars, i);
        if *c != expected {
            return Err(GermError::NormalFormViolation {
                branch: label.into(),
                index: i,
                expected: expected.to_string(),
                found: c.to_string(),
            });
        }
    }
    for (i, c) in components.iter().enumerate() {
        if !vanishing(c) {
            return Err(GermError::NotVanishing { branch: label.into(), index: i });
        }
    }
    Ok(())
}

impl GermSpec {
    /// Builds a germ from branches given as `(label, components)` over
    /// [`source_variables`]`(n)`, checking the normal form.
    pub fn new(name: &str, n: usize, branches: Vec<(String, Vec<Poly>)>) -> Result<Self, GermError> {
        if n == 0 {
            return Err(GermError::ZeroSourceDimension);
        }
        if branches.is_empty() {
            return Err(GermError::NoBranches);
        }
        let vars = source_variables(n);
        let mut out = Vec::with_capacity(branches.len());
        for (label, comps) in branches {
            let comps: Vec<Poly> = comps.iter().map(|c| c.with_vars(&vars)).collect::<Result<_, _>>()?;
            check_normal_form(&label, n, &vars, &comps, |c| c.constant_term() == Rational::from_integer(0.into()))?;
            out.push(Branch { label, components: comps });
        }
        Ok(GermSpec { name: name.into(), source_dim: n, vars, branches: out })
    }

    /// Parses a germ from component strings.
    pub fn parse(name: &str, n: usize, branches: &[(&str, &[&str])]) -> Result<Self, GermError> {
        let vars = source_variables(n.max(1));
        let mut parsed = Vec::new();
        for (label, comps) in branches {
            let mut ps = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                ps.push(parse_polynomial(c, &vars).map_err(|source| GermError::Parse {
                    branch: label.to_string(),
                    index: i,
                    source,
                })?);
            }
            parsed.push((label.to_string(), ps));
        }
        GermSpec::new(name, n, parsed)
    }

    /// Mono-germ shorthand.
    pub fn mono(name: &str, n: usize, comps: &[&str]) -> Result<Self, GermError> {
        GermSpec::parse(name, n, &[("p0", comps)])
    }

    /// Number of branches `s(f)`.
    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    pub fn is_mono(&self) -> bool {
        self.branches.len() == 1
    }

    /// Highest total degree of a component.
    pub fn max_degree(&self) -> u32 {
        self.branches.iter().flat_map(|b| b.components.iter()).filter_map(Poly::total_degree).max().unwrap_or(1)
    }

    /// A germ with the same branch labels and new components, checked for
    /// normal form.
    pub fn with_components(&self, name: &str, branches: Vec<Vec<Poly>>) -> Result<GermSpec, GermError> {
        let b = self.branches.iter().zip(branches).map(|(br, c)| (br.label.clone(), c)).collect();
        GermSpec::new(name, self.source_dim, b)
    }
}

/// A one-parameter family of germs.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub source_dim: usize,
    pub param: String,
    /// Source variables followed by the parameter.
    pub ring: VarList,
    pub branches: Vec<(String, Vec<Poly>)>,
}

impl FamilySpec {
    pub fn parse(name: &str, n: usize, param: &str, branches: &[(&str, &[&str])]) -> Result<Self, GermError> {
        if n == 0 {
            return Err(GermError::ZeroSourceDimension);
        }
        let src = source_variables(n);
        if src.contains(param) {
            return Err(GermError::ParameterClash(param.into()));
        }
        let mut names = src.names().to_vec();
        names.push(param.into());
        let ring = VarList::new(names);
        let mut out = Vec::new();
        for (label, comps) in branches {
            let mut ps = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                ps.push(parse_polynomial(c, &ring).map_err(|source| GermError::Parse {
                    branch: label.to_string(),
                    index: i,
                    source,
                })?);
            }
            out.push((label.to_string(), ps));
        }
        FamilySpec::new(name, n, param, out)
    }

    pub fn new(name: &str, n: usize, param: &str, branches: Vec<(String, Vec<Poly>)>) -> Result<Self, GermError> {
        if branches.is_empty() {
            return Err(GermError::NoBranches);
        }
        let src = source_variables(n);
        let mut names = src.names().to_vec();
        names.push(param.into());
        let ring = VarList::new(names);
        let mut out = Vec::new();
        for (label, comps) in branches {
            let comps: Vec<Poly> = comps.iter().map(|c| c.with_vars(&ring)).collect::<Result<_, _>>()?;
            // vanishing at the base point is checked below, for every parameter value
            check_normal_form(&label, n, &ring, &comps, |_| true)?;
            out.push((label, comps));
        }
        let fam = FamilySpec { name: name.into(), source_dim: n, param: param.into(), ring, branches: out };
        // every member must vanish at the base point
        for (label, comps) in &fam.branches {
            for (i, c) in comps.iter().enumerate() {
                let at_origin = c.substitute(
                    &src.names()
                        .iter()
                        .map(|v| (v.as_str(), Replacement::Constant(Rational::from_integer(0.into()))))
                        .collect::<Vec<_>>(),
                )?;
                if !at_origin.is_zero() {
                    return Err(GermError::NotVanishing { branch: label.clone(), index: i });
                }
            }
        }
        Ok(fam)
    }

    /// The member `f_t` for a given parameter value.
    pub fn specialize(&self, t: &Rational) -> Result<GermSpec, GermError> {
        let src = source_variables(self.source_dim);
        let mut branches = Vec::new();
        for (label, comps) in &self.branches {
            let mut out = Vec::new();
            for c in comps {
                let s = c.substitute(&[(self.param.as_str(), Replacement::Constant(t.clone()))])?;
                out.push(s.with_vars(&src)?);
            }
            branches.push((label.clone(), out));
        }
        GermSpec::new(&format!("{}[{}={}]", self.name, self.param, t), self.source_dim, branches)
    }
}

/// Serialized form of a germ or family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermFile {
    pub name: String,
    pub source_dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    pub branches: Vec<BranchFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchFile {
    pub base_point_label: String,
    pub components: Vec<String>,
}

/// A parsed germ file: either a single germ or a one-parameter family.
#[derive(Clone, Debug, PartialEq)]
pub enum Loaded {
    Germ(GermSpec),
    Family(FamilySpec),
}

impl GermFile {
    pub fn load(&self) -> Result<Loaded, GermError> {
        let branches: Vec<(&str, Vec<&str>)> = self
            .branches
            .iter()
            .map(|b| (b.base_point_label.as_str(), b.components.iter().map(String::as_str).collect()))
            .collect();
        let refs: Vec<(&str, &[&str])> = branches.iter().map(|(l, c)| (*l, c.as_slice())).collect();
        match self.params.len() {
            0 => Ok(Loaded::Germ(GermSpec::parse(&self.name, self.source_dim, &refs)?)),
            1 => Ok(Loaded::Family(FamilySpec::parse(&self.name, self.source_dim, &self.params[0], &refs)?)),
            k => Err(GermError::ParameterCount(k)),
        }
    }

    pub fn from_germ(f: &GermSpec) -> Self {
        GermFile {
            name: f.name.clone(),
            source_dim: f.source_dim,
            params: Vec::new(),
            branches: f
                .branches
                .iter()
                .map(|b| BranchFile {
                    base_point_label: b.label.clone(),
                    components: b.components.iter().map(Poly::to_string).collect(),
                })
                .collect(),
        }
    }
}
