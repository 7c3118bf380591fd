//! Declarative job files: parsed, validated and rejected before any computation.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use cdyb_core::cartan::{LetterMap, LieAlgebra, Subspace, TypeLetter};
use cdyb_core::fold::Recipe;
use cdyb_core::rational;
use cdyb_core::rmat::{BdTriple, TorusPart};
use cdyb_core::{Env, Rat};
use serde::Deserialize;

/// A configuration problem at a field path such as `r.triple[0]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigError { path: path.into(), message: message.to_string() }
    }
}

/// A rational written as an integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rat(&self, path: &str) -> Result<Rat, ConfigError> {
        match self {
            Number::Int(n) => Ok(rational::int(*n)),
            Number::Text(s) => rational::parse(s).map_err(|e| ConfigError::at(path, e)),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSpec {
    Named(String),
    Basis(Vec<Vec<Number>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TorusSpec {
    Named(String),
    Matrix(Vec<Vec<Number>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default)]
    pub coeff: Option<Number>,
    /// One PBW product per leg, letters separated by spaces; `""` is the unit.
    pub legs: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawR {
    pub kind: String,
    pub triple: Option<Vec<[usize; 2]>>,
    pub gamma: Option<Vec<usize>>,
    pub rt: Option<TorusSpec>,
    #[serde(default)]
    pub include: Vec<String>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInvolution {
    pub kind: String,
    pub c: Option<Vec<Number>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFold {
    pub recipe: Option<String>,
    pub kappa: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOperators {
    pub points: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGaudin {
    pub c: Option<Vec<Vec<Number>>>,
    pub samples: Option<usize>,
}

/// The file as written.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub algebra: String,
    pub subspace: Option<SubspaceSpec>,
    pub seed: Option<u64>,
    pub max_degree: Option<usize>,
    pub r: Option<RawR>,
    pub involution: Option<RawInvolution>,
    pub fold: Option<RawFold>,
    #[serde(default)]
    pub checks: Vec<String>,
    pub lambda: Option<Vec<Vec<Number>>>,
    pub perturbations: Option<usize>,
    pub operators: Option<RawOperators>,
    pub gaudin: Option<RawGaudin>,
    pub output: Option<PathBuf>,
}

/// Torus part selector for Schiffmann r-matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum RtChoice {
    Particular,
    Symmetric,
    Antisymmetric,
    Explicit(TorusPart),
}

impl RtChoice {
    pub fn label(&self) -> String {
        match self {
            RtChoice::Particular => "particular".into(),
            RtChoice::Symmetric => "symmetric".into(),
            RtChoice::Antisymmetric => "antisymmetric".into(),
            RtChoice::Explicit(m) => bracket(m.0.iter().map(|r| bracket(r.iter().map(rational::render)))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rat,
    pub legs: [Vec<u8>; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum RChoice {
    Felder,
    Schiffmann { triple: BdTriple, rt: RtChoice },
    Gamma { gamma: Vec<usize>, rt: TorusPart },
    Gaudin,
    Custom { include: Vec<String>, terms: Vec<Term> },
}

impl RChoice {
    pub fn label(&self) -> String {
        match self {
            RChoice::Felder => "felder".into(),
            RChoice::Schiffmann { triple, rt } => format!("schiffmann triple={} rt={}", triple.render(), rt.label()),
            RChoice::Gamma { gamma, rt } => format!(
                "gamma gamma={:?} rt={}",
                gamma.iter().map(|i| i + 1).collect::<Vec<_>>(),
                RtChoice::Explicit(rt.clone()).label()
            ),
            RChoice::Gaudin => "gaudin".into(),
            RChoice::Custom { include, terms } => format!("custom include={} terms={}", bracket(include.iter().cloned()), terms.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaChoice {
    Core,
    Y,
    Zero,
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub algebra: String,
    pub lie: Arc<LieAlgebra>,
    pub subspace: Subspace,
    pub subspace_label: String,
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub r: Option<RChoice>,
    pub theta: Option<LetterMap>,
    pub theta_label: String,
    pub recipe: Option<Recipe>,
    pub kappa: KappaChoice,
    pub checks: Vec<String>,
    pub lambda: Vec<Vec<Rat>>,
    pub perturbations: usize,
    pub points: usize,
    pub samples: usize,
    pub gaudin_c: Vec<Vec<Rat>>,
    pub output: Option<PathBuf>,
}

impl Job {
    /// A fresh environment (environments carry a product cache and are per thread).
    pub fn env(&self) -> Env {
        let env = Env::new(self.lie.clone(), self.subspace.clone(), 1);
        match self.max_degree {
            Some(d) => env.with_max_degree(d),
            None => env,
        }
    }
}

/// Reads and validates a TOML job file.
pub fn load(text: &str) -> Result<Job, ConfigError> {
    let de = toml::Deserializer::new(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "<root>".to_string() } else { path };
        ConfigError::at(path, e.into_inner().message().trim())
    })?;
    validate(raw)
}

pub fn parse_algebra(s: &str) -> Result<LieAlgebra, ConfigError> {
    let s = s.trim();
    let bad = || ConfigError::at("algebra", format!("expected a type letter and rank such as \"A2\", got {s:?}"));
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    let letter = TypeLetter::parse(&letter.to_string()).map_err(|e| ConfigError::at("algebra", e))?;
    LieAlgebra::new(letter, rank).map_err(|e| ConfigError::at("algebra", e))
}

fn rat_vec(v: &[Number], path: &str) -> Result<Vec<Rat>, ConfigError> {
    v.iter().enumerate().map(|(i, x)| x.to_rat(&format!("{path}[{i}]"))).collect()
}

fn rat_matrix(m: &[Vec<Number>], path: &str) -> Result<Vec<Vec<Rat>>, ConfigError> {
    m.iter().enumerate().map(|(i, row)| rat_vec(row, &format!("{path}[{i}]"))).collect()
}

fn subspace(lie: &LieAlgebra, spec: Option<&SubspaceSpec>) -> Result<(Subspace, String), ConfigError> {
    match spec {
        None => Ok((Subspace::full(lie), "full".into())),
        Some(SubspaceSpec::Named(s)) => match s.as_str() {
            "full" => Ok((Subspace::full(lie), "full".into())),
            "zero" => Ok((Subspace::zero(lie), "zero".into())),
            other => Err(ConfigError::at("subspace", format!("expected \"full\", \"zero\" or a list of coroot vectors, got {other:?}"))),
        },
        Some(SubspaceSpec::Basis(rows)) => {
            let basis = rat_matrix(rows, "subspace")?;
            let label = bracket(basis.iter().map(|r| bracket(r.iter().map(rational::render))));
            let sub = Subspace::from_coroot_coords(lie, basis).map_err(|e| ConfigError::at("subspace", e))?;
            Ok((sub, label))
        }
    }
}

fn torus(spec: &TorusSpec, dim: usize, path: &str) -> Result<TorusPart, ConfigError> {
    match spec {
        TorusSpec::Named(s) if s == "zero" => Ok(TorusPart::zero(dim)),
        TorusSpec::Named(s) => Err(ConfigError::at(path, format!("expected \"zero\" or a {dim}x{dim} matrix, got {s:?}"))),
        TorusSpec::Matrix(m) => {
            let m = rat_matrix(m, path)?;
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(ConfigError::at(path, format!("expected a {dim}x{dim} matrix over the orthocomplement basis")));
            }
            Ok(TorusPart(m))
        }
    }
}

fn simple_index(lie: &LieAlgebra, i: usize, path: &str) -> Result<usize, ConfigError> {
    if i == 0 || i > lie.rank() {
        return Err(ConfigError::at(path, format!("simple roots are numbered 1..={}, got {i}", lie.rank())));
    }
    Ok(i - 1)
}

fn parse_word(lie: &LieAlgebra, s: &str, path: &str) -> Result<Vec<u8>, ConfigError> {
    s.split_whitespace()
        .map(|name| {
            lie.letter_by_name(name)
                .map(|l| l as u8)
                .ok_or_else(|| ConfigError::at(path, format!("unknown basis letter {name:?}")))
        })
        .collect()
}

const INCLUDES: [&str; 4] = ["varpi", "varpi_h", "omega_plus", "omega_minus"];

fn r_choice(lie: &LieAlgebra, sub: &Subspace, raw: &RawR) -> Result<RChoice, ConfigError> {
    let unused = |field: &str, present: bool| {
        if present {
            Err(ConfigError::at(format!("r.{field}"), format!("not used by kind = {:?}", raw.kind)))
        } else {
            Ok(())
        }
    };
    let dim_t = sub.perp().len();
    match raw.kind.as_str() {
        "felder" | "gaudin" => {
            unused("triple", raw.triple.is_some())?;
            unused("gamma", raw.gamma.is_some())?;
            unused("rt", raw.rt.is_some())?;
            unused("terms", !raw.terms.is_empty())?;
            unused("include", !raw.include.is_empty())?;
            if raw.kind == "felder" {
                if !sub.is_full() {
                    return Err(ConfigError::at("subspace", "kind = \"felder\" needs subspace = \"full\""));
                }
                Ok(RChoice::Felder)
            } else {
                if sub.dim() != 0 {
                    return Err(ConfigError::at("subspace", "kind = \"gaudin\" needs subspace = \"zero\""));
                }
                Ok(RChoice::Gaudin)
            }
        }
        "schiffmann" => {
            unused("gamma", raw.gamma.is_some())?;
            unused("terms", !raw.terms.is_empty())?;
            unused("include", !raw.include.is_empty())?;
            let pairs = raw.triple.as_ref().ok_or_else(|| ConfigError::at("r.triple", "required for kind = \"schiffmann\""))?;
            let pairs = pairs
                .iter()
                .enumerate()
                .map(|(k, [a, b])| {
                    let p = format!("r.triple[{k}]");
                    Ok((simple_index(lie, *a, &p)?, simple_index(lie, *b, &p)?))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?;
            let triple = BdTriple::new(lie, &pairs).map_err(|e| ConfigError::at("r.triple", e))?;
            let rt = match &raw.rt {
                None => RtChoice::Particular,
                Some(TorusSpec::Named(s)) => match s.as_str() {
                    "particular" => RtChoice::Particular,
                    "symmetric" => RtChoice::Symmetric,
                    "antisymmetric" => RtChoice::Antisymmetric,
                    other => {
                        return Err(ConfigError::at(
                            "r.rt",
                            format!("expected particular, symmetric, antisymmetric or a matrix, got {other:?}"),
                        ))
                    }
                },
                Some(spec) => RtChoice::Explicit(torus(spec, dim_t, "r.rt")?),
            };
            Ok(RChoice::Schiffmann { triple, rt })
        }
        "gamma" => {
            unused("triple", raw.triple.is_some())?;
            unused("terms", !raw.terms.is_empty())?;
            unused("include", !raw.include.is_empty())?;
            let gamma = raw.gamma.as_ref().ok_or_else(|| ConfigError::at("r.gamma", "required for kind = \"gamma\""))?;
            let gamma = gamma
                .iter()
                .enumerate()
                .map(|(k, &i)| simple_index(lie, i, &format!("r.gamma[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let rt = match &raw.rt {
                None => TorusPart::zero(dim_t),
                Some(spec) => torus(spec, dim_t, "r.rt")?,
            };
            Ok(RChoice::Gamma { gamma, rt })
        }
        "custom" => {
            unused("triple", raw.triple.is_some())?;
            unused("gamma", raw.gamma.is_some())?;
            unused("rt", raw.rt.is_some())?;
            for (k, name) in raw.include.iter().enumerate() {
                if !INCLUDES.contains(&name.as_str()) {
                    return Err(ConfigError::at(format!("r.include[{k}]"), format!("expected one of {INCLUDES:?}, got {name:?}")));
                }
            }
            let terms = raw
                .terms
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let p = format!("r.terms[{k}]");
                    if t.legs.len() != 2 {
                        return Err(ConfigError::at(format!("{p}.legs"), format!("an r-matrix term has 2 legs, got {}", t.legs.len())));
                    }
                    let coeff = match &t.coeff {
                        Some(c) => c.to_rat(&format!("{p}.coeff"))?,
                        None => rational::one(),
                    };
                    let a = parse_word(lie, &t.legs[0], &format!("{p}.legs[0]"))?;
                    let b = parse_word(lie, &t.legs[1], &format!("{p}.legs[1]"))?;
                    Ok(Term { coeff, legs: [a, b] })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if terms.is_empty() && raw.include.is_empty() {
                return Err(ConfigError::at("r.terms", "a custom r-matrix needs terms or includes"));
            }
            Ok(RChoice::Custom { include: raw.include.clone(), terms })
        }
        other => Err(ConfigError::at("r.kind", format!("expected felder, schiffmann, gamma, gaudin or custom, got {other:?}"))),
    }
}

fn involution(lie: &LieAlgebra, raw: &RawInvolution) -> Result<(LetterMap, String), ConfigError> {
    let c = match &raw.c {
        Some(v) => Some(rat_vec(v, "involution.c")?),
        None => None,
    };
    let need_c = || c.clone().ok_or_else(|| ConfigError::at("involution.c", format!("required for kind = {:?}", raw.kind)));
    let label = |c: &[Rat]| format!("{}{}", raw.kind, bracket(c.iter().map(rational::render)));
    match raw.kind.as_str() {
        "sigma" => {
            if c.is_some() {
                return Err(ConfigError::at("involution.c", "not used by kind = \"sigma\""));
            }
            Ok((LetterMap::sigma(lie), "sigma".into()))
        }
        "sigma_ybar" => {
            let c = need_c()?;
            Ok((LetterMap::sigma_ybar(lie, &c).map_err(|e| ConfigError::at("involution.c", e))?, label(&c)))
        }
        "ad_y" => {
            let c = need_c()?;
            let m = LetterMap::ad_y(lie, &c).map_err(|e| ConfigError::at("involution.c", e))?;
            if !m.is_involution() {
                return Err(ConfigError::at("involution.c", "Ad_y is not an involution for these scalars"));
            }
            Ok((m, label(&c)))
        }
        "identity" => Ok((LetterMap::identity(lie), "identity".into())),
        other => Err(ConfigError::at("involution.kind", format!("expected sigma, sigma_ybar, ad_y or identity, got {other:?}"))),
    }
}

fn bracket(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(", "))
}

pub fn validate(raw: RawConfig) -> Result<Job, ConfigError> {
    let lie = parse_algebra(&raw.algebra)?;
    let (sub, subspace_label) = subspace(&lie, raw.subspace.as_ref())?;
    let r = raw.r.as_ref().map(|r| r_choice(&lie, &sub, r)).transpose()?;
    let (theta, theta_label) = match &raw.involution {
        Some(inv) => {
            let (m, l) = involution(&lie, inv)?;
            (Some(m), l)
        }
        None => (None, "none".into()),
    };
    let (recipe, kappa) = match &raw.fold {
        None => (None, KappaChoice::Core),
        Some(f) => {
            let recipe = f.recipe.as_deref().map(Recipe::parse).transpose().map_err(|e| ConfigError::at("fold.recipe", e))?;
            let kappa = match f.kappa.as_deref() {
                None | Some("core") => KappaChoice::Core,
                Some("y") => KappaChoice::Y,
                Some("zero") => KappaChoice::Zero,
                Some(other) => return Err(ConfigError::at("fold.kappa", format!("expected core, y or zero, got {other:?}"))),
            };
            (recipe, kappa)
        }
    };
    if kappa == KappaChoice::Y && !sub.is_full() {
        return Err(ConfigError::at("fold.kappa", "kappa = \"y\" needs subspace = \"full\""));
    }
    if raw.max_degree == Some(0) {
        return Err(ConfigError::at("max_degree", "must be positive"));
    }
    let lambda = match &raw.lambda {
        None => Vec::new(),
        Some(points) => {
            let pts = rat_matrix(points, "lambda")?;
            let nvars = Env::new(Arc::new(lie.clone()), sub.clone(), 1).nvars();
            for (i, p) in pts.iter().enumerate() {
                if p.len() != nvars {
                    return Err(ConfigError::at(format!("lambda[{i}]"), format!("expected {nvars} values")));
                }
            }
            pts
        }
    };
    let (points, samples) = match &raw.operators {
        None => (3, 5),
        Some(o) => (o.points.unwrap_or(3), o.samples.unwrap_or(5)),
    };
    if !(2..=cdyb_core::ops::MAX_POINTS).contains(&points) {
        return Err(ConfigError::at("operators.points", format!("expected 2..={}, got {points}", cdyb_core::ops::MAX_POINTS)));
    }
    let gaudin_c = match raw.gaudin.as_ref().and_then(|g| g.c.as_ref()) {
        None => Vec::new(),
        Some(cs) => {
            let cs = rat_matrix(cs, "gaudin.c")?;
            for (i, c) in cs.iter().enumerate() {
                if c.len() != lie.rank() || c.iter().any(num_traits_is_zero) {
                    return Err(ConfigError::at(format!("gaudin.c[{i}]"), format!("expected {} nonzero scalars", lie.rank())));
                }
            }
            cs
        }
    };
    let samples = raw.gaudin.as_ref().and_then(|g| g.samples).unwrap_or(samples);
    Ok(Job {
        algebra: raw.algebra.trim().to_string(),
        lie: Arc::new(lie),
        subspace: sub,
        subspace_label,
        seed: raw.seed.unwrap_or(0),
        max_degree: raw.max_degree,
        r,
        theta,
        theta_label,
        recipe,
        kappa,
        checks: raw.checks,
        lambda,
        perturbations: raw.perturbations.unwrap_or(0),
        points,
        samples,
        gaudin_c,
        output: raw.output,
    })
}

fn num_traits_is_zero(q: &Rat) -> bool {
    *q == rational::zero()
}
