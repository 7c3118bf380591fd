//! Turns a validated job into an ordered list of checks and runs them.

use std::time::Instant;

use cdyb_core::cartan::LetterMap;
use cdyb_core::fold::{self, Folded};
use cdyb_core::ops::{self, Representation};
use cdyb_core::perturb::Perturber;
use cdyb_core::rmat::{self, Admissibility, TorusPart};
use cdyb_core::uea::{normal_order, Acc, Key, Tensor};
use cdyb_core::verify::{self, Identity, Kind, Residual};
use cdyb_core::{radial, Env, Error};
use rayon::prelude::*;

use crate::config::{ConfigError, Job, KappaChoice, RChoice, RtChoice};
use crate::report::{CheckRecord, FoldOutput, Meta, Report, Status, TripleRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Fold,
    Classify,
    Bd,
    Gaudin,
    Operators,
    Radial,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Fold => "fold",
            Command::Classify => "classify",
            Command::Bd => "bd",
            Command::Gaudin => "gaudin",
            Command::Operators => "operators",
            Command::Radial => "radial",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub timings: bool,
    pub jobs: Option<usize>,
}

/// Failures before any check runs; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error at {0}")]
    Config(#[from] ConfigError),
    #[error("[{module}] {source}")]
    Setup {
        module: &'static str,
        #[source]
        source: Error,
    },
    #[error("thread pool: {0}")]
    Pool(String),
}

fn setup<T>(module: &'static str, r: Result<T, Error>) -> Result<T, RunError> {
    r.map_err(|source| RunError::Setup { module, source })
}

struct Verdict {
    ok: bool,
    witness: Option<String>,
    terms: usize,
}

impl Verdict {
    fn from_residuals(env: &Env, res: &[Residual]) -> Verdict {
        let witness = res.iter().find(|r| !r.is_zero()).and_then(|r| r.render_witness(env).map(|w| format!("{}: {w}", r.tag)));
        Verdict { ok: witness.is_none(), witness, terms: res.iter().map(Residual::term_count).sum() }
    }

    fn flag(ok: bool, witness: Option<String>) -> Verdict {
        Verdict { ok, witness, terms: 0 }
    }
}

type Runner<'a> = Box<dyn Fn() -> Result<Verdict, Error> + Send + Sync + 'a>;

struct Check<'a> {
    name: String,
    module: &'static str,
    run: Runner<'a>,
}

impl<'a> Check<'a> {
    fn new(name: impl Into<String>, module: &'static str, run: impl Fn() -> Result<Verdict, Error> + Send + Sync + 'a) -> Self {
        Check { name: name.into(), module, run: Box::new(run) }
    }

    fn execute(&self, timings: bool) -> CheckRecord {
        let start = Instant::now();
        let outcome = (self.run)();
        let wall_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
        match outcome {
            Ok(v) => CheckRecord {
                name: self.name.clone(),
                status: if v.ok { Status::Pass } else { Status::Fail },
                witness: v.witness,
                terms: v.terms,
                wall_ms,
            },
            Err(e) => CheckRecord {
                name: self.name.clone(),
                status: Status::Error,
                witness: Some(format!("[{}] {e}", self.module)),
                terms: 0,
                wall_ms,
            },
        }
    }
}

/// Builds the configured r-matrix.
pub fn build_r(job: &Job, env: &Env) -> Result<Option<Tensor>, RunError> {
    let Some(choice) = &job.r else { return Ok(None) };
    let r = match choice {
        RChoice::Felder => setup("rmat", rmat::felder_r(env))?,
        RChoice::Gaudin => setup("rmat", rmat::gaudin_r(env))?,
        RChoice::Gamma { gamma, rt } => setup("rmat", rmat::gamma_r(env, gamma, rt))?,
        RChoice::Schiffmann { triple, rt } => {
            let adm = Admissibility::check(&job.lie, triple, &job.subspace);
            if !adm.is_admissible() {
                return Err(RunError::Setup { module: "rmat", source: Error::Constraint(adm.report()) });
            }
            let rt = schiffmann_rt(job, triple, rt)?;
            setup("rmat", rmat::schiffmann_r(env, triple, &rt))?
        }
        RChoice::Custom { include, terms } => {
            let cas = setup("cartan", rmat::casimirs(env))?;
            let mut acc = Acc::new(2, env.nvars());
            for name in include {
                acc.push_tensor(match name.as_str() {
                    "varpi" => &cas.varpi,
                    "varpi_h" => &cas.varpi_h,
                    "omega_plus" => &cas.omega_plus,
                    _ => &cas.omega_minus,
                });
            }
            for t in terms {
                for (a, p) in normal_order(&job.lie, &t.legs[0]) {
                    for (b, q) in normal_order(&job.lie, &t.legs[1]) {
                        acc.push(Key::from_words(&[a.clone(), b]), env.constant(&t.coeff * &p * q));
                    }
                }
            }
            acc.finish()
        }
    };
    Ok(Some(r))
}

fn schiffmann_rt(job: &Job, triple: &rmat::BdTriple, rt: &RtChoice) -> Result<TorusPart, RunError> {
    if let RtChoice::Explicit(m) = rt {
        return Ok(m.clone());
    }
    let space = setup("rmat", rmat::solve_s(&job.lie, triple, &job.subspace))?;
    let missing = |what: &str| RunError::Setup { module: "rmat", source: Error::Constraint(format!("the solution space has no {what} element")) };
    match rt {
        RtChoice::Symmetric => space.symmetric.ok_or_else(|| missing("symmetric")),
        RtChoice::Antisymmetric => space.antisymmetric.ok_or_else(|| missing("antisymmetric")),
        _ => Ok(space.particular),
    }
}

fn theta_or_sigma(job: &Job) -> LetterMap {
    job.theta.clone().unwrap_or_else(|| LetterMap::sigma(&job.lie))
}

fn require_r(r: &Option<Tensor>, command: Command) -> Result<&Tensor, RunError> {
    r.as_ref().ok_or_else(|| RunError::Config(ConfigError { path: "r".into(), message: format!("required by `{}`", command.name()) }))
}

/// Folds `r` along the configured involution and applies the configured recipe.
fn folded(job: &Job, env: &Env, r: &Tensor) -> Result<Folded, RunError> {
    let f = setup("fold", fold::fold(env, r, &theta_or_sigma(job)))?;
    match job.recipe {
        Some(recipe) => setup("fold", fold::extend_kappa(env, &f, recipe)),
        None => Ok(f),
    }
}

fn unknown_check(i: usize, name: &str, command: Command) -> RunError {
    RunError::Config(ConfigError { path: format!("checks[{i}]"), message: format!("unknown check {name:?} for `{}`", command.name()) })
}

fn meta(job: &Job, command: Command) -> Meta {
    Meta {
        algebra: job.algebra.clone(),
        subspace: job.subspace_label.clone(),
        r_spec: job.r.as_ref().map_or_else(|| "none".into(), RChoice::label),
        involution: job.theta_label.clone(),
        seed: job.seed,
        command: command.name().into(),
    }
}

/// Runs one command; the report is deterministic unless timings are requested.
pub fn run(job: &Job, command: Command, opts: Options) -> Result<Report, RunError> {
    let base = job.env();
    let r = build_r(job, &base)?;
    let mut triples = None;
    let mut fold_out = None;
    let checks: Vec<Check> = match command {
        Command::Verify => verify_checks(job, &base, &r)?,
        Command::Fold => {
            let r = require_r(&r, command)?;
            if setup("fold", fold::is_twisted_symmetric(&base, r, &theta_or_sigma(job)))? {
                let f = folded(job, &base, r)?;
                let env = f.env(&base);
                fold_out = Some(FoldOutput { r_plus: env.render(&f.r_plus), r_minus: env.render(&f.r_minus), kappa: env.render(&f.kappa), half: f.half });
            }
            fold_checks(job, &base, r)?
        }
        Command::Classify => classify_checks(job)?,
        Command::Bd => {
            let (rows, checks) = bd_rows(job)?;
            triples = Some(rows);
            checks
        }
        Command::Gaudin => gaudin_checks(job)?,
        Command::Operators => operator_checks(job, &base, require_r(&r, command)?)?,
        Command::Radial => radial_checks(job)?,
    };
    let records = run_checks(&checks, opts)?;
    let report = Report::new(meta(job, command), records, triples);
    Ok(match fold_out {
        Some(f) => report.with_fold(f),
        None => report,
    })
}

fn run_checks(checks: &[Check], opts: Options) -> Result<Vec<CheckRecord>, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| RunError::Pool(e.to_string()))?;
    Ok(pool.install(|| checks.par_iter().map(|c| c.execute(opts.timings)).collect()))
}

fn verify_checks<'a>(job: &'a Job, base: &Env, r: &'a Option<Tensor>) -> Result<Vec<Check<'a>>, RunError> {
    let theta = job.theta.as_ref();
    let folded = match (r, theta) {
        (Some(r), Some(_)) => Some(folded(job, base, r)?),
        _ => None,
    };
    let names: Vec<String> = if job.checks.is_empty() {
        let mut v: Vec<String> = Vec::new();
        if r.is_some() {
            v.extend(["YB", "A_INV"].map(String::from));
        }
        if folded.is_some() {
            v.extend(["CYB1", "CYB2", "CYB3", "CYB4", "CR", "A_COMPAT"].map(String::from));
        }
        v
    } else {
        job.checks.clone()
    };
    let kappa = match job.kappa {
        KappaChoice::Y => Some(setup("rmat", rmat::y_kmatrix(base))?),
        KappaChoice::Zero => Some(base.zero(1)),
        KappaChoice::Core => folded.as_ref().map(|f| f.kappa.clone()),
    };
    let half = folded.as_ref().is_some_and(|f| f.half);
    let mut out = Vec::new();
    for (i, name) in names.iter().enumerate() {
        if let Ok(kind) = Kind::parse(name) {
            let needs_pair = matches!(kind, Kind::Cyb1 | Kind::Cyb2 | Kind::Cyb3 | Kind::Cyb4 | Kind::Cr | Kind::ResCr | Kind::ACompat);
            if needs_pair && folded.is_none() {
                return Err(RunError::Config(ConfigError { path: format!("checks[{i}]"), message: format!("{name} needs [r] and [involution]") }));
            }
            if !needs_pair && r.is_none() {
                return Err(RunError::Config(ConfigError { path: format!("checks[{i}]"), message: format!("{name} needs [r]") }));
            }
            let (r, f, k) = (r.clone(), folded.clone(), kappa.clone());
            out.push(Check::new(kind.tag(), "verify", move || {
                let env = if needs_pair && half { job.env().refined(2) } else { job.env() };
                let inputs = verify::Inputs {
                    r: r.as_ref(),
                    r_plus: f.as_ref().map(|f| &f.r_plus),
                    r_minus: f.as_ref().map(|f| &f.r_minus),
                    kappa: if needs_pair { f.as_ref().map(|f| &f.kappa) } else { k.as_ref() },
                };
                let res = verify::residual(&env, kind, &inputs)?;
                Ok(Verdict::from_residuals(&env, &[res]))
            }));
        } else if let Ok(id) = Identity::parse(name) {
            let r = r.as_ref().ok_or_else(|| RunError::Config(ConfigError { path: format!("checks[{i}]"), message: format!("{name} needs [r]") }))?;
            let theta = theta_or_sigma(job);
            for k in 0..job.perturbations.max(1) {
                let seed = job.seed + k as u64;
                let theta = theta.clone();
                out.push(Check::new(format!("{}[seed={seed}]", id.name()), "verify", move || {
                    let env = job.env();
                    let res = Perturber::new(seed).identity(&env, id, r, &theta)?;
                    Ok(Verdict::from_residuals(&env, &res))
                }));
            }
        } else {
            return Err(unknown_check(i, name, Command::Verify));
        }
    }
    Ok(out)
}

const FOLD_CHECKS: [&str; 8] = ["twisted_symmetry", "eigenspace", "CYB1", "CYB2", "CYB3", "CYB4", "CR", "A_COMPAT"];

fn fold_checks<'a>(job: &'a Job, base: &Env, r: &'a Tensor) -> Result<Vec<Check<'a>>, RunError> {
    let theta = theta_or_sigma(job);
    let names: Vec<String> = if job.checks.is_empty() { FOLD_CHECKS.map(String::from).to_vec() } else { job.checks.clone() };
    let symmetric = setup("fold", fold::is_twisted_symmetric(base, r, &theta))?;
    let folded = if symmetric { Some(folded(job, base, r)?) } else { None };
    let mut out = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let f = folded.clone();
        let skipped = || Error::Classification("r is not twisted symmetric; the fold is undefined".into());
        match name.as_str() {
            "twisted_symmetry" => {
                let theta = theta.clone();
                out.push(Check::new(name.clone(), "fold", move || {
                    let env = job.env();
                    let d = fold::twisted_symmetry_defect(&env, r, &theta)?;
                    Ok(Verdict::from_residuals(&env, &[Residual::new("twisted_symmetry", d)]))
                }));
            }
            "eigenspace" => out.push(Check::new(name.clone(), "fold", move || {
                let f = f.as_ref().ok_or_else(skipped)?;
                let env = f.env(&job.env());
                let (p, m) = fold::eigenspace_defects(&env, f)?;
                Ok(Verdict::from_residuals(&env, &[Residual::new("r_plus", p), Residual::new("r_minus", m)]))
            })),
            "H_COMPAT" => out.push(Check::new(name.clone(), "fold", move || {
                let f = f.as_ref().ok_or_else(skipped)?;
                let env = f.env(&job.env());
                Ok(Verdict::from_residuals(&env, &[fold::h_compat(&job.env(), f)?]))
            })),
            "twist_identities" => out.push(Check::new(name.clone(), "fold", move || {
                let f = f.as_ref().ok_or_else(skipped)?;
                let env = job.env();
                Ok(Verdict::from_residuals(&env.refined(2), &fold::twist_identities(&env, f)?))
            })),
            "boundary_identities" => out.push(Check::new(name.clone(), "fold", move || {
                let env = job.env();
                Ok(Verdict::from_residuals(&env, &fold::boundary_identities(&env)?.residuals))
            })),
            other => {
                let kind = Kind::parse(other).map_err(|_| unknown_check(i, other, Command::Fold))?;
                if matches!(kind, Kind::Yb | Kind::AInv | Kind::R) {
                    return Err(unknown_check(i, other, Command::Fold));
                }
                out.push(Check::new(kind.tag(), "fold", move || {
                    let f = f.as_ref().ok_or_else(skipped)?;
                    let env = f.env(&job.env());
                    let inputs = verify::Inputs { r: None, r_plus: Some(&f.r_plus), r_minus: Some(&f.r_minus), kappa: Some(&f.kappa) };
                    Ok(Verdict::from_residuals(&env, &[verify::residual(&env, kind, &inputs)?]))
                }));
            }
        }
    }
    Ok(out)
}

/// Torus parts exercised by `classify`: the particular solution and the
/// symmetric / antisymmetric elements of the solution space when they exist.
fn classify_parts(job: &Job, triple: &rmat::BdTriple) -> Result<Vec<(String, TorusPart)>, Error> {
    let space = rmat::solve_s(&job.lie, triple, &job.subspace)?;
    let mut parts = vec![("particular".to_string(), space.particular.clone())];
    if let Some(s) = space.symmetric.clone() {
        parts.push(("symmetric".into(), s));
    }
    if let Some(a) = space.antisymmetric.clone() {
        parts.push(("antisymmetric".into(), a));
    }
    Ok(parts)
}

fn classify_checks(job: &Job) -> Result<Vec<Check<'_>>, RunError> {
    let theta = theta_or_sigma(job);
    let triples: Vec<rmat::BdTriple> = match &job.r {
        Some(RChoice::Schiffmann { triple, .. }) => vec![triple.clone()],
        _ => setup("rmat", rmat::enumerate_bd(&job.lie, &job.subspace))?
            .into_iter()
            .filter(|s| s.admissibility.is_admissible())
            .map(|s| s.triple)
            .collect(),
    };
    let mut out = Vec::new();
    for triple in triples {
        let adm = Admissibility::check(&job.lie, &triple, &job.subspace);
        if !adm.is_admissible() {
            return Err(RunError::Setup { module: "rmat", source: Error::Constraint(adm.report()) });
        }
        for (label, rt) in setup("rmat", classify_parts(job, &triple))? {
            let (theta, triple) = (theta.clone(), triple.clone());
            out.push(Check::new(format!("classify[{};{label}]", triple.render()), "fold", move || {
                let env = job.env();
                let r = rmat::schiffmann_r(&env, &triple, &rt)?;
                let verdict = fold::classify(&env, &triple, &rt, &theta);
                let symmetric = fold::is_twisted_symmetric(&env, &r, &theta)?;
                Ok(Verdict::flag(verdict == symmetric, Some(format!("classify={verdict} twisted_symmetric={symmetric}"))))
            }));
        }
    }
    Ok(out)
}

fn bd_rows(job: &Job) -> Result<(Vec<TripleRow>, Vec<Check<'_>>), RunError> {
    let theta = theta_or_sigma(job);
    let env = job.env();
    let rows = setup("rmat", rmat::enumerate_bd(&job.lie, &job.subspace))?
        .into_iter()
        .map(|s| {
            let admissible = s.admissibility.is_admissible();
            let twisted = match &s.space {
                Some(space) => Some(fold::is_twisted_symmetric(&env, &rmat::schiffmann_r(&env, &s.triple, &space.particular)?, &theta)?),
                None => None,
            };
            Ok(TripleRow {
                triple: s.triple.render(),
                admissible,
                violation: (!admissible).then(|| s.admissibility.report()),
                s_dim: s.space.as_ref().map(|sp| sp.dim()),
                has_symmetric: s.space.as_ref().map(|sp| sp.has_symmetric()),
                has_antisymmetric: s.space.as_ref().map(|sp| sp.has_antisymmetric()),
                twisted_symmetric: twisted,
            })
        })
        .collect::<Result<Vec<_>, Error>>();
    let rows = setup("rmat", rows)?;
    let count = rows.iter().filter(|r| r.admissible).count();
    let check = Check::new("enumerate_bd", "rmat", move || Ok(Verdict { ok: true, witness: Some(format!("{count} admissible")), terms: count }));
    Ok((rows, vec![check]))
}

/// The smallest faithful representation in the default battery.
fn small_rep(job: &Job) -> Result<Representation, Error> {
    let battery = ops::battery(&job.lie)?;
    Ok(battery.into_iter().min_by_key(|r| r.dim()).expect("battery is nonempty"))
}

fn gaudin_checks(job: &Job) -> Result<Vec<Check<'_>>, RunError> {
    if job.subspace.dim() != 0 {
        return Err(RunError::Config(ConfigError { path: "subspace".into(), message: "`gaudin` needs subspace = \"zero\"".into() }));
    }
    let rank = job.lie.rank();
    let cs = if job.gaudin_c.is_empty() { vec![vec![cdyb_core::rational::one(); rank]] } else { job.gaudin_c.clone() };
    let mut out = Vec::new();
    for (q, c) in cs.into_iter().enumerate() {
        for n in 2..=job.points {
            let c = c.clone();
            out.push(Check::new(format!("gaudin_commute[c#{q};N={n}]"), "ops", move || {
                let env = job.env();
                let pairs = ops::gaudin_pairs(&env, n, &c)?;
                let res: Vec<Residual> = pairs.into_iter().map(|(i, j, x)| Residual::new(format!("[A_{i},A_{j}]"), x)).collect();
                Ok(Verdict::from_residuals(&env, &res))
            }));
        }
    }
    let seed = job.seed;
    let (n, samples) = (job.points, job.samples);
    out.push(Check::new(format!("gaudin_matrix[N={n};samples={samples}]"), "ops", move || {
        let env = job.env();
        let rep = small_rep(job)?;
        let reps = vec![&rep; n];
        let mut pert = Perturber::new(seed);
        for k in 0..samples {
            let c = pert.point(rank);
            let built = (1..=n).map(|i| ops::build_gaudin(&env, n, i, &c)).collect::<Result<Vec<_>, _>>()?;
            if let Some((i, j, _)) = ops::matrix_witness(&env, &built, &reps, &[vec![]])? {
                return Ok(Verdict::flag(false, Some(format!("sample {k} ({}): [A_{i},A_{j}] != 0", rep.name))));
            }
        }
        Ok(Verdict::flag(true, None))
    }));
    let casimir = Check::new("casimir_scalars", "ops", move || {
        let env = job.env();
        let mut parts = Vec::new();
        for rep in ops::battery(&job.lie)? {
            match ops::casimir_scalar(&env, &rep)? {
                Some(c) => parts.push(format!("{}={c}", rep.name)),
                None => return Ok(Verdict::flag(false, Some(format!("{}: not scalar", rep.name)))),
            }
        }
        Ok(Verdict::flag(true, Some(parts.join(" "))))
    });
    out.push(casimir);
    Ok(out)
}

fn operator_checks<'a>(job: &'a Job, base: &Env, r: &'a Tensor) -> Result<Vec<Check<'a>>, RunError> {
    let f = folded(job, base, r)?;
    let type_a = matches!(job.r, Some(RChoice::Felder)) && job.kappa == KappaChoice::Y;
    let mut out = Vec::new();
    for n in 2..=job.points {
        for i in 1..=n {
            for j in i + 1..=n {
                let fc = f.clone();
                out.push(Check::new(format!("commutator[N={n};{i},{j}]"), "ops", move || {
                    let env = fc.env(&job.env());
                    let di = ops::build_d_folded(&env, n, i, &fc)?;
                    let dj = ops::build_d_folded(&env, n, j, &fc)?;
                    Ok(Verdict::from_residuals(&env, &ops::commutator_defect(&env, &di, &dj)?.residuals()))
                }));
                let fd = f.clone();
                out.push(Check::new(format!("decomposition[N={n};{i},{j}]"), "ops", move || {
                    let env = fd.env(&job.env());
                    let defect = ops::commutator_defect(&env, &ops::build_d_folded(&env, n, i, &fd)?, &ops::build_d_folded(&env, n, j, &fd)?)?;
                    let rhs = ops::commutator_decomposition(&env, n, i, j, &fd.r_plus, &fd.r_minus, &fd.kappa)?;
                    Ok(Verdict::from_residuals(&env, &defect.sub(&rhs)?.residuals()))
                }));
                if type_a {
                    out.push(Check::new(format!("type_a[N={n};{i},{j}]"), "ops", move || {
                        let env = job.env();
                        let y = rmat::y_kmatrix(&env)?;
                        Ok(Verdict::from_residuals(&env, &ops::type_a_defect(&env, n, i, j, r, &y)?.residuals()))
                    }));
                }
            }
        }
        if f.recipe.is_none() {
            let fr = f.clone();
            out.push(Check::new(format!("rearrangement[N={n}]"), "ops", move || {
                let env = fr.env(&job.env());
                Ok(Verdict::from_residuals(&env, &ops::check_a_rearrangement(&env, n, &fr)?))
            }));
        }
    }
    let n = job.points;
    let (seed, samples) = (job.seed, job.samples);
    out.push(Check::new(format!("matrix[N={n};samples={samples}]"), "ops", move || {
        let env = f.env(&job.env());
        let rep = small_rep(job)?;
        let built = (1..=n).map(|i| ops::build_d_folded(&env, n, i, &f)).collect::<Result<Vec<_>, _>>()?;
        let reps = vec![&rep; built[0].legs()];
        let points = if job.lambda.is_empty() {
            ops::sample_points(env.nvars(), samples, seed, |p| built.iter().try_for_each(|op| ops::evaluate(&env, op, &reps, p).map(|_| ())))?
        } else {
            job.lambda.iter().map(|p| p.to_vec()).collect()
        };
        match ops::matrix_witness(&env, &built, &reps, &points)? {
            Some((i, j, p)) => Ok(Verdict::flag(false, Some(format!("point {p} ({}): [D_{i},D_{j}] != 0", rep.name)))),
            None => Ok(Verdict::flag(true, Some(format!("{} points, witness only", points.len())))),
        }
    }));
    Ok(out)
}

fn radial_checks(job: &Job) -> Result<Vec<Check<'_>>, RunError> {
    if !job.subspace.is_full() {
        return Err(RunError::Config(ConfigError { path: "subspace".into(), message: "`radial` needs subspace = \"full\"".into() }));
    }
    let names: Vec<String> = if job.checks.is_empty() { radial::CHECKS.map(String::from).to_vec() } else { job.checks.clone() };
    let mut out = Vec::new();
    for (i, name) in names.into_iter().enumerate() {
        if !radial::CHECKS.contains(&name.as_str()) {
            return Err(unknown_check(i, &name, Command::Radial));
        }
        out.push(Check::new(name.clone(), "radial", move || {
            let env = job.env();
            Ok(Verdict::from_residuals(&env, &[radial::run_check(&env, &name)?]))
        }));
    }
    Ok(out)
}
