//! Acceptance suite: one line per criterion, exact-zero tolerance throughout.
//!
//! A criterion whose statement is false for part of its input prints FAIL.
//! The run only aborts when a failure is not accounted for exactly by the
//! known defect `YB(r) = 2 [s_12, r_13]` of a symmetric torus part `s`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use cdyb_core::cartan::{LetterMap, LieAlgebra, Subspace, TypeLetter};
use cdyb_core::fold::{self, Recipe};
use cdyb_core::ops::{self, Representation};
use cdyb_core::perturb::Perturber;
use cdyb_core::rational::{frac, int, one};
use cdyb_core::rmat::{self, Admissibility, BdTriple, TorusPart};
use cdyb_core::uea::Tensor;
use cdyb_core::verify::{self, Identity};
use cdyb_core::{radial, Env, Rat, Result};

type Check = std::result::Result<(), String>;

#[derive(PartialEq)]
enum Verdict {
    Pass,
    /// Failing, with every failure matching the predicted defect.
    Explained,
    Fail,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Pass, detail: detail.into() }
    }
    fn fail(detail: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Fail, detail: detail.into() }
    }
}

fn lie(letter: TypeLetter, n: usize) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::new(letter, n).unwrap())
}

fn full(letter: TypeLetter, n: usize) -> Env {
    Env::full(lie(letter, n))
}

fn on(l: &Arc<LieAlgebra>, sub: &Subspace) -> Env {
    Env::new(l.clone(), sub.clone(), 1)
}

fn zero_check(what: &str, x: &Tensor) -> Check {
    if x.is_zero() {
        Ok(())
    } else {
        Err(format!("{what}: {} nonzero terms", x.len()))
    }
}

/// `2 [s_12, r_13]`, the YB defect of `r` produced by its symmetric torus part `s`.
fn symmetric_defect(env: &Env, s: &Tensor, r: &Tensor) -> Result<Tensor> {
    Ok(env.commutator(&verify::at3(s, 0, 1)?, &verify::at3(r, 0, 2)?)?.scale(&int(2)))
}

fn a2_subspaces(l: &Arc<LieAlgebra>) -> Vec<(&'static str, Subspace)> {
    vec![
        ("h", Subspace::full(l)),
        ("span(t_a1+a2)", Subspace::from_t_coords(l, vec![vec![one(), one()]]).unwrap()),
        ("0", Subspace::zero(l)),
    ]
}

/// Up to `count` elements of the solution space, starting with the particular one.
fn sample_rt(space: &rmat::SSpace, count: usize, pert: &mut Perturber) -> Vec<TorusPart> {
    if space.dim() == 0 {
        return vec![space.particular.clone()];
    }
    let mut out = vec![space.particular.clone()];
    while out.len() < count {
        out.push(space.point(&pert.point(space.dim())));
    }
    out
}

fn foundations() -> Outcome {
    let types = [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::B, 2), (TypeLetter::G, 2)];
    for (l, n) in types {
        let bad = lie(l, n).axiom_violations();
        if let Some(v) = bad.first() {
            return Outcome::fail(format!("{l:?}{n}: {v:?}"));
        }
    }
    Outcome::pass("A1 A2 A3 B2 G2: antisymmetry, Jacobi, invariance on all basis triples")
}

fn felder() -> Outcome {
    for (l, n) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::B, 2)] {
        let env = full(l, n);
        let y = verify::yb(&env, &rmat::felder_r(&env).unwrap()).unwrap();
        if let Err(e) = zero_check(&format!("{l:?}{n} YB"), &y) {
            return Outcome::fail(e);
        }
    }
    Outcome::pass("YB = 0 on A1 A2 B2")
}

fn schiffmann() -> Outcome {
    let l = lie(TypeLetter::A, 2);
    let mut pert = Perturber::new(3);
    let (mut samples, mut broken, mut unexplained) = (0, 0, Vec::new());
    let mut twisted_tau = false;
    for (name, a) in a2_subspaces(&l) {
        let env = on(&l, &a);
        let varpi = rmat::casimirs(&env).unwrap().varpi;
        for row in rmat::enumerate_bd(&l, &a).unwrap() {
            let Some(space) = row.space else { continue };
            twisted_tau |= !row.triple.is_identity() && name == "span(t_a1+a2)";
            for rt in sample_rt(&space, 3, &mut pert) {
                samples += 1;
                let r = rmat::schiffmann_r(&env, &row.triple, &rt).unwrap();
                let sym = rt.sym().to_tensor(&env).unwrap();
                let qu = r.add(&r.flip()).sub(&varpi).sub(&sym.scale(&int(2)));
                if !qu.is_zero() {
                    unexplained.push(format!("{name} {}: quasi-unitarity", row.triple.render()));
                }
                let y = verify::yb(&env, &r).unwrap();
                if !y.is_zero() {
                    broken += 1;
                    // an h-invariant r carries exactly the symmetric defect; otherwise the
                    // antisymmetric element of the same solution space must still solve YB
                    let anti_solves = space.antisymmetric.as_ref().is_some_and(|a| {
                        verify::yb(&env, &rmat::schiffmann_r(&env, &row.triple, a).unwrap()).unwrap().is_zero()
                    });
                    let matches = !row.triple.is_identity() || y == symmetric_defect(&env, &sym, &r).unwrap();
                    if rt.sym().is_zero() || !anti_solves || !matches {
                        unexplained.push(format!("{name} {}: YB", row.triple.render()));
                    }
                }
            }
        }
    }
    if !twisted_tau {
        return Outcome::fail("no admissible triple with tau != id on span(t_a1+a2)");
    }
    summarize(samples, broken, unexplained, "Schiffmann r", "antisymmetric r_t all solve; h-invariant defects equal 2[s_12, r_13] exactly")
}

fn summarize(samples: usize, broken: usize, unexplained: Vec<String>, what: &str, why: &str) -> Outcome {
    if !unexplained.is_empty() {
        return Outcome::fail(format!("{} unexplained: {}", unexplained.len(), unexplained.join("; ")));
    }
    if broken == 0 {
        return Outcome::pass(format!("{samples} {what} samples, all residuals zero"));
    }
    Outcome {
        verdict: Verdict::Explained,
        detail: format!(
            "{broken}/{samples} {what} samples whose r_t has a nonzero symmetric part are not solutions ({why})"
        ),
    }
}

/// Residuals of the folded equations, and whether the folding identities hold.
fn folded_residuals(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<(Vec<Tensor>, bool)> {
    let f = fold::fold(env, r, theta)?;
    let fenv = f.env(env);
    let res = vec![
        verify::cyb1(&fenv, &f.r_plus, &f.r_minus)?,
        verify::cyb2(&fenv, &f.r_plus, &f.r_minus)?,
        verify::cyb3(&fenv, &f.r_plus, &f.r_minus)?,
        verify::cyb4(&fenv, &f.r_plus, &f.r_minus)?,
        verify::cr(&fenv, &f.r_plus, &f.r_minus, &f.kappa)?,
    ];
    let mut identities = verify::folded_reflection(env, r, theta)?.is_zero();
    for t in 1..=4 {
        identities &= verify::folded_cyb(env, r, theta, t)?.is_zero();
    }
    Ok((res, identities))
}

fn folding() -> Outcome {
    let mut pert = Perturber::new(4);
    let (mut samples, mut broken, mut unexplained) = (0, 0, Vec::new());
    let mut cases: Vec<(String, Env, Vec<usize>, TorusPart)> = Vec::new();
    let a1 = lie(TypeLetter::A, 1);
    cases.push(("A1 (D,h,0)".into(), on(&a1, &Subspace::full(&a1)), vec![0], TorusPart::zero(0)));
    let a2 = lie(TypeLetter::A, 2);
    cases.push(("A2 (D,h,0)".into(), on(&a2, &Subspace::full(&a2)), vec![0, 1], TorusPart::zero(0)));
    let gamma_subspaces = [("h", Subspace::full(&a2)), ("span(t_a1)", Subspace::from_t_coords(&a2, vec![vec![one(), Rat::from_integer(0.into())]]).unwrap())];
    for (name, a) in gamma_subspaces {
        let t = BdTriple::identity(&[0]);
        if !Admissibility::check(&a2, &t, &a).is_admissible() {
            continue;
        }
        let space = rmat::solve_s(&a2, &t, &a).unwrap();
        for rt in sample_rt(&space, 3, &mut pert) {
            cases.push((format!("A2 ({{a1}},{name},r_t)"), on(&a2, &a), vec![0], rt));
        }
    }
    if cases.len() < 5 {
        return Outcome::fail("no admissible subspace for gamma = {a1} on A2");
    }
    for (name, env, gamma, rt) in cases {
        let r = rmat::gamma_r(&env, &gamma, &rt).unwrap();
        for _ in 0..3 {
            samples += 1;
            let theta = LetterMap::sigma_ybar(env.lie(), &pert.point(env.lie().rank())).unwrap();
            let (res, identities) = folded_residuals(&env, &r, &theta).unwrap();
            if res.iter().all(Tensor::is_zero) {
                continue;
            }
            broken += 1;
            let sym = rt.sym();
            let y = verify::yb(&env, &r).unwrap();
            let explained = !sym.is_zero() && identities && y == symmetric_defect(&env, &sym.to_tensor(&env).unwrap(), &r).unwrap();
            if !explained {
                unexplained.push(name.clone());
            }
        }
    }
    summarize(samples, broken, unexplained, "folded", "all folding identities hold and YB(r) = 2[s_12, r_13] exactly")
}

fn identities() -> Outcome {
    let env = full(TypeLetter::A, 1);
    let r = rmat::felder_r(&env).unwrap();
    let theta = LetterMap::sigma_ybar(env.lie(), &[int(2)]).unwrap();
    let ids = [
        Identity::PairToYb,
        Identity::Reduction,
        Identity::FoldedCyb(1),
        Identity::FoldedCyb(2),
        Identity::FoldedCyb(3),
        Identity::FoldedCyb(4),
        Identity::FoldedReflection,
    ];
    let mut nonsolutions = 0;
    for seed in 0..10 {
        for id in ids {
            for res in Perturber::new(seed).identity(&env, id, &r, &theta).unwrap() {
                if !res.is_zero() {
                    return Outcome::fail(format!("{} seed {seed}", res.tag));
                }
            }
        }
        let f = fold::fold(&env, &r, &theta).unwrap();
        let mut pert = Perturber::new(seed);
        let rp = pert.perturb(&env, &f.r_plus, 2);
        let rm = pert.perturb(&env, &f.r_minus, 2);
        let k = f.kappa.add(&pert.single(&env).unwrap());
        for p in ops::d_pairs(&env, 3, &rp, &rm, &k).unwrap() {
            nonsolutions += usize::from(!p.defect.is_zero());
            if !p.mismatch.is_zero() {
                return Outcome::fail(format!("commutator decomposition seed {seed} ({},{})", p.i, p.j));
            }
        }
        if verify::pair_to_yb(&env, &rp, &rm).unwrap().is_zero() && verify::yb(&env, &rp.sub(&rm)).unwrap().is_zero() {
            return Outcome::fail(format!("seed {seed} did not perturb away from a solution"));
        }
    }
    Outcome::pass(format!("7 identity families + commutator decomposition, 10 seeds each; {nonsolutions} nonzero operator defects decomposed exactly"))
}

fn classification() -> Outcome {
    let mut pert = Perturber::new(6);
    let (mut checked, mut symmetric) = (0, 0);
    for n in [2, 3] {
        let l = lie(TypeLetter::A, n);
        let mut subs = vec![Subspace::full(&l), Subspace::zero(&l)];
        if n == 2 {
            subs.push(Subspace::from_t_coords(&l, vec![vec![one(), one()]]).unwrap());
        }
        let mut thetas = Vec::new();
        for _ in 0..2 {
            thetas.push(LetterMap::sigma_ybar(&l, &pert.point(n)).unwrap());
        }
        let signs: Vec<Vec<Rat>> = vec![(0..n).map(|i| if i == 0 { int(-1) } else { one() }).collect(), vec![int(-1); n]];
        for c in &signs {
            thetas.push(LetterMap::ad_y(&l, c).unwrap());
        }
        for a in &subs {
            let env = on(&l, a);
            for row in rmat::enumerate_bd(&l, a).unwrap() {
                let Some(space) = row.space else { continue };
                let mut parts: Vec<TorusPart> = space.symmetric.iter().chain(space.antisymmetric.iter()).cloned().collect();
                parts.extend(sample_rt(&space, 2, &mut pert));
                for rt in parts {
                    let r = rmat::schiffmann_r(&env, &row.triple, &rt).unwrap();
                    for theta in &thetas {
                        let verdict = fold::classify(&env, &row.triple, &rt, theta);
                        let truth = fold::is_twisted_symmetric(&env, &r, theta).unwrap();
                        if verdict != truth {
                            return Outcome::fail(format!("A{n} {}: classify={verdict} twisted_symmetric={truth}", row.triple.render()));
                        }
                        checked += 1;
                        symmetric += usize::from(truth);
                    }
                }
            }
        }
    }
    Outcome::pass(format!("{checked} (triple, r_t, theta) cases on A2 A3 agree ({symmetric} twisted symmetric)"))
}

fn kappa_extensions() -> Outcome {
    let env = full(TypeLetter::A, 1);
    let r = rmat::gamma_r(&env, &[0], &TorusPart::zero(0)).unwrap();
    let thetas = [LetterMap::sigma(env.lie()), LetterMap::sigma_ybar(env.lie(), &[int(3)]).unwrap()];
    for theta in &thetas {
        let f = fold::fold(&env, &r, theta).unwrap();
        for recipe in Recipe::ALL {
            if recipe.needs_half() && theta != &thetas[0] {
                continue;
            }
            let g = fold::extend_kappa(&env, &f, recipe).unwrap();
            let genv = g.env(&env);
            if let Err(e) = zero_check(&format!("CR {}", recipe.name()), &verify::cr(&genv, &g.r_plus, &g.r_minus, &g.kappa).unwrap()) {
                return Outcome::fail(e);
            }
        }
    }
    let f = fold::fold(&env, &r, &thetas[0]).unwrap();
    for res in fold::twist_identities(&env, &f).unwrap() {
        if !res.is_zero() {
            return Outcome::fail(res.tag.to_string());
        }
    }
    Outcome::pass("CR = 0 for all five kappa recipes on legs 0,1,2,0'; both twisted-pair identities zero")
}

fn operators() -> Outcome {
    let env = full(TypeLetter::A, 1);
    let felder = rmat::felder_r(&env).unwrap();
    let gamma = rmat::gamma_r(&env, &[0], &TorusPart::zero(0)).unwrap();
    let mut triples = vec![
        fold::fold(&env, &felder, &LetterMap::sigma(env.lie())).unwrap(),
        fold::fold(&env, &gamma, &LetterMap::sigma_ybar(env.lie(), &[frac(5, 2)]).unwrap()).unwrap(),
    ];
    triples.push(fold::extend_kappa(&env, &triples[0], Recipe::Both).unwrap());
    let mut pairs = 0;
    for f in &triples {
        let fenv = f.env(&env);
        for n in [2, 3] {
            let built: Vec<_> = (1..=n).map(|i| ops::build_d_folded(&fenv, n, i, f).unwrap()).collect();
            for i in 0..n {
                for j in i + 1..n {
                    pairs += 1;
                    if !ops::commutator_defect(&fenv, &built[i], &built[j]).unwrap().is_zero() {
                        return Outcome::fail(format!("[D_{},D_{}] N={n}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    let y = rmat::y_kmatrix(&env).unwrap();
    for n in [2, 3] {
        for i in 1..=n {
            for j in i + 1..=n {
                if !ops::type_a_defect(&env, n, i, j, &felder, &y).unwrap().is_zero() {
                    return Outcome::fail(format!("[L_{i},L_{j}] N={n}"));
                }
            }
        }
    }
    let a1 = lie(TypeLetter::A, 1);
    let zenv = on(&a1, &Subspace::zero(&a1));
    for c in [vec![one()], vec![frac(-3, 2)]] {
        for n in [2, 3] {
            if ops::gaudin_pairs(&zenv, n, &c).unwrap().iter().any(|(_, _, x)| !x.is_zero()) {
                return Outcome::fail(format!("Gaudin A1 N={n}"));
            }
        }
    }
    let a2 = lie(TypeLetter::A, 2);
    let zenv = on(&a2, &Subspace::zero(&a2));
    let def = Representation::defining(&a2).unwrap();
    let mut pert = Perturber::new(8);
    for _ in 0..5 {
        let c = pert.point(2);
        let built: Vec<_> = (1..=3).map(|i| ops::build_gaudin(&zenv, 3, i, &c).unwrap()).collect();
        if ops::matrix_witness(&zenv, &built, &[&def, &def, &def], &[vec![]]).unwrap().is_some() {
            return Outcome::fail(format!("Gaudin A2 matrices at c = {c:?}"));
        }
    }
    Outcome::pass(format!("{pairs} folded D pairs, type A L pairs, Gaudin A1 N=2,3 symbolic, Gaudin A2 N=3 at 5 points in C^3 (x) C^3 (x) C^3"))
}

fn radial_identities() -> Outcome {
    for n in [1, 2] {
        let env = full(TypeLetter::A, n);
        for name in radial::CHECKS {
            if !radial::run_check(&env, name).unwrap().is_zero() {
                return Outcome::fail(format!("A{n} {name}"));
            }
        }
    }
    let rr = radial::rho_rho(&full(TypeLetter::A, 1));
    if rr != frac(1, 2) {
        return Outcome::fail(format!("(rho,rho) on A1 = {rr}"));
    }
    Outcome::pass("LO Ch Omegar rL gaugeD zero on A1 A2; (rho,rho) = 1/2 on A1")
}

fn boundary() -> Outcome {
    for n in [1, 2] {
        let rep = fold::boundary_identities(&full(TypeLetter::A, n)).unwrap();
        if !rep.all_zero() {
            return Outcome::fail(format!("A{n}: {}", rep.summary()));
        }
    }
    Outcome::pass("twisted cyclic, decomposition and boundary identities zero on A1 A2")
}

const SUITE: [(&str, cdyb::Command); 8] = [
    ("algebra = \"A1\"\nseed = 5\nperturbations = 2\n[r]\nkind = \"felder\"\n[involution]\nkind = \"sigma_ybar\"\nc = [\"2\"]\n", cdyb::Command::Verify),
    ("algebra = \"A1\"\nchecks = [\"pair_to_yb\", \"folded_cyb2\"]\nperturbations = 3\n[r]\nkind = \"felder\"\n", cdyb::Command::Verify),
    ("algebra = \"A1\"\n[r]\nkind = \"gamma\"\ngamma = [1]\n[fold]\nrecipe = \"both\"\n", cdyb::Command::Fold),
    ("algebra = \"A2\"\n[involution]\nkind = \"sigma_ybar\"\nc = [\"2\", \"-1/3\"]\n", cdyb::Command::Classify),
    ("algebra = \"A2\"\nsubspace = \"zero\"\n", cdyb::Command::Bd),
    ("algebra = \"A2\"\nsubspace = \"zero\"\n[gaudin]\nc = [[\"1\", \"2\"]]\n", cdyb::Command::Gaudin),
    ("algebra = \"A1\"\nseed = 9\n[r]\nkind = \"felder\"\n[operators]\npoints = 3\n", cdyb::Command::Operators),
    ("algebra = \"A1\"\n", cdyb::Command::Radial),
];

fn suite_bytes(jobs: usize) -> std::result::Result<Vec<u8>, String> {
    let mut out = Vec::new();
    for (text, command) in SUITE {
        let job = cdyb::load(text).map_err(|e| e.to_string())?;
        let report = cdyb::run(&job, command, cdyb::Options { timings: false, jobs: Some(jobs) }).map_err(|e| e.to_string())?;
        if !report.all_passed() {
            return Err(format!("{} report has failures", command.name()));
        }
        out.extend(report.to_json().into_bytes());
    }
    Ok(out)
}

fn determinism() -> Outcome {
    match (suite_bytes(4), suite_bytes(1)) {
        (Ok(a), Ok(b)) if a == b => Outcome::pass(format!("{} commands, {} bytes identical across runs (4 and 1 threads)", SUITE.len(), a.len())),
        (Ok(_), Ok(_)) => Outcome::fail("reports differ"),
        (Err(e), _) | (_, Err(e)) => Outcome::fail(e),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("foundations", 10, foundations),
        ("felder", 60, felder),
        ("schiffmann", 300, schiffmann),
        ("folding", 600, folding),
        ("identities", 300, identities),
        ("classification", 600, classification),
        ("kappa extensions", 300, kappa_extensions),
        ("operators", 600, operators),
        ("radial", 300, radial_identities),
        ("boundary", 120, boundary),
        ("determinism", 600, determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if outcome.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name} ({secs:.1}s, budget {budget}s): {}", k + 1, outcome.detail);
        if outcome.verdict == Verdict::Fail {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
