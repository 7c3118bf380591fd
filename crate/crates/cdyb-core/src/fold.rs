//! Folding and contraction of a dynamical r-matrix along an involution,
//! k-matrix extensions, gauge transformations and the twisted-symmetry
//! classification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::{LetterMap, MapKind};
use crate::env::Env;
use crate::error::{Error, Result};
use crate::rational::{frac, Rat};
use crate::rmat::{self, BdTriple, TorusPart};
use crate::uea::{self, Acc, Tensor};
use crate::verify;

/// `(theta (x) id) r`.
pub fn twisted(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<Tensor> {
    env.apply_map(r, 0, theta)
}

/// `r~ - r~_21`; empty iff `r` is theta-twisted symmetric.
pub fn twisted_symmetry_defect(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<Tensor> {
    let t = twisted(env, r, theta)?;
    Ok(t.sub(&t.flip()))
}

pub fn is_twisted_symmetric(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<bool> {
    Ok(twisted_symmetry_defect(env, r, theta)?.is_zero())
}

/// How a k-matrix was extended beyond the core one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    LeftRPlus,
    RightRPlus,
    Both,
    LeftCheck,
    MixedCheck,
}

impl Recipe {
    pub const ALL: [Recipe; 5] = [Recipe::LeftRPlus, Recipe::RightRPlus, Recipe::Both, Recipe::LeftCheck, Recipe::MixedCheck];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::LeftRPlus => "left_r_plus",
            Recipe::RightRPlus => "right_r_plus",
            Recipe::Both => "both",
            Recipe::LeftCheck => "left_check",
            Recipe::MixedCheck => "mixed_check",
        }
    }

    pub fn parse(s: &str) -> Result<Recipe> {
        Recipe::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::Config(format!("unknown recipe {s:?}")))
    }

    pub fn needs_half(self) -> bool {
        matches!(self, Recipe::LeftCheck | Recipe::MixedCheck)
    }
}

/// `(r+, r-, kappa)` produced by folding; `kappa` has 1 leg (core) or legs `0, 1, 0'`.
/// When `half` is set the coefficients live in the context with `D` doubled.
#[derive(Clone, Debug)]
pub struct Folded {
    pub r_plus: Tensor,
    pub r_minus: Tensor,
    pub kappa: Tensor,
    pub theta: LetterMap,
    pub half: bool,
    pub recipe: Option<Recipe>,
}

impl Folded {
    /// The environment the coefficients belong to.
    pub fn env(&self, base: &Env) -> Env {
        base.refined(if self.half { 2 } else { 1 })
    }

    /// The kappa core of a non-extended triple.
    pub fn core(&self) -> Result<&Tensor> {
        if self.kappa.legs() == 1 {
            Ok(&self.kappa)
        } else {
            Err(Error::Usage("kappa is already extended".into()))
        }
    }
}

fn check_theta(env: &Env, theta: &LetterMap) -> Result<()> {
    let lie = env.lie();
    if !theta.is_involution() || !theta.is_automorphism(lie) {
        return Err(Error::Domain("theta must be an involutive automorphism".into()));
    }
    for x in env.subspace().basis() {
        let lin: Vec<(usize, Rat)> = x.iter().cloned().enumerate().collect();
        let xt = env.lin_term(&lin, &env.ctx().one());
        if !env.apply_map(&xt, 0, theta)?.add(&xt).is_zero() {
            return Err(Error::Domain("the subspace is not contained in the (-1)-eigenspace of theta".into()));
        }
    }
    Ok(())
}

/// `r+- = (r~ +- r)/2`, `kappa = m(r~)/2`.
pub fn fold(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<Folded> {
    check_theta(env, theta)?;
    let t = twisted(env, r, theta)?;
    let defect = t.sub(&t.flip());
    if let Some((k, c)) = defect.witness() {
        return Err(Error::Classification(format!("r is not theta-twisted symmetric: r~ - r~_21 contains {}", env.render_term(k, c))));
    }
    fold_unchecked(env, r, theta)
}

/// Folding without the twisted-symmetry check (identity tests on arbitrary inputs).
pub fn fold_unchecked(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<Folded> {
    let t = twisted(env, r, theta)?;
    let half = frac(1, 2);
    Ok(Folded {
        r_plus: t.add(r).scale(&half),
        r_minus: t.sub(r).scale(&half),
        kappa: env.mult_map(&t)?.scale(&half),
        theta: theta.clone(),
        half: false,
        recipe: None,
    })
}

/// `(theta (x) id) r+ - r+` and `(theta (x) id) r- + r-`: both empty for fold outputs.
pub fn eigenspace_defects(env: &Env, folded: &Folded) -> Result<(Tensor, Tensor)> {
    let p = twisted(env, &folded.r_plus, &folded.theta)?.sub(&folded.r_plus);
    let m = twisted(env, &folded.r_minus, &folded.theta)?.add(&folded.r_minus);
    Ok((p, m))
}

/// `(id (x) Ad_{t_lambda/2})` on the given leg; the result lives in `env.refined(2)`.
pub fn half_twist(env: &Env, x: &Tensor, leg: usize) -> Result<Tensor> {
    if leg >= x.legs() {
        return Err(Error::Usage(format!("leg {leg} out of range")));
    }
    let fine = env.refined(2);
    let mut acc = Acc::new(x.legs(), fine.nvars());
    for (k, c) in x.iter() {
        let mu: Vec<Rat> = uea::weight(env.lie(), k.word(leg)).iter().map(|&m| frac(m, 2)).collect();
        acc.push(k.clone(), env.ctx().embed(c, 2).mul(&fine.ctx().exp_of(&mu)?));
    }
    Ok(acc.finish())
}

/// `r-check+-` for the fold of `gamma_r(Delta, h, 0)` along sigma.
pub fn check_pair(env: &Env, folded: &Folded) -> Result<(Tensor, Tensor)> {
    Ok((half_twist(env, &folded.r_plus, 1)?, half_twist(env, &folded.r_minus, 1)?))
}

/// The two identities of the twisted pair, as residuals in `env.refined(2)`:
/// `resCR(r+, r-, (varpi_h/2 + r-check-)_{1 0'})` and `r-check+ - varpi_h/2 - (r-check-)_21`.
pub fn twist_identities(env: &Env, folded: &Folded) -> Result<Vec<verify::Residual>> {
    require_felder_fold(env, folded)?;
    let fine = env.refined(2);
    let (cp, cm) = check_pair(env, folded)?;
    let half_vh = fine.embed(&rmat::varpi_h(env), 1).scale(&frac(1, 2));
    let kappa = half_vh.add(&cm).place(&[1, 2], 3)?;
    let res = verify::res_cr(&fine, &env.embed(&folded.r_plus, 2), &env.embed(&folded.r_minus, 2), &kappa)?;
    let split = cp.sub(&half_vh).sub(&cm.flip());
    Ok(alloc::vec![verify::Residual::new("twisted_rescr", res), verify::Residual::new("twisted_split", split)])
}

fn require_felder_fold(env: &Env, folded: &Folded) -> Result<()> {
    let lie = env.lie();
    let all: Vec<usize> = (0..lie.rank()).collect();
    let ok = env.subspace().is_full()
        && !folded.half
        && folded.theta.is_chevalley(lie)
        && folded.theta == LetterMap::sigma(lie)
        && {
            let r = rmat::gamma_r(env, &all, &TorusPart::zero(0))?;
            let f = fold_unchecked(env, &r, &folded.theta)?;
            f.r_plus == folded.r_plus && f.r_minus == folded.r_minus
        };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported("check recipes need the sigma-fold of gamma_r(Delta, h, 0) on the full Cartan".into()))
    }
}

/// Adds boundary legs `0, 0'` to the core k-matrix.
pub fn extend_kappa(env: &Env, folded: &Folded, recipe: Recipe) -> Result<Folded> {
    let core = folded.core()?;
    let at = |x: &Tensor, pos: &[usize]| x.place(pos, 3);
    let mut out = folded.clone();
    out.recipe = Some(recipe);
    match recipe {
        Recipe::LeftRPlus | Recipe::RightRPlus | Recipe::Both => {
            let mut k = at(core, &[1])?;
            if recipe != Recipe::RightRPlus {
                k = k.add(&at(&folded.r_plus, &[0, 1])?);
            }
            if recipe != Recipe::LeftRPlus {
                k = k.add(&at(&folded.r_plus, &[2, 1])?);
            }
            out.kappa = k;
        }
        Recipe::LeftCheck | Recipe::MixedCheck => {
            require_felder_fold(env, folded)?;
            let (check_plus, _) = check_pair(env, folded)?;
            let mut k = env.embed(&at(core, &[1])?, 2).add(&at(&check_plus, &[2, 1])?);
            if recipe == Recipe::MixedCheck {
                k = k.add(&env.embed(&at(&folded.r_plus, &[0, 1])?, 2));
            }
            out.r_plus = env.embed(&folded.r_plus, 2);
            out.r_minus = env.embed(&folded.r_minus, 2);
            out.kappa = k;
            out.half = true;
        }
    }
    Ok(out)
}

/// Gauge transformations of folded triples.
#[derive(Clone, Debug)]
pub enum Gauge {
    /// An automorphism acting on h as `+id` (torus elements) or `-id` (Chevalley type).
    Automorphism(LetterMap),
    /// `lambda -> eps lambda + mu`, with `mu` given by the multipliers `e^{(g_k, mu)/D}` of the variables.
    EpsMu { eps: i32, shift: Vec<Rat> },
}

fn apply_all_legs(env: &Env, x: &Tensor, phi: &LetterMap) -> Result<Tensor> {
    (0..x.legs()).try_fold(x.clone(), |acc, leg| env.apply_map(&acc, leg, phi))
}

fn eps_mu_coeffs(x: &Tensor, nvars: usize, eps: i32, shift: &[Rat]) -> Result<Tensor> {
    x.try_map_coeffs(nvars, |c| {
        c.map_monomials(nvars, |m| {
            let q = m.iter().zip(shift).fold(crate::rational::one(), |s, (&e, k)| s * crate::rational::pow(k, e.into()));
            (q, m.iter().map(|e| eps * e).collect())
        })
    })
}

pub fn gauge(env: &Env, folded: &Folded, transform: &Gauge) -> Result<Folded> {
    let env = folded.env(env);
    let lie = env.lie();
    let mut out = folded.clone();
    match transform {
        Gauge::Automorphism(phi) => {
            if !phi.is_automorphism(lie) {
                return Err(Error::Unsupported("gauge map is not an automorphism".into()));
            }
            let negate = if phi.is_chevalley(lie) {
                true
            } else if (0..lie.rank()).all(|a| phi.apply(a) == &(a, crate::rational::one())) {
                false
            } else {
                return Err(Error::Unsupported("gauge automorphisms must act on h as +id or -id".into()));
            };
            let map = |x: &Tensor| -> Result<Tensor> {
                let y = apply_all_legs(&env, x, phi)?;
                Ok(if negate { rmat::negate_lambda(&y) } else { y })
            };
            out.r_plus = map(&folded.r_plus)?;
            out.r_minus = map(&folded.r_minus)?;
            out.kappa = map(&folded.kappa)?;
            out.theta = phi.compose(&folded.theta).compose(&phi.inverse());
            out.theta.kind = conjugated_kind(&folded.theta, phi);
        }
        Gauge::EpsMu { eps, shift } => {
            if *eps != 1 && *eps != -1 {
                return Err(Error::Domain(format!("eps must be +1 or -1, got {eps}")));
            }
            if shift.len() != env.nvars() {
                return Err(Error::Config(format!("mu needs {} variable multipliers, got {}", env.nvars(), shift.len())));
            }
            let e = Rat::from_integer((*eps).into());
            let nv = env.nvars();
            out.r_plus = eps_mu_coeffs(&folded.r_plus, nv, *eps, shift)?.scale(&e);
            out.r_minus = eps_mu_coeffs(&folded.r_minus, nv, *eps, shift)?.scale(&e);
            out.kappa = eps_mu_coeffs(&folded.kappa, nv, *eps, shift)?.scale(&e);
        }
    }
    Ok(out)
}

/// `Ad_z sigma_y Ad_z^{-1} = sigma_{y - 2z}` in torus-scalar form.
fn conjugated_kind(theta: &LetterMap, phi: &LetterMap) -> MapKind {
    match (&theta.kind, &phi.kind) {
        (MapKind::SigmaYbar(c), MapKind::AdY(z)) => {
            MapKind::SigmaYbar(c.iter().zip(z).map(|(a, b)| a / (b * b)).collect())
        }
        (MapKind::ChevalleySigma, MapKind::AdY(z)) => MapKind::SigmaYbar(z.iter().map(|b| crate::rational::one() / (b * b)).collect()),
        _ => MapKind::Custom,
    }
}

/// Residuals of the coupled system for a folded triple.
pub fn membership(env: &Env, folded: &Folded) -> Result<Vec<verify::Residual>> {
    let env = folded.env(env);
    let inputs = verify::Inputs { r_plus: Some(&folded.r_plus), r_minus: Some(&folded.r_minus), kappa: Some(&folded.kappa), r: None };
    [verify::Kind::Cyb1, verify::Kind::Cyb2, verify::Kind::Cyb3, verify::Kind::Cyb4, verify::Kind::Cr, verify::Kind::ACompat]
        .into_iter()
        .map(|k| verify::residual(&env, k, &inputs))
        .collect()
}

/// `[x (x) 1, r+] = [1 (x) x, r-]` for every `x` in h (stronger than compatibility on the subspace).
pub fn h_compat(env: &Env, folded: &Folded) -> Result<verify::Residual> {
    let env = folded.env(env);
    let full = Env::new(env.lie_arc(), crate::cartan::Subspace::full(env.lie()), env.ctx().denom());
    let mut acc = Acc::new(3, env.nvars());
    for i in 0..env.lie().rank() {
        let x = env.term(&[[i as u8]], crate::rational::one());
        let d = full.commutator(&x.place(&[0], 2)?, &folded.r_plus)?.sub(&full.commutator(&x.place(&[1], 2)?, &folded.r_minus)?);
        for (k, c) in d.iter() {
            let mut ws = alloc::vec![alloc::vec![i as u8]];
            ws.extend(k.words().into_iter().map(|w| w.to_vec()));
            acc.push(crate::uea::Key::from_words(&ws), c.clone());
        }
    }
    Ok(verify::Residual::new("H_COMPAT", acc.finish()))
}

/// Condition (2) of the classification: `(Gamma, Gamma, id)`, `V_Gamma` inside the
/// subspace, `r_t` symmetric and `theta` Chevalley.
pub fn classify(env: &Env, triple: &BdTriple, rt: &TorusPart, theta: &LetterMap) -> bool {
    let lie = env.lie();
    let n = lie.rank();
    triple.is_identity()
        && triple.gamma1().iter().all(|&i| env.subspace().vanishes_on_perp(&crate::cartan::to_rat(&crate::cartan::unit(n, i))))
        && rt.is_symmetric()
        && theta.is_chevalley(lie)
}

/// Outcome of one boundary identity.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub residuals: Vec<verify::Residual>,
}

impl BoundaryReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(verify::Residual::is_zero)
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.residuals.iter().map(|r| format!("{}={}", r.tag, if r.is_zero() { "0" } else { "nonzero" })).collect();
        parts.join(", ")
    }
}

/// The twisted quasi-unitarity and the hat-decompositions of Felder's r-matrix.
pub fn boundary_identities(env: &Env) -> Result<BoundaryReport> {
    let lie = env.lie();
    if !lie.roots.is_simply_laced() {
        return Err(Error::Unsupported("boundary identities assume sigma(e_a) = -e_{-a}, i.e. a simply-laced algebra".into()));
    }
    let rr = rmat::felder_r(env)?;
    let vh = rmat::varpi_h(env);
    let z = rmat::z_element(env)?;
    let sigma = LetterMap::sigma(lie);
    let hat = |x: &Tensor| x.map_coeffs(|c| env.ctx().square(c));
    let z_eta = env.eta(&z, 1, true)?;
    let z21_eta = env.eta(&z.flip(), 1, true)?;
    let half = frac(1, 2);

    let cyclic = rr.add(&env.eta(&rr, 1, false)?.flip()).add(&vh);
    let decomp = hat(&rr).sub(&Tensor::sum(2, env.nvars(), [&vh.neg(), &z_eta, &z21_eta.neg()]).scale(&half));
    let rs = env.apply_map(&rr, 0, &sigma)?;
    let plus = rs.add(&rr).scale(&half);
    let minus = rs.sub(&rr).scale(&half);
    let plus_res = hat(&plus).sub(&z_eta.scale(&half));
    let minus_res = hat(&minus).sub(&vh.add(&z21_eta).scale(&half));
    Ok(BoundaryReport {
        residuals: alloc::vec![
            verify::Residual::new("twisted_cyclic", cyclic),
            verify::Residual::new("decomposition", decomp),
            verify::Residual::new("boundary_plus", plus_res),
            verify::Residual::new("boundary_minus", minus_res),
        ],
    })
}
