//! Exact residuals of the dynamical Yang-Baxter and reflection equations,
//! with deterministic witnesses.

mod identities;

pub use identities::*;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeffs::ExpRational;
use crate::env::Env;
use crate::error::{Error, Result};
use crate::uea::{Acc, Key, Tensor};

/// An evaluated equation: `is_zero` iff the value has empty support.
#[derive(Clone, Debug)]
pub struct Residual {
    pub tag: String,
    pub value: Tensor,
}

impl Residual {
    pub fn new(tag: impl Into<String>, value: Tensor) -> Self {
        Residual { tag: tag.into(), value }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Least nonzero word tuple and its coefficient.
    pub fn witness(&self) -> Option<(&Key, &ExpRational)> {
        self.value.witness()
    }

    pub fn term_count(&self) -> usize {
        self.value.len()
    }

    pub fn render_witness(&self, env: &Env) -> Option<String> {
        self.witness().map(|(k, c)| env.render_term(k, c))
    }
}

/// The kinds accepted by [`residual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Yb,
    Cyb1,
    Cyb2,
    Cyb3,
    Cyb4,
    Cr,
    ResCr,
    ACompat,
    AInv,
    R,
}

impl Kind {
    pub const ALL: [Kind; 10] =
        [Kind::Yb, Kind::Cyb1, Kind::Cyb2, Kind::Cyb3, Kind::Cyb4, Kind::Cr, Kind::ResCr, Kind::ACompat, Kind::AInv, Kind::R];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Yb => "YB",
            Kind::Cyb1 => "CYB1",
            Kind::Cyb2 => "CYB2",
            Kind::Cyb3 => "CYB3",
            Kind::Cyb4 => "CYB4",
            Kind::Cr => "CR",
            Kind::ResCr => "RESCR",
            Kind::ACompat => "A_COMPAT",
            Kind::AInv => "A_INV",
            Kind::R => "R",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown equation kind {s:?}")))
    }
}

/// Inputs for [`residual`]; unused fields may be left empty.
#[derive(Clone, Debug, Default)]
pub struct Inputs<'a> {
    pub r: Option<&'a Tensor>,
    pub r_plus: Option<&'a Tensor>,
    pub r_minus: Option<&'a Tensor>,
    pub kappa: Option<&'a Tensor>,
}

fn need<'a>(t: Option<&'a Tensor>, what: &str, kind: Kind) -> Result<&'a Tensor> {
    t.ok_or_else(|| Error::Usage(format!("{} needs {what}", kind.tag())))
}

pub fn residual(env: &Env, kind: Kind, inputs: &Inputs) -> Result<Residual> {
    let value = match kind {
        Kind::Yb => yb(env, need(inputs.r, "r", kind)?)?,
        Kind::Cyb1 | Kind::Cyb2 | Kind::Cyb3 | Kind::Cyb4 => {
            let rp = need(inputs.r_plus, "r+", kind)?;
            let rm = need(inputs.r_minus, "r-", kind)?;
            match kind {
                Kind::Cyb1 => cyb1(env, rp, rm)?,
                Kind::Cyb2 => cyb2(env, rp, rm)?,
                Kind::Cyb3 => cyb3(env, rp, rm)?,
                _ => cyb4(env, rp, rm)?,
            }
        }
        Kind::Cr => cr(env, need(inputs.r_plus, "r+", kind)?, need(inputs.r_minus, "r-", kind)?, need(inputs.kappa, "kappa", kind)?)?,
        Kind::ResCr => {
            res_cr(env, need(inputs.r_plus, "r+", kind)?, need(inputs.r_minus, "r-", kind)?, need(inputs.kappa, "kappa", kind)?)?
        }
        Kind::ACompat => a_compat(env, need(inputs.r_plus, "r+", kind)?, need(inputs.r_minus, "r-", kind)?)?,
        Kind::AInv => a_inv(env, need(inputs.r, "r", kind)?)?,
        Kind::R => reflection(env, need(inputs.r, "r", kind)?, need(inputs.kappa, "kappa", kind)?)?,
    };
    Ok(Residual::new(kind.tag(), value))
}

fn two_legs(r: &Tensor, name: &str) -> Result<()> {
    if r.legs() == 2 {
        Ok(())
    } else {
        Err(Error::Usage(format!("{name} must have 2 legs, got {}", r.legs())))
    }
}

/// `r_{ij}` inside `U^{(x) 3}` (0-based legs).
pub fn at3(r: &Tensor, i: usize, j: usize) -> Result<Tensor> {
    two_legs(r, "r")?;
    r.place(&[i, j], 3)
}

/// Sum of commutators `sign [x, y]`.
fn brackets(env: &Env, legs: usize, terms: &[(i64, &Tensor, &Tensor)]) -> Result<Tensor> {
    let mut acc = Acc::new(legs, env.nvars());
    for (s, x, y) in terms {
        acc.push_scaled(&env.commutator(x, y)?, &crate::rational::int(*s));
    }
    Ok(acc.finish())
}

pub fn yb(env: &Env, r: &Tensor) -> Result<Tensor> {
    let (r12, r13, r23) = (at3(r, 0, 1)?, at3(r, 0, 2)?, at3(r, 1, 2)?);
    let b = brackets(env, 3, &[(1, &r12, &r13), (1, &r12, &r23), (1, &r13, &r23)])?;
    Ok(Tensor::sum(3, env.nvars(), [&b, &env.apply_e(&r23, 0)?, &env.apply_e(&r13, 1)?.neg(), &env.apply_e(&r12, 2)?]))
}

pub fn cyb1(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    let (p12, p13, p23, m23) = (at3(rp, 0, 1)?, at3(rp, 0, 2)?, at3(rp, 1, 2)?, at3(rm, 1, 2)?);
    let b = brackets(env, 3, &[(1, &p12, &p13), (1, &p12, &p23), (-1, &p13, &m23)])?;
    Ok(Tensor::sum(3, env.nvars(), [&b, &env.apply_e(&p12, 2)?, &env.apply_e(&p13, 1)?.neg()]))
}

pub fn cyb2(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    let (m12, p13, p23, m13) = (at3(rm, 0, 1)?, at3(rp, 0, 2)?, at3(rp, 1, 2)?, at3(rm, 0, 2)?);
    let b = brackets(env, 3, &[(1, &m12, &p13), (1, &m12, &p23), (1, &m13, &p23)])?;
    Ok(Tensor::sum(3, env.nvars(), [&b, &env.apply_e(&m12, 2)?, &env.apply_e(&p23, 0)?.neg()]))
}

pub fn cyb3(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    let (p12, m13, m12, m23) = (at3(rp, 0, 1)?, at3(rm, 0, 2)?, at3(rm, 0, 1)?, at3(rm, 1, 2)?);
    let b = brackets(env, 3, &[(-1, &p12, &m13), (1, &m12, &m23), (1, &m13, &m23)])?;
    Ok(Tensor::sum(3, env.nvars(), [&b, &env.apply_e(&m13, 1)?, &env.apply_e(&m23, 0)?.neg()]))
}

/// The non-dynamical equation `[r-_12, r-_13] - [r+_12, r-_23] + [r+_13, r+_23]`.
pub fn cyb4(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    let (m12, m13, p12, m23, p13, p23) = (at3(rm, 0, 1)?, at3(rm, 0, 2)?, at3(rp, 0, 1)?, at3(rm, 1, 2)?, at3(rp, 0, 2)?, at3(rp, 1, 2)?);
    brackets(env, 3, &[(1, &m12, &m13), (-1, &p12, &m23), (1, &p13, &p23)])
}

/// Slot layout for reflection-type equations: a core k-matrix (1 leg) gives
/// 2-leg residuals, a boundary one (legs `0, 1, 0'`) gives legs `0, 1, 2, 0'`.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    boundary: bool,
}

impl Frame {
    pub fn of(kappa: &Tensor) -> Result<Frame> {
        match kappa.legs() {
            1 => Ok(Frame { boundary: false }),
            3 => Ok(Frame { boundary: true }),
            n => Err(Error::Usage(format!("a k-matrix has 1 or 3 legs, got {n}"))),
        }
    }

    pub fn legs(self) -> usize {
        if self.boundary {
            4
        } else {
            2
        }
    }

    /// Slot of the U-leg `i` in {1, 2}.
    pub fn slot(self, i: usize) -> usize {
        if self.boundary {
            i
        } else {
            i - 1
        }
    }

    /// `kappa_i`.
    pub fn kappa(self, kappa: &Tensor, i: usize) -> Result<Tensor> {
        if self.boundary {
            kappa.place(&[0, i, 3], 4)
        } else {
            kappa.place(&[i - 1], 2)
        }
    }

    /// `r = r_{12}`.
    pub fn r(self, r: &Tensor) -> Result<Tensor> {
        two_legs(r, "r")?;
        r.place(&[self.slot(1), self.slot(2)], self.legs())
    }
}

pub fn cr(env: &Env, rp: &Tensor, rm: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let f = Frame::of(kappa)?;
    let (k1, k2, p, m) = (f.kappa(kappa, 1)?, f.kappa(kappa, 2)?, f.r(rp)?, f.r(rm)?);
    let left = k1.add(&m);
    let right = k2.add(&p);
    let b = env.commutator(&left, &right)?;
    Ok(Tensor::sum(f.legs(), env.nvars(), [&b, &env.apply_e(&left, f.slot(2))?, &env.apply_e(&right, f.slot(1))?.neg()]))
}

pub fn res_cr(env: &Env, rp: &Tensor, rm: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let f = Frame::of(kappa)?;
    let (k1, k2, p, m) = (f.kappa(kappa, 1)?, f.kappa(kappa, 2)?, f.r(rp)?, f.r(rm)?);
    let b = brackets(env, f.legs(), &[(1, &k1, &p), (1, &k1, &k2), (1, &m, &k2)])?;
    Ok(Tensor::sum(f.legs(), env.nvars(), [&b, &env.apply_e(&k1, f.slot(2))?, &env.apply_e(&k2, f.slot(1))?.neg()]))
}

/// `R(r; kappa) = [k1, k2 + r] + [k1 - r, k2] + E_2(k1) - E_1(k2)`.
pub fn reflection(env: &Env, r: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let f = Frame::of(kappa)?;
    let (k1, k2, rr) = (f.kappa(kappa, 1)?, f.kappa(kappa, 2)?, f.r(r)?);
    let b1 = env.commutator(&k1, &k2.add(&rr))?;
    let b2 = env.commutator(&k1.sub(&rr), &k2)?;
    Ok(Tensor::sum(f.legs(), env.nvars(), [&b1, &b2, &env.apply_e(&k1, f.slot(2))?, &env.apply_e(&k2, f.slot(1))?.neg()]))
}

/// Directions of the subspace as Cartan letter combinations, paired with the dual basis.
fn basis_pairs(env: &Env) -> Vec<(Vec<(usize, crate::Rat)>, Vec<(usize, crate::Rat)>)> {
    let sub = env.subspace();
    let lin = |v: &[crate::Rat]| v.iter().cloned().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect::<Vec<_>>();
    sub.basis().iter().zip(sub.dual()).map(|(x, d)| (lin(x), lin(d))).collect()
}

/// `sum_j t_{lambda_j} (x) F(x_j)`: zero iff every `F(x_j)` vanishes.
fn over_basis<F: Fn(&Tensor) -> Result<Tensor>>(env: &Env, legs: usize, f: F) -> Result<Tensor> {
    let mut acc = Acc::new(legs + 1, env.nvars());
    for (x, dual) in basis_pairs(env) {
        let xt = env.lin_term(&x, &env.ctx().one());
        let val = f(&xt)?;
        let tag = env.lin_term(&dual, &env.ctx().one());
        for (kt, ct) in tag.iter() {
            for (kv, cv) in val.iter() {
                let mut ws = alloc::vec![kt.word(0).to_vec()];
                ws.extend(kv.words().into_iter().map(|w| w.to_vec()));
                acc.push(Key::from_words(&ws), ct.mul(cv));
            }
        }
    }
    Ok(acc.finish())
}

/// `[x (x) 1, r+] - [1 (x) x, r-]` over a basis of the subspace (leading leg tags the basis vector).
pub fn a_compat(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    two_legs(rp, "r+")?;
    two_legs(rm, "r-")?;
    over_basis(env, 2, |x| {
        let x1 = x.place(&[0], 2)?;
        let x2 = x.place(&[1], 2)?;
        Ok(env.commutator(&x1, rp)?.sub(&env.commutator(&x2, rm)?))
    })
}

/// `[x (x) 1 + 1 (x) x, r]` over a basis of the subspace.
pub fn a_inv(env: &Env, r: &Tensor) -> Result<Tensor> {
    two_legs(r, "r")?;
    over_basis(env, 2, |x| env.commutator(&x.place(&[0], 2)?.add(&x.place(&[1], 2)?), r))
}
