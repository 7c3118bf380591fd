//! Unconditional identities between the residuals. Each function returns
//! `lhs - rhs`, which is empty whenever the stated hypotheses hold.

use alloc::format;
use alloc::vec::Vec;

use super::{at3, cr, cyb1, cyb2, cyb3, cyb4, reflection, res_cr, yb, Frame, Residual};
use crate::cartan::LetterMap;
use crate::env::Env;
use crate::error::{Error, Result};
use crate::rational::frac;
use crate::uea::Tensor;

/// Named identities; `name()` is the string used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `YB(r+ - r-) = CYB1 - CYB2 + CYB3 + CYB4`.
    PairToYb,
    /// Reductions of the pair equations at `r- = -r`.
    Reduction,
    /// `CYB_t` of a folded pair in terms of `YB(r)` (t = 1..4).
    FoldedCyb(u8),
    /// Reflection equation of the folded triple as a contraction of `CYB`s.
    FoldedReflection,
    /// `resCR` is additive over left and right boundary parts.
    Additivity,
    /// `CR(core + kappa) = CR(core) + resCR(kappa)`.
    CoreSplit,
    /// `resCR` of `r+` / `r-` boundary placements equals `CYB1` / `CYB3`.
    Extension,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::PairToYb,
        Identity::Reduction,
        Identity::FoldedCyb(1),
        Identity::FoldedCyb(2),
        Identity::FoldedCyb(3),
        Identity::FoldedCyb(4),
        Identity::FoldedReflection,
        Identity::Additivity,
        Identity::CoreSplit,
        Identity::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::PairToYb => "pair_to_yb",
            Identity::Reduction => "reduction",
            Identity::FoldedCyb(1) => "folded_cyb1",
            Identity::FoldedCyb(2) => "folded_cyb2",
            Identity::FoldedCyb(3) => "folded_cyb3",
            Identity::FoldedCyb(_) => "folded_cyb4",
            Identity::FoldedReflection => "folded_reflection",
            Identity::Additivity => "additivity",
            Identity::CoreSplit => "core_split",
            Identity::Extension => "extension",
        }
    }

    pub fn parse(s: &str) -> Result<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| Error::Config(format!("unknown identity {s:?}")))
    }
}

/// Inputs for [`identity_check`]; which fields are needed depends on the identity.
#[derive(Clone, Copy, Default)]
pub struct IdentityInputs<'a> {
    pub r: Option<&'a Tensor>,
    pub r_plus: Option<&'a Tensor>,
    pub r_minus: Option<&'a Tensor>,
    pub kappa: Option<&'a Tensor>,
    pub kappa_core: Option<&'a Tensor>,
    pub kappa_left: Option<&'a Tensor>,
    pub kappa_right: Option<&'a Tensor>,
    pub theta: Option<&'a LetterMap>,
}

fn need<'a, T: ?Sized>(t: Option<&'a T>, what: &str, id: Identity) -> Result<&'a T> {
    t.ok_or_else(|| Error::Usage(format!("{} needs {what}", id.name())))
}

/// Evaluates one identity; several residuals are returned when it has several parts.
pub fn identity_check(env: &Env, id: Identity, inp: &IdentityInputs) -> Result<Vec<Residual>> {
    let one = |tag: &str, v: Tensor| Ok(alloc::vec![Residual::new(tag, v)]);
    match id {
        Identity::PairToYb => one(id.name(), pair_to_yb(env, need(inp.r_plus, "r+", id)?, need(inp.r_minus, "r-", id)?)?),
        Identity::Reduction => {
            let r = need(inp.r, "r", id)?;
            let [a, b, c] = reduction_yb(env, r)?;
            let mut out = alloc::vec![Residual::new("reduction_cyb1", a), Residual::new("reduction_cyb2", b), Residual::new("reduction_cyb3", c)];
            if let Some(k) = inp.kappa {
                out.push(Residual::new("reduction_reflection", reduction_reflection(env, r, k)?));
            }
            Ok(out)
        }
        Identity::FoldedCyb(t) => one(id.name(), folded_cyb(env, need(inp.r, "r", id)?, need(inp.theta, "theta", id)?, t)?),
        Identity::FoldedReflection => one(id.name(), folded_reflection(env, need(inp.r, "r", id)?, need(inp.theta, "theta", id)?)?),
        Identity::Additivity => one(
            id.name(),
            additivity(env, need(inp.r_plus, "r+", id)?, need(inp.r_minus, "r-", id)?, need(inp.kappa_left, "kappa_left", id)?, need(inp.kappa_right, "kappa_right", id)?)?,
        ),
        Identity::CoreSplit => one(
            id.name(),
            core_split(env, need(inp.r_plus, "r+", id)?, need(inp.r_minus, "r-", id)?, need(inp.kappa_core, "kappa_core", id)?, need(inp.kappa, "kappa", id)?)?,
        ),
        Identity::Extension => {
            let (rp, rm) = (need(inp.r_plus, "r+", id)?, need(inp.r_minus, "r-", id)?);
            let parts = extension(env, rp, rm)?;
            Ok(parts.into_iter().zip(["extension_01", "extension_0p1", "extension_10", "extension_10p"]).map(|(v, t)| Residual::new(t, v)).collect())
        }
    }
}

pub fn pair_to_yb(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<Tensor> {
    let lhs = yb(env, &rp.sub(rm))?;
    let rhs = Tensor::sum(3, env.nvars(), [&cyb1(env, rp, rm)?, &cyb2(env, rp, rm)?.neg(), &cyb3(env, rp, rm)?, &cyb4(env, rp, rm)?]);
    Ok(lhs.sub(&rhs))
}

/// The three forms of `YB(r)` via `CYB_t(r, -r)`.
pub fn reduction_yb(env: &Env, r: &Tensor) -> Result<[Tensor; 3]> {
    let y = yb(env, r)?;
    let m = r.neg();
    Ok([
        y.sub(&cyb1(env, r, &m)?).sub(&env.apply_e(&at3(r, 1, 2)?, 0)?),
        y.add(&cyb2(env, r, &m)?).add(&env.apply_e(&at3(r, 0, 2)?, 1)?),
        y.sub(&cyb3(env, r, &m)?).sub(&env.apply_e(&at3(r, 0, 1)?, 2)?),
    ])
}

/// `R(r; kappa) - CR(r, -r; kappa) - E_1(r) - E_2(r)`. For a boundary `kappa`
/// this equals `[kappa_1, kappa_2]`, which need not vanish.
pub fn reduction_reflection(env: &Env, r: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let f = Frame::of(kappa)?;
    let rr = f.r(r)?;
    let e = env.apply_e(&rr, f.slot(1))?.add(&env.apply_e(&rr, f.slot(2))?);
    Ok(reflection(env, r, kappa)?.sub(&cr(env, r, &r.neg(), kappa)?).sub(&e))
}

/// `CYB_t(r+, r-) - 1/4 (s1 YB + s2 theta_1 YB + s3 theta_2 YB_213 + s4 theta_3 YB_312)`.
pub fn folded_cyb(env: &Env, r: &Tensor, theta: &LetterMap, t: u8) -> Result<Tensor> {
    let signs: [i64; 4] = match t {
        1 => [1, 1, 1, -1],
        2 => [-1, 1, 1, 1],
        3 => [1, -1, 1, 1],
        4 => [1, 1, -1, 1],
        _ => return Err(Error::Usage(format!("no CYB_{t}"))),
    };
    let rt = env.apply_map(r, 0, theta)?;
    let half = frac(1, 2);
    let rp = rt.add(r).scale(&half);
    let rm = rt.sub(r).scale(&half);
    let lhs = match t {
        1 => cyb1(env, &rp, &rm)?,
        2 => cyb2(env, &rp, &rm)?,
        3 => cyb3(env, &rp, &rm)?,
        _ => cyb4(env, &rp, &rm)?,
    };
    let y = yb(env, r)?;
    let parts = [
        y.clone(),
        env.apply_map(&y, 0, theta)?,
        env.apply_map(&y.place(&[1, 0, 2], 3)?, 1, theta)?,
        env.apply_map(&y.place(&[2, 0, 1], 3)?, 2, theta)?,
    ];
    let rhs = parts.iter().zip(signs).fold(env.zero(3), |acc, (p, s)| acc.add(&p.scale(&frac(s, 4))));
    Ok(lhs.sub(&rhs))
}

/// `CR(r+, r-; m(r~)/2) - 1/2 (m (x) m)(CYB1_123 + CYB2_123 + CYB2_234 + CYB3_234)`.
pub fn folded_reflection(env: &Env, r: &Tensor, theta: &LetterMap) -> Result<Tensor> {
    let rt = env.apply_map(r, 0, theta)?;
    let half = frac(1, 2);
    let rp = rt.add(r).scale(&half);
    let rm = rt.sub(r).scale(&half);
    let core = env.mult_map(&rt)?.scale(&half);
    let lhs = cr(env, &rp, &rm, &core)?;
    let c2 = cyb2(env, &rp, &rm)?;
    let four = Tensor::sum(
        4,
        env.nvars(),
        [&cyb1(env, &rp, &rm)?.place(&[0, 1, 2], 4)?, &c2.place(&[0, 1, 2], 4)?, &c2.place(&[1, 2, 3], 4)?, &cyb3(env, &rp, &rm)?.place(&[1, 2, 3], 4)?],
    );
    let rhs = env.contract(&four, &[&[0, 1], &[2, 3]])?.scale(&half);
    Ok(lhs.sub(&rhs))
}

/// `resCR(kl (x) 1 + 1 (x) kr) - resCR(kl (x) 1) - resCR(1 (x) kr)` for
/// `kl` in `A_l (x) U` and `kr` in `U (x) A_r`.
pub fn additivity(env: &Env, rp: &Tensor, rm: &Tensor, kl: &Tensor, kr: &Tensor) -> Result<Tensor> {
    let l = kl.place(&[0, 1], 3)?;
    let r = kr.place(&[1, 2], 3)?;
    Ok(res_cr(env, rp, rm, &l.add(&r))?.sub(&res_cr(env, rp, rm, &l)?).sub(&res_cr(env, rp, rm, &r)?))
}

/// `CR(core + kappa) - CR(core) - resCR(kappa)` in the boundary frame.
pub fn core_split(env: &Env, rp: &Tensor, rm: &Tensor, core: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let lifted = core.place(&[1], 3)?;
    Ok(cr(env, rp, rm, &lifted.add(kappa))?.sub(&cr(env, rp, rm, &lifted)?).sub(&res_cr(env, rp, rm, kappa)?))
}

/// `resCR` of `r+_01`, `r+_0'1`, `r-_10`, `r-_10'` minus the matching placed `CYB1` / `CYB3`
/// (legs `0, 1, 2, 0'`).
pub fn extension(env: &Env, rp: &Tensor, rm: &Tensor) -> Result<[Tensor; 4]> {
    let c1 = cyb1(env, rp, rm)?;
    let c3 = cyb3(env, rp, rm)?;
    let part = |k: Tensor, c: &Tensor, pos: &[usize]| -> Result<Tensor> { Ok(res_cr(env, rp, rm, &k)?.sub(&c.place(pos, 4)?)) };
    Ok([
        part(rp.place(&[0, 1], 3)?, &c1, &[0, 1, 2])?,
        part(rp.place(&[2, 1], 3)?, &c1, &[3, 1, 2])?,
        part(rm.place(&[1, 0], 3)?, &c3, &[1, 2, 0])?,
        part(rm.place(&[1, 2], 3)?, &c3, &[1, 2, 3])?,
    ])
}
