//! Radial components: differential operators on the torus with coefficients
//! in `Q (x) U(g)`, the map `X -> L_X`, and the Casimir identities.
//!
//! Directions are the Cartan letters `t_1..t_n`; a multi-index is a sorted
//! list of them. Coefficients are 1-leg tensors whose variables are
//! `xi_{alpha_i}` (the full-Cartan coefficient context).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::cartan::{to_rat, LinComb};
use crate::coeffs::ExpRational;
use crate::env::Env;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{frac, int, one, Rat};
use crate::rmat;
use crate::uea::{Key, Tensor, Word};
use crate::verify::Residual;

/// `sum_I c_I d^I` with `c_I` on the left of the derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Tensor>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, terms: BTreeMap::new() }
    }

    /// Multiplication by a coefficient.
    pub fn coeff(c: Tensor) -> Self {
        let mut op = DiffOp::zero(c.nvars());
        op.insert(Vec::new(), c);
        op
    }

    /// `c * d_{i1} ... d_{ik}`.
    pub fn monomial(c: Tensor, dirs: &[u8]) -> Self {
        let mut d = dirs.to_vec();
        d.sort_unstable();
        let mut op = DiffOp::zero(c.nvars());
        op.insert(d, c);
        op
    }

    fn insert(&mut self, dirs: Vec<u8>, c: Tensor) {
        let sum = match self.terms.remove(&dirs) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(dirs, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Tensor)> {
        self.terms.iter()
    }

    pub fn get(&self, dirs: &[u8]) -> Option<&Tensor> {
        self.terms.get(dirs)
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.insert(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, q: &Rat) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (d, c) in &self.terms {
            out.insert(d.clone(), c.scale(q));
        }
        out
    }

    /// `c o self` (coefficient multiplication from the left, in `U`).
    pub fn left_mul(&self, env: &Env, c: &Tensor) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.nvars);
        for (d, x) in &self.terms {
            out.insert(d.clone(), env.mul(c, x)?);
        }
        Ok(out)
    }

    /// `d_{t_i} o self`.
    pub fn derive_left(&self, env: &Env, i: u8) -> DiffOp {
        let n = env.lie().rank();
        let mut v = alloc::vec![Rat::from_integer(0.into()); n];
        v[i as usize] = one();
        let mut out = DiffOp::zero(self.nvars);
        for (d, c) in &self.terms {
            out.insert(d.clone(), env.derive(c, &v));
            let mut e = d.clone();
            e.push(i);
            e.sort_unstable();
            out.insert(e, c.clone());
        }
        out
    }

    /// `self o other`.
    pub fn compose(&self, env: &Env, other: &DiffOp) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.nvars);
        for (d, c) in &self.terms {
            let inner = d.iter().rev().fold(other.clone(), |acc, &i| acc.derive_left(env, i));
            out = out.add(&inner.left_mul(env, c)?);
        }
        Ok(out)
    }

    /// Re-expresses the coefficients in `env.refined(k)`.
    pub fn embed(&self, env: &Env, k: u32) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (d, c) in &self.terms {
            out.insert(d.clone(), env.embed(c, k));
        }
        out
    }

    /// A 1-leg tensor whose first letters encode the derivative (used for residual reporting).
    pub fn flatten(&self) -> Tensor {
        let legs = 2;
        let mut acc = crate::uea::Acc::new(legs, self.nvars);
        for (d, c) in &self.terms {
            for (k, x) in c.iter() {
                acc.push(Key::from_words(&[d.as_slice(), k.word(0)]), x.clone());
            }
        }
        acc.finish()
    }

    pub fn render(&self, env: &Env) -> String {
        let mut out = String::new();
        for (d, c) in &self.terms {
            let names: Vec<&str> = d.iter().map(|&i| env.lie().name(i as usize)).collect();
            let head = if d.is_empty() { String::from("1") } else { format!("d[{}]", names.join(",")) };
            for line in env.render(c).lines() {
                out.push_str(&format!("{line} . {head}\n"));
            }
        }
        out
    }
}

/// `X -> L_X` with a per-word memo table.
pub struct Radial<'e> {
    env: &'e Env,
    memo: RefCell<BTreeMap<Word, DiffOp>>,
}

fn xi(env: &Env, mu: &[i64]) -> Result<ExpRational> {
    env.ctx().exp_of(&to_rat(mu))
}

fn neg(mu: &[i64]) -> Vec<i64> {
    mu.iter().map(|x| -x).collect()
}

impl<'e> Radial<'e> {
    pub fn new(env: &'e Env) -> Result<Self> {
        if !env.subspace().is_full() {
            return Err(Error::Unsupported("radial components live on the full torus".into()));
        }
        Ok(Radial { env, memo: RefCell::new(BTreeMap::new()) })
    }

    pub fn env(&self) -> &Env {
        self.env
    }

    /// `L_b` for a PBW word.
    pub fn word(&self, w: &[u8]) -> Result<DiffOp> {
        if let Some(op) = self.memo.borrow().get(w) {
            return Ok(op.clone());
        }
        let env = self.env;
        let lie = env.lie();
        let nv = env.nvars();
        let op = match w.split_last() {
            None => DiffOp::coeff(env.unit(1)),
            Some((&last, b)) if lie.is_cartan(last as usize) => self.word(b)?.derive_left(env, last),
            Some((&last, b)) => {
                let alpha = lie.weight(last as usize).clone();
                let ea = env.term(&[[last]], one());
                let c1 = xi(env, &neg(&alpha))?.sub(&env.ctx().one()).inv()?;
                let c2 = xi(env, &alpha)?.sub(&env.ctx().one()).inv()?;
                let first = self.word(b)?.left_mul(env, &ea.scale_by(&c1))?;
                let mut second = DiffOp::zero(nv);
                for (v, q) in env.word_bracket(&[last], b)? {
                    second = second.add(&self.word(&v)?.scale(&q));
                }
                first.add(&second.left_mul(env, &Tensor::term(&[[0u8; 0]], c2))?)
            }
        };
        self.memo.borrow_mut().insert(w.to_vec(), op.clone());
        Ok(op)
    }

    /// `L_X` for `X` in `Q (x) U(g)`, extended Q-linearly.
    pub fn apply(&self, x: &Tensor) -> Result<DiffOp> {
        if x.legs() != 1 {
            return Err(Error::Usage(format!("L_X needs a 1-leg element, got {} legs", x.legs())));
        }
        let mut out = DiffOp::zero(self.env.nvars());
        for (k, c) in x.iter() {
            let scalar = Tensor::term(&[[0u8; 0]], c.clone());
            out = out.add(&self.word(k.word(0))?.left_mul(self.env, &scalar)?);
        }
        Ok(out)
    }

    /// `d_{t_mu}` for `mu` in simple-root coordinates.
    pub fn partial(&self, mu: &[Rat]) -> DiffOp {
        let t: LinComb = self.env.lie().t_of(mu);
        t.iter().fold(DiffOp::zero(self.env.nvars()), |acc, (i, c)| acc.add(&DiffOp::monomial(self.env.unit(1), &[*i as u8]).scale(c)))
    }

    /// `Delta = sum_j d_{x_j}^2` through dual pairs.
    pub fn laplacian(&self) -> DiffOp {
        let env = self.env;
        let mut out = DiffOp::zero(env.nvars());
        for (x, xd) in env.lie().dual_pairs() {
            for (i, a) in &x {
                for (j, b) in &xd {
                    out = out.add(&DiffOp::monomial(env.unit(1), &[*i as u8, *j as u8]).scale(&(a * b)));
                }
            }
        }
        out
    }
}

/// `Omega = sum x_j^2 + sum_{a in R} e_{-a} e_a` in PBW form.
pub fn casimir(env: &Env) -> Result<Tensor> {
    let c = rmat::casimirs(env)?;
    env.mult_map(&c.varpi)
}

/// `e_a e_{-a}` summed with coefficients `f(a)` over positive roots.
fn pos_neg_sum<F: Fn(&[i64]) -> Result<ExpRational>>(env: &Env, f: F) -> Result<Tensor> {
    let lie = env.lie();
    let mut out = env.zero(1);
    for (k, beta) in lie.roots.positive.iter().enumerate() {
        let p = env.term(&[[lie.pos_letter(k) as u8]], one());
        let q = env.term(&[[lie.neg_letter(k) as u8]], one());
        out = out.add(&env.mul(&p, &q)?.scale_by(&f(beta)?));
    }
    Ok(out)
}

/// `xi_{-a} / (1 - xi_{-a})^2`.
fn double_pole(env: &Env, beta: &[i64]) -> Result<ExpRational> {
    let inv = env.ctx().one_minus_inv(&to_rat(&neg(beta)))?;
    Ok(xi(env, &neg(beta))?.mul(&inv).mul(&inv))
}

/// `(1 + xi_{-a}) / (1 - xi_{-a})`.
fn cot_factor(env: &Env, beta: &[i64]) -> Result<ExpRational> {
    let inv = env.ctx().one_minus_inv(&to_rat(&neg(beta)))?;
    Ok(env.ctx().one().add(&xi(env, &neg(beta))?).mul(&inv))
}

/// `sum_{a > 0} f(a) d_{t_a}`.
fn first_order<F: Fn(&[i64]) -> Result<ExpRational>>(rad: &Radial, f: F) -> Result<DiffOp> {
    let env = rad.env();
    let mut out = DiffOp::zero(env.nvars());
    for beta in &env.lie().roots.positive {
        let c = Tensor::term(&[[0u8; 0]], f(beta)?);
        out = out.add(&rad.partial(&to_rat(beta)).left_mul(env, &c)?);
    }
    Ok(out)
}

fn op_residual(tag: &str, op: DiffOp) -> Residual {
    Residual::new(tag, op.flatten())
}

/// `L_Omega` against its closed form with the first-order term.
pub fn check_lo(env: &Env) -> Result<Residual> {
    let rad = Radial::new(env)?;
    let lhs = rad.apply(&casimir(env)?)?;
    let second = DiffOp::coeff(pos_neg_sum(env, |b| double_pole(env, b))?).scale(&int(-2));
    let rhs = rad.laplacian().add(&first_order(&rad, |b| cot_factor(env, b))?).add(&second);
    Ok(op_residual("LO", lhs.sub(&rhs)))
}

/// `Omega` rewritten with the y-type Cartan term, in `Q (x) U(g)`.
pub fn check_ch(env: &Env) -> Result<Residual> {
    let lie = env.lie();
    let omega = casimir(env)?;
    let vh = env.mult_map(&rmat::varpi_h(env))?;
    let mut rhs = vh;
    for beta in &lie.roots.positive {
        let t = env.lin_term(&lie.t_of(&to_rat(beta)), &cot_factor(env, beta)?);
        rhs = rhs.add(&t);
    }
    for a in lie.rank()..lie.dim() {
        let w = lie.weight(a);
        let c = env.ctx().one_minus_inv(&to_rat(&neg(w)))?.scale(&int(2));
        let x = env.mul(&env.term(&[[lie.opposite(a) as u8]], one()), &env.term(&[[a as u8]], one()))?;
        rhs = rhs.add(&x.scale_by(&c));
    }
    Ok(Residual::new("Ch", omega.sub(&rhs)))
}

/// `Omega - 2 (y - m(r))` for Felder's r-matrix.
pub fn check_omegar(env: &Env) -> Result<Residual> {
    let y = rmat::y_kmatrix(env)?;
    let mr = env.mult_map(&rmat::felder_r(env)?)?;
    Ok(Residual::new("Omegar", casimir(env)?.sub(&y.sub(&mr).scale(&int(2)))))
}

/// `L_{m(r)} = -Delta/2 + sum_{a > 0} xi_{-a} e_a e_{-a} / (1 - xi_{-a})^2`.
pub fn check_rl(env: &Env) -> Result<Residual> {
    let rad = Radial::new(env)?;
    let lhs = rad.apply(&env.mult_map(&rmat::felder_r(env)?)?)?;
    let rhs = rad.laplacian().scale(&frac(-1, 2)).add(&DiffOp::coeff(pos_neg_sum(env, |b| double_pole(env, b))?));
    Ok(op_residual("rL", lhs.sub(&rhs)))
}

/// `(rho, rho)`.
pub fn rho_rho(env: &Env) -> Rat {
    let rho = env.lie().roots.rho();
    linalg::pair(env.lie().form(), &rho, &rho)
}

/// Weyl denominator `xi_rho prod_{a > 0} (1 - xi_{-a})` in the context with `D` doubled.
pub fn weyl_denominator(env: &Env) -> Result<ExpRational> {
    let fine = env.refined(2);
    let lie = env.lie();
    let mut q = fine.ctx().exp_of(&lie.roots.rho())?;
    for beta in &lie.roots.positive {
        q = q.mul(&fine.ctx().one().sub(&fine.ctx().exp_of(&to_rat(&neg(beta)))?));
    }
    Ok(q)
}

/// `L_Omega - q^{-1} o (Delta - 2 sum ...) o q` in the context with `D` doubled; a constant.
pub fn gauge_shift(env: &Env) -> Result<DiffOp> {
    let rad = Radial::new(env)?;
    let fine = env.refined(2);
    let q = weyl_denominator(env)?;
    let lo = rad.apply(&casimir(env)?)?.embed(env, 2);
    let inner = rad.laplacian().add(&DiffOp::coeff(pos_neg_sum(env, |b| double_pole(env, b))?).scale(&int(-2))).embed(env, 2);
    let scalar = |f: ExpRational| DiffOp::coeff(Tensor::term(&[[0u8; 0]], f));
    let conj = scalar(q.inv()?).compose(&fine, &inner.compose(&fine, &scalar(q))?)?;
    Ok(lo.sub(&conj))
}

/// The gauge identity with constant `-(rho, rho)`: `q^{-1} Delta q = Delta + 2 grad(log q) + (rho, rho)`.
pub fn check_gauge_d(env: &Env) -> Result<Residual> {
    let shift = DiffOp::coeff(env.refined(2).unit(1)).scale(&rho_rho(env));
    Ok(op_residual("gaugeD", gauge_shift(env)?.add(&shift)))
}

/// Named checks, in the order used by reports.
pub const CHECKS: [&str; 5] = ["LO", "Ch", "Omegar", "rL", "gaugeD"];

pub fn run_check(env: &Env, name: &str) -> Result<Residual> {
    match name {
        "LO" => check_lo(env),
        "Ch" => check_ch(env),
        "Omegar" => check_omegar(env),
        "rL" => check_rl(env),
        "gaugeD" => check_gauge_d(env),
        _ => Err(Error::Config(format!("unknown radial check {name:?}"))),
    }
}
