//! First-order operators `E_i - A_i` on `U^{(x) N}` (plus boundary legs) and
//! their symbolic commutators.

mod reps;

pub use reps::*;

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cartan::torus_character;
use crate::env::Env;
use crate::error::{Error, Result};
use crate::fold::Folded;
use crate::rational::{frac, Rat};
use crate::rmat;
use crate::uea::{Acc, Key, Tensor};
use crate::verify::{self, Residual};

/// Largest number of points checked by the drivers.
pub const MAX_POINTS: usize = 4;

/// Legs `1..=n`, preceded by `0` and followed by `0'` when the k-matrix has boundary legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub points: usize,
    pub boundary: bool,
}

impl Layout {
    pub fn new(points: usize, kappa: &Tensor) -> Result<Layout> {
        if points == 0 {
            return Err(Error::Usage("at least one point is needed".into()));
        }
        let boundary = match kappa.legs() {
            1 => false,
            3 => true,
            n => return Err(Error::Usage(format!("a k-matrix has 1 or 3 legs, got {n}"))),
        };
        Ok(Layout { points, boundary })
    }

    pub fn legs(self) -> usize {
        self.points + if self.boundary { 2 } else { 0 }
    }

    /// Tensor slot of point `i` (1-based).
    pub fn slot(self, i: usize) -> usize {
        i - 1 + usize::from(self.boundary)
    }

    fn check_index(self, i: usize) -> Result<()> {
        if (1..=self.points).contains(&i) {
            Ok(())
        } else {
            Err(Error::Usage(format!("index {i} outside 1..={}", self.points)))
        }
    }

    /// `x_{ij}` for a 2-leg `x`.
    pub fn pair(self, x: &Tensor, i: usize, j: usize) -> Result<Tensor> {
        x.place(&[self.slot(i), self.slot(j)], self.legs())
    }

    /// `kappa_i`.
    pub fn kappa(self, kappa: &Tensor, i: usize) -> Result<Tensor> {
        if self.boundary {
            kappa.place(&[0, self.slot(i), self.legs() - 1], self.legs())
        } else {
            kappa.place(&[self.slot(i)], self.legs())
        }
    }

    /// A 3-leg tensor at points `(a, b, c)`.
    fn triple(self, x: &Tensor, a: usize, b: usize, c: usize) -> Result<Tensor> {
        x.place(&[self.slot(a), self.slot(b), self.slot(c)], self.legs())
    }

    /// A 2-point reflection residual (2 legs, or 4 with boundary) at points `(i, j)`.
    fn reflection(self, x: &Tensor, i: usize, j: usize) -> Result<Tensor> {
        if self.boundary {
            x.place(&[0, self.slot(i), self.slot(j), self.legs() - 1], self.legs())
        } else {
            self.pair(x, i, j)
        }
    }
}

/// `sum_k G_k d_k + C` with constant `G_k`; `d_k` differentiates along the
/// k-th dual basis vector of the subspace.
#[derive(Clone, Debug)]
pub struct FirstOrderOp {
    pub layout: Layout,
    pub gradient: Vec<Tensor>,
    pub constant: Tensor,
}

impl FirstOrderOp {
    pub fn legs(&self) -> usize {
        self.layout.legs()
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.iter().any(|g| !g.is_zero())
    }
}

/// `E_i` in the given layout.
pub fn euler(env: &Env, layout: Layout, i: usize) -> Result<Vec<Tensor>> {
    layout.check_index(i)?;
    let one = env.ctx().one();
    env.subspace()
        .basis()
        .iter()
        .map(|x| {
            let lin: Vec<(usize, Rat)> = x.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            env.lin_term(&lin, &one).place(&[layout.slot(i)], layout.legs())
        })
        .collect()
}

/// `D_i = E_i - sum_{s<i} r+_{si} - kappa_i - sum_{s>i} r-_{is}`.
pub fn build_d(env: &Env, n: usize, i: usize, rp: &Tensor, rm: &Tensor, kappa: &Tensor) -> Result<FirstOrderOp> {
    let layout = Layout::new(n, kappa)?;
    layout.check_index(i)?;
    two_legs(rp)?;
    two_legs(rm)?;
    let mut acc = Acc::new(layout.legs(), env.nvars());
    for s in 1..i {
        acc.push_tensor(&layout.pair(rp, s, i)?);
    }
    acc.push_tensor(&layout.kappa(kappa, i)?);
    for s in i + 1..=n {
        acc.push_tensor(&layout.pair(rm, i, s)?);
    }
    Ok(FirstOrderOp { layout, gradient: euler(env, layout, i)?, constant: acc.finish().neg() })
}

pub fn build_d_folded(env: &Env, n: usize, i: usize, folded: &Folded) -> Result<FirstOrderOp> {
    build_d(env, n, i, &folded.r_plus, &folded.r_minus, &folded.kappa)
}

/// `L_i = E_i - sum_{s<i} r_{si} - kappa_i + sum_{s>i} r_{is}`.
pub fn build_l(env: &Env, n: usize, i: usize, r: &Tensor, kappa: &Tensor) -> Result<FirstOrderOp> {
    build_d(env, n, i, r, &r.neg(), kappa)
}

fn two_legs(x: &Tensor) -> Result<()> {
    if x.legs() == 2 {
        Ok(())
    } else {
        Err(Error::Usage(format!("expected a 2-leg r-matrix, got {} legs", x.legs())))
    }
}

/// `kappa_i + 1/2 sum_{s<i} r_{si} - 1/2 sum_{s>i} r_{is} + 1/2 sum_{s != i} rt_{si}`.
pub fn a_element(env: &Env, n: usize, i: usize, r: &Tensor, rt: &Tensor, kappa: &Tensor) -> Result<Tensor> {
    let layout = Layout::new(n, kappa)?;
    layout.check_index(i)?;
    let half = frac(1, 2);
    let mut acc = Acc::new(layout.legs(), env.nvars());
    acc.push_tensor(&layout.kappa(kappa, i)?);
    for s in 1..=n {
        if s < i {
            acc.push_scaled(&layout.pair(r, s, i)?, &half);
        }
        if s > i {
            acc.push_scaled(&layout.pair(r, i, s)?, &-half.clone());
        }
        if s != i {
            acc.push_scaled(&layout.pair(rt, s, i)?, &half);
        }
    }
    Ok(acc.finish())
}

/// `D_i + A_i - E_i` for each `i`, with `r = r+ - r-` and `rt = r+ + r-`.
pub fn check_a_rearrangement(env: &Env, n: usize, folded: &Folded) -> Result<Vec<Residual>> {
    let r = folded.r_plus.sub(&folded.r_minus);
    let rt = folded.r_plus.add(&folded.r_minus);
    (1..=n)
        .map(|i| {
            let d = build_d_folded(env, n, i, folded)?;
            let a = a_element(env, n, i, &r, &rt, &folded.kappa)?;
            Ok(Residual::new(format!("A_{i}"), d.constant.add(&a)))
        })
        .collect()
}

/// `rt_Ga(c) = -1/2 varpi_h - sum_{a > 0} c^a e_{-a} (x) e_{-a}`.
pub fn gaudin_rtilde(env: &Env, c: &[Rat]) -> Result<Tensor> {
    let lie = env.lie();
    let mut acc = Acc::new(2, env.nvars());
    acc.push_scaled(&rmat::varpi_h(env), &frac(-1, 2));
    for (k, beta) in lie.roots.positive.iter().enumerate() {
        let q = lie.neg_letter(k) as u8;
        acc.push(Key::from_words(&[[q], [q]]), env.constant(-torus_character(c, beta)));
    }
    Ok(acc.finish())
}

/// `kappa_Ga(c) = -1/4 Omega_h - 1/2 sum_{a > 0} c^a e_{-a}^2`.
pub fn gaudin_kappa(env: &Env, c: &[Rat]) -> Result<Tensor> {
    let lie = env.lie();
    let mut acc = Acc::new(1, env.nvars());
    acc.push_scaled(&env.mult_map(&rmat::varpi_h(env))?, &frac(-1, 4));
    for (k, beta) in lie.roots.positive.iter().enumerate() {
        let q = lie.neg_letter(k) as u8;
        acc.push(Key::from_words(&[[q, q]]), env.constant(-torus_character(c, beta) * frac(1, 2)));
    }
    Ok(acc.finish())
}

fn require_zero_subspace(env: &Env) -> Result<()> {
    if env.subspace().dim() == 0 {
        Ok(())
    } else {
        Err(Error::Unsupported("Gaudin Hamiltonians live over the zero subspace".into()))
    }
}

/// `A_Ga;i = -1/2 sum_{s>i} varpi_{is} + kappa_i + 1/2 sum_{s != i} (r_Ga;si + rt_Ga;si)`.
pub fn gaudin_element(env: &Env, n: usize, i: usize, c: &[Rat], kappa: &Tensor) -> Result<Tensor> {
    require_zero_subspace(env)?;
    let layout = Layout::new(n, kappa)?;
    layout.check_index(i)?;
    let cas = rmat::casimirs(env)?;
    let rt = gaudin_rtilde(env, c)?;
    let half = frac(1, 2);
    let mut acc = Acc::new(layout.legs(), env.nvars());
    acc.push_tensor(&layout.kappa(kappa, i)?);
    for s in 1..=n {
        if s > i {
            acc.push_scaled(&layout.pair(&cas.varpi, i, s)?, &-half.clone());
        }
        if s != i {
            acc.push_scaled(&layout.pair(&cas.omega_plus, s, i)?, &half);
            acc.push_scaled(&layout.pair(&rt, s, i)?, &half);
        }
    }
    Ok(acc.finish())
}

/// The Gaudin Hamiltonian `A_Ga;i` with the core k-matrix, as an operator without gradient.
pub fn build_gaudin(env: &Env, n: usize, i: usize, c: &[Rat]) -> Result<FirstOrderOp> {
    let kappa = gaudin_kappa(env, c)?;
    let constant = gaudin_element(env, n, i, c, &kappa)?;
    Ok(FirstOrderOp { layout: Layout::new(n, &kappa)?, gradient: Vec::new(), constant })
}

/// `[a, b]` split by order: second-order coefficients for `d_k d_l` (k <= l),
/// first-order coefficients per direction, and the constant part.
#[derive(Clone, Debug)]
pub struct Defect {
    pub second: Vec<Tensor>,
    pub gradient: Vec<Tensor>,
    pub constant: Tensor,
}

impl Defect {
    pub fn is_zero(&self) -> bool {
        self.second.iter().chain(&self.gradient).all(Tensor::is_zero) && self.constant.is_zero()
    }

    pub fn residuals(&self) -> Vec<Residual> {
        let mut out = Vec::new();
        let dim = (0..).find(|d| d * (d + 1) / 2 >= self.second.len()).unwrap_or(0);
        let mut pairs = (0..dim).flat_map(|k| (k..dim).map(move |l| (k, l)));
        for s in &self.second {
            let (k, l) = pairs.next().unwrap_or_default();
            out.push(Residual::new(format!("second_{k}{l}"), s.clone()));
        }
        for (k, g) in self.gradient.iter().enumerate() {
            out.push(Residual::new(format!("gradient_{k}"), g.clone()));
        }
        out.push(Residual::new("constant", self.constant.clone()));
        out
    }

    pub fn term_count(&self) -> usize {
        self.second.iter().chain(&self.gradient).map(Tensor::len).sum::<usize>() + self.constant.len()
    }

    /// `self - other`, order by order.
    pub fn sub(&self, other: &Defect) -> Result<Defect> {
        if self.gradient.len() != other.gradient.len() || self.second.len() != other.second.len() {
            return Err(Error::Usage("defects of different shapes".into()));
        }
        Ok(Defect {
            second: self.second.iter().zip(&other.second).map(|(a, b)| a.sub(b)).collect(),
            gradient: self.gradient.iter().zip(&other.gradient).map(|(a, b)| a.sub(b)).collect(),
            constant: self.constant.sub(&other.constant),
        })
    }
}

fn gradient_of<'a>(op: &'a FirstOrderOp, k: usize, zero: &'a Tensor) -> &'a Tensor {
    op.gradient.get(k).unwrap_or(zero)
}

/// Symbolic commutator of two first-order operators with constant gradients.
pub fn commutator_defect(env: &Env, a: &FirstOrderOp, b: &FirstOrderOp) -> Result<Defect> {
    if a.layout != b.layout {
        return Err(Error::Usage("operators act on different layouts".into()));
    }
    let legs = a.legs();
    let zero = env.zero(legs);
    let dirs = env.subspace().dual();
    let dim = dirs.len();
    let mut second = Vec::new();
    for k in 0..dim {
        for l in k..dim {
            let (gk, gl) = (gradient_of(a, k, &zero), gradient_of(a, l, &zero));
            let (hk, hl) = (gradient_of(b, k, &zero), gradient_of(b, l, &zero));
            let mut s = env.commutator(gk, hl)?;
            if k != l {
                s = s.add(&env.commutator(gl, hk)?);
            }
            second.push(s);
        }
    }
    let mut gradient = Vec::with_capacity(dim);
    let mut acc = Acc::new(legs, env.nvars());
    acc.push_tensor(&env.commutator(&a.constant, &b.constant)?);
    for (k, dir) in dirs.iter().enumerate() {
        let (g, h) = (gradient_of(a, k, &zero), gradient_of(b, k, &zero));
        gradient.push(env.commutator(g, &b.constant)?.sub(&env.commutator(h, &a.constant)?));
        acc.push_tensor(&env.mul(g, &env.derive(&b.constant, dir))?);
        acc.push_scaled(&env.mul(h, &env.derive(&a.constant, dir))?, &-crate::rational::one());
    }
    Ok(Defect { second, gradient, constant: acc.finish() })
}

/// Right-hand side of the commutator formula for `[D_i, D_j]`, `i < j`:
/// gradient `[(x_k)_j, r-_ij] - [(x_k)_i, r+_ij]`, constant
/// `CR_ij + sum_{s<i} CYB1_sij + sum_{i<s<j} CYB2_isj + sum_{s>j} CYB3_ijs`.
pub fn commutator_decomposition(
    env: &Env,
    n: usize,
    i: usize,
    j: usize,
    rp: &Tensor,
    rm: &Tensor,
    kappa: &Tensor,
) -> Result<Defect> {
    let layout = Layout::new(n, kappa)?;
    layout.check_index(i)?;
    layout.check_index(j)?;
    if i >= j {
        return Err(Error::Usage(format!("expected i < j, got {i} and {j}")));
    }
    let (pij, mij) = (layout.pair(rp, i, j)?, layout.pair(rm, i, j)?);
    let (ei, ej) = (euler(env, layout, i)?, euler(env, layout, j)?);
    let dim = ei.len();
    let gradient = ei
        .iter()
        .zip(&ej)
        .map(|(xi, xj)| Ok(env.commutator(xj, &mij)?.sub(&env.commutator(xi, &pij)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Acc::new(layout.legs(), env.nvars());
    acc.push_tensor(&layout.reflection(&verify::cr(env, rp, rm, kappa)?, i, j)?);
    let (c1, c2, c3) = (verify::cyb1(env, rp, rm)?, verify::cyb2(env, rp, rm)?, verify::cyb3(env, rp, rm)?);
    for s in 1..=n {
        if s < i {
            acc.push_tensor(&layout.triple(&c1, s, i, j)?);
        } else if i < s && s < j {
            acc.push_tensor(&layout.triple(&c2, i, s, j)?);
        } else if s > j {
            acc.push_tensor(&layout.triple(&c3, i, j, s)?);
        }
    }
    let second = (0..dim * (dim + 1) / 2).map(|_| env.zero(layout.legs())).collect();
    Ok(Defect { second, gradient, constant: acc.finish() })
}

/// Outcome for one pair `i < j`.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub defect: Defect,
    /// `defect - decomposition`; zero for every input.
    pub mismatch: Defect,
}

/// `[D_i, D_j]` for all `i < j` together with the decomposition identity.
pub fn d_pairs(env: &Env, n: usize, rp: &Tensor, rm: &Tensor, kappa: &Tensor) -> Result<Vec<PairReport>> {
    let ops = (1..=n).map(|i| build_d(env, n, i, rp, rm, kappa)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let defect = commutator_defect(env, &ops[i - 1], &ops[j - 1])?;
            let mismatch = defect.sub(&commutator_decomposition(env, n, i, j, rp, rm, kappa)?)?;
            out.push(PairReport { i, j, defect, mismatch });
        }
    }
    Ok(out)
}

/// `[L_i, L_j] + sum_s E_s(r_ij)`, order by order.
pub fn type_a_defect(env: &Env, n: usize, i: usize, j: usize, r: &Tensor, kappa: &Tensor) -> Result<Defect> {
    let (li, lj) = (build_l(env, n, i, r, kappa)?, build_l(env, n, j, r, kappa)?);
    let mut d = commutator_defect(env, &li, &lj)?;
    let rij = li.layout.pair(r, i, j)?;
    for s in 1..=n {
        d.constant = d.constant.add(&env.apply_e(&rij, li.layout.slot(s))?);
    }
    Ok(d)
}

/// `[A_Ga;i, A_Ga;j]` for all `i < j`.
pub fn gaudin_pairs(env: &Env, n: usize, c: &[Rat]) -> Result<Vec<(usize, usize, Tensor)>> {
    let ops = (1..=n).map(|i| build_gaudin(env, n, i, c)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j, env.commutator(&ops[i - 1].constant, &ops[j - 1].constant)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{LetterMap, LieAlgebra, Subspace, TypeLetter};
    use crate::fold::{self, Recipe};
    use crate::perturb::Perturber;
    use crate::rational::{int, one};
    use alloc::sync::Arc;
    use alloc::vec;

    fn full(letter: TypeLetter, n: usize) -> Env {
        Env::full(Arc::new(LieAlgebra::new(letter, n).unwrap()))
    }

    fn zero_env(letter: TypeLetter, n: usize) -> Env {
        let lie = Arc::new(LieAlgebra::new(letter, n).unwrap());
        Env::new(lie.clone(), Subspace::zero(&lie), 1)
    }

    #[test]
    fn small_cases() {
        let env = full(TypeLetter::A, 1);
        let r = rmat::felder_r(&env).unwrap();
        let f = fold::fold(&env, &r, &LetterMap::sigma(env.lie())).unwrap();
        let d1 = build_d_folded(&env, 1, 1, &f).unwrap();
        assert_eq!(d1.constant, f.kappa.neg());
        assert_eq!(d1.gradient, vec![env.term(&[[0u8]], one())]);
        let d = build_d_folded(&env, 2, 1, &f).unwrap();
        let expect = f.kappa.place(&[0], 2).unwrap().add(&f.r_minus).neg();
        assert_eq!(d.constant, expect);
        assert!(matches!(build_d_folded(&env, 2, 3, &f), Err(Error::Usage(_))));
        assert!(matches!(build_d_folded(&env, 2, 0, &f), Err(Error::Usage(_))));
        for res in check_a_rearrangement(&env, 3, &f).unwrap() {
            assert!(res.is_zero(), "{}", res.tag);
        }
    }

    #[test]
    fn felder_fold_commutes() {
        let env = full(TypeLetter::A, 1);
        let r = rmat::felder_r(&env).unwrap();
        let f = fold::fold(&env, &r, &LetterMap::sigma(env.lie())).unwrap();
        for n in [2, 3] {
            for p in d_pairs(&env, n, &f.r_plus, &f.r_minus, &f.kappa).unwrap() {
                assert!(p.defect.is_zero(), "N={n} ({},{})", p.i, p.j);
                assert!(p.mismatch.is_zero());
            }
        }
        let ext = fold::extend_kappa(&env, &f, Recipe::Both).unwrap();
        for p in d_pairs(&env, 2, &ext.r_plus, &ext.r_minus, &ext.kappa).unwrap() {
            assert!(p.defect.is_zero());
            assert!(p.mismatch.is_zero());
        }
    }

    #[test]
    fn decomposition_holds_for_non_solutions() {
        let env = full(TypeLetter::A, 1);
        let cas = rmat::casimirs(&env).unwrap();
        let rp = cas.omega_plus.clone();
        let rm = cas.omega_plus.neg().add(&env.term(&[[2u8], [2u8]], one()));
        for n in [2, 3] {
            let pairs = d_pairs(&env, n, &rp, &rm, &env.zero(1)).unwrap();
            assert!(pairs.iter().any(|p| !p.defect.is_zero()));
            for p in pairs {
                assert!(p.mismatch.is_zero(), "N={n} ({},{})", p.i, p.j);
            }
        }
        let r = rmat::felder_r(&env).unwrap();
        let f = fold::fold(&env, &r, &LetterMap::sigma(env.lie())).unwrap();
        let mut pert = Perturber::new(7);
        for _ in 0..3 {
            let rp = pert.perturb(&env, &f.r_plus, 2);
            let rm = pert.perturb(&env, &f.r_minus, 2);
            let k = f.kappa.add(&env.term(&[[1u8]], int(2)));
            for p in d_pairs(&env, 3, &rp, &rm, &k).unwrap() {
                assert!(p.mismatch.is_zero());
            }
        }
    }

    #[test]
    fn type_a_commutators() {
        let env = full(TypeLetter::A, 1);
        let r = rmat::felder_r(&env).unwrap();
        let y = rmat::y_kmatrix(&env).unwrap();
        for n in [2, 3] {
            for i in 1..=n {
                for j in i + 1..=n {
                    assert!(type_a_defect(&env, n, i, j, &r, &y).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn gaudin_hamiltonians() {
        let env = zero_env(TypeLetter::A, 1);
        let c = vec![int(1)];
        let theta = LetterMap::sigma_ybar(env.lie(), &c).unwrap();
        let f = fold::fold(&env, &rmat::gaudin_r(&env).unwrap(), &theta).unwrap();
        assert_eq!(gaudin_kappa(&env, &c).unwrap(), f.kappa);
        assert_eq!(gaudin_rtilde(&env, &c).unwrap(), f.r_plus.add(&f.r_minus));
        // -1/8 t^2 - 1/2 f^2
        assert_eq!(gaudin_kappa(&env, &c).unwrap(), env.term(&[[0u8, 0]], frac(-1, 8)).add(&env.term(&[[1u8, 1]], frac(-1, 2))));
        for n in [2, 3] {
            for i in 1..=n {
                let d = build_d_folded(&env, n, i, &f).unwrap();
                assert_eq!(d.constant.neg(), build_gaudin(&env, n, i, &c).unwrap().constant);
            }
            for (_, _, x) in gaudin_pairs(&env, n, &c).unwrap() {
                assert!(x.is_zero());
            }
        }
        assert!(matches!(build_gaudin(&full(TypeLetter::A, 1), 2, 1, &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn layout_mismatch() {
        let env = full(TypeLetter::A, 1);
        let r = rmat::felder_r(&env).unwrap();
        let a = build_l(&env, 2, 1, &r, &env.zero(1)).unwrap();
        let b = build_l(&env, 3, 1, &r, &env.zero(1)).unwrap();
        assert!(matches!(commutator_defect(&env, &a, &b), Err(Error::Usage(_))));
    }
}
