//! Dynamical r-matrices: Casimir elements, Felder's trigonometric solution,
//! the gamma family, Schiffmann's solutions and the Gaudin half-Casimir.

mod bd;

pub use bd::{enumerate_bd, phi_alpha, schiffmann_r, solve_s, Admissibility, BdTriple, SSpace, TriplePlan};

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cartan::{to_rat, LinComb, Root};
use crate::coeffs::ExpRational;
use crate::env::Env;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{frac, int, one, Rat};
use crate::uea::{Acc, Key, Tensor};

/// Rational matrix acting on `t (x) t` through a basis of t (the orthocomplement
/// of the subspace): `r_t = sum M_ab u_a (x) u_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPart(pub Mat);

impl TorusPart {
    pub fn zero(dim: usize) -> Self {
        TorusPart(alloc::vec![alloc::vec![Rat::zero(); dim]; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn transpose(&self) -> Self {
        TorusPart(linalg::transpose(&self.0, self.dim()))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let t = self.transpose();
        self.0.iter().zip(&t.0).all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x + y).is_zero()))
    }

    /// `(M + M^T)/2`.
    pub fn sym(&self) -> Self {
        let t = self.transpose();
        TorusPart(self.0.iter().zip(&t.0).map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) * frac(1, 2)).collect()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }

    /// The element of `h (x) h` as a 2-leg tensor.
    pub fn to_tensor(&self, env: &Env) -> Result<Tensor> {
        let perp = env.subspace().perp();
        if self.dim() != perp.len() || self.0.iter().any(|row| row.len() != perp.len()) {
            return Err(Error::Config(format!("r_t must be a {0}x{0} matrix in the basis of t", perp.len())));
        }
        let mut acc = Acc::new(2, env.nvars());
        for (a, row) in self.0.iter().enumerate() {
            for (b, m) in row.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                push_cartan_pair(&mut acc, env, &perp[a], &perp[b], m);
            }
        }
        Ok(acc.finish())
    }
}

fn push_cartan_pair(acc: &mut Acc, env: &Env, u: &[Rat], v: &[Rat], m: &Rat) {
    for (c, uc) in u.iter().enumerate() {
        for (d, vd) in v.iter().enumerate() {
            let q = m * uc * vd;
            if !q.is_zero() {
                acc.push(Key::from_words(&[[c as u8], [d as u8]]), env.constant(q));
            }
        }
    }
}

/// Casimir-type elements built from the dual pairs of h.
#[derive(Clone, Debug)]
pub struct Casimirs {
    pub varpi: Tensor,
    pub varpi_h: Tensor,
    pub omega: Tensor,
    pub omega_h: Tensor,
    pub omega_plus: Tensor,
    pub omega_minus: Tensor,
}

pub fn varpi_h(env: &Env) -> Tensor {
    let one_c = env.ctx().one();
    let mut acc = Acc::new(2, env.nvars());
    for (x, xd) in env.lie().dual_pairs() {
        acc.push_tensor(&env.pair_term(&x, &xd, &one_c));
    }
    acc.finish()
}

/// `varpi_t`: the form restricted to t, `sum u_a (x) u^a`.
pub fn varpi_t(env: &Env) -> Result<Tensor> {
    let perp = env.subspace().perp();
    if perp.is_empty() {
        return Ok(env.zero(2));
    }
    let form = env.lie().form();
    let gram: Mat = perp.iter().map(|a| perp.iter().map(|b| linalg::pair(form, a, b)).collect()).collect();
    let inv = linalg::inverse(&gram).ok_or_else(|| Error::Config("form is degenerate on t".into()))?;
    TorusPart(inv).to_tensor(env)
}

pub fn casimirs(env: &Env) -> Result<Casimirs> {
    let lie = env.lie();
    let m = lie.roots.num_positive();
    let one_c = env.ctx().one();
    let vh = varpi_h(env);
    let mut pos = Acc::new(2, env.nvars());
    let mut neg = Acc::new(2, env.nvars());
    for k in 0..m {
        let (p, q) = (lie.pos_letter(k) as u8, lie.neg_letter(k) as u8);
        pos.push(Key::from_words(&[[p], [q]]), one_c.clone());
        neg.push(Key::from_words(&[[q], [p]]), one_c.clone());
    }
    let (pos, neg) = (pos.finish(), neg.finish());
    let half_h = vh.scale(&frac(1, 2));
    let varpi = Tensor::sum(2, env.nvars(), [&vh, &pos, &neg]);
    let omega = env.mult_map(&varpi)?;
    let omega_h = env.mult_map(&vh)?;
    Ok(Casimirs { omega_plus: half_h.add(&pos), omega_minus: half_h.add(&neg), varpi, varpi_h: vh, omega, omega_h })
}

fn root_rat(mu: &[i64]) -> Vec<Rat> {
    to_rat(mu)
}

fn neg_root(mu: &[i64]) -> Root {
    mu.iter().map(|x| -x).collect()
}

fn require_full(env: &Env, what: &str) -> Result<()> {
    if env.subspace().is_full() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is defined for the full Cartan subalgebra only")))
    }
}

/// `-1/2 varpi_h - sum_{a in R} e_{-a} (x) e_a / (1 - xi_{-a})`.
pub fn felder_r(env: &Env) -> Result<Tensor> {
    require_full(env, "Felder's r-matrix")?;
    let lie = env.lie();
    let mut acc = Acc::new(2, env.nvars());
    acc.push_scaled(&varpi_h(env), &frac(-1, 2));
    for a in lie.rank()..lie.dim() {
        let w = lie.weight(a);
        let c = env.ctx().one_minus_inv(&root_rat(&neg_root(w)))?;
        acc.push(Key::from_words(&[[lie.opposite(a) as u8], [a as u8]]), c.neg());
    }
    Ok(acc.finish())
}

/// Roots of `R_Gamma` (support inside the given simple roots).
pub fn in_span(mu: &[i64], gamma: &[usize]) -> bool {
    mu.iter().enumerate().all(|(i, &m)| m == 0 || gamma.contains(&i))
}

/// `r_{(Gamma, a, r_t)}`: needs `V_Gamma` inside the subspace and `r_t` symmetric.
/// Only `r_t = 0` solves YB; a nonzero symmetric `r_t = s` leaves `YB = 2 [s_12, r_13]`.
pub fn gamma_r(env: &Env, gamma: &[usize], rt: &TorusPart) -> Result<Tensor> {
    let lie = env.lie();
    let n = lie.rank();
    if let Some(&i) = gamma.iter().find(|&&i| i >= n) {
        return Err(Error::Config(format!("simple root index {} out of range", i + 1)));
    }
    for &i in gamma {
        if !env.subspace().vanishes_on_perp(&to_rat(&crate::cartan::unit(n, i))) {
            return Err(Error::Constraint(format!("V_Gamma is not contained in the subspace (simple root {})", i + 1)));
        }
    }
    if !rt.is_symmetric() {
        return Err(Error::Constraint("the gamma family needs a symmetric r_t".into()));
    }
    let mut acc = Acc::new(2, env.nvars());
    acc.push_scaled(&varpi_h(env), &frac(1, 2));
    acc.push_tensor(&rt.to_tensor(env)?);
    for a in n..lie.dim() {
        let w = lie.weight(a);
        let key = Key::from_words(&[[a as u8], [lie.opposite(a) as u8]]);
        if in_span(w, gamma) {
            acc.push(key, env.ctx().one_minus_inv(&root_rat(&neg_root(w)))?);
        } else if crate::cartan::RootSystem::is_positive(w) {
            acc.push(key, env.ctx().one());
        }
    }
    Ok(acc.finish())
}

/// `r_Ga = Omega_+`, the constant half-Casimir.
pub fn gaudin_r(env: &Env) -> Result<Tensor> {
    Ok(casimirs(env)?.omega_plus)
}

/// `y = 1/2 sum_{a > 0} (1 + xi_{-a})/(1 - xi_{-a}) t_a`.
pub fn y_kmatrix(env: &Env) -> Result<Tensor> {
    require_full(env, "the k-matrix y")?;
    let lie = env.lie();
    let mut acc = Acc::new(1, env.nvars());
    for beta in &lie.roots.positive {
        let inv = env.ctx().one_minus_inv(&root_rat(&neg_root(beta)))?;
        let xi = env.ctx().exp_of(&root_rat(&neg_root(beta)))?;
        let c = env.ctx().one().add(&xi).mul(&inv).scale(&frac(1, 2));
        let t: LinComb = lie.t_of(&root_rat(beta));
        acc.push_tensor(&env.lin_term(&t, &c));
    }
    Ok(acc.finish())
}

/// `z = sum_{a > 0} (e_a - e_{-a}) (x) (e_a + e_{-a}) / (xi_a - xi_{-a})`.
pub fn z_element(env: &Env) -> Result<Tensor> {
    require_full(env, "the element z")?;
    let lie = env.lie();
    let mut acc = Acc::new(2, env.nvars());
    for k in 0..lie.roots.num_positive() {
        let beta = &lie.roots.positive[k];
        let den = env.ctx().exp_of(&root_rat(beta))?.sub(&env.ctx().exp_of(&root_rat(&neg_root(beta)))?);
        let c = den.inv()?;
        let (p, q) = (lie.pos_letter(k), lie.neg_letter(k));
        acc.push_tensor(&env.pair_term(&[(p, one()), (q, -one())], &[(p, one()), (q, one())], &c));
    }
    Ok(acc.finish())
}

/// Where an r-matrix came from; every source except `Custom` is invariant under the subspace.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Felder,
    Schiffmann { triple: BdTriple, rt: TorusPart },
    Gamma { gamma: Vec<usize>, rt: TorusPart },
    Gaudin,
    Custom,
}

impl Source {
    pub fn name(&self) -> &'static str {
        match self {
            Source::Felder => "felder",
            Source::Schiffmann { .. } => "schiffmann",
            Source::Gamma { .. } => "gamma",
            Source::Gaudin => "gaudin",
            Source::Custom => "custom",
        }
    }
}

/// A 2-leg r-matrix with its construction data.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub value: Tensor,
    pub source: Source,
}

impl RMatrix {
    pub fn build(env: &Env, source: Source) -> Result<RMatrix> {
        let value = match &source {
            Source::Felder => felder_r(env)?,
            Source::Schiffmann { triple, rt } => schiffmann_r(env, triple, rt)?,
            Source::Gamma { gamma, rt } => gamma_r(env, gamma, rt)?,
            Source::Gaudin => gaudin_r(env)?,
            Source::Custom => return Err(Error::Usage("custom r-matrices are built with RMatrix::custom".into())),
        };
        Ok(RMatrix { value, source })
    }

    pub fn custom(value: Tensor) -> Result<RMatrix> {
        if value.legs() != 2 {
            return Err(Error::Usage(format!("an r-matrix has 2 legs, got {}", value.legs())));
        }
        Ok(RMatrix { value, source: Source::Custom })
    }

    pub fn promises_invariance(&self) -> bool {
        self.source != Source::Custom
    }
}

/// Coefficientwise limit as every variable tends to zero.
pub fn limit_zero(env: &Env, x: &Tensor) -> Result<Tensor> {
    x.try_map_coeffs(env.nvars(), |c| Ok(env.ctx().constant(c.limit_zero()?)))
}

/// `lambda -> -lambda` on coefficients.
pub fn negate_lambda(x: &Tensor) -> Tensor {
    x.map_coeffs(|c| c.scale_exponents(-1))
}

/// Constant coefficient helper.
pub fn const_coeff(env: &Env, q: i64) -> ExpRational {
    env.constant(int(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{LieAlgebra, Subspace, TypeLetter};
    use alloc::sync::Arc;
    use alloc::vec;

    fn env(letter: TypeLetter, n: usize) -> Env {
        Env::full(Arc::new(LieAlgebra::new(letter, n).unwrap()))
    }

    #[test]
    fn sl2_casimirs() {
        let env = env(TypeLetter::A, 1);
        let c = casimirs(&env).unwrap();
        assert_eq!(c.varpi_h, env.term(&[[0u8], [0u8]], frac(1, 2)));
        let op = env.term(&[[0u8], [0u8]], frac(1, 4)).add(&env.term(&[[2u8], [1u8]], one()));
        assert_eq!(c.omega_plus, op);
        assert_eq!(env.mult_map(&c.omega_plus.add(&c.omega_minus)).unwrap(), c.omega);
    }

    #[test]
    fn felder_sl2_and_quasi_unitarity() {
        let env = env(TypeLetter::A, 1);
        let r = felder_r(&env).unwrap();
        // z := e^{-(alpha, lambda)} = x^-1 in the variable x = e^{(alpha, lambda)}
        let zf = ExpRational::one_minus_inv(vec![-1]).unwrap();
        let zb = ExpRational::one_minus_inv(vec![1]).unwrap();
        let expect = env
            .term(&[[0u8], [0u8]], frac(-1, 4))
            .add(&Tensor::term(&[[1u8], [2u8]], zf.neg()))
            .add(&Tensor::term(&[[2u8], [1u8]], zb.neg()));
        assert_eq!(r, expect);
        for (letter, n) in [(TypeLetter::A, 2), (TypeLetter::B, 2), (TypeLetter::G, 2)] {
            let env = env_of(letter, n);
            let r = felder_r(&env).unwrap();
            let c = casimirs(&env).unwrap();
            assert!(r.add(&r.flip()).add(&c.varpi).is_zero());
        }
    }

    fn env_of(letter: TypeLetter, n: usize) -> Env {
        env(letter, n)
    }

    #[test]
    fn gamma_full_is_negated_felder() {
        for (letter, n) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::B, 2)] {
            let env = env(letter, n);
            let all: Vec<usize> = (0..n).collect();
            let g = gamma_r(&env, &all, &TorusPart::zero(0)).unwrap();
            assert_eq!(g, negate_lambda(&felder_r(&env).unwrap()).neg());
        }
    }

    #[test]
    fn gamma_empty_zero_subspace_is_omega_plus() {
        let lie = Arc::new(LieAlgebra::new(TypeLetter::A, 2).unwrap());
        let env = Env::new(lie.clone(), Subspace::zero(&lie), 1);
        let g = gamma_r(&env, &[], &TorusPart::zero(2)).unwrap();
        assert_eq!(g, casimirs(&env).unwrap().omega_plus);
        assert!(gamma_r(&env, &[0], &TorusPart::zero(2)).is_err());
    }

    #[test]
    fn gamma_limit_is_constant() {
        for (l, n) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::B, 2)] {
            let e = env(l, n);
            let all: Vec<usize> = (0..n).collect();
            let r = gamma_r(&e, &all, &TorusPart::zero(0)).unwrap();
            let lim = limit_zero(&e, &r).unwrap();
            assert!(lim.iter().all(|(_, c)| c.is_constant()));
            assert_eq!(lim, casimirs(&e).unwrap().omega_minus);
        }
        let e = env(TypeLetter::A, 1);
        assert!(limit_zero(&e, &felder_r(&e).unwrap()).is_ok());
    }

    #[test]
    fn gamma_quasi_unitarity_with_rt() {
        let lie = Arc::new(LieAlgebra::new(TypeLetter::A, 2).unwrap());
        let a = Subspace::from_t_coords(&lie, vec![vec![one(), one()]]).unwrap();
        let e = Env::new(lie.clone(), a, 1);
        let rt = TorusPart(vec![vec![int(3)]]);
        let r = RMatrix::build(&e, Source::Gamma { gamma: vec![], rt: rt.clone() }).unwrap();
        let defect = r.value.add(&r.value.flip()).sub(&casimirs(&e).unwrap().varpi);
        assert_eq!(defect, rt.to_tensor(&e).unwrap().scale(&int(2)));
        assert!(crate::verify::a_inv(&e, &r.value).unwrap().is_zero());
        // a symmetric torus part s leaves YB(r) = 2 [s_12, r_13]
        let s = rt.to_tensor(&e).unwrap();
        let expect = e.commutator(&crate::verify::at3(&s, 0, 1).unwrap(), &crate::verify::at3(&r.value, 0, 2).unwrap()).unwrap().scale(&int(2));
        assert!(!expect.is_zero());
        assert_eq!(crate::verify::yb(&e, &r.value).unwrap(), expect);
        assert!(r.promises_invariance());
        assert!(matches!(RMatrix::build(&e, Source::Gamma { gamma: vec![0], rt }), Err(Error::Constraint(_))));
    }

    #[test]
    fn e_of_y_matches_closed_form() {
        let env = env(TypeLetter::A, 1);
        let y = y_kmatrix(&env).unwrap();
        let y2 = y.place(&[1], 2).unwrap();
        let y1 = y.place(&[0], 2).unwrap();
        let e1y2 = env.apply_e(&y2, 0).unwrap();
        let c = ExpRational::one_minus_inv(vec![1]).unwrap().mul(&ExpRational::one_minus_inv(vec![-1]).unwrap());
        assert_eq!(e1y2, Tensor::term(&[[0u8], [0u8]], c));
        assert_eq!(e1y2, env.apply_e(&y1, 1).unwrap());
    }
}
