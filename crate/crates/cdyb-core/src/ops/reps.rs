//! Finite-dimensional representations and exact matrix evaluation of operators.
//! Matrix checks are necessary conditions only.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::FirstOrderOp;
use crate::cartan::{height, sub, unit, Letter, LieAlgebra, TypeLetter};
use crate::env::Env;
use crate::error::{Error, Result};
use crate::rational::{int, one, Rat};
use crate::rmat;
use crate::uea::Tensor;

/// Dense square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix { dim, data: vec![Rat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Rat) {
        self.data[i * self.dim + j] = q;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<Rat> {
        let c = if self.dim == 0 { Rat::zero() } else { self.get(0, 0).clone() };
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| if i == j { *self.get(i, j) == c } else { self.get(i, j).is_zero() }))
            .then_some(c)
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, q: &Rat) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let (n, m) = (self.dim, o.dim);
        let mut out = Self::zero(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * m + k) * n * m + j * m + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

/// A representation given by the images of all letters.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    images: Vec<Matrix>,
    dim: usize,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, a: Letter) -> &Matrix {
        &self.images[a]
    }

    pub fn trivial(lie: &LieAlgebra) -> Self {
        Representation { name: "trivial".into(), images: vec![Matrix::zero(1); lie.dim()], dim: 1 }
    }

    pub fn adjoint(lie: &LieAlgebra) -> Self {
        let d = lie.dim();
        let images = (0..d)
            .map(|a| {
                let mut m = Matrix::zero(d);
                for b in 0..d {
                    for (c, q) in lie.bracket(a, b) {
                        m.set(*c, b, q.clone());
                    }
                }
                m
            })
            .collect();
        Representation { name: "adjoint".into(), images, dim: d }
    }

    /// The defining representation of `sl_{n+1}`.
    pub fn defining(lie: &LieAlgebra) -> Result<Self> {
        if lie.roots.letter != TypeLetter::A {
            return Err(Error::Unsupported("the defining representation is implemented for type A".into()));
        }
        let d = lie.rank() + 1;
        let unit_at = |i: usize, j: usize| {
            let mut m = Matrix::zero(d);
            m.set(i, j, one());
            m
        };
        let e = (0..d - 1).map(|i| unit_at(i, i + 1)).collect();
        let f = (0..d - 1).map(|i| unit_at(i + 1, i)).collect();
        Self::from_simple(lie, "defining".into(), d, e, f)
    }

    /// The irreducible representation of `sl_2` of dimension `dim`.
    pub fn sl2_irrep(lie: &LieAlgebra, dim: usize) -> Result<Self> {
        if lie.roots.letter != TypeLetter::A || lie.rank() != 1 || dim == 0 {
            return Err(Error::Unsupported("sl2 irreps need A1 and a positive dimension".into()));
        }
        let m = dim as i64 - 1;
        let mut e = Matrix::zero(dim);
        let mut f = Matrix::zero(dim);
        for k in 0..dim {
            if k > 0 {
                let k = k as i64;
                e.set(k as usize - 1, k as usize, int(k * (m - k + 1)));
            }
            if k + 1 < dim {
                f.set(k + 1, k, one());
            }
        }
        Self::from_simple(lie, format!("irrep{dim}"), dim, vec![e], vec![f])
    }

    /// Extends images of `e_{alpha_i}`, `e_{-alpha_i}` to all letters, then checks every bracket.
    pub fn from_simple(lie: &LieAlgebra, name: String, dim: usize, e: Vec<Matrix>, f: Vec<Matrix>) -> Result<Self> {
        let n = lie.rank();
        if e.len() != n || f.len() != n || e.iter().chain(&f).any(|m| m.dim() != dim) {
            return Err(Error::Config(format!("{name}: expected {n} pairs of {dim}x{dim} matrices")));
        }
        let mut images: Vec<Option<Matrix>> = vec![None; lie.dim()];
        let letter = |mu: &[i64]| lie.root_letter(mu).expect("root");
        for i in 0..n {
            let a = unit(n, i);
            let (p, q) = (letter(&a), letter(&crate::cartan::neg(&a)));
            images[i] = Some(e[i].commutator(&f[i]));
            images[p] = Some(e[i].clone());
            images[q] = Some(f[i].clone());
        }
        let mut roots = lie.roots.positive.clone();
        roots.sort_by_key(|b| height(b));
        for beta in &roots {
            for sign in [1i64, -1] {
                let b: Vec<i64> = beta.iter().map(|x| sign * x).collect();
                let target = letter(&b);
                if images[target].is_some() {
                    continue;
                }
                let (s, rest) = (0..n)
                    .map(|i| {
                        let a: Vec<i64> = unit(n, i).iter().map(|x| sign * x).collect();
                        (letter(&a), sub(&b, &a))
                    })
                    .find(|(_, rest)| lie.roots.is_root(rest))
                    .ok_or_else(|| Error::Config(format!("{name}: no simple decomposition")))?;
                let r = letter(&rest);
                let c = lie
                    .bracket(s, r)
                    .iter()
                    .find(|(l, _)| *l == target)
                    .map(|(_, q)| q.clone())
                    .ok_or_else(|| Error::Config(format!("{name}: degenerate bracket")))?;
                let m = images[s].as_ref().expect("simple").commutator(images[r].as_ref().expect("lower height"));
                images[target] = Some(m.scale(&(one() / c)));
            }
        }
        let rep = Representation { name, images: images.into_iter().map(|m| m.expect("all letters")).collect(), dim };
        rep.check_brackets(lie)?;
        Ok(rep)
    }

    /// `[rho(a), rho(b)] = rho([a, b])` on all letter pairs.
    pub fn check_brackets(&self, lie: &LieAlgebra) -> Result<()> {
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let lhs = self.images[a].commutator(&self.images[b]);
                let rhs = lie.bracket(a, b).iter().fold(Matrix::zero(self.dim), |m, (c, q)| m.add(&self.images[*c].scale(q)));
                if lhs != rhs {
                    return Err(Error::Domain(format!("{}: bracket of {} and {} is not preserved", self.name, lie.name(a), lie.name(b))));
                }
            }
        }
        Ok(())
    }

    pub fn word(&self, w: &[u8]) -> Matrix {
        w.iter().fold(Matrix::identity(self.dim), |m, &a| m.mul(&self.images[a as usize]))
    }
}

/// The default battery for a Lie algebra: adjoint, plus sl2 irreps of
/// dimensions 2..=4 on A1 and the defining representation on type A.
pub fn battery(lie: &LieAlgebra) -> Result<Vec<Representation>> {
    let mut out = vec![Representation::adjoint(lie)];
    if lie.roots.letter == TypeLetter::A {
        if lie.rank() == 1 {
            for d in 2..=4 {
                out.push(Representation::sl2_irrep(lie, d)?);
            }
        } else {
            out.push(Representation::defining(lie)?);
        }
    }
    Ok(out)
}

/// Scalar by which the Casimir element acts, if it acts by a scalar.
pub fn casimir_scalar(env: &Env, rep: &Representation) -> Result<Option<Rat>> {
    let omega = rmat::casimirs(env)?.omega;
    Ok(evaluate_tensor(&omega, &[rep], &[])?.as_scalar())
}

/// Evaluates a tensor with coefficients at `point` (values of the exponential variables).
pub fn evaluate_tensor(x: &Tensor, reps: &[&Representation], point: &[Rat]) -> Result<Matrix> {
    if reps.len() != x.legs() {
        return Err(Error::Usage(format!("{} representations for {} legs", reps.len(), x.legs())));
    }
    let dim = reps.iter().map(|r| r.dim()).product();
    let mut out = Matrix::zero(dim);
    for (k, c) in x.iter() {
        let q = match c.as_constant() {
            Some(q) => q,
            None => c.eval(point)?,
        };
        if q.is_zero() {
            continue;
        }
        let m = reps.iter().enumerate().fold(Matrix::identity(1), |m, (leg, rep)| m.kron(&rep.word(k.word(leg))));
        out = out.add(&m.scale(&q));
    }
    Ok(out)
}

/// Matrices of an operator at a point: gradients `G_k`, constant `C`, and `d_k C`.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub gradient: Vec<Matrix>,
    pub constant: Matrix,
    pub derivatives: Vec<Matrix>,
}

pub fn evaluate(env: &Env, op: &FirstOrderOp, reps: &[&Representation], point: &[Rat]) -> Result<Evaluated> {
    let dirs = env.subspace().dual();
    let gradient = (0..dirs.len())
        .map(|k| match op.gradient.get(k) {
            Some(g) => evaluate_tensor(g, reps, point),
            None => evaluate_tensor(&env.zero(op.legs()), reps, point),
        })
        .collect::<Result<Vec<_>>>()?;
    let derivatives = dirs.iter().map(|d| evaluate_tensor(&env.derive(&op.constant, d), reps, point)).collect::<Result<Vec<_>>>()?;
    Ok(Evaluated { gradient, constant: evaluate_tensor(&op.constant, reps, point)?, derivatives })
}

/// Matrix image of the commutator: first-order parts `[G_k, C'] - [H_k, C]`
/// followed by the constant part `[C, C'] + sum_k (G_k d_k C' - H_k d_k C)`.
pub fn matrix_defect(a: &Evaluated, b: &Evaluated) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = a
        .gradient
        .iter()
        .zip(&b.gradient)
        .map(|(g, h)| g.commutator(&b.constant).sub(&h.commutator(&a.constant)))
        .collect();
    let mut c = a.constant.commutator(&b.constant);
    for k in 0..a.gradient.len() {
        c = c.add(&a.gradient[k].mul(&b.derivatives[k])).sub(&b.gradient[k].mul(&a.derivatives[k]));
    }
    out.push(c);
    out
}

/// Evaluates every pair of `ops` at each point; returns the first nonzero
/// matrix defect as `(i, j, point index)` (1-based operator indices).
pub fn matrix_witness(
    env: &Env,
    ops: &[FirstOrderOp],
    reps: &[&Representation],
    points: &[Vec<Rat>],
) -> Result<Option<(usize, usize, usize)>> {
    for (p, point) in points.iter().enumerate() {
        let ev = ops.iter().map(|op| evaluate(env, op, reps, point)).collect::<Result<Vec<_>>>()?;
        for i in 0..ev.len() {
            for j in i + 1..ev.len() {
                if matrix_defect(&ev[i], &ev[j]).iter().any(|m| !m.is_zero()) {
                    return Ok(Some((i + 1, j + 1, p)));
                }
            }
        }
    }
    Ok(None)
}

/// `count` points drawn from `seed`, skipping those at which `probe` hits a pole.
pub fn sample_points<F: Fn(&[Rat]) -> Result<()>>(nvars: usize, count: usize, seed: u64, probe: F) -> Result<Vec<Vec<Rat>>> {
    let mut pert = crate::perturb::Perturber::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 64 * count.max(1) {
            return Err(Error::Pole("no pole-free sample points found".into()));
        }
        let p = pert.point(nvars);
        match probe(&p) {
            Ok(()) => out.push(p),
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use alloc::sync::Arc;

    fn lie(l: TypeLetter, n: usize) -> LieAlgebra {
        LieAlgebra::new(l, n).unwrap()
    }

    #[test]
    fn representations_preserve_brackets() {
        for (l, n) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::B, 2), (TypeLetter::G, 2)] {
            let g = lie(l, n);
            Representation::adjoint(&g).check_brackets(&g).unwrap();
            for r in battery(&g).unwrap() {
                r.check_brackets(&g).unwrap();
            }
        }
        assert!(Representation::defining(&lie(TypeLetter::B, 2)).is_err());
    }

    #[test]
    fn casimir_scalars() {
        let env = Env::full(Arc::new(lie(TypeLetter::A, 1)));
        let g = env.lie();
        assert_eq!(casimir_scalar(&env, &Representation::adjoint(g)).unwrap(), Some(int(4)));
        assert_eq!(casimir_scalar(&env, &Representation::sl2_irrep(g, 2).unwrap()).unwrap(), Some(frac(3, 2)));
        assert_eq!(casimir_scalar(&env, &Representation::sl2_irrep(g, 4).unwrap()).unwrap(), Some(frac(15, 2)));
        assert_eq!(casimir_scalar(&env, &Representation::trivial(g)).unwrap(), Some(Rat::zero()));
        let env3 = Env::full(Arc::new(lie(TypeLetter::A, 2)));
        // (theta, theta + 2 rho) = 2 + 4
        assert_eq!(casimir_scalar(&env3, &Representation::adjoint(env3.lie())).unwrap(), Some(int(6)));
        assert_eq!(casimir_scalar(&env3, &Representation::defining(env3.lie()).unwrap()).unwrap(), Some(frac(8, 3)));
    }

    #[test]
    fn matrix_witnesses() {
        use crate::cartan::{LetterMap, Subspace};
        let env = Env::full(Arc::new(lie(TypeLetter::A, 1)));
        let r = rmat::felder_r(&env).unwrap();
        let f = crate::fold::fold(&env, &r, &LetterMap::sigma(env.lie())).unwrap();
        let ops: Vec<_> = (1..=2).map(|i| super::super::build_d_folded(&env, 2, i, &f).unwrap()).collect();
        let ad = Representation::adjoint(env.lie());
        let irr = Representation::sl2_irrep(env.lie(), 2).unwrap();
        let probe = |p: &[Rat]| ops.iter().try_for_each(|op| evaluate(&env, op, &[&ad, &irr], p).map(|_| ()));
        let points = sample_points(1, 5, 3, probe).unwrap();
        assert_eq!(points, sample_points(1, 5, 3, |_| Ok(())).unwrap());
        assert_eq!(matrix_witness(&env, &ops, &[&ad, &irr], &points).unwrap(), None);
        // a non-solution is caught
        let bad: Vec<_> = (1..=2)
            .map(|i| super::super::build_d(&env, 2, i, &f.r_plus, &f.r_plus, &f.kappa).unwrap())
            .collect();
        assert!(matrix_witness(&env, &bad, &[&ad, &irr], &points).unwrap().is_some());

        let g2 = Arc::new(lie(TypeLetter::A, 2));
        let env = Env::new(g2.clone(), Subspace::zero(&g2), 1);
        let def = Representation::defining(&g2).unwrap();
        let mut pert = crate::perturb::Perturber::new(11);
        for _ in 0..5 {
            let c = pert.point(2);
            let ops: Vec<_> = (1..=3).map(|i| super::super::build_gaudin(&env, 3, i, &c).unwrap()).collect();
            assert_eq!(matrix_witness(&env, &ops, &[&def, &def, &def], &[vec![]]).unwrap(), None);
        }
    }

    #[test]
    fn kron_and_poles() {
        let env = Env::full(Arc::new(lie(TypeLetter::A, 1)));
        let g = env.lie();
        let triv = Representation::trivial(g);
        let ad = Representation::adjoint(g);
        let r = rmat::felder_r(&env).unwrap();
        assert!(matches!(evaluate_tensor(&r, &[&ad, &ad], &[one()]), Err(Error::Pole(_))));
        let m = evaluate_tensor(&r, &[&ad, &ad], &[int(2)]).unwrap();
        assert_eq!(m.dim(), 9);
        // only Cartan words survive in the trivial representation, and they act by zero
        assert!(evaluate_tensor(&r, &[&triv, &triv], &[int(2)]).unwrap().is_zero());
        assert!(matches!(evaluate_tensor(&r, &[&ad], &[int(2)]), Err(Error::Usage(_))));
    }
}
