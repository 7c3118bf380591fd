//! Rational subspaces of h and the induced coefficient contexts.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::lie::LieAlgebra;
use crate::coeffs::CoeffContext;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{int, Rat};

/// A subspace `a` of h with basis `x_1..x_d` (t-coordinates), dual vectors
/// `t_{lambda_j}` in `a` and a basis of the orthocomplement.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<Vec<Rat>>,
    dual: Vec<Vec<Rat>>,
    perp: Vec<Vec<Rat>>,
    form: Mat,
}

impl Subspace {
    /// Basis vectors in coordinates of `t_{alpha_1}, ..., t_{alpha_n}`.
    pub fn from_t_coords(lie: &LieAlgebra, basis: Vec<Vec<Rat>>) -> Result<Self> {
        let n = lie.rank();
        if basis.iter().any(|v| v.len() != n) {
            return Err(Error::Config(format!("subspace vectors must have {n} coordinates")));
        }
        if linalg::rank(&basis, n) != basis.len() {
            return Err(Error::Config("subspace basis is linearly dependent".into()));
        }
        let form = lie.form().clone();
        let gram: Mat = basis.iter().map(|a| basis.iter().map(|b| linalg::pair(&form, a, b)).collect()).collect();
        let ginv = linalg::inverse(&gram).ok_or_else(|| Error::Config("form is degenerate on the subspace".into()))?;
        let dual = (0..basis.len())
            .map(|j| {
                (0..n).map(|c| (0..basis.len()).fold(Rat::zero(), |s, l| s + &ginv[j][l] * &basis[l][c])).collect()
            })
            .collect();
        // orthocomplement: (u, x_j) = 0
        let rows: Mat = basis.iter().map(|x| linalg::mat_vec(&form, x)).collect();
        let perp = if basis.is_empty() { (0..n).map(|i| super::rootsys::to_rat(&super::rootsys::unit(n, i))).collect() } else { linalg::nullspace(&rows, n) };
        Ok(Subspace { basis, dual, perp, form })
    }

    /// Basis vectors in simple-coroot coordinates, `alpha_i^vee = 2 t_i / (alpha_i, alpha_i)`.
    pub fn from_coroot_coords(lie: &LieAlgebra, basis: Vec<Vec<Rat>>) -> Result<Self> {
        let t = basis
            .into_iter()
            .map(|v| v.iter().enumerate().map(|(i, x)| x * int(2) / &lie.form()[i][i]).collect())
            .collect();
        Self::from_t_coords(lie, t)
    }

    pub fn full(lie: &LieAlgebra) -> Self {
        let n = lie.rank();
        Self::from_t_coords(lie, (0..n).map(|i| super::rootsys::to_rat(&super::rootsys::unit(n, i))).collect()).unwrap()
    }

    pub fn zero(lie: &LieAlgebra) -> Self {
        Self::from_t_coords(lie, Vec::new()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.form.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn dual(&self) -> &[Vec<Rat>] {
        &self.dual
    }

    pub fn perp(&self) -> &[Vec<Rat>] {
        &self.perp
    }

    /// Values `mu(x_j)` of a functional given in simple-root coordinates.
    pub fn restriction(&self, mu: &[Rat]) -> Vec<Rat> {
        self.basis.iter().map(|x| linalg::pair(&self.form, mu, x)).collect()
    }

    /// The vector of `a` representing `mu|_a`: `sum_j mu(x_j) t_{lambda_j}`.
    pub fn project(&self, mu: &[Rat]) -> Vec<Rat> {
        let n = self.form.len();
        let vals = self.restriction(mu);
        (0..n).map(|c| vals.iter().zip(&self.dual).fold(Rat::zero(), |s, (v, d)| s + v * &d[c])).collect()
    }

    pub fn vanishes_on_perp(&self, mu: &[Rat]) -> bool {
        self.perp.iter().all(|u| linalg::pair(&self.form, mu, u).is_zero())
    }

    pub fn vanishes_on_a(&self, mu: &[Rat]) -> bool {
        self.restriction(mu).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        linalg::rank(&m, self.form.len()) == self.basis.len()
    }

    pub fn context(&self, lie: &LieAlgebra, denom: u32) -> CoeffContext {
        let n = lie.rank();
        let restricted: Vec<Vec<Rat>> =
            (0..n).map(|i| self.project(&super::rootsys::to_rat(&super::rootsys::unit(n, i)))).collect();
        CoeffContext::new(&restricted, lie.form(), denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLetter;
    use crate::rational::one;
    use alloc::vec;

    #[test]
    fn duality_and_perp() {
        let lie = LieAlgebra::new(TypeLetter::A, 2).unwrap();
        let a = Subspace::from_t_coords(&lie, vec![vec![one(), one()]]).unwrap();
        assert_eq!(a.perp().len(), 1);
        for (x, d) in a.basis().iter().zip(a.dual()) {
            assert_eq!(linalg::pair(lie.form(), x, d), one());
        }
        // alpha_1 - alpha_2 vanishes on t_{alpha_1 + alpha_2}
        assert!(a.vanishes_on_a(&[one(), -one()]));
        let ctx = a.context(&lie, 1);
        assert_eq!(ctx.nvars(), 1);
        assert_eq!(ctx.exponent(&[one(), one()]).unwrap(), vec![2]);
    }

    #[test]
    fn zero_and_full() {
        let lie = LieAlgebra::new(TypeLetter::B, 2).unwrap();
        assert_eq!(Subspace::zero(&lie).context(&lie, 1).nvars(), 0);
        let f = Subspace::full(&lie);
        assert!(f.perp().is_empty());
        assert_eq!(f.context(&lie, 1).exponent(&[int(1), int(2)]).unwrap(), vec![1, 2]);
    }
}
