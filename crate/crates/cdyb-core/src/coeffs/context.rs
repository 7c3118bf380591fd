//! Coefficient context: which exponentials the variables stand for.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::exprat::ExpRational;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{to_i64, Rat};

/// Variable `z_k` stands for `e^{(g_k, lambda)/D}` where `g_k` runs over a
/// Z-basis of the lattice of restricted roots (vectors of the subspace, in
/// coordinates of the basis `t_{alpha_1}, ..., t_{alpha_n}` of h).
#[derive(Clone, Debug)]
pub struct CoeffContext {
    gens: Vec<Vec<Rat>>,
    simple_coords: Vec<Vec<i64>>,
    denom: u32,
    form: Mat,
}

impl CoeffContext {
    /// `restricted[i]` is the restriction of the i-th simple root, realised
    /// as a vector of the subspace; `form` is the Gram matrix of the t-basis.
    pub fn new(restricted: &[Vec<Rat>], form: &Mat, denom: u32) -> Self {
        let n = form.len();
        let nonzero: Vec<&Vec<Rat>> = restricted.iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        let independent = linalg::rank(&restricted.to_vec(), n) == restricted.len();
        let (gens, simple_coords) = if nonzero.is_empty() {
            (Vec::new(), restricted.iter().map(|_| Vec::new()).collect())
        } else if independent {
            let k = restricted.len();
            let coords = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
            (restricted.to_vec(), coords)
        } else {
            linalg::lattice_basis(restricted, n)
        };
        CoeffContext { gens, simple_coords, denom, form: form.clone() }
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn gens(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    pub fn var_name(&self) -> &'static str {
        if self.denom == 1 {
            "z"
        } else {
            "w"
        }
    }

    /// Same lattice with `D` multiplied by `k`.
    pub fn refine(&self, k: u32) -> Self {
        let mut c = self.clone();
        c.denom *= k;
        c
    }

    pub fn zero(&self) -> ExpRational {
        ExpRational::zero(self.nvars())
    }

    pub fn one(&self) -> ExpRational {
        ExpRational::one(self.nvars())
    }

    pub fn constant(&self, c: Rat) -> ExpRational {
        ExpRational::constant(self.nvars(), c)
    }

    /// Exponent vector of `e^{(mu, lambda)}` for `mu` in simple-root coordinates.
    pub fn exponent(&self, mu: &[Rat]) -> Result<Vec<i32>> {
        let d = Rat::from_integer(self.denom.into());
        (0..self.nvars())
            .map(|k| {
                let e = mu
                    .iter()
                    .zip(&self.simple_coords)
                    .fold(Rat::zero(), |s, (m, c)| s + m * Rat::from_integer(c[k].into()))
                    * &d;
                to_i64(&e)
                    .and_then(|x| i32::try_from(x).ok())
                    .ok_or_else(|| Error::Lattice(format!("exponent {e} is not integral at D = {}; enlarge D", self.denom)))
            })
            .collect()
    }

    pub fn exp_of(&self, mu: &[Rat]) -> Result<ExpRational> {
        Ok(ExpRational::monomial(self.exponent(mu)?, crate::rational::one()))
    }

    /// `e^{(gamma_k, lambda)}` itself, i.e. `z_k^D`.
    pub fn exp_of_gen(&self, k: usize) -> ExpRational {
        let mut m = alloc::vec![0; self.nvars()];
        m[k] = self.denom as i32;
        ExpRational::monomial(m, crate::rational::one())
    }

    /// `1 / (1 - e^{(mu, lambda)})`.
    pub fn one_minus_inv(&self, mu: &[Rat]) -> Result<ExpRational> {
        let m = self.exponent(mu)?;
        if m.iter().all(|&e| e == 0) {
            return Err(Error::Pole("1/(1 - e^0)".into()));
        }
        ExpRational::one_minus_inv(m)
    }

    /// Derivation weights for the directional derivative along `v`
    /// (a vector of the subspace, t-coordinates): `d z_k = (g_k, v)/D z_k`.
    pub fn weights(&self, v: &[Rat]) -> Vec<Rat> {
        let d = Rat::from_integer(self.denom.into());
        self.gens.iter().map(|g| linalg::pair(&self.form, g, v) / &d).collect()
    }

    pub fn derive(&self, f: &ExpRational, v: &[Rat]) -> ExpRational {
        if self.nvars() == 0 {
            return ExpRational::zero(0);
        }
        f.derive(&self.weights(v))
    }

    /// Re-expresses `f` in the refined context `refine(k)`: same function,
    /// exponents multiplied by `k` (so `z` becomes `w^k`).
    pub fn embed(&self, f: &ExpRational, k: u32) -> ExpRational {
        f.scale_exponents(k as i32)
    }

    /// `lambda -> 2 lambda`.
    pub fn square(&self, f: &ExpRational) -> ExpRational {
        f.scale_exponents(2)
    }

    /// `lambda -> lambda / 2`, landing in `refine(2)`: the data is unchanged,
    /// only the meaning of the variables halves.
    pub fn half(&self, f: &ExpRational) -> (CoeffContext, ExpRational) {
        (self.refine(2), f.clone())
    }

    pub fn render(&self, f: &ExpRational) -> String {
        f.render(self.var_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, one};
    use alloc::vec;

    fn sl3_h() -> CoeffContext {
        let form = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let restricted = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        CoeffContext::new(&restricted, &form, 1)
    }

    #[test]
    fn exp_of_additive() {
        let c = sl3_h();
        let e = c.exp_of(&[one(), one()]).unwrap();
        assert_eq!(e, ExpRational::monomial(vec![1, 1], one()));
        assert_eq!(c.exp_of(&[int(0), int(0)]).unwrap(), c.one());
        assert!(c.exp_of(&[crate::rational::frac(1, 2), int(0)]).is_err());
        assert!(c.refine(2).exp_of(&[crate::rational::frac(1, 2), int(0)]).is_ok());
    }

    #[test]
    fn half_square_roundtrip() {
        let c = sl3_h();
        let f = c.one_minus_inv(&[one(), int(0)]).unwrap();
        let (c2, h) = c.half(&f);
        let back = c2.square(&h);
        assert_eq!(back, c.embed(&f, 2));
        assert_eq!(c2.render(&c.embed(&ExpRational::monomial(vec![1, 0], one()), 2)), "w1^2");
    }
}
