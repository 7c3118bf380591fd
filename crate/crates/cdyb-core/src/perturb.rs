//! Seeded perturbations for testing identities on non-solutions.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cartan::{to_rat, LetterMap};
use crate::coeffs::ExpRational;
use crate::env::Env;
use crate::error::Result;
use crate::rational::{frac, Rat};
use crate::uea::{self, Tensor};
use crate::verify::{identity_check, Identity, IdentityInputs, Residual};

/// Deterministic source of perturbation terms.
pub struct Perturber {
    rng: ChaCha8Rng,
}

impl Perturber {
    pub fn new(seed: u64) -> Self {
        Perturber { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u32() as usize) % n
    }

    /// A sample point: `nvars` values `+-p/q` with `2 <= p <= 7`, `q <= 3`, `p != q`.
    pub fn point(&mut self, nvars: usize) -> Vec<Rat> {
        (0..nvars)
            .map(|_| loop {
                let p = 2 + self.below(6) as i64;
                let q = 1 + self.below(3) as i64;
                if p != q {
                    break if self.below(2) == 0 { frac(p, q) } else { frac(-p, q) };
                }
            })
            .collect()
    }

    /// A nonzero rational `p/q` with `|p| <= 3`, `q <= 3`.
    pub fn epsilon(&mut self) -> Rat {
        let p = 1 + self.below(3) as i64;
        let q = 1 + self.below(3) as i64;
        if self.below(2) == 0 {
            frac(p, q)
        } else {
            frac(-p, q)
        }
    }

    /// `1`, `e^{(alpha, lambda)}` or `1/(1 - e^{(alpha, lambda)})` for a random positive root
    /// (falls back to `1` when the root vanishes on the subspace).
    pub fn coefficient(&mut self, env: &Env) -> ExpRational {
        let roots = &env.lie().roots.positive;
        let alpha = to_rat(&roots[self.below(roots.len())]);
        let fallback = env.ctx().one();
        match self.below(3) {
            0 => fallback,
            1 => env.ctx().exp_of(&alpha).unwrap_or(fallback),
            _ => env.ctx().one_minus_inv(&alpha).unwrap_or(fallback),
        }
    }

    /// `eps * c * e_b (x) e_c` for random letters.
    pub fn arbitrary(&mut self, env: &Env) -> Tensor {
        let dim = env.lie().dim();
        let (b, c) = (self.below(dim) as u8, self.below(dim) as u8);
        let eps = self.epsilon();
        Tensor::term(&[[b], [c]], self.coefficient(env).scale(&eps))
    }

    /// `eps * c * (theta (x) id)(x (x) y + y (x) x)` with `x, y` of equal weight on the
    /// subspace: twisted symmetric and invariant.
    pub fn twisted_symmetric(&mut self, env: &Env, theta: &LetterMap) -> Result<Tensor> {
        let lie = env.lie();
        let sub = env.subspace();
        let letters: Vec<u8> = (0..lie.dim() as u8).collect();
        let x = letters[self.below(letters.len())];
        let wx = sub.restriction(&to_rat(&uea::weight(lie, &[x])));
        let partners: Vec<u8> = letters.iter().copied().filter(|&y| sub.restriction(&to_rat(&uea::weight(lie, &[y]))) == wx).collect();
        let y = partners[self.below(partners.len())];
        let eps = self.epsilon();
        let c = self.coefficient(env).scale(&eps);
        let sym = Tensor::term(&[[x], [y]], c.clone()).add(&Tensor::term(&[[y], [x]], c));
        env.apply_map(&sym, 0, theta)
    }

    /// `r` plus `count` arbitrary terms.
    pub fn perturb(&mut self, env: &Env, r: &Tensor, count: usize) -> Tensor {
        (0..count).fold(r.clone(), |acc, _| acc.add(&self.arbitrary(env)))
    }

    /// A one-leg term `m(eps * c * e_b (x) e_c)`.
    pub fn single(&mut self, env: &Env) -> Result<Tensor> {
        env.mult_map(&self.arbitrary(env))
    }

    /// Evaluates an identity on inputs perturbed away from `r` (and its fold along
    /// `theta`), so that the hypotheses of the identity hold but the equations do not.
    pub fn identity(&mut self, env: &Env, id: Identity, r: &Tensor, theta: &LetterMap) -> Result<Vec<Residual>> {
        let rt = env.apply_map(r, 0, theta)?;
        let half = frac(1, 2);
        let (rp0, rm0) = (rt.add(r).scale(&half), rt.sub(r).scale(&half));
        match id {
            Identity::FoldedCyb(_) | Identity::FoldedReflection => {
                let rr = self.perturb_twisted(env, r, theta, 2)?;
                identity_check(env, id, &IdentityInputs { r: Some(&rr), theta: Some(theta), ..Default::default() })
            }
            Identity::Reduction => {
                let rr = self.perturb(env, r, 2);
                let k = self.single(env)?.add(&self.single(env)?);
                identity_check(env, id, &IdentityInputs { r: Some(&rr), kappa: Some(&k), ..Default::default() })
            }
            _ => {
                let rp = self.perturb(env, &rp0, 2);
                let rm = self.perturb(env, &rm0, 2);
                let kl = self.arbitrary(env);
                let kr = self.arbitrary(env);
                let core = self.single(env)?;
                let k = kl.place(&[0, 1], 3)?.add(&kr.place(&[1, 2], 3)?);
                let inputs = IdentityInputs {
                    r_plus: Some(&rp),
                    r_minus: Some(&rm),
                    kappa: Some(&k),
                    kappa_core: Some(&core),
                    kappa_left: Some(&kl),
                    kappa_right: Some(&kr),
                    ..Default::default()
                };
                identity_check(env, id, &inputs)
            }
        }
    }

    /// `r` plus `count` twisted symmetric invariant terms.
    pub fn perturb_twisted(&mut self, env: &Env, r: &Tensor, theta: &LetterMap, count: usize) -> Result<Tensor> {
        (0..count).try_fold(r.clone(), |acc, _| Ok(acc.add(&self.twisted_symmetric(env, theta)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{LieAlgebra, TypeLetter};
    use crate::fold;
    use crate::rmat;
    use crate::verify;
    use alloc::sync::Arc;

    #[test]
    fn identities_on_perturbations() {
        let env = Env::full(Arc::new(LieAlgebra::new(TypeLetter::A, 1).unwrap()));
        let theta = LetterMap::sigma(env.lie());
        let r = rmat::felder_r(&env).unwrap();
        for id in Identity::ALL {
            for seed in 0..3 {
                for res in Perturber::new(seed).identity(&env, id, &r, &theta).unwrap() {
                    assert!(res.is_zero(), "{} seed {seed}: {}", id.name(), res.tag);
                }
            }
        }
    }

    #[test]
    fn seeded_and_structured() {
        let env = Env::full(Arc::new(LieAlgebra::new(TypeLetter::A, 2).unwrap()));
        let theta = LetterMap::sigma(env.lie());
        let r = rmat::felder_r(&env).unwrap();
        for seed in 0..10 {
            let a = Perturber::new(seed).perturb_twisted(&env, &r, &theta, 2).unwrap();
            let b = Perturber::new(seed).perturb_twisted(&env, &r, &theta, 2).unwrap();
            assert_eq!(a, b);
            assert!(fold::is_twisted_symmetric(&env, &a, &theta).unwrap());
            assert!(verify::a_inv(&env, &a).unwrap().is_zero());
        }
        let some_nonsolution = (0..10).any(|s| {
            let p = Perturber::new(s).perturb(&env, &r, 1);
            !verify::yb(&env, &p).unwrap().is_zero()
        });
        assert!(some_nonsolution);
    }
}
