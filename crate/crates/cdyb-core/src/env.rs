//! Evaluation environment: an algebra, a subspace of h, the coefficient
//! context it induces, and a memo table for PBW word products.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::Zero;

use crate::cartan::{LetterMap, LieAlgebra, Subspace};
use crate::coeffs::{CoeffContext, ExpRational};
use crate::error::{Error, Result};
use crate::rational::{one, Rat};
use crate::uea::{self, insert_cartan, Acc, Key, Tensor, Word};

pub const DEFAULT_MAX_DEGREE: usize = 6;

type Product = Rc<Vec<(Word, Rat)>>;

/// Not `Sync`: build one per worker thread.
pub struct Env {
    lie: Arc<LieAlgebra>,
    sub: Subspace,
    ctx: CoeffContext,
    max_degree: usize,
    memo: RefCell<BTreeMap<(Word, Word), Product>>,
}

impl Env {
    pub fn new(lie: Arc<LieAlgebra>, sub: Subspace, denom: u32) -> Self {
        let ctx = sub.context(&lie, denom);
        Env { lie, sub, ctx, max_degree: DEFAULT_MAX_DEGREE, memo: RefCell::new(BTreeMap::new()) }
    }

    /// Full Cartan subalgebra, variables `e^{(alpha_i, lambda)}`.
    pub fn full(lie: Arc<LieAlgebra>) -> Self {
        let sub = Subspace::full(&lie);
        Self::new(lie, sub, 1)
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = d;
        self
    }

    /// Same algebra and subspace with the common denominator multiplied by `k`.
    pub fn refined(&self, k: u32) -> Env {
        Env {
            lie: self.lie.clone(),
            sub: self.sub.clone(),
            ctx: self.ctx.refine(k),
            max_degree: self.max_degree,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn lie_arc(&self) -> Arc<LieAlgebra> {
        self.lie.clone()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    pub fn ctx(&self) -> &CoeffContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn zero(&self, legs: usize) -> Tensor {
        Tensor::zero(legs, self.nvars())
    }

    pub fn constant(&self, q: Rat) -> ExpRational {
        self.ctx.constant(q)
    }

    /// The unit of `U^{(x) legs}`.
    pub fn unit(&self, legs: usize) -> Tensor {
        Tensor::term(&alloc::vec![Word::new(); legs], self.ctx.one())
    }

    /// A term with rational coefficient.
    pub fn term<W: AsRef<[u8]>>(&self, words: &[W], q: Rat) -> Tensor {
        Tensor::term(words, self.ctx.constant(q))
    }

    /// Sum of `coeff * a (x) b` over the given linear combinations of letters.
    pub fn pair_term(&self, a: &[(usize, Rat)], b: &[(usize, Rat)], coeff: &ExpRational) -> Tensor {
        let mut acc = Acc::new(2, self.nvars());
        for (x, p) in a {
            for (y, q) in b {
                acc.push(Key::from_words(&[[*x as u8], [*y as u8]]), coeff.scale(&(p * q)));
            }
        }
        acc.finish()
    }

    /// Sum of `coeff * a` over a linear combination of letters.
    pub fn lin_term(&self, a: &[(usize, Rat)], coeff: &ExpRational) -> Tensor {
        let mut acc = Acc::new(1, self.nvars());
        for (x, p) in a {
            acc.push(Key::from_words(&[[*x as u8]]), coeff.scale(p));
        }
        acc.finish()
    }

    /// PBW expansion of the product of two PBW words.
    pub fn word_mul(&self, a: &[u8], b: &[u8]) -> Result<Product> {
        if a.is_empty() {
            return Ok(Rc::new(alloc::vec![(b.to_vec(), one())]));
        }
        if b.is_empty() {
            return Ok(Rc::new(alloc::vec![(a.to_vec(), one())]));
        }
        let degree = a.len() + b.len();
        if degree > self.max_degree {
            return Err(Error::Degree { degree, cap: self.max_degree });
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(p) = self.memo.borrow().get(&key) {
            return Ok(p.clone());
        }
        let mut seq = a.to_vec();
        seq.extend_from_slice(b);
        let p = Rc::new(uea::normal_order(&self.lie, &seq));
        self.memo.borrow_mut().insert(key, p.clone());
        Ok(p)
    }

    /// `ab - ba` for two PBW words.
    pub fn word_bracket(&self, a: &[u8], b: &[u8]) -> Result<Vec<(Word, Rat)>> {
        let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
        for (w, c) in self.word_mul(a, b)?.iter() {
            *out.entry(w.clone()).or_insert_with(Rat::zero) += c;
        }
        for (w, c) in self.word_mul(b, a)?.iter() {
            *out.entry(w.clone()).or_insert_with(Rat::zero) -= c;
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Legwise product of two word tuples as a list of (key, scalar).
    fn key_product(&self, a: &[&[u8]], b: &[&[u8]]) -> Result<Vec<(Vec<Word>, Rat)>> {
        let mut partial: Vec<(Vec<Word>, Rat)> = alloc::vec![(Vec::new(), one())];
        for (x, y) in a.iter().zip(b) {
            let prod = self.word_mul(x, y)?;
            let mut next = Vec::with_capacity(partial.len() * prod.len());
            for (ws, c) in &partial {
                for (w, d) in prod.iter() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * d));
                }
            }
            partial = next;
        }
        Ok(partial)
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        check_legs(x, y)?;
        let mut acc = Acc::new(x.legs(), self.nvars());
        for (kx, cx) in x.iter() {
            let wx = kx.words();
            for (ky, cy) in y.iter() {
                let c = cx.mul(cy);
                for (ws, q) in self.key_product(&wx, &ky.words())? {
                    acc.push(Key::from_words(&ws), c.scale(&q));
                }
            }
        }
        Ok(acc.finish())
    }

    /// `[x, y] = xy - yx`; term pairs acting on disjoint legs are skipped.
    pub fn commutator(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        check_legs(x, y)?;
        let legs = x.legs();
        let mut acc = Acc::new(legs, self.nvars());
        for (kx, cx) in x.iter() {
            let wx = kx.words();
            for (ky, cy) in y.iter() {
                let wy = ky.words();
                let overlap: Vec<usize> = (0..legs).filter(|&l| !wx[l].is_empty() && !wy[l].is_empty()).collect();
                if overlap.is_empty() {
                    continue;
                }
                let c = cx.mul(cy);
                if overlap.len() == 1 {
                    let l = overlap[0];
                    let rest: Vec<&[u8]> = (0..legs).map(|i| if wx[i].is_empty() { wy[i] } else { wx[i] }).collect();
                    for (w, q) in self.word_bracket(wx[l], wy[l])? {
                        let mut ws = rest.clone();
                        ws[l] = &w;
                        acc.push(Key::from_words(&ws), c.scale(&q));
                    }
                } else {
                    for (ws, q) in self.key_product(&wx, &wy)? {
                        acc.push(Key::from_words(&ws), c.scale(&q));
                    }
                    for (ws, q) in self.key_product(&wy, &wx)? {
                        acc.push(Key::from_words(&ws), c.scale(&-q));
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// Multiplies the legs of each group together, in order; the result has
    /// one leg per group. `contract(s, &[&[0, 1]])` is the multiplication map.
    pub fn contract(&self, x: &Tensor, groups: &[&[usize]]) -> Result<Tensor> {
        let mut seen = alloc::vec![false; x.legs()];
        for g in groups {
            for &l in *g {
                if l >= x.legs() || seen[l] {
                    return Err(Error::Usage(format!("invalid contraction of leg {l}")));
                }
                seen[l] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Usage("every leg must be contracted into some group".into()));
        }
        let mut acc = Acc::new(groups.len(), self.nvars());
        for (k, c) in x.iter() {
            let ws = k.words();
            let mut partial: Vec<(Vec<Word>, Rat)> = alloc::vec![(Vec::new(), one())];
            for g in groups {
                let mut prods: Vec<(Word, Rat)> = alloc::vec![(Word::new(), one())];
                for &l in *g {
                    let mut next = Vec::new();
                    for (w, q) in &prods {
                        for (v, p) in self.word_mul(w, ws[l])?.iter() {
                            next.push((v.clone(), q * p));
                        }
                    }
                    prods = next;
                }
                let mut next = Vec::new();
                for (pw, pq) in &partial {
                    for (w, q) in &prods {
                        let mut v = pw.clone();
                        v.push(w.clone());
                        next.push((v, pq * q));
                    }
                }
                partial = next;
            }
            for (ws, q) in partial {
                acc.push(Key::from_words(&ws), c.scale(&q));
            }
        }
        Ok(acc.finish())
    }

    pub fn mult_map(&self, s: &Tensor) -> Result<Tensor> {
        if s.legs() != 2 {
            return Err(Error::Usage(format!("multiplication map needs 2 legs, got {}", s.legs())));
        }
        self.contract(s, &[&[0, 1]])
    }

    /// Applies a letter automorphism on one leg and re-normal-orders.
    pub fn apply_map(&self, x: &Tensor, leg: usize, map: &LetterMap) -> Result<Tensor> {
        check_leg(x, leg)?;
        let mut acc = Acc::new(x.legs(), self.nvars());
        for (k, c) in x.iter() {
            let mut ws: Vec<Word> = k.words().into_iter().map(|w| w.to_vec()).collect();
            let mut scalar = one();
            let mut seq = Word::with_capacity(ws[leg].len());
            for &a in &ws[leg] {
                let (b, s) = map.apply(a as usize);
                seq.push(*b as u8);
                scalar *= s;
            }
            let terms = if uea::is_ordered(&seq) { alloc::vec![(seq, one())] } else { uea::normal_order(&self.lie, &seq) };
            for (w, q) in terms {
                ws[leg] = w;
                acc.push(Key::from_words(&ws), c.scale(&(&scalar * q)));
            }
        }
        Ok(acc.finish())
    }

    /// `eta(x) = xi_{-mu} x` on the given leg (`inverse` uses `xi_{mu}`).
    pub fn eta(&self, x: &Tensor, leg: usize, inverse: bool) -> Result<Tensor> {
        check_leg(x, leg)?;
        if !self.sub.is_full() {
            return Err(Error::Unsupported("the eta twist needs the full Cartan subalgebra".into()));
        }
        let mut acc = Acc::new(x.legs(), self.nvars());
        for (k, c) in x.iter() {
            let mu: Vec<Rat> = uea::weight(&self.lie, k.word(leg))
                .into_iter()
                .map(|m| Rat::from_integer((if inverse { m } else { -m }).into()))
                .collect();
            acc.push(k.clone(), c.mul(&self.ctx.exp_of(&mu)?));
        }
        Ok(acc.finish())
    }

    /// `E_leg(x) = sum_j (x_j)_leg d_{lambda_j} x`, left multiplication.
    pub fn apply_e(&self, x: &Tensor, leg: usize) -> Result<Tensor> {
        self.apply_e_basis(x, leg, &self.sub)
    }

    /// `E_leg` computed with the basis and dual basis of `basis_of`, which must
    /// span the same subspace as this environment's.
    pub fn apply_e_basis(&self, x: &Tensor, leg: usize, basis_of: &Subspace) -> Result<Tensor> {
        check_leg(x, leg)?;
        let n = self.lie.rank();
        let dirs: Vec<Vec<Rat>> = (0..n)
            .map(|c| {
                (0..n)
                    .map(|i| {
                        basis_of
                            .basis()
                            .iter()
                            .zip(basis_of.dual())
                            .fold(Rat::zero(), |s, (xj, dj)| s + &xj[c] * &dj[i])
                    })
                    .collect()
            })
            .collect();
        let mut acc = Acc::new(x.legs(), self.nvars());
        for (k, c) in x.iter() {
            for (t, v) in dirs.iter().enumerate() {
                if v.iter().all(|q| q.is_zero()) {
                    continue;
                }
                let d = self.ctx.derive(c, v);
                if d.is_zero() {
                    continue;
                }
                let w = insert_cartan(k.word(leg), t as u8);
                if w.len() > self.max_degree {
                    return Err(Error::Degree { degree: w.len(), cap: self.max_degree });
                }
                acc.push(k.with_word(leg, &w), d);
            }
        }
        Ok(acc.finish())
    }

    /// Coefficientwise directional derivative along a vector of the subspace.
    pub fn derive(&self, x: &Tensor, v: &[Rat]) -> Tensor {
        x.map_coeffs(|c| self.ctx.derive(c, v))
    }

    /// Re-expresses a tensor of this environment in `refined(k)`.
    pub fn embed(&self, x: &Tensor, k: u32) -> Tensor {
        x.map_coeffs(|c| self.ctx.embed(c, k))
    }

    /// Canonical text: one `coeff * w1 (x) w2 ...` term per line, sorted.
    pub fn render(&self, x: &Tensor) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in x.iter() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&self.render_term(k, c));
        }
        out
    }

    pub fn render_term(&self, k: &Key, c: &ExpRational) -> String {
        let legs: Vec<String> = k.words().iter().map(|w| uea::render(&self.lie, w)).collect();
        format!("({}) * {}", self.ctx.render(c), legs.join(" (x) "))
    }
}

fn check_legs(x: &Tensor, y: &Tensor) -> Result<()> {
    if x.legs() != y.legs() {
        return Err(Error::Usage(format!("leg count mismatch: {} vs {}", x.legs(), y.legs())));
    }
    Ok(())
}

fn check_leg(x: &Tensor, leg: usize) -> Result<()> {
    if leg >= x.legs() {
        return Err(Error::Usage(format!("leg {leg} out of range for a {}-leg element", x.legs())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLetter;
    use crate::rational::int;
    use alloc::vec;

    fn sl2() -> Env {
        Env::full(Arc::new(LieAlgebra::new(TypeLetter::A, 1).unwrap()))
    }

    #[test]
    fn commutator_in_sl2() {
        let env = sl2();
        let e = env.term(&[[2u8]], one());
        let f = env.term(&[[1u8]], one());
        let t = env.term(&[[0u8]], one());
        assert_eq!(env.commutator(&e, &f).unwrap(), t);
        assert_eq!(env.commutator(&t, &e).unwrap(), e.scale(&int(2)));
        let ef = env.mul(&e, &f).unwrap();
        assert_eq!(ef, env.term(&[vec![1u8, 2]], one()).add(&t));
    }

    #[test]
    fn degree_guard() {
        let env = sl2().with_max_degree(2);
        let e = env.term(&[[2u8, 2]], one());
        assert!(matches!(env.mul(&e, &e), Err(Error::Degree { .. })));
    }

    #[test]
    fn eta_weights() {
        let env = sl2();
        let e = env.term(&[[2u8]], one());
        let twisted = env.eta(&e, 0, false).unwrap();
        let expect = Tensor::term(&[[2u8]], env.ctx().exp_of(&[int(-1)]).unwrap());
        assert_eq!(twisted, expect);
        let t = env.term(&[[0u8]], one());
        assert_eq!(env.eta(&t, 0, false).unwrap(), t);
    }
}
