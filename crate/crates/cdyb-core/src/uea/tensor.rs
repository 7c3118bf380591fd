//! Sparse tensors over U(g) with rational-function coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::word::Word;
use crate::coeffs::ExpRational;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Flattened word tuple: for each leg, its length followed by its letters.
/// Lexicographic order compares leg 1 by degree then letters, then leg 2, ...
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(Vec<u8>);

impl Key {
    pub fn from_words<W: AsRef<[u8]>>(words: &[W]) -> Key {
        let mut v = Vec::with_capacity(words.iter().map(|w| w.as_ref().len() + 1).sum());
        for w in words {
            v.push(w.as_ref().len() as u8);
            v.extend_from_slice(w.as_ref());
        }
        Key(v)
    }

    pub fn unit(legs: usize) -> Key {
        Key(alloc::vec![0; legs])
    }

    pub fn words(&self) -> Vec<&[u8]> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let n = self.0[i] as usize;
            out.push(&self.0[i + 1..i + 1 + n]);
            i += 1 + n;
        }
        out
    }

    pub fn word(&self, leg: usize) -> &[u8] {
        self.words()[leg]
    }

    pub fn with_word(&self, leg: usize, w: &[u8]) -> Key {
        let mut ws: Vec<Word> = self.words().into_iter().map(|x| x.to_vec()).collect();
        ws[leg] = w.to_vec();
        Key::from_words(&ws)
    }
}

#[derive(Clone, Debug)]
pub struct Tensor {
    legs: usize,
    nvars: usize,
    terms: BTreeMap<Key, ExpRational>,
}

/// Collects contributions and sums each coefficient once.
pub struct Acc {
    legs: usize,
    nvars: usize,
    map: BTreeMap<Key, Vec<ExpRational>>,
}

impl Acc {
    pub fn new(legs: usize, nvars: usize) -> Self {
        Acc { legs, nvars, map: BTreeMap::new() }
    }

    pub fn push(&mut self, key: Key, c: ExpRational) {
        if !c.is_zero() {
            self.map.entry(key).or_default().push(c);
        }
    }

    pub fn push_tensor(&mut self, t: &Tensor) {
        for (k, c) in &t.terms {
            self.push(k.clone(), c.clone());
        }
    }

    pub fn push_scaled(&mut self, t: &Tensor, q: &Rat) {
        for (k, c) in &t.terms {
            self.push(k.clone(), c.scale(q));
        }
    }

    pub fn finish(self) -> Tensor {
        let n = self.nvars;
        let terms = self
            .map
            .into_iter()
            .filter_map(|(k, v)| {
                let s = ExpRational::sum(n, v.iter());
                (!s.is_zero()).then_some((k, s))
            })
            .collect();
        Tensor { legs: self.legs, nvars: n, terms }
    }
}

impl Tensor {
    pub fn zero(legs: usize, nvars: usize) -> Self {
        Tensor { legs, nvars, terms: BTreeMap::new() }
    }

    pub fn term<W: AsRef<[u8]>>(words: &[W], c: ExpRational) -> Self {
        let mut t = Tensor::zero(words.len(), c.nvars());
        if !c.is_zero() {
            t.terms.insert(Key::from_words(words), c);
        }
        t
    }

    pub fn from_terms(legs: usize, nvars: usize, terms: BTreeMap<Key, ExpRational>) -> Self {
        Tensor { legs, nvars, terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &ExpRational)> {
        self.terms.iter()
    }

    pub fn get(&self, k: &Key) -> Option<&ExpRational> {
        self.terms.get(k)
    }

    /// Least nonzero term in canonical order.
    pub fn witness(&self) -> Option<(&Key, &ExpRational)> {
        self.terms.iter().next()
    }

    pub fn max_leg_degree(&self) -> usize {
        self.terms.keys().flat_map(|k| k.words().into_iter().map(|w| w.len()).collect::<Vec<_>>()).max().unwrap_or(0)
    }

    fn check_shape(&self, other: &Tensor) {
        assert_eq!(self.legs, other.legs, "leg count mismatch");
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.check_shape(other);
        let mut acc = Acc::new(self.legs, self.nvars);
        acc.push_tensor(self);
        acc.push_tensor(other);
        acc.finish()
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.check_shape(other);
        let mut acc = Acc::new(self.legs, self.nvars);
        acc.push_tensor(self);
        acc.push_scaled(other, &-crate::rational::one());
        acc.finish()
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Tensor>>(legs: usize, nvars: usize, items: I) -> Tensor {
        let mut acc = Acc::new(legs, nvars);
        for t in items {
            assert_eq!(t.legs, legs, "leg count mismatch");
            acc.push_tensor(t);
        }
        acc.finish()
    }

    pub fn neg(&self) -> Tensor {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, q: &Rat) -> Tensor {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn scale_by(&self, f: &ExpRational) -> Tensor {
        self.map_coeffs(|c| c.mul(f))
    }

    pub fn map_coeffs<F: Fn(&ExpRational) -> ExpRational>(&self, f: F) -> Tensor {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (k.clone(), d))
            })
            .collect();
        Tensor { legs: self.legs, nvars: self.nvars, terms }
    }

    pub fn try_map_coeffs<F: Fn(&ExpRational) -> Result<ExpRational>>(&self, nvars: usize, f: F) -> Result<Tensor> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(k.clone(), d);
            }
        }
        Ok(Tensor { legs: self.legs, nvars, terms })
    }

    /// Places leg j of `self` at position `positions[j]` among `total` legs
    /// (0-based); remaining legs carry the unit word.
    pub fn place(&self, positions: &[usize], total: usize) -> Result<Tensor> {
        if positions.len() != self.legs {
            return Err(Error::Usage(format!("{} positions given for a {}-leg element", positions.len(), self.legs)));
        }
        let mut seen = alloc::vec![false; total];
        for &p in positions {
            if p >= total || seen[p] {
                return Err(Error::Usage(format!("invalid or repeated leg position {p} (of {total})")));
            }
            seen[p] = true;
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let ws = k.words();
                let mut out: Vec<&[u8]> = alloc::vec![&[][..]; total];
                for (j, &p) in positions.iter().enumerate() {
                    out[p] = ws[j];
                }
                (Key::from_words(&out), c.clone())
            })
            .collect();
        Ok(Tensor { legs: total, nvars: self.nvars, terms })
    }

    /// `perm[j]` is the new position of leg j.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        self.place(perm, self.legs).expect("permutation")
    }

    /// The flip `x (x) y -> y (x) x` of a 2-leg element.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// Maps each coefficient and keeps only terms whose key satisfies `keep`.
    pub fn filter<F: Fn(&Key) -> bool>(&self, keep: F) -> Tensor {
        let terms = self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect();
        Tensor { legs: self.legs, nvars: self.nvars, terms }
    }

    /// Every leg word has length one.
    pub fn in_g_tensor(&self) -> bool {
        self.terms.keys().all(|k| k.words().iter().all(|w| w.len() == 1))
    }
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs && self.sub(other).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::one;
    use alloc::vec;

    #[test]
    fn place_and_key_order() {
        let c = ExpRational::one(0);
        let ab = Tensor::term(&[vec![1u8], vec![2u8]], c.clone());
        let p = ab.place(&[2, 0], 3).unwrap();
        let expect = Tensor::term(&[vec![2u8], vec![], vec![1u8]], c.clone());
        assert_eq!(p, expect);
        assert!(ab.place(&[0, 0], 3).is_err());
        assert!(ab.place(&[0, 3], 3).is_err());
        assert_eq!(ab.place(&[0, 1], 2).unwrap(), ab);
        assert!(Key::from_words(&[vec![5u8], vec![]]) < Key::from_words(&[vec![1u8, 1], vec![]]));
        let _ = one();
    }
}
