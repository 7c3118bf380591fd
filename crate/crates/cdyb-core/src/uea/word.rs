//! PBW words and straightening.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Zero;

use crate::cartan::{LieAlgebra, Root};
use crate::rational::{zero, Rat};

/// Nondecreasing sequence of letter indices; the empty word is the unit.
pub type Word = Vec<u8>;

pub fn is_ordered(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// Rewrites a letter sequence in the PBW basis via `ab = ba + [a,b]`.
pub fn normal_order(lie: &LieAlgebra, seq: &[u8]) -> Vec<(Word, Rat)> {
    let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
    let mut stack: Vec<(Word, Rat)> = alloc::vec![(seq.to_vec(), crate::rational::one())];
    while let Some((w, c)) = stack.pop() {
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => *out.entry(w).or_insert_with(zero) += c,
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                stack.push((swapped, c.clone()));
                for (l, k) in lie.bracket(a as usize, b as usize) {
                    let mut v = Vec::with_capacity(w.len() - 1);
                    v.extend_from_slice(&w[..i]);
                    v.push(*l as u8);
                    v.extend_from_slice(&w[i + 2..]);
                    stack.push((v, &c * k));
                }
            }
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn weight(lie: &LieAlgebra, w: &[u8]) -> Root {
    let mut acc = alloc::vec![0; lie.rank()];
    for &l in w {
        for (a, b) in acc.iter_mut().zip(lie.weight(l as usize)) {
            *a += b;
        }
    }
    acc
}

/// Inserts a Cartan letter; Cartan letters lead every PBW word and commute.
pub fn insert_cartan(w: &[u8], c: u8) -> Word {
    let pos = w.iter().position(|&x| x > c).unwrap_or(w.len());
    let mut v = Vec::with_capacity(w.len() + 1);
    v.extend_from_slice(&w[..pos]);
    v.push(c);
    v.extend_from_slice(&w[pos..]);
    v
}

pub fn render(lie: &LieAlgebra, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(lie.name(w[i] as usize));
        if j - i > 1 {
            let _ = write!(s, "^{}", j - i);
        }
        i = j;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLetter;
    use crate::rational::one;
    use alloc::vec;

    #[test]
    fn ef_in_sl2() {
        let lie = LieAlgebra::new(TypeLetter::A, 1).unwrap();
        // letters: t = 0, f = 1, e = 2
        let r = normal_order(&lie, &[2, 1]);
        assert_eq!(r, vec![(vec![0], one()), (vec![1, 2], one())]);
        assert_eq!(normal_order(&lie, &[0, 1, 2]), vec![(vec![0, 1, 2], one())]);
        assert_eq!(render(&lie, &[0, 0, 2]), "t^2*e");
    }
}
