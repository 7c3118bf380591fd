//! Sparse Laurent polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow, zero, Rat};

pub type Mono = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial has only the zero monomial.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, q: &Rat) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn shift(&self, s: &[i32]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(s).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return other.shift(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms.iter().next().unwrap();
            return self.shift(m).scale(c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: usize, nvars: usize) -> Poly {
        let mut acc = Poly::constant(nvars, Rat::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum exponent.
    pub fn min_exponents(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for m in it {
            for (a, b) in acc.iter_mut().zip(m) {
                *a = (*a).min(*b);
            }
        }
        Some(acc)
    }

    /// Exact division by a normalized factor `f` (nonnegative exponents, no
    /// monomial content). Returns `None` if `f` does not divide `self`.
    pub fn div_exact(&self, f: &Poly) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lo = self.min_exponents().unwrap();
        let neg: Mono = lo.iter().map(|x| -x).collect();
        let mut p = self.shift(&neg);
        let (lf, lc) = f.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Poly::zero();
        while let Some((lm, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.iter().zip(&lf).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Mono = lm.iter().zip(&lf).map(|(a, b)| a - b).collect();
            let qc = c / &lc;
            let t = f.shift(&qm).scale(&qc);
            p = p.sub(&t);
            q.add_term(qm, qc);
        }
        Some(q.shift(&lo))
    }

    /// Writes `self = scalar * z^shift * normal` with `normal` having
    /// nonnegative exponents, minimum exponent zero in each variable,
    /// coprime integer coefficients and positive leading coefficient.
    pub fn normalize(&self) -> (Rat, Mono, Poly) {
        let lo = self.min_exponents().expect("normalize of zero polynomial");
        let neg: Mono = lo.iter().map(|x| -x).collect();
        let p = self.shift(&neg);
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in p.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut scalar = Rat::new(num, den);
        if p.leading().unwrap().1.is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        (scalar, lo, p.scale(&inv))
    }

    /// Derivation with `d(z^m) = (m . w) z^m`.
    pub fn derive(&self, w: &[Rat]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let f = m.iter().zip(w).fold(zero(), |s, (e, wi)| s + Rat::from_integer((*e).into()) * wi);
            out.add_term(m.clone(), c * f);
        }
        out
    }

    /// Applies a monomial substitution `z^m -> scale(m) * z^{image(m)}`.
    pub fn map_monomials<F: Fn(&Mono) -> (Rat, Mono)>(&self, f: &F) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (s, m2) = f(m);
            out.add_term(m2, c * s);
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.terms.iter().fold(zero(), |s, (m, c)| {
            s + m.iter().zip(point).fold(c.clone(), |acc, (e, x)| acc * pow(x, *e as i64))
        })
    }

    /// Value at z = 0 when no negative exponents occur.
    pub fn at_zero(&self) -> Option<Rat> {
        if self.terms.keys().any(|m| m.iter().any(|&e| e < 0)) {
            return None;
        }
        Some(self.terms.iter().find(|(m, _)| m.iter().all(|&e| e == 0)).map(|(_, c)| c.clone()).unwrap_or_else(zero))
    }

    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_mono(m, var);
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{a}*{mono}");
            }
        }
        s
    }
}

pub fn render_mono(m: &[i32], var: &str) -> String {
    let mut s = String::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "{var}{}", k + 1);
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(terms: &[(&[i32], i64)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in terms {
            out.add_term(m.to_vec(), int(*c));
        }
        out
    }

    #[test]
    fn exact_division() {
        let f = p(&[(&[1], 1), (&[0], -1)]);
        let g = p(&[(&[2], 1), (&[0], -1)]);
        assert_eq!(g.div_exact(&f).unwrap(), p(&[(&[1], 1), (&[0], 1)]));
        let h = p(&[(&[2], 1), (&[0], 1)]);
        assert!(h.div_exact(&f).is_none());
        let lau = p(&[(&[0], 1), (&[-1], -1)]);
        assert_eq!(lau.div_exact(&f).unwrap(), p(&[(&[-1], 1)]));
    }

    #[test]
    fn normalize_extracts_content() {
        let q = p(&[(&[-1], 2), (&[0], -2)]);
        let (s, sh, n) = q.normalize();
        assert_eq!(n, p(&[(&[1], 1), (&[0], -1)]));
        assert_eq!(sh, vec![-1]);
        assert_eq!(n.shift(&sh).scale(&s), q);
        assert_eq!(q.render("z"), "-2 + 2*z1^-1");
    }
}
