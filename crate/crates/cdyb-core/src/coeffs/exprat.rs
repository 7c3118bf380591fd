//! Rational functions in exponential variables.
//!
//! A value is `num / prod(f_i^e_i)` where `num` is a Laurent polynomial and
//! every `f_i` is a normalized polynomial (see [`Poly::normalize`]). Factors
//! are cancelled by exact trial division; equality and the zero test are exact
//! without a canonical form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Zero};

use super::poly::{Mono, Poly};
use crate::error::{Error, Result};
use crate::rational::{one, pow, zero, Rat};

#[derive(Clone, Debug)]
pub struct ExpRational {
    n: usize,
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl PartialEq for ExpRational {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl ExpRational {
    pub fn zero(n: usize) -> Self {
        ExpRational { n, num: Poly::zero(), den: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        ExpRational { n, num: Poly::constant(n, c), den: Vec::new() }
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        ExpRational { n: m.len(), num: Poly::monomial(m, c), den: Vec::new() }
    }

    pub fn from_poly(n: usize, p: Poly) -> Self {
        ExpRational { n, num: p, den: Vec::new() }
    }

    /// `1 / (1 - z^m)`.
    pub fn one_minus_inv(m: Mono) -> Result<Self> {
        let n = m.len();
        let p = Poly::constant(n, one()).sub(&Poly::monomial(m, one()));
        Self::from_poly(n, p).inv()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn neg(&self) -> Self {
        ExpRational { n: self.n, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero(self.n);
        }
        ExpRational { n: self.n, num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn mul_mono(&self, m: &[i32]) -> Self {
        ExpRational { n: self.n, num: self.num.shift(m), den: self.den.clone() }
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.div_exact(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
        self
    }

    fn merge_den(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> = a.to_vec();
        for (f, e) in b {
            match out.binary_search_by(|(g, _)| g.cmp(f)) {
                Ok(i) => out[i].1 += e,
                Err(i) => out.insert(i, (f.clone(), *e)),
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        ExpRational { n: self.n, num: self.num.mul(&other.num), den: Self::merge_den(&self.den, &other.den) }
            .reduced()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("inverse of zero".into()));
        }
        let (s, shift, f) = self.num.normalize();
        let neg: Mono = shift.iter().map(|x| -x).collect();
        let mut num = Poly::monomial(neg, s.recip());
        for (g, e) in &self.den {
            num = num.mul(&g.pow(*e as usize, self.n));
        }
        let den = if f.as_constant().is_some() { Vec::new() } else { vec![(f, 1)] };
        Ok(ExpRational { n: self.n, num, den }.reduced())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::sum(self.n, [self.clone(), other.clone()].iter())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::sum(self.n, [self.clone(), other.neg()].iter())
    }

    /// Sum over a common denominator with a single cancellation pass.
    pub fn sum<'a, I: Iterator<Item = &'a ExpRational>>(n: usize, items: I) -> Self {
        let items: Vec<&ExpRational> = items.filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return Self::zero(n),
            1 => return items[0].clone(),
            _ => {}
        }
        if items.iter().all(|x| x.den.is_empty()) {
            let mut num = Poly::zero();
            for x in &items {
                num.add_assign(&x.num);
            }
            return ExpRational { n, num, den: Vec::new() };
        }
        let mut lcm: Vec<(Poly, u32)> = Vec::new();
        for x in &items {
            for (f, e) in &x.den {
                match lcm.binary_search_by(|(g, _)| g.cmp(f)) {
                    Ok(i) => lcm[i].1 = lcm[i].1.max(*e),
                    Err(i) => lcm.insert(i, (f.clone(), *e)),
                }
            }
        }
        let mut num = Poly::zero();
        for x in &items {
            let mut t = x.num.clone();
            for (f, e) in &lcm {
                let have = x.den.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
                for _ in have..*e {
                    t = t.mul(f);
                }
            }
            num.add_assign(&t);
        }
        ExpRational { n, num, den: lcm }.reduced()
    }

    /// Derivation with `d(z^m) = (m . w) z^m`, extended by the quotient rule.
    pub fn derive(&self, w: &[Rat]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if self.den.is_empty() {
            return ExpRational { n: self.n, num: self.num.derive(w), den: Vec::new() };
        }
        // f' = (N' prod F - N sum e_i F_i' prod_{j != i} F_j) / prod F^{e+1}
        let full: Poly = self.den.iter().fold(Poly::constant(self.n, one()), |acc, (f, _)| acc.mul(f));
        let mut num = self.num.derive(w).mul(&full);
        for (i, (f, e)) in self.den.iter().enumerate() {
            let others = self
                .den
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Poly::constant(self.n, one()), |acc, (_, (g, _))| acc.mul(g));
            let t = self.num.mul(&f.derive(w)).mul(&others).scale(&Rat::from_integer((*e).into()));
            num = num.sub(&t);
        }
        let den = self.den.iter().map(|(f, e)| (f.clone(), e + 1)).collect();
        ExpRational { n: self.n, num, den }.reduced()
    }

    /// Applies a monomial substitution homomorphism into `n_out` variables.
    pub fn map_monomials<F: Fn(&Mono) -> (Rat, Mono)>(&self, n_out: usize, f: F) -> Result<Self> {
        let mut out = ExpRational { n: n_out, num: self.num.map_monomials(&f), den: Vec::new() };
        for (g, e) in &self.den {
            let img = g.map_monomials(&f);
            if img.is_zero() {
                return Err(Error::Pole("substitution annihilates a denominator factor".into()));
            }
            let d = ExpRational::from_poly(n_out, img).inv()?;
            for _ in 0..*e {
                out = out.mul(&d);
            }
        }
        Ok(out)
    }

    /// `lambda -> k * lambda`: every exponent is multiplied by `k`.
    pub fn scale_exponents(&self, k: i32) -> Self {
        self.map_monomials(self.n, |m| (one(), m.iter().map(|e| e * k).collect()))
            .expect("exponent scaling is injective on monomials")
    }

    /// Limit as every variable tends to zero.
    pub fn limit_zero(&self) -> Result<Rat> {
        let mut d = one();
        for (f, e) in &self.den {
            let c = f.at_zero().unwrap_or_else(zero);
            if c.is_zero() {
                return Err(Error::Pole(alloc::format!("factor {} vanishes at z = 0", f.render("z"))));
            }
            d *= pow(&c, *e as i64);
        }
        let n = self.num.at_zero().ok_or_else(|| Error::Pole(alloc::format!("numerator {} has negative exponents", self.num.render("z"))))?;
        Ok(n / d)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let mut d = one();
        for (f, e) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(Error::Pole(alloc::format!("factor {} vanishes at the sample point", f.render("z"))));
            }
            d *= pow(&v, *e as i64);
        }
        if point.iter().any(|x| x.is_zero()) && self.num.terms().any(|(m, _)| m.iter().any(|&e| e < 0)) {
            return Err(Error::Pole("monomial pole at the sample point".into()));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_empty() {
            return self.num.render(var);
        }
        let mut s = String::new();
        let single = self.num.len() == 1;
        match self.num.as_constant() {
            Some(c) if c.is_one() => {}
            Some(c) if (-c.clone()).is_one() => s.push('-'),
            _ if single => {
                let _ = write!(s, "{}*", self.num.render(var));
            }
            _ => {
                let _ = write!(s, "({})*", self.num.render(var));
            }
        }
        for (i, (f, e)) in self.den.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = write!(s, "({})^-{e}", f.render(var));
        }
        s
    }
}

impl core::fmt::Display for ExpRational {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.render("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn z(e: i32) -> ExpRational {
        ExpRational::monomial(vec![e], one())
    }

    #[test]
    fn geometric_series_cancellation() {
        let a = ExpRational::one_minus_inv(vec![1]).unwrap();
        let b = ExpRational::one_minus_inv(vec![-1]).unwrap();
        // 1/(1-z) + 1/(1-1/z) = 1
        assert_eq!(a.add(&b).as_constant(), Some(int(1)));
        let c = ExpRational::one_minus_inv(vec![2]).unwrap();
        let d = ExpRational::one_minus_inv(vec![1]).unwrap().mul(&z(1).add(&ExpRational::one(1)).inv().unwrap());
        assert_eq!(c, d);
    }

    #[test]
    fn quotient_rule() {
        // d/dz of 1/(1-z) with weight g gives g z/(1-z)^2
        let f = ExpRational::one_minus_inv(vec![1]).unwrap();
        let g = frac(3, 2);
        let lhs = f.derive(core::slice::from_ref(&g));
        let rhs = z(1).mul(&f).mul(&f).scale(&g);
        assert_eq!(lhs, rhs);
        assert!(ExpRational::constant(1, int(4)).derive(&[g]).is_zero());
    }

    #[test]
    fn limits_and_substitution() {
        let f = ExpRational::one_minus_inv(vec![1]).unwrap();
        assert_eq!(f.limit_zero().unwrap(), int(1));
        let g = ExpRational::one_minus_inv(vec![-1]).unwrap();
        assert_eq!(g.limit_zero().unwrap(), int(0));
        assert!(z(-1).limit_zero().is_err());
        assert_eq!(f.scale_exponents(2), ExpRational::one_minus_inv(vec![2]).unwrap());
        assert_eq!(f.render("z"), "-(z1 - 1)^-1");
    }
}
