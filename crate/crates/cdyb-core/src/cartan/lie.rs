//! Chevalley bases and structure constants.
//!
//! Letters are ordered `t_1..t_n, e_{-beta_m}..e_{-beta_1}, e_{beta_1}..e_{beta_m}`
//! with `t_i = t_{alpha_i}`. Root vectors satisfy `[e_a, e_{-a}] = t_a`; they are
//! `e_a = E_a`, `e_{-a} = (a,a)/2 E_{-a}` for `a > 0`, where `E` is the
//! Chevalley basis fixed by positive extraspecial signs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::rootsys::{add, neg, sub, Root, RootSystem, TypeLetter};
use crate::error::Result;
use crate::linalg::{self, Mat};
use crate::rational::{frac, int, one, zero, Rat};

pub type Letter = usize;
/// Sparse linear combination of letters.
pub type LinComb = Vec<(Letter, Rat)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub roots: RootSystem,
    weights: Vec<Root>,
    root_letter: BTreeMap<Root, Letter>,
    bracket: Vec<Vec<LinComb>>,
    names: Vec<String>,
    /// Inverse Gram matrix of the t-basis.
    form_inv: Mat,
}

impl LieAlgebra {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        let roots = RootSystem::new(letter, rank)?;
        Ok(Self::from_roots(roots))
    }

    pub fn from_roots(roots: RootSystem) -> Self {
        let n = roots.rank;
        let m = roots.num_positive();
        let dim = n + 2 * m;
        let mut weights = vec![vec![0; n]; n];
        for k in (0..m).rev() {
            weights.push(neg(&roots.positive[k]));
        }
        for k in 0..m {
            weights.push(roots.positive[k].clone());
        }
        let root_letter = weights.iter().enumerate().skip(n).map(|(i, w)| (w.clone(), i)).collect();
        let names = (0..dim).map(|i| letter_name(&roots, &weights, i)).collect();
        let form_inv = linalg::inverse(&roots.form).expect("nondegenerate form");
        let mut lie = LieAlgebra { roots, weights, root_letter, bracket: Vec::new(), names, form_inv };
        lie.bracket = lie.build_table();
        lie
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn is_cartan(&self, a: Letter) -> bool {
        a < self.rank()
    }

    pub fn weight(&self, a: Letter) -> &Root {
        &self.weights[a]
    }

    pub fn root_letter(&self, r: &[i64]) -> Option<Letter> {
        self.root_letter.get(r).copied()
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a]
    }

    pub fn letter_by_name(&self, s: &str) -> Option<Letter> {
        self.names.iter().position(|x| x == s)
    }

    pub fn form(&self) -> &Mat {
        &self.roots.form
    }

    pub fn form_inv(&self) -> &Mat {
        &self.form_inv
    }

    pub fn bracket(&self, a: Letter, b: Letter) -> &LinComb {
        &self.bracket[a][b]
    }

    /// `t_mu` for `mu` in simple-root coordinates, as a combination of Cartan letters.
    pub fn t_of(&self, mu: &[Rat]) -> LinComb {
        mu.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }

    /// Scale relating `e_a` to the Chevalley vector `E_a`.
    fn scale(&self, a: &[i64]) -> Rat {
        if RootSystem::is_positive(a) {
            one()
        } else {
            self.roots.sq_len(a) * frac(1, 2)
        }
    }

    fn build_table(&self) -> Vec<Vec<LinComb>> {
        let dim = self.dim();
        let mut memo = BTreeMap::new();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                table[a][b] = self.compute_bracket(a, b, &mut memo);
            }
        }
        table
    }

    fn compute_bracket(&self, a: Letter, b: Letter, memo: &mut BTreeMap<(Root, Root), Rat>) -> LinComb {
        let n = self.rank();
        match (a < n, b < n) {
            (true, true) => Vec::new(),
            (true, false) => {
                let c = self.roots.form_roots(&super::rootsys::unit(n, a), &self.weights[b]);
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(b, c)]
                }
            }
            (false, true) => {
                let c = self.roots.form_roots(&super::rootsys::unit(n, b), &self.weights[a]);
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(a, -c)]
                }
            }
            (false, false) => {
                let (ra, rb) = (&self.weights[a], &self.weights[b]);
                let s = add(ra, rb);
                if s.iter().all(|&x| x == 0) {
                    // [e_a, e_{-a}] = t_a
                    let sign = if RootSystem::is_positive(ra) { one() } else { -one() };
                    let pos = if RootSystem::is_positive(ra) { ra.clone() } else { neg(ra) };
                    return pos
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m != 0)
                        .map(|(i, &m)| (i, &sign * int(m)))
                        .collect();
                }
                if !self.roots.is_root(&s) {
                    return Vec::new();
                }
                let nab = carter_n(&self.roots, ra, rb, memo);
                let c = self.scale(ra) * self.scale(rb) / self.scale(&s) * nab;
                vec![(self.root_letter[&s], c)]
            }
        }
    }

    /// Bracket of linear combinations.
    pub fn bracket_lin(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let mut acc: BTreeMap<Letter, Rat> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, k) in &self.bracket[*a][*b] {
                    *acc.entry(*c).or_insert_with(zero) += ca * cb * k;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Invariant form: `(t_i, t_j) = (alpha_i, alpha_j)`, `K(e_a, e_{-a}) = 1`.
    pub fn killing(&self, a: Letter, b: Letter) -> Rat {
        let n = self.rank();
        if a < n && b < n {
            return self.roots.form[a][b].clone();
        }
        if a < n || b < n {
            return zero();
        }
        if add(&self.weights[a], &self.weights[b]).iter().all(|&x| x == 0) {
            one()
        } else {
            zero()
        }
    }

    /// Dual pairs `(x_j, x^j)` of h: `x_j = t_j`, `x^j = sum_i (B^{-1})_{ji} t_i`.
    pub fn dual_pairs(&self) -> Vec<(LinComb, LinComb)> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                let up = (0..n).filter(|&i| !self.form_inv[j][i].is_zero()).map(|i| (i, self.form_inv[j][i].clone())).collect();
                (vec![(j, one())], up)
            })
            .collect()
    }

    /// Letter of `e_{beta_k}` and `e_{-beta_k}` for the k-th positive root.
    pub fn pos_letter(&self, k: usize) -> Letter {
        self.rank() + self.roots.num_positive() + k
    }

    pub fn neg_letter(&self, k: usize) -> Letter {
        self.rank() + self.roots.num_positive() - 1 - k
    }

    /// Negated letter `e_a -> e_{-a}` on root letters.
    pub fn opposite(&self, a: Letter) -> Letter {
        self.root_letter[&neg(&self.weights[a])]
    }

    /// Ratio `d_a` with Chevalley involution `e_a -> -d_a e_{-a}`.
    pub fn chevalley_ratio(&self, a: Letter) -> Rat {
        let w = &self.weights[a];
        self.scale(w) / self.scale(&neg(w))
    }
}

fn letter_name(rs: &RootSystem, weights: &[Root], i: usize) -> String {
    let n = rs.rank;
    if n == 1 {
        return match i {
            0 => "t".into(),
            1 => "f".into(),
            _ => "e".into(),
        };
    }
    if i < n {
        return format!("t{}", i + 1);
    }
    let w = &weights[i];
    let pos = RootSystem::is_positive(w);
    let digits: String = w.iter().map(|x| char::from_digit(x.unsigned_abs() as u32, 10).unwrap_or('?')).collect();
    format!("{}[{}]", if pos { 'e' } else { 'f' }, digits)
}

/// Structure constants `N_{a,b}` of the Chevalley basis, positive extraspecial signs.
fn carter_n(rs: &RootSystem, a: &[i64], b: &[i64], memo: &mut BTreeMap<(Root, Root), Rat>) -> Rat {
    let s = add(a, b);
    if s.iter().all(|&x| x == 0) || !rs.is_root(&s) {
        return zero();
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let pa = RootSystem::is_positive(a);
    let pb = RootSystem::is_positive(b);
    let v = if pa && pb {
        let ia = rs.positive_index(a).unwrap();
        let ib = rs.positive_index(b).unwrap();
        if ia > ib {
            -carter_n(rs, b, a, memo)
        } else {
            let (a1, b1) = extraspecial(rs, &s);
            let p = string_down(rs, &b1, &a1);
            if a1.as_slice() == a {
                int(p + 1)
            } else {
                let n1 = carter_n(rs, &a1, &b1, memo);
                let mut acc = zero();
                let ba1 = sub(b, &a1);
                if rs.is_root(&ba1) {
                    acc += carter_n(rs, b, &neg(&a1), memo) * carter_n(rs, a, &neg(&b1), memo) / rs.sq_len(&ba1);
                }
                let aa1 = sub(a, &a1);
                if rs.is_root(&aa1) {
                    acc += carter_n(rs, &neg(&a1), a, memo) * carter_n(rs, b, &neg(&b1), memo) / rs.sq_len(&aa1);
                }
                rs.sq_len(&s) / n1 * acc
            }
        }
    } else if !pa && !pb {
        -carter_n(rs, &neg(a), &neg(b), memo)
    } else if !pa {
        -carter_n(rs, b, a, memo)
    } else {
        // a > 0 > b, c = -(a+b): N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
        let c = neg(&s);
        if RootSystem::is_positive(&s) {
            rs.sq_len(&c) / rs.sq_len(a) * carter_n(rs, b, &c, memo)
        } else {
            rs.sq_len(&c) / rs.sq_len(b) * carter_n(rs, &c, a, memo)
        }
    };
    memo.insert(key, v.clone());
    v
}

fn extraspecial(rs: &RootSystem, xi: &[i64]) -> (Root, Root) {
    for r in &rs.positive {
        let rest = sub(xi, r);
        if rs.positive_index(&rest).is_some() {
            return (r.clone(), rest);
        }
    }
    unreachable!("non-simple root has an extraspecial pair")
}

/// Largest p with `b - p a` a root.
fn string_down(rs: &RootSystem, b: &[i64], a: &[i64]) -> i64 {
    let mut p = 0;
    let mut x = b.to_vec();
    loop {
        x = sub(&x, a);
        if rs.is_root(&x) {
            p += 1;
        } else {
            return p;
        }
    }
}

/// A basis triple (or pair) on which an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Antisymmetry(Letter, Letter),
    Jacobi(Letter, Letter, Letter),
    Invariance(Letter, Letter, Letter),
}

impl LieAlgebra {
    /// Checks antisymmetry, the Jacobi identity and invariance of the form on all basis elements.
    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let ba: LinComb = self.bracket(b, a).iter().map(|(c, k)| (*c, -k.clone())).collect();
                if self.bracket(a, b) != &ba {
                    out.push(AxiomViolation::Antisymmetry(a, b));
                }
                for c in 0..d {
                    let (x, y, z) = (vec![(a, one())], vec![(b, one())], vec![(c, one())]);
                    let mut acc: BTreeMap<Letter, Rat> = BTreeMap::new();
                    for t in [
                        self.bracket_lin(&self.bracket_lin(&x, &y), &z),
                        self.bracket_lin(&self.bracket_lin(&y, &z), &x),
                        self.bracket_lin(&self.bracket_lin(&z, &x), &y),
                    ] {
                        for (l, k) in t {
                            *acc.entry(l).or_insert_with(zero) += k;
                        }
                    }
                    if !acc.values().all(|v| v.is_zero()) {
                        out.push(AxiomViolation::Jacobi(a, b, c));
                    }
                    // K([a,b],c) + K(b,[a,c]) = 0
                    let lhs = self.bracket(a, b).iter().fold(zero(), |s, (l, k)| s + k * self.killing(*l, c))
                        + self.bracket(a, c).iter().fold(zero(), |s, (l, k)| s + k * self.killing(b, *l));
                    if !lhs.is_zero() {
                        out.push(AxiomViolation::Invariance(a, b, c));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(lie: &LieAlgebra) {
        assert_eq!(lie.axiom_violations(), vec![]);
    }

    #[test]
    fn sl2_relations() {
        let lie = LieAlgebra::new(TypeLetter::A, 1).unwrap();
        assert_eq!(lie.dim(), 3);
        let (t, f, e) = (0, 1, 2);
        assert_eq!(lie.name(f), "f");
        assert_eq!(lie.bracket(e, f), &vec![(t, one())]);
        assert_eq!(lie.bracket(t, e), &vec![(e, int(2))]);
    }

    #[test]
    fn axioms_small_types() {
        for (l, n) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::B, 2), (TypeLetter::G, 2)] {
            check_axioms(&LieAlgebra::new(l, n).unwrap());
        }
    }

    #[test]
    fn a2_structure_constants_are_units() {
        let lie = LieAlgebra::new(TypeLetter::A, 2).unwrap();
        for a in 2..lie.dim() {
            for b in 2..lie.dim() {
                for (c, k) in lie.bracket(a, b) {
                    if !lie.is_cartan(*c) {
                        assert!(k == &one() || k == &-one());
                    }
                }
            }
        }
    }

    #[test]
    fn root_vector_normalization() {
        for (l, n) in [(TypeLetter::B, 2), (TypeLetter::G, 2), (TypeLetter::C, 3)] {
            let lie = LieAlgebra::new(l, n).unwrap();
            for k in 0..lie.roots.num_positive() {
                let tb = lie.t_of(&super::super::rootsys::to_rat(&lie.roots.positive[k]));
                assert_eq!(lie.bracket(lie.pos_letter(k), lie.neg_letter(k)), &tb);
            }
        }
    }
}
