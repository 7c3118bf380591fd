//! Root systems of the simple types, Bourbaki numbering.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{frac, int, to_i64, zero, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => TypeLetter::A,
            "B" | "b" => TypeLetter::B,
            "C" | "c" => TypeLetter::C,
            "D" | "d" => TypeLetter::D,
            "E" | "e" => TypeLetter::E,
            "F" | "f" => TypeLetter::F,
            "G" | "g" => TypeLetter::G,
            other => return Err(Error::Config(format!("unknown type letter {other:?}"))),
        })
    }

    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        }
    }
}

/// Root vectors are integer coordinate vectors in the basis of simple roots.
pub type Root = Vec<i64>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub letter: TypeLetter,
    pub rank: usize,
    /// Gram matrix `(alpha_i, alpha_j)` of the simple roots; long roots have length 2.
    pub form: Mat,
    /// `a_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive: Vec<Root>,
    index: BTreeMap<Root, usize>,
}

fn simple_form(letter: TypeLetter, n: usize) -> Result<Mat> {
    use TypeLetter::*;
    let ok = match letter {
        A => (1..=8).contains(&n),
        B | C => (2..=8).contains(&n),
        D => (4..=8).contains(&n),
        E => (6..=8).contains(&n),
        F => n == 4,
        G => n == 2,
    };
    if !ok {
        return Err(Error::Config(format!("no simple Lie algebra of type {}{n} (rank cap 8)", letter.as_char())));
    }
    let mut lens = vec![int(2); n];
    let mut edges: Vec<(usize, usize, Rat)> = Vec::new();
    match letter {
        A => (0..n - 1).for_each(|i| edges.push((i, i + 1, int(-1)))),
        B => {
            lens[n - 1] = int(1);
            (0..n - 1).for_each(|i| edges.push((i, i + 1, int(-1))));
        }
        C => {
            (0..n - 1).for_each(|i| lens[i] = int(1));
            (0..n - 2).for_each(|i| edges.push((i, i + 1, frac(-1, 2))));
            edges.push((n - 2, n - 1, int(-1)));
        }
        D => {
            (0..n - 2).for_each(|i| edges.push((i, i + 1, int(-1))));
            edges.push((n - 3, n - 1, int(-1)));
        }
        E => {
            for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
                if a <= n && b <= n {
                    edges.push((a - 1, b - 1, int(-1)));
                }
            }
        }
        F => {
            lens[2] = int(1);
            lens[3] = int(1);
            edges.extend([(0, 1, int(-1)), (1, 2, int(-1)), (2, 3, frac(-1, 2))]);
        }
        G => {
            lens[0] = frac(2, 3);
            edges.push((0, 1, int(-1)));
        }
    }
    let mut form = vec![vec![zero(); n]; n];
    for i in 0..n {
        form[i][i] = lens[i].clone();
    }
    for (i, j, v) in edges {
        form[i][j] = v.clone();
        form[j][i] = v;
    }
    Ok(form)
}

impl RootSystem {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        let form = simple_form(letter, rank)?;
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| to_i64(&(int(2) * &form[i][j] / &form[j][j])).expect("integral Cartan matrix"))
                    .collect()
            })
            .collect();
        let mut rs = RootSystem { letter, rank, form, cartan, positive: Vec::new(), index: BTreeMap::new() };
        rs.generate();
        Ok(rs)
    }

    fn generate(&mut self) {
        let n = self.rank;
        let mut known: BTreeMap<Root, ()> = BTreeMap::new();
        let mut layer: Vec<Root> = (0..n).map(|i| unit(n, i)).collect();
        for r in &layer {
            known.insert(r.clone(), ());
        }
        while !layer.is_empty() {
            let mut next: Vec<Root> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    if beta == &unit(n, i) {
                        continue;
                    }
                    // alpha_i-string through beta: p - q = <beta, alpha_i^vee>
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = to_i64(&(int(2) * self.form_roots(beta, &unit(n, i)) / &self.form[i][i])).unwrap();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut pos: Vec<Root> = known.into_keys().collect();
        pos.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        self.index = pos.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        self.positive = pos;
    }

    pub fn form_roots(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut s = zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 && !self.form[i][j].is_zero() {
                    s += &self.form[i][j] * int(a[i] * b[j]);
                }
            }
        }
        s
    }

    pub fn sq_len(&self, a: &[i64]) -> Rat {
        self.form_roots(a, a)
    }

    /// Index in `positive` of a positive root.
    pub fn positive_index(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        if self.index.contains_key(a) {
            return true;
        }
        let neg: Root = a.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn is_positive(a: &[i64]) -> bool {
        a.iter().any(|&x| x > 0)
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    /// Half-sum of positive roots, simple-root coordinates.
    pub fn rho(&self) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| self.positive.iter().fold(zero(), |s, r| s + int(r[i])) * frac(1, 2))
            .collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.letter, TypeLetter::A | TypeLetter::D | TypeLetter::E)
    }
}

pub fn unit(n: usize, i: usize) -> Root {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(a: &[i64]) -> i64 {
    a.iter().sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}

pub fn to_rat(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    /// Independent oracle: closure of the simple roots under simple reflections.
    fn weyl_orbit_roots(rs: &RootSystem) -> BTreeSet<Root> {
        let n = rs.rank;
        let mut all: BTreeSet<Root> = (0..n).map(|i| unit(n, i)).collect();
        loop {
            let mut grew = false;
            for r in all.clone() {
                for i in 0..n {
                    // s_i(r) = r - <r, alpha_i^vee> alpha_i
                    let mut img = r.clone();
                    let pairing = to_i64(&(int(2) * rs.form_roots(&r, &unit(n, i)) / &rs.form[i][i])).unwrap();
                    img[i] -= pairing;
                    grew |= all.insert(img);
                }
            }
            if !grew {
                break;
            }
        }
        all.into_iter().filter(|r| RootSystem::is_positive(r)).collect()
    }

    #[test]
    fn counts_match_types() {
        let cases = [
            (TypeLetter::A, 1, 1),
            (TypeLetter::A, 2, 3),
            (TypeLetter::A, 3, 6),
            (TypeLetter::B, 2, 4),
            (TypeLetter::B, 3, 9),
            (TypeLetter::C, 3, 9),
            (TypeLetter::D, 4, 12),
            (TypeLetter::E, 6, 36),
            (TypeLetter::E, 7, 63),
            (TypeLetter::E, 8, 120),
            (TypeLetter::F, 4, 24),
            (TypeLetter::G, 2, 6),
        ];
        for (l, n, m) in cases {
            let rs = RootSystem::new(l, n).unwrap();
            assert_eq!(rs.num_positive(), m, "{l:?}{n}");
            let oracle = weyl_orbit_roots(&rs);
            let mine: BTreeSet<Root> = rs.positive.iter().cloned().collect();
            assert_eq!(mine, oracle, "{l:?}{n}");
        }
    }

    #[test]
    fn g2_cartan_and_lengths() {
        let rs = RootSystem::new(TypeLetter::G, 2).unwrap();
        assert_eq!(rs.cartan, vec![vec![2, -1], vec![-3, 2]]);
        let longest = rs.positive.iter().map(|r| rs.sq_len(r)).max().unwrap();
        assert_eq!(longest, int(2));
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(TypeLetter::G, 3).is_err());
        assert!(RootSystem::new(TypeLetter::A, 9).is_err());
        assert!(RootSystem::new(TypeLetter::D, 3).is_err());
    }
}
