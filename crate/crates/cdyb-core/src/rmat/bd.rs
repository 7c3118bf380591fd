//! Generalised Belavin-Drinfeld triples, admissibility, the tail maps
//! `phi_alpha` and Schiffmann's dynamical r-matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{casimirs, in_span, TorusPart};
use crate::cartan::{add, neg, sub, to_rat, unit, Letter, LieAlgebra, Root, Subspace};
use crate::env::Env;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{frac, one, Rat};
use crate::uea::{Acc, Key, Tensor};

/// `(Gamma_1, Gamma_2, tau)` with simple roots as 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BdTriple {
    map: BTreeMap<usize, usize>,
}

impl BdTriple {
    /// Pairs `(i, tau(i))`; checks injectivity and that the form is preserved.
    pub fn new(lie: &LieAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = lie.rank();
        let mut map = BTreeMap::new();
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Config(format!("simple root index out of range in tau: a{} -> a{}", i + 1, j + 1)));
            }
            if map.insert(i, j).is_some() {
                return Err(Error::Config(format!("tau assigns a{} twice", i + 1)));
            }
        }
        let triple = BdTriple { map };
        let image = triple.gamma2();
        if image.windows(2).any(|w| w[0] == w[1]) || image.len() != triple.map.len() {
            return Err(Error::Config("tau is not injective".into()));
        }
        let form = &lie.roots.form;
        for (&a, &ta) in &triple.map {
            for (&b, &tb) in &triple.map {
                if form[a][b] != form[ta][tb] {
                    return Err(Error::Config(format!("tau does not preserve the form on (a{}, a{})", a + 1, b + 1)));
                }
            }
        }
        Ok(triple)
    }

    /// `(Gamma, Gamma, id)`.
    pub fn identity(gamma: &[usize]) -> Self {
        BdTriple { map: gamma.iter().map(|&i| (i, i)).collect() }
    }

    pub fn gamma1(&self) -> Vec<usize> {
        self.map.keys().copied().collect()
    }

    pub fn gamma2(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.map.values().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn tau(&self, i: usize) -> Option<usize> {
        self.map.get(&i).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// `tau` on roots of `R_{Gamma_1}`.
    pub fn tau_root(&self, mu: &[i64]) -> Option<Root> {
        if !in_span(mu, &self.gamma1()) {
            return None;
        }
        let mut out = alloc::vec![0; mu.len()];
        for (i, &m) in mu.iter().enumerate() {
            if m != 0 {
                out[self.map[&i]] += m;
            }
        }
        Some(out)
    }

    /// `tau(mu), tau^2(mu), ...` up to the first root leaving `R_{Gamma_1}`
    /// (kept) or the return to `mu`; the flag tells whether a cycle closed.
    pub fn orbit(&self, mu: &[i64]) -> (Vec<Root>, bool) {
        let mut out = Vec::new();
        let mut cur = mu.to_vec();
        while let Some(next) = self.tau_root(&cur) {
            if next == mu {
                return (out, true);
            }
            out.push(next.clone());
            cur = next;
        }
        (out, false)
    }

    pub fn render(&self) -> String {
        let list = |v: Vec<usize>| v.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>().join(",");
        let tau: Vec<String> = self.map.iter().map(|(a, b)| format!("a{}->a{}", a + 1, b + 1)).collect();
        format!("({{{}}}, {{{}}}, {{{}}})", list(self.gamma1()), list(self.gamma2()), tau.join(","))
    }
}

/// Outcome of the admissibility test, with the offending data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Admissibility {
    /// Simple roots with `tau(alpha)|_a != alpha|_a`.
    pub restriction: Vec<usize>,
    /// Cycles of `tau` whose root sum does not vanish on t.
    pub cycles: Vec<Vec<Root>>,
}

impl Admissibility {
    pub fn check(lie: &LieAlgebra, triple: &BdTriple, a: &Subspace) -> Self {
        let n = lie.rank();
        let restriction = triple
            .pairs()
            .filter(|&(i, j)| !a.vanishes_on_a(&to_rat(&sub(&unit(n, j), &unit(n, i)))))
            .map(|(i, _)| i)
            .collect();
        let mut cycles: Vec<Vec<Root>> = Vec::new();
        for beta in &lie.roots.positive {
            if !in_span(beta, &triple.gamma1()) {
                continue;
            }
            let (orbit, closed) = triple.orbit(beta);
            if !closed || orbit.iter().any(|g| g < beta) {
                continue;
            }
            let total = orbit.iter().fold(beta.clone(), |s, g| add(&s, g));
            if !a.vanishes_on_perp(&to_rat(&total)) {
                let mut cycle = alloc::vec![beta.clone()];
                cycle.extend(orbit);
                cycles.push(cycle);
            }
        }
        Admissibility { restriction, cycles }
    }

    pub fn is_admissible(&self) -> bool {
        self.restriction.is_empty() && self.cycles.is_empty()
    }

    pub fn report(&self) -> String {
        let mut parts = Vec::new();
        for i in &self.restriction {
            parts.push(format!("condition (1): tau(a{0})|_a != a{0}|_a", i + 1));
        }
        for c in &self.cycles {
            let roots: Vec<String> = c.iter().map(|r| format!("{r:?}")).collect();
            parts.push(format!("condition (2): cycle {} does not sum to zero on t", roots.join(" -> ")));
        }
        if parts.is_empty() {
            "admissible".into()
        } else {
            parts.join("; ")
        }
    }
}

/// The Lie algebra isomorphism `g_{Gamma_1} -> g_{Gamma_2}` on root letters:
/// `tau(e_gamma) = eps_gamma e_{tau gamma}`.
#[derive(Clone, Debug)]
pub struct TriplePlan {
    triple: BdTriple,
    image: BTreeMap<Letter, (Letter, Rat)>,
}

impl TriplePlan {
    pub fn new(lie: &LieAlgebra, triple: &BdTriple) -> Self {
        Self::with_simple_scales(lie, triple, &alloc::vec![one(); lie.rank()])
    }

    /// Iso for the root vectors `s_i e_{alpha_i}`, written in the fixed basis:
    /// `tau(e_{alpha_i}) = s_{tau i}/s_i e_{tau alpha_i}`.
    pub fn with_simple_scales(lie: &LieAlgebra, triple: &BdTriple, scales: &[Rat]) -> Self {
        let n = lie.rank();
        let gamma1 = triple.gamma1();
        let mut image: BTreeMap<Letter, (Letter, Rat)> = BTreeMap::new();
        let mut pos: Vec<&Root> = lie.roots.positive.iter().filter(|b| in_span(b, &gamma1)).collect();
        pos.sort_by_key(|b| crate::cartan::height(b));
        let letter = |mu: &[i64]| lie.root_letter(mu).expect("root");
        for beta in pos {
            let tb = triple.tau_root(beta).expect("in R_Gamma1");
            let eps = if crate::cartan::height(beta) == 1 {
                let i = beta.iter().position(|&m| m == 1).unwrap();
                &scales[triple.tau(i).unwrap()] / &scales[i]
            } else {
                let i = gamma1.iter().copied().find(|&i| lie.roots.is_root(&sub(beta, &unit(n, i)))).expect("decomposition");
                let rest = sub(beta, &unit(n, i));
                let c = bracket_coeff(lie, letter(&unit(n, i)), letter(&rest));
                let (ti, ei) = image[&letter(&unit(n, i))].clone();
                let (tr, er) = image[&letter(&rest)].clone();
                let ct = bracket_coeff(lie, ti, tr);
                ei * er * ct / c
            };
            image.insert(letter(beta), (letter(&tb), eps.clone()));
            image.insert(letter(&neg(beta)), (letter(&neg(&tb)), one() / eps));
        }
        TriplePlan { triple: triple.clone(), image }
    }

    pub fn triple(&self) -> &BdTriple {
        &self.triple
    }

    /// `tau(e_a)` for a root letter of `R_{Gamma_1}`.
    pub fn apply(&self, a: Letter) -> Option<&(Letter, Rat)> {
        self.image.get(&a)
    }

    /// `tau` on Cartan letters of `Gamma_1` and root letters of `R_{Gamma_1}`.
    pub fn apply_any(&self, lie: &LieAlgebra, a: Letter) -> Option<(Letter, Rat)> {
        if lie.is_cartan(a) {
            self.triple.tau(a).map(|b| (b, one()))
        } else {
            self.image.get(&a).cloned()
        }
    }
}

fn bracket_coeff(lie: &LieAlgebra, a: Letter, b: Letter) -> Rat {
    let br = lie.bracket(a, b);
    debug_assert_eq!(br.len(), 1);
    br[0].1.clone()
}

/// `phi_alpha(lambda) = sum_{j>0} e^{-j(alpha, lambda)} tau^j(e_alpha)` as a 1-leg tensor.
pub fn phi_alpha(env: &Env, plan: &TriplePlan, alpha: &[i64]) -> Result<Tensor> {
    let lie = env.lie();
    let a = match lie.root_letter(alpha) {
        Some(a) if in_span(alpha, &plan.triple.gamma1()) => a,
        _ => return Err(Error::Domain(format!("{alpha:?} is not a root of R_Gamma1"))),
    };
    let (orbit, closed) = plan.triple.orbit(alpha);
    let mut letters: Vec<(Letter, Rat)> = Vec::new();
    let mut cur = (a, one());
    for _ in 0..orbit.len() + usize::from(closed) {
        let Some((next, eps)) = plan.apply(cur.0) else { break };
        cur = (*next, &cur.1 * eps);
        letters.push(cur.clone());
    }
    let alpha_r = to_rat(alpha);
    let mut acc = Acc::new(1, env.nvars());
    let mut factor = env.ctx().one();
    if closed {
        // tau^p(e_alpha) = s e_alpha with p the period
        let p = letters.len() as i64;
        let s = letters.last().map(|l| l.1.clone()).unwrap_or_else(one);
        let mu: Vec<Rat> = alpha_r.iter().map(|x| x * Rat::from_integer((-p).into())).collect();
        let den = env.ctx().one().sub(&env.ctx().exp_of(&mu)?.scale(&s));
        if den.is_zero() {
            return Err(Error::Pole(format!("alpha {alpha:?} vanishes on a along a tau-cycle")));
        }
        factor = den.inv()?;
    }
    for (j, (b, c)) in letters.iter().enumerate() {
        let mu: Vec<Rat> = alpha_r.iter().map(|x| x * Rat::from_integer((-(j as i64) - 1).into())).collect();
        let coeff = env.ctx().exp_of(&mu)?.mul(&factor).scale(c);
        acc.push(Key::from_words(&[[*b as u8]]), coeff);
    }
    Ok(acc.finish())
}

/// The affine space of solutions `r_t` of the t-part constraint.
#[derive(Clone, Debug)]
pub struct SSpace {
    pub particular: TorusPart,
    pub kernel: Vec<TorusPart>,
    pub antisymmetric: Option<TorusPart>,
    pub symmetric: Option<TorusPart>,
}

impl SSpace {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn has_symmetric(&self) -> bool {
        self.symmetric.is_some()
    }

    pub fn has_antisymmetric(&self) -> bool {
        self.antisymmetric.is_some()
    }

    /// `particular + sum c_k kernel_k`.
    pub fn point(&self, coeffs: &[Rat]) -> TorusPart {
        let mut m = self.particular.0.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (row, krow) in m.iter_mut().zip(&k.0) {
                for (x, y) in row.iter_mut().zip(krow) {
                    *x += c * y;
                }
            }
        }
        TorusPart(m)
    }
}

struct SSystem {
    rows: Mat,
    rhs: Vec<Rat>,
    dim: usize,
}

fn s_system(lie: &LieAlgebra, triple: &BdTriple, a: &Subspace) -> Result<SSystem> {
    let n = lie.rank();
    let perp = a.perp();
    let d = perp.len();
    let form = lie.form();
    let gram: Mat = perp.iter().map(|x| perp.iter().map(|y| linalg::pair(form, x, y)).collect()).collect();
    let ginv = if d == 0 { Vec::new() } else { linalg::inverse(&gram).ok_or_else(|| Error::Config("form is degenerate on t".into()))? };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, j) in triple.pairs() {
        let diff = to_rat(&sub(&unit(n, i), &unit(n, j)));
        let total = to_rat(&add(&unit(n, i), &unit(n, j)));
        let dv: Vec<Rat> = perp.iter().map(|u| linalg::pair(form, &diff, u)).collect();
        let tv: Vec<Rat> = perp.iter().map(|u| linalg::pair(form, &total, u)).collect();
        for b in 0..d {
            let mut row = alloc::vec![Rat::zero(); d * d];
            for ai in 0..d {
                row[ai * d + b] = dv[ai].clone();
            }
            rows.push(row);
            rhs.push((0..d).fold(Rat::zero(), |s, ai| s + &tv[ai] * &ginv[ai][b]) * frac(-1, 2));
        }
    }
    Ok(SSystem { rows, rhs, dim: d })
}

fn unflatten(v: &[Rat], d: usize) -> TorusPart {
    TorusPart(v.chunks(d.max(1)).take(d).map(|c| c.to_vec()).collect())
}

fn solve_with(sys: &SSystem, sign: i64) -> Option<TorusPart> {
    let d = sys.dim;
    let mut rows = sys.rows.clone();
    let mut rhs = sys.rhs.clone();
    for x in 0..d {
        for y in x..d {
            let mut row = alloc::vec![Rat::zero(); d * d];
            row[x * d + y] += one();
            row[y * d + x] += Rat::from_integer(sign.into());
            rows.push(row);
            rhs.push(Rat::zero());
        }
    }
    linalg::solve_affine(&rows, &rhs, d * d).map(|(p, _)| unflatten(&p, d))
}

/// Solves the t-part constraint `((a - tau a) (x) 1) r_t = -1/2 ((a + tau a) (x) 1) varpi_t` exactly.
///
/// The minus sign matches the leg order of [`schiffmann_r`] (positive roots in the first leg);
/// with a plus sign the antisymmetric elements fail YB whenever the right side is nonzero.
pub fn solve_s(lie: &LieAlgebra, triple: &BdTriple, a: &Subspace) -> Result<SSpace> {
    let adm = Admissibility::check(lie, triple, a);
    if !adm.is_admissible() {
        return Err(Error::Domain(format!("triple {} is not admissible: {}", triple.render(), adm.report())));
    }
    let sys = s_system(lie, triple, a)?;
    let d = sys.dim;
    let (p, kernel) = linalg::solve_affine(&sys.rows, &sys.rhs, d * d)
        .ok_or_else(|| Error::Constraint("the t-part constraint has no solution".into()))?;
    Ok(SSpace {
        particular: unflatten(&p, d),
        kernel: kernel.iter().map(|k| unflatten(k, d)).collect(),
        antisymmetric: solve_with(&sys, 1),
        symmetric: solve_with(&sys, -1),
    })
}

fn in_s(lie: &LieAlgebra, triple: &BdTriple, a: &Subspace, rt: &TorusPart) -> Result<bool> {
    let sys = s_system(lie, triple, a)?;
    let flat: Vec<Rat> = rt.0.iter().flatten().cloned().collect();
    if flat.len() != sys.dim * sys.dim {
        return Ok(false);
    }
    Ok(sys.rows.iter().zip(&sys.rhs).all(|(row, b)| &linalg::dot(row, &flat) == b))
}

/// Schiffmann's r-matrix for an admissible triple and `r_t` in the solution space.
pub fn schiffmann_r(env: &Env, triple: &BdTriple, rt: &TorusPart) -> Result<Tensor> {
    schiffmann_with_plan(env, &TriplePlan::new(env.lie(), triple), rt)
}

pub fn schiffmann_with_plan(env: &Env, plan: &TriplePlan, rt: &TorusPart) -> Result<Tensor> {
    let lie = env.lie();
    let triple = plan.triple();
    let adm = Admissibility::check(lie, triple, env.subspace());
    if !adm.is_admissible() {
        return Err(Error::Domain(format!("triple {} is not admissible: {}", triple.render(), adm.report())));
    }
    if !in_s(lie, triple, env.subspace(), rt)? {
        return Err(Error::Constraint("r_t does not solve the t-part constraint".into()));
    }
    let nv = env.nvars();
    let mut acc = Acc::new(2, nv);
    acc.push_scaled(&casimirs(env)?.varpi, &frac(1, 2));
    acc.push_tensor(&rt.to_tensor(env)?);
    let gamma1 = triple.gamma1();
    let half = frac(1, 2);
    for (k, beta) in lie.roots.positive.iter().enumerate() {
        let (p, q) = (lie.pos_letter(k) as u8, lie.neg_letter(k) as u8);
        acc.push(Key::from_words(&[[p], [q]]), env.constant(half.clone()));
        acc.push(Key::from_words(&[[q], [p]]), env.constant(-half.clone()));
        if in_span(beta, &gamma1) {
            let phi = phi_alpha(env, plan, beta)?;
            for (key, c) in phi.iter() {
                let x = key.word(0)[0];
                acc.push(Key::from_words(&[[x], [q]]), c.clone());
                acc.push(Key::from_words(&[[q], [x]]), c.neg());
            }
        }
    }
    Ok(acc.finish())
}

/// One row of the enumeration.
#[derive(Clone, Debug)]
pub struct BdSummary {
    pub triple: BdTriple,
    pub admissibility: Admissibility,
    pub space: Option<SSpace>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All generalised triples of the algebra.
pub fn generalized_triples(lie: &LieAlgebra) -> Result<Vec<BdTriple>> {
    let n = lie.rank();
    if n > 4 {
        return Err(Error::Unsupported(format!("triple enumeration is limited to rank 4 (got {n})")));
    }
    let subsets: Vec<Vec<usize>> = (0u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    let mut out = Vec::new();
    for g1 in &subsets {
        for g2 in subsets.iter().filter(|g| g.len() == g1.len()) {
            for perm in permutations(g2) {
                let pairs: Vec<(usize, usize)> = g1.iter().copied().zip(perm).collect();
                if let Ok(t) = BdTriple::new(lie, &pairs) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// Every generalised triple with its admissibility and, when admissible, its solution space.
pub fn enumerate_bd(lie: &LieAlgebra, a: &Subspace) -> Result<Vec<BdSummary>> {
    generalized_triples(lie)?
        .into_iter()
        .map(|triple| {
            let admissibility = Admissibility::check(lie, &triple, a);
            let space = if admissibility.is_admissible() { Some(solve_s(lie, &triple, a)?) } else { None };
            Ok(BdSummary { triple, admissibility, space })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLetter;
    use crate::coeffs::ExpRational;
    use crate::rational::int;
    use alloc::sync::Arc;
    use alloc::vec;

    fn sl3() -> LieAlgebra {
        LieAlgebra::new(TypeLetter::A, 2).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let lie = sl3();
        let t = BdTriple::new(&lie, &[(0, 1)]).unwrap();
        let good = Subspace::from_t_coords(&lie, vec![vec![one(), one()]]).unwrap();
        assert!(Admissibility::check(&lie, &t, &good).is_admissible());
        let bad = Subspace::from_t_coords(&lie, vec![vec![one(), Rat::zero()]]).unwrap();
        let adm = Admissibility::check(&lie, &t, &bad);
        assert_eq!(adm.restriction, vec![0]);
        assert!(adm.cycles.is_empty());
        let full = Subspace::full(&lie);
        for g in [vec![], vec![0], vec![1], vec![0, 1]] {
            assert!(Admissibility::check(&lie, &BdTriple::identity(&g), &full).is_admissible());
        }
    }

    #[test]
    fn form_must_be_preserved() {
        let b2 = LieAlgebra::new(TypeLetter::B, 2).unwrap();
        assert!(BdTriple::new(&b2, &[(0, 1)]).is_err());
        assert!(BdTriple::new(&sl3(), &[(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn tau_is_a_lie_isomorphism() {
        for (letter, n, pairs) in [
            (TypeLetter::A, 3, vec![(0, 1), (1, 2)]),
            (TypeLetter::A, 3, vec![(0, 2), (1, 1)]),
            (TypeLetter::D, 4, vec![(0, 3), (1, 1), (3, 2)]),
            (TypeLetter::B, 3, vec![(0, 1)]),
        ] {
            let lie = LieAlgebra::new(letter, n).unwrap();
            let t = BdTriple::new(&lie, &pairs).unwrap();
            let scales: Vec<Rat> = (0..n).map(|i| int(i as i64 + 2)).collect();
            for plan in [TriplePlan::new(&lie, &t), TriplePlan::with_simple_scales(&lie, &t, &scales)] {
                let dom: Vec<Letter> = (0..lie.dim()).filter(|&a| plan.apply_any(&lie, a).is_some()).collect();
                for &a in &dom {
                    for &b in &dom {
                        let (ta, ca) = plan.apply_any(&lie, a).unwrap();
                        let (tb, cb) = plan.apply_any(&lie, b).unwrap();
                        let lhs: Vec<(Letter, Rat)> = lie
                            .bracket(a, b)
                            .iter()
                            .map(|(c, k)| {
                                let (tc, cc) = plan.apply_any(&lie, *c).unwrap();
                                (tc, k * cc)
                            })
                            .collect();
                        let rhs: Vec<(Letter, Rat)> = lie.bracket(ta, tb).iter().map(|(c, k)| (*c, k * &ca * &cb)).collect();
                        let mut l = lhs.clone();
                        l.sort();
                        let mut r = rhs.clone();
                        r.sort();
                        assert_eq!(l, r, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let lie = Arc::new(sl3());
        let a = Subspace::from_t_coords(&lie, vec![vec![one(), one()]]).unwrap();
        let env = Env::new(lie.clone(), a, 1);
        let t = BdTriple::new(&lie, &[(0, 1)]).unwrap();
        let plan = TriplePlan::new(&lie, &t);
        let phi = phi_alpha(&env, &plan, &[1, 0]).unwrap();
        let e2 = lie.root_letter(&[0, 1]).unwrap() as u8;
        let coeff = env.ctx().exp_of(&[int(-1), Rat::zero()]).unwrap();
        assert_eq!(phi, Tensor::term(&[[e2]], coeff));
        assert!(phi_alpha(&env, &plan, &[0, 1]).is_err());

        let full = Env::full(lie.clone());
        let id = TriplePlan::new(&lie, &BdTriple::identity(&[0, 1]));
        for beta in lie.roots.positive.clone() {
            let phi = phi_alpha(&full, &id, &beta).unwrap();
            let x = full.ctx().exp_of(&to_rat(&neg(&beta))).unwrap();
            let c = x.mul(&full.ctx().one_minus_inv(&to_rat(&neg(&beta))).unwrap());
            assert_eq!(phi, Tensor::term(&[[lie.root_letter(&beta).unwrap() as u8]], c));
        }
    }

    #[test]
    fn s_space_examples() {
        let lie = sl3();
        let a = Subspace::from_t_coords(&lie, vec![vec![one(), one()]]).unwrap();
        let t = BdTriple::new(&lie, &[(0, 1)]).unwrap();
        let s = solve_s(&lie, &t, &a).unwrap();
        // (a1 + a2)|_t = 0 and (a1 - a2)|_t != 0 force r_t = 0, which is symmetric
        assert_eq!(s.dim(), 0);
        assert!(s.particular.is_zero());
        assert!(s.has_symmetric() && s.has_antisymmetric());
        let full = Subspace::zero(&lie);
        let s = solve_s(&lie, &BdTriple::identity(&[]), &full).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.has_symmetric() && s.has_antisymmetric());
        let bad = Subspace::from_t_coords(&lie, vec![vec![one(), Rat::zero()]]).unwrap();
        assert!(matches!(solve_s(&lie, &t, &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn schiffmann_reproduces_felder_and_gaudin() {
        let lie = Arc::new(LieAlgebra::new(TypeLetter::A, 1).unwrap());
        let env = Env::full(lie.clone());
        let r = schiffmann_r(&env, &BdTriple::identity(&[0]), &TorusPart::zero(0)).unwrap();
        assert_eq!(r, super::super::negate_lambda(&super::super::felder_r(&env).unwrap()).neg());
        let zero = Env::new(lie.clone(), Subspace::zero(&lie), 1);
        let r = schiffmann_r(&zero, &BdTriple::identity(&[]), &TorusPart::zero(1)).unwrap();
        assert_eq!(r, casimirs(&zero).unwrap().omega_plus);
        let _ = ExpRational::one(0);
    }

    #[test]
    fn antisymmetric_tails_solve_yb() {
        let lie = Arc::new(sl3());
        let zero = Subspace::zero(&lie);
        let env = Env::new(lie.clone(), zero.clone(), 1);
        for t in [BdTriple::new(&lie, &[(0, 1)]).unwrap(), BdTriple::new(&lie, &[(1, 0)]).unwrap()] {
            let anti = solve_s(&lie, &t, &zero).unwrap().antisymmetric.unwrap();
            assert!(!anti.is_zero());
            let r = schiffmann_r(&env, &t, &anti).unwrap();
            assert!(crate::verify::yb(&env, &r).unwrap().is_zero(), "{}", t.render());
        }
    }

    #[test]
    fn enumeration_counts() {
        let lie = LieAlgebra::new(TypeLetter::A, 1).unwrap();
        let all = enumerate_bd(&lie, &Subspace::full(&lie)).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|s| s.admissibility.is_admissible()));
        let lie = sl3();
        let all = enumerate_bd(&lie, &Subspace::full(&lie)).unwrap();
        let sym: Vec<_> = all.iter().filter(|s| s.space.as_ref().is_some_and(SSpace::has_symmetric)).collect();
        assert_eq!(sym.len(), 4);
        assert!(sym.iter().all(|s| s.triple.is_identity()));
        let zero = enumerate_bd(&lie, &Subspace::zero(&lie)).unwrap();
        for s in &zero {
            let nilpotent = lie.roots.positive.iter().filter(|b| in_span(b, &s.triple.gamma1())).all(|b| !s.triple.orbit(b).1);
            assert_eq!(s.admissibility.is_admissible(), nilpotent, "{}", s.triple.render());
        }
    }
}
