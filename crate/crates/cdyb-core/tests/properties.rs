use std::sync::Arc;

use cdyb_core::cartan::{LetterMap, LieAlgebra, TypeLetter};
use cdyb_core::coeffs::ExpRational;
use cdyb_core::fold;
use cdyb_core::ops::Representation;
use cdyb_core::perturb::Perturber;
use cdyb_core::rational::{frac, Rat};
use cdyb_core::rmat;
use cdyb_core::uea::{is_ordered, normal_order, Tensor};
use cdyb_core::verify::{self, Identity};
use cdyb_core::Env;
use proptest::prelude::*;

fn sl(n: usize) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::new(TypeLetter::A, n).unwrap())
}

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |q| *q != frac(0, 1))
}

/// Sums of `q e^{k x}` and `q / (1 - e^{k x})` in one variable.
fn exprat() -> impl Strategy<Value = ExpRational> {
    prop::collection::vec((rat(), -2i32..=2, any::<bool>()), 1..4).prop_map(|parts| {
        parts.into_iter().fold(ExpRational::zero(1), |acc, (q, k, pole)| {
            let term = if pole && k != 0 { ExpRational::one_minus_inv(vec![k]).unwrap().scale(&q) } else { ExpRational::monomial(vec![k], q) };
            acc.add(&term)
        })
    })
}

fn word(dim: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..dim as u8, 0..3)
}

fn element(env: &Env, words: &[(Vec<u8>, Rat)]) -> Tensor {
    words.iter().fold(env.zero(1), |acc, (w, q)| {
        normal_order(env.lie(), w).into_iter().fold(acc, |a, (v, p)| a.add(&env.term(&[v], q * p)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coefficient_field_laws(a in exprat(), b in exprat(), c in exprat()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in exprat(), b in exprat(), x in nonzero_rat()) {
        // points are values of the exponential variable; poles are skipped
        let p = [x];
        if let (Ok(va), Ok(vb), Ok(vab)) = (a.eval(&p), b.eval(&p), a.mul(&b).eval(&p)) {
            prop_assert_eq!(vab, va.clone() * vb.clone());
            prop_assert_eq!(a.add(&b).eval(&p).unwrap(), va + vb);
        }
    }

    #[test]
    fn normal_order_is_ordered_and_multiplicative((n, a, b, c) in (1usize..=2).prop_flat_map(|n| {
        let dim = if n == 1 { 3 } else { 8 };
        (Just(n), word(dim), word(dim), word(dim))
    })) {
        let lie = sl(n);
        let env = Env::full(lie.clone());
        for (v, _) in normal_order(&lie, &a) {
            prop_assert!(is_ordered(&v));
        }
        let one = frac(1, 1);
        let (x, y, z) = (element(&env, &[(a, one.clone())]), element(&env, &[(b, one.clone())]), element(&env, &[(c, one)]));
        prop_assert_eq!(env.mul(&env.mul(&x, &y).unwrap(), &z).unwrap(), env.mul(&x, &env.mul(&y, &z).unwrap()).unwrap());
        let jacobi = Tensor::sum(1, env.nvars(), [
            &env.commutator(&env.commutator(&x, &y).unwrap(), &z).unwrap(),
            &env.commutator(&env.commutator(&y, &z).unwrap(), &x).unwrap(),
            &env.commutator(&env.commutator(&z, &x).unwrap(), &y).unwrap(),
        ]);
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(env.commutator(&x, &y).unwrap(), env.commutator(&y, &x).unwrap().neg());
    }

    #[test]
    fn sigma_ybar_is_an_involutive_automorphism(c1 in nonzero_rat(), c2 in nonzero_rat()) {
        let lie = sl(2);
        let th = LetterMap::sigma_ybar(&lie, &[c1, c2]).unwrap();
        prop_assert!(th.is_involution());
        prop_assert!(th.is_automorphism(&lie));
        prop_assert!(th.compose(&th.inverse()).is_identity());
    }

    #[test]
    fn fold_splits_into_eigenspaces(seed in 0u64..1000, c in nonzero_rat()) {
        let env = Env::full(sl(1));
        let theta = LetterMap::sigma_ybar(env.lie(), &[c]).unwrap();
        let r = Perturber::new(seed).twisted_symmetric(&env, &theta).unwrap();
        let f = fold::fold(&env, &r, &theta).unwrap();
        prop_assert_eq!(f.r_plus.sub(&f.r_minus), r);
        let (p, m) = fold::eigenspace_defects(&env, &f).unwrap();
        prop_assert!(p.is_zero() && m.is_zero());
    }

    #[test]
    fn identities_hold_off_shell(seed in 0u64..1000, c in nonzero_rat()) {
        let env = Env::full(sl(1));
        let r = rmat::felder_r(&env).unwrap();
        let theta = LetterMap::sigma_ybar(env.lie(), &[c]).unwrap();
        for id in [Identity::PairToYb, Identity::FoldedCyb(1), Identity::FoldedCyb(4), Identity::FoldedReflection] {
            for res in Perturber::new(seed).identity(&env, id, &r, &theta).unwrap() {
                prop_assert!(res.is_zero(), "{} seed {}", res.tag, seed);
            }
        }
    }

    #[test]
    fn quasi_unitarity_tracks_the_symmetric_part(s in rat()) {
        let lie = sl(2);
        let a = cdyb_core::cartan::Subspace::from_t_coords(&lie, vec![vec![frac(1, 1), frac(0, 1)]]).unwrap();
        let env = Env::new(lie.clone(), a, 1);
        let rt = rmat::TorusPart(vec![vec![s]]);
        let r = rmat::gamma_r(&env, &[0], &rt).unwrap();
        let defect = r.add(&r.flip()).sub(&rmat::casimirs(&env).unwrap().varpi);
        prop_assert_eq!(defect, rt.to_tensor(&env).unwrap().scale(&frac(2, 1)));
        prop_assert!(verify::a_inv(&env, &r).unwrap().is_zero());
    }

    #[test]
    fn representations_respect_products(a in word(8), b in word(8)) {
        let lie = sl(2);
        let rep = Representation::defining(&lie).unwrap();
        let ab: Vec<u8> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(rep.word(&ab), rep.word(&a).mul(&rep.word(&b)));
    }
}
