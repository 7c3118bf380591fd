use std::sync::Arc;

use cdyb_core::cartan::{LetterMap, LieAlgebra, Subspace, TypeLetter};
use cdyb_core::rmat;
use cdyb_core::{fold, verify, Env};

fn lie(letter: TypeLetter, rank: usize) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::new(letter, rank).unwrap())
}

#[test]
fn felder_r_solves_yb_on_small_types() {
    for (letter, rank) in [(TypeLetter::A, 1), (TypeLetter::A, 2), (TypeLetter::B, 2), (TypeLetter::G, 2)] {
        let env = Env::full(lie(letter, rank));
        let r = rmat::felder_r(&env).unwrap();
        assert!(verify::yb(&env, &r).unwrap().is_zero(), "{letter:?}{rank}");
        assert!(verify::a_inv(&env, &r).unwrap().is_zero(), "{letter:?}{rank}");
    }
}

#[test]
fn antisymmetric_schiffmann_r_solves_yb_for_every_admissible_a2_triple() {
    let g = lie(TypeLetter::A, 2);
    let a = Subspace::zero(&g);
    let env = Env::new(g.clone(), a.clone(), 1);
    let summaries = rmat::enumerate_bd(&g, &a).unwrap();
    assert!(summaries.iter().any(|s| !s.triple.is_identity()));
    for s in summaries.iter().filter(|s| s.admissibility.is_admissible()) {
        let space = s.space.as_ref().unwrap();
        let rt = space.antisymmetric.clone().unwrap_or_else(|| space.particular.clone());
        if !rt.sym().is_zero() {
            continue;
        }
        let r = rmat::schiffmann_r(&env, &s.triple, &rt).unwrap();
        assert!(verify::yb(&env, &r).unwrap().is_zero(), "{}", s.triple.render());
    }
}

#[test]
fn folded_felder_r_satisfies_the_coupled_system() {
    let env = Env::full(lie(TypeLetter::A, 2));
    let r = rmat::felder_r(&env).unwrap();
    let theta = LetterMap::sigma(env.lie());
    let f = fold::fold(&env, &r, &theta).unwrap();
    assert_eq!(f.r_plus.sub(&f.r_minus), r);
    let fenv = f.env(&env);
    for res in [verify::cyb1, verify::cyb2, verify::cyb3, verify::cyb4] {
        assert!(res(&fenv, &f.r_plus, &f.r_minus).unwrap().is_zero());
    }
    assert!(verify::cr(&fenv, &f.r_plus, &f.r_minus, &f.kappa).unwrap().is_zero());
}
