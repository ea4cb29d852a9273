use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::hopf::{
    antipode_sides, birkhoff, coassociativity_sides, convolve, counit_sides, inverse, monomials, toy_character,
    Element, HopfInstance, Monomial,
};
use crate::laurent::{int, rat, Context};

fn q(a: &[Rational]) -> FormalDiffeo<Rational> {
    FormalDiffeo::new(&Rational::one(), a.to_vec())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_diffeo(rng: &mut ChaCha8Rng, k: usize) -> FormalDiffeo<Rational> {
    q(&(0..k).map(|_| random_rational(rng)).collect::<Vec<_>>())
}

fn ctx() -> Context {
    Context::standard()
}

fn ls(s: &str) -> LaurentSeries {
    LaurentSeries::parse(&ctx(), s).unwrap()
}

fn lp(cs: &[&str]) -> DiffeoLoop {
    FormalDiffeo::new(&LaurentSeries::one(&ctx()), cs.iter().map(|s| ls(s)).collect())
}

/// A loop whose `a_n` has a pole of order at most `n`.
fn random_loop(rng: &mut ChaCha8Rng, k: usize) -> DiffeoLoop {
    let c = ctx();
    let coeffs = (1..=k)
        .map(|n| {
            let terms = (-(n as i32)..=2).map(|e| (e, ParamPoly::constant(&c, random_rational(rng))));
            LaurentSeries::from_terms(&c, terms, None).unwrap()
        })
        .collect();
    FormalDiffeo::new(&LaurentSeries::one(&c), coeffs)
}

#[test]
fn composition_examples() {
    let (a, b) = (rat(2, 3), rat(-5, 7));
    let f = q(&[a.clone(), int(0), int(0)]);
    let h = q(&[b.clone(), int(0), int(0)]);
    let fh = f.compose(&h).unwrap();
    assert_eq!(fh.coeff(1), &(&a + &b));
    // a·(g + b g³)³ contributes 3ab at g⁵
    assert_eq!(fh.coeff(2), &(int(3) * &a * &b));
    let id = FormalDiffeo::identity(&Rational::one(), 3);
    assert_eq!(f.compose(&id).unwrap(), f);
    assert_eq!(id.compose(&f).unwrap(), f);
}

#[test]
fn group_axioms_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (f, g, h) = (
            random_diffeo(&mut rng, 4),
            random_diffeo(&mut rng, 4),
            random_diffeo(&mut rng, 4),
        );
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        assert_eq!(left, right);
        let inv = f.invert().unwrap();
        let id = FormalDiffeo::identity(&Rational::one(), 4);
        assert_eq!(f.compose(&inv).unwrap(), id);
        assert_eq!(inv.compose(&f).unwrap(), id);
    }
}

#[test]
fn inversion_examples() {
    let id = FormalDiffeo::identity(&Rational::one(), 4);
    assert_eq!(id.invert().unwrap(), id);
    let a = rat(3, 2);
    let inv = q(&[a.clone(), int(0), int(0)]).invert().unwrap();
    assert_eq!(inv.coeff(1), &-a.clone());
    assert_eq!(inv.coeff(2), &(int(3) * &a * &a));
}

#[test]
fn normalization_is_enforced() {
    assert!(matches!(
        FormalDiffeo::from_odd_series(vec![int(2), int(1)]),
        Err(Error::Domain(_))
    ));
    let f = FormalDiffeo::from_odd_series(vec![int(1), int(5)]).unwrap();
    assert_eq!(f.coeff(1), &int(5));
}

#[test]
fn birkhoff_of_holomorphic_loop_is_trivial() {
    let l = lp(&["1 + ε", "L - ε^2"]);
    let d = birkhoff_diffeo(&l).unwrap();
    assert!(d.negative.is_identity());
    assert_eq!(d.positive, l);
}

#[test]
fn birkhoff_one_coefficient() {
    let d = birkhoff_diffeo(&lp(&["1/ε + 3"])).unwrap();
    assert_eq!(d.negative.coeff(1), &ls("-1/ε"));
    assert_eq!(d.positive.coeff(1), &ls("3"));
    assert!(d.reconstruct().unwrap().agrees_with(&lp(&["1/ε + 3"])));
}

#[test]
fn birkhoff_two_coefficients_reconstructs() {
    let l = lp(&["2/ε + 1 + ε", "1/ε^2 - 1/(3*ε) + 5"]);
    let d = birkhoff_diffeo(&l).unwrap();
    assert!(d.reconstruct().unwrap().agrees_with(&l));
    for c in d.negative.coeffs() {
        assert_eq!(c, &c.pole_part());
    }
    for c in d.positive.coeffs() {
        assert!(c.pole_part().is_zero());
    }
}

#[test]
fn birkhoff_random_loops_to_g9() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let l = random_loop(&mut rng, 4);
        let d = birkhoff_diffeo(&l).unwrap();
        assert_eq!(d.reconstruct().unwrap(), l);
        assert!(d.positive.coeffs().iter().all(|c| c.pole_part().is_zero()));
        assert!(d.negative.coeffs().iter().all(|c| c == &c.pole_part()));
        assert_eq!(d.renormalized().unwrap().order(), 4);
    }
}

#[test]
fn excessive_pole_order_is_rejected() {
    assert!(birkhoff_diffeo(&lp(&["1/ε^2"])).is_err());
}

#[test]
fn faa_di_bruno_coproduct() {
    let d = FaaDiBruno.reduced_coproduct(&Coord(2));
    // Δa₂ ∋ a₁ ⊗ [x](1 + a₁x)³ = 3 a₁ ⊗ a₁
    assert_eq!(
        d.coeff(&(Monomial::single(Coord(1)), Monomial::single(Coord(1)))),
        int(3)
    );
    assert_eq!(d.len(), 1);
    for m in monomials(&FaaDiBruno, 4) {
        let (l, r) = coassociativity_sides(&FaaDiBruno, &m);
        assert_eq!(l, r, "{m}");
        let (a, b) = counit_sides(&FaaDiBruno, &m);
        assert_eq!(a, Element::term(m.clone(), int(1)));
        assert_eq!(b, Element::term(m.clone(), int(1)));
    }
    for g in FaaDiBruno.generators(4) {
        let (sl, sr) = antipode_sides(&FaaDiBruno, &Monomial::single(g));
        assert!(sl.is_zero() && sr.is_zero());
    }
}

#[test]
fn convolution_is_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let (f, h) = (random_loop(&mut rng, 4), random_loop(&mut rng, 4));
        let lhs = convolve(&FaaDiBruno, &character_of(&f).unwrap(), &character_of(&h).unwrap()).unwrap();
        assert_eq!(diffeo_of(&ctx(), &lhs, 4).unwrap(), f.compose(&h).unwrap());
    }
}

#[test]
fn opposed_birkhoff_matches_hopf_birkhoff_of_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let l = random_loop(&mut rng, 4);
        let d = birkhoff_diffeo(&l).unwrap();
        let psi = inverse(&FaaDiBruno, &character_of(&l).unwrap()).unwrap();
        let pair = birkhoff(&FaaDiBruno, &psi).unwrap();
        let neg = diffeo_of(&ctx(), &pair.negative, 4).unwrap();
        let pos = diffeo_of(&ctx(), &pair.positive, 4).unwrap();
        assert_eq!(neg, d.negative.invert().unwrap());
        assert!(pos.agrees_with(&d.positive.invert().unwrap()));
    }
}

#[test]
fn effective_coupling_from_toy_values() {
    let phi = toy_character(&ctx(), 4, 10).unwrap();
    assert!(effective_coupling_toy(&phi, 0).unwrap().is_identity());
    let g1 = effective_coupling_toy(&phi, 1).unwrap();
    let dot = phi.value(&RootedTree::leaf()).unwrap();
    assert_eq!(g1.coeff(1), &dot.try_add(&dot.scale(&rat(3, 2))).unwrap());
    let g4 = effective_coupling_toy(&phi, 4).unwrap();
    let d = birkhoff_diffeo(&g4).unwrap();
    assert!(d.reconstruct().unwrap().agrees_with(&g4));
    assert!(d.positive.coeffs().iter().all(|c| c.pole_part().is_zero()));
    d.renormalized().unwrap();
}
