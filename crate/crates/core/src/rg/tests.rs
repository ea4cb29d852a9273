use super::*;
use crate::graphs::{toy_graph_character, GraphInstance};
use crate::hopf::toy_character;
use crate::laurent::{rat, Context};
use crate::trees::{RootedTree, TreeInstance};

const N: i32 = 10;

fn ctx() -> Context {
    Context::standard()
}

fn t(s: &str) -> RootedTree {
    s.parse().unwrap()
}

fn pair(d: usize) -> BirkhoffPair<RootedTree> {
    birkhoff(&TreeInstance, &toy_character(&ctx(), d, N).unwrap()).unwrap()
}

fn perturbed(c: &Context, d: usize) -> Character<RootedTree> {
    let phi = toy_character(c, d, N).unwrap();
    let extra = LaurentSeries::parse(c, "L/ε").unwrap();
    let v = phi.value(&t("o")).unwrap().try_add(&extra).unwrap();
    phi.with_value(t("o"), v).unwrap()
}

fn constant(c: &Context, q: Rational) -> LaurentSeries {
    LaurentSeries::constant(c, q)
}

#[test]
fn counterterms_do_not_depend_on_the_scale() {
    assert_eq!(check_mu_independence(&pair(6)), 0);
    for order in [6, 8, 12] {
        let phi = toy_character(&ctx(), 5, order).unwrap();
        assert_eq!(check_mu_independence(&birkhoff(&TreeInstance, &phi).unwrap()), 0);
    }
    let bad = birkhoff(&TreeInstance, &perturbed(&ctx(), 3)).unwrap();
    assert!(check_mu_independence(&bad) >= 1);
    let counit = Character::counit(&ctx(), TreeInstance.generators(4));
    assert_eq!(check_mu_independence(&birkhoff(&TreeInstance, &counit).unwrap()), 0);
}

#[test]
fn residue_and_beta_values() {
    let p = pair(3);
    let res = residue(&p).unwrap();
    assert_eq!(res.value(&t("o")), constant(&ctx(), rat(1, 1)));
    assert_eq!(res.value(&t("B[o]")), constant(&ctx(), rat(1, 2)));
    let beta = beta_function(&TreeInstance, &p).unwrap();
    assert_eq!(beta.value(&t("o")), constant(&ctx(), rat(1, 1)));
    assert_eq!(beta.value(&t("B[o]")), constant(&ctx(), rat(1, 1)));
}

#[test]
fn pole_free_character_has_no_residue() {
    let c = ctx();
    let phi = Character::from_fn(&TreeInstance, &c, 4, |_| LaurentSeries::parse(&c, "1 + L*ε")).unwrap();
    let p = birkhoff(&TreeInstance, &phi).unwrap();
    assert!(residue(&p).unwrap().is_zero());
    assert!(beta_function(&TreeInstance, &p).unwrap().is_zero());
}

#[test]
fn limit_group_at_degree_one_and_zero() {
    let c = ctx();
    let ft = ft_limit(&TreeInstance, &pair(4)).unwrap();
    assert_eq!(ft.value(&t("o")).unwrap(), &LaurentSeries::parse(&c, "t").unwrap());
    let tp = c.param("t").unwrap();
    for v in ft.values().values() {
        assert!(v.substitute(tp, &ParamPoly::zero(&c)).unwrap().is_zero());
    }
}

#[test]
fn limit_group_generator_is_beta() {
    let c = ctx();
    let tp = c.param("t").unwrap();
    let p = pair(5);
    let ft = ft_limit(&TreeInstance, &p).unwrap();
    let beta = beta_function(&TreeInstance, &p).unwrap();
    for (g, v) in ft.values() {
        let d = v.constant_term().unwrap().derivative(tp).evaluate(tp, &rat(0, 1));
        assert_eq!(LaurentSeries::poly(&c, d), beta.value(g), "{g}");
    }
}

#[test]
fn limit_group_is_a_one_parameter_group() {
    let c = Context::with_two_times();
    let (tp, sp) = (c.param("t").unwrap(), c.param("s").unwrap());
    let p = birkhoff(&TreeInstance, &toy_character(&c, 4, N).unwrap()).unwrap();
    let ft = ft_limit(&TreeInstance, &p).unwrap();
    let s = ParamPoly::var(&c, sp);
    let ts = ParamPoly::var(&c, tp).try_add(&s).unwrap();
    let fs = ft.map_values(|_, v| v.substitute(tp, &s)).unwrap();
    let fts = ft.map_values(|_, v| v.substitute(tp, &ts)).unwrap();
    assert_eq!(convolve(&TreeInstance, &ft, &fs).unwrap(), fts);
}

#[test]
fn nonlocal_counterterms_are_reported() {
    let p = birkhoff(&TreeInstance, &perturbed(&ctx(), 3)).unwrap();
    assert!(matches!(
        ft_limit(&TreeInstance, &p),
        Err(Error::LocalityViolation { .. })
    ));
}

#[test]
fn counterterms_rebuilt_from_beta() {
    let p = pair(5);
    let beta = beta_function(&TreeInstance, &p).unwrap();
    let rebuilt = gamma_minus_from_beta(&TreeInstance, &beta, 5).unwrap();
    assert_eq!(
        rebuilt.value(&t("o")).unwrap(),
        &LaurentSeries::parse(&ctx(), "-1/ε").unwrap()
    );
    assert_eq!(rebuilt, p.negative);
    let zero = InfinitesimalCharacter::zero(&ctx());
    let trivial = gamma_minus_from_beta(&TreeInstance, &zero, 4).unwrap();
    assert!(trivial.values().values().all(LaurentSeries::is_zero));
}

#[test]
fn graph_counterterms_rebuilt_from_beta() {
    let inst = GraphInstance::builtin();
    let d = inst.max_loops();
    let phi = toy_graph_character(&inst, &ctx(), d, N).unwrap();
    let report = rg_report(&inst, &phi, d).unwrap();
    assert_eq!(report.l_independence_witness, 0);
    assert!(report.reconstruction_matches());
    assert!(report.rows(&inst).iter().all(|r| r.matches));
}

#[test]
fn report_on_trees() {
    let phi = toy_character(&ctx(), 5, N).unwrap();
    let report = rg_report(&TreeInstance, &phi, 5).unwrap();
    assert_eq!(report.l_independence_witness, 0);
    assert!(report.reconstruction_matches());
    assert_eq!(report.rows(&TreeInstance).len(), 1 + 1 + 2 + 4 + 9);
}
