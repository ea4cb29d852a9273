use super::*;
use crate::graphs::{component_graph, quotient_with, Marker, Subgraph};
use crate::hopf::{convolve, toy_character};
use crate::laurent::{rat, Context, ParamPoly};
use crate::trees::{trees_of_size, RootedTree, TreeInstance};

const N: i32 = 10;

fn ctx() -> Context {
    Context::standard()
}

fn t(s: &str) -> RootedTree {
    s.parse().unwrap()
}

fn trees_upto(n: usize) -> Vec<RootedTree> {
    (1..=n).flat_map(trees_of_size).collect()
}

fn z(x: &LieElement<RootedTree>) -> InfinitesimalCharacter<RootedTree> {
    tree_to_infinitesimal(&ctx(), x)
}

fn single(tree: &RootedTree) -> LieElement<RootedTree> {
    LieElement::term(tree.clone(), Rational::one())
}

#[test]
fn grafting_bracket_examples() {
    assert_eq!(tree_bracket(&t("o"), &t("B[o]")).to_string(), "B[o o]");
    assert_eq!(
        tree_bracket(&t("o"), &t("B[B[o]]")).to_string(),
        "B[B[o o]] + B[B[o] o]"
    );
    assert!(tree_bracket(&t("B[o]"), &t("B[o]")).is_zero());
}

#[test]
fn symmetry_factors() {
    for (s, k) in [
        ("o", 1),
        ("B[o]", 1),
        ("B[o o]", 2),
        ("B[o o o]", 6),
        ("B[B[o] B[o]]", 2),
        ("B[B[o o] B[o o]]", 8),
        ("B[B[o o] o]", 2),
    ] {
        assert_eq!(symmetry_factor(&t(s)), k, "{s}");
    }
}

#[test]
fn grafting_bracket_is_antisymmetric_and_satisfies_jacobi() {
    let ts = trees_upto(4);
    for a in &ts {
        for b in &ts {
            if a.vertex_count() + b.vertex_count() > 5 {
                continue;
            }
            let mut ab = tree_bracket(a, b);
            ab.add_all(&tree_bracket(b, a), &Rational::one());
            assert!(ab.is_zero(), "[{a},{b}]");
        }
    }
    let ts = trees_upto(3);
    for a in &ts {
        for b in &ts {
            for c in &ts {
                if a.vertex_count() + b.vertex_count() + c.vertex_count() > 5 {
                    continue;
                }
                let (a1, b1, c1) = (single(a), single(b), single(c));
                let mut sum = tree_bracket_linear(&a1, &tree_bracket_linear(&b1, &c1));
                sum.add_all(
                    &tree_bracket_linear(&b1, &tree_bracket_linear(&c1, &a1)),
                    &Rational::one(),
                );
                sum.add_all(
                    &tree_bracket_linear(&c1, &tree_bracket_linear(&a1, &b1)),
                    &Rational::one(),
                );
                assert!(sum.is_zero(), "Jacobi on {a}, {b}, {c}");
            }
        }
    }
}

#[test]
fn convolution_bracket_matches_grafting() {
    let dot = InfinitesimalCharacter::delta(&ctx(), t("o"));
    let chain = InfinitesimalCharacter::delta(&ctx(), t("B[o]"));
    let br = bracket(&TreeInstance, &dot, &chain, 5).unwrap();
    let cherry = InfinitesimalCharacter::delta(&ctx(), t("B[o o]")).scale(&rat(2, 1));
    assert_eq!(br, cherry);
    for a in trees_upto(4) {
        for b in trees_upto(4) {
            if a.vertex_count() + b.vertex_count() > 5 {
                continue;
            }
            let lhs = bracket(&TreeInstance, &z(&single(&a)), &z(&single(&b)), 5).unwrap();
            let rhs = z(&tree_bracket(&a, &b));
            assert_eq!(lhs, rhs, "[{a},{b}]");
        }
    }
}

#[test]
fn grading_is_a_derivation_of_both_brackets() {
    for a in trees_upto(3) {
        for b in trees_upto(3) {
            let (a1, b1) = (single(&a), single(&b));
            let lhs = grading_y(&TreeInstance, &tree_bracket_linear(&a1, &b1));
            let mut rhs = tree_bracket_linear(&grading_y(&TreeInstance, &a1), &b1);
            rhs.add_all(
                &tree_bracket_linear(&a1, &grading_y(&TreeInstance, &b1)),
                &Rational::one(),
            );
            assert_eq!(lhs, rhs);
            let (za, zb) = (z(&a1), z(&b1));
            let lhs = grading_y_character(&TreeInstance, &bracket(&TreeInstance, &za, &zb, 6).unwrap());
            let rhs = bracket(&TreeInstance, &grading_y_character(&TreeInstance, &za), &zb, 6)
                .unwrap()
                .try_add(&bracket(&TreeInstance, &za, &grading_y_character(&TreeInstance, &zb), 6).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

/// Counts edge subsets of `g` forming one piece isomorphic to `sub` whose
/// contraction under `marker` is isomorphic to `quot`.
fn brute_force_count(g: &FeynGraph, sub: &FeynGraph, marker: Marker, quot: &FeynGraph) -> usize {
    let m = g.edges().len();
    let mut count = 0;
    for mask in 1u32..(1 << m) {
        let edges: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        let s = Subgraph::from_edges(g, &edges).unwrap();
        if s.components.len() != 1 {
            continue;
        }
        let Ok(piece) = component_graph(g, &s.components[0], sub.ext()) else {
            continue;
        };
        if &piece != sub {
            continue;
        }
        if let Ok(q) = quotient_with(g, &s, &[marker]) {
            if &q == quot {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn graph_bracket_counts_insertions() {
    let inst = GraphInstance::builtin();
    let tri = inst.generator("triangle").unwrap();
    let bub = inst.generator("bubble{s0}").unwrap();
    let nested = inst.generator("nested2").unwrap();
    let br = graph_bracket(&inst, &tri, &bub).unwrap();
    let n = brute_force_count(nested.graph(), tri.graph(), Marker::S0, bub.graph());
    assert_eq!(n, 2);
    assert_eq!(br.coeff(&nested), int(n as i64));
    let br2 = graph_bracket(&inst, &bub, &tri).unwrap();
    assert_eq!(br2.coeff(&nested), -int(n as i64));
}

#[test]
fn graph_bracket_matches_convolution_bracket() {
    let inst = GraphInstance::builtin();
    let gens: Vec<Graph> = inst.all().cloned().collect();
    let mut checked = 0;
    for a in &gens {
        for b in &gens {
            let Ok(br) = graph_bracket(&inst, a, b) else {
                continue;
            };
            let lhs = bracket(
                &inst,
                &InfinitesimalCharacter::delta(&ctx(), a.clone()),
                &InfinitesimalCharacter::delta(&ctx(), b.clone()),
                inst.max_loops(),
            )
            .unwrap();
            assert_eq!(lhs, InfinitesimalCharacter::from_combination(&ctx(), &br), "[{a},{b}]");
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn insertion_leaving_the_catalog_is_reported() {
    let inst = GraphInstance::builtin();
    let tri = inst.generator("triangle").unwrap();
    let bx = inst.generator("box").unwrap();
    assert!(matches!(
        graph_bracket(&inst, &tri, &bx),
        Err(Error::UnsupportedInsertion(_))
    ));
}

#[test]
fn insertions_of_triangle_into_bubble() {
    let inst = GraphInstance::builtin();
    let tri = inst.generator("triangle").unwrap();
    let bub = inst.generator("bubble{s0}").unwrap();
    let nested = inst.generator("nested2").unwrap();
    let hs = insertions(tri.graph(), bub.graph()).unwrap();
    assert_eq!(hs, vec![nested.graph().clone()]);
    // a vertex correction inside a vertex correction is not shipped, yet [X, X] = 0
    assert!(insertions(tri.graph(), tri.graph())
        .unwrap()
        .iter()
        .all(|h| inst.lookup(h).is_none()));
    assert!(graph_bracket(&inst, &tri, &tri).unwrap().is_zero());
}

fn toy(d: usize) -> Character<RootedTree> {
    toy_character(&ctx(), d, N).unwrap()
}

#[test]
fn theta_at_zero_is_identity() {
    let phi = toy(4);
    let out = theta(&TreeInstance, &ParamPoly::zero(&ctx()), &phi).unwrap();
    assert_eq!(out, phi);
}

#[test]
fn theta_shifts_the_scale() {
    let c = ctx();
    let (l, tp) = (c.param("L").unwrap(), c.param("t").unwrap());
    let phi = toy(4);
    let tau = ParamPoly::var(&c, tp);
    let lhs = theta(&TreeInstance, &tau, &phi).unwrap();
    let shift = ParamPoly::var(&c, l).try_add(&tau).unwrap();
    let rhs = phi.map_values(|_, v| v.substitute(l, &shift)).unwrap();
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn theta_is_a_one_parameter_group_of_automorphisms() {
    let c = Context::with_two_times();
    let (tp, sp) = (c.param("t").unwrap(), c.param("s").unwrap());
    let phi = toy_character(&c, 4, N).unwrap();
    let (tt, ss) = (ParamPoly::var(&c, tp), ParamPoly::var(&c, sp));
    let both = theta(&TreeInstance, &tt, &theta(&TreeInstance, &ss, &phi).unwrap()).unwrap();
    let sum = theta(&TreeInstance, &tt.try_add(&ss).unwrap(), &phi).unwrap();
    assert!(both.agrees_with(&sum));
    let psi = inverse_toy(&c);
    let lhs = theta(&TreeInstance, &tt, &convolve(&TreeInstance, &phi, &psi).unwrap()).unwrap();
    let rhs = convolve(
        &TreeInstance,
        &theta(&TreeInstance, &tt, &phi).unwrap(),
        &theta(&TreeInstance, &tt, &psi).unwrap(),
    )
    .unwrap();
    assert!(lhs.agrees_with(&rhs));
}

fn inverse_toy(c: &Context) -> Character<RootedTree> {
    crate::hopf::inverse(&TreeInstance, &toy_character(c, 4, N).unwrap()).unwrap()
}

fn sample_infinitesimal(d: usize) -> InfinitesimalCharacter<RootedTree> {
    let vals = trees_upto(d)
        .into_iter()
        .enumerate()
        .map(|(i, tr)| (tr, LaurentSeries::constant(&ctx(), rat(i as i64 + 1, 3))))
        .collect();
    InfinitesimalCharacter::new(&ctx(), vals).unwrap()
}

#[test]
fn exp_gives_characters_and_log_inverts_it() {
    let zc = sample_infinitesimal(4);
    let e = exp_functional(&TreeInstance, &zc, 4).unwrap();
    assert!(e.is_multiplicative(&TreeInstance).unwrap());
    let ch = e.to_character(&TreeInstance).unwrap();
    let back = log_functional(&TreeInstance, &ch, 4).unwrap();
    assert!(back.is_infinitesimal());
    assert_eq!(back.to_infinitesimal().unwrap(), zc);
}

#[test]
fn log_of_toy_character_is_infinitesimal() {
    let phi = toy(4);
    let lf = log_functional(&TreeInstance, &phi, 4).unwrap();
    assert!(lf.is_infinitesimal());
    let again = exp_character(&TreeInstance, &lf.to_infinitesimal().unwrap(), 4).unwrap();
    assert!(again.agrees_with(&phi));
}

#[test]
fn grading_acts_as_the_generator_of_the_semidirect_product() {
    // [Z₀, Z] = Y(Z) with Z₀ acting by Y on functionals
    let f = Functional::from_character(&TreeInstance, &toy(4), 4).unwrap();
    for tree in trees_upto(3) {
        let zc = Functional::from_infinitesimal(&z(&single(&tree)), 4);
        let lhs = zc.convolve(&TreeInstance, &f).unwrap().graded(&TreeInstance);
        let lhs = lhs
            .try_add(
                &zc.convolve(&TreeInstance, &f.graded(&TreeInstance))
                    .unwrap()
                    .scale(&-Rational::one()),
            )
            .unwrap();
        let rhs = zc.graded(&TreeInstance).convolve(&TreeInstance, &f).unwrap();
        assert!(lhs.agrees_with(&rhs), "{tree}");
    }
}

#[test]
fn exp_of_zero_is_counit_and_primitive_values_pass_through() {
    let e = exp_character(&TreeInstance, &InfinitesimalCharacter::zero(&ctx()), 4).unwrap();
    assert!(e.values().values().all(LaurentSeries::is_zero));
    let zc = sample_infinitesimal(3);
    let e = exp_character(&TreeInstance, &zc, 3).unwrap();
    assert_eq!(e.value(&t("o")).unwrap(), &zc.value(&t("o")));
}

#[test]
fn convolution_bracket_satisfies_jacobi() {
    let gens = trees_upto(3);
    let ds: Vec<_> = gens
        .iter()
        .take(3)
        .map(|g| InfinitesimalCharacter::delta(&ctx(), g.clone()))
        .collect();
    let br = |a: &InfinitesimalCharacter<RootedTree>, b: &InfinitesimalCharacter<RootedTree>| {
        bracket(&TreeInstance, a, b, 6).unwrap()
    };
    let (a, b, c) = (&ds[0], &ds[1], &ds[2]);
    let sum = br(a, &br(b, c))
        .try_add(&br(b, &br(c, a)))
        .unwrap()
        .try_add(&br(c, &br(a, b)))
        .unwrap();
    assert!(sum.is_zero());
    assert!(br(a, a).is_zero());
}
