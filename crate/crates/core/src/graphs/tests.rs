use super::*;
use crate::hopf::{antipode_sides, coassociativity_sides, counit_sides, monomials, Element, HopfInstance, Monomial};
use crate::laurent::int;
use VertexKind::Cubic;

fn cat() -> Catalog {
    Catalog::builtin()
}

fn named(name: &str) -> FeynGraph {
    cat().get(name).unwrap().clone()
}

#[test]
fn one_pi_examples() {
    assert!(named("bubble").is_one_pi());
    assert!(named("triangle").is_one_pi());
    let bridge = FeynGraph::new(vec![Cubic, Cubic], vec![(0, 1)], vec![2, 2], Marker::S0).unwrap();
    assert!(bridge.is_connected());
    assert!(!bridge.is_one_pi());
}

#[test]
fn gradings_examples() {
    let g = named("bubble").gradings();
    assert_eq!((g.i, g.v_count, g.v, g.l), (2, 2, 1, 1));
    let g = named("triangle").gradings();
    assert_eq!((g.i, g.v_count, g.v, g.l), (3, 3, 2, 1));
    let g = named("nested2").gradings();
    assert_eq!((g.i, g.v_count, g.l), (5, 4, 2));
}

#[test]
fn superficial_degree_examples() {
    assert_eq!(named("bubble").superficial_degree(), 2);
    assert_eq!(named("triangle").superficial_degree(), 0);
    assert_eq!(named("box").superficial_degree(), -2);
    for (name, g) in cat().iter() {
        assert_eq!(g.superficial_degree(), 6 - 2 * g.external_legs() as i64, "{name}");
    }
}

#[test]
fn invalid_graphs_are_rejected() {
    assert!(FeynGraph::new(vec![Cubic], vec![(0, 0)], vec![1], Marker::S0).is_err());
    assert!(FeynGraph::new(vec![Cubic, Cubic], vec![(0, 1)], vec![1, 2], Marker::S0).is_err());
    assert!(named("triangle").with_ext(Marker::S1).is_err());
    assert!(FeynGraph::from_json(
        r#"{"vertices":[{"id":0,"type":"quartic"}],"internalEdges":[],"externalLegs":[],"extStructure":"s0"}"#
    )
    .is_err());
}

#[test]
fn canonical_form_ignores_labeling() {
    // nested2 with vertices listed in reverse
    let g = FeynGraph::new(
        vec![Cubic; 4],
        vec![(3, 2), (3, 1), (2, 1), (2, 0), (1, 0)],
        vec![1, 0, 0, 1],
        Marker::S0,
    )
    .unwrap();
    assert_eq!(g, named("nested2"));
    let back = FeynGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn divergent_subgraph_examples() {
    assert!(divergent_subgraphs(&named("bubble")).unwrap().is_empty());
    // the two overlapping triangles of nested2
    let subs = divergent_subgraphs(&named("nested2")).unwrap();
    assert_eq!(subs.len(), 2);
    for s in &subs {
        assert_eq!(s.edges.len(), 3);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].external, 3);
        let q = quotient(&named("nested2"), &s.edges).unwrap();
        assert_eq!(q, named("bubble"));
    }
    let subs = divergent_subgraphs(&named("disjoint3")).unwrap();
    let shapes: Vec<usize> = subs.iter().map(|s| s.components.len()).collect();
    assert_eq!(shapes.iter().filter(|&&k| k == 1).count(), 2);
    assert_eq!(shapes.iter().filter(|&&k| k == 2).count(), 1);
    assert_eq!(subs.len(), 3);
}

#[test]
fn divergent_subgraphs_recheck_admissible() {
    for (_, g) in cat().iter() {
        for s in divergent_subgraphs(g).unwrap() {
            assert_eq!(check_admissible(g, &s.edges).unwrap(), s);
        }
    }
}

#[test]
fn quotient_examples() {
    let all: Vec<usize> = (0..5).collect();
    assert!(matches!(
        quotient(&named("nested2"), &all),
        Err(crate::Error::Admissibility(_))
    ));
    let s = &divergent_subgraphs(&named("bubble_ins")).unwrap()[0];
    let q = quotient_with(&named("bubble_ins"), s, &[Marker::S1]).unwrap();
    assert_eq!(q, named("bubble_v1"));
    assert!(q.is_one_pi());
}

#[test]
fn quotient_gradings_subtract() {
    for (_, g) in cat().iter() {
        let gg = g.gradings();
        for s in divergent_subgraphs(g).unwrap() {
            let q = quotient(g, &s.edges).unwrap();
            let qg = q.gradings();
            let (mut i, mut v, mut l) = (0, 0, 0);
            for c in &s.components {
                let h = component_graph(g, c, Marker::S0).unwrap().gradings();
                i += h.i;
                v += h.v;
                l += h.l;
            }
            assert_eq!(qg.i + i, gg.i);
            assert_eq!(qg.v + v, gg.v);
            assert_eq!(qg.l + l, gg.l);
        }
    }
}

#[test]
fn coproduct_examples() {
    let inst = GraphInstance::builtin();
    assert!(inst.fully_named());
    let bubble = inst.generator("bubble").unwrap();
    assert!(inst.reduced_coproduct(&bubble).is_zero());
    let n2 = inst.generator("nested2").unwrap();
    let d = crate::hopf::coproduct_generator(&inst, &n2);
    assert_eq!(d.len(), 3);
    let tri = Monomial::single(inst.generator("triangle").unwrap());
    assert_eq!(d.coeff(&(tri, Monomial::single(bubble))), int(2));
    assert_eq!(d.to_string(), "nested2{s0}⊗1 + 1⊗nested2{s0} + 2(triangle⊗bubble{s0})");
    // a 2-point piece is paired with both markers
    let bi = inst.generator("bubble_ins{s1}").unwrap();
    let r = inst.reduced_coproduct(&bi);
    assert_eq!(r.to_string(), "bubble{s0}⊗bubble_v0{s1} + bubble{s1}⊗bubble_v1{s1}");
    assert!(inst.generator("nonesuch").is_err());
}

#[test]
fn coproduct_terms_respect_loop_grading() {
    let inst = GraphInstance::builtin();
    for g in inst.all() {
        for ((a, b), _) in inst.reduced_coproduct(g).iter() {
            let la: usize = a.factors().iter().map(Graph::loops).sum();
            let lb: usize = b.factors().iter().map(Graph::loops).sum();
            assert_eq!(la + lb, g.loops(), "{g}");
        }
    }
}

#[test]
fn hopf_axioms_on_catalog() {
    let inst = GraphInstance::builtin();
    assert_eq!(inst.max_loops(), 3);
    for g in inst.all() {
        let m = Monomial::single(g.clone());
        let (l, r) = coassociativity_sides(&inst, &m);
        assert_eq!(l, r, "{g}");
        let (a, b) = counit_sides(&inst, &m);
        assert_eq!(a, Element::term(m.clone(), int(1)));
        assert_eq!(b, Element::term(m.clone(), int(1)));
        let (sl, sr) = antipode_sides(&inst, &m);
        assert!(sl.is_zero() && sr.is_zero(), "{g}");
    }
    for m in monomials(&inst, 2) {
        let (l, r) = coassociativity_sides(&inst, &m);
        assert_eq!(l, r, "{m}");
    }
}

#[test]
fn maximal_forest_examples() {
    assert_eq!(maximal_forests(&named("bubble")).unwrap(), vec![Vec::new()]);
    let nested = maximal_forests(&named("nested2")).unwrap();
    assert_eq!(nested.len(), 2);
    assert!(nested.iter().all(|f| f.len() == 1 && f[0].loops == 1));
    let disjoint = maximal_forests(&named("disjoint3")).unwrap();
    assert_eq!(disjoint.len(), 1);
    assert_eq!(disjoint[0].len(), 2);
}

#[test]
fn toy_graph_values() {
    use crate::laurent::{toy_factor, Context, LaurentSeries};
    let ctx = Context::standard();
    let inst = GraphInstance::builtin();
    let l = ctx.param("L").unwrap();
    let value = |s: &str| toy_graph_value(&ctx, &inst.generator(s).unwrap(), 6).unwrap();
    assert!(value("bubble{s0}").is_zero());
    let one = LaurentSeries::exp_scaled(&ctx, 1, l, 7)
        .try_mul(&toy_factor(&ctx, 1, 6))
        .unwrap();
    assert!(value("bubble{s1}").agrees_with(&one));
    assert!(value("triangle").agrees_with(&one));
    let chain = LaurentSeries::exp_scaled(&ctx, 2, l, 8)
        .try_mul(&toy_factor(&ctx, 2, 7))
        .unwrap()
        .try_mul(&toy_factor(&ctx, 1, 7))
        .unwrap();
    assert!(value("bubble_ins{s1}").agrees_with(&chain));
    assert!(value("nested2{s1}").agrees_with(&chain.scale(&int(2))));
    assert!(toy_graph_character(&inst, &ctx, 3, 2).is_err());
}

#[test]
fn toy_graph_counterterms_are_scale_free() {
    use crate::hopf::birkhoff;
    use crate::laurent::Context;
    let ctx = Context::standard();
    let inst = GraphInstance::builtin();
    let phi = toy_graph_character(&inst, &ctx, inst.max_loops(), 10).unwrap();
    let l = ctx.param("L").unwrap();
    let pair = birkhoff(&inst, &phi).unwrap();
    assert!(pair
        .negative
        .values()
        .values()
        .all(|v| v.degree_in(l).unwrap_or(0) == 0));
}
