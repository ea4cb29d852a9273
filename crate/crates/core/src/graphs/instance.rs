//! The shipped catalog and the Hopf algebra it generates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_traits::One;

use super::graph::{FeynGraph, Marker};
use super::subgraph::{coproduct_terms, maximal_forests};
use crate::error::{Error, Result};
use crate::hopf::{Character, HopfInstance, Monomial, Tensor};
use crate::laurent::{toy_factor, Context, LaurentSeries, Rational};

const BUILTIN: &[(&str, &str)] = &[
    ("bubble", include_str!("../../catalog/bubble.json")),
    ("triangle", include_str!("../../catalog/triangle.json")),
    ("box", include_str!("../../catalog/box.json")),
    ("nested2", include_str!("../../catalog/nested2.json")),
    ("bubble_ins", include_str!("../../catalog/bubble_ins.json")),
    ("triangle_ins", include_str!("../../catalog/triangle_ins.json")),
    ("disjoint3", include_str!("../../catalog/disjoint3.json")),
    ("chain3", include_str!("../../catalog/chain3.json")),
    ("bubble_v0", include_str!("../../catalog/bubble_v0.json")),
    ("bubble_v1", include_str!("../../catalog/bubble_v1.json")),
    ("bubble_v00", include_str!("../../catalog/bubble_v00.json")),
    ("bubble_v01", include_str!("../../catalog/bubble_v01.json")),
    ("bubble_v11", include_str!("../../catalog/bubble_v11.json")),
    ("triangle_v0", include_str!("../../catalog/triangle_v0.json")),
    ("triangle_v1", include_str!("../../catalog/triangle_v1.json")),
    ("disjoint3_v0", include_str!("../../catalog/disjoint3_v0.json")),
    ("disjoint3_v1", include_str!("../../catalog/disjoint3_v1.json")),
    ("bubble_ins_v0", include_str!("../../catalog/bubble_ins_v0.json")),
    ("bubble_ins_v1", include_str!("../../catalog/bubble_ins_v1.json")),
];

/// Named graphs, one per file.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    graphs: BTreeMap<String, FeynGraph>,
}

impl Catalog {
    pub fn builtin() -> Self {
        let graphs = BUILTIN
            .iter()
            .map(|(name, text)| {
                let g = FeynGraph::from_json(text).unwrap_or_else(|e| panic!("builtin graph {name}: {e}"));
                (name.to_string(), g)
            })
            .collect();
        Catalog { graphs }
    }

    /// Reads every `*.json` file of a directory; the file stem is the name.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut graphs = BTreeMap::new();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.sort();
        for p in paths {
            if p.extension().and_then(|s| s.to_str()) != Some("json") {
                continue;
            }
            let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let g = FeynGraph::from_json(&std::fs::read_to_string(&p)?)
                .map_err(|e| Error::InvalidGraph(format!("{}: {e}", p.display())))?;
            graphs.insert(name, g);
        }
        Ok(Catalog { graphs })
    }

    pub fn get(&self, name: &str) -> Result<&FeynGraph> {
        self.graphs
            .get(name)
            .ok_or_else(|| Error::UnknownGraph(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.graphs.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FeynGraph)> {
        self.graphs.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// A Hopf generator: a 1PI graph with its marker, plus a display name.
#[derive(Clone, Debug)]
pub struct Graph {
    graph: Arc<FeynGraph>,
    name: Arc<str>,
}

impl Graph {
    pub fn graph(&self) -> &FeynGraph {
        &self.graph
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn loops(&self) -> usize {
        self.graph.loops()
    }

    pub fn marker(&self) -> Marker {
        self.graph.ext()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for Graph {}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graph
            .loops()
            .cmp(&other.graph.loops())
            .then_with(|| self.graph.external_legs().cmp(&other.graph.external_legs()))
            .then_with(|| self.graph.cmp(&other.graph))
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.graph.external_legs() == 2 {
            write!(f, "{{{}}}", self.graph.ext())?;
        }
        Ok(())
    }
}

/// The graph Hopf algebra: the catalog in every admissible marker, closed
/// under taking divergent subgraphs and quotients.
#[derive(Clone, Debug)]
pub struct GraphInstance {
    names: BTreeMap<FeynGraph, Arc<str>>,
    gens: BTreeSet<Graph>,
    terms: BTreeMap<FeynGraph, Vec<(Monomial<Graph>, Monomial<Graph>)>>,
}

impl GraphInstance {
    pub fn builtin() -> Self {
        GraphInstance::from_catalog(&Catalog::builtin()).expect("builtin catalog is closed and 1PI")
    }

    pub fn from_catalog(cat: &Catalog) -> Result<Self> {
        let mut names = BTreeMap::new();
        for (name, g) in cat.iter() {
            if !g.is_one_pi() {
                return Err(Error::InvalidGraph(format!("catalog graph `{name}` is not 1PI")));
            }
            names.entry(g.with_ext(Marker::S0)?).or_insert_with(|| Arc::from(name));
        }
        let mut inst = GraphInstance {
            names,
            gens: BTreeSet::new(),
            terms: BTreeMap::new(),
        };
        let mut queue: VecDeque<FeynGraph> = VecDeque::new();
        for (_, g) in cat.iter() {
            for &m in Marker::basis(g.external_legs()) {
                queue.push_back(g.with_ext(m)?);
            }
        }
        while let Some(g) = queue.pop_front() {
            if inst.terms.contains_key(&g) {
                continue;
            }
            let mut terms = Vec::new();
            for t in coproduct_terms(&g)? {
                let pieces = t.pieces.iter().map(|p| inst.wrap(p)).collect();
                terms.push((Monomial::from_vec(pieces), Monomial::single(inst.wrap(&t.quotient))));
                for p in t.pieces.into_iter().chain(std::iter::once(t.quotient)) {
                    if !inst.terms.contains_key(&p) {
                        queue.push_back(p);
                    }
                }
            }
            let gen = inst.wrap(&g);
            inst.gens.insert(gen);
            inst.terms.insert(g, terms);
        }
        Ok(inst)
    }

    fn wrap(&self, g: &FeynGraph) -> Graph {
        let key = g.with_ext(Marker::S0).expect("s0 is always allowed");
        let name = self
            .names
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Arc::from(format!("[{}]", g.code())));
        Graph {
            graph: Arc::new(g.clone()),
            name,
        }
    }

    /// Looks a generator up by `name` or `name{s0}` / `name{s1}`.
    pub fn generator(&self, spec: &str) -> Result<Graph> {
        let (name, marker) = match spec.strip_suffix('}').and_then(|s| s.split_once('{')) {
            Some((n, m)) => (n, m.parse::<Marker>()?),
            None => (spec, Marker::S0),
        };
        self.gens
            .iter()
            .find(|g| &*g.name == name && g.marker() == marker)
            .cloned()
            .ok_or_else(|| Error::UnknownGraph(spec.to_string()))
    }

    /// The generator for a graph of the closure.
    pub fn lookup(&self, g: &FeynGraph) -> Option<Graph> {
        self.terms.contains_key(g).then(|| self.wrap(g))
    }

    pub fn all(&self) -> impl Iterator<Item = &Graph> {
        self.gens.iter()
    }

    pub fn max_loops(&self) -> usize {
        self.gens.iter().map(Graph::loops).max().unwrap_or(0)
    }

    /// Whether every generator carries a catalog name.
    pub fn fully_named(&self) -> bool {
        self.gens.iter().all(|g| !g.name.starts_with('['))
    }
}

impl HopfInstance for GraphInstance {
    type Gen = Graph;

    fn degree(&self, g: &Graph) -> usize {
        g.loops()
    }

    fn generators(&self, max_degree: usize) -> Vec<Graph> {
        self.gens
            .iter()
            .filter(|g| g.loops() >= 1 && g.loops() <= max_degree)
            .cloned()
            .collect()
    }

    fn reduced_coproduct(&self, g: &Graph) -> Tensor<Graph> {
        let mut out = Tensor::zero();
        for (a, b) in self.subdivergences(g) {
            out.add((a, b), Rational::one());
        }
        out
    }

    fn subdivergences(&self, g: &Graph) -> Vec<(Monomial<Graph>, Monomial<Graph>)> {
        self.terms
            .get(&g.graph)
            .unwrap_or_else(|| panic!("{g} is not a generator of this instance"))
            .clone()
    }
}

/// `φ(Γ) = e^{ℓεL} Σ_F Π_{v ∈ F ∪ {Γ}} 1/(ℓ_v ε(1 − ℓ_v ε))` over the maximal
/// forests `F` of divergent pieces, with `ℓ_v` the loop number of a piece; valid
/// through `ε^order`. Zero on 2-point graphs under marker `s0`, whose
/// zero-momentum part vanishes for massless propagators.
pub fn toy_graph_value(ctx: &Context, g: &Graph, order: i32) -> Result<LaurentSeries> {
    let l = ctx.param("L")?;
    let n = g.loops();
    let mut out = LaurentSeries::zero(ctx, Some(order));
    if g.graph().external_legs() == 2 && g.marker() == Marker::S0 {
        return Ok(out);
    }
    for forest in maximal_forests(g.graph())? {
        let m = forest.len() as i32 + 1;
        let mut term = LaurentSeries::exp_scaled(ctx, n as u32, l, order + m);
        term = term.try_mul(&toy_factor(ctx, n as u32, order + m - 1))?;
        for piece in &forest {
            term = term.try_mul(&toy_factor(ctx, piece.loops as u32, order + m - 1))?;
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// The toy character on every generator with at most `max_loops` loops.
pub fn toy_graph_character(
    inst: &GraphInstance,
    ctx: &Context,
    max_loops: usize,
    order: i32,
) -> Result<Character<Graph>> {
    if order < max_loops as i32 {
        return Err(Error::Truncation(format!(
            "order {order} is below the loop bound {max_loops}"
        )));
    }
    Character::from_fn(inst, ctx, max_loops, |g| toy_graph_value(ctx, g, order))
}
