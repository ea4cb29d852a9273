//! Divergent subgraphs, their contraction, and the raw coproduct terms.

use std::collections::BTreeSet;

use super::graph::{FeynGraph, Marker, VertexKind};
use crate::error::{Error, Result};

/// One connected piece of a subgraph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// External legs of the piece: legs of its vertices plus edges leaving it.
    pub external: usize,
}

/// A set of internal edges together with its connected components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgraph {
    pub edges: Vec<usize>,
    pub components: Vec<Component>,
}

impl Subgraph {
    /// Splits an edge set of `g` into components.
    pub fn from_edges(g: &FeynGraph, edges: &[usize]) -> Result<Self> {
        let mut edges: Vec<usize> = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edges().len()) {
            return Err(Error::Admissibility(format!("edge index {e} out of range")));
        }
        let n = g.vertex_count();
        let mut root: Vec<usize> = (0..n).collect();
        fn find(r: &mut [usize], v: usize) -> usize {
            let mut v = v;
            while r[v] != v {
                r[v] = r[r[v]];
                v = r[v];
            }
            v
        }
        let mut touched = BTreeSet::new();
        for &e in &edges {
            let (a, b) = g.edges()[e];
            touched.insert(a);
            touched.insert(b);
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            root[ra] = rb;
        }
        let mut comps: Vec<Component> = Vec::new();
        let mut key: Vec<usize> = Vec::new();
        for &v in &touched {
            let r = find(&mut root, v);
            match key.iter().position(|&k| k == r) {
                Some(i) => comps[i].vertices.push(v),
                None => {
                    key.push(r);
                    comps.push(Component {
                        vertices: vec![v],
                        edges: Vec::new(),
                        external: 0,
                    });
                }
            }
        }
        for &e in &edges {
            let r = find(&mut root, g.edges()[e].0);
            let i = key.iter().position(|&k| k == r).expect("edge endpoint is touched");
            comps[i].edges.push(e);
        }
        for c in comps.iter_mut() {
            let valence: usize = c.vertices.iter().map(|&v| g.kinds()[v].valence()).sum();
            c.external = valence - 2 * c.edges.len();
        }
        Ok(Subgraph {
            edges,
            components: comps,
        })
    }
}

/// The component as a graph on its own, with edges leaving it turned into
/// external legs.
pub fn component_graph(g: &FeynGraph, c: &Component, ext: Marker) -> Result<FeynGraph> {
    let pos = |v: usize| c.vertices.iter().position(|&w| w == v);
    let kinds = c.vertices.iter().map(|&v| g.kinds()[v]).collect();
    let mut legs: Vec<usize> = c.vertices.iter().map(|&v| g.legs()[v]).collect();
    let mut edges = Vec::new();
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        match (pos(a), pos(b)) {
            (Some(x), Some(y)) if c.edges.contains(&k) => edges.push((x, y)),
            (Some(x), Some(y)) => {
                legs[x] += 1;
                legs[y] += 1;
            }
            (Some(x), None) => legs[x] += 1,
            (None, Some(y)) => legs[y] += 1,
            (None, None) => {}
        }
    }
    FeynGraph::new(kinds, edges, legs, ext)
}

/// Checks that `edges` is a proper nonempty edge set whose components are
/// vertex-induced, 1PI and superficially divergent.
pub fn check_admissible(g: &FeynGraph, edges: &[usize]) -> Result<Subgraph> {
    let s = Subgraph::from_edges(g, edges)?;
    if s.edges.is_empty() {
        return Err(Error::Admissibility("empty subgraph".into()));
    }
    if s.edges.len() == g.edges().len() {
        return Err(Error::Admissibility("subgraph is the whole graph".into()));
    }
    for c in &s.components {
        for (k, &(a, b)) in g.edges().iter().enumerate() {
            if c.vertices.contains(&a) && c.vertices.contains(&b) && !c.edges.contains(&k) {
                return Err(Error::Admissibility(format!(
                    "component on {:?} omits edge {k} between its own vertices",
                    c.vertices
                )));
            }
        }
        if !(2..=3).contains(&c.external) {
            return Err(Error::Admissibility(format!(
                "component on {:?} has {} external legs",
                c.vertices, c.external
            )));
        }
        let h = component_graph(g, c, Marker::S0)?;
        if !h.is_one_pi() {
            return Err(Error::Admissibility(format!(
                "component on {:?} is not 1PI",
                c.vertices
            )));
        }
        if h.superficial_degree() < 0 {
            return Err(Error::Admissibility(format!(
                "component on {:?} is convergent",
                c.vertices
            )));
        }
    }
    Ok(s)
}

/// Every admissible subgraph of a 1PI graph, in increasing edge-mask order.
pub fn divergent_subgraphs(g: &FeynGraph) -> Result<Vec<Subgraph>> {
    if !g.is_one_pi() {
        return Err(Error::Domain("divergent subgraphs need a 1PI graph".into()));
    }
    let m = g.edges().len();
    if m > 24 {
        return Err(Error::Domain(format!(
            "{m} internal edges exceed the exhaustive-scan limit"
        )));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let edges: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        if let Ok(s) = check_admissible(g, &edges) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Contracts every component of `s` to one vertex: cubic for 3-point pieces,
/// a 2-point vertex carrying `markers[i]` for 2-point pieces. The result keeps
/// the marker of `g`.
pub fn quotient_with(g: &FeynGraph, s: &Subgraph, markers: &[Marker]) -> Result<FeynGraph> {
    if markers.len() != s.components.len() {
        return Err(Error::Admissibility("one marker per component required".into()));
    }
    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, c) in s.components.iter().enumerate() {
        for &v in &c.vertices {
            owner[v] = Some(i);
        }
    }
    let mut new_id = vec![0; n];
    let mut kinds = Vec::new();
    let mut legs = Vec::new();
    for v in 0..n {
        if owner[v].is_none() {
            new_id[v] = kinds.len();
            kinds.push(g.kinds()[v]);
            legs.push(g.legs()[v]);
        }
    }
    let base = kinds.len();
    for (i, c) in s.components.iter().enumerate() {
        kinds.push(match c.external {
            3 => VertexKind::Cubic,
            2 => VertexKind::TwoPoint(markers[i]),
            k => return Err(Error::Admissibility(format!("cannot contract a {k}-point piece"))),
        });
        legs.push(c.vertices.iter().map(|&v| g.legs()[v]).sum());
        for &v in &c.vertices {
            new_id[v] = base + i;
        }
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| !s.edges.contains(k))
        .map(|(_, &(a, b))| (new_id[a], new_id[b]))
        .collect();
    FeynGraph::new(kinds, edges, legs, g.ext())
}

/// `g/γ` with every 2-point piece contracted under marker `s0`.
pub fn quotient(g: &FeynGraph, edges: &[usize]) -> Result<FeynGraph> {
    let s = check_admissible(g, edges)?;
    let markers = vec![Marker::S0; s.components.len()];
    quotient_with(g, &s, &markers)
}

/// One term `γ₁⋯γₖ ⊗ Γ/γ` of the reduced coproduct, before identification
/// of generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawTerm {
    pub pieces: Vec<FeynGraph>,
    pub quotient: FeynGraph,
}

/// All reduced-coproduct terms: every admissible subgraph, paired with every
/// assignment of basis markers to its 2-point components.
pub fn coproduct_terms(g: &FeynGraph) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    for s in divergent_subgraphs(g)? {
        let bases: Vec<&[Marker]> = s.components.iter().map(|c| Marker::basis(c.external)).collect();
        let mut idx = vec![0usize; bases.len()];
        loop {
            let markers: Vec<Marker> = idx.iter().zip(&bases).map(|(&i, b)| b[i]).collect();
            let pieces = s
                .components
                .iter()
                .zip(&markers)
                .map(|(c, &m)| component_graph(g, c, m))
                .collect::<Result<Vec<_>>>()?;
            out.push(RawTerm {
                pieces,
                quotient: quotient_with(g, &s, &markers)?,
            });
            // odometer over marker choices
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < bases[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// A connected admissible piece, as used in forests.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub loops: usize,
}

impl Piece {
    fn compatible(&self, other: &Piece) -> bool {
        let within = |a: &Piece, b: &Piece| a.edges.iter().all(|e| b.edges.contains(e));
        within(self, other) || within(other, self) || self.vertices.iter().all(|v| !other.vertices.contains(v))
    }
}

/// Every maximal family of pairwise nested or disjoint connected admissible
/// pieces of a 1PI graph. A graph without subdivergences has one empty
/// forest.
pub fn maximal_forests(g: &FeynGraph) -> Result<Vec<Vec<Piece>>> {
    let pieces: Vec<Piece> = divergent_subgraphs(g)?
        .into_iter()
        .filter(|s| s.components.len() == 1)
        .map(|s| {
            let c = &s.components[0];
            Piece {
                vertices: c.vertices.clone(),
                edges: c.edges.clone(),
                loops: c.edges.len() + 1 - c.vertices.len(),
            }
        })
        .collect();
    let n = pieces.len();
    if n > 20 {
        return Err(Error::Domain(format!(
            "{n} divergent pieces exceed the forest scan limit"
        )));
    }
    let ok = |mask: u32| {
        (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || pieces[i].compatible(&pieces[j])))
    };
    let families: Vec<u32> = (0u32..(1 << n)).filter(|&m| ok(m)).collect();
    let maximal = families
        .iter()
        .filter(|&&m| !families.iter().any(|&w| w != m && w & m == m));
    Ok(maximal
        .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| pieces[i].clone()).collect())
        .collect())
}
