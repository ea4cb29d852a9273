//! φ³ graphs in six dimensions: vertices, internal edges, external legs and
//! an external-structure marker, stored in canonical labeling.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Basis element of the external structure of a 2-point function
/// (`s0`, `s1`); 3- and higher-point graphs only carry `s0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Marker {
    #[serde(rename = "s0")]
    S0,
    #[serde(rename = "s1")]
    S1,
}

impl Marker {
    pub const ALL: [Marker; 2] = [Marker::S0, Marker::S1];

    /// Markers available for a graph with `n` external legs.
    pub fn basis(n: usize) -> &'static [Marker] {
        if n == 2 {
            &Marker::ALL
        } else {
            &Marker::ALL[..1]
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marker::S0 => write!(f, "s0"),
            Marker::S1 => write!(f, "s1"),
        }
    }
}

impl std::str::FromStr for Marker {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s0" => Ok(Marker::S0),
            "s1" => Ok(Marker::S1),
            other => Err(Error::InvalidGraph(format!("unknown marker `{other}`"))),
        }
    }
}

/// A cubic interaction vertex, or a 2-valent vertex carrying a contracted
/// self-energy with the given marker.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexKind {
    Cubic,
    TwoPoint(Marker),
}

impl VertexKind {
    pub fn valence(self) -> usize {
        match self {
            VertexKind::Cubic => 3,
            VertexKind::TwoPoint(_) => 2,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            VertexKind::Cubic => "internal",
            VertexKind::TwoPoint(Marker::S0) => "insert-s0",
            VertexKind::TwoPoint(Marker::S1) => "insert-s1",
        }
    }

    fn from_tag(s: &str) -> Result<Self> {
        match s {
            "internal" => Ok(VertexKind::Cubic),
            "insert-s0" => Ok(VertexKind::TwoPoint(Marker::S0)),
            "insert-s1" => Ok(VertexKind::TwoPoint(Marker::S1)),
            other => Err(Error::InvalidGraph(format!("unknown vertex type `{other}`"))),
        }
    }
}

/// Loop-counting gradings of a graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Gradings {
    /// internal edges
    pub i: usize,
    /// vertices
    pub v_count: usize,
    /// `V − 1`
    pub v: usize,
    /// loops, `I − V + 1`
    pub l: usize,
}

/// A graph in canonical labeling. Equality is isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FeynGraph {
    kinds: Vec<VertexKind>,
    legs: Vec<usize>,
    edges: Vec<(usize, usize)>,
    ext: Marker,
}

impl FeynGraph {
    /// Validates valences and canonicalizes. `legs[v]` counts the external
    /// legs at vertex `v`.
    pub fn new(kinds: Vec<VertexKind>, edges: Vec<(usize, usize)>, legs: Vec<usize>, ext: Marker) -> Result<Self> {
        let n = kinds.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if legs.len() != n {
            return Err(Error::InvalidGraph("leg table does not match vertex count".into()));
        }
        let mut deg = legs.clone();
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) names a missing vertex")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            deg[a] += 1;
            deg[b] += 1;
            norm.push((a.min(b), a.max(b)));
        }
        for (v, (&k, &d)) in kinds.iter().zip(&deg).enumerate() {
            if d != k.valence() {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has incidence {d}, expected {}",
                    k.valence()
                )));
            }
        }
        let external: usize = legs.iter().sum();
        if ext == Marker::S1 && external != 2 {
            return Err(Error::InvalidGraph(format!(
                "marker s1 needs 2 external legs, graph has {external}"
            )));
        }
        Ok(FeynGraph {
            kinds,
            legs,
            edges: norm,
            ext,
        }
        .canonical())
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn ext(&self) -> Marker {
        self.ext
    }

    pub fn with_ext(&self, ext: Marker) -> Result<Self> {
        if ext == Marker::S1 && self.external_legs() != 2 {
            return Err(Error::InvalidGraph("marker s1 needs 2 external legs".into()));
        }
        Ok(FeynGraph { ext, ..self.clone() })
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn external_legs(&self) -> usize {
        self.legs.iter().sum()
    }

    pub fn two_point_vertices(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, VertexKind::TwoPoint(_)))
            .count()
    }

    pub fn gradings(&self) -> Gradings {
        let i = self.edges.len();
        let v_count = self.kinds.len();
        Gradings {
            i,
            v_count,
            v: v_count - 1,
            l: (i + 1).saturating_sub(v_count),
        }
    }

    pub fn loops(&self) -> usize {
        self.gradings().l
    }

    /// `ω = 6L − 2I + 2V₂`: every propagator costs 2, every loop gives 6 and
    /// every contracted self-energy restores the 2 its extra propagator
    /// costs. For connected graphs this is `6 − 2N`.
    pub fn superficial_degree(&self) -> i64 {
        let g = self.gradings();
        6 * g.l as i64 - 2 * g.i as i64 + 2 * self.two_point_vertices() as i64
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let n = self.kinds.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (k, &(a, b)) in self.edges.iter().enumerate() {
                if Some(k) == skip {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Connected, and still connected after deleting any one internal edge.
    pub fn is_one_pi(&self) -> bool {
        self.is_connected() && (0..self.edges.len()).all(|k| self.connected_without(Some(k)))
    }

    /// Relabels vertices to the lexicographically least edge list among all
    /// labelings that order vertices by a local invariant.
    fn canonical(self) -> Self {
        let n = self.kinds.len();
        let mut nbrs: Vec<Vec<(VertexKind, usize)>> = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            nbrs[a].push((self.kinds[b], self.legs[b]));
            nbrs[b].push((self.kinds[a], self.legs[a]));
        }
        for v in nbrs.iter_mut() {
            v.sort();
        }
        let inv = |v: usize| (self.kinds[v], self.legs[v], nbrs[v].clone());
        let mut classes: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            classes.entry(inv(v)).or_default().push(v);
        }
        let classes: Vec<Vec<usize>> = classes.into_values().collect();
        let mut best: Option<(Vec<(usize, usize)>, Vec<usize>)> = None;
        for choice in classes
            .iter()
            .map(|c| c.iter().copied().permutations(c.len()))
            .multi_cartesian_product()
        {
            let order: Vec<usize> = choice.into_iter().flatten().collect();
            let mut pos = vec![0; n];
            for (new, &old) in order.iter().enumerate() {
                pos[old] = new;
            }
            let mut e: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
                .collect();
            e.sort_unstable();
            if best.as_ref().map_or(true, |(be, _)| e < *be) {
                best = Some((e, order));
            }
        }
        let (edges, order) = best.expect("at least one labeling");
        FeynGraph {
            kinds: order.iter().map(|&v| self.kinds[v]).collect(),
            legs: order.iter().map(|&v| self.legs[v]).collect(),
            edges,
            ext: self.ext,
        }
    }

    /// Compact structural code, independent of the marker.
    pub fn code(&self) -> String {
        let k: String = self
            .kinds
            .iter()
            .zip(&self.legs)
            .map(|(k, l)| {
                let c = match k {
                    VertexKind::Cubic => 'c',
                    VertexKind::TwoPoint(Marker::S0) => 'a',
                    VertexKind::TwoPoint(Marker::S1) => 'b',
                };
                format!("{c}{l}")
            })
            .collect();
        let e = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).join(",");
        format!("{k}|{e}")
    }

    pub fn to_record(&self) -> GraphRecord {
        let mut legs = Vec::new();
        for (v, &l) in self.legs.iter().enumerate() {
            for _ in 0..l {
                legs.push([v, legs.len()]);
            }
        }
        GraphRecord {
            vertices: self
                .kinds
                .iter()
                .enumerate()
                .map(|(id, k)| VertexRecord {
                    id,
                    kind: k.tag().to_string(),
                })
                .collect(),
            internal_edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            external_legs: legs,
            ext_structure: self.ext,
        }
    }

    pub fn from_record(r: &GraphRecord) -> Result<Self> {
        let mut index = BTreeMap::new();
        let mut kinds = Vec::new();
        for v in &r.vertices {
            if index.insert(v.id, kinds.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {}", v.id)));
            }
            kinds.push(VertexKind::from_tag(&v.kind)?);
        }
        let look = |id: usize| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex id {id}")))
        };
        let edges = r
            .internal_edges
            .iter()
            .map(|&[a, b]| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut legs = vec![0; kinds.len()];
        for &[v, _] in &r.external_legs {
            legs[look(v)?] += 1;
        }
        FeynGraph::new(kinds, edges, legs, r.ext_structure)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: GraphRecord = serde_json::from_str(text)?;
        FeynGraph::from_record(&r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("graph records serialize")
    }
}

/// File form of a graph.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphRecord {
    pub vertices: Vec<VertexRecord>,
    pub internal_edges: Vec<[usize; 2]>,
    pub external_legs: Vec<[usize; 2]>,
    pub ext_structure: Marker,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    #[serde(rename = "type")]
    pub kind: String,
}

impl fmt::Display for FeynGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())?;
        if self.external_legs() == 2 {
            write!(f, "{{{}}}", self.ext)?;
        }
        Ok(())
    }
}
