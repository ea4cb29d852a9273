//! Unordered rooted trees: canonical forms, text syntax, gradings, the
//! admissible-cut coproduct and grafting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::{Element, HopfInstance, Monomial, Tensor};
use crate::laurent::Rational;

/// A rooted tree with children kept in canonical (descending) order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    size: usize,
}

/// A forest: a commutative monomial of trees. The empty forest is `1`.
pub type Forest = Monomial<RootedTree>;

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.children.len().cmp(&other.children.len()))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl RootedTree {
    /// The single vertex `•`.
    pub fn leaf() -> Self {
        RootedTree {
            children: Vec::new(),
            size: 1,
        }
    }

    /// `B₊`: a new root over the given children, in any order.
    pub fn root(mut children: Vec<RootedTree>) -> Self {
        children.sort_by(|a, b| b.cmp(a));
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        RootedTree { children, size }
    }

    /// `B₊` applied to a forest.
    pub fn graft_forest(f: &Forest) -> Self {
        RootedTree::root(f.factors().to_vec())
    }

    /// The ladder of `n ≥ 1` vertices.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain has at least one vertex");
        let mut t = RootedTree::leaf();
        for _ in 1..n {
            t = RootedTree::root(vec![t]);
        }
        t
    }

    /// A root with `n` leaf children.
    pub fn corolla(n: usize) -> Self {
        RootedTree::root(vec![RootedTree::leaf(); n])
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut at = 0;
        let t = parse_tree(&chars, &mut at, text.len())?;
        skip_ws(&chars, &mut at);
        if at < chars.len() {
            return Err(Error::Parse {
                pos: chars[at].0,
                msg: "trailing input after tree".into(),
            });
        }
        Ok(t)
    }

    /// Re-sorts children recursively. Trees built through the public
    /// constructors are already canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> Self {
        RootedTree::root(self.children.iter().map(RootedTree::canonicalize).collect())
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        self.size
    }

    /// Subtree sizes `ω(v)` in preorder.
    pub fn subtree_weights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        self.preorder_weights(&mut out);
        out
    }

    fn preorder_weights(&self, out: &mut Vec<usize>) {
        out.push(self.size);
        for c in &self.children {
            c.preorder_weights(out);
        }
    }

    /// Attaches `other` as a new child of the vertex with preorder index `v`.
    pub fn graft(&self, other: &RootedTree, v: usize) -> Result<Self> {
        if v >= self.size {
            return Err(Error::Index {
                index: v,
                len: self.size,
            });
        }
        Ok(self.graft_at(other, v))
    }

    fn graft_at(&self, other: &RootedTree, v: usize) -> Self {
        if v == 0 {
            let mut ch = self.children.clone();
            ch.push(other.clone());
            return RootedTree::root(ch);
        }
        let mut offset = 1;
        let mut ch = self.children.clone();
        for c in ch.iter_mut() {
            if v < offset + c.size {
                *c = c.graft_at(other, v - offset);
                break;
            }
            offset += c.size;
        }
        RootedTree::root(ch)
    }

    /// Edges as (parent, child) preorder indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size.saturating_sub(1));
        self.collect_edges(0, &mut out);
        out
    }

    fn collect_edges(&self, me: usize, out: &mut Vec<(usize, usize)>) {
        let mut next = me + 1;
        for c in &self.children {
            out.push((me, next));
            c.collect_edges(next, out);
            next += c.size;
        }
    }

    /// The subtree hanging at preorder vertex `v`.
    pub fn subtree(&self, v: usize) -> &RootedTree {
        if v == 0 {
            return self;
        }
        let mut offset = 1;
        for c in &self.children {
            if v < offset + c.size {
                return c.subtree(v - offset);
            }
            offset += c.size;
        }
        panic!("vertex {v} out of range for tree of size {}", self.size)
    }

    /// Every admissible cut as `(pruned forest, trunk)`, one entry per cut.
    /// A cut is a nonempty set of edges with at most one edge on each path
    /// from the root.
    pub fn admissible_cuts(&self) -> Vec<(Forest, RootedTree)> {
        let edges = self.edges();
        // ancestors of each vertex, for the path condition
        let mut parent = vec![usize::MAX; self.size];
        for &(p, c) in &edges {
            parent[c] = p;
        }
        let is_ancestor = |a: usize, mut b: usize| {
            while b != usize::MAX {
                if a == b {
                    return true;
                }
                b = parent[b];
            }
            false
        };
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << edges.len()) {
            let cut: Vec<usize> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i].1)
                .collect();
            let ok = cut.iter().enumerate().all(|(i, &a)| {
                cut.iter()
                    .skip(i + 1)
                    .all(|&b| !is_ancestor(a, b) && !is_ancestor(b, a))
            });
            if !ok {
                continue;
            }
            let pruned = Forest::from_vec(cut.iter().map(|&v| self.subtree(v).clone()).collect());
            let trunk = self.without(&cut).expect("the root is never cut away");
            out.push((pruned, trunk));
        }
        out
    }

    /// The tree left after deleting the subtrees rooted at `cut` vertices.
    fn without(&self, cut: &[usize]) -> Option<RootedTree> {
        self.without_from(0, cut)
    }

    fn without_from(&self, me: usize, cut: &[usize]) -> Option<RootedTree> {
        if cut.contains(&me) {
            return None;
        }
        let mut next = me + 1;
        let mut ch = Vec::new();
        for c in &self.children {
            if let Some(k) = c.without_from(next, cut) {
                ch.push(k);
            }
            next += c.size;
        }
        Some(RootedTree::root(ch))
    }
}

fn skip_ws(chars: &[(usize, char)], at: &mut usize) {
    while *at < chars.len() && chars[*at].1.is_whitespace() {
        *at += 1;
    }
}

fn parse_tree(chars: &[(usize, char)], at: &mut usize, end: usize) -> Result<RootedTree> {
    skip_ws(chars, at);
    let Some(&(pos, c)) = chars.get(*at) else {
        return Err(Error::Parse {
            pos: end,
            msg: "expected a tree".into(),
        });
    };
    match c {
        'o' | '•' => {
            *at += 1;
            Ok(RootedTree::leaf())
        }
        'B' => {
            *at += 1;
            match chars.get(*at) {
                Some((_, '[')) => *at += 1,
                Some(&(p, _)) => {
                    return Err(Error::Parse {
                        pos: p,
                        msg: "expected `[` after `B`".into(),
                    })
                }
                None => {
                    return Err(Error::Parse {
                        pos: end,
                        msg: "expected `[` after `B`".into(),
                    })
                }
            }
            let mut children = Vec::new();
            loop {
                skip_ws(chars, at);
                match chars.get(*at) {
                    Some((_, ']')) => {
                        *at += 1;
                        break;
                    }
                    None => {
                        return Err(Error::Parse {
                            pos: end,
                            msg: "unclosed `[`".into(),
                        })
                    }
                    _ => children.push(parse_tree(chars, at, end)?),
                }
            }
            if children.is_empty() {
                return Err(Error::Parse {
                    pos,
                    msg: "`B[]` has no children; write `o`".into(),
                });
            }
            Ok(RootedTree::root(children))
        }
        other => Err(Error::Parse {
            pos,
            msg: format!("unexpected `{other}`"),
        }),
    }
}

impl FromStr for RootedTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RootedTree::parse(s)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.children.is_empty() {
            return write!(f, "o");
        }
        write!(f, "B[")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// All rooted trees with exactly `n` vertices, sorted.
pub fn trees_of_size(n: usize) -> Vec<RootedTree> {
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::leaf()]];
    for k in 2..=n {
        let mut out: Vec<RootedTree> = forests_of_size(&by_size, k - 1)
            .into_iter()
            .map(RootedTree::root)
            .collect();
        out.sort();
        by_size.push(out);
    }
    by_size.get(n).cloned().unwrap_or_default()
}

/// Multisets of trees of total size `n`, drawn from `by_size`.
fn forests_of_size(by_size: &[Vec<RootedTree>], n: usize) -> Vec<Vec<RootedTree>> {
    let pool: Vec<&RootedTree> = by_size.iter().flatten().collect();
    let mut out = Vec::new();
    fn go<'a>(
        pool: &[&'a RootedTree],
        start: usize,
        left: usize,
        cur: &mut Vec<RootedTree>,
        out: &mut Vec<Vec<RootedTree>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool[i].size <= left {
                cur.push(pool[i].clone());
                go(pool, i, left - pool[i].size, cur, out);
                cur.pop();
            }
        }
    }
    go(&pool, 0, n, &mut Vec::new(), &mut out);
    out
}

/// The rooted-tree Hopf algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct TreeInstance;

impl TreeInstance {
    /// Full coproduct of a tree via `Δ(B₊F) = B₊F⊗1 + (id⊗B₊)ΔF`.
    pub fn coproduct(&self, t: &RootedTree) -> Tensor<RootedTree> {
        let forest = Forest::from_vec(t.children.clone());
        let df = crate::hopf::coproduct_monomial(self, &forest);
        let mut out = Tensor::term((Forest::single(t.clone()), Forest::unit()), Rational::one());
        for ((a, b), c) in df.iter() {
            out.add((a.clone(), Forest::single(RootedTree::graft_forest(b))), c.clone());
        }
        out
    }

    pub fn antipode(&self, x: &Element<RootedTree>) -> Element<RootedTree> {
        crate::hopf::antipode(self, x)
    }
}

impl HopfInstance for TreeInstance {
    type Gen = RootedTree;

    fn degree(&self, g: &RootedTree) -> usize {
        g.size
    }

    fn generators(&self, max_degree: usize) -> Vec<RootedTree> {
        (1..=max_degree).flat_map(trees_of_size).collect()
    }

    fn reduced_coproduct(&self, g: &RootedTree) -> Tensor<RootedTree> {
        let mut out = self.coproduct(g);
        let x = Forest::single(g.clone());
        out.add((x.clone(), Forest::unit()), -Rational::one());
        out.add((Forest::unit(), x), -Rational::one());
        out
    }

    fn subdivergences(&self, g: &RootedTree) -> Vec<(Forest, Forest)> {
        g.admissible_cuts()
            .into_iter()
            .map(|(p, t)| (p, Forest::single(t)))
            .collect()
    }
}

/// Number of rooted trees per vertex count, `1..=n`.
pub fn tree_counts(n: usize) -> BTreeMap<usize, usize> {
    (1..=n).map(|k| (k, trees_of_size(k).len())).collect()
}
