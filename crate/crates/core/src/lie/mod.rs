//! Infinitesimal characters and the Lie algebra side: convolution brackets,
//! the grafting bracket on trees, the insertion bracket on graphs, the
//! grading derivation `Y`, the automorphisms `θ` and the exponential map.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{FeynGraph, Graph, GraphInstance, VertexKind};
use crate::hopf::{coproduct_monomial, monomial_degree, monomials, Character, Combination, HopfInstance, Monomial};
use crate::laurent::{int, Context, LaurentSeries, ParamPoly, Rational, DEFAULT_ORDER};
use crate::trees::RootedTree;

/// A finite linear combination of generators.
pub type LieElement<G> = Combination<G>;

/// A linear map vanishing on the unit and on products, stored by its nonzero
/// values on generators.
#[derive(Clone, PartialEq, Debug)]
pub struct InfinitesimalCharacter<G: Ord> {
    ctx: Context,
    values: BTreeMap<G, LaurentSeries>,
}

impl<G: Ord + Clone + fmt::Display> InfinitesimalCharacter<G> {
    pub fn new(ctx: &Context, values: BTreeMap<G, LaurentSeries>) -> Result<Self> {
        for v in values.values() {
            ctx.check(v.context())?;
        }
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(InfinitesimalCharacter {
            ctx: ctx.clone(),
            values,
        })
    }

    pub fn zero(ctx: &Context) -> Self {
        InfinitesimalCharacter {
            ctx: ctx.clone(),
            values: BTreeMap::new(),
        }
    }

    /// The dual basis element `δ_g`.
    pub fn delta(ctx: &Context, g: G) -> Self {
        let mut values = BTreeMap::new();
        values.insert(g, LaurentSeries::one(ctx));
        InfinitesimalCharacter {
            ctx: ctx.clone(),
            values,
        }
    }

    /// `Σ c_g δ_g` for a combination `Σ c_g g`.
    pub fn from_combination(ctx: &Context, x: &LieElement<G>) -> Self {
        let values = x
            .iter()
            .map(|(g, c)| (g.clone(), LaurentSeries::constant(ctx, c.clone())))
            .collect();
        InfinitesimalCharacter {
            ctx: ctx.clone(),
            values,
        }
    }

    /// The combination of generators when every value is a rational constant.
    pub fn to_combination(&self) -> Option<LieElement<G>> {
        self.values
            .iter()
            .map(|(g, v)| {
                let c = if v.is_zero() {
                    Some(Rational::zero())
                } else {
                    (v.valuation() == Some(0) && v.max_degree() == Some(0))
                        .then(|| v.coeff(0).as_constant())
                        .flatten()
                };
                c.map(|c| (g.clone(), c))
            })
            .collect()
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn values(&self) -> &BTreeMap<G, LaurentSeries> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: &G) -> LaurentSeries {
        self.values
            .get(g)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(&self.ctx, None))
    }

    pub fn eval_monomial(&self, m: &Monomial<G>) -> LaurentSeries {
        match m.as_single() {
            Some(g) => self.value(g),
            None => LaurentSeries::zero(&self.ctx, None),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut values = self.values.clone();
        for (g, v) in &other.values {
            let s = match values.get(g) {
                Some(w) => w.try_add(v)?,
                None => v.clone(),
            };
            values.insert(g.clone(), s);
        }
        InfinitesimalCharacter::new(&self.ctx, values)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let values = self.values.iter().map(|(g, v)| (g.clone(), v.scale(c))).collect();
        InfinitesimalCharacter::new(&self.ctx, values).expect("same context")
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn map_values<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&G, &LaurentSeries) -> Result<LaurentSeries>,
    {
        let mut values = BTreeMap::new();
        for (g, v) in &self.values {
            values.insert(g.clone(), f(g, v)?);
        }
        InfinitesimalCharacter::new(&self.ctx, values)
    }
}

/// `[Z₁, Z₂] = Z₁⋆Z₂ − Z₂⋆Z₁`, evaluated on every generator up to
/// `max_degree`.
pub fn bracket<H: HopfInstance>(
    inst: &H,
    z1: &InfinitesimalCharacter<H::Gen>,
    z2: &InfinitesimalCharacter<H::Gen>,
    max_degree: usize,
) -> Result<InfinitesimalCharacter<H::Gen>> {
    z1.ctx.check(&z2.ctx)?;
    let mut values = BTreeMap::new();
    for x in inst.generators(max_degree) {
        let mut acc = LaurentSeries::zero(&z1.ctx, None);
        for ((a, b), c) in inst.reduced_coproduct(&x).iter() {
            let (Some(ga), Some(gb)) = (a.as_single(), b.as_single()) else {
                continue;
            };
            let t = z1
                .value(ga)
                .try_mul(&z2.value(gb))?
                .try_sub(&z2.value(ga).try_mul(&z1.value(gb))?)?;
            acc = acc.try_add(&t.scale(c))?;
        }
        values.insert(x, acc);
    }
    InfinitesimalCharacter::new(&z1.ctx, values)
}

/// `Y`: multiplies the degree-`n` part by `n`.
pub fn grading_y<H: HopfInstance>(inst: &H, x: &LieElement<H::Gen>) -> LieElement<H::Gen> {
    x.iter()
        .map(|(g, c)| (g.clone(), c * int(inst.degree(g) as i64)))
        .collect()
}

/// `Y` on an infinitesimal character: the value on a degree-`n` generator
/// is multiplied by `n`.
pub fn grading_y_character<H: HopfInstance>(
    inst: &H,
    z: &InfinitesimalCharacter<H::Gen>,
) -> InfinitesimalCharacter<H::Gen> {
    z.map_values(|g, v| Ok(v.scale(&int(inst.degree(g) as i64))))
        .expect("scaling keeps the context")
}

/// `Σ_{v∈t₂} graft(t₂, t₁, v) − Σ_{v∈t₁} graft(t₁, t₂, v)`.
pub fn tree_bracket(t1: &RootedTree, t2: &RootedTree) -> LieElement<RootedTree> {
    let mut out = LieElement::zero();
    for v in 0..t2.vertex_count() {
        out.add(t2.graft(t1, v).expect("vertex in range"), Rational::one());
    }
    for v in 0..t1.vertex_count() {
        out.add(t1.graft(t2, v).expect("vertex in range"), -Rational::one());
    }
    out
}

/// Bilinear extension of [`tree_bracket`].
pub fn tree_bracket_linear(a: &LieElement<RootedTree>, b: &LieElement<RootedTree>) -> LieElement<RootedTree> {
    let mut out = LieElement::zero();
    for (t1, c1) in a.iter() {
        for (t2, c2) in b.iter() {
            out.add_all(&tree_bracket(t1, t2), &(c1 * c2));
        }
    }
    out
}

/// Order of the automorphism group of a rooted tree.
pub fn symmetry_factor(t: &RootedTree) -> u64 {
    let mut out = 1u64;
    let ch = t.children();
    let mut i = 0;
    while i < ch.len() {
        let mut j = i;
        while j < ch.len() && ch[j] == ch[i] {
            j += 1;
        }
        let k = (j - i) as u64;
        out *= (1..=k).product::<u64>() * symmetry_factor(&ch[i]).pow(k as u32);
        i = j;
    }
    out
}

/// The Lie morphism from grafting to convolution: `t ↦ sym(t)·δ_t`.
pub fn tree_to_infinitesimal(ctx: &Context, x: &LieElement<RootedTree>) -> InfinitesimalCharacter<RootedTree> {
    let scaled: LieElement<RootedTree> = x
        .iter()
        .map(|(t, c)| (t.clone(), c * int(symmetry_factor(t) as i64)))
        .collect();
    InfinitesimalCharacter::from_combination(ctx, &scaled)
}

/// The insertion bracket of two marked generators:
/// `Σ_Γ n_{m₁}(Γ₁,Γ₂;Γ)(Γ,m₂) − n_{m₂}(Γ₂,Γ₁;Γ)(Γ,m₁)`, where `n` counts
/// the subgraphs of `Γ` isomorphic to one argument whose quotient is the
/// other. Every insertion of one graph into the other must stay inside
/// the instance.
pub fn graph_bracket(inst: &GraphInstance, g1: &Graph, g2: &Graph) -> Result<LieElement<Graph>> {
    if g1 == g2 {
        return Ok(LieElement::zero());
    }
    for (a, b) in [(g1, g2), (g2, g1)] {
        for h in insertions(a.graph(), b.graph())? {
            if inst.lookup(&h).is_none() {
                return Err(Error::UnsupportedInsertion(format!(
                    "{a} into {b} gives [{}]",
                    h.code()
                )));
            }
        }
    }
    let left = (Monomial::single(g1.clone()), Monomial::single(g2.clone()));
    let right = (Monomial::single(g2.clone()), Monomial::single(g1.clone()));
    let mut out = LieElement::zero();
    for g in inst.all() {
        let d = inst.reduced_coproduct(g);
        out.add(g.clone(), d.coeff(&left) - d.coeff(&right));
    }
    Ok(out)
}

/// All graphs obtained by inserting `g1` at a vertex of `g2` of the matching
/// type (cubic for 3-point `g1`, a 2-point vertex with `g1`'s marker for
/// 2-point `g1`), over every attachment of `g1`'s legs. The result keeps
/// `g2`'s marker.
pub fn insertions(g1: &FeynGraph, g2: &FeynGraph) -> Result<Vec<FeynGraph>> {
    let slot = match g1.external_legs() {
        3 => VertexKind::Cubic,
        2 => VertexKind::TwoPoint(g1.ext()),
        _ => return Ok(Vec::new()),
    };
    // legs of g1 as (vertex) slots, one entry per leg
    let leg_vertices: Vec<usize> = g1
        .legs()
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat(v).take(k))
        .collect();
    let mut out = Vec::new();
    for v in 0..g2.vertex_count() {
        if g2.kinds()[v] != slot {
            continue;
        }
        // half-edges at v: incident edges (by index) and external legs
        let mut half: Vec<Option<usize>> = Vec::new();
        for (k, &(a, b)) in g2.edges().iter().enumerate() {
            if a == v || b == v {
                half.push(Some(k));
            }
        }
        half.extend(std::iter::repeat(None).take(g2.legs()[v]));
        for perm in permutations(half.len()) {
            let n2 = g2.vertex_count();
            let off = n2;
            let mut kinds: Vec<VertexKind> = g2.kinds().to_vec();
            kinds.extend_from_slice(g1.kinds());
            let mut legs: Vec<usize> = g2.legs().to_vec();
            legs[v] = 0;
            legs.extend(std::iter::repeat(0).take(g1.vertex_count()));
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for &(a, b) in g2.edges() {
                if a != v && b != v {
                    edges.push((a, b));
                }
            }
            for &(a, b) in g1.edges() {
                edges.push((a + off, b + off));
            }
            for (i, &h) in half.iter().enumerate() {
                let target = leg_vertices[perm[i]] + off;
                match h {
                    Some(k) => {
                        let (a, b) = g2.edges()[k];
                        let other = if a == v { b } else { a };
                        edges.push((other, target));
                    }
                    None => legs[target] += 1,
                }
            }
            // drop the replaced vertex by moving the last one into its slot
            let last = kinds.len() - 1;
            let remap = |x: usize| if x == last { v } else { x };
            kinds.swap(v, last);
            kinds.pop();
            legs.swap(v, last);
            legs.pop();
            let edges = edges.into_iter().map(|(a, b)| (remap(a), remap(b))).collect();
            let h = FeynGraph::new(kinds, edges, legs, g2.ext())?;
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// A linear functional on all monomials up to a degree bound, stored by its
/// nonzero values.
#[derive(Clone, PartialEq, Debug)]
pub struct Functional<G: Ord> {
    ctx: Context,
    max_degree: usize,
    values: BTreeMap<Monomial<G>, LaurentSeries>,
}

impl<G: Ord + Clone + fmt::Display> Functional<G> {
    fn build(ctx: &Context, max_degree: usize, values: BTreeMap<Monomial<G>, LaurentSeries>) -> Self {
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Functional {
            ctx: ctx.clone(),
            max_degree,
            values,
        }
    }

    pub fn counit(ctx: &Context, max_degree: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Monomial::unit(), LaurentSeries::one(ctx));
        Functional::build(ctx, max_degree, values)
    }

    pub fn from_character<H: HopfInstance<Gen = G>>(inst: &H, f: &Character<G>, max_degree: usize) -> Result<Self> {
        let mut values = BTreeMap::new();
        for m in monomials(inst, max_degree) {
            let v = f.eval_monomial(&m)?;
            values.insert(m, v);
        }
        Ok(Functional::build(f.context(), max_degree, values))
    }

    pub fn from_infinitesimal(z: &InfinitesimalCharacter<G>, max_degree: usize) -> Self {
        let values = z
            .values
            .iter()
            .map(|(g, v)| (Monomial::single(g.clone()), v.clone()))
            .collect();
        Functional::build(&z.ctx, max_degree, values)
    }

    pub fn value(&self, m: &Monomial<G>) -> LaurentSeries {
        self.values
            .get(m)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(&self.ctx, None))
    }

    pub fn values(&self) -> &BTreeMap<Monomial<G>, LaurentSeries> {
        &self.values
    }

    pub fn convolve<H: HopfInstance<Gen = G>>(&self, inst: &H, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let d = self.max_degree.min(other.max_degree);
        let mut values = BTreeMap::new();
        for m in monomials(inst, d) {
            let mut acc = LaurentSeries::zero(&self.ctx, None);
            for ((a, b), c) in coproduct_monomial(inst, &m).iter() {
                let (Some(x), Some(y)) = (self.values.get(a), other.values.get(b)) else {
                    continue;
                };
                acc = acc.try_add(&x.try_mul(y)?.scale(c))?;
            }
            values.insert(m, acc);
        }
        Ok(Functional::build(&self.ctx, d, values))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut values = self.values.clone();
        for (m, v) in &other.values {
            let s = match values.get(m) {
                Some(w) => w.try_add(v)?,
                None => v.clone(),
            };
            values.insert(m.clone(), s);
        }
        Ok(Functional::build(
            &self.ctx,
            self.max_degree.min(other.max_degree),
            values,
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let values = self.values.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect();
        Functional::build(&self.ctx, self.max_degree, values)
    }

    /// `Y f`: the value on a degree-`n` monomial multiplied by `n`.
    pub fn graded<H: HopfInstance<Gen = G>>(&self, inst: &H) -> Self {
        let values = self
            .values
            .iter()
            .map(|(m, v)| (m.clone(), v.scale(&int(monomial_degree(inst, m) as i64))))
            .collect();
        Functional::build(&self.ctx, self.max_degree, values)
    }

    /// Whether `f(ab) = f(a)f(b)` on every pair of monomials within the
    /// bound, and `f(1) = 1`.
    pub fn is_multiplicative<H: HopfInstance<Gen = G>>(&self, inst: &H) -> Result<bool> {
        if !self
            .value(&Monomial::unit())
            .agrees_with(&LaurentSeries::one(&self.ctx))
        {
            return Ok(false);
        }
        for m in monomials(inst, self.max_degree) {
            if m.len() < 2 {
                continue;
            }
            let mut prod = LaurentSeries::one(&self.ctx);
            for g in m.factors() {
                prod = prod.try_mul(&self.value(&Monomial::single(g.clone())))?;
            }
            if !prod.agrees_with(&self.value(&m)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the functional vanishes on the unit and on products.
    pub fn is_infinitesimal(&self) -> bool {
        self.values.keys().all(|m| m.len() == 1)
    }

    pub fn to_character<H: HopfInstance<Gen = G>>(&self, inst: &H) -> Result<Character<G>> {
        let values = inst
            .generators(self.max_degree)
            .into_iter()
            .map(|g| {
                let v = self.value(&Monomial::single(g.clone()));
                (g, v)
            })
            .collect();
        Character::new(&self.ctx, values)
    }

    pub fn to_infinitesimal(&self) -> Result<InfinitesimalCharacter<G>> {
        let values = self
            .values
            .iter()
            .filter_map(|(m, v)| m.as_single().map(|g| (g.clone(), v.clone())))
            .collect();
        InfinitesimalCharacter::new(&self.ctx, values)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<&Monomial<G>> = self.values.keys().chain(other.values.keys()).collect();
        keys.into_iter().all(|m| self.value(m).agrees_with(&other.value(m)))
    }
}

/// The convolution exponential `Σ Z^{⋆k}/k!`, as a functional on all
/// monomials up to `max_degree`.
pub fn exp_functional<H: HopfInstance>(
    inst: &H,
    z: &InfinitesimalCharacter<H::Gen>,
    max_degree: usize,
) -> Result<Functional<H::Gen>> {
    let zf = Functional::from_infinitesimal(z, max_degree);
    let mut term = Functional::counit(&z.ctx, max_degree);
    let mut out = term.clone();
    for k in 1..=max_degree {
        term = term
            .convolve(inst, &zf)?
            .scale(&Rational::new(1.into(), (k as i64).into()));
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// `exp(Z)` restricted to generators: a character.
pub fn exp_character<H: HopfInstance>(
    inst: &H,
    z: &InfinitesimalCharacter<H::Gen>,
    max_degree: usize,
) -> Result<Character<H::Gen>> {
    exp_functional(inst, z, max_degree)?.to_character(inst)
}

/// `log(f) = Σ (−1)^{k+1} (f − ε)^{⋆k}/k`, as a functional.
pub fn log_functional<H: HopfInstance>(
    inst: &H,
    f: &Character<H::Gen>,
    max_degree: usize,
) -> Result<Functional<H::Gen>> {
    let ff = Functional::from_character(inst, f, max_degree)?;
    let e = Functional::counit(f.context(), max_degree);
    let delta = ff.try_add(&e.scale(&-Rational::one()))?;
    let mut power = delta.clone();
    let mut out = delta.clone();
    for k in 2..=max_degree {
        power = power.convolve(inst, &delta)?;
        let sign = if k % 2 == 0 { -Rational::one() } else { Rational::one() };
        out = out.try_add(&power.scale(&(sign / int(k as i64))))?;
    }
    Ok(out)
}

/// `log(f)` as an infinitesimal character.
pub fn log_character<H: HopfInstance>(
    inst: &H,
    f: &Character<H::Gen>,
    max_degree: usize,
) -> Result<InfinitesimalCharacter<H::Gen>> {
    log_functional(inst, f, max_degree)?.to_infinitesimal()
}

/// `e^{k τ ε}` through `ε^order` for a polynomial `τ`.
pub fn exp_poly(ctx: &Context, k: u32, tau: &ParamPoly, order: i32) -> Result<LaurentSeries> {
    if k == 0 || tau.is_zero() {
        return Ok(LaurentSeries::one(ctx));
    }
    let kt = tau.scale(&int(k as i64));
    let mut term = ParamPoly::one(ctx);
    let mut coeffs = Vec::new();
    for m in 0..=order.max(-1) {
        if m > 0 {
            term = term.try_mul(&kt)?.scale(&Rational::new(1.into(), (m as i64).into()));
        }
        coeffs.push((m, term.clone()));
    }
    LaurentSeries::from_terms(ctx, coeffs, Some(order))
}

/// `θ_{τε}`: the value on a degree-`n` generator is multiplied by `e^{nτε}`.
pub fn theta<H: HopfInstance>(inst: &H, tau: &ParamPoly, f: &Character<H::Gen>) -> Result<Character<H::Gen>> {
    f.context().check(tau.context())?;
    f.map_values(|g, v| {
        let n = inst.degree(g) as u32;
        // enough terms to keep the value's own truncation order
        let order = match v.order() {
            Some(o) => o + v.pole_order(),
            None => DEFAULT_ORDER + v.pole_order(),
        };
        v.try_mul(&exp_poly(f.context(), n, tau, order)?)
    })
}

#[cfg(test)]
mod tests;
