//! Characters with values in Laurent series: convolution, inversion, the
//! recursive Birkhoff decomposition and the BPHZ triple.

use std::collections::BTreeMap;
use std::fmt;

use super::algebra::{Antipode, Element, HopfInstance, Monomial};
use crate::error::{Error, Result};
use crate::laurent::{Context, LaurentSeries};

/// An algebra map from a Hopf instance to Laurent series, stored by its
/// values on finitely many generators.
#[derive(Clone, PartialEq, Debug)]
pub struct Character<G: Ord> {
    ctx: Context,
    values: BTreeMap<G, LaurentSeries>,
}

impl<G: Ord + Clone + fmt::Display> Character<G> {
    pub fn new(ctx: &Context, values: BTreeMap<G, LaurentSeries>) -> Result<Self> {
        for v in values.values() {
            ctx.check(v.context())?;
        }
        Ok(Character {
            ctx: ctx.clone(),
            values,
        })
    }

    /// Builds a character from a value function on every generator of degree
    /// at most `max_degree`.
    pub fn from_fn<H, F>(inst: &H, ctx: &Context, max_degree: usize, mut f: F) -> Result<Self>
    where
        H: HopfInstance<Gen = G>,
        F: FnMut(&G) -> Result<LaurentSeries>,
    {
        let mut values = BTreeMap::new();
        for g in inst.generators(max_degree) {
            let v = f(&g)?;
            values.insert(g, v);
        }
        Character::new(ctx, values)
    }

    /// The counit `ε`: zero on every generator, the unit of convolution.
    pub fn counit(ctx: &Context, gens: impl IntoIterator<Item = G>) -> Self {
        let values = gens.into_iter().map(|g| (g, LaurentSeries::zero(ctx, None))).collect();
        Character {
            ctx: ctx.clone(),
            values,
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn generators(&self) -> impl Iterator<Item = &G> {
        self.values.keys()
    }

    pub fn values(&self) -> &BTreeMap<G, LaurentSeries> {
        &self.values
    }

    pub fn contains(&self, g: &G) -> bool {
        self.values.contains_key(g)
    }

    pub fn value(&self, g: &G) -> Result<&LaurentSeries> {
        self.values
            .get(g)
            .ok_or_else(|| Error::Domain(format!("character is not defined on {g}")))
    }

    /// Replaces the value on one generator.
    pub fn with_value(mut self, g: G, v: LaurentSeries) -> Result<Self> {
        self.ctx.check(v.context())?;
        self.values.insert(g, v);
        Ok(self)
    }

    /// Product of the generator values: the multiplicative extension.
    pub fn eval_monomial(&self, m: &Monomial<G>) -> Result<LaurentSeries> {
        let mut out = LaurentSeries::one(&self.ctx);
        for g in m.factors() {
            out = out.try_mul(self.value(g)?)?;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Element<G>) -> Result<LaurentSeries> {
        let mut out = LaurentSeries::zero(&self.ctx, None);
        for (m, c) in x.iter() {
            out = out.try_add(&self.eval_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    pub fn map_values<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&G, &LaurentSeries) -> Result<LaurentSeries>,
    {
        let mut values = BTreeMap::new();
        for (g, v) in &self.values {
            values.insert(g.clone(), f(g, v)?);
        }
        Character::new(&self.ctx, values)
    }

    /// Restriction to the generators accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&G) -> bool) -> Self {
        let values = self
            .values
            .iter()
            .filter(|(g, _)| keep(g))
            .map(|(g, v)| (g.clone(), v.clone()))
            .collect();
        Character {
            ctx: self.ctx.clone(),
            values,
        }
    }

    /// Equality of every value up to the shared truncation order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .all(|(g, v)| other.values.get(g).is_some_and(|w| v.agrees_with(w)))
    }
}

/// Generators of a character ordered by degree, so that every term of a
/// reduced coproduct is visited before the generator itself.
pub(crate) fn by_degree<H: HopfInstance>(inst: &H, gens: impl Iterator<Item = H::Gen>) -> Vec<H::Gen> {
    let mut v: Vec<H::Gen> = gens.collect();
    v.sort_by(|a, b| inst.degree(a).cmp(&inst.degree(b)).then_with(|| a.cmp(b)));
    v
}

/// `(f⋆g)(X) = f(X) + g(X) + Σ f(X′)g(X″)` on every generator of `f`.
pub fn convolve<H: HopfInstance>(inst: &H, f: &Character<H::Gen>, g: &Character<H::Gen>) -> Result<Character<H::Gen>> {
    f.ctx.check(&g.ctx)?;
    let mut values = BTreeMap::new();
    for x in f.values.keys() {
        let mut acc = f.value(x)?.try_add(g.value(x)?)?;
        for ((a, b), c) in inst.reduced_coproduct(x).iter() {
            let term = f.eval_monomial(a)?.try_mul(&g.eval_monomial(b)?)?;
            acc = acc.try_add(&term.scale(c))?;
        }
        values.insert(x.clone(), acc);
    }
    Character::new(&f.ctx, values)
}

/// `f∘S`, the convolution inverse.
pub fn inverse<H: HopfInstance>(inst: &H, f: &Character<H::Gen>) -> Result<Character<H::Gen>> {
    let mut s = Antipode::new(inst);
    let mut values = BTreeMap::new();
    for x in f.values.keys() {
        values.insert(x.clone(), f.eval(&s.generator(x))?);
    }
    Character::new(&f.ctx, values)
}

/// `(φ₋, φ₊)` with `φ₊ = φ₋ ⋆ φ`.
#[derive(Clone, PartialEq, Debug)]
pub struct BirkhoffPair<G: Ord> {
    pub negative: Character<G>,
    pub positive: Character<G>,
}

/// The recursive Birkhoff decomposition:
/// `φ₋(X) = −T(φ(X) + Σ φ₋(X′)φ(X″))`, `φ₊(X) = φ(X) + φ₋(X) + Σ φ₋(X′)φ(X″)`.
pub fn birkhoff<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>) -> Result<BirkhoffPair<H::Gen>> {
    let ctx = phi.context();
    let mut neg = Character {
        ctx: ctx.clone(),
        values: BTreeMap::new(),
    };
    let mut pos = Character {
        ctx: ctx.clone(),
        values: BTreeMap::new(),
    };
    for x in by_degree(inst, phi.values.keys().cloned()) {
        let mut bar = phi.value(&x)?.clone();
        for ((a, b), c) in inst.reduced_coproduct(&x).iter() {
            let term = neg.eval_monomial(a)?.try_mul(&phi.eval_monomial(b)?)?;
            bar = bar.try_add(&term.scale(c))?;
        }
        let minus = -bar
            .checked_pole_part()
            .map_err(|e| Error::Truncation(format!("{x}: {e}")))?;
        let plus = bar.try_add(&minus)?;
        neg.values.insert(x.clone(), minus);
        pos.values.insert(x, plus);
    }
    Ok(BirkhoffPair {
        negative: neg,
        positive: pos,
    })
}

/// The BPHZ triple: prepared `R̄`, counterterm `C` and renormalized `R`.
#[derive(Clone, PartialEq, Debug)]
pub struct BphzTriple<G: Ord> {
    pub prepared: Character<G>,
    pub counterterm: Character<G>,
    pub renormalized: Character<G>,
}

/// `R̄(X) = U(X) + Σ_γ C(γ) U(X/γ)` over the instance's subdivergences.
pub fn bphz_prepare<H: HopfInstance>(
    inst: &H,
    u: &Character<H::Gen>,
    c: &Character<H::Gen>,
    x: &H::Gen,
) -> Result<LaurentSeries> {
    let mut bar = u.value(x)?.clone();
    for (gamma, rest) in inst.subdivergences(x) {
        bar = bar.try_add(&c.eval_monomial(&gamma)?.try_mul(&u.eval_monomial(&rest)?)?)?;
    }
    Ok(bar)
}

/// `C(X) = −T(R̄(X))` and `R(X) = R̄(X) + C(X)`, recursively in degree.
pub fn bphz<H: HopfInstance>(inst: &H, u: &Character<H::Gen>) -> Result<BphzTriple<H::Gen>> {
    let ctx = u.context();
    let empty = || Character {
        ctx: ctx.clone(),
        values: BTreeMap::new(),
    };
    let (mut prepared, mut counterterm, mut renormalized) = (empty(), empty(), empty());
    for x in by_degree(inst, u.values.keys().cloned()) {
        let bar = bphz_prepare(inst, u, &counterterm, &x)?;
        let c = -bar
            .checked_pole_part()
            .map_err(|e| Error::Truncation(format!("{x}: {e}")))?;
        renormalized.values.insert(x.clone(), bar.try_add(&c)?);
        counterterm.values.insert(x.clone(), c);
        prepared.values.insert(x, bar);
    }
    Ok(BphzTriple {
        prepared,
        counterterm,
        renormalized,
    })
}

/// Values at ε = 0 of a pole-free character, generator by generator.
pub fn evaluate_at_zero<G: Ord + Clone + fmt::Display>(
    f: &Character<G>,
) -> Result<BTreeMap<G, crate::laurent::ParamPoly>> {
    f.values
        .iter()
        .map(|(g, v)| Ok((g.clone(), v.constant_term()?)))
        .collect()
}

/// The Birkhoff recursion run directly on a monomial, with `φ₋` of every
/// smaller monomial obtained by the same recursion rather than by
/// multiplicativity. Comparing against the product of generator values
/// tests that both parts are algebra maps.
pub fn birkhoff_on_monomial<H: HopfInstance>(
    inst: &H,
    phi: &Character<H::Gen>,
    m: &Monomial<H::Gen>,
) -> Result<(LaurentSeries, LaurentSeries)> {
    let mut memo = BTreeMap::new();
    let minus = minus_on_monomial(inst, phi, m, &mut memo)?;
    let bar = bar_on_monomial(inst, phi, m, &mut memo)?;
    Ok((minus.clone(), bar.try_add(&minus)?))
}

fn bar_on_monomial<H: HopfInstance>(
    inst: &H,
    phi: &Character<H::Gen>,
    m: &Monomial<H::Gen>,
    memo: &mut BTreeMap<Monomial<H::Gen>, LaurentSeries>,
) -> Result<LaurentSeries> {
    let mut bar = phi.eval_monomial(m)?;
    for ((a, b), c) in super::algebra::coproduct_monomial(inst, m).iter() {
        if a.is_unit() || b.is_unit() {
            continue;
        }
        let term = minus_on_monomial(inst, phi, a, memo)?.try_mul(&phi.eval_monomial(b)?)?;
        bar = bar.try_add(&term.scale(c))?;
    }
    Ok(bar)
}

fn minus_on_monomial<H: HopfInstance>(
    inst: &H,
    phi: &Character<H::Gen>,
    m: &Monomial<H::Gen>,
    memo: &mut BTreeMap<Monomial<H::Gen>, LaurentSeries>,
) -> Result<LaurentSeries> {
    if m.is_unit() {
        return Ok(LaurentSeries::one(phi.context()));
    }
    if let Some(v) = memo.get(m) {
        return Ok(v.clone());
    }
    let bar = bar_on_monomial(inst, phi, m, memo)?;
    let minus = -bar.checked_pole_part()?;
    memo.insert(m.clone(), minus.clone());
    Ok(minus)
}
