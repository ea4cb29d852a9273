//! Free commutative algebra on generators, tensors, and the generic Hopf
//! operations (full coproduct, counit, antipode) built on an instance's
//! reduced coproduct.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::laurent::Rational;

/// A graded connected Hopf algebra that is free commutative on its
/// generators.
pub trait HopfInstance {
    type Gen: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync;

    fn degree(&self, g: &Self::Gen) -> usize;

    /// All generators of degree `1..=max_degree`, sorted by degree.
    fn generators(&self, max_degree: usize) -> Vec<Self::Gen>;

    /// `Δ(X) − X⊗1 − 1⊗X`, with both sides nonempty monomials.
    fn reduced_coproduct(&self, g: &Self::Gen) -> Tensor<Self::Gen>;

    /// The individual subdivergence terms `(γ, X/γ)` summed by the reduced
    /// coproduct, one entry per subobject. Instances that can enumerate them
    /// directly (edge subsets, cuts) override this; the BPHZ recursion runs
    /// on it.
    fn subdivergences(&self, g: &Self::Gen) -> Vec<(Monomial<Self::Gen>, Monomial<Self::Gen>)> {
        let mut out = Vec::new();
        for ((a, b), c) in self.reduced_coproduct(g).iter() {
            let n: usize = c.to_integer().try_into().expect("nonnegative integer multiplicity");
            for _ in 0..n {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }
}

/// A commutative monomial: a sorted multiset of generators. The empty
/// monomial is the unit `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<G>(Vec<G>);

impl<G: Ord + Clone> Monomial<G> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn single(g: G) -> Self {
        Monomial(vec![g])
    }

    pub fn from_vec(mut v: Vec<G>) -> Self {
        v.sort();
        Monomial(v)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[G] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Monomial::from_vec(v)
    }

    /// The single generator, if this monomial is one.
    pub fn as_single(&self) -> Option<&G> {
        match self.0.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }
}

impl<G: fmt::Display> fmt::Display for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Finite rational linear combination of keys, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Combination<K: Ord>(BTreeMap<K, Rational>);

pub type Element<G> = Combination<Monomial<G>>;
pub type Tensor<G> = Combination<(Monomial<G>, Monomial<G>)>;
pub type Tensor3<G> = Combination<(Monomial<G>, Monomial<G>, Monomial<G>)>;

impl<K: Ord + Clone> Default for Combination<K> {
    fn default() -> Self {
        Combination(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add(k, c);
        out
    }

    pub fn add(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add_all(&mut self, other: &Self, scale: &Rational) {
        for (k, c) in &other.0 {
            self.add(k.clone(), c * scale);
        }
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.0.iter()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_all(self, c);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_all(other, &-Rational::one());
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add(k, c);
        }
        out
    }
}

impl<G: Ord + Clone> Element<G> {
    pub fn unit() -> Self {
        Self::term(Monomial::unit(), Rational::one())
    }

    pub fn generator(g: G) -> Self {
        Self::term(Monomial::single(g), Rational::one())
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl<G: Ord + Clone> Tensor<G> {
    /// Multiplication in `H ⊗ H`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, a2), ca) in self.iter() {
            for ((b1, b2), cb) in other.iter() {
                out.add((a1.mul(b1), a2.mul(b2)), ca * cb);
            }
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Display for Combination<K>
where
    K: DisplayKey,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&K, &Rational)> = self.0.iter().collect();
        entries.sort_by_key(|(k, _)| k.rank());
        for (i, (k, c)) in entries.into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
                if k.needs_parens() {
                    write!(f, "(")?;
                    k.write_key(f)?;
                    write!(f, ")")?;
                    continue;
                }
                write!(f, " ")?;
            }
            k.write_key(f)?;
        }
        Ok(())
    }
}

/// Rendering of combination keys.
pub trait DisplayKey {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    fn needs_parens(&self) -> bool {
        false
    }
    /// Display group; keys are listed by group, then in their own order.
    fn rank(&self) -> u8 {
        0
    }
}

impl<G: fmt::Display> DisplayKey for Monomial<G> {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<G: fmt::Display> DisplayKey for (Monomial<G>, Monomial<G>) {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
    fn needs_parens(&self) -> bool {
        true
    }
    // X⊗1, then 1⊗X, then the rest
    fn rank(&self) -> u8 {
        match (self.0 .0.is_empty(), self.1 .0.is_empty()) {
            (false, true) => 0,
            (true, false) => 1,
            _ => 2,
        }
    }
}

impl<G: fmt::Display> DisplayKey for (Monomial<G>, Monomial<G>, Monomial<G>) {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}⊗{}", self.0, self.1, self.2)
    }
    fn needs_parens(&self) -> bool {
        true
    }
}

/// `Δ(X) = X⊗1 + 1⊗X + reduced(X)` on a generator.
pub fn coproduct_generator<H: HopfInstance>(inst: &H, g: &H::Gen) -> Tensor<H::Gen> {
    let mut out = inst.reduced_coproduct(g);
    let x = Monomial::single(g.clone());
    out.add((x.clone(), Monomial::unit()), Rational::one());
    out.add((Monomial::unit(), x), Rational::one());
    out
}

/// Multiplicative extension of Δ to monomials.
pub fn coproduct_monomial<H: HopfInstance>(inst: &H, m: &Monomial<H::Gen>) -> Tensor<H::Gen> {
    let mut out = Tensor::term((Monomial::unit(), Monomial::unit()), Rational::one());
    for g in m.factors() {
        out = out.product(&coproduct_generator(inst, g));
    }
    out
}

pub fn coproduct<H: HopfInstance>(inst: &H, x: &Element<H::Gen>) -> Tensor<H::Gen> {
    let mut out = Tensor::zero();
    for (m, c) in x.iter() {
        out.add_all(&coproduct_monomial(inst, m), c);
    }
    out
}

/// Counit: 1 on the unit, 0 on every nonempty monomial.
pub fn counit<G: Ord + Clone>(x: &Element<G>) -> Rational {
    x.coeff(&Monomial::unit())
}

/// Degree of a monomial: the sum over its factors.
pub fn monomial_degree<H: HopfInstance>(inst: &H, m: &Monomial<H::Gen>) -> usize {
    m.factors().iter().map(|g| inst.degree(g)).sum()
}

/// `(Δ⊗id)Δ` and `(id⊗Δ)Δ` applied to a monomial.
pub fn coassociativity_sides<H: HopfInstance>(inst: &H, m: &Monomial<H::Gen>) -> (Tensor3<H::Gen>, Tensor3<H::Gen>) {
    let d = coproduct_monomial(inst, m);
    let mut left = Tensor3::zero();
    let mut right = Tensor3::zero();
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c1) in coproduct_monomial(inst, a).iter() {
            left.add((a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c2) in coproduct_monomial(inst, b).iter() {
            right.add((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    (left, right)
}

/// The antipode, memoized on generators within one call.
pub struct Antipode<'a, H: HopfInstance> {
    inst: &'a H,
    memo: BTreeMap<H::Gen, Element<H::Gen>>,
}

impl<'a, H: HopfInstance> Antipode<'a, H> {
    pub fn new(inst: &'a H) -> Self {
        Antipode {
            inst,
            memo: BTreeMap::new(),
        }
    }

    /// `S(X) = −X − Σ S(X′) X″` on generators.
    pub fn generator(&mut self, g: &H::Gen) -> Element<H::Gen> {
        if let Some(s) = self.memo.get(g) {
            return s.clone();
        }
        let mut out = Element::generator(g.clone()).scaled(&-Rational::one());
        for ((a, b), c) in self.inst.reduced_coproduct(g).iter() {
            let sa = self.monomial(a);
            let term = sa.product(&Element::term(b.clone(), Rational::one()));
            out.add_all(&term, &-c.clone());
        }
        self.memo.insert(g.clone(), out.clone());
        out
    }

    /// S is an algebra map on the commutative algebra.
    pub fn monomial(&mut self, m: &Monomial<H::Gen>) -> Element<H::Gen> {
        let mut out = Element::unit();
        for g in m.factors() {
            out = out.product(&self.generator(g));
        }
        out
    }

    pub fn element(&mut self, x: &Element<H::Gen>) -> Element<H::Gen> {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            out.add_all(&self.monomial(m), c);
        }
        out
    }
}

pub fn antipode<H: HopfInstance>(inst: &H, x: &Element<H::Gen>) -> Element<H::Gen> {
    Antipode::new(inst).element(x)
}

/// `m(S⊗id)Δ(x)` and `m(id⊗S)Δ(x)`; both equal `ε(x)·1` in a Hopf algebra.
pub fn antipode_sides<H: HopfInstance>(inst: &H, m: &Monomial<H::Gen>) -> (Element<H::Gen>, Element<H::Gen>) {
    let mut s = Antipode::new(inst);
    let mut left = Element::zero();
    let mut right = Element::zero();
    for ((a, b), c) in coproduct_monomial(inst, m).iter() {
        let ea = Element::term(a.clone(), Rational::one());
        let eb = Element::term(b.clone(), Rational::one());
        left.add_all(&s.monomial(a).product(&eb), c);
        right.add_all(&ea.product(&s.monomial(b)), c);
    }
    (left, right)
}

/// `(ε⊗id)Δ(m)` and `(id⊗ε)Δ(m)`.
pub fn counit_sides<H: HopfInstance>(inst: &H, m: &Monomial<H::Gen>) -> (Element<H::Gen>, Element<H::Gen>) {
    let mut left = Element::zero();
    let mut right = Element::zero();
    for ((a, b), c) in coproduct_monomial(inst, m).iter() {
        if a.is_unit() {
            left.add(b.clone(), c.clone());
        }
        if b.is_unit() {
            right.add(a.clone(), c.clone());
        }
    }
    (left, right)
}

/// Every monomial of total degree `0..=max_degree`, by increasing degree.
pub fn monomials<H: HopfInstance>(inst: &H, max_degree: usize) -> Vec<Monomial<H::Gen>> {
    let gens = inst.generators(max_degree);
    let mut out: Vec<(usize, Monomial<H::Gen>)> = vec![(0, Monomial::unit())];
    // extend multisets with generators in nondecreasing index order
    let mut frontier: Vec<(usize, usize, Vec<H::Gen>)> = vec![(0, 0, Vec::new())];
    while let Some((deg, start, v)) = frontier.pop() {
        for (i, g) in gens.iter().enumerate().skip(start) {
            let d = deg + inst.degree(g);
            if d > max_degree {
                continue;
            }
            let mut w = v.clone();
            w.push(g.clone());
            out.push((d, Monomial::from_vec(w.clone())));
            frontier.push((d, i, w));
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|(_, m)| m).collect()
}

impl DisplayKey for crate::trees::RootedTree {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl DisplayKey for crate::graphs::Graph {
    fn write_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
