//! Formal diffeomorphisms `g + Σ a_n g^{2n+1}` tangent to the identity:
//! composition, inversion and the opposed Birkhoff decomposition of loops.

mod faa;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::Character;
use crate::laurent::{LaurentSeries, ParamPoly, Rational};
use crate::trees::RootedTree;

pub use faa::{character_of, diffeo_of, Coord, FaaDiBruno};

/// The coefficient ring of a formal diffeomorphism.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn times(&self, other: &Self) -> Result<Self>;
    fn scaled(&self, c: &Rational) -> Self;
    fn is_nil(&self) -> bool;
    /// Equality up to whatever truncation the ring carries.
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
}

impl Coefficient for ParamPoly {
    fn zero_like(&self) -> Self {
        ParamPoly::zero(self.context())
    }
    fn one_like(&self) -> Self {
        ParamPoly::one(self.context())
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
}

impl Coefficient for LaurentSeries {
    fn zero_like(&self) -> Self {
        LaurentSeries::zero(self.context(), None)
    }
    fn one_like(&self) -> Self {
        LaurentSeries::one(self.context())
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn agrees(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

/// `g + Σ_{n=1}^{K} a_n g^{2n+1} + O(g^{2K+3})`. Only odd powers are stored
/// and the linear coefficient is fixed to one.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalDiffeo<C> {
    one: C,
    coeffs: Vec<C>,
}

/// A diffeomorphism with Laurent-series coefficients: a loop in `ε`.
pub type DiffeoLoop = FormalDiffeo<LaurentSeries>;

type Series<C> = Vec<C>;

fn series_mul<C: Coefficient>(a: &Series<C>, b: &Series<C>, k: usize) -> Result<Series<C>> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; k + 1];
    for (i, x) in a.iter().enumerate().take(k + 1) {
        if x.is_nil() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k + 1 - i) {
            out[i + j] = out[i + j].plus(&x.times(y)?)?;
        }
    }
    Ok(out)
}

impl<C: Coefficient> FormalDiffeo<C> {
    /// The identity `g` carried to order `K`.
    pub fn identity(one: &C, order: usize) -> Self {
        FormalDiffeo {
            one: one.one_like(),
            coeffs: vec![one.zero_like(); order],
        }
    }

    /// From `a_1, …, a_K`.
    pub fn new(one: &C, coeffs: Vec<C>) -> Self {
        FormalDiffeo {
            one: one.one_like(),
            coeffs,
        }
    }

    /// From the odd coefficients `c_1, c_3, c_5, …` of a full series; the
    /// first must be one.
    pub fn from_odd_series(odd: Vec<C>) -> Result<Self> {
        let Some(first) = odd.first() else {
            return Err(Error::Domain("empty series".into()));
        };
        if !first.agrees(&first.one_like()) {
            return Err(Error::Domain(format!("linear coefficient {first} is not one")));
        }
        let one = first.one_like();
        Ok(FormalDiffeo {
            one,
            coeffs: odd[1..].to_vec(),
        })
    }

    /// Number of stored coefficients `K`; the series is valid through
    /// `g^{2K+1}`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for `1 ≤ n ≤ K`.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn one(&self) -> &C {
        &self.one
    }

    pub fn with_coeff(mut self, n: usize, c: C) -> Self {
        self.coeffs[n - 1] = c;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        FormalDiffeo {
            one: self.one.clone(),
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_nil)
    }

    pub fn map<D: Coefficient, F>(&self, one: &D, mut f: F) -> Result<FormalDiffeo<D>>
    where
        F: FnMut(&C) -> Result<D>,
    {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<_>>()?;
        Ok(FormalDiffeo {
            one: one.one_like(),
            coeffs,
        })
    }

    /// `1 + Σ a_n x^n`, the series `f(g)/g` in `x = g²`.
    fn reduced(&self, k: usize) -> Series<C> {
        let mut s = vec![self.one.clone()];
        s.extend(self.coeffs.iter().take(k).cloned());
        s.resize(k + 1, self.one.zero_like());
        s
    }

    /// `f(h(g))`, to the smaller of the two orders.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        let k = self.order().min(h.order());
        let f = self.reduced(k);
        let hh = h.reduced(k);
        // y = x·H(x)²
        let h2 = series_mul(&hh, &hh, k)?;
        let mut y = vec![self.one.zero_like()];
        y.extend(h2.into_iter().take(k));
        // F(y) by Horner
        let mut acc = vec![self.one.zero_like(); k + 1];
        for n in (0..=k).rev() {
            acc = series_mul(&acc, &y, k)?;
            acc[0] = acc[0].plus(&f[n])?;
        }
        let r = series_mul(&hh, &acc, k)?;
        Ok(FormalDiffeo {
            one: self.one.clone(),
            coeffs: r[1..].to_vec(),
        })
    }

    /// The compositional inverse, coefficient by coefficient.
    pub fn invert(&self) -> Result<Self> {
        let mut h = FormalDiffeo::identity(&self.one, self.order());
        for n in 1..=self.order() {
            let c = self.compose(&h)?;
            let fixed = h.coeffs[n - 1].plus(&c.coeffs[n - 1].scaled(&-Rational::one()))?;
            h.coeffs[n - 1] = fixed;
        }
        Ok(h)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.agrees(b))
    }
}

impl<C: Coefficient> fmt::Display for FormalDiffeo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_nil() {
                write!(f, " + ({c})·g^{}", 2 * i + 3)?;
            }
        }
        write!(f, " + O(g^{})", 2 * self.order() + 3)
    }
}

/// The opposed decomposition `loop = positive ∘ negative^{-1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffeoBirkhoff {
    pub negative: DiffeoLoop,
    pub positive: DiffeoLoop,
}

/// Solves `positive = loop ∘ negative` degree by degree: each coefficient of
/// `negative` is minus the pole part of the matching coefficient of the
/// composition computed with that coefficient still zero.
pub fn birkhoff_diffeo(lp: &DiffeoLoop) -> Result<DiffeoBirkhoff> {
    for (i, c) in lp.coeffs.iter().enumerate() {
        if c.pole_order() > i as i32 + 1 {
            return Err(Error::Domain(format!(
                "a_{} has a pole of order {}",
                i + 1,
                c.pole_order()
            )));
        }
    }
    let mut neg = FormalDiffeo::identity(&lp.one, lp.order());
    for n in 1..=lp.order() {
        let c = lp.compose(&neg)?;
        neg.coeffs[n - 1] = -c.coeffs[n - 1]
            .checked_pole_part()
            .map_err(|e| Error::Truncation(format!("a_{n}: {e}")))?;
    }
    let positive = lp.compose(&neg)?;
    Ok(DiffeoBirkhoff {
        negative: neg,
        positive,
    })
}

impl DiffeoBirkhoff {
    /// `positive ∘ negative^{-1}`.
    pub fn reconstruct(&self) -> Result<DiffeoLoop> {
        self.positive.compose(&self.negative.invert()?)
    }

    /// The positive part at `ε = 0`, which exists since it has no poles.
    pub fn renormalized(&self) -> Result<FormalDiffeo<ParamPoly>> {
        let one = ParamPoly::one(self.positive.one.context());
        self.positive.map(&one, LaurentSeries::constant_term)
    }
}

/// Stand-in vertex graph of loop order `ℓ`: the ladder with `ℓ` vertices.
pub fn vertex_stand_in(l: usize) -> RootedTree {
    RootedTree::chain(l)
}

/// Stand-in self-energy graph of loop order `ℓ`: the corolla with `ℓ`
/// vertices.
pub fn self_energy_stand_in(l: usize) -> RootedTree {
    RootedTree::corolla(l - 1)
}

/// `g(1 + Σ_{ℓ≤N} φ(t_ℓ) g^{2ℓ}) (1 − Σ_{ℓ≤N} φ(s_ℓ) g^{2ℓ})^{-3/2}` to order
/// `N`, with the stand-in trees `t_ℓ`, `s_ℓ`.
pub fn effective_coupling_toy(phi: &Character<RootedTree>, n: usize) -> Result<DiffeoLoop> {
    let one = LaurentSeries::one(phi.context());
    let zero = one.zero_like();
    let mut vertex = vec![one.clone()];
    let mut self_energy = vec![zero.clone()];
    for l in 1..=n {
        vertex.push(phi.value(&vertex_stand_in(l))?.clone());
        self_energy.push(phi.value(&self_energy_stand_in(l))?.clone());
    }
    // (1 − u)^{-3/2} = Σ c_k u^k with c_k = c_{k−1}(2k+1)/(2k)
    let mut factor = vec![zero.clone(); n + 1];
    factor[0] = one.clone();
    let mut power = factor.clone();
    let mut c = Rational::one();
    for k in 1..=n {
        power = series_mul(&power, &self_energy, n)?;
        c = c * Rational::new((2 * k as i64 + 1).into(), (2 * k as i64).into());
        for (slot, p) in factor.iter_mut().zip(&power) {
            *slot = slot.plus(&p.scaled(&c))?;
        }
    }
    let total = series_mul(&vertex, &factor, n)?;
    Ok(FormalDiffeo {
        one,
        coeffs: total[1..].to_vec(),
    })
}

#[cfg(test)]
mod tests;
