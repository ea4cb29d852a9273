//! The coordinate Hopf algebra of odd formal diffeomorphisms: generators
//! `a_n` with `Δa_n = Σ_k a_k ⊗ [x^{n−k}] (1 + Σ a_j x^j)^{2k+1}`.

use std::collections::BTreeMap;
use std::fmt;

use super::FormalDiffeo;
use crate::error::Result;
use crate::hopf::{Character, Element, HopfInstance, Tensor};
use crate::laurent::{Context, LaurentSeries, Rational};
use num_traits::One;

/// The coordinate `a_n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coord(pub usize);

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FaaDiBruno;

/// `[x^j] (1 + Σ a_i x^i)^p` for `j ≤ k`.
fn power_coeffs(p: usize, k: usize) -> Vec<Element<Coord>> {
    let mut base = vec![Element::unit()];
    base.extend((1..=k).map(|i| Element::generator(Coord(i))));
    let mut out = vec![Element::zero(); k + 1];
    out[0] = Element::unit();
    for _ in 0..p {
        let mut next = vec![Element::zero(); k + 1];
        for (i, x) in out.iter().enumerate() {
            for (j, y) in base.iter().enumerate().take(k + 1 - i) {
                next[i + j].add_all(&x.product(y), &Rational::one());
            }
        }
        out = next;
    }
    out
}

impl HopfInstance for FaaDiBruno {
    type Gen = Coord;

    fn degree(&self, g: &Coord) -> usize {
        g.0
    }

    fn generators(&self, max_degree: usize) -> Vec<Coord> {
        (1..=max_degree).map(Coord).collect()
    }

    fn reduced_coproduct(&self, g: &Coord) -> Tensor<Coord> {
        let n = g.0;
        let mut out = Tensor::zero();
        for k in 1..n {
            let right = &power_coeffs(2 * k + 1, n - k)[n - k];
            for (m, c) in right.iter() {
                out.add((crate::hopf::Monomial::single(Coord(k)), m.clone()), c.clone());
            }
        }
        out
    }
}

/// The character `a_n ↦ a_n(f)` of a loop.
pub fn character_of(f: &FormalDiffeo<LaurentSeries>) -> Result<Character<Coord>> {
    let ctx = f.one().context();
    let values: BTreeMap<Coord, LaurentSeries> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (Coord(i + 1), c.clone()))
        .collect();
    Character::new(ctx, values)
}

/// The loop with coefficients `φ(a_1), …, φ(a_K)`.
pub fn diffeo_of(ctx: &Context, phi: &Character<Coord>, order: usize) -> Result<FormalDiffeo<LaurentSeries>> {
    let coeffs = (1..=order)
        .map(|n| phi.value(&Coord(n)).cloned())
        .collect::<Result<_>>()?;
    Ok(FormalDiffeo::new(&LaurentSeries::one(ctx), coeffs))
}
