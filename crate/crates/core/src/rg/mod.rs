//! The renormalization group: scale independence of the counterterms, the
//! residue and `β = Y Res`, the limit group `F_t`, and the reconstruction of
//! the counterterms from `β` alone.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{birkhoff, by_degree, convolve, inverse, BirkhoffPair, Character, HopfInstance};
use crate::laurent::{int, LaurentSeries, ParamPoly, Rational};
use crate::lie::{grading_y_character, theta, InfinitesimalCharacter};

/// Highest power of `L` in any coefficient of any counterterm value; zero
/// when the counterterms do not depend on the scale.
pub fn check_mu_independence<G: Ord + Clone + fmt::Display>(pair: &BirkhoffPair<G>) -> u32 {
    let Ok(l) = pair.negative.context().param("L") else {
        return 0;
    };
    pair.negative
        .values()
        .values()
        .filter_map(|v| v.degree_in(l))
        .max()
        .unwrap_or(0)
}

/// `Res γ = −(∂_u γ₋(1/u))_{u=0}`: minus the `ε^{-1}` coefficient of `φ₋`.
pub fn residue<G: Ord + Clone + fmt::Display>(pair: &BirkhoffPair<G>) -> Result<InfinitesimalCharacter<G>> {
    let ctx = pair.negative.context();
    let values = pair
        .negative
        .values()
        .iter()
        .map(|(g, v)| {
            (
                g.clone(),
                LaurentSeries::poly(ctx, v.coeff(-1).scale(&-Rational::one())),
            )
        })
        .collect();
    InfinitesimalCharacter::new(ctx, values)
}

/// `β = Y Res γ`.
pub fn beta_function<H: HopfInstance>(inst: &H, pair: &BirkhoffPair<H::Gen>) -> Result<InfinitesimalCharacter<H::Gen>> {
    Ok(grading_y_character(inst, &residue(pair)?))
}

/// `F_t = lim_{ε→0} γ₋(ε) ⋆ θ_{tε}(γ₋(ε)^{-1})` with `t` the context's time
/// parameter. Every value must be free of poles.
pub fn ft_limit<H: HopfInstance>(inst: &H, pair: &BirkhoffPair<H::Gen>) -> Result<Character<H::Gen>> {
    let gm = &pair.negative;
    let ctx = gm.context();
    let t = ParamPoly::var(ctx, ctx.param("t")?);
    let moved = theta(inst, &t, &inverse(inst, gm)?)?;
    let prod = convolve(inst, gm, &moved)?;
    prod.map_values(|g, v| {
        if !v.pole_part().is_zero() {
            return Err(Error::LocalityViolation {
                generator: g.to_string(),
                value: v.to_string(),
            });
        }
        Ok(LaurentSeries::poly(ctx, v.constant_term()?))
    })
}

/// Counterterms rebuilt from `β` alone through the degreewise stationary
/// recursion `(γ₋)_n = −(1/(nε)) Σ_{k≥1} β_k ⋆ (γ₋)_{n−k}`.
pub fn gamma_minus_from_beta<H: HopfInstance>(
    inst: &H,
    beta: &InfinitesimalCharacter<H::Gen>,
    max_degree: usize,
) -> Result<Character<H::Gen>> {
    let ctx = beta.context();
    let mut out = Character::new(ctx, BTreeMap::new())?;
    for x in by_degree(inst, inst.generators(max_degree).into_iter()) {
        let n = inst.degree(&x);
        let mut acc = beta.value(&x);
        for ((a, b), c) in inst.reduced_coproduct(&x).iter() {
            let Some(ga) = a.as_single() else { continue };
            let term = beta.value(ga).try_mul(&out.eval_monomial(b)?)?;
            acc = acc.try_add(&term.scale(c))?;
        }
        let v = acc.shift(-1).scale(&(-Rational::one() / int(n as i64)));
        out = out.with_value(x, v)?;
    }
    Ok(out)
}

/// Every renormalization-group quantity from one run of the Birkhoff
/// decomposition.
#[derive(Clone, Debug)]
pub struct RgReport<G: Ord> {
    pub l_independence_witness: u32,
    pub birkhoff: BirkhoffPair<G>,
    pub residue: InfinitesimalCharacter<G>,
    pub beta: InfinitesimalCharacter<G>,
    pub ft_family: Character<G>,
    pub gamma_minus_reconstructed: Character<G>,
}

/// One generator's line of an [`RgReport`].
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RgRow {
    pub generator: String,
    pub degree: usize,
    pub residue: String,
    pub beta: String,
    pub minus_birkhoff: String,
    pub minus_from_beta: String,
    pub ft: String,
    pub matches: bool,
}

pub fn rg_report<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>, max_degree: usize) -> Result<RgReport<H::Gen>> {
    let phi = phi.restrict(|g| inst.degree(g) <= max_degree);
    let pair = birkhoff(inst, &phi)?;
    let residue = residue(&pair)?;
    let beta = grading_y_character(inst, &residue);
    let ft_family = ft_limit(inst, &pair)?;
    let gamma_minus_reconstructed = gamma_minus_from_beta(inst, &beta, max_degree)?;
    Ok(RgReport {
        l_independence_witness: check_mu_independence(&pair),
        birkhoff: pair,
        residue,
        beta,
        ft_family,
        gamma_minus_reconstructed,
    })
}

impl<G: Ord + Clone + fmt::Display> RgReport<G> {
    /// Whether the reconstruction agrees with the Birkhoff counterterms on
    /// every generator.
    pub fn reconstruction_matches(&self) -> bool {
        self.birkhoff
            .negative
            .values()
            .iter()
            .all(|(g, v)| self.gamma_minus_reconstructed.value(g).is_ok_and(|w| w == v))
    }

    pub fn rows<H: HopfInstance<Gen = G>>(&self, inst: &H) -> Vec<RgRow> {
        self.birkhoff
            .negative
            .values()
            .iter()
            .map(|(g, minus)| {
                let rebuilt = self.gamma_minus_reconstructed.value(g).ok();
                let show = |v: Option<&LaurentSeries>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
                RgRow {
                    generator: g.to_string(),
                    degree: inst.degree(g),
                    residue: self.residue.value(g).to_string(),
                    beta: self.beta.value(g).to_string(),
                    minus_birkhoff: minus.to_string(),
                    minus_from_beta: show(rebuilt),
                    ft: show(self.ft_family.value(g).ok()),
                    matches: rebuilt == Some(minus),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests;
