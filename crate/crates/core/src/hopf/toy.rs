//! The toy regularized character on rooted trees.

use crate::error::{Error, Result};
use crate::laurent::{toy_factor, Context, LaurentSeries};
use crate::trees::{RootedTree, TreeInstance};

use super::character::Character;

/// `φ(t) = e^{|t|εL} Π_v 1/(ω(v)ε(1 − ω(v)ε))`, valid through `ε^order`.
pub fn toy_tree_value(ctx: &Context, t: &RootedTree, order: i32) -> Result<LaurentSeries> {
    let l = ctx.param("L")?;
    let n = t.vertex_count();
    // the product of n factors of valuation −1 has a pole of order n, so
    // its factors and the exponential need that many extra terms
    let each = order + n as i32 - 1;
    let mut out = LaurentSeries::exp_scaled(ctx, n as u32, l, order + n as i32);
    for w in t.subtree_weights() {
        out = out.try_mul(&toy_factor(ctx, w as u32, each))?;
    }
    Ok(out)
}

/// The toy character on every tree with at most `max_degree` vertices.
/// The truncation order must cover the deepest pole.
pub fn toy_character(ctx: &Context, max_degree: usize, order: i32) -> Result<Character<RootedTree>> {
    if order < max_degree as i32 {
        return Err(Error::Truncation(format!(
            "order {order} is below the degree bound {max_degree}"
        )));
    }
    Character::from_fn(&TreeInstance, ctx, max_degree, |t| toy_tree_value(ctx, t, order))
}
