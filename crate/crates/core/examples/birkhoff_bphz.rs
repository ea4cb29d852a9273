//! Birkhoff decomposition of the toy character and the BPHZ recursion that
//! reproduces it.

use renorm::graphs::{toy_graph_character, GraphInstance};
use renorm::hopf::{birkhoff, bphz, convolve, evaluate_at_zero, inverse, toy_character};
use renorm::laurent::Context;
use renorm::trees::{RootedTree, TreeInstance};

fn main() -> renorm::Result<()> {
    let ctx = Context::standard();
    let phi = toy_character(&ctx, 3, 4)?;
    let pair = birkhoff(&TreeInstance, &phi)?;
    let triple = bphz(&TreeInstance, &phi)?;

    for t in ["o", "B[o]", "B[o o]", "B[B[o]]"] {
        let t = RootedTree::parse(t)?;
        println!("{t}");
        println!("  φ  = {}", phi.value(&t)?);
        println!("  φ₋ = {}", pair.negative.value(&t)?);
        println!("  φ₊ = {}", pair.positive.value(&t)?);
        println!("  R̄  = {}", triple.prepared.value(&t)?);
    }
    println!("C = φ₋: {}", triple.counterterm == pair.negative);
    println!("R = φ₊: {}", triple.renormalized == pair.positive);
    let back = convolve(&TreeInstance, &inverse(&TreeInstance, &pair.negative)?, &pair.positive)?;
    println!("φ₋⁻¹ ⋆ φ₊ = φ: {}", back.agrees_with(&phi));

    println!("\nrenormalized values at ε = 0:");
    for (t, v) in evaluate_at_zero(&pair.positive)? {
        println!("  {:<10} {v}", t.to_string());
    }

    let inst = GraphInstance::builtin();
    let gphi = toy_graph_character(&inst, &ctx, 3, 6)?;
    let gpair = birkhoff(&inst, &gphi)?;
    let gtriple = bphz(&inst, &gphi)?;
    println!("\ngraph counterterms:");
    for (g, c) in gpair.negative.values() {
        println!("  {:<16} {c}", g.to_string());
    }
    println!("C = φ₋ on graphs: {}", gtriple.counterterm == gpair.negative);
    Ok(())
}
