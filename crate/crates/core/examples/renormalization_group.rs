//! Scale independence of the counterterms, the residue and β, the limit
//! group F_t and the counterterms rebuilt from β.

use renorm::hopf::{birkhoff, toy_character};
use renorm::laurent::Context;
use renorm::rg::{check_mu_independence, ft_limit, rg_report};
use renorm::trees::TreeInstance;

fn main() -> renorm::Result<()> {
    let ctx = Context::standard();
    let phi = toy_character(&ctx, 4, 10)?;
    let report = rg_report(&TreeInstance, &phi, 4)?;
    println!("highest power of L in φ₋: {}", report.l_independence_witness);
    for row in report.rows(&TreeInstance) {
        println!("{} (degree {})", row.generator, row.degree);
        println!("  Res    = {}", row.residue);
        println!("  β      = {}", row.beta);
        println!("  φ₋     = {}", row.minus_birkhoff);
        println!("  from β = {}", row.minus_from_beta);
        println!("  F_t    = {}", row.ft);
    }
    println!("counterterms rebuilt from β: {}", report.reconstruction_matches());

    // a character whose counterterm depends on the scale
    let leaf = renorm::trees::RootedTree::leaf();
    let bumped = phi
        .value(&leaf)?
        .try_add(&renorm::laurent::LaurentSeries::parse(&ctx, "L/ε")?)?;
    let bad = birkhoff(&TreeInstance, &phi.clone().with_value(leaf, bumped)?)?;
    println!("\nperturbed: L-degree {}", check_mu_independence(&bad));
    if let Err(e) = ft_limit(&TreeInstance, &bad) {
        println!("perturbed: {e}");
    }
    Ok(())
}
