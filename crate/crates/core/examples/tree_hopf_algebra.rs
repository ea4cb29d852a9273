//! The Hopf algebra of rooted trees: admissible cuts, coproduct, antipode.

use renorm::hopf::{antipode, antipode_sides, coassociativity_sides, Element, Monomial};
use renorm::trees::{tree_counts, RootedTree, TreeInstance};

fn main() -> renorm::Result<()> {
    println!("trees per vertex count: {:?}", tree_counts(6));

    for text in ["o", "B[o]", "B[o o]", "B[B[o]]", "B[B[o] o]"] {
        let t = RootedTree::parse(text)?;
        println!("Δ({t}) = {}", TreeInstance.coproduct(&t));
    }

    let t = RootedTree::parse("B[B[o] o]")?;
    println!("admissible cuts of {t}:");
    for (pruned, trunk) in t.admissible_cuts() {
        println!("  P = {pruned}, R = {trunk}");
    }
    println!("S({t}) = {}", antipode(&TreeInstance, &Element::generator(t.clone())));

    let m = Monomial::single(t.clone());
    let (l, r) = coassociativity_sides(&TreeInstance, &m);
    let (sl, sr) = antipode_sides(&TreeInstance, &m);
    println!(
        "coassociative: {}, m(S⊗id)Δ = m(id⊗S)Δ = 0: {}",
        l == r,
        sl.is_zero() && sr.is_zero()
    );
    Ok(())
}
