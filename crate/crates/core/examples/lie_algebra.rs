//! The Lie algebra of infinitesimal characters: grafting and insertion
//! brackets, the grading derivation, exp and log.

use num_traits::One;
use renorm::graphs::GraphInstance;
use renorm::hopf::toy_character;
use renorm::laurent::Context;
use renorm::laurent::Rational;
use renorm::lie::{
    exp_character, grading_y, graph_bracket, log_character, symmetry_factor, tree_bracket, tree_bracket_linear,
    LieElement,
};
use renorm::trees::{RootedTree, TreeInstance};

fn main() -> renorm::Result<()> {
    let t = |s: &str| RootedTree::parse(s);
    let (a, b, c) = (t("o")?, t("B[o]")?, t("B[o o]")?);
    println!("[{a}, {b}] = {}", tree_bracket(&a, &b));
    println!("[{a}, {c}] = {}", tree_bracket(&a, &c));
    println!("[{b}, {c}] = {}", tree_bracket(&b, &c));
    for s in ["B[o o]", "B[B[o] B[o]]", "B[o o o]"] {
        println!("symmetry factor of {s}: {}", symmetry_factor(&t(s)?));
    }

    // Jacobi on three single trees
    let single = |x: &RootedTree| LieElement::term(x.clone(), Rational::one());
    let br = |x: &LieElement<RootedTree>, y: &LieElement<RootedTree>| tree_bracket_linear(x, y);
    let (x, y, z) = (single(&a), single(&b), single(&c));
    let mut jacobi = br(&x, &br(&y, &z));
    jacobi.add_all(&br(&y, &br(&z, &x)), &Rational::one());
    jacobi.add_all(&br(&z, &br(&x, &y)), &Rational::one());
    println!("Jacobi sum = {jacobi}");
    println!("Y[{a}, {b}] = {}", grading_y(&TreeInstance, &tree_bracket(&a, &b)));

    let inst = GraphInstance::builtin();
    let (tri, bub) = (inst.generator("triangle")?, inst.generator("bubble")?);
    println!("[{tri}, {bub}] = {}", graph_bracket(&inst, &tri, &bub)?);
    let bx = inst.generator("box")?;
    match graph_bracket(&inst, &tri, &bx) {
        Ok(v) => println!("[{tri}, {bx}] = {v}"),
        Err(e) => println!("[{tri}, {bx}]: {e}"),
    }

    let ctx = Context::standard();
    let phi = toy_character(&ctx, 3, 6)?;
    let z = log_character(&TreeInstance, &phi, 3)?;
    let back = exp_character(&TreeInstance, &z, 3)?;
    println!("log φ on {b} = {}", z.value(&b));
    println!("exp(log φ) = φ: {}", back.agrees_with(&phi));
    Ok(())
}
