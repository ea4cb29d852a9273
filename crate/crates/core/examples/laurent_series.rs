//! Exact Laurent series in ε with polynomial coefficients in the log-scale L.

use renorm::laurent::{toy_factor, Context, LaurentSeries};

fn main() -> renorm::Result<()> {
    let ctx = Context::standard();
    let a = LaurentSeries::parse(&ctx, "1/ε + L + ε^2")?;
    let b = LaurentSeries::parse(&ctx, "2 - L*ε + O(ε^4)")?;

    println!("a         = {a}");
    println!("b         = {b}");
    println!("a + b     = {}", a.try_add(&b)?);
    println!("a · b     = {}", a.try_mul(&b)?);
    println!("1/a       = {}", a.invert_to(Some(4))?);
    println!("pole(a)   = {}", a.pole_part());
    println!("regular   = {}", a.regular_part());
    println!(
        "a at ε=0  : {}",
        a.constant_term().map_or_else(|e| e.to_string(), |c| c.to_string())
    );

    // the elementary factor 1/(kε(1 − kε)) behind the toy Feynman rules
    println!("g(2ε)     = {}", toy_factor(&ctx, 2, 4));
    Ok(())
}
