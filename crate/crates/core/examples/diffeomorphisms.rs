//! Formal diffeomorphisms g + Σ a_n g^{2n+1}: composition, inversion and the
//! opposed Birkhoff decomposition of a loop.

use num_traits::One;
use renorm::diffeo::{birkhoff_diffeo, effective_coupling_toy, FormalDiffeo};
use renorm::hopf::toy_character;
use renorm::laurent::{rat, Context, LaurentSeries, Rational};

fn main() -> renorm::Result<()> {
    let one = Rational::one();
    let f = FormalDiffeo::new(&one, vec![rat(1, 2), rat(-1, 3), rat(0, 1), rat(2, 1)]);
    let h = FormalDiffeo::new(&one, vec![rat(-1, 1), rat(1, 4), rat(1, 5), rat(0, 1)]);
    println!("f       = {f}");
    println!("h       = {h}");
    println!("f ∘ h   = {}", f.compose(&h)?);
    let inv = f.invert()?;
    println!("f⁻¹     = {inv}");
    println!("f ∘ f⁻¹ = {}", f.compose(&inv)?);

    let ctx = Context::standard();
    let lp = FormalDiffeo::new(
        &LaurentSeries::one(&ctx),
        vec![
            LaurentSeries::parse(&ctx, "2/ε + 1")?,
            LaurentSeries::parse(&ctx, "1/ε^2 - L/ε + 3")?,
        ],
    );
    let d = birkhoff_diffeo(&lp)?;
    println!("\nloop     = {lp}");
    println!("negative = {}", d.negative);
    println!("positive = {}", d.positive);
    println!("reconstructs: {}", d.reconstruct()?.agrees_with(&lp));

    let phi = toy_character(&ctx, 3, 6)?;
    let g = effective_coupling_toy(&phi, 3)?;
    let dg = birkhoff_diffeo(&g)?;
    println!("\nrenormalized toy coupling at ε = 0: {}", dg.renormalized()?);
    Ok(())
}
