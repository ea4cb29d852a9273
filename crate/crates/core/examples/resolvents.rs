//! Cardano and Ferrari by radicals, the affine-covariant resolvent of four
//! points and the pentagram concyclicity check.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use renorm::laurent::int;
use renorm::resolvents::{
    circumcircle_meet, covariant_resolvent, random_pentagon, regular_pentagon, star_check, DepressedCubic,
    DepressedQuartic, MonicQuartic,
};

fn show(roots: &[Complex64]) -> String {
    roots.iter().map(|z| format!("{z:.6}")).collect::<Vec<_>>().join(", ")
}

fn main() -> renorm::Result<()> {
    let cubic = DepressedCubic { p: int(-1), q: int(1) };
    println!("x³ − 3x + 2: {}", show(&cubic.roots()));

    let quartic = DepressedQuartic::from_roots(&int(1), &int(-1), &int(2), &int(-2))?;
    let res = quartic.resolvent_cubic();
    println!(
        "resolvent cubic of X⁴ − 5X² + 4: X³ + ({})X² + ({})X + ({})",
        res.b, res.c, res.d
    );
    println!("roots: {}", show(&quartic.roots()));
    let general = MonicQuartic {
        a: int(-5),
        b: int(5),
        c: int(5),
        d: int(-6),
    };
    println!("X⁴ − 5X³ + 5X² + 5X − 6: {}", show(&general.roots()));

    let pts = [1.0, 2.0, 3.0, 5.0].map(|x| Complex64::new(x, 0.0));
    println!(
        "resolvent of 1, 2, 3, 5: {:.6}",
        covariant_resolvent(pts[0], pts[1], pts[2], pts[3])?
    );
    let quad = [
        Complex64::new(0.0, 0.0),
        Complex64::new(3.0, 1.0),
        Complex64::new(1.0, 2.0),
        Complex64::new(-1.0, 4.0),
    ];
    println!(
        "circumcircle meet {:.6} = resolvent {:.6}",
        circumcircle_meet(quad[0], quad[1], quad[2], quad[3])?,
        covariant_resolvent(quad[0], quad[1], quad[2], quad[3])?
    );

    println!(
        "regular pentagram deviation: {:e}",
        star_check(regular_pentagon())?.max_deviation
    );
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let worst = (0..100)
        .map(|_| star_check(random_pentagon(&mut rng, 0.2)).map(|r| r.max_deviation))
        .collect::<renorm::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("worst of 100 random pentagrams: {worst:e}");
    Ok(())
}
