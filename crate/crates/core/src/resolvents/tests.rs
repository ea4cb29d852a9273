use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laurent::rat;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=6))
}

/// Sorts complex numbers lexicographically, for multiset
/// comparison.
fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

fn same_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    // greedy matching is enough for well-separated or equal roots
    let mut rest: Vec<Complex64> = b.to_vec();
    for x in a {
        let Some((i, _)) = rest
            .iter()
            .enumerate()
            .min_by(|(_, u), (_, v)| (*u - x).norm().total_cmp(&(*v - x).norm()))
        else {
            return false;
        };
        if (rest[i] - x).norm() > tol {
            return false;
        }
        rest.remove(i);
    }
    true
}

#[test]
fn cardano_examples() {
    let cubic = DepressedCubic {
        p: rat(-1, 1),
        q: rat(1, 1),
    };
    let roots = cubic.roots();
    assert!(same_multiset(&roots, &[c(1.0), c(1.0), c(-2.0)], 1e-6));
    assert!(roots.iter().all(|&x| cubic.residual(x) < 1e-9));
    let zero = DepressedCubic {
        p: rat(0, 1),
        q: rat(0, 1),
    };
    assert!(zero.roots().iter().all(|x| x.norm() < 1e-12));
}

#[test]
fn cardano_pairs_multiply_to_minus_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let cubic = DepressedCubic {
            p: random_rational(&mut rng),
            q: random_rational(&mut rng),
        };
        let p = to_f64(&cubic.p);
        for (u, v) in cubic.cardano_pairs() {
            assert!((u * v + p).norm() < 1e-12 * (1.0 + p.abs()));
        }
    }
}

#[test]
fn cubics_from_chosen_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let cc = -(&a + &b);
        // x³ + 3px + 2q with roots a, b, c summing to zero
        let e2 = &a * &b + &a * &cc + &b * &cc;
        let e3 = &a * &b * &cc;
        let cubic = DepressedCubic {
            p: e2 / int(3),
            q: -e3 / int(2),
        };
        let roots = cubic.roots();
        assert!(roots.iter().all(|&x| cubic.residual(x) < 1e-9));
        let want = [a, b, cc].map(|x| c(to_f64(&x)));
        assert!(same_multiset(&roots, &want, 1e-5), "{roots:?} vs {want:?}");
    }
}

#[test]
fn resolvent_cubic_examples() {
    let (a, b, cc, d) = (rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1));
    let qt = DepressedQuartic::from_roots(&a, &b, &cc, &d).unwrap();
    assert_eq!(
        (qt.p.clone(), qt.q.clone(), qt.r.clone()),
        (rat(-5, 1), rat(0, 1), rat(4, 1))
    );
    let res = qt.resolvent_cubic();
    assert_eq!(
        res,
        MonicCubic {
            b: rat(5, 1),
            c: rat(-16, 1),
            d: rat(-80, 1)
        }
    );
    assert_eq!(pair_sums(&a, &b, &cc, &d), [rat(-5, 1), rat(-4, 1), rat(4, 1)]);
    let z = rat(0, 1);
    let res0 = DepressedQuartic::from_roots(&z, &z, &z, &z).unwrap().resolvent_cubic();
    assert_eq!(
        res0,
        MonicCubic {
            b: z.clone(),
            c: z.clone(),
            d: z
        }
    );
}

#[test]
fn resolvent_cubic_identity_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (a, b, cc) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let d = -(&a + &b + &cc);
        let qt = DepressedQuartic::from_roots(&a, &b, &cc, &d).unwrap();
        let res = qt.resolvent_cubic();
        let [x, y, z] = pair_sums(&a, &b, &cc, &d);
        assert_eq!(res.b, -(&x + &y + &z));
        assert_eq!(res.c, &x * &y + &x * &z + &y * &z);
        assert_eq!(res.d, -(&x * &y * &z));
    }
}

#[test]
fn pair_sums_take_three_values_under_all_permutations() {
    let roots = [rat(3, 1), rat(-7, 2), rat(1, 3), rat(1, 6)];
    let base = pair_sums(&roots[0], &roots[1], &roots[2], &roots[3]);
    let mut count = 0;
    for perm in (0..4).permutations(4) {
        let r: Vec<&Rational> = perm.iter().map(|&i| &roots[i]).collect();
        assert_eq!(pair_sums(r[0], r[1], r[2], r[3]), base);
        count += 1;
    }
    assert_eq!(count, 24);
}

#[test]
fn quartic_examples() {
    let qt = DepressedQuartic {
        p: rat(-5, 1),
        q: rat(0, 1),
        r: rat(4, 1),
    };
    assert!(same_multiset(&qt.roots(), &[c(1.0), c(-1.0), c(2.0), c(-2.0)], 1e-9));
    let zero = DepressedQuartic {
        p: rat(0, 1),
        q: rat(0, 1),
        r: rat(0, 1),
    };
    assert!(zero.roots().iter().all(|x| x.norm() < 1e-9));
}

#[test]
fn quartics_from_chosen_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let (a, b, cc) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let d = -(&a + &b + &cc);
        let qt = DepressedQuartic::from_roots(&a, &b, &cc, &d).unwrap();
        let roots = qt.roots();
        assert!(roots.iter().all(|&x| qt.residual(x) < 1e-9), "{qt:?}: {roots:?}");
        let want = [a, b, cc, d].map(|x| c(to_f64(&x)));
        assert!(
            same_multiset(&sorted(roots.to_vec()), &want, 1e-4),
            "{roots:?} vs {want:?}"
        );
    }
}

#[test]
fn covariant_resolvent_examples() {
    let v = covariant_resolvent(c(1.0), c(2.0), c(3.0), c(5.0)).unwrap();
    assert!((v - c(-1.0)).norm() < 1e-15);
    let w = covariant_resolvent(c(3.0), c(5.0), c(7.0), c(11.0)).unwrap();
    assert!((w - c(2.0 * -1.0 + 1.0)).norm() < 1e-15);
    assert!(matches!(
        covariant_resolvent(c(0.0), c(1.0), c(2.0), c(3.0)),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn covariant_resolvent_is_affine_covariant_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cq = |rng: &mut ChaCha8Rng| Complex::new(random_rational(rng), random_rational(rng));
    let mut checked = 0;
    while checked < 100 {
        let (a, b, cc, d) = (cq(&mut rng), cq(&mut rng), cq(&mut rng), cq(&mut rng));
        let (lambda, z) = (cq(&mut rng), cq(&mut rng));
        if lambda.is_zero() {
            continue;
        }
        let Ok(base) = covariant_resolvent_exact(&a, &b, &cc, &d) else {
            continue;
        };
        let m = |x: &Complex<Rational>| lambda.clone() * x.clone() + z.clone();
        let moved = covariant_resolvent_exact(&m(&a), &m(&b), &m(&cc), &m(&d)).unwrap();
        assert_eq!(moved, lambda.clone() * base + z.clone());
        checked += 1;
    }
}

#[test]
fn circumcircle_meet_is_the_resolvent() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 100 {
        let [a, b, cc, d] = random_quadruple(&mut rng);
        let (Ok(x), Ok(y)) = (circumcircle_meet(a, b, cc, d), covariant_resolvent(a, b, cc, d)) else {
            continue;
        };
        assert!((x - y).norm() < 1e-9 * (1.0 + y.norm()), "{x} vs {y}");
        checked += 1;
    }
}

#[test]
fn circumcircle_meet_degenerate_inputs() {
    // AC ∥ BD
    let r = circumcircle_meet(c(0.0), Complex64::new(0.0, 1.0), c(1.0), Complex64::new(1.0, 1.0));
    assert!(matches!(r, Err(Error::Degenerate(_))));
    // square labeled so that a + d = b + c
    let (a, b, cc, d) = (c(0.0), c(1.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0));
    assert!(matches!(covariant_resolvent(a, b, cc, d), Err(Error::Degenerate(_))));
    assert!(matches!(circumcircle_meet(a, b, cc, d), Err(Error::Degenerate(_))));
}

#[test]
fn regular_pentagram_is_concyclic() {
    let r = star_check(regular_pentagon()).unwrap();
    assert!(r.max_deviation < 1e-12, "{}", r.max_deviation);
}

#[test]
fn random_pentagrams_are_concyclic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let r = star_check(random_pentagon(&mut rng, 0.2)).unwrap();
        assert!(r.max_deviation < 1e-9, "{}", r.max_deviation);
    }
}

#[test]
fn degenerate_star_is_rejected() {
    let mut pts = regular_pentagon();
    pts[2] = (pts[1] + pts[3]) / 2.0;
    assert!(matches!(star_check(pts), Err(Error::Degenerate(_))));
}

#[test]
fn non_finite_points_are_rejected() {
    assert!(point(f64::NAN, 0.0).is_err());
    assert!(point(1.0, 2.0).is_ok());
}

#[test]
fn general_quartic_by_shift() {
    // (X − 1)(X − 2)(X − 3)(X + 1) = X⁴ − 5X³ + 5X² + 5X − 6
    let qt = MonicQuartic {
        a: int(-5),
        b: int(5),
        c: int(5),
        d: int(-6),
    };
    let roots = qt.roots();
    assert!(
        same_multiset(&roots, &[c(1.0), c(2.0), c(3.0), c(-1.0)], 1e-9),
        "{roots:?}"
    );
    assert!(roots.iter().all(|&x| qt.residual(x) < 1e-12));
    let cubic = MonicCubic {
        b: int(-6),
        c: int(11),
        d: int(-6),
    };
    assert!(same_multiset(&cubic.roots(), &[c(1.0), c(2.0), c(3.0)], 1e-9));
}

#[test]
fn star_report_json_keys() {
    let r = star_check(regular_pentagon()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert!(v["maxDeviation"].as_f64().unwrap() < 1e-12);
}
