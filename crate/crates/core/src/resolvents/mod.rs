//! Cubic and quartic equations by radicals, the affine-covariant resolvent
//! of four points with its circumcircle construction, and the pentagram
//! concyclicity check.

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use num_traits::{Num, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{int, Rational};

/// Tolerance below which a float quantity counts as zero at unit scale.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// A finite complex number.
pub fn point(re: f64, im: f64) -> Result<Complex64> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(Error::Domain(format!("non-finite point ({re}, {im})")))
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `x³ + 3px + 2q = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct DepressedCubic {
    pub p: Rational,
    pub q: Rational,
}

/// `X⁴ + pX² + qX + r`.
#[derive(Clone, PartialEq, Debug)]
pub struct DepressedQuartic {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

/// `X³ + bX² + cX + d`.
#[derive(Clone, PartialEq, Debug)]
pub struct MonicCubic {
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl MonicCubic {
    /// The substitution `X = x − b/3`, returned with the shift `−b/3`.
    pub fn depressed(&self) -> (DepressedCubic, Rational) {
        let (b, c, d) = (&self.b, &self.c, &self.d);
        let p1 = c - b * b / int(3);
        let q1 = int(2) * b * b * b / int(27) - b * c / int(3) + d;
        (
            DepressedCubic {
                p: p1 / int(3),
                q: q1 / int(2),
            },
            -b / int(3),
        )
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        ((x + to_f64(&self.b)) * x + to_f64(&self.c)) * x + to_f64(&self.d)
    }

    /// `|X³ + bX² + cX + d|` relative to the size of its terms.
    pub fn residual(&self, x: Complex64) -> f64 {
        let n = x.norm();
        let scale = 1.0 + n.powi(3) + to_f64(&self.b).abs() * n * n + to_f64(&self.c).abs() * n + to_f64(&self.d).abs();
        self.eval(x).norm() / scale
    }

    pub fn roots(&self) -> [Complex64; 3] {
        let (dc, shift) = self.depressed();
        let s = to_f64(&shift);
        dc.roots().map(|x| x + s)
    }
}

impl DepressedCubic {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        x * x * x + x * (3.0 * to_f64(&self.p)) + 2.0 * to_f64(&self.q)
    }

    /// `|x³ + 3px + 2q|` relative to the size of its terms.
    pub fn residual(&self, x: Complex64) -> f64 {
        let scale = 1.0 + x.norm().powi(3) + 3.0 * to_f64(&self.p).abs() * x.norm() + 2.0 * to_f64(&self.q).abs();
        self.eval(x).norm() / scale
    }

    /// Cardano's pairs `(u_k, v_k)` with `u_k³ + v_k³ = −2q` and
    /// `u_k v_k = −p`; the roots are `u_k + v_k`.
    pub fn cardano_pairs(&self) -> [(Complex64, Complex64); 3] {
        let (p, q) = (Complex64::from(to_f64(&self.p)), Complex64::from(to_f64(&self.q)));
        let s = (p * p * p + q * q).sqrt();
        let (alpha, beta) = (-q - s, -q + s);
        // the larger cube avoids cancellation
        let big = if alpha.norm() >= beta.norm() { alpha } else { beta };
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let u0 = big.cbrt();
        let mut out = [(Complex64::zero(), Complex64::zero()); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let u = u0 * w.powi(k as i32);
            let v = if u.norm() > 0.0 { -p / u } else { Complex64::zero() };
            *slot = (u, v);
        }
        out
    }

    pub fn roots(&self) -> [Complex64; 3] {
        self.cardano_pairs()
            .map(|(u, v)| polish(|x| self.eval(x), |x| 3.0 * x * x + 3.0 * to_f64(&self.p), u + v))
    }
}

/// Newton steps that are kept only while they reduce the residual.
fn polish(f: impl Fn(Complex64) -> Complex64, df: impl Fn(Complex64) -> Complex64, mut x: Complex64) -> Complex64 {
    for _ in 0..4 {
        let d = df(x);
        if d.norm() == 0.0 {
            break;
        }
        let y = x - f(x) / d;
        if !(y.re.is_finite() && y.im.is_finite()) || f(y).norm() >= f(x).norm() {
            break;
        }
        x = y;
    }
    x
}

impl DepressedQuartic {
    /// From four roots summing to zero.
    pub fn from_roots(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        if !(a + b + c + d).is_zero() {
            return Err(Error::Domain("roots of a depressed quartic sum to zero".into()));
        }
        let e2 = a * b + a * c + a * d + b * c + b * d + c * d;
        let e3 = a * b * c + a * b * d + a * c * d + b * c * d;
        Ok(DepressedQuartic {
            p: e2,
            q: -e3,
            r: a * b * c * d,
        })
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let x2 = x * x;
        x2 * x2 + x2 * to_f64(&self.p) + x * to_f64(&self.q) + to_f64(&self.r)
    }

    pub fn residual(&self, x: Complex64) -> f64 {
        let n = x.norm();
        let scale = 1.0 + n.powi(4) + to_f64(&self.p).abs() * n * n + to_f64(&self.q).abs() * n + to_f64(&self.r).abs();
        self.eval(x).norm() / scale
    }

    /// `X³ − pX² − 4rX + (4pr − q²)`, whose roots are `ab+cd`, `ac+bd`,
    /// `ad+bc`.
    pub fn resolvent_cubic(&self) -> MonicCubic {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        MonicCubic {
            b: -p.clone(),
            c: int(-4) * r,
            d: int(4) * p * r - q * q,
        }
    }

    /// Ferrari: one root `α = ab + cd` of the resolvent gives `ab`, `cd`,
    /// then `a + b = −(c + d)`.
    pub fn roots(&self) -> [Complex64; 4] {
        let (p, q, r) = (to_f64(&self.p), to_f64(&self.q), to_f64(&self.r));
        let res = self.resolvent_cubic().roots();
        let alpha = res
            .into_iter()
            .max_by(|x, y| (x - p).norm().total_cmp(&(y - p).norm()))
            .expect("three roots");
        let disc = (alpha * alpha - 4.0 * r).sqrt();
        let (ab, cd) = ((alpha + disc) / 2.0, (alpha - disc) / 2.0);
        // (a+b)² = α − p; the sign is fixed by σ(ab − cd) = q
        let mut sigma = (alpha - p).sqrt();
        if (sigma * (ab - cd) - q).norm() > (-sigma * (ab - cd) - q).norm() {
            sigma = -sigma;
        }
        let pair = |s: Complex64, prod: Complex64| {
            let d = (s * s - 4.0 * prod).sqrt();
            [(s + d) / 2.0, (s - d) / 2.0]
        };
        let [a, b] = pair(sigma, ab);
        let [c, d] = pair(-sigma, cd);
        let f = |x: Complex64| self.eval(x);
        let df = |x: Complex64| 4.0 * x * x * x + 2.0 * p * x + q;
        [a, b, c, d].map(|x| polish(f, df, x))
    }
}

/// `X⁴ + aX³ + bX² + cX + d`.
#[derive(Clone, PartialEq, Debug)]
pub struct MonicQuartic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl MonicQuartic {
    /// The substitution `X = x − a/4`, returned with the shift `−a/4`.
    pub fn depressed(&self) -> (DepressedQuartic, Rational) {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let a2 = a * a;
        let p = b - int(3) * &a2 / int(8);
        let q = c - a * b / int(2) + &a2 * a / int(8);
        let r = d - a * c / int(4) + &a2 * b / int(16) - int(3) * &a2 * &a2 / int(256);
        (DepressedQuartic { p, q, r }, -a / int(4))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        (((x + to_f64(&self.a)) * x + to_f64(&self.b)) * x + to_f64(&self.c)) * x + to_f64(&self.d)
    }

    pub fn residual(&self, x: Complex64) -> f64 {
        let n = x.norm();
        let cs = [&self.d, &self.c, &self.b, &self.a].map(|c| to_f64(c).abs());
        let scale = 1.0 + n.powi(4) + cs.iter().enumerate().map(|(k, c)| c * n.powi(k as i32)).sum::<f64>();
        self.eval(x).norm() / scale
    }

    pub fn roots(&self) -> [Complex64; 4] {
        let (dq, shift) = self.depressed();
        let s = to_f64(&shift);
        let a = to_f64(&self.a);
        let (b, c) = (to_f64(&self.b), to_f64(&self.c));
        let df = |x: Complex64| ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c;
        dq.roots().map(|x| polish(|y| self.eval(y), df, x + s))
    }
}

/// The three values `ab+cd`, `ac+bd`, `ad+bc`, sorted.
pub fn pair_sums(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> [Rational; 3] {
    let mut v = [a * b + c * d, a * c + b * d, a * d + b * c];
    v.sort();
    v
}

/// `(ad − bc)/(a + d − b − c)` over any field of complex numbers.
pub fn covariant_resolvent_exact<T: Clone + Num>(
    a: &Complex<T>,
    b: &Complex<T>,
    c: &Complex<T>,
    d: &Complex<T>,
) -> Result<Complex<T>> {
    let den = a.clone() + d.clone() - b.clone() - c.clone();
    if den.is_zero() {
        return Err(Error::Degenerate("a + d = b + c".into()));
    }
    Ok((a.clone() * d.clone() - b.clone() * c.clone()) / den)
}

/// Float version, degenerate when `|a + d − b − c|` is negligible against
/// the size of the points.
pub fn covariant_resolvent(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Complex64> {
    let scale = 1.0 + a.norm() + b.norm() + c.norm() + d.norm();
    if (a + d - b - c).norm() < DEGENERACY_TOL * scale {
        return Err(Error::Degenerate("a + d = b + c".into()));
    }
    Ok((a * d - b * c) / (a + d - b - c))
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Intersection of the lines `p1p2` and `p3p4`.
pub fn line_intersection(p1: Complex64, p2: Complex64, p3: Complex64, p4: Complex64) -> Result<Complex64> {
    let (d1, d2) = (p2 - p1, p4 - p3);
    let den = cross(d1, d2);
    if den.abs() < DEGENERACY_TOL * d1.norm() * d2.norm() || d1.norm() == 0.0 || d2.norm() == 0.0 {
        return Err(Error::Degenerate("parallel or coincident lines".into()));
    }
    Ok(p1 + d1 * (cross(p3 - p1, d2) / den))
}

/// Center of the circle through three points.
pub fn circumcenter(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    let (u, v) = (b - a, c - a);
    let den = 2.0 * cross(u, v);
    if den.abs() < DEGENERACY_TOL * u.norm() * v.norm() || u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(Error::Degenerate("collinear triple".into()));
    }
    let (uu, vv) = (u.norm_sqr(), v.norm_sqr());
    let z = Complex64::new(v.im * uu - u.im * vv, u.re * vv - v.re * uu) / den;
    Ok(a + z)
}

/// Reflection of `x` across the line through `o1` and `o2`.
fn reflect(x: Complex64, o1: Complex64, o2: Complex64) -> Result<Complex64> {
    let d = o2 - o1;
    if d.norm() < DEGENERACY_TOL * (1.0 + o1.norm()) {
        return Err(Error::Degenerate("concentric circles".into()));
    }
    let u = d / d.norm();
    let w = (x - o1) / u;
    Ok(o1 + w.conj() * u)
}

/// Second intersection of the circles with centers `o1`, `o2` that both
/// pass through `x`.
fn second_intersection(x: Complex64, o1: Complex64, o2: Complex64) -> Result<Complex64> {
    let y = reflect(x, o1, o2)?;
    if (y - x).norm() < DEGENERACY_TOL * (1.0 + x.norm()) {
        return Err(Error::Degenerate("tangent circles".into()));
    }
    Ok(y)
}

/// With `J = AC ∩ BD`, the second intersection of the circumcircles of
/// `ABJ` and `JCD`.
pub fn circumcircle_meet(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Complex64> {
    let j = line_intersection(a, c, b, d)?;
    let o1 = circumcenter(a, b, j)?;
    let o2 = circumcenter(j, c, d)?;
    second_intersection(j, o1, o2)
}

/// Translates the centroid to zero and scales the RMS radius to one.
pub fn unit_normalize(points: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = points.len() as f64;
    let centroid = points.iter().sum::<Complex64>() / n;
    let rms = (points.iter().map(|p| (p - centroid).norm_sqr()).sum::<f64>() / n).sqrt();
    if !(rms > 0.0) {
        return Err(Error::Degenerate("all points coincide".into()));
    }
    Ok(points.iter().map(|p| (p - centroid) / rms).collect())
}

/// Result of [`star_check`].
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StarReport {
    /// The five second intersections, in the normalized frame.
    #[serde(serialize_with = "ser_points")]
    pub points: [Complex64; 5],
    pub max_deviation: f64,
}

fn ser_points<S: serde::Serializer>(pts: &[Complex64; 5], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(5))?;
    for p in pts {
        seq.serialize_element(&[p.re, p.im])?;
    }
    seq.end()
}

/// For a pentagram on `P₀…P₄`: the spike at `P_i` is the triangle cut off by
/// the line `P_{i−1}P_{i+1}`; consecutive spike circumcircles meet at an
/// inner vertex and at a second point. The five second points are fitted by
/// the circle through the first three and the largest distance of the other
/// two from that circle is returned.
pub fn star_check(input: [Complex64; 5]) -> Result<StarReport> {
    let p = unit_normalize(&input)?;
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                if cross(p[j] - p[i], p[k] - p[i]).abs() < DEGENERACY_TOL {
                    return Err(Error::Degenerate(format!("points {i}, {j}, {k} are collinear")));
                }
            }
        }
    }
    let at = |i: i32| p[i.rem_euclid(5) as usize];
    // inner vertex on P_iP_{i+2} next to P_i
    let inner: Vec<Complex64> = (0..5)
        .map(|i| line_intersection(at(i), at(i + 2), at(i + 1), at(i - 1)))
        .collect::<Result<_>>()?;
    let centers: Vec<Complex64> = (0..5)
        .map(|i| circumcenter(at(i), inner[(i as usize + 4) % 5], inner[i as usize]))
        .collect::<Result<_>>()?;
    let mut m = [Complex64::zero(); 5];
    for i in 0..5 {
        m[i] = second_intersection(inner[i], centers[i], centers[(i + 1) % 5])?;
    }
    let o = circumcenter(m[0], m[1], m[2])?;
    let radius = (m[0] - o).norm();
    let max_deviation = m[3..]
        .iter()
        .map(|x| ((x - o).norm() - radius).abs())
        .fold(0.0, f64::max);
    Ok(StarReport {
        points: m,
        max_deviation,
    })
}

/// The regular pentagon on the unit circle.
pub fn regular_pentagon() -> [Complex64; 5] {
    std::array::from_fn(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 5.0 + PI / 2.0))
}

/// A regular pentagon with every vertex moved by up to `jitter` in each
/// coordinate.
pub fn random_pentagon<R: Rng>(rng: &mut R, jitter: f64) -> [Complex64; 5] {
    regular_pentagon().map(|z| z + Complex64::new(rng.gen_range(-jitter..=jitter), rng.gen_range(-jitter..=jitter)))
}

/// Four random points in the unit square.
pub fn random_quadruple<R: Rng>(rng: &mut R) -> [Complex64; 4] {
    std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

#[cfg(test)]
mod tests;
