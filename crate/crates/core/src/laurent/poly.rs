//! Multivariate polynomials with exact rational coefficients in a fixed,
//! ordered list of formal parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact ground scalar.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ordered list of formal parameter names shared by every polynomial of a
/// computation. Two contexts are compatible iff their name lists coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Context(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// The default context: scale `L` (with `μ = e^L μ₀`) and group time `t`.
    pub fn standard() -> Self {
        Context::new(["L", "t"])
    }

    /// Context used for group-law checks in two formal times.
    pub fn with_two_times() -> Self {
        Context::new(["L", "t", "s"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn param(&self, name: &str) -> Result<Param> {
        self.0
            .iter()
            .position(|n| n == name)
            .map(Param)
            .ok_or_else(|| Error::UnknownParameter(name.to_string()))
    }

    pub(crate) fn check(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Context {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context{:?}", &self.0[..])
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::standard()
    }
}

/// Index of a parameter inside its [`Context`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(pub usize);

/// Exponent vector, one entry per context parameter.
pub type Exponents = Vec<u32>;

/// Polynomial in the context parameters over [`Rational`]. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    ctx: Context,
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamPoly {
    pub fn zero(ctx: &Context) -> Self {
        ParamPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Context, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(vec![0; ctx.len()], c);
        }
        p
    }

    pub fn var(ctx: &Context, p: Param) -> Self {
        Self::monomial(ctx, p, 1, Rational::one())
    }

    /// `c · p^k`.
    pub fn monomial(ctx: &Context, p: Param, k: u32, c: Rational) -> Self {
        assert!(p.0 < ctx.len(), "parameter index out of range");
        let mut out = Self::zero(ctx);
        if !c.is_zero() {
            let mut e = vec![0; ctx.len()];
            e[p.0] = k;
            out.terms.insert(e, c);
        }
        out
    }

    /// Builds from raw `(exponents, coefficient)` pairs, dropping zeros.
    pub fn from_terms<I>(ctx: &Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut out = Self::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.len() {
                return Err(Error::Domain(format!(
                    "exponent vector of length {} in a {}-parameter context",
                    e.len(),
                    ctx.len()
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Highest power of `p` occurring, `None` for the zero polynomial.
    pub fn degree_in(&self, p: Param) -> Option<u32> {
        self.terms.keys().map(|e| e[p.0]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        ParamPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        ParamPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.ctx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Coefficient of `p^k`, as a polynomial in the remaining parameters.
    pub fn coefficient_of(&self, p: Param, k: u32) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[p.0] == k {
                let mut e2 = e.clone();
                e2[p.0] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Replaces `p` by the polynomial `value`.
    pub fn substitute(&self, p: Param, value: &ParamPoly) -> Result<Self> {
        self.ctx.check(&value.ctx)?;
        let mut out = Self::zero(&self.ctx);
        let mut powers: Vec<ParamPoly> = vec![Self::one(&self.ctx)];
        for (e, c) in &self.terms {
            let k = e[p.0] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().try_mul(value)?;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[p.0] = 0;
            let mut mono = Self::zero(&self.ctx);
            mono.add_term(rest, c.clone());
            out = out.try_add(&mono.try_mul(&powers[k])?)?;
        }
        Ok(out)
    }

    /// Sets `p` to the rational value `v`.
    pub fn evaluate(&self, p: Param, v: &Rational) -> Self {
        self.substitute(p, &Self::constant(&self.ctx, v.clone()))
            .expect("same context")
    }

    /// Partial derivative with respect to `p`.
    pub fn derivative(&self, p: Param) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[p.0] > 0 {
                let mut e2 = e.clone();
                e2[p.0] -= 1;
                out.add_term(e2, c * int(e[p.0] as i64));
            }
        }
        out
    }

    /// Renders a monomial key like `L^2*t`, `1` for the constant monomial.
    pub fn monomial_key(ctx: &Context, e: &[u32]) -> String {
        let parts: Vec<String> = ctx
            .names()
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for ParamPoly {
    /// Lexicographic monomial order on exponent vectors, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let key = Self::monomial_key(&self.ctx, e);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if key == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{abs}*{key}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.try_add(rhs).expect("parameter context mismatch")
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.try_sub(rhs).expect("parameter context mismatch")
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.try_mul(rhs).expect("parameter context mismatch")
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.neg_ref()
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.neg_ref()
    }
}
