use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{int, Context, Param, ParamPoly, Rational};
use crate::error::{Error, Result};

/// Default truncation order in ε.
pub const DEFAULT_ORDER: i32 = 10;

/// Truncated Laurent series `Σ_{k ≥ m} c_k ε^k` with [`ParamPoly`]
/// coefficients.
///
/// `order` is the truncation order `N`: coefficients of ε-degree `> N` are
/// unknown. `order == None` marks a series known exactly (a Laurent
/// polynomial), which is what pole parts and hand-built constants are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    ctx: Context,
    valuation: i32,
    coeffs: Vec<ParamPoly>,
    order: Option<i32>,
}

fn min_order(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    fn build(ctx: &Context, valuation: i32, coeffs: Vec<ParamPoly>, order: Option<i32>) -> Self {
        let mut s = LaurentSeries {
            ctx: ctx.clone(),
            valuation,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(n) = self.order {
            let keep = (n - self.valuation + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(ParamPoly::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.valuation = 0;
        }
    }

    /// Builds from `(degree, coefficient)` pairs; repeated degrees add up.
    pub fn from_terms<I>(ctx: &Context, terms: I, order: Option<i32>) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, ParamPoly)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        if terms.is_empty() {
            return Ok(Self::zero(ctx, order));
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![ParamPoly::zero(ctx); (hi - lo + 1) as usize];
        for (k, c) in terms {
            let slot = &mut coeffs[(k - lo) as usize];
            *slot = slot.try_add(&c)?;
        }
        Ok(Self::build(ctx, lo, coeffs, order))
    }

    pub fn zero(ctx: &Context, order: Option<i32>) -> Self {
        Self::build(ctx, 0, Vec::new(), order)
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// Exact constant.
    pub fn constant(ctx: &Context, c: Rational) -> Self {
        Self::poly(ctx, ParamPoly::constant(ctx, c))
    }

    /// Exact ε-free series.
    pub fn poly(ctx: &Context, p: ParamPoly) -> Self {
        Self::build(ctx, 0, vec![p], None)
    }

    /// Exact monomial `c ε^k`.
    pub fn monomial(ctx: &Context, k: i32, c: Rational) -> Self {
        Self::build(ctx, k, vec![ParamPoly::constant(ctx, c)], None)
    }

    /// `ε` itself.
    pub fn eps(ctx: &Context) -> Self {
        Self::monomial(ctx, 1, Rational::one())
    }

    /// `e^{k ε p} = Σ_{m ≤ order} (k p)^m ε^m / m!`, the series of `μ^{kε}`
    /// when `p = L`.
    pub fn exp_scaled(ctx: &Context, k: u32, p: Param, order: i32) -> Self {
        if k == 0 {
            return Self::one(ctx);
        }
        let kp = ParamPoly::var(ctx, p).scale(&int(k as i64));
        let mut coeffs = Vec::new();
        let mut term = ParamPoly::one(ctx);
        for m in 0..=order.max(-1) {
            if m > 0 {
                term = (&term * &kp).scale(&Rational::new(1.into(), m.into()));
            }
            coeffs.push(term.clone());
        }
        Self::build(ctx, 0, coeffs, Some(order))
    }

    /// Geometric-type series `Σ_{m ≤ order} (k ε)^m = 1/(1 − kε)`.
    pub fn geometric(ctx: &Context, k: i64, order: i32) -> Self {
        let coeffs = (0..=order.max(-1))
            .map(|m| ParamPoly::constant(ctx, int(k).pow(m)))
            .collect();
        Self::build(ctx, 0, coeffs, Some(order))
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Truncation order `N`, `None` when exact.
    pub fn order(&self) -> Option<i32> {
        self.order
    }

    /// Lowest ε-degree with a nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Highest stored ε-degree, `None` for zero.
    pub fn max_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.valuation + self.coeffs.len() as i32 - 1)
    }

    /// Order of the pole at ε = 0 (0 when there is none).
    pub fn pole_order(&self) -> i32 {
        self.valuation().map_or(0, |v| (-v).max(0))
    }

    /// Degree from which coefficients may be nonzero; zero series count as
    /// starting past their truncation order.
    fn effective_valuation(&self) -> Option<i32> {
        if self.is_zero() {
            self.order.map(|n| n + 1)
        } else {
            Some(self.valuation)
        }
    }

    /// Coefficient of `ε^k` (zero when not stored).
    pub fn coeff(&self, k: i32) -> ParamPoly {
        let idx = k - self.valuation;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            ParamPoly::zero(&self.ctx)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Whether the coefficient of `ε^k` is determined by the truncation.
    pub fn is_known(&self, k: i32) -> bool {
        self.order.map_or(true, |n| k <= n)
    }

    /// Iterates over nonzero `(degree, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &ParamPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i32, c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let order = min_order(self.order, other.order);
        if self.is_zero() {
            return Ok(other.truncated_opt(order));
        }
        if other.is_zero() {
            return Ok(self.truncated_opt(order));
        }
        let lo = self.valuation.min(other.valuation);
        let hi = self.max_degree().unwrap().max(other.max_degree().unwrap());
        let coeffs = (lo..=hi).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Ok(Self::build(&self.ctx, lo, coeffs, order))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Cauchy product; the result is valid through
    /// `min(N_a + m_b, N_b + m_a)` where `m` are valuations.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let order = match (self.effective_valuation(), other.effective_valuation()) {
            (Some(va), Some(vb)) => min_order(self.order.map(|n| n + vb), other.order.map(|n| n + va)),
            // an exact zero factor makes the product exactly zero
            _ => None,
        };
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx, order));
        }
        let lo = self.valuation + other.valuation;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match order {
            Some(n) => len.min((n - lo + 1).max(0) as usize),
            None => len,
        };
        let mut coeffs = vec![ParamPoly::zero(&self.ctx); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::build(&self.ctx, lo, coeffs, order))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|p| p.scale(c)).collect();
        Self::build(&self.ctx, self.valuation, coeffs, self.order)
    }

    pub fn mul_poly(&self, p: &ParamPoly) -> Result<Self> {
        self.try_mul(&Self::poly(&self.ctx, p.clone()))
    }

    /// Multiplies by `ε^k` (shifts degrees and truncation order).
    pub fn shift(&self, k: i32) -> Self {
        Self::build(
            &self.ctx,
            self.valuation + k,
            self.coeffs.clone(),
            self.order.map(|n| n + k),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.ctx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse. The leading coefficient must be a nonzero
    /// rational constant. Truncated inputs keep their relative precision;
    /// exact inputs with more than one term are expanded through
    /// [`DEFAULT_ORDER`].
    pub fn invert(&self) -> Result<Self> {
        let target = match self.order {
            Some(n) => n - 2 * self.valuation,
            None if self.coeffs.len() <= 1 => return self.invert_to(None),
            None => DEFAULT_ORDER,
        };
        self.invert_to(Some(target))
    }

    /// Inverse valid through ε-degree `target` (`None` only for monomials).
    pub fn invert_to(&self, target: Option<i32>) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("zero series".into()));
        }
        let lead = self.coeffs[0].as_constant().filter(|c| !c.is_zero()).ok_or_else(|| {
            Error::Singular(format!(
                "leading coefficient {} is not a nonzero constant",
                self.coeffs[0]
            ))
        })?;
        let v = self.valuation;
        let inv_lead = lead.recip();
        if self.coeffs.len() == 1 && self.order.is_none() {
            let c = ParamPoly::constant(&self.ctx, inv_lead);
            return Ok(Self::build(&self.ctx, -v, vec![c], target));
        }
        let target = target
            .ok_or_else(|| Error::Truncation("inverse of a multi-term series needs a truncation order".into()))?;
        // achievable precision is bounded by the input's relative precision
        let target = match self.order {
            Some(n) => target.min(n - 2 * v),
            None => target,
        };
        let len = (target + v + 1).max(0) as usize;
        let mut out: Vec<ParamPoly> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                out.push(ParamPoly::constant(&self.ctx, inv_lead.clone()));
                continue;
            }
            let mut acc = ParamPoly::zero(&self.ctx);
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(acc.scale(&-inv_lead.clone()));
        }
        Ok(Self::build(&self.ctx, -v, out, Some(target)))
    }

    /// The pole-part projection `T`: strictly negative ε-degrees. The result
    /// is exact whenever the input is known through `ε^{-1}`.
    pub fn pole_part(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .take((-self.valuation).max(0) as usize)
            .cloned()
            .collect();
        let order = match self.order {
            Some(n) if n < -1 => Some(n),
            _ => None,
        };
        Self::build(&self.ctx, self.valuation, coeffs, order)
    }

    /// `a − T(a)`: the part regular at ε = 0.
    pub fn regular_part(&self) -> Self {
        let skip = (-self.valuation).max(0) as usize;
        let coeffs = self.coeffs.iter().skip(skip).cloned().collect();
        Self::build(&self.ctx, self.valuation.max(0), coeffs, self.order)
    }

    /// The pole part with a check that it is fully determined.
    pub fn checked_pole_part(&self) -> Result<Self> {
        match self.order {
            Some(n) if n < -1 => Err(Error::Truncation(format!(
                "pole part needs coefficients through ε^-1, series known only through ε^{n}"
            ))),
            _ => Ok(self.pole_part()),
        }
    }

    /// The ε⁰ coefficient of a series without poles.
    pub fn constant_term(&self) -> Result<ParamPoly> {
        if self.pole_order() > 0 {
            return Err(Error::Pole {
                order: self.pole_order(),
            });
        }
        if !self.is_known(0) {
            return Err(Error::Truncation("ε^0 coefficient beyond truncation order".into()));
        }
        Ok(self.coeff(0))
    }

    pub fn truncate(&self, order: i32) -> Self {
        self.truncated_opt(min_order(self.order, Some(order)))
    }

    fn truncated_opt(&self, order: Option<i32>) -> Self {
        Self::build(
            &self.ctx,
            self.valuation,
            self.coeffs.clone(),
            min_order(self.order, order),
        )
    }

    /// Equality of every coefficient both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let n = min_order(self.order, other.order);
        self.truncated_opt(n).coeffs_eq(&other.truncated_opt(n))
    }

    fn coeffs_eq(&self, other: &Self) -> bool {
        self.valuation == other.valuation && self.coeffs == other.coeffs
    }

    /// Highest power of `p` in any coefficient.
    pub fn degree_in(&self, p: Param) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| c.degree_in(p)).max()
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&ParamPoly) -> Result<ParamPoly>,
    {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self::build(&self.ctx, self.valuation, coeffs, self.order))
    }

    /// Replaces parameter `p` by `value` in every coefficient.
    pub fn substitute(&self, p: Param, value: &ParamPoly) -> Result<Self> {
        self.map_coeffs(|c| c.substitute(p, value))
    }

    /// Re-expresses the series in another context, mapping parameters by
    /// name. Fails if a used parameter is missing from `target`.
    pub fn recontext(&self, target: &Context) -> Result<Self> {
        let map: Vec<Param> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.param(n))
            .collect::<Result<_>>()?;
        self.map_coeffs_into(target, |e| {
            let mut out = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                out[map[i].0] = k;
            }
            out
        })
    }

    fn map_coeffs_into<F>(&self, target: &Context, f: F) -> Result<Self>
    where
        F: Fn(&[u32]) -> Vec<u32>,
    {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ParamPoly::from_terms(target, c.terms().map(|(e, r)| (f(e), r.clone()))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(target, self.valuation, coeffs, self.order))
    }

    /// Machine-readable form: `(ε-degree, {monomial: coefficient})` pairs.
    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            order: self.order,
            terms: self
                .terms()
                .map(|(k, c)| {
                    let m = c
                        .terms()
                        .map(|(e, r)| (ParamPoly::monomial_key(&self.ctx, e), r.to_string()))
                        .collect();
                    (k, m)
                })
                .collect(),
        }
    }

    /// Parses the text rendering (see [`super::parse`]).
    pub fn parse(ctx: &Context, text: &str) -> Result<Self> {
        super::parse::parse_series(ctx, text)
    }
}

/// Serializable form of a [`LaurentSeries`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: Option<i32>,
    pub terms: Vec<(i32, std::collections::BTreeMap<String, String>)>,
}

impl fmt::Display for LaurentSeries {
    /// `c_m/ε^m + … + c_0 + … + c_N*ε^N + O(ε^{N+1})`, coefficients in
    /// parentheses when they are sums or fractions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let single_neg = c.num_terms() == 1 && c.terms().next().is_some_and(|(_, r)| r.is_negative());
            let mag = if single_neg { -c } else { c.clone() };
            if first {
                if single_neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if single_neg { " - " } else { " + " })?;
            }
            first = false;
            let text = mag.to_string();
            let body = if mag.num_terms() > 1 || text.contains('/') {
                format!("({text})")
            } else {
                text
            };
            let pow = if k.abs() == 1 {
                String::new()
            } else {
                format!("^{}", k.abs())
            };
            match k.cmp(&0) {
                std::cmp::Ordering::Equal => write!(f, "{body}")?,
                std::cmp::Ordering::Less => write!(f, "{}/ε{pow}", if body == "1" { "1" } else { &body })?,
                std::cmp::Ordering::Greater if body == "1" => write!(f, "ε{pow}")?,
                std::cmp::Ordering::Greater => write!(f, "{body}*ε{pow}")?,
            }
        }
        match self.order {
            Some(n) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(ε^{})", n + 1)
            }
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: &LaurentSeries) -> LaurentSeries {
                self.$try(rhs).expect("parameter context mismatch")
            }
        }
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$try(&rhs).expect("parameter context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(&-Rational::one())
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}
