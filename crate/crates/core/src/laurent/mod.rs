//! Exact truncated Laurent series in the regularization variable ε.
//!
//! Coefficients live in [`ParamPoly`], polynomials over exact rationals in a
//! fixed list of formal parameters (the log-scale `L` and group times `t`,
//! `s`), so scale dependence stays symbolic.

mod parse;
mod poly;
mod series;

pub use poly::{int, rat, Context, Exponents, Param, ParamPoly, Rational};
pub use series::{LaurentSeries, SeriesRecord, DEFAULT_ORDER};

/// `1/(kε(1 − kε))` through ε-degree `order`: the elementary toy Feynman
/// factor evaluated at `a = kε`.
pub fn toy_factor(ctx: &Context, k: u32, order: i32) -> LaurentSeries {
    let k = i64::from(k);
    // 1/(kε) · Σ (kε)^m, needing the geometric part through order + 1
    LaurentSeries::geometric(ctx, k, order + 1).shift(-1).scale(&rat(1, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_traits::One;

    fn ctx() -> Context {
        Context::standard()
    }

    fn p(s: &str) -> LaurentSeries {
        LaurentSeries::parse(&ctx(), s).unwrap()
    }

    fn l() -> ParamPoly {
        ParamPoly::var(&ctx(), Param(0))
    }

    #[test]
    fn add_examples() {
        assert!((p("1/ε") + p("-1/ε")).is_zero());
        assert_eq!(p("1/ε + 1") + p("2"), p("1/ε + 3"));
        assert_eq!(p("L/ε") + p("t/ε"), p("(L + t)/ε"));
    }

    #[test]
    fn add_takes_least_truncation() {
        let a = p("1 + ε + O(ε^3)");
        let b = p("ε^5");
        assert_eq!((&a + &b).order(), Some(2));
        assert_eq!(&a + &b, a);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1/ε") * p("ε"), LaurentSeries::one(&ctx()));
        assert_eq!(p("(1/ε + 1)^2"), p("1/ε^2 + 2/ε + 1"));
        // 1/(ε(1−ε)) through ε^4 against the geometric-series oracle
        let geo = LaurentSeries::from_terms(&ctx(), (0..=5).map(|m| (m, ParamPoly::one(&ctx()))), Some(5)).unwrap();
        let prod = p("1/ε") * geo;
        assert_eq!(prod.order(), Some(4));
        for k in -1..=4 {
            assert_eq!(prod.coeff(k), ParamPoly::one(&ctx()), "degree {k}");
        }
    }

    #[test]
    fn mul_truncation_rule() {
        let a = p("1/ε^2 + 1 + O(ε^3)");
        let b = p("ε + O(ε^4)");
        // min(N_a + m_b, N_b + m_a) = min(2 + 1, 3 - 2)
        assert_eq!((a * b).order(), Some(1));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(LaurentSeries::one(&ctx()).invert().unwrap(), LaurentSeries::one(&ctx()));
        assert_eq!(p("ε").invert().unwrap(), p("1/ε"));
        let inv = p("1 - ε").invert_to(Some(8)).unwrap();
        for k in 0..=8 {
            assert_eq!(inv.coeff(k), ParamPoly::one(&ctx()));
        }
        let back = &inv * &p("1 - ε");
        assert!(back.agrees_with(&LaurentSeries::one(&ctx())));
        assert_eq!(back.order(), Some(8));
    }

    #[test]
    fn invert_rejects_symbolic_or_zero_leading_coefficient() {
        assert!(matches!(p("L + ε").invert(), Err(Error::Singular(_))));
        assert!(matches!(
            LaurentSeries::zero(&ctx(), None).invert(),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn pole_part_examples() {
        assert_eq!(p("2/ε^2 + 3 + ε").pole_part(), p("2/ε^2"));
        assert!(p("5").pole_part().is_zero());
        assert_eq!(p("L/ε + 2 + t*ε").pole_part(), p("L/ε"));
        // truncated input still yields an exact pole part
        let a = p("1/ε + 7 + O(ε^2)");
        assert!(a.pole_part().is_exact());
        assert!(p("1/ε^3 + O(ε^-1)").checked_pole_part().is_err());
    }

    #[test]
    fn exp_scaled_examples() {
        assert_eq!(
            LaurentSeries::exp_scaled(&ctx(), 0, Param(0), 10),
            LaurentSeries::one(&ctx())
        );
        let e1 = LaurentSeries::exp_scaled(&ctx(), 1, Param(0), 3);
        assert_eq!(e1.coeff(1), l());
        assert_eq!(e1.coeff(2), l().pow(2).scale(&rat(1, 2)));
        assert_eq!(e1.coeff(3), l().pow(3).scale(&rat(1, 6)));
        let e2 = LaurentSeries::exp_scaled(&ctx(), 2, Param(0), 2);
        assert_eq!(e2, p("1 + 2*L*ε + 2*L^2*ε^2 + O(ε^3)"));
    }

    #[test]
    fn constant_term_examples() {
        assert_eq!(p("3 + ε").constant_term().unwrap(), ParamPoly::constant(&ctx(), int(3)));
        assert!(matches!(p("1/ε + 1").constant_term(), Err(Error::Pole { order: 1 })));
        // e^{εL}/(ε(1−ε)) − 1/ε has constant term L + 1
        let e = LaurentSeries::exp_scaled(&ctx(), 1, Param(0), 6);
        let s = &e * &toy_factor(&ctx(), 1, 6) - p("1/ε");
        assert_eq!(s.constant_term().unwrap(), &l() + &ParamPoly::one(&ctx()));
    }

    #[test]
    fn toy_factor_matches_closed_form() {
        // 1/(2ε(1 − 2ε)) = 1/(2ε) + 1 + 2ε + 4ε² + …
        let g = toy_factor(&ctx(), 2, 2);
        assert_eq!(g, p("(1/2)/ε + 1 + 2*ε + 4*ε^2 + O(ε^3)"));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in [
            "(1/2)/ε^2 + (3/2 + L)/ε + 7/2 + 3*L + L^2 + O(ε^1)",
            "-1/ε",
            "1/ε^2 - (1/2)/ε",
            "L*ε - 2*t*ε^3",
            "0",
            "O(ε^4)",
        ] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s} -> {a}");
        }
        assert_eq!(p("-(1/2)/ε").to_string(), "-(1/2)/ε");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match LaurentSeries::parse(&ctx(), "1 + (L") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match LaurentSeries::parse(&ctx(), "1 + q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn record_lists_degrees_and_monomials() {
        let r = p("(3/2 + L)/ε + 2").to_record();
        assert_eq!(r.order, None);
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0].0, -1);
        assert_eq!(r.terms[0].1["1"], "3/2");
        assert_eq!(r.terms[0].1["L"], "1");
    }

    #[test]
    fn recontext_maps_by_name() {
        let a = p("L/ε + t");
        let b = a.recontext(&Context::with_two_times()).unwrap();
        assert_eq!(b.to_string(), a.to_string());
        assert!(a.recontext(&Context::new(["L"])).is_err());
        assert!(Rational::one() == int(1));
    }
}
