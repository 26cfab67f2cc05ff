use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::Error;

fn ctx_xyz() -> Ctx {
    VarContext::builder().vars(&["x", "y", "z"]).param("t").build().unwrap()
}

fn p(s: &str, ctx: &Ctx) -> Polynomial {
    parse_poly(s, ctx).unwrap()
}

#[test]
fn formats_in_descending_order() {
    let ctx = VarContext::from_names(&["x"]).unwrap();
    assert_eq!(format_poly(&p("-1 + x^2", &ctx)), "x^2 - 1");
    assert_eq!(format_poly(&Polynomial::zero(&ctx)), "0");
    assert_eq!(format_poly(&p("x - x", &ctx)), "0");
}

#[test]
fn square_has_six_monomials() {
    let ctx = VarContext::from_names(&["x1", "x2"]).unwrap();
    let f = p("(1 + x1^2 + x2^2)^2", &ctx);
    assert_eq!(f.len(), 6);
    assert_eq!(format_poly(&f), "x1^4 + 2*x1^2*x2^2 + x2^4 + 2*x1^2 + 2*x2^2 + 1");
}

#[test]
fn parse_errors() {
    let ctx = VarContext::from_names(&["x1"]).unwrap();
    assert!(matches!(parse_poly("x1^(-1)", &ctx), Err(Error::Syntax { pos: 3, .. })));
    assert!(matches!(parse_poly("x1 + ", &ctx), Err(Error::Syntax { pos: 5, .. })));
    assert!(matches!(parse_poly("x1 $ 2", &ctx), Err(Error::Syntax { pos: 3, .. })));
    assert_eq!(parse_poly("x2 + 1", &ctx), Err(Error::UndeclaredIdentifier("x2".into())));
    assert_eq!(parse_poly("x1^4294967296", &ctx), Err(Error::ExponentOverflow));
    assert_eq!(parse_poly("x1^4294967295*x1", &ctx), Err(Error::ExponentOverflow));
    assert!(matches!(parse_poly("1/x1", &ctx), Err(Error::Syntax { .. })));
    assert_eq!(parse_poly("1/(2-2)", &ctx), Err(Error::DivisionByZero));
}

#[test]
fn rationals_and_fractions_round_trip() {
    let ctx = ctx_xyz();
    for s in ["1/2*x - 3/4", "t*x^2 - (t + 1)/(t - 1)*y", "-x/t + 1/t^2", "(t^2 + 1)/2*z"] {
        let f = p(s, &ctx);
        let g = p(&format_poly(&f), &ctx);
        assert_eq!(f, g, "{s} -> {}", format_poly(&f));
    }
}

#[test]
fn fraction_arithmetic_cancels() {
    let ctx = ctx_xyz();
    let f = p("(t^2 - 1)/(t - 1)", &ctx);
    assert_eq!(f, p("t + 1", &ctx));
    let g = p("1/t*x + 1/t^2*x", &ctx);
    assert_eq!(g, p("(t + 1)/t^2*x", &ctx));
    assert_eq!(&p("x/t", &ctx) * &p("t", &ctx), p("x", &ctx));
}

#[test]
fn substitution_extends_context() {
    let ctx = VarContext::from_names(&["x", "y"]).unwrap();
    let big = VarContext::from_names(&["x", "y", "w"]).unwrap();
    let f = p("x^2 + y", &ctx);
    let g = f.substitute(&[("x", p("w + 1", &big))], &big).unwrap();
    assert_eq!(g, p("w^2 + 2*w + 1 + y", &big));
    let simul = p("x - y", &ctx).substitute(&[("x", p("y", &ctx)), ("y", p("x", &ctx))], &ctx).unwrap();
    assert_eq!(simul, p("y - x", &ctx));
}

#[test]
fn partial_derivatives() {
    let ctx = ctx_xyz();
    assert_eq!(p("t*x^3*y + x", &ctx).partial_derivative("x").unwrap(), p("3*t*x^2*y + 1", &ctx));
    assert!(p("x", &ctx).partial_derivative("q").is_err());
}

#[test]
fn degrees_and_blocks() {
    let ctx = VarContext::builder().var("a").block_var("b", 1).block_var("c", 1).build().unwrap();
    let f = p("a^2*b + c^3", &ctx);
    let d = f.degrees();
    assert_eq!(d.total, Degree::Finite(3));
    assert_eq!(d.blocks, vec![Degree::Finite(2), Degree::Finite(3)]);
    assert_eq!(Polynomial::zero(&ctx).degrees().total, Degree::NegInfinity);
    let h = f.homogenize_blocks(&["a0", "b0"]).unwrap();
    assert_eq!(h, p("a^2*b*b0^2 + c^3*a0^2", h.ctx()));
}

#[test]
fn homogenize_then_dehomogenize() {
    let ctx = ctx_xyz();
    let f = p("x^3 + t*y - 2", &ctx);
    let h = f.homogenize("w").unwrap();
    assert!(h.is_homogeneous());
    assert_eq!(format_poly(&h), "x^3 + t*y*w^2 - 2*w^3");
    assert_eq!(h.dehomogenize("w").unwrap(), f);
}

#[test]
fn algebraic_parameter_rewrites() {
    let q = BigRational::from_integer(BigInt::from(-1));
    let ctx = VarContext::builder().var("x").algebraic("zeta", 3, q.clone()).build().unwrap();
    assert!(p("zeta^3 + 1", &ctx).is_zero());
    assert_eq!(p("zeta^4*x", &ctx), p("-zeta*x", &ctx));
    let ci = VarContext::builder().var("x").algebraic("i", 2, q).build().unwrap();
    assert_eq!(p("(i*x)^2", &ci), p("-x^2", &ci));
}

#[test]
fn specialization_rejects_vanishing_denominators() {
    let ctx = ctx_xyz();
    let f = p("x/(t - 1) + t*y", &ctx);
    let one = BigRational::from_integer(BigInt::from(1));
    assert_eq!(f.specialize_params(&[("t", one)]), Err(Error::DivisionByZero));
    let two = BigRational::from_integer(BigInt::from(2));
    assert_eq!(f.specialize_params(&[("t", two)]).unwrap(), p("x + 2*y", &ctx));
}

#[test]
fn monomial_divisibility() {
    let ctx = VarContext::from_names(&["x1", "x2", "x3"]).unwrap();
    let m = Monomial::new(vec![1, 1, 0]);
    assert!(p("x1*x2*x3 + x1^2*x2", &ctx).monomial_divides_all_terms(&m));
    assert!(!p("x1*x2 + x1", &ctx).monomial_divides_all_terms(&m));
}

#[test]
fn json_round_trip() {
    let ctx = VarContext::builder()
        .block_var("x", 0)
        .block_var("y", 1)
        .param("t")
        .algebraic("zeta", 2, BigRational::from_integer(BigInt::from(-1)))
        .build()
        .unwrap();
    let f = p("x^2*y - 1/(t + 1)*y + zeta*t/3", &ctx);
    let j = serde_json::to_string(&poly_to_json(&f)).unwrap();
    let back = poly_from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, f);
    assert!(j.contains("\"rewrite\":{\"exp\":2,\"to\":\"-1\"}"));
}

#[test]
fn context_validation() {
    assert!(VarContext::from_names(&["x", "x"]).is_err());
    assert!(VarContext::from_names(&["1x"]).is_err());
    let z = BigRational::from_integer(BigInt::from(0));
    assert!(VarContext::builder().algebraic("a", 2, z).build().is_err());
    let a = VarContext::from_names(&["x"]).unwrap();
    let b = VarContext::from_names(&["y"]).unwrap();
    assert!(matches!(p("x", &a).checked_add(&p("y", &b)), Err(Error::ContextMismatch(_))));
    assert_eq!(a.fresh_name("x"), "x_2");
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5, 0u32..2), 0..5).prop_map(|ts| {
        let ctx = ctx_xyz();
        let t = Polynomial::param(&ctx, "t").unwrap();
        let mut f = Polynomial::zero(&ctx);
        for ((a, b, c), k, e) in ts {
            let m = Polynomial::monomial(&ctx, Monomial::new(vec![a, b, c]), Coefficient::from(k));
            f = &f + &(&m * &t.pow(e).unwrap());
        }
        f
    })
}

thread_local! {
    static CTX: Ctx = ctx_xyz();
}

fn shared(f: Polynomial) -> Polynomial {
    CTX.with(|c| f.embed(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let (f, g, h) = (shared(f), shared(g), shared(h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(f in arb_poly(), g in arb_poly(), a in arb_poly(), b in arb_poly()) {
        let (f, g, a, b) = (shared(f), shared(g), shared(a), shared(b));
        let ctx = f.ctx().clone();
        let s = |q: &Polynomial| q.substitute(&[("x", a.clone()), ("z", b.clone())], &ctx).unwrap();
        prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
    }

    #[test]
    fn leibniz(f in arb_poly(), g in arb_poly()) {
        let (f, g) = (shared(f), shared(g));
        let d = |q: &Polynomial| q.partial_derivative("y").unwrap();
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
    }

    #[test]
    fn degree_is_additive(f in arb_poly(), g in arb_poly()) {
        let (f, g) = (shared(f), shared(g));
        let fg = &f * &g;
        match (f.total_degree(), g.total_degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => prop_assert_eq!(fg.total_degree(), Degree::Finite(a + b)),
            _ => prop_assert_eq!(fg.total_degree(), Degree::NegInfinity),
        }
    }

    #[test]
    fn homogenization_round_trips(f in arb_poly()) {
        let h = f.homogenize("w").unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize("w").unwrap(), f);
    }

    #[test]
    fn format_parse_round_trip(f in arb_poly()) {
        let back = parse_poly(&format_poly(&f), f.ctx()).unwrap();
        prop_assert_eq!(back, f);
    }
}
