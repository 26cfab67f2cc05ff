use proptest::prelude::*;

use super::*;
use crate::polyring::{context_to_json, VarContext};

fn setup(names: &[&str]) -> (Ctx, MonomialOrder) {
    let ctx = VarContext::from_names(names).unwrap();
    let o = MonomialOrder::grlex(&ctx);
    (ctx, o)
}

fn p(s: &str, ctx: &Ctx) -> Polynomial {
    parse_poly(s, ctx).unwrap()
}

#[test]
fn division_examples() {
    let (c, o) = setup(&["x", "y"]);
    let d = divide(&p("x^2", &c), &[p("x", &c)], &o).unwrap();
    assert_eq!(d.quotients, vec![p("x", &c)]);
    assert!(d.remainder.is_zero());
    let d = divide(&p("x^2 + y", &c), &[p("x", &c)], &o).unwrap();
    assert_eq!(d.remainder, p("y", &c));
    let d = divide(&p("x*y + 1", &c), &[p("y + 1", &c)], &o).unwrap();
    assert_eq!(d.remainder, p("1 - x", &c));
    assert_eq!(d.quotients, vec![p("x", &c)]);
}

#[test]
fn division_uses_first_matching_divisor() {
    let (c, o) = setup(&["x", "y"]);
    let d = divide(&p("x*y", &c), &[p("x - 1", &c), p("y - 1", &c)], &o).unwrap();
    assert_eq!(d.quotients, vec![p("y", &c), p("1", &c)]);
    assert_eq!(d.remainder, p("1", &c));
}

#[test]
fn s_polynomial_examples() {
    let (c, o) = setup(&["x", "y"]);
    assert_eq!(s_polynomial(&p("x^2 + 1", &c), &p("y^2 + 1", &c), &o).unwrap(), p("y^2 - x^2", &c));
    assert!(s_polynomial(&p("x", &c), &p("y", &c), &o).unwrap().is_zero());
}

#[test]
fn twisted_cubic_generators_are_not_a_basis() {
    let (c, o) = setup(&["x", "y", "z"]);
    let g = vec![p("y - x^2", &c), p("z - x^3", &c)];
    assert!(!is_groebner(&g, &o).unwrap());
    let gb = buchberger_complete(&g, &o, &Limits::default()).unwrap();
    assert!(is_groebner(&gb, &o).unwrap());
    for f in &g {
        assert!(ideal_member(f, &gb, &o, &Limits::default()).unwrap());
    }
    assert!(ideal_member(&p("x*z - y^2", &c), &g, &o, &Limits::default()).unwrap());
    assert!(!ideal_member(&p("x*z - y", &c), &g, &o, &Limits::default()).unwrap());
}

#[test]
fn localized_membership() {
    let (c, o) = setup(&["x", "y"]);
    let lim = Limits::default();
    assert!(ideal_member_localized(&p("x", &c), &[p("x*y", &c)], &[p("y", &c)], &o, &lim).unwrap());
    assert!(!ideal_member(&p("x", &c), &[p("x*y", &c)], &o, &lim).unwrap());
    assert!(!ideal_member(&p("1", &c), &[p("x", &c)], &o, &lim).unwrap());
    assert!(IdealBasis::new(&[p("x", &c)], &[p("x", &c)], &o, &lim).unwrap().is_unit_ideal());
}

#[test]
fn parameters_in_coefficients() {
    let ctx = VarContext::builder().vars(&["x", "y"]).param("t").build().unwrap();
    let o = MonomialOrder::grlex(&ctx);
    let g = vec![p("t*x^2 - y", &ctx), p("x*y - 1/t", &ctx)];
    let gb = buchberger_complete(&g, &o, &Limits::default()).unwrap();
    assert!(is_groebner(&gb, &o).unwrap());
    assert!(ideal_member(&p("y^2 - x", &ctx), &gb, &o, &Limits::default()).unwrap());
}

#[test]
fn step_limit_is_reported() {
    let (c, o) = setup(&["x", "y", "z"]);
    let g = vec![p("x + y + z", &c), p("x*y + y*z + z*x", &c), p("x*y*z - 1", &c)];
    let lim = Limits { max_steps: 1, ..Limits::default() };
    assert!(matches!(buchberger_complete(&g, &o, &lim), Err(Error::ResourceLimit(_))));
}

#[test]
fn closure_of_coprime_generators() {
    let (c, o) = setup(&["x", "y", "z"]);
    let g = vec![p("x^2 + y", &c), p("z^2 + y", &c)];
    let rep = projective_closure_basis(&g, &o, &[p("x^2 - z^2", &c)], &Limits::default()).unwrap();
    assert!(rep.coprime);
    assert!(rep.all_pass());
    assert_eq!(rep.homogenized[0], p("x^2 + y*x0", rep.homogenized[0].ctx()));
    let j = serde_json::to_value(rep.to_json()).unwrap();
    assert_eq!(j["samples"][0]["pass"], serde_json::Value::Bool(true));
}

#[test]
fn closure_fails_fast_on_shared_leaders() {
    let (c, o) = setup(&["x", "y", "z"]);
    let g = vec![p("y - x^2", &c), p("z - x^3", &c)];
    let rep = projective_closure_basis(&g, &o, &[p("x*z - y^2", &c)], &Limits::default()).unwrap();
    assert!(!rep.coprime);
    assert_eq!(rep.offending, Some((0, 1)));
    assert!(rep.samples.is_empty());
    assert!(matches!(
        projective_closure_basis(&[p("3", &c)], &o, &[], &Limits::default()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn small_iso_chain() {
    let a = VarContext::from_names(&["x", "y"]).unwrap();
    let b = VarContext::from_names(&["y"]).unwrap();
    let chain = IsoChain {
        steps: vec![
            ChainStep::Substitution {
                label: "eliminate x".into(),
                source_ctx: context_to_json(&a),
                source: vec!["x - y - 1".into(), "x^2 - 1".into()],
                target_ctx: context_to_json(&b),
                target: vec!["y^2 + 2*y".into()],
                bindings: vec![RationalBinding { var: "x".into(), num: "y + 1".into(), den: "1".into() }],
                denominators: vec![],
            },
            ChainStep::Membership {
                label: "graph".into(),
                ctx: context_to_json(&a),
                left: vec!["x - y - 1".into(), "x^2 - 1".into()],
                right: vec!["x - y - 1".into(), "y^2 + 2*y".into()],
                inverted: vec![],
            },
        ],
    };
    let rep = verify_iso_chain(&chain, &Limits::default()).unwrap();
    assert!(rep.ok, "{rep:?}");
    let text = serde_json::to_string(&chain).unwrap();
    assert_eq!(serde_json::from_str::<IsoChain>(&text).unwrap(), chain);
}

#[test]
fn substitution_with_declared_denominator() {
    let a = VarContext::from_names(&["y", "z"]).unwrap();
    let b = VarContext::from_names(&["x1", "x2"]).unwrap();
    let step = ChainStep::Substitution {
        label: "chart".into(),
        source_ctx: context_to_json(&a),
        source: vec!["y*z - 1".into()],
        target_ctx: context_to_json(&b),
        target: vec!["x1 - x2^2".into()],
        bindings: vec![
            RationalBinding { var: "y".into(), num: "x1".into(), den: "x2".into() },
            RationalBinding { var: "z".into(), num: "1".into(), den: "x2".into() },
        ],
        denominators: vec!["x2".into()],
    };
    let rep = verify_iso_chain(&IsoChain { steps: vec![step] }, &Limits::default()).unwrap();
    assert!(rep.ok, "{rep:?}");
}

fn arb_poly(ctx: Ctx) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..4), 1..4).prop_map(move |ts| {
        Polynomial::from_terms(&ctx, ts.into_iter().map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), Coefficient::from(k))))
            .unwrap()
    })
}

fn c3() -> Ctx {
    thread_local!(static C: Ctx = VarContext::from_names(&["x", "y", "z"]).unwrap());
    C.with(|c| c.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn division_identity(f in arb_poly(c3()), g1 in arb_poly(c3()), g2 in arb_poly(c3())) {
        let o = MonomialOrder::with_priority(&c3(), &["y", "x", "z"]).unwrap();
        let gs: Vec<Polynomial> = [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
        let d = divide(&f, &gs, &o).unwrap();
        let mut back = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            back = &back + &(q * g);
        }
        prop_assert_eq!(back, f);
        let lms = crate::ordering::leading_monomials(&gs, &o).unwrap();
        for m in d.remainder.terms().keys() {
            prop_assert!(lms.iter().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn completion_is_a_basis_and_order_free(g1 in arb_poly(c3()), g2 in arb_poly(c3()), h in arb_poly(c3())) {
        let o = MonomialOrder::grlex(&c3());
        let lim = Limits { max_steps: 2_000, max_terms: 200_000, parallel: false };
        let gens = vec![g1.clone(), g2.clone()];
        let Ok(gb) = buchberger_complete(&gens, &o, &lim) else { return Ok(()); };
        prop_assert!(is_groebner(&gb, &o).unwrap());
        let f = &(&h * &g1) + &g2;
        prop_assert!(ideal_member(&f, &gens, &o, &lim).unwrap());
        let rev = vec![g2, g1];
        prop_assert_eq!(ideal_member(&h, &gens, &o, &lim).unwrap(), ideal_member(&h, &rev, &o, &lim).unwrap());
    }
}
