//! Built-in checks grouped by acceptance criterion. `torsion selftest` runs
//! the quick ones; the acceptance test also runs the assembly sweeps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use torsion_core::certify::{
    certify_ci, certify_grassmannian, certify_product, identity_suite, CiQuery, Theorem,
};
use torsion_core::constructions::{
    assemble_ci_low_index, build_f0, check_star_witness, double_cone, double_cone_budget, fixed_example, recognize_cone_form,
    hpt_chart_chain, hpt_quartic_chain, step1_pair, step2_alt_m2, step2_deform, witness_chart, witness_ci23,
    witness_f0, witness_hpt_quartic, FixedName, GeneratedFamily,
};
use torsion_core::groebner::{
    is_groebner, projective_closure_basis, random_ideal_elements, verify_iso_chain, Limits,
};
use torsion_core::ordering::{leading_monomials, pairwise_coprime, MonomialOrder};
use torsion_core::polyring::{format_poly, parse_poly, Polynomial, VarContext};

use crate::{render, CmdResult, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

type R<T> = Result<T, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> R<()> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn check(name: &str, f: impl FnOnce() -> R<String>) -> Check {
    match f() {
        Ok(detail) => Check { name: name.into(), ok: true, detail },
        Err(detail) => Check { name: name.into(), ok: false, detail },
    }
}

/// Leading monomials of the reference triple under grlex.
pub fn lm_triple() -> Check {
    check("leading monomials of the reference triple", || {
        let ctx = VarContext::from_names(&["x", "y"]).map_err(e)?;
        let o = MonomialOrder::grlex(&ctx);
        let fs: Vec<Polynomial> = ["3*x^2*y^3 + 6*x^3*y^2 - 5*x*y + 5", "x^5 + x^2*y^2 + y^3 + x*y - 1", "y^2 + y + 1"]
            .iter()
            .map(|s| parse_poly(s, &ctx))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let lms = leading_monomials(&fs, &o).map_err(e)?;
        let shown: Vec<String> = lms
            .iter()
            .map(|m| format_poly(&Polynomial::monomial(&ctx, m.clone(), torsion_core::polyring::Coefficient::one())))
            .collect();
        ensure(shown == ["x^3*y^2", "x^5", "y^2"], || format!("got {shown:?}"))?;
        ensure(pairwise_coprime(&lms[1..]).coprime, || "(g, h) not coprime".into())?;
        ensure(!pairwise_coprime(&lms[..2]).coprime, || "(f, g) coprime".into())?;
        Ok(shown.join(", "))
    })
}

/// Degree, `c_1` and `d f_0 / dz` for all `n, m` in `{2, 3, 4}` and every admissible `N`.
pub fn base_family() -> Check {
    check("f0 degree, c_1 and z-derivative", || {
        let mut count = 0;
        for n in 2..=4u32 {
            for m in 2..=4u32 {
                for big_n in n as usize + 1..=n as usize + (1usize << n) - 2 {
                    let f = build_f0(n, m, big_n).map_err(e)?.polys.remove(0);
                    let ctx = f.ctx();
                    ensure(f.total_degree().finite() == Some((n + m) as u64), || format!("degree at {n},{m},{big_n}"))?;
                    let xi = ctx.var_index(&format!("x{}", n + 1)).ok_or("missing variable")?;
                    let c1 = f.collect_in(xi).map_err(e)?.remove(&m).ok_or("no c_1 term")?;
                    ensure(c1 == parse_poly("x1", ctx).map_err(e)?, || format!("c_1 = {c1} at {n},{m},{big_n}"))?;
                    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                    let sgn = if n % 2 == 0 { "" } else { "-" };
                    let want = parse_poly(&format!("{sgn}{m}*{}*z^{}", xs.join("*"), m - 1), ctx).map_err(e)?;
                    ensure(f.partial_derivative("z").map_err(e)? == want, || format!("dz at {n},{m},{big_n}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} families"))
    })
}

/// Rational-point witnesses with their expected linear residuals.
pub fn witnesses() -> Check {
    check("rational-point witnesses", || {
        let mut cases = Vec::new();
        for n in 2..=4u32 {
            for m in 2..=4u32 {
                cases.push((witness_f0(n, m).map_err(e)?, format!("pi*{} + x1 + q", BigInt::from(n - 1).pow(m))));
            }
        }
        cases.push((witness_hpt_quartic().map_err(e)?, "x1 + q".into()));
        cases.push((witness_ci23().map_err(e)?, "x3 - alpha^2 + q".into()));
        cases.push((witness_chart().map_err(e)?, "-x6 + q".into()));
        for (wc, want) in &cases {
            let r = check_star_witness(wc).map_err(e)?;
            ensure(r.ok, || format!("{}: {}", wc.label, r.detail))?;
            let ctx = torsion_core::polyring::context_from_json(&wc.ctx).map_err(e)?;
            let got = parse_poly(r.residual.as_deref().ok_or("no residual")?, &ctx).map_err(e)?;
            let want = parse_poly(want, &ctx).map_err(e)?;
            ensure(got == want, || format!("{}: residual {got} != {want}", wc.label))?;
        }
        Ok(format!("{} witnesses", cases.len()))
    })
}

/// Both birational chains, every membership in both directions.
pub fn iso_chains(limits: &Limits) -> Check {
    check("isomorphism chains", || {
        for (name, chain) in [("quartic", hpt_quartic_chain()), ("chart", hpt_chart_chain())] {
            let r = verify_iso_chain(&chain.map_err(e)?, limits).map_err(e)?;
            let bad: Vec<&str> = r.steps.iter().filter(|s| !s.ok).map(|s| s.label.as_str()).collect();
            ensure(r.ok, || format!("{name}: failing steps {bad:?}"))?;
        }
        Ok("quartic and chart chains verified".into())
    })
}

/// Coprime leading monomials, S-pair check and sampled closure membership.
pub fn family_checks(fam: &GeneratedFamily, samples: usize, limits: &Limits) -> R<()> {
    fam.validate().map_err(e)?;
    if !fam.claims_coprime {
        return Ok(());
    }
    ensure(is_groebner(&fam.polys, &fam.order).map_err(e)?, || "not a Groebner basis".into())?;
    if samples > 0 {
        let elems = random_ideal_elements(&fam.polys, samples, 0).map_err(e)?;
        let r = projective_closure_basis(&fam.polys, &fam.order, &elems, limits).map_err(e)?;
        ensure(r.all_pass(), || "closure sample not in the homogenized ideal".into())?;
    }
    Ok(())
}

/// Fixed examples and the low-index quadric triple.
pub fn fixed_families(limits: &Limits) -> Check {
    check("fixed examples", || {
        for name in FixedName::ALL {
            let fam = fixed_example(name).map_err(e)?;
            family_checks(&fam, 5, limits).map_err(|m| format!("{name}: {m}"))?;
        }
        let low = assemble_ci_low_index(&[2, 2, 2], 3).map_err(e)?;
        let chart = fixed_example(FixedName::HptChart).map_err(e)?;
        let strs = |f: &GeneratedFamily| {
            let mut v: Vec<String> = f.polys.iter().map(format_poly).collect();
            v.sort();
            v
        };
        ensure(strs(&low) == strs(&chart), || "low-index quadrics differ from the chart".into())?;
        Ok(format!("{} examples", FixedName::ALL.len()))
    })
}

pub fn identities() -> Check {
    check("binomial identities", || {
        let r = identity_suite(20, 6).map_err(e)?;
        ensure(r.passed(), || r.failures.join("; "))?;
        Ok(format!("{} identities", r.checked))
    })
}

/// Certification examples (a)-(e).
pub fn certification() -> Check {
    check("certification examples", || {
        let ci = |d: u32, dim: u64| certify_ci(&CiQuery { degrees: vec![d], dim, m: 2, characteristic: 0 }).map_err(e);
        let a = ci(4, 4)?;
        ensure(a.certified && a.theorem == Theorem::CiLowIndex, || format!("(a) {a:?}"))?;
        let b = ci(4, 5)?;
        ensure(!b.certified && b.theorem == Theorem::None, || format!("(b) {b:?}"))?;
        let c = ci(6, 28)?;
        ensure(c.certified && c.fano_index == 24 && c.witness_n == Some(4), || format!("(c) {c:?}"))?;
        let c2 = ci(6, 29)?;
        ensure(!c2.certified && c2.fano_index == 25, || format!("(c) r = 25 {c2:?}"))?;
        let g = certify_grassmannian(2, 4, 4, 2, 0).map_err(e)?;
        ensure(g.certified, || format!("(d) Gr(2,4) {g:?}"))?;
        let g2 = certify_grassmannian(2, 5, 4, 2, 0).map_err(e)?;
        ensure(!g2.certified, || format!("(d) Gr(2,5) {g2:?}"))?;
        let p = certify_product(&[4, 2], &[4, 3], 2, 0).map_err(e)?;
        ensure(p.certified, || format!("(e) {p:?}"))?;
        Ok("(a)-(e) reproduced".into())
    })
}

/// `t -> 0` inverts the Step-2 forms; double cones re-recognize and keep degree.
pub fn round_trips() -> Check {
    check("degeneration round trips", || {
        let ctx = VarContext::from_names(&["x1", "x2"]).map_err(e)?;
        let f = parse_poly("x1^3 + x2^3 + x1", &ctx).map_err(e)?;
        let p1 = step1_pair(&f, None, "w1", 0, "").map_err(e)?;
        let p2 = step1_pair(&p1.0, Some(&p1.1), "w2", 0, "t1").map_err(e)?;
        let zero = [("t", BigRational::zero())];
        for d in 3..=6 {
            let dd = step2_deform(&p2, d, &["w1", "w2"], None, "t").map_err(e)?;
            ensure(dd.1.total_degree().finite() == Some(d as u64), || format!("deformed degree at d = {d}"))?;
            let back = dd.1.specialize_params(&zero).map_err(e)?;
            ensure(back == p2.1.embed(back.ctx()).map_err(e)?, || format!("deform round trip at d = {d}"))?;
            let alt = step2_alt_m2(&p2, d, &["w1", "w2"], "t").map_err(e)?;
            let back = alt.1.specialize_params(&zero).map_err(e)?;
            let flip = parse_poly("-w2", back.ctx()).map_err(e)?;
            let back = back.substitute(&[("w2", flip)], back.ctx()).map_err(e)?;
            ensure(back == p2.1.embed(back.ctx()).map_err(e)?, || format!("alternative round trip at d = {d}"))?;
        }
        let mut cones = 0;
        for n in 2..=4u32 {
            for m in 2..=4u32 {
                let plain = n as usize + (1usize << n) - 2;
                let mut g = build_f0(n, m, plain).map_err(e)?.polys.remove(0);
                let mut done = 0;
                for j in 1..(1u64 << n) - 1 {
                    for _ in 0..(n - j.count_ones()) / m {
                        let x = format!("x{}", n as u64 + j);
                        let dc = double_cone(&g, &x, "z", m).map_err(e)?;
                        ensure(dc.poly.total_degree() == g.total_degree(), || format!("degree changed at {n},{m}"))?;
                        recognize_cone_form(&dc.poly, &x, "z", m).map_err(|er| format!("re-recognition at {n},{m}: {er}"))?;
                        g = dc.poly;
                        done += 1;
                    }
                }
                let want = double_cone_budget(n, m).map_err(e)?;
                ensure(done == want, || format!("{done} cones at {n},{m}, budget {want}"))?;
                cones += done;
            }
        }
        Ok(format!("{cones} double cones"))
    })
}

pub fn quick_checks(limits: &Limits) -> Vec<Check> {
    vec![
        lm_triple(),
        base_family(),
        witnesses(),
        iso_chains(limits),
        fixed_families(limits),
        identities(),
        certification(),
        round_trips(),
    ]
}

pub(crate) fn run(json: bool, limits: &Limits) -> CmdResult {
    let checks = quick_checks(limits);
    let all = checks.iter().all(|c| c.ok);
    let text = if json {
        render::json(&checks)?
    } else {
        let mut s = String::new();
        for c in &checks {
            s += &format!("{} {}: {}\n", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    };
    Ok(Report { text, positive: all })
}
