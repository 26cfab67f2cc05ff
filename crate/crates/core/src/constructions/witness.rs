use serde::{Deserialize, Serialize};

use super::fixed::{chart_ctx, ci23_ctx, quartic_ctx, CUBIC_23, QUARTIC};
use super::{build_f0, ceil_div, pp};
use crate::polyring::{
    context_from_json, context_to_json, format_poly, ContextJson, Ctx, Parameter, Polynomial, Rewrite, VarContext,
};
use crate::{Error, Result};
use num_rational::BigRational;

pub const CLOSED_FIELD_NOTE: &str = "closed-field branch, not machine-checked";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub var: String,
    pub value: String,
}

/// A proposed point: substituting the bindings into the targets must leave one
/// equation, linear in `expected_var` with a nonzero constant coefficient, and
/// the inverted elements must stay nonzero at the resulting point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub label: String,
    pub ctx: ContextJson,
    pub targets: Vec<String>,
    pub bindings: Vec<Binding>,
    #[serde(default)]
    pub inverted: Vec<String>,
    pub expected_var: String,
    /// Target to keep as the residual; the others are eliminated first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub label: String,
    pub ok: bool,
    pub residual: Option<String>,
    pub solution: Option<String>,
    pub inverted_values: Vec<String>,
    pub detail: String,
    pub caveats: Vec<String>,
}

/// `Some(c)` when `p` has degree one in `v` with a variable-free coefficient.
fn linear_coefficient(p: &Polynomial, v: usize) -> Result<Option<Polynomial>> {
    let parts = p.collect_in(v)?;
    if parts.keys().max() != Some(&1) {
        return Ok(None);
    }
    let c = &parts[&1];
    Ok(if c.vars_used().is_empty() && !c.is_zero() { Some(c.clone()) } else { None })
}

/// Solves `p = 0` for `v`, given `p = c v + r` with constant `c`.
fn solve_for(p: &Polynomial, v: usize, c: &Polynomial) -> Result<Polynomial> {
    let ctx = p.ctx();
    let cv = c.checked_mul(&Polynomial::var_index(ctx, v))?;
    let rest = p.checked_sub(&cv)?;
    let inv = c.as_constant().ok_or_else(|| Error::Shape("coefficient is not constant".into()))?.inv(ctx)?;
    rest.checked_neg().scale(&inv)
}

pub fn check_star_witness(wc: &WitnessCheck) -> Result<WitnessReport> {
    let ctx = context_from_json(&wc.ctx)?;
    let mut targets: Vec<Polynomial> = wc.targets.iter().map(|s| pp(s, &ctx)).collect::<Result<_>>()?;
    let mut inverted: Vec<Polynomial> = wc.inverted.iter().map(|s| pp(s, &ctx)).collect::<Result<_>>()?;
    let expected = ctx.var_index(&wc.expected_var).ok_or_else(|| Error::UndeclaredIdentifier(wc.expected_var.clone()))?;
    let mut bound = Vec::new();
    for b in &wc.bindings {
        let i = ctx.var_index(&b.var).ok_or_else(|| Error::UndeclaredIdentifier(b.var.clone()))?;
        bound.push((i, pp(&b.value, &ctx)?));
    }
    for (k, (i, _)) in bound.iter().enumerate() {
        if bound[k + 1..].iter().any(|(_, v)| v.vars_used().contains(i)) || bound[..k].iter().any(|(j, _)| j == i) {
            return Err(Error::Precondition(format!("binding for `{}` is not triangular", ctx.var_name(*i))));
        }
    }
    let apply = |p: &Polynomial, i: usize, v: &Polynomial| p.substitute(&[(ctx.var_name(i), v.clone())], &ctx);
    for (i, v) in &bound {
        targets = targets.iter().map(|p| apply(p, *i, v)).collect::<Result<_>>()?;
        inverted = inverted.iter().map(|p| apply(p, *i, v)).collect::<Result<_>>()?;
    }
    if wc.keep.is_some_and(|k| k >= targets.len()) {
        return Err(Error::Precondition("kept target index out of range".into()));
    }
    // The kept target goes last so the search solves from it only as a last resort.
    let kept = wc.keep.map(|k| targets.remove(k));
    let mut residuals: Vec<Polynomial> = targets.into_iter().chain(kept).filter(|p| !p.is_zero()).collect();
    // Eliminate auxiliary variables that occur linearly with constant coefficient.
    loop {
        let mut step = None;
        'search: for (k, r) in residuals.iter().enumerate() {
            for v in r.vars_used() {
                if v == expected {
                    continue;
                }
                if let Some(c) = linear_coefficient(r, v)? {
                    step = Some((k, v, solve_for(r, v, &c)?));
                    break 'search;
                }
            }
        }
        let Some((k, v, sol)) = step else { break };
        residuals.remove(k);
        residuals = residuals.iter().map(|p| apply(p, v, &sol)).filter(|p| !matches!(p, Ok(q) if q.is_zero())).collect::<Result<_>>()?;
        inverted = inverted.iter().map(|p| apply(p, v, &sol)).collect::<Result<_>>()?;
    }
    if residuals.len() != 1 {
        return Err(Error::Shape(format!("expected one residual equation, found {}", residuals.len())));
    }
    let r = residuals.pop().expect("one residual");
    let mut report = WitnessReport {
        label: wc.label.clone(),
        ok: false,
        residual: Some(format_poly(&r)),
        solution: None,
        inverted_values: vec![],
        detail: String::new(),
        caveats: vec![CLOSED_FIELD_NOTE.into()],
    };
    if r.vars_used() != vec![expected] {
        report.detail = format!("residual must involve only `{}`", wc.expected_var);
        return Ok(report);
    }
    let Some(c) = linear_coefficient(&r, expected)? else {
        report.detail = format!("residual is not linear in `{}` with constant coefficient", wc.expected_var);
        return Ok(report);
    };
    let sol = solve_for(&r, expected, &c)?;
    report.solution = Some(format!("{} = {}", wc.expected_var, format_poly(&sol)));
    let mut ok = true;
    for p in &inverted {
        let v = apply(p, expected, &sol)?;
        if !v.vars_used().is_empty() {
            ok = false;
            report.detail = format!("inverted element `{v}` still has free variables");
        } else if v.is_zero() {
            ok = false;
            report.detail = "an inverted element vanishes at the point".into();
        }
        report.inverted_values.push(format_poly(&v));
    }
    if ok {
        report.detail = "generic point exists".into();
    }
    report.ok = ok;
    Ok(report)
}

fn with_q(ctx: &Ctx) -> Result<Ctx> {
    ctx.extend(&[], &[Parameter { name: ctx.fresh_name("q"), rewrite: None }])
}

fn b(var: &str, value: impl Into<String>) -> Binding {
    Binding { var: var.into(), value: value.into() }
}

/// Rational point of `f_0(n, m, n+1) + q` along `x2 = zeta x1`, other `x_i = 1`, `z = 1`.
pub fn witness_f0(n: u32, m: u32) -> Result<WitnessCheck> {
    let fam = build_f0(n, m, n as usize + 1)?;
    let k = ceil_div(n + 1, m);
    let mut ctx = with_q(fam.ctx())?;
    let zeta = if k == 1 {
        "(-1)".to_string()
    } else {
        let mut vars = ctx.vars().to_vec();
        let mut params = ctx.params().to_vec();
        let name = ctx.fresh_name("zeta");
        params.push(Parameter { name: name.clone(), rewrite: Some(Rewrite { exp: k, to: BigRational::from_integer((-1).into()) }) });
        ctx = VarContext::new(std::mem::take(&mut vars), params)?;
        name
    };
    let f = fam.polys[0].embed(&ctx)?;
    let target = format!("{} + q", format_poly(&f));
    let dz = f.partial_derivative("z")?;
    let mut bindings = vec![b("x2", format!("{zeta}*x1"))];
    for i in 3..=n + 1 {
        bindings.push(b(&format!("x{i}"), "1"));
    }
    bindings.push(b("z", "1"));
    Ok(WitnessCheck {
        label: format!("f0(n={n}, m={m})"),
        ctx: context_to_json(&ctx),
        targets: vec![target],
        bindings,
        inverted: vec![format_poly(&dz)],
        expected_var: "x1".into(),
        keep: None,
    })
}

/// The quartic along `x1 + x2 = 1, z1 = 1, z2 = 0, z3 = 2`.
pub fn witness_hpt_quartic() -> Result<WitnessCheck> {
    let ctx = with_q(&quartic_ctx()?)?;
    Ok(WitnessCheck {
        label: "HPT quartic".into(),
        ctx: context_to_json(&ctx),
        targets: vec![format!("{QUARTIC} + q")],
        bindings: vec![b("x2", "1 - x1"), b("z1", "1"), b("z2", "0"), b("z3", "2")],
        inverted: vec!["2*x1*x2*z3".into()],
        expected_var: "x1".into(),
        keep: None,
    })
}

/// The (2,3) pair along `z3 = alpha, x2 = x3, x1 = x2 + 1, z1 = i x3, z2 = 2`.
pub fn witness_ci23() -> Result<WitnessCheck> {
    let base = ci23_ctx()?;
    let ctx = VarContext::new(
        base.vars().to_vec(),
        vec![
            Parameter { name: "q".into(), rewrite: None },
            Parameter { name: "alpha".into(), rewrite: None },
            Parameter { name: "i".into(), rewrite: Some(Rewrite { exp: 2, to: BigRational::from_integer((-1).into()) }) },
        ],
    )?;
    Ok(WitnessCheck {
        label: "(2,3) complete intersection".into(),
        ctx: context_to_json(&ctx),
        targets: vec!["x3 - z3^2 + q".into(), CUBIC_23.into()],
        bindings: vec![b("z3", "alpha"), b("x1", "x2 + 1"), b("x2", "x3"), b("z1", "i*x3"), b("z2", "2")],
        inverted: vec!["x1*x2*z3".into()],
        expected_var: "x3".into(),
        keep: Some(0),
    })
}

/// The quadric chart along `x2 = x3 = x7 = 1, x5 = 0`.
pub fn witness_chart() -> Result<WitnessCheck> {
    let ctx = with_q(&chart_ctx()?)?;
    Ok(WitnessCheck {
        label: "quadric chart".into(),
        ctx: context_to_json(&ctx),
        targets: vec![
            "-x6*x5 + x3^2 + x4 - 2*x5^2".into(),
            "x6*x5 + x1*x4 + x2^2 - 2*x5^2 + q".into(),
            "x6*x7 - x1 + x5^2 + x7^2".into(),
        ],
        bindings: vec![b("x2", "1"), b("x3", "1"), b("x7", "1"), b("x5", "0")],
        inverted: vec!["2*x2".into()],
        expected_var: "x6".into(),
        keep: Some(1),
    })
}
