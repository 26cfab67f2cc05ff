use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::coeff::Coefficient;
use super::context::{Ctx, Parameter, Rewrite, VarContext, Variable};
use super::format::{format_ppoly, grlex_desc};
use super::parse::parse_coefficient;
use super::poly::{Monomial, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarJson {
    pub name: String,
    #[serde(default)]
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteJson {
    pub exp: u32,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamJson {
    pub name: String,
    #[serde(default)]
    pub rewrite: Option<RewriteJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// Context on its own: `{"vars":[..],"params":[..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub vars: Vec<VarJson>,
    #[serde(default)]
    pub params: Vec<ParamJson>,
}

/// Self-contained polynomial: context plus terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<VarJson>,
    #[serde(default)]
    pub params: Vec<ParamJson>,
    pub terms: Vec<TermJson>,
}

pub fn context_to_json(ctx: &VarContext) -> ContextJson {
    ContextJson {
        vars: ctx.vars().iter().map(|v| VarJson { name: v.name.clone(), block: v.block }).collect(),
        params: ctx
            .params()
            .iter()
            .map(|p| ParamJson {
                name: p.name.clone(),
                rewrite: p.rewrite.as_ref().map(|r| RewriteJson { exp: r.exp, to: r.to.to_string() }),
            })
            .collect(),
    }
}

pub fn context_from_json(j: &ContextJson) -> Result<Ctx> {
    let vars = j.vars.iter().map(|v| Variable { name: v.name.clone(), block: v.block }).collect();
    let params = j
        .params
        .iter()
        .map(|p| {
            let rewrite = match &p.rewrite {
                None => None,
                Some(r) => Some(Rewrite {
                    exp: r.exp,
                    to: BigRational::from_str(r.to.trim())
                        .map_err(|_| Error::Malformed(format!("bad rational `{}`", r.to)))?,
                }),
            };
            Ok(Parameter { name: p.name.clone(), rewrite })
        })
        .collect::<Result<Vec<_>>>()?;
    VarContext::new(vars, params)
}

fn coeff_strings(c: &Coefficient, ctx: &VarContext) -> (String, String) {
    match c {
        Coefficient::Rational(r) => (r.numer().to_string(), r.denom().to_string()),
        Coefficient::Fraction { num, den } => (format_ppoly(num, ctx), format_ppoly(den, ctx)),
    }
}

pub fn poly_to_json(f: &Polynomial) -> PolyJson {
    let c = context_to_json(f.ctx());
    let mut terms: Vec<_> = f.terms().iter().collect();
    terms.sort_by(|a, b| grlex_desc(a.0, b.0));
    PolyJson {
        vars: c.vars,
        params: c.params,
        terms: terms
            .into_iter()
            .map(|(m, c)| {
                let (num, den) = coeff_strings(c, f.ctx());
                TermJson { exp: m.exps().to_vec(), num, den }
            })
            .collect(),
    }
}

pub fn poly_from_json(j: &PolyJson) -> Result<Polynomial> {
    let ctx = context_from_json(&ContextJson { vars: j.vars.clone(), params: j.params.clone() })?;
    poly_from_terms_json(&j.terms, &ctx)
}

pub fn poly_from_terms_json(terms: &[TermJson], ctx: &Ctx) -> Result<Polynomial> {
    let mut out = Polynomial::zero(ctx);
    for t in terms {
        if t.exp.len() != ctx.nvars() {
            return Err(Error::Malformed("exponent vector length differs from variable count".into()));
        }
        let num = parse_coefficient(&t.num, ctx)?;
        let den = parse_coefficient(&t.den, ctx)?;
        out.add_term(Monomial::new(t.exp.clone()), num.div(&den, ctx)?)?;
    }
    Ok(out)
}

/// Numerator and denominator strings of a coefficient.
pub fn coefficient_strings(c: &Coefficient, ctx: &VarContext) -> (String, String) {
    coeff_strings(c, ctx)
}

