//! Explicit polynomial families: base hypersurfaces, the double cone,
//! the hyperplane-adding steps, complete-intersection and product assemblies,
//! the fixed examples, and the rational-point witness checker.

mod assemble;
mod cone;
mod fixed;
mod hypers;
mod witness;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ordering::{leading_monomials, pairwise_coprime, MonomialOrder, OrderJson};
use crate::polyring::{
    context_from_json, context_to_json, format_poly, parse_poly, ContextJson, Ctx, Polynomial, VarContext, Variable,
};
use crate::{Error, Result};

pub use assemble::{assemble_ci, assemble_ci_low_index, assemble_product_hypersurface, base_hypersurface};
pub use cone::{double_cone, double_cone_budget, recognize_cone_form, DoubleCone};
pub(crate) use cone::budget_sums;
pub use fixed::{fixed_example, hpt_chart_chain, hpt_quartic_chain, FixedName};
pub use hypers::{
    add_hypers, build_check_f, build_check_f_with, step1_pair, step2_alt_m2, step2_deform, AddHypers, CheckF,
};
pub use witness::{
    check_star_witness, witness_ci23, witness_chart, witness_f0, witness_hpt_quartic, Binding, WitnessCheck,
    WitnessReport, CLOSED_FIELD_NOTE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    G,
    F0,
    BaseN3,
    DoubleCone,
    Step1,
    Step2,
    Step2AltM2,
    CheckF,
    CiCaseA,
    CiCaseB,
    CiCaseC,
    CiLowIndexA,
    CiLowIndexB,
    CiLowIndexC,
    ProductHyp,
    HptQuartic,
    HptQuadrics,
    HptChart,
    Ci23,
    Ci33,
    /// Polynomials supplied by hand rather than built here.
    Custom,
}

/// Optional overrides for the free polynomials of the hyperplane steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choices {
    pub h: Option<String>,
    pub g: Option<String>,
}

/// What was built and from which integer data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub family: Family,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub choices: Choices,
}

impl ConstructionRecipe {
    pub fn new(family: Family) -> Self {
        ConstructionRecipe { family, params: BTreeMap::new(), choices: Choices::default() }
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(v).expect("serializable parameter"));
        self
    }
}

/// Polynomials with the data the degeneration method needs: the designated
/// variable `z`, the obstruction polynomial `l`, and the order under which
/// leading monomials are claimed coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedFamily {
    pub recipe: ConstructionRecipe,
    pub polys: Vec<Polynomial>,
    pub designated: Option<String>,
    pub obstruction: Polynomial,
    pub order: MonomialOrder,
    pub degrees: Vec<u64>,
    pub block_degrees: Option<Vec<u64>>,
    pub claims_coprime: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub recipe: ConstructionRecipe,
    pub context: ContextJson,
    pub polys: Vec<String>,
    pub order: OrderJson,
    pub designated: Option<String>,
    pub obstruction: String,
    pub degrees: Vec<u64>,
    pub block_degrees: Option<Vec<u64>>,
    pub claims_coprime: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl GeneratedFamily {
    pub fn ctx(&self) -> &Ctx {
        self.order.ctx()
    }

    pub fn nvars(&self) -> usize {
        self.ctx().nvars()
    }

    /// Checks declared degrees and, when claimed, coprime leading monomials.
    pub fn validate(&self) -> Result<()> {
        if self.polys.len() != self.degrees.len() {
            return Err(Error::Precondition("degree list and polynomial list differ in length".into()));
        }
        for (f, &d) in self.polys.iter().zip(&self.degrees) {
            if f.total_degree().finite() != Some(d) {
                return Err(Error::Precondition(format!("`{f}` does not have degree {d}")));
            }
        }
        if let Some(bd) = &self.block_degrees {
            let got: Vec<u64> = self.polys[0].degrees().blocks.iter().map(|d| d.finite().unwrap_or(0)).collect();
            if &got != bd {
                return Err(Error::Precondition(format!("block degrees {got:?} differ from {bd:?}")));
            }
        }
        if self.claims_coprime {
            let v = pairwise_coprime(&leading_monomials(&self.polys, &self.order)?);
            if !v.coprime {
                return Err(Error::Precondition(format!("leading monomials share a variable: {:?}", v.offending)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            recipe: self.recipe.clone(),
            context: context_to_json(self.ctx()),
            polys: self.polys.iter().map(format_poly).collect(),
            order: self.order.to_json(),
            designated: self.designated.clone(),
            obstruction: format_poly(&self.obstruction),
            degrees: self.degrees.clone(),
            block_degrees: self.block_degrees.clone(),
            claims_coprime: self.claims_coprime,
            notes: self.notes.clone(),
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<Self> {
        let ctx = context_from_json(&j.context)?;
        let polys = j.polys.iter().map(|s| parse_poly(s, &ctx)).collect::<Result<Vec<_>>>()?;
        Ok(GeneratedFamily {
            recipe: j.recipe.clone(),
            polys,
            designated: j.designated.clone(),
            obstruction: parse_poly(&j.obstruction, &ctx)?,
            order: MonomialOrder::from_json(&ctx, &j.order)?,
            degrees: j.degrees.clone(),
            block_degrees: j.block_degrees.clone(),
            claims_coprime: j.claims_coprime,
            notes: j.notes.clone(),
        })
    }
}

pub(crate) fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

pub(crate) fn pp(s: &str, ctx: &Ctx) -> Result<Polynomial> {
    parse_poly(s, ctx)
}

/// Context extended by variables in one block.
pub(crate) fn with_vars(ctx: &Ctx, names: &[String], block: usize) -> Result<Ctx> {
    let vs: Vec<Variable> = names.iter().map(|n| Variable { name: n.clone(), block }).collect();
    ctx.extend(&vs, &[])
}

/// Context extended by transcendental parameters.
pub(crate) fn with_params(ctx: &Ctx, names: &[String]) -> Result<Ctx> {
    let ps: Vec<crate::polyring::Parameter> =
        names.iter().map(|n| crate::polyring::Parameter { name: n.clone(), rewrite: None }).collect();
    ctx.extend(&[], &ps)
}

fn sign(n: u32) -> &'static str {
    if n.is_multiple_of(2) {
        ""
    } else {
        "-"
    }
}

fn product(names: &[String]) -> String {
    names.join("*")
}

fn xs(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn check_nm(n: u32, m: u32) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::Precondition(format!("need n >= 2 and m >= 2, got n = {n}, m = {m}")));
    }
    Ok(())
}

fn g_text(n: u32, m: u32) -> String {
    let k = ceil_div(n + 1, m);
    let sum: Vec<String> = xs(n as usize).iter().map(|x| format!("{x}^{k}")).collect();
    format!("pi*(1 + {})^{m} - ({}{})", sum.join(" + "), sign(n), product(&xs(n as usize)))
}

/// `pi (1 + sum x_i^ceil((n+1)/m))^m - (-1)^n x_1...x_n` over `{x_1..x_n; pi}`.
pub fn build_g(n: u32, m: u32) -> Result<Polynomial> {
    check_nm(n, m)?;
    let ctx = VarContext::builder()
        .vars(&xs(n as usize).iter().map(String::as_str).collect::<Vec<_>>())
        .param("pi")
        .build()?;
    pp(&g_text(n, m), &ctx)
}

/// Product of `(-x_i)` over the binary digits of `j`, except `c_1 = x_1`.
pub(crate) fn c_j_text(j: u64, n: u32) -> String {
    if j == 1 {
        return "x1".into();
    }
    let mut fs = Vec::new();
    for i in 0..n {
        if (j >> i) & 1 == 1 {
            fs.push(format!("(-x{})", i + 1));
        }
    }
    if fs.is_empty() {
        "1".into()
    } else {
        fs.join("*")
    }
}

/// The hypersurface `f_0(n, m, N)` in `{x_1..x_N, z; pi}` with designated `z`.
pub fn build_f0(n: u32, m: u32, big_n: usize) -> Result<GeneratedFamily> {
    check_nm(n, m)?;
    if n > 20 {
        return Err(Error::Precondition("n > 20 is out of range".into()));
    }
    let hi = n as usize + (1usize << n) - 2;
    if big_n < n as usize + 1 || big_n > hi {
        return Err(Error::Precondition(format!("need {} <= N <= {hi}, got N = {big_n}", n + 1)));
    }
    let mut names = xs(big_n);
    names.push("z".into());
    let ctx =
        VarContext::builder().vars(&names.iter().map(String::as_str).collect::<Vec<_>>()).param("pi").build()?;
    let mut text = g_text(n, m);
    for j in 1..=(big_n - n as usize) {
        text.push_str(&format!(" + {}*x{}^{m}", c_j_text(j as u64, n), n as usize + j));
    }
    text.push_str(&format!(" + ({}{})*z^{m}", sign(n), product(&xs(n as usize))));
    let f = pp(&text, &ctx)?;
    let fam = GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::F0).with("n", n).with("m", m).with("N", big_n),
        polys: vec![f],
        designated: Some("z".into()),
        obstruction: Polynomial::one(&ctx),
        order: MonomialOrder::grlex(&ctx),
        degrees: vec![(n + m) as u64],
        block_degrees: None,
        claims_coprime: false,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}

/// `rho x3^d + pi (1 + x1^k + x2^k)^m - x1 x2 + x1 x3^m + x1 x2 z^m`,
/// `k = ceil(3/m)`; at `rho = 0` this is `f_0(2, m, 3)`.
pub fn build_base_n3(d: u32, m: u32) -> Result<GeneratedFamily> {
    check_nm(2, m)?;
    if d < 2 + m {
        return Err(Error::Precondition(format!("need d >= 2 + m = {}, got d = {d}", 2 + m)));
    }
    let ctx = VarContext::builder().vars(&["x1", "x2", "x3", "z"]).param("pi").param("rho").build()?;
    let k = ceil_div(3, m);
    let f = pp(
        &format!("rho*x3^{d} + pi*(1 + x1^{k} + x2^{k})^{m} - x1*x2 + x1*x3^{m} + x1*x2*z^{m}"),
        &ctx,
    )?;
    let fam = GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::BaseN3).with("d", d).with("m", m),
        polys: vec![f],
        designated: Some("z".into()),
        obstruction: Polynomial::one(&ctx),
        order: MonomialOrder::grlex(&ctx),
        degrees: vec![d as u64],
        block_degrees: None,
        claims_coprime: false,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}

#[cfg(test)]
mod tests;
