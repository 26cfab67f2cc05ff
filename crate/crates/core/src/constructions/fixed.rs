use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{pp, ConstructionRecipe, Family, GeneratedFamily};
use crate::groebner::{ChainStep, IsoChain, RationalBinding};
use crate::ordering::MonomialOrder;
use crate::polyring::{context_to_json, Ctx, Polynomial, VarContext};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FixedName {
    HptQuartic,
    HptQuadrics,
    HptChart,
    Ci23,
    Ci33,
}

impl FixedName {
    pub const ALL: [FixedName; 5] =
        [FixedName::HptQuartic, FixedName::HptQuadrics, FixedName::HptChart, FixedName::Ci23, FixedName::Ci33];

    pub fn as_str(self) -> &'static str {
        match self {
            FixedName::HptQuartic => "HPT_QUARTIC",
            FixedName::HptQuadrics => "HPT_QUADRICS",
            FixedName::HptChart => "HPT_CHART",
            FixedName::Ci23 => "CI_23",
            FixedName::Ci33 => "CI_33",
        }
    }

    fn family(self) -> Family {
        match self {
            FixedName::HptQuartic => Family::HptQuartic,
            FixedName::HptQuadrics => Family::HptQuadrics,
            FixedName::HptChart => Family::HptChart,
            FixedName::Ci23 => Family::Ci23,
            FixedName::Ci33 => Family::Ci33,
        }
    }
}

impl fmt::Display for FixedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixedName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FixedName::ALL
            .into_iter()
            .find(|n| n.as_str() == norm)
            .ok_or_else(|| Error::Precondition(format!("unknown example `{s}`")))
    }
}

pub(crate) const QUARTIC: &str = "x1*z1^2 + x2*z2^2 + x1*x2*z3^2 + 1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2";
pub(crate) const CUBIC_23: &str = "x1*z1^2 + x2*z2^2 + x1*x2*x3 + 1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2";
const QUADRICS: [&str; 3] = ["-y1 + z2^2 + z3*z4 - 2", "y1 + y2*z3 + z1^2 - 2", "y1*z5 - y2*z4 + 1 + z5^2"];
const CHART: [&str; 3] =
    ["-x6*x5 + x3^2 + x4 - 2*x5^2", "x6*x5 + x1*x4 + x2^2 - 2*x5^2", "x6*x7 - x1 + x5^2 + x7^2"];

fn ctx_of(vars: &[&str], params: &[&str]) -> Result<Ctx> {
    let mut b = VarContext::builder().vars(vars);
    for p in params {
        b = b.param(p);
    }
    b.build()
}

fn parse_all(src: &[&str], ctx: &Ctx) -> Result<Vec<Polynomial>> {
    src.iter().map(|s| pp(s, ctx)).collect()
}

pub(crate) fn quartic_ctx() -> Result<Ctx> {
    ctx_of(&["x1", "x2", "z1", "z2", "z3"], &[])
}

pub(crate) fn ci23_ctx() -> Result<Ctx> {
    ctx_of(&["x1", "x2", "x3", "z1", "z2", "z3"], &[])
}

pub(crate) fn chart_ctx() -> Result<Ctx> {
    ctx_of(&["x1", "x2", "x3", "x4", "x5", "x6", "x7"], &[])
}

pub(crate) fn quadrics_ctx() -> Result<Ctx> {
    ctx_of(&["y1", "y2", "z1", "z2", "z3", "z4", "z5"], &[])
}

/// The named explicit examples.
pub fn fixed_example(name: FixedName) -> Result<GeneratedFamily> {
    let (ctx, polys, designated, obstruction, order, coprime) = match name {
        FixedName::HptQuartic => {
            let c = quartic_ctx()?;
            let p = parse_all(&[QUARTIC], &c)?;
            (c.clone(), p, Some("z3"), "x1*x2*z1*z2*z3", MonomialOrder::grlex(&c), false)
        }
        FixedName::HptQuadrics => {
            let c = quadrics_ctx()?;
            let p = parse_all(&QUADRICS, &c)?;
            (c.clone(), p, None, "1", MonomialOrder::grlex(&c), false)
        }
        FixedName::HptChart => {
            let c = chart_ctx()?;
            let p = parse_all(&CHART, &c)?;
            let o = MonomialOrder::with_priority(&c, &["x2", "x3", "x4", "x5", "x6", "x7", "x1"])?;
            (c, p, Some("x2"), "x2*x4*x5", o, true)
        }
        FixedName::Ci23 => {
            let c = ci23_ctx()?;
            let p = parse_all(&["x3 - z3^2", CUBIC_23], &c)?;
            (c.clone(), p, Some("z3"), "x1*x2*z1*z3", MonomialOrder::grlex(&c), false)
        }
        FixedName::Ci33 => {
            let c = ctx_of(&["x1", "x2", "x3", "x4", "z1", "z2", "z3"], &["t"])?;
            let p = parse_all(&["t - x4*(x3 - z3^2 + x4)", CUBIC_23], &c)?;
            let o = MonomialOrder::with_priority(&c, &["x1", "z1", "x2", "x3", "x4", "z2", "z3"])?;
            (c, p, Some("z1"), "x1*x2*z1*z3", o, true)
        }
    };
    let degrees = polys.iter().map(|p| p.total_degree().finite().unwrap_or(0)).collect();
    let fam = GeneratedFamily {
        recipe: ConstructionRecipe::new(name.family()),
        obstruction: pp(obstruction, &ctx)?,
        polys,
        designated: designated.map(String::from),
        order,
        degrees,
        block_degrees: None,
        claims_coprime: coprime,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn bind(var: &str, num: &str, den: &str) -> RationalBinding {
    RationalBinding { var: var.into(), num: num.into(), den: den.into() }
}

const P1: &str = "z3*(z2^2 + z3*z4 - 2)*z5 + (z2^2 + z3*z4 + z1^2 - 4)*z4 + z3*(1 + z5^2)";
const P2: &str = "z4*z1^2 + (z3*z5 + z4)*z2^2 + z3^2*z4*z5 + z3*z4^2 + z3 + z3*z5^2 - 2*z3*z5 - 4*z4";
const G_MID: &str = "x1*z1^2 + x2*z2^2 + x2*z3*z4 + (z5 - 1)^2 - 4*x1";

/// Birational chain from the three quadrics to the quartic, after inverting `z3`.
pub fn hpt_quartic_chain() -> Result<IsoChain> {
    let quad = context_to_json(&*quadrics_ctx()?);
    let five = context_to_json(&*ctx_of(&["z1", "z2", "z3", "z4", "z5"], &[])?);
    let seven = context_to_json(&*ctx_of(&["x1", "x2", "z1", "z2", "z3", "z4", "z5"], &[])?);
    let quartic = context_to_json(&*quartic_ctx()?);
    let all = context_to_json(&*ctx_of(&["y1", "y2", "x1", "x2", "z1", "z2", "z3", "z4", "z5"], &[])?);
    let graph = ["z3*x1 - z4", "x2 - x1 - z5"];
    let steps = vec![
        ChainStep::Substitution {
            label: "eliminate y1, y2".into(),
            source_ctx: quad,
            source: strings(&QUADRICS),
            target_ctx: five.clone(),
            target: strings(&[P1]),
            bindings: vec![
                bind("y1", "z2^2 + z3*z4 - 2", "1"),
                bind("y2", "-(z2^2 + z3*z4 + z1^2 - 4)", "z3"),
            ],
            denominators: strings(&["z3"]),
        },
        ChainStep::Substitution {
            label: "expand".into(),
            source_ctx: five.clone(),
            source: strings(&[P1]),
            target_ctx: five,
            target: strings(&[P2]),
            bindings: vec![],
            denominators: vec![],
        },
        ChainStep::Membership {
            label: "introduce x1 = z4/z3, x2 = x1 + z5".into(),
            ctx: seven.clone(),
            left: strings(&[P2, graph[0], graph[1]]),
            right: strings(&[graph[0], graph[1], G_MID]),
            inverted: strings(&["z3"]),
        },
        ChainStep::Substitution {
            label: "eliminate z4, z5".into(),
            source_ctx: seven,
            source: strings(&[graph[0], graph[1], G_MID]),
            target_ctx: quartic,
            target: strings(&[QUARTIC]),
            bindings: vec![bind("z4", "x1*z3", "1"), bind("z5", "x2 - x1", "1")],
            denominators: vec![],
        },
        ChainStep::Membership {
            label: "graph ideals agree".into(),
            ctx: all,
            left: strings(&[QUADRICS[0], QUADRICS[1], QUADRICS[2], graph[0], graph[1]]),
            right: strings(&[
                QUARTIC,
                "y1 - z2^2 - z3*z4 + 2",
                "z3*y2 + z2^2 + z3*z4 + z1^2 - 4",
                graph[0],
                graph[1],
            ]),
            inverted: strings(&["z3"]),
        },
    ];
    Ok(IsoChain { steps })
}

/// The coordinate change between the quadrics and their chart, both ways.
pub fn hpt_chart_chain() -> Result<IsoChain> {
    let quad = context_to_json(&*quadrics_ctx()?);
    let chart = context_to_json(&*chart_ctx()?);
    let both = context_to_json(&*ctx_of(
        &["y1", "y2", "z1", "z2", "z3", "z4", "z5", "x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        &[],
    )?);
    let graph = [
        "x1*z4 - y2",
        "x2*z4 - z1",
        "x3*z4 - z2",
        "x4*z4 - z3",
        "x5*z4 - 1",
        "x6*z4 - y1",
        "x7*z4 - z5",
    ];
    let mut left = strings(&QUADRICS);
    left.extend(strings(&graph));
    let mut right = strings(&CHART);
    right.extend(strings(&graph));
    let steps = vec![
        ChainStep::Substitution {
            label: "quadrics to chart".into(),
            source_ctx: quad.clone(),
            source: strings(&QUADRICS),
            target_ctx: chart.clone(),
            target: strings(&CHART),
            bindings: vec![
                bind("y2", "x1", "x5"),
                bind("z1", "x2", "x5"),
                bind("z2", "x3", "x5"),
                bind("z3", "x4", "x5"),
                bind("z4", "1", "x5"),
                bind("y1", "x6", "x5"),
                bind("z5", "x7", "x5"),
            ],
            denominators: strings(&["x5"]),
        },
        ChainStep::Substitution {
            label: "chart to quadrics".into(),
            source_ctx: chart,
            source: strings(&CHART),
            target_ctx: quad,
            target: strings(&QUADRICS),
            bindings: vec![
                bind("x1", "y2", "z4"),
                bind("x2", "z1", "z4"),
                bind("x3", "z2", "z4"),
                bind("x4", "z3", "z4"),
                bind("x5", "1", "z4"),
                bind("x6", "y1", "z4"),
                bind("x7", "z5", "z4"),
            ],
            denominators: strings(&["z4"]),
        },
        ChainStep::Membership {
            label: "graph ideals agree".into(),
            ctx: both,
            left,
            right,
            inverted: strings(&["z4", "x5"]),
        },
    ];
    Ok(IsoChain { steps })
}
