use torsion_core::constructions::{
    assemble_ci, assemble_ci_low_index, assemble_product_hypersurface, build_base_n3, build_check_f_with, build_f0,
    build_g, double_cone, fixed_example, ConstructionRecipe, Family, FixedName, GeneratedFamily,
};
use torsion_core::ordering::MonomialOrder;
use torsion_core::polyring::Polynomial;

use crate::args::Construct;
use crate::{render, CmdResult, Failure, Report};

fn single(recipe: ConstructionRecipe, f: Polynomial, designated: Option<&str>, obstruction: Polynomial) -> Result<GeneratedFamily, Failure> {
    let ctx = f.ctx().clone();
    let fam = GeneratedFamily {
        recipe,
        degrees: vec![f.total_degree().finite().unwrap_or(0)],
        polys: vec![f],
        designated: designated.map(str::to_string),
        obstruction: obstruction.embed(&ctx)?,
        order: MonomialOrder::grlex(&ctx),
        block_degrees: None,
        claims_coprime: false,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}

fn build(c: Construct) -> Result<GeneratedFamily, Failure> {
    Ok(match c {
        Construct::F0 { nm, big_n } => build_f0(nm.n, nm.m, big_n)?,
        Construct::G { nm } => {
            let g = build_g(nm.n, nm.m)?;
            let one = Polynomial::one(g.ctx());
            single(ConstructionRecipe::new(Family::G).with("n", nm.n).with("m", nm.m), g, None, one)?
        }
        Construct::BaseN3 { d, m } => build_base_n3(d, m)?,
        Construct::DoubleCone { nm, big_n, var } => {
            let base = build_f0(nm.n, nm.m, big_n)?;
            let var = var.unwrap_or_else(|| format!("x{}", nm.n + 1));
            let dc = double_cone(&base.polys[0], &var, "z", nm.m)?;
            let w = Polynomial::var(dc.poly.ctx(), &dc.new_var)?;
            let recipe =
                ConstructionRecipe::new(Family::DoubleCone).with("n", nm.n).with("m", nm.m).with("N", big_n).with("var", &var);
            single(recipe, dc.poly, Some("z"), w)?
        }
        Construct::CheckF { nm, big_n, d, big_m, g, h } => {
            let base = build_f0(nm.n, nm.m, big_n)?;
            let f = &base.polys[0];
            let names = f.ctx().fresh_indexed("w", big_m);
            let c = build_check_f_with(f, d, &names, 0, g.as_deref(), h.as_deref())?;
            let mut recipe =
                ConstructionRecipe::new(Family::CheckF).with("n", nm.n).with("m", nm.m).with("N", big_n).with("d", d).with("M", big_m);
            recipe.choices.g = g;
            recipe.choices.h = h;
            let one = Polynomial::one(c.poly.ctx());
            single(recipe, c.poly, Some("z"), one)?
        }
        Construct::Ci { degrees, big_n, big_m, nm } => assemble_ci(&degrees, big_n, big_m, nm.n, nm.m)?,
        Construct::CiLow { degrees, big_m } => assemble_ci_low_index(&degrees, big_m)?,
        Construct::Product { ms, ds, nm } => assemble_product_hypersurface(&ms, &ds, nm.n, nm.m)?,
        Construct::Fixed { name } => {
            let n: FixedName = name.parse()?;
            fixed_example(n)?
        }
    })
}

pub fn run(c: Construct, json: bool) -> CmdResult {
    let fam = build(c)?;
    let text = if json { render::json(&fam.to_json())? } else { render::family(&fam) };
    Ok(Report { text, positive: true })
}
