use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use torsion_core::constructions::{check_star_witness, FamilyJson, GeneratedFamily, WitnessCheck};
use torsion_core::groebner::{
    groebner_check, projective_closure_basis, random_ideal_elements, verify_iso_chain, IsoChain, Limits,
};
use torsion_core::polyring::format_poly;

use crate::args::Verify;
use crate::{render, CmdResult, Failure, Report};

fn load<T: DeserializeOwned>(p: &Path) -> Result<T, Failure> {
    let s = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    Ok(serde_json::from_str(&s)?)
}

fn family(p: &Path) -> Result<GeneratedFamily, Failure> {
    Ok(GeneratedFamily::from_json(&load::<FamilyJson>(p)?)?)
}

#[derive(Serialize)]
struct GroebnerJson {
    is_groebner: bool,
    failing_pair: Option<(usize, usize)>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(v: Verify, json: bool, limits: &Limits) -> CmdResult {
    match v {
        Verify::Groebner { file } => {
            let fam = family(&file)?;
            let r = groebner_check(&fam.polys, &fam.order, limits)?;
            let out = GroebnerJson { is_groebner: r.is_groebner, failing_pair: r.failing_pair };
            let text = if json {
                render::json(&out)?
            } else {
                let mut s = format!("groebner basis: {}\n", yes(r.is_groebner));
                if let Some((i, j)) = r.failing_pair {
                    s += &format!("failing pair: g{} g{}\n", i + 1, j + 1);
                }
                s
            };
            Ok(Report { text, positive: r.is_groebner })
        }
        Verify::Closure { file, samples, seed } => {
            let fam = family(&file)?;
            let elems = random_ideal_elements(&fam.polys, samples, seed)?;
            let r = projective_closure_basis(&fam.polys, &fam.order, &elems, limits)?;
            let pass = r.all_pass();
            let text = if json {
                render::json(&r.to_json())?
            } else {
                let mut s = format!("leading monomials coprime: {}\n", yes(r.coprime));
                if let Some((i, j)) = r.offending {
                    s += &format!("offending pair: g{} g{}\n", i + 1, j + 1);
                }
                for h in &r.homogenized {
                    s += &format!("homogenized: {}\n", format_poly(h));
                }
                for (i, (_, ok)) in r.samples.iter().enumerate() {
                    s += &format!("sample {}: {}\n", i + 1, if *ok { "member" } else { "NOT a member" });
                }
                s += &format!("closure check: {}\n", if pass { "pass" } else { "fail" });
                s
            };
            Ok(Report { text, positive: pass })
        }
        Verify::IsoChain { file } => {
            let chain: IsoChain = load(&file)?;
            let r = verify_iso_chain(&chain, limits)?;
            let text = if json {
                render::json(&r)?
            } else {
                let mut s = String::new();
                for st in &r.steps {
                    s += &format!("{}: {} ({})\n", st.label, if st.ok { "ok" } else { "FAIL" }, st.detail);
                }
                s += &format!("chain: {}\n", if r.ok { "verified" } else { "not verified" });
                s
            };
            Ok(Report { text, positive: r.ok })
        }
        Verify::Witness { file } => {
            let wc: WitnessCheck = load(&file)?;
            let r = check_star_witness(&wc)?;
            let text = if json {
                render::json(&r)?
            } else {
                let mut s = format!("{}: {}\n", r.label, if r.ok { "witness holds" } else { "witness fails" });
                if let Some(res) = &r.residual {
                    s += &format!("residual: {res}\n");
                }
                if let Some(sol) = &r.solution {
                    s += &format!("solution: {sol}\n");
                }
                for v in &r.inverted_values {
                    s += &format!("inverted value: {v}\n");
                }
                s += &format!("detail: {}\n", r.detail);
                for c in &r.caveats {
                    s += &format!("caveat: {c}\n");
                }
                s
            };
            Ok(Report { text, positive: r.ok })
        }
    }
}
