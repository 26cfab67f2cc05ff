use serde::Serialize;
use torsion_core::certify::Certificate;
use torsion_core::constructions::GeneratedFamily;
use torsion_core::polyring::format_poly;

use crate::Failure;

pub fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn family(f: &GeneratedFamily) -> String {
    let ctx = f.ctx();
    let names = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(" ") };
    let vars = names(ctx.vars().iter().map(|v| v.name.clone()).collect());
    let params = names(ctx.params().iter().map(|p| p.name.clone()).collect());
    let mut s = format!(
        "family: {}\nvariables: {vars}\nparameters: {params}\norder: grlex, priority {}\ndesignated: {}\nobstruction: {}\ndegrees: {}\n",
        serde_json::to_value(f.recipe.family).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default(),
        f.order.priority_names().join(" > "),
        f.designated.as_deref().unwrap_or("-"),
        format_poly(&f.obstruction),
        f.degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
    );
    if let Some(bd) = &f.block_degrees {
        s += &format!("block degrees: {}\n", bd.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    }
    s += &format!("leading monomials coprime: {}\n", if f.claims_coprime { "claimed" } else { "not claimed" });
    for (i, p) in f.polys.iter().enumerate() {
        s += &format!("g{} = {}\n", i + 1, format_poly(p));
    }
    for n in &f.notes {
        s += &format!("note: {n}\n");
    }
    s
}

pub fn certificate(c: &Certificate) -> String {
    let mut s = format!(
        "certified: {}\ntheorem: {}\nwitness n: {}\nfano index: {}\nupper bound: {}\n",
        if c.certified { "yes" } else { "no" },
        c.theorem.as_str(),
        c.witness_n.map_or("-".to_string(), |n| n.to_string()),
        c.fano_index,
        c.upper_bound.as_deref().unwrap_or("-"),
    );
    for cav in &c.caveats {
        s += &format!("caveat: {cav}\n");
    }
    s
}
