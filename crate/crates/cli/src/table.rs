use serde::Serialize;
use torsion_core::certify::{
    bound_b, certify_ci, certify_grassmannian, certify_product, closed_form_2bound, grassmannian_dim_bound,
    product_m0_bound, CiQuery, Theorem,
};

use crate::args::{Certify, Range, Table};
use crate::{render, CmdResult, Failure, Report};

const MAX_ROWS: u32 = 1024;
const MAX_PARAM: u32 = 4096;

#[derive(Serialize)]
struct TableJson {
    kind: &'static str,
    theorem: Theorem,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

/// Values in `from..=to`, empty when `from > to`.
fn values(r: Range, min: u32, what: &str) -> Result<Vec<u32>, Failure> {
    if r.from > r.to {
        return Ok(vec![]);
    }
    if r.to - r.from >= MAX_ROWS || r.to > MAX_PARAM {
        return Err(Failure::Usage(format!("{what} range {}..{} exceeds {MAX_ROWS} rows or {MAX_PARAM}", r.from, r.to)));
    }
    if r.from < min {
        return Err(Failure::Usage(format!("{what} must be at least {min}")));
    }
    Ok((r.from..=r.to).collect())
}

fn check_m(m: u32) -> Result<(), Failure> {
    if m < 2 {
        return Err(Failure::Usage("m must be at least 2".into()));
    }
    Ok(())
}

fn build(t: Table) -> Result<TableJson, Failure> {
    Ok(match t {
        Table::Ci2torsion { d } => TableJson {
            kind: "ci-2torsion",
            theorem: Theorem::Ci2TorsionClosed,
            columns: vec!["d", "bound", "region"],
            rows: values(d, 4, "d")?
                .into_iter()
                .map(|d| Ok(vec![d.to_string(), closed_form_2bound(d)?.to_string(), "r <= bound".into()]))
                .collect::<Result<_, Failure>>()?,
        },
        Table::CiGeneral { n, m } => {
            check_m(m)?;
            TableJson {
                kind: "ci-general",
                theorem: Theorem::CiMain,
                columns: vec!["n", "m", "bound", "region"],
                rows: values(n, 2, "n")?
                    .into_iter()
                    .map(|n| vec![n.to_string(), m.to_string(), bound_b(n, m).to_string(), format!("r <= bound, max d_i >= {}", n + m)])
                    .collect(),
            }
        }
        Table::Grass { dim, d, m } => {
            check_m(m)?;
            let top = (d >= m + 2).then(|| grassmannian_dim_bound(d - m, d, m));
            TableJson {
                kind: "grass",
                theorem: Theorem::Grass,
                columns: vec!["dim", "bound", "certified"],
                rows: values(dim, 1, "dim")?
                    .into_iter()
                    .map(|k| {
                        let ok = top.as_ref().is_some_and(|b| k >= 4 && b >= &k.into());
                        vec![
                            k.to_string(),
                            top.as_ref().map_or("-".into(), ToString::to_string),
                            if ok { "yes" } else { "no" }.into(),
                        ]
                    })
                    .collect(),
            }
        }
        Table::Product { n, m } => {
            check_m(m)?;
            TableJson {
                kind: "product",
                theorem: Theorem::Product,
                columns: vec!["n", "m", "bound", "region"],
                rows: values(n, 2, "n")?
                    .into_iter()
                    .map(|n| {
                        vec![n.to_string(), m.to_string(), product_m0_bound(n, m).to_string(), format!("4 <= M_0 <= bound, d_0 >= {}", n + m)]
                    })
                    .collect(),
            }
        }
    })
}

fn text(t: &TableJson) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
    for r in &t.rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = format!("# {} ({})\n", t.kind, t.theorem.as_str());
    s += &line(t.columns.clone());
    for r in &t.rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

pub fn run(t: Table, json: bool) -> CmdResult {
    let t = build(t)?;
    Ok(Report { text: if json { render::json(&t)? } else { text(&t) }, positive: true })
}

pub fn certify(c: Certify, json: bool) -> CmdResult {
    let cert = match c {
        Certify::Ci { degrees, dim, m, characteristic } => certify_ci(&CiQuery { degrees, dim, m, characteristic })?,
        Certify::Product { ms, ds, m, characteristic } => certify_product(&ms, &ds, m, characteristic)?,
        Certify::Grass { l, n, d, m, characteristic } => certify_grassmannian(l, n, d, m, characteristic)?,
    };
    let text = if json { render::json(&cert)? } else { render::certificate(&cert) };
    Ok(Report { text, positive: cert.certified })
}
