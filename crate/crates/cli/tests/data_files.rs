//! The JSON inputs under `data/` are generated from the library; this test
//! fails when they drift. `TORSION_REGEN=1` rewrites them.

use std::path::PathBuf;

use serde::Serialize;
use torsion_core::constructions::{
    assemble_ci, fixed_example, hpt_chart_chain, hpt_quartic_chain, witness_chart, witness_ci23, witness_f0,
    witness_hpt_quartic, ConstructionRecipe, Family, FixedName, GeneratedFamily,
};
use torsion_core::ordering::MonomialOrder;
use torsion_core::polyring::{parse_poly, Polynomial, VarContext};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn reference_pair() -> GeneratedFamily {
    let ctx = VarContext::from_names(&["x", "y"]).unwrap();
    let polys: Vec<Polynomial> = ["3*x^2*y^3 + 6*x^3*y^2 - 5*x*y + 5", "x^5 + x^2*y^2 + y^3 + x*y - 1"]
        .iter()
        .map(|s| parse_poly(s, &ctx).unwrap())
        .collect();
    GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::Custom),
        degrees: vec![5, 5],
        polys,
        designated: None,
        obstruction: Polynomial::one(&ctx),
        order: MonomialOrder::grlex(&ctx),
        block_degrees: None,
        claims_coprime: false,
        notes: vec!["leading monomials x^3*y^2 and x^5 share x".into()],
    }
}

fn expected() -> Vec<(&'static str, String)> {
    fn js<T: Serialize>(v: &T) -> String {
        serde_json::to_string_pretty(v).unwrap() + "\n"
    }
    vec![
        ("chain_hpt_quartic.json", js(&hpt_quartic_chain().unwrap())),
        ("chain_hpt_chart.json", js(&hpt_chart_chain().unwrap())),
        ("witness_f0_n2_m2.json", js(&witness_f0(2, 2).unwrap())),
        ("witness_f0_n3_m2.json", js(&witness_f0(3, 2).unwrap())),
        ("witness_hpt_quartic.json", js(&witness_hpt_quartic().unwrap())),
        ("witness_ci23.json", js(&witness_ci23().unwrap())),
        ("witness_chart.json", js(&witness_chart().unwrap())),
        ("family_hpt_chart.json", js(&fixed_example(FixedName::HptChart).unwrap().to_json())),
        ("family_ci_4_2.json", js(&assemble_ci(&[4, 2], 5, 2, 2, 2).unwrap().to_json())),
        ("family_reference_pair.json", js(&reference_pair().to_json())),
    ]
}

#[test]
fn data_files_match_library() {
    let regen = std::env::var_os("TORSION_REGEN").is_some();
    for (name, body) in expected() {
        let path = data_dir().join(name);
        if regen {
            std::fs::write(&path, &body).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(on_disk, body, "{name} is stale; rerun with TORSION_REGEN=1");
    }
}
