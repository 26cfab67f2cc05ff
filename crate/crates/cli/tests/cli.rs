use torsion_cli::{run, Output, EXIT_FALSE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use torsion_core::certify::Certificate;
use torsion_core::constructions::{FamilyJson, GeneratedFamily};

fn torsion(args: &str) -> Output {
    run(std::iter::once("torsion").chain(args.split_whitespace()))
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn certify_exit_codes() {
    let o = torsion("certify ci --degrees 4 --dim 4 --m 2 --char 0");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("theorem: CI_LOW_INDEX"));
    let o = torsion("certify ci --degrees 4 --dim 5 --m 2 --json");
    assert_eq!(o.code, EXIT_FALSE);
    let c: Certificate = serde_json::from_str(&o.stdout).unwrap();
    assert!(!c.certified);
    assert_eq!(torsion("certify ci --degrees 4 --dim 4 --m 2 --char 6").code, EXIT_USAGE);
    assert_eq!(torsion("certify ci --degrees 0 --dim 4 --m 2").code, EXIT_USAGE);
    assert_eq!(torsion("certify grass --l 2 --n 4 --d 4 --m 2").code, EXIT_OK);
    assert_eq!(torsion("certify grass --l 2 --n 5 --d 4 --m 2").code, EXIT_FALSE);
    assert_eq!(torsion("certify product --ms 4,2 --ds 4,3 --m 2").code, EXIT_OK);
    assert_eq!(torsion("certify product --ms 3,2 --ds 4,3 --m 2").code, EXIT_FALSE);
}

#[test]
fn usage_errors() {
    assert_eq!(torsion("").code, EXIT_USAGE);
    assert_eq!(torsion("frobnicate").code, EXIT_USAGE);
    assert_eq!(torsion("construct f0 --n 2 --m 2").code, EXIT_USAGE);
    assert_eq!(torsion("construct f0 --n 2 --m 2 --N 9").code, EXIT_USAGE);
    assert_eq!(torsion("construct fixed --name nope").code, EXIT_USAGE);
    assert_eq!(torsion("verify witness /definitely/missing.json").code, EXIT_USAGE);
}

#[test]
fn construct_json_round_trips() {
    for args in [
        "construct f0 --n 2 --m 2 --N 4",
        "construct g --n 3 --m 2",
        "construct base-n3 --d 5 --m 2",
        "construct double-cone --n 3 --m 2 --N 9",
        "construct check-f --n 2 --m 2 --N 3 --d 3 --M 2",
        "construct ci --degrees 4,2 --N 5 --M 2 --n 2 --m 2",
        "construct ci-low --degrees 3,3 --M 3",
        "construct product --ms 4,2 --ds 4,3 --n 2 --m 2",
        "construct fixed --name hpt-quartic",
    ] {
        let o = torsion(&format!("{args} --json"));
        assert_eq!(o.code, EXIT_OK, "{args}: {}", o.stderr);
        let j: FamilyJson = serde_json::from_str(&o.stdout).unwrap();
        let fam = GeneratedFamily::from_json(&j).unwrap();
        fam.validate().unwrap();
        assert_eq!(fam.to_json(), j, "{args}");
        assert_eq!(torsion(args).code, EXIT_OK);
    }
    let o = torsion("construct f0 --n 2 --m 2 --N 4 --json");
    let j: FamilyJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(j.degrees, vec![4]);
}

#[test]
fn tables() {
    let o = torsion("table ci-2torsion --from 4 --to 8 --json");
    assert_eq!(o.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let bounds: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r[1].as_str().unwrap()).collect();
    assert_eq!(bounds, ["2", "9", "24", "60", "139"]);

    let o = torsion("table grass --d 4 --from 1 --to 10 --json");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let yes: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r[2] == "yes")
        .map(|r| r[0].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(yes, [4, 5]);

    let o = torsion("table product --from 9 --to 3 --m 2 --json");
    assert_eq!(o.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["rows"].as_array().unwrap().is_empty());

    assert_eq!(torsion("table ci-general --from 2 --to 100000 --m 2").code, EXIT_USAGE);
    assert_eq!(torsion("table ci-general --from 2 --m 2").code, EXIT_USAGE);
    assert_eq!(torsion("table ci-2torsion --from 3 --to 5").code, EXIT_USAGE);
}

#[test]
fn verify_files() {
    for f in ["chain_hpt_quartic.json", "chain_hpt_chart.json"] {
        assert_eq!(torsion(&format!("verify iso-chain {}", data(f))).code, EXIT_OK, "{f}");
    }
    for f in ["witness_f0_n2_m2.json", "witness_f0_n3_m2.json", "witness_hpt_quartic.json", "witness_ci23.json", "witness_chart.json"] {
        assert_eq!(torsion(&format!("verify witness {}", data(f))).code, EXIT_OK, "{f}");
    }
    let o = torsion(&format!("verify witness {}", data("witness_chart.json")));
    assert!(o.stdout.contains("residual: -x6 + q"), "{}", o.stdout);
    for f in ["family_hpt_chart.json", "family_ci_4_2.json"] {
        assert_eq!(torsion(&format!("verify groebner {}", data(f))).code, EXIT_OK);
        assert_eq!(torsion(&format!("verify closure {}", data(f))).code, EXIT_OK);
    }
    let pair = data("family_reference_pair.json");
    assert_eq!(torsion(&format!("verify groebner {pair}")).code, EXIT_FALSE);
    assert_eq!(torsion(&format!("verify closure {pair}")).code, EXIT_FALSE);
    assert_eq!(torsion(&format!("verify groebner {pair} --max-steps 0")).code, EXIT_RESOURCE);
    assert_eq!(torsion(&format!("verify closure {} --max-terms 3", data("family_hpt_chart.json"))).code, EXIT_RESOURCE);
    assert_eq!(torsion(&format!("verify witness {pair}")).code, EXIT_USAGE);
}

#[test]
fn selftest_passes() {
    let o = torsion("selftest");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(!o.stdout.contains("FAIL"));
    assert_eq!(torsion("selftest --parallel --json").code, EXIT_OK);
}
