use num_rational::BigRational;
use num_traits::Zero;

use super::cone::recognize;
use super::*;
use crate::groebner::is_groebner;

fn xprod(n: u32) -> String {
    (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
}

#[test]
fn f0_shape_for_small_n_m() {
    for n in 2..=4u32 {
        for m in 2..=4u32 {
            let hi = n as usize + (1usize << n) - 2;
            for big_n in n as usize + 1..=hi {
                let fam = build_f0(n, m, big_n).unwrap();
                let f = &fam.polys[0];
                assert_eq!(f.total_degree().finite(), Some((n + m) as u64));
                let ctx = f.ctx();
                let xi = ctx.var_index(&format!("x{}", n + 1)).unwrap();
                let c1 = f.collect_in(xi).unwrap().remove(&m).unwrap();
                assert_eq!(c1, pp("x1", ctx).unwrap(), "n={n} m={m} N={big_n}");
                let sgn = if n % 2 == 0 { "" } else { "-" };
                let want = pp(&format!("{sgn}{m}*{}*z^{}", xprod(n), m - 1), ctx).unwrap();
                assert_eq!(f.partial_derivative("z").unwrap(), want);
            }
            assert!(build_f0(n, m, n as usize).is_err());
            assert!(build_f0(n, m, hi + 1).is_err());
        }
    }
}

#[test]
fn g_example() {
    let g = build_g(2, 2).unwrap();
    assert_eq!(g, pp("pi*(1 + x1^2 + x2^2)^2 - x1*x2", g.ctx()).unwrap());
    assert!(build_g(1, 2).is_err());
}

#[test]
fn base_n3_degenerates_to_f0() {
    let fam = build_base_n3(5, 2).unwrap();
    let f = fam.polys[0].specialize_params(&[("rho", BigRational::zero())]).unwrap();
    let f0 = build_f0(2, 2, 3).unwrap().polys[0].embed(f.ctx()).unwrap();
    assert_eq!(f, f0);
    assert!(build_base_n3(3, 2).is_err());
}

#[test]
fn witnesses_hold() {
    for n in 2..=4 {
        for m in 2..=4 {
            let r = check_star_witness(&witness_f0(n, m).unwrap()).unwrap();
            assert!(r.ok, "f0 n={n} m={m}: {r:?}");
        }
    }
    for wc in [witness_hpt_quartic(), witness_ci23(), witness_chart()] {
        let wc = wc.unwrap();
        let r = check_star_witness(&wc).unwrap();
        assert!(r.ok, "{}: {r:?}", wc.label);
    }
}

#[test]
fn step2_round_trips() {
    let ctx = VarContext::builder().vars(&["x1", "x2"]).build().unwrap();
    let f = pp("x1^3 + x2^3", &ctx).unwrap();
    let p1 = step1_pair(&f, None, "w1", 0, "").unwrap();
    assert_eq!(p1.1, pp("w1", p1.1.ctx()).unwrap());
    let p2 = step1_pair(&p1.0, Some(&p1.1), "w2", 0, "t1").unwrap();
    assert_eq!(p2.1, pp("t1 + w1*w2", p2.1.ctx()).unwrap());

    let d = step2_deform(&p2, 4, &["w1", "w2"], None, "t").unwrap();
    assert_eq!(d.1.total_degree().finite(), Some(4));
    let back = d.1.specialize_params(&[("t", BigRational::zero())]).unwrap();
    assert_eq!(back, p2.1.embed(back.ctx()).unwrap());

    let a = step2_alt_m2(&p2, 4, &["w1", "w2"], "t").unwrap();
    assert_eq!(a.1, pp("t1 - w1*w2 + t*w1^4", a.1.ctx()).unwrap());
    let back = a.1.specialize_params(&[("t", BigRational::zero())]).unwrap();
    let flipped = back.substitute(&[("w2", pp("-w2", back.ctx()).unwrap())], back.ctx()).unwrap();
    assert_eq!(flipped, p2.1.embed(back.ctx()).unwrap());

    assert!(step2_deform(&p2, 2, &["w1", "w2"], None, "t").is_err());
    let wrong_h = pp("w1", p2.1.ctx()).unwrap();
    assert!(step2_deform(&p2, 4, &["w1", "w2"], Some(&wrong_h), "t").is_err());
}

#[test]
fn add_hypers_degrees() {
    let ctx = VarContext::builder().vars(&["x1", "x2"]).build().unwrap();
    let f = pp("x1^3 + x2^3", &ctx).unwrap();
    for mm in 1..=3usize {
        for d in mm as u32..=5 {
            if d as usize > mm && mm < 2 {
                continue;
            }
            let names: Vec<String> = (1..=mm).map(|i| format!("w{i}")).collect();
            let h = add_hypers(&f, d, &names, 0, false).unwrap();
            assert_eq!(h.added.total_degree().finite(), Some(d as u64), "M={mm} d={d}");
            assert_eq!(h.tilde.total_degree().finite(), Some(3));
        }
    }
}

#[test]
fn check_f_degrees() {
    let ctx = VarContext::builder().vars(&["x1", "x2"]).build().unwrap();
    let f = pp("x1^3 + x2^3 + x1", &ctx).unwrap();
    for mm in 1..=3usize {
        let names: Vec<String> = (1..=mm).map(|i| format!("w{i}")).collect();
        let c = build_check_f(&f, 4, &names, 0).unwrap();
        assert_eq!(c.poly.total_degree().finite(), Some(7));
    }
    assert!(build_check_f(&f, 1, &["w1".into(), "w2".into()], 0).is_err());
}

/// Applies the base-hypersurface cone schedule and re-recognizes after each step.
#[test]
fn double_cone_iterates_to_budget() {
    for n in 2..=4u32 {
        for m in 2..=3u32 {
            let budget = double_cone_budget(n, m).unwrap();
            let plain = n as usize + (1usize << n) - 2;
            let mut f = build_f0(n, m, plain).unwrap().polys[0].clone();
            let mut done = 0;
            for j in 1..(1u64 << n) - 1 {
                for _ in 0..(n - j.count_ones()) / m {
                    let x = format!("x{}", n as u64 + j);
                    let dc = double_cone(&f, &x, "z", m).unwrap();
                    assert_eq!(dc.poly.total_degree(), f.total_degree());
                    let ctx = dc.poly.ctx();
                    recognize(&dc.poly, ctx.var_index(&x).unwrap(), ctx.var_index("z").unwrap(), m).unwrap();
                    f = dc.poly;
                    done += 1;
                }
            }
            assert_eq!(done, budget, "n={n} m={m}");
        }
    }
}

#[test]
fn double_cone_rejects_bad_shapes() {
    let ctx = VarContext::builder().vars(&["x1", "x2", "z"]).build().unwrap();
    let f = pp("x1^2*z^2 + x2^2*x1^2 + x1*z^3", &ctx).unwrap();
    assert!(matches!(double_cone(&f, "x2", "z", 2), Err(Error::Shape(_))));
    let f = pp("x1^2*z^2 + x2^2 + x1^4", &ctx).unwrap();
    assert!(double_cone(&f, "x2", "z", 2).is_ok());
    assert!(double_cone(&f, "z", "z", 2).is_err());
}

#[test]
fn budget_examples() {
    assert_eq!(double_cone_budget(2, 2).unwrap(), 0);
    assert_eq!(double_cone_budget(4, 2).unwrap(), 10);
    for n in 2..8 {
        assert_eq!(double_cone_budget(n, n + 1).unwrap(), 0);
    }
}

#[test]
fn base_hypersurface_sizes() {
    for (nv, d, n, m) in [(4, 4, 2, 2), (5, 4, 2, 2), (6, 5, 3, 2), (8, 6, 3, 2), (12, 6, 4, 2)] {
        let fam = base_hypersurface(nv, d, n, m).unwrap();
        assert_eq!(fam.nvars(), nv);
        assert_eq!(fam.degrees, vec![d as u64]);
    }
    assert!(base_hypersurface(3, 4, 2, 2).is_err());
    assert!(base_hypersurface(6, 3, 2, 2).is_err());
}

#[test]
fn small_assemblies_are_groebner() {
    for (degrees, nn, mm) in [(vec![4u32], 4usize, 0usize), (vec![4, 2], 5, 2), (vec![5, 3], 5, 2), (vec![4, 2, 2], 5, 2)] {
        let fam = assemble_ci(&degrees, nn, mm, 2, 2).unwrap();
        fam.validate().unwrap();
        let got: Vec<u64> = degrees.iter().map(|&d| d as u64).collect();
        assert_eq!(fam.degrees, got);
        if fam.claims_coprime {
            assert!(is_groebner(&fam.polys, &fam.order).unwrap());
        }
    }
}

#[test]
fn low_index_and_product() {
    for (degrees, mm) in [(vec![2u32, 2, 2], 3usize), (vec![3, 2], 2), (vec![3, 3], 3), (vec![4], 1)] {
        let fam = assemble_ci_low_index(&degrees, mm).unwrap();
        fam.validate().unwrap();
    }
    let fam = assemble_product_hypersurface(&[4, 2], &[4, 3], 2, 2).unwrap();
    fam.validate().unwrap();
    assert_eq!(fam.block_degrees, Some(vec![4, 3]));
}

#[test]
fn fixed_examples_validate() {
    for name in FixedName::ALL {
        let fam = fixed_example(name).unwrap();
        fam.validate().unwrap();
        assert_eq!(name.as_str().parse::<FixedName>().unwrap(), name);
    }
}

#[test]
fn family_json_round_trip() {
    let fam = assemble_ci(&[4, 2], 5, 2, 2, 2).unwrap();
    let j = fam.to_json();
    let s = serde_json::to_string(&j).unwrap();
    let back = GeneratedFamily::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(back, fam);
}
