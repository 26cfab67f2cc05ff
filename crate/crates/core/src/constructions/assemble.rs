use super::{
    add_hypers, build_base_n3, build_check_f, build_f0, double_cone, fixed_example,
    ConstructionRecipe, Family, FixedName, GeneratedFamily,
};
use crate::certify::budget;
use crate::ordering::MonomialOrder;
use crate::polyring::{Ctx, Polynomial, VarContext, Variable};
use crate::{Error, Result};

fn pre(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn small_budget(n: u32, m: u32) -> Result<u64> {
    u64::try_from(budget(n, m)).map_err(|_| Error::Precondition("bound out of range".into()))
}

/// Largest base dimension reachable from `f_0(n, m, .)` with double cones.
fn reach(n: u32, m: u32) -> Result<u64> {
    Ok(n as u64 + (1u64 << n) - 2 + small_budget(n, m)?)
}

/// A degree-`d` hypersurface in `nvars` variables (the last one designated `z`)
/// with relative torsion order `m`: `f_0` plus double cones, raised to degree
/// `d` by one `check_f` step when needed; `base_n3` when `nvars = 4`.
pub fn base_hypersurface(nvars: usize, d: u32, n: u32, m: u32) -> Result<GeneratedFamily> {
    pre(n >= 2 && m >= 2, || format!("need n, m >= 2, got n = {n}, m = {m}"))?;
    pre(n <= 20, || "n > 20 is out of range".into())?;
    pre(d >= n + m, || format!("need d >= n + m = {}, got d = {d}", n + m))?;
    let big_n = nvars as u64 - 1;
    pre(nvars >= 4 && big_n <= reach(n, m)?, || {
        format!("need 4 <= variables <= {}, got {nvars}", reach(n, m).map(|r| r + 1).unwrap_or(0))
    })?;
    if big_n == 3 {
        return build_base_n3(d, m);
    }
    let mut choice = None;
    for n0 in 2..=n {
        let raise = d > n0 + m;
        let base_x = big_n - raise as u64;
        if (n0 as u64) < base_x && base_x <= reach(n0, m)? {
            choice = Some((n0, base_x, raise));
            break;
        }
    }
    let (n0, base_x, raise) =
        choice.ok_or_else(|| Error::Precondition(format!("no admissible n for {nvars} variables and degree {d}")))?;
    let plain = n0 as u64 + (1u64 << n0) - 2;
    let mut fam = build_f0(n0, m, base_x.min(plain) as usize)?;
    let mut cones = base_x.saturating_sub(plain);
    let mut f = fam.polys[0].clone();
    let mut l = fam.obstruction.clone();
    'outer: for j in 1..(1u64 << n0) - 1 {
        for _ in 0..(n0 - j.count_ones()) / m {
            if cones == 0 {
                break 'outer;
            }
            let dc = double_cone(&f, &format!("x{}", n0 as u64 + j), "z", m)?;
            l = l.embed(dc.poly.ctx())?.checked_mul(&Polynomial::var(dc.poly.ctx(), &dc.new_var)?)?;
            f = dc.poly;
            fam.recipe = ConstructionRecipe::new(Family::DoubleCone).with("n", n0).with("m", m).with("N", base_x);
            cones -= 1;
        }
    }
    debug_assert_eq!(cones, 0);
    if raise {
        let names = f.ctx().fresh_indexed("w", 1);
        let c = build_check_f(&f, d - n0 - m, &names, 0)?;
        l = l.embed(c.poly.ctx())?;
        f = c.poly;
        fam.recipe = ConstructionRecipe::new(Family::CheckF).with("n", n0).with("m", m).with("d", d).with("M", 1);
    }
    fam.order = MonomialOrder::grlex(f.ctx());
    fam.polys = vec![f];
    fam.obstruction = l;
    fam.degrees = vec![d as u64];
    fam.notes.push(format!("base built from f0 with n = {n0}"));
    fam.validate()?;
    Ok(fam)
}

/// Renames variables: `map[i] = (old, new, block)` in the new declaration order.
fn rename(polys: &[Polynomial], extra: &Polynomial, map: &[(String, String, usize)]) -> Result<(Vec<Polynomial>, Polynomial)> {
    let src = polys[0].ctx();

    let vars = map.iter().map(|(_, new, b)| Variable { name: new.clone(), block: *b }).collect();
    let target: Ctx = VarContext::new(vars, src.params().to_vec())?;
    let bindings: Vec<(String, Polynomial)> =
        map.iter().map(|(old, new, _)| Ok((old.clone(), Polynomial::var(&target, new)?))).collect::<Result<_>>()?;
    let b: Vec<(&str, Polynomial)> = bindings.iter().map(|(o, p)| (o.as_str(), p.clone())).collect();
    let out = polys.iter().map(|p| p.substitute(&b, &target)).collect::<Result<Vec<_>>>()?;
    Ok((out, extra.substitute(&b, &target)?))
}

/// Base hypersurface on `x1..xN` with the designated variable renamed to `x1`.
fn base_on_x(big_n: usize, d: u32, n: u32, m: u32) -> Result<(Polynomial, Polynomial)> {
    let fam = base_hypersurface(big_n, d, n, m)?;
    let ctx = fam.ctx().clone();
    let z = fam.designated.clone().expect("base has a designated variable");
    let mut map = vec![(z.clone(), "x1".to_string(), 0)];
    let mut k = 2;
    for v in ctx.vars() {
        if v.name != z {
            map.push((v.name.clone(), format!("x{k}"), 0));
            k += 1;
        }
    }
    let (p, l) = rename(&fam.polys, &fam.obstruction, &map)?;
    Ok((p.into_iter().next().expect("one polynomial"), l))
}

fn ys(from: usize, count: usize) -> Vec<String> {
    (from..from + count).map(|i| format!("y{i}")).collect()
}

/// Complete intersection `g_1..g_s` in `x1..xN, y1..yM` with `deg g_i = d_i`
/// and designated variable `x1`.
pub fn assemble_ci(degrees: &[u32], big_n: usize, big_m: usize, n: u32, m: u32) -> Result<GeneratedFamily> {
    let s = degrees.len();
    pre(s >= 1, || "need at least one degree".into())?;
    pre(n >= 2 && m >= 2 && n <= 20, || format!("need 2 <= n <= 20 and m >= 2, got n = {n}, m = {m}"))?;
    let d1 = degrees[0];
    pre(d1 >= n + m, || format!("need d_1 >= n + m = {}, got d_1 = {d1}", n + m))?;
    pre(degrees[1..].iter().all(|&d| d >= 2), || "need d_i >= 2 for i >= 2".into())?;
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    pre(big_m + 1 >= s, || format!("need M >= s - 1 = {}, got M = {big_m}", s - 1))?;
    pre(big_m as u64 <= total - (n + m) as u64, || {
        format!("need M <= sum d - n - m = {}, got M = {big_m}", total - (n + m) as u64)
    })?;
    let hi = reach(n, m)? + 1;
    pre(big_n >= 4 && big_n as u64 <= hi, || format!("need 4 <= N <= {hi}, got N = {big_n}"))?;

    let (family, polys, l) = if big_m + 2 >= 2 * s && !(big_m + 1 == s) {
        case_a(degrees, big_n, big_m, n, m)?
    } else if big_m >= s {
        case_b(degrees, big_n, big_m, n, m)?
    } else {
        case_c(degrees, big_n, n, m)?
    };
    let ctx = polys[0].ctx().clone();
    let fam = GeneratedFamily {
        recipe: ConstructionRecipe::new(family)
            .with("degrees", degrees)
            .with("N", big_n)
            .with("M", big_m)
            .with("n", n)
            .with("m", m),
        polys,
        designated: Some("x1".into()),
        obstruction: l.embed(&ctx)?,
        order: MonomialOrder::grlex(&ctx),
        degrees: degrees.iter().map(|&d| d as u64).collect(),
        block_degrees: None,
        claims_coprime: s <= big_m || s == 1,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}

type Assembled = (Family, Vec<Polynomial>, Polynomial);

/// Splits `total` into parts in `[2, cap_i]`.
fn distribute(total: usize, caps: &[u32]) -> Result<Vec<usize>> {
    let mut parts = vec![2usize; caps.len()];
    let mut left = total
        .checked_sub(2 * caps.len())
        .ok_or_else(|| Error::Precondition("too few added variables to distribute".into()))?;
    for (p, &c) in parts.iter_mut().zip(caps) {
        let add = left.min(c as usize - 2);
        *p += add;
        left -= add;
    }
    if left > 0 {
        return Err(Error::Precondition("too many added variables to distribute".into()));
    }
    Ok(parts)
}

fn case_a(degrees: &[u32], big_n: usize, big_m: usize, n: u32, m: u32) -> Result<Assembled> {
    let total: usize = degrees.iter().map(|&d| d as usize).sum();
    let d1 = degrees[0] as usize;
    let dp = d1.min(total - big_m);
    let m1 = d1 - dp;
    let (mut g1, l) = base_on_x(big_n, dp as u32, n, m)?;
    if m1 > 0 {
        g1 = build_check_f(&g1, m1 as u32, &ys(1, m1), 0)?.poly;
    }
    let parts = distribute(big_m - m1, &degrees[1..])?;
    let mut next = m1 + 1;
    let mut others = Vec::new();
    for (&d, &mi) in degrees[1..].iter().zip(&parts) {
        let ah = add_hypers(&g1, d, &ys(next, mi), 0, false)?;
        next += mi;
        g1 = ah.tilde;
        others.push(ah.added);
    }
    let ctx = g1.ctx().clone();
    let mut polys = vec![g1];
    for o in others {
        polys.push(o.embed(&ctx)?);
    }
    Ok((Family::CiCaseA, polys, l))
}

fn case_b(degrees: &[u32], big_n: usize, big_m: usize, n: u32, m: u32) -> Result<Assembled> {
    let s = degrees.len();
    let sp = big_m + 2 - s;
    let (mut g1, l) = base_on_x(big_n, degrees[0], n, m)?;
    let mut others = Vec::new();
    for i in 2..=sp {
        let names = ys(2 * i - 3, 2);
        let ah = add_hypers(&g1, degrees[i - 1], &names, 0, i == sp)?;
        g1 = ah.tilde;
        others.push(ah.added);
    }
    let ctx = {
        let extra = ys(2 * sp - 1, s - sp);
        super::with_vars(g1.ctx(), &extra, 0)?
    };
    let mut polys = vec![g1.embed(&ctx)?];
    for o in others {
        polys.push(o.embed(&ctx)?);
    }
    for i in sp + 1..=s {
        let new = format!("y{}", i + sp - 2);
        let prev = format!("y{}", i + sp - 3);
        let g = Polynomial::var(&ctx, &new)?.checked_add(&Polynomial::var(&ctx, &prev)?.pow(degrees[i - 1])?)?;
        polys.push(g);
    }
    Ok((Family::CiCaseB, polys, l))
}

fn case_c(degrees: &[u32], big_n: usize, n: u32, m: u32) -> Result<Assembled> {
    let s = degrees.len();
    let (g1, l) = base_on_x(big_n, degrees[0], n, m)?;
    let ctx = super::with_vars(g1.ctx(), &ys(1, s - 1), 0)?;
    let v = Polynomial::var(&ctx, &format!("x{big_n}"))?;
    let mut polys = vec![g1.embed(&ctx)?];
    for i in 2..=s {
        polys.push(Polynomial::var(&ctx, &format!("y{}", i - 1))?.checked_add(&v.pow(degrees[i - 1])?)?);
    }
    Ok((Family::CiCaseC, polys, l))
}

/// Complete intersections of Fano index at most two with relative
/// `Z/2`-torsion order two, in `4 + M` variables.
pub fn assemble_ci_low_index(degrees: &[u32], big_m: usize) -> Result<GeneratedFamily> {
    let s = degrees.len();
    pre(s >= 1, || "need at least one degree".into())?;
    pre(degrees.iter().all(|&d| d >= 2), || "need every d_i >= 2".into())?;
    let mut ds = degrees.to_vec();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    let total: usize = ds.iter().map(|&d| d as usize).sum();
    pre(big_m >= s && big_m + 3 <= total, || format!("need {s} <= M <= {}, got M = {big_m}", total as i64 - 3))?;
    if ds[0] >= 4 {
        let mut fam = if big_m + 3 == total {
            assemble_ci(&ds, 5, big_m - 1, 2, 2)?
        } else {
            assemble_ci(&ds, 4, big_m, 2, 2)?
        };
        fam.recipe.params.insert("low_index_M".into(), big_m.into());
        return Ok(fam);
    }
    let fam = if ds[0] == 2 {
        low_a(&ds, big_m)?
    } else if big_m + 3 != 3 * s {
        low_b(&ds, big_m)?
    } else {
        low_c(s)?
    };
    debug_assert_eq!(fam.nvars(), 4 + big_m);
    fam.validate()?;
    Ok(fam)
}

fn low_a(ds: &[u32], big_m: usize) -> Result<GeneratedFamily> {
    let s = ds.len();
    let s0 = 2 * s - big_m;
    let chart = fixed_example(FixedName::HptChart)?;
    let names: Vec<String> = (1..=4 + s0).map(|i| format!("x{i}")).collect();
    let ctx = VarContext::new(names.iter().map(|n| Variable { name: n.clone(), block: 0 }).collect(), vec![])?;
    let q: Vec<Polynomial> = chart.polys.iter().map(|p| p.embed(&ctx)).collect::<Result<_>>()?;
    let mut tail = Vec::new();
    for i in 4..=s0 {
        tail.push(super::pp(&format!("x{} + x{}^2", 4 + i, 3 + i), &ctx)?);
    }
    let mut q2 = q[1].clone();
    let mut added = Vec::new();
    let mut next = 5 + s0;
    for _ in 0..s - s0 {
        let ah = add_hypers(&q2, 2, &[format!("x{next}"), format!("x{}", next + 1)], 0, false)?;
        next += 2;
        q2 = ah.tilde;
        added.push(ah.added);
    }
    let ctx = q2.ctx().clone();
    let mut polys = vec![q2, q[0].embed(&ctx)?, q[2].embed(&ctx)?];
    for p in tail.into_iter().chain(added) {
        polys.push(p.embed(&ctx)?);
    }
    let mut prio: Vec<String> = (2..=4 + big_m).map(|i| format!("x{i}")).collect();
    prio.push("x1".into());
    Ok(GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::CiLowIndexA).with("degrees", ds).with("M", big_m),
        polys,
        designated: Some("x2".into()),
        obstruction: chart.obstruction.embed(&ctx)?,
        order: MonomialOrder::with_priority(&ctx, &prio)?,
        degrees: vec![2; s],
        block_degrees: None,
        claims_coprime: true,
        notes: vec![],
    })
}

const Q_HPT: &str = "1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2";

fn low_b(ds: &[u32], big_m: usize) -> Result<GeneratedFamily> {
    let s = ds.len();
    let s1 = (s - 2).min(big_m - s);
    let m0 = big_m - s + s1;
    let nz = s + 1 - s1;
    let ds_last = ds[s - 1];
    let mut names = vec!["x1".to_string(), "x2".into(), "x3".into()];
    names.extend((1..=nz).map(|i| format!("z{i}")));
    let ctx = VarContext::new(names.iter().map(|n| Variable { name: n.clone(), block: 0 }).collect(), vec![])?;
    let f1 = super::pp(&format!("x1*z1^2 + x2*z2^2 + x1*x2^{}*x3 + {Q_HPT}", 3 - ds_last), &ctx)?;
    let fs = super::pp(&format!("x3 - x2^{}*z3^2", ds_last - 2), &ctx)?;
    let mut g1 = f1;
    let mut added = Vec::new();
    if s1 > 0 {
        let parts = distribute(m0, &ds[1..=s1])?;
        let mut next = 1;
        for (&d, &mi) in ds[1..=s1].iter().zip(&parts) {
            let ah = add_hypers(&g1, d, &ys(next, mi), 0, false)?;
            next += mi;
            g1 = ah.tilde;
            added.push(ah.added);
        }
    }
    let ctx = g1.ctx().clone();
    let mut polys = vec![g1];
    for a in added {
        polys.push(a.embed(&ctx)?);
    }
    for j in s1 + 2..s {
        let text = if j == s1 + 2 {
            format!("z2^{} + z4", ds[j - 1])
        } else {
            format!("z{}^{} + z{}", j + 1 - s1, ds[j - 1], j + 2 - s1)
        };
        polys.push(super::pp(&text, &ctx)?);
    }
    polys.push(fs.embed(&ctx)?);
    let mut prio = vec!["x1".to_string(), "z1".into(), "x2".into(), "x3".into()];
    prio.extend((2..=nz).map(|i| format!("z{i}")));
    prio.extend(ys(1, m0));
    Ok(GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::CiLowIndexB).with("degrees", ds).with("M", big_m),
        polys,
        designated: Some("z1".into()),
        obstruction: super::pp("x1*x2*z1*z3", &ctx)?,
        order: MonomialOrder::with_priority(&ctx, &prio)?,
        degrees: ds.iter().map(|&d| d as u64).collect(),
        block_degrees: None,
        claims_coprime: true,
        notes: vec!["x3 is eliminated through the last equation".into()],
    })
}

fn low_c(s: usize) -> Result<GeneratedFamily> {
    let base = fixed_example(FixedName::Ci33)?;
    let mut c2 = base.polys[1].clone();
    let mut added = Vec::new();
    for k in 0..s - 2 {
        let ah = add_hypers(&c2, 3, &ys(3 * k + 1, 3), 0, false)?;
        c2 = ah.tilde;
        added.push(ah.added);
    }
    let ctx = c2.ctx().clone();
    let mut polys = vec![c2, base.polys[0].embed(&ctx)?];
    for a in added {
        polys.push(a.embed(&ctx)?);
    }
    let mut prio: Vec<String> = ["x1", "z1", "x2", "x3", "x4", "z2", "z3"].iter().map(|s| s.to_string()).collect();
    prio.extend(ys(1, 3 * (s - 2)));
    Ok(GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::CiLowIndexC).with("degrees", vec![3; s]).with("M", 3 * s - 3),
        polys,
        designated: Some("z1".into()),
        obstruction: base.obstruction.embed(&ctx)?,
        order: MonomialOrder::with_priority(&ctx, &prio)?,
        degrees: vec![3; s],
        block_degrees: None,
        claims_coprime: true,
        notes: vec![],
    })
}

/// Hypersurface in `A^{M_0} x ... x A^{M_s}` of multidegree `ds`, on blocks
/// `y{i}_1..y{i}_{M_i}`; the designated variable is `y0_{M_0}`.
pub fn assemble_product_hypersurface(ms: &[usize], ds: &[u32], n: u32, m: u32) -> Result<GeneratedFamily> {
    pre(!ms.is_empty() && ms.len() == ds.len(), || "need equally long, nonempty M and d lists".into())?;
    pre(n >= 2 && m >= 2 && n <= 20, || format!("need 2 <= n <= 20 and m >= 2, got n = {n}, m = {m}"))?;
    pre(ds[0] >= n + m, || format!("need d_0 >= n + m = {}, got d_0 = {}", n + m, ds[0]))?;
    for i in 1..ms.len() {
        pre(ms[i] >= 1 && ds[i] as usize > ms[i], || format!("need 1 <= M_{i} and d_{i} >= M_{i} + 1"))?;
    }
    let hi = reach(n, m)? + 1;
    pre(ms[0] >= 4 && ms[0] as u64 <= hi, || format!("need 4 <= M_0 <= {hi}, got M_0 = {}", ms[0]))?;
    let base = base_hypersurface(ms[0], ds[0], n, m)?;
    let z = base.designated.clone().expect("designated variable");
    let mut map = Vec::new();
    let mut k = 1;
    for v in base.ctx().vars() {
        if v.name != z {
            map.push((v.name.clone(), format!("y0_{k}"), 0));
            k += 1;
        }
    }
    map.push((z, format!("y0_{}", ms[0]), 0));
    let (p, mut l) = rename(&base.polys, &base.obstruction, &map)?;
    let mut f = p.into_iter().next().expect("one polynomial");
    for i in 1..ms.len() {
        let names: Vec<String> = (1..=ms[i]).map(|j| format!("y{i}_{j}")).collect();
        f = build_check_f(&f, ds[i] - 1, &names, i)?.poly;
    }
    l = l.embed(f.ctx())?;
    let ctx = f.ctx().clone();
    let fam = GeneratedFamily {
        recipe: ConstructionRecipe::new(Family::ProductHyp).with("Ms", ms).with("ds", ds).with("n", n).with("m", m),
        polys: vec![f],
        designated: Some(format!("y0_{}", ms[0])),
        obstruction: l,
        order: MonomialOrder::grlex(&ctx),
        degrees: vec![ds[0] as u64 + ds[1..].iter().map(|&d| d as u64 - 1).sum::<u64>()],
        block_degrees: Some(ds.iter().map(|&d| d as u64).collect()),
        claims_coprime: false,
        notes: vec![],
    };
    fam.validate()?;
    Ok(fam)
}
