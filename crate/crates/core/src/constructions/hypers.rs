use std::collections::BTreeMap;

use super::{pp, with_params, with_vars};
use crate::polyring::{Ctx, Polynomial};
use crate::{Error, Result};

/// The pair `(f~, f_{r+1})` produced by adding `M` hyperplane variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddHypers {
    pub tilde: Polynomial,
    pub added: Polynomial,
    pub vars: Vec<String>,
}

/// `t2 + (f + w_1 + ... + w_M)(t1 - w_M g - t (w_M - delta) h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckF {
    pub poly: Polynomial,
    pub vars: Vec<String>,
    pub params: Vec<String>,
}

fn new_param(ctx: &Ctx, name: &str) -> Result<Ctx> {
    if ctx.has_name(name) {
        return Err(Error::InvalidContext(format!("`{name}` is already declared")));
    }
    with_params(ctx, &[name.to_string()])
}

fn idx(ctx: &Ctx, name: &str) -> Result<usize> {
    ctx.var_index(name).ok_or_else(|| Error::UndeclaredIdentifier(name.into()))
}

/// One Step-1 move. Without `prior` returns `(f + w, w)`; with `prior = f_r`
/// (and `f` the current `f~`) returns `(f + w, t + w f_r)`.
pub fn step1_pair(
    f: &Polynomial,
    prior: Option<&Polynomial>,
    fresh: &str,
    block: usize,
    t_param: &str,
) -> Result<(Polynomial, Polynomial)> {
    if f.ctx().has_name(fresh) {
        return Err(Error::InvalidContext(format!("`{fresh}` is already declared")));
    }
    let mut ctx = with_vars(f.ctx(), &[fresh.to_string()], block)?;
    if prior.is_some() {
        ctx = new_param(&ctx, t_param)?;
    }
    let w = Polynomial::var(&ctx, fresh)?;
    let first = f.embed(&ctx)?.checked_add(&w)?;
    let second = match prior {
        None => w,
        Some(p) => Polynomial::param(&ctx, t_param)?.checked_add(&w.checked_mul(&p.embed(&ctx)?)?)?,
    };
    Ok((first, second))
}

fn constant_part(p: &Polynomial, what: &str) -> Result<Polynomial> {
    if p.vars_used().is_empty() {
        Ok(p.clone())
    } else {
        Err(Error::Shape(format!("{what} is not constant: `{p}`")))
    }
}

fn split_linear(p: &Polynomial, var: usize, what: &str) -> Result<(Polynomial, Polynomial)> {
    let mut parts: BTreeMap<u32, Polynomial> = p.collect_in(var)?;
    if parts.keys().any(|&e| e > 1) {
        return Err(Error::Shape(format!("{what} is not linear in `{}`", p.ctx().var_name(var))));
    }
    let zero = Polynomial::zero(p.ctx());
    Ok((parts.remove(&0).unwrap_or_else(|| zero.clone()), parts.remove(&1).unwrap_or(zero)))
}

/// Checks `second = t2 - w_M (t1 - w_{M-1} g)` with `t1 = 0` iff `M = 2` and
/// `g` in the earlier `w`s, and returns `M`.
fn check_step1_shape(second: &Polynomial, ws: &[&str]) -> Result<()> {
    let ctx = second.ctx();
    let mm = ws.len();
    if mm < 2 {
        return Err(Error::Precondition("need at least two added variables".into()));
    }
    let wm = idx(ctx, ws[mm - 1])?;
    let wm1 = idx(ctx, ws[mm - 2])?;
    let (c, r) = split_linear(second, wm, "the added polynomial")?;
    if constant_part(&c, "the constant term")?.is_zero() {
        return Err(Error::Shape("the constant term t2 vanishes".into()));
    }
    let (t1, g) = split_linear(&r, wm1, "the `w_M` coefficient")?;
    constant_part(&t1, "t1")?;
    if t1.is_zero() != (mm == 2) {
        return Err(Error::Shape("t1 must vanish exactly when M = 2".into()));
    }
    let allowed: Vec<usize> = ws[..mm - 2].iter().map(|w| idx(ctx, w)).collect::<Result<_>>()?;
    if g.is_zero() || g.vars_used().iter().any(|v| !allowed.contains(v)) {
        return Err(Error::Shape("g must be a nonzero polynomial in w_1..w_{M-2}".into()));
    }
    Ok(())
}

/// Adds `t w_M (w_{M-1} - delta_{M,2}) h` to the second component; `h` defaults
/// to `w_{M-1}^{d-2}`.
pub fn step2_deform(
    pair: &(Polynomial, Polynomial),
    d: u32,
    ws: &[&str],
    h: Option<&Polynomial>,
    t_param: &str,
) -> Result<(Polynomial, Polynomial)> {
    let mm = ws.len();
    if d as usize <= mm {
        return Err(Error::Precondition(format!("need d > M, got d = {d}, M = {mm}")));
    }
    check_step1_shape(&pair.1, ws)?;
    let ctx = new_param(pair.1.ctx(), t_param)?;
    let wm = Polynomial::var(&ctx, ws[mm - 1])?;
    let wm1 = Polynomial::var(&ctx, ws[mm - 2])?;
    let h = match h {
        Some(h) => {
            let h = h.embed(&ctx)?;
            let allowed: Vec<usize> = ws[..mm - 1].iter().map(|w| idx(&ctx, w)).collect::<Result<_>>()?;
            if h.vars_used().iter().any(|v| !allowed.contains(v)) {
                return Err(Error::Precondition("h must lie in k[w_1..w_{M-1}]".into()));
            }
            if h.total_degree().finite() != Some(d as u64 - 2) {
                return Err(Error::Precondition(format!("h must have degree {}", d - 2)));
            }
            h
        }
        None => wm1.pow(d - 2)?,
    };
    let delta = if mm == 2 { Polynomial::one(&ctx) } else { Polynomial::zero(&ctx) };
    let term = Polynomial::param(&ctx, t_param)?.checked_mul(&wm)?.checked_mul(&wm1.checked_sub(&delta)?)?.checked_mul(&h)?;
    let second = pair.1.embed(&ctx)?.checked_add(&term)?;
    Ok((pair.0.embed(&ctx)?, second))
}

/// The `M = 2` alternative: `(f + w_1 + w_2, t2 - w_1 w_2 + t w_1^d)`, where
/// `t2` is the constant term of the input pair.
pub fn step2_alt_m2(pair: &(Polynomial, Polynomial), d: u32, ws: &[&str], t_param: &str) -> Result<(Polynomial, Polynomial)> {
    if ws.len() != 2 {
        return Err(Error::Shape("the alternative form needs exactly two added variables".into()));
    }
    if d < 2 {
        return Err(Error::Precondition("need d >= 2".into()));
    }
    check_step1_shape(&pair.1, ws)?;
    let ctx = new_param(pair.1.ctx(), t_param)?;
    let w1 = Polynomial::var(&ctx, ws[0])?;
    let w2 = Polynomial::var(&ctx, ws[1])?;
    let (c, _) = split_linear(&pair.1.embed(&ctx)?, idx(&ctx, ws[1])?, "the added polynomial")?;
    let second = c
        .checked_sub(&w1.checked_mul(&w2)?)?
        .checked_add(&Polynomial::param(&ctx, t_param)?.checked_mul(&w1.pow(d)?)?)?;
    Ok((pair.0.embed(&ctx)?, second))
}

/// Adds `M = names.len()` variables and a polynomial of degree `d` in them:
/// a Step-1 chain, then the Step-2 deformation when `d > M`, or the
/// alternative form for any `d` when `alt_m2` and `M = 2`.
pub fn add_hypers(f: &Polynomial, d: u32, names: &[String], block: usize, alt_m2: bool) -> Result<AddHypers> {
    let mm = names.len();
    if mm == 0 || (d as usize) < mm {
        return Err(Error::Precondition(format!("need d >= M >= 1, got d = {d}, M = {mm}")));
    }
    if d as usize > mm && mm < 2 {
        return Err(Error::Precondition("d > M needs M >= 2".into()));
    }
    let mut pair = step1_pair(f, None, &names[0], block, "")?;
    for w in &names[1..] {
        let t = pair.1.ctx().fresh_indexed("t", 1).remove(0);
        pair = step1_pair(&pair.0, Some(&pair.1), w, block, &t)?;
    }
    let ws: Vec<&str> = names.iter().map(String::as_str).collect();
    if alt_m2 && mm == 2 {
        let t = pair.1.ctx().fresh_indexed("t", 1).remove(0);
        pair = step2_alt_m2(&pair, d, &ws, &t)?;
    } else if d as usize > mm {
        let t = pair.1.ctx().fresh_indexed("t", 1).remove(0);
        pair = step2_deform(&pair, d, &ws, None, &t)?;
    }
    let (tilde, added) = pair;
    let ctx = added.ctx().clone();
    Ok(AddHypers { tilde: tilde.embed(&ctx)?, added, vars: names.to_vec() })
}

/// `check_f` with default free polynomials.
pub fn build_check_f(f: &Polynomial, d: u32, names: &[String], block: usize) -> Result<CheckF> {
    build_check_f_with(f, d, names, block, None, None)
}

/// `t2 + (f + w_1 + ... + w_M)(t1 - w_M g - t (w_M - delta_{M+1,2}) h)` with
/// `t1 = 0` iff `M = 1`. Defaults: `g = 1` for `M = 1`, else `w_{M-1}^{M-1}`;
/// `h = w_M^{d-1}`. Overrides are parsed in the extended ring.
pub fn build_check_f_with(
    f: &Polynomial,
    d: u32,
    names: &[String],
    block: usize,
    g: Option<&str>,
    h: Option<&str>,
) -> Result<CheckF> {
    let mm = names.len();
    if mm == 0 || (d as usize) < mm {
        return Err(Error::Precondition(format!("need d >= M >= 1, got d = {d}, M = {mm}")));
    }
    let deg_f = f.total_degree().finite().ok_or(Error::ZeroPolynomial)?;
    let base = f.ctx();
    for n in names {
        if base.has_name(n) {
            return Err(Error::InvalidContext(format!("`{n}` is already declared")));
        }
    }
    let vctx = with_vars(base, names, block)?;
    let ts = vctx.fresh_indexed("t", 3);
    let (t, t1, t2) = (&ts[0], &ts[1], &ts[2]);
    let ctx = with_params(&vctx, if mm == 1 { &ts[..1] } else { &ts[..2] })?;
    let ctx = with_params(&ctx, std::slice::from_ref(t2))?;
    let wi: Vec<usize> = names.iter().map(|n| idx(&ctx, n)).collect::<Result<_>>()?;
    let wm = Polynomial::var(&ctx, &names[mm - 1])?;
    let g = match g {
        Some(s) => {
            let g = pp(s, &ctx)?;
            if g.vars_used().iter().any(|v| !wi[..mm - 1].contains(v)) || g.total_degree().finite() != Some(mm as u64 - 1) {
                return Err(Error::Precondition(format!("g must have degree {} in w_1..w_{{M-1}}", mm - 1)));
            }
            g
        }
        None if mm == 1 => Polynomial::one(&ctx),
        None => Polynomial::var(&ctx, &names[mm - 2])?.pow(mm as u32 - 1)?,
    };
    let h = match h {
        Some(s) => {
            let h = pp(s, &ctx)?;
            if h.vars_used().iter().any(|v| !wi.contains(v)) || h.total_degree().finite() != Some(d as u64 - 1) {
                return Err(Error::Precondition(format!("h must have degree {} in w_1..w_M", d - 1)));
            }
            h
        }
        None => wm.pow(d - 1)?,
    };
    let delta = if mm == 1 { Polynomial::one(&ctx) } else { Polynomial::zero(&ctx) };
    let t1p = if mm == 1 { Polynomial::zero(&ctx) } else { Polynomial::param(&ctx, t1)? };
    let mut sum = f.embed(&ctx)?;
    for n in names {
        sum = sum.checked_add(&Polynomial::var(&ctx, n)?)?;
    }
    let factor = t1p
        .checked_sub(&wm.checked_mul(&g)?)?
        .checked_sub(&Polynomial::param(&ctx, t)?.checked_mul(&wm.checked_sub(&delta)?)?.checked_mul(&h)?)?;
    let poly = Polynomial::param(&ctx, t2)?.checked_add(&sum.checked_mul(&factor)?)?;
    let old: Vec<usize> = (0..base.nvars()).collect();
    let want = (deg_f + d as u64, deg_f, d as u64 + 1);
    let got = (
        poly.total_degree().finite().unwrap_or(0),
        poly.degree_in_vars(&old).finite().unwrap_or(0),
        poly.degree_in_vars(&wi).finite().unwrap_or(0),
    );
    if got != want {
        return Err(Error::Precondition(format!("check_f degrees {got:?} differ from {want:?}")));
    }
    let mut params = vec![t.clone()];
    if mm > 1 {
        params.push(t1.clone());
    }
    params.push(t2.clone());
    Ok(CheckF { poly, vars: names.to_vec(), params })
}
