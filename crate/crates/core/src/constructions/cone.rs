use num_integer::binomial;

use crate::polyring::{Parameter, Polynomial, Variable};
use crate::{Error, Result};

/// Output of one double-cone step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCone {
    pub poly: Polynomial,
    /// The new variable `w0`.
    pub new_var: String,
    pub lambda: String,
    pub t: String,
}

/// Splits `f = b z^m + sum a_i x^i` and returns `(b, [a_0..a_m])`.
pub(crate) fn recognize(f: &Polynomial, j0: usize, z: usize, m: u32) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ctx = f.ctx();
    let in_z = f.collect_in(z)?;
    if in_z.keys().any(|&e| e != 0 && e != m) {
        return Err(Error::Shape(format!("`{}` appears with a power other than 0 and {m}", ctx.var_name(z))));
    }
    let b = in_z.get(&m).cloned().unwrap_or_else(|| Polynomial::zero(ctx));
    if b.is_zero() {
        return Err(Error::Shape(format!("no `{}^{m}` term", ctx.var_name(z))));
    }
    if b.degree_in(j0).finite().unwrap_or(0) > 0 {
        return Err(Error::Shape(format!("the `{}^{m}` coefficient involves `{}`", ctx.var_name(z), ctx.var_name(j0))));
    }
    let rest = in_z.get(&0).cloned().unwrap_or_else(|| Polynomial::zero(ctx));
    let in_x = rest.collect_in(j0)?;
    if let Some(&e) = in_x.keys().find(|&&e| e > m) {
        return Err(Error::Shape(format!("`{}` appears to power {e} > {m}", ctx.var_name(j0))));
    }
    let a = (0..=m).map(|i| in_x.get(&i).cloned().unwrap_or_else(|| Polynomial::zero(ctx))).collect();
    Ok((b, a))
}

/// [`recognize`] by variable name.
pub fn recognize_cone_form(f: &Polynomial, x: &str, z: &str, m: u32) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ctx = f.ctx();
    let xi = ctx.var_index(x).ok_or_else(|| Error::UndeclaredIdentifier(x.into()))?;
    let zi = ctx.var_index(z).ok_or_else(|| Error::UndeclaredIdentifier(z.into()))?;
    recognize(f, xi, zi, m)
}

/// Replaces `f = b z^m + sum a_i x^i` (with `x = x_{j0}`) by
/// `b z^m + sum a_i (w0 x - 1/lambda)^i + w0 + t lambda x`
/// in the ring extended by `w0` and parameters `lambda`, `t`.
pub fn double_cone(f: &Polynomial, j0: &str, z: &str, m: u32) -> Result<DoubleCone> {
    let ctx = f.ctx();
    let ji = ctx.var_index(j0).ok_or_else(|| Error::UndeclaredIdentifier(j0.into()))?;
    let zi = ctx.var_index(z).ok_or_else(|| Error::UndeclaredIdentifier(z.into()))?;
    if ji == zi {
        return Err(Error::Precondition("the cone variable must differ from the designated variable".into()));
    }
    let d = f.total_degree().finite().ok_or(Error::ZeroPolynomial)?;
    if 2 * m as u64 > d {
        return Err(Error::Precondition(format!("need 2m <= d, got m = {m}, d = {d}")));
    }
    let (b, a) = recognize(f, ji, zi, m)?;
    for (i, ai) in a.iter().enumerate() {
        if let Some(da) = ai.total_degree().finite() {
            if da + 2 * i as u64 > d {
                return Err(Error::Precondition(format!("coefficient of `{j0}^{i}` has degree {da} > {d} - {}", 2 * i)));
            }
        }
    }
    let w0 = ctx.fresh_indexed("w", 1).remove(0);
    let lambda = ctx.fresh_indexed("lambda", 1).remove(0);
    let t = ctx.fresh_indexed("t", 1).remove(0);
    let block = ctx.vars()[ji].block;
    let target = ctx.extend(
        &[Variable { name: w0.clone(), block }],
        &[Parameter { name: lambda.clone(), rewrite: None }, Parameter { name: t.clone(), rewrite: None }],
    )?;
    let x = Polynomial::var(&target, j0)?;
    let w = Polynomial::var(&target, &w0)?;
    let lam = Polynomial::param(&target, &lambda)?;
    let tp = Polynomial::param(&target, &t)?;
    let inv_lam = crate::polyring::parse_poly(&format!("1/{lambda}"), &target)?;
    let shifted = w.checked_mul(&x)?.checked_sub(&inv_lam)?;
    let zp = Polynomial::var(&target, z)?;
    let mut out = b.embed(&target)?.checked_mul(&zp.pow(m)?)?;
    let mut power = Polynomial::one(&target);
    for ai in &a {
        out = out.checked_add(&ai.embed(&target)?.checked_mul(&power)?)?;
        power = power.checked_mul(&shifted)?;
    }
    out = out.checked_add(&w)?.checked_add(&tp.checked_mul(&lam)?.checked_mul(&x)?)?;
    if out.total_degree().finite() != Some(d) {
        return Err(Error::Precondition(format!("double cone changed the degree from {d} to {}", out.total_degree())));
    }
    Ok(DoubleCone { poly: out, new_var: w0, lambda, t })
}

/// Number of double-cone applications available on `f_0(n, m, n + 2^n - 2)`.
/// The double-cone count summed over index sets and over their weights.
pub(crate) fn budget_sums(n: u32, m: u32) -> (u64, u64) {
    let by_index = (1..(1u64 << n) - 1).map(|j| ((n - j.count_ones()) / m) as u64).sum();
    let by_weight = (0..n).map(|l| binomial(n as u64, l as u64) * (l / m) as u64).sum();
    (by_index, by_weight)
}

pub fn double_cone_budget(n: u32, m: u32) -> Result<u64> {
    if n < 2 || m < 2 {
        return Err(Error::Precondition(format!("need n, m >= 2, got n = {n}, m = {m}")));
    }
    if n > 24 {
        return Err(Error::Precondition("n > 24 is out of range".into()));
    }
    let (by_index, by_weight) = budget_sums(n, m);
    assert_eq!(by_index, by_weight, "double-cone budget sums disagree");
    Ok(by_weight)
}
