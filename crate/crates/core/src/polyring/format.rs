use std::cmp::Ordering;

use num_traits::{One, Signed};

use super::coeff::{Coefficient, PPoly};
use super::context::VarContext;
use super::poly::{Monomial, Polynomial};

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

fn monomial_str(names: impl Fn(usize) -> String, exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| power(&names(i), e))
        .collect::<Vec<_>>()
        .join("*")
}

/// Parameter polynomial in descending graded lex order, e.g. `2*pi^2 - t + 3`.
pub fn format_ppoly(p: &PPoly, ctx: &VarContext) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.sorted_terms().into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let mono = monomial_str(|i| ctx.param_name(i).to_string(), e);
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono
        } else {
            format!("{a}*{mono}")
        };
        match (k, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

fn is_simple_factor(p: &PPoly) -> bool {
    if p.len() != 1 {
        return false;
    }
    let (e, c) = p.terms().iter().next().unwrap();
    let nz = e.iter().filter(|&&x| x > 0).count();
    (nz == 0 && c.is_positive()) || (nz == 1 && c.is_one())
}

/// `(negative, body, is_unit)` for a coefficient printed in front of a monomial.
fn coeff_body(c: &Coefficient, ctx: &VarContext) -> (bool, String, bool) {
    match c {
        Coefficient::Rational(r) => {
            let a = r.abs();
            (r.is_negative(), a.to_string(), a.is_one())
        }
        Coefficient::Fraction { num, den } => {
            let neg = c.is_negative_display();
            let num = if neg { num.neg() } else { num.clone() };
            let ns = format_ppoly(&num, ctx);
            let ns = if num.len() > 1 { format!("({ns})") } else { ns };
            let body = if den.as_constant().is_some_and(|d| d.is_one()) {
                ns
            } else {
                let ds = format_ppoly(den, ctx);
                if is_simple_factor(den) {
                    format!("{ns}/{ds}")
                } else {
                    format!("{ns}/({ds})")
                }
            };
            (neg, body, false)
        }
    }
}

/// Descending graded lex with the declaration order of the variables.
pub(crate) fn grlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.exps().cmp(a.exps()))
}

/// Formats a coefficient on its own.
pub fn format_coefficient(c: &Coefficient, ctx: &VarContext) -> String {
    let (neg, body, _) = coeff_body(c, ctx);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Human-readable form that [`super::parse_poly`] reads back.
pub fn format_poly(f: &Polynomial) -> String {
    let mut terms: Vec<_> = f.terms().iter().collect();
    terms.sort_by(|a, b| grlex_desc(a.0, b.0));
    format_terms(f, terms)
}

/// Formats in the given term order (callers pass terms already sorted).
pub fn format_terms(f: &Polynomial, terms: Vec<(&Monomial, &Coefficient)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let ctx = f.ctx();
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let (neg, body, unit) = coeff_body(c, ctx);
        let mono = monomial_str(|i| ctx.var_name(i).to_string(), m.exps());
        let t = if mono.is_empty() {
            body
        } else if unit {
            mono
        } else {
            format!("{body}*{mono}")
        };
        match (k, neg) {
            (0, true) => out.push_str(&format!("-{t}")),
            (0, false) => out.push_str(&t),
            (_, true) => out.push_str(&format!(" - {t}")),
            (_, false) => out.push_str(&format!(" + {t}")),
        }
    }
    out
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_poly(self))
    }
}
