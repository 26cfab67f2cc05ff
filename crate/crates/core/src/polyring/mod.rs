//! Polynomials with rational-function coefficients in named parameters.
//!
//! A [`VarContext`] fixes the ordered variables (each tagged with a block) and
//! the parameters. Parameters are transcendental unless they carry a
//! [`Rewrite`] `p^e = c`, in which case exponents are kept below `e`.

mod coeff;
mod context;
mod format;
mod json;
mod parse;
mod poly;

pub use coeff::{Coefficient, PPoly};
pub use context::{same_ctx, ContextBuilder, Ctx, Parameter, Rewrite, VarContext, Variable};
pub use format::{format_coefficient, format_poly, format_ppoly, format_terms};
pub use json::{
    coefficient_strings, context_from_json, context_to_json, poly_from_json, poly_from_terms_json, poly_to_json,
    ContextJson, ParamJson, PolyJson, RewriteJson, TermJson, VarJson,
};
pub use parse::{parse_coefficient, parse_poly};
pub use poly::{ring_arith, ArithOp, Degree, Degrees, Monomial, Polynomial};
#[allow(unused_imports)]
pub(crate) use poly::param_map;

#[cfg(test)]
mod tests;
