use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

/// Shared handle to a context; polynomials keep one of these.
pub type Ctx = Arc<VarContext>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub block: usize,
}

/// Relation `p^exp = to` imposed on an algebraic parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rewrite {
    pub exp: u32,
    pub to: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameter {
    pub name: String,
    pub rewrite: Option<Rewrite>,
}

/// Ordered variables (with block tags) and ordered parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VarContext {
    vars: Vec<Variable>,
    params: Vec<Parameter>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new(vars: Vec<Variable>, params: Vec<Parameter>) -> Result<Ctx> {
        let mut seen = BTreeSet::new();
        for name in vars.iter().map(|v| &v.name).chain(params.iter().map(|p| &p.name)) {
            if !valid_identifier(name) {
                return Err(Error::InvalidContext(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidContext(format!("duplicate name `{name}`")));
            }
        }
        for p in &params {
            if let Some(rw) = &p.rewrite {
                if rw.exp == 0 {
                    return Err(Error::InvalidContext(format!("rewrite exponent of `{}` is 0", p.name)));
                }
                if rw.to.is_zero() {
                    return Err(Error::InvalidContext(format!(
                        "rewrite of `{}` must send it to a nonzero constant",
                        p.name
                    )));
                }
            }
        }
        Ok(Arc::new(VarContext { vars, params }))
    }

    /// Variables in block 0 and no parameters.
    pub fn from_names(vars: &[&str]) -> Result<Ctx> {
        Self::new(
            vars.iter().map(|n| Variable { name: n.to_string(), block: 0 }).collect(),
            vec![],
        )
    }

    pub fn builder() -> ContextBuilder {
        ContextBuilder::default()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn param_name(&self, i: usize) -> &str {
        &self.params[i].name
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.var_index(name).is_some() || self.param_index(name).is_some()
    }

    pub fn num_blocks(&self) -> usize {
        self.vars.iter().map(|v| v.block + 1).max().unwrap_or(0)
    }

    pub fn has_rewrites(&self) -> bool {
        self.params.iter().any(|p| p.rewrite.is_some())
    }

    /// Appends variables and parameters; names must stay unique.
    pub fn extend(&self, vars: &[Variable], params: &[Parameter]) -> Result<Ctx> {
        let mut v = self.vars.clone();
        v.extend_from_slice(vars);
        let mut p = self.params.clone();
        p.extend_from_slice(params);
        Self::new(v, p)
    }

    /// Copy of the context with variable `idx` removed.
    pub fn without_var(&self, idx: usize) -> Ctx {
        let mut v = self.vars.clone();
        v.remove(idx);
        Arc::new(VarContext { vars: v, params: self.params.clone() })
    }

    /// `base` if unused, otherwise `base_2`, `base_3`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.has_name(base) {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| !self.has_name(n))
            .expect("unbounded search")
    }

    /// Names `prefix1, prefix2, ...` skipping any already taken.
    pub fn fresh_indexed(&self, prefix: &str, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut k = 1;
        while out.len() < count {
            let n = format!("{prefix}{k}");
            if !self.has_name(&n) {
                out.push(n);
            }
            k += 1;
        }
        out
    }
}

pub fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Default, Clone, Debug)]
pub struct ContextBuilder {
    vars: Vec<Variable>,
    params: Vec<Parameter>,
}

impl ContextBuilder {
    pub fn var(mut self, name: &str) -> Self {
        self.vars.push(Variable { name: name.into(), block: 0 });
        self
    }

    pub fn vars(mut self, names: &[&str]) -> Self {
        for n in names {
            self = self.var(n);
        }
        self
    }

    pub fn block_var(mut self, name: &str, block: usize) -> Self {
        self.vars.push(Variable { name: name.into(), block });
        self
    }

    pub fn param(mut self, name: &str) -> Self {
        self.params.push(Parameter { name: name.into(), rewrite: None });
        self
    }

    /// Parameter subject to `name^exp = to`.
    pub fn algebraic(mut self, name: &str, exp: u32, to: BigRational) -> Self {
        self.params.push(Parameter { name: name.into(), rewrite: Some(Rewrite { exp, to }) });
        self
    }

    pub fn build(self) -> Result<Ctx> {
        VarContext::new(self.vars, self.params)
    }
}
