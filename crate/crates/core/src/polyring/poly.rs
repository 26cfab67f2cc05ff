use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::Coefficient;
use super::context::{same_ctx, Ctx, Variable};
use crate::{Error, Result};

/// Exponent vector indexed like the variables of a context.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, o: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o).then(|| Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub total: Degree,
    pub blocks: Vec<Degree>,
}

/// Polynomial with coefficients in `Q(params)` over a shared context.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        same_ctx(&self.ctx, &o.ctx) && self.terms == o.terms
    }
}

impl Eq for Polynomial {}

fn mismatch() -> Error {
    Error::ContextMismatch("operands live in different contexts".into())
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Ctx, c: Coefficient) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn from_int(ctx: &Ctx, v: i64) -> Self {
        Self::constant(ctx, Coefficient::from(v))
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn var_index(ctx: &Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), i, 1), Coefficient::one())
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        let i = ctx.var_index(name).ok_or_else(|| Error::UndeclaredIdentifier(name.into()))?;
        Ok(Self::var_index(ctx, i))
    }

    pub fn param(ctx: &Ctx, name: &str) -> Result<Self> {
        let i = ctx.param_index(name).ok_or_else(|| Error::UndeclaredIdentifier(name.into()))?;
        Ok(Self::constant(ctx, Coefficient::param(i, ctx)?))
    }

    pub fn from_terms(ctx: &Ctx, it: impl IntoIterator<Item = (Monomial, Coefficient)>) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            if m.arity() != ctx.nvars() {
                return Err(Error::ContextMismatch("monomial arity differs from context".into()));
            }
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coefficient> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Coefficient> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if the polynomial involves no variables.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coefficient) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c, &self.ctx)?;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(mismatch());
        }
        let (mut r, other) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone())?;
        }
        Ok(r)
    }

    pub fn checked_neg(&self) -> Self {
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.checked_neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(mismatch());
        }
        let mut r = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.checked_mul(mb)?, ca.mul(cb, &self.ctx)?)?;
            }
        }
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (m, v) in &self.terms {
                terms.insert(m.clone(), v.mul(c, &self.ctx)?);
            }
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Result<Self> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (k, v) in &self.terms {
                terms.insert(k.checked_mul(m)?, v.mul(c, &self.ctx)?);
            }
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// Simultaneous substitution. Variables without a binding map to the
    /// variable of the same name in `target`; parameters are matched by name.
    pub fn substitute(&self, bindings: &[(&str, Polynomial)], target: &Ctx) -> Result<Self> {
        for (name, p) in bindings {
            if self.ctx.var_index(name).is_none() {
                return Err(Error::UndeclaredIdentifier((*name).into()));
            }
            if !same_ctx(p.ctx(), target) {
                return Err(Error::ContextMismatch(format!("binding for `{name}` is not in the target context")));
            }
        }
        let pmap = param_map(&self.ctx, target)?;
        enum Img {
            Var(usize),
            Poly(Polynomial),
        }
        let mut imgs = Vec::with_capacity(self.ctx.nvars());
        for v in self.ctx.vars() {
            if let Some((_, p)) = bindings.iter().find(|(n, _)| *n == v.name) {
                imgs.push(Img::Poly(p.clone()));
            } else {
                let j = target.var_index(&v.name).ok_or_else(|| {
                    Error::ContextMismatch(format!("variable `{}` is missing from the target context", v.name))
                })?;
                imgs.push(Img::Var(j));
            }
        }
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let c = c.remap(&pmap, target)?;
            let mut mono = vec![0u32; target.nvars()];
            let mut prod: Option<Polynomial> = None;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &imgs[i] {
                    Img::Var(j) => mono[*j] = mono[*j].checked_add(e).ok_or(Error::ExponentOverflow)?,
                    Img::Poly(p) => {
                        let pw = match cache.get(&(i, e)) {
                            Some(x) => x.clone(),
                            None => {
                                let x = p.pow(e)?;
                                cache.insert((i, e), x.clone());
                                x
                            }
                        };
                        prod = Some(match prod {
                            None => pw,
                            Some(q) => q.checked_mul(&pw)?,
                        });
                    }
                }
            }
            let base = prod.unwrap_or_else(|| Self::one(target));
            let t = base.mul_term(&Monomial(mono), &c)?;
            for (k, v) in t.terms {
                out.add_term(k, v)?;
            }
        }
        Ok(out)
    }

    /// Same polynomial viewed in a context that contains all its names.
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        if same_ctx(&self.ctx, target) {
            return Ok(Polynomial { ctx: target.clone(), terms: self.terms.clone() });
        }
        self.substitute(&[], target)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        let i = self.ctx.var_index(var).ok_or_else(|| Error::UndeclaredIdentifier(var.into()))?;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial(ex), c.mul(&Coefficient::from(e as i64), &self.ctx)?)?;
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(|m| m.degree()).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in the given variables only.
    pub fn degree_in_vars(&self, idx: &[usize]) -> Degree {
        self.terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.exps()[i] as u64).sum::<u64>())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.degree_in_vars(&[var])
    }

    pub fn degrees(&self) -> Degrees {
        let blocks = (0..self.ctx.num_blocks())
            .map(|b| {
                let idx: Vec<usize> =
                    self.ctx.vars().iter().enumerate().filter(|(_, v)| v.block == b).map(|(i, _)| i).collect();
                self.degree_in_vars(&idx)
            })
            .collect();
        Degrees { total: self.total_degree(), blocks }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Adds `new_var` (in block 0) and pads every term to the total degree.
    pub fn homogenize(&self, new_var: &str) -> Result<Self> {
        let block = self.ctx.vars().first().map_or(0, |v| v.block);
        let ctx = self.ctx.extend(&[Variable { name: new_var.into(), block }], &[])?;
        let d = self.total_degree().finite().unwrap_or(0);
        let h = ctx.nvars() - 1;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut ex = m.exps().to_vec();
            ex.push(u32::try_from(d - m.degree()).map_err(|_| Error::ExponentOverflow)?);
            debug_assert_eq!(ex.len(), h + 1);
            terms.insert(Monomial(ex), c.clone());
        }
        Ok(Polynomial { ctx, terms })
    }

    /// One new variable per block, each homogenizing its own block.
    pub fn homogenize_blocks(&self, new_vars: &[&str]) -> Result<Self> {
        let nb = self.ctx.num_blocks();
        if new_vars.len() != nb {
            return Err(Error::Precondition(format!("need {nb} homogenizing variables, got {}", new_vars.len())));
        }
        let extra: Vec<Variable> =
            new_vars.iter().enumerate().map(|(b, n)| Variable { name: (*n).into(), block: b }).collect();
        let ctx = self.ctx.extend(&extra, &[])?;
        let degs = self.degrees();
        let blocks: Vec<usize> = self.ctx.vars().iter().map(|v| v.block).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut per = vec![0u64; nb];
            for (i, &e) in m.exps().iter().enumerate() {
                per[blocks[i]] += e as u64;
            }
            let mut ex = m.exps().to_vec();
            for (db, pb) in degs.blocks.iter().zip(&per) {
                let db = db.finite().unwrap_or(0);
                ex.push(u32::try_from(db - pb).map_err(|_| Error::ExponentOverflow)?);
            }
            terms.insert(Monomial(ex), c.clone());
        }
        Ok(Polynomial { ctx, terms })
    }

    /// Sets `var = 1` and removes it from the context.
    pub fn dehomogenize(&self, var: &str) -> Result<Self> {
        let i = self.ctx.var_index(var).ok_or_else(|| Error::UndeclaredIdentifier(var.into()))?;
        let ctx = self.ctx.without_var(i);
        let mut out = Self::zero(&ctx);
        for (m, c) in &self.terms {
            let mut ex = m.exps().to_vec();
            ex.remove(i);
            out.add_term(Monomial(ex), c.clone())?;
        }
        Ok(out)
    }

    /// Substitutes rational values for parameters; the context is unchanged.
    pub fn specialize_params(&self, bindings: &[(&str, BigRational)]) -> Result<Self> {
        let mut values = vec![None; self.ctx.nparams()];
        for (name, v) in bindings {
            let i = self.ctx.param_index(name).ok_or_else(|| Error::UndeclaredIdentifier((*name).into()))?;
            values[i] = Some(v.clone());
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.specialize(&values, &self.ctx)?)?;
        }
        Ok(out)
    }

    pub fn monomial_divides_all_terms(&self, m: &Monomial) -> bool {
        self.terms.keys().all(|t| m.divides(t))
    }

    /// Indices of variables that occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.ctx.nvars()).filter(|&i| self.terms.keys().any(|m| m.exps()[i] > 0)).collect()
    }

    /// Parameters that occur in some coefficient.
    pub fn params_used(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.values().flat_map(|c| c.param_support()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Writes the polynomial as `sum_k c_k var^k` with `c_k` free of `var`.
    pub fn collect_in(&self, var: usize) -> Result<BTreeMap<u32, Polynomial>> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            let mut ex = m.exps().to_vec();
            ex[var] = 0;
            out.entry(e).or_insert_with(|| Self::zero(&self.ctx)).add_term(Monomial(ex), c.clone())?;
        }
        Ok(out)
    }
}

/// Position of each source parameter in the target context.
pub(crate) fn param_map(src: &Ctx, target: &Ctx) -> Result<Vec<usize>> {
    src.params()
        .iter()
        .map(|p| {
            let j = target.param_index(&p.name).ok_or_else(|| {
                Error::ContextMismatch(format!("parameter `{}` is missing from the target context", p.name))
            })?;
            if target.params()[j].rewrite != p.rewrite {
                return Err(Error::ContextMismatch(format!("parameter `{}` has a different rewrite", p.name)));
            }
            Ok(j)
        })
        .collect()
}

/// Binary ring operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn ring_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
    }
}

// Operator sugar; these panic on context mismatch or exponent overflow.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.checked_add(o).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.checked_sub(o).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.checked_mul(o).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.checked_neg()
    }
}
