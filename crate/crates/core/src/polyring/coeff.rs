use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::VarContext;
use crate::{Error, Result};

/// Integer polynomial in the parameters; keys are parameter exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Graded lex on parameter exponents, first parameter highest.
pub(crate) fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_exps(a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow)).collect()
}

fn rat_clear(map: BTreeMap<Vec<u32>, BigRational>) -> (PPoly, BigInt) {
    let mut l = BigInt::one();
    for c in map.values() {
        l = l.lcm(c.denom());
    }
    let mut terms = BTreeMap::new();
    for (k, c) in map {
        if !c.is_zero() {
            terms.insert(k, c.numer() * (&l / c.denom()));
        }
    }
    (PPoly { terms }, l)
}

impl PPoly {
    pub fn zero() -> Self {
        PPoly::default()
    }

    pub fn constant(c: BigInt, nparams: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nparams], c);
        }
        PPoly { terms }
    }

    pub fn param(i: usize, nparams: usize) -> Self {
        let mut e = vec![0; nparams];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        PPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = PPoly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
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

    /// The value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                k.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, o: &PPoly) -> PPoly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> PPoly {
        PPoly { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &PPoly) -> PPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PPoly) -> Result<PPoly> {
        let mut r = PPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                r.add_term(add_exps(ka, kb)?, ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &BigInt) -> PPoly {
        if c.is_zero() {
            return PPoly::zero();
        }
        PPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Terms in descending graded lex order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn mono_gcd(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |g, k| g.iter().zip(k).map(|(a, b)| *a.min(b)).collect()))
    }

    fn div_mono(&self, m: &[u32]) -> PPoly {
        PPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    fn div_int(&self, d: &BigInt) -> PPoly {
        PPoly { terms: self.terms.iter().map(|(k, c)| (k.clone(), c / d)).collect() }
    }

    fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|k| k[i]).max().unwrap_or(0)
    }

    /// Exact quotient `self / d` over `Q`, returned as `(q, den)` with
    /// `self / d = q / den`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &PPoly) -> Option<(PPoly, BigInt)> {
        let (ld, lc) = d.leading()?;
        let lc = BigRational::from_integer(lc.clone());
        let mut r: BTreeMap<Vec<u32>, BigRational> = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), BigRational::from_integer(c.clone())))
            .collect();
        let mut q: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        let mut guard = 0usize;
        while let Some((lr, cr)) = r.iter().max_by(|a, b| grlex_cmp(a.0, b.0)) {
            guard += 1;
            if guard > 100_000 || !divides(ld, lr) {
                return None;
            }
            let qm: Vec<u32> = lr.iter().zip(ld).map(|(a, b)| a - b).collect();
            let qc = cr / &lc;
            for (k, c) in &d.terms {
                let key = add_exps(&qm, k).ok()?;
                let v = r.entry(key.clone()).or_insert_with(BigRational::zero);
                *v -= &qc * BigRational::from_integer(c.clone());
                if v.is_zero() {
                    r.remove(&key);
                }
            }
            *q.entry(qm).or_insert_with(BigRational::zero) += qc;
        }
        Some(rat_clear(q))
    }

    /// Reduces algebraic parameters below their rewrite exponent.
    /// Returns `(p, den)` with `self = p / den`.
    pub fn rewrite(&self, ctx: &VarContext) -> (PPoly, BigInt) {
        let rules: Vec<(usize, u32, &BigRational)> = ctx
            .params()
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.rewrite.as_ref().map(|r| (i, r.exp, &r.to)))
            .collect();
        if rules.iter().all(|&(i, e, _)| self.degree_in(i) < e) {
            return (self.clone(), BigInt::one());
        }
        let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut key = k.clone();
            let mut v = BigRational::from_integer(c.clone());
            for &(i, e, to) in &rules {
                let q = key[i] / e;
                key[i] %= e;
                if q > 0 {
                    v *= num_traits::pow(to.clone(), q as usize);
                }
            }
            *map.entry(key).or_insert_with(BigRational::zero) += v;
        }
        rat_clear(map)
    }

    /// Substitutes rational values for some parameters. Returns `(p, den)`.
    pub fn specialize(&self, values: &[Option<BigRational>]) -> (PPoly, BigInt) {
        let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut key = k.clone();
            let mut v = BigRational::from_integer(c.clone());
            for (i, val) in values.iter().enumerate() {
                if let Some(val) = val {
                    if key[i] > 0 {
                        v *= num_traits::pow(val.clone(), key[i] as usize);
                        key[i] = 0;
                    }
                }
            }
            *map.entry(key).or_insert_with(BigRational::zero) += v;
        }
        rat_clear(map)
    }

    /// Moves parameter `i` to position `map[i]` in a context with `n` parameters.
    pub fn remap(&self, map: &[usize], n: usize) -> PPoly {
        PPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut e = vec![0; n];
                    for (i, &x) in k.iter().enumerate() {
                        e[map[i]] = x;
                    }
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Indices of parameters that occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.terms.keys().next().map_or(0, |k| k.len());
        (0..n).filter(|&i| self.degree_in(i) > 0).collect()
    }
}

/// Element of `Q(params)`, modulo the algebraic relations of the context.
#[derive(Clone, Debug)]
pub enum Coefficient {
    Rational(BigRational),
    Fraction { num: PPoly, den: PPoly },
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => a == b,
            (Coefficient::Fraction { num: a, den: b }, Coefficient::Fraction { num: c, den: d }) => {
                (a == c && b == d)
                    || match (a.mul(d), c.mul(b)) {
                        (Ok(x), Ok(y)) => x == y,
                        _ => false,
                    }
            }
            _ => false,
        }
    }
}

impl Eq for Coefficient {}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient::Rational(r)
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient::Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigInt> for Coefficient {
    fn from(v: BigInt) -> Self {
        Coefficient::Rational(BigRational::from_integer(v))
    }
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Rational(BigRational::one())
    }

    pub fn param(i: usize, ctx: &VarContext) -> Result<Self> {
        Self::from_parts(PPoly::param(i, ctx.nparams()), PPoly::constant(BigInt::one(), ctx.nparams()), ctx)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Numerator and denominator with `n` parameter slots.
    pub fn parts(&self, n: usize) -> (PPoly, PPoly) {
        match self {
            Coefficient::Rational(r) => {
                (PPoly::constant(r.numer().clone(), n), PPoly::constant(r.denom().clone(), n))
            }
            Coefficient::Fraction { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Builds the canonical representative of `num / den`.
    pub fn from_parts(num: PPoly, den: PPoly, ctx: &VarContext) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (num, den);
        if ctx.has_rewrites() {
            let (n2, a) = num.rewrite(ctx);
            let (d2, b) = den.rewrite(ctx);
            if d2.is_zero() {
                return Err(Error::DivisionByZero);
            }
            num = n2.scale(&b);
            den = d2.scale(&a);
        }
        if num.is_zero() {
            return Ok(Coefficient::zero());
        }
        if let (Some(a), Some(b)) = (num.as_constant(), den.as_constant()) {
            return Ok(Coefficient::Rational(BigRational::new(a, b)));
        }
        if den.len() > 1 {
            if let Some((q, d)) = num.exact_div(&den) {
                num = q;
                den = PPoly::constant(d, ctx.nparams());
            }
        }
        if let (Some(gn), Some(gd)) = (num.mono_gcd(), den.mono_gcd()) {
            let g: Vec<u32> = gn.iter().zip(&gd).map(|(a, b)| *a.min(b)).collect();
            if g.iter().any(|&e| e > 0) {
                num = num.div_mono(&g);
                den = den.div_mono(&g);
            }
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() && !c.is_zero() {
            num = num.div_int(&c);
            den = den.div_int(&c);
        }
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        if let (Some(a), Some(b)) = (num.as_constant(), den.as_constant()) {
            return Ok(Coefficient::Rational(BigRational::new(a, b)));
        }
        Ok(Coefficient::Fraction { num, den })
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Fraction { num, den } => Coefficient::Fraction { num: num.neg(), den: den.clone() },
        }
    }

    pub fn add(&self, o: &Self, ctx: &VarContext) -> Result<Self> {
        if let (Coefficient::Rational(a), Coefficient::Rational(b)) = (self, o) {
            return Ok(Coefficient::Rational(a + b));
        }
        let n = ctx.nparams();
        let (a, b) = self.parts(n);
        let (c, d) = o.parts(n);
        if b == d {
            return Self::from_parts(a.add(&c), b, ctx);
        }
        if !b.is_monomial() || !d.is_monomial() {
            if let Some((k, s)) = b.exact_div(&d) {
                // b = d * k / s
                let num = a.scale(&s).add(&c.mul(&k)?);
                return Self::from_parts(num, b.scale(&s), ctx);
            }
            if let Some((k, s)) = d.exact_div(&b) {
                let num = a.mul(&k)?.add(&c.scale(&s));
                return Self::from_parts(num, d.scale(&s), ctx);
            }
        }
        Self::from_parts(a.mul(&d)?.add(&c.mul(&b)?), b.mul(&d)?, ctx)
    }

    pub fn sub(&self, o: &Self, ctx: &VarContext) -> Result<Self> {
        self.add(&o.neg(), ctx)
    }

    pub fn mul(&self, o: &Self, ctx: &VarContext) -> Result<Self> {
        match (self, o) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => return Ok(Coefficient::Rational(a * b)),
            (Coefficient::Rational(a), _) if a.is_zero() => return Ok(Coefficient::zero()),
            (_, Coefficient::Rational(b)) if b.is_zero() => return Ok(Coefficient::zero()),
            _ => {}
        }
        let n = ctx.nparams();
        let (mut a, mut b) = self.parts(n);
        let (mut c, mut d) = o.parts(n);
        cancel(&mut a, &mut d, n);
        cancel(&mut c, &mut b, n);
        Self::from_parts(a.mul(&c)?, b.mul(&d)?, ctx)
    }

    pub fn inv(&self, ctx: &VarContext) -> Result<Self> {
        match self {
            Coefficient::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Coefficient::Rational(r) => Ok(Coefficient::Rational(r.recip())),
            Coefficient::Fraction { num, den } => Self::from_parts(den.clone(), num.clone(), ctx),
        }
    }

    pub fn div(&self, o: &Self, ctx: &VarContext) -> Result<Self> {
        self.mul(&o.inv(ctx)?, ctx)
    }

    pub fn pow(&self, e: u32, ctx: &VarContext) -> Result<Self> {
        let mut acc = Coefficient::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx)?;
            }
        }
        Ok(acc)
    }

    /// Re-indexes parameters into a target context.
    pub fn remap(&self, map: &[usize], target: &VarContext) -> Result<Self> {
        match self {
            Coefficient::Rational(_) => Ok(self.clone()),
            Coefficient::Fraction { num, den } => {
                let n = target.nparams();
                Self::from_parts(num.remap(map, n), den.remap(map, n), target)
            }
        }
    }

    /// Substitutes rational values for the parameters marked `Some`.
    pub fn specialize(&self, values: &[Option<BigRational>], ctx: &VarContext) -> Result<Self> {
        match self {
            Coefficient::Rational(_) => Ok(self.clone()),
            Coefficient::Fraction { num, den } => {
                let (n, a) = num.specialize(values);
                let (d, b) = den.specialize(values);
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Self::from_parts(n.scale(&b), d.scale(&a), ctx)
            }
        }
    }

    /// Parameters the coefficient depends on.
    pub fn param_support(&self) -> Vec<usize> {
        match self {
            Coefficient::Rational(_) => vec![],
            Coefficient::Fraction { num, den } => {
                let mut s = num.support();
                s.extend(den.support());
                s.sort_unstable();
                s.dedup();
                s
            }
        }
    }

    /// Sign used when printing: sign of the rational value or of the
    /// numerator's leading coefficient.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Fraction { num, .. } => num.leading().is_some_and(|(_, c)| c.is_negative()),
        }
    }
}

/// Removes `d` from `a` when it divides exactly.
fn cancel(a: &mut PPoly, d: &mut PPoly, n: usize) {
    if d.as_constant().is_some() {
        return;
    }
    if let Some((q, s)) = a.exact_div(d) {
        *a = q;
        *d = PPoly::constant(s, n);
    }
}
