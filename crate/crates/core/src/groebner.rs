//! Division, S-polynomials, Buchberger completion, ideal membership (also in
//! localizations), projective closure checks and isomorphism chains.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ordering::{leading_monomial, pairwise_coprime, MonomialOrder};
use crate::polyring::{
    context_from_json, parse_poly, poly_to_json, Coefficient, ContextJson, Ctx, Monomial, PolyJson, Polynomial,
    Variable,
};
use crate::{Error, Result};

/// Caps applied to Buchberger runs. A step is one S-pair reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: usize,
    pub max_terms: usize,
    pub parallel: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 10_000, max_terms: 1_000_000, parallel: false }
    }
}

type Key = Vec<u64>;

/// Polynomial stored as order keys, largest first.
#[derive(Clone, Debug)]
struct KPoly {
    terms: Vec<(Key, Coefficient)>,
}

impl KPoly {
    fn from_poly(f: &Polynomial, order: &MonomialOrder) -> KPoly {
        let mut terms: Vec<(Key, Coefficient)> = f.terms().iter().map(|(m, c)| (order.key(m), c.clone())).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        KPoly { terms }
    }

    fn from_map(map: BTreeMap<Key, Coefficient>) -> KPoly {
        KPoly { terms: map.into_iter().rev().collect() }
    }

    fn to_poly(&self, order: &MonomialOrder) -> Result<Polynomial> {
        Polynomial::from_terms(
            order.ctx(),
            self.terms.iter().map(|(k, c)| (order.monomial_from_key(k), c.clone())),
        )
    }

    fn lead(&self) -> &Key {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monic(mut self, ctx: &Ctx) -> Result<KPoly> {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv(ctx)?;
                for t in &mut self.terms {
                    t.1 = t.1.mul(&inv, ctx)?;
                }
            }
        }
        Ok(self)
    }
}

fn key_divides(a: &[u64], b: &[u64], off: usize) -> bool {
    a[off..].iter().zip(&b[off..]).all(|(x, y)| x <= y)
}

fn key_sub(b: &[u64], a: &[u64]) -> Key {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn key_add(a: &[u64], b: &[u64]) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn key_lcm(a: &[u64], b: &[u64], order: &MonomialOrder) -> Key {
    let ma = order.monomial_from_key(a);
    let mb = order.monomial_from_key(b);
    order.key(&ma.lcm(&mb))
}

fn key_coprime(a: &[u64], b: &[u64], off: usize) -> bool {
    a[off..].iter().zip(&b[off..]).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_scaled(
    p: &mut BTreeMap<Key, Coefficient>,
    g: &KPoly,
    shift: &[u64],
    q: &Coefficient,
    skip_lead: bool,
    ctx: &Ctx,
) -> Result<()> {
    for (k, c) in g.terms.iter().skip(usize::from(skip_lead)) {
        let key = key_add(k, shift);
        let delta = c.mul(q, ctx)?;
        match p.get_mut(&key) {
            Some(v) => {
                let s = v.sub(&delta, ctx)?;
                if s.is_zero() {
                    p.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                p.insert(key, delta.neg());
            }
        }
    }
    Ok(())
}

/// Full reduction of `p` by `divs`: each leading term is cancelled by the first
/// divisor whose leading monomial divides it, otherwise moved to the remainder.
fn reduce(
    mut p: BTreeMap<Key, Coefficient>,
    divs: &[KPoly],
    order: &MonomialOrder,
    limits: &Limits,
    mut quotients: Option<&mut Vec<BTreeMap<Key, Coefficient>>>,
) -> Result<BTreeMap<Key, Coefficient>> {
    let ctx = order.ctx();
    let off = order.key_offset();
    let mut rem = BTreeMap::new();
    while let Some((k, c)) = p.pop_last() {
        match divs.iter().position(|g| !g.is_zero() && key_divides(g.lead(), &k, off)) {
            Some(i) => {
                let g = &divs[i];
                let q = c.div(&g.terms[0].1, ctx)?;
                let shift = key_sub(&k, g.lead());
                sub_scaled(&mut p, g, &shift, &q, true, ctx)?;
                if let Some(qs) = quotients.as_deref_mut() {
                    let e = qs[i].entry(shift).or_insert_with(Coefficient::zero);
                    *e = e.add(&q, ctx)?;
                }
                if p.len() > limits.max_terms {
                    return Err(Error::ResourceLimit(format!("more than {} terms during reduction", limits.max_terms)));
                }
            }
            None => {
                rem.insert(k, c);
            }
        }
    }
    Ok(rem)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn check_ctx(fs: &[&Polynomial], order: &MonomialOrder) -> Result<()> {
    for f in fs {
        if !crate::polyring::same_ctx(f.ctx(), order.ctx()) {
            return Err(Error::ContextMismatch("polynomial and order use different contexts".into()));
        }
    }
    Ok(())
}

/// Multivariate division with `f = sum q_i g_i + r` and no term of `r`
/// divisible by any leading monomial.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<DivisionResult> {
    let mut all: Vec<&Polynomial> = divisors.iter().collect();
    all.push(f);
    check_ctx(&all, order)?;
    let divs: Vec<KPoly> = divisors.iter().map(|g| KPoly::from_poly(g, order)).collect();
    let mut qs = vec![BTreeMap::new(); divs.len()];
    let p: BTreeMap<Key, Coefficient> = f.terms().iter().map(|(m, c)| (order.key(m), c.clone())).collect();
    let limits = Limits { max_terms: usize::MAX, ..Limits::default() };
    let rem = reduce(p, &divs, order, &limits, Some(&mut qs))?;
    Ok(DivisionResult {
        quotients: qs.into_iter().map(|q| KPoly::from_map(q).to_poly(order)).collect::<Result<_>>()?,
        remainder: KPoly::from_map(rem).to_poly(order)?,
    })
}

fn spoly_k(f: &KPoly, g: &KPoly, order: &MonomialOrder) -> Result<BTreeMap<Key, Coefficient>> {
    let ctx = order.ctx();
    let l = key_lcm(f.lead(), g.lead(), order);
    let mut p = BTreeMap::new();
    let cf = f.terms[0].1.inv(ctx)?;
    let cg = g.terms[0].1.inv(ctx)?;
    sub_scaled(&mut p, f, &key_sub(&l, f.lead()), &cf.neg(), true, ctx)?;
    sub_scaled(&mut p, g, &key_sub(&l, g.lead()), &cg, true, ctx)?;
    Ok(p)
}

/// `lcm/LT(f) * f - lcm/LT(g) * g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    check_ctx(&[f, g], order)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (fk, gk) = (KPoly::from_poly(f, order), KPoly::from_poly(g, order));
    KPoly::from_map(spoly_k(&fk, &gk, order)?).to_poly(order)
}

/// Outcome of a Groebner test with the first pair that failed to reduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCheck {
    pub is_groebner: bool,
    pub failing_pair: Option<(usize, usize)>,
}

/// Reduces every S-pair (coprime leading monomials reduce to zero and are
/// skipped) and reports the first one with a nonzero remainder.
pub fn groebner_check(basis: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<GroebnerCheck> {
    check_ctx(&basis.iter().collect::<Vec<_>>(), order)?;
    let ks: Vec<KPoly> = basis.iter().filter(|g| !g.is_zero()).map(|g| KPoly::from_poly(g, order)).collect();
    let idx: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i].is_zero()).collect();
    let off = order.key_offset();
    let pairs: Vec<(usize, usize)> = (0..ks.len())
        .flat_map(|i| (i + 1..ks.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !key_coprime(ks[i].lead(), ks[j].lead(), off))
        .collect();
    if pairs.len() > limits.max_steps {
        return Err(Error::ResourceLimit(format!("{} S-pairs exceed the step limit", pairs.len())));
    }
    let run = |&(i, j): &(usize, usize)| -> Result<bool> {
        let s = spoly_k(&ks[i], &ks[j], order)?;
        Ok(reduce(s, &ks, order, limits, None)?.is_empty())
    };
    let results: Vec<Result<bool>> =
        if limits.parallel { pairs.par_iter().map(run).collect() } else { pairs.iter().map(run).collect() };
    for (pair, r) in pairs.iter().zip(results) {
        if !r? {
            return Ok(GroebnerCheck { is_groebner: false, failing_pair: Some((idx[pair.0], idx[pair.1])) });
        }
    }
    Ok(GroebnerCheck { is_groebner: true, failing_pair: None })
}

pub fn is_groebner(basis: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    Ok(groebner_check(basis, order, &Limits::default())?.is_groebner)
}

/// Buchberger with the normal selection strategy, the coprime criterion and
/// the chain criterion. Returns monic, not interreduced elements.
fn complete_k(gens: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<Vec<KPoly>> {
    let ctx = order.ctx();
    let off = order.key_offset();
    let mut g: Vec<KPoly> = Vec::new();
    for f in gens.iter().filter(|f| !f.is_zero()) {
        g.push(KPoly::from_poly(f, order).monic(ctx)?);
    }
    let mut pending: BTreeSet<(Key, usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((key_lcm(g[i].lead(), g[j].lead(), order), i, j));
        }
    }
    let mut live: BTreeSet<(usize, usize)> = pending.iter().map(|(_, i, j)| (*i, *j)).collect();
    let mut steps = 0usize;
    while let Some((lcm, i, j)) = pending.pop_first() {
        live.remove(&(i, j));
        if key_coprime(g[i].lead(), g[j].lead(), off) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && key_divides(g[k].lead(), &lcm, off)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > limits.max_steps {
            return Err(Error::ResourceLimit(format!("more than {} S-pair reductions", limits.max_steps)));
        }
        let r = reduce(spoly_k(&g[i], &g[j], order)?, &g, order, limits, None)?;
        if r.is_empty() {
            continue;
        }
        let new = KPoly::from_map(r).monic(ctx)?;
        let n = g.len();
        g.push(new);
        for k in 0..n {
            pending.insert((key_lcm(g[k].lead(), g[n].lead(), order), k, n));
            live.insert((k, n));
        }
        let total: usize = g.iter().map(|p| p.terms.len()).sum();
        if total > limits.max_terms {
            return Err(Error::ResourceLimit(format!("basis exceeds {} terms", limits.max_terms)));
        }
    }
    Ok(g)
}

fn interreduce(g: Vec<KPoly>, order: &MonomialOrder, limits: &Limits) -> Result<Vec<KPoly>> {
    let off = order.key_offset();
    let mut keep: Vec<KPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && key_divides(q.lead(), p.lead(), off) && (q.lead() != p.lead() || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<KPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let map: BTreeMap<Key, Coefficient> = keep[i].terms.iter().cloned().collect();
        let r = reduce(map, &others, order, limits, None)?;
        out.push(KPoly::from_map(r).monic(order.ctx())?);
    }
    out.sort_by(|a, b| b.lead().cmp(a.lead()));
    Ok(out)
}

/// Reduced Groebner basis, sorted by decreasing leading monomial.
pub fn buchberger_complete(gens: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<Vec<Polynomial>> {
    check_ctx(&gens.iter().collect::<Vec<_>>(), order)?;
    let g = interreduce(complete_k(gens, order, limits)?, order, limits)?;
    g.iter().map(|p| p.to_poly(order)).collect()
}

/// Groebner basis of `I + (u_i s_i - 1)` kept for repeated membership tests.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    order: MonomialOrder,
    basis: Vec<KPoly>,
    limits: Limits,
}

impl IdealBasis {
    /// `inverted` lists elements made invertible with fresh variables that
    /// sit at the bottom of the priority.
    pub fn new(gens: &[Polynomial], inverted: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<Self> {
        let mut all: Vec<&Polynomial> = gens.iter().collect();
        all.extend(inverted.iter());
        check_ctx(&all, order)?;
        let (order, gens) = if inverted.is_empty() {
            (order.clone(), gens.to_vec())
        } else {
            let names = order.ctx().fresh_indexed("u", inverted.len());
            let extra: Vec<Variable> = names.iter().map(|n| Variable { name: n.clone(), block: 0 }).collect();
            let ext = order.ctx().extend(&extra, &[])?;
            let ord = order.extended(&ext)?;
            let mut g: Vec<Polynomial> = gens.iter().map(|f| f.embed(&ext)).collect::<Result<_>>()?;
            for (s, n) in inverted.iter().zip(&names) {
                let u = Polynomial::var(&ext, n)?;
                g.push(&(&u * &s.embed(&ext)?) - &Polynomial::one(&ext));
            }
            (ord, g)
        };
        let basis = complete_k(&gens, &order, limits)?;
        Ok(IdealBasis { order, basis, limits: *limits })
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let f = f.embed(self.order.ctx())?;
        let map: BTreeMap<Key, Coefficient> = f.terms().iter().map(|(m, c)| (self.order.key(m), c.clone())).collect();
        Ok(reduce(map, &self.basis, &self.order, &self.limits, None)?.is_empty())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|p| p.lead().iter().all(|&e| e == 0))
    }
}

pub fn ideal_member(f: &Polynomial, gens: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<bool> {
    IdealBasis::new(gens, &[], order, limits)?.contains(f)
}

/// Membership in `I A_S`, with `S` generated by `inverted`.
pub fn ideal_member_localized(
    f: &Polynomial,
    gens: &[Polynomial],
    inverted: &[Polynomial],
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<bool> {
    IdealBasis::new(gens, inverted, order, limits)?.contains(f)
}

/// Report of the projective-closure check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub coprime: bool,
    pub offending: Option<(usize, usize)>,
    pub homogenized: Vec<Polynomial>,
    pub order: Option<MonomialOrder>,
    pub samples: Vec<(Polynomial, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleJson {
    pub poly: PolyJson,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReportJson {
    pub coprime: bool,
    pub offending: Option<(usize, usize)>,
    pub homogenized: Vec<PolyJson>,
    pub samples: Vec<SampleJson>,
}

impl ClosureReport {
    pub fn to_json(&self) -> ClosureReportJson {
        ClosureReportJson {
            coprime: self.coprime,
            offending: self.offending,
            homogenized: self.homogenized.iter().map(poly_to_json).collect(),
            samples: self.samples.iter().map(|(p, b)| SampleJson { poly: poly_to_json(p), pass: *b }).collect(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.coprime && self.samples.iter().all(|s| s.1)
    }
}

/// Homogenizes generators with pairwise coprime leading monomials and checks
/// that the homogenizations of the given ideal elements lie in the ideal they
/// generate. Non-coprime leaders stop the check immediately.
pub fn projective_closure_basis(
    gens: &[Polynomial],
    order: &MonomialOrder,
    samples: &[Polynomial],
    limits: &Limits,
) -> Result<ClosureReport> {
    if !order.is_graded() {
        return Err(Error::Precondition("the order must be graded".into()));
    }
    let mut all: Vec<&Polynomial> = gens.iter().collect();
    all.extend(samples.iter());
    check_ctx(&all, order)?;
    for g in gens {
        if g.total_degree().finite().unwrap_or(0) == 0 {
            return Err(Error::Precondition("generators must have positive degree".into()));
        }
    }
    let lms: Vec<Monomial> = gens.iter().map(|g| leading_monomial(g, order).map(|x| x.0)).collect::<Result<_>>()?;
    let verdict = pairwise_coprime(&lms);
    if !verdict.coprime {
        return Ok(ClosureReport {
            coprime: false,
            offending: verdict.offending,
            homogenized: vec![],
            order: None,
            samples: vec![],
        });
    }
    let h = order.ctx().fresh_name("x0");
    let homog: Vec<Polynomial> = gens.iter().map(|g| g.homogenize(&h)).collect::<Result<_>>()?;
    let hctx = order.ctx().extend(&[Variable { name: h.clone(), block: 0 }], &[])?;
    let homog: Vec<Polynomial> = homog.iter().map(|g| g.embed(&hctx)).collect::<Result<_>>()?;
    let horder = order.homogenized(&hctx, &h)?;
    let basis = IdealBasis::new(&homog, &[], &horder, limits)?;
    let run = |s: &Polynomial| -> Result<(Polynomial, bool)> {
        let sh = s.homogenize(&h)?.embed(&hctx)?;
        let ok = basis.contains(&sh)?;
        Ok((sh, ok))
    };
    let results: Vec<Result<(Polynomial, bool)>> =
        if limits.parallel { samples.par_iter().map(run).collect() } else { samples.iter().map(run).collect() };
    Ok(ClosureReport {
        coprime: true,
        offending: None,
        homogenized: homog,
        order: Some(horder),
        samples: results.into_iter().collect::<Result<_>>()?,
    })
}

/// Deterministic elements `sum r_i g_i` with small random multipliers.
pub fn random_ideal_elements(gens: &[Polynomial], count: usize, seed: u64) -> Result<Vec<Polynomial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(first) = gens.first() else { return Ok(vec![]) };
    let ctx = first.ctx().clone();
    let n = ctx.nvars();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut h = Polynomial::zero(&ctx);
        for g in gens {
            let mut r = Polynomial::zero(&ctx);
            for _ in 0..rng.gen_range(1..=2) {
                let mut e = vec![0u32; n];
                if n > 0 && rng.gen_bool(0.7) {
                    e[rng.gen_range(0..n)] = 1;
                }
                let c = loop {
                    let c: i64 = rng.gen_range(-3..=3);
                    if c != 0 {
                        break c;
                    }
                };
                r.add_term(Monomial::new(e), Coefficient::from(c))?;
            }
            h = h.checked_add(&r.checked_mul(g)?)?;
        }
        out.push(h);
    }
    Ok(out)
}

/// One link of an isomorphism chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainStep {
    /// Substitutes `var -> num/den` into every source polynomial, clears the
    /// denominators, strips powers of the declared denominator variables and
    /// compares the resulting set with `target` up to scalars.
    Substitution {
        label: String,
        source_ctx: ContextJson,
        source: Vec<String>,
        target_ctx: ContextJson,
        target: Vec<String>,
        bindings: Vec<RationalBinding>,
        #[serde(default)]
        denominators: Vec<String>,
    },
    /// Two-sided ideal membership after inverting `inverted`.
    Membership { label: String, ctx: ContextJson, left: Vec<String>, right: Vec<String>, inverted: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBinding {
    pub var: String,
    pub num: String,
    #[serde(default = "one_str")]
    pub den: String,
}

fn one_str() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoChain {
    pub steps: Vec<ChainStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub ok: bool,
    pub steps: Vec<StepReport>,
}

fn parse_all(src: &[String], ctx: &Ctx) -> Result<Vec<Polynomial>> {
    src.iter().map(|s| parse_poly(s, ctx)).collect()
}

/// Divides out the largest power of each listed variable dividing every
/// term, then scales to leading coefficient one.
fn normalize(f: &Polynomial, strip: &[usize]) -> Result<Option<Polynomial>> {
    if f.is_zero() {
        return Ok(None);
    }
    let n = f.ctx().nvars();
    let mut g = vec![0u32; n];
    for &v in strip {
        g[v] = f.terms().keys().map(|m| m.exps()[v]).min().unwrap_or(0);
    }
    let g = Monomial::new(g);
    let mut out = Polynomial::zero(f.ctx());
    for (m, c) in f.terms() {
        out.add_term(g.quotient_of(m).expect("gcd divides"), c.clone())?;
    }
    let order = MonomialOrder::grlex(f.ctx());
    let (_, lc) = leading_monomial(&out, &order)?;
    Ok(Some(out.scale(&lc.inv(f.ctx())?)?))
}

fn substitute_cleared(
    f: &Polynomial,
    bindings: &[(usize, Polynomial, Monomial)],
    target: &Ctx,
) -> Result<Polynomial> {
    let bound: Vec<Option<usize>> =
        (0..f.ctx().nvars()).map(|i| bindings.iter().position(|b| b.0 == i)).collect();
    let degs: Vec<u32> = (0..f.ctx().nvars()).map(|i| f.degree_in(i).finite().unwrap_or(0) as u32).collect();
    let mut out = Polynomial::zero(target);
    for (m, c) in f.terms() {
        let mono = Polynomial::monomial(f.ctx(), m.clone(), c.clone());
        let mut sub: Vec<(&str, Polynomial)> = Vec::new();
        let mut extra = Polynomial::one(target);
        for (i, b) in bound.iter().enumerate() {
            if let Some(b) = b {
                let (_, num, den) = &bindings[*b];
                sub.push((f.ctx().var_name(i), num.clone()));
                let pad = degs[i] - m.exps()[i];
                if pad > 0 {
                    let d = Polynomial::monomial(target, den.clone(), Coefficient::one()).pow(pad)?;
                    extra = extra.checked_mul(&d)?;
                }
            }
        }
        out = out.checked_add(&mono.substitute(&sub, target)?.checked_mul(&extra)?)?;
    }
    Ok(out)
}

fn sorted_strings(v: &[Polynomial]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(crate::polyring::format_poly).collect();
    s.sort();
    s
}

fn verify_step(step: &ChainStep, limits: &Limits) -> Result<StepReport> {
    match step {
        ChainStep::Substitution { label, source_ctx, source, target_ctx, target, bindings, denominators } => {
            let sctx = context_from_json(source_ctx)?;
            let tctx = context_from_json(target_ctx)?;
            let src = parse_all(source, &sctx)?;
            let tgt = parse_all(target, &tctx)?;
            let dens = parse_all(denominators, &tctx)?;
            let mut allowed = vec![false; tctx.nvars()];
            for d in &dens {
                if d.len() != 1 || !d.terms().values().next().unwrap().is_one() {
                    return Err(Error::Malformed(format!("denominator `{d}` must be a monic monomial")));
                }
                for v in d.vars_used() {
                    allowed[v] = true;
                }
            }
            let mut bs = Vec::new();
            for b in bindings {
                let i = sctx.var_index(&b.var).ok_or_else(|| Error::UndeclaredIdentifier(b.var.clone()))?;
                let num = parse_poly(&b.num, &tctx)?;
                let den = parse_poly(&b.den, &tctx)?;
                if den.len() != 1 || !den.terms().values().next().unwrap().is_one() {
                    return Err(Error::Malformed(format!("denominator of `{}` must be a monic monomial", b.var)));
                }
                let dm = den.terms().keys().next().unwrap().clone();
                if den.vars_used().iter().any(|&v| !allowed[v]) {
                    return Err(Error::Malformed(format!("denominator of `{}` is not declared", b.var)));
                }
                bs.push((i, num, dm));
            }
            let strip: Vec<usize> = (0..tctx.nvars()).filter(|&v| allowed[v]).collect();
            let mut got = Vec::new();
            for f in &src {
                if let Some(g) = normalize(&substitute_cleared(f, &bs, &tctx)?, &strip)? {
                    got.push(g);
                }
            }
            let mut want = Vec::new();
            for f in &tgt {
                if let Some(g) = normalize(f, &strip)? {
                    want.push(g);
                }
            }
            let (a, b) = (sorted_strings(&got), sorted_strings(&want));
            let ok = a == b;
            let detail = if ok { "images match".to_string() } else { format!("images {a:?} differ from {b:?}") };
            Ok(StepReport { label: label.clone(), ok, detail })
        }
        ChainStep::Membership { label, ctx, left, right, inverted } => {
            let c = context_from_json(ctx)?;
            let (l, r, inv) = (parse_all(left, &c)?, parse_all(right, &c)?, parse_all(inverted, &c)?);
            let order = MonomialOrder::grlex(&c);
            let lb = IdealBasis::new(&l, &inv, &order, limits)?;
            let rb = IdealBasis::new(&r, &inv, &order, limits)?;
            let mut missing = Vec::new();
            for f in &r {
                if !lb.contains(f)? {
                    missing.push(format!("{f} not in left ideal"));
                }
            }
            for f in &l {
                if !rb.contains(f)? {
                    missing.push(format!("{f} not in right ideal"));
                }
            }
            let ok = missing.is_empty();
            let detail = if ok { "ideals agree".into() } else { missing.join("; ") };
            Ok(StepReport { label: label.clone(), ok, detail })
        }
    }
}

/// Checks every step; the chain passes when all steps pass.
pub fn verify_iso_chain(chain: &IsoChain, limits: &Limits) -> Result<ChainReport> {
    let steps = chain.steps.iter().map(|s| verify_step(s, limits)).collect::<Result<Vec<_>>>()?;
    Ok(ChainReport { ok: !steps.is_empty() && steps.iter().all(|s| s.ok), steps })
}

#[cfg(test)]
mod tests;
