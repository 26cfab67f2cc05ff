//! Graded monomial orders: total degree first, ties broken lexicographically
//! along a priority permutation of the variables.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::polyring::{format_terms, Coefficient, Ctx, Monomial, Polynomial};
use crate::{Error, Result};

/// Graded order on the monomials of one context.
///
/// `priority[0]` is the highest variable. An optional homogenizing variable
/// `h` refines the tie-break: after total degree, the degree without `h` is
/// compared, then the remaining variables by priority, and `h` last. On
/// polynomials not involving `h` this is the underlying graded order, and
/// `LM(g^h) = LM(g)` for every homogenization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    ctx: Ctx,
    priority: Vec<usize>,
    hom: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub priority: Vec<String>,
}

impl MonomialOrder {
    /// Graded lex with declaration order as priority.
    pub fn grlex(ctx: &Ctx) -> Self {
        MonomialOrder { ctx: ctx.clone(), priority: (0..ctx.nvars()).collect(), hom: None }
    }

    pub fn with_priority<S: AsRef<str>>(ctx: &Ctx, names: &[S]) -> Result<Self> {
        let mut priority = Vec::with_capacity(names.len());
        for n in names {
            let i = ctx.var_index(n.as_ref()).ok_or_else(|| Error::UndeclaredIdentifier(n.as_ref().into()))?;
            if priority.contains(&i) {
                return Err(Error::Malformed(format!("`{}` repeated in priority", n.as_ref())));
            }
            priority.push(i);
        }
        if priority.len() != ctx.nvars() {
            return Err(Error::Malformed("priority must list every variable exactly once".into()));
        }
        Ok(MonomialOrder { ctx: ctx.clone(), priority, hom: None })
    }

    pub fn from_json(ctx: &Ctx, j: &OrderJson) -> Result<Self> {
        Self::with_priority(ctx, &j.priority)
    }

    pub fn to_json(&self) -> OrderJson {
        OrderJson { priority: self.priority_names() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn priority_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.priority.iter().map(|&i| self.ctx.var_name(i).to_string()).collect();
        if let Some(h) = self.hom {
            v.push(self.ctx.var_name(h).to_string());
        }
        v
    }

    pub fn homogenizing_var(&self) -> Option<usize> {
        self.hom
    }

    /// Every order here is graded.
    pub fn is_graded(&self) -> bool {
        true
    }

    /// Order on a larger context: known variables keep their relative
    /// priority, new ones follow in declaration order.
    pub fn extended(&self, target: &Ctx) -> Result<Self> {
        let mut priority = Vec::with_capacity(target.nvars());
        for &i in &self.priority {
            let name = self.ctx.var_name(i);
            priority.push(target.var_index(name).ok_or_else(|| Error::ContextMismatch(format!("`{name}` missing")))?);
        }
        let hom = match self.hom {
            Some(h) => Some(target.var_index(self.ctx.var_name(h)).ok_or_else(|| Error::ContextMismatch("homogenizing variable missing".into()))?),
            None => None,
        };
        for j in 0..target.nvars() {
            if !priority.contains(&j) && Some(j) != hom {
                priority.push(j);
            }
        }
        Ok(MonomialOrder { ctx: target.clone(), priority, hom })
    }

    /// Order on `target` = this context plus `hvar`, with `hvar` as the
    /// homogenizing variable.
    pub fn homogenized(&self, target: &Ctx, hvar: &str) -> Result<Self> {
        let h = target.var_index(hvar).ok_or_else(|| Error::UndeclaredIdentifier(hvar.into()))?;
        if self.hom.is_some() {
            return Err(Error::Precondition("order is already homogenized".into()));
        }
        let mut priority = Vec::with_capacity(target.nvars() - 1);
        for &i in &self.priority {
            let name = self.ctx.var_name(i);
            priority.push(target.var_index(name).ok_or_else(|| Error::ContextMismatch(format!("`{name}` missing")))?);
        }
        for j in 0..target.nvars() {
            if j != h && !priority.contains(&j) {
                priority.push(j);
            }
        }
        Ok(MonomialOrder { ctx: target.clone(), priority, hom: Some(h) })
    }

    /// Sort key; lexicographic comparison of keys is the order, and the key
    /// of a product is the sum of the keys.
    pub fn key(&self, m: &Monomial) -> Vec<u64> {
        let e = m.exps();
        let deg = m.degree();
        let mut k = Vec::with_capacity(e.len() + 2);
        k.push(deg);
        if let Some(h) = self.hom {
            k.push(deg - e[h] as u64);
        }
        k.extend(self.priority.iter().map(|&i| e[i] as u64));
        if let Some(h) = self.hom {
            k.push(e[h] as u64);
        }
        k
    }

    /// Offset of the exponent part inside a key.
    pub(crate) fn key_offset(&self) -> usize {
        if self.hom.is_some() {
            2
        } else {
            1
        }
    }

    /// Inverse of [`Self::key`].
    pub fn monomial_from_key(&self, k: &[u64]) -> Monomial {
        let off = self.key_offset();
        let mut e = vec![0u32; self.ctx.nvars()];
        for (pos, &i) in self.priority.iter().enumerate() {
            e[i] = k[off + pos] as u32;
        }
        if let Some(h) = self.hom {
            e[h] = k[k.len() - 1] as u32;
        }
        Monomial::new(e)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Terms sorted from largest to smallest.
    pub fn sorted_terms<'a>(&self, f: &'a Polynomial) -> Vec<(&'a Monomial, &'a Coefficient)> {
        let mut v: Vec<_> = f.terms().iter().map(|(m, c)| (self.key(m), m, c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// Formats `f` with terms in this order.
    pub fn format(&self, f: &Polynomial) -> String {
        format_terms(f, self.sorted_terms(f))
    }
}

pub fn compare(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
    order.compare(a, b)
}

/// Largest monomial of `f` with its coefficient.
pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Result<(Monomial, Coefficient)> {
    f.terms()
        .iter()
        .max_by(|a, b| order.compare(a.0, b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or(Error::ZeroPolynomial)
}

pub fn monomial_gcd(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    if a.arity() != b.arity() {
        return Err(Error::ContextMismatch("monomials of different arity".into()));
    }
    Ok(a.gcd(b))
}

/// Outcome of a pairwise coprimality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeVerdict {
    pub coprime: bool,
    pub offending: Option<(usize, usize)>,
}

/// Reports the first pair `(i, j)`, `i < j`, with a common variable.
pub fn pairwise_coprime(lms: &[Monomial]) -> CoprimeVerdict {
    for i in 0..lms.len() {
        for j in i + 1..lms.len() {
            if !lms[i].is_coprime(&lms[j]) {
                return CoprimeVerdict { coprime: false, offending: Some((i, j)) };
            }
        }
    }
    CoprimeVerdict { coprime: true, offending: None }
}

/// Leading monomials of a list of nonzero polynomials.
pub fn leading_monomials(fs: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Monomial>> {
    fs.iter().map(|f| leading_monomial(f, order).map(|(m, _)| m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, VarContext};

    fn lm_str(f: &str, ctx: &Ctx, o: &MonomialOrder) -> String {
        let p = parse_poly(f, ctx).unwrap();
        let (m, _) = leading_monomial(&p, o).unwrap();
        crate::polyring::format_poly(&Polynomial::monomial(ctx, m, Coefficient::one()))
    }

    #[test]
    fn leading_monomials_of_the_reference_triple() {
        let ctx = VarContext::from_names(&["x", "y"]).unwrap();
        let o = MonomialOrder::grlex(&ctx);
        assert_eq!(lm_str("3*x^2*y^3 + 6*x^3*y^2 - 5*x*y + 5", &ctx, &o), "x^3*y^2");
        assert_eq!(lm_str("x^5 + x^2*y^2 + y^3 + x*y - 1", &ctx, &o), "x^5");
        assert_eq!(lm_str("y^2 + y + 1", &ctx, &o), "y^2");
    }

    #[test]
    fn first_offending_pair() {
        let ctx = VarContext::from_names(&["x", "y"]).unwrap();
        let a = Monomial::new(vec![3, 2]);
        let b = Monomial::new(vec![5, 0]);
        let v = pairwise_coprime(&[a, b]);
        assert_eq!(v, CoprimeVerdict { coprime: false, offending: Some((0, 1)) });
        let _ = ctx;
    }

    #[test]
    fn lex_tiebreak_within_degree() {
        let ctx = VarContext::from_names(&["x1", "x2"]).unwrap();
        let o = MonomialOrder::grlex(&ctx);
        let a = Monomial::new(vec![1, 2]);
        let b = Monomial::new(vec![2, 1]);
        assert_eq!(o.compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn priority_changes_the_leader() {
        let ctx = VarContext::from_names(&["x", "y"]).unwrap();
        let o = MonomialOrder::with_priority(&ctx, &["y", "x"]).unwrap();
        assert_eq!(lm_str("x^2 + y^2", &ctx, &o), "y^2");
        assert!(MonomialOrder::with_priority(&ctx, &["y"]).is_err());
    }

    #[test]
    fn zero_has_no_leader() {
        let ctx = VarContext::from_names(&["x"]).unwrap();
        let o = MonomialOrder::grlex(&ctx);
        assert_eq!(leading_monomial(&Polynomial::zero(&ctx), &o), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn homogenized_order_keeps_affine_leaders() {
        let ctx = VarContext::from_names(&["x", "y"]).unwrap();
        let o = MonomialOrder::grlex(&ctx);
        let f = parse_poly("y^3 + x^2 + x", &ctx).unwrap();
        let fh = f.homogenize("h").unwrap();
        let oh = o.homogenized(fh.ctx(), "h").unwrap();
        let (m, _) = leading_monomial(&fh, &oh).unwrap();
        assert_eq!(m.exps(), &[0, 3, 0]);
        let key = oh.key(&m);
        assert_eq!(oh.monomial_from_key(&key), m);
    }

    fn all_monomials(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for _ in 0..nvars {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    let used: u32 = v.iter().sum();
                    (0..=maxdeg - used).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial::new).collect()
    }

    #[test]
    fn exhaustive_well_order_in_three_variables() {
        let ctx = VarContext::from_names(&["a", "b", "c"]).unwrap();
        for prio in [["a", "b", "c"], ["c", "a", "b"], ["b", "c", "a"]] {
            let o = MonomialOrder::with_priority(&ctx, &prio).unwrap();
            let mut ms = all_monomials(3, 6);
            ms.sort_by(|x, y| o.compare(x, y));
            assert!(ms[0].is_one());
            for w in ms.windows(2) {
                assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less);
                assert!(w[0].degree() <= w[1].degree());
            }
            let small = all_monomials(3, 3);
            for x in &small {
                for y in &small {
                    for z in &small {
                        let (xz, yz) = (x.checked_mul(z).unwrap(), y.checked_mul(z).unwrap());
                        assert_eq!(o.compare(x, y), o.compare(&xz, &yz));
                    }
                }
            }
        }
    }

    use proptest::prelude::*;

    fn arb(ctx: Ctx) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), 1i64..5), 1..5).prop_map(move |ts| {
            Polynomial::from_terms(
                &ctx,
                ts.into_iter().map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), Coefficient::from(k))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn leading_monomial_is_multiplicative(
            f in arb(VarContext::from_names(&["a", "b", "c"]).unwrap()),
            g in arb(VarContext::from_names(&["a", "b", "c"]).unwrap()),
        ) {
            let o = MonomialOrder::with_priority(f.ctx(), &["b", "a", "c"]).unwrap();
            let g = g.embed(f.ctx()).unwrap();
            let (lf, _) = leading_monomial(&f, &o).unwrap();
            let (lg, _) = leading_monomial(&g, &o).unwrap();
            let (lfg, _) = leading_monomial(&(&f * &g), &o).unwrap();
            prop_assert_eq!(lfg, lf.checked_mul(&lg).unwrap());
        }
    }
}
