//! Buchberger's algorithm over ℚ on content-free integer polynomials.
//!
//! Pairs are selected by lowest sugar degree (ties broken by the order on
//! lcm's and then by index), and the Gebauer–Möller update discards
//! redundant pairs. The result is the reduced basis, primitive with positive
//! leading coefficients, sorted by increasing leading monomial.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::ResourceError;

pub(crate) type Mono = SmallVec<[u32; 8]>;

/// Monomial orders understood by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// The first `block` variables are eliminated: compared first by
    /// graded reverse lex on that block, then graded reverse lex on the rest.
    Elimination { block: usize },
}

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination { block } => {
                grevlex(&a[..block], &b[..block]).then_with(|| grevlex(&a[block..], &b[block..]))
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted in decreasing order for the order the polynomial was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn from_terms(mut terms: Vec<(Mono, BigInt)>, order: MonomialOrder) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        // merge duplicates
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| deg(m)).max().unwrap_or(0)
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    pub fn resort(&mut self, order: MonomialOrder) {
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
}

/// `a·f − b·m·g`, both inputs sorted for `order`.
fn sub_scaled(f: &[(Mono, BigInt)], a: &BigInt, g: &[(Mono, BigInt)], b: &BigInt, m: &[u32], order: MonomialOrder) -> Vec<(Mono, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gm: Option<Mono> = g.first().map(|t| mono_mul(&t.0, m));
    while i < f.len() || j < g.len() {
        let ord = match (i < f.len(), &gm) {
            (true, Some(x)) => order.cmp(&f[i].0, x),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), &f[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), -(&g[j].1 * b)));
                j += 1;
                gm = g.get(j).map(|t| mono_mul(&t.0, m));
            }
            Ordering::Equal => {
                let c = &f[i].1 * a - &g[j].1 * b;
                let mono = gm.take().unwrap();
                if !c.is_zero() {
                    out.push((mono, c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| mono_mul(&t.0, m));
            }
        }
    }
    out
}

/// Full normal form of `p` modulo `basis`, up to a nonzero integer factor.
pub(crate) fn normal_form(p: &Poly, basis: &[&Poly], order: MonomialOrder) -> Poly {
    let mut cur = p.terms.clone();
    let mut rem: Vec<(Mono, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while !cur.is_empty() {
        let lead = cur[0].0.clone();
        match basis.iter().find(|g| divides(g.lm(), &lead)) {
            Some(g) => {
                let c = &cur[0].1;
                let d = c.gcd(g.lc());
                let a = g.lc() / &d;
                let b = c / &d;
                let q = mono_div(&lead, g.lm());
                let mut next = sub_scaled(&cur, &a, &g.terms, &b, &q, order);
                debug_assert!(next.first().is_none_or(|t| t.0 != lead));
                if !a.is_one() {
                    for t in &mut rem {
                        t.1 *= &a;
                    }
                }
                std::mem::swap(&mut cur, &mut next);
                steps += 1;
                if steps.is_multiple_of(16) {
                    shrink_content(&mut cur, &mut rem);
                }
            }
            None => {
                let t = cur.remove(0);
                rem.push(t);
            }
        }
    }
    let mut out = Poly { terms: rem };
    out.make_primitive();
    out
}

fn shrink_content(a: &mut [(Mono, BigInt)], b: &mut [(Mono, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in a.iter_mut().chain(b.iter_mut()) {
        *c /= &g;
    }
}

fn s_poly(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let l = mono_lcm(f.lm(), g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let mf = mono_div(&l, f.lm());
    let mg = mono_div(&l, g.lm());
    let fs: Vec<(Mono, BigInt)> = f.terms.iter().map(|(m, c)| (mono_mul(m, &mf), c.clone())).collect();
    let mut out = sub_scaled(&fs, &a, &g.terms, &b, &mg, order);
    if out.first().is_some_and(|t| t.0 == l) {
        out.remove(0);
    }
    Poly { terms: out }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

struct State {
    order: MonomialOrder,
    basis: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn active_refs(&self) -> Vec<&Poly> {
        self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, l: &[u32]) -> u32 {
        let si = self.sugar[i] + deg(l) - deg(self.basis[i].lm());
        let sj = self.sugar[j] + deg(l) - deg(self.basis[j].lm());
        si.max(sj)
    }

    /// Gebauer–Möller update after adding `h`.
    fn insert(&mut self, h: Poly, sugar: u32) {
        let hi = self.basis.len();
        let hlm = h.lm().clone();
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let mut cands: Vec<(usize, Mono)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, mono_lcm(&hlm, self.basis[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        while let Some((g1, l1)) = if cands.is_empty() { None } else { Some(cands.remove(0)) } {
            let disjoint = coprime(&hlm, self.basis[g1].lm());
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| divides(l2, &l1));
            if disjoint || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !coprime(&hlm, self.basis[*g].lm()))
            .map(|(g, l)| {
                let s = self.pair_sugar(g, hi, &l);
                Pair { i: g, j: hi, lcm: l, sugar: s }
            })
            .collect();

        let basis = &self.basis;
        self.pairs.retain(|p| {
            !divides(&hlm, &p.lcm)
                || mono_lcm(basis[p.i].lm(), &hlm) == p.lcm
                || mono_lcm(basis[p.j].lm(), &hlm) == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && divides(&hlm, self.basis[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn unit(nvars: usize) -> Vec<Poly> {
    vec![Poly { terms: vec![(SmallVec::from_elem(0, nvars), BigInt::one())] }]
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Fails once more than `budget` S-pairs have been reduced.
pub(crate) fn groebner(gens: Vec<Poly>, nvars: usize, order: MonomialOrder, budget: usize) -> Result<Vec<Poly>, ResourceError> {
    let mut st = State { order, basis: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    let mut gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    for g in &mut gens {
        g.resort(order);
        g.make_primitive();
    }
    gens.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    for g in gens {
        let h = normal_form(&g, &st.active_refs(), order);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(nvars));
        }
        let s = g.max_degree();
        st.insert(h, s);
    }

    let mut processed = 0usize;
    while let Some(p) = st.pop_pair() {
        processed += 1;
        if processed > budget {
            return Err(ResourceError::SPairBudget { budget });
        }
        let s = s_poly(&st.basis[p.i], &st.basis[p.j], order);
        if s.is_zero() {
            continue;
        }
        let h = normal_form(&s, &st.active_refs(), order);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(nvars));
        }
        let sugar = p.sugar.max(h.max_degree());
        st.insert(h, sugar);
    }

    // Active elements form a minimal basis; reduce tails against each other.
    let minimal: Vec<Poly> = st.basis.iter().zip(&st.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let r = normal_form(g, &others, order);
        debug_assert_eq!(r.lm(), g.lm());
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u32], i64)], order: MonomialOrder) -> Poly {
        Poly::from_terms(terms.iter().map(|(m, c)| (Mono::from_slice(m), BigInt::from(*c))).collect(), order)
    }

    #[test]
    fn orders() {
        let g = MonomialOrder::GrevLex;
        // x^2 > x*y > y^2 > x > y > 1 in grevlex
        assert_eq!(g.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(g.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(g.cmp(&[0, 2], &[1, 0]), Ordering::Greater);
        // grevlex: x*z^0*y^2 vs x^2*z ... degree 3 tie broken by last variable
        assert_eq!(g.cmp(&[1, 2, 0], &[2, 0, 1]), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let e = MonomialOrder::Elimination { block: 1 };
        assert_eq!(e.cmp(&[1, 0, 0], &[0, 4, 4]), Ordering::Greater);
    }

    #[test]
    fn hand_computed_basis() {
        // (x - 1, x*y - 1) → {x - 1, y - 1}
        let o = MonomialOrder::GrevLex;
        let f = p(&[(&[1, 0], 1), (&[0, 0], -1)], o);
        let g = p(&[(&[1, 1], 1), (&[0, 0], -1)], o);
        let gb = groebner(vec![f, g], 2, o, 1000).unwrap();
        let want = vec![p(&[(&[0, 1], 1), (&[0, 0], -1)], o), p(&[(&[1, 0], 1), (&[0, 0], -1)], o)];
        assert_eq!(gb, want);
    }

    #[test]
    fn unit_detection() {
        let o = MonomialOrder::GrevLex;
        let f = p(&[(&[1], 1)], o);
        let g = p(&[(&[1], 1), (&[0], -1)], o);
        let gb = groebner(vec![f, g], 1, o, 1000).unwrap();
        assert!(gb.len() == 1 && gb[0].is_constant());
    }

    #[test]
    fn budget_is_enforced() {
        let o = MonomialOrder::GrevLex;
        // x^2 - y, x*y - 1: leading monomials share x, so at least one S-pair is reduced.
        let gens = vec![p(&[(&[2, 0], 1), (&[0, 1], -1)], o), p(&[(&[1, 1], 1), (&[0, 0], -1)], o)];
        assert!(matches!(groebner(gens.clone(), 2, o, 0), Err(ResourceError::SPairBudget { budget: 0 })));
        let gb = groebner(gens, 2, o, 10_000).unwrap();
        // y^3 - 1 lies in the ideal.
        let lms: Vec<Mono> = gb.iter().map(|g| g.lm().clone()).collect();
        assert_eq!(lms.len(), gb.len());
        let refs: Vec<&Poly> = gb.iter().collect();
        assert!(normal_form(&p(&[(&[0, 3], 1), (&[0, 0], -1)], o), &refs, o).is_zero());
    }

    #[test]
    fn normal_form_of_member_is_zero() {
        let o = MonomialOrder::Lex;
        let f = p(&[(&[2, 0], 1), (&[0, 1], -1)], o);
        let g = p(&[(&[1, 1], 1), (&[0, 0], -1)], o);
        let gb = groebner(vec![f.clone(), g.clone()], 2, o, 1000).unwrap();
        let refs: Vec<&Poly> = gb.iter().collect();
        // x^3 y - x^2 = x^2 * (x y - 1)
        let m = p(&[(&[3, 1], 1), (&[2, 0], -1)], o);
        assert!(normal_form(&m, &refs, o).is_zero());
        let nm = p(&[(&[1, 0], 1)], o);
        assert!(!normal_form(&nm, &refs, o).is_zero());
    }
}
