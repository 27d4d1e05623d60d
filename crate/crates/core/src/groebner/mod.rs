//! Ideals of the Laurent ring, computed through polynomial-ring Gröbner bases.
//!
//! An ideal `I` of ℚ[t^{±1}] is stored by generators. Its polynomial model is
//! the saturation `(I ∩ ℚ[t]) : (t₁⋯t_N)^∞`, obtained by adjoining a variable
//! `y`, the relation `1 − y·t₁⋯t_N`, and eliminating `y`. Dimension and
//! membership in the Laurent ring agree with those of the saturation.

mod engine;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::laurent::{LaurentPoly, RingContext};

pub use engine::MonomialOrder;
use engine::{groebner, normal_form, Mono, Poly};

/// Environment variable consulted for the default S-pair budget.
pub const BUDGET_ENV: &str = "PERVERSE_LOCI_SPAIR_BUDGET";
pub const DEFAULT_SPAIR_BUDGET: usize = 200_000;

static BUDGET: AtomicUsize = AtomicUsize::new(0);

/// The S-pair budget used by ideals that do not carry their own.
pub fn default_spair_budget() -> usize {
    match BUDGET.load(Ordering::Relaxed) {
        0 => {
            let b = std::env::var(BUDGET_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&b| b > 0)
                .unwrap_or(DEFAULT_SPAIR_BUDGET);
            BUDGET.store(b, Ordering::Relaxed);
            b
        }
        b => b,
    }
}

pub fn set_default_spair_budget(budget: usize) {
    BUDGET.store(budget.max(1), Ordering::Relaxed);
}

fn to_engine(p: &LaurentPoly, offset: usize, nvars: usize, order: MonomialOrder) -> Poly {
    let terms = p
        .to_integer_polynomial()
        .into_iter()
        .map(|(e, c)| {
            let mut m: Mono = SmallVec::from_elem(0, nvars);
            m[offset..offset + e.len()].copy_from_slice(&e);
            (m, c)
        })
        .collect();
    Poly::from_terms(terms, order)
}

fn from_engine(p: &Poly, offset: usize, n: usize) -> LaurentPoly {
    let terms: Vec<(Vec<u32>, BigInt)> =
        p.terms.iter().map(|(m, c)| (m[offset..offset + n].to_vec(), c.clone())).collect();
    LaurentPoly::from_integer_polynomial(n, &terms)
}

/// `1 − y·t₁⋯t_N` with `y` in slot 0.
fn saturating_relation(n: usize, order: MonomialOrder) -> Poly {
    let all: Mono = SmallVec::from_elem(1, n + 1);
    Poly::from_terms(vec![(all, -BigInt::one()), (SmallVec::from_elem(0, n + 1), BigInt::one())], order)
}

/// A finitely generated ideal of the Laurent ring.
#[derive(Clone)]
pub struct LaurentIdeal {
    ctx: Arc<RingContext>,
    gens: Vec<LaurentPoly>,
    budget: Option<usize>,
    saturated: Arc<OnceLock<Arc<Vec<Poly>>>>,
}

impl LaurentIdeal {
    pub fn new(ctx: Arc<RingContext>, gens: Vec<LaurentPoly>) -> Result<Self> {
        for g in &gens {
            ctx.check(g)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(LaurentIdeal { ctx, gens, budget: None, saturated: Default::default() })
    }

    pub fn unit(ctx: Arc<RingContext>) -> Self {
        let one = ctx.one();
        LaurentIdeal { ctx, gens: vec![one], budget: None, saturated: Default::default() }
    }

    pub fn zero(ctx: Arc<RingContext>) -> Self {
        LaurentIdeal { ctx, gens: Vec::new(), budget: None, saturated: Default::default() }
    }

    /// Parses each generator with the context grammar.
    pub fn parse(ctx: Arc<RingContext>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, polys)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self.saturated = Default::default();
        self
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.gens
    }

    fn budget(&self) -> usize {
        self.budget.unwrap_or_else(default_spair_budget)
    }

    fn n(&self) -> usize {
        self.ctx.num_vars()
    }

    /// True when no generator is nonzero.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced grevlex basis of the saturated polynomial ideal.
    fn saturated_basis(&self) -> Result<Arc<Vec<Poly>>> {
        if let Some(b) = self.saturated.get() {
            return Ok(b.clone());
        }
        let n = self.n();
        let basis = if self.gens.is_empty() {
            Vec::new()
        } else if self.gens.iter().any(LaurentPoly::is_unit) {
            vec![Poly::from_terms(vec![(SmallVec::from_elem(0, n), BigInt::one())], MonomialOrder::GrevLex)]
        } else {
            let order = MonomialOrder::Elimination { block: 1 };
            let mut gens: Vec<Poly> = self.gens.iter().map(|g| to_engine(g, 1, n + 1, order)).collect();
            gens.push(saturating_relation(n, order));
            let gb = groebner(gens, n + 1, order, self.budget())?;
            // The y-free part is a reduced grevlex basis of the elimination ideal.
            gb.into_iter()
                .filter(|p| p.terms.iter().all(|(m, _)| m[0] == 0))
                .map(|p| {
                    let terms = p.terms.into_iter().map(|(m, c)| (Mono::from_slice(&m[1..]), c)).collect();
                    Poly::from_terms(terms, MonomialOrder::GrevLex)
                })
                .collect()
        };
        let basis = Arc::new(basis);
        Ok(self.saturated.get_or_init(|| basis).clone())
    }

    /// Reduced Gröbner basis of the saturated polynomial ideal under `order`.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Vec<LaurentPoly>> {
        let n = self.n();
        if let MonomialOrder::Elimination { block } = order {
            if block > n {
                return Err(Error::InvalidArgument(format!("elimination block {block} exceeds {n} variables")));
            }
        }
        let sat = self.saturated_basis()?;
        let basis = match order {
            MonomialOrder::GrevLex => sat.as_ref().clone(),
            _ => groebner(sat.iter().cloned().collect(), n, order, self.budget())?,
        };
        Ok(basis.iter().map(|p| from_engine(p, 0, n)).collect())
    }

    /// Generators of the saturated polynomial ideal (its reduced grevlex basis).
    pub fn saturated_generators(&self) -> Result<Vec<LaurentPoly>> {
        self.groebner_basis(MonomialOrder::GrevLex)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let sat = self.saturated_basis()?;
        Ok(sat.len() == 1 && sat[0].is_constant())
    }

    /// Ideal membership in the Laurent ring.
    pub fn contains(&self, f: &LaurentPoly) -> Result<bool> {
        self.ctx.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let sat = self.saturated_basis()?;
        let n = self.n();
        let p = to_engine(f, 0, n, MonomialOrder::GrevLex);
        let refs: Vec<&Poly> = sat.iter().collect();
        Ok(normal_form(&p, &refs, MonomialOrder::GrevLex).is_zero())
    }

    /// Whether `f ∈ √I`, by testing `1 ∈ I + (1 − y·f)`.
    pub fn radical_contains(&self, f: &LaurentPoly) -> Result<bool> {
        self.ctx.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let sat = self.saturated_basis()?;
        if sat.is_empty() {
            return Ok(false);
        }
        if sat.len() == 1 && sat[0].is_constant() {
            return Ok(true);
        }
        let n = self.n();
        let order = MonomialOrder::GrevLex;
        let mut gens: Vec<Poly> = sat
            .iter()
            .map(|p| {
                let terms = p
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut e: Mono = SmallVec::from_elem(0, n + 1);
                        e[1..].copy_from_slice(m);
                        (e, c.clone())
                    })
                    .collect();
                Poly::from_terms(terms, order)
            })
            .collect();
        let fp = to_engine(f, 1, n + 1, order);
        let mut rel: Vec<(Mono, BigInt)> = fp
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.clone();
                e[0] += 1;
                (e, -c.clone())
            })
            .collect();
        rel.push((SmallVec::from_elem(0, n + 1), BigInt::one()));
        gens.push(Poly::from_terms(rel, order));
        let gb = groebner(gens, n + 1, order, self.budget())?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Codimension of the zero locus in the torus: `N − dim`, `+∞` when empty.
    pub fn codimension(&self) -> Result<ExtInt> {
        let sat = self.saturated_basis()?;
        let n = self.n();
        if sat.is_empty() {
            return Ok(ExtInt::Finite(0));
        }
        if sat.len() == 1 && sat[0].is_constant() {
            return Ok(ExtInt::PosInf);
        }
        let lms: Vec<u64> = sat
            .iter()
            .map(|p| p.lm().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
            .collect();
        // A set S of variables is independent when no leading monomial is supported in S.
        let dim = (0u64..(1 << n))
            .filter(|s| lms.iter().all(|lm| lm & !s != 0))
            .map(|s| s.count_ones() as i64)
            .max()
            .unwrap_or(0);
        Ok(ExtInt::Finite(n as i64 - dim))
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx.as_ref() != other.ctx.as_ref() {
            return Err(Error::ContextMismatch("ideals live in different rings".into()));
        }
        Ok(())
    }

    /// Whether `V(self) ⊆ V(other)`.
    pub fn variety_within(&self, other: &Self) -> Result<bool> {
        self.same_context(other)?;
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_variety(&self, other: &Self) -> Result<bool> {
        Ok(self.variety_within(other)? && other.variety_within(self)?)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(LaurentIdeal { ctx: self.ctx.clone(), gens, budget: self.budget, saturated: Default::default() })
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(LaurentIdeal { ctx: self.ctx.clone(), gens, budget: self.budget, saturated: Default::default() })
    }
}

impl fmt::Debug for LaurentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ctx.display(g))?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

pub fn groebner_basis(ideal: &LaurentIdeal, order: MonomialOrder) -> Result<Vec<LaurentPoly>> {
    ideal.groebner_basis(order)
}

pub fn radical_membership(f: &LaurentPoly, ideal: &LaurentIdeal) -> Result<bool> {
    ideal.radical_contains(f)
}

pub fn codimension(ideal: &LaurentIdeal) -> Result<ExtInt> {
    ideal.codimension()
}

/// Decides `V(i) ⊆ V(j)`.
pub fn variety_containment(i: &LaurentIdeal, j: &LaurentIdeal) -> Result<bool> {
    i.variety_within(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ResourceError;

    fn ctx(n: usize) -> Arc<RingContext> {
        Arc::new(RingContext::torus(n))
    }

    fn ideal(n: usize, gens: &[&str]) -> LaurentIdeal {
        LaurentIdeal::parse(ctx(n), gens).unwrap()
    }

    fn show(i: &LaurentIdeal, order: MonomialOrder) -> Vec<String> {
        i.groebner_basis(order).unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(show(&ideal(1, &["t1 - 1"]), MonomialOrder::GrevLex), ["t1 - 1"]);
        assert_eq!(show(&ideal(1, &["t1", "1 - t1"]), MonomialOrder::GrevLex), ["1"]);
        assert_eq!(show(&ideal(2, &["t1 - 1", "t1*t2 - 1"]), MonomialOrder::GrevLex), ["t2 - 1", "t1 - 1"]);
        assert_eq!(show(&ideal(2, &["t1 - 1", "t1*t2 - 1"]), MonomialOrder::Lex), ["t2 - 1", "t1 - 1"]);
    }

    #[test]
    fn saturation_removes_coordinate_components() {
        // t1*(t1 - 1) is an associate of t1 - 1 in the Laurent ring; so is t1^2 - t1^3.
        let i = ideal(2, &["t1^2 - t1^3", "t1*t2 - t1"]);
        assert_eq!(show(&i, MonomialOrder::GrevLex), ["t2 - 1", "t1 - 1"]);
        // x*y - x has a component along t1 = 0 in the polynomial ring; the torus sees only t2 = 1.
        let j = LaurentIdeal::new(ctx(2), vec![RingContext::torus(2).parse("t1*t2 - t1").unwrap()]).unwrap();
        assert_eq!(j.codimension().unwrap(), 1);
    }

    #[test]
    fn radical_examples() {
        let c2 = ctx(2);
        let i = ideal(1, &["t1 - 1"]);
        assert!(i.radical_contains(&RingContext::torus(1).parse("t1^2 - 2*t1 + 1").unwrap()).unwrap());
        let i2 = LaurentIdeal::parse(c2.clone(), &["t1 - 1"]).unwrap();
        assert!(!i2.radical_contains(&c2.parse("t2 - 1").unwrap()).unwrap());
        let sq = LaurentIdeal::parse(c2.clone(), &["t1^2 - 2*t1 + 1", "t2^2 - 2*t2 + 1"]).unwrap();
        let f = c2.parse("t1*t2 - t1 - t2 + 1").unwrap();
        assert!(sq.radical_contains(&f).unwrap());
        assert!(!sq.contains(&f).unwrap());
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(ideal(2, &["t1 - 1", "t2 - 1"]).codimension().unwrap(), 2);
        assert_eq!(LaurentIdeal::zero(ctx(3)).codimension().unwrap(), 0);
        assert_eq!(ideal(1, &["t1"]).codimension().unwrap(), ExtInt::PosInf);
        assert_eq!(ideal(3, &["t1*t2 - 1"]).codimension().unwrap(), 1);
        assert_eq!(ideal(3, &["t1^2 - 1", "t2 - t3"]).codimension().unwrap(), 2);
    }

    #[test]
    fn containment_examples() {
        let c2 = ctx(2);
        let p = LaurentIdeal::parse(c2.clone(), &["t1 - 1", "t2 - 1"]).unwrap();
        let l = LaurentIdeal::parse(c2.clone(), &["t1 - 1"]).unwrap();
        let m = LaurentIdeal::parse(c2.clone(), &["t2 - 1"]).unwrap();
        assert!(variety_containment(&p, &l).unwrap());
        assert!(!variety_containment(&l, &m).unwrap());
        let f = c2.parse("t1*t2 - t1 - t2 + 1").unwrap();
        let a = LaurentIdeal::new(c2.clone(), vec![f.clone()]).unwrap();
        let b = LaurentIdeal::new(c2.clone(), vec![&f * &f.pow(2)]).unwrap();
        assert!(variety_containment(&a, &b).unwrap());
        assert!(variety_containment(&b, &a).unwrap());
        assert!(a.same_variety(&b).unwrap());
    }

    #[test]
    fn saturated_basis_absorbs_coordinate_multiples() {
        let c = ctx(3);
        let i = LaurentIdeal::parse(c.clone(), &["t1*t2 - 2", "t3^2 - t1"]).unwrap();
        let mono = c.parse("t1*t2*t3").unwrap();
        for g in i.generators() {
            let mut h = g.clone();
            for _ in 0..=3 {
                assert!(i.contains(&h).unwrap());
                h = &h * &mono;
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let i = ideal(2, &["t1^2 - t2", "t1*t2 - 1"]).with_budget(1);
        assert!(matches!(i.codimension(), Err(Error::Resource(ResourceError::SPairBudget { .. }))));
    }

    #[test]
    fn deterministic_bases() {
        let i = ideal(3, &["t1^2*t2 - t3", "t2^2 - t1*t3 + 1", "t3^3 - t1"]);
        let a = show(&i, MonomialOrder::GrevLex);
        let j = ideal(3, &["t1^2*t2 - t3", "t2^2 - t1*t3 + 1", "t3^3 - t1"]);
        assert_eq!(a, show(&j, MonomialOrder::GrevLex));
        assert_eq!(show(&i, MonomialOrder::Lex), show(&j, MonomialOrder::Lex));
    }
}
