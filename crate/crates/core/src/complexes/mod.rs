//! Bounded complexes of free modules over the Laurent ring.
//!
//! `∂^i : F^i → F^{i+1}` is stored as a matrix with `r_{i+1}` rows and `r_i`
//! columns acting on column vectors. Outside the stored range every module is
//! zero, so `∂^i` for any `i` is a (possibly empty) matrix of the right shape.

mod build;
pub mod io;
mod matrix;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::LaurentIdeal;
use crate::laurent::{LaurentPoly, RingContext};

pub use matrix::{PolyMatrix, MINOR_CAP};

/// Ideal generated by the `k×k` minors of `m`: `(1)` for `k = 0`, `(0)` when
/// no `k×k` minor is nonzero.
pub fn determinantal_ideal(ctx: &Arc<RingContext>, m: &PolyMatrix, k: usize) -> Result<LaurentIdeal> {
    if m.nvars() != ctx.num_vars() {
        return Err(Error::ContextMismatch("matrix and ring disagree on the number of variables".into()));
    }
    let minors = m.minors(k)?;
    LaurentIdeal::new(ctx.clone(), minors.as_ref().clone())
}

fn dedup_associates(gens: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut seen = HashSet::new();
    gens.into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive_associate())
        .filter(|g| seen.insert(g.clone()))
        .collect()
}

/// Product of two ideals, formed from their saturated generators.
fn ideal_product(a: &LaurentIdeal, b: &LaurentIdeal) -> Result<LaurentIdeal> {
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(LaurentIdeal::zero(a.context().clone()));
    }
    if a.is_unit()? {
        return Ok(b.clone());
    }
    if b.is_unit()? {
        return Ok(a.clone());
    }
    let ga = a.saturated_generators()?;
    let gb = b.saturated_generators()?;
    let prods = ga.iter().flat_map(|x| gb.iter().map(move |y| x * y)).collect();
    LaurentIdeal::new(a.context().clone(), dedup_associates(prods))
}

fn ideal_sum(parts: Vec<LaurentIdeal>, ctx: &Arc<RingContext>) -> Result<LaurentIdeal> {
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let gens = parts.iter().flat_map(|p| p.generators().iter().cloned()).collect();
    LaurentIdeal::new(ctx.clone(), dedup_associates(gens))
}

type IdealCache = Mutex<HashMap<(i32, usize), LaurentIdeal>>;

#[derive(Default)]
struct Caches {
    determinantal: IdealCache,
    jumping: Mutex<HashMap<i32, LaurentIdeal>>,
}

/// A bounded complex `0 → F^{a} → ⋯ → F^{b} → 0` of free modules.
#[derive(Clone)]
pub struct FreeComplex {
    ctx: Arc<RingContext>,
    min_degree: i32,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
    caches: Arc<Caches>,
}

impl FreeComplex {
    /// Checks shapes and rings; `∂∘∂ = 0` is checked by [`FreeComplex::validate`].
    ///
    /// `diffs[k]` is the differential leaving degree `min_degree + k`; there
    /// must be exactly one fewer differential than ranks.
    pub fn new(ctx: Arc<RingContext>, min_degree: i32, ranks: Vec<usize>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!("{} ranks need {} differentials, got {}", ranks.len(), ranks.len() - 1, diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            let deg = min_degree + k as i32;
            if d.nvars() != ctx.num_vars() {
                return Err(Error::ContextMismatch(format!("differential in degree {deg} lives in a different ring")));
            }
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::Shape(format!(
                    "differential in degree {deg} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        Ok(FreeComplex { ctx, min_degree, ranks, diffs, caches: Default::default() })
    }

    /// The module of rank `rank` in degree `degree` with nothing else.
    pub fn concentrated(ctx: Arc<RingContext>, degree: i32, rank: usize) -> Self {
        FreeComplex { ctx, min_degree: degree, ranks: vec![rank], diffs: Vec::new(), caches: Default::default() }
    }

    /// `F^{degree} →^{f} F^{degree+1}`, both of rank one.
    pub fn two_term(ctx: Arc<RingContext>, degree: i32, f: LaurentPoly) -> Result<Self> {
        ctx.check(&f)?;
        let n = ctx.num_vars();
        Self::new(ctx, degree, vec![1, 1], vec![PolyMatrix::from_entries(n, 1, 1, vec![f])])
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.ranks.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    fn index(&self, i: i32) -> Option<usize> {
        (self.degrees().contains(&i)).then(|| (i - self.min_degree) as usize)
    }

    /// `r_i`, zero outside the stored range.
    pub fn rank(&self, i: i32) -> usize {
        self.index(i).map_or(0, |k| self.ranks[k])
    }

    /// `∂^i : F^i → F^{i+1}`.
    pub fn differential(&self, i: i32) -> PolyMatrix {
        match self.index(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => PolyMatrix::zero(self.ctx.num_vars(), self.rank(i + 1), self.rank(i)),
        }
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// Confirms `∂^{i+1}·∂^i = 0`; reports the first nonzero composite entry.
    pub fn validate(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let comp = self.diffs[k + 1].mul(&self.diffs[k])?;
            for r in 0..comp.rows() {
                for c in 0..comp.cols() {
                    if !comp.get(r, c).is_zero() {
                        return Err(Error::NonzeroComposite { degree: self.min_degree + k as i32, row: r, col: c });
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ (−1)^i r_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { self.rank(i) as i64 } else { -(self.rank(i) as i64) }).sum()
    }

    /// `I_k(∂^i)`, cached per complex.
    pub fn determinantal_ideal(&self, i: i32, k: usize) -> Result<LaurentIdeal> {
        if let Some(id) = self.caches.determinantal.lock().unwrap().get(&(i, k)) {
            return Ok(id.clone());
        }
        let id = determinantal_ideal(&self.ctx, &self.differential(i), k)?;
        Ok(self.caches.determinantal.lock().unwrap().entry((i, k)).or_insert(id).clone())
    }

    /// The Fitting ideal `I^i = I_{rank ∂^i}(∂^i)`.
    pub fn fitting_ideal(&self, i: i32) -> Result<LaurentIdeal> {
        let rk = self.differential(i).generic_rank();
        self.determinantal_ideal(i, rk)
    }

    /// The jumping ideal `J^i = I_{r_i}(∂^{i−1} ⊕ ∂^i)`, expanded as
    /// `Σ_j I_j(∂^{i−1})·I_{r_i−j}(∂^i)`.
    ///
    /// Terms with `j` above the generic rank of `∂^{i−1}`, or `r_i − j` above
    /// that of `∂^i`, vanish and are skipped without enumerating minors.
    pub fn jumping_ideal(&self, i: i32) -> Result<LaurentIdeal> {
        if let Some(id) = self.caches.jumping.lock().unwrap().get(&i) {
            return Ok(id.clone());
        }
        let r = self.rank(i);
        let a = self.differential(i - 1).generic_rank();
        let b = self.differential(i).generic_rank();
        let lo = r.saturating_sub(b);
        let hi = a.min(r);
        let mut parts = Vec::new();
        for j in lo..=hi {
            let left = self.determinantal_ideal(i - 1, j)?;
            let right = self.determinantal_ideal(i, r - j)?;
            parts.push(ideal_product(&left, &right)?);
        }
        let id = if parts.is_empty() { LaurentIdeal::zero(self.ctx.clone()) } else { ideal_sum(parts, &self.ctx)? };
        Ok(self.caches.jumping.lock().unwrap().entry(i).or_insert(id).clone())
    }

    pub fn fitting_and_jumping_ideals(&self, i: i32) -> Result<(LaurentIdeal, LaurentIdeal)> {
        Ok((self.fitting_ideal(i)?, self.jumping_ideal(i)?))
    }

    /// Buchsbaum–Eisenbud test on a set of negative degrees: `r_i = rk ∂^i +
    /// rk ∂^{i−1}` and `codim I^i ≥ −i`.
    ///
    /// `degrees` must be negative and closed upwards within the negatives
    /// (with `i` it contains every `j` in `i < j < 0`).
    pub fn is_exact_range(&self, degrees: &[i32]) -> Result<ExactnessCertificate> {
        let set: BTreeSet<i32> = degrees.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= 0) {
            return Err(Error::Precondition(format!("exactness criterion applies to negative degrees, got {bad}")));
        }
        if let Some(&lowest) = set.first() {
            if (lowest..0).any(|j| !set.contains(&j)) {
                return Err(Error::Precondition("degree set must contain every degree between its minimum and -1".into()));
            }
        }
        let mut entries = Vec::with_capacity(set.len());
        for &i in set.iter().rev() {
            let rank_out = self.differential(i).generic_rank();
            let rank_in = self.differential(i - 1).generic_rank();
            let rank = self.rank(i);
            let codim = self.fitting_ideal(i)?.codimension()?;
            let required = -(i as i64);
            entries.push(DegreeExactness {
                degree: i,
                rank,
                rank_out,
                rank_in,
                fitting_codim: codim,
                required_codim: required,
                ranks_additive: rank == rank_out + rank_in,
                depth_ok: codim >= ExtInt::Finite(required),
            });
        }
        let exact = entries.iter().all(|e| e.ranks_additive && e.depth_ok);
        Ok(ExactnessCertificate { exact, degrees: entries })
    }

    /// Exactness in every negative degree where the complex is nonzero.
    pub fn exact_in_negative_degrees(&self) -> Result<ExactnessCertificate> {
        let degrees: Vec<i32> = (self.min_degree.min(0)..0).collect();
        self.is_exact_range(&degrees)
    }

    /// Vanishing of negative-degree cohomology for the complex and its dual.
    pub fn check_assumption(&self) -> Result<AssumptionReport> {
        let complex = self.exact_in_negative_degrees()?;
        let dual = self.dual().exact_in_negative_degrees()?;
        Ok(AssumptionReport { holds: complex.exact && dual.exact, complex, dual })
    }
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.min_degree == other.min_degree && self.ranks == other.ranks && self.diffs == other.diffs
    }
}

impl fmt::Debug for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeComplex[{}..{}] ranks {:?}", self.min_degree, self.max_degree(), self.ranks)?;
        for (k, d) in self.diffs.iter().enumerate() {
            write!(f, "\n  d^{} = {:?}", self.min_degree + k as i32, d)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeExactness {
    pub degree: i32,
    pub rank: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub fitting_codim: ExtInt,
    pub required_codim: i64,
    pub ranks_additive: bool,
    pub depth_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    pub exact: bool,
    pub degrees: Vec<DegreeExactness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub holds: bool,
    pub complex: ExactnessCertificate,
    pub dual: ExactnessCertificate,
}
