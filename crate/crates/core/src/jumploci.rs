//! Cohomology jump loci of a free complex, as ideals and pointwise.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::LaurentIdeal;
use crate::laurent::TorsionPoint;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Sampled,
}

/// The jumping ideal `J^i`, whose zero set is `V^i`.
pub fn jump_locus_ideal(f: &FreeComplex, i: i32) -> Result<LaurentIdeal> {
    f.jumping_ideal(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMembership {
    pub member: bool,
    /// `dim H^i(F ⊗ k_ρ)`.
    pub dimension: usize,
}

/// Specializes at `ρ` and computes `dim H^i = r_i − rk ∂^i_ρ − rk ∂^{i−1}_ρ`
/// exactly over the cyclotomic field of `ρ`.
pub fn membership_at_point(f: &FreeComplex, i: i32, rho: &TorsionPoint) -> Result<PointMembership> {
    if rho.len() != f.context().num_vars() {
        return Err(Error::ContextMismatch(format!(
            "point has {} coordinates, ring has {} variables",
            rho.len(),
            f.context().num_vars()
        )));
    }
    let r = f.rank(i);
    if r == 0 {
        return Ok(PointMembership { member: false, dimension: 0 });
    }
    let out = f.differential(i).rank_at(rho);
    let inc = f.differential(i - 1).rank_at(rho);
    let dimension = r - out - inc;
    Ok(PointMembership { member: dimension > 0, dimension })
}

/// Whether every generator of `ideal` vanishes at `ρ`.
pub fn vanishes_at(ideal: &LaurentIdeal, rho: &TorsionPoint) -> bool {
    ideal.generators().iter().all(|g| g.evaluate(rho).is_zero())
}

pub fn euler_characteristic(f: &FreeComplex) -> i64 {
    f.euler_characteristic()
}

/// `V(I)` is the whole torus iff `I = (0)`, since the Laurent ring is a domain.
pub fn is_whole_space(ideal: &LaurentIdeal) -> bool {
    ideal.is_zero_ideal()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub holds: bool,
    pub provenance: Provenance,
    /// `(i, i+1)` of the first adjacent pair breaking the chain.
    pub first_violation: Option<(i32, i32)>,
    /// Number of points consulted when the verdict is sampled.
    pub samples: usize,
}

/// Checks `V^i ⊆ V^{i+1}` for `i < 0` and `V^i ⊇ V^{i+1}` for `i ≥ 0`.
///
/// Requires the complex to have no negative-degree cohomology, itself or
/// dually. When an ideal computation exceeds a resource cap, falls back to
/// pointwise checks on `samples` and labels the result as sampled.
pub fn propagation_check(f: &FreeComplex, samples: &[TorsionPoint]) -> Result<PropagationReport> {
    if !f.check_assumption()?.holds {
        return Err(Error::Precondition("propagation needs vanishing negative-degree cohomology of the complex and its dual".into()));
    }
    match exact_propagation(f) {
        Ok(r) => Ok(r),
        Err(e) if e.is_resource() => sampled_propagation(f, samples),
        Err(e) => Err(e),
    }
}

fn chain_pairs(f: &FreeComplex) -> Vec<(i32, i32)> {
    (f.min_degree().min(0) - 1..=f.max_degree().max(0)).map(|i| (i, i + 1)).collect()
}

/// The exact chain check without the exactness precondition.
pub fn exact_propagation(f: &FreeComplex) -> Result<PropagationReport> {
    for (i, j) in chain_pairs(f) {
        let (vi, vj) = (f.jumping_ideal(i)?, f.jumping_ideal(j)?);
        let ok = if i < 0 { vi.variety_within(&vj)? } else { vj.variety_within(&vi)? };
        if !ok {
            return Ok(PropagationReport { holds: false, provenance: Provenance::Exact, first_violation: Some((i, j)), samples: 0 });
        }
    }
    Ok(PropagationReport { holds: true, provenance: Provenance::Exact, first_violation: None, samples: 0 })
}

fn sampled_propagation(f: &FreeComplex, samples: &[TorsionPoint]) -> Result<PropagationReport> {
    for (i, j) in chain_pairs(f) {
        for rho in samples {
            let (a, b) = (membership_at_point(f, i, rho)?.member, membership_at_point(f, j, rho)?.member);
            let ok = if i < 0 { !a || b } else { !b || a };
            if !ok {
                return Ok(PropagationReport {
                    holds: false,
                    provenance: Provenance::Sampled,
                    first_violation: Some((i, j)),
                    samples: samples.len(),
                });
            }
        }
    }
    Ok(PropagationReport { holds: true, provenance: Provenance::Sampled, first_violation: None, samples: samples.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub degree: i32,
    pub generators: Vec<String>,
    pub codimension: ExtInt,
    pub empty: bool,
    pub whole_space: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpLociReport {
    pub variables: Vec<String>,
    pub euler_characteristic: i64,
    pub degrees: Vec<DegreeEntry>,
}

/// One entry per degree in `degrees`, computed in parallel. Generators are
/// those of the saturated ideal.
pub fn jump_loci_report(f: &FreeComplex, degrees: std::ops::RangeInclusive<i32>) -> Result<JumpLociReport> {
    let ctx = f.context();
    let degrees: Vec<i32> = degrees.collect();
    let entries = degrees
        .par_iter()
        .map(|&i| {
            let j = f.jumping_ideal(i)?;
            let codimension = j.codimension()?;
            let generators = j.saturated_generators()?.iter().map(|p| ctx.display(p).to_string()).collect();
            Ok(DegreeEntry {
                degree: i,
                generators,
                codimension,
                empty: codimension == ExtInt::PosInf,
                whole_space: is_whole_space(&j),
                provenance: Provenance::Exact,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpLociReport { variables: ctx.names().to_vec(), euler_characteristic: f.euler_characteristic(), degrees: entries })
}
