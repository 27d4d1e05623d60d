//! Perversity verdicts from jump loci: the two half t-structure conditions,
//! plus support, propagation, Euler sign and survival-interval diagnostics.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::jumploci::{self, membership_at_point, Provenance};
use crate::laurent::{RingContext, TorsionPoint};
use crate::linear::{DeclaredLoci, LinearComponent, LinearUnion};
use crate::sampling::Sampler;

/// Declared loci `V^i` by degree; absent degrees are empty.
#[derive(Clone)]
pub struct LociProfile {
    ctx: Arc<RingContext>,
    loci: BTreeMap<i32, LinearUnion>,
    euler: Option<i64>,
    source: Option<FreeComplex>,
}

impl LociProfile {
    pub fn new(ctx: Arc<RingContext>, loci: BTreeMap<i32, LinearUnion>, euler: Option<i64>) -> Result<Self> {
        if loci.values().any(|u| u.context() != &ctx) {
            return Err(Error::ContextMismatch("locus from a different ring".into()));
        }
        let loci = loci.into_iter().filter(|(_, u)| !u.is_empty()).collect();
        Ok(LociProfile { ctx, loci, euler, source: None })
    }

    pub fn from_declared(d: DeclaredLoci) -> Result<Self> {
        Self::new(d.ctx, d.loci, d.euler)
    }

    pub fn to_declared(&self) -> DeclaredLoci {
        DeclaredLoci { ctx: self.ctx.clone(), loci: self.loci.clone(), euler: self.euler }
    }

    /// Attaches the complex the loci were declared for, enabling spot checks.
    pub fn with_source(mut self, f: FreeComplex) -> Result<Self> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch("complex and loci live in different rings".into()));
        }
        self.source = Some(f);
        Ok(self)
    }

    pub fn with_euler(mut self, euler: Option<i64>) -> Self {
        self.euler = euler;
        self
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn euler(&self) -> Option<i64> {
        self.euler
    }

    pub fn source(&self) -> Option<&FreeComplex> {
        self.source.as_ref()
    }

    pub fn locus(&self, i: i32) -> LinearUnion {
        self.loci.get(&i).cloned().unwrap_or_else(|| LinearUnion::empty(self.ctx.clone()))
    }

    /// Degrees with nonempty loci, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.loci.keys().copied().collect()
    }

    pub fn loci(&self) -> &BTreeMap<i32, LinearUnion> {
        &self.loci
    }

    /// Moves `V^i` to degree `i + s`, matching [`FreeComplex::shift_by`].
    pub fn shift_by(&self, s: i32) -> Self {
        let loci = self.loci.iter().map(|(&i, u)| (i + s, u.clone())).collect();
        let euler = self.euler.map(|e| if s % 2 == 0 { e } else { -e });
        LociProfile { ctx: self.ctx.clone(), loci, euler, source: self.source.as_ref().map(|f| f.shift_by(s)) }
    }

    /// Adds a component to `V^i`.
    pub fn with_component(&self, i: i32, c: LinearComponent) -> Result<Self> {
        let mut out = self.clone();
        let u = self.locus(i).with(c)?;
        out.loci.insert(i, u);
        Ok(out)
    }

    fn summaries(&self) -> Vec<LocusSummary> {
        self.loci
            .iter()
            .map(|(&degree, u)| {
                let c = u.union_codims();
                LocusSummary {
                    degree,
                    empty: u.is_empty(),
                    whole_space: u.is_whole_space(),
                    codim: c.codim,
                    codim_a: c.codim_a,
                    codim_sa: c.codim_sa,
                    components: Some(u.components().len()),
                }
            })
            .collect()
    }
}

impl fmt::Debug for LociProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LociProfile")
            .field("loci", &self.loci)
            .field("euler", &self.euler)
            .field("has_source", &self.source.is_some())
            .finish()
    }
}

/// Codimensions of one nonempty locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusSummary {
    pub degree: i32,
    pub empty: bool,
    pub whole_space: bool,
    pub codim: ExtInt,
    pub codim_a: ExtInt,
    pub codim_sa: ExtInt,
    /// Number of components, when the locus was given as a union.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `codim_a V^i ≥ i` for `i ≥ 0`.
    Upper,
    /// `codim_sa V^i ≥ −i` for `i ≤ 0`.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub degree: i32,
    pub condition: Condition,
    pub required: i64,
    pub actual: ExtInt,
    pub holds: bool,
}

fn upper_checks(s: &[LocusSummary]) -> Vec<ConditionCheck> {
    s.iter()
        .filter(|l| l.degree >= 0 && !l.empty)
        .map(|l| {
            let required = i64::from(l.degree);
            ConditionCheck { degree: l.degree, condition: Condition::Upper, required, actual: l.codim_a, holds: l.codim_a >= required }
        })
        .collect()
}

fn lower_checks(s: &[LocusSummary]) -> Vec<ConditionCheck> {
    s.iter()
        .filter(|l| l.degree <= 0 && !l.empty)
        .map(|l| {
            let required = -i64::from(l.degree);
            ConditionCheck { degree: l.degree, condition: Condition::Lower, required, actual: l.codim_sa, holds: l.codim_sa >= required }
        })
        .collect()
}

/// One line per nonempty `V^i` with `i ≥ 0`.
pub fn check_upper(p: &LociProfile) -> Vec<ConditionCheck> {
    upper_checks(&p.summaries())
}

/// One line per nonempty `V^i` with `i ≤ 0`.
pub fn check_lower(p: &LociProfile) -> Vec<ConditionCheck> {
    lower_checks(&p.summaries())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Perverse,
    /// Only the upper condition holds.
    UpperOnly,
    /// Only the lower condition holds.
    LowerOnly,
    Neither,
}

impl Verdict {
    fn from_conditions(upper: bool, lower: bool) -> Self {
        match (upper, lower) {
            (true, true) => Verdict::Perverse,
            (true, false) => Verdict::UpperOnly,
            (false, true) => Verdict::LowerOnly,
            (false, false) => Verdict::Neither,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Perverse => "perverse",
            Verdict::UpperOnly => "upper-only",
            Verdict::LowerOnly => "lower-only",
            Verdict::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCheck {
    pub interval: (i64, i64),
    pub holds: bool,
    /// Degrees outside the interval carrying a nonempty locus.
    pub outside: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub holds: bool,
    pub first_violation: Option<(i32, i32)>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EulerStatus {
    Holds,
    Fails,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub status: EulerStatus,
    pub value: Option<i64>,
    pub degree_zero_whole_space: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivalReport {
    pub component: String,
    pub kernel_torus_rank: usize,
    pub kernel_abelian_rank: usize,
    pub predicted: (i64, i64),
    pub observed: Vec<i32>,
    pub matches: bool,
}

/// Degrees where the bounds are attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremes {
    pub upper: Option<i32>,
    pub lower: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub seed: u64,
    pub points: usize,
    pub degrees: (i32, i32),
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerversityReport {
    pub verdict: Verdict,
    /// How the loci were obtained: declared unions or ideals of a complex.
    pub source: String,
    pub provenance: Provenance,
    pub loci: Vec<LocusSummary>,
    pub conditions: Vec<ConditionCheck>,
    pub violations: Vec<ConditionCheck>,
    pub support: SupportCheck,
    pub propagation: ChainCheck,
    pub euler: EulerCheck,
    pub survival: Vec<SurvivalReport>,
    pub extremes: Option<Extremes>,
    pub spot_check: Option<SpotCheck>,
}

/// Sampling parameters for comparing declared loci against a complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpotCheckConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SpotCheckConfig {
    fn default() -> Self {
        SpotCheckConfig { samples: 40, seed: 0 }
    }
}

fn support_check(ctx: &RingContext, s: &[LocusSummary]) -> SupportCheck {
    let (m, g) = (ctx.torus_rank() as i64, ctx.abelian_rank() as i64);
    let interval = (-m - g, g);
    let outside: Vec<i32> = s
        .iter()
        .filter(|l| !l.empty && !(interval.0..=interval.1).contains(&i64::from(l.degree)))
        .map(|l| l.degree)
        .collect();
    SupportCheck { interval, holds: outside.is_empty(), outside }
}

fn euler_check(euler: Option<i64>, v0_whole: bool) -> EulerCheck {
    match euler {
        None => EulerCheck {
            status: EulerStatus::Skipped,
            value: None,
            degree_zero_whole_space: v0_whole,
            note: Some("no Euler characteristic available".into()),
        },
        Some(chi) => {
            let ok = chi >= 0 && ((chi == 0) == !v0_whole);
            EulerCheck {
                status: if ok { EulerStatus::Holds } else { EulerStatus::Fails },
                value: Some(chi),
                degree_zero_whole_space: v0_whole,
                note: None,
            }
        }
    }
}

fn extremes(verdict: Verdict, s: &[LocusSummary]) -> Option<Extremes> {
    let v0 = s.iter().find(|l| l.degree == 0)?;
    if verdict != Verdict::Perverse || v0.empty {
        return None;
    }
    let upper = s.iter().find(|l| l.degree >= 0 && !l.empty && l.codim_a == i64::from(l.degree)).map(|l| l.degree);
    let lower = s.iter().find(|l| l.degree <= 0 && !l.empty && l.codim_sa == -i64::from(l.degree)).map(|l| l.degree);
    Some(Extremes { upper, lower })
}

fn profile_chain(p: &LociProfile) -> ChainCheck {
    let support = p.support();
    let lo = support.first().copied().unwrap_or(0).min(0) - 1;
    let hi = support.last().copied().unwrap_or(0).max(0);
    for i in lo..=hi {
        let (a, b) = (p.locus(i), p.locus(i + 1));
        let ok = if i < 0 { a.is_contained_in(&b) } else { b.is_contained_in(&a) };
        if !ok {
            return ChainCheck { holds: false, first_violation: Some((i, i + 1)), provenance: Provenance::Exact };
        }
    }
    ChainCheck { holds: true, first_violation: None, provenance: Provenance::Exact }
}

/// `[−m″−g″, g″]` for a component of `V^0`, together with the degrees in
/// which it actually occurs as a component.
pub fn survival_interval(p: &LociProfile, c: &LinearComponent) -> Result<SurvivalReport> {
    if !p.locus(0).has_component(c) {
        return Err(Error::InvalidArgument(format!("{c:?} is not a component of the degree-0 locus")));
    }
    let (m2, g2) = c.kernel_split();
    let predicted = (-(m2 as i64) - g2 as i64, g2 as i64);
    let observed: Vec<i32> = p.loci.iter().filter(|(_, u)| u.has_component(c)).map(|(&i, _)| i).collect();
    let expected: Vec<i32> = (predicted.0..=predicted.1).map(|i| i as i32).collect();
    Ok(SurvivalReport {
        component: format!("{c:?}"),
        kernel_torus_rank: m2,
        kernel_abelian_rank: g2,
        predicted,
        matches: observed == expected,
        observed,
    })
}

/// Compares declared loci with `dim H^i(F ⊗ k_ρ)` at sampled points and at
/// points drawn from every declared component.
pub fn spot_check(p: &LociProfile, f: &FreeComplex, cfg: SpotCheckConfig) -> Result<SpotCheck> {
    let n = p.ctx.num_vars();
    let mut sampler = Sampler::new(cfg.seed);
    let mut points = sampler.points(n, cfg.samples);
    points.push(TorsionPoint::identity(n));
    for u in p.loci.values() {
        for c in u.components() {
            for _ in 0..3 {
                points.push(c.sample_point(&mut sampler));
            }
        }
    }
    let support = p.support();
    let lo = f.min_degree().min(support.first().copied().unwrap_or(0)) - 1;
    let hi = f.max_degree().max(support.last().copied().unwrap_or(0)) + 1;
    for i in lo..=hi {
        let declared = p.locus(i);
        for rho in &points {
            let computed = membership_at_point(f, i, rho)?.member;
            let d = declared.contains_point(rho);
            if computed != d {
                return Err(Error::Inconsistent { degree: i, point: rho.to_string(), declared: d, computed });
            }
        }
    }
    Ok(SpotCheck { seed: cfg.seed, points: points.len(), degrees: (lo, hi), provenance: Provenance::Sampled })
}

/// The verdict on declared loci. When the profile carries its complex, the
/// loci are first spot-checked against it and the Euler characteristic is
/// taken from the complex if none was declared.
pub fn perversity_verdict(p: &LociProfile, cfg: SpotCheckConfig) -> Result<PerversityReport> {
    let spot = match &p.source {
        Some(f) => Some(spot_check(p, f, cfg)?),
        None => None,
    };
    let euler = p.euler.or_else(|| p.source.as_ref().map(FreeComplex::euler_characteristic));
    let summaries = p.summaries();
    let survival = p.locus(0).components().iter().map(|c| survival_interval(p, c)).collect::<Result<Vec<_>>>()?;
    let mut report = assemble(&p.ctx, "declared", summaries, profile_chain(p), euler_check(euler, p.locus(0).is_whole_space()));
    report.survival = survival;
    report.spot_check = spot;
    Ok(report)
}

/// The verdict straight from the jumping ideals of a complex. Only possible
/// when every component's codimensions are determined by its dimension: on
/// a torus (`codim_a = 0`, `codim_sa = codim`) or on an abelian torus
/// (`codim_a = codim_sa = codim / 2`). Mixed rings need declared loci.
pub fn perversity_from_complex(f: &FreeComplex) -> Result<PerversityReport> {
    let ctx = f.context();
    let (m, g) = (ctx.torus_rank(), ctx.abelian_rank());
    if m > 0 && g > 0 {
        return Err(Error::Precondition("mixed torus/abelian rings need declared loci".into()));
    }
    let mut summaries = Vec::new();
    for degree in f.degrees() {
        let j = f.jumping_ideal(degree)?;
        let codim = j.codimension()?;
        if codim == ExtInt::PosInf {
            continue;
        }
        let (codim_a, codim_sa) = if g == 0 {
            (ExtInt::Finite(0), codim)
        } else {
            let c = codim.finite().expect("nonempty locus has finite codimension");
            if c % 2 != 0 {
                return Err(Error::InvalidComponent(format!("degree {degree} locus has odd codimension {c} in an abelian ring")));
            }
            (ExtInt::Finite(c / 2), ExtInt::Finite(c / 2))
        };
        summaries.push(LocusSummary {
            degree,
            empty: false,
            whole_space: j.is_zero_ideal(),
            codim,
            codim_a,
            codim_sa,
            components: None,
        });
    }
    let chain = jumploci::exact_propagation(f)?;
    let chain = ChainCheck { holds: chain.holds, first_violation: chain.first_violation, provenance: chain.provenance };
    let v0_whole = summaries.iter().any(|l| l.degree == 0 && l.whole_space);
    Ok(assemble(ctx, "complex", summaries, chain, euler_check(Some(f.euler_characteristic()), v0_whole)))
}

fn assemble(ctx: &RingContext, source: &str, summaries: Vec<LocusSummary>, propagation: ChainCheck, euler: EulerCheck) -> PerversityReport {
    let upper = upper_checks(&summaries);
    let lower = lower_checks(&summaries);
    let verdict = Verdict::from_conditions(upper.iter().all(|c| c.holds), lower.iter().all(|c| c.holds));
    let conditions: Vec<ConditionCheck> = upper.into_iter().chain(lower).collect();
    let violations = conditions.iter().filter(|c| !c.holds).cloned().collect();
    PerversityReport {
        verdict,
        source: source.into(),
        provenance: Provenance::Exact,
        support: support_check(ctx, &summaries),
        extremes: extremes(verdict, &summaries),
        loci: summaries,
        conditions,
        violations,
        propagation,
        euler,
        survival: Vec::new(),
        spot_check: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;
    use proptest::prelude::*;

    fn identity_point(ctx: &Arc<RingContext>) -> LinearComponent {
        LinearComponent::point(ctx.clone(), TorsionPoint::identity(ctx.num_vars())).unwrap()
    }

    fn profile(ctx: &Arc<RingContext>, loci: &[(i32, Vec<LinearComponent>)], euler: Option<i64>) -> LociProfile {
        let map = loci.iter().map(|(i, cs)| (*i, LinearUnion::new(ctx.clone(), cs.clone()).unwrap())).collect();
        LociProfile::new(ctx.clone(), map, euler).unwrap()
    }

    fn constant_torus(m: usize) -> (LociProfile, FreeComplex) {
        let ctx = Arc::new(RingContext::torus(m));
        let gens: Vec<String> = (1..=m).map(|i| format!("t{i} - 1")).collect();
        let two = |g: &str| FreeComplex::two_term(ctx.clone(), -1, ctx.parse(g).unwrap()).unwrap();
        let k = gens[1..].iter().fold(two(&gens[0]), |k, g| k.tensor(&two(g)).unwrap());
        let loci: Vec<(i32, Vec<LinearComponent>)> = (-(m as i32)..=0).map(|i| (i, vec![identity_point(&ctx)])).collect();
        (profile(&ctx, &loci, Some(0)), k)
    }

    #[test]
    fn upper_condition_examples() {
        let (p, _) = constant_torus(2);
        assert!(check_upper(&p).iter().all(|c| c.holds));
        let shifted = p.shift_by(1);
        let bad: Vec<_> = check_upper(&shifted).into_iter().filter(|c| !c.holds).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].degree, bad[0].actual), (1, ExtInt::Finite(0)));

        let e = Arc::new(RingContext::standard(0, 1).unwrap());
        let ep = profile(&e, &[(1, vec![identity_point(&e)])], None);
        let c = check_upper(&ep);
        assert_eq!(c.len(), 1);
        assert!(c[0].holds && c[0].actual == 1);
    }

    #[test]
    fn lower_condition_examples() {
        let (p, _) = constant_torus(2);
        let c = check_lower(&p);
        assert!(c.iter().all(|c| c.holds));
        assert_eq!(c.iter().find(|c| c.degree == -2).unwrap().actual, 2);
        let ctx = p.context().clone();
        let curve = LinearComponent::new(ctx.clone(), TorsionPoint::identity(2), &[vec![1, 0]]).unwrap();
        let bad = profile(&ctx, &[(-2, vec![curve])], None);
        let c = check_lower(&bad);
        assert_eq!(c.len(), 1);
        assert!(!c[0].holds && c[0].degree == -2);
        let empty = profile(&ctx, &[(-5, vec![])], None);
        assert!(check_lower(&empty).is_empty());
    }

    #[test]
    fn verdicts_for_the_constant_torus_and_its_shifts() {
        let (p, k) = constant_torus(2);
        let p = p.with_source(k).unwrap();
        let r = perversity_verdict(&p, SpotCheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Perverse);
        assert!(r.violations.is_empty());
        assert!(r.support.holds && r.propagation.holds);
        assert_eq!(r.euler.status, EulerStatus::Holds);
        assert_eq!(r.extremes, Some(Extremes { upper: Some(0), lower: Some(-2) }));
        assert!(r.spot_check.is_some());

        let up = perversity_verdict(&p.shift_by(1), SpotCheckConfig::default()).unwrap();
        assert_eq!(up.verdict, Verdict::LowerOnly);
        assert_eq!(up.violations.iter().map(|v| (v.degree, v.condition)).collect::<Vec<_>>(), [(1, Condition::Upper)]);
        let down = perversity_verdict(&p.shift_by(-1), SpotCheckConfig::default()).unwrap();
        assert_eq!(down.verdict, Verdict::UpperOnly);
        assert_eq!(down.violations.iter().map(|v| (v.degree, v.condition)).collect::<Vec<_>>(), [(-3, Condition::Lower)]);
    }

    #[test]
    fn complex_only_verdicts_match_declared_ones() {
        for m in 1..=2 {
            let (p, k) = constant_torus(m);
            for s in [-1, 0, 1] {
                let a = perversity_from_complex(&k.shift_by(s)).unwrap();
                let b = perversity_verdict(&p.shift_by(s), SpotCheckConfig::default()).unwrap();
                assert_eq!((a.verdict, &a.violations), (b.verdict, &b.violations), "m={m} s={s}");
            }
        }
        let mixed = FreeComplex::concentrated(Arc::new(RingContext::standard(1, 1).unwrap()), 0, 1);
        assert!(matches!(perversity_from_complex(&mixed), Err(Error::Precondition(_))));
    }

    #[test]
    fn wrong_declarations_are_rejected_with_a_witness() {
        let (p, k) = constant_torus(1);
        let ctx = p.context().clone();
        let wrong = p.with_component(0, LinearComponent::point(ctx.clone(), TorsionPoint::from_rationals(&[int(2)])).unwrap()).unwrap();
        let err = perversity_verdict(&wrong.with_source(k.clone()).unwrap(), SpotCheckConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { degree: 0, declared: true, computed: false, .. }), "{err}");
        let missing = profile(&ctx, &[(0, vec![identity_point(&ctx)])], Some(0));
        let err = perversity_verdict(&missing.with_source(k).unwrap(), SpotCheckConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { degree: -1, declared: false, computed: true, .. }), "{err}");
    }

    #[test]
    fn survival_interval_examples() {
        let (p, _) = constant_torus(2);
        let id = identity_point(p.context());
        let s = survival_interval(&p, &id).unwrap();
        assert_eq!((s.predicted, s.observed.clone(), s.matches), ((-2, 0), vec![-2, -1, 0], true));

        let e = Arc::new(RingContext::standard(0, 1).unwrap());
        let pt = identity_point(&e);
        let ep = profile(&e, &[(-1, vec![pt.clone()]), (0, vec![pt.clone()]), (1, vec![pt.clone()])], None);
        let s = survival_interval(&ep, &pt).unwrap();
        assert_eq!((s.predicted, s.matches), ((-1, 1), true));

        let t = Arc::new(RingContext::torus(1));
        let tp = profile(&t, &[(-1, vec![identity_point(&t)]), (0, vec![identity_point(&t)])], None);
        assert_eq!(survival_interval(&tp, &identity_point(&t)).unwrap().predicted, (-1, 0));
        let off = LinearComponent::point(t.clone(), TorsionPoint::from_rationals(&[int(3)])).unwrap();
        assert!(survival_interval(&tp, &off).is_err());
    }

    #[test]
    fn euler_clause_is_skipped_without_a_value() {
        let e = Arc::new(RingContext::standard(0, 1).unwrap());
        let ep = profile(&e, &[(0, vec![identity_point(&e)])], None);
        let r = perversity_verdict(&ep, SpotCheckConfig::default()).unwrap();
        assert_eq!(r.euler.status, EulerStatus::Skipped);
        assert!(r.euler.note.is_some());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"verdict\":\"perverse\"") && json.contains("\"status\":\"skipped\""));
    }

    fn arb_component(ctx: Arc<RingContext>) -> impl Strategy<Value = LinearComponent> {
        let n = ctx.num_vars();
        proptest::collection::vec(proptest::collection::vec(-2i64..3, n), 0..=n)
            .prop_filter_map("odd abelian rank", move |rows| LinearComponent::new(ctx.clone(), TorsionPoint::identity(n), &rows).ok())
    }

    proptest! {
        #[test]
        fn adding_components_never_repairs_a_verdict(
            shift in -2i32..=2,
            degree in -3i32..=2,
            c in arb_component(Arc::new(RingContext::standard(1, 1).unwrap())),
        ) {
            let ctx = c.context().clone();
            let base: Vec<(i32, Vec<LinearComponent>)> = (-2..=1).map(|i| (i + shift, vec![identity_point(&ctx)])).collect();
            let p = profile(&ctx, &base, None);
            let before = perversity_verdict(&p, SpotCheckConfig::default()).unwrap();
            let after = perversity_verdict(&p.with_component(degree, c).unwrap(), SpotCheckConfig::default()).unwrap();
            let holds = |r: &PerversityReport, cond| r.violations.iter().all(|v| v.condition != cond);
            for cond in [Condition::Upper, Condition::Lower] {
                prop_assert!(holds(&before, cond) || !holds(&after, cond));
            }
        }
    }
}
