//! Known complexes with their jump loci, plus controlled mutations for
//! negative tests.
//!
//! The basic building block is the Koszul complex on `t_1 − 1, …, t_m − 1`,
//! the module-side model of the constant sheaf on `(ℂ*)^m` shifted by `m`.
//! Its loci are the identity character in degrees `−m..=0`. Twists,
//! external products, pushforwards along isogenies and direct sums of it
//! have loci computable by hand, which each fixture declares.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::laurent::{int, rat, LaurentPoly, Rational, RingContext, TorsionPoint};
use crate::linear::{LinearComponent, LinearUnion};
use crate::perversity::{LociProfile, Verdict};

/// Koszul complex on `gens`, ending in degree `top`.
pub fn koszul(ctx: &Arc<RingContext>, gens: &[LaurentPoly], top: i32) -> Result<FreeComplex> {
    let (first, rest) = gens.split_first().ok_or_else(|| Error::InvalidArgument("Koszul complex needs a generator".into()))?;
    let two = |g: &LaurentPoly| FreeComplex::two_term(ctx.clone(), -1, g.clone());
    let mut k = two(first)?;
    for g in rest {
        k = k.tensor(&two(g)?)?;
    }
    Ok(k.shift_by(top))
}

fn torus_ring(names: &[&str]) -> Arc<RingContext> {
    Arc::new(RingContext::new(names.iter().map(|s| s.to_string()).collect(), names.len(), 0).expect("torus ring"))
}

fn standard_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("t{i}")).collect()
}

/// Same loci in every degree of `degrees`.
fn constant_profile(ctx: &Arc<RingContext>, degrees: std::ops::RangeInclusive<i32>, comps: &[LinearComponent]) -> LociProfile {
    let u = LinearUnion::new(ctx.clone(), comps.to_vec()).expect("components share the ring");
    let loci: BTreeMap<i32, LinearUnion> = degrees.map(|i| (i, u.clone())).collect();
    LociProfile::new(ctx.clone(), loci, None).expect("loci share the ring")
}

fn points(ctx: &Arc<RingContext>, pts: &[TorsionPoint]) -> Vec<LinearComponent> {
    pts.iter().map(|p| LinearComponent::point(ctx.clone(), p.clone()).expect("point component")).collect()
}

fn koszul_on(ctx: &Arc<RingContext>, gens: &[&str]) -> FreeComplex {
    let gens: Vec<LaurentPoly> = gens.iter().map(|g| ctx.parse(g).expect("fixture polynomial")).collect();
    koszul(ctx, &gens, 0).expect("nonempty generators")
}

/// The Koszul complex on `t_i − 1` over a torus with the given variable
/// names, and its loci.
fn constant_named(names: &[&str]) -> (FreeComplex, LociProfile) {
    let ctx = torus_ring(names);
    let gens: Vec<String> = names.iter().map(|n| format!("{n} - 1")).collect();
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    let k = koszul_on(&ctx, &gens);
    let m = names.len() as i32;
    let p = constant_profile(&ctx, -m..=0, &points(&ctx, &[TorsionPoint::identity(names.len())]));
    (k, p)
}

/// The constant-sheaf model on `(ℂ*)^m` with its declared loci.
pub fn mellin_constant_torus(m: usize) -> Result<(FreeComplex, LociProfile)> {
    if m == 0 {
        return Err(Error::InvalidArgument("torus rank must be positive".into()));
    }
    let names = standard_names(m);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let (k, p) = constant_named(&names);
    let p = p.with_euler(Some(k.euler_characteristic())).with_source(k.clone())?;
    Ok((k, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Constant,
    Twist,
    ExternalTensor,
    Induced,
    DirectSum,
    FreeModule,
    Koszul,
    Declared,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub family: Family,
    pub description: String,
    /// `None` for profiles declared without a complex.
    pub complex: Option<FreeComplex>,
    /// Carries the complex as its source when there is one.
    pub profile: LociProfile,
    pub expected: Verdict,
}

impl Fixture {
    fn with_complex(name: &str, family: Family, description: &str, f: FreeComplex, loci: LociProfile) -> Self {
        let profile = loci
            .with_euler(Some(f.euler_characteristic()))
            .with_source(f.clone())
            .expect("fixture loci live in the complex's ring");
        Fixture { name: name.into(), family, description: description.into(), complex: Some(f), profile, expected: Verdict::Perverse }
    }

    fn declared(name: &str, description: &str, profile: LociProfile) -> Self {
        Fixture { name: name.into(), family: Family::Declared, description: description.into(), complex: None, profile, expected: Verdict::Perverse }
    }
}

fn lambda_point(n: usize, l: &Rational) -> TorsionPoint {
    TorsionPoint::from_rationals(&vec![l.clone(); n])
}

fn twisted(m: usize, l: &Rational) -> (FreeComplex, LociProfile) {
    let names = standard_names(m);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    twisted_named(&names, l)
}

/// Substituting `t ↦ λt` moves the locus from `1` to `λ^{-1}`.
fn twisted_named(names: &[&str], l: &Rational) -> (FreeComplex, LociProfile) {
    let (k, _) = constant_named(names);
    let ctx = k.context().clone();
    let n = names.len();
    let f = k.twist(&lambda_point(n, l)).expect("rational twist");
    let at = lambda_point(n, &l.recip());
    (f, constant_profile(&ctx, -(n as i32)..=0, &points(&ctx, &[at])))
}

fn abelian_ring(g: usize) -> Arc<RingContext> {
    Arc::new(RingContext::standard(0, g).expect("abelian ring"))
}

fn lambda_name(l: &Rational) -> String {
    if l.is_integer() {
        format!("{}", l.numer()).replace('-', "neg")
    } else {
        format!("{}over{}", l.numer(), l.denom()).replace('-', "neg")
    }
}

/// All named fixtures, in a fixed order.
pub fn catalog() -> Vec<Fixture> {
    let mut out = Vec::new();
    for m in 1..=3 {
        let (k, p) = mellin_constant_torus(m).expect("positive rank");
        let loci = LociProfile::new(p.context().clone(), p.loci().clone(), None).unwrap();
        out.push(Fixture::with_complex(&format!("constant-m{m}"), Family::Constant, "Koszul complex on t_i - 1", k, loci));
    }
    for l in [int(2), int(-1), rat(1, 3)] {
        for m in 1..=2 {
            let (f, p) = twisted(m, &l);
            out.push(Fixture::with_complex(&format!("twist-{}-m{m}", lambda_name(&l)), Family::Twist, "constant model twisted by a rational character", f, p));
        }
    }
    {
        let (a, _) = constant_named(&["t1"]);
        let (b, _) = constant_named(&["t2"]);
        let f = a.external_tensor(&b).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &[TorsionPoint::identity(2)]));
        out.push(Fixture::with_complex("ext-m1-m1", Family::ExternalTensor, "external product of two rank-one constant models", f, p));

        let (a, _) = twisted_named(&["t1"], &int(2));
        let (b, _) = twisted_named(&["t2"], &int(-1));
        let f = a.external_tensor(&b).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &[TorsionPoint::from_rationals(&[rat(1, 2), int(-1)])]));
        out.push(Fixture::with_complex("ext-twist2-twistneg1", Family::ExternalTensor, "external product of two twists", f, p));

        let (a, _) = constant_named(&["t1"]);
        let (b, _) = constant_named(&["t2", "t3"]);
        let f = a.external_tensor(&b).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -3..=0, &points(&ctx, &[TorsionPoint::identity(3)]));
        out.push(Fixture::with_complex("ext-m1-m2", Family::ExternalTensor, "external product of ranks one and two", f, p));

        let (a, _) = twisted_named(&["t1"], &rat(1, 3));
        let b = koszul_on(&torus_ring(&["t2"]), &["t2^2 - 1"]);
        let f = a.external_tensor(&b).unwrap();
        let ctx = f.context().clone();
        let pts = [TorsionPoint::from_rationals(&[int(3), int(1)]), TorsionPoint::from_rationals(&[int(3), int(-1)])];
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &pts));
        out.push(Fixture::with_complex("ext-twistthird-square", Family::ExternalTensor, "twist times the Koszul complex on t2^2 - 1", f, p));
    }
    {
        // Pushing forward along t ↦ t^n sends the point ρ to ρ^n.
        let (k1, _) = mellin_constant_torus(1).unwrap();
        let (k2, _) = mellin_constant_torus(2).unwrap();
        for (name, k, n) in [("induce-2-m1", &k1, vec![2]), ("induce-3-m1", &k1, vec![3]), ("induce-2x2-m2", &k2, vec![2, 2]), ("induce-3x1-m2", &k2, vec![3, 1])] {
            let f = k.induce(&n).unwrap();
            let ctx = f.context().clone();
            let m = n.len();
            let p = constant_profile(&ctx, -(m as i32)..=0, &points(&ctx, &[TorsionPoint::identity(m)]));
            out.push(Fixture::with_complex(name, Family::Induced, "pushforward of the constant model along an isogeny", f, p));
        }
        let (t, _) = twisted(1, &int(2));
        let f = t.induce(&[2]).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -1..=0, &points(&ctx, &[TorsionPoint::from_rationals(&[rat(1, 4)])]));
        out.push(Fixture::with_complex("induce-2-twist2", Family::Induced, "pushforward of a twist along squaring", f, p));
    }
    {
        let (k, _) = mellin_constant_torus(1).unwrap();
        let (t, _) = twisted(1, &int(2));
        let f = k.direct_sum(&t).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -1..=0, &points(&ctx, &[TorsionPoint::identity(1), TorsionPoint::from_rationals(&[rat(1, 2)])]));
        out.push(Fixture::with_complex("sum-m1-twist2", Family::DirectSum, "constant model plus a twist", f, p));

        let (k, _) = mellin_constant_torus(2).unwrap();
        let (t, _) = twisted(2, &int(-1));
        let f = k.direct_sum(&t).unwrap();
        let ctx = f.context().clone();
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &[TorsionPoint::identity(2), lambda_point(2, &int(-1))]));
        out.push(Fixture::with_complex("sum-m2-twistneg1", Family::DirectSum, "constant model plus a twist, rank two", f, p));

        let ctx = k.context().clone();
        let f = k.direct_sum(&k).unwrap();
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &[TorsionPoint::identity(2)]));
        out.push(Fixture::with_complex("sum-m2-m2", Family::DirectSum, "two copies of the constant model", f, p));

        let (k, _) = mellin_constant_torus(1).unwrap();
        let ctx = k.context().clone();
        let f = k.direct_sum(&FreeComplex::concentrated(ctx.clone(), 0, 1)).unwrap();
        let mut loci = BTreeMap::new();
        loci.insert(-1, LinearUnion::new(ctx.clone(), points(&ctx, &[TorsionPoint::identity(1)])).unwrap());
        loci.insert(0, LinearUnion::new(ctx.clone(), vec![LinearComponent::whole(ctx.clone())]).unwrap());
        let p = LociProfile::new(ctx, loci, None).unwrap();
        out.push(Fixture::with_complex("sum-m1-free", Family::DirectSum, "constant model plus a free module in degree 0", f, p));
    }
    for (m, r) in [(1, 1), (2, 2)] {
        let ctx = Arc::new(RingContext::torus(m));
        let f = FreeComplex::concentrated(ctx.clone(), 0, r);
        let p = constant_profile(&ctx, 0..=0, &[LinearComponent::whole(ctx.clone())]);
        out.push(Fixture::with_complex(&format!("free-rank{r}-m{m}"), Family::FreeModule, "free module in degree 0", f, p));
    }
    {
        let ctx = torus_ring(&["t1"]);
        let sq = |k: i64, n: i64| TorsionPoint::from_pairs(&[(int(1), rat(k, n))]).unwrap();
        let f = koszul_on(&ctx, &["t1^2 - 1"]);
        let p = constant_profile(&ctx, -1..=0, &points(&ctx, &[sq(0, 2), sq(1, 2)]));
        out.push(Fixture::with_complex("koszul-square-roots", Family::Koszul, "Koszul complex on t1^2 - 1", f, p));
        let f = koszul_on(&ctx, &["t1^3 - 1"]);
        let p = constant_profile(&ctx, -1..=0, &points(&ctx, &[sq(0, 3), sq(1, 3), sq(2, 3)]));
        out.push(Fixture::with_complex("koszul-cube-roots", Family::Koszul, "Koszul complex on t1^3 - 1", f, p));

        let ctx = Arc::new(RingContext::torus(2));
        let f = koszul_on(&ctx, &["t1^2 - 1", "t2^3 - 1"]);
        let mut pts = Vec::new();
        for a in 0..2 {
            for b in 0..3 {
                pts.push(TorsionPoint::from_pairs(&[(int(1), rat(a, 2)), (int(1), rat(b, 3))]).unwrap());
            }
        }
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &pts));
        out.push(Fixture::with_complex("koszul-roots-m2", Family::Koszul, "Koszul complex on t1^2 - 1, t2^3 - 1", f, p));

        let f = koszul_on(&ctx, &["t1*t2 - 1", "t2 - 2"]);
        let p = constant_profile(&ctx, -2..=0, &points(&ctx, &[TorsionPoint::from_rationals(&[rat(1, 2), int(2)])]));
        out.push(Fixture::with_complex("koszul-skew-m2", Family::Koszul, "Koszul complex on t1*t2 - 1, t2 - 2", f, p));
    }
    {
        // Abelian and mixed profiles are declared; no complex models them.
        for g in 1..=2 {
            let ctx = abelian_ring(g);
            let n = ctx.num_vars();
            let gi = g as i32;
            let p = constant_profile(&ctx, -gi..=gi, &points(&ctx, &[TorsionPoint::identity(n)]));
            out.push(Fixture::declared(&format!("abelian-point-g{g}"), "identity character on an abelian variety", p));
        }
        let ctx = abelian_ring(1);
        let half = TorsionPoint::from_pairs(&[(int(1), rat(1, 2)), (int(1), int(0))]).unwrap();
        let p = constant_profile(&ctx, -1..=1, &points(&ctx, &[TorsionPoint::identity(2), half]));
        out.push(Fixture::declared("abelian-two-points-g1", "two torsion characters on an elliptic curve", p));

        let ctx = Arc::new(RingContext::standard(1, 1).unwrap());
        let p = constant_profile(&ctx, -2..=1, &points(&ctx, &[TorsionPoint::identity(3)]));
        out.push(Fixture::declared("mixed-point", "identity character on an extension of an elliptic curve by C*", p));
        let fibre = LinearComponent::new(ctx.clone(), TorsionPoint::identity(3), &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let p = constant_profile(&ctx, -1..=1, &[fibre]);
        out.push(Fixture::declared("mixed-abelian-quotient", "characters trivial on the abelian part", p));
        let torus_part = LinearComponent::new(ctx.clone(), TorsionPoint::identity(3), &[vec![1, 0, 0]]).unwrap();
        let p = constant_profile(&ctx, -1..=0, &[torus_part]);
        out.push(Fixture::declared("mixed-torus-quotient", "characters trivial on the torus part", p));
    }
    out
}

pub fn names() -> Vec<String> {
    catalog().into_iter().map(|f| f.name).collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mutation {
    ShiftBy { shift: i32 },
    ZeroOutEntry { degree: i32, row: usize, col: usize },
    ScaleEntry {
        degree: i32,
        row: usize,
        col: usize,
        #[serde(with = "rational_text")]
        factor: Rational,
    },
}

mod rational_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::laurent::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        crate::laurent::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct Mutant {
    pub name: String,
    pub mutation: Mutation,
    pub complex: Option<FreeComplex>,
    pub profile: Option<LociProfile>,
    /// Expected verdict, when the loci of the mutant are known.
    pub expected: Option<Verdict>,
    /// The mutation broke `∂∘∂ = 0`.
    pub invalid: bool,
    /// Known to have nonzero cohomology in some negative degree.
    pub negative_cohomology: Option<bool>,
}

fn degree_zero_nonempty(p: &LociProfile) -> bool {
    !p.locus(0).is_empty()
}

/// Applies a mutation and records what is known about the result.
///
/// A shift by `s > 0` of a perverse profile with nonempty `V^0` lands
/// above the upper bound in degree `s`, and `s < 0` lands below the lower
/// bound, so the expected verdicts are one-sided. Shifting a complex exact
/// in negative degrees down by `s` moves its nonzero `H^0` to degree `s`.
pub fn mutate(fixture: &Fixture, mutation: Mutation) -> Result<Mutant> {
    let name = format!("{}/{}", fixture.name, mutation_label(&mutation));
    match &mutation {
        Mutation::ShiftBy { shift } => {
            let s = *shift;
            let profile = fixture.profile.shift_by(s);
            let expected = if fixture.expected == Verdict::Perverse && degree_zero_nonempty(&fixture.profile) {
                Some(match s.cmp(&0) {
                    std::cmp::Ordering::Greater => Verdict::LowerOnly,
                    std::cmp::Ordering::Less => Verdict::UpperOnly,
                    std::cmp::Ordering::Equal => Verdict::Perverse,
                })
            } else {
                None
            };
            let negative_cohomology = fixture.complex.as_ref().map(|_| s < 0 && degree_zero_nonempty(&fixture.profile));
            Ok(Mutant {
                name,
                mutation,
                complex: fixture.complex.as_ref().map(|f| f.shift_by(s)),
                profile: Some(profile),
                expected,
                invalid: false,
                negative_cohomology,
            })
        }
        Mutation::ZeroOutEntry { degree, row, col } | Mutation::ScaleEntry { degree, row, col, .. } => {
            let f = fixture.complex.as_ref().ok_or_else(|| Error::InvalidArgument(format!("{} has no complex to mutate", fixture.name)))?;
            let d = f.differential(*degree);
            if *row >= d.rows() || *col >= d.cols() {
                return Err(Error::InvalidArgument(format!("entry ({row}, {col}) outside the {}x{} differential in degree {degree}", d.rows(), d.cols())));
            }
            let value = match &mutation {
                Mutation::ScaleEntry { factor, .. } => d.get(*row, *col).scale(factor),
                _ => LaurentPoly::zero(f.context().num_vars()),
            };
            let diffs: Vec<_> = f
                .degrees()
                .take(f.ranks().len().saturating_sub(1))
                .map(|i| if i == *degree { d.with_entry(*row, *col, value.clone()) } else { f.differential(i) })
                .collect();
            let g = FreeComplex::new(f.context().clone(), f.min_degree(), f.ranks().to_vec(), diffs)?;
            let invalid = g.validate().is_err();
            // Killing the first differential leaves its whole source as cohomology.
            let lowest_killed = *degree == f.min_degree() && *degree < 0 && g.differential(*degree).is_zero() && f.rank(*degree) > 0;
            Ok(Mutant {
                name,
                mutation,
                complex: Some(g),
                profile: None,
                expected: None,
                invalid,
                negative_cohomology: if lowest_killed && !invalid { Some(true) } else { None },
            })
        }
    }
}

fn mutation_label(m: &Mutation) -> String {
    match m {
        Mutation::ShiftBy { shift } => format!("shift{shift:+}"),
        Mutation::ZeroOutEntry { degree, row, col } => format!("zero[{degree}]({row},{col})"),
        Mutation::ScaleEntry { degree, row, col, factor } => format!("scale[{degree}]({row},{col})x{factor}"),
    }
}

/// Mutants with nonzero negative-degree cohomology by construction.
pub fn non_exact_mutants() -> Vec<Mutant> {
    let mut out = Vec::new();
    for f in catalog().iter().filter(|f| f.complex.is_some() && f.family != Family::FreeModule) {
        if matches!(f.family, Family::Constant | Family::Twist | Family::Induced) {
            out.push(mutate(f, Mutation::ShiftBy { shift: -1 }).unwrap());
        }
        if f.family == Family::Constant {
            out.push(mutate(f, Mutation::ShiftBy { shift: -2 }).unwrap());
        }
    }
    for name in ["constant-m1", "twist-2-m1", "koszul-square-roots", "induce-2-m1"] {
        let f = by_name(name).expect("catalog fixture");
        let d = f.complex.as_ref().unwrap().differential(-1);
        let mut g = f.clone();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let m = mutate(&g, Mutation::ZeroOutEntry { degree: -1, row: r, col: c }).unwrap();
                g.complex = m.complex.clone();
                if r + 1 == d.rows() && c + 1 == d.cols() {
                    out.push(Mutant { name: format!("{name}/zero-differential"), ..m });
                }
            }
        }
    }
    out.retain(|m| m.negative_cohomology == Some(true));
    out
}

/// The ring of a fixture's loci, re-exported for file output.
pub fn ring_of(f: &Fixture) -> &Arc<RingContext> {
    f.profile.context()
}
