//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integer codimensions, ideal membership,
//! lattice equality); there are no floating-point tolerances. Sampling is
//! seeded, and the whole suite runs twice to check that its transcript is
//! byte-identical.

mod oracle;

use std::collections::BTreeSet;
use std::fmt::Write;
use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use perverse_loci::complexes::FreeComplex;
use perverse_loci::ext::ExtInt;
use perverse_loci::fixtures::{self, Family, Fixture, Mutation};
use perverse_loci::groebner::LaurentIdeal;
use perverse_loci::jumploci::{jump_loci_report, membership_at_point, propagation_check, vanishes_at, Provenance};
use perverse_loci::laurent::{rat, RingContext, ScaledRoot, TorsionPoint};
use perverse_loci::linear::{LinearComponent, LinearUnion};
use perverse_loci::perversity::{perversity_verdict, Condition, LociProfile, PerversityReport, SpotCheckConfig, Verdict};
use perverse_loci::sampling::Sampler;
use perverse_loci::Error;

const SEED: u64 = 0x5eed_2026;
/// Random points per fixture per degree, on top of points drawn from the loci.
const POINTS_PER_DEGREE: usize = 100;
/// Accepted random lattices per torus/abelian split.
const LATTICES_PER_SPLIT: usize = 1000;
const RANDOM_ABELIAN_PROFILES: usize = 200;
const MIN_PROPAGATION_FIXTURES: usize = 25;
const MIN_NON_EXACT_MUTANTS: usize = 10;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: summary }
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            Outcome { pass: false, detail: format!("{summary}; {} failure(s): {}", failures.len(), shown.join(" | ")) }
        }
    }
}

fn complexes(cat: &[Fixture]) -> impl Iterator<Item = (&Fixture, &FreeComplex)> {
    cat.iter().filter_map(|f| f.complex.as_ref().map(|c| (f, c)))
}

fn window(f: &FreeComplex) -> std::ops::RangeInclusive<i32> {
    f.min_degree().min(0) - 1..=f.max_degree().max(0) + 1
}

fn constant_loci(t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    for m in 1..=3usize {
        let (k, _) = fixtures::mellin_constant_torus(m).unwrap();
        let ctx = k.context().clone();
        let gens: Vec<String> = (1..=m).map(|i| format!("t{i} - 1")).collect();
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        let identity = LaurentIdeal::parse(ctx.clone(), &gens).unwrap();
        for i in -(m as i32) - 2..=2 {
            let j = k.jumping_ideal(i).unwrap();
            let expected_identity = (-(m as i32)..=0).contains(&i);
            let ok = if expected_identity { j.same_variety(&identity).unwrap() } else { j.is_unit().unwrap() };
            writeln!(t, "constant m={m} degree {i}: {}", j.saturated_generators().unwrap().iter().map(|p| ctx.display(p).to_string()).collect::<Vec<_>>().join(", ")).unwrap();
            if !ok {
                failures.push(format!("m={m} degree {i}"));
            }
        }
    }
    Outcome::new(&failures, "m = 1, 2, 3 over degrees [-m-2, 2], tolerance exact".into())
}

fn propagation(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (fx, f) in complexes(cat) {
        count += 1;
        let r = propagation_check(f, &[]).unwrap();
        writeln!(t, "propagation {}: {:?}", fx.name, r).unwrap();
        if !r.holds || r.provenance != Provenance::Exact {
            failures.push(format!("{} first violation {:?}", fx.name, r.first_violation));
        }
    }
    let names: Vec<&str> = cat.iter().map(|f| f.name.as_str()).collect();
    for needed in ["twist-2-", "twist-neg1-", "twist-1over3-", "ext-", "induce-2", "induce-3", "sum-"] {
        if !names.iter().any(|n| n.starts_with(needed)) {
            failures.push(format!("no fixture of kind {needed}"));
        }
    }
    if count < MIN_PROPAGATION_FIXTURES {
        failures.push(format!("only {count} fixtures"));
    }
    Outcome::new(&failures, format!("{count} fixtures, every adjacent pair exact"))
}

fn radical_equality(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (fx, f) in complexes(cat) {
        if !f.check_assumption().unwrap().holds {
            continue;
        }
        for i in window(f).filter(|&i| i != 0) {
            let (fit, jump) = f.fitting_and_jumping_ideals(i).unwrap();
            let a = fit.generators().iter().all(|g| jump.radical_contains(g).unwrap());
            let b = jump.generators().iter().all(|g| fit.radical_contains(g).unwrap());
            pairs += 1;
            writeln!(t, "radical {} degree {i}: {a} {b}", fx.name).unwrap();
            if !(a && b) {
                failures.push(format!("{} degree {i}", fx.name));
            }
        }
    }
    Outcome::new(&failures, format!("{pairs} (fixture, degree) pairs, mutual radical membership"))
}

fn buchsbaum_eisenbud(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut exact = 0;
    for (fx, f) in complexes(cat) {
        let r = f.check_assumption().unwrap();
        writeln!(t, "exactness {}: {} {}", fx.name, r.complex.exact, r.dual.exact).unwrap();
        exact += 1;
        if !r.holds {
            failures.push(format!("{} not certified exact", fx.name));
        }
    }
    let mutants = fixtures::non_exact_mutants();
    for m in &mutants {
        let f = m.complex.as_ref().unwrap();
        let c = f.exact_in_negative_degrees().unwrap();
        writeln!(t, "exactness {}: {}", m.name, c.exact).unwrap();
        if c.exact || m.negative_cohomology != Some(true) || f.validate().is_err() {
            failures.push(format!("{} certified exact", m.name));
        }
    }
    if mutants.len() < MIN_NON_EXACT_MUTANTS {
        failures.push(format!("only {} mutants", mutants.len()));
    }
    Outcome::new(&failures, format!("{exact} exact fixtures certified, {} non-exact mutants refuted", mutants.len()))
}

fn pointwise_agreement(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for (idx, (fx, f)) in complexes(cat).enumerate() {
        let n = f.context().num_vars();
        let mut sampler = Sampler::new(SEED.wrapping_add(idx as u64));
        let mut pts = sampler.points(n, POINTS_PER_DEGREE);
        for u in fx.profile.loci().values() {
            for c in u.components() {
                pts.push(c.sample_point(&mut sampler));
            }
        }
        for i in window(f) {
            let j = f.jumping_ideal(i).unwrap();
            let mut members = 0;
            for rho in &pts {
                let a = membership_at_point(f, i, rho).unwrap().member;
                let b = vanishes_at(&j, rho);
                checks += 1;
                members += usize::from(a);
                if a != b {
                    failures.push(format!("{} degree {i} at {rho}", fx.name));
                }
            }
            writeln!(t, "pointwise {} degree {i}: {members}/{}", fx.name, pts.len()).unwrap();
        }
    }
    Outcome::new(&failures, format!("{checks} point checks, at least {POINTS_PER_DEGREE} random points per fixture and degree, zero mismatches allowed"))
}

fn codimension_bound(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (fx, f) in complexes(cat) {
        if !f.check_assumption().unwrap().holds {
            continue;
        }
        let reach = f.min_degree().abs().max(f.max_degree().abs()) + 1;
        for i in 0..=reach {
            for d in [i, -i] {
                let c = f.jumping_ideal(d).unwrap().codimension().unwrap();
                checks += 1;
                writeln!(t, "codim {} J^{d} = {c}", fx.name).unwrap();
                if c < i64::from(i) {
                    failures.push(format!("{} codim J^{d} = {c} < {i}", fx.name));
                }
            }
        }
    }
    Outcome::new(&failures, format!("{checks} exact integer comparisons"))
}

fn violation_set(r: &PerversityReport) -> BTreeSet<(i32, &'static str)> {
    r.violations
        .iter()
        .map(|v| (v.degree, if v.condition == Condition::Upper { "upper" } else { "lower" }))
        .collect()
}

fn verdict_of(v: &BTreeSet<(i32, &'static str)>) -> Verdict {
    let up = v.iter().any(|x| x.1 == "upper");
    let low = v.iter().any(|x| x.1 == "lower");
    match (up, low) {
        (false, false) => Verdict::Perverse,
        (false, true) => Verdict::UpperOnly,
        (true, false) => Verdict::LowerOnly,
        (true, true) => Verdict::Neither,
    }
}

fn random_abelian_profile(rng: &mut ChaCha8Rng) -> LociProfile {
    let g = rng.gen_range(1..=2usize);
    let ctx = Arc::new(RingContext::standard(0, g).unwrap());
    let n = 2 * g;
    let mut loci = std::collections::BTreeMap::new();
    for i in -3..=3 {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut comps = Vec::new();
        while comps.len() < rng.gen_range(1..=2) {
            let rows: Vec<Vec<i64>> = (0..rng.gen_range(0..=n)).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let tr = TorsionPoint::new((0..n).map(|_| ScaledRoot::new(rat(1, 1), rat(rng.gen_range(0..4), 4)).unwrap()).collect());
            if let Ok(c) = LinearComponent::new(ctx.clone(), tr, &rows) {
                comps.push(c);
            }
        }
        loci.insert(i, LinearUnion::new(ctx.clone(), comps).unwrap());
    }
    LociProfile::new(ctx, loci, None).unwrap()
}

fn verdicts(cat: &[Fixture], t: &mut String) -> Outcome {
    let cfg = SpotCheckConfig { samples: 40, seed: SEED };
    let mut failures = Vec::new();
    let (mut fixtures_checked, mut mutants_checked, mut torus_cmp, mut abelian_cmp) = (0, 0, 0, 0);
    for fx in cat {
        let r = perversity_verdict(&fx.profile, cfg).unwrap();
        fixtures_checked += 1;
        writeln!(t, "verdict {}: {}", fx.name, serde_json::to_string(&r).unwrap()).unwrap();
        if r.verdict != Verdict::Perverse || !r.violations.is_empty() {
            failures.push(format!("{} got {}", fx.name, r.verdict));
        }
        let (m, g) = (fx.profile.context().torus_rank(), fx.profile.context().abelian_rank());
        for s in -2..=2 {
            let mutant = fixtures::mutate(fx, Mutation::ShiftBy { shift: s }).unwrap();
            let p = mutant.profile.as_ref().unwrap();
            let r = match perversity_verdict(p, cfg) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{}: {e}", mutant.name));
                    continue;
                }
            };
            let got = violation_set(&r);
            if s.abs() == 1 {
                mutants_checked += 1;
                if Some(r.verdict) != mutant.expected || got.is_empty() {
                    failures.push(format!("{} got {} expected {:?}", mutant.name, r.verdict, mutant.expected));
                }
            }
            if g == 0 {
                let f = mutant.complex.as_ref().unwrap();
                let want = oracle::torus_violations(f);
                torus_cmp += 1;
                if want != got || verdict_of(&want) != r.verdict {
                    failures.push(format!("{}: torus criterion {want:?} vs {got:?}", mutant.name));
                }
            }
            if m == 0 {
                let want = oracle::abelian_violations(p);
                abelian_cmp += 1;
                if want != got || verdict_of(&want) != r.verdict {
                    failures.push(format!("{}: abelian bound {want:?} vs {got:?}", mutant.name));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xab);
    for k in 0..RANDOM_ABELIAN_PROFILES {
        let p = random_abelian_profile(&mut rng);
        let r = perversity_verdict(&p, cfg).unwrap();
        let want = oracle::abelian_violations(&p);
        abelian_cmp += 1;
        writeln!(t, "random abelian {k}: {}", r.verdict).unwrap();
        if want != violation_set(&r) || verdict_of(&want) != r.verdict {
            failures.push(format!("random abelian profile {k}: {want:?} vs {:?}", violation_set(&r)));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{fixtures_checked} fixtures perverse, {mutants_checked} shifted mutants one-sided, {torus_cmp} torus and {abelian_cmp} abelian cross-checks"
        ),
    )
}

fn euler_sign(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut positive = 0;
    let mut checked = 0;
    for (fx, f) in complexes(cat) {
        let r = perversity_verdict(&fx.profile, SpotCheckConfig { samples: 0, seed: SEED }).unwrap();
        if r.verdict != Verdict::Perverse {
            continue;
        }
        checked += 1;
        let chi = f.euler_characteristic();
        let whole = f.jumping_ideal(0).unwrap().is_zero_ideal();
        writeln!(t, "euler {}: {chi} whole {whole}", fx.name).unwrap();
        if chi > 0 {
            positive += 1;
        }
        if chi < 0 || (chi == 0) == whole {
            failures.push(format!("{} chi = {chi}, degree-0 locus whole: {whole}", fx.name));
        }
    }
    if !cat.iter().any(|f| f.family == Family::FreeModule) || positive == 0 {
        failures.push("no fixture with positive Euler characteristic".into());
    }
    Outcome::new(&failures, format!("{checked} perverse fixtures, {positive} with chi > 0"))
}

fn random_unimodular(rng: &mut ChaCha8Rng, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = rows.to_vec();
    if out.len() < 2 {
        if let Some(r) = out.first_mut() {
            if rng.gen_bool(0.5) {
                r.iter_mut().for_each(|x| *x = -*x);
            }
        }
        return out;
    }
    for _ in 0..6 {
        let a = rng.gen_range(0..out.len());
        let b = (a + rng.gen_range(1..out.len())) % out.len();
        let k: i64 = rng.gen_range(-2..=2);
        let src = out[b].clone();
        for (x, y) in out[a].iter_mut().zip(src) {
            *x += k * y;
        }
        out.swap(a, b);
    }
    out
}

fn lattice_oracle(t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (m, g) in [(1usize, 0usize), (0, 1), (1, 1), (2, 1)] {
        let n = m + 2 * g;
        let ctx = Arc::new(RingContext::standard(m, g).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((m as u64) << 8) ^ g as u64);
        let (mut accepted, mut rejected, mut attempts) = (0, 0, 0);
        while accepted < LATTICES_PER_SPLIT && attempts < 50 * LATTICES_PER_SPLIT {
            attempts += 1;
            let k = rng.gen_range(0..=n + 1);
            let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let want = oracle::codims(&rows, m, g);
            let got = LinearComponent::new(ctx.clone(), TorsionPoint::identity(n), &rows);
            match (want, got) {
                (None, Err(Error::InvalidComponent(_))) => rejected += 1,
                (Some((d, g2, sa)), Ok(c)) => {
                    accepted += 1;
                    let cc = c.codims();
                    let lat = c.lattice();
                    let mut both = lat.to_vec();
                    both.extend(rows.iter().cloned());
                    let saturated = oracle::is_saturated(lat, n) && oracle::rank(lat, n) == d && oracle::rank(&both, n) == d;
                    let shuffled = random_unimodular(&mut rng, lat);
                    let again = LinearComponent::new(ctx.clone(), TorsionPoint::identity(n), &shuffled).unwrap();
                    let basis_free = again.lattice() == lat && again.codims() == cc;
                    let abelian_ok = m != 0 || (d % 2 == 0 && g2 * 2 == d);
                    if (cc.codim, cc.codim_a, cc.codim_sa) != (d, g2, sa) || !saturated || !basis_free || !abelian_ok {
                        failures.push(format!("(m={m}, g={g}) rows {rows:?}: got {cc:?}, oracle ({d}, {g2}, {sa})"));
                    }
                }
                (w, r) => failures.push(format!("(m={m}, g={g}) rows {rows:?}: oracle {w:?}, library {:?}", r.map(|c| c.codims()))),
            }
        }
        if accepted < LATTICES_PER_SPLIT {
            failures.push(format!("(m={m}, g={g}) only {accepted} lattices"));
        }
        if m == 0 && rejected == 0 {
            failures.push("no odd abelian projection was rejected".into());
        }
        writeln!(t, "lattices m={m} g={g}: {accepted} accepted, {rejected} rejected").unwrap();
        summary.push(format!("({m},{g}): {accepted} ok, {rejected} rejected"));
    }
    Outcome::new(&failures, summary.join(", "))
}

/// Degrees whose locus contains `c`, decided from the complex when possible.
fn observed_degrees(fx: &Fixture, c: &LinearComponent, rng: &mut Sampler) -> Vec<i32> {
    let Some(f) = &fx.complex else {
        return fx.profile.loci().iter().filter(|(_, u)| u.has_component(c)).map(|(&i, _)| i).collect();
    };
    let ideal = c.vanishing_ideal().unwrap();
    let pts: Vec<TorsionPoint> = (0..20).map(|_| c.sample_point(rng)).collect();
    window(f)
        .filter(|&i| {
            let j = f.jumping_ideal(i).unwrap();
            match &ideal {
                Some(ic) => j.generators().iter().all(|g| ic.radical_contains(g).unwrap()),
                None => pts.iter().all(|p| membership_at_point(f, i, p).unwrap().member),
            }
        })
        .collect()
}

fn survival(cat: &[Fixture], t: &mut String) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut sampler = Sampler::new(SEED);
    for fx in cat {
        let ctx = fx.profile.context();
        let (m, g) = (ctx.torus_rank(), ctx.abelian_rank());
        let one = TorsionPoint::identity(ctx.num_vars());
        for c in fx.profile.locus(0).components().iter().filter(|c| c.contains_point(&one)) {
            let (d, g2, _) = oracle::codims(c.lattice(), m, g).unwrap();
            let m2 = d - 2 * g2;
            let predicted: Vec<i32> = (-(m2 as i32) - g2 as i32..=g2 as i32).collect();
            let observed = observed_degrees(fx, c, &mut sampler);
            checked += 1;
            writeln!(t, "survival {} {c:?}: predicted {predicted:?} observed {observed:?}", fx.name).unwrap();
            if predicted != observed {
                failures.push(format!("{}: predicted {predicted:?}, observed {observed:?}", fx.name));
            }
        }
    }
    Outcome::new(&failures, format!("{checked} identity components"))
}

fn transcript_reports(cat: &[Fixture], t: &mut String) {
    for (fx, f) in complexes(cat) {
        let r = jump_loci_report(f, window(f)).unwrap();
        writeln!(t, "jump loci {}: {}", fx.name, serde_json::to_string(&r).unwrap()).unwrap();
        let c: Vec<ExtInt> = r.degrees.iter().map(|d| d.codimension).collect();
        writeln!(t, "codims {}: {c:?}", fx.name).unwrap();
    }
}

fn suite() -> (Vec<(u32, &'static str, Outcome)>, String) {
    let cat = fixtures::catalog();
    let mut t = String::new();
    let results = vec![
        (1, "constant-sheaf loci", constant_loci(&mut t)),
        (2, "propagation chain", propagation(&cat, &mut t)),
        (3, "radical equality away from degree 0", radical_equality(&cat, &mut t)),
        (4, "Buchsbaum-Eisenbud both directions", buchsbaum_eisenbud(&cat, &mut t)),
        (5, "pointwise and ideal agreement", pointwise_agreement(&cat, &mut t)),
        (6, "codimension bound", codimension_bound(&cat, &mut t)),
        (7, "perversity verdicts", verdicts(&cat, &mut t)),
        (8, "signed Euler characteristic", euler_sign(&cat, &mut t)),
        (9, "lattice calculus oracle", lattice_oracle(&mut t)),
        (10, "survival intervals", survival(&cat, &mut t)),
    ];
    transcript_reports(&cat, &mut t);
    (results, t)
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; listing mode must not run the suite.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let start = std::time::Instant::now();
    let (results, first) = suite();
    let (_, second) = suite();
    let mut all = true;
    for (id, name, o) in &results {
        all &= o.pass;
        println!("{} criterion {id:>2} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let same = first == second;
    all &= same;
    println!(
        "{} criterion 11 (determinism): two runs with seed {SEED:#x}, transcripts of {} bytes {}",
        if same { "PASS" } else { "FAIL" },
        first.len(),
        if same { "identical" } else { "differ" }
    );
    println!("acceptance suite finished in {:.1?}", start.elapsed());
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
