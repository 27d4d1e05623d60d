//! Plain-text forms of the reports.

use std::fmt::Write;

use perverse_loci::complexes::{AssumptionReport, ExactnessCertificate};
use perverse_loci::jumploci::JumpLociReport;
use perverse_loci::perversity::{EulerStatus, PerversityReport};

use crate::commands::{CodimsReport, FixtureRow, SampleRow, ValidateReport};

fn ok(b: bool) -> &'static str {
    if b { "ok" } else { "FAIL" }
}

pub fn validate(r: &ValidateReport) -> String {
    let mut s = String::new();
    writeln!(s, "valid: {}", r.valid).unwrap();
    writeln!(s, "degrees: {}..{}", r.degrees.0, r.degrees.1).unwrap();
    writeln!(s, "ranks: {:?}", r.ranks).unwrap();
    writeln!(s, "euler characteristic: {}", r.euler_characteristic).unwrap();
    if let Some(e) = &r.error {
        writeln!(s, "error: {e}").unwrap();
    }
    s
}

pub fn jump_ideals(r: &JumpLociReport) -> String {
    let mut s = String::new();
    writeln!(s, "variables: {}", r.variables.join(", ")).unwrap();
    writeln!(s, "euler characteristic: {}", r.euler_characteristic).unwrap();
    for d in &r.degrees {
        let shape = if d.empty {
            "empty"
        } else if d.whole_space {
            "whole torus"
        } else {
            "proper"
        };
        writeln!(s, "degree {}: codim {} ({shape}, {:?})", d.degree, d.codimension, d.provenance).unwrap();
        for g in &d.generators {
            writeln!(s, "    {g}").unwrap();
        }
    }
    s
}

fn certificate(s: &mut String, title: &str, c: &ExactnessCertificate) {
    writeln!(s, "{title}: {}", if c.exact { "exact in negative degrees" } else { "NOT exact in negative degrees" }).unwrap();
    for d in &c.degrees {
        writeln!(
            s,
            "  degree {}: rank {} = {} + {} {}; fitting codim {} >= {} {}",
            d.degree,
            d.rank,
            d.rank_out,
            d.rank_in,
            ok(d.ranks_additive),
            d.fitting_codim,
            d.required_codim,
            ok(d.depth_ok)
        )
        .unwrap();
    }
}

pub fn exactness(r: &AssumptionReport) -> String {
    let mut s = String::new();
    writeln!(s, "holds: {}", r.holds).unwrap();
    certificate(&mut s, "complex", &r.complex);
    certificate(&mut s, "dual", &r.dual);
    s
}

pub fn perversity(r: &PerversityReport) -> String {
    let mut s = String::new();
    writeln!(s, "verdict: {}", r.verdict).unwrap();
    writeln!(s, "loci from: {} ({:?})", r.source, r.provenance).unwrap();
    writeln!(s, "conditions:").unwrap();
    for c in &r.conditions {
        writeln!(s, "  degree {:>3} {:?}: codim {} >= {} {}", c.degree, c.condition, c.actual, c.required, ok(c.holds)).unwrap();
    }
    writeln!(s, "violations: {}", r.violations.len()).unwrap();
    let sup = &r.support;
    writeln!(s, "support within [{}, {}]: {}", sup.interval.0, sup.interval.1, ok(sup.holds)).unwrap();
    if !sup.outside.is_empty() {
        writeln!(s, "  nonempty outside: {:?}", sup.outside).unwrap();
    }
    match r.propagation.first_violation {
        None => writeln!(s, "propagation: ok ({:?})", r.propagation.provenance).unwrap(),
        Some((i, j)) => writeln!(s, "propagation: FAIL between degrees {i} and {j} ({:?})", r.propagation.provenance).unwrap(),
    }
    match r.euler.status {
        EulerStatus::Skipped => writeln!(s, "euler sign: skipped ({})", r.euler.note.as_deref().unwrap_or("")).unwrap(),
        st => writeln!(s, "euler sign: {} (chi = {}, degree-0 locus whole: {})", ok(st == EulerStatus::Holds), r.euler.value.unwrap_or(0), r.euler.degree_zero_whole_space).unwrap(),
    }
    for sv in &r.survival {
        writeln!(
            s,
            "survival of {}: predicted [{}, {}], observed {:?} {}",
            sv.component,
            sv.predicted.0,
            sv.predicted.1,
            sv.observed,
            ok(sv.matches)
        )
        .unwrap();
    }
    if let Some(e) = &r.extremes {
        writeln!(s, "bounds attained at: upper {:?}, lower {:?}", e.upper, e.lower).unwrap();
    }
    if let Some(sc) = &r.spot_check {
        writeln!(s, "spot check: {} points, degrees {}..{}, seed {} ({:?})", sc.points, sc.degrees.0, sc.degrees.1, sc.seed, sc.provenance).unwrap();
    }
    s
}

pub fn codims(r: &CodimsReport) -> String {
    let mut s = String::new();
    writeln!(s, "variables: {} (torus rank {}, abelian rank {})", r.variables.join(", "), r.torus_rank, r.abelian_rank).unwrap();
    for l in &r.loci {
        writeln!(s, "degree {}: codim {}, codim_a {}, codim_sa {}, dim_a {}, dim_sa {}", l.degree, l.codim, l.codim_a, l.codim_sa, l.dim_a, l.dim_sa).unwrap();
        for c in &l.components {
            writeln!(s, "    {} * ker{:?}: ({}, {}, {})", c.translate, c.lattice, c.codim, c.codim_a, c.codim_sa).unwrap();
        }
    }
    s
}

pub fn fixture_list(rows: &[FixtureRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let kind = if r.has_complex { "complex+loci" } else { "loci" };
        writeln!(s, "{:<24} {:<13} {:<10} {}", r.name, kind, r.expected.to_string(), r.description).unwrap();
    }
    s
}

pub fn samples(rows: &[SampleRow]) -> String {
    let mut s = String::new();
    for r in rows {
        writeln!(s, "{} degree {}: dim {}", r.point, r.degree, r.dimension).unwrap();
    }
    s
}
