use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use perverse_loci::complexes::FreeComplex;
use perverse_loci::ext::ExtInt;
use perverse_loci::fixtures::{self, Family, Mutation};
use perverse_loci::jumploci::{jump_loci_report, membership_at_point};
use perverse_loci::laurent::TorsionPoint;
use perverse_loci::linear::DeclaredLoci;
use perverse_loci::perversity::{perversity_from_complex, perversity_verdict, LociProfile, SpotCheckConfig, Verdict};
use perverse_loci::Error;

use crate::render;
use crate::Command;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Core(Error::Inconsistent { .. }) => 1,
            _ => 2,
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub status: u8,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_complex(path: &Path) -> Result<FreeComplex, CliError> {
    Ok(FreeComplex::from_toml(&read(path)?)?)
}

fn load_valid_complex(path: &Path) -> Result<FreeComplex, CliError> {
    let f = load_complex(path)?;
    f.validate()?;
    Ok(f)
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce(&T) -> String, status: u8) -> Outcome {
    let text = if json { serde_json::to_string_pretty(report).expect("reports serialize") + "\n" } else { text(report) };
    Outcome { text, status }
}

/// Parses `a..b` or `a..=b`, both inclusive.
fn parse_degrees(s: &str) -> Result<std::ops::RangeInclusive<i32>, CliError> {
    let bad = || CliError::Usage(format!("degree range {s:?} is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.trim().parse::<i32>().map_err(|_| bad())?, b.trim().parse::<i32>().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub degrees: (i32, i32),
    pub ranks: Vec<usize>,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ComponentRow {
    pub translate: TorsionPoint,
    pub lattice: Vec<Vec<i64>>,
    pub codim: usize,
    pub codim_a: usize,
    pub codim_sa: usize,
}

#[derive(Debug, Serialize)]
pub struct LocusRow {
    pub degree: i32,
    pub codim: ExtInt,
    pub codim_a: ExtInt,
    pub codim_sa: ExtInt,
    pub dim_a: ExtInt,
    pub dim_sa: ExtInt,
    pub components: Vec<ComponentRow>,
}

#[derive(Debug, Serialize)]
pub struct CodimsReport {
    pub variables: Vec<String>,
    pub torus_rank: usize,
    pub abelian_rank: usize,
    pub loci: Vec<LocusRow>,
}

#[derive(Debug, Serialize)]
pub struct FixtureRow {
    pub name: String,
    pub family: Family,
    pub has_complex: bool,
    pub expected: Verdict,
    pub description: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    points: Vec<TorsionPoint>,
    #[serde(default)]
    degrees: Option<Vec<i32>>,
}

#[derive(Debug, Serialize)]
pub struct SampleRow {
    pub point: String,
    pub degree: i32,
    pub dimension: usize,
    pub member: bool,
}

pub fn run(cmd: &Command, json: bool) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate { complex } => {
            let f = load_complex(complex)?;
            let error = f.validate().err().map(|e| e.to_string());
            let report = ValidateReport {
                valid: error.is_none(),
                degrees: (f.min_degree(), f.max_degree()),
                ranks: f.ranks().to_vec(),
                euler_characteristic: f.euler_characteristic(),
                error,
            };
            let status = if report.valid { 0 } else { 1 };
            Ok(emit(json, &report, render::validate, status))
        }
        Command::JumpIdeals { complex, degrees } => {
            let f = load_valid_complex(complex)?;
            let range = match degrees {
                Some(s) => parse_degrees(s)?,
                None => f.min_degree() - 1..=f.max_degree() + 1,
            };
            let report = jump_loci_report(&f, range)?;
            Ok(emit(json, &report, render::jump_ideals, 0))
        }
        Command::Exactness { complex } => {
            let f = load_valid_complex(complex)?;
            let report = f.check_assumption()?;
            let status = if report.holds { 0 } else { 1 };
            Ok(emit(json, &report, render::exactness, status))
        }
        Command::Perversity { input, loci, samples, seed } => {
            let text = read(input)?;
            let is_complex = text
                .parse::<toml::Table>()
                .map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?
                .contains_key("complex");
            let cfg = SpotCheckConfig { samples: *samples, seed: *seed };
            let report = match (is_complex, loci) {
                (true, Some(l)) => {
                    let f = FreeComplex::from_toml(&text)?;
                    f.validate()?;
                    let profile = LociProfile::from_declared(DeclaredLoci::from_toml(&read(l)?)?)?.with_source(f)?;
                    perversity_verdict(&profile, cfg)?
                }
                (true, None) => {
                    let f = FreeComplex::from_toml(&text)?;
                    f.validate()?;
                    perversity_from_complex(&f)?
                }
                (false, None) => perversity_verdict(&LociProfile::from_declared(DeclaredLoci::from_toml(&text)?)?, cfg)?,
                (false, Some(_)) => return Err(CliError::Usage("--loci needs a complex file as input".into())),
            };
            let status = if report.verdict == Verdict::Perverse { 0 } else { 1 };
            Ok(emit(json, &report, render::perversity, status))
        }
        Command::Codims { loci } => {
            let d = DeclaredLoci::from_toml(&read(loci)?)?;
            let rows = d
                .loci
                .iter()
                .map(|(&degree, u)| {
                    let c = u.union_codims();
                    LocusRow {
                        degree,
                        codim: c.codim,
                        codim_a: c.codim_a,
                        codim_sa: c.codim_sa,
                        dim_a: c.dim_a,
                        dim_sa: c.dim_sa,
                        components: u
                            .components()
                            .iter()
                            .map(|k| {
                                let cc = k.codims();
                                ComponentRow {
                                    translate: k.translate().clone(),
                                    lattice: k.lattice().to_vec(),
                                    codim: cc.codim,
                                    codim_a: cc.codim_a,
                                    codim_sa: cc.codim_sa,
                                }
                            })
                            .collect(),
                    }
                })
                .collect();
            let report = CodimsReport {
                variables: d.ctx.names().to_vec(),
                torus_rank: d.ctx.torus_rank(),
                abelian_rank: d.ctx.abelian_rank(),
                loci: rows,
            };
            Ok(emit(json, &report, render::codims, 0))
        }
        Command::Fixtures { name: None, .. } => {
            let rows: Vec<FixtureRow> = fixtures::catalog()
                .into_iter()
                .map(|f| FixtureRow {
                    has_complex: f.complex.is_some(),
                    name: f.name,
                    family: f.family,
                    expected: f.expected,
                    description: f.description,
                })
                .collect();
            Ok(emit(json, &rows, |r| render::fixture_list(r), 0))
        }
        Command::Fixtures { name: Some(name), loci, shift, out_dir } => {
            let fixture = fixtures::by_name(name).ok_or_else(|| CliError::Usage(format!("unknown fixture {name:?}; run `fixtures` to list them")))?;
            let (complex, profile) = match shift {
                Some(s) => {
                    let m = fixtures::mutate(&fixture, Mutation::ShiftBy { shift: *s })?;
                    (m.complex, m.profile.expect("shifts keep their loci"))
                }
                None => (fixture.complex.clone(), fixture.profile.clone()),
            };
            let loci_text = profile.to_declared().to_toml();
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                if let Some(f) = &complex {
                    write(&dir.join(format!("{name}.complex.toml")), &f.to_toml())?;
                }
                write(&dir.join(format!("{name}.loci.toml")), &loci_text)?;
                return Ok(Outcome { text: String::new(), status: 0 });
            }
            let text = if *loci {
                loci_text
            } else {
                complex.ok_or_else(|| CliError::Usage(format!("fixture {name:?} only has declared loci; pass --loci")))?.to_toml()
            };
            Ok(Outcome { text, status: 0 })
        }
        Command::Sample { complex, points } => {
            let f = load_valid_complex(complex)?;
            let file: PointsFile = toml::from_str(&read(points)?).map_err(|e| CliError::Usage(format!("{}: {e}", points.display())))?;
            let degrees = file.degrees.unwrap_or_else(|| f.degrees().collect());
            let mut rows = Vec::new();
            for rho in &file.points {
                for &i in &degrees {
                    let m = membership_at_point(&f, i, rho)?;
                    rows.push(SampleRow { point: rho.to_string(), degree: i, dimension: m.dimension, member: m.member });
                }
            }
            Ok(emit(json, &rows, |r| render::samples(r), 0))
        }
    }
}
