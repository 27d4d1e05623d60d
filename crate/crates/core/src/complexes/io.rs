//! TOML file format for complexes.
//!
//! ```toml
//! [ring]
//! variables = ["t1", "t2"]
//! torus_rank = 2
//! abelian_rank = 0
//!
//! [complex]
//! min_degree = -2
//! ranks = [1, 2, 1]
//!
//! # matrix of d^{source_degree}: rows = rank of the target, columns = rank of the source
//! [[differential]]
//! source_degree = -2
//! rows = 2
//! cols = 1
//! entries = [["-t2 + 1"], ["t1 - 1"]]
//! ```
//!
//! A differential that is omitted is zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FreeComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::laurent::RingContext;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    pub torus_rank: usize,
    pub abelian_rank: usize,
}

impl RingSpec {
    pub fn from_context(ctx: &RingContext) -> Self {
        RingSpec { variables: ctx.names().to_vec(), torus_rank: ctx.torus_rank(), abelian_rank: ctx.abelian_rank() }
    }

    pub fn to_context(&self) -> Result<RingContext> {
        RingContext::new(self.variables.clone(), self.torus_rank, self.abelian_rank)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexSpec {
    min_degree: i32,
    ranks: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DifferentialSpec {
    source_degree: i32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    ring: RingSpec,
    complex: ComplexSpec,
    #[serde(default)]
    differential: Vec<DifferentialSpec>,
}

pub(crate) fn toml_error(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string().trim_end().to_string())
}

impl FreeComplex {
    pub fn from_toml(text: &str) -> Result<FreeComplex> {
        let doc: Document = toml::from_str(text).map_err(toml_error)?;
        let ctx = Arc::new(doc.ring.to_context()?);
        let n = ctx.num_vars();
        let ComplexSpec { min_degree, ranks } = doc.complex;
        if ranks.is_empty() {
            return Err(Error::Shape("ranks must list at least one degree".into()));
        }
        let max_degree = min_degree + ranks.len() as i32 - 1;
        let mut given = BTreeMap::new();
        for d in doc.differential {
            let i = d.source_degree;
            if i < min_degree || i >= max_degree {
                return Err(Error::Shape(format!("differential from degree {i} lies outside [{min_degree}, {max_degree})")));
            }
            let k = (i - min_degree) as usize;
            if d.rows != ranks[k + 1] || d.cols != ranks[k] {
                return Err(Error::Shape(format!(
                    "differential from degree {i} declared {}x{}, ranks require {}x{}",
                    d.rows,
                    d.cols,
                    ranks[k + 1],
                    ranks[k]
                )));
            }
            if d.entries.len() != d.rows || d.entries.iter().any(|r| r.len() != d.cols) {
                return Err(Error::Shape(format!("entries of the differential from degree {i} do not form a {}x{} matrix", d.rows, d.cols)));
            }
            let rows = d
                .entries
                .iter()
                .map(|r| r.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = if d.rows == 0 { PolyMatrix::zero(n, 0, d.cols) } else { PolyMatrix::from_rows(n, rows)? };
            if given.insert(i, m).is_some() {
                return Err(Error::Parse(format!("differential from degree {i} given twice")));
            }
        }
        let diffs = (0..ranks.len() - 1)
            .map(|k| {
                let i = min_degree + k as i32;
                given.remove(&i).unwrap_or_else(|| PolyMatrix::zero(n, ranks[k + 1], ranks[k]))
            })
            .collect();
        FreeComplex::new(ctx, min_degree, ranks, diffs)
    }

    pub fn to_toml(&self) -> String {
        let ctx = &self.ctx;
        let differential = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| DifferentialSpec {
                source_degree: self.min_degree + k as i32,
                rows: d.rows(),
                cols: d.cols(),
                entries: (0..d.rows()).map(|r| d.row(r).iter().map(|p| ctx.display(p).to_string()).collect()).collect(),
            })
            .collect();
        let doc = Document {
            ring: RingSpec::from_context(ctx),
            complex: ComplexSpec { min_degree: self.min_degree, ranks: self.ranks.clone() },
            differential,
        };
        toml::to_string(&doc).expect("complex documents serialize")
    }
}
