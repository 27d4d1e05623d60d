//! Translated subtori of the character torus and their (co)dimensions
//! relative to the torus/abelian split of the coordinates.
//!
//! A component is stored as `ρ · {t : χ_k(t) = 1 for k ∈ K}` with `K ⊆ ℤ^N`
//! saturated. `K` is the lattice of characters trivial on the component; its
//! rank `d` is the codimension, and the rank of its projection to the last
//! `2g` coordinates is `2g″`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::io::{toml_error, RingSpec};
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::LaurentIdeal;
use crate::lattice::{self, Row};
use crate::laurent::{LaurentPoly, RingContext, ScaledRoot, TorsionPoint};
use crate::sampling::Sampler;

pub use crate::lattice::saturate as saturate_lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCodims {
    /// `d = rank K = m″ + 2g″`.
    pub codim: usize,
    /// `g″`.
    pub codim_a: usize,
    /// `m″ + g″`.
    pub codim_sa: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearComponent {
    ctx: Arc<RingContext>,
    translate: TorsionPoint,
    lattice: Vec<Row>,
    abelian_rank: usize,
}

impl LinearComponent {
    /// Saturates `rows` and checks that the abelian projection has even rank.
    pub fn new(ctx: Arc<RingContext>, translate: TorsionPoint, rows: &[Row]) -> Result<Self> {
        let n = ctx.num_vars();
        if translate.len() != n {
            return Err(Error::InvalidComponent(format!("translate has {} coordinates, ring has {n}", translate.len())));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidComponent(format!("lattice row {r:?} has length {}, expected {n}", r.len())));
        }
        let lattice = lattice::saturate(rows, n);
        let m = ctx.torus_rank();
        let projected: Vec<Row> = lattice.iter().map(|r| r[m..].to_vec()).collect();
        let pa = lattice::rank(&projected, n - m);
        if !pa.is_multiple_of(2) {
            return Err(Error::InvalidComponent(format!("abelian projection of the lattice has odd rank {pa}")));
        }
        Ok(LinearComponent { ctx, translate, lattice, abelian_rank: pa })
    }

    /// The single point `ρ`.
    pub fn point(ctx: Arc<RingContext>, rho: TorsionPoint) -> Result<Self> {
        let n = ctx.num_vars();
        let rows: Vec<Row> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(ctx, rho, &rows)
    }

    /// The whole torus.
    pub fn whole(ctx: Arc<RingContext>) -> Self {
        let n = ctx.num_vars();
        LinearComponent { ctx, translate: TorsionPoint::identity(n), lattice: Vec::new(), abelian_rank: 0 }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn translate(&self) -> &TorsionPoint {
        &self.translate
    }

    /// Saturated basis of `K` in Hermite normal form.
    pub fn lattice(&self) -> &[Row] {
        &self.lattice
    }

    pub fn codims(&self) -> ComponentCodims {
        let d = self.lattice.len();
        let g2 = self.abelian_rank / 2;
        ComponentCodims { codim: d, codim_a: g2, codim_sa: d - g2 }
    }

    /// `(m″, g″)` of the quotient attached to the component.
    pub fn kernel_split(&self) -> (usize, usize) {
        let c = self.codims();
        (c.codim - 2 * c.codim_a, c.codim_a)
    }

    pub fn contains_point(&self, rho: &TorsionPoint) -> bool {
        let q = rho.div(&self.translate);
        self.lattice.iter().all(|k| q.character(k).is_one())
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        let n = self.ctx.num_vars();
        other.lattice.iter().all(|k| lattice::in_rational_span(&self.lattice, k, n))
            && other.contains_point(&self.translate)
    }

    /// The prime ideal `(t^k − χ_k(ρ) : k ∈ K)`, when every `χ_k(ρ)` is rational.
    pub fn vanishing_ideal(&self) -> Result<Option<LaurentIdeal>> {
        let n = self.ctx.num_vars();
        let mut gens = Vec::with_capacity(self.lattice.len());
        for k in &self.lattice {
            let Some(c) = self.translate.character(k).to_rational() else {
                return Ok(None);
            };
            let e: Vec<i32> = k.iter().map(|&x| i32::try_from(x).expect("exponent range")).collect();
            gens.push(&LaurentPoly::monomial(n, e, num_traits::One::one()) - &LaurentPoly::constant(n, c));
        }
        LaurentIdeal::new(self.ctx.clone(), gens).map(Some)
    }

    /// A point of the component: `ρ · Π s_j^{b_j}` over a basis `b_j` of `K^⊥`
    /// with random coordinates `s_j`.
    pub fn sample_point(&self, sampler: &mut Sampler) -> TorsionPoint {
        let n = self.ctx.num_vars();
        let perp = lattice::integer_kernel(&self.lattice, n);
        let mut coords: Vec<ScaledRoot> = self.translate.coords().to_vec();
        for b in &perp {
            let s = sampler.coordinate();
            for (c, &e) in coords.iter_mut().zip(b) {
                if e != 0 {
                    *c = c.mul(&s.pow(e));
                }
            }
        }
        TorsionPoint::new(coords)
    }
}

impl fmt::Debug for LinearComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ker{:?}", self.translate, self.lattice)
    }
}

/// Minimum and maximum (co)dimensions over the components of a union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionCodims {
    pub codim: ExtInt,
    pub codim_a: ExtInt,
    pub codim_sa: ExtInt,
    pub dim: ExtInt,
    pub dim_a: ExtInt,
    pub dim_sa: ExtInt,
}

/// A finite union of components, none contained in another.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearUnion {
    ctx: Arc<RingContext>,
    components: Vec<LinearComponent>,
}

impl LinearUnion {
    pub fn empty(ctx: Arc<RingContext>) -> Self {
        LinearUnion { ctx, components: Vec::new() }
    }

    /// Drops components contained in others, keeping the first of equal ones.
    pub fn new(ctx: Arc<RingContext>, components: Vec<LinearComponent>) -> Result<Self> {
        if components.iter().any(|c| c.ctx != ctx) {
            return Err(Error::ContextMismatch("component from a different ring".into()));
        }
        let mut kept: Vec<LinearComponent> = Vec::new();
        for c in components {
            if kept.iter().any(|k| c.is_contained_in(k)) {
                continue;
            }
            kept.retain(|k| !k.is_contained_in(&c));
            kept.push(c);
        }
        Ok(LinearUnion { ctx, components: kept })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn components(&self) -> &[LinearComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.components.iter().any(|c| c.lattice.is_empty())
    }

    pub fn contains_point(&self, rho: &TorsionPoint) -> bool {
        self.components.iter().any(|c| c.contains_point(rho))
    }

    /// `self ⊆ other`; components are irreducible, so each must lie in a
    /// single component of `other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.components.iter().all(|c| other.components.iter().any(|d| c.is_contained_in(d)))
    }

    pub fn has_component(&self, c: &LinearComponent) -> bool {
        self.components.iter().any(|d| d.is_contained_in(c) && c.is_contained_in(d))
    }

    /// Adds a component and renormalizes.
    pub fn with(&self, c: LinearComponent) -> Result<Self> {
        let mut all = self.components.clone();
        all.push(c);
        Self::new(self.ctx.clone(), all)
    }

    pub fn union_codims(&self) -> UnionCodims {
        if self.components.is_empty() {
            return UnionCodims {
                codim: ExtInt::PosInf,
                codim_a: ExtInt::PosInf,
                codim_sa: ExtInt::PosInf,
                dim: ExtInt::NegInf,
                dim_a: ExtInt::NegInf,
                dim_sa: ExtInt::NegInf,
            };
        }
        let n = self.ctx.num_vars() as i64;
        let g = self.ctx.abelian_rank() as i64;
        let sa = (self.ctx.torus_rank() + self.ctx.abelian_rank()) as i64;
        let cs: Vec<ComponentCodims> = self.components.iter().map(LinearComponent::codims).collect();
        let min = |f: fn(&ComponentCodims) -> usize| cs.iter().map(f).min().unwrap() as i64;
        let (codim, codim_a, codim_sa) = (min(|c| c.codim), min(|c| c.codim_a), min(|c| c.codim_sa));
        UnionCodims {
            codim: codim.into(),
            codim_a: codim_a.into(),
            codim_sa: codim_sa.into(),
            dim: (n - codim).into(),
            dim_a: (g - codim_a).into(),
            dim_sa: (sa - codim_sa).into(),
        }
    }
}

impl fmt::Debug for LinearUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

pub fn codims(c: &LinearComponent) -> ComponentCodims {
    c.codims()
}

pub fn component_containment(c1: &LinearComponent, c2: &LinearComponent) -> Result<bool> {
    if c1.ctx != c2.ctx {
        return Err(Error::ContextMismatch("components live in different rings".into()));
    }
    Ok(c1.is_contained_in(c2))
}

pub fn union_codims(u: &LinearUnion) -> UnionCodims {
    u.union_codims()
}

// ---- file format ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentSpec {
    translate: TorsionPoint,
    lattice: Vec<Row>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocusSpec {
    degree: i32,
    #[serde(default)]
    component: Vec<ComponentSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LociDocument {
    ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    euler: Option<i64>,
    #[serde(default)]
    locus: Vec<LocusSpec>,
}

/// Declared loci: one union per listed degree plus an optional Euler characteristic.
#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredLoci {
    pub ctx: Arc<RingContext>,
    pub loci: BTreeMap<i32, LinearUnion>,
    pub euler: Option<i64>,
}

impl DeclaredLoci {
    /// Parses the TOML loci format:
    ///
    /// ```toml
    /// euler = 0
    ///
    /// [ring]
    /// variables = ["t1"]
    /// torus_rank = 1
    /// abelian_rank = 0
    ///
    /// [[locus]]
    /// degree = -1
    /// [[locus.component]]
    /// translate = [["1", "0"]]   # (scale, angle) per coordinate
    /// lattice = [[1]]            # rows spanning the characters trivial on the component
    /// ```
    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: LociDocument = toml::from_str(text).map_err(toml_error)?;
        let ctx = Arc::new(doc.ring.to_context()?);
        let mut loci = BTreeMap::new();
        for l in doc.locus {
            let comps = l
                .component
                .into_iter()
                .enumerate()
                .map(|(k, c)| {
                    LinearComponent::new(ctx.clone(), c.translate, &c.lattice).map_err(|e| {
                        Error::InvalidComponent(format!("degree {}, component {k}: {e}", l.degree))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let union = LinearUnion::new(ctx.clone(), comps)?;
            if loci.insert(l.degree, union).is_some() {
                return Err(Error::Parse(format!("degree {} listed twice", l.degree)));
            }
        }
        Ok(DeclaredLoci { ctx, loci, euler: doc.euler })
    }

    pub fn to_toml(&self) -> String {
        let locus = self
            .loci
            .iter()
            .map(|(&degree, u)| LocusSpec {
                degree,
                component: u
                    .components()
                    .iter()
                    .map(|c| ComponentSpec { translate: c.translate.clone(), lattice: c.lattice.clone() })
                    .collect(),
            })
            .collect();
        let doc = LociDocument { ring: RingSpec::from_context(&self.ctx), euler: self.euler, locus };
        toml::to_string(&doc).expect("loci documents serialize")
    }
}
