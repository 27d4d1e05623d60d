//! Constructions on complexes: duals, shifts, sums, tensor products, twists
//! and induction along the isogeny `t ↦ t^n`.

use std::sync::Arc;

use super::{FreeComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational, RingContext, TorsionPoint};

impl FreeComplex {
    /// `Hom(F, Γ)`, with `(F^i)^∨` in degree `−i` and transposed differentials.
    pub fn dual(&self) -> FreeComplex {
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let diffs: Vec<PolyMatrix> = self.diffs.iter().rev().map(PolyMatrix::transpose).collect();
        FreeComplex::new(self.ctx.clone(), -self.max_degree(), ranks, diffs).expect("dual shapes are consistent")
    }

    /// `F[s]`, with `F[s]^i = F^{i+s}`.
    pub fn shift(&self, s: i32) -> FreeComplex {
        FreeComplex::new(self.ctx.clone(), self.min_degree - s, self.ranks.clone(), self.diffs.clone())
            .expect("shift preserves shapes")
    }

    /// Moves every module from degree `i` to degree `i + s`.
    pub fn shift_by(&self, s: i32) -> FreeComplex {
        self.shift(-s)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("complexes live over different rings".into()));
        }
        Ok(())
    }

    /// Degreewise block sum.
    pub fn direct_sum(&self, other: &Self) -> Result<FreeComplex> {
        self.same_ring(other)?;
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let ranks = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let diffs = (lo..hi).map(|i| self.differential(i).block_diag(&other.differential(i))).collect();
        FreeComplex::new(self.ctx.clone(), lo, ranks, diffs)
    }

    /// Total complex of `F ⊗ G` over one ring, with the sign rule
    /// `∂(x⊗y) = ∂x⊗y + (−1)^{deg x} x⊗∂y`.
    ///
    /// `(F ⊗ G)^k` is ordered by increasing degree `a` of the first factor;
    /// inside a block the basis is `e_x ⊗ f_y` with `y` varying fastest.
    pub fn tensor(&self, other: &Self) -> Result<FreeComplex> {
        self.same_ring(other)?;
        let n = self.ctx.num_vars();
        let lo = self.min_degree + other.min_degree;
        let hi = self.max_degree() + other.max_degree();
        let blocks = |k: i32| -> Vec<(i32, usize, usize)> {
            let mut out = Vec::new();
            let mut off = 0;
            for a in self.degrees() {
                let b = k - a;
                if other.degrees().contains(&b) {
                    let size = self.rank(a) * other.rank(b);
                    out.push((a, off, size));
                    off += size;
                }
            }
            out
        };
        let total = |k: i32| blocks(k).iter().map(|b| b.2).sum::<usize>();
        let ranks: Vec<usize> = (lo..=hi).map(total).collect();
        let mut diffs = Vec::new();
        for k in lo..hi {
            let src = blocks(k);
            let dst = blocks(k + 1);
            let (rows, cols) = (total(k + 1), total(k));
            let mut e = vec![LaurentPoly::zero(n); rows * cols];
            let mut place = |m: &PolyMatrix, r0: usize, c0: usize, negate: bool| {
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        let v = m.get(r, c);
                        if !v.is_zero() {
                            e[(r0 + r) * cols + c0 + c] = if negate { -v.clone() } else { v.clone() };
                        }
                    }
                }
            };
            for &(a, c0, _) in &src {
                let b = k - a;
                if let Some(&(_, r0, _)) = dst.iter().find(|d| d.0 == a + 1) {
                    let m = self.differential(a).kronecker(&PolyMatrix::identity(n, other.rank(b)));
                    place(&m, r0, c0, false);
                }
                if let Some(&(_, r0, _)) = dst.iter().find(|d| d.0 == a) {
                    let m = PolyMatrix::identity(n, self.rank(a)).kronecker(&other.differential(b));
                    place(&m, r0, c0, a.rem_euclid(2) == 1);
                }
            }
            diffs.push(PolyMatrix::from_entries(n, rows, cols, e));
        }
        FreeComplex::new(self.ctx.clone(), lo, ranks, diffs)
    }

    /// Tensor product of complexes over disjoint sets of variables.
    ///
    /// The combined ring lists the torus variables of `self`, then those of
    /// `other`, then the abelian variables of `self`, then those of `other`.
    pub fn external_tensor(&self, other: &Self) -> Result<FreeComplex> {
        let (a, b) = (self.ctx.as_ref(), other.ctx.as_ref());
        if let Some(clash) = a.names().iter().find(|x| b.names().contains(x)) {
            return Err(Error::InvalidArgument(format!("variable {clash} occurs in both factors")));
        }
        let (ma, ga, mb, gb) = (a.torus_rank(), a.abelian_rank(), b.torus_rank(), b.abelian_rank());
        let ta: Vec<usize> = (0..a.num_vars()).map(|i| if i < ma { i } else { ma + mb + (i - ma) }).collect();
        let tb: Vec<usize> =
            (0..b.num_vars()).map(|j| if j < mb { ma + j } else { ma + mb + 2 * ga + (j - mb) }).collect();
        let n = a.num_vars() + b.num_vars();
        let mut names = vec![String::new(); n];
        for (i, &t) in ta.iter().enumerate() {
            names[t] = a.names()[i].clone();
        }
        for (j, &t) in tb.iter().enumerate() {
            names[t] = b.names()[j].clone();
        }
        let ctx = Arc::new(RingContext::new(names, ma + mb, ga + gb)?);
        let fa = self.embed(ctx.clone(), &ta);
        let fb = other.embed(ctx, &tb);
        fa.tensor(&fb)
    }

    fn embed(&self, ctx: Arc<RingContext>, target: &[usize]) -> FreeComplex {
        let n = ctx.num_vars();
        let diffs = self.diffs.iter().map(|d| d.map(n, |p| p.embed(n, target))).collect();
        FreeComplex::new(ctx, self.min_degree, self.ranks.clone(), diffs).expect("embedding preserves shapes")
    }

    /// Substitutes `t_i ↦ λ_i t_i` in every differential. The jump loci move
    /// by `λ^{-1}`: `ρ ∈ V^i(twist) ⇔ λ·ρ ∈ V^i(F)`.
    pub fn twist(&self, lambda: &TorsionPoint) -> Result<FreeComplex> {
        if lambda.len() != self.ctx.num_vars() {
            return Err(Error::ContextMismatch("twist point has the wrong number of coordinates".into()));
        }
        let map = lambda
            .coords()
            .iter()
            .map(|c| {
                c.to_rational()
                    .map(|q| (q, 1))
                    .ok_or_else(|| Error::InvalidArgument(format!("twist coordinate {c} is not rational")))
            })
            .collect::<Result<Vec<(Rational, i32)>>>()?;
        let diffs = self.diffs.iter().map(|d| d.try_map(|p| p.substitute(&map))).collect::<Result<Vec<_>>>()?;
        FreeComplex::new(self.ctx.clone(), self.min_degree, self.ranks.clone(), diffs)
    }

    /// Restriction of scalars along `ℚ[s^{±1}] → ℚ[t^{±1}]`, `s_i = t_i^{n_i}`.
    ///
    /// Each rank-one summand becomes free of rank `Πn_i` on the basis `t^e`,
    /// `0 ≤ e_i < n_i` (first coordinate most significant), and each entry
    /// becomes its multiplication matrix. The new ring reuses the old names
    /// for the `s_i`. Jump loci are pushed forward: `ρ ∈ V^i(induce F)` iff
    /// some `μ` with `μ^n = ρ` lies in `V^i(F)`.
    pub fn induce(&self, n: &[u32]) -> Result<FreeComplex> {
        let nv = self.ctx.num_vars();
        if n.len() != nv || n.contains(&0) {
            return Err(Error::InvalidArgument("induction needs one positive integer per variable".into()));
        }
        let basis: Vec<Vec<i32>> = {
            let mut acc = vec![Vec::new()];
            for &k in n {
                acc = acc
                    .into_iter()
                    .flat_map(|p: Vec<i32>| {
                        (0..k as i32).map(move |e| {
                            let mut q = p.clone();
                            q.push(e);
                            q
                        })
                    })
                    .collect();
            }
            acc
        };
        let size = basis.len();
        let index = |r: &[i32]| -> usize { r.iter().zip(n).fold(0usize, |acc, (&e, &k)| acc * k as usize + e as usize) };
        let block = |p: &LaurentPoly| -> Vec<LaurentPoly> {
            let mut e = vec![LaurentPoly::zero(nv); size * size];
            for (col, b) in basis.iter().enumerate() {
                for (a, c) in p.terms() {
                    let sum: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let q: Vec<i32> = sum.iter().zip(n).map(|(&x, &k)| x.div_euclid(k as i32)).collect();
                    let r: Vec<i32> = sum.iter().zip(n).map(|(&x, &k)| x.rem_euclid(k as i32)).collect();
                    let slot = &mut e[index(&r) * size + col];
                    *slot = &*slot + &LaurentPoly::monomial(nv, q, c.clone());
                }
            }
            e
        };
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for d in &self.diffs {
            let (rows, cols) = (d.rows() * size, d.cols() * size);
            let mut e = vec![LaurentPoly::zero(nv); rows * cols];
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if d.get(r, c).is_zero() {
                        continue;
                    }
                    let b = block(d.get(r, c));
                    for i in 0..size {
                        for j in 0..size {
                            e[(r * size + i) * cols + c * size + j] = b[i * size + j].clone();
                        }
                    }
                }
            }
            diffs.push(PolyMatrix::from_entries(nv, rows, cols, e));
        }
        let ranks = self.ranks.iter().map(|r| r * size).collect();
        FreeComplex::new(self.ctx.clone(), self.min_degree, ranks, diffs)
    }
}
