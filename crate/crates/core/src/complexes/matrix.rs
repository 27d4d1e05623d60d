use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ResourceError, Result};
use crate::laurent::{rank_over_field, rat, CyclotomicNumber, LaurentPoly, TorsionPoint};

/// Largest minor size enumerated by [`PolyMatrix::minors`].
pub const MINOR_CAP: usize = 5;

#[derive(Default)]
struct Cache {
    rank: OnceLock<usize>,
    minors: Mutex<HashMap<usize, Arc<Vec<LaurentPoly>>>>,
}

/// A dense matrix of Laurent polynomials, stored row-major.
///
/// Matrices are immutable; derived data (generic rank, minors) is cached and
/// shared between clones.
#[derive(Clone)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
    cache: Arc<Cache>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        Self::from_entries(nvars, rows, cols, vec![LaurentPoly::zero(nvars); rows * cols])
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut e = vec![LaurentPoly::zero(nvars); n * n];
        for i in 0..n {
            e[i * n + i] = LaurentPoly::one(nvars);
        }
        Self::from_entries(nvars, n, n, e)
    }

    /// Panics if `entries.len() != rows * cols` or an entry has the wrong arity.
    pub fn from_entries(nvars: usize, rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        assert!(entries.iter().all(|e| e.nvars() == nvars), "entry arity");
        PolyMatrix { nvars, rows, cols, entries, cache: Default::default() }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.nvars() != nvars) {
            return Err(Error::ContextMismatch("matrix entry in a different ring".into()));
        }
        Ok(Self::from_entries(nvars, r, c, entries))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// A copy with one entry replaced.
    pub fn with_entry(&self, r: usize, c: usize, value: LaurentPoly) -> Self {
        let mut e = self.entries.clone();
        e[r * self.cols + c] = value;
        Self::from_entries(self.nvars, self.rows, self.cols, e)
    }

    /// Applies `f` entrywise; `nvars` is the arity of the result.
    pub fn map(&self, nvars: usize, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let entries: Vec<LaurentPoly> = self.entries.iter().map(f).collect();
        Self::from_entries(nvars, self.rows, self.cols, entries)
    }

    pub fn try_map(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_entries(self.nvars, self.rows, self.cols, entries))
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                e.push(self.get(r, c).clone());
            }
        }
        Self::from_entries(self.nvars, self.cols, self.rows, e)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut e = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                e.push(acc);
            }
        }
        Ok(Self::from_entries(self.nvars, self.rows, other.cols, e))
    }

    /// Kronecker product `self ⊗ other`; rows and columns are indexed
    /// `(i, j) ↦ i·other.rows + j`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut e = vec![LaurentPoly::zero(self.nvars); rows * cols];
        for (r1, c1) in (0..self.rows).flat_map(|r| (0..self.cols).map(move |c| (r, c))) {
            let a = self.get(r1, c1);
            if a.is_zero() {
                continue;
            }
            for (r2, c2) in (0..other.rows).flat_map(|r| (0..other.cols).map(move |c| (r, c))) {
                let b = other.get(r2, c2);
                if !b.is_zero() {
                    e[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] = a * b;
                }
            }
        }
        Self::from_entries(self.nvars, rows, cols, e)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut e = vec![LaurentPoly::zero(self.nvars); rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                e[r * cols + c] = self.get(r, c).clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                e[(self.rows + r) * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        Self::from_entries(self.nvars, rows, cols, e)
    }

    /// Entries evaluated at `point`, in the cyclotomic field of its order.
    pub fn evaluate(&self, point: &TorsionPoint) -> Vec<Vec<CyclotomicNumber>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|p| p.evaluate(point)).collect()).collect()
    }

    /// Rank after specializing at `point`.
    pub fn rank_at(&self, point: &TorsionPoint) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        rank_over_field(self.evaluate(point))
    }

    /// Rank over the fraction field of the Laurent ring.
    pub fn generic_rank(&self) -> usize {
        *self.cache.rank.get_or_init(|| self.compute_generic_rank())
    }

    fn compute_generic_rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 || self.is_zero() {
            return 0;
        }
        // A specialization never exceeds the generic rank, so a full-rank
        // sample settles the question; otherwise eliminate exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_7a2c);
        let point = TorsionPoint::from_rationals(
            &(0..self.nvars)
                .map(|_| {
                    let n: i64 = rng.gen_range(2..40);
                    let d: i64 = rng.gen_range(1..40);
                    if rng.gen_bool(0.5) { rat(n, d) } else { rat(-n, d) }
                })
                .collect::<Vec<_>>(),
        );
        if self.rank_at(&point) == full {
            return full;
        }
        self.bareiss_rank()
    }

    /// Fraction-free Gaussian elimination; every division is exact.
    fn bareiss_rank(&self) -> usize {
        let mut a: Vec<Vec<LaurentPoly>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut prev = LaurentPoly::one(self.nvars);
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = &(&a[rank][col] * &a[i][j]) - &(&a[i][col] * &a[rank][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
                a[i][col] = LaurentPoly::zero(self.nvars);
            }
            prev = a[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// All nonzero `k×k` minors, up to associates and without repeats,
    /// in a deterministic order. `k = 0` gives `[1]`.
    pub fn minors(&self, k: usize) -> Result<Arc<Vec<LaurentPoly>>> {
        if let Some(m) = self.cache.minors.lock().unwrap().get(&k) {
            return Ok(m.clone());
        }
        let out = if k == 0 {
            vec![LaurentPoly::one(self.nvars)]
        } else if k > self.rows || k > self.cols || k > self.generic_rank() {
            Vec::new()
        } else if k > MINOR_CAP {
            return Err(ResourceError::MinorSize { requested: k, cap: MINOR_CAP }.into());
        } else {
            self.enumerate_minors(k)
        };
        let out = Arc::new(out);
        self.cache.minors.lock().unwrap().insert(k, out.clone());
        Ok(out)
    }

    fn enumerate_minors(&self, k: usize) -> Vec<LaurentPoly> {
        assert!(self.rows <= 64 && self.cols <= 64, "minor enumeration supports at most 64 rows and columns");
        let mut memo: HashMap<(u64, u64), LaurentPoly> = HashMap::new();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                let d = self.det(rs, cs, &mut memo);
                if d.is_zero() {
                    continue;
                }
                let a = d.primitive_associate();
                if seen.insert(a.clone()) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Determinant of the submatrix on row mask `rs` and column mask `cs`,
    /// by Laplace expansion along the first row with memoized cofactors.
    fn det(&self, rs: u64, cs: u64, memo: &mut HashMap<(u64, u64), LaurentPoly>) -> LaurentPoly {
        if rs == 0 {
            return LaurentPoly::one(self.nvars);
        }
        if let Some(d) = memo.get(&(rs, cs)) {
            return d.clone();
        }
        let r0 = rs.trailing_zeros() as usize;
        let rest = rs & (rs - 1);
        let mut acc = LaurentPoly::zero(self.nvars);
        let mut sign = true;
        let mut cm = cs;
        while cm != 0 {
            let c = cm.trailing_zeros() as usize;
            cm &= cm - 1;
            let e = self.get(r0, c);
            if !e.is_zero() {
                let sub = self.det(rest, cs & !(1 << c), memo);
                if !sub.is_zero() {
                    let t = e * &sub;
                    acc = if sign { &acc + &t } else { &acc - &t };
                }
            }
            sign = !sign;
        }
        memo.insert((rs, cs), acc.clone());
        acc
    }
}

/// All `k`-element subsets of `0..n` as bit masks, in increasing order.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, mask | (1 << i), out);
        }
    }
    if k <= n {
        go(0, n, k, 0, &mut out);
    }
    out
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for PolyMatrix {}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
