//! Brute-force reference computations, deliberately sharing no code with the
//! library: ranks and invariant factors from determinantal divisors
//! (gcds of all k×k minors), and the numerical perversity conditions
//! evaluated straight from jumping ideals or from lattice ranks.

use std::collections::BTreeSet;

use perverse_loci::complexes::FreeComplex;
use perverse_loci::ext::ExtInt;
use perverse_loci::perversity::LociProfile;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All `k×k` minors of an integer matrix.
pub fn minors(rows: &[Vec<i64>], ncols: usize, k: usize) -> Vec<i128> {
    let mut out = Vec::new();
    for rs in subsets(rows.len(), k) {
        for cs in subsets(ncols, k) {
            let m: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect()).collect();
            out.push(det(&m));
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Largest `k` with a nonzero `k×k` minor.
pub fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    (1..=rows.len().min(ncols)).rev().find(|&k| minors(rows, ncols, k).iter().any(|&d| d != 0)).unwrap_or(0)
}

/// Invariant factors `D_k / D_{k−1}` of the Smith normal form, where `D_k`
/// is the gcd of the `k×k` minors.
pub fn invariant_factors(rows: &[Vec<i64>], ncols: usize) -> Vec<i128> {
    let r = rank(rows, ncols);
    let divisors: Vec<i128> = (0..=r).map(|k| if k == 0 { 1 } else { minors(rows, ncols, k).into_iter().fold(0, gcd) }).collect();
    (1..=r).map(|k| divisors[k] / divisors[k - 1]).collect()
}

pub fn is_saturated(rows: &[Vec<i64>], ncols: usize) -> bool {
    invariant_factors(rows, ncols).iter().all(|&f| f == 1)
}

/// `(d, g″, d − g″)` with `g″` half the rank of the abelian projection, or
/// `None` when that rank is odd.
pub fn codims(rows: &[Vec<i64>], m: usize, g: usize) -> Option<(usize, usize, usize)> {
    let n = m + 2 * g;
    let d = rank(rows, n);
    let projected: Vec<Vec<i64>> = rows.iter().map(|r| r[m..].to_vec()).collect();
    let pa = rank(&projected, 2 * g);
    if pa % 2 == 1 {
        return None;
    }
    Some((d, pa / 2, d - pa / 2))
}

/// Violations of the torus perversity criterion (nothing above degree 0,
/// `codim V^i ≥ −i` below), read off the jumping ideals of a complex.
pub fn torus_violations(f: &FreeComplex) -> BTreeSet<(i32, &'static str)> {
    let mut out = BTreeSet::new();
    for i in f.min_degree() - 1..=f.max_degree() + 1 {
        let j = f.jumping_ideal(i).expect("jumping ideal");
        let codim = j.codimension().expect("codimension");
        if codim == ExtInt::PosInf {
            continue;
        }
        if i > 0 {
            out.insert((i, "upper"));
        }
        if i <= 0 && codim < -i64::from(i) {
            out.insert((i, "lower"));
        }
    }
    out
}

/// Violations of `codim V^i ≥ |2i|` on a profile over an abelian ring,
/// with codimensions recomputed from the lattices.
pub fn abelian_violations(p: &LociProfile) -> BTreeSet<(i32, &'static str)> {
    let n = p.context().num_vars();
    let mut out = BTreeSet::new();
    for (&i, u) in p.loci() {
        let Some(codim) = u.components().iter().map(|c| rank(c.lattice(), n)).min() else { continue };
        if (codim as i64) < 2 * i64::from(i).abs() {
            out.insert((i, if i > 0 { "upper" } else { "lower" }));
        }
    }
    out
}
