//! Integer lattices given by generating rows: Hermite normal form, integer
//! kernels and saturation.
//!
//! Arithmetic runs in `i128`; inputs are small desk-scale matrices.

pub type Row = Vec<i64>;

fn to_wide(rows: &[Row]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn to_narrow(rows: Vec<Vec<i128>>) -> Vec<Row> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("lattice entry overflow")).collect())
        .collect()
}

/// `(g, a, b)` with `a·x + b·y = g = gcd(x, y) ≥ 0`.
fn ext_gcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (x, y);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 { (-r0, -s0, -t0) } else { (r0, s0, t0) }
}

/// Row Hermite normal form of the lattice spanned by `rows`: nonzero rows in
/// echelon form, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Equal lattices give equal forms.
pub fn hermite(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut a = to_wide(rows);
    let mut pr = 0;
    for col in 0..ncols {
        let Some(r) = (pr..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(pr, r);
        for r in pr + 1..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let (x, y) = (a[pr][col], a[r][col]);
            let (g, s, t) = ext_gcd(x, y);
            let (u, v) = (x / g, y / g);
            for c in 0..ncols {
                let (p, q) = (a[pr][c], a[r][c]);
                a[pr][c] = s * p + t * q;
                a[r][c] = -v * p + u * q;
            }
        }
        if a[pr][col] < 0 {
            for x in a[pr].iter_mut() {
                *x = -*x;
            }
        }
        let p = a[pr][col];
        for r in 0..pr {
            let q = a[r][col].div_euclid(p);
            if q != 0 {
                for c in 0..ncols {
                    a[r][c] -= q * a[pr][c];
                }
            }
        }
        pr += 1;
        if pr == a.len() {
            break;
        }
    }
    a.truncate(pr);
    to_narrow(a)
}

/// Rank over ℚ.
pub fn rank(rows: &[Row], ncols: usize) -> usize {
    hermite(rows, ncols).len()
}

/// A basis of `{v ∈ ℤ^n : r·v = 0 for every row r}`. The result is saturated.
pub fn integer_kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = to_wide(rows);
    let mut u: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    // Column operations act on columns of m and rows of u (u holds the columns of U as rows).
    let col_op = |m: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, j: usize, s: i128, t: i128, v: i128, w: i128| {
        // (col_i, col_j) ← (s·col_i + t·col_j, v·col_i + w·col_j)
        for row in m.iter_mut() {
            let (p, q) = (row[i], row[j]);
            row[i] = s * p + t * q;
            row[j] = v * p + w * q;
        }
        let (ui, uj) = (u[i].clone(), u[j].clone());
        for k in 0..ui.len() {
            u[i][k] = s * ui[k] + t * uj[k];
            u[j][k] = v * ui[k] + w * uj[k];
        }
    };
    let mut piv = 0;
    for r in 0..m.len() {
        if piv == ncols {
            break;
        }
        for c in piv + 1..ncols {
            if m[r][c] == 0 {
                continue;
            }
            let (x, y) = (m[r][piv], m[r][c]);
            let (g, s, t) = ext_gcd(x, y);
            let (a, b) = (x / g, y / g);
            col_op(&mut m, &mut u, piv, c, s, t, -b, a);
        }
        if m[r][piv] != 0 {
            piv += 1;
        }
    }
    to_narrow(u.split_off(piv))
}

/// The saturation `(K ⊗ ℚ) ∩ ℤ^n` of the lattice spanned by `rows`, in
/// Hermite normal form.
pub fn saturate(rows: &[Row], ncols: usize) -> Vec<Row> {
    let perp = integer_kernel(rows, ncols);
    hermite(&integer_kernel(&perp, ncols), ncols)
}

pub fn is_saturated(rows: &[Row], ncols: usize) -> bool {
    hermite(rows, ncols) == saturate(rows, ncols)
}

/// Whether `v` lies in the ℚ-span of `rows`.
pub fn in_rational_span(rows: &[Row], v: &[i64], ncols: usize) -> bool {
    let mut all = rows.to_vec();
    all.push(v.to_vec());
    rank(&all, ncols) == rank(rows, ncols)
}
