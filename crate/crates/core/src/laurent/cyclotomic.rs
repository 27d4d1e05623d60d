//! Exact arithmetic in cyclotomic fields ℚ(ζ_L), ζ_L = e^{2πi/L}.
//!
//! Elements are stored as coefficient vectors on the power basis
//! `1, ζ, …, ζ^{φ(L)-1}` and reduced modulo the cyclotomic polynomial Φ_L.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{Rational, ScaledRoot};

type UPoly = Vec<Rational>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder of `a / b` for `b` nonzero.
fn divmod(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[shift + i] -= t;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn cyclotomic_polynomial(n: u64) -> UPoly {
    let mut p: UPoly = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = divmod(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

pub struct CyclotomicField {
    order: u64,
    modulus: UPoly,
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    /// The shared field of the given order.
    pub fn get(order: u64) -> Arc<CyclotomicField> {
        assert!(order > 0);
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&order) {
            return f.clone();
        }
        let field = Arc::new(Self::build(order));
        cache.lock().unwrap().entry(order).or_insert(field).clone()
    }

    fn build(order: u64) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let deg = modulus.len() - 1;
        let powers = (0..order as usize)
            .map(|k| {
                let mut xk = vec![Rational::zero(); k + 1];
                xk[k] = Rational::one();
                let (_, mut r) = divmod(&xk, &modulus);
                r.resize(deg, Rational::zero());
                r
            })
            .collect();
        CyclotomicField { order, modulus, powers }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, p: &UPoly) -> Vec<Rational> {
        let (_, mut r) = divmod(p, &self.modulus);
        r.resize(self.degree(), Rational::zero());
        r
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber { field: field.clone(), coeffs: vec![Rational::zero(); field.degree()] }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Adds `c · ζ^k`.
    pub fn add_scaled_root(&mut self, c: &Rational, k: u64) {
        if c.is_zero() {
            return;
        }
        let pw = &self.field.powers[(k % self.field.order) as usize];
        for (a, b) in self.coeffs.iter_mut().zip(pw) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Writes the value as `q·e^{2πi k/L}` when it has that shape.
    pub fn as_scaled_root(&self) -> Option<ScaledRoot> {
        if self.is_zero() {
            return None;
        }
        let l = self.field.order;
        for k in 0..l {
            let mut rot = Self::zero(&self.field);
            rot.add_scaled_root(&Rational::one(), (l - k) % l);
            if let Some(q) = self.mul(&rot).to_rational() {
                let angle = Rational::new(k.into(), l.into());
                return ScaledRoot::new(q, angle).ok();
            }
        }
        None
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.field.order, other.field.order, "cyclotomic field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = mul(&self.coeffs, &other.coeffs);
        CyclotomicNumber { field: self.field.clone(), coeffs: self.field.reduce(&p) }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo Φ_L.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (self.field.modulus.clone(), a);
        let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_L is irreducible.
        let c = r0[0].recip();
        let s: UPoly = s0.iter().map(|x| x * &c).collect();
        Some(CyclotomicNumber { field: self.field.clone(), coeffs: self.field.reduce(&s) })
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*z^{i}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} (z = zeta_{})", terms.join(" + "), self.field.order)
        }
    }
}

/// Rank of a matrix over a cyclotomic field by Gaussian elimination.
pub fn rank_over_field(mut rows: Vec<Vec<CyclotomicNumber>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].mul(&inv);
            for c in col..ncols {
                let t = f.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&t);
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{int, rat};

    #[test]
    fn cyclotomic_polynomials() {
        let as_ints = |p: UPoly| p.iter().map(|c| c.to_integer().to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(as_ints(cyclotomic_polynomial(1)), "-1,1");
        assert_eq!(as_ints(cyclotomic_polynomial(4)), "1,0,1");
        assert_eq!(as_ints(cyclotomic_polynomial(6)), "1,-1,1");
        assert_eq!(as_ints(cyclotomic_polynomial(12)), "1,0,-1,0,1");
    }

    #[test]
    fn sixth_roots_sum_to_zero() {
        let f = CyclotomicField::get(6);
        let mut s = CyclotomicNumber::zero(&f);
        for k in 0..6 {
            s.add_scaled_root(&int(1), k);
        }
        assert!(s.is_zero());
        let mut w = CyclotomicNumber::zero(&f);
        w.add_scaled_root(&int(1), 2);
        // ζ_3^3 = 1
        assert_eq!(w.mul(&w).mul(&w).to_rational(), Some(int(1)));
    }

    #[test]
    fn inverse_round_trips() {
        let f = CyclotomicField::get(12);
        let mut a = CyclotomicNumber::zero(&f);
        a.add_scaled_root(&rat(3, 2), 1);
        a.add_scaled_root(&int(-5), 7);
        a.add_scaled_root(&int(2), 0);
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b).to_rational(), Some(int(1)));
        assert!(CyclotomicNumber::zero(&f).inv().is_none());
    }

    #[test]
    fn rank_of_vandermonde_on_roots() {
        let f = CyclotomicField::get(3);
        let e = |k| {
            let mut z = CyclotomicNumber::zero(&f);
            z.add_scaled_root(&int(1), k);
            z
        };
        // rows (1, ω^k) for k = 0,1 are independent; third row duplicates the first.
        let m = vec![vec![e(0), e(0)], vec![e(0), e(1)], vec![e(0), e(3)]];
        assert_eq!(rank_over_field(m), 2);
    }
}
