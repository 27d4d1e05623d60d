//! Multivariate Laurent polynomials over ℚ.
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors in ℤ^N to nonzero
//! rationals. Terms live in a `BTreeMap`, so two equal polynomials always
//! have identical representations and iteration order is lexicographic on
//! exponent vectors.

mod cyclotomic;
mod parse;
mod torsion;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cyclotomic::{rank_over_field, CyclotomicField, CyclotomicNumber};
pub use torsion::{ScaledRoot, TorsionPoint};
pub(crate) use torsion::parse_rational;

pub type Rational = BigRational;
pub type Exponent = Vec<i32>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Variable names and the torus/abelian split of the character torus.
///
/// Variables `0..torus_rank` are torus coordinates, the following
/// `2 * abelian_rank` are abelian coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    names: Vec<String>,
    torus_rank: usize,
    abelian_rank: usize,
}

impl RingContext {
    pub fn new(names: Vec<String>, torus_rank: usize, abelian_rank: usize) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("ring needs at least one variable".into()));
        }
        if torus_rank + 2 * abelian_rank != names.len() {
            return Err(Error::InvalidArgument(format!(
                "split m={torus_rank}, g={abelian_rank} does not match {} variables",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidArgument(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(RingContext { names, torus_rank, abelian_rank })
    }

    /// `t1..tN` with the given split.
    pub fn standard(torus_rank: usize, abelian_rank: usize) -> Result<Self> {
        let n = torus_rank + 2 * abelian_rank;
        Self::new((1..=n).map(|i| format!("t{i}")).collect(), torus_rank, abelian_rank)
    }

    pub fn torus(m: usize) -> Self {
        Self::standard(m, 0).expect("torus context")
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn abelian_rank(&self) -> usize {
        self.abelian_rank
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.num_vars())
    }

    pub fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.num_vars())
    }

    pub fn var(&self, i: usize) -> LaurentPoly {
        LaurentPoly::var(self.num_vars(), i)
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPoly> {
        parse::parse_poly(self, s)
    }

    pub fn check(&self, p: &LaurentPoly) -> Result<()> {
        if p.nvars() != self.num_vars() {
            return Err(Error::ContextMismatch(format!(
                "polynomial in {} variables used in a ring with {}",
                p.nvars(),
                self.num_vars()
            )));
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, p: &'a LaurentPoly) -> PolyDisplay<'a> {
        PolyDisplay { poly: p, names: &self.names }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> + '_ {
        self.terms.iter()
    }

    /// A single term `c·t^e` with `c ≠ 0`; these are exactly the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: &[i32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} variables vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift_monomial(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum of the exponents, `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    /// The ring map `t_i ↦ λ_i · t_i^{n_i}`.
    pub fn substitute(&self, map: &[(Rational, i32)]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::ContextMismatch(format!(
                "substitution for {} variables applied to a polynomial in {}",
                map.len(),
                self.nvars
            )));
        }
        for (i, (l, n)) in map.iter().enumerate() {
            if l.is_zero() || *n == 0 {
                return Err(Error::InvalidArgument(format!(
                    "substitution for variable {} needs nonzero scalar and exponent",
                    i + 1
                )));
            }
        }
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut ne = Vec::with_capacity(self.nvars);
            for (&ei, (l, n)) in e.iter().zip(map) {
                coef *= rational_pow(l, ei);
                ne.push(ei * n);
            }
            out.add_term(ne, coef);
        }
        Ok(out)
    }

    /// Renames variables into a ring with `nvars` variables: variable `i`
    /// becomes variable `target[i]`.
    pub fn embed(&self, nvars: usize, target: &[usize]) -> Self {
        assert_eq!(target.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[target[i]] += x;
            }
            (ne, c.clone())
        });
        LaurentPoly::from_terms(nvars, terms)
    }

    /// Exact value at a torsion point, in ℚ(ζ_L) for `L` the common order of
    /// the point's angles.
    pub fn evaluate(&self, point: &TorsionPoint) -> CyclotomicNumber {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let field = CyclotomicField::get(point.order());
        let mut acc = CyclotomicNumber::zero(&field);
        for (e, c) in &self.terms {
            let v = point.character(e.as_slice());
            let k = v.angle_index(field.order());
            acc.add_scaled_root(&(c * v.scale()), k);
        }
        acc
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.nvars));
        }
        // Normalize both to polynomials; the divisor loses its monomial
        // content, so a Laurent quotient is then a genuine polynomial.
        let sa = self.min_exponents().unwrap();
        let sd = d.min_exponents().unwrap();
        let neg = |v: &Exponent| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift_monomial(&neg(&sa));
        let div = d.shift_monomial(&neg(&sd));
        let (lead_e, lead_c) = div.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = c / &lead_c;
            let step = LaurentPoly::monomial(self.nvars, qe.clone(), qc.clone());
            rem = &rem - &(&step * &div);
            quot.add_term(qe, qc);
        }
        let shift: Exponent = sa.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Some(quot.shift_monomial(&shift))
    }

    /// Makes a polynomial: clears negative exponents and monomial content by
    /// a unit monomial factor and denominators by an integer factor. Returns
    /// integer terms; this is an associate of `self` in the Laurent ring.
    pub fn to_integer_polynomial(&self) -> Vec<(Vec<u32>, BigInt)> {
        let Some(shift) = self.min_exponents() else {
            return Vec::new();
        };
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let ue = e.iter().zip(&shift).map(|(a, b)| (a - b) as u32).collect();
                let ic = (c * BigRational::from_integer(den.clone())).to_integer();
                (ue, ic)
            })
            .collect()
    }

    /// The associate with nonnegative exponents touching every coordinate
    /// hyperplane, coprime integer coefficients and a positive lex-leading
    /// coefficient. Two polynomials are associates iff these agree.
    pub fn primitive_associate(&self) -> Self {
        let mut terms = self.to_integer_polynomial();
        let mut g = BigInt::zero();
        for (_, c) in &terms {
            g = g.gcd(c);
        }
        if let Some((_, lead)) = terms.iter().max_by(|a, b| a.0.cmp(&b.0)) {
            if lead.is_negative() {
                g = -g;
            }
        }
        if !g.is_zero() {
            for (_, c) in &mut terms {
                *c /= &g;
            }
        }
        Self::from_integer_polynomial(self.nvars, &terms)
    }

    pub fn from_integer_polynomial(nvars: usize, terms: &[(Vec<u32>, BigInt)]) -> Self {
        LaurentPoly::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&x| x as i32).collect(), BigRational::from_integer(c.clone()))),
        )
    }
}

pub(crate) fn rational_pow(x: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.poly, |i| self.names[i].clone())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, |i| format!("t{}", i + 1))
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &LaurentPoly, name: impl Fn(usize) -> String) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { name(i) } else { format!("{}^{}", name(i), x) })
            .collect();
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{}", mono.join("*"))?;
        } else {
            write!(f, "{a}*{}", mono.join("*"))?;
        }
    }
    Ok(())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics when the operands live in rings of different size; use
            /// the `try_*` methods to get an error instead.
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("ring context mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
