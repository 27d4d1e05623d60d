use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, rational_pow, Rational};
use crate::error::{Error, Result};

/// The complex number `scale · e^{2πi·angle}` with `scale > 0` and
/// `angle ∈ [0, 1)`. Negative scales are folded into the angle, so equal
/// numbers have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(String, String)", into = "(String, String)")]
pub struct ScaledRoot {
    scale: Rational,
    angle: Rational,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl ScaledRoot {
    pub fn new(scale: Rational, angle: Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidArgument("torsion point coordinate must be nonzero".into()));
        }
        let (scale, angle) = if scale.is_negative() { (-scale, angle + rat(1, 2)) } else { (scale, angle) };
        Ok(ScaledRoot { scale, angle: frac(&angle) })
    }

    pub fn one() -> Self {
        ScaledRoot { scale: Rational::one(), angle: Rational::zero() }
    }

    pub fn from_rational(q: Rational) -> Result<Self> {
        Self::new(q, Rational::zero())
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn angle(&self) -> &Rational {
        &self.angle
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.angle.is_zero()
    }

    /// The value as a rational number, when the angle is 0 or 1/2.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.angle.is_zero() {
            Some(self.scale.clone())
        } else if self.angle == rat(1, 2) {
            Some(-self.scale.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ScaledRoot { scale: &self.scale * &other.scale, angle: frac(&(&self.angle + &other.angle)) }
    }

    pub fn inv(&self) -> Self {
        ScaledRoot { scale: self.scale.recip(), angle: frac(&(-self.angle.clone())) }
    }

    pub fn pow(&self, e: i64) -> Self {
        let e32 = i32::try_from(e).expect("exponent range");
        ScaledRoot {
            scale: rational_pow(&self.scale, e32),
            angle: frac(&(&self.angle * BigRational::from_integer(BigInt::from(e)))),
        }
    }

    /// Order of the root-of-unity part (denominator of the angle).
    pub fn order(&self) -> u64 {
        self.angle.denom().to_u64().expect("angle denominator fits in u64")
    }

    /// `k` with `angle = k / order` for an `order` divisible by ours.
    pub fn angle_index(&self, order: u64) -> u64 {
        (&self.angle * BigRational::from_integer(BigInt::from(order)))
            .to_integer()
            .to_u64()
            .expect("angle index")
    }

    /// All `n`-th roots, provided the scale has a rational `n`-th root.
    pub fn nth_roots(&self, n: u32) -> Option<Vec<ScaledRoot>> {
        assert!(n > 0);
        let root = |x: &BigInt| -> Option<BigInt> {
            let r = x.nth_root(n);
            (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
        };
        let num = root(self.scale.numer())?;
        let den = root(self.scale.denom())?;
        let scale = BigRational::new(num, den);
        let nn = BigRational::from_integer(BigInt::from(n));
        Some(
            (0..n)
                .map(|k| ScaledRoot {
                    scale: scale.clone(),
                    angle: frac(&((&self.angle + BigRational::from_integer(BigInt::from(k))) / &nn)),
                })
                .collect(),
        )
    }
}

impl TryFrom<(String, String)> for ScaledRoot {
    type Error = Error;
    fn try_from((s, a): (String, String)) -> Result<Self> {
        ScaledRoot::new(parse_rational(&s)?, parse_rational(&a)?)
    }
}

impl From<ScaledRoot> for (String, String) {
    fn from(r: ScaledRoot) -> Self {
        (r.scale.to_string(), r.angle.to_string())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Debug for ScaledRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ScaledRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.scale, self.angle)
    }
}

/// A closed point of the character torus with coordinates in ℚ^{>0}·μ_∞.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorsionPoint {
    coords: Vec<ScaledRoot>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<ScaledRoot>) -> Self {
        TorsionPoint { coords }
    }

    pub fn identity(n: usize) -> Self {
        TorsionPoint { coords: vec![ScaledRoot::one(); n] }
    }

    /// A point with rational coordinates; panics on a zero coordinate.
    pub fn from_rationals(qs: &[Rational]) -> Self {
        TorsionPoint {
            coords: qs.iter().map(|q| ScaledRoot::from_rational(q.clone()).expect("nonzero")).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Result<Self> {
        Ok(TorsionPoint {
            coords: pairs.iter().map(|(q, a)| ScaledRoot::new(q.clone(), a.clone())).collect::<Result<_>>()?,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[ScaledRoot] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(ScaledRoot::is_one)
    }

    /// Every angle is 0, i.e. the point has rational coordinates.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.angle.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        TorsionPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn inv(&self) -> Self {
        TorsionPoint { coords: self.coords.iter().map(ScaledRoot::inv).collect() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Componentwise power `ρ_i^{n_i}`.
    pub fn power(&self, n: &[i64]) -> Self {
        assert_eq!(n.len(), self.len());
        TorsionPoint { coords: self.coords.iter().zip(n).map(|(c, &k)| c.pow(k)).collect() }
    }

    /// The character value `χ_k(ρ) = ∏ ρ_i^{k_i}`.
    pub fn character<E: Copy + Into<i64>>(&self, k: &[E]) -> ScaledRoot {
        assert_eq!(k.len(), self.len());
        self.coords
            .iter()
            .zip(k)
            .fold(ScaledRoot::one(), |acc, (c, &e)| acc.mul(&c.pow(e.into())))
    }

    /// Least common multiple of the angle denominators.
    pub fn order(&self) -> u64 {
        self.coords.iter().fold(1u64, |acc, c| acc.lcm(&c.order()))
    }

    /// All points `μ` with `μ_i^{n_i} = ρ_i`, when the scales admit rational roots.
    pub fn nth_roots(&self, n: &[u32]) -> Option<Vec<TorsionPoint>> {
        assert_eq!(n.len(), self.len());
        let mut acc = vec![Vec::new()];
        for (c, &k) in self.coords.iter().zip(n) {
            let roots = c.nth_roots(k)?;
            let mut next = Vec::with_capacity(acc.len() * roots.len());
            for prefix in &acc {
                for r in &roots {
                    let mut p: Vec<ScaledRoot> = prefix.clone();
                    p.push(r.clone());
                    next.push(p);
                }
            }
            acc = next;
        }
        Some(acc.into_iter().map(TorsionPoint::new).collect())
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
