//! Seeded generation of test points on the character torus.

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{rat, ScaledRoot, TorsionPoint};

/// All points whose coordinates are roots of unity of order dividing `order`.
pub fn torsion_grid(nvars: usize, order: u64) -> Vec<TorsionPoint> {
    let mut acc: Vec<Vec<ScaledRoot>> = vec![Vec::new()];
    for _ in 0..nvars {
        acc = acc
            .into_iter()
            .flat_map(|p| {
                (0..order).map(move |k| {
                    let mut q = p.clone();
                    q.push(ScaledRoot::new(rat(1, 1), rat(k as i64, order as i64)).expect("unit scale"));
                    q
                })
            })
            .collect();
    }
    acc.into_iter().map(TorsionPoint::new).collect()
}

/// A deterministic source of points.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero rational with small numerator and denominator, either sign.
    pub fn rational(&mut self) -> crate::laurent::Rational {
        let n: i64 = self.rng.gen_range(1..12);
        let d: i64 = self.rng.gen_range(1..12);
        if self.rng.gen_bool(0.5) { rat(n, d) } else { rat(-n, d) }
    }

    /// A root of unity of order dividing 12, scaled by 1 or a random positive rational.
    pub fn coordinate(&mut self) -> ScaledRoot {
        let order: i64 = *[1, 2, 3, 4, 6, 12].choose(&mut self.rng).unwrap();
        let k = self.rng.gen_range(0..order);
        let scale = if self.rng.gen_bool(0.5) { rat(1, 1) } else { self.rational().abs() };
        ScaledRoot::new(scale, rat(k, order)).expect("nonzero scale")
    }

    pub fn rational_point(&mut self, nvars: usize) -> TorsionPoint {
        TorsionPoint::from_rationals(&(0..nvars).map(|_| self.rational()).collect::<Vec<_>>())
    }

    pub fn torsion_point(&mut self, nvars: usize) -> TorsionPoint {
        TorsionPoint::new((0..nvars).map(|_| self.coordinate()).collect())
    }

    /// `count` points, alternating rational and mixed torsion points.
    pub fn points(&mut self, nvars: usize, count: usize) -> Vec<TorsionPoint> {
        (0..count).map(|k| if k % 2 == 0 { self.rational_point(nvars) } else { self.torsion_point(nvars) }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size_and_orders() {
        let g = torsion_grid(2, 6);
        assert_eq!(g.len(), 36);
        assert!(g.iter().all(|p| 6 % p.order() == 0));
        assert!(g.contains(&TorsionPoint::identity(2)));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = Sampler::new(7).points(3, 20);
        let b = Sampler::new(7).points(3, 20);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).points(3, 20));
    }
}
