//! Seeded random inputs. Trial `t` of a run with seed `s` draws from its own
//! ChaCha stream, so trials can be evaluated in any order.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Element, F2Seq, Ring, Vector};

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Clone, Debug)]
pub struct Sampler {
    ring: Ring,
    /// Integer entries are drawn from `[-int_bound, int_bound]`.
    pub int_bound: i64,
    /// Sequence supports are subsets of `1..=max_index`.
    pub max_index: u64,
    pub max_gens: usize,
}

impl Sampler {
    pub fn new(ring: &Ring) -> Sampler {
        Sampler {
            ring: ring.clone(),
            int_bound: 20,
            max_index: 6,
            max_gens: 3,
        }
    }

    pub fn element(&self, rng: &mut ChaCha8Rng) -> Element {
        match &self.ring {
            Ring::Integers => Element::Int(BigInt::from(
                rng.gen_range(-self.int_bound..=self.int_bound),
            )),
            Ring::ModularIntegers(n) => {
                let n = u64::try_from(n).unwrap_or(u64::MAX);
                self.ring.from_int(rng.gen_range(0..n))
            }
            Ring::IdealizationZF2 => {
                let a = rng.gen_range(-self.int_bound..=self.int_bound);
                Element::Pair(BigInt::from(a), self.support(rng))
            }
        }
    }

    /// A random subset of `1..=max_index`, each index with probability 1/3.
    pub fn support(&self, rng: &mut ChaCha8Rng) -> F2Seq {
        F2Seq::from_indices((1..=self.max_index).filter(|_| rng.gen_ratio(1, 3)))
    }

    pub fn gens(&self, rng: &mut ChaCha8Rng) -> Vec<Element> {
        let k = rng.gen_range(1..=self.max_gens);
        (0..k).map(|_| self.element(rng)).collect()
    }

    pub fn vector(&self, rng: &mut ChaCha8Rng, rank: usize) -> Vector {
        (0..rank).map(|_| self.element(rng)).collect()
    }

    pub fn vectors(&self, rng: &mut ChaCha8Rng, rank: usize) -> Vec<Vector> {
        let k = rng.gen_range(1..=self.max_gens);
        (0..k).map(|_| self.vector(rng, rank)).collect()
    }
}
