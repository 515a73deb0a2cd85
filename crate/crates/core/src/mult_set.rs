//! Finitely generated multiplicative monoids `S = {Π gᵢ^eᵢ}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultSetError {
    #[error("zero generator {0} needs the degenerate mode")]
    ZeroGenerator(String),
    #[error("element {0} is not in ring {1}")]
    ForeignElement(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSet {
    ring: Ring,
    gens: Vec<Element>,
    degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetMembership {
    Found(Vec<u32>),
    Absent,
    Inconclusive,
}

/// Stop enumerating exponent vectors past this many products.
const MAX_PRODUCTS: usize = 1 << 16;

impl MultSet {
    pub fn new(ring: &Ring, gens: Vec<Element>) -> Result<MultSet, MultSetError> {
        MultSet::build(ring, gens, false)
    }

    /// Allows `0 ∈ S`, which makes every module S-finite.
    pub fn degenerate(ring: &Ring, gens: Vec<Element>) -> Result<MultSet, MultSetError> {
        MultSet::build(ring, gens, true)
    }

    /// `S = {1}`.
    pub fn trivial(ring: &Ring) -> MultSet {
        MultSet {
            ring: ring.clone(),
            gens: vec![],
            degenerate: false,
        }
    }

    fn build(ring: &Ring, gens: Vec<Element>, degenerate: bool) -> Result<MultSet, MultSetError> {
        for g in &gens {
            if !ring.contains(g) {
                return Err(MultSetError::ForeignElement(
                    g.to_string(),
                    ring.to_string(),
                ));
            }
            if ring.is_zero(g) && !degenerate {
                return Err(MultSetError::ZeroGenerator(g.to_string()));
            }
        }
        Ok(MultSet {
            ring: ring.clone(),
            gens,
            degenerate,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `Π gens_i ^ exps_i`.
    pub fn element(&self, exps: &[u32]) -> Element {
        assert_eq!(exps.len(), self.gens.len(), "one exponent per generator");
        self.gens
            .iter()
            .zip(exps)
            .fold(self.ring.one(), |acc, (g, &e)| {
                self.ring.mul(&acc, &self.ring.pow(g, e))
            })
    }

    /// Largest exponent of `g` worth trying when looking for `t`.
    fn exponent_bound(&self, g: &Element, t: &Element) -> u64 {
        match &self.ring {
            Ring::ModularIntegers(n) => u64::try_from(n).unwrap_or(u64::MAX),
            _ => {
                let (a, b) = (g.int_part().abs(), t.int_part().abs());
                if a <= BigInt::from(1) || b.is_zero() {
                    return 2;
                }
                let mut e = 0;
                let mut p = a.clone();
                while p <= b {
                    p *= &a;
                    e += 1;
                }
                e
            }
        }
    }

    /// Exponent vectors with `e_i ≤ caps_i`, by total degree then
    /// lexicographically.
    fn exponent_vectors(caps: &[u64]) -> impl Iterator<Item = Vec<u32>> + '_ {
        let max_degree: u64 = caps.iter().sum();
        (0..=max_degree).flat_map(move |deg| {
            let mut out = Vec::new();
            let mut cur = vec![0u32; caps.len()];
            compositions(caps, deg, 0, &mut cur, &mut out);
            out
        })
    }

    /// Decides `t ∈ S` within an exponent budget per generator.
    pub fn contains(&self, t: &Element, budget: u32) -> SetMembership {
        assert!(budget >= 1, "budget must be positive");
        if !self.ring.contains(t) {
            return SetMembership::Absent;
        }
        let mut truncated = false;
        let caps: Vec<u64> = self
            .gens
            .iter()
            .map(|g| {
                let b = self.exponent_bound(g, t);
                if b > u64::from(budget) {
                    truncated = true;
                    u64::from(budget)
                } else {
                    b
                }
            })
            .collect();
        for (visited, exps) in MultSet::exponent_vectors(&caps).enumerate() {
            if visited >= MAX_PRODUCTS {
                return SetMembership::Inconclusive;
            }
            if &self.element(&exps) == t {
                return SetMembership::Found(exps);
            }
        }
        if truncated {
            SetMembership::Inconclusive
        } else {
            SetMembership::Absent
        }
    }

    /// Distinct elements of S of total degree at most `max_degree`, in
    /// enumeration order, each with its exponent vector.
    pub fn elements_up_to(&self, max_degree: u32) -> Vec<(Vec<u32>, Element)> {
        let caps = vec![u64::from(max_degree); self.gens.len()];
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for exps in MultSet::exponent_vectors(&caps) {
            if exps.iter().map(|&e| u64::from(e)).sum::<u64>() > u64::from(max_degree) {
                break;
            }
            if out.len() >= MAX_PRODUCTS {
                break;
            }
            let s = self.element(&exps);
            if seen.insert(s.clone()) {
                out.push((exps, s));
            }
        }
        out
    }
}

fn compositions(caps: &[u64], rest: u64, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == caps.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let tail: u64 = caps[i + 1..].iter().sum();
    let lo = rest.saturating_sub(tail);
    let hi = rest.min(caps[i]);
    if lo > hi {
        return;
    }
    for e in (lo..=hi).rev() {
        cur[i] = e as u32;
        compositions(caps, rest - e, i + 1, cur, out);
    }
    cur[i] = 0;
}
