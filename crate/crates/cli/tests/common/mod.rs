//! Brute-force oracles written independently of the library's linear
//! algebra: set enumeration over ℤ/n, a small Hermite reduction over ℤ,
//! bitmask elimination over F₂ and pair multiplication by hand.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use scoherent::ideal::StructuredIdeal;
use scoherent::ring::{Element, F2Seq};

pub fn residue(x: &Element) -> u64 {
    match x {
        Element::Res(v) | Element::Int(v) => v.to_u64().expect("small residue"),
        Element::Pair(..) => panic!("not a residue"),
    }
}

pub fn int(x: &Element) -> i128 {
    x.int_part().to_i128().expect("small integer")
}

/// The ideal of ℤ/n generated by `gens`, as a membership table.
pub fn zmod_ideal(n: u64, gens: &[u64]) -> Vec<bool> {
    let mut member = vec![false; n as usize];
    member[0] = true;
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = (x + g) % n;
            if !member[y as usize] {
                member[y as usize] = true;
                frontier.push(y);
            }
        }
    }
    member
}

pub fn zmod_colon(n: u64, ideal: &[bool], a: u64) -> Vec<bool> {
    (0..n).map(|r| ideal[(r * a % n) as usize]).collect()
}

pub fn zmod_annihilator(n: u64, x: &[u64]) -> Vec<bool> {
    (0..n).map(|r| x.iter().all(|xi| r * xi % n == 0)).collect()
}

/// Additive closure of `gens` in (ℤ/n)^k.
pub fn zmod_span(n: u64, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let k = gens.first().map_or(0, Vec::len);
    let zero = vec![0; k];
    let mut seen = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

pub fn zmod_submodule_colon(n: u64, span: &HashSet<Vec<u64>>, m: &[u64]) -> Vec<bool> {
    (0..n)
        .map(|r| span.contains(&m.iter().map(|x| r * x % n).collect::<Vec<_>>()))
        .collect()
}

/// Membership table of a library ideal over ℤ/n.
pub fn table(n: u64, i: &StructuredIdeal) -> Vec<bool> {
    let ring = i.ring();
    (0..n).map(|x| i.contains(&ring.from_int(x))).collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Row echelon form over ℤ with positive pivots; returns `(rows, pivot columns)`.
pub fn int_echelon(gens: &[Vec<i128>], k: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut rows: Vec<Vec<i128>> = gens.to_vec();
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..k {
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::new();
        for r in rows.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            pivot = Some(match pivot {
                None => r,
                Some(p) => {
                    let (g, x, y) = ext_gcd(p[col], r[col]);
                    let (a, b) = (p[col] / g, r[col] / g);
                    let combined: Vec<i128> =
                        p.iter().zip(&r).map(|(u, v)| x * u + y * v).collect();
                    rest.push(p.iter().zip(&r).map(|(u, v)| b * u - a * v).collect());
                    combined
                }
            });
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col] < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(p);
            pivots.push(col);
        }
    }
    (out, pivots)
}

/// Is `v` in the ℤ-span of `gens`?
pub fn int_member(gens: &[Vec<i128>], v: &[i128]) -> bool {
    let k = v.len();
    let (rows, pivots) = int_echelon(gens, k);
    let mut v = v.to_vec();
    let mut next = 0;
    for col in 0..k {
        if next < pivots.len() && pivots[next] == col {
            let p = &rows[next];
            if v[col] % p[col] != 0 {
                return false;
            }
            let q = v[col] / p[col];
            v.iter_mut().zip(p).for_each(|(x, y)| *x -= q * y);
            next += 1;
        } else if v[col] != 0 {
            return false;
        }
    }
    true
}

/// Rank over ℚ of the integer vectors (fraction-free elimination).
pub fn rational_rank(vs: &[Vec<i128>]) -> usize {
    let k = vs.first().map_or(0, Vec::len);
    int_echelon(vs, k).1.len()
}

/// `(a, b)(c, d) = (ac, ā·d + c̄·b)` with supports as index sets.
pub fn pair_mul(x: (i128, &[u64]), y: (i128, &[u64])) -> (i128, Vec<u64>) {
    let mut support: Vec<u64> = Vec::new();
    let mut toggle = |i: u64| match support.iter().position(|&j| j == i) {
        Some(p) => {
            support.remove(p);
        }
        None => support.push(i),
    };
    if x.0.rem_euclid(2) == 1 {
        y.1.iter().for_each(|&i| toggle(i));
    }
    if y.0.rem_euclid(2) == 1 {
        x.1.iter().for_each(|&i| toggle(i));
    }
    support.sort_unstable();
    (x.0 * y.0, support)
}

pub fn indices(s: &F2Seq) -> Vec<u64> {
    s.indices().collect()
}

pub fn mask(indices: &[u64]) -> u128 {
    indices.iter().fold(0, |m, &i| m | (1u128 << i))
}

/// Is `target` in the F₂-span of `vs`?
pub fn f2_in_span(vs: &[u128], target: u128) -> bool {
    let mut basis: Vec<u128> = Vec::new();
    for &v in vs {
        let r = basis.iter().fold(v, |acc, &b| acc.min(acc ^ b));
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.iter().fold(target, |acc, &b| acc.min(acc ^ b)) == 0
}

/// 2^(n+1) by repeated doubling.
pub fn doubled(n: u32) -> BigInt {
    (0..=n).fold(BigInt::from(1), |acc, _| &acc + &acc)
}
