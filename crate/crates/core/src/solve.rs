//! Decidable linear solving and relation modules in Rⁿ.
//!
//! A system is a list of regular columns `g_1..g_k ∈ Rⁿ` (any coefficient in
//! R) plus, in the idealization only, "sequence columns" `u_1..u_f ∈ F₂ⁿ`
//! whose coefficients range over (ℤ/2ℤ)^(ℕ): column `u` with coefficient `w`
//! contributes `(0, u_j · w)` in coordinate `j`.
//!
//! Over the idealization a coefficient is `(x, y)`, and `(x, y)·(α, β)` has
//! integer part `xα` and sequence part `x̄β + ᾱy`. The integer parts therefore
//! form an ordinary ℤ-system; the sequence parts then impose, index by index,
//! an F₂ condition that only depends on the parities of the integer solution.
//! That parity set is an affine F₂ space, handled through its basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::f2::{self, F2Vec};
use crate::linalg::int::echelon;
use crate::ring::{Element, F2Seq, Ring, Vector};

/// Coefficients recombining a target, see [`solve_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub coeffs: Vec<Element>,
    pub seq_coeffs: Vec<F2Seq>,
}

/// The relation module of a system, in the same shape as a submodule:
/// R-span of `gens` plus `span(seq_dirs) ⊗ (ℤ/2ℤ)^(ℕ)`. Coordinates are the
/// regular columns followed by the sequence columns.
#[derive(Clone, Debug)]
pub struct Relations {
    pub gens: Vec<Vector>,
    pub seq_dirs: Vec<F2Vec>,
}

/// Evaluates `Σ coeffs_i g_i + Σ (0, u_t ⊗ w_t)`.
pub fn evaluate(
    ring: &Ring,
    n: usize,
    cols: &[Vector],
    seq_cols: &[F2Vec],
    sol: &Solution,
) -> Vector {
    let mut acc = ring.combine(&sol.coeffs, cols, n);
    for (u, w) in seq_cols.iter().zip(&sol.seq_coeffs) {
        for (j, &bit) in u.iter().enumerate() {
            if bit {
                acc[j] = ring.add(&acc[j], &Element::Pair(BigInt::zero(), w.clone()));
            }
        }
    }
    acc
}

/// Finds coefficients with `Σ c_i g_i + Σ (0, u_t ⊗ w_t) = target`, or `None`
/// when the target is outside the span. Total for all supported rings.
pub fn solve_system(
    ring: &Ring,
    n: usize,
    cols: &[Vector],
    seq_cols: &[F2Vec],
    target: &[Element],
) -> Option<Solution> {
    assert_eq!(target.len(), n, "target length must match the ambient rank");
    assert!(
        seq_cols.is_empty() || ring.is_idealization(),
        "sequence columns need the idealization"
    );
    let sol = match ring {
        Ring::Integers => {
            let e = echelon(&int_rows(cols, n), n);
            let c = e.solve(&ints(target))?;
            Solution {
                coeffs: c.into_iter().map(Element::Int).collect(),
                seq_coeffs: vec![],
            }
        }
        Ring::ModularIntegers(m) => {
            let k = cols.len();
            let e = echelon(&modular_rows(cols, n, m), n);
            let c = e.solve(&ints(target))?;
            Solution {
                coeffs: c.into_iter().take(k).map(|v| ring.from_int(v)).collect(),
                seq_coeffs: vec![],
            }
        }
        Ring::IdealizationZF2 => IdzSystem::new(n, cols, seq_cols).solve(target)?,
    };
    debug_assert_eq!(evaluate(ring, n, cols, seq_cols, &sol), target);
    Some(sol)
}

/// All relations among the columns of a system.
pub fn relations(ring: &Ring, n: usize, cols: &[Vector], seq_cols: &[F2Vec]) -> Relations {
    assert!(
        seq_cols.is_empty() || ring.is_idealization(),
        "sequence columns need the idealization"
    );
    match ring {
        Ring::Integers => {
            let e = echelon(&int_rows(cols, n), n);
            Relations {
                gens: e
                    .kernel()
                    .into_iter()
                    .map(|r| r.into_iter().map(Element::Int).collect())
                    .collect(),
                seq_dirs: vec![],
            }
        }
        Ring::ModularIntegers(m) => {
            let k = cols.len();
            let e = echelon(&modular_rows(cols, n, m), n);
            let mut seen = BTreeSet::new();
            let mut gens = Vec::new();
            for row in e.kernel() {
                let v: Vector = row.into_iter().take(k).map(|x| ring.from_int(x)).collect();
                if !ring.is_zero_vector(&v) && seen.insert(v.clone()) {
                    gens.push(v);
                }
            }
            Relations {
                gens,
                seq_dirs: vec![],
            }
        }
        Ring::IdealizationZF2 => IdzSystem::new(n, cols, seq_cols).relations(),
    }
}

fn ints(v: &[Element]) -> Vec<BigInt> {
    v.iter().map(|x| x.int_part().clone()).collect()
}

fn int_rows(cols: &[Vector], n: usize) -> Vec<Vec<BigInt>> {
    cols.iter()
        .map(|c| {
            assert_eq!(c.len(), n, "column length must match the ambient rank");
            ints(c)
        })
        .collect()
}

/// Columns followed by `m·e_j`, so that solving over ℤ solves modulo `m`.
fn modular_rows(cols: &[Vector], n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rows = int_rows(cols, n);
    for j in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[j] = m.clone();
        rows.push(r);
    }
    rows
}

struct IdzSystem<'a> {
    n: usize,
    cols: &'a [Vector],
    /// Parity matrix `[ᾱ | U]`, n rows.
    parity: Vec<F2Vec>,
    /// Left kernel of `parity`: functionals vanishing on its column space.
    annihilators: Vec<F2Vec>,
    width: usize,
}

impl<'a> IdzSystem<'a> {
    fn new(n: usize, cols: &'a [Vector], seq_cols: &[F2Vec]) -> Self {
        let k = cols.len();
        let width = k + seq_cols.len();
        let parity: Vec<F2Vec> = (0..n)
            .map(|j| {
                let mut row: F2Vec = cols.iter().map(|c| c[j].int_part_is_odd()).collect();
                row.extend(seq_cols.iter().map(|u| u[j]));
                row
            })
            .collect();
        let annihilators = f2::nullspace(&f2::transpose(&parity, width), n);
        IdzSystem {
            n,
            cols,
            parity,
            annihilators,
            width,
        }
    }

    fn k(&self) -> usize {
        self.cols.len()
    }

    /// Column of `β_i` at sequence index `l`, as a vector in F₂ⁿ.
    fn seq_column(&self, i: usize, l: u64) -> F2Vec {
        self.cols[i]
            .iter()
            .map(|x| x.seq_part().is_some_and(|b| b.contains(l)))
            .collect()
    }

    fn support(&self, target: Option<&[Element]>) -> Vec<u64> {
        let mut s = BTreeSet::new();
        for c in self.cols {
            for x in c {
                s.extend(x.seq_part().into_iter().flat_map(F2Seq::indices));
            }
        }
        if let Some(t) = target {
            for x in t {
                s.extend(x.seq_part().into_iter().flat_map(F2Seq::indices));
            }
        }
        s.into_iter().collect()
    }

    /// Sequence coefficients for a fixed integer solution `x`: at each index
    /// solve `[ᾱ | U]·y = σ[l] + Σ x̄_i β_i[l]`.
    fn sequence_part(
        &self,
        x: &[BigInt],
        sigma: Option<&[Element]>,
        support: &[u64],
    ) -> Option<Vec<F2Seq>> {
        let p: Vec<bool> = x.iter().map(Integer::is_odd).collect();
        let mut out = vec![F2Seq::new(); self.width];
        for &l in support {
            let mut rhs: F2Vec = match sigma {
                Some(t) => t
                    .iter()
                    .map(|e| e.seq_part().is_some_and(|b| b.contains(l)))
                    .collect(),
                None => vec![false; self.n],
            };
            for (i, &pi) in p.iter().enumerate() {
                if pi {
                    f2::add_into(&mut rhs, &self.seq_column(i, l));
                }
            }
            let y = f2::solve(&self.parity, self.width, &rhs)?;
            for (t, &bit) in y.iter().enumerate() {
                if bit {
                    out[t].toggle(l);
                }
            }
        }
        Some(out)
    }

    /// F₂ constraints on the lattice parameter `z̄`: rows and right-hand sides
    /// of `h·σ[l] + Σ_i p_i h·β_i[l] = 0` with `p = x̄0 + L̄ z̄`.
    fn parity_constraints(
        &self,
        x0: &[BigInt],
        lattice: &[Vec<BigInt>],
        sigma: Option<&[Element]>,
        support: &[u64],
    ) -> (Vec<F2Vec>, Vec<bool>) {
        let d = lattice.len();
        let p0: Vec<bool> = x0.iter().map(Integer::is_odd).collect();
        let lbar: Vec<F2Vec> = lattice
            .iter()
            .map(|r| r.iter().map(Integer::is_odd).collect())
            .collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &l in support {
            let betas: Vec<F2Vec> = (0..self.k()).map(|i| self.seq_column(i, l)).collect();
            let sig: F2Vec = match sigma {
                Some(t) => t
                    .iter()
                    .map(|e| e.seq_part().is_some_and(|b| b.contains(l)))
                    .collect(),
                None => vec![false; self.n],
            };
            for h in &self.annihilators {
                let c: F2Vec = betas.iter().map(|b| f2::dot(h, b)).collect();
                let row: F2Vec = (0..d).map(|t| f2::dot(&c, &lbar[t])).collect();
                rows.push(row);
                rhs.push(f2::dot(h, &sig) ^ f2::dot(&c, &p0));
            }
        }
        (rows, rhs)
    }

    fn solve(&self, target: &[Element]) -> Option<Solution> {
        let k = self.k();
        let e = echelon(&int_rows(self.cols, self.n), self.n);
        let x0 = e.solve(&ints(target))?;
        let lattice = e.kernel();
        let support = self.support(Some(target));
        let (rows, rhs) = self.parity_constraints(&x0, &lattice, Some(target), &support);
        let zbar = f2::solve(&rows, lattice.len(), &rhs)?;
        let mut x = x0;
        for (t, &bit) in zbar.iter().enumerate() {
            if bit {
                for (xi, li) in x.iter_mut().zip(&lattice[t]) {
                    *xi += li;
                }
            }
        }
        let seq = self.sequence_part(&x, Some(target), &support)?;
        let coeffs = x
            .into_iter()
            .zip(&seq)
            .map(|(xi, yi)| Element::Pair(xi, yi.clone()))
            .collect();
        Some(Solution {
            coeffs,
            seq_coeffs: seq[k..].to_vec(),
        })
    }

    fn relations(&self) -> Relations {
        let k = self.k();
        let e = echelon(&int_rows(self.cols, self.n), self.n);
        let lattice = e.kernel();
        let d = lattice.len();
        let support = self.support(None);
        let zeros = vec![BigInt::zero(); k];
        let (rows, _) = self.parity_constraints(&zeros, &lattice, None, &support);
        let allowed = f2::nullspace(&rows, d);
        // {z ∈ ℤ^d : z mod 2 ∈ allowed}, generated by 0/1 lifts and 2e_t.
        let mut zgens: Vec<Vec<BigInt>> = allowed
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&b| if b { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for t in 0..d {
            let mut r = vec![BigInt::zero(); d];
            r[t] = BigInt::from(2);
            zgens.push(r);
        }
        let zbasis = echelon(&zgens, d).basis();
        let mut gens = Vec::with_capacity(zbasis.len());
        for z in zbasis {
            let mut x = vec![BigInt::zero(); k];
            for (zt, lt) in z.iter().zip(&lattice) {
                if zt.is_zero() {
                    continue;
                }
                for (xi, li) in x.iter_mut().zip(lt) {
                    *xi += zt * li;
                }
            }
            let seq = self
                .sequence_part(&x, None, &support)
                .expect("parity constraints guarantee solvability");
            let mut v: Vector = x
                .into_iter()
                .zip(&seq)
                .map(|(xi, yi)| Element::Pair(xi, yi.clone()))
                .collect();
            v.extend(
                seq[k..]
                    .iter()
                    .map(|w| Element::Pair(BigInt::zero(), w.clone())),
            );
            gens.push(v);
        }
        let seq_dirs = f2::nullspace(&self.parity, self.width);
        Relations { gens, seq_dirs }
    }
}
