//! Submodules of Rⁿ and subquotients of them.
//!
//! A [`Submodule`] is `⟨gens⟩ + span(seq_dirs) ⊗ (ℤ/2ℤ)^(ℕ)`. The second
//! summand is empty outside the idealization; inside it, it is what makes
//! non-finitely-generated modules such as `0(+)(ℤ/2ℤ)^(ℕ)` exact values.
//! `seq_dirs` is kept reduced against the parities of the generators, so a
//! submodule is finitely generated exactly when `seq_dirs` is empty.

use thiserror::Error;

use crate::linalg::f2::{self, F2Vec};
use crate::ring::{Element, Ring, Vector};
use crate::solve::{self, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("vector of length {got} in a module of rank {rank}")]
    RankMismatch { rank: usize, got: usize },
    #[error("element {0} is not in ring {1}")]
    ForeignElement(String, String),
    #[error("sequence directions only exist over the idealization")]
    SequenceDirections,
    #[error("modules over different rings or ranks")]
    Incompatible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    gens: Vec<Vector>,
    seq_dirs: Vec<F2Vec>,
}

pub type FreeSubmodule = Submodule;

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, gens: Vec<Vector>) -> Result<Submodule, ModuleError> {
        Submodule::with_seq_dirs(ring, rank, gens, vec![])
    }

    pub fn with_seq_dirs(
        ring: &Ring,
        rank: usize,
        gens: Vec<Vector>,
        seq_dirs: Vec<F2Vec>,
    ) -> Result<Submodule, ModuleError> {
        for g in &gens {
            if g.len() != rank {
                return Err(ModuleError::RankMismatch { rank, got: g.len() });
            }
            for x in g {
                if !ring.contains(x) {
                    return Err(ModuleError::ForeignElement(x.to_string(), ring.to_string()));
                }
            }
        }
        if !seq_dirs.is_empty() && !ring.is_idealization() {
            return Err(ModuleError::SequenceDirections);
        }
        for u in &seq_dirs {
            if u.len() != rank {
                return Err(ModuleError::RankMismatch { rank, got: u.len() });
            }
        }
        let mut m = Submodule {
            ring: ring.clone(),
            rank,
            gens,
            seq_dirs,
        };
        m.normalize();
        Ok(m)
    }

    pub(crate) fn from_parts(
        ring: &Ring,
        rank: usize,
        gens: Vec<Vector>,
        seq_dirs: Vec<F2Vec>,
    ) -> Submodule {
        let mut m = Submodule {
            ring: ring.clone(),
            rank,
            gens,
            seq_dirs,
        };
        m.normalize();
        m
    }

    pub fn zero(ring: &Ring, rank: usize) -> Submodule {
        Submodule {
            ring: ring.clone(),
            rank,
            gens: vec![],
            seq_dirs: vec![],
        }
    }

    /// Rⁿ with its standard basis.
    pub fn full(ring: &Ring, rank: usize) -> Submodule {
        let gens = (0..rank).map(|i| ring.unit_vector(rank, i)).collect();
        Submodule {
            ring: ring.clone(),
            rank,
            gens,
            seq_dirs: vec![],
        }
    }

    fn normalize(&mut self) {
        if self.seq_dirs.is_empty() {
            return;
        }
        let parities: Vec<F2Vec> = self
            .gens
            .iter()
            .map(|g| self.ring.parity_vector(g))
            .collect();
        let (gb, gp) = f2::span_basis(&parities, self.rank);
        // Reduced vectors vanish on the pivots of the generator parities, so
        // their span meets the parity span only in zero.
        let reduced: Vec<F2Vec> = self
            .seq_dirs
            .iter()
            .map(|u| f2::reduce(&gb, &gp, u))
            .collect();
        let (mut basis, _) = f2::span_basis(&reduced, self.rank);
        basis.sort();
        self.seq_dirs = basis;
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn seq_dirs(&self) -> &[F2Vec] {
        &self.seq_dirs
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.seq_dirs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.seq_dirs.is_empty() && self.gens.iter().all(|g| self.ring.is_zero_vector(g))
    }

    /// A witness for `v ∈ self`: coefficients on `gens` and sequence
    /// coefficients on `seq_dirs`.
    pub fn member(&self, v: &[Element]) -> Option<Solution> {
        if v.len() != self.rank {
            return None;
        }
        solve::solve_system(&self.ring, self.rank, &self.gens, &self.seq_dirs, v)
    }

    pub fn contains_vector(&self, v: &[Element]) -> bool {
        self.member(v).is_some()
    }

    /// Whether `span(u) ⊗ (ℤ/2ℤ)^(ℕ) ⊆ self`.
    pub fn contains_seq_dir(&self, u: &[bool]) -> bool {
        let mut cols: Vec<F2Vec> = self
            .gens
            .iter()
            .map(|g| self.ring.parity_vector(g))
            .collect();
        cols.extend(self.seq_dirs.iter().cloned());
        f2::in_span(&cols, self.rank, u)
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        other.gens.iter().all(|g| self.contains_vector(g))
            && other.seq_dirs.iter().all(|u| self.contains_seq_dir(u))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.rank == other.rank && self.contains(other) && other.contains(self)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.rank, other.rank, "sum of modules of different rank");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let mut dirs = self.seq_dirs.clone();
        dirs.extend(other.seq_dirs.iter().cloned());
        Submodule::from_parts(&self.ring, self.rank, gens, dirs)
    }

    /// `s · self`. Sequence directions survive only an odd integer part.
    pub fn scale(&self, s: &Element) -> Submodule {
        let gens = self
            .gens
            .iter()
            .map(|g| self.ring.vec_scale(s, g))
            .collect();
        let dirs = if s.int_part_is_odd() {
            self.seq_dirs.clone()
        } else {
            vec![]
        };
        Submodule::from_parts(&self.ring, self.rank, gens, dirs)
    }

    /// The image under an ambient linear map Rʳᵃⁿᵏ → Rᵐ.
    pub fn map(&self, a: &Matrix) -> Submodule {
        assert_eq!(a.cols, self.rank, "matrix does not act on this module");
        let gens = self.gens.iter().map(|g| a.apply(&self.ring, g)).collect();
        let dirs = self.seq_dirs.iter().map(|u| a.apply_parity(u)).collect();
        Submodule::from_parts(&self.ring, a.rows, gens, dirs)
    }

    /// The generating system as plain columns: `gens` followed by the 0/1
    /// lifts of `seq_dirs`. Coefficients on the lifts must have zero integer
    /// part, which all relation modules returned here respect.
    pub fn columns(&self) -> Vec<Vector> {
        let mut cols = self.gens.clone();
        cols.extend(self.seq_dirs.iter().map(|u| self.ring.lift_bits(u)));
        cols
    }

    /// All relations among `gens` and `seq_dirs` (rank `gens + seq_dirs`).
    pub fn relations(&self) -> Submodule {
        let rel = solve::relations(&self.ring, self.rank, &self.gens, &self.seq_dirs);
        Submodule::from_parts(
            &self.ring,
            self.gens.len() + self.seq_dirs.len(),
            rel.gens,
            rel.seq_dirs,
        )
    }

    /// Restriction to the listed coordinates.
    pub fn project(&self, coords: &[usize]) -> Submodule {
        let gens = self
            .gens
            .iter()
            .map(|g| coords.iter().map(|&i| g[i].clone()).collect())
            .collect();
        let dirs = self
            .seq_dirs
            .iter()
            .map(|u| coords.iter().map(|&i| u[i]).collect())
            .collect();
        Submodule::from_parts(&self.ring, coords.len(), gens, dirs)
    }

    /// The image of `self ⊆ Rᵐ` under `e_i ↦ cols[i] ∈ Rⁿ`.
    pub fn image_under(&self, cols: &[Vector], n: usize) -> Submodule {
        assert_eq!(cols.len(), self.rank, "one column per coordinate");
        let gens = self
            .gens
            .iter()
            .map(|c| self.ring.combine(c, cols, n))
            .collect();
        let parities: Vec<F2Vec> = cols.iter().map(|c| self.ring.parity_vector(c)).collect();
        let dirs = self
            .seq_dirs
            .iter()
            .map(|z| {
                let mut out = vec![false; n];
                for (zi, p) in z.iter().zip(&parities) {
                    if *zi {
                        f2::add_into(&mut out, p);
                    }
                }
                out
            })
            .collect();
        Submodule::from_parts(&self.ring, n, gens, dirs)
    }

    /// `{x ∈ self : a·x ∈ target}`.
    pub fn preimage(&self, a: &Matrix, target: &Submodule) -> Submodule {
        assert_eq!(a.rows, target.rank);
        let mapped: Vec<Vector> = self.gens.iter().map(|g| a.apply(&self.ring, g)).collect();
        let (ng, nt) = (self.gens.len(), target.gens.len());
        let (nd, ntd) = (self.seq_dirs.len(), target.seq_dirs.len());
        let mut cols = mapped;
        cols.extend(target.gens.iter().cloned());
        let mut dirs: Vec<F2Vec> = self.seq_dirs.iter().map(|u| a.apply_parity(u)).collect();
        dirs.extend(target.seq_dirs.iter().cloned());
        let rel = solve::relations(&self.ring, a.rows, &cols, &dirs);
        let rel = Submodule::from_parts(&self.ring, ng + nt + nd + ntd, rel.gens, rel.seq_dirs);
        let coords: Vec<usize> = (0..ng).chain(ng + nt..ng + nt + nd).collect();
        rel.project(&coords).image_under(&self.columns(), self.rank)
    }

    /// Some `x ∈ self` with `a·x − v ∈ modulo`.
    pub fn lift_through(&self, a: &Matrix, v: &[Element], modulo: &Submodule) -> Option<Vector> {
        assert_eq!(a.rows, modulo.rank);
        let mut cols: Vec<Vector> = self.gens.iter().map(|g| a.apply(&self.ring, g)).collect();
        cols.extend(modulo.gens.iter().cloned());
        let mut dirs: Vec<F2Vec> = self.seq_dirs.iter().map(|u| a.apply_parity(u)).collect();
        dirs.extend(modulo.seq_dirs.iter().cloned());
        let sol = solve::solve_system(&self.ring, a.rows, &cols, &dirs, v)?;
        let own = Solution {
            coeffs: sol.coeffs[..self.gens.len()].to_vec(),
            seq_coeffs: sol.seq_coeffs[..self.seq_dirs.len()].to_vec(),
        };
        Some(self.evaluate(&own))
    }

    /// Re-embeds a witness as the vector it represents.
    pub fn evaluate(&self, sol: &Solution) -> Vector {
        solve::evaluate(&self.ring, self.rank, &self.gens, &self.seq_dirs, sol)
    }
}

/// An R-linear map between free modules, `rows × cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Element>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<Element>>) -> Matrix {
        assert_eq!(entries.len(), rows);
        for r in &entries {
            assert_eq!(r.len(), cols);
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::new(n, n, (0..n).map(|i| ring.unit_vector(n, i)).collect())
    }

    /// The matrix whose columns are `cols` (each of length `n`).
    pub fn from_columns(n: usize, cols: &[Vector]) -> Matrix {
        let entries = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::new(n, cols.len(), entries)
    }

    pub fn apply(&self, ring: &Ring, v: &[Element]) -> Vector {
        assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, x)| ring.add(&acc, &ring.mul(a, x)))
            })
            .collect()
    }

    /// Action on a sequence direction: `u ⊗ w ↦ (Āu) ⊗ w`.
    pub fn apply_parity(&self, u: &[bool]) -> F2Vec {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(false, |acc, (a, &b)| acc ^ (a.int_part_is_odd() & b))
            })
            .collect()
    }

    pub fn compose(&self, ring: &Ring, inner: &Matrix) -> Matrix {
        assert_eq!(self.cols, inner.rows);
        let entries = (0..self.rows)
            .map(|i| {
                (0..inner.cols)
                    .map(|j| {
                        (0..self.cols).fold(ring.zero(), |acc, t| {
                            ring.add(&acc, &ring.mul(&self.entries[i][t], &inner.entries[t][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Matrix::new(self.rows, inner.cols, entries)
    }
}

/// `(num + rels) / rels` inside Rⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    num: Submodule,
    rels: Submodule,
}

impl Subquotient {
    pub fn new(num: Submodule, rels: Submodule) -> Result<Subquotient, ModuleError> {
        if num.ring != rels.ring || num.rank != rels.rank {
            return Err(ModuleError::Incompatible);
        }
        Ok(Subquotient { num, rels })
    }

    pub fn submodule(num: Submodule) -> Subquotient {
        let rels = Submodule::zero(&num.ring, num.rank);
        Subquotient { num, rels }
    }

    pub fn num(&self) -> &Submodule {
        &self.num
    }

    pub fn rels(&self) -> &Submodule {
        &self.rels
    }

    pub fn ring(&self) -> &Ring {
        &self.num.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.num.rank
    }

    /// `num + rels`: the vectors that represent elements of the module.
    pub fn total(&self) -> Submodule {
        self.num.sum(&self.rels)
    }

    pub fn represents(&self, v: &[Element]) -> bool {
        self.total().contains_vector(v)
    }

    pub fn is_zero_class(&self, v: &[Element]) -> bool {
        self.rels.contains_vector(v)
    }

    /// Coefficients `c` with `Σ c_i gens_i ≡ v` modulo `rels`.
    pub fn express(&self, gens: &[Vector], v: &[Element]) -> Option<Vec<Element>> {
        let mut cols = gens.to_vec();
        cols.extend(self.rels.gens.iter().cloned());
        let sol = solve::solve_system(
            self.ring(),
            self.ambient_rank(),
            &cols,
            &self.rels.seq_dirs,
            v,
        )?;
        Some(sol.coeffs[..gens.len()].to_vec())
    }

    /// `{c ∈ Rᵏ : Σ c_i gens_i ∈ rels}`: the kernel of the presentation by `gens`.
    pub fn relations_of(&self, gens: &[Vector]) -> Submodule {
        let k = gens.len();
        let mut cols = gens.to_vec();
        cols.extend(self.rels.gens.iter().cloned());
        let rel = solve::relations(self.ring(), self.ambient_rank(), &cols, &self.rels.seq_dirs);
        let width = cols.len() + self.rels.seq_dirs.len();
        Submodule::from_parts(self.ring(), width, rel.gens, rel.seq_dirs)
            .project(&(0..k).collect::<Vec<_>>())
    }

    /// Whether `gens` lie in the module and generate it.
    pub fn generated_by(&self, gens: &[Vector]) -> bool {
        let total = self.total();
        if !gens
            .iter()
            .all(|g| g.len() == self.ambient_rank() && total.contains_vector(g))
        {
            return false;
        }
        let spanned =
            Submodule::from_parts(self.ring(), self.ambient_rank(), gens.to_vec(), vec![])
                .sum(&self.rels);
        spanned.contains(&self.num)
    }

    /// Whether `self ⊆ other` as submodules of the same quotient of Rⁿ.
    pub fn is_submodule_of(&self, other: &Subquotient) -> bool {
        self.rels.same_as(&other.rels) && other.total().contains(&self.num)
    }

    pub fn same_as(&self, other: &Subquotient) -> bool {
        self.rels.same_as(&other.rels) && self.total().same_as(&other.total())
    }
}
