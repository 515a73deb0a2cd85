//! Linear algebra over the two-element field.
//!
//! Dense matrices are row lists of `Vec<bool>`; they stay small (one column
//! per generator). [`SeqSpan`] handles subspaces of (ℤ/2ℤ)^(ℕ) given by
//! sparse supports.

use crate::ring::F2Seq;

pub type F2Vec = Vec<bool>;

pub fn dot(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).fold(false, |acc, (&x, &y)| acc ^ (x & y))
}

pub fn add_into(acc: &mut [bool], v: &[bool]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a ^= b;
    }
}

pub fn is_zero(v: &[bool]) -> bool {
    v.iter().all(|&b| !b)
}

pub fn transpose(rows: &[F2Vec], ncols: usize) -> Vec<F2Vec> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [F2Vec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] {
                add_into(row, &pivot);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Some `x` with `A x = b`, free variables set to zero.
pub fn solve(a: &[F2Vec], ncols: usize, b: &[bool]) -> Option<F2Vec> {
    assert_eq!(a.len(), b.len());
    let mut aug: Vec<F2Vec> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![false; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][ncols];
    }
    Some(x)
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace(a: &[F2Vec], ncols: usize) -> Vec<F2Vec> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![false; ncols];
        x[free] = true;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[i][free];
        }
        basis.push(x);
    }
    basis
}

/// Reduced basis of the span of `vectors`, with its pivot columns.
pub fn span_basis(vectors: &[F2Vec], len: usize) -> (Vec<F2Vec>, Vec<usize>) {
    let mut m = vectors.to_vec();
    let pivots = rref(&mut m, len);
    m.truncate(pivots.len());
    (m, pivots)
}

/// Reduces `v` against a reduced basis.
pub fn reduce(basis: &[F2Vec], pivots: &[usize], v: &[bool]) -> F2Vec {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if out[p] {
            add_into(&mut out, row);
        }
    }
    out
}

pub fn in_span(vectors: &[F2Vec], len: usize, v: &[bool]) -> bool {
    let (basis, pivots) = span_basis(vectors, len);
    is_zero(&reduce(&basis, &pivots, v))
}

/// A finite-dimensional subspace of (ℤ/2ℤ)^(ℕ), kept in reduced echelon
/// form keyed by the largest index of each basis vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeqSpan {
    basis: Vec<F2Seq>,
}

impl SeqSpan {
    pub fn new() -> Self {
        SeqSpan::default()
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a F2Seq>>(vs: I) -> Self {
        let mut s = SeqSpan::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn basis(&self) -> &[F2Seq] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, v: &F2Seq) -> F2Seq {
        let mut out = v.clone();
        for b in &self.basis {
            let p = b.max_index().expect("basis vectors are nonzero");
            if out.contains(p) {
                out.add_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &F2Seq) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &F2Seq) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.max_index() else {
            return false;
        };
        for b in &mut self.basis {
            if b.contains(p) {
                b.add_assign(&r);
            }
        }
        self.basis.push(r);
        self.basis.sort_by_key(|b| b.max_index());
        true
    }

    pub fn sum(&self, other: &SeqSpan) -> SeqSpan {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b);
        }
        s
    }

    /// Splits `v` as `a + b` with `a ∈ self` and `b ∈ other`, when possible.
    pub fn decompose(&self, other: &SeqSpan, v: &F2Seq) -> Option<(F2Seq, F2Seq)> {
        // Track, for each reduced vector of the joint span, which part of it
        // came from `self`.
        let mut rows: Vec<(F2Seq, F2Seq)> = Vec::new();
        let push = |vec: &F2Seq, from_self: &F2Seq, rows: &mut Vec<(F2Seq, F2Seq)>| {
            let mut r = vec.clone();
            let mut tag = from_self.clone();
            for (b, t) in rows.iter() {
                if r.contains(b.max_index().unwrap()) {
                    r.add_assign(b);
                    tag.add_assign(t);
                }
            }
            if let Some(p) = r.max_index() {
                for (b, t) in rows.iter_mut() {
                    if b.contains(p) {
                        b.add_assign(&r);
                        t.add_assign(&tag);
                    }
                }
                rows.push((r, tag));
            }
        };
        for b in &self.basis {
            push(b, b, &mut rows);
        }
        for b in &other.basis {
            push(b, &F2Seq::new(), &mut rows);
        }
        let mut rest = v.clone();
        let mut a = F2Seq::new();
        for (b, t) in &rows {
            if rest.contains(b.max_index().unwrap()) {
                rest.add_assign(b);
                a.add_assign(t);
            }
        }
        if !rest.is_empty() {
            return None;
        }
        let b = v.add(&a);
        Some((a, b))
    }

    pub fn intersection(&self, other: &SeqSpan) -> SeqSpan {
        // Zassenhaus: reduce pairs (u, u) for u in self and (w, 0) for w in other.
        let shift = self
            .basis
            .iter()
            .chain(&other.basis)
            .filter_map(F2Seq::max_index)
            .max()
            .map_or(0, |m| m + 1);
        let lift = |a: &F2Seq, b: &F2Seq| {
            let mut s: F2Seq = F2Seq::from_indices(a.indices().map(|i| i + shift));
            s.add_assign(b);
            s
        };
        let mut joint = SeqSpan::new();
        for u in &self.basis {
            joint.insert(&lift(u, u));
        }
        for w in &other.basis {
            joint.insert(&lift(w, &F2Seq::new()));
        }
        let mut out = SeqSpan::new();
        for b in &joint.basis {
            if b.max_index().is_some_and(|m| m < shift) {
                out.insert(b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> F2Vec {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn solve_and_nullspace_agree() {
        let a = vec![bits("110"), bits("011")];
        let x = solve(&a, 3, &[true, false]).unwrap();
        assert_eq!(
            a.iter().map(|r| dot(r, &x)).collect::<Vec<_>>(),
            vec![true, false]
        );
        let ns = nullspace(&a, 3);
        assert_eq!(ns, vec![bits("111")]);
        assert!(solve(&[bits("00")], 2, &[true]).is_none());
    }

    #[test]
    fn span_membership() {
        let vs = vec![bits("1100"), bits("0110")];
        assert!(in_span(&vs, 4, &bits("1010")));
        assert!(!in_span(&vs, 4, &bits("0001")));
    }

    #[test]
    fn seq_span_intersection() {
        let a = SeqSpan::from_vectors(&[F2Seq::unit(1), F2Seq::unit(2)]);
        let b = SeqSpan::from_vectors(&[F2Seq::from_indices([1, 2]), F2Seq::unit(3)]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&F2Seq::from_indices([1, 2])));
    }

    #[test]
    fn seq_span_decompose() {
        let a = SeqSpan::from_vectors(&[F2Seq::unit(1)]);
        let b = SeqSpan::from_vectors(&[F2Seq::unit(2)]);
        let v = F2Seq::from_indices([1, 2]);
        let (x, y) = a.decompose(&b, &v).unwrap();
        assert!(a.contains(&x) && b.contains(&y));
        assert_eq!(x.add(&y), v);
        assert!(a.decompose(&b, &F2Seq::unit(3)).is_none());
    }
}
