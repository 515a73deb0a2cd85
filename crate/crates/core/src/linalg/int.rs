//! Row echelon (Hermite) form over ℤ with a unimodular transform.
//!
//! Rows are the vectors being combined, so `transform · input = rows`. The
//! trailing `transform` rows whose echelon row vanished form a basis of the
//! integer left kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn sub_multiple(row: &mut [BigInt], pivot_row: &[BigInt], q: &BigInt) {
    for (a, b) in row.iter_mut().zip(pivot_row) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

fn negate(row: &mut [BigInt]) {
    for a in row.iter_mut() {
        *a = -&*a;
    }
}

/// Reduces `input` (each row of length `ncols`) to Hermite row echelon form.
pub fn echelon(input: &[Vec<BigInt>], ncols: usize) -> Echelon {
    let m = input.len();
    let mut a: Vec<Vec<BigInt>> = input.to_vec();
    for row in &a {
        assert_eq!(row.len(), ncols, "ragged integer matrix");
    }
    let mut t: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        while let Some(p) = (r..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)))
        {
            a.swap(r, p);
            t.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let (top, bottom) = a.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[r], &q);
                let (ttop, tbottom) = t.split_at_mut(i);
                sub_multiple(&mut tbottom[0], &ttop[r], &q);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if a[r][col].is_negative() {
                    negate(&mut a[r]);
                    negate(&mut t[r]);
                }
                for i in 0..r {
                    let q = a[i][col].div_floor(&a[r][col]);
                    if q.is_zero() {
                        continue;
                    }
                    let (top, bottom) = a.split_at_mut(r);
                    sub_multiple(&mut top[i], &bottom[0], &q);
                    let (ttop, tbottom) = t.split_at_mut(r);
                    sub_multiple(&mut ttop[i], &tbottom[0], &q);
                }
                pivots.push(col);
                r += 1;
                break;
            }
        }
    }
    Echelon {
        rows: a,
        transform: t,
        pivots,
        ncols,
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `c` (one per input row) with `Σ c_i · input_i = target`.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(target.len(), self.ncols);
        let mut rest = target.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let (q, rem) = rest[p].div_rem(&self.rows[j][p]);
            if !rem.is_zero() {
                return None;
            }
            sub_multiple(&mut rest, &self.rows[j], &q);
            y.push(q);
        }
        if rest.iter().any(|v| !v.is_zero()) {
            return None;
        }
        let m = self.transform.len();
        let mut c = vec![BigInt::zero(); m];
        for (j, q) in y.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (ci, tij) in c.iter_mut().zip(&self.transform[j]) {
                *ci += q * tij;
            }
        }
        Some(c)
    }

    /// A basis of `{c : Σ c_i · input_i = 0}`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        self.transform[self.rank()..].to_vec()
    }

    /// The nonzero echelon rows: a basis of the row lattice.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows[..self.rank()].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_four_and_six() {
        let e = echelon(&[v(&[4]), v(&[6])], 1);
        assert_eq!(e.rows[0], v(&[2]));
        let c = e.solve(&v(&[2])).unwrap();
        assert_eq!(&c[0] * 4 + &c[1] * 6, BigInt::from(2));
        assert_eq!(e.kernel().len(), 1);
        let k = &e.kernel()[0];
        assert_eq!(&k[0] * 4 + &k[1] * 6, BigInt::zero());
    }

    #[test]
    fn kernel_of_two_three_is_primitive() {
        let e = echelon(&[v(&[2]), v(&[3])], 1);
        let k = &e.kernel()[0];
        assert!(k == &v(&[3, -2]) || k == &v(&[-3, 2]));
    }

    #[test]
    fn unsolvable_target() {
        let e = echelon(&[v(&[2, 0]), v(&[0, 2])], 2);
        assert!(e.solve(&v(&[1, 0])).is_none());
        assert!(e.solve(&v(&[2, 4])).is_some());
    }

    #[test]
    fn empty_matrix_solves_only_zero() {
        let e = echelon(&[], 2);
        assert_eq!(e.solve(&v(&[0, 0])), Some(vec![]));
        assert!(e.solve(&v(&[0, 1])).is_none());
        assert!(e.kernel().is_empty());
    }
}
