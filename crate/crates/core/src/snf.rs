//! Smith normal form over the integers.
//!
//! `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
//! entry dividing the next. Pivots are chosen as the first entry of minimal
//! absolute value (row-major), so the result is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Left transform `U`.
    pub left: IntMatrix,
    /// Diagonal `D = U * M * V`.
    pub diagonal: IntMatrix,
    /// Right transform `V`.
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let full = Smith::compute(m, true, true);
    SmithForm {
        left: full.left.expect("tracked"),
        diagonal: full.diagonal,
        right: full.right.expect("tracked"),
        rank: full.rank,
    }
}

/// Full decomposition including the inverses of both transforms, as needed
/// for kernel/cokernel bookkeeping.
#[derive(Debug, Clone)]
pub(crate) struct Smith {
    pub diagonal: IntMatrix,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub left_inv: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
    pub right_inv: Option<IntMatrix>,
}

struct Tracker {
    // Stored as rows for cheap row operations; `inv` is the inverse, updated
    // with the dual column operation.
    fwd: Vec<Vec<BigInt>>,
    inv: Vec<Vec<BigInt>>,
}

impl Tracker {
    fn new(n: usize) -> Self {
        let id = IntMatrix::identity(n).into_rows();
        Tracker {
            fwd: id.clone(),
            inv: id,
        }
    }

    /// `row_i += c * row_j` on `fwd`; `col_j -= c * col_i` on `inv`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        let src = self.fwd[j].clone();
        axpy(&mut self.fwd[i], c, &src);
        for row in &mut self.inv {
            if !row[i].is_zero() {
                let delta = c * &row[i];
                row[j] -= delta;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.fwd.swap(i, j);
        for row in &mut self.inv {
            row.swap(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        for v in &mut self.fwd[i] {
            *v = -std::mem::take(v);
        }
        for row in &mut self.inv {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    fn into_matrices(self, n: usize) -> (IntMatrix, IntMatrix) {
        (
            IntMatrix::from_row_vecs(self.fwd, n),
            IntMatrix::from_row_vecs(self.inv, n),
        )
    }
}

fn axpy(dst: &mut [BigInt], c: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += c * s;
        }
    }
}

impl Smith {
    pub fn compute(m: &IntMatrix, track_left: bool, track_right: bool) -> Smith {
        let rows = m.rows();
        let cols = m.cols();
        let mut a = m.clone().into_rows();
        // Column transforms are tracked transposed: a column operation on `a`
        // is a row operation on `right.fwd` (which holds V^T) and the dual
        // column operation on `right.inv` (which holds (V^-1)^T).
        let mut left = track_left.then(|| Tracker::new(rows));
        let mut right = track_right.then(|| Tracker::new(cols));

        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = min_abs_entry(&a, t, t) else {
                break;
            };
            swap_rows(&mut a, &mut left, t, pi);
            swap_cols(&mut a, &mut right, t, pj);

            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&a[i][t] / &a[t][t]);
                    add_row(&mut a, &mut left, i, t, &q);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&a[t][j] / &a[t][t]);
                    add_col(&mut a, &mut right, j, t, &q);
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // Bring the smallest remainder in row/column t to the pivot.
                    let (mut best_i, mut best_j) = (t, t);
                    let mut best = a[t][t].abs();
                    for i in t + 1..rows {
                        if !a[i][t].is_zero() && a[i][t].abs() < best {
                            best = a[i][t].abs();
                            best_i = i;
                            best_j = t;
                        }
                    }
                    for j in t + 1..cols {
                        if !a[t][j].is_zero() && a[t][j].abs() < best {
                            best = a[t][j].abs();
                            best_i = t;
                            best_j = j;
                        }
                    }
                    swap_rows(&mut a, &mut left, t, best_i);
                    swap_cols(&mut a, &mut right, t, best_j);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let pivot = a[t][t].clone();
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => add_row(&mut a, &mut left, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for v in &mut a[t] {
                    *v = -std::mem::take(v);
                }
                if let Some(l) = left.as_mut() {
                    l.negate(t);
                }
            }
            t += 1;
        }

        let (left, left_inv) = match left {
            Some(l) => {
                let (f, i) = l.into_matrices(rows);
                (Some(f), Some(i))
            }
            None => (None, None),
        };
        let (right, right_inv) = match right {
            Some(r) => {
                let (f, i) = r.into_matrices(cols);
                (Some(f.transpose()), Some(i.transpose()))
            }
            None => (None, None),
        };
        Smith {
            diagonal: IntMatrix::from_row_vecs(a, cols),
            rank: t,
            left,
            left_inv,
            right,
            right_inv,
        }
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                let unit = abs.is_one();
                best = Some((i, j, abs));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn add_row(a: &mut [Vec<BigInt>], tr: &mut Option<Tracker>, i: usize, j: usize, c: &BigInt) {
    let src = a[j].clone();
    axpy(&mut a[i], c, &src);
    if let Some(t) = tr.as_mut() {
        t.add_row(i, j, c);
    }
}

/// `col_i += c * col_j`.
fn add_col(a: &mut [Vec<BigInt>], tr: &mut Option<Tracker>, i: usize, j: usize, c: &BigInt) {
    for row in a.iter_mut() {
        if !row[j].is_zero() {
            let delta = c * &row[j];
            row[i] += delta;
        }
    }
    if let Some(t) = tr.as_mut() {
        t.add_row(i, j, c);
    }
}

fn swap_rows(a: &mut [Vec<BigInt>], tr: &mut Option<Tracker>, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        if let Some(t) = tr.as_mut() {
            t.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], tr: &mut Option<Tracker>, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(t) = tr.as_mut() {
            t.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = Smith::compute(m, true, true);
        let u = s.left.as_ref().unwrap();
        let v = s.right.as_ref().unwrap();
        assert_eq!(&(u * m) * v, s.diagonal);
        assert_eq!(u * s.left_inv.as_ref().unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(v * s.right_inv.as_ref().unwrap(), IntMatrix::identity(m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.diagonal[(i, j)].is_zero());
                }
            }
        }
        for i in 1..s.rank {
            let prev = &s.diagonal[(i - 1, i - 1)];
            assert!(s.diagonal[(i, i)].is_multiple_of(prev));
        }
        for i in s.rank..m.rows().min(m.cols()) {
            assert!(s.diagonal[(i, i)].is_zero());
        }
        s
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check(&m);
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn zero_matrix_keeps_identities() {
        let m = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&m);
        assert!(s.diagonal.is_zero());
        assert_eq!(s.left, IntMatrix::identity(2));
        assert_eq!(s.right, IntMatrix::identity(3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn one_by_one() {
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![3]]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[vec![3]]));
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![-4]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(4)]);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert_eq!(s.rank, 0);
        }
    }

    #[test]
    fn known_invariant_factors() {
        // Invariant factors of this matrix are 2, 6, 12 (classical example).
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&m);
        assert_eq!(
            s.diagonal,
            IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 12]])
        );
    }

    proptest! {
        #[test]
        fn random_matrices_decompose(
            rows in 0usize..6,
            cols in 0usize..6,
            seed in prop::collection::vec(-9i64..10, 36),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect())
                .collect();
            let m = if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&data) };
            check(&m);
        }
    }
}
