//! Smith normal form over ℤ with unimodular transforms.
//!
//! Pivoting is deterministic: at each step the entry of smallest nonzero
//! absolute value in the remaining block is chosen, ties broken by
//! row-major position.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// The `min(rows, cols)` diagonal entries; nonzero ones first and each
    /// dividing the next, then zeros.
    pub diagonal: Vec<BigInt>,
    /// Row transform, `rows × rows`.
    pub u: IntMatrix,
    /// Column transform, `cols × cols`, with `u · m · v = diag`.
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank()]
    }

    /// Divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let y = r[j].clone();
                r[i] += q * y;
            }
        }
        // Inverse of the column operation, applied on the left.
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(&src) {
            *x -= q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let better = |x: &BigInt, b: (usize, usize)| {
            !x.is_zero() && (self.a[b.0][b.1].is_zero() || x.abs() < self.a[b.0][b.1].abs())
        };
        for i in t..self.rows {
            if better(&self.a[i][t], best) {
                best = (i, t);
            }
        }
        for j in t..self.cols {
            if better(&self.a[t][j], best) {
                best = (t, j);
            }
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        if i != t {
            self.swap_rows(i, t);
        }
        if j != t {
            self.swap_cols(j, t);
        }
    }

    /// Reduces row and column `t` against the pivot; returns whether both
    /// are now clear.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a[t][t].clone();
        let mut clean = true;
        for i in t + 1..self.rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = self.a[i][t].div_floor(&p);
            self.add_row(i, t, &-q);
            clean &= self.a[i][t].is_zero();
        }
        for j in t + 1..self.cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = self.a[t][j].div_floor(&p);
            self.add_col(j, t, &-q);
            clean &= self.a[t][j].is_zero();
        }
        clean
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some(pos) = self.smallest_in_block(t) else {
                break;
            };
            self.move_to_pivot(t, pos);
            loop {
                if !self.clear_cross(t) {
                    let pos = self.smallest_in_cross(t);
                    self.move_to_pivot(t, pos);
                    continue;
                }
                match self.non_divisible(t) {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_dense(),
        u: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    w.run();
    let diagonal = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    SnfResult {
        diagonal,
        u: IntMatrix::from_dense(rows, rows, &w.u),
        v: IntMatrix::from_dense(cols, cols, &w.v),
        v_inv: IntMatrix::from_dense(cols, cols, &w.v_inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<i64> {
        let r = smith_normal_form(&IntMatrix::from_rows(rows));
        r.diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_transforms(m: &IntMatrix) {
        let r = smith_normal_form(m);
        let d = r.u.mul(m).unwrap().mul(&r.v).unwrap();
        for (i, j, v) in d.nonzero_entries() {
            assert_eq!(i, j, "off-diagonal entry {v} at ({i},{j})");
        }
        for i in 0..m.rows().min(m.cols()) {
            assert_eq!(d.get(i, i), r.diagonal[i]);
        }
        assert!(r.v.mul(&r.v_inv).unwrap().is_identity());
    }

    #[test]
    fn examples() {
        assert_eq!(
            diag_of(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            [1, 1, 1]
        );
        assert_eq!(diag_of(&[vec![2, 4], vec![6, 8]]), [2, 4]);
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), [1, 6]);
        assert!(smith_normal_form(&IntMatrix::zeros(0, 0))
            .diagonal
            .is_empty());
    }

    #[test]
    fn transforms_diagonalize() {
        for m in [
            IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]),
            IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]),
            IntMatrix::from_rows(&[vec![0, 0, 5], vec![0, 10, 0], vec![3, 0, 0], vec![1, 1, 1]]),
            IntMatrix::from_rows(&[vec![-4, 6, 0, 8]]),
            IntMatrix::zeros(3, 2),
        ] {
            check_transforms(&m);
        }
    }

    #[test]
    fn rank_and_torsion() {
        let r = smith_normal_form(&IntMatrix::from_rows(&[
            vec![2, 0, 0],
            vec![0, 4, 0],
            vec![0, 0, 0],
        ]));
        assert_eq!(r.rank(), 2);
        assert_eq!(r.torsion(), vec![BigInt::from(2), BigInt::from(4)]);
    }
}
