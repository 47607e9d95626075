//! Dense exact linear algebra over the rationals: row reduction, rank,
//! null spaces, inverses. Matrices here stay small (a few hundred rows at
//! most), so plain rational Gaussian elimination is enough.

use crate::rat::{rint, Rat};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Rat::zero();
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        acc
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = Rat::one() / self.get(row, col).clone();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &factor * self.get(row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// deterministic echelon order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (col, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[col] = -m.get(*r, free).clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// One particular solution of `self * x = rhs` with free variables set
    /// to zero; `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            det *= m.get(col, col);
            let inv = Rat::one() / m.get(col, col).clone();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rfrac;

    #[test]
    fn rref_and_nullspace() {
        // x + y + z = 0 has a 2-dimensional null space
        let m = Mat::from_rows(vec![vec![rint(1), rint(1), rint(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_rows(vec![
            vec![rint(2), rint(1)],
            vec![rint(7), rint(4)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(inv.get(0, 0), &rint(4));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Mat::from_rows(vec![
            vec![rint(1), rint(2)],
            vec![rint(2), rint(4)],
        ]);
        assert!(m.inverse().is_none());
        assert_eq!(m.determinant(), rint(0));
    }

    #[test]
    fn solve_particular() {
        let m = Mat::from_rows(vec![vec![rint(2), rint(0)], vec![rint(0), rint(4)]]);
        let x = m.solve(&[rint(1), rint(2)]).unwrap();
        assert_eq!(x, vec![rfrac(1, 2), rfrac(1, 2)]);
    }
}
