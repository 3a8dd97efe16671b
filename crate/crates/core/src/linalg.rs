//! Dense matrices over Q and subspace utilities.

use crate::scalar::Q;
use num_traits::{One, Zero};
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : self v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, free)].clone();
            }
            out.push(v);
        }
        out
    }

    /// Some solution of self x = b.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = m[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        det
    }

    /// Basis of the column space.
    pub fn col_space(&self) -> Vec<Vec<Q>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }
}

/// Row-reduced basis of span(vecs) in Q^dim.
pub fn span_basis(vecs: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let (m, pivots) = Mat::from_rows(vecs, dim).rref();
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

pub fn span_rank(vecs: &[Vec<Q>], dim: usize) -> usize {
    span_basis(vecs, dim).len()
}

pub fn span_contains(basis: &[Vec<Q>], v: &[Q], dim: usize) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all, dim) == span_rank(basis, dim)
}

pub fn span_eq(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> bool {
    let ra = span_rank(a, dim);
    if ra != span_rank(b, dim) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_rank(&all, dim) == ra
}

/// Columns of the returned matrix extend `basis` (assumed independent) to a basis of Q^dim.
pub fn extend_to_basis(basis: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut out = basis.to_vec();
    let mut rank = span_rank(&out, dim);
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = vec![Q::zero(); dim];
        e[i] = Q::one();
        out.push(e);
        let r = span_rank(&out, dim);
        if r == rank {
            out.pop();
        } else {
            rank = r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};

    fn m(rows: &[&[i64]]) -> Mat {
        let r: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Mat::from_rows(&r, rows[0].len())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), q(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), q(0));
        assert!(s.inverse().is_none());
        let p = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), q(-1));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let x = a.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2)]);
        assert!(a.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn spans() {
        let a = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        let b = vec![vec![q(0), q(1)], vec![q(2), q(0)]];
        assert!(span_eq(&a, &b, 2));
        assert!(span_contains(&a[..1], &[qr(1, 2), q(0)], 2));
        assert!(!span_contains(&a[..1], &[q(0), q(1)], 2));
        assert_eq!(extend_to_basis(&a[..1], 2).len(), 2);
    }
}
