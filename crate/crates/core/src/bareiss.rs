//! Fraction-free elimination over commutative integral domains.

use crate::poly::Poly;
use crate::scalar::Q;
use num_traits::{One, Zero};

pub trait Domain: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient when `o` divides `self` exactly.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl Domain for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

impl Domain for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        Poly::exact_div(self, o)
    }
}

fn step<T: Domain>(piv: &T, a: &T, f: &T, b: &T, prev: &T) -> T {
    let v = piv.mul(a).sub(&f.mul(b));
    v.exact_div(prev)
        .expect("Bareiss division is exact in an integral domain")
}

/// Determinant by Bareiss elimination.
pub fn det<T: Domain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut neg = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            m.swap(p, k);
            neg = !neg;
        }
        let piv = m[k][k].clone();
        for i in k + 1..n {
            let f = m[i][k].clone();
            for j in k + 1..n {
                m[i][j] = step(&piv, &m[i][j], &f, &m[k][j], &prev);
            }
            m[i][k] = T::zero();
        }
        prev = piv;
    }
    if neg {
        prev.neg()
    } else {
        prev
    }
}

/// Solves A X = B for square nonsingular A by fraction-free Gauss-Jordan.
/// Returns (N, D) with A N = D B, or None when A is singular.
pub fn solve<T: Domain>(a: &[Vec<T>], b: &[Vec<T>]) -> Option<(Vec<Vec<T>>, T)> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let nb = b.first().map_or(0, |r| r.len());
    let w = n + nb;
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        let piv = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                m[i][j] = step(&piv, &m[i][j], &f, &m[k][j], &prev);
            }
            m[i][k] = T::zero();
        }
        prev = piv;
    }
    let x = m.into_iter().map(|r| r[n..].to_vec()).collect();
    Some((x, prev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::scalar::q;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_matches_gaussian() {
        let a = qm(&[&[0, 2, 1], &[3, 1, 4], &[1, 5, 9]]);
        let m = Mat::from_rows(&a, 3);
        assert_eq!(det(a), m.det());
    }

    #[test]
    fn solve_matches_gaussian() {
        let a = qm(&[&[0, 2, 1], &[3, 1, 4], &[1, 5, 9]]);
        let b = qm(&[&[1], &[2], &[3]]);
        let (x, d) = solve(&a, &b).unwrap();
        let xs: Vec<Q> = x.iter().map(|r| &r[0] / &d).collect();
        let m = Mat::from_rows(&a, 3);
        assert_eq!(m.mul_vec(&xs), vec![q(1), q(2), q(3)]);
        assert!(solve(&qm(&[&[1, 2], &[2, 4]]), &qm(&[&[1], &[1]])).is_none());
    }

    #[test]
    fn poly_solve_is_exact() {
        // [[x, 1], [1, x]] X = [1, 0]
        let x = Poly::x();
        let a = vec![vec![x.clone(), Poly::one()], vec![Poly::one(), x.clone()]];
        let b = vec![vec![Poly::one()], vec![Poly::zero()]];
        let (n, d) = solve(&a, &b).unwrap();
        assert_eq!(d, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(n[0][0], x);
        assert_eq!(n[1][0], Poly::from_ints(&[-1]));
        assert_eq!(det(a), Poly::from_ints(&[-1, 0, 1]));
    }
}
