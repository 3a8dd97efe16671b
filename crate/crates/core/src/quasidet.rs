//! Gelfand-Retakh quasideterminants over rings where only some elements invert.

use crate::algebra::{elem, Algebra, Elem};
use crate::diffop::{DiffOp, RatAlg};
use crate::error::{Error, Result};
use crate::quasi::{poly_regularity_witness, KernelBasis};
use crate::scalar::Q;
use num_traits::Zero;

pub trait Ring {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn try_inv(&self, a: &Self::E) -> Option<Self::E>;
    fn show(&self, a: &Self::E) -> String {
        format!("{a:?}")
    }
}

pub struct Rationals;

impl Ring for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn try_inv(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// R itself.
pub struct Elements<'a>(pub &'a Algebra);

impl Ring for Elements<'_> {
    type E = Elem;
    fn zero(&self) -> Elem {
        self.0.zero()
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        elem::add(a, b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        elem::sub(a, b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(a, b)
    }
    fn try_inv(&self, a: &Elem) -> Option<Elem> {
        self.0.invert(a).ok()
    }
    fn show(&self, a: &Elem) -> String {
        self.0.fmt_elem(a)
    }
}

/// R(x) with central scalar denominators.
pub struct RationalFunctions<'a>(pub &'a Algebra);

impl Ring for RationalFunctions<'_> {
    type E = RatAlg;
    fn zero(&self) -> RatAlg {
        RatAlg::zero(self.0.dim)
    }
    fn add(&self, a: &RatAlg, b: &RatAlg) -> RatAlg {
        a.add(b)
    }
    fn sub(&self, a: &RatAlg, b: &RatAlg) -> RatAlg {
        a.sub(b)
    }
    fn mul(&self, a: &RatAlg, b: &RatAlg) -> RatAlg {
        a.mul(self.0, b)
    }
    fn try_inv(&self, a: &RatAlg) -> Option<RatAlg> {
        let (q, s) = poly_regularity_witness(self.0, &a.num)?;
        Some(RatAlg::new(q.mul_scalar(&a.den), s))
    }
    fn show(&self, a: &RatAlg) -> String {
        a.fmt(self.0)
    }
}

fn minor<T: Clone>(y: &[Vec<T>], i: usize, j: usize) -> Vec<Vec<T>> {
    y.iter()
        .enumerate()
        .filter(|(r, _)| *r != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// |Y|_ij = y_ij - r_i^(j) (Y^ij)^{-1} c_j^(i).
pub fn quasideterminant<K: Ring>(k: &K, y: &[Vec<K::E>], i: usize, j: usize) -> Result<K::E> {
    let n = y.len();
    if n == 1 {
        return Ok(y[0][0].clone());
    }
    let inv = inverse(k, &minor(y, i, j))?;
    let row: Vec<K::E> = (0..n).filter(|&c| c != j).map(|c| y[i][c].clone()).collect();
    let col: Vec<K::E> = (0..n).filter(|&r| r != i).map(|r| y[r][j].clone()).collect();
    let mut acc = k.zero();
    for (a, ra) in row.iter().enumerate() {
        for (b, cb) in col.iter().enumerate() {
            acc = k.add(&acc, &k.mul(&k.mul(ra, &inv[a][b]), cb));
        }
    }
    Ok(k.sub(&y[i][j], &acc))
}

/// (Y^{-1})_ji = |Y|_ij^{-1}.
pub fn inverse<K: Ring>(k: &K, y: &[Vec<K::E>]) -> Result<Vec<Vec<K::E>>> {
    let n = y.len();
    let mut out = vec![vec![k.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let qd = quasideterminant(k, y, i, j)?;
            out[j][i] = k.try_inv(&qd).ok_or_else(|| Error::NotInvertible {
                det: format!("quasideterminant |Y|_{}{} = {}", i + 1, j + 1, k.show(&qd)),
            })?;
        }
    }
    Ok(out)
}

/// P = d^l - sum_k [G_l G^{-1}]_k d^k with G the stripped Wronski matrix (EGR formula).
pub fn operator_egr(alg: &Algebra, v: &KernelBasis) -> Result<DiffOp> {
    let l = v.len();
    let k = RationalFunctions(alg);
    let g = v.stripped_wronskian(l + 1);
    let sq: Vec<Vec<RatAlg>> = g[..l]
        .iter()
        .map(|row| row.iter().map(|p| RatAlg::from_poly(p.clone())).collect())
        .collect();
    let inv = inverse(&k, &sq)?;
    let mut coeffs = Vec::with_capacity(l + 1);
    for c in 0..l {
        let mut acc = k.zero();
        for (j, p) in g[l].iter().enumerate() {
            acc = acc.add(&RatAlg::from_poly(p.clone()).mul(alg, &inv[j][c]));
        }
        coeffs.push(acc.neg());
    }
    coeffs.push(RatAlg::constant(&alg.one));
    Ok(DiffOp::new(alg.dim, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::diffop::operator_from_kernel;
    use crate::examples;
    use crate::scalar::q;

    #[test]
    fn small_cases() {
        let y = vec![vec![q(7)]];
        assert_eq!(quasideterminant(&Rationals, &y, 0, 0).unwrap(), q(7));
        let y = vec![vec![q(2), q(3)], vec![q(5), q(11)]];
        let expected = q(11) - q(5) * q(3) / q(2);
        assert_eq!(quasideterminant(&Rationals, &y, 1, 1).unwrap(), expected);
        // commutative: |Y|_22 = det Y / y11
        assert_eq!(expected, (q(22) - q(15)) / q(2));
    }

    #[test]
    fn dual_numbers_match_determinant_ratio() {
        let alg = catalog::dual_numbers();
        let k = Elements(&alg);
        let e = |a: i64, b: i64| vec![q(a), q(b)];
        let y = vec![vec![e(1, 1), e(2, -1)], vec![e(3, 0), e(1, 5)]];
        let qd = quasideterminant(&k, &y, 1, 1).unwrap();
        let det = elem::sub(&alg.mul(&y[0][0], &y[1][1]), &alg.mul(&y[1][0], &y[0][1]));
        assert_eq!(qd, alg.mul(&det, &alg.invert(&y[0][0]).unwrap()));
    }

    #[test]
    fn egr_matches_solve() {
        let (alg, v) = examples::ex61();
        assert_eq!(operator_egr(&alg, &v).unwrap(), operator_from_kernel(&alg, &v).unwrap());
        let (alg, v) = examples::ex62();
        assert_eq!(operator_egr(&alg, &v).unwrap(), operator_from_kernel(&alg, &v).unwrap());
    }

    #[test]
    fn ex63_recursion_needs_missing_inverse() {
        let (alg, v) = examples::ex63();
        assert!(matches!(operator_egr(&alg, &v), Err(Error::NotInvertible { .. })));
    }
}
