//! Finite-dimensional R-modules given by action matrices, and direct-summand witnesses.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, span_rank, Mat};
use crate::poly::AlgPoly;
use crate::scalar::Q;
use num_traits::{One, Zero};

/// Q^dim with one action matrix per algebra basis element (column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    pub dim: usize,
    pub actions: Vec<Mat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl FinModule {
    /// Polynomials of degree < n in the flat layout of `AlgPoly::flat`, acted on from one side.
    pub fn on_polys(alg: &Algebra, n: usize, side: Side) -> Self {
        let d = alg.dim;
        let actions = (0..d)
            .map(|s| {
                let b = alg.basis(s);
                let blk = match side {
                    Side::Left => alg.left_regular(&b),
                    Side::Right => alg.right_regular(&b),
                };
                let mut m = Mat::zeros(n * d, n * d);
                for k in 0..n {
                    for u in 0..d {
                        for t in 0..d {
                            m[(k * d + u, k * d + t)] = blk[(u, t)].clone();
                        }
                    }
                }
                m
            })
            .collect();
        FinModule { dim: n * d, actions }
    }

    /// The regular module R acting on itself.
    pub fn regular(alg: &Algebra, side: Side) -> Self {
        Self::on_polys(alg, 1, side)
    }

    pub fn is_submodule(&self, basis: &[Vec<Q>]) -> bool {
        let r = span_rank(basis, self.dim);
        self.actions.iter().all(|a| {
            basis.iter().all(|u| {
                let mut all = basis.to_vec();
                all.push(a.mul_vec(u));
                span_rank(&all, self.dim) == r
            })
        })
    }

    /// Action on an invariant subspace, in the coordinates of `basis` (assumed independent).
    pub fn restrict(&self, basis: &[Vec<Q>]) -> Result<FinModule> {
        let b = Mat::from_cols(basis, self.dim);
        let k = basis.len();
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let mut m = Mat::zeros(k, k);
            for (c, u) in basis.iter().enumerate() {
                let x = b.solve(&a.mul_vec(u)).ok_or_else(|| {
                    Error::Invalid("subspace is not invariant under the action".into())
                })?;
                for (r, v) in x.into_iter().enumerate() {
                    m[(r, c)] = v;
                }
            }
            actions.push(m);
        }
        Ok(FinModule { dim: k, actions })
    }

    /// Smallest submodule containing `vecs`, as a row-reduced basis.
    pub fn generated(&self, vecs: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut all = span_basis(vecs, self.dim);
        loop {
            let mut next = all.clone();
            for a in &self.actions {
                for u in &all {
                    next.push(a.mul_vec(u));
                }
            }
            let next = span_basis(&next, self.dim);
            if next.len() == all.len() {
                return all;
            }
            all = next;
        }
    }

    /// dim_Q of e W for an algebra element e.
    pub fn image_dim(&self, alg: &Algebra, e: &[Q], basis: &[Vec<Q>]) -> usize {
        let m = self.element_action(alg, e);
        let imgs: Vec<Vec<Q>> = basis.iter().map(|u| m.mul_vec(u)).collect();
        span_rank(&imgs, self.dim)
    }

    pub fn element_action(&self, alg: &Algebra, e: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for s in 0..alg.dim {
            if !e[s].is_zero() {
                m = m.add(&self.actions[s].scale(&e[s]));
            }
        }
        m
    }
}

/// Coordinates of `v` in the independent family `basis`.
pub fn coords_in(basis: &[Vec<Q>], v: &[Q], dim: usize) -> Option<Vec<Q>> {
    Mat::from_cols(basis, dim).solve(v)
}

/// An R-linear projection pi of W onto U with pi|_U = id, found by solving for X: W -> U with
/// X B = I and X A_s = A_s|_U X. `u` lives in the coordinates of W.
pub fn direct_summand_witness(w: &FinModule, u: &[Vec<Q>]) -> Result<Option<Mat>> {
    let n = w.dim;
    let u = span_basis(u, n);
    let k = u.len();
    if k == n {
        return Ok(Some(Mat::identity(n)));
    }
    if k == 0 {
        return Ok(Some(Mat::zeros(n, n)));
    }
    let ures = w.restrict(&u)?;
    let var = |i: usize, j: usize| i * n + j;
    let nv = k * n;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for i in 0..k {
        for c in 0..k {
            let mut row = vec![Q::zero(); nv];
            for (j, x) in u[c].iter().enumerate() {
                if !x.is_zero() {
                    row[var(i, j)] = x.clone();
                }
            }
            rows.push(row);
            rhs.push(if i == c { Q::one() } else { Q::zero() });
        }
    }
    for (a, au) in w.actions.iter().zip(&ures.actions) {
        for i in 0..k {
            for j in 0..n {
                let mut row = vec![Q::zero(); nv];
                for t in 0..n {
                    if !a[(t, j)].is_zero() {
                        row[var(i, t)] += &a[(t, j)];
                    }
                }
                for t in 0..k {
                    if !au[(i, t)].is_zero() {
                        row[var(t, j)] -= &au[(i, t)];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                    rhs.push(Q::zero());
                }
            }
        }
    }
    let sys = Mat::from_rows(&rows, nv);
    let Some(x) = sys.solve(&rhs) else {
        return Ok(None);
    };
    let mut xm = Mat::zeros(k, n);
    for i in 0..k {
        for j in 0..n {
            xm[(i, j)] = x[var(i, j)].clone();
        }
    }
    Ok(Some(Mat::from_cols(&u, n).mul(&xm)))
}

/// Projection onto U along C when W = U + C is direct and both are submodules.
pub fn projection_along(w: &FinModule, u: &[Vec<Q>], c: &[Vec<Q>]) -> Option<Mat> {
    let n = w.dim;
    let (ru, rc) = (span_rank(u, n), span_rank(c, n));
    let mut all = span_basis(u, n);
    all.extend(span_basis(c, n));
    if ru + rc != n || span_rank(&all, n) != n || !w.is_submodule(u) || !w.is_submodule(c) {
        return None;
    }
    let b = Mat::from_cols(&all, n);
    let inv = b.inverse()?;
    let mut keep = Mat::zeros(n, n);
    for i in 0..ru {
        keep[(i, i)] = Q::one();
    }
    Some(b.mul(&keep).mul(&inv))
}

/// Multiplicities m_j of the projectives R e_j (left) or e_j R (right) in a projective module
/// with dim e_i X (left) or dim X e_i (right) given by `dims`, one entry per isomorphism class.
/// None when the Cartan matrix on class representatives is singular or m is not integral.
pub fn projective_multiplicities(alg: &Algebra, dims: &[usize], side: Side) -> Option<Vec<Q>> {
    let classes = alg.iso_classes();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let r = reps.len();
    let mut c = Mat::zeros(r, r);
    let all = alg.full_basis();
    for (a, &i) in reps.iter().enumerate() {
        for (b, &j) in reps.iter().enumerate() {
            let (ei, ej) = (&alg.idempotents[i], &alg.idempotents[j]);
            let v: Vec<Vec<Q>> = all
                .iter()
                .map(|x| match side {
                    Side::Left => alg.mul(&alg.mul(ei, x), ej),
                    Side::Right => alg.mul(&alg.mul(ej, x), ei),
                })
                .collect();
            c[(a, b)] = Q::from_integer(span_rank(&v, alg.dim).into());
        }
    }
    let rhs: Vec<Q> = reps
        .iter()
        .map(|&i| Q::from_integer(dims[i].into()))
        .collect();
    let m = c.solve(&rhs)?;
    (c.det() != Q::zero() && m.iter().all(|x| x.is_integer())).then_some(m)
}

/// dim e_i X (left) or dim X e_i (right) for the subspace `basis` of `w`.
pub fn idempotent_dims(alg: &Algebra, w: &FinModule, basis: &[Vec<Q>]) -> Vec<usize> {
    alg.idempotents
        .iter()
        .map(|e| w.image_dim(alg, e, basis))
        .collect()
}

/// Free of rank r as judged by idempotent multiplicities: r copies of every class member.
pub fn is_free_of_rank(alg: &Algebra, mult: &[Q], rank: usize) -> bool {
    alg.iso_classes()
        .iter()
        .zip(mult)
        .all(|(cl, m)| *m == Q::from_integer((rank * cl.len()).into()))
}

/// Flat vectors of AlgPolys of degree < n.
pub fn flat_all(ps: &[AlgPoly], n: usize) -> Vec<Vec<Q>> {
    ps.iter().map(|p| p.flat(n)).collect()
}

/// Projection of ker d^n = {polys of degree < n} onto the right R-span of `fs`, if that span
/// is a direct summand.
pub fn polynomial_summand_witness(alg: &Algebra, fs: &[AlgPoly], n: usize) -> Result<Option<Mat>> {
    if let Some(f) = fs.iter().find(|f| f.len() > n) {
        return Err(Error::Invalid(format!(
            "{} has degree >= {n}, outside ker d^{n}",
            alg.fmt_poly(f, "x")
        )));
    }
    let w = FinModule::on_polys(alg, n, Side::Right);
    let u = w.generated(&flat_all(fs, n));
    direct_summand_witness(&w, &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::q;

    #[test]
    fn whole_and_zero() {
        let alg = catalog::a2();
        let w = FinModule::regular(&alg, Side::Left);
        let all: Vec<Vec<Q>> = alg.full_basis();
        assert_eq!(direct_summand_witness(&w, &all).unwrap(), Some(Mat::identity(3)));
        assert!(direct_summand_witness(&w, &[]).unwrap().is_some());
    }

    #[test]
    fn local_algebra_has_no_proper_summand() {
        let alg = catalog::dual_numbers();
        let w = FinModule::regular(&alg, Side::Right);
        let eps = vec![vec![q(0), q(1)]];
        assert!(w.is_submodule(&eps));
        assert!(direct_summand_witness(&w, &eps).unwrap().is_none());
    }

    #[test]
    fn projective_summands_split() {
        // R = Re1 + Re2 for A2, left modules
        let alg = catalog::a2();
        let w = FinModule::regular(&alg, Side::Left);
        let re1 = w.generated(&[alg.idempotents[0].clone()]);
        let re2 = w.generated(&[alg.idempotents[1].clone()]);
        assert_eq!(re1.len() + re2.len(), 3);
        let pi = direct_summand_witness(&w, &re1).unwrap().unwrap();
        assert_eq!(pi.mul(&pi), pi);
        assert!(projection_along(&w, &re1, &re2).is_some());
        // R E21 = Q E21 sits inside the indecomposable R e1
        let rad = w.generated(&[alg.radical()[0].clone()]);
        assert_eq!(rad.len(), 1);
        assert!(direct_summand_witness(&w, &rad).unwrap().is_none());
    }

    #[test]
    fn multiplicities() {
        let alg = catalog::kronecker();
        let w = FinModule::on_polys(&alg, 2, Side::Left);
        let all: Vec<Vec<Q>> = (0..w.dim)
            .map(|i| (0..w.dim).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        let dims = idempotent_dims(&alg, &w, &all);
        let m = projective_multiplicities(&alg, &dims, Side::Left).unwrap();
        assert!(is_free_of_rank(&alg, &m, 2));
        assert!(!is_free_of_rank(&alg, &m, 1));
        let m2 = catalog::m2();
        let w = FinModule::regular(&m2, Side::Left);
        let dims = idempotent_dims(&m2, &w, &m2.full_basis());
        let m = projective_multiplicities(&m2, &dims, Side::Left).unwrap();
        assert!(is_free_of_rank(&m2, &m, 1));
    }

    #[test]
    fn degenerate_pair_is_a_summand() {
        let (alg, v) = crate::examples::ex46();
        let fs: Vec<AlgPoly> = (0..v.len()).map(|j| v.element(j).component(&q(0))).collect();
        let pi = polynomial_summand_witness(&alg, &fs, 3).unwrap().unwrap();
        assert_eq!(pi.mul(&pi), pi);
        // F3 M2 is the kernel of the projection
        let f3 = crate::examples::ex46_f3().element(0).component(&q(0));
        let w = FinModule::on_polys(&alg, 3, Side::Right);
        for c in w.generated(&[f3.flat(3)]) {
            assert!(pi.mul_vec(&c).iter().all(|x| x.is_zero()));
        }
        // the printed pair spans a non-free module, still checked
        let (_, vp) = crate::examples::ex46_printed();
        let fp: Vec<AlgPoly> = (0..vp.len()).map(|j| vp.element(j).component(&q(0))).collect();
        assert!(polynomial_summand_witness(&alg, &fp, 2).is_err());
    }
}
