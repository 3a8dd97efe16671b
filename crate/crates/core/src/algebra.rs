//! Finite-dimensional algebras over Q given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{span_basis, span_contains, span_rank, Mat};
use crate::poly::{AlgPoly, Poly};
use crate::report::Report;
use crate::scalar::Q;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// Coordinate vector of an algebra element.
pub type Elem = Vec<Q>;

pub mod elem {
    use super::*;

    pub fn zero(d: usize) -> Elem {
        vec![Q::zero(); d]
    }

    pub fn basis(d: usize, i: usize) -> Elem {
        let mut e = zero(d);
        e[i] = Q::one();
        e
    }

    pub fn add(a: &[Q], b: &[Q]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Q], b: &[Q]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(a: &[Q]) -> Elem {
        a.iter().map(|x| -x.clone()).collect()
    }

    pub fn scale(a: &[Q], c: &Q) -> Elem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn is_zero(a: &[Q]) -> bool {
        a.iter().all(|x| x.is_zero())
    }
}

#[derive(Debug)]
pub struct Algebra {
    pub name: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// c[i][j][k]: b_i b_j = sum_k c[i][j][k] b_k
    pub c: Vec<Vec<Vec<Q>>>,
    pub one: Elem,
    pub idempotents: Vec<Elem>,
    pub split: bool,
    terms: Vec<(usize, usize, usize, Q)>,
    radical: OnceLock<Vec<Elem>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra::new(
            self.name.clone(),
            self.basis_names.clone(),
            self.c.clone(),
            self.one.clone(),
            self.idempotents.clone(),
            self.split,
        )
        .expect("already validated")
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.basis_names == o.basis_names
            && self.c == o.c
            && self.one == o.one
            && self.idempotents == o.idempotents
            && self.split == o.split
    }
}

impl Algebra {
    /// Shape checks only; see `verify_idempotent_family` for the algebraic ones.
    pub fn new(
        name: String,
        basis_names: Vec<String>,
        c: Vec<Vec<Vec<Q>>>,
        one: Elem,
        idempotents: Vec<Elem>,
        split: bool,
    ) -> Result<Self> {
        let d = basis_names.len();
        if d == 0 {
            return Err(Error::Invalid("algebra dimension must be positive".into()));
        }
        let shape_ok = c.len() == d
            && c.iter()
                .all(|r| r.len() == d && r.iter().all(|v| v.len() == d));
        if !shape_ok {
            return Err(Error::Invalid(format!(
                "structure constants must have shape {d}x{d}x{d}"
            )));
        }
        if one.len() != d {
            return Err(Error::DimMismatch {
                expected: d,
                got: one.len(),
            });
        }
        if idempotents.is_empty() {
            return Err(Error::Invalid("at least one idempotent required".into()));
        }
        for e in &idempotents {
            if e.len() != d {
                return Err(Error::DimMismatch {
                    expected: d,
                    got: e.len(),
                });
            }
        }
        let mut terms = Vec::new();
        for (i, ci) in c.iter().enumerate() {
            for (j, cij) in ci.iter().enumerate() {
                for (k, v) in cij.iter().enumerate() {
                    if !v.is_zero() {
                        terms.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        Ok(Algebra {
            name,
            dim: d,
            basis_names,
            c,
            one,
            idempotents,
            split,
            terms,
            radical: OnceLock::new(),
        })
    }

    /// The one-dimensional algebra Q.
    pub fn scalar() -> Self {
        Algebra::new(
            "scalar".into(),
            vec!["1".into()],
            vec![vec![vec![Q::one()]]],
            vec![Q::one()],
            vec![vec![Q::one()]],
            true,
        )
        .unwrap()
    }

    pub fn m(&self) -> usize {
        self.idempotents.len()
    }

    pub fn zero(&self) -> Elem {
        elem::zero(self.dim)
    }

    pub fn basis(&self, i: usize) -> Elem {
        elem::basis(self.dim, i)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Elem {
        let mut out = self.zero();
        for (i, j, k, v) in &self.terms {
            if a[*i].is_zero() || b[*j].is_zero() {
                continue;
            }
            out[*k] += v * &a[*i] * &b[*j];
        }
        out
    }

    pub fn try_mul(&self, a: &[Q], b: &[Q]) -> Result<Elem> {
        for x in [a, b] {
            if x.len() != self.dim {
                return Err(Error::DimMismatch {
                    expected: self.dim,
                    got: x.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Matrix of r· : L[u][t] = sum_s r_s c[s][t][u].
    pub fn left_regular(&self, r: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (s, t, u, v) in &self.terms {
            if !r[*s].is_zero() {
                m[(*u, *t)] += v * &r[*s];
            }
        }
        m
    }

    /// Matrix of ·r : R[u][t] = sum_s r_s c[t][s][u].
    pub fn right_regular(&self, r: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (t, s, u, v) in &self.terms {
            if !r[*s].is_zero() {
                m[(*u, *t)] += v * &r[*s];
            }
        }
        m
    }

    pub fn is_invertible(&self, r: &[Q]) -> bool {
        !self.left_regular(r).det().is_zero()
    }

    pub fn invert(&self, r: &[Q]) -> Result<Elem> {
        let l = self.left_regular(r);
        let det = l.det();
        if det.is_zero() {
            return Err(Error::NotInvertible {
                det: det.to_string(),
            });
        }
        let x = l.solve(&self.one).expect("nonsingular");
        debug_assert_eq!(self.mul(&x, r), self.one);
        Ok(x)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.c[i][j] == self.c[j][i]))
    }

    /// First basis triple violating associativity.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let bk = self.basis(k);
                    let jk = self.mul(&self.basis(j), &bk);
                    if self.mul(&ij, &bk) != self.mul(&self.basis(i), &jk) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn unit_failure(&self) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let b = self.basis(i);
            self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b
        })
    }

    /// Q-basis of rad R as the kernel of the trace form tr(L(b_i b_j)).
    pub fn radical(&self) -> &[Elem] {
        self.radical.get_or_init(|| {
            let d = self.dim;
            let tr: Vec<Q> = (0..d)
                .map(|k| {
                    let l = self.left_regular(&self.basis(k));
                    (0..d).fold(Q::zero(), |acc, i| acc + &l[(i, i)])
                })
                .collect();
            let mut t = Mat::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    let prod = &self.c[i][j];
                    let mut acc = Q::zero();
                    for k in 0..d {
                        if !prod[k].is_zero() {
                            acc += &prod[k] * &tr[k];
                        }
                    }
                    t[(i, j)] = acc;
                }
            }
            span_basis(&t.nullspace(), d)
        })
    }

    /// Smallest l with J^l = 0, if at most dim.
    pub fn radical_nilpotency(&self) -> Option<usize> {
        let j = self.radical().to_vec();
        if j.is_empty() {
            return Some(0);
        }
        let mut power = j.clone();
        let mut l = 1;
        while !power.is_empty() {
            if l > self.dim {
                return None;
            }
            let prods: Vec<Elem> = power
                .iter()
                .flat_map(|a| j.iter().map(move |b| (a, b)))
                .map(|(a, b)| self.mul(a, b))
                .collect();
            power = span_basis(&prods, self.dim);
            l += 1;
        }
        Some(l)
    }

    pub fn in_radical(&self, x: &[Q]) -> bool {
        span_contains(self.radical(), x, self.dim)
    }

    /// dim_Q of span{a b_s c}.
    fn sandwich_dim(&self, a: &[Q], c: &[Q], within: &[Elem]) -> usize {
        let v: Vec<Elem> = within
            .iter()
            .map(|x| self.mul(&self.mul(a, x), c))
            .collect();
        span_rank(&v, self.dim)
    }

    pub fn full_basis(&self) -> Vec<Elem> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }

    /// dim e (R/J) e.
    pub fn local_dim(&self, e: &[Q]) -> usize {
        let all = self.full_basis();
        self.sandwich_dim(e, e, &all) - self.sandwich_dim(e, e, self.radical())
    }

    pub fn verify_idempotent_family(&self) -> Report {
        let mut r = Report::new(format!("idempotent family of {}", self.name));
        let assoc = self.associativity_failure();
        r.push(Report::check(
            "associative on basis triples",
            assoc.is_none(),
            assoc.map_or(String::new(), |t| format!("fails at basis triple {t:?}")),
        ));
        let unit = self.unit_failure();
        r.push(Report::check(
            "one is a two-sided identity",
            unit.is_none(),
            unit.map_or(String::new(), |i| {
                format!("fails on basis element {}", self.basis_names[i])
            }),
        ));
        let es = &self.idempotents;
        for (i, e) in es.iter().enumerate() {
            let sq = self.mul(e, e);
            r.push(Report::check(
                format!("e{} idempotent", i + 1),
                &sq == e,
                if &sq == e {
                    String::new()
                } else {
                    format!("e^2 = {}", self.fmt_elem(&sq))
                },
            ));
            for (j, f) in es.iter().enumerate() {
                if i != j {
                    let p = self.mul(e, f);
                    if !elem::is_zero(&p) {
                        r.push(Report::check(
                            format!("e{} e{} = 0", i + 1, j + 1),
                            false,
                            self.fmt_elem(&p),
                        ));
                    }
                }
            }
        }
        let sum = es.iter().fold(self.zero(), |acc, e| elem::add(&acc, e));
        r.push(Report::check(
            "idempotents sum to one",
            sum == self.one,
            if sum == self.one {
                String::new()
            } else {
                format!("sum = {}", self.fmt_elem(&sum))
            },
        ));
        let nil = self.radical_nilpotency();
        r.push(Report::check(
            "radical nilpotent",
            nil.is_some(),
            format!(
                "dim rad = {}, nilpotency index {:?}",
                self.radical().len(),
                nil
            ),
        ));
        for (i, e) in es.iter().enumerate() {
            let ld = self.local_dim(e);
            r.push(Report::check(
                format!("e{} primitive", i + 1),
                ld == 1,
                format!("dim e(R/rad R)e = {ld}"),
            ));
        }
        r
    }

    /// Partition of idempotent indices into isomorphism classes of e_i R.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let m = self.m();
        let all = self.full_basis();
        let linked = |i: usize, j: usize| -> bool {
            let (ei, ej) = (&self.idempotents[i], &self.idempotents[j]);
            let a: Vec<Elem> = all.iter().map(|x| self.mul(&self.mul(ei, x), ej)).collect();
            let b: Vec<Elem> = all.iter().map(|x| self.mul(&self.mul(ej, x), ei)).collect();
            a.iter()
                .any(|x| b.iter().any(|y| !self.in_radical(&self.mul(x, y))))
        };
        let mut class: Vec<Option<usize>> = vec![None; m];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            if class[i].is_some() {
                continue;
            }
            let c = out.len();
            class[i] = Some(c);
            let mut members = vec![i];
            for j in i + 1..m {
                if class[j].is_none() && linked(i, j) {
                    class[j] = Some(c);
                    members.push(j);
                }
            }
            out.push(members);
        }
        out
    }

    /// Opposite algebra: same basis, b_i * b_j := b_j b_i.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let c = (0..d)
            .map(|i| (0..d).map(|j| self.c[j][i].clone()).collect())
            .collect();
        Algebra::new(
            format!("{}^op", self.name),
            self.basis_names.clone(),
            c,
            self.one.clone(),
            self.idempotents.clone(),
            self.split,
        )
        .unwrap()
    }

    pub fn mul_poly(&self, a: &AlgPoly, b: &AlgPoly) -> AlgPoly {
        let mut out = AlgPoly::zero(self.dim);
        for (i, j, k, v) in &self.terms {
            let (p, q) = (&a.coords[*i], &b.coords[*j]);
            if p.is_zero() || q.is_zero() {
                continue;
            }
            let prod = (p * q).scale(v);
            out.coords[*k] = &out.coords[*k] + &prod;
        }
        out
    }

    pub fn lmul_poly(&self, e: &[Q], a: &AlgPoly) -> AlgPoly {
        let mut out = AlgPoly::zero(self.dim);
        for (i, j, k, v) in &self.terms {
            if e[*i].is_zero() || a.coords[*j].is_zero() {
                continue;
            }
            out.coords[*k] = &out.coords[*k] + &a.coords[*j].scale(&(v * &e[*i]));
        }
        out
    }

    pub fn rmul_poly(&self, a: &AlgPoly, e: &[Q]) -> AlgPoly {
        let mut out = AlgPoly::zero(self.dim);
        for (i, j, k, v) in &self.terms {
            if e[*j].is_zero() || a.coords[*i].is_zero() {
                continue;
            }
            out.coords[*k] = &out.coords[*k] + &a.coords[*i].scale(&(v * &e[*j]));
        }
        out
    }

    /// Left-regular matrix with polynomial entries: L(p)[u][t] = sum_s p_s c[s][t][u].
    pub fn left_regular_poly(&self, p: &AlgPoly) -> Vec<Vec<Poly>> {
        let mut m = vec![vec![Poly::zero(); self.dim]; self.dim];
        for (s, t, u, v) in &self.terms {
            if !p.coords[*s].is_zero() {
                m[*u][*t] = &m[*u][*t] + &p.coords[*s].scale(v);
            }
        }
        m
    }

    /// Right-regular matrix with polynomial entries: R(p)[u][t] = sum_s p_s c[t][s][u].
    pub fn right_regular_poly(&self, p: &AlgPoly) -> Vec<Vec<Poly>> {
        let mut m = vec![vec![Poly::zero(); self.dim]; self.dim];
        for (t, s, u, v) in &self.terms {
            if !p.coords[*s].is_zero() {
                m[*u][*t] = &m[*u][*t] + &p.coords[*s].scale(v);
            }
        }
        m
    }

    pub fn fmt_elem(&self, e: &[Q]) -> String {
        let mut parts = Vec::new();
        for (a, n) in e.iter().zip(&self.basis_names) {
            if a.is_zero() {
                continue;
            }
            if a.is_one() {
                parts.push(n.clone());
            } else {
                parts.push(format!("({a})*{n}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn fmt_poly(&self, p: &AlgPoly, var: &str) -> String {
        let mut parts = Vec::new();
        for (c, n) in p.coords.iter().zip(&self.basis_names) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(n.clone());
            } else {
                parts.push(format!("({})*{n}", c.fmt_var(var)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::q;

    #[test]
    fn dual_numbers_basics() {
        let a = catalog::dual_numbers();
        let eps = a.basis(1);
        assert!(elem::is_zero(&a.mul(&eps, &eps)));
        let r = vec![q(1), q(1)];
        let l = a.left_regular(&r);
        assert_eq!(l.to_rows(), vec![vec![q(1), q(0)], vec![q(1), q(1)]]);
        assert_eq!(l.det(), q(1));
        assert_eq!(a.invert(&r).unwrap(), vec![q(1), q(-1)]);
        assert!(!a.is_invertible(&eps));
        assert!(matches!(a.invert(&eps), Err(Error::NotInvertible { .. })));
        assert_eq!(a.left_regular(&eps).det(), q(0));
        assert_eq!(a.left_regular(&a.one), Mat::identity(2));
        assert_eq!(a.radical(), &[eps][..]);
    }

    #[test]
    fn matrix_units_and_radicals() {
        let m2 = catalog::m2();
        let (e11, e12) = (m2.basis(0), m2.basis(1));
        assert_eq!(m2.mul(&e11, &e12), e12);
        assert!(m2.radical().is_empty());
        assert!(!m2.is_invertible(&e11));
        let a2 = catalog::a2();
        assert_eq!(a2.radical(), &[a2.basis(1)][..]);
        let k = catalog::kronecker();
        assert_eq!(k.radical().len(), 2);
        assert_eq!(k.radical_nilpotency(), Some(2));
    }

    #[test]
    fn left_right_invertibility_agree() {
        for a in catalog::all_algebras() {
            for i in 0..a.dim {
                let mut r = a.one.clone();
                r[i] += q(2);
                let l = !a.left_regular(&r).det().is_zero();
                let rr = !a.right_regular(&r).det().is_zero();
                assert_eq!(l, rr, "{}", a.name);
                if l {
                    let inv = a.invert(&r).unwrap();
                    assert_eq!(a.mul(&r, &inv), a.one);
                    assert_eq!(a.mul(&inv, &r), a.one);
                }
            }
        }
    }

    #[test]
    fn idempotent_families() {
        for a in catalog::all_algebras() {
            let r = a.verify_idempotent_family();
            assert!(r.pass, "{r:?}");
        }
        let mut bad = catalog::m2();
        bad.idempotents = vec![bad.one.clone()];
        let bad = bad.clone();
        let r = bad.verify_idempotent_family();
        assert!(!r.pass);
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "e1 primitive");
        assert_eq!(f.witness.as_deref(), Some("dim e(R/rad R)e = 4"));
    }

    #[test]
    fn iso_classes() {
        assert_eq!(catalog::m2().iso_classes(), vec![vec![0, 1]]);
        assert_eq!(catalog::a2().iso_classes(), vec![vec![0], vec![1]]);
        assert_eq!(catalog::kronecker().iso_classes(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn opposite_reverses() {
        let a = catalog::a2();
        let op = a.opposite();
        let (x, y) = (a.basis(1), a.basis(0));
        assert_eq!(op.mul(&x, &y), a.mul(&y, &x));
    }

    #[test]
    fn mismatch_is_error() {
        let a = catalog::dual_numbers();
        assert!(matches!(
            a.try_mul(&[q(1)], &[q(1), q(0)]),
            Err(Error::DimMismatch { .. })
        ));
    }
}
