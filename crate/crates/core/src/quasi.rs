//! Quasiexponentials QP(R) = sum_alpha R[x] e^{alpha x}, Wronski matrices,
//! nondegeneracy, the Theorem A conditions and the Fitting-split solver F_A.

use crate::algebra::{elem, Algebra, Elem};
use crate::bareiss::{self, Domain};
use crate::error::{Error, Result};
use crate::linalg::{span_contains, span_rank, Mat};
use crate::poly::{AlgPoly, Poly};
use crate::report::Report;
use crate::scalar::{q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Finite sum of p_alpha(x) e^{alpha x} with p_alpha in R[x]; zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiExp {
    pub dim: usize,
    pub terms: BTreeMap<Q, AlgPoly>,
}

impl QuasiExp {
    pub fn zero(d: usize) -> Self {
        QuasiExp {
            dim: d,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(alpha: Q, p: AlgPoly) -> Self {
        let mut f = QuasiExp::zero(p.dim());
        f.add_term(alpha, p);
        f
    }

    /// e^{alpha x} r
    pub fn exp_elem(alpha: Q, r: &[Q]) -> Self {
        Self::term(alpha, AlgPoly::constant(r))
    }

    pub fn add_term(&mut self, alpha: Q, p: AlgPoly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&alpha) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, alpha: &Q) -> AlgPoly {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| AlgPoly::zero(self.dim))
    }

    pub fn add(&self, o: &QuasiExp) -> QuasiExp {
        let mut out = self.clone();
        for (a, p) in &o.terms {
            out.add_term(a.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, o: &QuasiExp) -> QuasiExp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QuasiExp {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, c: &Q) -> QuasiExp {
        self.map(|p| p.scale(c))
    }

    fn map(&self, f: impl Fn(&AlgPoly) -> AlgPoly) -> QuasiExp {
        let mut out = QuasiExp::zero(self.dim);
        for (a, p) in &self.terms {
            out.add_term(a.clone(), f(p));
        }
        out
    }

    /// Termwise (p' + alpha p) e^{alpha x}.
    pub fn deriv(&self) -> QuasiExp {
        let mut out = QuasiExp::zero(self.dim);
        for (a, p) in &self.terms {
            out.add_term(a.clone(), p.deriv().add(&p.scale(a)));
        }
        out
    }

    pub fn deriv_n(&self, n: usize) -> QuasiExp {
        (0..n).fold(self.clone(), |f, _| f.deriv())
    }

    pub fn lmul(&self, alg: &Algebra, r: &[Q]) -> QuasiExp {
        self.map(|p| alg.lmul_poly(r, p))
    }

    pub fn rmul(&self, alg: &Algebra, r: &[Q]) -> QuasiExp {
        self.map(|p| alg.rmul_poly(p, r))
    }

    /// a(x) f with a in R[x].
    pub fn lmul_poly(&self, alg: &Algebra, a: &AlgPoly) -> QuasiExp {
        self.map(|p| alg.mul_poly(a, p))
    }

    pub fn mul_scalar(&self, s: &Poly) -> QuasiExp {
        self.map(|p| p.mul_scalar(s))
    }

    pub fn mul(&self, alg: &Algebra, o: &QuasiExp) -> QuasiExp {
        let mut out = QuasiExp::zero(self.dim);
        for (a, p) in &self.terms {
            for (b, r) in &o.terms {
                out.add_term(a + b, alg.mul_poly(p, r));
            }
        }
        out
    }

    /// Value at x = 0.
    pub fn eval0(&self) -> Elem {
        self.terms
            .values()
            .fold(elem::zero(self.dim), |acc, p| elem::add(&acc, &p.coeff(0)))
    }

    pub fn max_len(&self) -> usize {
        self.terms.values().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn fmt(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(a, p)| {
                let e = if Zero::is_zero(a) {
                    String::new()
                } else {
                    format!("exp({a}x)*")
                };
                format!("{e}[{}]", alg.fmt_poly(p, "x"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Common Q-coordinates for a family of quasiexponentials.
pub struct QuasiLayout {
    d: usize,
    blocks: BTreeMap<Q, (usize, usize)>,
    pub size: usize,
}

impl QuasiLayout {
    pub fn new(d: usize, fs: &[&QuasiExp], extra: &BTreeMap<Q, usize>) -> Self {
        let mut lens: BTreeMap<Q, usize> = extra.clone();
        for f in fs {
            for (a, p) in &f.terms {
                let e = lens.entry(a.clone()).or_insert(0);
                *e = (*e).max(p.len());
            }
        }
        let mut blocks = BTreeMap::new();
        let mut off = 0;
        for (a, n) in lens {
            blocks.insert(a, (off, n));
            off += n * d;
        }
        QuasiLayout {
            d,
            blocks,
            size: off,
        }
    }

    pub fn coords(&self, f: &QuasiExp) -> Vec<Q> {
        let mut v = vec![<Q as Zero>::zero(); self.size];
        for (a, p) in &f.terms {
            let (off, n) = self.blocks[a];
            let flat = p.flat(n);
            v[off..off + n * self.d].clone_from_slice(&flat);
        }
        v
    }

    pub fn from_coords(&self, v: &[Q]) -> QuasiExp {
        let mut f = QuasiExp::zero(self.d);
        for (a, &(off, n)) in &self.blocks {
            f.add_term(a.clone(), AlgPoly::from_flat(self.d, &v[off..off + n * self.d]));
        }
        f
    }
}

/// Q-spanning set {f b_s} of the right module sum f R.
pub fn right_span(alg: &Algebra, fs: &[QuasiExp]) -> Vec<QuasiExp> {
    fs.iter()
        .flat_map(|f| (0..alg.dim).map(move |s| (f, s)))
        .map(|(f, s)| f.rmul(alg, &alg.basis(s)))
        .collect()
}

/// Scalar quasipolynomials: the commutative domain Q[x][y^Q] with y = e^x.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuasiScalar {
    pub terms: BTreeMap<Q, Poly>,
}

impl QuasiScalar {
    pub fn term(alpha: Q, p: Poly) -> Self {
        let mut s = QuasiScalar::default();
        if !p.is_zero() {
            s.terms.insert(alpha, p);
        }
        s
    }

    pub fn poly(p: Poly) -> Self {
        Self::term(<Q as Zero>::zero(), p)
    }

    fn add_term(&mut self, alpha: Q, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&alpha) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    /// (alpha, p) when the value is p(x) e^{alpha x}.
    pub fn single(&self) -> Option<(&Q, &Poly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn lead(&self) -> Option<(&Q, &Poly)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Display for QuasiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, p)| {
                if Zero::is_zero(a) {
                    format!("({p})")
                } else {
                    format!("exp({a}x)*({p})")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Domain for QuasiScalar {
    fn zero() -> Self {
        QuasiScalar::default()
    }
    fn one() -> Self {
        QuasiScalar::poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, p) in &o.terms {
            out.add_term(a.clone(), p.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = QuasiScalar::default();
        for (a, p) in &self.terms {
            for (b, r) in &o.terms {
                out.add_term(a + b, p * r);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        QuasiScalar {
            terms: self.terms.iter().map(|(a, p)| (a.clone(), -p)).collect(),
        }
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let (be, bc) = o.lead()?;
        if self.terms.is_empty() {
            return Some(QuasiScalar::default());
        }
        let floor = self.terms.keys().next().unwrap() - o.terms.keys().next().unwrap();
        let mut r = self.clone();
        let mut quo = QuasiScalar::default();
        while let Some((re, rc)) = r.lead() {
            let e = re - be;
            if e < floor {
                return None;
            }
            let c = rc.exact_div(bc)?;
            let t = QuasiScalar::term(e.clone(), c.clone());
            r = r.sub(&t.mul(o));
            quo.add_term(e, c);
        }
        Some(quo)
    }
}

/// Row k holds k-th derivatives.
pub fn wronski(fs: &[QuasiExp]) -> Vec<Vec<QuasiExp>> {
    let n = fs.len();
    let mut rows = vec![fs.to_vec()];
    for k in 1..n {
        let next = rows[k - 1].iter().map(|f| f.deriv()).collect();
        rows.push(next);
    }
    rows
}

/// Left-regular matrix of a quasiexponential with QuasiScalar entries.
fn left_regular_quasi(alg: &Algebra, f: &QuasiExp) -> Vec<Vec<QuasiScalar>> {
    let d = alg.dim;
    let mut m = vec![vec![QuasiScalar::default(); d]; d];
    for (a, p) in &f.terms {
        let l = alg.left_regular_poly(p);
        for u in 0..d {
            for t in 0..d {
                if !l[u][t].is_zero() {
                    m[u][t].add_term(a.clone(), l[u][t].clone());
                }
            }
        }
    }
    m
}

/// Determinant of the n*d flattening of an n x n matrix over QP(R) acting on columns.
pub fn flattened_det(alg: &Algebra, w: &[Vec<QuasiExp>]) -> QuasiScalar {
    let n = w.len();
    let d = alg.dim;
    let mut big = vec![vec![QuasiScalar::default(); n * d]; n * d];
    for (k, row) in w.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            let l = left_regular_quasi(alg, f);
            for u in 0..d {
                for t in 0..d {
                    big[k * d + u][j * d + t] = l[u][t].clone();
                }
            }
        }
    }
    bareiss::det(big)
}

/// Nondegeneracy of an arbitrary family via its flattened Wronski determinant.
pub fn is_nondegenerate(alg: &Algebra, fs: &[QuasiExp]) -> (bool, QuasiScalar) {
    let det = flattened_det(alg, &wronski(fs));
    (!det.is_zero(), det)
}

/// R-valued Wronski determinant for commutative R (permutation expansion).
pub fn r_valued_det(alg: &Algebra, w: &[Vec<QuasiExp>]) -> Result<QuasiExp> {
    if !alg.is_commutative() {
        return Err(Error::Invalid(
            "R-valued determinant requires a commutative algebra".into(),
        ));
    }
    let n = w.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = QuasiExp::zero(alg.dim);
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut prod = QuasiExp::exp_elem(<Q as Zero>::zero(), &alg.one);
        for (col, &row) in perm.iter().enumerate() {
            prod = prod.mul(alg, &w[row][col]);
        }
        total = if inversions % 2 == 0 {
            total.add(&prod)
        } else {
            total.sub(&prod)
        };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Structured basis f_j = sum_i p_ij e^{alpha_ij x} e_i of a right R-submodule of QP(R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    /// elems[j][i] = (alpha_ij, p_ij e_i)
    pub elems: Vec<Vec<(Q, AlgPoly)>>,
}

impl KernelBasis {
    pub fn new(alg: &Algebra, elems: Vec<Vec<(Q, AlgPoly)>>) -> Result<Self> {
        let mut out = Vec::with_capacity(elems.len());
        for (j, f) in elems.into_iter().enumerate() {
            if f.len() != alg.m() {
                return Err(Error::Invalid(format!(
                    "basis element {j} has {} idempotent components, algebra has {}",
                    f.len(),
                    alg.m()
                )));
            }
            let mut g = Vec::with_capacity(f.len());
            for (i, (a, p)) in f.into_iter().enumerate() {
                if p.dim() != alg.dim {
                    return Err(Error::DimMismatch {
                        expected: alg.dim,
                        got: p.dim(),
                    });
                }
                g.push((a, alg.rmul_poly(&p, &alg.idempotents[i])));
            }
            if g.iter().all(|(_, p)| p.is_zero()) {
                return Err(Error::Invalid(format!("basis element {j} is zero")));
            }
            out.push(g);
        }
        Ok(KernelBasis { elems: out })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, j: usize) -> QuasiExp {
        let d = self.elems[j][0].1.dim();
        let mut f = QuasiExp::zero(d);
        for (a, p) in &self.elems[j] {
            f.add_term(a.clone(), p.clone());
        }
        f
    }

    pub fn quasi(&self) -> Vec<QuasiExp> {
        (0..self.len()).map(|j| self.element(j)).collect()
    }

    /// m x l matrix alpha_ij.
    pub fn exponent_matrix(&self) -> Vec<Vec<Q>> {
        let m = self.elems.first().map_or(0, |f| f.len());
        (0..m)
            .map(|i| self.elems.iter().map(|f| f[i].0.clone()).collect())
            .collect()
    }

    /// alpha -> max x-degree over nonzero components with that exponent.
    pub fn exponent_degrees(&self) -> BTreeMap<Q, usize> {
        let mut out = BTreeMap::new();
        for f in &self.elems {
            for (a, p) in f {
                if let Some(deg) = p.degree() {
                    let e = out.entry(a.clone()).or_insert(0);
                    *e = (*e).max(deg);
                }
            }
        }
        out
    }

    /// G[k][j] = sum_i ((d + alpha_ij)^k p_ij) e_i, so that f_j^{(k)} = G[k][j] E_j.
    pub fn stripped_wronskian(&self, rows: usize) -> Vec<Vec<AlgPoly>> {
        let mut cur: Vec<Vec<(Q, AlgPoly)>> = self.elems.clone();
        let mut out = Vec::with_capacity(rows);
        for k in 0..rows {
            if k > 0 {
                for f in cur.iter_mut() {
                    for (a, p) in f.iter_mut() {
                        *p = p.deriv().add(&p.scale(a));
                    }
                }
            }
            out.push(
                cur.iter()
                    .map(|f| {
                        f.iter()
                            .skip(1)
                            .fold(f[0].1.clone(), |acc, (_, p)| acc.add(p))
                    })
                    .collect(),
            );
        }
        out
    }

    /// Flattened Wronski determinant via the stripped matrix:
    /// det W = e^{x sum_ij alpha_ij dim(e_i R)} det(flat G).
    pub fn nondegeneracy(&self, alg: &Algebra) -> (bool, QuasiScalar) {
        let l = self.len();
        let d = alg.dim;
        let g = self.stripped_wronskian(l);
        let mut big = vec![vec![Poly::zero(); l * d]; l * d];
        for (k, row) in g.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let lm = alg.left_regular_poly(p);
                for u in 0..d {
                    for t in 0..d {
                        big[k * d + u][j * d + t] = lm[u][t].clone();
                    }
                }
            }
        }
        let det = bareiss::det(big);
        let ranks: Vec<usize> = alg
            .idempotents
            .iter()
            .map(|e| alg.left_regular(e).rank())
            .collect();
        let mut shift = <Q as Zero>::zero();
        for f in &self.elems {
            for (i, (a, _)) in f.iter().enumerate() {
                shift += a * q(ranks[i] as i64);
            }
        }
        let det = QuasiScalar::term(shift, det);
        (!det.is_zero(), det)
    }

    /// f_j M_{jk}-style change of basis; the result is generally not structured.
    pub fn right_change(&self, alg: &Algebra, m: &[Vec<Elem>]) -> Vec<QuasiExp> {
        let fs = self.quasi();
        let l = fs.len();
        (0..l)
            .map(|k| {
                (0..l).fold(QuasiExp::zero(alg.dim), |acc, j| {
                    acc.add(&fs[j].rmul(alg, &m[j][k]))
                })
            })
            .collect()
    }
}

/// Outcome of checking the Theorem A conditions.
#[derive(Clone, Debug)]
pub struct TheoremA {
    pub rank: usize,
    pub q_dim: usize,
    pub free: bool,
    pub graded: bool,
    pub grading_witness: Option<String>,
    pub nondegenerate: bool,
    pub det: QuasiScalar,
    pub exponents: Option<Vec<Vec<Q>>>,
    pub structured: bool,
}

impl TheoremA {
    pub fn passed(&self) -> bool {
        self.free && self.graded && self.nondegenerate && self.structured
    }

    /// Name of the first failed condition.
    pub fn failure_reason(&self) -> Option<&'static str> {
        if !self.free {
            Some("freeness")
        } else if !self.graded {
            Some("(iv) exponent-grading")
        } else if !self.nondegenerate {
            Some("degenerate")
        } else if !self.structured {
            Some("decomposition not implemented")
        } else {
            None
        }
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("Theorem A conditions");
        r.push(Report::check(
            "free of rank l",
            self.free,
            format!(
                "dim_Q V = {}, l*d = {}",
                self.q_dim,
                self.rank * (self.q_dim.max(1) / self.rank.max(1))
            ),
        ));
        r.push(Report::check(
            "(iv) exponent components lie in V",
            self.graded,
            self.grading_witness.clone().unwrap_or_default(),
        ));
        r.push(Report::check(
            "nondegenerate",
            self.nondegenerate,
            format!("det = {}", self.det),
        ));
        if !self.structured {
            r.push(Report::check(
                "structured basis",
                false,
                "raw quasiexponential sets are not decomposed into the per-idempotent form",
            ));
        }
        if let Some(ex) = &self.exponents {
            let rows: Vec<String> = ex
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
            r.push(Report::check(
                "exponent matrix",
                true,
                format!("[{}]", rows.join("; ")),
            ));
        }
        r
    }
}

fn check_raw(alg: &Algebra, fs: &[QuasiExp]) -> (usize, bool, bool, Option<String>) {
    let span = right_span(alg, fs);
    let refs: Vec<&QuasiExp> = span.iter().collect();
    let mut comps = Vec::new();
    for f in fs {
        for (a, p) in &f.terms {
            comps.push((a.clone(), QuasiExp::term(a.clone(), p.clone())));
        }
    }
    let all: Vec<&QuasiExp> = refs
        .iter()
        .copied()
        .chain(comps.iter().map(|(_, c)| c))
        .collect();
    let layout = QuasiLayout::new(alg.dim, &all, &BTreeMap::new());
    let vs: Vec<Vec<Q>> = span.iter().map(|f| layout.coords(f)).collect();
    let qdim = span_rank(&vs, layout.size);
    let free = qdim == fs.len() * alg.dim;
    let mut witness = None;
    for (a, c) in &comps {
        if !span_contains(&vs, &layout.coords(c), layout.size) {
            witness = Some(format!("exponent-{a} component of a basis element is not in V"));
            break;
        }
    }
    (qdim, free, witness.is_none(), witness)
}

/// Theorem A check for a raw quasiexponential family.
pub fn check_theorem_a_raw(alg: &Algebra, fs: &[QuasiExp]) -> TheoremA {
    let (q_dim, free, graded, grading_witness) = check_raw(alg, fs);
    let (nondegenerate, det) = is_nondegenerate(alg, fs);
    TheoremA {
        rank: fs.len(),
        q_dim,
        free,
        graded,
        grading_witness,
        nondegenerate,
        det,
        exponents: None,
        structured: false,
    }
}

pub fn check_theorem_a(alg: &Algebra, v: &KernelBasis) -> TheoremA {
    let fs = v.quasi();
    let (q_dim, free, graded, grading_witness) = check_raw(alg, &fs);
    let (nondegenerate, det) = v.nondegeneracy(alg);
    TheoremA {
        rank: fs.len(),
        q_dim,
        free,
        graded,
        grading_witness,
        nondegenerate,
        det,
        exponents: Some(v.exponent_matrix()),
        structured: true,
    }
}

/// U0 = ker A^d (A nilpotent there), U1 = im A^d (A invertible there).
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub a: Mat,
    pub u0: Vec<Vec<Q>>,
    pub u1: Vec<Vec<Q>>,
}

pub fn fitting_split(a: &Mat) -> FittingSplit {
    let d = a.rows;
    let p = a.pow(d);
    let u0 = p.nullspace();
    let u1 = p.col_space();
    let mut all = u0.clone();
    all.extend(u1.iter().cloned());
    assert_eq!(span_rank(&all, d), d, "Fitting decomposition is direct");
    FittingSplit {
        a: a.clone(),
        u0,
        u1,
    }
}

/// A_alpha = left multiplication by sum_i (alpha - gamma_i) e_i.
pub fn successor_endo(alg: &Algebra, alpha: &Q, gamma: &[Q]) -> Mat {
    let r = alg
        .idempotents
        .iter()
        .zip(gamma)
        .fold(alg.zero(), |acc, (e, g)| elem::add(&acc, &elem::scale(e, &(alpha - g))));
    alg.left_regular(&r)
}

/// Polynomial solution v of (d + A) v = u; on the nilpotent part v(0) = 0.
pub fn f_a_solve(a: &Mat, u: &AlgPoly) -> AlgPoly {
    let d = a.rows;
    let split = fitting_split(a);
    let d0 = split.u0.len();
    let mut cols = split.u0.clone();
    cols.extend(split.u1.iter().cloned());
    let t = Mat::from_cols(&cols, d);
    let tinv = t.inverse().expect("Fitting basis is a basis");
    let ab = tinv.mul(a).mul(&t);
    let a0 = Mat::from_rows(
        &(0..d0).map(|i| ab.row(i)[..d0].to_vec()).collect::<Vec<_>>(),
        d0,
    );
    let d1 = d - d0;
    let a1 = Mat::from_rows(
        &(d0..d).map(|i| ab.row(i)[d0..].to_vec()).collect::<Vec<_>>(),
        d1,
    );
    let n = u.len();
    let cs: Vec<Vec<Q>> = (0..n).map(|k| tinv.mul_vec(&u.coeff(k))).collect();
    let mut out: Vec<Vec<Q>> = Vec::new();
    let total = n + d0 + 1;
    out.resize(total, vec![<Q as Zero>::zero(); d]);
    // nilpotent part: (k+1) v_{k+1} = u_k - A0 v_k, v_0 = 0
    if d0 > 0 {
        let mut v = vec![<Q as Zero>::zero(); d0];
        for k in 0..total - 1 {
            let uk: Vec<Q> = if k < n {
                cs[k][..d0].to_vec()
            } else {
                vec![<Q as Zero>::zero(); d0]
            };
            let av = a0.mul_vec(&v);
            let next: Vec<Q> = uk
                .iter()
                .zip(&av)
                .map(|(x, y)| (x - y) / q(k as i64 + 1))
                .collect();
            out[k + 1][..d0].clone_from_slice(&next);
            v = next;
        }
        debug_assert!(v.iter().all(|x| Zero::is_zero(x)));
    }
    // invertible part: sum_k (-1)^k A1^{-k-1} u^{(k)}
    if d1 > 0 && n > 0 {
        let inv = a1.inverse().expect("A invertible on U1");
        let mut deriv: Vec<Vec<Q>> = cs.iter().map(|c| c[d0..].to_vec()).collect();
        let mut pw = inv.clone();
        let mut sign = <Q as One>::one();
        for _ in 0..n {
            for (k, c) in deriv.iter().enumerate() {
                let add = pw.mul_vec(c);
                for (s, x) in add.into_iter().enumerate() {
                    out[k][d0 + s] += &sign * x;
                }
            }
            deriv = (1..deriv.len())
                .map(|k| deriv[k].iter().map(|x| x * q(k as i64)).collect())
                .collect();
            pw = pw.mul(&inv);
            sign = -sign;
        }
    }
    let back: Vec<Vec<Q>> = out.iter().map(|v| t.mul_vec(v)).collect();
    AlgPoly::from_coeffs(d, &back)
}

pub fn f_a_apply(alg: &Algebra, alpha: &Q, gamma: &[Q], u: &AlgPoly) -> AlgPoly {
    f_a_solve(&successor_endo(alg, alpha, gamma), u)
}

/// (d + A) v for left multiplication A.
pub fn d_plus_a(a: &Mat, v: &AlgPoly) -> AlgPoly {
    let n = v.len();
    let cs: Vec<Vec<Q>> = (0..n).map(|k| a.mul_vec(&v.coeff(k))).collect();
    v.deriv().add(&AlgPoly::from_coeffs(v.dim(), &cs))
}

/// q, s with p q = q p = s = det(p.), when p is regular.
pub fn poly_regularity_witness(alg: &Algebra, p: &AlgPoly) -> Option<(AlgPoly, Poly)> {
    let l = alg.left_regular_poly(p);
    let s = bareiss::det(l.clone());
    if s.is_zero() {
        return None;
    }
    let one: Vec<Vec<Poly>> = alg.one.iter().map(|a| vec![Poly::constant(a.clone())]).collect();
    let (n, den) = bareiss::solve(&l, &one)?;
    let f = s.exact_div(&den).expect("pivot is +-det");
    let qp = AlgPoly {
        coords: n.iter().map(|r| &r[0] * &f).collect(),
    };
    let target = AlgPoly::scalar_times(&s, &alg.one);
    debug_assert_eq!(alg.mul_poly(p, &qp), target);
    debug_assert_eq!(alg.mul_poly(&qp, p), target);
    Some((qp, s))
}
