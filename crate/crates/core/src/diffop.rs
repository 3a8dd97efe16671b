//! R-valued differential operators with rational coefficients.
//!
//! Each coefficient is num(x)/den(x) with num in R[x] and den a monic scalar
//! polynomial, which suffices because scalar polynomials are central.

use crate::algebra::{Algebra, Elem};
use crate::bareiss::{self, Domain};
use crate::error::{Error, Result};
use crate::poly::{AlgPoly, Poly};
use crate::quasi::{wronski, KernelBasis, QuasiExp, QuasiScalar};
use crate::scalar::{binom, Q};
use std::collections::BTreeMap;

/// Element of R(x) with a central scalar denominator, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatAlg {
    pub num: AlgPoly,
    pub den: Poly,
}

impl RatAlg {
    pub fn new(num: AlgPoly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatAlg::zero(num.dim());
        }
        let mut g = den.clone();
        for c in &num.coords {
            if g.degree() == Some(0) {
                break;
            }
            g = g.gcd(c);
        }
        let num = num.exact_div_scalar(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let lc = den.lc().recip();
        RatAlg {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero(d: usize) -> Self {
        RatAlg {
            num: AlgPoly::zero(d),
            den: Poly::one(),
        }
    }

    pub fn from_poly(num: AlgPoly) -> Self {
        RatAlg::new(num, Poly::one())
    }

    pub fn constant(e: &[Q]) -> Self {
        Self::from_poly(AlgPoly::constant(e))
    }

    /// (n/d) r for scalar n, d.
    pub fn scalar(n: &Poly, d: &Poly, r: &[Q]) -> Self {
        RatAlg::new(AlgPoly::scalar_times(n, r), d.clone())
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatAlg) -> RatAlg {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatAlg::new(self.num.add(&o.num), self.den.clone());
        }
        let l = self.den.lcm(&o.den);
        let a = self.num.mul_scalar(&l.exact_div(&self.den).unwrap());
        let b = o.num.mul_scalar(&l.exact_div(&o.den).unwrap());
        RatAlg::new(a.add(&b), l)
    }

    pub fn neg(&self) -> RatAlg {
        RatAlg {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatAlg) -> RatAlg {
        self.add(&o.neg())
    }

    pub fn mul(&self, alg: &Algebra, o: &RatAlg) -> RatAlg {
        if self.is_zero() || o.is_zero() {
            return RatAlg::zero(self.dim());
        }
        RatAlg::new(alg.mul_poly(&self.num, &o.num), &self.den * &o.den)
    }

    pub fn mul_scalar(&self, n: &Poly, d: &Poly) -> RatAlg {
        RatAlg::new(self.num.mul_scalar(n), &self.den * d)
    }

    pub fn scale(&self, c: &Q) -> RatAlg {
        RatAlg::new(self.num.scale(c), self.den.clone())
    }

    pub fn deriv(&self) -> RatAlg {
        if self.den.degree() == Some(0) {
            return RatAlg::new(self.num.deriv(), self.den.clone());
        }
        let n = self
            .num
            .deriv()
            .mul_scalar(&self.den)
            .sub(&self.num.mul_scalar(&self.den.deriv()));
        RatAlg::new(n, &self.den * &self.den)
    }

    pub fn fmt(&self, alg: &Algebra) -> String {
        let n = alg.fmt_poly(&self.num, "x");
        if self.den.is_one() {
            n
        } else {
            format!("[{n}]/({})", self.den)
        }
    }
}

/// sum_k a_k(x) d^k, trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOp {
    pub dim: usize,
    pub coeffs: Vec<RatAlg>,
}

impl DiffOp {
    pub fn new(dim: usize, mut coeffs: Vec<RatAlg>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { dim, coeffs }
    }

    pub fn zero(d: usize) -> Self {
        DiffOp {
            dim: d,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RatAlg {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatAlg::zero(self.dim))
    }

    /// Multiplication operator by a(x).
    pub fn mult(a: RatAlg) -> Self {
        let d = a.dim();
        DiffOp::new(d, vec![a])
    }

    /// c d^k
    pub fn monomial(c: RatAlg, k: usize) -> Self {
        let d = c.dim();
        let mut coeffs = vec![RatAlg::zero(d); k];
        coeffs.push(c);
        DiffOp::new(d, coeffs)
    }

    pub fn d_pow(alg: &Algebra, k: usize) -> Self {
        Self::monomial(RatAlg::constant(&alg.one), k)
    }

    /// Constant-coefficient operator sum_k c_k d^k with c read off a polynomial in the symbol.
    pub fn from_symbol(p: &AlgPoly) -> Self {
        let d = p.dim();
        DiffOp::new(d, p.to_coeffs().iter().map(|c| RatAlg::constant(c)).collect())
    }

    /// q(d) for a scalar polynomial q.
    pub fn scalar_symbol(alg: &Algebra, q: &Poly) -> Self {
        Self::from_symbol(&AlgPoly::scalar_times(q, &alg.one))
    }

    pub fn is_monic(&self, alg: &Algebra) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == RatAlg::constant(&alg.one))
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::new(
            self.dim,
            (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect(),
        )
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp::new(self.dim, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.neg())
    }

    /// Monic lcm of coefficient denominators.
    pub fn common_den(&self) -> Poly {
        self.coeffs
            .iter()
            .fold(Poly::one(), |acc, c| acc.lcm(&c.den))
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_poly())
    }

    /// s(x) P for a scalar s.
    pub fn lmul_scalar(&self, s: &Poly, den: &Poly) -> DiffOp {
        DiffOp::new(
            self.dim,
            self.coeffs.iter().map(|c| c.mul_scalar(s, den)).collect(),
        )
    }

    pub fn fmt(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let dk = match k {
                0 => String::new(),
                1 => "d".into(),
                _ => format!("d^{k}"),
            };
            if *c == RatAlg::constant(&alg.one) && k > 0 {
                parts.push(dk);
            } else if k == 0 {
                parts.push(format!("({})", c.fmt(alg)));
            } else {
                parts.push(format!("({}) {dk}", c.fmt(alg)));
            }
        }
        parts.join(" + ")
    }
}

/// A o B by the Leibniz rule.
pub fn compose(alg: &Algebra, a: &DiffOp, b: &DiffOp) -> DiffOp {
    if a.is_zero() || b.is_zero() {
        return DiffOp::zero(a.dim);
    }
    let na = a.coeffs.len();
    let nb = b.coeffs.len();
    // derivs[l][i] = b_l^{(i)}
    let derivs: Vec<Vec<RatAlg>> = b
        .coeffs
        .iter()
        .map(|c| {
            let mut v = vec![c.clone()];
            for i in 1..na {
                let next = v[i - 1].deriv();
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = vec![RatAlg::zero(a.dim); na + nb - 1];
    for (k, ak) in a.coeffs.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        for (l, dl) in derivs.iter().enumerate() {
            for i in 0..=k {
                if dl[i].is_zero() {
                    continue;
                }
                let term = ak.mul(alg, &dl[i]).scale(&binom(k, i));
                let idx = k - i + l;
                out[idx] = out[idx].add(&term);
            }
        }
    }
    DiffOp::new(a.dim, out)
}

pub fn compose_all(alg: &Algebra, ops: &[&DiffOp]) -> DiffOp {
    let mut acc = ops[0].clone();
    for op in &ops[1..] {
        acc = compose(alg, &acc, op);
    }
    acc
}

/// L = Q o P + Rem with order Rem < order P, for monic P.
pub fn right_divide(alg: &Algebra, l: &DiffOp, p: &DiffOp) -> Result<(DiffOp, DiffOp)> {
    if !p.is_monic(alg) {
        return Err(Error::Invalid("right division requires a monic divisor".into()));
    }
    let n = p.order().unwrap();
    let mut rem = l.clone();
    let mut quo = DiffOp::zero(l.dim);
    while let Some(r) = rem.order() {
        if r < n {
            break;
        }
        let term = DiffOp::monomial(rem.coeffs[r].clone(), r - n);
        rem = rem.sub(&compose(alg, &term, p));
        quo = quo.add(&term);
        debug_assert!(rem.order().map_or(true, |o| o < r));
    }
    Ok((quo, rem))
}

/// P f as num / den with a central scalar denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFrac {
    pub num: QuasiExp,
    pub den: Poly,
}

pub fn apply(alg: &Algebra, p: &DiffOp, f: &QuasiExp) -> QuasiFrac {
    let den = p.common_den();
    let mut num = QuasiExp::zero(alg.dim);
    let mut fk = f.clone();
    for (k, c) in p.coeffs.iter().enumerate() {
        if k > 0 {
            fk = fk.deriv();
        }
        if c.is_zero() {
            continue;
        }
        let scaled = c.num.mul_scalar(&den.exact_div(&c.den).unwrap());
        num = num.add(&fk.lmul_poly(alg, &scaled));
    }
    if num.is_zero() {
        return QuasiFrac {
            num,
            den: Poly::one(),
        };
    }
    let mut g = den.clone();
    for p in num.terms.values() {
        for c in &p.coords {
            g = g.gcd(c);
        }
    }
    QuasiFrac {
        num: QuasiExp {
            dim: num.dim,
            terms: num
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.exact_div_scalar(&g).unwrap()))
                .collect(),
        },
        den: den.exact_div(&g).unwrap(),
    }
}

fn poly_system(alg: &Algebra, g: &[Vec<AlgPoly>], l: usize) -> (Vec<Vec<Poly>>, Vec<Vec<Poly>>) {
    let d = alg.dim;
    let mut m = vec![vec![Poly::zero(); l * d]; l * d];
    let mut rhs = vec![vec![Poly::zero()]; l * d];
    for j in 0..l {
        for k in 0..l {
            let r = alg.right_regular_poly(&g[k][j]);
            for u in 0..d {
                for s in 0..d {
                    m[j * d + u][k * d + s] = r[u][s].clone();
                }
            }
        }
        for u in 0..d {
            rhs[j * d + u][0] = -&g[l][j].coords[u];
        }
    }
    (m, rhs)
}

/// The unique monic operator of order l whose kernel is V.
pub fn operator_from_kernel(alg: &Algebra, v: &KernelBasis) -> Result<DiffOp> {
    let l = v.len();
    let d = alg.dim;
    let g = v.stripped_wronskian(l + 1);
    let (m, rhs) = poly_system(alg, &g, l);
    let Some((n, den)) = bareiss::solve(&m, &rhs) else {
        let (_, det) = v.nondegeneracy(alg);
        return Err(Error::Degenerate {
            det: det.to_string(),
        });
    };
    let mut coeffs = Vec::with_capacity(l + 1);
    for k in 0..l {
        let num = AlgPoly {
            coords: (0..d).map(|s| n[k * d + s][0].clone()).collect(),
        };
        coeffs.push(RatAlg::new(num, den.clone()));
    }
    coeffs.push(RatAlg::constant(&alg.one));
    Ok(DiffOp::new(d, coeffs))
}

/// Right-regular matrix of a quasiexponential with QuasiScalar entries.
fn right_regular_quasi(alg: &Algebra, f: &QuasiExp) -> Vec<Vec<QuasiScalar>> {
    let d = alg.dim;
    let mut m = vec![vec![QuasiScalar::default(); d]; d];
    for (a, p) in &f.terms {
        let r = alg.right_regular_poly(p);
        for u in 0..d {
            for t in 0..d {
                if !r[u][t].is_zero() {
                    m[u][t] = m[u][t].add(&QuasiScalar::term(a.clone(), r[u][t].clone()));
                }
            }
        }
    }
    m
}

/// n/d as a rational function of x when the exponential parts cancel.
fn exponential_free(n: &QuasiScalar, d: &QuasiScalar) -> Option<(Poly, Poly)> {
    if n.is_zero() {
        return Some((Poly::zero(), Poly::one()));
    }
    let (an, pn) = n.terms.iter().next_back()?;
    let (ad, pd) = d.terms.iter().next_back()?;
    if an != ad {
        return None;
    }
    let (a, b) = Poly::reduce_frac(pn, pd);
    let lhs = n.mul(&QuasiScalar::poly(b.clone()));
    let rhs = d.mul(&QuasiScalar::poly(a.clone()));
    (lhs == rhs).then_some((a, b))
}

/// Same operator from an arbitrary (unstructured) basis, by an exact solve over
/// the fraction field of scalar quasipolynomials.
pub fn operator_from_quasi(alg: &Algebra, fs: &[QuasiExp]) -> Result<DiffOp> {
    let l = fs.len();
    let d = alg.dim;
    let mut w = wronski(fs);
    w.push(fs.iter().map(|f| f.deriv_n(l)).collect());
    let mut m = vec![vec![QuasiScalar::default(); l * d]; l * d];
    let mut rhs = vec![vec![QuasiScalar::default()]; l * d];
    for j in 0..l {
        for k in 0..l {
            let r = right_regular_quasi(alg, &w[k][j]);
            for u in 0..d {
                for s in 0..d {
                    m[j * d + u][k * d + s] = r[u][s].clone();
                }
            }
        }
        for (u, row) in rhs.iter_mut().enumerate().skip(j * d).take(d) {
            let _ = u;
            row[0] = QuasiScalar::default();
        }
        for (a, p) in &w[l][j].terms {
            for u in 0..d {
                rhs[j * d + u][0] = rhs[j * d + u][0]
                    .sub(&QuasiScalar::term(a.clone(), p.coords[u].clone()));
            }
        }
    }
    let Some((n, den)) = bareiss::solve(&m, &rhs) else {
        let (_, det) = crate::quasi::is_nondegenerate(alg, fs);
        return Err(Error::Degenerate {
            det: det.to_string(),
        });
    };
    let mut coeffs = Vec::with_capacity(l + 1);
    for k in 0..l {
        let mut c = RatAlg::zero(d);
        for s in 0..d {
            let (a, b) = exponential_free(&n[k * d + s][0], &den).ok_or_else(|| {
                Error::Rejected {
                    reason: "(iv) exponent-grading".into(),
                    detail: "operator coefficient retains exponential content".into(),
                }
            })?;
            c = c.add(&RatAlg::scalar(&a, &b, &alg.basis(s)));
        }
        coeffs.push(c);
    }
    coeffs.push(RatAlg::constant(&alg.one));
    Ok(DiffOp::new(d, coeffs))
}

/// L = Q P with P built from V.
pub fn factor_through_submodule(
    alg: &Algebra,
    l: &DiffOp,
    v: &KernelBasis,
) -> Result<(DiffOp, DiffOp)> {
    let p = operator_from_kernel(alg, v)?;
    let (quo, rem) = right_divide(alg, l, &p)?;
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "nonzero remainder {} when dividing by the kernel operator",
            rem.fmt(alg)
        )));
    }
    debug_assert_eq!(&compose(alg, &quo, &p), l);
    Ok((quo, p))
}

/// q(t) = prod_alpha (t - alpha)^{N_alpha + 1}, N_alpha the max degree at alpha.
pub fn certificate_polynomial(v: &KernelBasis) -> Poly {
    certificate_from_degrees(&v.exponent_degrees())
}

pub fn certificate_from_degrees(degs: &BTreeMap<Q, usize>) -> Poly {
    degs.iter().fold(Poly::one(), |acc, (a, n)| {
        &acc * &Poly::linear(a).pow(n + 1)
    })
}

/// Certificate q(t) with a zero-remainder check of q(d) / P.
pub fn scalar_divisor_certificate(alg: &Algebra, v: &KernelBasis, p: &DiffOp) -> Result<Poly> {
    let q = certificate_polynomial(v);
    let l = DiffOp::scalar_symbol(alg, &q);
    let (_, rem) = right_divide(alg, &l, p)?;
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "q(d) = {} is not right-divisible by P (remainder {})",
            q.fmt_var("d"),
            rem.fmt(alg)
        )));
    }
    Ok(q)
}

/// Matrix inverse over R(x) by an exact flattened solve (left-regular flattening).
pub fn invert_matrix(alg: &Algebra, a: &[Vec<AlgPoly>]) -> Option<Vec<Vec<RatAlg>>> {
    let n = a.len();
    let d = alg.dim;
    let mut m = vec![vec![Poly::zero(); n * d]; n * d];
    for (i, row) in a.iter().enumerate() {
        for (k, p) in row.iter().enumerate() {
            let l = alg.left_regular_poly(p);
            for u in 0..d {
                for t in 0..d {
                    m[i * d + u][k * d + t] = l[u][t].clone();
                }
            }
        }
    }
    // column j of the identity, flattened
    let mut rhs = vec![vec![Poly::zero(); n]; n * d];
    for j in 0..n {
        for u in 0..d {
            rhs[j * d + u][j] = Poly::constant(alg.one[u].clone());
        }
    }
    let (x, den) = bareiss::solve(&m, &rhs)?;
    Some(
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let num = AlgPoly {
                            coords: (0..d).map(|t| x[k * d + t][j].clone()).collect(),
                        };
                        RatAlg::new(num, den.clone())
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Element of R from a list of (basis index, value).
pub fn elem_from(alg: &Algebra, entries: &[(usize, Q)]) -> Elem {
    let mut e = alg.zero();
    for (i, v) in entries {
        e[*i] += v;
    }
    e
}

pub fn is_zero_rem(op: &DiffOp) -> bool {
    op.coeffs.iter().all(|c| c.num.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::examples;
    use crate::scalar::q;

    fn x_op(alg: &Algebra) -> DiffOp {
        DiffOp::mult(RatAlg::from_poly(AlgPoly::scalar_times(&Poly::x(), &alg.one)))
    }

    #[test]
    fn leibniz() {
        let alg = catalog::scalar();
        let d = DiffOp::d_pow(&alg, 1);
        assert_eq!(compose(&alg, &d, &d), DiffOp::d_pow(&alg, 2));
        let xd = compose(&alg, &x_op(&alg), &d);
        let expected = xd.add(&DiffOp::mult(RatAlg::constant(&alg.one)));
        assert_eq!(compose(&alg, &d, &x_op(&alg)), expected);
    }

    #[test]
    fn apply_examples() {
        let alg = catalog::scalar();
        let p = DiffOp::d_pow(&alg, 1).sub(&DiffOp::mult(RatAlg::constant(&alg.one)));
        let e = QuasiExp::exp_elem(q(1), &alg.one);
        assert!(apply(&alg, &p, &e).num.is_zero());
        let x = QuasiExp::term(q(0), AlgPoly::scalar_times(&Poly::x(), &alg.one));
        let r = apply(&alg, &DiffOp::d_pow(&alg, 1), &x);
        assert_eq!(r.num, QuasiExp::exp_elem(q(0), &alg.one));
        assert!(r.den.is_one());
    }

    #[test]
    fn division_examples() {
        let alg = catalog::scalar();
        let (quo, rem) = right_divide(&alg, &DiffOp::d_pow(&alg, 2), &DiffOp::d_pow(&alg, 1)).unwrap();
        assert_eq!(quo, DiffOp::d_pow(&alg, 1));
        assert!(rem.is_zero());
        let (alg, v) = examples::ex61();
        let p = operator_from_kernel(&alg, &v).unwrap();
        let l = DiffOp::scalar_symbol(&alg, &Poly::from_ints(&[-1, 1]).pow(3));
        let (quo, rem) = right_divide(&alg, &l, &p).unwrap();
        assert!(rem.is_zero());
        assert!(quo.is_monic(&alg));
        assert_eq!(quo.order(), Some(1));
        assert_eq!(compose(&alg, &quo, &p), l);
        let (alg, v) = examples::ex63();
        let p = operator_from_kernel(&alg, &v).unwrap();
        let (quo, p2) = factor_through_submodule(&alg, &DiffOp::d_pow(&alg, 3), &v).unwrap();
        assert_eq!(p, p2);
        assert_eq!(quo.order(), Some(1));
        assert!(quo.is_monic(&alg));
    }

    #[test]
    fn example_operators() {
        let cases: Vec<(Algebra, KernelBasis, DiffOp, DiffOp)> = vec![
            {
                let (a, v) = examples::ex61();
                let (e, p) = (examples::ex61_operator(&a), examples::ex61_printed_operator(&a));
                (a, v, e, p)
            },
            {
                let (a, v) = examples::ex62();
                let e = examples::ex62_printed_operator(&a);
                (a, v, e.clone(), e)
            },
            {
                let (a, v) = examples::ex63();
                let (e, p) = (examples::ex63_operator(&a), examples::ex63_printed_operator(&a));
                (a, v, e, p)
            },
        ];
        for (alg, v, expected, printed) in cases {
            let p = operator_from_kernel(&alg, &v).unwrap();
            assert_eq!(p, expected, "{}", p.fmt(&alg));
            for f in v.quasi() {
                assert!(apply(&alg, &p, &f).num.is_zero());
            }
            assert_eq!(operator_from_quasi(&alg, &v.quasi()).unwrap(), p);
            // printed operators that differ must also fail to annihilate the kernel
            let kills = v.quasi().iter().all(|f| apply(&alg, &printed, f).num.is_zero());
            assert_eq!(kills, printed == p);
        }
    }

    #[test]
    fn exponential_kernel() {
        let alg = catalog::dual_numbers();
        let v = KernelBasis::new(&alg, vec![vec![(q(3), AlgPoly::constant(&alg.one))]]).unwrap();
        let p = operator_from_kernel(&alg, &v).unwrap();
        let expected = DiffOp::d_pow(&alg, 1).sub(&DiffOp::mult(RatAlg::constant(&alg.one).scale(&q(3))));
        assert_eq!(p, expected);
        assert_eq!(scalar_divisor_certificate(&alg, &v, &p).unwrap(), Poly::from_ints(&[-3, 1]));
    }

    #[test]
    fn certificates() {
        let (alg, v) = examples::ex61();
        let p = operator_from_kernel(&alg, &v).unwrap();
        assert_eq!(
            scalar_divisor_certificate(&alg, &v, &p).unwrap(),
            Poly::from_ints(&[-1, 1]).pow(3)
        );
        let (alg, v) = examples::ex63();
        let p = operator_from_kernel(&alg, &v).unwrap();
        assert_eq!(
            scalar_divisor_certificate(&alg, &v, &p).unwrap(),
            Poly::monomial(q(1), 3)
        );
    }

    #[test]
    fn degenerate_is_error() {
        let (alg, v) = examples::ex46();
        assert!(matches!(
            operator_from_kernel(&alg, &v),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn factor_scalar() {
        let alg = catalog::scalar();
        let v = KernelBasis::new(&alg, vec![vec![(q(0), AlgPoly::constant(&alg.one))]]).unwrap();
        let (quo, p) = factor_through_submodule(&alg, &DiffOp::d_pow(&alg, 2), &v).unwrap();
        assert_eq!(quo, DiffOp::d_pow(&alg, 1));
        assert_eq!(p, DiffOp::d_pow(&alg, 1));
    }

    #[test]
    fn ex63_block_inverse() {
        let (alg, v) = examples::ex63();
        let g = v.stripped_wronskian(2);
        let inv = invert_matrix(&alg, &g).unwrap();
        assert_eq!(inv, examples::ex63_block_inverse(&alg));
        assert_ne!(inv, examples::ex63_printed_block_inverse(&alg));
    }
}
