//! Points of the decorated adelic Grassmannian: build, normalize, successors, fibers.

use crate::algebra::{elem, Algebra, Elem};
use crate::diffop::{
    apply, compose, operator_from_kernel, scalar_divisor_certificate, DiffOp, RatAlg,
};
use crate::error::{Error, Result};
use crate::poly::{AlgPoly, Poly};
use crate::quasi::{check_theorem_a, f_a_apply, KernelBasis};
use crate::report::Format;
use crate::scalar::Q;

/// Phi(x, z) = P e^{xz} together with the data that certifies it.
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicPoint {
    pub alg: Algebra,
    pub kernel: KernelBasis,
    pub op: DiffOp,
    /// m x l matrix alpha_ij
    pub exponents: Vec<Vec<Q>>,
    pub certificate: Poly,
}

impl AdelicPoint {
    pub fn order(&self) -> usize {
        self.kernel.len()
    }

    /// Re-derives every invariant; used when loading a point from disk.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = build_point(&self.alg, &self.kernel)?;
        if rebuilt.op != self.op {
            return Err(Error::Consistency(
                "stored operator differs from the kernel's operator".into(),
            ));
        }
        if rebuilt.exponents != self.exponents {
            return Err(Error::Consistency("stored exponents differ from the kernel".into()));
        }
        scalar_divisor_certificate(&self.alg, &self.kernel, &self.op).and_then(|q| {
            if q == self.certificate {
                Ok(())
            } else {
                // any certificate works if it right-divides
                let l = DiffOp::scalar_symbol(&self.alg, &self.certificate);
                let (_, rem) = crate::diffop::right_divide(&self.alg, &l, &self.op)?;
                if rem.is_zero() {
                    Ok(())
                } else {
                    Err(Error::Consistency("stored certificate does not right-divide".into()))
                }
            }
        })
    }
}

pub fn build_point(alg: &Algebra, v: &KernelBasis) -> Result<AdelicPoint> {
    let t = check_theorem_a(alg, v);
    if let Some(reason) = t.failure_reason() {
        return Err(Error::Rejected {
            reason: reason.into(),
            detail: t.report().emit(Format::Text),
        });
    }
    let op = operator_from_kernel(alg, v)?;
    for (j, f) in v.quasi().iter().enumerate() {
        if !apply(alg, &op, f).num.is_zero() {
            return Err(Error::Consistency(format!(
                "operator does not annihilate basis element {j}"
            )));
        }
    }
    let certificate = scalar_divisor_certificate(alg, v, &op)?;
    Ok(AdelicPoint {
        alg: alg.clone(),
        kernel: v.clone(),
        op,
        exponents: v.exponent_matrix(),
        certificate,
    })
}

/// Point together with g_alpha(z) = sum_i prod_j (z - alpha_ij) e_i.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPoint {
    pub point: AdelicPoint,
    pub normalizer: AlgPoly,
}

pub fn normalizer(alg: &Algebra, exponents: &[Vec<Q>]) -> AlgPoly {
    let mut g = AlgPoly::zero(alg.dim);
    for (i, row) in exponents.iter().enumerate() {
        let s = row.iter().fold(Poly::one(), |acc, a| &acc * &Poly::linear(a));
        g = g.add(&AlgPoly::scalar_times(&s, &alg.idempotents[i]));
    }
    g
}

pub fn normalize(pt: &AdelicPoint) -> NormalizedPoint {
    NormalizedPoint {
        normalizer: normalizer(&pt.alg, &pt.exponents),
        point: pt.clone(),
    }
}

/// sum_i gamma_i e_i
pub fn gamma_elem(alg: &Algebra, gamma: &[Q]) -> Elem {
    alg.idempotents
        .iter()
        .zip(gamma)
        .fold(alg.zero(), |acc, (e, g)| elem::add(&acc, &elem::scale(e, g)))
}

/// d - sum_i gamma_i e_i
pub fn step_operator(alg: &Algebra, gamma: &[Q]) -> DiffOp {
    DiffOp::d_pow(alg, 1).sub(&DiffOp::mult(RatAlg::constant(&gamma_elem(alg, gamma))))
}

/// Kernel of P (d - sum gamma_i e_i): each f_j lifted through F_A, plus sum_i e^{gamma_i x} e_i.
pub fn successor_kernel(alg: &Algebra, v: &KernelBasis, gamma: &[Q]) -> Result<KernelBasis> {
    if gamma.len() != alg.m() {
        return Err(Error::DimMismatch {
            expected: alg.m(),
            got: gamma.len(),
        });
    }
    let mut elems = Vec::with_capacity(v.len() + 1);
    for f in &v.elems {
        elems.push(
            f.iter()
                .map(|(a, p)| (a.clone(), f_a_apply(alg, a, gamma, p)))
                .collect(),
        );
    }
    elems.push(
        alg.idempotents
            .iter()
            .zip(gamma)
            .map(|(e, g)| (g.clone(), AlgPoly::constant(e)))
            .collect(),
    );
    KernelBasis::new(alg, elems)
}

pub fn immediate_successor(pt: &AdelicPoint, gamma: &[Q]) -> Result<AdelicPoint> {
    let alg = &pt.alg;
    let w = successor_kernel(alg, &pt.kernel, gamma)?;
    let next = build_point(alg, &w)?;
    let expected = compose(alg, &pt.op, &step_operator(alg, gamma));
    if next.op != expected {
        return Err(Error::Consistency(
            "successor operator differs from P (d - sum gamma_i e_i)".into(),
        ));
    }
    Ok(next)
}

pub fn successor_chain(pt: &AdelicPoint, steps: &[Vec<Q>]) -> Result<AdelicPoint> {
    let mut cur = pt.clone();
    for g in steps {
        cur = immediate_successor(&cur, g)?;
    }
    Ok(cur)
}

/// P1 g2(d) == P2 g1(d): both points have the same normalized wave function.
pub fn same_fiber(a: &AdelicPoint, b: &AdelicPoint) -> Result<bool> {
    if a.alg != b.alg {
        return Err(Error::Invalid("points live over different algebras".into()));
    }
    let alg = &a.alg;
    let ga = DiffOp::from_symbol(&normalizer(alg, &a.exponents));
    let gb = DiffOp::from_symbol(&normalizer(alg, &b.exponents));
    Ok(compose(alg, &a.op, &gb) == compose(alg, &b.op, &ga))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::examples;
    use crate::scalar::q;

    fn one_point(alg: &Algebra, a: i64) -> AdelicPoint {
        let v = KernelBasis::new(
            alg,
            vec![alg.idempotents.iter().map(|e| (q(a), AlgPoly::constant(e))).collect()],
        )
        .unwrap();
        build_point(alg, &v).unwrap()
    }

    #[test]
    fn build_examples() {
        let (alg, v) = examples::ex61();
        let pt = build_point(&alg, &v).unwrap();
        assert_eq!(pt.op, examples::ex61_operator(&alg));
        assert_eq!(pt.certificate, Poly::from_ints(&[-1, 1]).pow(3));
        let (alg, v) = examples::ex63();
        assert_eq!(build_point(&alg, &v).unwrap().op, examples::ex63_operator(&alg));
        let (alg, v) = examples::ex46();
        match build_point(&alg, &v) {
            Err(Error::Rejected { reason, .. }) => assert_eq!(reason, "degenerate"),
            other => panic!("{other:?}"),
        }
        let (alg, v) = examples::ex46_printed();
        match build_point(&alg, &v) {
            Err(Error::Rejected { reason, .. }) => assert_eq!(reason, "freeness"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normalizers() {
        let (alg, v) = examples::ex61();
        let n = normalize(&build_point(&alg, &v).unwrap());
        assert_eq!(n.normalizer, AlgPoly::scalar_times(&Poly::from_ints(&[-1, 1]).pow(2), &alg.one));
        let (alg, v) = examples::ex62();
        let n = normalize(&build_point(&alg, &v).unwrap());
        let expected = AlgPoly::scalar_times(&Poly::from_ints(&[-1, 1]), &alg.idempotents[0])
            .add(&AlgPoly::scalar_times(&Poly::x(), &alg.idempotents[1]));
        assert_eq!(n.normalizer, expected);
        let (alg, v) = examples::ex63();
        let n = normalize(&build_point(&alg, &v).unwrap());
        assert_eq!(n.normalizer, AlgPoly::scalar_times(&Poly::monomial(q(1), 2), &alg.one));
    }

    #[test]
    fn scalar_successors() {
        let alg = catalog::scalar();
        let pt = one_point(&alg, 1);
        let s = immediate_successor(&pt, &[q(0)]).unwrap();
        let expected = compose(&alg, &DiffOp::d_pow(&alg, 1), &DiffOp::d_pow(&alg, 1))
            .sub(&DiffOp::d_pow(&alg, 1));
        assert_eq!(s.op, expected);
        let pt0 = one_point(&alg, 0);
        let s0 = immediate_successor(&pt0, &[q(0)]).unwrap();
        assert_eq!(s0.op, DiffOp::d_pow(&alg, 2));
        assert!(same_fiber(&pt0, &pt).unwrap());
        assert!(same_fiber(&pt, &s).unwrap());
    }

    #[test]
    fn ex62_successor() {
        let (alg, v) = examples::ex62();
        let pt = build_point(&alg, &v).unwrap();
        let s = immediate_successor(&pt, &[q(0), q(0)]).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.exponents, vec![vec![q(1), q(0)], vec![q(0), q(0)]]);
        let one = crate::quasi::QuasiExp::exp_elem(q(0), &alg.one);
        assert!(apply(&alg, &s.op, &one).num.is_zero());
        assert!(same_fiber(&pt, &s).unwrap());
    }

    #[test]
    fn fibers_differ() {
        let (alg, v) = examples::ex61();
        let pt = build_point(&alg, &v).unwrap();
        let other = one_point(&alg, 1);
        assert!(!same_fiber(&pt, &other).unwrap());
        let chain = successor_chain(&pt, &[vec![q(2)], vec![q(-1)]]).unwrap();
        assert_eq!(chain.order(), 4);
        assert!(same_fiber(&pt, &chain).unwrap());
        assert_eq!(successor_chain(&pt, &[]).unwrap(), pt);
    }
}
