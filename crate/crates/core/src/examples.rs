//! The worked examples: kernels over the catalog algebras and the
//! values as printed for them.

use crate::algebra::Algebra;
use crate::catalog;
use crate::diffop::{DiffOp, RatAlg};
use crate::poly::{AlgPoly, Poly};
use crate::quasi::KernelBasis;
use crate::scalar::{q, qr, Q};

/// Sum of terms c x^k b_s given as (k, s, c).
pub fn ap(d: usize, terms: &[(usize, usize, Q)]) -> AlgPoly {
    let mut p = AlgPoly::zero(d);
    for (k, s, c) in terms {
        let mut e = vec![q(0); d];
        e[*s] = c.clone();
        p = p.add(&AlgPoly::scalar_times(&Poly::monomial(q(1), *k), &e));
    }
    p
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// (n/d) b_s
fn frac(alg: &Algebra, n: &Poly, d: &Poly, s: usize) -> RatAlg {
    RatAlg::scalar(n, d, &alg.basis(s))
}

fn sum(items: Vec<RatAlg>) -> RatAlg {
    items
        .into_iter()
        .reduce(|a, b| a.add(&b))
        .expect("nonempty")
}

/// Dual numbers: e^x(1 + (1+eps)x^2), e^x(eps + x).
pub fn ex61() -> (Algebra, KernelBasis) {
    let alg = catalog::dual_numbers();
    let f1 = ap(2, &[(0, 0, q(1)), (2, 0, q(1)), (2, 1, q(1))]);
    let f2 = ap(2, &[(0, 1, q(1)), (1, 0, q(1))]);
    let v = KernelBasis::new(&alg, vec![vec![(q(1), f1)], vec![(q(1), f2)]]).unwrap();
    (alg, v)
}

/// A2 path algebra: diag((x+1)e^x, x^2 - 1).
pub fn ex62() -> (Algebra, KernelBasis) {
    let alg = catalog::a2();
    let c1 = ap(3, &[(0, 0, q(1)), (1, 0, q(1))]);
    let c2 = ap(3, &[(0, 2, q(-1)), (2, 2, q(1))]);
    let v = KernelBasis::new(&alg, vec![vec![(q(1), c1), (q(0), c2)]]).unwrap();
    (alg, v)
}

/// Kronecker algebra (basis E11, E21, E31, D = E22 + E33), all exponents 0.
pub fn ex63() -> (Algebra, KernelBasis) {
    let alg = catalog::kronecker();
    let f1 = vec![
        (q(0), ap(4, &[(0, 0, q(1)), (0, 1, q(1))])),
        (q(0), ap(4, &[(2, 3, q(1))])),
    ];
    let f2 = vec![
        (q(0), ap(4, &[(2, 0, q(1)), (0, 2, q(1))])),
        (q(0), ap(4, &[(1, 3, q(1))])),
    ];
    let v = KernelBasis::new(&alg, vec![f1, f2]).unwrap();
    (alg, v)
}

/// M2: F1 = E11 + x E22, F2 = E21 + x^2 E22 (free, a summand of ker d^3, degenerate).
pub fn ex46() -> (Algebra, KernelBasis) {
    let alg = catalog::m2();
    let f1 = vec![(q(0), ap(4, &[(0, 0, q(1))])), (q(0), ap(4, &[(1, 3, q(1))]))];
    let f2 = vec![(q(0), ap(4, &[(0, 2, q(1))])), (q(0), ap(4, &[(2, 3, q(1))]))];
    let v = KernelBasis::new(&alg, vec![f1, f2]).unwrap();
    (alg, v)
}

/// The pair as printed, F2 = E11 + x^2 E22: both reuse the column (1, 0), so the sum is not direct.
pub fn ex46_printed() -> (Algebra, KernelBasis) {
    let alg = catalog::m2();
    let f1 = vec![(q(0), ap(4, &[(0, 0, q(1))])), (q(0), ap(4, &[(1, 3, q(1))]))];
    let f2 = vec![(q(0), ap(4, &[(0, 0, q(1))])), (q(0), ap(4, &[(2, 3, q(1))]))];
    let v = KernelBasis::new(&alg, vec![f1, f2]).unwrap();
    (alg, v)
}

/// Third basis element of ker d^3 completing Ex 4.6: x E11 + x^2 E12.
pub fn ex46_f3() -> KernelBasis {
    let alg = catalog::m2();
    let f3 = vec![
        (q(0), ap(4, &[(1, 0, q(1))])),
        (q(0), ap(4, &[(2, 1, q(1))])),
    ];
    KernelBasis::new(&alg, vec![f3]).unwrap()
}

pub fn ex61_printed_operator(alg: &Algebra) -> DiffOp {
    let x2m1 = p(&[-1, 0, 1]);
    let a1 = sum(vec![
        frac(alg, &p(&[-1, 1, 1]), &x2m1, 0),
        frac(alg, &p(&[1, 1, 1]), &(&x2m1 * &x2m1), 1).neg(),
    ])
    .scale(&q(-2));
    let a0 = sum(vec![
        frac(alg, &p(&[1, 1]), &p(&[-1, 1]), 0),
        frac(alg, &p(&[-2, 1]), &(&p(&[-1, 1]) * &x2m1), 1).scale(&q(-2)),
    ]);
    DiffOp::new(2, vec![a0, a1, RatAlg::constant(&alg.one)])
}

pub fn ex62_printed_operator(alg: &Algebra) -> DiffOp {
    let a0 = sum(vec![
        frac(alg, &p(&[2, 1]), &p(&[1, 1]), 0),
        frac(alg, &p(&[0, 2]), &p(&[-1, 0, 1]), 2),
    ])
    .neg();
    DiffOp::new(3, vec![a0, RatAlg::constant(&alg.one)])
}

pub fn ex63_printed_operator(alg: &Algebra) -> DiffOp {
    let x = p(&[0, 1]);
    let one = p(&[1]);
    let m1 = sum(vec![
        frac(alg, &p(&[-1]), &x, 0),
        frac(alg, &one, &x, 1),
        frac(alg, &p(&[2]), &x, 3),
    ])
    .neg();
    let xx2 = p(&[0, -2, 1]);
    let m0 = sum(vec![
        frac(alg, &p(&[-2, 1]), &xx2, 0),
        frac(alg, &one, &xx2, 1),
        frac(alg, &p(&[-1]), &xx2, 3),
    ]);
    DiffOp::new(4, vec![m0, m1, RatAlg::constant(&alg.one)])
}

/// Ex 6.1 operator with the eps-part of a0 as -2 eps (x+2)/((x-1)(x^2-1)).
/// The printed (x-2) does not annihilate F1.
pub fn ex61_operator(alg: &Algebra) -> DiffOp {
    let printed = ex61_printed_operator(alg);
    let x2m1 = p(&[-1, 0, 1]);
    let a0 = sum(vec![
        frac(alg, &p(&[1, 1]), &p(&[-1, 1]), 0),
        frac(alg, &p(&[2, 1]), &(&p(&[-1, 1]) * &x2m1), 1).scale(&q(-2)),
    ]);
    DiffOp::new(2, vec![a0, printed.coeff(1), RatAlg::constant(&alg.one)])
}

/// Ex 6.3 operator for the stated F1, F2 (computed independently with sympy):
/// d^2 + (-E11 + E21 - x^-2 E31 - 2D)/x d + (2/x^2)(D - E21).
pub fn ex63_operator(alg: &Algebra) -> DiffOp {
    let x = p(&[0, 1]);
    let x2 = p(&[0, 0, 1]);
    let x3 = p(&[0, 0, 0, 1]);
    let a1 = sum(vec![
        frac(alg, &p(&[-1]), &x, 0),
        frac(alg, &p(&[1]), &x, 1),
        frac(alg, &p(&[-1]), &x3, 2),
        frac(alg, &p(&[-2]), &x, 3),
    ]);
    let a0 = sum(vec![
        frac(alg, &p(&[-2]), &x2, 1),
        frac(alg, &p(&[2]), &x2, 3),
    ]);
    DiffOp::new(4, vec![a0, a1, RatAlg::constant(&alg.one)])
}

/// Block inverse of the Ex 6.3 Wronski matrix for the stated F1, F2 (sympy oracle).
pub fn ex63_block_inverse(alg: &Algebra) -> Vec<Vec<RatAlg>> {
    let one = p(&[1]);
    let x = p(&[0, 1]);
    let x2 = p(&[0, 0, 1]);
    let alpha = sum(vec![
        frac(alg, &one, &one, 0),
        frac(alg, &one, &x2, 1),
        frac(alg, &p(&[-1]), &x2, 3),
    ]);
    let beta = sum(vec![
        frac(alg, &p(&[0, -1]), &p(&[2]), 0),
        frac(alg, &p(&[-1]), &p(&[0, 2]), 1),
        frac(alg, &one, &p(&[0, 0, 0, 2]), 2),
        frac(alg, &one, &x, 3),
    ]);
    let gamma = sum(vec![
        frac(alg, &p(&[-2]), &x, 1),
        frac(alg, &p(&[2]), &x, 3),
    ]);
    let delta = sum(vec![
        frac(alg, &one, &p(&[0, 2]), 0),
        frac(alg, &one, &one, 1),
        frac(alg, &p(&[-1]), &x2, 2),
        frac(alg, &p(&[-1]), &one, 3),
    ]);
    vec![vec![alpha, beta], vec![gamma, delta]]
}

/// [[alpha, beta], [gamma, delta]] = [[F1, F2], [F1', F2']]^{-1} as printed.
pub fn ex63_printed_block_inverse(alg: &Algebra) -> Vec<Vec<RatAlg>> {
    let x = p(&[0, 1]);
    let one = p(&[1]);
    let xx2 = p(&[0, -2, 1]);
    let xm2 = p(&[-2, 1]);
    let alpha = sum(vec![
        frac(alg, &one, &one, 0),
        frac(alg, &p(&[-1]), &xx2, 1),
        frac(alg, &one, &xx2, 3),
    ]);
    let beta = sum(vec![
        frac(alg, &p(&[0, -1]), &p(&[2]), 0),
        frac(alg, &one, &p(&[0, 2]), 1),
        frac(alg, &one, &x, 3),
    ]);
    let gamma = sum(vec![
        frac(alg, &p(&[-2]), &xm2, 1),
        frac(alg, &p(&[2]), &xm2, 3),
    ]);
    let delta = sum(vec![
        frac(alg, &p(&[-1]), &p(&[0, 2]), 0),
        frac(alg, &p(&[-1]), &one, 3),
    ]);
    vec![vec![alpha, beta], vec![gamma, delta]]
}

/// Wronski determinant polynomial part printed for Ex 6.1: 1 - 2 eps x - (1+eps) x^2.
pub fn ex61_printed_det_poly() -> AlgPoly {
    AlgPoly::from_coeffs(2, &[vec![q(1), q(0)], vec![q(0), q(-2)], vec![q(-1), q(-1)]])
}

/// The printed Ex 6.1 generator of V^perp, with its sign as printed and as corrected.
pub fn ex61_perp_generator(corrected: bool) -> AlgPoly {
    // in powers of (z - 1): 1 - eps (z-1) -+ ((1-eps)/2)(z-1)^2
    let s = if corrected { qr(-1, 2) } else { qr(1, 2) };
    let zm1 = AlgPoly::scalar_times(&p(&[-1, 1]), &[q(1), q(0)]);
    let one = AlgPoly::constant(&[q(1), q(0)]);
    let eps = AlgPoly::constant(&[q(0), q(1)]);
    let alg = catalog::dual_numbers();
    let t1 = alg.mul_poly(&eps, &zm1).neg();
    let c = AlgPoly::constant(&[s.clone(), -s]);
    let t2 = alg.mul_poly(&c, &alg.mul_poly(&zm1, &zm1));
    one.add(&t1).add(&t2)
}

/// Ex 6.2 iota basis, theta-cleared with theta = z(z-1):
/// diag(z^2, (z^2+2)(z-1)/2), diag(z(z-1)^2, z(z-1)), diag(z^{k+1}(z-1)^2, z^{k+2}(z-1)).
/// `corrected` replaces z^2 by z(z-2), the E11 entry the stated conditions
/// p11'(1) + p11(1) = 0 allow.
pub fn ex62_iota_cleared(kmax: usize, corrected: bool) -> Vec<AlgPoly> {
    let first11 = if corrected { p(&[0, -2, 1]) } else { p(&[0, 0, 1]) };
    let e11 = |c: Poly| AlgPoly::scalar_times(&c, &[q(1), q(0), q(0)]);
    let e22 = |c: Poly| AlgPoly::scalar_times(&c, &[q(0), q(0), q(1)]);
    let zm1 = p(&[-1, 1]);
    let mut out = vec![
        e11(first11).add(&e22(&p(&[2, 0, 1]) * &zm1).scale(&qr(1, 2))),
        e11(&p(&[0, 1]) * &zm1.pow(2)).add(&e22(&p(&[0, 1]) * &zm1)),
    ];
    for k in 1..=kmax {
        let zk = Poly::monomial(q(1), k);
        out.push(
            e11(&(&zk * &p(&[0, 1])) * &zm1.pow(2))
                .add(&e22(&(&zk * &p(&[0, 0, 1])) * &zm1)),
        );
    }
    out
}

/// Ex 6.3 iota basis after clearing theta = z^2. `corrected` uses -1/2 in the
/// (3,1) slot, which is what the stated conditions b(0) = c''(0) = -d(0) need.
pub fn ex63_iota_cleared(kmax: usize, corrected: bool) -> Vec<AlgPoly> {
    let c31 = if corrected { qr(-1, 2) } else { q(-1) };
    // z E11 - E21 + c31 z^2 E31 + D
    let mut out = vec![ap(
        4,
        &[(1, 0, q(1)), (0, 1, q(-1)), (2, 2, c31), (0, 3, q(1))],
    )];
    for k in 1..=kmax {
        out.push(ap(4, &[(k + 2, 0, q(1)), (k + 2, 3, q(1))]));
    }
    out
}

/// Ex 6.1 iota basis cleared by theta = (z-1)^2.
pub fn ex61_iota_cleared(kmax: usize, corrected: bool) -> Vec<AlgPoly> {
    let mut out = vec![ex61_perp_generator(corrected)];
    let zm1 = p(&[-1, 1]);
    for k in 3..3 + kmax {
        out.push(AlgPoly::scalar_times(&zm1.pow(k), &[q(1), q(0)]));
    }
    out
}

/// Printed complement bases (numerators over g): 6.1 {1, z-1} / (z-1)^2,
/// 6.2 {1, z-1} / (z(z-1)), 6.3 {E11 + z D, 1 z^2} / z^2.
pub fn ex61_complement() -> Vec<AlgPoly> {
    vec![
        AlgPoly::constant(&[q(1), q(0)]),
        AlgPoly::scalar_times(&p(&[-1, 1]), &[q(1), q(0)]),
    ]
}

pub fn ex62_complement() -> Vec<AlgPoly> {
    let one = [q(1), q(0), q(1)];
    vec![
        AlgPoly::constant(&one),
        AlgPoly::scalar_times(&p(&[-1, 1]), &one),
    ]
}

pub fn ex63_complement() -> Vec<AlgPoly> {
    vec![
        ap(4, &[(0, 0, q(1)), (1, 3, q(1))]),
        ap(4, &[(2, 0, q(1)), (2, 3, q(1))]),
    ]
}

/// Sandwich polynomials h printed with each iota image.
pub fn printed_sandwich_h(name: &str) -> Poly {
    match name {
        "ex61" => p(&[-1, 1]),
        "ex62" => &p(&[0, 0, 1]) * &p(&[-1, 1]),
        _ => p(&[0, 1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_build() {
        assert_eq!(ex61().1.len(), 2);
        assert_eq!(ex62().1.len(), 1);
        assert_eq!(ex63().1.len(), 2);
        assert_eq!(ex46().1.len(), 2);
        assert_eq!(ex62_iota_cleared(2, true).len(), 4);
        let g = ex61_perp_generator(true);
        assert_eq!(g.eval(&q(1)), vec![q(1), q(0)]);
    }
}
