//! Seeded property suites over the catalog algebras.

use crate::adelic::{build_point, immediate_successor, normalize, same_fiber, AdelicPoint};
use crate::algebra::{elem, Algebra, Elem};
use crate::bispectral::{bispectral_data, verify_bispectral};
use crate::catalog;
use crate::diffop::{compose, factor_through_submodule, operator_from_quasi, DiffOp, RatAlg};
use crate::error::Result;
use crate::io;
use crate::poly::AlgPoly;
use crate::quasi::{d_plus_a, f_a_solve, is_nondegenerate, successor_endo, KernelBasis, QuasiExp};
use crate::rational::{
    double_perp, embed_iota, pairing, pairing_alt, verify_perp_shift, PairingContext,
};
use crate::report::Report;
use crate::scalar::{q, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_611;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_q(r: &mut ChaCha8Rng, bound: i64) -> Q {
    let n = r.gen_range(-bound..=bound);
    if r.gen_bool(0.2) {
        Q::new(n.into(), 2.into())
    } else {
        q(n)
    }
}

pub fn rand_elem(r: &mut ChaCha8Rng, alg: &Algebra) -> Elem {
    (0..alg.dim).map(|_| rand_q(r, 2)).collect()
}

/// Sparse small-integer element: each coordinate is 0 with probability 1/2.
pub fn rand_sparse_elem(r: &mut ChaCha8Rng, alg: &Algebra) -> Elem {
    (0..alg.dim)
        .map(|_| if r.gen_bool(0.5) { q(0) } else { q(r.gen_range(-2..=2)) })
        .collect()
}

pub fn rand_alg_poly(r: &mut ChaCha8Rng, alg: &Algebra, deg: usize) -> AlgPoly {
    let cs: Vec<Elem> = (0..=deg).map(|_| rand_elem(r, alg)).collect();
    AlgPoly::from_coeffs(alg.dim, &cs)
}

pub fn rand_alg_poly_upto(r: &mut ChaCha8Rng, alg: &Algebra, max_deg: usize) -> AlgPoly {
    let deg = r.gen_range(0..=max_deg);
    rand_alg_poly(r, alg, deg)
}

pub fn rand_quasi(r: &mut ChaCha8Rng, alg: &Algebra) -> QuasiExp {
    let mut f = QuasiExp::zero(alg.dim);
    for _ in 0..r.gen_range(1..=2) {
        let deg = r.gen_range(0..=2);
        f.add_term(q(r.gen_range(-2..=2)), rand_alg_poly(r, alg, deg));
    }
    f
}

/// Unit of R: an invertible combination of the idempotents plus a radical element.
pub fn rand_unit(r: &mut ChaCha8Rng, alg: &Algebra) -> Elem {
    let mut u = alg.zero();
    for e in &alg.idempotents {
        let mut c = rand_q(r, 2);
        if c == q(0) {
            c = q(1);
        }
        u = elem::add(&u, &elem::scale(e, &c));
    }
    for n in alg.radical() {
        u = elem::add(&u, &elem::scale(n, &rand_q(r, 2)));
    }
    u
}

/// Invertible l x l matrix over R as (unit diagonal) * (unitriangular).
pub fn rand_invertible(r: &mut ChaCha8Rng, alg: &Algebra, l: usize) -> Vec<Vec<Elem>> {
    let mut m = vec![vec![alg.zero(); l]; l];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = rand_unit(r, alg);
    }
    for i in 0..l {
        for j in i + 1..l {
            let t = rand_elem(r, alg);
            m[i][j] = alg.mul(&m[i][i], &t);
        }
    }
    m
}

pub fn rand_gamma(r: &mut ChaCha8Rng, alg: &Algebra) -> Vec<Q> {
    (0..alg.m()).map(|_| q(r.gen_range(-2..=2))).collect()
}

/// A random accepted point of order 1 or 2; falls back to the constant point
/// sum_i e^{alpha_i x} e_i and one successor step if random draws keep failing.
pub fn rand_point(r: &mut ChaCha8Rng, alg: &Algebra) -> AdelicPoint {
    let l = if r.gen_bool(0.3) { 2 } else { 1 };
    for _ in 0..12 {
        let elems: Vec<Vec<(Q, AlgPoly)>> = (0..l)
            .map(|_| {
                alg.idempotents
                    .iter()
                    .map(|e| {
                        let deg = r.gen_range(0..=1);
                        let cs: Vec<Elem> = (0..=deg).map(|_| rand_sparse_elem(r, alg)).collect();
                        let p = AlgPoly::from_coeffs(alg.dim, &cs);
                        (q(r.gen_range(-1..=2)), alg.rmul_poly(&p, e))
                    })
                    .collect()
            })
            .collect();
        let Ok(v) = KernelBasis::new(alg, elems) else {
            continue;
        };
        if let Ok(pt) = build_point(alg, &v) {
            return pt;
        }
    }
    let v = KernelBasis::new(
        alg,
        vec![alg
            .idempotents
            .iter()
            .map(|e| (q(r.gen_range(-1..=1)), AlgPoly::constant(e)))
            .collect()],
    )
    .expect("constant kernel");
    let pt = build_point(alg, &v).expect("constant kernel is accepted");
    if l == 2 {
        immediate_successor(&pt, &rand_gamma(r, alg)).expect("successors are accepted")
    } else {
        pt
    }
}

/// Tally for one property over many cases; keeps the first failure.
struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, case: usize, outcome: Result<bool>, what: impl FnOnce() -> String) {
        self.cases += 1;
        if self.failure.is_some() {
            return;
        }
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failure = Some(format!("case {case}: {}", what())),
            Err(e) => self.failure = Some(format!("case {case}: error {e}")),
        }
    }

    fn report(self) -> Report {
        let pass = self.failure.is_none();
        Report::check(
            format!("{} ({} cases)", self.name, self.cases),
            pass,
            self.failure.unwrap_or_default(),
        )
    }
}

/// q(d) f = sum_k q_k f^(k).
fn apply_symbol(alg: &Algebra, qp: &AlgPoly, f: &QuasiExp) -> QuasiExp {
    (0..qp.len()).fold(QuasiExp::zero(alg.dim), |acc, k| {
        acc.add(&f.deriv_n(k).lmul(alg, &qp.coeff(k)))
    })
}

/// Properties 6a-6g for one algebra, `cases` random points each.
pub fn point_properties(alg: &Algebra, seed: u64, cases: usize) -> Report {
    let mut r = rng(seed);
    let mut fact = Tally::new("a. factorization round-trip QP = L");
    let mut fa = Tally::new("b. (d + A) F_A(u) = u");
    let mut pair = Tally::new("c. pairing = pairing_alt, invariance");
    let mut dperp = Tally::new("d. (V^perp)^perp = V");
    let mut shift = Tally::new("e. V^perp g = W^perp");
    let mut fiber = Tally::new("f. successor in the same fiber, iota agrees");
    let mut bisp = Tally::new("g. bispectral identities; corrupted factor fails");
    for case in 0..cases {
        let pt = rand_point(&mut r, alg);
        let v = &pt.kernel;

        let l = DiffOp::scalar_symbol(alg, &pt.certificate);
        fact.record(
            case,
            factor_through_submodule(alg, &l, v).map(|(quo, p)| p == pt.op && compose(alg, &quo, &p) == l),
            || format!("kernel {}", io::kernel_to_json(alg, v)),
        );

        let alpha = q(r.gen_range(-2..=2));
        let gamma = rand_gamma(&mut r, alg);
        let a = successor_endo(alg, &alpha, &gamma);
        let u = rand_alg_poly_upto(&mut r, alg, 3);
        fa.record(case, Ok(d_plus_a(&a, &f_a_solve(&a, &u)) == u), || {
            format!("alpha = {alpha}, gamma = {gamma:?}, u = {}", alg.fmt_poly(&u, "x"))
        });

        let p = rand_alg_poly_upto(&mut r, alg, 3);
        let f = rand_quasi(&mut r, alg);
        let qp = rand_alg_poly_upto(&mut r, alg, 2);
        let re = rand_elem(&mut r, alg);
        let ok = pairing(alg, &p, &f) == pairing_alt(alg, &p, &f)
            && pairing(alg, &alg.mul_poly(&p, &qp), &f) == pairing(alg, &p, &apply_symbol(alg, &qp, &f))
            && pairing(alg, &alg.rmul_poly(&p, &re), &f) == pairing(alg, &p, &f.lmul(alg, &re));
        pair.record(case, Ok(ok), || {
            format!("p = {}, f = {}", alg.fmt_poly(&p, "z"), f.fmt(alg))
        });

        dperp.record(
            case,
            PairingContext::for_kernel(v).and_then(|ctx| double_perp(alg, v, &ctx)),
            || format!("kernel {}", io::kernel_to_json(alg, v)),
        );

        let gamma = rand_gamma(&mut r, alg);
        shift.record(case, verify_perp_shift(alg, v, &gamma), || {
            format!("gamma = {gamma:?}, kernel {}", io::kernel_to_json(alg, v))
        });

        let outcome = immediate_successor(&pt, &gamma).and_then(|s| {
            let a = embed_iota(&normalize(&pt))?;
            let b = embed_iota(&normalize(&s))?;
            Ok(same_fiber(&pt, &s)? && a.same_module(&b))
        });
        fiber.record(case, outcome, || format!("gamma = {gamma:?}"));

        let outcome = bispectral_data(alg, &pt.op, &pt.certificate).and_then(|bd| {
            let good = verify_bispectral(alg, &bd.p_prime, &bd.q_prime, &bd.g, &bd.h, &bd.l)?;
            let bad_q = bd.q_prime.add(&DiffOp::mult(RatAlg::constant(&alg.one)));
            let bad = verify_bispectral(alg, &bd.p_prime, &bad_q, &bd.g, &bd.h, &bd.l)?;
            Ok(good.pass && !bad.pass)
        });
        bisp.record(case, outcome, || format!("operator {}", pt.op.fmt(alg)));
    }
    let mut rep = Report::new(format!("properties over {}", alg.name));
    for t in [fact, fa, pair, dperp, shift, fiber, bisp] {
        rep.push(t.report());
    }
    rep
}

/// Property 7: the operator and nondegeneracy do not see a right change of basis by GL_l(R).
pub fn basis_change_property(seed: u64, cases: usize) -> Report {
    let mut r = rng(seed);
    let algs = catalog::all_algebras();
    let mut t = Tally::new("operator and nondegeneracy invariant under right basis change");
    for case in 0..cases {
        let alg = &algs[case % algs.len()];
        let pt = rand_point(&mut r, alg);
        let m = rand_invertible(&mut r, alg, pt.order());
        let fs = pt.kernel.right_change(alg, &m);
        let outcome = operator_from_quasi(alg, &fs)
            .map(|op| op == pt.op && is_nondegenerate(alg, &fs).0);
        t.record(case, outcome, || format!("{}: kernel {}", alg.name, io::kernel_to_json(alg, &pt.kernel)));
    }
    // a degenerate family stays degenerate
    let (m2, v) = crate::examples::ex46();
    let mut d = Tally::new("degenerate family stays degenerate");
    for case in 0..cases.min(10) {
        let m = rand_invertible(&mut r, &m2, v.len());
        let fs = v.right_change(&m2, &m);
        d.record(case, Ok(!is_nondegenerate(&m2, &fs).0), String::new);
    }
    Report::new("basis independence").with(t.report()).with(d.report())
}

/// parse(serialize(v)) = v for random kernels, points, operators and rational points.
pub fn round_trip_property(seed: u64, cases: usize) -> Report {
    let mut r = rng(seed);
    let algs = catalog::all_algebras();
    let mut t = Tally::new("serialize then parse is the identity");
    for case in 0..cases {
        let alg = &algs[case % algs.len()];
        let pt = rand_point(&mut r, alg);
        let outcome = (|| -> Result<bool> {
            let (a, k) = io::parse_kernel(&io::kernel_to_json(alg, &pt.kernel), None)?;
            let (_, op) = io::parse_operator(&io::operator_to_json(alg, &pt.op), None)?;
            let p = io::parse_point(&io::point_to_json(&pt), None)?;
            let rp = embed_iota(&normalize(&pt))?;
            let rp2 = io::parse_rational_point(&io::rational_point_to_json(&rp), None)?;
            Ok(a == *alg && k == pt.kernel && op == pt.op && p == pt && rp2 == rp)
        })();
        t.record(case, outcome, || format!("{}: point {}", alg.name, io::point_to_json(&pt)));
    }
    Report::new("round trips").with(t.report())
}

/// Everything above with the acceptance sizes: 100 cases per algebra, 50 basis changes.
pub fn selftest(seed: u64) -> Report {
    let mut rep = Report::new(format!("selftest (seed {seed})"));
    for (i, alg) in catalog::all_algebras().iter().enumerate() {
        rep.push(point_properties(alg, seed.wrapping_add(i as u64), 100));
    }
    rep.push(basis_change_property(seed, 50));
    rep.push(round_trip_property(seed, 50));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for alg in catalog::all_algebras() {
            let r = point_properties(&alg, 7, 6);
            assert!(r.pass, "{}", r.emit(crate::report::Format::Text));
        }
        let r = basis_change_property(7, 10);
        assert!(r.pass, "{}", r.emit(crate::report::Format::Text));
        let r = round_trip_property(7, 10);
        assert!(r.pass, "{}", r.emit(crate::report::Format::Text));
    }

    #[test]
    fn seeds_are_reproducible() {
        let alg = catalog::a2();
        let a = rand_point(&mut rng(3), &alg);
        let b = rand_point(&mut rng(3), &alg);
        assert_eq!(a, b);
    }
}
