//! The pairing R[z] x QP(R) -> R, orthogonal complements, the rational Grassmannian and iota.

use std::collections::BTreeMap;

use crate::adelic::{successor_kernel, NormalizedPoint};
use crate::algebra::{elem, Algebra, Elem};
use crate::error::{Error, Result};
use crate::linalg::{span_basis, span_contains, span_eq, span_rank, Mat};
use crate::module::{
    direct_summand_witness, flat_all, idempotent_dims, is_free_of_rank,
    projective_multiplicities, FinModule, Side,
};
use crate::poly::{AlgPoly, Poly};
use crate::quasi::{right_span, KernelBasis, QuasiExp, QuasiLayout};
use crate::report::Report;
use crate::scalar::{falling, Q};
use num_traits::{One, Zero};

/// <p(z), x^n e^{alpha x} r> = p^(n)(alpha) r.
pub fn pairing(alg: &Algebra, p: &AlgPoly, f: &QuasiExp) -> Elem {
    let mut acc = alg.zero();
    for (a, c) in &f.terms {
        for n in 0..c.len() {
            let cn = c.coeff(n);
            if elem::is_zero(&cn) {
                continue;
            }
            let pv = p.deriv_n(n).eval(a);
            acc = elem::add(&acc, &alg.mul(&pv, &cn));
        }
    }
    acc
}

/// p(d_x) f(x) at x = 0.
pub fn pairing_alt(alg: &Algebra, p: &AlgPoly, f: &QuasiExp) -> Elem {
    let mut acc = alg.zero();
    for k in 0..p.len() {
        let pk = p.coeff(k);
        if elem::is_zero(&pk) {
            continue;
        }
        acc = elem::add(&acc, &alg.mul(&pk, &f.deriv_n(k).eval0()));
    }
    acc
}

/// <z^k, f> for k < n, as algebra elements.
fn monomial_pairings(f: &QuasiExp, n: usize, d: usize) -> Vec<Elem> {
    let mut out = vec![vec![Q::zero(); d]; n];
    for (a, c) in &f.terms {
        for m in 0..c.len() {
            let cm = c.coeff(m);
            if elem::is_zero(&cm) {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().skip(m) {
                // d^m/dz^m z^k at a
                let w = falling(k, m) * pow_q(a, k - m);
                if !w.is_zero() {
                    *slot = elem::add(slot, &elem::scale(&cm, &w));
                }
            }
        }
    }
    out
}

fn pow_q(a: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * a)
}

/// Exponents alpha_i with multiplicities N_i; h(z) = prod (z - alpha_i)^{N_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingContext {
    pub alphas: Vec<Q>,
    pub mults: Vec<usize>,
    pub h: Poly,
}

impl PairingContext {
    pub fn new(alphas: Vec<Q>, mults: Vec<usize>) -> Result<Self> {
        if alphas.len() != mults.len() {
            return Err(Error::DimMismatch {
                expected: alphas.len(),
                got: mults.len(),
            });
        }
        let mut seen = BTreeMap::new();
        for (a, n) in alphas.iter().zip(&mults) {
            if *n == 0 {
                return Err(Error::Invalid(format!("multiplicity of {a} must be positive")));
            }
            if seen.insert(a.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("exponent {a} listed twice")));
            }
        }
        let h = alphas
            .iter()
            .zip(&mults)
            .fold(Poly::one(), |acc, (a, n)| &acc * &Poly::linear(a).pow(*n));
        Ok(PairingContext { alphas, mults, h })
    }

    pub fn from_map(m: &BTreeMap<Q, usize>) -> Result<Self> {
        Self::new(m.keys().cloned().collect(), m.values().cloned().collect())
    }

    /// N_alpha = (max degree at alpha) + 1 over the given families.
    pub fn for_quasi(fs: &[QuasiExp]) -> Result<Self> {
        let mut m: BTreeMap<Q, usize> = BTreeMap::new();
        for f in fs {
            for (a, p) in &f.terms {
                let e = m.entry(a.clone()).or_insert(1);
                *e = (*e).max(p.len());
            }
        }
        Self::from_map(&m)
    }

    pub fn for_kernel(v: &KernelBasis) -> Result<Self> {
        Self::for_quasi(&v.quasi())
    }

    /// Componentwise maximum of two contexts.
    pub fn join(&self, o: &PairingContext) -> Result<Self> {
        let mut m = self.as_map();
        for (a, n) in o.alphas.iter().zip(&o.mults) {
            let e = m.entry(a.clone()).or_insert(0);
            *e = (*e).max(*n);
        }
        Self::from_map(&m)
    }

    pub fn as_map(&self) -> BTreeMap<Q, usize> {
        self.alphas.iter().cloned().zip(self.mults.iter().cloned()).collect()
    }

    pub fn deg(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn layout(&self, d: usize) -> QuasiLayout {
        QuasiLayout::new(d, &[], &self.as_map())
    }

    /// Err unless f lies in QP_{alpha;N}(R).
    pub fn check_covers(&self, f: &QuasiExp) -> Result<()> {
        let m = self.as_map();
        for (a, p) in &f.terms {
            match m.get(a) {
                Some(&n) if p.len() <= n => {}
                Some(&n) => {
                    return Err(Error::Context(format!(
                        "exponent {a} needs multiplicity at least {}, context has {n}",
                        p.len()
                    )))
                }
                None => {
                    return Err(Error::Context(format!(
                        "exponent {a} missing from the context; add {a}:{}",
                        p.len().max(1)
                    )))
                }
            }
        }
        Ok(())
    }
}

/// V^perp = lift of a Q-basis of V^{perp, finite} in R[z]/(h), plus h R[z].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerpModule {
    pub ctx: PairingContext,
    pub d: usize,
    /// Q-basis of V^{perp, finite}, each of degree < deg h
    pub basis: Vec<AlgPoly>,
}

impl PerpModule {
    pub fn contains(&self, p: &AlgPoly) -> bool {
        let n = self.ctx.deg();
        let r = p.rem_scalar(&self.ctx.h);
        span_contains(&flat_all(&self.basis, n), &r.flat(n), n * self.d)
    }

    /// Q-basis of V^perp truncated to degree < n (n >= deg h).
    pub fn truncated(&self, n: usize) -> Vec<AlgPoly> {
        let mut out = self.basis.clone();
        let dh = self.ctx.deg();
        for k in 0..n.saturating_sub(dh) {
            for s in 0..self.d {
                let mut e = vec![Q::zero(); self.d];
                e[s] = Q::one();
                out.push(AlgPoly::scalar_times(&self.ctx.h.shift(k), &e));
            }
        }
        out
    }
}

/// Q-kernel of p -> (<p, f>)_f inside R[z]/(h).
pub fn perp_of_quasi(alg: &Algebra, fs: &[QuasiExp], ctx: &PairingContext) -> Result<PerpModule> {
    for f in fs {
        ctx.check_covers(f)?;
    }
    let (d, n) = (alg.dim, ctx.deg());
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for f in fs {
        let w = monomial_pairings(f, n, d);
        // coordinate c of <z^k b_s, f> = (b_s w_k)_c
        let mut block = vec![vec![Q::zero(); n * d]; d];
        for (k, wk) in w.iter().enumerate() {
            for s in 0..d {
                let v = alg.mul(&alg.basis(s), wk);
                for (c, x) in v.into_iter().enumerate() {
                    block[c][k * d + s] = x;
                }
            }
        }
        rows.extend(block);
    }
    let basis = if rows.is_empty() {
        (0..n * d)
            .map(|i| {
                let mut e = vec![Q::zero(); n * d];
                e[i] = Q::one();
                e
            })
            .collect()
    } else {
        span_basis(&Mat::from_rows(&rows, n * d).nullspace(), n * d)
    };
    Ok(PerpModule {
        ctx: ctx.clone(),
        d,
        basis: basis.iter().map(|v| AlgPoly::from_flat(d, v)).collect(),
    })
}

pub fn perp_of_kernel(alg: &Algebra, v: &KernelBasis, ctx: &PairingContext) -> Result<PerpModule> {
    perp_of_quasi(alg, &v.quasi(), ctx)
}

/// dim_Q of the right span of fs.
pub fn quasi_dim(alg: &Algebra, fs: &[QuasiExp], ctx: &PairingContext) -> usize {
    let layout = ctx.layout(alg.dim);
    let vs: Vec<Vec<Q>> = right_span(alg, fs).iter().map(|f| layout.coords(f)).collect();
    span_rank(&vs, layout.size)
}

/// (V^perp)^perp inside QP_{alpha;N}(R), as Q-coordinates in `ctx.layout`.
pub fn perp_of_perp(alg: &Algebra, pm: &PerpModule) -> Vec<Vec<Q>> {
    let d = alg.dim;
    let layout = pm.ctx.layout(d);
    let mut unit = Vec::new();
    for (a, &n) in pm.ctx.alphas.iter().zip(&pm.ctx.mults) {
        for k in 0..n {
            for t in 0..d {
                let mut e = vec![Q::zero(); d];
                e[t] = Q::one();
                unit.push(QuasiExp::term(
                    a.clone(),
                    AlgPoly::scalar_times(&Poly::monomial(Q::one(), k), &e),
                ));
            }
        }
    }
    let mut rows = Vec::new();
    for p in &pm.basis {
        let vals: Vec<Elem> = unit.iter().map(|f| pairing(alg, p, f)).collect();
        for c in 0..d {
            let mut row = vec![Q::zero(); layout.size];
            for (f, v) in unit.iter().zip(&vals) {
                let idx = layout
                    .coords(f)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("unit vector");
                row[idx] = v[c].clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return unit.iter().map(|f| layout.coords(f)).collect();
    }
    Mat::from_rows(&rows, layout.size).nullspace()
}

pub fn double_perp(alg: &Algebra, v: &KernelBasis, ctx: &PairingContext) -> Result<bool> {
    double_perp_quasi(alg, &v.quasi(), ctx)
}

pub fn double_perp_quasi(alg: &Algebra, fs: &[QuasiExp], ctx: &PairingContext) -> Result<bool> {
    let pm = perp_of_quasi(alg, fs, ctx)?;
    let back = perp_of_perp(alg, &pm);
    let layout = ctx.layout(alg.dim);
    let vs: Vec<Vec<Q>> = right_span(alg, fs).iter().map(|f| layout.coords(f)).collect();
    Ok(span_eq(&back, &vs, layout.size))
}

/// Q-vectors of the left R-span of ps, flattened below degree n.
fn left_span(alg: &Algebra, ps: &[AlgPoly], n: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::with_capacity(ps.len() * alg.dim);
    for p in ps {
        for s in 0..alg.dim {
            out.push(alg.lmul_poly(&alg.basis(s), p).flat(n));
        }
    }
    out
}

/// Candidate left-R basis of V^perp, checked up to degree max(deg h, max deg + 1):
/// each candidate lies in V^perp, their span contains V^perp below that degree, and they are free.
pub fn verify_candidate_generators(alg: &Algebra, pm: &PerpModule, gens: &[AlgPoly]) -> Report {
    let d = alg.dim;
    let n = gens
        .iter()
        .map(|g| g.len())
        .max()
        .unwrap_or(0)
        .max(pm.ctx.deg());
    let mut r = Report::new("candidate generators of V^perp");
    let outside: Vec<usize> = (0..gens.len()).filter(|&i| !pm.contains(&gens[i])).collect();
    r.leaf(
        "generators lie in V^perp",
        outside.is_empty(),
        match outside.first() {
            Some(&i) => format!("generator {} = {} fails the conditions", i + 1, alg.fmt_poly(&gens[i], "z")),
            None => format!("{} generators", gens.len()),
        },
    );
    let span = left_span(alg, gens, n);
    let target = pm.truncated(n);
    let missing = target
        .iter()
        .find(|t| !span_contains(&span, &t.flat(n), n * d));
    r.leaf(
        "span contains V^perp below the truncation degree",
        missing.is_none(),
        match missing {
            Some(t) => format!("{} not reached (degree < {n})", alg.fmt_poly(t, "z")),
            None => format!("dim_Q = {} below degree {n}", target.len()),
        },
    );
    let rank = span_rank(&span, n * d);
    r.leaf(
        "free over R",
        rank == d * gens.len(),
        format!("rank_Q {} vs d * #generators = {}", rank, d * gens.len()),
    );
    r
}

/// M = theta^{-1} (R-span of generators + theta h R[z]), with h R[z] <= M <= g^{-1} R[z] claimed.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoint {
    pub alg: Algebra,
    pub theta: Poly,
    pub generators: Vec<AlgPoly>,
    pub h: Poly,
    pub g: Poly,
}

impl RationalPoint {
    fn tail(&self) -> Poly {
        &self.theta * &self.h
    }

    /// Q-basis of scale * theta * M modulo `modulus` (a multiple of scale * theta * h), below deg modulus.
    fn cleared_span(&self, scale: &Poly, modulus: &Poly) -> Vec<Vec<Q>> {
        let n = modulus.degree().unwrap_or(0);
        let d = self.alg.dim;
        let mut out = Vec::new();
        for gen in &self.generators {
            let p = gen.mul_scalar(scale).rem_scalar(modulus);
            for s in 0..d {
                out.push(self.alg.lmul_poly(&self.alg.basis(s), &p).rem_scalar(modulus).flat(n));
            }
        }
        let t = scale * &self.tail();
        let dt = t.degree().unwrap_or(0);
        for k in 0..n.saturating_sub(dt) {
            for s in 0..d {
                out.push(AlgPoly::scalar_times(&t.shift(k), &self.alg.basis(s)).flat(n));
            }
        }
        span_basis(&out, n * d)
    }

    /// Same module: compare theta-cleared spans over a common denominator modulo theta lcm(h1, h2).
    pub fn same_module(&self, o: &RationalPoint) -> bool {
        if self.alg != o.alg {
            return false;
        }
        let theta = self.theta.lcm(&o.theta);
        let modulus = &theta * &self.h.lcm(&o.h);
        let (s1, s2) = (
            theta.exact_div(&self.theta).expect("lcm"),
            theta.exact_div(&o.theta).expect("lcm"),
        );
        let n = modulus.degree().unwrap_or(0);
        span_eq(
            &self.cleared_span(&s1, &modulus),
            &o.cleared_span(&s2, &modulus),
            n * self.alg.dim,
        )
    }

    /// h' R[z] <= M.
    pub fn contains_multiples(&self, h2: &Poly) -> bool {
        let l = self.h.lcm(h2);
        let modulus = &self.theta * &l;
        let n = modulus.degree().unwrap_or(0);
        let d = self.alg.dim;
        let span = self.cleared_span(&Poly::one(), &modulus);
        let t = &self.theta * h2;
        let dt = t.degree().unwrap_or(0);
        (0..n.saturating_sub(dt)).all(|k| {
            (0..d).all(|s| {
                let v = AlgPoly::scalar_times(&t.shift(k), &self.alg.basis(s)).flat(n);
                span_contains(&span, &v, n * d)
            })
        })
    }

    /// Same point with theta replaced by a multiple.
    fn with_theta(&self, theta: &Poly) -> RationalPoint {
        let s = theta.exact_div(&self.theta).expect("multiple of theta");
        RationalPoint {
            alg: self.alg.clone(),
            theta: theta.clone(),
            generators: self.generators.iter().map(|p| p.mul_scalar(&s)).collect(),
            h: self.h.clone(),
            g: self.g.clone(),
        }
    }

    /// W = (theta/g) R[z] / theta h R[z] and U = theta M / theta h R[z] inside R[z]/(theta h).
    fn quotient_spaces(&self) -> (FinModule, Vec<Vec<Q>>, Vec<Vec<Q>>) {
        let modulus = self.tail();
        let n = modulus.degree().unwrap_or(0);
        let amb = FinModule::on_polys(&self.alg, n, Side::Left);
        let u = self.cleared_span(&Poly::one(), &modulus);
        let s = self.theta.exact_div(&self.g).expect("g divides theta");
        let ds = s.degree().unwrap_or(0);
        let mut w = Vec::new();
        for k in 0..n.saturating_sub(ds) {
            for b in self.alg.full_basis() {
                w.push(AlgPoly::scalar_times(&s.shift(k), &b).flat(n));
            }
        }
        (amb, span_basis(&w, n * self.alg.dim), u)
    }
}

fn in_span_coords(w: &[Vec<Q>], vs: &[Vec<Q>], dim: usize) -> Option<Vec<Vec<Q>>> {
    let b = Mat::from_cols(w, dim);
    vs.iter().map(|v| b.solve(v)).collect()
}

pub fn is_rational_point(pt: &RationalPoint) -> Report {
    let alg = &pt.alg;
    let d = alg.dim;
    let mut r = Report::new("rational Grassmannian membership");
    if pt.theta.is_zero() || pt.g.is_zero() || pt.h.is_zero() {
        r.leaf("theta, g, h nonzero", false, "zero polynomial in the data");
        return r;
    }
    let theta = pt.theta.lcm(&pt.g);
    let pt = pt.with_theta(&theta);
    let s = theta.exact_div(&pt.g).expect("lcm");
    // M <= g^{-1} R[z]  <=>  theta M <= (theta/g) R[z]
    let bad = pt
        .generators
        .iter()
        .position(|p| p.rem_scalar(&s).is_zero().then_some(()).is_none());
    r.leaf(
        "(i) M <= g^{-1} R[z]",
        bad.is_none(),
        match bad {
            Some(i) => format!(
                "generator {} times g/theta is not polynomial: {}",
                i + 1,
                alg.fmt_poly(&pt.generators[i], "z")
            ),
            None => format!("g = {}", pt.g.fmt_var("z")),
        },
    );
    r.leaf(
        "(i) h R[z] <= M",
        true,
        format!("h = {} (carried by the representation)", pt.h.fmt_var("z")),
    );
    if bad.is_some() {
        return r;
    }
    let (amb, w, u) = pt.quotient_spaces();
    let Some(uc) = in_span_coords(&w, &u, amb.dim) else {
        r.leaf("(ii) quotient spaces", false, "U does not sit inside W");
        return r;
    };
    let wm = match amb.restrict(&w) {
        Ok(m) => m,
        Err(e) => {
            r.leaf("(ii) quotient spaces", false, e.to_string());
            return r;
        }
    };
    let witness = direct_summand_witness(&wm, &uc);
    let summand = matches!(witness, Ok(Some(_)));
    r.leaf(
        "(ii) M/hR[z] is a direct summand of g^{-1}R[z]/hR[z]",
        summand,
        format!(
            "dim_Q W = {}, dim_Q U = {}; {}",
            w.len(),
            u.len(),
            if summand { "R-linear projection found" } else { "no R-linear projection exists" }
        ),
    );
    let all_w = identity_basis(wm.dim);
    let dw = idempotent_dims(alg, &wm, &all_w);
    let du = idempotent_dims(alg, &wm, &uc);
    let dq: Vec<usize> = dw.iter().zip(&du).map(|(a, b)| a - b).collect();
    let deg_g = pt.g.degree().unwrap_or(0);
    let mq = projective_multiplicities(alg, &dq, Side::Left);
    let corank_ok = summand && mq.as_ref().is_some_and(|m| is_free_of_rank(alg, m, deg_g));
    r.leaf(
        "(ii) rank_R g^{-1}R[z]/M = deg g",
        corank_ok,
        format!(
            "dim e_i(quotient) = {dq:?}, multiplicities = {}, deg g = {deg_g}",
            fmt_mult(&mq)
        ),
    );
    let mu = projective_multiplicities(alg, &du, Side::Left);
    let free_u = summand
        && mu.as_ref().is_some_and(|m| {
            let total: usize = du.iter().sum();
            total % d == 0 && is_free_of_rank(alg, m, total / d)
        });
    r.leaf(
        "M/hR[z] free",
        free_u,
        format!("dim e_i(M/hR[z]) = {du:?}, multiplicities = {}", fmt_mult(&mu)),
    );
    r
}

fn fmt_mult(m: &Option<Vec<Q>>) -> String {
    match m {
        Some(v) => format!(
            "[{}]",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ),
        None => "not a projective combination".into(),
    }
}

fn identity_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            let mut e = vec![Q::zero(); n];
            e[i] = Q::one();
            e
        })
        .collect()
}

/// Checks that g^{-1} * span_R(numerators) is a free complement of M of rank deg g.
pub fn verify_complement(pt: &RationalPoint, numerators: &[AlgPoly]) -> Report {
    let alg = &pt.alg;
    let d = alg.dim;
    let theta = pt.theta.lcm(&pt.g);
    let pt = pt.with_theta(&theta);
    let s = theta.exact_div(&pt.g).expect("lcm");
    let modulus = pt.tail();
    let n = modulus.degree().unwrap_or(0);
    let (_, w, u) = pt.quotient_spaces();
    let cleared: Vec<AlgPoly> = numerators
        .iter()
        .map(|c| c.mul_scalar(&s).rem_scalar(&modulus))
        .collect();
    let c = span_basis(&left_span(alg, &cleared, n), n * d);
    let mut r = Report::new("complement");
    let mut all = u.clone();
    all.extend(c.iter().cloned());
    let sum = span_rank(&all, n * d);
    r.leaf(
        "U + C = W",
        sum == w.len() && span_eq(&all, &w, n * d),
        format!("dim U + C = {sum}, dim W = {}", w.len()),
    );
    r.leaf(
        "U and C independent",
        sum == u.len() + c.len(),
        format!("{} + {} vs {sum}", u.len(), c.len()),
    );
    let deg_g = pt.g.degree().unwrap_or(0);
    r.leaf(
        "C free of rank deg g",
        c.len() == d * numerators.len() && numerators.len() == deg_g,
        format!("{} generators, dim_Q C = {}, deg g = {deg_g}", numerators.len(), c.len()),
    );
    r
}

/// theta = lcm_i prod_j (z - alpha_ij) and c = sum_i (theta / prod_j (z - alpha_ij)) e_i.
pub fn iota_theta(alg: &Algebra, exponents: &[Vec<Q>]) -> (Poly, AlgPoly) {
    let rows: Vec<Poly> = exponents
        .iter()
        .map(|row| row.iter().fold(Poly::one(), |acc, a| &acc * &Poly::linear(a)))
        .collect();
    let theta = rows.iter().fold(Poly::one(), |acc, p| acc.lcm(p));
    let mut c = AlgPoly::zero(alg.dim);
    for (p, e) in rows.iter().zip(&alg.idempotents) {
        c = c.add(&AlgPoly::scalar_times(&theta.exact_div(p).expect("lcm"), e));
    }
    (theta, c)
}

/// iota(Phi) = V^perp [sum_i prod_j (z - alpha_ij) e_i]^{-1}.
pub fn embed_iota(npt: &NormalizedPoint) -> Result<RationalPoint> {
    let pt = &npt.point;
    let alg = &pt.alg;
    let ctx = PairingContext::for_kernel(&pt.kernel)?;
    let pm = perp_of_kernel(alg, &pt.kernel, &ctx)?;
    let (theta, c) = iota_theta(alg, &pt.exponents);
    let mut gens: Vec<AlgPoly> = pm.basis.iter().map(|b| alg.mul_poly(b, &c)).collect();
    for k in 0..theta.degree().unwrap_or(0) {
        gens.push(c.mul_scalar(&ctx.h.shift(k)));
    }
    let rp = RationalPoint {
        alg: alg.clone(),
        theta: theta.clone(),
        generators: gens,
        h: ctx.h.clone(),
        g: theta,
    };
    Ok(rp.reduced())
}

impl RationalPoint {
    /// Replaces the generators by a Q-basis of their R-span modulo theta h R[z].
    pub fn reduced(&self) -> RationalPoint {
        let modulus = self.tail();
        let n = modulus.degree().unwrap_or(0);
        let d = self.alg.dim;
        let mut vs = Vec::new();
        for gen in &self.generators {
            let p = gen.rem_scalar(&modulus);
            for s in 0..d {
                vs.push(self.alg.lmul_poly(&self.alg.basis(s), &p).flat(n));
            }
        }
        let basis = span_basis(&vs, n * d);
        RationalPoint {
            generators: basis.iter().map(|v| AlgPoly::from_flat(d, v)).collect(),
            ..self.clone()
        }
    }
}

/// V^perp (sum_i (z - gamma_i) e_i) = W^perp for W the successor kernel of V under gamma.
pub fn verify_perp_shift(alg: &Algebra, v: &KernelBasis, gamma: &[Q]) -> Result<bool> {
    let w = successor_kernel(alg, v, gamma)?;
    let ctx = PairingContext::for_kernel(v)?.join(&PairingContext::for_kernel(&w)?)?;
    let pv = perp_of_kernel(alg, v, &ctx)?;
    let pw = perp_of_kernel(alg, &w, &ctx)?;
    let g = crate::adelic::normalizer(alg, &gamma.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
    let big = gamma
        .iter()
        .fold(Poly::one(), |acc, x| acc.lcm(&Poly::linear(x)));
    let modulus = &ctx.h * &big;
    let n = modulus.degree().unwrap_or(0);
    let d = alg.dim;
    let mut lhs_gens: Vec<AlgPoly> = pv.basis.iter().map(|b| alg.mul_poly(b, &g)).collect();
    for k in 0..big.degree().unwrap_or(0) {
        lhs_gens.push(g.mul_scalar(&ctx.h.shift(k)));
    }
    let lhs: Vec<Vec<Q>> = left_span(alg, &lhs_gens, n + 1)
        .into_iter()
        .map(|v| AlgPoly::from_flat(d, &v).rem_scalar(&modulus).flat(n))
        .collect();
    let rhs: Vec<Vec<Q>> = pw.truncated(n).iter().map(|p| p.flat(n)).collect();
    Ok(span_eq(&lhs, &rhs, n * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::{build_point, immediate_successor, normalize};
    use crate::catalog;
    use crate::examples;
    use crate::scalar::{q, qr};

    fn e1(alg: &Algebra) -> Vec<Q> {
        alg.one.clone()
    }

    #[test]
    fn pairing_examples() {
        let alg = catalog::scalar();
        let z2 = AlgPoly::scalar_times(&Poly::monomial(q(1), 2), &e1(&alg));
        let f = QuasiExp::term(q(1), AlgPoly::scalar_times(&Poly::x(), &e1(&alg)));
        assert_eq!(pairing(&alg, &z2, &f), vec![q(2)]);
        assert_eq!(pairing_alt(&alg, &z2, &f), vec![q(2)]);
        let cube = AlgPoly::scalar_times(&Poly::linear(&q(1)).pow(3), &e1(&alg));
        let g = QuasiExp::term(q(1), AlgPoly::scalar_times(&Poly::from_ints(&[3, -1, 5]), &e1(&alg)));
        assert_eq!(pairing(&alg, &cube, &g), vec![q(0)]);
        assert_eq!(pairing_alt(&alg, &cube, &g), vec![q(0)]);
        let dual = catalog::dual_numbers();
        let z = AlgPoly::scalar_times(&Poly::x(), &dual.one);
        let eps = QuasiExp::exp_elem(q(0), &[q(0), q(1)]);
        assert_eq!(pairing(&dual, &z, &eps), vec![q(0), q(0)]);
        assert_eq!(pairing_alt(&dual, &z, &eps), vec![q(0), q(0)]);
    }

    #[test]
    fn ex61_perp() {
        let (alg, v) = examples::ex61();
        let ctx = PairingContext::for_kernel(&v).unwrap();
        assert_eq!(ctx.h, Poly::linear(&q(1)).pow(3));
        let pm = perp_of_kernel(&alg, &v, &ctx).unwrap();
        assert_eq!(pm.basis.len(), 2 * 3 - 4);
        assert!(pm.contains(&examples::ex61_perp_generator(true)));
        assert!(!pm.contains(&examples::ex61_perp_generator(false)));
        let good = examples::ex61_iota_cleared(2, true);
        assert!(verify_candidate_generators(&alg, &pm, &good).failures().is_empty());
        let bad = examples::ex61_iota_cleared(2, false);
        assert!(!verify_candidate_generators(&alg, &pm, &bad).failures().is_empty());
        // drop the eps (z - 1) term
        let eps_t = AlgPoly::scalar_times(&Poly::linear(&q(1)), &[q(0), q(1)]);
        let mut dropped = good.clone();
        dropped[0] = good[0].add(&eps_t);
        assert!(!verify_candidate_generators(&alg, &pm, &dropped).failures().is_empty());
        assert!(!verify_candidate_generators(&alg, &pm, &good[1..]).failures().is_empty());
        assert!(double_perp(&alg, &v, &ctx).unwrap());
    }

    #[test]
    fn ex62_perp_conditions() {
        let (alg, v) = examples::ex62();
        let ctx = PairingContext::for_kernel(&v).unwrap();
        let pm = perp_of_kernel(&alg, &v, &ctx).unwrap();
        // p11'(1) + p11(1) = p21'(1) + p21(1) = p22''(0) - p22(0) = 0
        let n = ctx.deg();
        let funcs = |p: &AlgPoly| {
            let c = &p.coords;
            vec![
                c[0].deriv().eval(&q(1)) + c[0].eval(&q(1)),
                c[1].deriv().eval(&q(1)) + c[1].eval(&q(1)),
                c[2].deriv_n(2).eval(&q(0)) - c[2].eval(&q(0)),
            ]
        };
        for b in &pm.basis {
            assert!(funcs(b).iter().all(|x| x.is_zero()));
        }
        assert_eq!(pm.basis.len(), 3 * n - 3);
    }

    #[test]
    fn trivial_perp() {
        let alg = catalog::dual_numbers();
        let ctx = PairingContext::new(vec![q(0)], vec![2]).unwrap();
        let pm = perp_of_quasi(&alg, &[], &ctx).unwrap();
        assert_eq!(pm.basis.len(), 4);
        let (_, v) = examples::ex61();
        assert!(matches!(perp_of_kernel(&alg, &v, &ctx), Err(Error::Context(_))));
    }

    #[test]
    fn double_perp_ex63() {
        let (alg, v) = examples::ex63();
        let ctx = PairingContext::for_kernel(&v).unwrap();
        assert!(double_perp(&alg, &v, &ctx).unwrap());
    }

    #[test]
    fn iota_ex61() {
        let (alg, v) = examples::ex61();
        let pt = build_point(&alg, &v).unwrap();
        let rp = embed_iota(&normalize(&pt)).unwrap();
        assert_eq!(rp.theta, Poly::linear(&q(1)).pow(2));
        assert!(is_rational_point(&rp).failures().is_empty(), "{:?}", is_rational_point(&rp));
        let cpl = verify_complement(&rp, &examples::ex61_complement());
        assert!(cpl.failures().is_empty(), "{cpl:?}");
        let stated = RationalPoint {
            alg: alg.clone(),
            theta: rp.theta.clone(),
            generators: examples::ex61_iota_cleared(2, true),
            h: examples::printed_sandwich_h("ex61"),
            g: rp.theta.clone(),
        };
        assert!(stated.same_module(&rp));
        assert!(rp.contains_multiples(&examples::printed_sandwich_h("ex61")));
        let printed = RationalPoint {
            generators: examples::ex61_iota_cleared(2, false),
            ..stated
        };
        assert!(!printed.same_module(&rp));
    }

    #[test]
    fn iota_ex62_and_ex63() {
        let (alg, v) = examples::ex62();
        let rp = embed_iota(&normalize(&build_point(&alg, &v).unwrap())).unwrap();
        assert_eq!(rp.theta, Poly::from_ints(&[0, -1, 1]));
        assert!(is_rational_point(&rp).failures().is_empty());
        assert!(verify_complement(&rp, &examples::ex62_complement()).failures().is_empty());
        let mk = |corrected| RationalPoint {
            alg: alg.clone(),
            theta: rp.theta.clone(),
            generators: examples::ex62_iota_cleared(3, corrected),
            h: examples::printed_sandwich_h("ex62"),
            g: rp.theta.clone(),
        };
        assert!(mk(true).same_module(&rp));
        assert!(!mk(false).same_module(&rp));
        assert!(rp.contains_multiples(&examples::printed_sandwich_h("ex62")));

        let (alg, v) = examples::ex63();
        let rp = embed_iota(&normalize(&build_point(&alg, &v).unwrap())).unwrap();
        assert_eq!(rp.theta, Poly::monomial(q(1), 2));
        assert!(is_rational_point(&rp).failures().is_empty());
        assert!(verify_complement(&rp, &examples::ex63_complement()).failures().is_empty());
        let mk = |corrected| RationalPoint {
            alg: alg.clone(),
            theta: rp.theta.clone(),
            generators: examples::ex63_iota_cleared(2, corrected),
            h: examples::printed_sandwich_h("ex63"),
            g: rp.theta.clone(),
        };
        assert!(mk(true).same_module(&rp));
        assert!(!mk(false).same_module(&rp));
    }

    #[test]
    fn rational_point_basics() {
        let alg = catalog::dual_numbers();
        let whole = RationalPoint {
            alg: alg.clone(),
            theta: Poly::one(),
            generators: vec![AlgPoly::constant(&alg.one)],
            h: Poly::one(),
            g: Poly::one(),
        };
        assert!(is_rational_point(&whole).failures().is_empty());
        let eps = RationalPoint {
            alg: alg.clone(),
            theta: Poly::one(),
            generators: vec![AlgPoly::constant(&[q(0), q(1)])],
            h: Poly::x(),
            g: Poly::one(),
        };
        let rep = is_rational_point(&eps);
        assert!(!rep.failures().is_empty());
        assert!(!whole.same_module(&eps));
    }

    #[test]
    fn perp_shifts() {
        let alg = catalog::scalar();
        let v = KernelBasis::new(&alg, vec![vec![(q(0), AlgPoly::constant(&alg.one))]]).unwrap();
        assert!(verify_perp_shift(&alg, &v, &[q(0)]).unwrap());
        let (alg, v) = examples::ex61();
        assert!(verify_perp_shift(&alg, &v, &[q(0)]).unwrap());
        let (alg, v) = examples::ex62();
        assert!(verify_perp_shift(&alg, &v, &[q(1), q(1)]).unwrap());
        assert!(verify_perp_shift(&alg, &v, &[qr(1, 2), q(-3)]).unwrap());
    }

    #[test]
    fn iota_constant_on_fibers() {
        let (alg, v) = examples::ex62();
        let pt = build_point(&alg, &v).unwrap();
        let s = immediate_successor(&pt, &[q(2), q(0)]).unwrap();
        let a = embed_iota(&normalize(&pt)).unwrap();
        let b = embed_iota(&normalize(&s)).unwrap();
        assert!(a.same_module(&b));
        let (alg, v) = examples::ex61();
        let other = embed_iota(&normalize(&build_point(&alg, &v).unwrap())).unwrap();
        let one = KernelBasis::new(&alg, vec![vec![(q(1), AlgPoly::constant(&alg.one))]]).unwrap();
        let triv = embed_iota(&normalize(&build_point(&alg, &one).unwrap())).unwrap();
        assert!(!other.same_module(&triv));
    }
}
