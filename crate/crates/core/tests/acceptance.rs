//! Acceptance run: one line per criterion, then the failing checks with their witnesses.
//! The worked examples are compared with the values as printed; failures are reported,
//! never converted into passes.

use std::time::{Duration, Instant};

use adelgr::adelic::{build_point, normalize};
use adelgr::algebra::Algebra;
use adelgr::bispectral::first_difference;
use adelgr::catalog;
use adelgr::diffop::{invert_matrix, operator_from_kernel, DiffOp};
use adelgr::error::Error;
use adelgr::examples;
use adelgr::module::polynomial_summand_witness;
use adelgr::poly::{AlgPoly, Poly};
use adelgr::props::{basis_change_property, point_properties, DEFAULT_SEED};
use adelgr::quasi::{r_valued_det, wronski};
use adelgr::rational::{
    embed_iota, is_rational_point, perp_of_kernel, verify_candidate_generators, verify_complement,
    PairingContext, RationalPoint,
};
use adelgr::report::{Format, Report};
use adelgr::scalar::q;

fn op_check(alg: &Algebra, name: &str, got: &DiffOp, printed: &DiffOp, corrected: Option<&DiffOp>) -> Report {
    let ok = got == printed;
    let mut w = if ok {
        String::new()
    } else {
        first_difference(alg, got, printed)
    };
    if let (false, Some(c)) = (ok, corrected) {
        w.push_str(if got == c {
            "; computed operator satisfies P f = 0 on the stated kernel and equals the corrected form"
        } else {
            "; computed operator also differs from the corrected form"
        });
    }
    Report::check(name, ok, w)
}

/// Printed iota generators against the computed image, same theta, h, g.
fn iota_check(computed: &RationalPoint, printed: Vec<AlgPoly>, corrected: Vec<AlgPoly>) -> Report {
    let as_point = |gens| RationalPoint {
        generators: gens,
        ..computed.clone()
    };
    let ok = computed.same_module(&as_point(printed));
    let w = if ok {
        String::new()
    } else if computed.same_module(&as_point(corrected)) {
        "printed basis spans a different module; the corrected basis matches the computed image".into()
    } else {
        "printed basis spans a different module".into()
    };
    Report::check("iota basis as printed", ok, w)
}

fn criterion1() -> Report {
    let (alg, v) = examples::ex61();
    let mut r = Report::new("Example 6.1 reproduction");
    let p = operator_from_kernel(&alg, &v).expect("kernel is nondegenerate");
    r.push(op_check(
        &alg,
        "operator equals the printed P",
        &p,
        &examples::ex61_printed_operator(&alg),
        Some(&examples::ex61_operator(&alg)),
    ));
    let pt = build_point(&alg, &v).expect("accepted");
    let npt = normalize(&pt);
    let z1 = Poly::from_ints(&[-1, 1]);
    r.leaf(
        "normalizer (z-1)^2",
        npt.normalizer == AlgPoly::scalar_times(&z1.pow(2), &alg.one),
        alg.fmt_poly(&npt.normalizer, "z"),
    );
    let ctx = PairingContext::for_kernel(&v).expect("context");
    let pm = perp_of_kernel(&alg, &v, &ctx).expect("perp");
    let mut cand = verify_candidate_generators(&alg, &pm, &[examples::ex61_perp_generator(false)]);
    cand.name = "printed V^perp generator".into();
    if !cand.pass {
        let fixed = verify_candidate_generators(&alg, &pm, &[examples::ex61_perp_generator(true)]);
        if let Some(first) = cand.children.iter_mut().find(|c| !c.pass) {
            let w = first.witness.get_or_insert_with(String::new);
            w.push_str(&format!(
                "; with the (z-1)^2 coefficient -(1-eps)/2 the generator check {}",
                if fixed.pass { "passes" } else { "still fails" }
            ));
        }
    }
    r.push(cand);
    let rp = embed_iota(&npt).expect("iota");
    r.push(is_rational_point(&rp));
    r.push(verify_complement(&rp, &examples::ex61_complement()));
    r
}

fn criterion2() -> Report {
    let (alg, v) = examples::ex62();
    let mut r = Report::new("Example 6.2 reproduction");
    let p = operator_from_kernel(&alg, &v).expect("kernel is nondegenerate");
    r.push(op_check(&alg, "operator equals the printed P", &p, &examples::ex62_printed_operator(&alg), None));
    let ctx = PairingContext::for_kernel(&v).expect("context");
    let pm = perp_of_kernel(&alg, &v, &ctx).expect("perp");
    let n = ctx.deg() + 2;
    let conds = |p: &AlgPoly| {
        let (one, zero) = (q(1), q(0));
        let [a, b, c] = [&p.coords[0], &p.coords[1], &p.coords[2]];
        [
            a.deriv().eval(&one) + a.eval(&one),
            b.deriv().eval(&one) + b.eval(&one),
            c.deriv_n(2).eval(&zero) - c.eval(&zero),
        ]
    };
    let basis = pm.truncated(n);
    let inside = basis.iter().all(|p| conds(p).iter().all(|x| *x == q(0)));
    r.leaf(
        "V^perp is cut out by the three stated functionals",
        inside && basis.len() + 3 == 3 * n,
        format!("dim_Q below degree {n}: {} (expected {})", basis.len(), 3 * n - 3),
    );
    let rp = embed_iota(&normalize(&build_point(&alg, &v).expect("accepted"))).expect("iota");
    let k = rp.theta.degree().unwrap_or(0) + rp.h.degree().unwrap_or(0);
    r.push(iota_check(
        &rp,
        examples::ex62_iota_cleared(k, false),
        examples::ex62_iota_cleared(k, true),
    ));
    r.push(is_rational_point(&rp));
    r
}

fn criterion3() -> Report {
    let (alg, v) = examples::ex63();
    let mut r = Report::new("Example 6.3 reproduction");
    let p = operator_from_kernel(&alg, &v).expect("kernel is nondegenerate");
    r.push(op_check(
        &alg,
        "operator equals the printed P",
        &p,
        &examples::ex63_printed_operator(&alg),
        Some(&examples::ex63_operator(&alg)),
    ));
    let inv = invert_matrix(&alg, &v.stripped_wronskian(2)).expect("Wronski matrix invertible");
    let printed = examples::ex63_printed_block_inverse(&alg);
    let names = ["alpha", "beta", "gamma", "delta"];
    let mut bad = Vec::new();
    for (i, nm) in names.iter().enumerate() {
        let (a, b) = (&inv[i / 2][i % 2], &printed[i / 2][i % 2]);
        if a != b {
            bad.push(format!("{nm}: computed {} vs printed {}", a.fmt(&alg), b.fmt(&alg)));
        }
    }
    r.leaf("block inverse equals the printed alpha, beta, gamma, delta", bad.is_empty(), bad.join("; "));
    let rp = embed_iota(&normalize(&build_point(&alg, &v).expect("accepted"))).expect("iota");
    let k = rp.theta.degree().unwrap_or(0) + rp.h.degree().unwrap_or(0);
    r.push(iota_check(
        &rp,
        examples::ex63_iota_cleared(k, false),
        examples::ex63_iota_cleared(k, true),
    ));
    r.push(is_rational_point(&rp));
    r
}

fn criterion4() -> Report {
    let (alg, v) = examples::ex46();
    let mut r = Report::new("Example 4.6 negative control");
    let fs: Vec<AlgPoly> = (0..v.len()).map(|j| v.element(j).component(&q(0))).collect();
    let pi = polynomial_summand_witness(&alg, &fs, 3).expect("inside ker d^3");
    r.leaf("direct summand of ker d^3 (witness found)", pi.is_some(), "");
    let (nondeg, det) = v.nondegeneracy(&alg);
    r.leaf("rejected by is_nondegenerate", !nondeg, format!("det = {det}"));
    let reason = match build_point(&alg, &v) {
        Err(Error::Rejected { reason, .. }) => reason,
        Err(e) => e.to_string(),
        Ok(_) => "accepted".into(),
    };
    r.leaf("build_point refuses with reason degenerate", reason == "degenerate", reason);
    r
}

fn criterion5() -> Report {
    let (alg, v) = examples::ex61();
    let mut r = Report::new("Wronskian determinant of Example 6.1");
    let det = r_valued_det(&alg, &wronski(&v.quasi())).expect("determinant");
    let expected = examples::ex61_printed_det_poly();
    let shown = det.fmt(&alg);
    match det.terms.iter().next() {
        Some((a, p)) if det.terms.len() == 1 => {
            r.leaf("polynomial part 1 - 2 eps x - (1+eps) x^2", *p == expected, shown.clone());
            r.leaf(
                "exponential factor e^{2x} (printed as e^x)",
                *a == q(2),
                format!("exponent {a}"),
            );
        }
        _ => r.leaf("single exponential term", false, shown),
    }
    let (nonzero, flat) = v.nondegeneracy(&alg);
    r.leaf("flattened determinant nonzero", nonzero, flat.to_string());
    r
}

fn criterion6() -> Report {
    let mut r = Report::new("property suite");
    for (i, alg) in catalog::all_algebras().iter().enumerate() {
        r.push(point_properties(alg, DEFAULT_SEED.wrapping_add(i as u64), 100));
    }
    r
}

fn criterion7() -> Report {
    basis_change_property(DEFAULT_SEED, 50)
}

fn main() {
    let criteria: [(usize, fn() -> Report, Option<Duration>); 7] = [
        (1, criterion1, Some(Duration::from_secs(2))),
        (2, criterion2, Some(Duration::from_secs(2))),
        (3, criterion3, Some(Duration::from_secs(3))),
        (4, criterion4, None),
        (5, criterion5, None),
        (6, criterion6, Some(Duration::from_secs(60))),
        (7, criterion7, None),
    ];
    let mut details = Vec::new();
    let mut passed = 0;
    for (n, f, limit) in criteria {
        let t = Instant::now();
        let mut rep = f();
        let el = t.elapsed();
        if let Some(lim) = limit {
            rep.leaf(
                format!("runtime under {}s", lim.as_secs()),
                el < lim,
                format!("{:.2}s", el.as_secs_f64()),
            );
        }
        let tag = if rep.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {tag} ({:.2}s) {}", el.as_secs_f64(), rep.name);
        if rep.pass {
            passed += 1;
        } else {
            details.push((n, rep));
        }
    }
    println!("{passed}/7 criteria passed");
    for (n, rep) in details {
        println!("\ncriterion {n} failures:");
        for f in rep.failures() {
            println!("  {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
        }
        print!("{}", rep.emit(Format::Text));
    }
}
