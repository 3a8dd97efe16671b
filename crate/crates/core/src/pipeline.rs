//! The worked examples as end-to-end golden cases.
//!
//! Every stage's exact output is collected into a JSON object and diffed against
//! `catalog/golden/<name>.json`; the file is only rewritten when `bless` is set.

use crate::adelic::{build_point, normalize, AdelicPoint};
use crate::algebra::Algebra;
use crate::bispectral::{bispectral_data, first_difference, verify_bispectral};
use crate::diffop::{invert_matrix, DiffOp};
use crate::error::{Error, Result};
use crate::examples;
use crate::io::{alg_poly_to_value, poly_to_value, pretty, rational_point_to_json, read_file};
use crate::module::polynomial_summand_witness;
use crate::poly::{AlgPoly, Poly};
use crate::quasi::{check_theorem_a, r_valued_det, wronski, KernelBasis};
use crate::rational::{
    double_perp, embed_iota, is_rational_point, perp_of_kernel, verify_candidate_generators,
    verify_complement, PairingContext, PerpModule, RationalPoint,
};
use crate::report::Report;
use crate::scalar::{q, Q};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};

pub const EXAMPLE_NAMES: [&str; 4] = ["dual-numbers", "a2", "kronecker", "degenerate-m2"];

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog").join("golden")
}

/// Runs one example and compares (or, with `bless`, records) its golden values.
pub fn run_example(name: &str, golden_dir: &Path, bless: bool) -> Result<Report> {
    let (mut rep, values) = compute_example(name)?;
    let path = golden_dir.join(format!("{name}.json"));
    let mut g = Report::new("golden values");
    if bless {
        std::fs::create_dir_all(golden_dir)?;
        std::fs::write(&path, pretty(&Value::Object(values)))?;
        g.leaf("blessed", true, path.display().to_string());
    } else if !path.exists() {
        g.leaf(
            "golden file present",
            false,
            format!("{} missing; rerun with --bless", path.display()),
        );
    } else {
        let stored: Value = serde_json::from_str(&read_file(&path)?)?;
        diff_golden(&values, &stored, &mut g);
    }
    rep.push(g);
    Ok(rep)
}

fn diff_golden(values: &Map<String, Value>, stored: &Value, g: &mut Report) {
    let Some(stored) = stored.as_object() else {
        g.leaf("golden file is an object", false, "top level is not a JSON object");
        return;
    };
    for (k, v) in values {
        match stored.get(k) {
            None => g.leaf(k.clone(), false, "absent from the golden file"),
            Some(s) => {
                let w = first_mismatch(k, v, s);
                g.leaf(k.clone(), w.is_none(), w.unwrap_or_default());
            }
        }
    }
    for k in stored.keys().filter(|k| !values.contains_key(*k)) {
        g.leaf(k.clone(), false, "in the golden file but no longer computed");
    }
}

/// Path and both values at the first place two JSON trees differ.
fn first_mismatch(path: &str, a: &Value, b: &Value) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                let p = format!("{path}.{k}");
                match y.get(k) {
                    None => return Some(format!("{p}: computed {v}, golden has no entry")),
                    Some(w) => {
                        if let Some(m) = first_mismatch(&p, v, w) {
                            return Some(m);
                        }
                    }
                }
            }
            y.keys()
                .find(|k| !x.contains_key(*k))
                .map(|k| format!("{path}.{k}: only in golden"))
        }
        (Value::Array(x), Value::Array(y)) => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                if let Some(m) = first_mismatch(&format!("{path}[{i}]"), v, w) {
                    return Some(m);
                }
            }
            (x.len() != y.len())
                .then(|| format!("{path}: length {} vs golden {}", x.len(), y.len()))
        }
        _ => (a != b).then(|| format!("{path}: computed {a}, golden {b}")),
    }
}

/// Pipeline checks plus the values that go into the golden file.
pub fn compute_example(name: &str) -> Result<(Report, Map<String, Value>)> {
    match name {
        "dual-numbers" => adelic_example(Spec {
            name,
            data: examples::ex61(),
            reference: examples::ex61_operator,
            iota: |k| examples::ex61_iota_cleared(k, true),
            complement: examples::ex61_complement(),
            printed_h: examples::printed_sandwich_h("ex61"),
            extra: ex61_extra,
        }),
        "a2" => adelic_example(Spec {
            name,
            data: examples::ex62(),
            reference: examples::ex62_printed_operator,
            iota: |k| examples::ex62_iota_cleared(k, true),
            complement: examples::ex62_complement(),
            printed_h: examples::printed_sandwich_h("ex62"),
            extra: ex62_extra,
        }),
        "kronecker" => adelic_example(Spec {
            name,
            data: examples::ex63(),
            reference: examples::ex63_operator,
            iota: |k| examples::ex63_iota_cleared(k, true),
            complement: examples::ex63_complement(),
            printed_h: examples::printed_sandwich_h("ex63"),
            extra: ex63_extra,
        }),
        "degenerate-m2" => degenerate_example(),
        other => Err(Error::Invalid(format!(
            "unknown example {other:?}; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}

struct Spec<'a> {
    name: &'a str,
    data: (Algebra, KernelBasis),
    reference: fn(&Algebra) -> DiffOp,
    iota: fn(usize) -> Vec<AlgPoly>,
    complement: Vec<AlgPoly>,
    printed_h: Poly,
    extra: fn(&Algebra, &AdelicPoint, &PerpModule, &mut Report, &mut Map<String, Value>) -> Result<()>,
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).expect("serializer emits valid JSON")
}

fn adelic_example(spec: Spec) -> Result<(Report, Map<String, Value>)> {
    let (alg, v) = &spec.data;
    let mut rep = Report::new(format!("example {}", spec.name));
    let mut vals = Map::new();

    let ta = check_theorem_a(alg, v);
    rep.push(ta.report());
    let pt = build_point(alg, v)?;
    let reference = (spec.reference)(alg);
    rep.leaf(
        "operator matches the reference",
        pt.op == reference,
        if pt.op == reference {
            pt.op.fmt(alg)
        } else {
            first_difference(alg, &pt.op, &reference)
        },
    );
    let (_, det) = v.nondegeneracy(alg);
    vals.insert("operator".into(), json_of(&crate::io::operator_to_json(alg, &pt.op))["coeffs"].clone());
    vals.insert("certificate".into(), poly_to_value(&pt.certificate));
    vals.insert(
        "exponents".into(),
        json!(pt.exponents.iter().map(|r| r.iter().map(crate::io::q_to_value).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    vals.insert("flattened_det".into(), json!(det.to_string()));

    let npt = normalize(&pt);
    vals.insert("normalizer".into(), alg_poly_to_value(&npt.normalizer));

    let ctx = PairingContext::for_kernel(v)?;
    let pm = perp_of_kernel(alg, v, &ctx)?;
    vals.insert(
        "perp_basis".into(),
        json!(pm.basis.iter().map(alg_poly_to_value).collect::<Vec<_>>()),
    );
    rep.leaf("(V^perp)^perp = V", double_perp(alg, v, &ctx)?, "");
    (spec.extra)(alg, &pt, &pm, &mut rep, &mut vals)?;

    let rp = embed_iota(&npt)?;
    vals.insert("iota".into(), json_of(&rational_point_to_json(&rp)));
    rep.push(is_rational_point(&rp));
    rep.push(verify_complement(&rp, &spec.complement));
    let kmax = (rp.theta.degree().unwrap_or(0) + rp.h.degree().unwrap_or(0)).max(1);
    let printed = RationalPoint {
        alg: alg.clone(),
        theta: rp.theta.clone(),
        generators: (spec.iota)(kmax),
        h: rp.h.clone(),
        g: rp.g.clone(),
    };
    rep.leaf(
        "iota image equals the reference basis",
        rp.same_module(&printed),
        format!("theta = {}, h = {}", rp.theta, rp.h),
    );
    rep.leaf(
        "iota image contains h R[z] for the printed h",
        rp.contains_multiples(&spec.printed_h),
        format!("h = {}", spec.printed_h),
    );

    let bd = bispectral_data(alg, &pt.op, &pt.certificate)?;
    vals.insert(
        "bispectral".into(),
        json!({
            "g": poly_to_value(&bd.g),
            "h": poly_to_value(&bd.h),
            "q_prime": json_of(&crate::io::operator_to_json(alg, &bd.q_prime))["coeffs"].clone(),
        }),
    );
    rep.push(verify_bispectral(alg, &bd.p_prime, &bd.q_prime, &bd.g, &bd.h, &bd.l)?);
    Ok((rep, vals))
}

fn ex61_extra(
    alg: &Algebra,
    pt: &AdelicPoint,
    pm: &PerpModule,
    rep: &mut Report,
    vals: &mut Map<String, Value>,
) -> Result<()> {
    rep.push(verify_candidate_generators(
        alg,
        pm,
        &[examples::ex61_perp_generator(true)],
    ));
    let d = r_valued_det(alg, &wronski(&pt.kernel.quasi()))?;
    vals.insert("r_valued_det".into(), json!(d.fmt(alg)));
    Ok(())
}

/// The three functionals p11'(1) + p11(1), p21'(1) + p21(1), p22''(0) - p22(0) cut out V^perp.
fn ex62_extra(
    _alg: &Algebra,
    _pt: &AdelicPoint,
    pm: &PerpModule,
    rep: &mut Report,
    _vals: &mut Map<String, Value>,
) -> Result<()> {
    let n = pm.ctx.deg() + 2;
    let f = |p: &AlgPoly| {
        let (one, zero) = (q(1), q(0));
        let a = &p.coords[0];
        let b = &p.coords[1];
        let c = &p.coords[2];
        [
            a.deriv().eval(&one) + a.eval(&one),
            b.deriv().eval(&one) + b.eval(&one),
            c.deriv_n(2).eval(&zero) - c.eval(&zero),
        ]
    };
    let basis = pm.truncated(n);
    let bad = basis.iter().find(|p| f(p).iter().any(|x| *x != Q::from_integer(0.into())));
    rep.leaf(
        "V^perp satisfies the three stated conditions",
        bad.is_none(),
        bad.map(|p| format!("{:?}", f(p).iter().map(crate::scalar::fmt_q).collect::<Vec<_>>()))
            .unwrap_or_default(),
    );
    // independent conditions on degree < n leave codimension 3
    rep.leaf(
        "V^perp has codimension 3 below the truncation degree",
        basis.len() + 3 == 3 * n,
        format!("dim {} below degree {n}", basis.len()),
    );
    Ok(())
}

fn ex63_extra(
    alg: &Algebra,
    pt: &AdelicPoint,
    _pm: &PerpModule,
    rep: &mut Report,
    vals: &mut Map<String, Value>,
) -> Result<()> {
    let inv = invert_matrix(alg, &pt.kernel.stripped_wronskian(2))
        .ok_or_else(|| Error::Consistency("Wronski matrix is not invertible".into()))?;
    let reference = examples::ex63_block_inverse(alg);
    rep.leaf(
        "block inverse matches the reference",
        inv == reference,
        "",
    );
    vals.insert(
        "block_inverse".into(),
        json!(inv
            .iter()
            .map(|row| row.iter().map(|c| c.fmt(alg)).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    Ok(())
}

/// Passing means the pair was recognized as a summand of ker d^3 and still refused.
fn degenerate_example() -> Result<(Report, Map<String, Value>)> {
    let (alg, v) = examples::ex46();
    let mut rep = Report::new("example degenerate-m2");
    let mut vals = Map::new();
    let fs: Vec<AlgPoly> = (0..v.len()).map(|j| v.element(j).component(&q(0))).collect();
    let pi = polynomial_summand_witness(&alg, &fs, 3)?;
    rep.leaf(
        "F1 R + F2 R is a direct summand of ker d^3",
        pi.is_some(),
        if pi.is_some() { "projection found" } else { "no R-linear projection exists" },
    );
    let (nondeg, det) = v.nondegeneracy(&alg);
    rep.leaf("flattened Wronskian vanishes", !nondeg, det.to_string());
    vals.insert("flattened_det".into(), json!(det.to_string()));
    let reason = match build_point(&alg, &v) {
        Err(Error::Rejected { reason, .. }) => reason,
        Err(e) => return Err(e),
        Ok(_) => "accepted".into(),
    };
    rep.leaf("build_point refuses with reason degenerate", reason == "degenerate", reason.clone());
    vals.insert("rejection".into(), json!(reason));
    let (_, vp) = examples::ex46_printed();
    let printed = match build_point(&alg, &vp) {
        Err(Error::Rejected { reason, .. }) => reason,
        Err(e) => return Err(e),
        Ok(_) => "accepted".into(),
    };
    rep.leaf("printed pair refused as not free", printed == "freeness", printed.clone());
    vals.insert("printed_rejection".into(), json!(printed));
    Ok((rep, vals))
}
