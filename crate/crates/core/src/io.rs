//! JSON file formats. Rationals are strings "n" or "p/q".

use std::path::{Path, PathBuf};

use crate::adelic::AdelicPoint;
use crate::algebra::{Algebra, Elem};
use crate::catalog;
use crate::diffop::{DiffOp, RatAlg};
use crate::error::{parse_err, Result};
use crate::poly::{AlgPoly, Poly};
use crate::quasi::KernelBasis;
use crate::rational::RationalPoint;
use crate::scalar::{parse_q, Q};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_vec(v: &[String], path: &str) -> Result<Vec<Q>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_q(s).map_err(|e| parse_err(format!("{path}[{i}]"), e.to_string())))
        .collect()
}

fn parse_elem(v: &[String], d: usize, path: &str) -> Result<Elem> {
    let e = parse_vec(v, path)?;
    if e.len() != d {
        return Err(parse_err(
            path,
            format!("expected {d} coordinates, got {}", e.len()),
        ));
    }
    Ok(e)
}

/// Wraps serde_json errors with line/column diagnostics.
fn from_str<T: for<'de> Deserialize<'de>>(s: &str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| {
        parse_err(
            format!("{what} (line {}, column {})", e.line(), e.column()),
            e.to_string(),
        )
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    basis_names: Vec<String>,
    structure_constants: Vec<Vec<Vec<String>>>,
    one: Vec<String>,
    idempotents: Vec<Vec<String>>,
    #[serde(default = "yes")]
    split: bool,
}

fn yes() -> bool {
    true
}

pub fn parse_algebra(name: &str, s: &str) -> Result<Algebra> {
    let f: AlgebraFile = from_str(s, "algebra")?;
    let d = f.dim;
    if f.basis_names.len() != d {
        return Err(parse_err(
            "basis_names",
            format!("expected {d} names, got {}", f.basis_names.len()),
        ));
    }
    if f.structure_constants.len() != d {
        return Err(parse_err("structure_constants", format!("expected {d} slices")));
    }
    let mut c = Vec::with_capacity(d);
    for (i, sl) in f.structure_constants.iter().enumerate() {
        if sl.len() != d {
            return Err(parse_err(
                format!("structure_constants[{i}]"),
                format!("expected {d} rows"),
            ));
        }
        let mut rows = Vec::with_capacity(d);
        for (j, r) in sl.iter().enumerate() {
            rows.push(parse_elem(r, d, &format!("structure_constants[{i}][{j}]"))?);
        }
        c.push(rows);
    }
    let one = parse_elem(&f.one, d, "one")?;
    let idem = f
        .idempotents
        .iter()
        .enumerate()
        .map(|(i, e)| parse_elem(e, d, &format!("idempotents[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if !f.split {
        return Err(parse_err(
            "split",
            "only split algebras are supported (primitivity cannot be certified otherwise)",
        ));
    }
    Algebra::new(name.to_string(), f.basis_names, c, one, idem, f.split)
}

pub fn algebra_to_json(a: &Algebra) -> String {
    let f = AlgebraFile {
        dim: a.dim,
        basis_names: a.basis_names.clone(),
        structure_constants: a
            .c
            .iter()
            .map(|sl| sl.iter().map(|r| qs(r)).collect())
            .collect(),
        one: qs(&a.one),
        idempotents: a.idempotents.iter().map(|e| qs(e)).collect(),
        split: a.split,
    };
    serde_json::to_string_pretty(&f).unwrap()
}

pub fn poly_to_value(p: &Poly) -> Value {
    Value::from(qs(p.coeffs()))
}

pub fn poly_from_value(v: &Value, path: &str) -> Result<Poly> {
    let s: Vec<String> = serde_json::from_value(v.clone())
        .map_err(|e| parse_err(path, format!("expected list of rationals: {e}")))?;
    Ok(Poly::new(parse_vec(&s, path)?))
}

pub fn alg_poly_to_value(p: &AlgPoly) -> Value {
    Value::from(p.to_coeffs().iter().map(|c| qs(c)).collect::<Vec<_>>())
}

pub fn alg_poly_from_value(v: &Value, d: usize, path: &str) -> Result<AlgPoly> {
    let s: Vec<Vec<String>> = serde_json::from_value(v.clone()).map_err(|e| {
        parse_err(
            path,
            format!("expected list of coefficient vectors: {e}"),
        )
    })?;
    let cs = s
        .iter()
        .enumerate()
        .map(|(k, c)| parse_elem(c, d, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgPoly::from_coeffs(d, &cs))
}

pub fn q_to_value(x: &Q) -> Value {
    Value::from(x.to_string())
}

pub fn q_from_value(v: &Value, path: &str) -> Result<Q> {
    let s = v
        .as_str()
        .ok_or_else(|| parse_err(path, "expected rational string"))?;
    parse_q(s).map_err(|e| parse_err(path, e.to_string()))
}

pub fn elem_to_value(e: &[Q]) -> Value {
    Value::from(qs(e))
}

pub fn elem_from_value(v: &Value, d: usize, path: &str) -> Result<Elem> {
    let s: Vec<String> = serde_json::from_value(v.clone())
        .map_err(|e| parse_err(path, format!("expected coordinate list: {e}")))?;
    parse_elem(&s, d, path)
}

pub(crate) fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("{path}.{key}"), "missing field"))
}

pub(crate) fn parse_value(s: &str, what: &str) -> Result<Value> {
    from_str(s, what)
}

pub(crate) fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(path, "expected array"))
}

/// `"algebra"` is a catalog name, a path (relative to `base`), or an inline algebra object.
pub fn resolve_algebra(v: &Value, base: Option<&Path>) -> Result<Algebra> {
    match v {
        Value::String(name) => {
            if let Some(a) = catalog::algebra(name) {
                return Ok(a);
            }
            let path = match base {
                Some(b) => b.join(name),
                None => PathBuf::from(name),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| parse_err("algebra", format!("{}: {e}", path.display())))?;
            let stem = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| name.clone());
            parse_algebra(&stem, &text)
        }
        Value::Object(_) => parse_algebra("inline", &v.to_string()),
        _ => Err(parse_err("algebra", "expected a file name or an algebra object")),
    }
}

/// Catalog algebras are referenced by file name, others are written inline.
pub fn algebra_to_value(a: &Algebra) -> Value {
    let name = if a.name.ends_with(".json") {
        a.name.clone()
    } else {
        format!("{}.json", a.name)
    };
    match catalog::algebra(&name) {
        Some(c) if &c == a => Value::from(name),
        _ => parse_value(&algebra_to_json(a), "algebra").expect("own output parses"),
    }
}

fn kernel_basis_value(v: &KernelBasis) -> Value {
    Value::from(
        v.elems
            .iter()
            .map(|f| {
                Value::from(
                    f.iter()
                        .enumerate()
                        .map(|(i, (a, p))| {
                            json!({"idempotent": i, "exponent": a.to_string(), "poly": alg_poly_to_value(p)})
                        })
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Vec<_>>(),
    )
}

fn kernel_basis_from(alg: &Algebra, v: &Value, path: &str) -> Result<KernelBasis> {
    let m = alg.m();
    let mut elems = Vec::new();
    for (j, f) in array(v, path)?.iter().enumerate() {
        let fp = format!("{path}[{j}]");
        let entries = array(f, &fp)?;
        let mut row: Vec<Option<(Q, AlgPoly)>> = vec![None; m];
        for (t, e) in entries.iter().enumerate() {
            let ep = format!("{fp}[{t}]");
            let i = field(e, "idempotent", &ep)?
                .as_u64()
                .ok_or_else(|| parse_err(format!("{ep}.idempotent"), "expected an index"))?
                as usize;
            if i >= m {
                return Err(parse_err(
                    format!("{ep}.idempotent"),
                    format!("index {i} out of range for {m} idempotents"),
                ));
            }
            let a = q_from_value(field(e, "exponent", &ep)?, &format!("{ep}.exponent"))?;
            let p = alg_poly_from_value(field(e, "poly", &ep)?, alg.dim, &format!("{ep}.poly"))?;
            if row[i].replace((a, p)).is_some() {
                return Err(parse_err(format!("{ep}.idempotent"), format!("idempotent {i} given twice")));
            }
        }
        let row: Option<Vec<_>> = row.into_iter().collect();
        elems.push(row.ok_or_else(|| {
            parse_err(&fp, format!("every one of the {m} idempotents needs an entry"))
        })?);
    }
    KernelBasis::new(alg, elems).map_err(|e| parse_err(path, e.to_string()))
}

pub fn kernel_to_json(alg: &Algebra, v: &KernelBasis) -> String {
    pretty(&json!({"algebra": algebra_to_value(alg), "basis": kernel_basis_value(v)}))
}

pub fn parse_kernel(s: &str, base: Option<&Path>) -> Result<(Algebra, KernelBasis)> {
    let v = parse_value(s, "kernel")?;
    let alg = resolve_algebra(field(&v, "algebra", "kernel")?, base)?;
    let k = kernel_basis_from(&alg, field(&v, "basis", "kernel")?, "kernel.basis")?;
    Ok((alg, k))
}

fn operator_value(op: &DiffOp) -> Value {
    json!({
        "order": op.order().unwrap_or(0),
        "coeffs": op.coeffs.iter().map(|c| json!({
            "num": alg_poly_to_value(&c.num),
            "den": poly_to_value(&c.den),
        })).collect::<Vec<_>>(),
    })
}

fn operator_from(alg: &Algebra, v: &Value, path: &str) -> Result<DiffOp> {
    let mut coeffs = Vec::new();
    for (k, c) in array(field(v, "coeffs", path)?, path)?.iter().enumerate() {
        let cp = format!("{path}.coeffs[{k}]");
        let num = alg_poly_from_value(field(c, "num", &cp)?, alg.dim, &format!("{cp}.num"))?;
        let den = poly_from_value(field(c, "den", &cp)?, &format!("{cp}.den"))?;
        if den.is_zero() {
            return Err(parse_err(format!("{cp}.den"), "zero denominator"));
        }
        coeffs.push(RatAlg::new(num, den));
    }
    let op = DiffOp::new(alg.dim, coeffs);
    if let Some(n) = v.get("order") {
        let n = n
            .as_u64()
            .ok_or_else(|| parse_err(format!("{path}.order"), "expected an integer"))?;
        if op.order().unwrap_or(0) as u64 != n {
            return Err(parse_err(
                format!("{path}.order"),
                format!("declared order {n}, coefficients give {}", op.order().unwrap_or(0)),
            ));
        }
    }
    Ok(op)
}

pub fn operator_to_json(alg: &Algebra, op: &DiffOp) -> String {
    let mut v = operator_value(op);
    v["algebra"] = algebra_to_value(alg);
    pretty(&v)
}

pub fn parse_operator(s: &str, base: Option<&Path>) -> Result<(Algebra, DiffOp)> {
    let v = parse_value(s, "operator")?;
    let alg = resolve_algebra(field(&v, "algebra", "operator")?, base)?;
    let op = operator_from(&alg, &v, "operator")?;
    Ok((alg, op))
}

pub fn point_to_json(pt: &AdelicPoint) -> String {
    pretty(&json!({
        "algebra": algebra_to_value(&pt.alg),
        "kernel": kernel_basis_value(&pt.kernel),
        "operator": operator_value(&pt.op),
        "exponents": pt.exponents.iter().map(|r| qs(r)).collect::<Vec<_>>(),
        "certificate": poly_to_value(&pt.certificate),
    }))
}

/// Parses and re-verifies a point file.
pub fn parse_point(s: &str, base: Option<&Path>) -> Result<AdelicPoint> {
    let v = parse_value(s, "point")?;
    let alg = resolve_algebra(field(&v, "algebra", "point")?, base)?;
    let kernel = kernel_basis_from(&alg, field(&v, "kernel", "point")?, "point.kernel")?;
    let op = operator_from(&alg, field(&v, "operator", "point")?, "point.operator")?;
    let mut exponents = Vec::new();
    for (i, r) in array(field(&v, "exponents", "point")?, "point.exponents")?.iter().enumerate() {
        let rp = format!("point.exponents[{i}]");
        let row = array(r, &rp)?
            .iter()
            .enumerate()
            .map(|(j, x)| q_from_value(x, &format!("{rp}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        exponents.push(row);
    }
    let certificate = poly_from_value(field(&v, "certificate", "point")?, "point.certificate")?;
    let pt = AdelicPoint {
        alg,
        kernel,
        op,
        exponents,
        certificate,
    };
    pt.validate()?;
    Ok(pt)
}

pub fn rational_point_to_json(rp: &RationalPoint) -> String {
    pretty(&json!({
        "algebra": algebra_to_value(&rp.alg),
        "theta": poly_to_value(&rp.theta),
        "generators": rp.generators.iter().map(alg_poly_to_value).collect::<Vec<_>>(),
        "h": poly_to_value(&rp.h),
        "g": poly_to_value(&rp.g),
    }))
}

pub fn parse_rational_point(s: &str, base: Option<&Path>) -> Result<RationalPoint> {
    let v = parse_value(s, "rational point")?;
    let alg = resolve_algebra(field(&v, "algebra", "rational")?, base)?;
    let poly = |k: &str| poly_from_value(field(&v, k, "rational")?, &format!("rational.{k}"));
    let (theta, h, g) = (poly("theta")?, poly("h")?, poly("g")?);
    for (k, p) in [("theta", &theta), ("h", &h), ("g", &g)] {
        if p.is_zero() {
            return Err(parse_err(format!("rational.{k}"), "must be nonzero"));
        }
    }
    let generators = array(field(&v, "generators", "rational")?, "rational.generators")?
        .iter()
        .enumerate()
        .map(|(i, x)| alg_poly_from_value(x, alg.dim, &format!("rational.generators[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalPoint {
        alg,
        theta,
        generators,
        h,
        g,
    })
}

/// Pretty JSON with a trailing newline; key order is sorted, so output is byte-stable.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| parse_err(path.display().to_string(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_round_trip() {
        for a in catalog::all_algebras() {
            let s = algebra_to_json(&a);
            let b = parse_algebra(&a.name, &s).unwrap();
            assert_eq!(a, b);
            assert_eq!(algebra_to_json(&b), s);
        }
    }

    #[test]
    fn malformed_rationals_rejected() {
        let bad = r#"{"dim":1,"basis_names":["1"],"structure_constants":[[["1/0"]]],"one":["1"],"idempotents":[["1"]]}"#;
        let e = parse_algebra("bad", bad).unwrap_err().to_string();
        assert!(e.contains("structure_constants[0][0][0]"), "{e}");
        assert!(e.contains("zero denominator"), "{e}");
        let e = parse_algebra("bad", "{\"dim\": 1,\n  \"oops\"").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let short = r#"{"dim":2,"basis_names":["a"],"structure_constants":[],"one":["1"],"idempotents":[]}"#;
        assert!(parse_algebra("bad", short).is_err());
    }

    #[test]
    fn file_round_trips() {
        use crate::adelic::{build_point, normalize};
        use crate::examples;
        use crate::rational::embed_iota;
        for (alg, v) in [examples::ex61(), examples::ex62(), examples::ex63()] {
            let s = kernel_to_json(&alg, &v);
            let (a2, v2) = parse_kernel(&s, None).unwrap();
            assert_eq!((&a2, &v2), (&alg, &v));
            assert_eq!(kernel_to_json(&a2, &v2), s);
            let pt = build_point(&alg, &v).unwrap();
            let s = point_to_json(&pt);
            let pt2 = parse_point(&s, None).unwrap();
            assert_eq!(pt2, pt);
            assert_eq!(point_to_json(&pt2), s);
            let s = operator_to_json(&alg, &pt.op);
            assert_eq!(parse_operator(&s, None).unwrap().1, pt.op);
            let rp = embed_iota(&normalize(&pt)).unwrap();
            let s = rational_point_to_json(&rp);
            let rp2 = parse_rational_point(&s, None).unwrap();
            assert_eq!(rp2, rp);
            assert_eq!(rational_point_to_json(&rp2), s);
        }
    }

    #[test]
    fn tampered_point_rejected() {
        use crate::adelic::build_point;
        let (alg, v) = crate::examples::ex61();
        let pt = build_point(&alg, &v).unwrap();
        let s = point_to_json(&pt).replacen("\"-1\"", "\"-3\"", 1);
        assert!(parse_point(&s, None).is_err());
        let s = kernel_to_json(&alg, &v).replace("\"idempotent\": 0", "\"idempotent\": 4");
        let e = parse_kernel(&s, None).unwrap_err().to_string();
        assert!(e.contains("out of range"), "{e}");
    }

    #[test]
    fn inline_algebra() {
        let mut a = catalog::dual_numbers();
        a.name = "custom".into();
        a.basis_names = vec!["u".into(), "n".into()];
        let a = Algebra::new(a.name.clone(), a.basis_names.clone(), a.c.clone(), a.one.clone(), a.idempotents.clone(), true).unwrap();
        let v = algebra_to_value(&a);
        assert!(v.is_object());
        let b = resolve_algebra(&v, None).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn poly_values() {
        let p = Poly::from_ints(&[1, 0, 3]);
        assert_eq!(poly_from_value(&poly_to_value(&p), "p").unwrap(), p);
    }
}
