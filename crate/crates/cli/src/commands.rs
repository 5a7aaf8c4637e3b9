use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use nilzeta::combinat::{flag_poly, flag_poly_via_descents};
use nilzeta::exactalg::{integer_series, series_expand};
use nilzeta::formulas::{abscissa_from_denominator, abscissa_leq, heisenberg_product, zeta_closed_form};
use nilzeta::oracle::{self, CensusKind, CensusRow};
use nilzeta::verify::{check_descent_identity, check_funeq, check_w_funeq, lemma_sweep};
use nilzeta::{Abscissa, FlagType, Result, TypeVector, ZetaKind};

use crate::report::{join, number, numbers, Check, Report};

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn formula(kind: ZetaKind, n: usize) -> Result<Report> {
    let f = zeta_closed_form(kind, n)?;
    let rendering = f.to_string();
    let mut r = Report::new("formula", params(&[("kind", json!(kind.tag())), ("n", json!(n))]));
    r.lines.push(rendering.clone());
    r.result = json!({ "rendering": rendering, "denominator_factors": f.denominator_len() });
    Ok(r)
}

pub fn expand(kind: ZetaKind, n: usize, p: u64, max_k: usize) -> Result<Report> {
    let cs = series_expand(&zeta_closed_form(kind, n)?, p, max_k)?;
    let mut r = Report::new(
        "expand",
        params(&[("kind", json!(kind.tag())), ("n", json!(n)), ("p", json!(p)), ("max_k", json!(max_k))]),
    );
    for (k, c) in cs.iter().enumerate() {
        r.lines.push(format!("c{k} = {c}"));
    }
    r.result = json!({ "coefficients": numbers(&cs) });
    Ok(r)
}

pub fn count(kind: CensusKind, n: usize, p: u64, max_k: u32, csv: Option<&Path>) -> Result<Report> {
    let zeta_kind = match kind {
        CensusKind::Subalgebra => ZetaKind::Subgroup,
        CensusKind::Ideal => ZetaKind::Normal,
    };
    let series = integer_series(&zeta_closed_form(zeta_kind, n)?, p, max_k as usize)?;
    let rows: Vec<CensusRow> = (0..=max_k).map(|k| CensusRow::measure(kind, n, p, k)).collect::<Result<_>>()?;
    if let Some(path) = csv {
        write_csv(path, &rows)
            .map_err(|e| nilzeta::Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    let counts: Vec<u64> = rows.iter().map(|row| row.count).collect();
    let agreement: Vec<bool> = counts.iter().zip(&series).map(|(&c, s)| *s == c.into()).collect();

    let mut r = Report::new(
        "count",
        params(&[("kind", json!(kind.to_string())), ("n", json!(n)), ("p", json!(p)), ("max_k", json!(max_k))]),
    );
    r.lines.push(format!("counts: [{}]", join(&counts)));
    r.lines.push(format!("series: [{}]", join(&series)));
    for (k, (c, s)) in counts.iter().zip(&series).enumerate() {
        r.checks.push(Check::new(format!("k={k}"), *s == (*c).into(), format!("census {c}, series {s}")));
    }
    r.result = json!({ "counts": counts, "series": numbers(&series), "agreement": agreement });
    Ok(r)
}

fn write_csv(path: &Path, rows: &[CensusRow]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", CensusRow::CSV_HEADER)?;
    for row in rows {
        writeln!(w, "{}", row.to_csv())?;
    }
    w.flush()
}

pub fn verify_funeq(kinds: &[ZetaKind], n: usize) -> Result<Report> {
    let tags: Vec<&str> = kinds.iter().map(|k| k.tag()).collect();
    let mut r = Report::new("verify", params(&[("suite", json!("funeq")), ("kind", json!(tags)), ("n", json!(n))]));
    let mut reports = Vec::new();
    for &kind in kinds {
        let f = check_funeq(kind, n)?;
        r.checks.push(Check::new(
            format!("funeq {kind} n={n}"),
            f.holds,
            format!("sign={} p_exp={} t_exp={}", f.sign, f.p_exponent, f.t_exponent),
        ));
        reports.push(json!({
            "kind": kind.tag(),
            "n": n,
            "sign": f.sign,
            "p_exp": f.p_exponent,
            "t_exp": f.t_exponent,
            "holds": f.holds,
        }));
    }
    let mut result = json!({ "reports": reports });
    if kinds.contains(&ZetaKind::Subgroup) {
        let m = n - 1;
        let holds = check_w_funeq(m)?;
        r.checks.push(Check::new(format!("abstract W funeq m={m}"), holds, ""));
        result["w_funeq"] = json!({ "m": m, "holds": holds });
    }
    r.result = result;
    Ok(r)
}

pub fn verify_lemmas(n: usize) -> Result<Report> {
    let m = n - 1;
    let mut r = Report::new("verify", params(&[("suite", json!("lemmas")), ("n", json!(n)), ("m", json!(m))]));
    let rows = lemma_sweep(m)?;
    let mut items = Vec::new();
    for row in &rows {
        r.checks.push(Check::new(format!("lemma{} m={} set={}", row.lemma, row.m, row.subset), row.holds, ""));
        items.push(json!({ "lemma": row.lemma, "m": row.m, "set": row.subset.elements(), "holds": row.holds }));
    }
    r.result = json!({ "instances": items });
    Ok(r)
}

pub fn verify_descent(n: usize) -> Result<Report> {
    let m = n - 1;
    let mut r = Report::new("verify", params(&[("suite", json!("descent")), ("n", json!(n)), ("m", json!(m))]));
    let mut flags = Vec::new();
    for ft in FlagType::all(m) {
        let b = flag_poly(&ft);
        let holds = b == flag_poly_via_descents(&ft);
        r.checks.push(Check::new(format!("flag_poly m={m} set={ft}"), holds, b.to_string()));
        flags.push(json!({ "set": ft.elements(), "flag_poly": b.to_string(), "holds": holds }));
    }
    let holds = check_descent_identity(m)?;
    r.checks.push(Check::new(format!("W descent expansion m={m}"), holds, ""));
    r.result = json!({ "flag_polys": flags, "w_descent": holds });
    Ok(r)
}

pub fn verify_typesum(n: usize, p: u64, max_k: usize) -> Result<Report> {
    let mut r = Report::new(
        "verify",
        params(&[("suite", json!("typesum")), ("n", json!(n)), ("p", json!(p)), ("max_k", json!(max_k))]),
    );
    let lhs = oracle::typesum_coefficients(n, p, max_k)?;
    let rhs = oracle::closed_form_coefficients(n, p, max_k)?;
    for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        r.checks.push(Check::new(format!("t^{k}"), a == b, format!("type sum {a}, closed form {b}")));
    }
    let bound = max_k.min(3) as u32;
    let mut routes = 0usize;
    for tv in TypeVector::all(n - 1, bound * (n as u32 - 1)).iter().filter(|t| t.r_total() <= bound) {
        let holds = oracle::z_ir_closed(n, tv)?.value_eq(&oracle::z_ir_direct(n, tv)?);
        r.checks.push(Check::new(format!("Z(I,r) two routes type={tv}"), holds, ""));
        routes += 1;
    }
    r.lines.push(format!("type sum:    [{}]", join(&lhs)));
    r.lines.push(format!("closed form: [{}]", join(&rhs)));
    r.result = json!({ "typesum": numbers(&lhs), "closed_form": numbers(&rhs), "types_checked": routes });
    Ok(r)
}

pub fn verify_heisenberg() -> Result<Report> {
    let mut r = Report::new("verify", params(&[("suite", json!("heisenberg"))]));
    let closed = zeta_closed_form(ZetaKind::Subgroup, 2)?;
    let product = heisenberg_product();
    let holds = closed.value_eq(&product);
    r.lines.push(format!("closed form: {closed}"));
    r.lines.push(format!("product:     {product}"));
    r.checks.push(Check::new("closed form equals Heisenberg product", holds, ""));
    r.result = json!({ "closed_form": closed.to_string(), "product": product.to_string(), "holds": holds });
    Ok(r)
}

pub fn abscissa(kind: ZetaKind, n: usize) -> Result<Report> {
    let value = match kind {
        ZetaKind::Subgroup => Abscissa::Exact(abscissa_leq(n)?),
        _ => abscissa_from_denominator(&zeta_closed_form(kind, n)?)?,
    };
    let status = if value.is_exact() { "exact" } else { "candidate" };
    let mut r = Report::new("abscissa", params(&[("kind", json!(kind.tag())), ("n", json!(n))]));
    r.lines.push(format!("{} ({status})", value.value()));
    r.result = json!({ "value": number(value.value()), "status": status });
    Ok(r)
}
