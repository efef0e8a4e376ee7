//! Deterministic JSON reports. Integers and rationals are rendered as strings
//! (`"p/q"` for non-integers); nothing is ever a binary float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::instance::{LoadedInstance, SCHEMA_VERSION};
use super::{CliError, Outcome, EXIT_INVARIANT, EXIT_OK, EXIT_PROPERTY};
use crate::bounds::{self, CurveBoundData};
use crate::lattice::{self, GramLattice, LatticeReport, BRUTE_FORCE_MAX_DIM};
use crate::rosati::{self, DegreeResult};

/// Above this many box points the oracle refuses to run.
pub const ORACLE_MAX_POINTS: u128 = 2_000_000_000;

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix_json(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| vec_json(r)).collect())
}

pub fn lattice_json(gram: &GramLattice, lat: &LatticeReport) -> Value {
    json!({
        "n": lat.n,
        "gram": matrix_json(gram.gram()),
        "covolume_sq": int(&lat.covolume_sq),
        "lambda_sq": int(&lat.lambda_sq),
        "Lambda_sq": int(&lat.big_lambda_sq),
        "covering_radius_sq_upper": rat(&lat.covering_radius_sq_upper),
        "witnesses": {
            "lambda": vec_json(&lat.lambda_witness),
            "independent": matrix_json(&lat.independent_witnesses),
        },
    })
}

pub fn degree_json(d: &DegreeResult) -> Value {
    json!({
        "case": serde_json::to_value(d.case_tag).expect("case tag serializes"),
        "exact": d.exact().map(int),
        "lower": rat(&d.lower()),
        "upper": d.upper().as_ref().map(rat),
        "witness": d.witness.as_deref().map(vec_json),
        "lambda_sq": int(&d.lambda_sq),
    })
}

pub fn bounds_json(data: &CurveBoundData, digits: u32) -> Result<Value, CliError> {
    let tb = bounds::degree_bound_log(data, digits).map_err(CliError::from_domain)?;
    let kappa = bounds::kappa_log(data.genus_x, data.degree_k, &data.faltings_height, digits);
    let r = u32::try_from(data.r).expect("rank validated");
    let intermediate = tb
        .vol_sq
        .as_ref()
        .map(|v| bounds::intermediate_bound(data.genus_x, &data.period_p, v));
    Ok(json!({
        "digits": digits,
        "kappa_log": kappa.to_decimal(digits),
        "final_log_bound": tb.log_mu_bound.to_decimal(digits),
        "discriminant_bound": rat(&bounds::discriminant_bound(data.degree_k, &data.faltings_height)),
        "class_index_bound": int(&rosati::class_index_bound(data.order, r)),
        "covolume_sq": tb.vol_sq.as_ref().map(rat),
        "intermediate_bound": intermediate.as_ref().map(rat),
        "intermediate_log_bound": tb.log_intermediate.map(|l| l.to_decimal(digits)),
    }))
}

fn header(command: &str, loaded: &LoadedInstance) -> serde_json::Map<String, Value> {
    let inst = &loaded.inst;
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("input_sha256".into(), json!(loaded.input_sha256));
    m.insert("order".into(), json!(inst.order().to_string()));
    m.insert("discriminant".into(), json!(inst.order().discriminant().as_ref().map(int)));
    m.insert("rank_O".into(), json!(inst.rank()));
    m.insert("period_p".into(), int(inst.period_p()));
    m
}

pub fn analyze_report(loaded: &LoadedInstance, digits: u32) -> Result<Value, CliError> {
    Ok(analyze_outcome(loaded, digits)?.document)
}

/// The full analysis; the exit code is 4 when a certification check fails.
pub fn analyze_outcome(loaded: &LoadedInstance, digits: u32) -> Result<Outcome, CliError> {
    let inst = &loaded.inst;
    let gram = inst.gram();
    let mut m = header("analyze", loaded);
    let (lat, degree, bounds, checks) = match &loaded.curve {
        Some(data) => {
            let rep = bounds::certify(inst, data, digits).map_err(CliError::from_domain)?;
            let checks = serde_json::to_value(&rep.checks).expect("checks serialize");
            (rep.lattice, rep.degree, bounds_json(data, digits)?, checks)
        }
        None => {
            let degree = rosati::minimal_degree(inst).map_err(CliError::from_domain)?;
            (lattice::analyze(gram), degree, Value::Null, json!([]))
        }
    };
    let all_pass = checks.as_array().is_some_and(|a| a.iter().all(|c| c["pass"] == json!(true)));
    m.insert("lattice".into(), lattice_json(gram, &lat));
    m.insert("degree".into(), degree_json(&degree));
    m.insert("bounds".into(), bounds);
    m.insert("checks".into(), checks);
    m.insert("all_checks_pass".into(), json!(all_pass));
    Ok(Outcome { document: Value::Object(m), code: if all_pass { EXIT_OK } else { EXIT_PROPERTY } })
}

pub fn bound_report(loaded: &LoadedInstance, digits: u32) -> Result<Value, CliError> {
    let data = loaded.curve.as_ref().ok_or_else(|| {
        CliError::new(EXIT_INVARIANT, "missing_curve_data", "the bound command needs curve_data")
            .with_field("curve_data")
    })?;
    let mut m = header("bound", loaded);
    m.insert("bounds".into(), bounds_json(data, digits)?);
    let non_g1 = match loaded.genus_y {
        Some(gy) if gy != 1 => bounds::non_genus_one_bound(data.genus_x, gy, loaded.inst.x_has_rational_point())
            .map_err(CliError::from_domain)?,
        _ => None,
    };
    m.insert("genus_y".into(), json!(loaded.genus_y));
    m.insert("non_genus_one_bound".into(), json!(non_g1));
    Ok(Value::Object(m))
}

fn box_for(gram: &GramLattice, q_bound: &BigInt, requested: Option<u64>) -> Result<i64, CliError> {
    let b = match requested {
        Some(b) => BigInt::from(b),
        None => lattice::sufficient_box(gram, q_bound),
    };
    let side = &b * 2u32 + 1u32;
    let points = side.pow(u32::try_from(gram.dim()).expect("n <= 16"));
    if points > BigInt::from(ORACLE_MAX_POINTS) {
        return Err(CliError::new(
            EXIT_INVARIANT,
            "oracle_box_too_large",
            format!("box {b} in dimension {} has {points} points", gram.dim()),
        ));
    }
    Ok(i64::try_from(&b).expect("bounded by the point limit"))
}

fn min_json(v: &[BigInt], q: &BigInt) -> Value {
    json!({"q": int(q), "witness": vec_json(v)})
}

/// Compares the enumeration results against exhaustive search; exit code 4
/// on any disagreement.
pub fn oracle_report(loaded: &LoadedInstance, box_bound: Option<u64>) -> Result<Outcome, CliError> {
    let gram = loaded.inst.gram();
    let n = gram.dim();
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(CliError::from_domain(crate::Error::DimensionTooLarge { n, max: BRUTE_FORCE_MAX_DIM }));
    }
    let mut m = header("oracle", loaded);
    let mut agree_all = true;

    let (sv, lambda_sq) = lattice::shortest_vector(gram);
    let b = box_for(gram, &lambda_sq, box_bound)?;
    let (bv, bq) = lattice::brute_force_minimum(gram, b).map_err(CliError::from_domain)?;
    let agree = bq == lambda_sq;
    agree_all &= agree;
    m.insert(
        "svp".into(),
        json!({
            "box": b,
            "enumeration": min_json(&sv, &lambda_sq),
            "brute_force": min_json(&bv, &bq),
            "agree": agree,
            "witness_match": bv == sv,
        }),
    );

    let coset = match loaded.inst.coset() {
        Some(c) => {
            let (cv, cq) = lattice::coset_minimum(gram, c).map_err(CliError::from_domain)?;
            let b = box_for(gram, &cq, box_bound)?;
            let brute = lattice::brute_force_coset_minimum(gram, c, b).map_err(CliError::from_domain)?;
            let agree = brute.as_ref().is_some_and(|(_, q)| *q == cq);
            agree_all &= agree;
            json!({
                "box": b,
                "enumeration": min_json(&cv, &cq),
                "brute_force": brute.as_ref().map(|(v, q)| min_json(v, q)),
                "agree": agree,
                "witness_match": brute.as_ref().is_some_and(|(v, _)| *v == cv),
            })
        }
        None => Value::Null,
    };
    m.insert("coset".into(), coset);
    m.insert("agree".into(), json!(agree_all));
    debug_assert!(!lambda_sq.is_zero());
    Ok(Outcome { document: Value::Object(m), code: if agree_all { EXIT_OK } else { EXIT_PROPERTY } })
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            Some(format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) => {
            let rows: Option<Vec<String>> = items.iter().map(inline).collect();
            rows.map(|r| format!("[{}]", r.join(", ")))
        }
        v if is_scalar(v) => Some(scalar_text(v)),
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match inline(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

/// Indented `key: value` text for `--pretty`.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}
