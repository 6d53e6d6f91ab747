use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::commands::read_text;
use crate::failure::Failure;
use crate::formats::{self as f, artifact, field, field_u64};
use crate::{Artifact, Output};

fn load(path: &Path) -> Result<Value, Failure> {
    let text = read_text(path)?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        return Ok(v);
    }
    let first = text.lines().next().unwrap_or("");
    serde_json::from_str(first).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Row {
    json: Value,
    line: String,
    flag: Option<String>,
}

fn bound(n: u64) -> u64 {
    if n < 64 {
        1 << n
    } else {
        u64::MAX
    }
}

fn row(v: &Value) -> Result<Row, Failure> {
    let schema = field(v, "schema")?.as_str().ok_or_else(|| Failure::Input("field `schema` must be a string".into()))?;
    field(v, "version")?;
    field(v, "config")?;
    let mut flag = None;
    let (json, line) = match schema {
        f::INSTANCE => {
            let n = field_u64(v, "n")?;
            let points = field(v, "solutions")?.as_array().map_or(0, Vec::len);
            let upper = field(v, "explicit_cover")?.as_array().map_or(0, Vec::len);
            let per = field_u64(v, "max_points_per_subspace")?;
            let lower = field_u64(v, "counting_lower_bound")?;
            if lower != n || upper as u64 != n {
                flag = Some(format!("example with n = {n} has bounds {lower}..{upper}"));
            }
            (
                json!({ "kind": "example", "n": n, "points": points, "m_lower": lower, "m_upper": upper, "max_points_per_subspace": per, "bound": bound(n) }),
                format!("example   n={n}  points={points}  {lower} ≤ m ≤ {upper}  max/flat={per}  bound 2^n={}", bound(n)),
            )
        }
        f::COVER => {
            let n = field_u64(v, "n")?;
            let points = field_u64(v, "points")?;
            let m = field(v, "m")?;
            let proven = field(v, "proven_minimal")?.as_bool().unwrap_or(false);
            // Covers of solution lists are compared against 2ⁿ.
            let from_solutions = !v.get("source_schema").is_none_or(Value::is_null);
            if let Some(m) = m.as_u64() {
                if from_solutions && m > bound(n) {
                    flag = Some(format!("{points} solutions needed m = {m} > 2^{n} subspaces"));
                }
            }
            (
                json!({ "kind": "cover", "n": n, "points": points, "m": m, "proven_minimal": proven, "bound": bound(n) }),
                format!("cover     n={n}  points={points}  m={m}  proven_minimal={proven}  bound 2^n={}", bound(n)),
            )
        }
        f::SOLUTIONS => {
            let n = field_u64(v, "n")?;
            let count = field_u64(v, "count")?;
            let nd = field_u64(v, "non_degenerate")?;
            let rank = field_u64(v, "solution_matrix_rank")?;
            if rank > n || field_u64(v, "degenerate_uncovered")? > 0 {
                flag = Some(format!("enumeration with n = {n} violates the rank or subsum checks"));
            }
            (
                json!({ "kind": "solutions", "n": n, "count": count, "non_degenerate": nd, "rank": rank }),
                format!("solutions n={n}  count={count}  non-degenerate={nd}  rank={rank}"),
            )
        }
        f::CLASSIFY => {
            let n = field_u64(v, "n")?;
            let label = field(field(v, "class")?, "label")?.clone();
            (json!({ "kind": "classify", "n": n, "label": label }), format!("classify  n={n}  {}", label.as_str().unwrap_or("?")))
        }
        f::DIRECTION | f::FAMILY => {
            let n = field_u64(v, "n")?;
            let found = field(v, "found")?.as_bool().unwrap_or(false);
            let normals = v.get("normals").and_then(Value::as_array).map(Vec::len);
            if let Some(k) = normals {
                if k as u64 > bound(n) {
                    flag = Some(format!("family with {k} > 2^{n} hyperplanes"));
                }
            }
            let kind = if schema == f::FAMILY { "family" } else { "direction" };
            (
                json!({ "kind": kind, "n": n, "found": found, "hyperplanes": normals, "bound": bound(n) }),
                format!("{kind:<9} n={n}  found={found}  hyperplanes={}  bound 2^n={}", normals.map_or("-".into(), |k| k.to_string()), bound(n)),
            )
        }
        f::LEMMA41 => {
            let n = field_u64(v, "n")?;
            let checked = field_u64(v, "subsets_checked")?;
            let failures = field(v, "failures")?.as_array().map_or(0, Vec::len);
            if failures > 0 {
                flag = Some(format!("{failures} subsets without a nonvanishing determinant (n = {n})"));
            }
            let mode = field(v, "mode")?.clone();
            (
                json!({ "kind": "lemma41", "n": n, "mode": mode, "subsets_checked": checked, "failures": failures }),
                format!("lemma41   n={n}  mode={}  subsets={checked}  failures={failures}", mode.as_str().unwrap_or("?")),
            )
        }
        f::BSET => {
            let n = field_u64(v, "n")?;
            let values = field(v, "values")?.clone();
            let k = values.as_array().map_or(0, Vec::len);
            (json!({ "kind": "bset", "n": n, "values": values }), format!("bset      n={n}  {k} inequivalent values"))
        }
        f::FACTOR | f::MEMBER | f::EQUIV => (json!({ "kind": schema }), schema.to_string()),
        other => return Err(Failure::Input(format!("unknown schema `{other}`"))),
    };
    Ok(Row { json, line, flag })
}

pub fn report(config: &Value, paths: &[PathBuf]) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    let mut flags = Vec::new();
    let mut lines = Vec::new();
    for p in paths {
        let r = row(&load(p)?).map_err(|e| match e {
            Failure::Input(m) => Failure::Input(format!("{}: {m}", p.display())),
            other => other,
        })?;
        let mut j = r.json;
        j["artifact"] = json!(p.display().to_string());
        rows.push(j);
        lines.push(r.line);
        if let Some(fl) = r.flag {
            lines.push(format!("  FLAG: {fl}"));
            flags.push(json!({ "artifact": p.display().to_string(), "flag": fl }));
        }
    }
    let failed = (!flags.is_empty()).then(|| Failure::Verification(format!("{} flagged artifacts", flags.len())));
    let body = json!({ "rows": rows, "flags": flags });
    let summary = if lines.is_empty() { "empty report".to_string() } else { lines.join("\n") };
    Ok(Output { artifact: Artifact::Json(artifact(f::REPORT, config, body)), summary, failed })
}
