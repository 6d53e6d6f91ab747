//! JSON interchange: exact rationals as strings, versioned `schema` fields.

use serde_json::{json, Map, Value};
use unitlab::arith::rational::{format_rational, parse_rational, Rational};
use unitlab::arith::UniPoly;
use unitlab::cover::Hyperplane;
use unitlab::lattice::{FinRankGroup, Witness};

use crate::failure::Failure;

pub const INSTANCE: &str = "unitlab.instance/1";
pub const FACTOR: &str = "unitlab.factor/1";
pub const MEMBER: &str = "unitlab.member/1";
pub const EQUIV: &str = "unitlab.equiv/1";
pub const SOLUTIONS: &str = "unitlab.solutions/1";
pub const CLASSIFY: &str = "unitlab.classify/1";
pub const COVER: &str = "unitlab.cover/1";
pub const DIRECTION: &str = "unitlab.direction/1";
pub const FAMILY: &str = "unitlab.family/1";
pub const LEMMA41: &str = "unitlab.lemma41/1";
pub const BSET: &str = "unitlab.bset/1";
pub const REPORT: &str = "unitlab.report/1";

pub fn version() -> String {
    format!("unitlab {}", env!("CARGO_PKG_VERSION"))
}

pub fn rat(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn rat_rows(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rats(r)).collect())
}

pub fn poly(p: &UniPoly) -> Value {
    rats(p.coeffs())
}

pub fn hyperplane(h: &Hyperplane) -> Value {
    json!({
        "normal": h.normal().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "equation": h.to_string(),
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({ "z": w.z, "flip": w.flip })
}

pub fn group(g: &FinRankGroup) -> Value {
    json!({ "generators": rat_rows(g.generators()), "sign_torsion": g.sign_torsion() })
}

/// Adds `schema`, `version` and the producing config to an artifact body.
pub fn artifact(schema: &str, config: &Value, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(schema.into()));
    m.insert("version".into(), Value::String(version()));
    m.insert("config".into(), config.clone());
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn parse_rat_value(v: &Value, what: &str) -> Result<Rational, Failure> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Failure::Input(format!("{what}: `{s}`: {e}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Failure::Input(format!("{what}: expected an exact rational string, found {other}"))),
    }
}

pub fn parse_rat_array(v: &Value, what: &str) -> Result<Vec<Rational>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::Input(format!("{what}: expected an array")))?;
    arr.iter().enumerate().map(|(i, x)| parse_rat_value(x, &format!("{what}[{i}]"))).collect()
}

pub fn parse_rat_rows(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::Input(format!("{what}: expected an array of tuples")))?;
    arr.iter().enumerate().map(|(i, r)| parse_rat_array(r, &format!("{what}[{i}]"))).collect()
}

/// `"2,-1/3"` or a JSON array of strings.
pub fn parse_tuple_arg(s: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| Failure::Input(format!("{what}: {e}")))?;
        return parse_rat_array(&v, what);
    }
    t.split(',')
        .map(|p| parse_rational(p.trim()).map_err(|e| Failure::Input(format!("{what}: `{}`: {e}", p.trim()))))
        .collect()
}

pub fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Failure> {
    v.get(name).ok_or_else(|| Failure::missing(name))
}

pub fn field_u64(v: &Value, name: &str) -> Result<u64, Failure> {
    field(v, name)?.as_u64().ok_or_else(|| Failure::Input(format!("field `{name}` must be a non-negative integer")))
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct Instance {
    pub n: usize,
    pub a: Vec<Rational>,
    pub group: FinRankGroup,
    pub gamma1: Option<FinRankGroup>,
    pub solutions: Option<Vec<Vec<Rational>>>,
    pub raw: Value,
}

fn parse_group(v: &Value, n: usize, what: &str) -> Result<FinRankGroup, Failure> {
    let gens = parse_rat_rows(field(v, "generators")?, &format!("{what}.generators"))?;
    let torsion = field(v, "sign_torsion")?
        .as_bool()
        .ok_or_else(|| Failure::Input(format!("{what}.sign_torsion must be a boolean")))?;
    if let Some((i, g)) = gens.iter().enumerate().find(|(_, g)| g.len() != n) {
        return Err(Failure::Input(format!("{what}.generators[{i}] has {} entries, expected {n}", g.len())));
    }
    Ok(FinRankGroup::new(n, gens, torsion)?)
}

/// `gamma1.generators` may be given as plain strings for a subgroup of ℚ*.
fn parse_gamma1(v: &Value) -> Result<FinRankGroup, Failure> {
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| Failure::Input("gamma1.generators: expected an array".into()))?
        .iter()
        .enumerate()
        .map(|(i, g)| match g {
            Value::Array(_) => parse_rat_array(g, &format!("gamma1.generators[{i}]")),
            _ => Ok(vec![parse_rat_value(g, &format!("gamma1.generators[{i}]"))?]),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let torsion = field(v, "sign_torsion")?
        .as_bool()
        .ok_or_else(|| Failure::Input("gamma1.sign_torsion must be a boolean".into()))?;
    Ok(FinRankGroup::new(1, gens, torsion)?)
}

pub fn check_schema(v: &Value, expected: &str) -> Result<(), Failure> {
    let s = field(v, "schema")?.as_str().unwrap_or("");
    if s != expected {
        return Err(Failure::Input(format!("schema `{s}` where `{expected}` was expected")));
    }
    Ok(())
}

pub fn parse_instance(v: &Value) -> Result<Instance, Failure> {
    check_schema(v, INSTANCE)?;
    let a = parse_rat_array(field(v, "a")?, "a")?;
    let n = match v.get("n") {
        Some(x) => x.as_u64().ok_or_else(|| Failure::Input("field `n` must be an integer".into()))? as usize,
        None => a.len(),
    };
    if a.len() != n {
        return Err(Failure::Input(format!("`a` has {} entries but n = {n}", a.len())));
    }
    let gamma1 = v.get("gamma1").map(parse_gamma1).transpose()?;
    let group = match (v.get("group"), &gamma1) {
        (Some(g), _) => parse_group(g, n, "group")?,
        (None, Some(g1)) => FinRankGroup::power(g1, n)?,
        (None, None) => return Err(Failure::missing("group")),
    };
    let solutions = v.get("solutions").map(|s| parse_rat_rows(s, "solutions")).transpose()?;
    Ok(Instance { n, a, group, gamma1, solutions, raw: v.clone() })
}

pub fn instance_json(n: usize, a: &[Rational], gamma1: &FinRankGroup) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(n));
    m.insert("a".into(), rats(a));
    m.insert(
        "gamma1".into(),
        json!({
            "generators": gamma1.generators().iter().map(|g| rat(&g[0])).collect::<Vec<_>>(),
            "sign_torsion": gamma1.sign_torsion(),
        }),
    );
    m
}

pub fn perm_1based(p: &[usize]) -> Value {
    json!(p.iter().map(|&i| i + 1).collect::<Vec<_>>())
}
