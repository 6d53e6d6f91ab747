use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Value};
use unitlab::arith::rank_of;
use unitlab::arith::rational::{parse_rational, Rational};
use unitlab::cover::{greedy_cover, max_points_per_flat, min_cover_with, verify_cover, CoverError, CoverOptions};
use unitlab::degeneracy::{
    check_claim, classify_class, cover_family, coverage, find_direction, lambda_kernel, points_of, specialize,
    verify_specialized, ClassLabel, DirectionMatrix, DEFAULT_DIRECTION_CAP,
};
use unitlab::equation::{
    degenerate_subsum_subspaces, enumerate_solutions_capped, solution_matrix, Equation, Solution, SolutionSet,
    DEFAULT_ENUMERATION_CAP,
};
use unitlab::lattice::{factorize, CoeffTuple, FinRankGroup, LatticeError, PrimeBasis};
use unitlab::lower_bound::{
    b_inequivalence_sample, compute_t, equivalent_values, explicit_n_cover, explore_sharpness, generate_example,
    max_points_per_subspace, verify_subset_threshold, SubsetMode, DEFAULT_PATTERN_BUDGET, DEFAULT_SUBSET_BUDGET,
};

use crate::failure::Failure;
use crate::formats::{self as f, artifact, Instance};
use crate::{report, Artifact, Cli, Command, Output};

const DEFAULT_ENUMERATION_BOX: u32 = 3;
const DEFAULT_SCAN_BOX: u32 = 3;

pub fn dispatch(cli: &Cli, config: &Value) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Factor { value, basis } => factor(config, value, basis.as_deref()),
        Command::Member { instance, x } => member(config, &load_instance(instance)?, x),
        Command::Equiv { instance, b } => equiv(config, &load_instance(instance)?, b),
        Command::Enumerate { instance } => enumerate(config, &load_instance(instance)?, g.box_size, g.budget),
        Command::Classify { instance, direction_box } => {
            classify(config, &load_instance(instance)?, g.box_size, g.budget, *direction_box)
        }
        Command::Cover { input, limit } => cover(config, input, *limit, g.budget, g.mode.as_deref()),
        Command::Direction { instance, direction_box, c } => {
            direction(config, &load_instance(instance)?, g.box_size, g.budget, *direction_box, c.as_deref(), false)
        }
        Command::Family { instance, direction_box, c } => {
            direction(config, &load_instance(instance)?, g.box_size, g.budget, *direction_box, c.as_deref(), true)
        }
        Command::Lemma41 { n, count, pattern_budget, sharpness } => {
            lemma41(config, *n, g.mode.as_deref(), *count, g.seed, g.budget, *pattern_budget, *sharpness)
        }
        Command::Example4 { n, gamma1, torsion } => example4(config, *n, gamma1, *torsion, g.box_size, g.budget),
        Command::Bset { n, gamma1, torsion, count } => bset(config, *n, gamma1, *torsion, *count, g.box_size, g.budget),
        Command::Report { paths } => report::report(config, paths),
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    f::parse_instance(&read_json(path)?)
}

fn equation(inst: &Instance) -> Result<Equation, Failure> {
    Ok(Equation::new(CoeffTuple::new(inst.a.clone())?, inst.group.clone())?)
}

fn gamma1_from(list: &str, torsion: bool) -> Result<FinRankGroup, Failure> {
    let gens = list
        .split(',')
        .map(|s| parse_rational(s.trim()).map(|q| vec![q]).map_err(|e| Failure::Input(format!("gamma1 `{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FinRankGroup::new(1, gens, torsion)?)
}

fn factor(config: &Value, value: &str, basis: Option<&str>) -> Result<Output, Failure> {
    let q = parse_rational(value).map_err(|e| Failure::Input(format!("`{value}`: {e}")))?;
    if q.is_zero() {
        return Err(LatticeError::ZeroCoordinate.into());
    }
    let basis = match basis {
        Some(b) => PrimeBasis::new(
            b.split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|e| Failure::Input(format!("basis prime `{p}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => FinRankGroup::new(1, vec![vec![q.clone()]], false)?.basis().clone(),
    };
    let e = factorize(&q, &basis)?;
    let factors: Vec<Value> = basis
        .primes()
        .iter()
        .zip(&e.exponents)
        .filter(|(_, &k)| k != 0)
        .map(|(p, k)| json!({ "prime": p, "exponent": k }))
        .collect();
    let shown: Vec<String> = basis
        .primes()
        .iter()
        .zip(&e.exponents)
        .filter(|(_, &k)| k != 0)
        .map(|(p, k)| format!("{p}^{k}"))
        .collect();
    let summary = format!("{value} = {}{}", if e.negative { "-" } else { "" }, if shown.is_empty() { "1".into() } else { shown.join(" · ") });
    let body = json!({ "value": f::rat(&q), "sign": if e.negative { -1 } else { 1 }, "basis": basis.primes(), "factors": factors });
    Ok(Output::ok(artifact(f::FACTOR, config, body), summary))
}

fn member(config: &Value, inst: &Instance, x: &str) -> Result<Output, Failure> {
    let x = f::parse_tuple_arg(x, "x")?;
    let (member, w, reason) = match inst.group.contains(&x) {
        Ok(Some(w)) => (true, f::witness(&w), Value::Null),
        Ok(None) => (false, Value::Null, json!("exponent vector is not in the lattice")),
        Err(LatticeError::OutsideBasis { factor }) => {
            (false, Value::Null, json!(format!("prime {factor} is outside the group's basis")))
        }
        Err(e) => return Err(e.into()),
    };
    let body = json!({ "x": f::rats(&x), "member": member, "witness": w, "reason": reason });
    Ok(Output::ok(artifact(f::MEMBER, config, body), format!("member: {member}")))
}

fn equiv(config: &Value, inst: &Instance, b: &str) -> Result<Output, Failure> {
    let a = CoeffTuple::new(inst.a.clone())?;
    let b = CoeffTuple::new(f::parse_tuple_arg(b, "b")?)?;
    let eq = inst.group.gamma_equivalent(&a, &b)?;
    let ra = inst.group.canonical_rep(&a)?;
    let rb = inst.group.canonical_rep(&b)?;
    if eq != (ra == rb) {
        return Err(Failure::Verification("canonical representatives disagree with the equivalence test".into()));
    }
    let body = json!({
        "a": f::rats(a.as_slice()),
        "b": f::rats(b.as_slice()),
        "equivalent": eq,
        "canonical_a": f::rats(ra.as_slice()),
        "canonical_b": f::rats(rb.as_slice()),
    });
    Ok(Output::ok(artifact(f::EQUIV, config, body), format!("equivalent: {eq}")))
}

fn solution_line(s: &Solution, subsum: &[unitlab::cover::Hyperplane]) -> Value {
    let vanishing: Vec<Vec<usize>> = s.vanishing_subsets();
    let on = if s.is_degenerate() { subsum.iter().position(|h| h.contains(&s.x)).map(|i| json!(i)) } else { None };
    json!({
        "x": f::rats(&s.x),
        "witness": f::witness(&s.witness),
        "degenerate": s.is_degenerate(),
        "vanishing": vanishing,
        "subsum_hyperplane": on.unwrap_or(Value::Null),
    })
}

fn enumerate(config: &Value, inst: &Instance, box_size: Option<u32>, budget: Option<u64>) -> Result<Output, Failure> {
    let eq = equation(inst)?;
    let bound = box_size.unwrap_or(DEFAULT_ENUMERATION_BOX);
    let ss = enumerate_solutions_capped(&eq, bound, budget.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
    let n = eq.n();
    let rank = rank_of(&solution_matrix(&ss));
    let subsum = degenerate_subsum_subspaces(&eq);
    let lines: Vec<Value> = ss.solutions.iter().map(|s| solution_line(s, &subsum)).collect();
    let uncovered = lines.iter().filter(|l| l["degenerate"] == json!(true) && l["subsum_hyperplane"].is_null()).count();
    let non_degenerate = ss.solutions.iter().filter(|s| !s.is_degenerate()).count();
    let group_rank = eq.group().rank();
    // For two unknowns the count is known to be at most 2^{8(r+2)}.
    let envelope_exponent = 8 * (group_rank as u32 + 2);
    let within_envelope = n != 2 || (ss.len() as u128) < 1u128.checked_shl(envelope_exponent).unwrap_or(u128::MAX);
    let mut head = artifact(
        f::SOLUTIONS,
        config,
        json!({
            "n": n,
            "a": f::rats(eq.coefficients().as_slice()),
            "group": f::group(eq.group()),
            "group_rank": group_rank,
            "box": bound,
            "count": ss.len(),
            "non_degenerate": non_degenerate,
            "degenerate": ss.len() - non_degenerate,
            "solution_matrix_rank": rank,
            "subsum_hyperplanes": subsum.iter().map(f::hyperplane).collect::<Vec<_>>(),
            "degenerate_uncovered": uncovered,
        }),
    );
    if n == 2 {
        head["envelope"] = json!(format!("2^{envelope_exponent}"));
        head["within_envelope"] = json!(within_envelope);
    }
    let mut failed = None;
    if rank > n {
        failed = Some(Failure::Verification(format!("solution matrix has rank {rank} > n = {n}")));
    } else if uncovered > 0 {
        failed = Some(Failure::Verification(format!("{uncovered} degenerate solutions lie on no subsum hyperplane")));
    } else if !within_envelope {
        failed = Some(Failure::Verification(format!("{} solutions exceed 2^{envelope_exponent}", ss.len())));
    }
    let summary = format!(
        "{} solutions in box {bound} ({non_degenerate} non-degenerate), solution matrix rank {rank} ≤ n = {n}",
        ss.len()
    );
    let mut out = vec![head];
    out.extend(lines);
    Ok(Output { artifact: Artifact::Lines(out), summary, failed })
}

/// Curated solutions when the instance lists them, else an enumeration.
fn solution_set(inst: &Instance, box_size: Option<u32>, budget: Option<u64>) -> Result<SolutionSet, Failure> {
    let eq = equation(inst)?;
    match &inst.solutions {
        Some(pts) => Ok(SolutionSet::from_points(&eq, pts)?),
        None => Ok(enumerate_solutions_capped(
            &eq,
            box_size.unwrap_or(DEFAULT_ENUMERATION_BOX),
            budget.unwrap_or(DEFAULT_ENUMERATION_CAP),
        )?),
    }
}

/// Non-degenerate solutions, divided by one of them unless the all-ones
/// tuple is already among them (then `a₁ + ⋯ + aₙ = 1` and every subsum
/// of `a` is nonzero).
fn normalized(ss: &SolutionSet) -> Result<(SolutionSet, Option<Vec<Rational>>), Failure> {
    let nd = ss.non_degenerate();
    if nd.is_empty() {
        return Err(Failure::Input("no non-degenerate solution in the list; nothing to classify".into()));
    }
    if nd.contains_all_ones() {
        return Ok((nd, None));
    }
    let y = nd.solutions[0].x.clone();
    Ok((nd.normalize_at(0)?, Some(y)))
}

fn label_json(l: &ClassLabel) -> Value {
    match l {
        ClassLabel::ClassI { rank, box_size } => {
            json!({ "label": l.name(), "rank": rank, "direction_box": box_size, "relative_to_box": true })
        }
        ClassLabel::ClassII { rank } => json!({ "label": l.name(), "rank": rank }),
        ClassLabel::ClassIII { direction, box_size } => {
            json!({ "label": l.name(), "direction": direction.rows(), "direction_box": box_size })
        }
    }
}

fn classify(
    config: &Value,
    inst: &Instance,
    box_size: Option<u32>,
    budget: Option<u64>,
    direction_box: u32,
) -> Result<Output, Failure> {
    let ss = solution_set(inst, box_size, budget)?;
    let (nd, by) = normalized(&ss)?;
    let pts = points_of(&nd);
    let label = classify_class(&pts, direction_box, DEFAULT_DIRECTION_CAP)?;
    let body = json!({
        "n": nd.equation.n(),
        "a": f::rats(&inst.a),
        "normalized_by": by.as_deref().map(f::rats).unwrap_or(Value::Null),
        "a_normalized": f::rats(nd.equation.coefficients().as_slice()),
        "solutions": ss.len(),
        "non_degenerate": nd.len(),
        "source": if inst.solutions.is_some() { "curated" } else { "enumerated" },
        "box": if inst.solutions.is_some() { Value::Null } else { json!(box_size.unwrap_or(DEFAULT_ENUMERATION_BOX)) },
        "class": label_json(&label),
    });
    let summary = format!("{} over {} non-degenerate solutions", label.name(), nd.len());
    Ok(Output::ok(artifact(f::CLASSIFY, config, body), summary))
}

fn parse_direction(s: &str) -> Result<DirectionMatrix, Failure> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Failure::Input(format!("direction entry `{x}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DirectionMatrix::new(rows)?)
}

#[allow(clippy::too_many_arguments)]
fn direction(
    config: &Value,
    inst: &Instance,
    box_size: Option<u32>,
    budget: Option<u64>,
    direction_box: u32,
    c: Option<&str>,
    family: bool,
) -> Result<Output, Failure> {
    let ss = solution_set(inst, box_size, budget)?;
    let (nd, by) = normalized(&ss)?;
    let pts = points_of(&nd);
    let eq = &nd.equation;
    let n = eq.n();
    let found = match c {
        Some(c) => {
            let c = parse_direction(c)?;
            unitlab::degeneracy::is_degenerate_direction(&pts, &c)?.then_some(c)
        }
        None => find_direction(&pts, direction_box, DEFAULT_DIRECTION_CAP)?,
    };
    let mut body = json!({
        "n": n,
        "a_normalized": f::rats(eq.coefficients().as_slice()),
        "normalized_by": by.as_deref().map(f::rats).unwrap_or(Value::Null),
        "rows": f::rat_rows(&pts),
        "direction_box": if c.is_some() { Value::Null } else { json!(direction_box) },
        "found": found.is_some(),
    });
    let schema = if family { f::FAMILY } else { f::DIRECTION };
    let Some(c) = found else {
        let summary = format!("no degenerate direction with entries in [−{direction_box}, {direction_box}] (not a proof of absence)");
        return Ok(Output::ok(artifact(schema, config, body), summary));
    };
    let k = lambda_kernel(&pts, &c)?;
    let (bv, eps) = specialize(&k, &c);
    let mut failed = None;
    if let Err(row) = verify_specialized(&pts, &bv, &eps) {
        failed = Some(Failure::Verification(format!("sign identities fail on row {row}")));
    }
    body["c"] = json!(c.rows());
    body["kernel"] = json!(k.iter().map(f::poly).collect::<Vec<_>>());
    body["kernel_identities"] = json!("verified symbolically");
    body["b"] = f::rats(&bv.b);
    body["b0"] = f::rat(&bv.b0);
    body["epsilon"] = json!(eps.eps);
    body["specialized_identities"] = json!(failed.is_none());
    let mut summary = format!("direction {:?}, kernel degree ≤ {}", c.rows(), k.iter().filter_map(|p| p.degree()).max().unwrap_or(0));
    if family && failed.is_none() {
        let claim = check_claim(eq.coefficients(), &bv);
        body["claim"] = json!(claim);
        if !claim {
            failed = Some(Failure::Verification("(b ε, b₀) is proportional to (a, 1)".into()));
        } else {
            let hs = cover_family(eq.coefficients(), &bv)?;
            let cov = coverage(&pts, &hs);
            let missing = cov.iter().filter(|c| c.is_none()).count();
            body["normals"] = json!(hs.iter().map(f::hyperplane).collect::<Vec<_>>());
            body["bound"] = json!(1u64 << n);
            body["coverage"] = json!(pts
                .iter()
                .zip(&cov)
                .map(|(p, c)| json!({ "x": f::rats(p), "hyperplane": c }))
                .collect::<Vec<_>>());
            if missing > 0 {
                failed = Some(Failure::Verification(format!("{missing} non-degenerate solutions on no family hyperplane")));
            }
            summary += &format!("; {} hyperplanes (≤ 2^{n}) cover all {} non-degenerate solutions", hs.len(), pts.len());
        }
    }
    Ok(Output { artifact: Artifact::Json(artifact(schema, config, body)), summary, failed })
}

fn points_from_value(v: &Value) -> Result<(Vec<Vec<Rational>>, Option<&Value>), Failure> {
    match v {
        Value::Array(_) => Ok((f::parse_rat_rows(v, "points")?, None)),
        Value::Object(m) if m.contains_key("points") => Ok((f::parse_rat_rows(&m["points"], "points")?, None)),
        Value::Object(m) if m.contains_key("solutions") => {
            Ok((f::parse_rat_rows(&m["solutions"], "solutions")?, Some(v)))
        }
        _ => Err(Failure::missing("points")),
    }
}

fn load_points(path: &Path) -> Result<(Vec<Vec<Rational>>, Option<Value>), Failure> {
    let text = read_text(path)?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        let (p, src) = points_from_value(&v)?;
        return Ok((p, src.cloned()));
    }
    // Solution stream: the header line carries a schema, every other line an `x`.
    let mut pts = Vec::new();
    let mut head = None;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line).map_err(|e| Failure::Input(format!("line {}: {e}", i + 1)))?;
        if v.get("schema").is_some() {
            head = Some(v);
        } else {
            pts.push(f::parse_rat_array(f::field(&v, "x")?, &format!("line {} x", i + 1))?);
        }
    }
    Ok((pts, head))
}

fn cover(config: &Value, input: &Path, limit: Option<usize>, budget: Option<u64>, mode: Option<&str>) -> Result<Output, Failure> {
    let (pts, source) = load_points(input)?;
    let greedy_only = match mode {
        None | Some("exact") => false,
        Some("greedy") => true,
        Some(m) => return Err(Failure::Input(format!("cover mode `{m}` (expected exact or greedy)"))),
    };
    let n = pts.first().map_or(0, Vec::len);
    let max_flat = max_points_per_flat(&pts)?;
    let greedy = greedy_cover(&pts)?;
    let counting = if max_flat == 0 { 0 } else { pts.len().div_ceil(max_flat) };
    let mut body = json!({
        "n": n,
        "points": pts.len(),
        "mode": if greedy_only { "greedy" } else { "exact" },
        "max_points_per_flat": max_flat,
        "counting_lower_bound": counting,
        "greedy_size": greedy.size(),
        "bound": if n < 64 { json!(1u64 << n) } else { Value::Null },
        "source_schema": source.as_ref().and_then(|s| s.get("schema")).cloned().unwrap_or(Value::Null),
        "source_kind": source.as_ref().and_then(|s| s.get("kind")).cloned().unwrap_or(Value::Null),
    });
    let (cov, proven) = if greedy_only {
        (greedy, false)
    } else {
        let opts = CoverOptions { node_cap: budget.unwrap_or(unitlab::cover::DEFAULT_NODE_CAP) };
        match min_cover_with(&pts, limit, opts) {
            Ok(r) => {
                body["lower_bound"] = json!(r.lower_bound);
                (r.cover, r.proven_minimal)
            }
            Err(CoverError::LimitExceeded { limit, lower_bound }) => {
                body["m"] = Value::Null;
                body["limit"] = json!(limit);
                body["lower_bound"] = json!(lower_bound);
                body["proven_minimal"] = json!(false);
                let summary = format!("no cover with at most {limit} subspaces (m ≥ {lower_bound})");
                return Ok(Output::ok(artifact(f::COVER, config, body), summary));
            }
            Err(e) => return Err(e.into()),
        }
    };
    if let Err(i) = verify_cover(&pts, &cov.hyperplanes) {
        return Err(Failure::Verification(format!("point {i} is not covered")));
    }
    body["m"] = json!(cov.size());
    body["proven_minimal"] = json!(proven);
    body["limit"] = json!(limit);
    body["hyperplanes"] = json!(cov.hyperplanes.iter().map(f::hyperplane).collect::<Vec<_>>());
    body["assignment"] = json!(cov.assignment);
    let mut failed = None;
    if let Some(src) = &source {
        if src.get("kind") == Some(&json!("permutation_example")) && proven && cov.size() != n {
            failed = Some(Failure::Verification(format!("permuted solutions need {} subspaces, expected n = {n}", cov.size())));
        }
    }
    let summary = format!(
        "m = {} over {} points (proven_minimal = {proven}, greedy {}, max {max_flat} per flat)",
        cov.size(),
        pts.len(),
        body["greedy_size"]
    );
    Ok(Output { artifact: Artifact::Json(artifact(f::COVER, config, body)), summary, failed })
}

#[allow(clippy::too_many_arguments)]
fn lemma41(
    config: &Value,
    n: usize,
    mode: Option<&str>,
    count: u64,
    seed: u64,
    budget: Option<u64>,
    pattern_budget: Option<u64>,
    sharpness: bool,
) -> Result<Output, Failure> {
    let t = compute_t(n, pattern_budget.unwrap_or(DEFAULT_PATTERN_BUDGET))?;
    let mode = match mode {
        None | Some("exhaustive") => SubsetMode::Exhaustive,
        Some("sampled") => SubsetMode::Sampled { count, seed },
        Some(m) => return Err(Failure::Input(format!("lemma41 mode `{m}` (expected exhaustive or sampled)"))),
    };
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let r = verify_subset_threshold(&t, &mode, budget)?;
    let hist: BTreeMap<String, u64> = r.witness_histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let perms = t.perms();
    let show = |s: &[usize]| json!(s.iter().map(|&i| f::perm_1based(&perms[i])).collect::<Vec<_>>());
    let mut body = json!({
        "n": n,
        "mode": match &r.mode { SubsetMode::Exhaustive => "exhaustive", SubsetMode::Sampled { .. } => "sampled" },
        "seed": match &r.mode { SubsetMode::Sampled { seed, .. } => json!(seed), _ => Value::Null },
        "t_sets": t.sets().len(),
        "t_tuples": t.ordered_count(),
        "subset_size": r.subset_size,
        "subsets_checked": r.subsets_checked,
        "failures": r.failures.iter().map(|s| show(s)).collect::<Vec<_>>(),
        "witness_histogram": hist,
        "first_witness": r.first_witness.as_ref().map(|(s, w)| json!({ "subset": show(s), "witness": show(w) })),
        "note": "only subsets of the minimal size are checked; a larger subset contains one and inherits its witness",
    });
    if sharpness {
        let s = explore_sharpness(&t, budget, 5)?;
        body["sharpness"] = json!({
            "subset_size": s.subset_size,
            "subsets_checked": s.subsets_checked,
            "vanishing": s.vanishing,
            "examples": s.examples.iter().map(|e| show(e)).collect::<Vec<_>>(),
            "note": "exploratory; no claim either way",
        });
    }
    let failed = (!r.failures.is_empty())
        .then(|| Failure::Verification(format!("{} subsets have no nonvanishing n-tuple", r.failures.len())));
    let summary = format!(
        "n = {n}: {} subsets of size {} checked, {} failures",
        r.subsets_checked,
        r.subset_size,
        r.failures.len()
    );
    Ok(Output { artifact: Artifact::Json(artifact(f::LEMMA41, config, body)), summary, failed })
}

fn example4(
    config: &Value,
    n: usize,
    gamma1: &str,
    torsion: bool,
    box_size: Option<u32>,
    budget: Option<u64>,
) -> Result<Output, Failure> {
    let g1 = gamma1_from(gamma1, torsion)?;
    let t = compute_t(n, budget.unwrap_or(DEFAULT_PATTERN_BUDGET))?;
    let scan = box_size.unwrap_or(DEFAULT_SCAN_BOX);
    let inst = generate_example(&g1, &t, scan)?;
    let hs = explicit_n_cover(&inst);
    let per: Vec<usize> = hs.iter().map(|h| inst.solutions.iter().filter(|x| h.contains(x)).count()).collect();
    let max_flat = max_points_per_subspace(&inst);
    let fact: usize = (1..n).product();
    let mut failed = None;
    if verify_cover(&inst.solutions, &hs).is_err() || per.iter().any(|&c| c != fact) {
        failed = Some(Failure::Verification("explicit hyperplanes do not cover (n−1)! points each".into()));
    }
    let mut body = serde_json::Map::new();
    body.insert("kind".into(), json!("permutation_example"));
    body.extend(f::instance_json(n, inst.equation.coefficients().as_slice(), &g1));
    body.insert("u".into(), f::rats(&inst.u));
    body.insert("b".into(), f::rat(&inst.b));
    body.insert("box".into(), json!(scan));
    body.insert("t_sets".into(), json!(t.sets().len()));
    body.insert("solutions".into(), f::rat_rows(&inst.solutions));
    body.insert("explicit_cover".into(), json!(hs.iter().map(f::hyperplane).collect::<Vec<_>>()));
    body.insert("explicit_cover_counts".into(), json!(per));
    body.insert("max_points_per_subspace".into(), json!(max_flat));
    body.insert("counting_lower_bound".into(), json!(inst.solutions.len().div_ceil(max_flat)));
    let summary = format!(
        "u = ({}), b = {}: {} solutions, at most {max_flat} per proper subspace, explicit cover by {n}",
        inst.u.iter().map(unitlab::arith::format_rational).collect::<Vec<_>>().join(", "),
        unitlab::arith::format_rational(&inst.b),
        inst.solutions.len()
    );
    Ok(Output { artifact: Artifact::Json(artifact(f::INSTANCE, config, Value::Object(body))), summary, failed })
}

fn bset(
    config: &Value,
    n: usize,
    gamma1: &str,
    torsion: bool,
    count: usize,
    box_size: Option<u32>,
    budget: Option<u64>,
) -> Result<Output, Failure> {
    let g1 = gamma1_from(gamma1, torsion)?;
    let t = compute_t(n, budget.unwrap_or(DEFAULT_PATTERN_BUDGET))?;
    let scan = box_size.unwrap_or(DEFAULT_SCAN_BOX);
    let s = b_inequivalence_sample(&g1, &t, count, scan)?;
    let inequivalent = s
        .values
        .iter()
        .enumerate()
        .all(|(i, p)| !p.is_zero() && !s.values[..i].iter().any(|q| equivalent_values(&g1, p, q)));
    let mut failed =
        (!inequivalent).then(|| Failure::Verification("sampled values are not pairwise inequivalent".into()));
    if failed.is_none() && !s.complete {
        failed = Some(Failure::Budget(format!("only {} of {count} values in box {scan}", s.values.len())));
    }
    let body = json!({
        "n": n,
        "gamma1": { "generators": g1.generators().iter().map(|g| f::rat(&g[0])).collect::<Vec<_>>(), "sign_torsion": torsion },
        "box": scan,
        "requested": count,
        "complete": s.complete,
        "values": f::rats(&s.values),
        "tuples": f::rat_rows(&s.tuples),
        "pairwise_inequivalent": inequivalent,
    });
    let summary = format!(
        "{} pairwise inequivalent values: {}",
        s.values.len(),
        s.values.iter().map(unitlab::arith::format_rational).collect::<Vec<_>>().join(", ")
    );
    Ok(Output { artifact: Artifact::Json(artifact(f::BSET, config, body)), summary, failed })
}

