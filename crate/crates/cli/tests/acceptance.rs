//! Acceptance suite: one PASS/FAIL line per criterion. Criteria 1–8 run
//! through the binary twice, with 1 and with 4 workers; criterion 9 compares
//! the two artifact trees byte for byte.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};
use unitlab::arith::rational::{format_rational, parse_rational, Rational};
use unitlab::arith::UniPoly;
use unitlab::degeneracy::{verify_kernel, verify_specialized, BVector, DirectionMatrix, EpsilonMatrix};
use unitlab::equation::Equation;
use unitlab::lattice::{CoeffTuple, FinRankGroup, Witness};
use unitlab::random::random_equation;

type Outcome = Result<String, String>;

struct Bin<'a> {
    dir: &'a Path,
    workers: usize,
}

impl Bin<'_> {
    fn run(&self, args: &[&str]) -> Result<i32, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_unitlab"))
            .current_dir(self.dir)
            .args(args)
            .args(["--workers", &self.workers.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        Ok(out.status.code().unwrap_or(-1))
    }

    fn ok(&self, args: &[&str]) -> Result<(), String> {
        match self.run(args)? {
            0 => Ok(()),
            c => Err(format!("`unitlab {}` exited with {c}", args.join(" "))),
        }
    }

    fn json(&self, name: &str) -> Result<Value, String> {
        let text = fs::read_to_string(self.dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))
    }

    fn lines(&self, name: &str) -> Result<Vec<Value>, String> {
        let text = fs::read_to_string(self.dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        text.lines().map(|l| serde_json::from_str(l).map_err(|e| format!("{name}: {e}"))).collect()
    }
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(t < limit, format!("{what} took {:.2?}, limit {:.0?}", t, limit))
}

fn rat(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("rational string")).expect("valid rational")
}

fn rats(v: &Value) -> Vec<Rational> {
    v.as_array().expect("array").iter().map(rat).collect()
}

fn permutation_pipeline(bin: &Bin, n: usize, limit: Duration) -> Outcome {
    let t = Instant::now();
    let ex = format!("ex{n}.json");
    let cv = format!("cover{n}.json");
    bin.ok(&["example4", "--n", &n.to_string(), "--gamma1", "2", "--box", "3", "--out", &ex])?;
    bin.ok(&["cover", "--input", &ex, "--out", &cv])?;
    let elapsed = t.elapsed();
    let e = bin.json(&ex)?;
    let c = bin.json(&cv)?;
    let fact: u64 = (1..n as u64).product();
    let points = (fact * n as u64) as usize;
    check(e["solutions"].as_array().map(Vec::len) == Some(points), "wrong number of permuted solutions")?;
    check(c["m"] == json!(n) && c["proven_minimal"] == json!(true), format!("m = {}, expected {n}", c["m"]))?;
    check(c["max_points_per_flat"] == json!(fact), format!("max per flat {}", c["max_points_per_flat"]))?;
    check(e["max_points_per_subspace"] == json!(fact), "instance max per subspace")?;
    // The explicit hyperplanes, checked here by direct substitution.
    let sols: Vec<Vec<Rational>> = e["solutions"].as_array().unwrap().iter().map(rats).collect();
    let normals: Vec<Vec<Rational>> = e["explicit_cover"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["normal"].as_array().unwrap().iter().map(|c| parse_rational(c.as_str().unwrap()).unwrap()).collect())
        .collect();
    check(normals.len() == n, "explicit cover size")?;
    for x in &sols {
        let on = normals.iter().filter(|nm| nm.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() == Rational::from_integer(0.into())).count();
        check(on >= 1, "a permuted solution is on no explicit hyperplane")?;
    }
    within(elapsed, limit, "pipeline")?;
    Ok(format!(
        "u = {}, {points} points, m = {n} (proven), max {fact} per flat, explicit cover verified, {:.2?}",
        e["u"], elapsed
    ))
}

fn criterion3(bin: &Bin) -> Outcome {
    let t = Instant::now();
    bin.ok(&["lemma41", "--n", "3", "--mode", "exhaustive", "--out", "l3.json"])?;
    let t3 = t.elapsed();
    let r3 = bin.json("l3.json")?;
    check(r3["subsets_checked"] == json!(20) && r3["failures"] == json!([]), "n = 3 exhaustive")?;
    within(t3, Duration::from_secs(1), "n = 3 exhaustive")?;
    let t = Instant::now();
    bin.ok(&["lemma41", "--n", "4", "--mode", "sampled", "--count", "100000", "--seed", "0", "--out", "l4s.json"])?;
    let t4 = t.elapsed();
    let r4 = bin.json("l4s.json")?;
    check(r4["subsets_checked"] == json!(100000) && r4["subset_size"] == json!(7), "n = 4 sampled size")?;
    check(r4["failures"] == json!([]), "n = 4 sampled failures")?;
    within(t4, Duration::from_secs(600), "n = 4 sampled")?;
    // Full n = 4 sits behind the budget flag.
    check(bin.run(&["lemma41", "--n", "4", "--mode", "exhaustive", "--out", "l4x.json"])? == 3, "exhaustive n = 4 ran without budget")?;
    bin.ok(&["lemma41", "--n", "4", "--mode", "exhaustive", "--budget", "400000", "--out", "l4x.json"])?;
    let rx = bin.json("l4x.json")?;
    check(rx["subsets_checked"] == json!(346104) && rx["failures"] == json!([]), "n = 4 exhaustive")?;
    Ok(format!("n=3: 20/20 in {t3:.2?}; n=4 sampled: 100000, 0 failures in {t4:.2?}; n=4 exhaustive (budget flag): 346104, 0 failures"))
}

fn instance_file(eq: &Equation) -> Value {
    json!({
        "schema": "unitlab.instance/1",
        "n": eq.n(),
        "a": eq.coefficients().as_slice().iter().map(format_rational).collect::<Vec<_>>(),
        "group": {
            "generators": eq.group().generators().iter().map(|g| g.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "sign_torsion": eq.group().sign_torsion(),
        },
    })
}

fn criterion4(bin: &Bin) -> Outcome {
    let t = Instant::now();
    let inst = json!({ "schema": "unitlab.instance/1", "n": 2, "a": ["1", "1"], "gamma1": { "generators": ["2"], "sign_torsion": true } });
    fs::write(bin.dir.join("two.json"), inst.to_string()).map_err(|e| e.to_string())?;
    bin.ok(&["enumerate", "--instance", "two.json", "--box", "6", "--out", "two.jsonl"])?;
    let elapsed = t.elapsed();
    let lines = bin.lines("two.jsonl")?;
    let got: BTreeSet<Vec<Rational>> = lines[1..].iter().map(|l| rats(&l["x"])).collect();
    // Naive scan of the whole box.
    let g = FinRankGroup::power(&FinRankGroup::new(1, vec![vec![Rational::from_integer(2.into())]], true).unwrap(), 2).unwrap();
    let mut naive = BTreeSet::new();
    for z1 in -6..=6 {
        for z2 in -6..=6 {
            for m in 0..4u32 {
                let x = g.element(&Witness { z: vec![z1, z2], flip: vec![m & 1 == 1, m & 2 == 2] });
                if (&x[0] + &x[1]).is_one() {
                    naive.insert(x);
                }
            }
        }
    }
    check(got == naive, "enumeration differs from the naive scan")?;
    let expected: BTreeSet<Vec<Rational>> = [["1/2", "1/2"], ["2", "-1"], ["-1", "2"]]
        .iter()
        .map(|p| p.iter().map(|s| parse_rational(s).unwrap()).collect())
        .collect();
    check(got == expected, "solution set differs")?;
    let r = g.rank() as u32;
    check(r == 2 && (got.len() as u128) <= 1u128 << (8 * (r + 2)), "envelope")?;
    within(elapsed, Duration::from_secs(1), "enumeration")?;
    Ok(format!("{{(1/2,1/2),(2,-1),(-1,2)}} = naive scan; 3 ≤ 2^{} ; {elapsed:.2?}", 8 * (r + 2)))
}

/// Runs the randomized enumerations shared by criteria 5 and 7.
fn random_enumerations(bin: &Bin) -> Result<Vec<Vec<Value>>, String> {
    let mut out = Vec::new();
    for seed in 0..24u64 {
        let eq = random_equation(seed, 4, 3);
        let name = format!("rand{seed}.json");
        fs::write(bin.dir.join(&name), instance_file(&eq).to_string()).map_err(|e| e.to_string())?;
        let bx = (1 + seed % 3).to_string();
        let o = format!("rand{seed}.jsonl");
        let code = bin.run(&["enumerate", "--instance", &name, "--box", &bx, "--out", &o])?;
        check(code == 0 || code == 2, format!("seed {seed}: exit {code}"))?;
        out.push(bin.lines(&o)?);
    }
    Ok(out)
}

fn criterion5(runs: &[Vec<Value>]) -> Outcome {
    let mut violations = 0;
    for r in runs {
        let n = r[0]["n"].as_u64().unwrap();
        let rank = r[0]["solution_matrix_rank"].as_u64().unwrap();
        check(n <= 4 && r[0]["box"].as_u64().unwrap() <= 3, "instance outside the stated range")?;
        if rank > n {
            violations += 1;
        }
    }
    check(violations == 0, format!("{violations} rank violations"))?;
    let sols: usize = runs.iter().map(|r| r.len() - 1).sum();
    Ok(format!("{} instances, {sols} solutions, 0 rank violations", runs.len()))
}

fn criterion7(runs: &[Vec<Value>]) -> Outcome {
    let mut degenerate = 0;
    for r in runs {
        let n = r[0]["n"].as_u64().unwrap() as u32;
        let hs: Vec<Vec<Rational>> = r[0]["subsum_hyperplanes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|h| h["normal"].as_array().unwrap().iter().map(|c| parse_rational(c.as_str().unwrap()).unwrap()).collect())
            .collect();
        check(hs.len() == (1usize << n) - n as usize - 2, "subsum hyperplane count")?;
        for l in &r[1..] {
            if l["degenerate"] == json!(true) {
                degenerate += 1;
                let x = rats(&l["x"]);
                let on = hs.iter().any(|h| h.iter().zip(&x).map(|(a, b)| a * b).sum::<Rational>() == Rational::from_integer(0.into()));
                check(on, format!("degenerate solution {:?} on no subsum hyperplane", l["x"]))?;
            }
        }
    }
    check(degenerate > 0, "no degenerate solutions were exercised")?;
    Ok(format!("{degenerate} degenerate solutions, each on one of the 2^n−n−2 subsum hyperplanes"))
}

fn criterion6(bin: &Bin) -> Outcome {
    let t = Instant::now();
    // x = (t, t, 2t−1) for t ∈ {2, −1, 1/3, 3/2} solves x₁ + x₂ − x₃ = 1; dividing by
    // the t = 2 solution (2, 2, 3) gives a = (2, 2, −3) with the all-ones solution.
    let inst = json!({
        "schema": "unitlab.instance/1",
        "n": 3,
        "a": ["2", "2", "-3"],
        "group": {
            "generators": [["2","1","1"],["1","2","1"],["1","1","2"],["3","1","1"],["1","3","1"],["1","1","3"]],
            "sign_torsion": true,
        },
        "solutions": [["1","1","1"], ["-1/2","-1/2","-1"], ["1/6","1/6","-1/9"], ["3/4","3/4","2/3"]],
    });
    fs::write(bin.dir.join("family.json"), inst.to_string()).map_err(|e| e.to_string())?;
    bin.ok(&["family", "--instance", "family.json", "--direction-box", "1", "--out", "family_out.json"])?;
    bin.ok(&["classify", "--instance", "family.json", "--direction-box", "1", "--out", "family_class.json"])?;
    let elapsed = t.elapsed();
    let r = bin.json("family_out.json")?;
    check(r["found"] == json!(true), "no direction found")?;
    let rows: Vec<Vec<Rational>> = r["rows"].as_array().unwrap().iter().map(rats).collect();
    let c = DirectionMatrix::new(
        r["c"].as_array().unwrap().iter().map(|row| row.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect(),
    )
    .map_err(|e| e.to_string())?;
    let kernel: Vec<UniPoly> = r["kernel"].as_array().unwrap().iter().map(|p| UniPoly::new(rats(p))).collect();
    verify_kernel(&rows, &c, &kernel).map_err(|e| format!("kernel identities: {e}"))?;
    let bv = BVector { b: rats(&r["b"]), b0: rat(&r["b0"]) };
    let eps = EpsilonMatrix {
        eps: r["epsilon"].as_array().unwrap().iter().map(|row| row.as_array().unwrap().iter().map(|x| x.as_i64().unwrap() as i8).collect()).collect(),
    };
    verify_specialized(&rows, &bv, &eps).map_err(|row| format!("sign identities fail on row {row}"))?;
    check(r["claim"] == json!(true), "claim check")?;
    let normals: Vec<Vec<Rational>> = r["normals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["normal"].as_array().unwrap().iter().map(|c| parse_rational(c.as_str().unwrap()).unwrap()).collect())
        .collect();
    check(normals.len() <= 8, "more than 2^n normals")?;
    for x in &rows {
        let on = normals.iter().any(|nm| nm.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() == Rational::from_integer(0.into()));
        check(on, "a family solution is on no emitted hyperplane")?;
    }
    let a = CoeffTuple::new(rats(&r["a_normalized"])).unwrap();
    check(a.as_slice().iter().sum::<Rational>().is_one(), "normalization")?;
    let class = bin.json("family_class.json")?;
    within(elapsed, Duration::from_secs(10), "family pipeline")?;
    let eqs: Vec<&str> = r["normals"].as_array().unwrap().iter().map(|h| h["equation"].as_str().unwrap()).collect();
    Ok(format!("c = {}, kernel {}, normals {:?}, label {}, {elapsed:.2?}", r["c"], r["kernel"], eqs, class["class"]["label"]))
}

/// `p/q = ±2^k`, decided by stripping twos.
fn power_of_two_ratio(p: &Rational, q: &Rational) -> bool {
    let r = p / q;
    let strip = |m: &BigInt| {
        let mut m = m.abs();
        let two = BigInt::from(2);
        while m.is_even() {
            m /= &two;
        }
        m
    };
    strip(r.numer()).is_one() && strip(r.denom()).is_one()
}

fn criterion8(bin: &Bin) -> Outcome {
    let t = Instant::now();
    bin.ok(&["bset", "--n", "3", "--gamma1", "2", "--torsion", "--count", "5", "--out", "bset.json"])?;
    let elapsed = t.elapsed();
    let r = bin.json("bset.json")?;
    let vals = rats(&r["values"]);
    check(vals.len() >= 5, format!("only {} values", vals.len()))?;
    for (i, p) in vals.iter().enumerate() {
        for q in &vals[..i] {
            check(!power_of_two_ratio(p, q), format!("{p} and {q} are equivalent"))?;
        }
    }
    within(elapsed, Duration::from_secs(60), "bset")?;
    Ok(format!("{} values {}, pairwise ratios not ±2^k, {elapsed:.2?}", vals.len(), r["values"]))
}

fn suite(dir: &Path, workers: usize) -> Vec<Outcome> {
    let bin = Bin { dir, workers };
    let runs = random_enumerations(&bin);
    vec![
        permutation_pipeline(&bin, 3, Duration::from_secs(60)),
        permutation_pipeline(&bin, 4, Duration::from_secs(300)),
        criterion3(&bin),
        criterion4(&bin),
        runs.as_ref().map_err(Clone::clone).and_then(|r| criterion5(r)),
        criterion6(&bin),
        runs.as_ref().map_err(Clone::clone).and_then(|r| criterion7(r)),
        criterion8(&bin),
    ]
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn criterion9(d1: &Path, d4: &Path) -> Outcome {
    let (f1, f4) = (files(d1), files(d4));
    let names = |fs: &[PathBuf]| fs.iter().map(|p| p.file_name().unwrap().to_owned()).collect::<Vec<_>>();
    check(names(&f1) == names(&f4), "different artifact sets")?;
    for (a, b) in f1.iter().zip(&f4) {
        check(fs::read(a).unwrap() == fs::read(b).unwrap(), format!("{} differs", a.file_name().unwrap().to_string_lossy()))?;
    }
    Ok(format!("{} artifacts byte-identical across 1 and 4 workers", f1.len()))
}

fn main() {
    let d1 = tempfile::tempdir().unwrap();
    let d4 = tempfile::tempdir().unwrap();
    let r1 = suite(d1.path(), 1);
    let r4 = suite(d4.path(), 4);
    let mut results: Vec<Outcome> = r1
        .into_iter()
        .zip(r4)
        .map(|(a, b)| match (a, b) {
            (Ok(m), Ok(_)) => Ok(m),
            (Err(e), _) => Err(format!("1 worker: {e}")),
            (_, Err(e)) => Err(format!("4 workers: {e}")),
        })
        .collect();
    results.push(criterion9(d1.path(), d4.path()));
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(m) => println!("criterion {}: PASS — {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {}: FAIL — {m}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
