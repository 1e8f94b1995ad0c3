//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! `sqh verify --suite all` runs twice with fresh caches. Criterion 12
//! compares the two outputs byte for byte; criteria 1-11 look up the
//! instances they name in the first run's JSON report.

use serde_json::Value;
use springer_qh::classical::elementary_e;
use springer_qh::rootdata::Family;
use springer_qh::symbolic::text::parse_rat;
use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

type Params = BTreeMap<String, String>;

struct Report {
    suite: String,
    params: Params,
    passed: bool,
}

struct Run {
    stdout: Vec<u8>,
    code: Option<i32>,
    reports: Vec<Report>,
}

fn run_all() -> Run {
    let cache = tempfile::tempdir().expect("temporary cache directory");
    let out = Command::new(env!("CARGO_BIN_EXE_sqh"))
        .args(["verify", "--suite", "all", "--format", "json", "--cache-dir"])
        .arg(cache.path())
        .output()
        .expect("sqh runs");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let reports = doc["payload"]["reports"]
        .as_array()
        .map(|rs| {
            rs.iter()
                .map(|r| Report {
                    suite: r["suite"].as_str().unwrap_or_default().to_string(),
                    params: r["params"]
                        .as_object()
                        .map(|m| m.iter().map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string())).collect())
                        .unwrap_or_default(),
                    passed: r["passed"].as_bool().unwrap_or(false),
                })
                .collect()
        })
        .unwrap_or_default();
    Run { stdout: out.stdout, code: out.status.code(), reports }
}

/// An instance a criterion requires: suite, parameters, and how many
/// reports it must produce (one per Weyl pair for exhaustive suites).
struct Want {
    suite: &'static str,
    params: Vec<(&'static str, String)>,
    count: usize,
}

fn want(suite: &'static str, params: &[(&'static str, &str)]) -> Want {
    Want { suite, params: params.iter().map(|(k, v)| (*k, v.to_string())).collect(), count: 1 }
}

fn times(mut w: Want, count: usize) -> Want {
    w.count = count;
    w
}

fn fam(f: &str, n: usize) -> Vec<(&'static str, String)> {
    vec![("family", f.to_string()), ("rank", n.to_string())]
}

fn on(suite: &'static str, f: &str, n: usize, extra: &[(&'static str, &str)]) -> Want {
    let mut params = fam(f, n);
    params.extend(extra.iter().map(|(k, v)| (*k, v.to_string())));
    Want { suite, params, count: 1 }
}

fn sl2(suite: &'static str, extra: &[(&'static str, &str)]) -> Want {
    let mut w = on(suite, "A", 2, &[("special-linear", "true")]);
    w.params.extend(extra.iter().map(|(k, v)| (*k, v.to_string())));
    w
}

const SL2_W: &str = "1/2,-1/2";

/// Parameters a want may leave open: the Weyl elements of exhaustive suites.
const FREE: [&str; 2] = ["u", "w"];

/// Every wanted instance appears exactly `count` times and passed.
fn check(run: &Run, wants: &[Want]) -> Result<String, String> {
    let mut total = 0;
    for w in wants {
        let hits: Vec<&Report> = run
            .reports
            .iter()
            .filter(|r| r.suite == w.suite)
            .filter(|r| w.params.iter().all(|(k, v)| r.params.get(*k) == Some(v)))
            .filter(|r| r.params.keys().all(|k| FREE.contains(&k.as_str()) || w.params.iter().any(|(wk, _)| wk == k)))
            .collect();
        let label = format!("{}{:?}", w.suite, w.params);
        if hits.len() != w.count {
            return Err(format!("{label}: expected {} reports, found {}", w.count, hits.len()));
        }
        if let Some(bad) = hits.iter().find(|r| !r.passed) {
            return Err(format!("{label}: failed instance {:?}", bad.params));
        }
        total += hits.len();
    }
    Ok(format!("{total} instances"))
}

fn c6_printed_expansions() -> Result<String, String> {
    let es = elementary_e(Family::A, 3).map_err(|e| e.to_string())?;
    let v = |i: usize, j: usize| format!("hbar^2*q{i}*q{j}/(q{i} - q{j})^2");
    let printed = [
        "chi1 + chi2 + chi3".to_string(),
        format!("chi1*chi2 + chi1*chi3 + chi2*chi3 + {} + {} + {}", v(1, 2), v(1, 3), v(2, 3)),
        format!("chi1*chi2*chi3 + chi3*{} + chi2*{} + chi1*{}", v(1, 2), v(1, 3), v(2, 3)),
    ];
    for (k, text) in printed.iter().enumerate() {
        let expected = parse_rat(text).map_err(|e| e.to_string())?;
        if es[k] != expected {
            return Err(format!("E_{} = {} differs from the printed {}", k + 1, es[k], text));
        }
    }
    Ok("printed n=3 expansions match".into())
}

fn main() {
    let start = Instant::now();
    let first = run_all();
    let second = run_all();
    let elapsed = start.elapsed();

    let mut results: Vec<(u32, &str, Result<String, String>)> = Vec::new();
    let mut add = |n: u32, name: &'static str, r: Result<String, String>| results.push((n, name, r));

    add(1, "SL2 product", check(&first, &[sl2("sl2-product", &[])]));
    add(2, "SL2 relation and hypertoric identity", check(&first, &[sl2("sl2-relation", &[])]));

    let mut traces: Vec<Want> = (1..=4).map(|k| sl2("traces", &[("weight", SL2_W), ("k", &k.to_string())])).collect();
    for w in ["-1,0,0", "2,1,0"] {
        traces.extend((1..=3).map(|k| on("traces", "A", 3, &[("weight", w), ("k", &k.to_string())])));
    }
    for f in ["B", "C"] {
        traces.extend((1..=2).map(|k| on("traces", f, 2, &[("weight", "-1,0"), ("k", &k.to_string())])));
    }
    add(3, "trace relations", check(&first, &traces));

    add(
        4,
        "eigencolumn identity",
        check(
            &first,
            &[
                sl2("eigencolumn", &[("weight", SL2_W)]),
                on("eigencolumn", "A", 3, &[("weight", "-1,0,0")]),
                on("eigencolumn", "A", 3, &[("weight", "2,1,0")]),
                on("eigencolumn", "B", 2, &[("weight", "-1,0")]),
            ],
        ),
    );

    // Exhaustive: |W|^2 automorphism pairs, |W| conjugations.
    let mut auto = vec![times(sl2("automorphism", &[("weight", SL2_W)]), 4)];
    for w in ["1,0,0", "1,1,0"] {
        auto.push(times(on("automorphism", "A", 3, &[("weight", w)]), 36));
    }
    auto.push(times(sl2("conjugation", &[("weight", SL2_W)]), 2));
    auto.push(times(on("conjugation", "A", 2, &[("weight", "1,0")]), 2));
    for (f, ws) in [("B", ["1,0", "1/2,1/2"]), ("C", ["1,0", "1,1"]), ("D", ["1/2,-1/2", "1/2,1/2"])] {
        let order = if f == "D" { 4 } else { 8 };
        for w in ws {
            auto.push(times(on("conjugation", f, 2, &[("weight", w)]), order));
        }
    }
    add(5, "automorphism and conjugation law", check(&first, &auto));

    let matching: Vec<Want> = (2..=5).map(|n| want("matching", &[("rank", &n.to_string())])).collect();
    add(6, "matching theorem", check(&first, &matching).and_then(|a| c6_printed_expansions().map(|b| format!("{a}; {b}"))));

    let mut appendix: Vec<Want> = (2..=6).map(|n| want("cyclic", &[("rank", &n.to_string())])).collect();
    appendix.extend((1..=6).map(|n| want("anticauchy", &[("rank", &n.to_string())])));
    add(7, "cyclic sum and anti-Cauchy determinant", check(&first, &appendix));

    let mut bcd: Vec<Want> = Vec::new();
    for (f, n) in [("B", 2), ("C", 2), ("B", 3), ("C", 3), ("D", 2), ("D", 3)] {
        bcd.push(on("oddvanish", f, n, &[]));
    }
    bcd.extend((2..=3).map(|n| want("typeD", &[("rank", &n.to_string())])));
    add(8, "type B/C/D structure", check(&first, &bcd));

    let mut toda: Vec<Want> = (1..=4).map(|n| on("toda", "A", n, &[])).collect();
    toda.extend((1..=3).map(|n| on("toda", "B", n, &[])));
    toda.extend((1..=3).map(|n| want("toda-c-extension", &[("rank", &n.to_string())])));
    toda.extend((2..=3).map(|n| want("toda-d", &[("rank", &n.to_string())])));
    toda.extend((1..=6).map(|n| want("tridiag", &[("rank", &n.to_string())])));
    add(9, "Toda limits", check(&first, &toda));

    let mut cm: Vec<Want> = (1..=3).map(|k| sl2("cm", &[("weight", SL2_W), ("k", &k.to_string())])).collect();
    cm.extend((1..=3).map(|k| on("cm", "A", 3, &[("weight", "-1,0,0"), ("k", &k.to_string())])));
    cm.push(on("cm", "B", 2, &[("weight", "-1,0"), ("k", "2")]));
    cm.push(sl2("hamiltonian", &[("weight", SL2_W)]));
    cm.push(on("hamiltonian", "A", 3, &[("weight", "2,1,0")]));
    cm.push(sl2("dunkl-commute", &[]));
    cm.push(sl2("tracefree", &[("weight", SL2_W), ("k", "2")]));
    for (f, rho) in [("A", "1,0"), ("B", "3/2,1/2"), ("C", "2,1"), ("D", "1,0")] {
        cm.push(on("dunkl-commute", f, 2, &[]));
        cm.push(on("tracefree", f, 2, &[("weight", rho), ("k", "2")]));
    }
    add(10, "Calogero-Moser", check(&first, &cm));

    let mut classical: Vec<Want> = Vec::new();
    for (f, ranks) in [("A", 1..=3), ("B", 1..=3), ("C", 1..=3), ("D", 2..=3)] {
        for n in ranks {
            classical.push(Want { suite: "classical", params: fam(f, n), count: 1 });
            classical.push(on("theta-consistency", f, n, &[]));
        }
    }
    for n in 2..=3 {
        classical.push(on("classical", "A", n, &[("special-linear", "true")]));
    }
    add(11, "classical limits of all presentations", check(&first, &classical));

    let c12 = if first.code != Some(0) || second.code != Some(0) {
        Err(format!("exit codes {:?} and {:?}", first.code, second.code))
    } else if first.stdout.is_empty() {
        Err("empty report".into())
    } else if first.stdout != second.stdout {
        Err("reports differ".into())
    } else {
        Ok(format!("{} identical bytes", first.stdout.len()))
    };
    add(12, "determinism of verify --suite all", c12);

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.0?}", results.len() - failed, results.len(), elapsed);
    if failed > 0 {
        std::process::exit(1);
    }
}
