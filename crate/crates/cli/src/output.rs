//! Text, JSON and LaTeX renderings. Output never contains timings, so equal
//! inputs give byte-identical output.

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use springer_qh::classical::Presentation;
use springer_qh::report::VerifyReport;
use springer_qh::symbolic::text::{rat_latex, rat_to_text, LatexStyle};
use springer_qh::symbolic::SymMatrix;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

const LATEX: LatexStyle = LatexStyle { t_alias: true };

fn envelope(config: Map<String, Value>, payload: Value) -> String {
    let doc = json!({
        "meta": { "version": env!("CARGO_PKG_VERSION"), "config": config },
        "payload": payload,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn presentation(p: &Presentation, format: Format, config: Map<String, Value>) -> String {
    let rs = &p.rs;
    let name = if rs.special_linear { format!("SL_{}", rs.rank) } else { format!("{} rank {}", rs.family, rs.rank) };
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "presentation of {name} over {}", p.coefficient_ring);
            let _ = writeln!(out, "generators: {}", p.generators.join(", "));
            for (i, d) in p.chi_defs.iter().enumerate() {
                let _ = writeln!(out, "chi{} = {}", i + 1, rat_to_text(d));
            }
            for r in &p.relations {
                let _ = writeln!(out, "[{}] {} = 0", r.label, rat_to_text(&r.expr));
            }
        }
        Format::Json => {
            let payload = json!({
                "family": rs.family.to_string(),
                "rank": rs.rank,
                "special_linear": rs.special_linear,
                "generators": p.generators,
                "chi_definitions": p.chi_defs.iter().map(rat_to_text).collect::<Vec<_>>(),
                "relation_labels": p.relations.iter().map(|r| r.label.clone()).collect::<Vec<_>>(),
                "relations": p.relations.iter().map(|r| rat_to_text(&r.expr)).collect::<Vec<_>>(),
                "coefficient_ring": p.coefficient_ring,
            });
            return envelope(config, payload);
        }
        Format::Latex => {
            let _ = writeln!(out, "% presentation of {name}");
            out.push_str("\\begin{align*}\n");
            for (i, d) in p.chi_defs.iter().enumerate() {
                let _ = writeln!(out, "\\chi_{{{}}} &= {} \\\\", i + 1, rat_latex(d, LATEX));
            }
            for (i, r) in p.relations.iter().enumerate() {
                let end = if i + 1 == p.relations.len() { "" } else { " \\\\" };
                let _ = writeln!(out, "0 &= {}{end}", rat_latex(&r.expr, LATEX));
            }
            out.push_str("\\end{align*}\n");
        }
    }
    out
}

pub fn matrix(m: &SymMatrix, format: Format, config: Map<String, Value>) -> String {
    let n = m.dim();
    let rows = |f: &dyn Fn(usize, usize) -> String| -> Vec<Vec<String>> {
        (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
    };
    match format {
        Format::Text => rows(&|i, j| rat_to_text(m.get(i, j))).iter().map(|r| format!("[{}]\n", r.join(", "))).collect(),
        Format::Json => envelope(config, json!({ "dim": n, "entries": rows(&|i, j| rat_to_text(m.get(i, j))) })),
        Format::Latex => {
            let body: Vec<String> = rows(&|i, j| rat_latex(m.get(i, j), LATEX)).iter().map(|r| r.join(" & ")).collect();
            format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", body.join(" \\\\\n"))
        }
    }
}

fn report_json(r: &VerifyReport) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let mut v = json!({ "suite": r.suite, "params": params, "passed": r.passed });
    if let Some(c) = &r.counterexample {
        v["counterexample"] = json!(c);
        v["reproducer"] = json!(r.reproducer());
    }
    v
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('^', "\\^{}").replace('&', "\\&").replace('#', "\\#")
}

pub fn reports(rs: &[VerifyReport], skipped: &[String], format: Format, config: Map<String, Value>) -> String {
    let passed = rs.iter().filter(|r| r.passed).count();
    let failed = rs.len() - passed;
    let summary = format!("{passed} passed, {failed} failed, {} skipped", skipped.len());
    let mut out = String::new();
    match format {
        Format::Text => {
            for r in rs {
                let _ = writeln!(out, "{r}");
            }
            for s in skipped {
                let _ = writeln!(out, "SKIP {s}");
            }
            let _ = writeln!(out, "{summary}");
            if failed > 0 {
                out.push_str("reproduce failures with:\n");
                for r in rs.iter().filter(|r| !r.passed) {
                    let _ = writeln!(out, "  {}", r.reproducer());
                }
            }
        }
        Format::Json => {
            let payload = json!({
                "reports": rs.iter().map(report_json).collect::<Vec<_>>(),
                "skipped": skipped,
                "summary": { "passed": passed, "failed": failed, "skipped": skipped.len() },
            });
            return envelope(config, payload);
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{ll}\n");
            for r in rs {
                let _ = writeln!(out, "\\texttt{{{}}} & {} \\\\", latex_escape(&r.instance_key()), if r.passed { "pass" } else { "fail" });
            }
            for s in skipped {
                let _ = writeln!(out, "\\texttt{{{}}} & skipped \\\\", latex_escape(s));
            }
            out.push_str("\\end{tabular}\n");
            let _ = writeln!(out, "% {summary}");
        }
    }
    out
}
