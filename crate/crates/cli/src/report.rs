//! The `verify` report: a JSON document and a plain-text table.
//!
//! The JSON carries no timing, so identical inputs give byte-identical
//! reports. Timing is shown only in the table.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::corpus::{Bounds, Corpus};
use crate::harness::{A4Report, Context, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsDoc {
    pub max_order: usize,
    pub max_carrier: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusCounts {
    pub monoids: usize,
    pub extensions: usize,
    pub cc_extensions: usize,
    pub semimodules: usize,
    pub pairs: usize,
    pub morphisms: usize,
    pub points: usize,
    pub pushforwards: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatementReport {
    pub id: String,
    pub title: String,
    pub scope: String,
    pub instances: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A4Doc {
    /// Schreier extensions with a non-cancellative kernel.
    pub searched: usize,
    /// Those whose induced table is not a semimodule.
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<A4Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A4Witness {
    pub extension: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probes {
    pub a4: A4Doc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    /// `None` for a corpus read from a file.
    pub bounds: Option<BoundsDoc>,
    pub corpus: CorpusCounts,
    pub statements: Vec<StatementReport>,
    pub warnings: Vec<String>,
    pub probes: Probes,
    pub passed: bool,
    pub failed: Vec<String>,
}

impl CorpusCounts {
    pub fn of(corpus: &Corpus, ctx: &Context) -> Self {
        CorpusCounts {
            monoids: corpus.monoids.len(),
            extensions: corpus.extensions.len(),
            cc_extensions: corpus.cc_extensions().count(),
            semimodules: corpus.semimodules.len(),
            pairs: corpus.pairs.len(),
            morphisms: corpus.morphisms.len(),
            points: ctx.points.len(),
            pushforwards: ctx.pushforwards.len(),
        }
    }
}

impl Report {
    pub fn new(
        bounds: Option<Bounds>,
        counts: CorpusCounts,
        verdicts: &[Verdict],
        a4: &A4Report,
    ) -> Self {
        let statements: Vec<StatementReport> = verdicts
            .iter()
            .map(|v| StatementReport {
                id: v.id.to_string(),
                title: v.title.to_string(),
                scope: v.scope.to_string(),
                instances: v.instances,
                verdict: if v.passed() { "pass" } else { "fail" },
                counterexample: v.counterexample.clone(),
            })
            .collect();
        let warnings = verdicts
            .iter()
            .filter(|v| v.instances == 0)
            .map(|v| format!("{} has no instances in this corpus", v.id))
            .collect();
        let failed: Vec<String> = verdicts
            .iter()
            .filter(|v| !v.passed())
            .map(|v| v.id.to_string())
            .collect();
        Report {
            bounds: bounds.map(|b| BoundsDoc {
                max_order: b.max_order,
                max_carrier: b.max_carrier,
            }),
            corpus: counts,
            statements,
            warnings,
            probes: Probes {
                a4: A4Doc {
                    searched: a4.searched,
                    violations: a4.violations,
                    first: a4.first.as_ref().map(|(i, e)| A4Witness {
                        extension: *i,
                        error: e.clone(),
                    }),
                },
            },
            passed: failed.is_empty(),
            failed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

fn seconds(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// The human-readable table. `elapsed` is per statement, in report order.
pub fn render_table(report: &Report, elapsed: &[Duration], total: Duration) -> String {
    let width = report
        .statements
        .iter()
        .map(|s| s.id.len())
        .max()
        .unwrap_or(0)
        .max(9);
    let mut out = String::new();
    let c = &report.corpus;
    let _ = writeln!(
        out,
        "corpus: {} monoids, {} extensions ({} cc), {} semimodules, {} morphisms, {} points, {} pushforwards",
        c.monoids, c.extensions, c.cc_extensions, c.semimodules, c.morphisms, c.points, c.pushforwards
    );
    let _ = writeln!(
        out,
        "{:<width$}  {:>9}  {:>8}  verdict",
        "statement", "instances", "time"
    );
    for (s, t) in report.statements.iter().zip(elapsed) {
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>8}  {}",
            s.id,
            s.instances,
            seconds(*t),
            s.verdict
        );
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let a4 = &report.probes.a4;
    let _ = writeln!(
        out,
        "a4 probe: {} non-cancellative kernels searched, {} violations",
        a4.searched, a4.violations
    );
    let passed = report.statements.len() - report.failed.len();
    let _ = writeln!(
        out,
        "{passed}/{} statements passed in {}",
        report.statements.len(),
        seconds(total)
    );
    if !report.failed.is_empty() {
        let _ = writeln!(out, "failed: {}", report.failed.join(", "));
    }
    out
}
