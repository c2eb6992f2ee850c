//! Output rendering for `compute`: TSV for pipelines, JSON for tooling, DOT
//! for graph viewers. All three are deterministic byte-for-byte: rationals
//! render as reduced fractions plus a half-to-even decimal, rows follow the
//! canonical (i, j, alpha) order, and JSON keys are sorted.

use curvkit::rational::{fmt_decimal, fmt_exact, Rational};
use serde_json::{json, Value};

pub struct EdgeRow {
    pub i: u64,
    pub j: u64,
    pub alpha: Rational,
    pub orc: Rational,
    pub lly: Rational,
    pub method: &'static str,
}

pub enum NodeValues {
    Exact {
        values: Vec<Rational>,
        residual: Rational,
        solvable: bool,
        method: &'static str,
    },
    Float {
        values: Vec<f64>,
        residual: f64,
        solvable: bool,
    },
}

pub struct ComputeReport {
    pub n: usize,
    pub m: usize,
    pub is_tree: bool,
    pub arithmetic: &'static str,
    pub alphas: Vec<Rational>,
    pub edges: Vec<EdgeRow>,
    /// Original node ids in internal order; node rows print these.
    pub node_ids: Vec<u64>,
    pub nodes: NodeValues,
    pub precision: usize,
}

/// `p/q (decimal)` cell used by TSV and the oracle command.
pub fn cell(r: &Rational, sig: usize) -> String {
    format!("{} ({})", fmt_exact(r), fmt_decimal(r, sig))
}

fn float_cell(v: f64, places: usize) -> String {
    format!("{v:.places$}")
}

pub fn render_tsv(report: &ComputeReport) -> String {
    let sig = report.precision;
    let mut out = String::new();
    out.push_str("i\tj\talpha\torc\tlly\tmethod\n");
    for row in &report.edges {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            row.i,
            row.j,
            fmt_exact(&row.alpha),
            cell(&row.orc, sig),
            cell(&row.lly, sig),
            row.method
        ));
    }
    out.push('\n');
    out.push_str("i\tks\tmethod\n");
    match &report.nodes {
        NodeValues::Exact {
            values,
            residual,
            solvable,
            method,
        } => {
            for (id, v) in report.node_ids.iter().zip(values) {
                out.push_str(&format!("{}\t{}\t{}\n", id, cell(v, sig), method));
            }
            if !report.is_tree {
                out.push_str(&format!(
                    "# node-system: solvable={} residual={}\n",
                    solvable,
                    cell(residual, sig)
                ));
            }
        }
        NodeValues::Float {
            values,
            residual,
            solvable,
        } => {
            for (id, v) in report.node_ids.iter().zip(values) {
                out.push_str(&format!("{}\t{}\tdefinitional\n", id, float_cell(*v, sig)));
            }
            out.push_str(&format!(
                "# node-system: solvable={} residual={}\n",
                solvable,
                float_cell(*residual, sig)
            ));
        }
    }
    out
}

fn value_obj(r: &Rational, sig: usize) -> Value {
    json!({ "exact": fmt_exact(r), "decimal": fmt_decimal(r, sig) })
}

pub fn render_json(report: &ComputeReport) -> String {
    let sig = report.precision;
    let edges: Vec<Value> = report
        .edges
        .iter()
        .map(|row| {
            json!({
                "i": row.i,
                "j": row.j,
                "alpha": fmt_exact(&row.alpha),
                "orc": value_obj(&row.orc, sig),
                "lly": value_obj(&row.lly, sig),
                "method": row.method,
            })
        })
        .collect();
    let (nodes, system): (Vec<Value>, Value) = match &report.nodes {
        NodeValues::Exact {
            values,
            residual,
            solvable,
            method,
        } => (
            report
                .node_ids
                .iter()
                .zip(values)
                .map(|(id, v)| json!({ "i": id, "ks": value_obj(v, sig), "method": method }))
                .collect(),
            json!({ "solvable": solvable, "residual": value_obj(residual, sig) }),
        ),
        NodeValues::Float {
            values,
            residual,
            solvable,
        } => (
            report
                .node_ids
                .iter()
                .zip(values)
                .map(|(id, v)| {
                    json!({
                        "i": id,
                        "ks": { "decimal": float_cell(*v, sig) },
                        "method": "definitional",
                    })
                })
                .collect(),
            json!({ "solvable": solvable, "residual": { "decimal": float_cell(*residual, sig) } }),
        ),
    };
    let doc = json!({
        "n": report.n,
        "m": report.m,
        "is_tree": report.is_tree,
        "arithmetic": report.arithmetic,
        "alphas": report.alphas.iter().map(fmt_exact).collect::<Vec<_>>(),
        "edges": edges,
        "nodes": nodes,
        "node_system": system,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

pub fn render_dot(report: &ComputeReport) -> String {
    let sig = report.precision;
    let mut out = String::new();
    out.push_str("graph curvature {\n");
    out.push_str("  node [shape=circle];\n");
    match &report.nodes {
        NodeValues::Exact { values, .. } => {
            for (id, v) in report.node_ids.iter().zip(values) {
                out.push_str(&format!(
                    "  \"{}\" [label=\"{}\\nks={}\"];\n",
                    id,
                    id,
                    fmt_decimal(v, sig)
                ));
            }
        }
        NodeValues::Float { values, .. } => {
            for (id, v) in report.node_ids.iter().zip(values) {
                out.push_str(&format!(
                    "  \"{}\" [label=\"{}\\nks={}\"];\n",
                    id,
                    id,
                    float_cell(*v, sig)
                ));
            }
        }
    }
    for row in &report.edges {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"orc={}\\nlly={}\"];\n",
            row.i,
            row.j,
            fmt_decimal(&row.orc, sig),
            fmt_decimal(&row.lly, sig)
        ));
    }
    out.push_str("}\n");
    out
}
