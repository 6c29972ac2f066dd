//! Report documents and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use nullsum_core::grouplab::{ConsistencyReport, ReductionTrace, SweepReport, Variant};
use nullsum_core::nullstellensatz::{ATable, Certificate, CoefficientRecord, Method, SymmetryReport};
use serde::Serialize;

use crate::cache::CacheRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffRow {
    pub family: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub j: usize,
    pub value: String,
    pub method: Method,
}

impl From<&CoefficientRecord> for CoeffRow {
    fn from(r: &CoefficientRecord) -> Self {
        CoeffRow {
            family: r.target.family.to_string(),
            k: r.target.k,
            i: r.target.i,
            j: r.target.j,
            value: r.value.to_string(),
            method: r.method,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub j: usize,
    /// `a_{i,j}` for `i = 1..k`, empty on the diagonal.
    pub a: Vec<Option<String>>,
    pub e: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableDoc {
    pub k: usize,
    pub rows: Vec<TableRow>,
    pub symmetry: SymmetryReport,
}

impl TableDoc {
    pub fn new(table: &ATable, symmetry: SymmetryReport) -> Self {
        let rows = (1..=table.k)
            .map(|j| TableRow {
                j,
                a: (1..=table.k).map(|i| table.get(i, j).map(|v| v.to_string())).collect(),
                e: table.e[j - 1].to_string(),
            })
            .collect();
        TableDoc { k: table.k, rows, symmetry }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderDoc {
    pub group: String,
    pub variant: Variant,
    pub set: serde_json::Value,
    pub ordering: serde_json::Value,
    pub partial_sums: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CacheDoc {
    pub action: String,
    pub path: String,
    pub count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<CacheRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Output {
    Coefficients(Vec<CoeffRow>),
    Table(TableDoc),
    Certificate(Box<Certificate>),
    Order(Box<OrderDoc>),
    Sweep(Vec<SweepReport>),
    Consistency(Vec<ConsistencyReport>),
    Cache(CacheDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub version: String,
    pub workers: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub command: String,
    pub result: Output,
    pub meta: Meta,
}

fn csv_rows(out: &Output) -> Option<Vec<(String, usize, Option<usize>, usize, String)>> {
    match out {
        Output::Coefficients(rows) => Some(rows.iter().map(|r| (r.family.clone(), r.k, r.i, r.j, r.value.clone())).collect()),
        Output::Table(t) => {
            let mut v = Vec::new();
            for row in &t.rows {
                for (i, a) in row.a.iter().enumerate() {
                    if let Some(a) = a {
                        v.push(("a".to_string(), t.k, Some(i + 1), row.j, a.clone()));
                    }
                }
            }
            v.extend(t.rows.iter().map(|r| ("e".to_string(), t.k, None, r.j, r.e.clone())));
            Some(v)
        }
        Output::Certificate(c) => {
            Some(c.values.iter().map(|v| (c.family.to_string(), c.k, None, v.j, v.value.to_string())).collect())
        }
        _ => None,
    }
}

impl Document {
    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("document serializes") + "\n"),
            Format::Csv => {
                let rows = csv_rows(&self.result)
                    .ok_or_else(|| format!("csv output is not available for `{}`", self.command))?;
                let mut s = String::from("family,k,i,j,value\n");
                for (f, k, i, j, v) in rows {
                    let i = i.map(|i| i.to_string()).unwrap_or_default();
                    writeln!(s, "{f},{k},{i},{j},{v}").unwrap();
                }
                Ok(s)
            }
            Format::Text => Ok(render_text(&self.result)),
        }
    }
}

fn seq<T: std::fmt::Debug>(v: &[T]) -> String {
    let inner: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("({})", inner.join(", "))
}

fn json_seq(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| x.to_string().replace('[', "(").replace(']', ")")).collect();
            format!("({})", inner.join(", "))
        }
        other => other.to_string(),
    }
}

/// Layout of the coefficient table: rows `j`, columns `i`, then `e_{k,j}`.
pub fn table_text(t: &TableDoc) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["j\\i".to_string()];
    header.extend((1..=t.k).map(|i| i.to_string()));
    header.push(format!("e_{},j", t.k));
    cells.push(header);
    for r in &t.rows {
        let mut row = vec![r.j.to_string()];
        row.extend(r.a.iter().map(|a| a.clone().unwrap_or_default()));
        row.push(r.e.clone());
        cells.push(row);
    }
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut s = String::new();
    for (n, row) in cells.iter().enumerate() {
        let last = row.len() - 1;
        for (c, cell) in row.iter().enumerate() {
            if c == last {
                s.push_str(" |");
            }
            write!(s, "{cell:>w$}", w = width + 1).unwrap();
        }
        s.push('\n');
        if n == 0 {
            s.push_str(&"-".repeat(s.lines().next().unwrap().len()));
            s.push('\n');
        }
    }
    s
}

fn render_text(out: &Output) -> String {
    let mut s = String::new();
    match out {
        Output::Coefficients(rows) => {
            for r in rows {
                let idx = match r.i {
                    Some(i) => format!("({i},{})", r.j),
                    None => format!("({})", r.j),
                };
                writeln!(s, "{}_{}{} = {}  [{}]", r.family, r.k, idx, r.value, r.method).unwrap();
            }
        }
        Output::Table(t) => {
            s.push_str(&table_text(t));
            writeln!(
                s,
                "antisymmetric: {}, shift-invariant: {}",
                t.symmetry.antisymmetric, t.symmetry.shift_invariant
            )
            .unwrap();
        }
        Output::Certificate(c) => {
            writeln!(s, "{} for subsets of size {} from {}_{},j", c.conjecture, c.set_size, c.family, c.k).unwrap();
            for v in &c.values {
                writeln!(s, "  j = {}: {}", v.j, v.value).unwrap();
            }
            let factors: Vec<String> =
                c.gcd_factors.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
            let factors = if factors.is_empty() { "1".to_string() } else { factors.join(" * ") };
            writeln!(s, "gcd = {} = {}", c.gcd, factors).unwrap();
            writeln!(s, "excluded primes: {:?}", c.excluded_primes).unwrap();
            writeln!(s, "holds in Z_p for every prime p >= {} not excluded", c.min_admissible_prime).unwrap();
        }
        Output::Order(o) => {
            writeln!(s, "{} {} {}", o.group, o.variant, json_seq(&o.set)).unwrap();
            if let Some(t) = &o.trace {
                if let Some(r) = &t.removed {
                    writeln!(s, "set aside {r:?}, reducing the rest as an alspach set").unwrap();
                }
                writeln!(s, "M = {} (bound {}), embedded {:?}", t.embedding.base, t.embedding.bound, t.embedded).unwrap();
                writeln!(s, "p = {}, projected {:?}", t.prime, t.projected).unwrap();
                writeln!(s, "Z_{} ordering {}", t.prime, seq(&t.projected_ordering.entries)).unwrap();
                writeln!(s, "Z ordering {}", seq(&t.embedded_ordering.entries)).unwrap();
            }
            writeln!(s, "ordering: {}", json_seq(&o.ordering)).unwrap();
            writeln!(s, "partial sums: {}", json_seq(&o.partial_sums)).unwrap();
        }
        Output::Sweep(reports) => {
            for r in reports {
                writeln!(
                    s,
                    "Z{} k={} {}: {} subsets, {} valid, {} failures",
                    r.n,
                    r.k,
                    r.variant,
                    r.subsets_enumerated,
                    r.valid_subsets,
                    r.failures.len()
                )
                .unwrap();
                for f in &r.failures {
                    writeln!(s, "  NO ORDERING: {f:?}").unwrap();
                }
            }
        }
        Output::Consistency(reports) => {
            for r in reports {
                writeln!(
                    s,
                    "{} k={} p={}: certificate {} (gcd {}), sweep {} valid / {} failures -> {}",
                    r.variant,
                    r.k,
                    r.p,
                    if r.certificate_admits { "admits p" } else { "silent" },
                    r.certificate.gcd,
                    r.sweep.valid_subsets,
                    r.sweep.failures.len(),
                    if r.agree { "agree" } else { "DISAGREE" }
                )
                .unwrap();
            }
        }
        Output::Cache(c) => {
            writeln!(s, "{} {}: {} record(s)", c.action, c.path, c.count).unwrap();
            for r in &c.records {
                let t = r.record.target;
                writeln!(s, "  {t} = {}  [{}, {}]", r.record.value, r.record.method, r.config).unwrap();
            }
            for m in &c.mismatches {
                writeln!(s, "  MISMATCH {m}").unwrap();
            }
        }
    }
    s
}
