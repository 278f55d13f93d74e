use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::format::{format_factorial, format_value};
use super::published::{lookup, table_methods, TABLE_NS};
use crate::analysis::{percentage_error, ErrorRecord};
use crate::approx::MethodId;
use crate::error::{Error, Result};
use crate::mpcore::{factorial_exact, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    T1,
    T2,
    T3,
    Custom,
}

impl TableKind {
    fn number(&self) -> Option<u8> {
        match self {
            TableKind::T1 => Some(1),
            TableKind::T2 => Some(2),
            TableKind::T3 => Some(3),
            TableKind::Custom => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown output format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRequest {
    pub table: TableKind,
    pub methods: Vec<MethodId>,
    pub ns: Vec<u64>,
    pub format: OutputFormat,
    pub sig_figs: usize,
}

impl TableRequest {
    /// One of the three reference tables: methods per table, `n` in
    /// {2, 5, 10, 20, 50, 100, 10^3, 10^4, 10^6}.
    pub fn preset(table: u8, format: OutputFormat) -> Result<Self> {
        let kind = match table {
            1 => TableKind::T1,
            2 => TableKind::T2,
            3 => TableKind::T3,
            other => return Err(Error::Parse(format!("no preset table {other}"))),
        };
        Ok(TableRequest {
            table: kind,
            methods: table_methods(table).to_vec(),
            ns: TABLE_NS.to_vec(),
            format,
            sig_figs: 2,
        })
    }

    pub fn custom(methods: Vec<MethodId>, ns: Vec<u64>, format: OutputFormat) -> Self {
        TableRequest {
            table: TableKind::Custom,
            methods,
            ns,
            format,
            sig_figs: 2,
        }
    }

    pub fn with_sig_figs(mut self, sig_figs: usize) -> Self {
        self.sig_figs = sig_figs;
        self
    }
}

/// A computed table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub record: ErrorRecord,
    /// `|pct_error|` in the table's number format.
    pub text: String,
}

#[derive(Serialize)]
struct JsonCell<'a> {
    n: u64,
    method: String,
    pct_error_decimal_string: String,
    bits_used: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    published: Option<&'a str>,
}

/// Computes every `(n, method)` cell of the request, in parallel; the result
/// is ordered row-major.
pub fn compute_cells(req: &TableRequest, ctx: &PrecisionContext) -> Result<Vec<Cell>> {
    if req.methods.is_empty() || req.ns.is_empty() {
        return Err(Error::domain("a table needs at least one method and one n"));
    }
    let pairs: Vec<(u64, MethodId)> = req
        .ns
        .iter()
        .flat_map(|&n| req.methods.iter().map(move |&m| (n, m)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(n, method)| {
            let record = percentage_error(method, n, ctx)?;
            let text = format_value(&record.magnitude(), req.sig_figs)?;
            Ok(Cell { record, text })
        })
        .collect()
}

/// Renders the request as Markdown, CSV or JSON. Output is deterministic for
/// fixed inputs and precision.
pub fn render_table(req: &TableRequest, ctx: &PrecisionContext) -> Result<String> {
    let cells = compute_cells(req, ctx)?;
    let factorials: HashMap<u64, String> = req
        .ns
        .par_iter()
        .map(|&n| Ok((n, format_factorial(&factorial_exact(n)?, req.sig_figs)?)))
        .collect::<Result<_>>()?;
    let width = req.methods.len();
    let rows: Vec<&[Cell]> = cells.chunks(width).collect();
    match req.format {
        OutputFormat::Markdown => Ok(markdown(req, &rows, &factorials)),
        OutputFormat::Csv => csv_text(req, &rows, &factorials),
        OutputFormat::Json => json_text(req, &cells),
    }
}

fn header(req: &TableRequest) -> Vec<String> {
    let mut cols = vec!["n".to_string(), "n!".to_string()];
    cols.extend(req.methods.iter().map(|m| format!("{m} %error")));
    cols
}

fn markdown(req: &TableRequest, rows: &[&[Cell]], factorials: &HashMap<u64, String>) -> String {
    let mut out = String::new();
    let head = header(req);
    let _ = writeln!(out, "| {} |", head.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(head.len()));
    let mut notes = Vec::new();
    for row in rows {
        let n = row[0].record.n;
        let mut fields = vec![n.to_string(), factorials[&n].clone()];
        for cell in row.iter() {
            let mut text = cell.text.clone();
            if let Some(published) = req
                .table
                .number()
                .and_then(|t| lookup(t, cell.record.method, n))
            {
                let ours = format_value(&cell.record.magnitude(), published.sig_figs())
                    .unwrap_or_else(|_| cell.text.clone());
                if ours != published.text {
                    notes.push(if published.is_suspected_typo() {
                        format!(
                            "n = {n}, {}: printed {}, suspected typo; computed value shown",
                            cell.record.method, published.text
                        )
                    } else {
                        format!(
                            "n = {n}, {}: printed {}, computed {ours}",
                            cell.record.method, published.text
                        )
                    });
                    text.push_str(&format!(" [{}]", notes.len()));
                }
            }
            fields.push(text);
        }
        let _ = writeln!(out, "| {} |", fields.join(" | "));
    }
    if !notes.is_empty() {
        out.push('\n');
        for (i, note) in notes.iter().enumerate() {
            let _ = writeln!(out, "[{}] {note}", i + 1);
        }
    }
    out
}

fn csv_text(
    req: &TableRequest,
    rows: &[&[Cell]],
    factorials: &HashMap<u64, String>,
) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Format(format!("csv: {e}"));
    writer.write_record(header(req)).map_err(fail)?;
    for row in rows {
        let n = row[0].record.n;
        let mut fields = vec![n.to_string(), factorials[&n].clone()];
        fields.extend(row.iter().map(|c| c.text.clone()));
        writer.write_record(&fields).map_err(fail)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Format(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

fn json_text(req: &TableRequest, cells: &[Cell]) -> Result<String> {
    let objects: Vec<JsonCell> = cells
        .iter()
        .map(|c| JsonCell {
            n: c.record.n,
            method: c.record.method.code(),
            pct_error_decimal_string: c.record.pct_error.to_sci_string(),
            bits_used: c.record.bits_used,
            published: req
                .table
                .number()
                .and_then(|t| lookup(t, c.record.method, c.record.n))
                .map(|p| p.text),
        })
        .collect();
    serde_json::to_string_pretty(&objects).map_err(|e| Error::Format(format!("json: {e}")))
}
