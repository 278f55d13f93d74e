//! Published percentage-error magnitudes for the three reference tables,
//! written in this crate's number format.

use crate::approx::MethodId;

/// One printed cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedCell {
    pub table: u8,
    pub method: MethodId,
    pub n: u64,
    /// As printed, in this crate's number format.
    pub text: &'static str,
    /// Our reading of a misprinted cell; the computed value is compared
    /// against this instead of `text`.
    pub corrected: Option<&'static str>,
}

impl PublishedCell {
    /// The value a reproduction is expected to match.
    pub fn expected(&self) -> &'static str {
        self.corrected.unwrap_or(self.text)
    }

    /// Significant figures used in the printed value.
    pub fn sig_figs(&self) -> usize {
        let mantissa = self.text.split('e').next().unwrap_or(self.text);
        mantissa.chars().filter(|c| c.is_ascii_digit()).count()
    }

    pub fn is_suspected_typo(&self) -> bool {
        self.corrected.is_some()
    }
}

pub const TABLE_NS: [u64; 9] = [2, 5, 10, 20, 50, 100, 1000, 10_000, 1_000_000];

pub fn table_methods(table: u8) -> &'static [MethodId] {
    match table {
        1 => &[MethodId::Stirling, MethodId::Burnside, MethodId::Gosper],
        2 => &[
            MethodId::Mortici,
            MethodId::Ramanujan,
            MethodId::Laplace(4),
            MethodId::Nemes,
        ],
        3 => &[
            MethodId::Windschitl,
            MethodId::HirschhornVillarino,
            MethodId::Chen,
            MethodId::Sam,
        ],
        _ => &[],
    }
}

// Rows follow TABLE_NS; columns follow table_methods.
const T1: [[&str; 3]; 9] = [
    ["4.0", "1.7", "1.3e-1"],
    ["1.7", "7.6e-1", "2.5e-2"],
    ["8.3e-1", "4.0e-1", "6.6e-3"],
    ["4.2e-1", "2.0e-1", "1.7e-3"],
    ["1.7e-1", "8.3e-2", "2.7e-4"],
    ["8.3e-1", "4.1e-2", "6.9e-5"],
    ["8.3e-3", "4.2e-3", "6.9e-7"],
    ["8.3e-4", "4.2e-4", "6.9e-9"],
    ["8.3e-6", "4.2e-6", "6.9e-13"],
];

const T2: [[&str; 4]; 9] = [
    ["1.0e-2", "3.3e-3", "1.4e-2", "1.7e-3"],
    ["5.7e-4", "1.2e-4", "3.5e-4", "2.0e-5"],
    ["7.0e-5", "8.6e-6", "7.8e-7", "6.5e-7"],
    ["8.7e-6", "5.7e-7", "2.4e-8", "2.0e-8"],
    ["5.6e-7", "1.5e-8", "2.5e-10", "2.1e-10"],
    ["6.9e-8", "9.5e-10", "7.8e-12", "6.5e12"],
    ["6.9e-11", "9.5e-14", "7.8e-17", "6.5e-17"],
    ["6.9e-14", "9.5e-18", "7.8e-22", "6.5e-22"],
    ["6.9e-20", "9.5e-26", "7.8e-32", "6.5e-32"],
];

const T3: [[&str; 4]; 9] = [
    ["1.6e-3", "1.6e-4", "2.2e-4", "2.9e-4"],
    ["1.9e-5", "1.5e-6", "5.0e-7", "6.0e-7"],
    ["6.1e-7", "3.0e-8", "4.1e-9", "4.9e-9"],
    ["1.9e-8", "5.2e-10", "3.2e-11", "3.8e-11"],
    ["2.1e-10", "2.3e-12", "5.3e-14", "6.3e-14"],
    ["6.2e-12", "3.6e-14", "4.2e-16", "4.9e-16"],
    ["6.2e-17", "3.7e-20", "4.17e-23", "4.9e-23"],
    ["6.2e-22", "3.7e-26", "4.2e-30", "4.9e-30"],
    ["6.2e-32", "3.7e-38", "4.2e-44", "1.3e-50"],
];

/// Cells whose printed value breaks the column's trend, with our reading.
const SUSPECTED_TYPOS: [(u8, MethodId, u64, &str); 2] = [
    // same digits as the n = 10 row; the O(1/n) trend gives 8.3e-2
    (1, MethodId::Stirling, 100, "8.3e-2"),
    // missing minus sign in the exponent
    (2, MethodId::Nemes, 100, "6.5e-12"),
];

/// All printed cells of `table` (1, 2 or 3), row-major.
pub fn published_cells(table: u8) -> Vec<PublishedCell> {
    let rows: Vec<Vec<&'static str>> = match table {
        1 => T1.iter().map(|r| r.to_vec()).collect(),
        2 => T2.iter().map(|r| r.to_vec()).collect(),
        3 => T3.iter().map(|r| r.to_vec()).collect(),
        _ => return Vec::new(),
    };
    let methods = table_methods(table);
    let mut cells = Vec::new();
    for (n, row) in TABLE_NS.iter().zip(rows) {
        for (method, text) in methods.iter().zip(row) {
            let corrected = SUSPECTED_TYPOS
                .iter()
                .find(|(t, m, k, _)| *t == table && m == method && k == n)
                .map(|(_, _, _, fix)| *fix);
            cells.push(PublishedCell {
                table,
                method: *method,
                n: *n,
                text,
                corrected,
            });
        }
    }
    cells
}

pub fn lookup(table: u8, method: MethodId, n: u64) -> Option<PublishedCell> {
    published_cells(table)
        .into_iter()
        .find(|c| c.method == method && c.n == n)
}
