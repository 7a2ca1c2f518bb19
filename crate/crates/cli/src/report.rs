//! Structured run reports and their text, csv, and json renderings.
//!
//! The json form is the machine contract: parsing what was emitted gives
//! back the same report.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    /// Human readable lines
    Text,
    /// Comma separated with a header row
    Csv,
    /// One json object per run
    Json,
}

/// Report for a single `outcome` or `nimber` run. `result` is `W`, `L`, a
/// nimber like `*4`, or `aborted`; `nimber` is filled only when the run
/// computed one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub game: String,
    pub position: String,
    pub result: String,
    pub nimber: Option<u32>,
    pub nodes_expanded: u64,
    pub tt_losing_couples: u64,
    pub elapsed_ms: u64,
    pub strategy: String,
}

impl RunReport {
    pub const CSV_HEADER: &'static str =
        "game,position,result,nimber,nodes_expanded,tt_losing_couples,elapsed_ms,strategy";

    pub fn text(&self) -> String {
        format!(
            "{} {}: {} (nodes {}, losing couples {}, {} ms, {})",
            self.game,
            self.position,
            self.result,
            self.nodes_expanded,
            self.tt_losing_couples,
            self.elapsed_ms,
            self.strategy
        )
    }

    pub fn csv_row(&self) -> String {
        [
            csv_field(&self.game),
            csv_field(&self.position),
            csv_field(&self.result),
            self.nimber.map(|n| n.to_string()).unwrap_or_default(),
            self.nodes_expanded.to_string(),
            self.tt_losing_couples.to_string(),
            self.elapsed_ms.to_string(),
            csv_field(&self.strategy),
        ]
        .join(",")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => format!("{}\n{}", Self::CSV_HEADER, self.csv_row()),
            Format::Json => serde_json::to_string(self).expect("report serializes"),
        }
    }
}

/// Report for one `compare` run: the agreed outcome of the sum plus the
/// expansion counts of both searches, each on a fresh store.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub game: String,
    pub position: String,
    pub result: String,
    pub split_nodes_expanded: u64,
    pub elementary_nodes_expanded: u64,
    pub elapsed_ms: u64,
    pub strategy: String,
}

impl CompareReport {
    pub const CSV_HEADER: &'static str =
        "game,position,result,split_nodes_expanded,elementary_nodes_expanded,elapsed_ms,strategy";

    pub fn text(&self) -> String {
        format!(
            "{} {}: {} on both searches (split {} nodes, elementary {} nodes, {} ms, {})",
            self.game,
            self.position,
            self.result,
            self.split_nodes_expanded,
            self.elementary_nodes_expanded,
            self.elapsed_ms,
            self.strategy
        )
    }

    pub fn csv_row(&self) -> String {
        [
            csv_field(&self.game),
            csv_field(&self.position),
            csv_field(&self.result),
            self.split_nodes_expanded.to_string(),
            self.elementary_nodes_expanded.to_string(),
            self.elapsed_ms.to_string(),
            csv_field(&self.strategy),
        ]
        .join(",")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => format!("{}\n{}", Self::CSV_HEADER, self.csv_row()),
            Format::Json => serde_json::to_string(self).expect("report serializes"),
        }
    }
}

/// One table cell. `result` is `*n` when solved; after a per-cell budget
/// abort it is `>*k` when the ladder had already refuted every trial
/// through `*k`, or `?` when it proved nothing yet.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableCell {
    pub rows: usize,
    pub cols: usize,
    pub result: String,
    pub nimber: Option<u32>,
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableReport {
    pub game: String,
    pub strategy: String,
    pub cells: Vec<TableCell>,
}

impl TableReport {
    fn axis(&self, pick: impl Fn(&TableCell) -> usize) -> Vec<usize> {
        let mut values: Vec<usize> = self.cells.iter().map(pick).collect();
        values.sort_unstable();
        values.dedup();
        values
    }

    fn token(&self, rows: usize, cols: usize, plain: bool) -> String {
        match self.cells.iter().find(|c| c.rows == rows && c.cols == cols) {
            Some(cell) if plain => {
                cell.nimber.map(|n| n.to_string()).unwrap_or_else(|| cell.result.clone())
            }
            Some(cell) => cell.result.clone(),
            None => "-".to_string(),
        }
    }

    pub fn text(&self) -> String {
        let rows = self.axis(|c| c.rows);
        let cols = self.axis(|c| c.cols);
        let corner = "r\\c";
        let row_width = rows
            .iter()
            .map(|r| r.to_string().len())
            .max()
            .unwrap_or(0)
            .max(corner.len());
        let widths: Vec<usize> = cols
            .iter()
            .map(|&c| {
                rows.iter()
                    .map(|&r| self.token(r, c, false).len())
                    .max()
                    .unwrap_or(0)
                    .max(c.to_string().len())
            })
            .collect();
        let mut out = format!("{corner:<row_width$}");
        for (j, c) in cols.iter().enumerate() {
            out.push_str(&format!("  {:>1$}", c, widths[j]));
        }
        for &r in &rows {
            out.push_str(&format!("\n{r:<row_width$}"));
            for (j, &c) in cols.iter().enumerate() {
                out.push_str(&format!("  {:>1$}", self.token(r, c, false), widths[j]));
            }
        }
        out
    }

    /// Solved cells print the bare nimber value, matching the text tables
    /// this mirrors; markers pass through unchanged.
    pub fn csv(&self) -> String {
        let rows = self.axis(|c| c.rows);
        let cols = self.axis(|c| c.cols);
        let mut out = String::from("r\\c");
        for c in &cols {
            out.push_str(&format!(",{c}"));
        }
        for &r in &rows {
            out.push_str(&format!("\n{r}"));
            for &c in &cols {
                out.push_str(&format!(",{}", self.token(r, c, true)));
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string(self).expect("report serializes"),
        }
    }
}

/// Quotes a csv field when it holds a comma or quote (nim heap lists do).
fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
