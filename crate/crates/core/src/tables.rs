//! Plain-text rendering of the girth/order tables and bound reports.
//!
//! Tables are left-aligned columns separated by two spaces with no trailing
//! whitespace, so the output is byte-stable across platforms. Every table
//! also has a `key: value` form, one blank-line separated block per row.

use std::fmt::Write as _;

use crate::bounds::{
    erdos_sachs_bounds, lps_min_q, moore_bipartite, reference_irregular_table, BoundQuery, BoundReport,
    BoundsError, GmaxReport, LPS_P,
};

/// Girths listed in the degree-3 order tables.
pub const ORDER_TABLE_GIRTHS: [u64; 6] = [4, 6, 8, 10, 12, 14];
/// Girths listed in the LPS table.
pub const LPS_TABLE_GIRTHS: [u64; 4] = [6, 8, 10, 12];
/// Published `(k, girth)` pairs for the `(k², 3)` search, used to flag
/// computed rows that disagree.
pub const TABLE_1_REFERENCE: [(usize, u32); 6] = [(5, 8), (6, 8), (7, 10), (8, 10), (9, 10), (10, 10)];

pub fn table_1_reference(k: usize) -> Option<u32> {
    TABLE_1_REFERENCE.iter().find(|(rk, _)| *rk == k).map(|&(_, g)| g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextTable {
    pub headers: Vec<String>,
    pub keys: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    fn new(headers: &[&str], keys: &[&'static str]) -> Self {
        debug_assert_eq!(headers.len(), keys.len());
        TextTable {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            keys: keys.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(self.headers[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                let _ = write!(line, "{cell:<w$}", w = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for (key, cell) in self.keys.iter().zip(row) {
                let _ = writeln!(out, "{key}: {cell}");
            }
        }
        out
    }
}

/// Degree-3 even-girth Moore bound `n0(g, 3)`.
pub fn table_2() -> Result<TextTable, BoundsError> {
    let mut t = TextTable::new(&["g", "n0(g,3)"], &["g", "n0"]);
    for g in ORDER_TABLE_GIRTHS {
        t.push(vec![g.to_string(), moore_bipartite(g, 3)?.to_string()]);
    }
    Ok(t)
}

/// Lower, upper and improved upper bounds on `n(g, 3)`.
pub fn table_3() -> Result<TextTable, BoundsError> {
    let mut t = TextTable::new(
        &["g", "lower n(g,3)", "upper n(g,3)", "improved upper n(g,3)"],
        &["g", "lower", "upper", "improved_upper"],
    );
    for g in ORDER_TABLE_GIRTHS {
        let es = erdos_sachs_bounds(g, 3)?;
        t.push(vec![
            g.to_string(),
            es.lower.to_string(),
            es.upper.to_string(),
            es.improved_upper.to_string(),
        ]);
    }
    Ok(t)
}

/// Stored girth / smallest matrix size data for irregular constructions.
pub fn table_4() -> TextTable {
    let mut t = TextTable::new(&["girth", "min N"], &["girth", "min_n"]);
    for &(g, n) in reference_irregular_table() {
        t.push(vec![g.to_string(), n.to_string()]);
    }
    t
}

/// Smallest LPS parameter `q` per girth and the resulting graph order.
pub fn table_5() -> Result<TextTable, BoundsError> {
    let mut t = TextTable::new(
        &["girth", "min q, q^4 >= 2^(g+2), (p/q) = -1", "n = q(q^2-1)", "chosen p", "degree k=p+1"],
        &["girth", "min_q", "n", "chosen_p", "degree"],
    );
    for g in LPS_TABLE_GIRTHS {
        let b = lps_min_q(g)?;
        t.push(vec![
            g.to_string(),
            b.q.to_string(),
            b.n.to_string(),
            LPS_P.to_string(),
            (LPS_P + 1).to_string(),
        ]);
    }
    Ok(t)
}

/// One computed search row: `(k, m, r, girth)` plus an optional note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub girth: Option<u32>,
    pub note: Option<String>,
}

pub fn table_1(rows: &[Table1Row]) -> TextTable {
    let with_notes = rows.iter().any(|r| r.note.is_some());
    let (headers, keys): (&[&str], &[&'static str]) = if with_notes {
        (&["k", "m", "r", "g", "note"], &["k", "m", "r", "g", "note"])
    } else {
        (&["k", "m", "r", "g"], &["k", "m", "r", "g"])
    };
    let mut t = TextTable::new(headers, keys);
    for row in rows {
        let mut cells = vec![
            row.k.to_string(),
            row.m.to_string(),
            row.r.to_string(),
            row.girth.map_or_else(|| "-".to_string(), |g| g.to_string()),
        ];
        if with_notes {
            cells.push(row.note.clone().unwrap_or_default());
        }
        t.push(cells);
    }
    t
}

pub fn render_bound_report(report: &BoundReport) -> String {
    let mut out = String::new();
    match report.query {
        BoundQuery::GirthDegree { g, delta } => {
            let _ = writeln!(out, "g: {g}\ndelta: {delta}");
        }
        BoundQuery::OrderDegree { m, r } => {
            let _ = writeln!(out, "m: {m}\nr: {r}");
        }
    }
    let mut t = TextTable::new(&["bound", "value", "direction", "counts"], &["bound", "value", "direction", "counts"]);
    for e in &report.entries {
        t.push(vec![
            e.name.to_string(),
            e.value.to_string(),
            serde_json::to_value(e.direction).unwrap().as_str().unwrap().to_string(),
            serde_json::to_value(e.quantity).unwrap().as_str().unwrap().to_string(),
        ]);
    }
    out.push_str(&t.render());
    out
}

pub fn render_bound_report_kv(report: &BoundReport) -> String {
    let mut out = String::new();
    match report.query {
        BoundQuery::GirthDegree { g, delta } => {
            let _ = writeln!(out, "g: {g}\ndelta: {delta}");
        }
        BoundQuery::OrderDegree { m, r } => {
            let _ = writeln!(out, "m: {m}\nr: {r}");
        }
    }
    for e in &report.entries {
        let _ = writeln!(out, "{}: {}", e.name, e.value);
    }
    out
}

pub fn render_gmax_report(report: &GmaxReport) -> String {
    let f = &report.factorization;
    let mut out = format!(
        "m: {}\nr: {}\nb: {}\nk: {}\ngmax_upper: {} (claimed ceiling, strictly below 2k = {})\n",
        f.m,
        f.r,
        f.b,
        f.k,
        report.gmax_upper,
        2 * f.k
    );
    for (i, beta) in report.partitions.iter().enumerate() {
        let parts = beta.parts();
        let _ = writeln!(
            out,
            "beta_{}: {} x {}",
            i + 1,
            parts.len(),
            parts.first().copied().unwrap_or(0)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_2_text() {
        assert_eq!(
            table_2().unwrap().render(),
            "g   n0(g,3)\n4   6\n6   14\n8   30\n10  62\n12  126\n14  254\n"
        );
    }

    #[test]
    fn table_4_kv() {
        assert_eq!(
            table_4().render_kv(),
            "girth: 6\nmin_n: 5\n\ngirth: 8\nmin_n: 9\n\ngirth: 10\nmin_n: 39\n\ngirth: 12\nmin_n: 97\n"
        );
    }

    #[test]
    fn table_1_flags_notes() {
        let rows = [
            Table1Row {
                k: 5,
                m: 25,
                r: 3,
                girth: Some(8),
                note: None,
            },
            Table1Row {
                k: 6,
                m: 36,
                r: 3,
                girth: None,
                note: Some("error".into()),
            },
        ];
        let text = table_1(&rows).render();
        assert_eq!(text, "k  m   r  g  note\n5  25  3  8\n6  36  3  -  error\n");
    }

    #[test]
    fn no_trailing_whitespace() {
        for t in [table_2().unwrap(), table_3().unwrap(), table_4(), table_5().unwrap()] {
            assert!(t.render().lines().all(|l| l == l.trim_end()));
        }
    }
}
