//! Text interchange formats: alist, DIMACS edge lists and dense 0/1 rows.
//!
//! alist follows the usual LDPC layout: `cols rows`, the two maximum
//! weights, column weights, row weights, then one 1-based row list per
//! column followed by one 1-based column list per row. Irregular matrices
//! are written with zero padding up to the maximum weight; regular ones
//! never carry padding.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{BinaryMatrix, BipartiteGraph, Btu, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed {format} input at line {line}: {message}")]
    Malformed {
        format: &'static str,
        line: usize,
        message: String,
    },
    #[error("not regular: {detail}")]
    NotRegular { detail: String },
    #[error("decomposition into permutations failed in round {round} at row {row}")]
    DecompositionFailed { round: usize, row: usize },
    #[error("graph is not bipartite (odd cycle through vertex {vertex})")]
    NotBipartite { vertex: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GraphFormat {
    #[default]
    Alist,
    Dimacs,
    Dense,
}

impl GraphFormat {
    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::Alist => "alist",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::Dense => "dense",
        }
    }

    /// Guesses from a file extension (`.alist`, `.dimacs`/`.col`/`.dim`, `.txt`/`.dense`).
    pub fn from_extension(path: &std::path::Path) -> Option<GraphFormat> {
        match path.extension()?.to_str()? {
            "alist" => Some(GraphFormat::Alist),
            "dimacs" | "col" | "dim" => Some(GraphFormat::Dimacs),
            "dense" | "txt" => Some(GraphFormat::Dense),
            _ => None,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alist" => Ok(GraphFormat::Alist),
            "dimacs" => Ok(GraphFormat::Dimacs),
            "dense" => Ok(GraphFormat::Dense),
            other => Err(format!("unknown format `{other}` (expected alist, dimacs or dense)")),
        }
    }
}

impl std::fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn write_alist(b: &Btu) -> String {
    write_alist_matrix(&b.to_matrix())
}

pub fn write_alist_matrix(m: &BinaryMatrix) -> String {
    let cols = m.col_lists();
    let col_deg = m.col_degrees();
    let row_deg = m.row_degrees();
    let max_col = col_deg.iter().copied().max().unwrap_or(0);
    let max_row = row_deg.iter().copied().max().unwrap_or(0);
    let regular = col_deg.iter().all(|&d| d == max_col) && row_deg.iter().all(|&d| d == max_row);

    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.cols(), m.rows());
    let _ = writeln!(out, "{max_col} {max_row}");
    push_list(&mut out, col_deg.iter().copied());
    push_list(&mut out, row_deg.iter().copied());
    for list in &cols {
        push_padded(&mut out, list, if regular { 0 } else { max_col });
    }
    for i in 0..m.rows() {
        push_padded(&mut out, m.row(i), if regular { 0 } else { max_row });
    }
    out
}

fn push_list(out: &mut String, values: impl Iterator<Item = usize>) {
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

fn push_padded(out: &mut String, list: &[usize], width: usize) {
    let pad = width.saturating_sub(list.len());
    push_list(
        out,
        list.iter().map(|&x| x + 1).chain(std::iter::repeat_n(0, pad)),
    );
}

struct Lines<'a> {
    format: &'static str,
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(format: &'static str, text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            format,
            inner: it.peekable(),
            last_line: 0,
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> FormatError {
        FormatError::Malformed {
            format: self.format,
            line,
            message: message.into(),
        }
    }

    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>), FormatError> {
        let Some((line, text)) = self.inner.next() else {
            return Err(self.err(self.last_line + 1, format!("unexpected end of input, expected {what}")));
        };
        self.last_line = line;
        let nums = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| self.err(line, format!("`{t}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((line, nums))
    }

    fn exact(&mut self, n: usize, what: &str) -> Result<(usize, Vec<usize>), FormatError> {
        let (line, nums) = self.next_numbers(what)?;
        if nums.len() != n {
            return Err(self.err(line, format!("expected {n} values for {what}, found {}", nums.len())));
        }
        Ok((line, nums))
    }
}

/// Parses alist text into a sparse matrix; zero entries are padding.
pub fn read_alist(text: &str) -> Result<BinaryMatrix, FormatError> {
    let mut lines = Lines::new("alist", text);
    let (_, dims) = lines.exact(2, "dimensions")?;
    let (n_cols, n_rows) = (dims[0], dims[1]);
    let (max_line, max) = lines.exact(2, "maximum weights")?;
    let (_, col_deg) = lines.exact(n_cols, "column weights")?;
    let (_, row_deg) = lines.exact(n_rows, "row weights")?;

    let mut read_lists = |count: usize, bound: usize, declared: &[usize], kind: &str| {
        let mut lists = Vec::with_capacity(count);
        for (idx, &deg) in declared.iter().enumerate() {
            let (line, nums) = lines.next_numbers(&format!("{kind} list {}", idx + 1))?;
            let mut list = Vec::with_capacity(nums.len());
            for v in nums.into_iter().filter(|&v| v != 0) {
                if v > bound {
                    return Err(lines.err(line, format!("index {v} exceeds {bound}")));
                }
                list.push(v - 1);
            }
            if list.len() != deg {
                return Err(FormatError::NotRegular {
                    detail: format!(
                        "line {line}: {kind} {} declares weight {deg} but lists {}",
                        idx + 1,
                        list.len()
                    ),
                });
            }
            lists.push(list);
        }
        Ok(lists)
    };
    let col_lists = read_lists(n_cols, n_rows, &col_deg, "column")?;
    let row_lists = read_lists(n_rows, n_cols, &row_deg, "row")?;

    let actual_max = (
        col_deg.iter().copied().max().unwrap_or(0),
        row_deg.iter().copied().max().unwrap_or(0),
    );
    if (max[0], max[1]) != actual_max {
        return Err(FormatError::NotRegular {
            detail: format!(
                "line {max_line}: declared maximum weights {} {} but weights reach {} {}",
                max[0], max[1], actual_max.0, actual_max.1
            ),
        });
    }

    let matrix = BinaryMatrix::new(n_cols, row_lists)
        .ok_or_else(|| lines.err(0, "row list index out of range"))?;
    if matrix.nnz() != row_deg.iter().sum::<usize>() {
        return Err(lines.err(0, "duplicate entries in a row list"));
    }
    let mut from_cols: Vec<Vec<usize>> = col_lists;
    from_cols.iter_mut().for_each(|l| l.sort_unstable());
    if from_cols != matrix.col_lists() {
        return Err(lines.err(0, "column lists disagree with row lists"));
    }
    Ok(matrix)
}

pub fn write_dimacs(b: &Btu) -> String {
    write_dimacs_graph(&b.to_bipartite())
}

/// Left vertices are `1..=n_left`, right vertices follow.
pub fn write_dimacs_graph(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    let base = g.n_left() + 1;
    for (i, c) in g.edges() {
        let _ = writeln!(out, "e {} {}", i + 1, base + c);
    }
    out
}

/// Reads a DIMACS edge list and two-colours it.
///
/// Each component's lowest-numbered vertex goes to the left side, so files
/// written by [`write_dimacs_graph`] come back with the same sides and order.
pub fn read_dimacs(text: &str) -> Result<BipartiteGraph, FormatError> {
    let err = |line: usize, message: String| FormatError::Malformed {
        format: "dimacs",
        line,
        message,
    };
    let mut n = None;
    let mut declared_edges = 0;
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut edges = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                let fields: Vec<&str> = toks.collect();
                if fields.len() != 3 || (fields[0] != "edge" && fields[0] != "col") {
                    return Err(err(line, "expected `p edge <vertices> <edges>`".into()));
                }
                let nv: usize = fields[1].parse().map_err(|_| err(line, "bad vertex count".into()))?;
                declared_edges = fields[2].parse().map_err(|_| err(line, "bad edge count".into()))?;
                n = Some(nv);
                adj = vec![Vec::new(); nv];
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err(line, "edge before problem line".into()))?;
                let ends: Vec<usize> = toks
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(line, "bad edge endpoint".into()))?;
                if ends.len() != 2 || ends.iter().any(|&v| v == 0 || v > nv) || ends[0] == ends[1] {
                    return Err(err(line, format!("invalid edge `{}`", raw.trim())));
                }
                adj[ends[0] - 1].push(ends[1] - 1);
                adj[ends[1] - 1].push(ends[0] - 1);
                edges += 1;
            }
            Some(other) => return Err(err(line, format!("unknown line type `{other}`"))),
        }
    }
    if n.is_none() {
        return Err(err(text.lines().count() + 1, "missing problem line".into()));
    }
    if edges != declared_edges {
        return Err(err(
            0,
            format!("problem line declares {declared_edges} edges, found {edges}"),
        ));
    }

    let nv = adj.len();
    let mut side: Vec<Option<bool>> = vec![None; nv];
    for start in 0..nv {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &w in &adj[u] {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return Err(FormatError::NotBipartite { vertex: w + 1 }),
                    _ => {}
                }
            }
        }
    }
    let mut index = vec![0; nv];
    let (mut nl, mut nr) = (0, 0);
    for v in 0..nv {
        if side[v] == Some(false) {
            index[v] = nl;
            nl += 1;
        } else {
            index[v] = nr;
            nr += 1;
        }
    }
    let lists = (0..nv)
        .filter(|&v| side[v] == Some(false))
        .map(|v| adj[v].iter().map(|&w| index[w]).collect())
        .collect();
    Ok(BipartiteGraph::from_left_lists(nr, lists)?)
}

pub fn write_dense(b: &Btu) -> String {
    b.to_matrix().to_dense_string()
}

pub fn read_dense(text: &str) -> Result<BinaryMatrix, FormatError> {
    let mut width = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let w = *width.get_or_insert(line.len());
        if line.len() != w {
            return Err(FormatError::Malformed {
                format: "dense",
                line: idx + 1,
                message: format!("row has {} columns, expected {w}", line.len()),
            });
        }
        let mut row = Vec::new();
        for (c, ch) in line.bytes().enumerate() {
            match ch {
                b'1' => row.push(c),
                b'0' => {}
                other => {
                    return Err(FormatError::Malformed {
                        format: "dense",
                        line: idx + 1,
                        message: format!("unexpected character `{}`", other as char),
                    })
                }
            }
        }
        rows.push(row);
    }
    Ok(BinaryMatrix::new(width.unwrap_or(0), rows).expect("columns are in range"))
}

impl BinaryMatrix {
    /// Rows are the left side, columns the right side.
    pub fn from_graph(g: &BipartiteGraph) -> BinaryMatrix {
        let rows = (0..g.n_left()).map(|i| g.left_neighbors(i).collect()).collect();
        BinaryMatrix::new(g.n_right(), rows).expect("neighbors are in range")
    }
}

pub fn read_matrix(text: &str, format: GraphFormat) -> Result<BinaryMatrix, FormatError> {
    match format {
        GraphFormat::Alist => read_alist(text),
        GraphFormat::Dense => read_dense(text),
        GraphFormat::Dimacs => Ok(BinaryMatrix::from_graph(&read_dimacs(text)?)),
    }
}

pub fn write_matrix(m: &BinaryMatrix, format: GraphFormat) -> String {
    match format {
        GraphFormat::Alist => write_alist_matrix(m),
        GraphFormat::Dense => m.to_dense_string(),
        GraphFormat::Dimacs => write_dimacs_graph(&m.to_bipartite()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn shifts_btu(n: usize, shifts: &[usize]) -> Btu {
        Btu::from_permutations(shifts.iter().map(|&j| Permutation::circulant(n, j).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn alist_all_ones() {
        let text = write_alist(&shifts_btu(3, &[0, 1, 2]));
        assert_eq!(
            text,
            "3 3\n3 3\n3 3 3\n3 3 3\n1 2 3\n1 2 3\n1 2 3\n1 2 3\n1 2 3\n1 2 3\n"
        );
    }

    #[test]
    fn alist_round_trip() {
        let b = shifts_btu(7, &[0, 1, 3]);
        let m = read_alist(&write_alist(&b)).unwrap();
        assert_eq!(m, b.to_matrix());
        assert!(m.decompose().unwrap().same_matrix(&b));
    }

    #[test]
    fn alist_truncated() {
        let text = write_alist(&shifts_btu(5, &[0, 1]));
        let cut: String = text.lines().take(7).map(|l| format!("{l}\n")).collect();
        assert!(matches!(read_alist(&cut), Err(FormatError::Malformed { line: 8, .. })));
        assert!(matches!(read_alist(""), Err(FormatError::Malformed { line: 1, .. })));
    }

    #[test]
    fn alist_declared_weight_mismatch() {
        let text = "2 2\n1 1\n1 1\n1 2\n1\n2\n1\n1 2\n";
        assert!(matches!(read_alist(text), Err(FormatError::NotRegular { .. })));
    }

    #[test]
    fn alist_inconsistent_lists() {
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n";
        assert!(matches!(read_alist(text), Err(FormatError::Malformed { .. })));
    }

    #[test]
    fn alist_irregular_padding() {
        let m = BinaryMatrix::new(3, vec![vec![0, 1, 2], vec![0]]).unwrap();
        let text = write_alist_matrix(&m);
        assert_eq!(text, "3 2\n2 3\n2 1 1\n3 1\n1 2\n1 0\n1 0\n1 2 3\n1 0 0\n");
        assert_eq!(read_alist(&text).unwrap(), m);
    }

    #[test]
    fn dimacs_identity() {
        let b = Btu::from_permutations(vec![Permutation::identity(3).unwrap()]).unwrap();
        assert_eq!(write_dimacs(&b), "p edge 6 3\ne 1 4\ne 2 5\ne 3 6\n");
        let k33 = write_dimacs(&shifts_btu(3, &[0, 1, 2]));
        assert!(k33.starts_with("p edge 6 9\n"));
        assert_eq!(k33.lines().filter(|l| l.starts_with("e ")).count(), 9);
    }

    #[test]
    fn dimacs_round_trip_keeps_sides() {
        let b = shifts_btu(9, &[0, 3, 4]);
        let g = read_dimacs(&write_dimacs(&b)).unwrap();
        assert_eq!(g, b.to_bipartite());
    }

    #[test]
    fn dimacs_rejects_odd_cycle() {
        let text = "p edge 3 3\ne 1 2\ne 2 3\ne 3 1\n";
        assert!(matches!(read_dimacs(text), Err(FormatError::NotBipartite { .. })));
        assert!(matches!(read_dimacs("e 1 2\n"), Err(FormatError::Malformed { line: 1, .. })));
    }

    #[test]
    fn dense_round_trip() {
        let b = shifts_btu(4, &[1, 2]);
        let text = write_dense(&b);
        assert_eq!(text, "0110\n0011\n1001\n1100\n");
        assert_eq!(read_dense(&text).unwrap(), b.to_matrix());
        assert!(read_dense("01\n1\n").is_err());
        assert!(read_dense("0x\n").is_err());
    }

    #[test]
    fn format_names() {
        for f in [GraphFormat::Alist, GraphFormat::Dimacs, GraphFormat::Dense] {
            assert_eq!(f.name().parse::<GraphFormat>().unwrap(), f);
        }
        assert_eq!(
            GraphFormat::from_extension(std::path::Path::new("h.alist")),
            Some(GraphFormat::Alist)
        );
    }
}
