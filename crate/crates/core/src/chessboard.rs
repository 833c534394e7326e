//! Chessboard representation of a permutation: columns are maximal ascending
//! runs of the permutation, rows are maximal ascending runs of its inverse.
//!
//! Columns are numbered 1.. from the left and rows 1.. from the bottom; cell
//! `(col, row)` counts the entries lying in both.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chessboard {
    cols: usize,
    rows: usize,
    /// Column-major: `cells[(col - 1) * rows + (row - 1)]`.
    cells: Vec<u32>,
}

impl Chessboard {
    /// An all-zero board. Not a valid chessboard until filled.
    pub fn zeros(cols: usize, rows: usize) -> Self {
        Chessboard {
            cols,
            rows,
            cells: vec![0; cols * rows],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.cols == self.rows
    }

    pub fn get(&self, col: usize, row: usize) -> u32 {
        assert!((1..=self.cols).contains(&col) && (1..=self.rows).contains(&row));
        self.cells[(col - 1) * self.rows + (row - 1)]
    }

    pub fn set(&mut self, col: usize, row: usize, value: u32) {
        assert!((1..=self.cols).contains(&col) && (1..=self.rows).contains(&row));
        self.cells[(col - 1) * self.rows + (row - 1)] = value;
    }

    pub fn total(&self) -> usize {
        self.cells.iter().map(|&c| c as usize).sum()
    }

    /// Nonzero squares as `(col, row, count)`, column by column, bottom to top.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (1..=self.cols).flat_map(move |c| {
            (1..=self.rows).filter_map(move |r| {
                let v = self.get(c, r);
                (v > 0).then_some((c, r, v))
            })
        })
    }

    /// Whether `(col, row)` sits on the top-left to bottom-right diagonal of a
    /// square board.
    pub fn on_diagonal(&self, col: usize, row: usize) -> bool {
        col + row == self.rows + 1
    }

    pub fn is_zero_one(&self) -> bool {
        self.cells.iter().all(|&c| c <= 1)
    }

    /// Copy of the sub-board spanning `cols` and `rows` (inclusive, 1-based).
    pub fn sub_board(
        &self,
        cols: std::ops::RangeInclusive<usize>,
        rows: std::ops::RangeInclusive<usize>,
    ) -> Chessboard {
        let mut out = Chessboard::zeros(cols.clone().count(), rows.clone().count());
        for (ci, c) in cols.enumerate() {
            for (ri, r) in rows.clone().enumerate() {
                out.set(ci + 1, ri + 1, self.get(c, r));
            }
        }
        out
    }

    fn check_lines(&self) -> Result<()> {
        for c in 1..=self.cols {
            if (1..=self.rows).all(|r| self.get(c, r) == 0) {
                return Err(Error::InvalidChessboard(format!("column {c} is all zero")));
            }
        }
        for r in 1..=self.rows {
            if (1..=self.cols).all(|c| self.get(c, r) == 0) {
                return Err(Error::InvalidChessboard(format!("row {r} is all zero")));
            }
        }
        Ok(())
    }
}

/// The chessboard of `p`. Rejects the empty permutation.
pub fn chessboard(p: &Permutation) -> Result<Chessboard> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let n = p.len();
    let mut col_of_pos = vec![0usize; n];
    let col_runs = p.ascending_runs();
    for (ci, run) in col_runs.iter().enumerate() {
        for i in run.clone() {
            col_of_pos[i] = ci + 1;
        }
    }
    let mut row_of_val = vec![0usize; n + 1];
    let row_runs = p.inverse().ascending_runs();
    for (ri, run) in row_runs.iter().enumerate() {
        // Positions of the inverse are values of `p`.
        for v in run.clone() {
            row_of_val[v + 1] = ri + 1;
        }
    }
    let mut board = Chessboard::zeros(col_runs.len(), row_runs.len());
    for (i, &v) in p.values().iter().enumerate() {
        let (c, r) = (col_of_pos[i], row_of_val[v]);
        board.set(c, r, board.get(c, r) + 1);
    }
    Ok(board)
}

/// Rebuilds the permutation: rows are filled bottom to top with ascending
/// values, squares left to right, then columns are read left to right in
/// ascending order.
///
/// Fails when a row or column is empty, or when the matrix is not the
/// chessboard of the permutation it describes (adjacent runs would merge).
pub fn from_chessboard(b: &Chessboard) -> Result<Permutation> {
    if b.cols == 0 || b.rows == 0 {
        return Err(Error::InvalidChessboard("empty matrix".into()));
    }
    b.check_lines()?;
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); b.cols * b.rows];
    let mut next = 1usize;
    for r in 1..=b.rows {
        for c in 1..=b.cols {
            let k = b.get(c, r) as usize;
            let cell = &mut assigned[(c - 1) * b.rows + (r - 1)];
            cell.extend(next..next + k);
            next += k;
        }
    }
    let mut values = Vec::with_capacity(next - 1);
    for c in 1..=b.cols {
        let start = values.len();
        for r in 1..=b.rows {
            values.extend_from_slice(&assigned[(c - 1) * b.rows + (r - 1)]);
        }
        values[start..].sort_unstable();
    }
    let p = Permutation::from_vec_unchecked(values);
    let back = chessboard(&p)?;
    if &back != b {
        return Err(Error::InvalidChessboard(format!(
            "runs are not maximal: the matrix describes {p}, whose chessboard is {}x{}",
            back.cols, back.rows
        )));
    }
    Ok(p)
}

/// A nonzero chessboard square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub col: usize,
    pub row: usize,
    pub count: u32,
}

/// Graph on nonzero squares with an edge from each square to the next nonzero
/// square above it in its column and to the right of it in its row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChessboardGraph {
    pub nodes: Vec<Square>,
    /// `(from, to)` node indices.
    pub edges: Vec<(usize, usize)>,
}

impl ChessboardGraph {
    pub fn from_board(b: &Chessboard) -> Self {
        let nodes: Vec<Square> = b
            .nonzero()
            .map(|(col, row, count)| Square { col, row, count })
            .collect();
        let index = |c: usize, r: usize| {
            nodes
                .iter()
                .position(|s| s.col == c && s.row == r)
                .expect("nonzero square")
        };
        let mut edges = Vec::new();
        for c in 1..=b.cols() {
            let rows: Vec<usize> = (1..=b.rows()).filter(|&r| b.get(c, r) > 0).collect();
            for w in rows.windows(2) {
                edges.push((index(c, w[0]), index(c, w[1])));
            }
        }
        for r in 1..=b.rows() {
            let cols: Vec<usize> = (1..=b.cols()).filter(|&c| b.get(c, r) > 0).collect();
            for w in cols.windows(2) {
                edges.push((index(w[0], r), index(w[1], r)));
            }
        }
        ChessboardGraph { nodes, edges }
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(_, t) in &self.edges {
            deg[t] += 1;
        }
        deg
    }

    /// Upward child and rightward child of each node.
    pub fn children(&self) -> Vec<(Option<usize>, Option<usize>)> {
        let mut out = vec![(None, None); self.nodes.len()];
        for &(f, t) in &self.edges {
            if self.nodes[f].col == self.nodes[t].col {
                out[f].0 = Some(t);
            } else {
                out[f].1 = Some(t);
            }
        }
        out
    }

    /// In-degree at most one everywhere and no two edges cross in the
    /// embedding that puts each node on its square.
    pub fn is_directed_plane_forest(&self) -> bool {
        if self.in_degrees().iter().any(|&d| d > 1) {
            return false;
        }
        let (vertical, horizontal): (Vec<_>, Vec<_>) = self
            .edges
            .iter()
            .partition(|&&(f, t)| self.nodes[f].col == self.nodes[t].col);
        for &&(vf, vt) in &vertical {
            let c = self.nodes[vf].col;
            let (r1, r2) = (self.nodes[vf].row, self.nodes[vt].row);
            for &&(hf, ht) in &horizontal {
                let r = self.nodes[hf].row;
                let (c1, c2) = (self.nodes[hf].col, self.nodes[ht].col);
                // Segments between consecutive nonzero squares never pass
                // through a node, so only proper crossings can occur.
                if c1 < c && c < c2 && r1 < r && r < r2 {
                    return false;
                }
            }
        }
        true
    }

    /// A directed plane forest that is connected.
    pub fn is_tree(&self) -> bool {
        !self.nodes.is_empty()
            && self.edges.len() + 1 == self.nodes.len()
            && self.is_directed_plane_forest()
    }

    /// The unique node without a parent, if the graph is a tree.
    pub fn root(&self) -> Option<usize> {
        if !self.is_tree() {
            return None;
        }
        self.in_degrees().iter().position(|&d| d == 0)
    }
}

pub fn chessboard_graph(p: &Permutation) -> Result<ChessboardGraph> {
    Ok(ChessboardGraph::from_board(&chessboard(p)?))
}

impl fmt::Display for Chessboard {
    /// `rows` lines of `cols` space-separated counts, top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in (1..=self.rows).rev() {
            let line: Vec<String> = (1..=self.cols).map(|c| self.get(c, r).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chessboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Chessboard {}x{}", self.cols, self.rows)?;
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Chessboard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines: Vec<Vec<u32>> = Vec::new();
        for (li, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .enumerate()
                .map(|(fi, t)| {
                    t.parse::<u32>().map_err(|e| Error::Parse {
                        location: format!("line {}, field {}", li + 1, fi + 1),
                        message: format!("{t:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = lines.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        location: format!("line {}", li + 1),
                        message: format!("expected {} fields, found {}", first.len(), row.len()),
                    });
                }
            }
            lines.push(row);
        }
        if lines.is_empty() {
            return Err(Error::Parse {
                location: "line 1".into(),
                message: "no rows".into(),
            });
        }
        let rows = lines.len();
        let cols = lines[0].len();
        let mut b = Chessboard::zeros(cols, rows);
        for (i, line) in lines.iter().enumerate() {
            let r = rows - i;
            for (ci, &v) in line.iter().enumerate() {
                b.set(ci + 1, r, v);
            }
        }
        Ok(b)
    }
}
