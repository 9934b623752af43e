//! q-ary LDPC codes as labeled Tanner graphs.
//!
//! A [`Code`] keeps its check rows sorted by variable index and derives a flat
//! edge numbering from them: edges of check 0 first, then check 1, and so on.
//! Decoders store one message per edge in that order.

mod construct;
mod linalg;
mod nbalist;

pub use construct::{random_regular_code, random_tree_code, TreeSpec};
pub use linalg::{enumerate_codewords, Encoder, SystematicForm};
pub use nbalist::{normalize_code_text, parse_code_file, serialize_code_file};

use std::collections::VecDeque;
use std::ops::{Deref, Index};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// One nonzero entry of a check row: variable index and label `h_{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowEntry {
    pub var: usize,
    pub label: FieldElement,
}

/// Word of N field symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolVector(pub Vec<FieldElement>);

impl SymbolVector {
    pub fn zeros(n: usize) -> Self {
        SymbolVector(vec![FieldElement::ZERO; n])
    }

    pub fn from_values(values: &[u8]) -> Self {
        SymbolVector(values.iter().map(|&v| FieldElement(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Deref for SymbolVector {
    type Target = [FieldElement];
    fn deref(&self) -> &[FieldElement] {
        &self.0
    }
}

impl Index<usize> for SymbolVector {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }
}

/// A q-ary parity-check matrix stored sparsely by rows, with the transposed
/// adjacency and flat edge numbering derived on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    field: Field,
    rows: Vec<Vec<RowEntry>>,
    row_offsets: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
}

impl Code {
    /// Validates and canonicalizes a code: rows are re-sorted by variable index.
    pub fn new(n: usize, field: Field, mut rows: Vec<Vec<RowEntry>>) -> Result<Code> {
        let q = field.order();
        for (m, row) in rows.iter_mut().enumerate() {
            if row.len() < 2 {
                return Err(Error::Construction(format!(
                    "check {m} has degree {} (minimum is 2)",
                    row.len()
                )));
            }
            for e in row.iter() {
                if e.var >= n {
                    return Err(Error::Construction(format!(
                        "check {m} references variable {} but N = {n}",
                        e.var
                    )));
                }
                if e.label.is_zero() || e.label.index() >= q {
                    return Err(Error::Construction(format!(
                        "check {m} has invalid label {} on variable {}",
                        e.label, e.var
                    )));
                }
            }
            row.sort_by_key(|e| e.var);
            if let Some(w) = row.windows(2).find(|w| w[0].var == w[1].var) {
                return Err(Error::Construction(format!(
                    "check {m} connects to variable {} twice",
                    w[0].var
                )));
            }
        }

        let mut row_offsets = Vec::with_capacity(rows.len() + 1);
        let mut var_edges = vec![Vec::new(); n];
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        row_offsets.push(0);
        for (m, row) in rows.iter().enumerate() {
            for e in row {
                var_edges[e.var].push(edge_var.len());
                edge_var.push(e.var);
                edge_check.push(m);
            }
            row_offsets.push(edge_var.len());
        }
        if let Some(v) = var_edges.iter().position(|e| e.is_empty()) {
            return Err(Error::Construction(format!(
                "variable {v} is not connected to any check"
            )));
        }

        Ok(Code {
            n,
            field,
            rows,
            row_offsets,
            var_edges,
            edge_var,
            edge_check,
        })
    }

    /// Convenience constructor from `(var, label)` pairs with raw label values.
    pub fn from_rows(n: usize, field: Field, rows: &[Vec<(usize, u8)>]) -> Result<Code> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(var, label)| RowEntry {
                        var,
                        label: FieldElement(label),
                    })
                    .collect()
            })
            .collect();
        Code::new(n, field, rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn rows(&self) -> &[Vec<RowEntry>] {
        &self.rows
    }

    pub fn row(&self, m: usize) -> &[RowEntry] {
        &self.rows[m]
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Edge ids of check `m`, in row order.
    #[inline]
    pub fn check_edges(&self, m: usize) -> std::ops::Range<usize> {
        self.row_offsets[m]..self.row_offsets[m + 1]
    }

    /// Edge ids of variable `n`, ascending by check index.
    #[inline]
    pub fn var_edges(&self, n: usize) -> &[usize] {
        &self.var_edges[n]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    #[inline]
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    pub fn var_degree(&self, n: usize) -> usize {
        self.var_edges[n].len()
    }

    pub fn check_degree(&self, m: usize) -> usize {
        self.rows[m].len()
    }

    /// Checks adjacent to variable `n`.
    pub fn var_checks(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.var_edges[n].iter().map(|&e| self.edge_check[e])
    }

    pub fn design_rate(&self) -> f64 {
        1.0 - self.m() as f64 / self.n as f64
    }

    /// `s_m = sum_n h_{m,n} word[n]` for every check.
    pub fn syndrome(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if word.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "word has length {} but code has N = {}",
                word.len(),
                self.n
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter().fold(FieldElement::ZERO, |acc, e| {
                    self.field.add(acc, self.field.mul(e.label, word[e.var]))
                })
            })
            .collect())
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> bool {
        word.len() == self.n
            && self.rows.iter().all(|row| {
                row.iter()
                    .fold(0u8, |acc, e| acc ^ self.field.mul(e.label, word[e.var]).0)
                    == 0
            })
    }

    /// True if the Tanner graph is connected and cycle free.
    pub fn is_tree(&self) -> bool {
        let nodes = self.n + self.m();
        self.num_edges() + 1 == nodes && self.tanner_distances(0).iter().all(|d| d.is_some())
    }

    /// Longest shortest path (in Tanner-graph edges) between any two nodes,
    /// or `None` when the graph is disconnected.
    pub fn tanner_diameter(&self) -> Option<usize> {
        let mut diameter = 0;
        for start in 0..self.n + self.m() {
            for d in self.tanner_distances(start) {
                diameter = diameter.max(d?);
            }
        }
        Some(diameter)
    }

    /// BFS distances from node `start`; variables are nodes `0..N`, checks `N..N+M`.
    fn tanner_distances(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n + self.m()];
        let mut queue = VecDeque::new();
        dist[start] = Some(0);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            let neighbors: Vec<usize> = if u < self.n {
                self.var_checks(u).map(|m| self.n + m).collect()
            } else {
                self.rows[u - self.n].iter().map(|e| e.var).collect()
            };
            for v in neighbors {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}
