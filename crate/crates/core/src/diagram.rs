//! Coxeter diagrams: parsing, odd-edge class labeling and Coxeter words.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Coxeter label `m(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    /// An edge is drawn for every label of at least 3.
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }

    /// JSON encoding: `0` stands for infinity.
    pub fn to_json(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite-rank Coxeter system given by its symmetric label matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    rank: usize,
    labels: Vec<Label>,
}

/// JSON form of a diagram: `{"rank": n, "bonds": [[i, j, label], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub rank: usize,
    #[serde(default)]
    pub bonds: Vec<[u32; 3]>,
}

impl CoxeterDiagram {
    /// All off-diagonal labels default to 2.
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidDiagram("rank must be at least 1".into()));
        }
        let mut labels = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        Ok(Self { rank, labels })
    }

    /// Builds a diagram from a full label matrix, checking symmetry and ranges.
    pub fn from_matrix(rows: Vec<Vec<Label>>) -> Result<Self> {
        let rank = rows.len();
        let mut d = Self::new(rank)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidDiagram(format!(
                    "row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    if m != Label::Finite(1) {
                        return Err(Error::InvalidDiagram(format!(
                            "diagonal entry ({0},{0}) must be 1",
                            i + 1
                        )));
                    }
                } else {
                    if rows[j][i] != m {
                        return Err(Error::InvalidDiagram(format!(
                            "label matrix is not symmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                    if matches!(m, Label::Finite(v) if v < 2) {
                        return Err(Error::InvalidDiagram(format!(
                            "label {m} at ({}, {}) is below 2",
                            i + 1,
                            j + 1
                        )));
                    }
                    d.labels[i * rank + j] = m;
                }
            }
        }
        Ok(d)
    }

    /// Rank-2 dihedral system `I2(m)`.
    pub fn dihedral(m: Label) -> Self {
        let mut d = Self::new(2).expect("rank 2");
        d.set(1, 2, m).expect("valid dihedral label");
        d
    }

    /// Type `A_n` (a path with labels 3).
    pub fn type_a(rank: usize) -> Result<Self> {
        let mut d = Self::new(rank)?;
        for i in 1..rank {
            d.set(i, i + 1, Label::Finite(3))?;
        }
        Ok(d)
    }

    /// Sets `m(i, j) = m(j, i)` for 1-based simple indices.
    pub fn set(&mut self, i: usize, j: usize, m: Label) -> Result<()> {
        if i == 0 || j == 0 || i > self.rank || j > self.rank {
            return Err(Error::InvalidDiagram(format!(
                "index pair ({i}, {j}) out of range 1..={}",
                self.rank
            )));
        }
        if i == j {
            return Err(Error::InvalidDiagram(format!(
                "cannot set diagonal label ({i}, {i})"
            )));
        }
        if matches!(m, Label::Finite(v) if v < 2) {
            return Err(Error::InvalidDiagram(format!(
                "label {m} for ({i}, {j}) must be at least 2"
            )));
        }
        let n = self.rank;
        self.labels[(i - 1) * n + (j - 1)] = m;
        self.labels[(j - 1) * n + (i - 1)] = m;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label for 0-based indices.
    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    /// The distinct finite off-diagonal labels.
    pub fn finite_labels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.rank)
            .flat_map(|i| (i + 1..self.rank).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.label(i, j).finite())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Parses the line-oriented diagram language:
    ///
    /// ```text
    /// # comment
    /// rank 3
    /// m 1 2 3
    /// m 2 3 inf
    /// ```
    ///
    /// Statements may also be separated by `;`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut diagram: Option<Self> = None;
        let mut seen = Vec::new();
        for (line_no, raw_line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = raw_line.split('#').next().unwrap_or("");
            let mut offset = 0;
            for stmt in line.split(';') {
                let stmt_start = offset;
                offset += stmt.len() + 1;
                let tokens = tokenize(stmt, stmt_start);
                let Some(&(col, head)) = tokens.first() else {
                    continue;
                };
                let syntax = |column: usize, message: String| Error::Syntax {
                    line: line_no,
                    column,
                    message,
                };
                match head {
                    "rank" => {
                        if diagram.is_some() {
                            return Err(syntax(col, "duplicate `rank` statement".into()));
                        }
                        if tokens.len() != 2 {
                            return Err(syntax(col, "expected `rank <n>`".into()));
                        }
                        let (c, tok) = tokens[1];
                        let n: usize = tok.parse().map_err(|_| {
                            syntax(c, format!("expected a positive integer, found `{tok}`"))
                        })?;
                        if n == 0 {
                            return Err(syntax(c, "rank must be at least 1".into()));
                        }
                        diagram = Some(Self::new(n)?);
                    }
                    "m" => {
                        let Some(d) = diagram.as_mut() else {
                            return Err(syntax(col, "`m` statement before `rank`".into()));
                        };
                        if tokens.len() != 4 {
                            return Err(syntax(col, "expected `m <i> <j> <label>`".into()));
                        }
                        let index = |k: usize| -> Result<usize> {
                            let (c, tok) = tokens[k];
                            match tok.parse::<usize>() {
                                Ok(v) if v >= 1 && v <= d.rank => Ok(v),
                                _ => Err(syntax(
                                    c,
                                    format!("index `{tok}` is not in 1..={}", d.rank),
                                )),
                            }
                        };
                        let i = index(1)?;
                        let j = index(2)?;
                        if i == j {
                            return Err(syntax(
                                tokens[2].0,
                                "diagonal labels are fixed to 1".into(),
                            ));
                        }
                        let (c, tok) = tokens[3];
                        let label = if tok == "inf" {
                            Label::Infinite
                        } else {
                            match tok.parse::<u32>() {
                                Ok(v) if v >= 2 => Label::Finite(v),
                                _ => {
                                    return Err(syntax(
                                        c,
                                        format!("label `{tok}` must be an integer >= 2 or `inf`"),
                                    ))
                                }
                            }
                        };
                        let key = (i.min(j), i.max(j));
                        if let Some(&(_, prev)) = seen.iter().find(|(k, _)| *k == key) {
                            if prev != label {
                                return Err(syntax(
                                    col,
                                    format!("conflicting labels for ({i}, {j})"),
                                ));
                            }
                        }
                        seen.push((key, label));
                        d.set(i, j, label)?;
                    }
                    other => return Err(syntax(col, format!("unknown statement `{other}`"))),
                }
            }
        }
        diagram.ok_or(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `rank` statement".into(),
        })
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let mut d = Self::new(json.rank)?;
        for &[i, j, m] in &json.bonds {
            let label = match m {
                0 => Label::Infinite,
                1 => {
                    return Err(Error::InvalidDiagram(format!(
                        "label 1 for ({i}, {j}) is out of range"
                    )))
                }
                v => Label::Finite(v),
            };
            d.set(i as usize, j as usize, label)?;
        }
        Ok(d)
    }

    pub fn to_json(&self) -> DiagramJson {
        let mut bonds = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let m = self.label(i, j);
                if m != Label::Finite(2) {
                    bonds.push([i as u32 + 1, j as u32 + 1, m.to_json()]);
                }
            }
        }
        DiagramJson {
            rank: self.rank,
            bonds,
        }
    }

    /// Conjugacy-class labeling of the simple reflections: two simple
    /// reflections are conjugate iff they are joined by a path of odd edges.
    pub fn odd_components(&self) -> ClassLabeling {
        let n = self.rank;
        let mut class_of = vec![0usize; n];
        let mut next = 0;
        for start in 0..n {
            if class_of[start] != 0 {
                continue;
            }
            next += 1;
            class_of[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..n {
                    if w != v && class_of[w] == 0 && self.label(v, w).is_odd() {
                        class_of[w] = next;
                        queue.push_back(w);
                    }
                }
            }
        }
        ClassLabeling {
            class_of_simple: class_of,
            class_count: next,
        }
    }

    /// Shortest path of odd edges between two simple indices (0-based), endpoints included.
    pub fn odd_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.rank;
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in 0..n {
                if w != v && prev[w] == usize::MAX && self.label(v, w).is_odd() {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// The Coxeter word `s_{π(1)} ⋯ s_{π(n)}` for a permutation given as
    /// 1-based images `[π(1), …, π(n)]`.
    pub fn coxeter_word(&self, permutation: &[usize]) -> Result<CoxeterWord> {
        let n = self.rank;
        if permutation.len() != n {
            return Err(Error::InvalidInput(format!(
                "permutation has {} entries, expected {n}",
                permutation.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in permutation {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidInput(format!(
                    "{permutation:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(CoxeterWord {
            letters: permutation.to_vec(),
        })
    }
}

fn tokenize(stmt: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in stmt.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((base + s + 1, &stmt[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((base + s + 1, &stmt[s..]));
    }
    out
}

/// Class id (1-based) of each simple reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassLabeling {
    class_of_simple: Vec<usize>,
    class_count: usize,
}

impl ClassLabeling {
    /// Class id of the 1-based simple index `i`.
    pub fn class_of_simple(&self, i: usize) -> usize {
        self.class_of_simple[i - 1]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of_simple
    }

    /// Smallest simple index (1-based) carrying the given class id.
    pub fn representative(&self, class: usize) -> Option<usize> {
        self.class_of_simple
            .iter()
            .position(|&c| c == class)
            .map(|p| p + 1)
    }

    /// Simple indices grouped by class, in class-id order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (i, &c) in self.class_of_simple.iter().enumerate() {
            out[c - 1].push(i + 1);
        }
        out
    }
}

/// The letter sequence of a Coxeter element; each simple index appears once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterWord {
    letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}
