//! Weighted plumbing trees: the data model, the line-oriented file format
//! and the structural predicates (minimality, bad vertices).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::matrix::IntegerMatrix;

/// A connected, simple, acyclic graph whose vertices carry integer weights
/// `-a_v <= -1`. Vertex order is declaration order and is used for every
/// matrix and vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<String>,
    weights: Vec<BigInt>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl PlumbingGraph {
    /// Build and validate a graph from declared vertices and edges.
    pub fn new<S: AsRef<str>>(vertices: Vec<(String, BigInt)>, edges: &[(S, S)]) -> Result<Self> {
        let mut b = Builder::default();
        for (id, w) in vertices {
            b.vertex(id, w, 0)?;
        }
        for (u, v) in edges {
            b.edge(u.as_ref(), v.as_ref(), 0)?;
        }
        Ok(b.finish()?)
    }

    /// Graph with ids `v1, …, vN` and edges given by 0-based index.
    pub fn from_weights(weights: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let ids: Vec<String> = (1..=weights.len()).map(|i| format!("v{i}")).collect();
        Self::with_ids(&ids, weights, edges)
    }

    pub fn with_ids<S: AsRef<str>>(ids: &[S], weights: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = Builder::default();
        for (id, &w) in ids.iter().zip(weights) {
            b.vertex(id.as_ref().to_string(), BigInt::from(w), 0)?;
        }
        for &(u, v) in edges {
            let (u, v) = (ids[u].as_ref(), ids[v].as_ref());
            b.edge(u, v, 0)?;
        }
        Ok(b.finish()?)
    }

    /// Linear chain with weights `-a_1, …, -a_n`.
    pub fn chain(a: &[BigInt]) -> Result<Self> {
        let vertices = a.iter().enumerate().map(|(i, x)| (format!("v{}", i + 1), -x)).collect();
        let edges: Vec<(String, String)> = (1..a.len()).map(|i| (format!("v{i}"), format!("v{}", i + 1))).collect();
        Self::new(vertices, &edges)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Declared weight `-a_v`.
    pub fn weight(&self, v: usize) -> &BigInt {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    /// `a_v`, the negated weight.
    pub fn a(&self, v: usize) -> BigInt {
        -&self.weights[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbours of `v` in declaration order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_star(&self) -> bool {
        (0..self.len()).filter(|&v| self.degree(v) > 2).count() <= 1
    }

    pub fn intersection_matrix(&self) -> IntegerMatrix {
        let mut q = IntegerMatrix::zeros(self.len());
        for (v, w) in self.weights.iter().enumerate() {
            q[(v, v)] = w.clone();
        }
        for &(u, v) in &self.edges {
            q[(u, v)] = BigInt::one();
            q[(v, u)] = BigInt::one();
        }
        q
    }

    pub fn is_negative_definite(&self) -> bool {
        self.intersection_matrix().is_negative_definite()
    }

    /// No vertex of weight `-1`.
    pub fn is_minimal(&self) -> bool {
        self.weights.iter().all(|w| *w <= BigInt::from(-2))
    }

    /// Vertices with `a_v < deg(v)`, in declaration order.
    pub fn bad_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.a(v) < BigInt::from(self.degree(v)))
            .collect()
    }

    /// At most one bad vertex.
    pub fn is_almost_rational_proxy(&self) -> bool {
        self.bad_vertices().len() <= 1
    }

    /// Laufer's test: grow `Z = Σ E_v` by `E_j` while `Z·E_j = 1`; the
    /// graph is rational iff no step meets `Z·E_j >= 2`. False for forms
    /// that are not negative definite.
    pub fn is_rational(&self) -> bool {
        if !self.is_negative_definite() {
            return false;
        }
        let n = self.len();
        let mut z = vec![BigInt::one(); n];
        let pairing = |z: &[BigInt], j: usize| -> BigInt {
            let mut x = &z[j] * &self.weights[j];
            for &u in &self.adjacency[j] {
                x += &z[u];
            }
            x
        };
        loop {
            let mut grown = false;
            for j in 0..n {
                let p = pairing(&z, j);
                if p >= BigInt::from(2) {
                    return false;
                }
                if p.is_one() {
                    z[j] += 1;
                    grown = true;
                }
            }
            if !grown {
                return true;
            }
        }
    }

    /// Render in the graph file format. Parsing the output yields an equal
    /// graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, w) in self.ids.iter().zip(&self.weights) {
            let _ = writeln!(out, "vertex {id} {w}");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "edge {} {}", self.ids[u], self.ids[v]);
        }
        out
    }
}

#[derive(Default)]
struct Builder {
    ids: Vec<String>,
    weights: Vec<BigInt>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    seen_edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, id: String, weight: BigInt, line: usize) -> Result<(), ParseError> {
        let err = |kind| ParseError { line, column: 0, kind };
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(err(ParseErrorKind::Syntax(format!("invalid vertex id `{id}`"))));
        }
        if !weight.is_negative() {
            return Err(err(ParseErrorKind::NonNegativeWeight { id, weight }));
        }
        if self.index.contains_key(&id) {
            return Err(err(ParseErrorKind::DuplicateVertex(id)));
        }
        self.index.insert(id.clone(), self.ids.len());
        self.ids.push(id);
        self.weights.push(weight);
        Ok(())
    }

    fn edge(&mut self, u: &str, v: &str, line: usize) -> Result<(), ParseError> {
        let err = |kind| ParseError { line, column: 0, kind };
        let iu = *self
            .index
            .get(u)
            .ok_or_else(|| err(ParseErrorKind::DanglingEdge(u.to_string())))?;
        let iv = *self
            .index
            .get(v)
            .ok_or_else(|| err(ParseErrorKind::DanglingEdge(v.to_string())))?;
        if iu == iv {
            return Err(err(ParseErrorKind::SelfLoop(u.to_string())));
        }
        if !self.seen_edges.insert((iu.min(iv), iu.max(iv))) {
            return Err(err(ParseErrorKind::MultiEdge(u.to_string(), v.to_string())));
        }
        self.edges.push((iu, iv));
        Ok(())
    }

    fn finish(self) -> Result<PlumbingGraph, ParseError> {
        let n = self.ids.len();
        if n == 0 {
            return Err(ParseError::structural(ParseErrorKind::Empty));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        // A cycle shows up as too many edges; a forest as too few reached
        // vertices. Report cycles first since a cyclic graph may also be
        // disconnected.
        if self.edges.len() >= n {
            return Err(ParseError::structural(ParseErrorKind::NotATree(format!(
                "{} edges on {} vertices (a tree has {})",
                self.edges.len(),
                n,
                n - 1
            ))));
        }
        if reached < n {
            return Err(ParseError::structural(ParseErrorKind::Disconnected));
        }
        Ok(PlumbingGraph {
            ids: self.ids,
            weights: self.weights,
            edges: self.edges,
            adjacency,
            index: self.index,
        })
    }
}

/// Parse the line-oriented graph format:
///
/// ```text
/// # comment
/// vertex <id> <weight>
/// edge <id1> <id2>
/// ```
pub fn parse_graph(text: &str) -> Result<PlumbingGraph> {
    let mut b = Builder::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens = tokenize(raw);
        let syntax = |column: usize, msg: String| ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg),
        };
        let (kw_col, kw) = tokens[0];
        match kw {
            "vertex" => {
                if tokens.len() != 3 {
                    return Err(syntax(
                        kw_col,
                        format!("expected `vertex <id> <weight>`, found {} fields", tokens.len()),
                    )
                    .into());
                }
                let (wcol, wtext) = tokens[2];
                let weight: BigInt = wtext
                    .parse()
                    .map_err(|_| syntax(wcol, format!("invalid integer weight `{wtext}`")))?;
                b.vertex(tokens[1].1.to_string(), weight, line).map_err(|mut e| {
                    if matches!(e.kind, ParseErrorKind::NonNegativeWeight { .. }) {
                        e.column = wcol;
                    } else {
                        e.column = tokens[1].0;
                    }
                    e
                })?;
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(syntax(
                        kw_col,
                        format!("expected `edge <id1> <id2>`, found {} fields", tokens.len()),
                    )
                    .into());
                }
                b.edge(tokens[1].1, tokens[2].1, line).map_err(|mut e| {
                    e.column = match &e.kind {
                        ParseErrorKind::DanglingEdge(id) if id == tokens[1].1 => tokens[1].0,
                        ParseErrorKind::DanglingEdge(_) => tokens[2].0,
                        _ => tokens[1].0,
                    };
                    e
                })?;
            }
            other => {
                return Err(syntax(kw_col, format!("unknown directive `{other}`")).into());
            }
        }
    }
    Ok(b.finish()?)
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col_of_start = 0;
    for (col, (i, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => {
                start = Some(i);
                col_of_start = col + 1;
            }
            (true, Some(s)) => {
                out.push((col_of_start, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((col_of_start, &line[s..]));
    }
    out
}

pub fn intersection_matrix(g: &PlumbingGraph) -> IntegerMatrix {
    g.intersection_matrix()
}

pub fn determinant(q: &IntegerMatrix) -> BigInt {
    q.determinant()
}

pub fn is_negative_definite(q: &IntegerMatrix) -> bool {
    q.is_negative_definite()
}

pub fn is_minimal(g: &PlumbingGraph) -> bool {
    g.is_minimal()
}

pub fn bad_vertices(g: &PlumbingGraph) -> Vec<String> {
    g.bad_vertices().into_iter().map(|v| g.id(v).to_string()).collect()
}

pub fn is_almost_rational_proxy(g: &PlumbingGraph) -> bool {
    g.is_almost_rational_proxy()
}

pub fn is_rational(g: &PlumbingGraph) -> bool {
    g.is_rational()
}
