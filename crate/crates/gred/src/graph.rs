//! Labeled simple graphs with loops.
//!
//! A graph here is a symmetric adjacency matrix over GF(2) plus an ordered
//! list of distinct vertex labels. Diagonal entries encode loops, which is
//! the same thing as the `+` sign of the signed-graph view. Vertex identity
//! is the label string; matrix indices are an internal detail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// A set of vertex labels, order-independent.
pub type VertexSet = BTreeSet<String>;

/// Build a [`VertexSet`] from anything yielding label-like strings.
pub fn vertex_set<I, S>(labels: I) -> VertexSet
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    labels.into_iter().map(Into::into).collect()
}

/// Vertex sign in the signed-graph view; `Plus` is equivalent to a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: BitMatrix,
}

fn check_label(label: &str) -> Result<()> {
    let ok = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c == '{' || c == '}');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidLabel(label.to_string()))
    }
}

impl Graph {
    /// Validating constructor: labels must be distinct well-formed words and
    /// `adj` must be a symmetric square matrix of matching size.
    pub fn new(labels: Vec<String>, adj: BitMatrix) -> Result<Graph> {
        let n = labels.len();
        assert_eq!(adj.n_rows(), n, "adjacency size does not match label count");
        assert!(adj.is_square(), "adjacency matrix must be square");
        let mut seen = BTreeSet::new();
        for label in &labels {
            check_label(label)?;
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if adj.get(i, j) != adj.get(j, i) {
                    return Err(Error::Asymmetric {
                        row: labels[i].clone(),
                        col: labels[j].clone(),
                    });
                }
            }
        }
        Ok(Graph { labels, adj })
    }

    /// For internal call sites that construct adjacency known to be valid.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, adj: BitMatrix) -> Graph {
        debug_assert_eq!(labels.len(), adj.n_rows());
        debug_assert!(adj.is_symmetric());
        Graph { labels, adj }
    }

    pub fn empty() -> Graph {
        Graph {
            labels: Vec::new(),
            adj: BitMatrix::zeros(0, 0),
        }
    }

    /// The `code`-th graph on `labels`, driven by
    /// [`BitMatrix::symmetric_from_code`]. Handy for exhaustive sweeps over
    /// all graphs on a few vertices.
    pub fn symmetric_from_code(labels: &[&str], code: u64) -> Graph {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let adj = BitMatrix::symmetric_from_code(labels.len(), code);
        Graph::new(labels, adj).expect("valid labels")
    }

    /// Build from the signed-graph view: a `+` sign puts a loop on the
    /// vertex, and edges join distinct declared vertices.
    pub fn from_signed_edges(vertices: &[(String, Sign)], edges: &[(String, String)]) -> Result<Graph> {
        let labels: Vec<String> = vertices.iter().map(|(name, _)| name.clone()).collect();
        let mut adj = BitMatrix::zeros(labels.len(), labels.len());
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfEdge(u.clone()));
            }
            let &i = index.get(u.as_str()).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let &j = index.get(v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            adj.set(i, j, true);
            adj.set(j, i, true);
        }
        for (i, (_, sign)) in vertices.iter().enumerate() {
            if *sign == Sign::Plus {
                adj.set(i, i, true);
            }
        }
        Graph::new(labels, adj)
    }

    /// Build the graph of a legal string: whitespace-separated tokens, each
    /// a letter with an optional leading `-` marking inversion. Every letter
    /// must occur exactly twice (ignoring sign). Two letters are joined by
    /// an edge iff their occurrences interlock (`abab`, not `aabb` or
    /// `abba`), and a letter gets a loop iff its occurrences carry opposite
    /// inversion flags. Vertices appear in first-occurrence order.
    pub fn from_legal_string(input: &str) -> Result<Graph> {
        struct Occurrences {
            positions: Vec<usize>,
            inverted: Vec<bool>,
        }
        let mut order: Vec<String> = Vec::new();
        let mut occ: BTreeMap<String, Occurrences> = BTreeMap::new();
        for (pos, token) in input.split_whitespace().enumerate() {
            let (inverted, letter) = match token.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, token),
            };
            check_label(letter)?;
            let entry = occ.entry(letter.to_string()).or_insert_with(|| {
                order.push(letter.to_string());
                Occurrences {
                    positions: Vec::new(),
                    inverted: Vec::new(),
                }
            });
            entry.positions.push(pos);
            entry.inverted.push(inverted);
        }
        for letter in &order {
            let count = occ[letter].positions.len();
            if count != 2 {
                return Err(Error::LetterCount {
                    letter: letter.clone(),
                    count,
                });
            }
        }
        let n = order.len();
        let mut adj = BitMatrix::zeros(n, n);
        for (i, a) in order.iter().enumerate() {
            let oa = &occ[a];
            if oa.inverted[0] != oa.inverted[1] {
                adj.set(i, i, true);
            }
            for (j, b) in order.iter().enumerate().take(i) {
                let ob = &occ[b];
                let (a1, a2) = (oa.positions[0], oa.positions[1]);
                let (b1, b2) = (ob.positions[0], ob.positions[1]);
                let interlocked = (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
                if interlocked {
                    adj.set(i, j, true);
                    adj.set(j, i, true);
                }
            }
        }
        Ok(Graph { labels: order, adj })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    /// All labels as a set.
    pub fn label_set(&self) -> VertexSet {
        self.labels.iter().cloned().collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indices of `w` in this graph's label order (ascending).
    pub fn indices_of(&self, w: &VertexSet) -> Result<Vec<usize>> {
        let mut idx = Vec::with_capacity(w.len());
        for label in w {
            idx.push(self.index_of(label).ok_or_else(|| Error::UnknownVertex(label.clone()))?);
        }
        idx.sort_unstable();
        Ok(idx)
    }

    pub(crate) fn complement_indices(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|i| !indices.contains(i)).collect()
    }

    /// Loop presence (`u == v`) or edge presence.
    pub fn has_edge(&self, u: &str, v: &str) -> Result<bool> {
        let i = self.index_of(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let j = self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        Ok(self.adj.get(i, j))
    }

    pub fn has_loop(&self, v: &str) -> Result<bool> {
        self.has_edge(v, v)
    }

    /// Neighbors of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: &str) -> Result<VertexSet> {
        let i = self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        Ok((0..self.n())
            .filter(|&j| j != i && self.adj.get(i, j))
            .map(|j| self.labels[j].clone())
            .collect())
    }

    /// Induced subgraph on `w`; labels keep their original order.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<Graph> {
        let idx = self.indices_of(w)?;
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = self.adj.submatrix(&idx, &idx);
        Ok(Graph { labels, adj })
    }

    /// Rank over GF(2) of the adjacency submatrix with rows `w1` and
    /// columns `w2`. Symmetric in its arguments because `adj` is.
    pub fn rank_between(&self, w1: &VertexSet, w2: &VertexSet) -> Result<usize> {
        let rows = self.indices_of(w1)?;
        let cols = self.indices_of(w2)?;
        Ok(self.adj.submatrix(&rows, &cols).rank())
    }

    /// `rank_between(w, w)` — the rank of `w`'s principal submatrix.
    pub fn rank_of(&self, w: &VertexSet) -> Result<usize> {
        self.rank_between(w, w)
    }

    /// `|w| - rank_of(w)`.
    pub fn nullity_of(&self, w: &VertexSet) -> Result<usize> {
        Ok(w.len() - self.rank_of(w)?)
    }

    /// Rank of the whole adjacency matrix (the binary rank of the graph).
    pub fn rank(&self) -> usize {
        self.adj.rank()
    }

    /// `n - rank`.
    pub fn nullity(&self) -> usize {
        self.n() - self.rank()
    }

    /// DOT rendering: one node statement per vertex in label order, one edge
    /// statement per unordered adjacent pair in lexicographic order, with
    /// loops as self-edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for label in &self.labels {
            out.push_str(&format!("  \"{label}\";\n"));
        }
        let mut edges: Vec<(String, String)> = Vec::new();
        for i in 0..self.n() {
            for j in i..self.n() {
                if self.adj.get(i, j) {
                    let (a, b) = (&self.labels[i], &self.labels[j]);
                    let pair = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                    edges.push(pair);
                }
            }
        }
        edges.sort();
        for (a, b) in edges {
            out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Graph {
    /// Graph file format: line 1 `graph N`, line 2 the N labels separated
    /// by spaces, then the N adjacency rows as `0`/`1` characters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.n())?;
        writeln!(f, "{}", self.labels.join(" "))?;
        for i in 0..self.n() {
            for j in 0..self.n() {
                f.write_str(if self.adj.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph\n{self}")
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "expected a `graph N` header".into(),
        })?;
        let n: usize = header
            .strip_prefix("graph ")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("bad graph header `{header}`: expected `graph N`"),
            })?;
        let label_line = match lines.next() {
            Some(line) => line,
            None if n == 0 => "",
            None => {
                return Err(Error::Parse {
                    line: 2,
                    message: "expected a label line".into(),
                })
            }
        };
        let labels: Vec<String> = label_line.split_whitespace().map(str::to_string).collect();
        if labels.len() != n {
            return Err(Error::Parse {
                line: 2,
                message: format!("expected {} labels, found {}", n, labels.len()),
            });
        }
        let mut adj = BitMatrix::zeros(n, n);
        for i in 0..n {
            let line_no = i + 3;
            let row = lines.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected {n} adjacency rows, found {i}"),
            })?;
            if row.chars().count() != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} characters, found {}", n, row.chars().count()),
                });
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => adj.set(i, j, true),
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("column {}: expected `0` or `1`, found `{c}`", j + 1),
                        })
                    }
                }
            }
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: 0,
                message: format!("unexpected trailing content `{extra}`"),
            });
        }
        Graph::new(labels, adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign(s: &str) -> Vec<(String, Sign)> {
        s.split_whitespace()
            .map(|tok| match tok.strip_suffix('+') {
                Some(name) => (name.to_string(), Sign::Plus),
                None => (tok.trim_end_matches('-').to_string(), Sign::Minus),
            })
            .collect()
    }

    fn edges(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn signed_construction() {
        let g = Graph::from_signed_edges(&sign("a+"), &[]).unwrap();
        assert_eq!(g.adjacency(), &BitMatrix::from_bit_rows(&["1"]));

        let g = Graph::from_signed_edges(&sign("a- b-"), &edges(&[("a", "b")])).unwrap();
        assert_eq!(g.adjacency(), &BitMatrix::from_bit_rows(&["01", "10"]));

        // Three positive vertices, v1 adjacent to v2 and v3.
        let g = Graph::from_signed_edges(&sign("v1+ v2+ v3+"), &edges(&[("v1", "v2"), ("v1", "v3")])).unwrap();
        assert_eq!(g.adjacency(), &BitMatrix::from_bit_rows(&["111", "110", "101"]));
    }

    #[test]
    fn signed_construction_errors() {
        assert_eq!(
            Graph::from_signed_edges(&sign("a-"), &edges(&[("a", "b")])),
            Err(Error::UnknownVertex("b".into()))
        );
        assert_eq!(
            Graph::from_signed_edges(&sign("a- a+"), &[]),
            Err(Error::DuplicateVertex("a".into()))
        );
        assert_eq!(
            Graph::from_signed_edges(&sign("a-"), &edges(&[("a", "a")])),
            Err(Error::SelfEdge("a".into()))
        );
    }

    #[test]
    fn legal_string_patterns() {
        let g = Graph::from_legal_string("a b a b").unwrap();
        assert!(g.has_edge("a", "b").unwrap());
        assert!(!g.has_loop("a").unwrap() && !g.has_loop("b").unwrap());

        let g = Graph::from_legal_string("a a b b").unwrap();
        assert!(!g.has_edge("a", "b").unwrap());

        let g = Graph::from_legal_string("a b -a b").unwrap();
        assert!(g.has_edge("a", "b").unwrap());
        assert!(g.has_loop("a").unwrap());
        assert!(!g.has_loop("b").unwrap());
    }

    #[test]
    fn legal_string_edges() {
        assert_eq!(Graph::from_legal_string(""), Ok(Graph::empty()));
        assert_eq!(
            Graph::from_legal_string("a b a"),
            Err(Error::LetterCount { letter: "b".into(), count: 1 })
        );
        assert_eq!(
            Graph::from_legal_string("a a a b b"),
            Err(Error::LetterCount { letter: "a".into(), count: 3 })
        );
        // Which occurrence carries the `-` does not matter, only the parity.
        let g1 = Graph::from_legal_string("-a b a b").unwrap();
        let g2 = Graph::from_legal_string("a b -a b").unwrap();
        assert_eq!(g1, g2);
        let g3 = Graph::from_legal_string("-a b -a b").unwrap();
        assert!(!g3.has_loop("a").unwrap());
    }

    #[test]
    fn induced_subgraphs() {
        let g = Graph::from_legal_string("a b c a b c").unwrap();
        assert_eq!(g.induced_subgraph(&g.label_set()).unwrap(), g);
        assert_eq!(g.induced_subgraph(&VertexSet::new()).unwrap(), Graph::empty());
        assert_eq!(
            g.induced_subgraph(&vertex_set(["z"])),
            Err(Error::UnknownVertex("z".into()))
        );
        // Composition: restricting twice equals restricting once.
        let w = vertex_set(["a", "b"]);
        let u = vertex_set(["b"]);
        assert_eq!(
            g.induced_subgraph(&w).unwrap().induced_subgraph(&u).unwrap(),
            g.induced_subgraph(&u).unwrap()
        );
    }

    #[test]
    fn subset_ranks_on_twin_rows() {
        let a = Graph::new(
            vec!["1".into(), "2".into(), "3".into()],
            BitMatrix::from_bit_rows(&["100", "011", "011"]),
        )
        .unwrap();
        assert_eq!(a.rank_between(&VertexSet::new(), &VertexSet::new()).unwrap(), 0);
        assert_eq!(a.rank_of(&vertex_set(["2", "3"])).unwrap(), 1);
        assert_eq!(a.nullity_of(&vertex_set(["2", "3"])).unwrap(), 1);
        assert_eq!(a.rank_of(&vertex_set(["1", "2"])).unwrap(), 2);
        assert_eq!(a.nullity_of(&vertex_set(["1", "2"])).unwrap(), 0);
    }

    #[test]
    fn file_format_round_trip() {
        let g = Graph::from_legal_string("a b -a c b c").unwrap();
        let text = g.to_string();
        assert_eq!(text.parse::<Graph>().unwrap(), g);

        let e = Graph::empty();
        assert_eq!(e.to_string(), "graph 0\n\n");
        assert_eq!(e.to_string().parse::<Graph>().unwrap(), e);
    }

    #[test]
    fn file_format_rejects_asymmetry() {
        let err = "graph 2\na b\n01\n00\n".parse::<Graph>().unwrap_err();
        assert_eq!(err, Error::Asymmetric { row: "b".into(), col: "a".into() });
    }

    #[test]
    fn dot_output() {
        let g = Graph::from_signed_edges(&sign("b+ a-"), &edges(&[("b", "a")])).unwrap();
        assert_eq!(
            g.to_dot(),
            "graph G {\n  \"b\";\n  \"a\";\n  \"a\" -- \"b\";\n  \"b\" -- \"b\";\n}\n"
        );
    }
}
