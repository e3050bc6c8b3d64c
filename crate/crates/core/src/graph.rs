//! Simple undirected graphs with bitset adjacency rows, plus the matching
//! type and the bit-exact text format.
//!
//! The text format is one line `graph <n>` followed by one line `e <u> <v>`
//! per edge with `0 <= u < v < n`, LF line endings, no duplicates.
//! Serialization emits edges in lexicographic order, so parse/serialize
//! round-trips bit-exactly.

use crate::error::{MatchingError, ParseError};
use std::fmt;

const WORD: usize = 64;

/// Simple undirected graph on vertices `0..n`. Adjacency is symmetric,
/// with no self-loops and no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn e(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Adds the edge `u-v`. Panics on self-loops or out-of-range ids;
    /// adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range");
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(u);
        (0..self.n).filter(move |&v| row[v / WORD] >> (v % WORD) & 1 == 1)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.e());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges of `self` inside the vertex set `s`.
    pub fn edges_within(&self, s: &[usize]) -> usize {
        let mut cnt = 0;
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if self.has_edge(u, v) {
                    cnt += 1;
                }
            }
        }
        cnt
    }

    /// Induced subgraph on `s`, relabeled to `0..s.len()` in the order given.
    pub fn induced(&self, s: &[usize]) -> Graph {
        let mut g = Graph::new(s.len());
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertices: vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|u| self.degree(u) == 0)
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let n = parse_header(header, "graph")?;
        let mut g = Graph::new(n);
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_ascii_whitespace();
            let tag = it.next();
            if tag != Some("e") {
                return Err(ParseError::MalformedEdge(line.to_string()));
            }
            let u = parse_id(it.next(), line)?;
            let v = parse_id(it.next(), line)?;
            if it.next().is_some() {
                return Err(ParseError::MalformedEdge(line.to_string()));
            }
            if u == v {
                return Err(ParseError::SelfLoop(u));
            }
            if u > v {
                return Err(ParseError::MalformedEdge(line.to_string()));
            }
            for id in [u, v] {
                if id >= n {
                    return Err(ParseError::VertexOutOfRange { id, n });
                }
            }
            if g.has_edge(u, v) {
                return Err(ParseError::DuplicateEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Serializes to the text format; inverse of [`Graph::parse`].
    pub fn serialize(&self) -> String {
        let mut out = format!("graph {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn parse_header(line: &str, expected: &'static str) -> Result<usize, ParseError> {
    let err = || ParseError::MalformedHeader {
        expected,
        got: line.to_string(),
    };
    let mut it = line.split_ascii_whitespace();
    if it.next() != Some(expected) {
        return Err(err());
    }
    let n = it.next().ok_or_else(err)?.parse::<usize>().map_err(|_| err())?;
    if it.next().is_some() {
        return Err(err());
    }
    Ok(n)
}

fn parse_id(tok: Option<&str>, line: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| ParseError::MalformedEdge(line.to_string()))
}

/// A set of pairwise-disjoint edges of some graph. Pairs are stored with
/// `u < v` and sorted, so equal matchings compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.pairs.binary_search(&key).is_ok()
    }

    /// The matching partner of `v`, if covered.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Checks the matching invariant against `g`: pairs are edges of `g`
    /// and pairwise disjoint.
    pub fn validate(&self, g: &Graph) -> Result<(), MatchingError> {
        let mut seen = vec![false; g.n()];
        for &(u, v) in &self.pairs {
            for id in [u, v] {
                if id >= g.n() {
                    return Err(MatchingError::OutOfRange { id, n: g.n() });
                }
            }
            if !g.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge(u, v));
            }
            for id in [u, v] {
                if seen[id] {
                    return Err(MatchingError::Overlapping(id));
                }
                seen[id] = true;
            }
        }
        Ok(())
    }

    /// Checks that the matching is a perfect matching of `g`.
    pub fn validate_perfect(&self, g: &Graph) -> Result<(), MatchingError> {
        self.validate(g)?;
        let mut seen = vec![false; g.n()];
        for &(u, v) in &self.pairs {
            seen[u] = true;
            seen[v] = true;
        }
        match seen.iter().position(|&c| !c) {
            Some(v) => Err(MatchingError::NotPerfect(v)),
            None => Ok(()),
        }
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.validate_perfect(g).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])
    }

    #[test]
    fn parse_k2() {
        let g = Graph::parse("graph 2\ne 0 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.e(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn parse_p4() {
        let g = Graph::parse("graph 4\ne 0 1\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, p4());
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            Graph::parse("graph 3\ne 0 0"),
            Err(ParseError::SelfLoop(0))
        );
    }

    #[test]
    fn parse_rejects_duplicate() {
        assert_eq!(
            Graph::parse("graph 3\ne 0 1\ne 0 1"),
            Err(ParseError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert_eq!(
            Graph::parse("graph 2\ne 0 5"),
            Err(ParseError::VertexOutOfRange { id: 5, n: 2 })
        );
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert!(matches!(
            Graph::parse("grph 2"),
            Err(ParseError::MalformedHeader { .. })
        ));
        assert!(matches!(
            Graph::parse(""),
            Err(ParseError::MalformedHeader { .. })
        ));
    }

    #[test]
    fn parse_rejects_unordered_edge() {
        assert!(matches!(
            Graph::parse("graph 3\ne 2 1"),
            Err(ParseError::MalformedEdge(_))
        ));
    }

    #[test]
    fn serialize_round_trip() {
        let g = p4();
        let text = g.serialize();
        assert_eq!(text, "graph 4\ne 0 1\ne 1 2\ne 2 3\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn matching_validation() {
        let g = p4();
        let m = Matching::new([(0, 1), (2, 3)]);
        assert!(m.validate_perfect(&g).is_ok());
        assert_eq!(m.partner(2), Some(3));

        let not_perfect = Matching::new([(1, 2)]);
        assert_eq!(
            not_perfect.validate_perfect(&g),
            Err(MatchingError::NotPerfect(0))
        );

        let not_edge = Matching::new([(0, 3)]);
        assert_eq!(not_edge.validate(&g), Err(MatchingError::NotAnEdge(0, 3)));

        let overlap = Matching::new([(0, 1), (1, 2)]);
        assert_eq!(overlap.validate(&g), Err(MatchingError::Overlapping(1)));
    }

    #[test]
    fn degree_and_neighbors() {
        let g = p4();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![0, 2]);
        assert!(!g.has_isolated_vertex());
        assert!(Graph::new(1).has_isolated_vertex());
    }

    #[test]
    fn induced_subgraph() {
        let g = p4();
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }
}
