//! Locally directed graphs: multigraphs with a sign per (vertex, edge)
//! incidence, their transforms, acyclicity, and induced counting.
//!
//! A locally directed graph generalizes a digraph: an edge may be an
//! out-edge at both endpoints, an in-edge at both, or one of each. The
//! text format is one line `ldg <n>` followed by one line
//! `e <u> <+|-> <v> <+|->` per edge; parallel lines are allowed.
//! Serialization orders edges lexicographically by
//! (min endpoint, max endpoint, signs), so round-trips are bit-exact.

use crate::error::{LimitError, MatchingError, ParseError};
use crate::graph::{parse_header, Graph, Matching};
use std::fmt;

/// Vertex limit for local-digraph canonical forms and isomorphism.
pub const LOCAL_CANON_LIMIT: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_str_token(tok: &str) -> Option<Sign> {
        match tok {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// One edge of a local digraph, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LdEdge {
    pub u: usize,
    pub su: Sign,
    pub v: usize,
    pub sv: Sign,
}

impl LdEdge {
    pub fn new(u: usize, su: Sign, v: usize, sv: Sign) -> LdEdge {
        assert!(u != v, "self-loop at {u}");
        if u < v {
            LdEdge { u, su, v, sv }
        } else {
            LdEdge { u: v, su: sv, v: u, sv: su }
        }
    }

    /// Sign of this edge at endpoint `x` (which must be an endpoint).
    pub fn sign_at(&self, x: usize) -> Sign {
        if x == self.u {
            self.su
        } else {
            debug_assert_eq!(x, self.v);
            self.sv
        }
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// Multigraph with no self-loops and a sign on each (vertex, incident edge)
/// pair. Edge-list order carries no meaning; the list is kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalDigraph {
    n: usize,
    edges: Vec<LdEdge>,
}

impl LocalDigraph {
    pub fn new(n: usize) -> Self {
        LocalDigraph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = LdEdge>) -> Self {
        let mut l = LocalDigraph::new(n);
        for e in edges {
            l.add_edge(e);
        }
        l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[LdEdge] {
        &self.edges
    }

    pub fn add_edge(&mut self, e: LdEdge) {
        assert!(e.v < self.n, "edge {e:?} out of range");
        let pos = self.edges.partition_point(|x| x <= &e);
        self.edges.insert(pos, e);
    }

    /// Edges incident to `x` together with their indices.
    pub fn incident(&self, x: usize) -> impl Iterator<Item = (usize, &LdEdge)> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.touches(x))
    }

    pub fn degree(&self, x: usize) -> usize {
        self.incident(x).count()
    }

    /// True if some pair of vertices carries more than one edge.
    pub fn has_parallel_edges(&self) -> bool {
        self.edges
            .windows(2)
            .any(|w| w[0].u == w[1].u && w[0].v == w[1].v)
    }

    /// Flips every incidence sign at vertex `x`. This is an isomorphism of
    /// local digraphs (only sign agreement at shared vertices is meaningful).
    pub fn flip_vertex(&self, x: usize) -> LocalDigraph {
        let edges = self.edges.iter().map(|e| {
            let mut e = *e;
            if e.u == x {
                e.su = e.su.flip();
            }
            if e.v == x {
                e.sv = e.sv.flip();
            }
            e
        });
        LocalDigraph::from_edges(self.n, edges)
    }

    /// Relabels vertices: vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> LocalDigraph {
        let edges = self
            .edges
            .iter()
            .map(|e| LdEdge::new(perm[e.u], e.su, perm[e.v], e.sv));
        LocalDigraph::from_edges(self.n, edges)
    }

    /// Induced sub-local-digraph on `s` (all edges inside `s`, with signs),
    /// relabeled to `0..s.len()` in the order given.
    pub fn induced(&self, s: &[usize]) -> LocalDigraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in s.iter().enumerate() {
            pos[x] = i;
        }
        let edges = self.edges.iter().filter_map(|e| {
            if pos[e.u] != usize::MAX && pos[e.v] != usize::MAX {
                Some(LdEdge::new(pos[e.u], e.su, pos[e.v], e.sv))
            } else {
                None
            }
        });
        LocalDigraph::from_edges(s.len(), edges)
    }

    pub fn parse(text: &str) -> Result<LocalDigraph, ParseError> {
        let mut lines = text.lines();
        let n = parse_header(lines.next().unwrap_or(""), "ldg")?;
        let mut l = LocalDigraph::new(n);
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_ascii_whitespace();
            if it.next() != Some("e") {
                return Err(ParseError::MalformedEdge(line.to_string()));
            }
            let bad = || ParseError::MalformedEdge(line.to_string());
            let u = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let su = it.next().and_then(Sign::from_str_token).ok_or_else(bad)?;
            let v = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let sv = it.next().and_then(Sign::from_str_token).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            for id in [u, v] {
                if id >= n {
                    return Err(ParseError::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop(u));
            }
            l.add_edge(LdEdge::new(u, su, v, sv));
        }
        Ok(l)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("ldg {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {} {}\n",
                e.u,
                e.su.as_char(),
                e.v,
                e.sv.as_char()
            ));
        }
        out
    }
}

impl fmt::Debug for LocalDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalDigraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}{}-{}{}",
                e.u,
                e.su.as_char(),
                e.v,
                e.sv.as_char()
            )?;
        }
        write!(f, "])")
    }
}

/// Multi-digraph: ordered arcs, parallel arcs permitted, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl MultiDigraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        assert!(arcs.iter().all(|&(a, b)| a != b && a < n && b < n));
        MultiDigraph { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Kahn's algorithm; returns a topological order or `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.arcs {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

/// Vertex order plus a sign choice per vertex such that every edge toward a
/// later vertex carries the chosen sign at its earlier endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalSort {
    pub order: Vec<usize>,
    pub signs: Vec<Sign>,
}

impl TopologicalSort {
    /// Direct check of the defining condition against `l`.
    pub fn validate(&self, l: &LocalDigraph) -> bool {
        if self.order.len() != l.n() || self.signs.len() != l.n() {
            return false;
        }
        let mut pos = vec![usize::MAX; l.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        if pos.iter().any(|&p| p == usize::MAX) {
            return false;
        }
        l.edges().iter().all(|e| {
            let (first, sign_needed) = if pos[e.u] < pos[e.v] {
                (e.u, e.sign_at(e.u))
            } else {
                (e.v, e.sign_at(e.v))
            };
            sign_needed == self.signs[pos[first]]
        })
    }
}

/// A closed walk `v_1 -e_1-> v_2 ... -e_t-> v_1` whose consecutive edges
/// carry different signs at every visited vertex (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyDirectedWalk {
    /// Visited vertices `v_1..v_t` (the closing return to `v_1` is implicit).
    pub vertices: Vec<usize>,
    /// Edge indices into the host's edge list, `e_1..e_t`.
    pub edge_indices: Vec<usize>,
}

impl LocallyDirectedWalk {
    /// Re-checks walk validity directly against the definition.
    pub fn validate(&self, l: &LocalDigraph) -> bool {
        let t = self.vertices.len();
        if t == 0 || self.edge_indices.len() != t || t > 2 * l.n() {
            return false;
        }
        for i in 0..t {
            let v = self.vertices[i];
            let e = match l.edges().get(self.edge_indices[i]) {
                Some(e) => *e,
                None => return false,
            };
            let prev = l.edges()[self.edge_indices[(i + t - 1) % t]];
            // e_i must leave v_i toward v_{i+1}.
            if !e.touches(v) || e.other(v) != self.vertices[(i + 1) % t] {
                return false;
            }
            // Consecutive signs differ at v_i.
            if !prev.touches(v) || e.sign_at(v) == prev.sign_at(v) {
                return false;
            }
        }
        true
    }
}

/// Splits each vertex into signed copies and routes each edge by its
/// endpoint signs. Vertex `i` maps to `2i` (plus copy) and `2i+1` (minus
/// copy); the output records parallel edges via multiplicity counts.
pub fn graphify(l: &LocalDigraph) -> GraphWithMultiplicity {
    let mut edges: Vec<(usize, usize)> = l
        .edges()
        .iter()
        .map(|e| {
            let a = signed_copy(e.u, e.su);
            let b = signed_copy(e.v, e.sv);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut out: Vec<((usize, usize), usize)> = Vec::new();
    for e in edges {
        match out.last_mut() {
            Some((last, mult)) if *last == e => *mult += 1,
            _ => out.push((e, 1)),
        }
    }
    GraphWithMultiplicity {
        n: 2 * l.n(),
        edges: out,
    }
}

fn signed_copy(v: usize, s: Sign) -> usize {
    match s {
        Sign::Plus => 2 * v,
        Sign::Minus => 2 * v + 1,
    }
}

/// Multigraph as a simple edge list with multiplicities (graphification
/// output; vertex `2i` is the plus copy of `i`, `2i+1` the minus copy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphWithMultiplicity {
    pub n: usize,
    pub edges: Vec<((usize, usize), usize)>,
}

impl GraphWithMultiplicity {
    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(|&(_, m)| m).sum()
    }

    /// Forgets multiplicities; panics if a multiplicity exceeds 1.
    pub fn to_simple(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for &((u, v), m) in &self.edges {
            assert_eq!(m, 1, "parallel edge {u}-{v} in to_simple");
            g.add_edge(u, v);
        }
        g
    }
}

/// The local digraph on a perfect matching `m` of `g` whose graphification
/// is `g` minus the matching. Vertices are the matching edges in
/// lexicographic order; within each matching edge the smaller endpoint
/// gets the plus sign.
pub fn ldg(g: &Graph, m: &Matching) -> Result<LocalDigraph, MatchingError> {
    m.validate_perfect(g)?;
    let pairs = m.pairs();
    let mut owner = vec![usize::MAX; g.n()];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        owner[a] = i;
        owner[b] = i;
    }
    let sign_of = |x: usize| {
        let (a, _) = pairs[owner[x]];
        if x == a {
            Sign::Plus
        } else {
            Sign::Minus
        }
    };
    let mut l = LocalDigraph::new(pairs.len());
    for (u, v) in g.edges() {
        if m.contains_edge(u, v) {
            continue;
        }
        l.add_edge(LdEdge::new(owner[u], sign_of(u), owner[v], sign_of(v)));
    }
    Ok(l)
}

/// Lifts a local digraph to a multi-digraph on signed copies: each edge
/// `e = {u,v}` yields arcs `u^{sgn(u,e)} -> v^{-sgn(v,e)}` and
/// `v^{sgn(v,e)} -> u^{-sgn(u,e)}`.
pub fn double_cover(l: &LocalDigraph) -> MultiDigraph {
    let mut arcs = Vec::with_capacity(2 * l.e());
    for e in l.edges() {
        arcs.push((signed_copy(e.u, e.su), signed_copy(e.v, e.sv.flip())));
        arcs.push((signed_copy(e.v, e.sv), signed_copy(e.u, e.su.flip())));
    }
    MultiDigraph::new(2 * l.n(), arcs)
}

/// Acyclicity via the double cover: a local digraph has no locally
/// directed closed walk iff its double cover has no directed cycle.
pub fn is_ldag(l: &LocalDigraph) -> bool {
    double_cover(l).is_acyclic()
}

/// Independent bounded search for a locally directed closed walk, working
/// directly on sign states without building the double cover. Returns a
/// witness walk of length at most `2n` iff one exists.
pub fn find_locally_directed_closed_walk(l: &LocalDigraph) -> Option<LocallyDirectedWalk> {
    // State (v, s): the walk just arrived at v via an edge with sign s.flip()
    // at v... more directly: it must leave v by an edge whose sign at v is s.
    // A closed walk exists iff some state lies on a state-cycle. BFS from
    // each start state finds a shortest state-cycle; shortest cycles visit
    // each state at most once, so the projected walk has length <= 2n.
    let n = l.n();
    let states = 2 * n;
    let state_id = |v: usize, s: Sign| 2 * v + if s == Sign::Plus { 0 } else { 1 };
    // Transitions: from (v, s) take any edge e at v with sgn(v,e) = s,
    // arriving at u = other endpoint needing to leave with sgn(u,e).flip().
    let mut trans: Vec<Vec<(usize, usize)>> = vec![Vec::new(); states]; // (next_state, edge_idx)
    for (idx, e) in l.edges().iter().enumerate() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let from = state_id(a, e.sign_at(a));
            let to = state_id(b, e.sign_at(b).flip());
            trans[from].push((to, idx));
        }
    }
    for start in 0..states {
        // BFS looking for a path start -> ... -> start.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; states]; // (prev_state, edge)
        let mut queue = std::collections::VecDeque::new();
        let mut found_edge: Option<(usize, usize)> = None; // (last_state_before_start, edge)
        'bfs: {
            for &(to, idx) in &trans[start] {
                if to == start {
                    found_edge = Some((start, idx));
                    break 'bfs;
                }
                if parent[to].is_none() {
                    parent[to] = Some((start, idx));
                    queue.push_back(to);
                }
            }
            while let Some(s) = queue.pop_front() {
                for &(to, idx) in &trans[s] {
                    if to == start {
                        found_edge = Some((s, idx));
                        break 'bfs;
                    }
                    if parent[to].is_none() {
                        parent[to] = Some((s, idx));
                        queue.push_back(to);
                    }
                }
            }
        }
        if let Some((last, closing_edge)) = found_edge {
            // Reconstruct the state path start -> ... -> last, then close.
            let mut rev_states = vec![last];
            let mut rev_edges = vec![closing_edge];
            let mut cur = last;
            while cur != start {
                let (prev, idx) = parent[cur].unwrap();
                rev_edges.push(idx);
                rev_states.push(prev);
                cur = prev;
            }
            rev_states.reverse();
            rev_edges.reverse();
            let walk = LocallyDirectedWalk {
                vertices: rev_states.iter().map(|&s| s / 2).collect(),
                edge_indices: rev_edges,
            };
            debug_assert!(walk.validate(l));
            return Some(walk);
        }
    }
    None
}

/// Topological sort of an LDAG following the double-cover recipe: sort the
/// cover, then keep the earlier appearance of each vertex's two copies.
pub fn topological_sort(l: &LocalDigraph) -> Option<TopologicalSort> {
    let cover_order = double_cover(l).topological_order()?;
    let mut order = Vec::with_capacity(l.n());
    let mut signs = Vec::with_capacity(l.n());
    let mut seen = vec![false; l.n()];
    for c in cover_order {
        let v = c / 2;
        if !seen[v] {
            seen[v] = true;
            order.push(v);
            signs.push(if c % 2 == 0 { Sign::Plus } else { Sign::Minus });
        }
    }
    let ts = TopologicalSort { order, signs };
    debug_assert!(ts.validate(l));
    Some(ts)
}

/// Replaces vertex `v` of `l1` by a copy of `l2`: the copies induce `l2`,
/// and every `l1`-edge at `v` is replicated to each copy with `v`'s
/// original endpoint sign. Copies take ids `v..v+l2.n()`, later vertices
/// shift up.
pub fn blowup_local(l1: &LocalDigraph, v: usize, l2: &LocalDigraph) -> Result<LocalDigraph, LimitError> {
    if v >= l1.n() {
        return Err(LimitError {
            what: "blowup_local vertex",
            actual: v,
            limit: l1.n().saturating_sub(1),
        });
    }
    let t = l2.n();
    let shift = |x: usize| if x < v { x } else { x + t - 1 };
    let mut out = LocalDigraph::new(l1.n() + t - 1);
    for e in l1.edges() {
        if !e.touches(v) {
            out.add_edge(LdEdge::new(shift(e.u), e.su, shift(e.v), e.sv));
        } else {
            let w = e.other(v);
            for copy in 0..t {
                out.add_edge(LdEdge::new(v + copy, e.sign_at(v), shift(w), e.sign_at(w)));
            }
        }
    }
    for e in l2.edges() {
        out.add_edge(LdEdge::new(v + e.u, e.su, v + e.v, e.sv));
    }
    Ok(out)
}

/// Canonical byte string for local-digraph isomorphism: minimal encoding
/// over vertex permutations and per-vertex sign flips. Equal forms iff
/// isomorphic in the sense that only sign agreement at shared incidences
/// is preserved.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LocalCanonicalForm(Vec<u8>);

/// Sign-pair multiset between an ordered vertex pair, as counts of
/// (plus,plus), (plus,minus), (minus,plus), (minus,minus) edges.
type PairCode = [u8; 4];

/// Base pair-code matrix: `codes[a][b]` counts the sign combinations of
/// edges between `a` and `b`, oriented from `a`'s side.
fn pair_code_matrix(l: &LocalDigraph) -> Vec<PairCode> {
    let n = l.n();
    let mut codes = vec![[0u8; 4]; n * n];
    for e in l.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let i = match (e.sign_at(a), e.sign_at(b)) {
                (Sign::Plus, Sign::Plus) => 0,
                (Sign::Plus, Sign::Minus) => 1,
                (Sign::Minus, Sign::Plus) => 2,
                (Sign::Minus, Sign::Minus) => 3,
            };
            codes[a * n + b][i] += 1;
        }
    }
    codes
}

/// Applies endpoint flips to a pair code: flipping the first endpoint
/// swaps the plus/minus rows, flipping the second swaps the columns.
#[inline]
fn flip_code(code: PairCode, flip_a: bool, flip_b: bool) -> PairCode {
    let mut c = code;
    if flip_a {
        c = [c[2], c[3], c[0], c[1]];
    }
    if flip_b {
        c = [c[1], c[0], c[3], c[2]];
    }
    c
}

pub fn canonical_local_form(l: &LocalDigraph) -> Result<LocalCanonicalForm, LimitError> {
    canonical_local_form_with_limit(l, LOCAL_CANON_LIMIT)
}

pub fn canonical_local_form_with_limit(
    l: &LocalDigraph,
    limit: usize,
) -> Result<LocalCanonicalForm, LimitError> {
    if l.n() > limit {
        return Err(LimitError {
            what: "canonical_local_form",
            actual: l.n(),
            limit,
        });
    }
    let n = l.n();
    let codes = pair_code_matrix(l);
    // Encoding for a fixed (perm, flips): rows i = 1..n, each row the
    // PairCodes from earlier positions toward position i. Minimized by
    // backtracking over which original vertex lands at each position and
    // whether it flips, with prefix pruning as in graph canonicalization.
    struct Search<'a> {
        n: usize,
        codes: &'a [PairCode],
        best: Vec<Vec<PairCode>>,
        placed: Vec<(usize, bool)>, // (vertex, flipped)
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn row(&self, u: usize, fl: bool) -> Vec<PairCode> {
            self.placed
                .iter()
                .map(|&(p, pfl)| flip_code(self.codes[p * self.n + u], pfl, fl))
                .collect()
        }

        fn dfs(&mut self) {
            let i = self.placed.len();
            if i == self.n {
                return;
            }
            let mut cands: Vec<(Vec<PairCode>, usize, bool)> = Vec::new();
            for u in 0..self.n {
                if self.used[u] {
                    continue;
                }
                for fl in [false, true] {
                    cands.push((self.row(u, fl), u, fl));
                }
            }
            cands.sort();
            for (row, u, fl) in cands {
                match row.cmp(&self.best[i]) {
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Less => {
                        self.best[i] = row;
                        for b in self.best[i + 1..].iter_mut() {
                            for c in b.iter_mut() {
                                *c = [u8::MAX; 4];
                            }
                        }
                    }
                    std::cmp::Ordering::Equal => {}
                }
                self.used[u] = true;
                self.placed.push((u, fl));
                self.dfs();
                self.placed.pop();
                self.used[u] = false;
            }
        }
    }

    let mut search = Search {
        n,
        codes: &codes,
        best: (0..n).map(|i| vec![[u8::MAX; 4]; i]).collect(),
        placed: Vec::with_capacity(n),
        used: vec![false; n],
    };
    search.dfs();

    let mut bytes = vec![n as u8];
    for row in &search.best {
        for code in row {
            bytes.extend_from_slice(code);
        }
    }
    Ok(LocalCanonicalForm(bytes))
}

/// Isomorphism per the sign-agreement definition: multigraph isomorphism
/// composed with arbitrary per-vertex sign flips.
pub fn local_iso(a: &LocalDigraph, b: &LocalDigraph) -> Result<bool, LimitError> {
    if a.n() != b.n() || a.e() != b.e() {
        return Ok(false);
    }
    Ok(canonical_local_form(a)? == canonical_local_form(b)?)
}

/// Number of vertex subsets of `host` whose full induced sub-local-digraph
/// is isomorphic to `pattern`.
pub fn count_induced_local(pattern: &LocalDigraph, host: &LocalDigraph) -> Result<u64, LimitError> {
    let k = pattern.n();
    if k > LOCAL_CANON_LIMIT {
        return Err(LimitError {
            what: "count_induced_local pattern",
            actual: k,
            limit: LOCAL_CANON_LIMIT,
        });
    }
    let target = canonical_local_form(pattern)?;
    let n = host.n();
    if k > n {
        return Ok(0);
    }

    // Pair multiplicity matrix for the cheap subset filter.
    let mut mult = vec![0u32; n * n];
    for e in host.edges() {
        mult[e.u * n + e.v] += 1;
        mult[e.v * n + e.u] += 1;
    }
    let pattern_edges = pattern.e() as u32;

    let mut count = 0u64;
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    // Specialized fast path for 3-vertex patterns in simple hosts is not
    // needed: the multiplicity filter already rejects almost all subsets
    // before the canonical comparison.
    fn rec(
        host: &LocalDigraph,
        mult: &[u32],
        n: usize,
        k: usize,
        pattern_edges: u32,
        target: &LocalCanonicalForm,
        subset: &mut Vec<usize>,
        edges_so_far: u32,
        start: usize,
        count: &mut u64,
    ) {
        if subset.len() == k {
            if edges_so_far == pattern_edges {
                let induced = host.induced(subset);
                if canonical_local_form(&induced).unwrap() == *target {
                    *count += 1;
                }
            }
            return;
        }
        let remaining = k - subset.len();
        for v in start..=(n - remaining) {
            let mut added = 0u32;
            for &u in subset.iter() {
                added += mult[u * n + v];
            }
            let e = edges_so_far + added;
            if e <= pattern_edges {
                subset.push(v);
                rec(host, mult, n, k, pattern_edges, target, subset, e, v + 1, count);
                subset.pop();
            } else if subset.is_empty() {
                break;
            }
        }
    }

    rec(
        host,
        &mult,
        n,
        k,
        pattern_edges,
        &target,
        &mut subset,
        0,
        0,
        &mut count,
    );
    Ok(count)
}

/// The auxiliary local digraph on the edges of `h`: one vertex per edge
/// (in lexicographic order, smaller endpoint signed plus), and one edge
/// per (disjoint edge pair, crossing edge) triple with the crossing
/// edge's endpoint signs.
pub fn edge_localdigraph(h: &Graph) -> LocalDigraph {
    let edges = h.edges();
    let m = edges.len();
    let mut l = LocalDigraph::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            let (a1, b1) = edges[i];
            let (a2, b2) = edges[j];
            if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                continue; // not disjoint
            }
            // Crossing edges: one endpoint in {a1,b1}, the other in {a2,b2}.
            for &x in &[a1, b1] {
                for &y in &[a2, b2] {
                    if h.has_edge(x, y) {
                        let si = if x == a1 { Sign::Plus } else { Sign::Minus };
                        let sj = if y == a2 { Sign::Plus } else { Sign::Minus };
                        l.add_edge(LdEdge::new(i, si, j, sj));
                    }
                }
            }
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Matching};

    pub(crate) fn ldp3() -> LocalDigraph {
        LocalDigraph::from_edges(
            3,
            [
                LdEdge::new(0, Sign::Minus, 1, Sign::Plus),
                LdEdge::new(1, Sign::Minus, 2, Sign::Plus),
            ],
        )
    }

    fn p6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    }

    /// Fig-7-style example: a locally directed closed walk but no cycle.
    fn fig7() -> LocalDigraph {
        // Vertices 1..5 are 0..4 here: square 0,1,2,3 with center 4.
        LocalDigraph::from_edges(
            5,
            [
                LdEdge::new(0, Sign::Minus, 3, Sign::Minus),
                LdEdge::new(1, Sign::Minus, 4, Sign::Minus),
                LdEdge::new(4, Sign::Minus, 2, Sign::Minus),
                LdEdge::new(1, Sign::Plus, 2, Sign::Plus),
                LdEdge::new(0, Sign::Plus, 4, Sign::Plus),
                LdEdge::new(4, Sign::Plus, 3, Sign::Plus),
            ],
        )
    }

    #[test]
    fn ldg_of_p6_is_ldp3() {
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]);
        let l = ldg(&p6(), &m).unwrap();
        assert_eq!(l, ldp3());
    }

    #[test]
    fn ldg_of_k3_plus_pendant() {
        // Triangle 0,1,2 plus pendant 0-3; matching {0-3, 1-2}.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let m = Matching::new([(0, 3), (1, 2)]);
        let l = ldg(&g, &m).unwrap();
        // Two parallel edges with sign patterns (+,+) and (+,-).
        assert_eq!(l.n(), 2);
        assert_eq!(
            l.edges(),
            &[
                LdEdge::new(0, Sign::Plus, 1, Sign::Plus),
                LdEdge::new(0, Sign::Plus, 1, Sign::Minus),
            ]
        );
        assert!(is_ldag(&l));
    }

    #[test]
    fn ldg_of_p4_is_single_edge() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = Matching::new([(0, 1), (2, 3)]);
        let l = ldg(&p4, &m).unwrap();
        assert_eq!(l.n(), 2);
        assert_eq!(l.e(), 1);
    }

    #[test]
    fn ldg_rejects_non_perfect() {
        let m = Matching::new([(0, 1)]);
        assert!(ldg(&p6(), &m).is_err());
    }

    #[test]
    fn graphify_shapes() {
        // Single vertex, no edges -> 2 isolated vertices.
        let l = LocalDigraph::new(1);
        let g = graphify(&l);
        assert_eq!(g.n, 2);
        assert!(g.edges.is_empty());

        // LDP3 -> 2-edge fragment on signed copies.
        let g = graphify(&ldp3());
        assert_eq!(g.n, 6);
        assert_eq!(g.total_edges(), 2);
        // Edge (0-,1+) -> 1-2; edge (1-,2+) -> 3-4.
        assert_eq!(g.edges, vec![((1, 2), 1), ((3, 4), 1)]);
    }

    #[test]
    fn graphify_ldg_reconstructs_p6() {
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]);
        let l = ldg(&p6(), &m).unwrap();
        let gm = graphify(&l);
        // Adding back the matching as (2i)-(2i+1) pairs must reproduce P6
        // up to relabeling.
        let mut g = gm.to_simple();
        for i in 0..l.n() {
            g.add_edge(2 * i, 2 * i + 1);
        }
        assert!(crate::canon::graphs_isomorphic(&g, &p6()));
    }

    #[test]
    fn double_cover_arc_count_and_acyclicity() {
        let l = ldp3();
        let dc = double_cover(&l);
        assert_eq!(dc.n(), 6);
        assert_eq!(dc.arcs().len(), 2 * l.e());
        assert!(dc.is_acyclic());

        let edgeless = LocalDigraph::new(3);
        let dc = double_cover(&edgeless);
        assert_eq!(dc.n(), 6);
        assert!(dc.arcs().is_empty());
    }

    #[test]
    fn fig7_has_walk_but_verdict_cyclic() {
        let l = fig7();
        assert!(!is_ldag(&l));
        let walk = find_locally_directed_closed_walk(&l).expect("walk");
        assert!(walk.validate(&l));
        // The paper's walk 514523 visits vertex 5 (our 4) twice.
        let count4 = walk.vertices.iter().filter(|&&v| v == 4).count();
        assert!(walk.vertices.len() <= 2 * l.n());
        let _ = count4;
    }

    #[test]
    fn ldp3_acyclic_no_walk() {
        assert!(is_ldag(&ldp3()));
        assert!(find_locally_directed_closed_walk(&ldp3()).is_none());
    }

    #[test]
    fn parallel_opposite_signs_length_two_walk() {
        // Exhaustive over all sign patterns on 2 vertices, 2 parallel edges:
        // a length-2 walk exists iff the patterns are opposite at both ends.
        let signs = [Sign::Plus, Sign::Minus];
        for &a1 in &signs {
            for &b1 in &signs {
                for &a2 in &signs {
                    for &b2 in &signs {
                        let l = LocalDigraph::from_edges(
                            2,
                            [LdEdge::new(0, a1, 1, b1), LdEdge::new(0, a2, 1, b2)],
                        );
                        let opposite = a1 != a2 && b1 != b2;
                        let walk = find_locally_directed_closed_walk(&l);
                        assert_eq!(walk.is_some(), opposite, "{l:?}");
                        assert_eq!(!is_ldag(&l), opposite, "{l:?}");
                        if let Some(w) = walk {
                            assert!(w.validate(&l));
                            assert_eq!(w.vertices.len(), 2);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn toposort_of_ldp3() {
        let ts = topological_sort(&ldp3()).expect("LDAG");
        assert!(ts.validate(&ldp3()));
        assert_eq!(ts.order.len(), 3);
        assert!(topological_sort(&fig7()).is_none());
    }

    #[test]
    fn toposort_exists_iff_ldag_small_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let e = rng.gen_range(0..=(2 * n));
            let mut l = LocalDigraph::new(n);
            for _ in 0..e {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n);
                if n == 1 {
                    continue;
                }
                while v == u {
                    v = rng.gen_range(0..n);
                }
                let s = |r: &mut rand_chacha::ChaCha8Rng| {
                    if r.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                };
                let (su, sv) = (s(&mut rng), s(&mut rng));
                l.add_edge(LdEdge::new(u, su, v, sv));
            }
            let acyclic = is_ldag(&l);
            let ts = topological_sort(&l);
            assert_eq!(ts.is_some(), acyclic);
            if let Some(ts) = ts {
                assert!(ts.validate(&l));
            }
            assert_eq!(
                find_locally_directed_closed_walk(&l).is_none(),
                acyclic,
                "{l:?}"
            );
        }
    }

    #[test]
    fn blowup_local_cases() {
        // Identity case: blowing up the unique vertex of a point by l2.
        let point = LocalDigraph::new(1);
        let out = blowup_local(&point, 0, &ldp3()).unwrap();
        assert_eq!(out, ldp3());

        // LDP3 blown up at the middle vertex by an edgeless pair:
        // 4 vertices, deg(v)*v(l2) = 2*2 = 4 edges.
        let pair = LocalDigraph::new(2);
        let out = blowup_local(&ldp3(), 1, &pair).unwrap();
        assert_eq!(out.n(), 4);
        assert_eq!(out.e(), 4);
        assert!(is_ldag(&out));

        assert!(blowup_local(&point, 3, &pair).is_err());
    }

    #[test]
    fn blowup_preserves_ldag_iterated() {
        // Iterated blowup of LDP3 by itself at every original vertex.
        let mut cur = ldp3();
        for v in [0usize, 1, 2] {
            cur = blowup_local(&cur, v * 3, &ldp3()).unwrap();
        }
        assert!(is_ldag(&cur));
    }

    #[test]
    fn local_iso_flip_invariance() {
        let l = ldp3();
        for v in 0..3 {
            assert!(local_iso(&l, &l.flip_vertex(v)).unwrap());
        }
        let relabeled = l.relabel(&[2, 0, 1]);
        assert!(local_iso(&l, &relabeled).unwrap());
    }

    #[test]
    fn local_iso_distinguishes_multiplicity() {
        let two_parallel = LocalDigraph::from_edges(
            2,
            [
                LdEdge::new(0, Sign::Plus, 1, Sign::Plus),
                LdEdge::new(0, Sign::Plus, 1, Sign::Minus),
            ],
        );
        assert!(!local_iso(&ldp3(), &two_parallel).unwrap());
    }

    #[test]
    fn local_iso_fig2() {
        // The two local digraphs of the isomorphism figure.
        let left = LocalDigraph::from_edges(
            4,
            [
                LdEdge::new(3, Sign::Plus, 0, Sign::Minus),
                LdEdge::new(1, Sign::Plus, 0, Sign::Minus),
                LdEdge::new(1, Sign::Minus, 3, Sign::Minus),
                LdEdge::new(3, Sign::Plus, 2, Sign::Minus),
            ],
        );
        let right = LocalDigraph::from_edges(
            4,
            [
                LdEdge::new(0, Sign::Minus, 3, Sign::Minus),
                LdEdge::new(2, Sign::Plus, 3, Sign::Minus),
                LdEdge::new(3, Sign::Plus, 1, Sign::Minus),
                LdEdge::new(1, Sign::Plus, 0, Sign::Minus),
            ],
        );
        assert!(local_iso(&left, &right).unwrap());
    }

    #[test]
    fn count_induced_self_is_one() {
        let l = ldp3();
        assert_eq!(count_induced_local(&l, &l).unwrap(), 1);
        let pair = LocalDigraph::from_edges(2, [LdEdge::new(0, Sign::Plus, 1, Sign::Plus)]);
        assert_eq!(count_induced_local(&pair, &pair).unwrap(), 1);
    }

    #[test]
    fn count_invariant_under_relabel_and_flip() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(3..=6);
            let mut host = LocalDigraph::new(n);
            for _ in 0..rng.gen_range(0..2 * n) {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n);
                while v == u {
                    v = rng.gen_range(0..n);
                }
                let s = |r: &mut rand_chacha::ChaCha8Rng| {
                    if r.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                };
                let (su, sv) = (s(&mut rng), s(&mut rng));
                host.add_edge(LdEdge::new(u, su, v, sv));
            }
            let base = count_induced_local(&ldp3(), &host).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let relabeled = host.relabel(&perm);
            assert_eq!(count_induced_local(&ldp3(), &relabeled).unwrap(), base);
            let flipped = host.flip_vertex(rng.gen_range(0..n));
            assert_eq!(count_induced_local(&ldp3(), &flipped).unwrap(), base);
            // Flipping the pattern too.
            let flipped_pattern = ldp3().flip_vertex(rng.gen_range(0..3));
            assert_eq!(count_induced_local(&flipped_pattern, &host).unwrap(), base);
        }
    }

    #[test]
    fn edge_localdigraph_cases() {
        // P4: only disjoint pair (e0, e2), crossed only by e1.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let l = edge_localdigraph(&p4);
        assert_eq!(l.n(), 3);
        assert_eq!(l.e(), 1);
        assert_eq!(l.edges()[0].u, 0);
        assert_eq!(l.edges()[0].v, 2);

        // Perfect matching on 2 edges: no crossing edges at all.
        let m2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let l = edge_localdigraph(&m2);
        assert_eq!(l.n(), 2);
        assert_eq!(l.e(), 0);

        // K4: 3 disjoint edge pairs, each crossed by the 4 other edges.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let l = edge_localdigraph(&k4);
        assert_eq!(l.n(), 6);
        assert_eq!(l.e(), 12);
        // Parallel count per disjoint pair is 4.
        let mut mult = std::collections::HashMap::new();
        for e in l.edges() {
            *mult.entry((e.u, e.v)).or_insert(0) += 1;
        }
        assert_eq!(mult.len(), 3);
        assert!(mult.values().all(|&m| m == 4));
    }

    #[test]
    fn parse_serialize_round_trip() {
        let text = "ldg 3\ne 0 - 1 +\ne 1 - 2 +\n";
        let l = LocalDigraph::parse(text).unwrap();
        assert_eq!(l, ldp3());
        assert_eq!(l.serialize(), text);
        assert!(LocalDigraph::parse("ldg 2\ne 0 0").is_err());
        assert!(LocalDigraph::parse("ldg 2\ne 0 + 0 -").is_err());
        assert!(LocalDigraph::parse("ldg 2\ne 0 + 5 -").is_err());
    }

    #[test]
    fn walk_type_validates() {
        let l = fig7();
        let w = find_locally_directed_closed_walk(&l).unwrap();
        assert!(w.validate(&l));
        // Corrupting the walk breaks validation.
        let mut bad = w.clone();
        bad.vertices[0] = (bad.vertices[0] + 1) % l.n();
        assert!(!bad.validate(&l));
    }
}
