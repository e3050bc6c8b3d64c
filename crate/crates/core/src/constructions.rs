//! Host constructions: elementary hosts, corona, weighted blowup,
//! pendant attachment, the pinch transform, blowups and iterated blowups
//! of graphs and local digraphs, the LDAG-to-graph host, the G_k family
//! and its recursive H_{4^t} strengthening, and forward-edge DAG hosts.
//!
//! Every construction numbers its vertices deterministically: parts in
//! base-vertex order, copies in increasing index.

use crate::counting::{BlowupHost, ForwardDag};
use crate::error::InvalidInput;
use crate::fractional::VertexWeighting;
use crate::graph::{Graph, Matching};
use crate::local::{is_ldag, LdEdge, LocalDigraph, Sign};
use num_bigint::BigUint;

pub fn star(s: usize) -> Graph {
    assert!(s >= 1);
    Graph::from_edges(s + 1, &(1..=s).map(|i| (0, i)).collect::<Vec<_>>())
}

pub fn complete(t: usize) -> Graph {
    assert!(t >= 1);
    let edges: Vec<_> = (0..t).flat_map(|u| ((u + 1)..t).map(move |v| (u, v))).collect();
    Graph::from_edges(t, &edges)
}

/// Left part `0..a`, right part `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    assert!(a >= 1 && b >= 1);
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges)
}

/// `m` disjoint edges; edge `i` joins `2i` and `2i+1`.
pub fn matching_host(m: usize) -> Graph {
    assert!(m >= 1);
    Graph::from_edges(2 * m, &(0..m).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>())
}

/// `K_a` joined completely to an independent set of size `b`; the clique
/// comes first.
pub fn join_clique_independent(a: usize, b: usize) -> Graph {
    assert!(a >= 1 && b >= 1);
    let mut edges: Vec<_> = (0..a).flat_map(|u| ((u + 1)..a).map(move |v| (u, v))).collect();
    edges.extend((0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))));
    Graph::from_edges(a + b, &edges)
}

/// Corona of `K_t` with `s` pendant leaves per core vertex: core `0..t`,
/// then the `s` leaves of core `i` at `t + i*s .. t + (i+1)*s`.
/// Edge count is `s*t + C(t,2)`.
pub fn corona(t: usize, s: usize) -> Graph {
    assert!(t >= 1);
    let n = t + t * s;
    let mut edges: Vec<_> = (0..t).flat_map(|u| ((u + 1)..t).map(move |v| (u, v))).collect();
    for core in 0..t {
        for leaf in 0..s {
            edges.push((core, t + core * s + leaf));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Corona as a blowup-structured host (for sizes too large to
/// materialize): base is corona(t, 1) with leaf parts of size `s`.
pub fn corona_host(t: usize, s: u128) -> BlowupHost {
    let base = corona(t, 1);
    let mut sizes = vec![1u128; t];
    sizes.extend(std::iter::repeat(s).take(t));
    BlowupHost::new(base, sizes).expect("valid corona blowup")
}

/// `K_a` joined to a huge independent part, as a blowup-structured host.
pub fn join_clique_independent_host(a: usize, b: u128) -> BlowupHost {
    let base = join_clique_independent(a, 1);
    let mut sizes = vec![1u128; a];
    sizes.push(b);
    BlowupHost::new(base, sizes).expect("valid join blowup")
}

/// Attaches a pendant edge to every vertex: vertex `i` gets the pendant
/// `n + i`. Returns the graph and the pendant matching, which is the
/// unique fractional perfect matching of the result.
pub fn attach_pendants(g: &Graph) -> (Graph, Matching) {
    let n = g.n();
    let mut edges = g.edges();
    edges.extend((0..n).map(|i| (i, n + i)));
    let out = Graph::from_edges(2 * n, &edges);
    let m = Matching::new((0..n).map(|i| (i, n + i)));
    (out, m)
}

/// The edge-to-vertex auxiliary graph: one vertex per edge of `h` (in
/// lexicographic order), adjacent when the edges are disjoint and some
/// edge of `h` meets both.
pub fn pinch(h: &Graph) -> Graph {
    let edges = h.edges();
    let m = edges.len();
    let mut out = Graph::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            let (a1, b1) = edges[i];
            let (a2, b2) = edges[j];
            if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                continue;
            }
            let crossed = [a1, b1]
                .iter()
                .any(|&x| [a2, b2].iter().any(|&y| h.has_edge(x, y)));
            if crossed {
                out.add_edge(i, j);
            }
        }
    }
    out
}

/// Part sizes for a blowup, one per base vertex, all at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    pub sizes: Vec<usize>,
}

impl BlowupSpec {
    pub fn uniform(n: usize, size: usize) -> Self {
        BlowupSpec {
            sizes: vec![size; n],
        }
    }

    fn validate(&self, n: usize) -> Result<(), InvalidInput> {
        if self.sizes.len() != n {
            return Err(InvalidInput::new(format!(
                "need {n} part sizes, got {}",
                self.sizes.len()
            )));
        }
        if self.sizes.iter().any(|&s| s == 0) {
            return Err(InvalidInput::new("part sizes must be positive"));
        }
        Ok(())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.sizes.len());
        let mut acc = 0;
        for &s in &self.sizes {
            offsets.push(acc);
            acc += s;
        }
        offsets
    }
}

/// Standard blowup: parts are independent sets, between-part adjacency
/// copies the base.
pub fn blowup_graph(g: &Graph, spec: &BlowupSpec) -> Result<Graph, InvalidInput> {
    spec.validate(g.n())?;
    let offsets = spec.offsets();
    let total: usize = spec.sizes.iter().sum();
    let mut out = Graph::new(total);
    for (u, v) in g.edges() {
        for i in 0..spec.sizes[u] {
            for j in 0..spec.sizes[v] {
                out.add_edge(offsets[u] + i, offsets[v] + j);
            }
        }
    }
    Ok(out)
}

/// Blowup of a local digraph: every base edge is replicated across the
/// two parts with its endpoint signs copied.
pub fn blowup_local_digraph(l: &LocalDigraph, spec: &BlowupSpec) -> Result<LocalDigraph, InvalidInput> {
    spec.validate(l.n())?;
    let offsets = spec.offsets();
    let total: usize = spec.sizes.iter().sum();
    let mut out = LocalDigraph::new(total);
    for e in l.edges() {
        for i in 0..spec.sizes[e.u] {
            for j in 0..spec.sizes[e.v] {
                out.add_edge(LdEdge::new(offsets[e.u] + i, e.su, offsets[e.v] + j, e.sv));
            }
        }
    }
    Ok(out)
}

/// Iterated blowup: each vertex of the current graph is replaced by
/// `v(base)` copies inducing the base. Depth 0 is the base itself.
pub fn iterated_blowup_graph(base: &Graph, depth: usize) -> Graph {
    let mut cur = base.clone();
    for _ in 0..depth {
        let spec = BlowupSpec::uniform(cur.n(), base.n());
        let mut next = blowup_graph(&cur, &spec).expect("uniform spec");
        for part in 0..cur.n() {
            let off = part * base.n();
            for (u, v) in base.edges() {
                next.add_edge(off + u, off + v);
            }
        }
        cur = next;
    }
    cur
}

pub fn iterated_blowup_local(base: &LocalDigraph, depth: usize) -> LocalDigraph {
    let mut cur = base.clone();
    for _ in 0..depth {
        let spec = BlowupSpec::uniform(cur.n(), base.n());
        let mut next = blowup_local_digraph(&cur, &spec).expect("uniform spec");
        for part in 0..cur.n() {
            let off = part * base.n();
            for e in base.edges() {
                next.add_edge(LdEdge::new(off + e.u, e.su, off + e.v, e.sv));
            }
        }
        cur = next;
    }
    cur
}

/// Weighted blowup along a fractional independent set: part of vertex `v`
/// has size `floor((m / e(G))^{alpha(v)})`. The result never exceeds the
/// edge budget `m`.
#[derive(Clone, Debug)]
pub struct WeightedBlowup {
    pub graph: Graph,
    pub sizes: Vec<usize>,
    /// Product of the part sizes: the guaranteed induced-copy count.
    pub product: u128,
}

pub fn weighted_blowup(
    g: &Graph,
    alpha: &VertexWeighting,
    m: u64,
) -> Result<WeightedBlowup, InvalidInput> {
    if g.has_isolated_vertex() {
        return Err(InvalidInput::new("base must have no isolated vertices"));
    }
    if !alpha.is_fractional_independent_set(g) {
        return Err(InvalidInput::new("alpha is not a fractional independent set"));
    }
    let e = g.e() as u64;
    if m < e {
        return Err(InvalidInput::new("edge budget below e(G)"));
    }
    // floor((m/e)^{a/b}) = largest s with s^b * e^a <= m^a, exactly.
    let sizes: Vec<usize> = alpha
        .weights
        .iter()
        .map(|w| {
            let a = *w.numer() as u32;
            let b = *w.denom() as u32;
            let lhs = BigUint::from(m).pow(a);
            let e_pow = BigUint::from(e).pow(a);
            // Binary search on s.
            let mut lo = 1u64;
            let mut hi = m.max(1) + 1;
            while lo + 1 < hi {
                let mid = (lo + hi) / 2;
                if BigUint::from(mid).pow(b) * &e_pow <= lhs {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo as usize
        })
        .collect();
    let spec = BlowupSpec { sizes: sizes.clone() };
    let graph = blowup_graph(g, &spec)?;
    assert!(
        (graph.e() as u64) <= m,
        "weighted blowup exceeded the edge budget"
    );
    let product = sizes.iter().map(|&s| s as u128).product();
    Ok(WeightedBlowup { graph, sizes, product })
}

/// Validates that the identity order of `l` is a topological sort and
/// returns the per-vertex sign carried by edges toward later vertices
/// (`None` when the vertex has no later edge).
fn identity_order_signs(l: &LocalDigraph) -> Result<Vec<Option<Sign>>, InvalidInput> {
    let mut signs: Vec<Option<Sign>> = vec![None; l.n()];
    for e in l.edges() {
        let (first, s) = (e.u, e.su); // edges are stored with u < v
        match signs[first] {
            None => signs[first] = Some(s),
            Some(prev) if prev == s => {}
            Some(_) => {
                return Err(InvalidInput::new(
                    "identity order is not a topological sort of the local digraph",
                ))
            }
        }
    }
    Ok(signs)
}

/// The LDAG-to-graph host: blowup of `graphification + matching` where
/// the plus copy of vertex `i` becomes a part of size `p_i` and the minus
/// copy one of size `q_i`. Signs are normalized so each edge carries plus
/// at its earlier endpoint, which puts all cross edges on the small
/// (plus) parts.
#[derive(Clone, Debug)]
pub struct LdagHostSpec {
    pub host: BlowupHost,
    /// Common product `p_i * q_i`.
    pub k: u128,
    /// Base-vertex index pairs (plus part, minus part) of the matched blocks.
    pub matched_parts: Vec<(usize, usize)>,
}

impl LdagHostSpec {
    /// Edges coming from matched blocks, in the materialized numbering.
    /// Usable only when the host is small enough to materialize.
    pub fn matched_block_edges(&self, limit: usize) -> Option<Vec<(usize, usize)>> {
        let total = self.host.n_total();
        if total > limit as u128 {
            return None;
        }
        let sizes = self.host.sizes();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0usize;
        for &s in sizes {
            offsets.push(acc);
            acc += s as usize;
        }
        let mut out = Vec::new();
        for &(pp, mp) in &self.matched_parts {
            for i in 0..sizes[pp] as usize {
                for j in 0..sizes[mp] as usize {
                    out.push((offsets[pp] + i, offsets[mp] + j));
                }
            }
        }
        Some(out)
    }
}

pub fn ldag_host_blowup(
    l: &LocalDigraph,
    part_pairs: &[(u128, u128)],
) -> Result<LdagHostSpec, InvalidInput> {
    if !is_ldag(l) {
        return Err(InvalidInput::new("base local digraph must be acyclic"));
    }
    if part_pairs.len() != l.n() {
        return Err(InvalidInput::new("need one (p, q) pair per vertex"));
    }
    if part_pairs.iter().any(|&(p, q)| p == 0 || q == 0) {
        return Err(InvalidInput::new("part sizes must be positive"));
    }
    for w in part_pairs.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(InvalidInput::new("plus part sizes must be strictly increasing"));
        }
    }
    let k = part_pairs[0].0 * part_pairs[0].1;
    if part_pairs.iter().any(|&(p, q)| p * q != k) {
        return Err(InvalidInput::new("all p_i * q_i must equal a common k"));
    }
    let order_signs = identity_order_signs(l)?;
    // Normalize: flip every vertex whose later-edge sign is minus, so each
    // edge has plus at its earlier endpoint.
    let mut normalized = l.clone();
    for (v, s) in order_signs.iter().enumerate() {
        if *s == Some(Sign::Minus) {
            normalized = normalized.flip_vertex(v);
        }
    }

    let n = l.n();
    // Base graph on 2n vertices: 2i = plus copy, 2i+1 = minus copy.
    let mut base = Graph::new(2 * n);
    for i in 0..n {
        base.add_edge(2 * i, 2 * i + 1); // the matching
    }
    for e in normalized.edges() {
        debug_assert_eq!(e.su, Sign::Plus);
        let a = 2 * e.u;
        let b = 2 * e.v + if e.sv == Sign::Plus { 0 } else { 1 };
        if !base.has_edge(a, b) {
            base.add_edge(a, b); // parallel edges collapse: host stays simple
        }
    }
    let mut sizes = Vec::with_capacity(2 * n);
    for &(p, q) in part_pairs {
        sizes.push(p);
        sizes.push(q);
    }
    let host = BlowupHost::new(base, sizes).map_err(|e| InvalidInput::new(e.to_string()))?;

    // Edge budget from the construction: nk from the matched blocks plus
    // cross terms bounded by p_i (p_j + q_j) over i < j.
    let nk = n as u128 * k;
    let mut cross_cap = 0u128;
    for i in 0..n {
        for j in (i + 1)..n {
            cross_cap += part_pairs[i].0 * (part_pairs[j].0 + part_pairs[j].1);
        }
    }
    assert!(
        host.e_total() <= nk + cross_cap,
        "edge bound of the LDAG host construction violated"
    );

    Ok(LdagHostSpec {
        host,
        k,
        matched_parts: (0..n).map(|i| (2 * i, 2 * i + 1)).collect(),
    })
}

/// Materialized LDAG host together with the matched-block edge list.
pub fn ldag_host_graph(
    l: &LocalDigraph,
    part_pairs: &[(u128, u128)],
) -> Result<(Graph, Vec<(usize, usize)>), InvalidInput> {
    let spec = ldag_host_blowup(l, part_pairs)?;
    let graph = spec
        .host
        .materialize(100_000)
        .ok_or_else(|| InvalidInput::new("host too large to materialize"))?;
    let matched = spec.matched_block_edges(100_000).unwrap();
    Ok((graph, matched))
}

/// The 4k-vertex LDAG G_k: vertices v_1..v_{2k} (ids 0..2k-1) joined when
/// their indices have opposite parity, plus two k-sized independent parts
/// u_1 (ids 2k..3k-1, joined to even-index v's) and u_2 (ids 3k..4k-1,
/// joined to odd-index v's and completely to u_1). Every edge carries
/// plus at the earlier vertex in the order v_1..v_{2k}, u_1, u_2, minus
/// at the later one, except inside u_1 x u_2 where both ends are plus.
pub fn g_k(k: usize) -> LocalDigraph {
    assert!(k >= 1);
    let n = 4 * k;
    let mut l = LocalDigraph::new(n);
    // v_i is id i-1 for i in 1..=2k.
    for i in 1..=2 * k {
        for j in (i + 1)..=2 * k {
            if (i + j) % 2 == 1 {
                l.add_edge(LdEdge::new(i - 1, Sign::Plus, j - 1, Sign::Minus));
            }
        }
    }
    for i in 1..=2 * k {
        for copy in 0..k {
            if i % 2 == 0 {
                // u_1 neighbors: even i.
                l.add_edge(LdEdge::new(i - 1, Sign::Plus, 2 * k + copy, Sign::Minus));
            } else {
                // u_2 neighbors: odd i.
                l.add_edge(LdEdge::new(i - 1, Sign::Plus, 3 * k + copy, Sign::Minus));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            l.add_edge(LdEdge::new(2 * k + a, Sign::Plus, 3 * k + b, Sign::Plus));
        }
    }
    debug_assert!(is_ldag(&l));
    l
}

/// Closed-form count of induced locally-directed 3-paths in G_k:
/// `sum_{y=1}^{2k} floor(y/2) (floor((2k+1-y)/2) + k) + 2k^3`.
pub fn g_k_ldp3_count_formula(k: u64) -> u64 {
    let mut total = 0;
    for y in 1..=2 * k {
        total += (y / 2) * ((2 * k + 1 - y) / 2 + k);
    }
    total + 2 * k * k * k
}

/// Maximum recursion depth for [`h_4t`]: host size 4 * 4^3 = 256.
pub const H4T_MAX_DEPTH: usize = 3;

/// The recursive strengthening of G_k: H_{4^0} = G_1, and H_{4^t} is
/// G_{4^t} with one copy of H_{4^{t-1}} inserted on the u_1 part and
/// another on the u_2 part.
pub fn h_4t(t: usize) -> Result<LocalDigraph, InvalidInput> {
    if t > H4T_MAX_DEPTH {
        return Err(InvalidInput::new(format!(
            "h_4t depth {t} exceeds the cap {H4T_MAX_DEPTH}"
        )));
    }
    fn build(t: usize) -> LocalDigraph {
        let k = 4usize.pow(t as u32);
        let mut l = g_k(k);
        if t > 0 {
            let inner = build(t - 1);
            debug_assert_eq!(inner.n(), k);
            for off in [2 * k, 3 * k] {
                for e in inner.edges() {
                    l.add_edge(LdEdge::new(off + e.u, e.su, off + e.v, e.sv));
                }
            }
        }
        l
    }
    let l = build(t);
    assert!(is_ldag(&l), "H_4^t must be acyclic");
    Ok(l)
}

/// Forward-edge DAG host from a bit pattern over the C(n,2) slots.
pub fn forward_dag(n: usize, mask: u64) -> Result<ForwardDag, InvalidInput> {
    ForwardDag::from_mask_bits(n, mask)
}

/// The Petersen graph: outer cycle 0..4, spokes to 5..9, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    let edges: Vec<_> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    Graph::from_edges(10, &edges)
}

/// Iterated-blowup density `k! * N / (v^k - v)` for a k-vertex pattern:
/// the induced-copy density achieved in the limit of iterated blowups of
/// a host with `N` induced copies on `v` vertices.
pub fn blowup_density(pattern_size: u32, n_ind: u64, host_vertices: u64) -> f64 {
    let fact: u64 = (1..=pattern_size as u64).product();
    let v = host_vertices as f64;
    fact as f64 * n_ind as f64 / (v.powi(pattern_size as i32) - v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::graphs_isomorphic;
    use crate::counting::{count_induced_copies, count_induced_embeddings};
    use crate::fractional::is_unique_fpm;
    use crate::local::{count_induced_local, ldg, local_iso};
    use num_rational::Rational64;

    fn ldp3() -> LocalDigraph {
        LocalDigraph::from_edges(
            3,
            [
                LdEdge::new(0, Sign::Minus, 1, Sign::Plus),
                LdEdge::new(1, Sign::Minus, 2, Sign::Plus),
            ],
        )
    }

    #[test]
    fn elementary_hosts() {
        assert_eq!(star(3).e(), 3);
        assert_eq!(star(3).n(), 4);
        assert!(graphs_isomorphic(&complete_bipartite(2, 2), &{
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
        }));
        assert_eq!(matching_host(3).e(), 3);
        assert_eq!(matching_host(3).n(), 6);
        // join: e = C(a,2) + ab.
        let j = join_clique_independent(2, 3);
        assert_eq!(j.e(), 1 + 6);
        assert_eq!(complete(4).e(), 6);
    }

    #[test]
    fn corona_shapes() {
        // corona(2,1) = P4.
        assert!(graphs_isomorphic(
            &corona(2, 1),
            &Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])
        ));
        // corona(3,4): 15 edges = 4*3 + 3.
        assert_eq!(corona(3, 4).e(), 15);
        // corona(1,5) = K_{1,5}.
        assert!(graphs_isomorphic(&corona(1, 5), &star(5)));
    }

    #[test]
    fn corona_edge_count_formula() {
        for t in 1..=8usize {
            for s in 0..=8usize {
                assert_eq!(corona(t, s).e(), s * t + t * (t - 1) / 2);
            }
        }
    }

    #[test]
    fn corona_host_agrees_with_materialized() {
        let bh = corona_host(3, 4);
        assert_eq!(bh.e_total(), 15);
        let g = bh.materialize(64).unwrap();
        assert!(graphs_isomorphic(&g, &corona(3, 4)));
    }

    #[test]
    fn attach_pendants_cases() {
        // K2 -> P4.
        let (g, m) = attach_pendants(&complete(2));
        assert!(graphs_isomorphic(
            &g,
            &Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])
        ));
        assert!(m.is_perfect(&g));
        assert!(is_unique_fpm(&g, &m).unwrap());

        // K3 -> net graph; unique fractional perfect matching.
        let (net, m) = attach_pendants(&complete(3));
        assert_eq!(net.n(), 6);
        assert_eq!(net.e(), 6);
        assert!(is_unique_fpm(&net, &m).unwrap());

        // Single vertex -> K2.
        let (k2, m) = attach_pendants(&Graph::new(1));
        assert!(graphs_isomorphic(&k2, &complete(2)));
        assert!(m.is_perfect(&k2));
    }

    #[test]
    fn attach_pendants_ldg_is_uniform_signed_base() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let (gp, m) = attach_pendants(&g);
            let l = ldg(&gp, &m).unwrap();
            // The local digraph is g with all-equal signs at every endpoint.
            let uniform = LocalDigraph::from_edges(
                n,
                g.edges()
                    .iter()
                    .map(|&(u, v)| LdEdge::new(u, Sign::Plus, v, Sign::Plus))
                    .collect::<Vec<_>>(),
            );
            assert!(local_iso(&l, &uniform).unwrap(), "{g:?}");
        }
    }

    #[test]
    fn pinch_cases() {
        // P4 -> one edge + one isolated vertex.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let pinched = pinch(&p4);
        assert_eq!(pinched.n(), 3);
        assert_eq!(pinched.edges(), vec![(0, 2)]);

        // 2K2 -> 2 isolated vertices.
        let pinched = pinch(&matching_host(2));
        assert_eq!((pinched.n(), pinched.e()), (2, 0));

        // K4 -> the 3 disjoint edge pairs, pairwise non-adjacent.
        let pinched = pinch(&complete(4));
        assert_eq!(pinched.n(), 6);
        assert_eq!(pinched.e(), 3);
        assert!(graphs_isomorphic(&pinched, &matching_host(3)));
    }

    #[test]
    fn blowup_shapes() {
        // blowup(C5, all-2): 10 vertices, 20 edges.
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let b = blowup_graph(&c5, &BlowupSpec::uniform(5, 2)).unwrap();
        assert_eq!((b.n(), b.e()), (10, 20));

        // blowup(K2, (a,b)) = K_{a,b}.
        let b = blowup_graph(&complete(2), &BlowupSpec { sizes: vec![3, 4] }).unwrap();
        assert!(graphs_isomorphic(&b, &complete_bipartite(3, 4)));

        assert!(blowup_graph(&c5, &BlowupSpec { sizes: vec![1, 2] }).is_err());
        assert!(blowup_graph(&c5, &BlowupSpec { sizes: vec![0; 5] }).is_err());
    }

    #[test]
    fn iterated_blowup_shapes() {
        // Iterated blowup of K2 is K4 at depth 1, K16 at depth 3.
        assert!(graphs_isomorphic(&iterated_blowup_graph(&complete(2), 1), &complete(4)));
        assert_eq!(iterated_blowup_graph(&complete(2), 3).n(), 16);
        assert_eq!(iterated_blowup_graph(&complete(2), 3).e(), 120);

        // iterated_blowup(LDP3, 1): 9-vertex LDAG with 24 edges.
        let b = iterated_blowup_local(&ldp3(), 1);
        assert_eq!((b.n(), b.e()), (9, 24));
        assert!(is_ldag(&b));
        assert_eq!(count_induced_local(&ldp3(), &b).unwrap(), 30);

        // Depth 0 is the base.
        assert_eq!(iterated_blowup_local(&ldp3(), 0), ldp3());
    }

    #[test]
    fn weighted_blowup_cases() {
        let half = Rational64::new(1, 2);
        // (K2, all-1/2, m=8): parts (2,2), 4 edges <= 8.
        let wb = weighted_blowup(
            &complete(2),
            &VertexWeighting { weights: vec![half, half] },
            8,
        )
        .unwrap();
        assert_eq!(wb.sizes, vec![2, 2]);
        assert_eq!(wb.graph.e(), 4);
        assert_eq!(wb.product, 4);

        // (C5, all-1/2, m=1000): parts all floor(sqrt(200)) = 14, e = 980.
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let wb = weighted_blowup(
            &c5,
            &VertexWeighting { weights: vec![half; 5] },
            1000,
        )
        .unwrap();
        assert_eq!(wb.sizes, vec![14; 5]);
        assert_eq!(wb.graph.e(), 980);

        // (K2, alpha=(1,0), m=5): parts (5,1), the star K_{1,5}.
        let wb = weighted_blowup(
            &complete(2),
            &VertexWeighting {
                weights: vec![Rational64::from_integer(1), Rational64::from_integer(0)],
            },
            5,
        )
        .unwrap();
        assert_eq!(wb.sizes, vec![5, 1]);
        assert!(graphs_isomorphic(&wb.graph, &star(5)));

        // The guaranteed induced-copy count is met.
        assert!(count_induced_copies(&complete(2), &wb.graph).unwrap() as u128 >= wb.product);

        // Bad inputs.
        assert!(weighted_blowup(&complete(2), &VertexWeighting { weights: vec![half, half] }, 0).is_err());
        assert!(weighted_blowup(
            &complete(2),
            &VertexWeighting { weights: vec![Rational64::from_integer(1); 2] },
            8
        )
        .is_err());
        let mut lonely = Graph::new(3);
        lonely.add_edge(0, 1);
        assert!(weighted_blowup(&lonely, &VertexWeighting { weights: vec![half; 3] }, 8).is_err());
    }

    #[test]
    fn weighted_blowup_budget_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let half = Rational64::new(1, 2);
        for _ in 0..50 {
            let n = rng.gen_range(2..=6);
            let mut g = Graph::new(n);
            // Connect everything to something.
            for v in 1..n {
                g.add_edge(rng.gen_range(0..v), v);
            }
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let m = rng.gen_range(g.e() as u64..500);
            // Half weights are always a fractional independent set.
            let wb = weighted_blowup(&g, &VertexWeighting { weights: vec![half; n] }, m).unwrap();
            assert!(wb.graph.e() as u64 <= m);
        }
    }

    #[test]
    fn g_k_counts_match_formula() {
        for k in 1..=4usize {
            let g = g_k(k);
            assert_eq!(g.n(), 4 * k);
            assert_eq!(g.e(), 4 * k * k);
            assert!(is_ldag(&g));
            let brute = count_induced_local(&ldp3(), &g).unwrap();
            assert_eq!(brute, g_k_ldp3_count_formula(k as u64), "k={k}");
        }
        assert_eq!(g_k_ldp3_count_formula(1), 3);
        assert_eq!(g_k_ldp3_count_formula(2), 26);
    }

    #[test]
    fn h_4t_recursion() {
        let h0 = h_4t(0).unwrap();
        assert_eq!(h0, g_k(1));
        let h1 = h_4t(1).unwrap();
        assert_eq!(h1.n(), 16);
        assert!(is_ldag(&h1));
        // Inserted copies add exactly 2 * e(H_{4^{t-1}}) edges.
        assert_eq!(h1.e(), g_k(4).e() + 2 * h0.e());
        assert!(h_4t(4).is_err());
    }

    #[test]
    fn ldag_host_for_ldp3() {
        let (host, matched) = ldag_host_graph(&ldp3(), &[(1, 12), (2, 6), (3, 4)]).unwrap();
        assert_eq!(host.n(), 28);
        // Matched blocks contribute 3k = 36 edges.
        assert_eq!(matched.len(), 36);
        // The construction's guaranteed count: k^3 * N_ind(LDP3, LDP3).
        let p6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let nind = count_induced_embeddings(&p6, &host).unwrap() / 2;
        assert!(nind >= 12u64.pow(3), "nind = {nind}");
    }

    #[test]
    fn ldag_host_rejects_bad_input() {
        assert!(ldag_host_blowup(&ldp3(), &[(1, 12), (2, 6)]).is_err());
        assert!(ldag_host_blowup(&ldp3(), &[(2, 6), (1, 12), (3, 4)]).is_err());
        assert!(ldag_host_blowup(&ldp3(), &[(1, 12), (2, 6), (3, 5)]).is_err());
        // A cyclic local digraph is rejected.
        let cyclic = LocalDigraph::from_edges(
            2,
            [
                LdEdge::new(0, Sign::Plus, 1, Sign::Plus),
                LdEdge::new(0, Sign::Minus, 1, Sign::Minus),
            ],
        );
        assert!(ldag_host_blowup(&cyclic, &[(1, 4), (2, 2)]).is_err());
    }

    #[test]
    fn forward_dag_construction() {
        assert!(forward_dag(3, 0b111).is_ok());
        assert!(forward_dag(3, 0b1111).is_err());
    }
}
