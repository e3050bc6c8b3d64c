//! Exhaustive desk-scale oracles: all m-edge hosts up to isomorphism,
//! the exact edge-inducibility maximum over them, the full forward-DAG
//! sweep for directed 3-paths, and the small local-digraph catalog.

use crate::canon::canonical_form_with_limit;
use crate::counting::{count_induced_copies, ForwardDag};
use crate::error::{InvalidInput, LimitError};
use crate::graph::Graph;
use crate::local::{
    canonical_local_form, LdEdge, LocalCanonicalForm, LocalDigraph, Sign,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

/// Default cap on the host edge count; larger runs need [`SearchLimits::force`].
pub const HOST_EDGE_LIMIT: usize = 7;
/// Default cap for the forward-DAG sweep (2^C(n,2) masks).
pub const DP3_SWEEP_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchLimits {
    /// Accept runs beyond the default caps.
    pub force: bool,
}

/// Every graph with exactly `m` edges and no isolated vertices, exactly
/// once up to isomorphism.
///
/// Generation is by edge count: every (e+1)-edge graph without isolated
/// vertices arises from an e-edge one by adding an edge on 0, 1 or 2 new
/// vertices (remove any edge and drop what becomes isolated), so
/// level-by-level expansion with canonical deduplication is complete.
pub fn enumerate_hosts(m: usize, limits: SearchLimits) -> Result<Vec<Graph>, LimitError> {
    if m > HOST_EDGE_LIMIT && !limits.force {
        return Err(LimitError {
            what: "enumerate_hosts edges (pass force to override)",
            actual: m,
            limit: HOST_EDGE_LIMIT,
        });
    }
    let canon_limit = 2 * m.max(1);
    let mut level: Vec<Graph> = vec![Graph::from_edges(2, &[(0, 1)])];
    if m == 0 {
        return Ok(vec![Graph::new(0)]);
    }
    for _ in 1..m {
        let mut seen: HashSet<crate::canon::CanonicalForm> = HashSet::new();
        let mut next: Vec<Graph> = Vec::new();
        let mut push = |g: Graph, seen: &mut HashSet<_>, next: &mut Vec<Graph>| {
            let form = canonical_form_with_limit(&g, canon_limit).expect("within raised limit");
            if seen.insert(form) {
                next.push(g);
            }
        };
        for g in &level {
            let n = g.n();
            // New edge between existing vertices.
            for u in 0..n {
                for v in (u + 1)..n {
                    if !g.has_edge(u, v) {
                        let mut h = expand(g, 0);
                        h.add_edge(u, v);
                        push(h, &mut seen, &mut next);
                    }
                }
            }
            // New edge hanging off an existing vertex.
            for u in 0..n {
                let mut h = expand(g, 1);
                h.add_edge(u, n);
                push(h, &mut seen, &mut next);
            }
            // New edge on two fresh vertices.
            let mut h = expand(g, 2);
            h.add_edge(n, n + 1);
            push(h, &mut seen, &mut next);
        }
        level = next;
    }
    Ok(level)
}

fn expand(g: &Graph, extra: usize) -> Graph {
    let mut h = Graph::new(g.n() + extra);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    h
}

/// Result of an exhaustive edge-inducibility oracle run.
#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub m: usize,
    pub max_n_ind: u64,
    /// One extremal host, in the graph text format.
    pub witness: String,
    /// Number of isomorphism classes examined.
    pub hosts_examined: usize,
}

/// Exact maximum of `N_ind(pattern, H)` over all hosts with `m` edges
/// and no isolated vertices, with one witness host.
pub fn eind_oracle(
    pattern: &Graph,
    m: usize,
    limits: SearchLimits,
) -> Result<OracleResult, InvalidInput> {
    if pattern.n() > 6 {
        return Err(InvalidInput::new("oracle patterns are limited to 6 vertices"));
    }
    if pattern.has_isolated_vertex() {
        return Err(InvalidInput::new("pattern must have no isolated vertices"));
    }
    let hosts = enumerate_hosts(m, limits).map_err(|e| InvalidInput::new(e.to_string()))?;
    let hosts_examined = hosts.len();
    // Deterministic regardless of evaluation order: maximize by count,
    // breaking ties toward the lexicographically smallest serialization.
    let best = hosts
        .into_par_iter()
        .map(|h| {
            let count = count_induced_copies(pattern, &h).expect("small pattern");
            (count, std::cmp::Reverse(h.serialize()))
        })
        .max()
        .expect("at least one host");
    Ok(OracleResult {
        m,
        max_n_ind: best.0,
        witness: best.1 .0,
        hosts_examined,
    })
}

/// Result of the exhaustive forward-DAG sweep.
#[derive(Clone, Debug, Serialize)]
pub struct Dp3MaxResult {
    pub n: usize,
    pub max_n_ind: u64,
    /// Lexicographically smallest maximizing mask.
    pub argmax_mask: u64,
    /// `floor((1/8) sum (n+1-2s)^2)`: the proven cap on the maximum.
    pub bound_floor: u64,
}

/// Exact maximum of induced directed-3-path counts over all forward-edge
/// DAGs on `n` vertices (all 2^C(n,2) masks).
pub fn dp3_dag_max(n: usize, limits: SearchLimits) -> Result<Dp3MaxResult, InvalidInput> {
    if n < 3 {
        return Err(InvalidInput::new("need at least 3 vertices"));
    }
    if n > DP3_SWEEP_LIMIT && !limits.force {
        return Err(InvalidInput::new(format!(
            "n = {n} sweeps 2^{} masks; pass force to run beyond n = {DP3_SWEEP_LIMIT}",
            n * (n - 1) / 2
        )));
    }
    if n * (n - 1) / 2 > 40 {
        return Err(InvalidInput::new("mask space beyond 2^40 is not supported"));
    }
    let slots = n * (n - 1) / 2;
    let total: u64 = 1 << slots;
    // Shard the mask space; each shard reduces to (max, smallest argmax).
    let shards: u64 = 256.min(total);
    let shard_size = total / shards;
    let best = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = s * shard_size;
            let hi = if s + 1 == shards { total } else { lo + shard_size };
            let mut best_count = 0u64;
            let mut best_mask = lo;
            for mask in lo..hi {
                let c = nind_dp3_mask(n, mask);
                if c > best_count {
                    best_count = c;
                    best_mask = mask;
                }
            }
            (best_count, std::cmp::Reverse(best_mask))
        })
        .max()
        .unwrap();
    let (max_n_ind, std::cmp::Reverse(argmax_mask)) = best;

    let mut sq_sum = 0i64;
    for s in 1..=n as i64 {
        let lin = n as i64 + 1 - 2 * s;
        sq_sum += lin * lin;
    }
    let bound_floor = (sq_sum as u64) / 8;
    assert!(
        max_n_ind <= bound_floor,
        "forward-DAG maximum exceeded the proven cap"
    );
    Ok(Dp3MaxResult {
        n,
        max_n_ind,
        argmax_mask,
        bound_floor,
    })
}

/// Induced directed-3-path count for one mask, allocation-free.
fn nind_dp3_mask(n: usize, mask: u64) -> u64 {
    let mut out = [0u32; 16];
    let mut slot = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> slot & 1 == 1 {
                out[i] |= 1 << j;
            }
            slot += 1;
        }
    }
    let mut count = 0u64;
    for j in 0..n {
        for i in 0..j {
            if out[i] >> j & 1 == 1 {
                count += (out[j] & !out[i]).count_ones() as u64;
            }
        }
    }
    count
}

/// Catalog metadata recorded with local-digraph enumerations.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCatalog {
    pub n: usize,
    pub max_parallel: usize,
    #[serde(skip)]
    pub representatives: Vec<LocalDigraph>,
}

/// All local digraphs on exactly `n` vertices with at most `max_parallel`
/// edges per vertex pair, one representative per isomorphism class.
///
/// Generation walks sign-pair multisets per vertex pair, keeps only
/// flip-normalized assignments (first incidence of every vertex is plus),
/// and deduplicates by canonical form.
pub fn enumerate_local_digraphs(
    n: usize,
    max_parallel: usize,
    limits: SearchLimits,
) -> Result<LocalCatalog, InvalidInput> {
    if (n > 4 || max_parallel > 2) && !limits.force {
        return Err(InvalidInput::new(
            "catalog limited to n <= 4, max_parallel <= 2 (pass force to override)",
        ));
    }
    if n == 0 {
        return Err(InvalidInput::new("need at least one vertex"));
    }
    // Options per pair: multisets of sign pairs of size 0..=max_parallel.
    let types = [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ];
    let mut options: Vec<Vec<(Sign, Sign)>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]]; // type-index multisets
    for _ in 0..max_parallel {
        let mut next = Vec::new();
        for multiset in &frontier {
            let start = *multiset.last().unwrap_or(&0);
            for t in start..4 {
                let mut bigger = multiset.clone();
                bigger.push(t);
                options.push(bigger.iter().map(|&i| types[i]).collect());
                next.push(bigger);
            }
        }
        frontier = next;
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut choice = vec![0usize; pairs.len()];
    let mut seen: HashSet<LocalCanonicalForm> = HashSet::new();
    let mut reps: Vec<LocalDigraph> = Vec::new();

    loop {
        // Build the edge list for the current choice vector.
        let mut edges: Vec<LdEdge> = Vec::new();
        for (pi, &(u, v)) in pairs.iter().enumerate() {
            for &(su, sv) in &options[choice[pi]] {
                edges.push(LdEdge::new(u, su, v, sv));
            }
        }
        // Flip normalization: the first incidence of every vertex is plus.
        let mut first_sign = vec![None; n];
        for e in &edges {
            for x in [e.u, e.v] {
                if first_sign[x].is_none() {
                    first_sign[x] = Some(e.sign_at(x));
                }
            }
        }
        if first_sign
            .iter()
            .all(|s| !matches!(s, Some(Sign::Minus)))
        {
            let l = LocalDigraph::from_edges(n, edges);
            let form = canonical_local_form(&l).map_err(|e| InvalidInput::new(e.to_string()))?;
            if seen.insert(form) {
                reps.push(l);
            }
        }
        // Odometer.
        let mut i = 0;
        loop {
            if i == pairs.len() {
                return Ok(LocalCatalog {
                    n,
                    max_parallel,
                    representatives: reps,
                });
            }
            choice[i] += 1;
            if choice[i] == options.len() {
                choice[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}
