//! Seeded random instances for property sweeps and verification suites.

use crate::graph::{Graph, Matching};
use crate::local::{LdEdge, LocalDigraph, Sign};
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random graph with at most `max_e` edges and no isolated vertices
/// (vertices left uncovered are dropped).
pub fn random_graph_no_isolated(rng: &mut impl Rng, max_e: usize) -> Graph {
    let e = rng.gen_range(1..=max_e);
    let n = rng.gen_range(2..=(2 * e).max(2));
    let mut g = Graph::new(n);
    let mut added = 0;
    let mut attempts = 0;
    while added < e && attempts < 10 * e + 100 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v);
            added += 1;
        }
    }
    let covered: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    g.induced(&covered)
}

/// Random graph on `2*pairs` vertices with the planted perfect matching
/// `(2i, 2i+1)` plus independent extra edges.
pub fn random_graph_with_planted_pm(
    rng: &mut impl Rng,
    pairs: usize,
    extra_p: f64,
) -> (Graph, Matching) {
    let n = 2 * pairs;
    let mut g = Graph::new(n);
    for i in 0..pairs {
        g.add_edge(2 * i, 2 * i + 1);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) && rng.gen_bool(extra_p) {
                g.add_edge(u, v);
            }
        }
    }
    (g, Matching::new((0..pairs).map(|i| (2 * i, 2 * i + 1))))
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Random local digraph with `e` edges and fully random signs; parallel
/// edges allowed.
pub fn random_local_digraph(rng: &mut impl Rng, n: usize, e: usize) -> LocalDigraph {
    let mut l = LocalDigraph::new(n);
    if n < 2 {
        return l;
    }
    for _ in 0..e {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        let (su, sv) = (random_sign(rng), random_sign(rng));
        l.add_edge(LdEdge::new(u, su, v, sv));
    }
    l
}

/// Random simple local digraph (no parallel edges) with edge probability
/// `p` per vertex pair.
pub fn random_simple_local_digraph(rng: &mut impl Rng, n: usize, p: f64) -> LocalDigraph {
    let mut l = LocalDigraph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                let (su, sv) = (random_sign(rng), random_sign(rng));
                l.add_edge(LdEdge::new(u, su, v, sv));
            }
        }
    }
    l
}

/// Random acyclic local digraph, built over a random topological order:
/// each edge carries the order's chosen sign at its earlier endpoint.
pub fn random_ldag(rng: &mut impl Rng, n: usize, e: usize) -> LocalDigraph {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let signs: Vec<Sign> = (0..n).map(|_| random_sign(rng)).collect();
    let mut l = LocalDigraph::new(n);
    if n < 2 {
        return l;
    }
    for _ in 0..e {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let sv = random_sign(rng);
        l.add_edge(LdEdge::new(order[i], signs[i], order[j], sv));
    }
    debug_assert!(crate::local::is_ldag(&l));
    l
}
