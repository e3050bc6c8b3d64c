//! Fractional independence and fractional matchings over exact rationals,
//! and the unique-fractional-perfect-matching test.
//!
//! Uniqueness is a knife-edge property, so every weighting here is an
//! exact rational; floats never enter the decision procedures.
//!
//! The fractional matching number is computed from a maximum integral
//! matching of the bipartite double cover (half-integrality), and the
//! fractional independence number via `alpha*(G) = n - mu*(G)`.

use crate::error::MatchingError;
use crate::graph::{Graph, Matching};
use crate::local::{is_ldag, ldg};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Edge weights in [0,1]. The fractional matching predicate bounds every
/// vertex load by 1; the perfect predicate requires equality everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalWeighting {
    weights: HashMap<(usize, usize), Rational64>,
}

impl FractionalWeighting {
    pub fn new(weights: impl IntoIterator<Item = ((usize, usize), Rational64)>) -> Self {
        let weights = weights
            .into_iter()
            .map(|((u, v), w)| ((u.min(v), u.max(v)), w))
            .collect();
        FractionalWeighting { weights }
    }

    /// Indicator weighting of an integral matching.
    pub fn from_matching(m: &Matching) -> Self {
        FractionalWeighting::new(m.pairs().iter().map(|&e| (e, Rational64::one())))
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational64 {
        let key = (u.min(v), u.max(v));
        self.weights.get(&key).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn total(&self) -> Rational64 {
        self.weights.values().sum()
    }

    pub fn vertex_load(&self, g: &Graph, v: usize) -> Rational64 {
        g.neighbors(v).map(|u| self.weight(u, v)).sum()
    }

    /// Fractional matching predicate: weights in [0,1] on edges of `g`,
    /// every vertex load at most 1.
    pub fn is_fractional_matching(&self, g: &Graph) -> bool {
        self.weights.iter().all(|(&(u, v), w)| {
            g.has_edge(u, v) && !w.is_negative() && *w <= Rational64::one()
        }) && (0..g.n()).all(|v| self.vertex_load(g, v) <= Rational64::one())
    }

    /// Fractional perfect matching predicate: every vertex load exactly 1.
    pub fn is_fractional_perfect_matching(&self, g: &Graph) -> bool {
        self.weights.iter().all(|(&(u, v), w)| {
            g.has_edge(u, v) && !w.is_negative() && *w <= Rational64::one()
        }) && (0..g.n()).all(|v| self.vertex_load(g, v) == Rational64::one())
    }

    /// Equality as functions on `g`'s edges (absent keys count as zero).
    pub fn same_on(&self, other: &FractionalWeighting, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.weight(u, v) == other.weight(u, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational64)> {
        self.weights.iter()
    }
}

/// Vertex weights in [0,1]; fractional independent set predicate requires
/// weight sums at most 1 across every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeighting {
    pub weights: Vec<Rational64>,
}

impl VertexWeighting {
    pub fn is_fractional_independent_set(&self, g: &Graph) -> bool {
        self.weights.len() == g.n()
            && self
                .weights
                .iter()
                .all(|w| !w.is_negative() && *w <= Rational64::one())
            && g.edges()
                .iter()
                .all(|&(u, v)| self.weights[u] + self.weights[v] <= Rational64::one())
    }

    pub fn total(&self) -> Rational64 {
        self.weights.iter().sum()
    }
}

const NIL: usize = usize::MAX;

/// Maximum matching in a bipartite graph given as adjacency lists of the
/// left side, by Hopcroft–Karp. Returns `match_l`: left vertex -> matched
/// right vertex or `NIL`.
fn hopcroft_karp(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0u32; left];

    fn try_augment(
        u: usize,
        adj: &[Vec<usize>],
        match_l: &mut [usize],
        match_r: &mut [usize],
        dist: &mut [u32],
    ) -> bool {
        for i in 0..adj[u].len() {
            let v = adj[u][i];
            let w = match_r[v];
            if w == NIL || (dist[w] == dist[u] + 1 && try_augment(w, adj, match_l, match_r, dist)) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = u32::MAX;
        false
    }

    loop {
        // BFS phase: layer the graph from free left vertices.
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return match_l;
        }
        for u in 0..left {
            if match_l[u] == NIL {
                try_augment(u, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
}

/// Maximum fractional matching value and a half-integral witness, via a
/// maximum integral matching of the bipartite double cover: the value is
/// half the cover's matching size, the witness averages the two sides.
pub fn max_fractional_matching(g: &Graph) -> (Rational64, FractionalWeighting) {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let match_l = hopcroft_karp(n, n, &adj);
    let half = Rational64::new(1, 2);
    let mut weights: HashMap<(usize, usize), Rational64> = HashMap::new();
    for (u, &v) in match_l.iter().enumerate() {
        if v != NIL {
            let key = (u.min(v), u.max(v));
            *weights.entry(key).or_insert_with(Rational64::zero) += half;
        }
    }
    let value: Rational64 = weights.values().sum();
    let w = FractionalWeighting { weights };
    debug_assert!(w.is_fractional_matching(g));
    (value, w)
}

/// Fractional independence number `alpha*(G) = n - mu*(G)`. Always
/// half-integral.
pub fn alpha_star(g: &Graph) -> Rational64 {
    let (mu, _) = max_fractional_matching(g);
    Rational64::from_integer(g.n() as i64) - mu
}

/// Half-integral brute force over weights in {0, 1/2, 1}^n: the
/// independent oracle for [`alpha_star`] (half-integrality of the vertex
/// LP makes this exact). Exponential; keep `n` small.
pub fn alpha_star_brute_force(g: &Graph) -> Rational64 {
    let n = g.n();
    assert!(n <= 12, "brute force limited to 12 vertices");
    let mut best = Rational64::zero();
    let mut levels = vec![0u8; n];
    loop {
        // Check feasibility: levels are doubled weights (0, 1, 2).
        let feasible = g
            .edges()
            .iter()
            .all(|&(u, v)| levels[u] + levels[v] <= 2);
        if feasible {
            let total = Rational64::new(levels.iter().map(|&x| x as i64).sum::<i64>(), 2);
            if total > best {
                best = total;
            }
        }
        // Odometer over {0,1,2}^n.
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if levels[i] == 2 {
                levels[i] = 0;
                i += 1;
            } else {
                levels[i] += 1;
                break;
            }
        }
    }
}

/// Arc map of the alternating-walk state digraph: from each vertex `w`,
/// one arc to `partner(x)` per non-matching edge `wx`. A directed cycle
/// here is exactly a closed walk alternating matching and non-matching
/// edges, which certifies a second fractional perfect matching.
fn alternating_state_arcs(g: &Graph, m: &Matching) -> Vec<Vec<(usize, usize)>> {
    let mut arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()]; // (next_w, via_x)
    for w in 0..g.n() {
        for x in g.neighbors(w) {
            if !m.contains_edge(w, x) {
                arcs[w].push((m.partner(x).unwrap(), x));
            }
        }
    }
    arcs
}

/// Finds an alternating closed walk `u1 w1 u2 w2 ... ut wt u1` with every
/// `ui wi` in the matching and every `wi u(i+1)` outside it. Returns the
/// cyclic list of `w` vertices and the connecting non-matching partners.
fn find_alternating_closed_walk(g: &Graph, m: &Matching) -> Option<Vec<(usize, usize)>> {
    let arcs = alternating_state_arcs(g, m);
    let n = g.n();
    // BFS from each start state, looking for a cycle back to it.
    for start in 0..n {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        let mut closing: Option<(usize, usize)> = None;
        'bfs: {
            queue.push_back(start);
            // parent[start] stays None; detect arrival back at start directly.
            while let Some(w) = queue.pop_front() {
                for &(next, via) in &arcs[w] {
                    if next == start {
                        closing = Some((w, via));
                        break 'bfs;
                    }
                    if parent[next].is_none() {
                        parent[next] = Some((w, via));
                        queue.push_back(next);
                    }
                }
            }
        }
        if let Some((last, via)) = closing {
            let mut rev = vec![(last, via)];
            let mut cur = last;
            while cur != start {
                let (prev, v) = parent[cur].unwrap();
                rev.push((prev, v));
                cur = prev;
            }
            rev.reverse();
            return Some(rev); // [(w1, x1), (w2, x2), ...] with x_i = partner step
        }
    }
    None
}

/// True iff `m` is the only fractional perfect matching of `g`. The
/// primary decision procedure goes through the local digraph: uniqueness
/// holds iff `ldg(g, m)` is acyclic.
pub fn is_unique_fpm(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    let l = ldg(g, m)?;
    Ok(is_ldag(&l))
}

/// Independent oracle for [`is_unique_fpm`]: direct search for an
/// alternating closed walk in `g` itself.
pub fn is_unique_fpm_oracle(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    m.validate_perfect(g)?;
    Ok(find_alternating_closed_walk(g, m).is_none())
}

/// If `m` is not the unique fractional perfect matching, builds a second
/// one by perturbing along an alternating closed walk: `f(e) = eps*c(e)`
/// off the matching and `1 - eps*c(e)` on it, with `eps = 1/max c(e)`.
/// Returns `None` when `m` is unique.
pub fn perturbation_witness(
    g: &Graph,
    m: &Matching,
) -> Result<Option<FractionalWeighting>, MatchingError> {
    m.validate_perfect(g)?;
    let walk = match find_alternating_closed_walk(g, m) {
        None => return Ok(None),
        Some(w) => w,
    };
    // Traversal counts along u1 w1 u2 w2 ... u1: each step (w_i, x_i)
    // contributes the non-matching edge w_i-x_i and the matching edge
    // x_i-partner(x_i) (= u_{i+1} w_{i+1}).
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    let mut bump = |a: usize, b: usize| {
        *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    };
    for &(w, x) in &walk {
        bump(w, x);
        bump(x, m.partner(x).unwrap());
    }
    let max_c = *counts.values().max().unwrap();
    let eps = Rational64::new(1, max_c);
    let mut weights: HashMap<(usize, usize), Rational64> = HashMap::new();
    for &(u, v) in m.pairs() {
        let c = counts.get(&(u, v)).copied().unwrap_or(0);
        weights.insert((u, v), Rational64::one() - eps * Rational64::from_integer(c));
    }
    for (&(u, v), &c) in &counts {
        if !m.contains_edge(u, v) {
            weights.insert((u, v), eps * Rational64::from_integer(c));
        }
    }
    let f = FractionalWeighting { weights };
    debug_assert!(f.is_fractional_perfect_matching(g));
    debug_assert!(!f.same_on(&FractionalWeighting::from_matching(m), g));
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)])
    }

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])
    }

    fn c(n: usize) -> Graph {
        Graph::from_edges(
            n,
            &(0..n)
                .map(|i| ((i).min((i + 1) % n), (i).max((i + 1) % n)))
                .collect::<Vec<_>>(),
        )
    }

    fn p6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer C5
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        let edges: Vec<_> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        Graph::from_edges(10, &edges)
    }

    #[test]
    fn alpha_star_known_values() {
        assert_eq!(alpha_star(&k3()), Rational64::new(3, 2));
        assert_eq!(alpha_star(&p4()), Rational64::from_integer(2));
        assert_eq!(alpha_star(&c(5)), Rational64::new(5, 2));
    }

    #[test]
    fn alpha_star_agrees_with_brute_force() {
        assert_eq!(alpha_star(&p4()), alpha_star_brute_force(&p4()));
        assert_eq!(alpha_star(&c(5)), alpha_star_brute_force(&c(5)));
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(alpha_star(&g), alpha_star_brute_force(&g), "{g:?}");
        }
    }

    #[test]
    fn alpha_star_always_half_integral() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let a = alpha_star(&g);
            assert!(*a.denom() == 1 || *a.denom() == 2);
        }
    }

    #[test]
    fn max_fractional_matching_values() {
        let (v, w) = max_fractional_matching(&k3());
        assert_eq!(v, Rational64::new(3, 2));
        assert!(w.is_fractional_matching(&k3()));
        assert_eq!(w.total(), v);

        let (v, w) = max_fractional_matching(&p6());
        assert_eq!(v, Rational64::from_integer(3));
        assert!(w.is_fractional_perfect_matching(&p6()));

        let (v, _) = max_fractional_matching(&petersen());
        assert_eq!(v, Rational64::from_integer(5));
    }

    #[test]
    fn duality_alpha_plus_mu_is_n() {
        use rand::prelude::*;
        // Exhaustive for n <= 7 would be 2^21 graphs; spot the small ones
        // exhaustively and sample larger ones.
        for n in 0..=4 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges);
                let (mu, _) = max_fractional_matching(&g);
                assert_eq!(alpha_star(&g) + mu, Rational64::from_integer(n as i64));
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let (mu, w) = max_fractional_matching(&g);
            assert!(w.is_fractional_matching(&g));
            assert_eq!(alpha_star(&g) + mu, Rational64::from_integer(n as i64));
        }
    }

    #[test]
    fn unique_fpm_cases() {
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]);
        assert!(is_unique_fpm(&p6(), &m).unwrap());
        assert!(is_unique_fpm_oracle(&p6(), &m).unwrap());
        assert_eq!(perturbation_witness(&p6(), &m).unwrap(), None);

        let c4 = c(4);
        let m = Matching::new([(0, 1), (2, 3)]);
        assert!(!is_unique_fpm(&c4, &m).unwrap());
        assert!(!is_unique_fpm_oracle(&c4, &m).unwrap());
        let f = perturbation_witness(&c4, &m).unwrap().expect("witness");
        assert!(f.is_fractional_perfect_matching(&c4));
        assert!(!f.same_on(&FractionalWeighting::from_matching(&m), &c4));

        // Triangle with pendant: matching = pendant + opposite edge.
        let k3p = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let m = Matching::new([(0, 3), (1, 2)]);
        assert!(is_unique_fpm(&k3p, &m).unwrap());
        assert!(is_unique_fpm_oracle(&k3p, &m).unwrap());
    }

    #[test]
    fn k4_witness_is_valid_second_fpm() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let m = Matching::new([(0, 1), (2, 3)]);
        assert!(!is_unique_fpm(&k4, &m).unwrap());
        let f = perturbation_witness(&k4, &m).unwrap().expect("witness");
        assert!(f.is_fractional_perfect_matching(&k4));
        assert!(!f.same_on(&FractionalWeighting::from_matching(&m), &k4));
    }

    #[test]
    fn errors_on_non_perfect_matching() {
        let m = Matching::new([(0, 1)]);
        assert!(is_unique_fpm(&p4(), &m).is_err());
        assert!(is_unique_fpm_oracle(&p4(), &m).is_err());
        assert!(perturbation_witness(&p4(), &m).is_err());
    }

    #[test]
    fn fractional_predicates() {
        let g = c(4);
        let half = Rational64::new(1, 2);
        let all_half = FractionalWeighting::new(g.edges().iter().map(|&e| (e, half)));
        assert!(all_half.is_fractional_matching(&g));
        assert!(all_half.is_fractional_perfect_matching(&g));

        let m = Matching::new([(0, 1)]);
        let ind = FractionalWeighting::from_matching(&m);
        assert!(ind.is_fractional_matching(&g));
        assert!(!ind.is_fractional_perfect_matching(&g));

        let alpha = VertexWeighting {
            weights: vec![half; 4],
        };
        assert!(alpha.is_fractional_independent_set(&g));
        assert_eq!(alpha.total(), Rational64::from_integer(2));
    }
}
