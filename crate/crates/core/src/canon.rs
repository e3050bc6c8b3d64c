//! Canonical forms and automorphism counting for small graphs.
//!
//! The canonical form is the minimum adjacency encoding over all vertex
//! orders that respect the stable color-refinement partition. Refinement
//! classes are numbered by invariant signatures, so the restriction is
//! isomorphism-invariant and equal forms characterize isomorphic graphs.

use crate::error::LimitError;
use crate::graph::Graph;

/// Default vertex limit for [`canonical_form`].
pub const CANON_LIMIT: usize = 12;
/// Default vertex limit for [`aut_order`].
pub const AUT_LIMIT: usize = 10;

/// Opaque isomorphism invariant: equal forms iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(Vec<u8>);

/// Stable color refinement. Class ids are assigned by sorting signature
/// histories, so they are invariant under relabeling.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = vec![0; n];
    // Initial coloring by degree rank.
    let degs: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut uniq = degs.clone();
    uniq.sort_unstable();
    uniq.dedup();
    for u in 0..n {
        colors[u] = uniq.binary_search(&degs[u]).unwrap();
    }
    let mut class_count = uniq.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = g.neighbors(u).map(|v| colors[v]).collect();
                nb.sort_unstable();
                (colors[u], nb)
            })
            .collect();
        let mut uniq_sigs = sigs.clone();
        uniq_sigs.sort();
        uniq_sigs.dedup();
        if uniq_sigs.len() == class_count {
            return colors;
        }
        class_count = uniq_sigs.len();
        for u in 0..n {
            colors[u] = uniq_sigs.binary_search(&sigs[u]).unwrap();
        }
    }
}

/// Minimum adjacency encoding over class-respecting vertex orders.
/// Row `i` of the result holds the adjacency bits of the `i`-th placed
/// vertex toward positions `0..i`, packed with position 0 as the high bit.
fn min_encoding(g: &Graph) -> Vec<u64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let colors = refine_colors(g);
    // Positions grouped by class id, smallest class id first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| colors[u]);
    let class_of_pos: Vec<usize> = order.iter().map(|&u| colors[u]).collect();

    let mut best = vec![u64::MAX; n];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn chunk(g: &Graph, cand: usize, placed: &[usize]) -> u64 {
        let mut c = 0u64;
        for (j, &p) in placed.iter().enumerate() {
            if g.has_edge(cand, p) {
                c |= 1 << (63 - j);
            }
        }
        c
    }

    /// True if the transposition (u w) is an automorphism, i.e. u and w
    /// agree on every other vertex. Tied sibling branches rooted at such
    /// vertices produce identical encodings, so one can be skipped.
    fn twins(g: &Graph, u: usize, w: usize) -> bool {
        (0..g.n()).all(|x| x == u || x == w || g.has_edge(u, x) == g.has_edge(w, x))
    }

    fn dfs(
        g: &Graph,
        colors: &[usize],
        class_of_pos: &[usize],
        best: &mut Vec<u64>,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) {
        let i = placed.len();
        if i == g.n() {
            return;
        }
        let mut cands: Vec<(u64, usize)> = (0..g.n())
            .filter(|&u| !used[u] && colors[u] == class_of_pos[i])
            .map(|u| (chunk(g, u, placed), u))
            .collect();
        cands.sort_unstable();
        let mut tried: Vec<(u64, usize)> = Vec::new();
        for (c, u) in cands {
            if c > best[i] {
                break;
            }
            if tried.iter().any(|&(tc, w)| tc == c && twins(g, u, w)) {
                continue;
            }
            if c < best[i] {
                best[i] = c;
                for b in best[i + 1..].iter_mut() {
                    *b = u64::MAX;
                }
            }
            used[u] = true;
            placed.push(u);
            dfs(g, colors, class_of_pos, best, placed, used);
            placed.pop();
            used[u] = false;
            tried.push((c, u));
        }
    }

    dfs(g, &colors, &class_of_pos, &mut best, &mut placed, &mut used);
    best
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, LimitError> {
    canonical_form_with_limit(g, CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalForm, LimitError> {
    if g.n() > limit {
        return Err(LimitError {
            what: "canonical_form",
            actual: g.n(),
            limit,
        });
    }
    let enc = min_encoding(g);
    let mut bytes = Vec::with_capacity(1 + 2 * enc.len());
    bytes.push(g.n() as u8);
    for (i, row) in enc.iter().enumerate() {
        // Row i has i significant bits at the top of the word.
        let packed = (row >> (64 - i.max(1))) as u16;
        bytes.extend_from_slice(&packed.to_be_bytes());
    }
    Ok(CanonicalForm(bytes))
}

/// Isomorphism test via canonical forms (limit raised to the input size).
pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.e() != b.e() {
        return false;
    }
    let limit = a.n();
    canonical_form_with_limit(a, limit).unwrap() == canonical_form_with_limit(b, limit).unwrap()
}

pub fn aut_order(g: &Graph) -> Result<u64, LimitError> {
    aut_order_with_limit(g, AUT_LIMIT)
}

/// Order of the automorphism group by backtracking over color-respecting
/// maps. Colors come from stable refinement, which automorphisms preserve.
pub fn aut_order_with_limit(g: &Graph, limit: usize) -> Result<u64, LimitError> {
    if g.n() > limit {
        return Err(LimitError {
            what: "aut_order",
            actual: g.n(),
            limit,
        });
    }
    let n = g.n();
    if n == 0 {
        return Ok(1);
    }
    let colors = refine_colors(g);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0u64;

    fn dfs(
        g: &Graph,
        colors: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
        count: &mut u64,
    ) {
        if i == g.n() {
            *count += 1;
            return;
        }
        'cand: for c in 0..g.n() {
            if used[c] || colors[c] != colors[i] {
                continue;
            }
            for j in 0..i {
                if g.has_edge(i, j) != g.has_edge(c, map[j]) {
                    continue 'cand;
                }
            }
            map[i] = c;
            used[c] = true;
            dfs(g, colors, map, used, i + 1, count);
            used[c] = false;
        }
    }

    dfs(g, &colors, &mut map, &mut used, 0, &mut count);
    Ok(count)
}
