//! Exact Shannon-entropy computations over uniform induced-embedding
//! distributions and finite rational distributions.
//!
//! Probabilities stay exact rationals (or exact counts over a uniform
//! support); logarithms are evaluated in f64 with compensated summation
//! only at the reporting step. Inequality checks use a 1e-9 tolerance.

use crate::counting::count_induced_embeddings;
use crate::error::InvalidInput;
use crate::graph::Graph;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::hash::Hash;

/// Slack tolerance for entropy inequalities, in bits.
pub const ENTROPY_TOL: f64 = 1e-9;

/// Kahan-compensated sum.
fn ksum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Entropy in bits of a distribution given by positive integer counts
/// over a uniform support: `H = log2(N) - (1/N) sum c_i log2 c_i`.
pub fn entropy_from_counts(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    assert!(n > 0, "empty support");
    let nf = n as f64;
    let weighted = ksum(counts.iter().map(|&c| {
        let cf = c as f64;
        if c <= 1 {
            0.0
        } else {
            cf * cf.log2()
        }
    }));
    nf.log2() - weighted / nf
}

/// A finite distribution with exact rational probabilities, positive and
/// summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDistribution<O: Eq + Hash + Clone> {
    probs: Vec<(O, Rational64)>,
}

impl<O: Eq + Hash + Clone> FiniteDistribution<O> {
    pub fn new(probs: impl IntoIterator<Item = (O, Rational64)>) -> Result<Self, InvalidInput> {
        let probs: Vec<(O, Rational64)> = probs.into_iter().collect();
        if probs.is_empty() {
            return Err(InvalidInput::new("empty support"));
        }
        let mut seen = std::collections::HashSet::new();
        let mut total = Rational64::zero();
        for (o, p) in &probs {
            if *p <= Rational64::zero() {
                return Err(InvalidInput::new("probabilities must be positive"));
            }
            if !seen.insert(o.clone()) {
                return Err(InvalidInput::new("duplicate outcome"));
            }
            total += *p;
        }
        if total != Rational64::one() {
            return Err(InvalidInput::new(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(FiniteDistribution { probs })
    }

    pub fn uniform(outcomes: impl IntoIterator<Item = O>) -> Result<Self, InvalidInput> {
        let outcomes: Vec<O> = outcomes.into_iter().collect();
        let n = outcomes.len() as i64;
        if n == 0 {
            return Err(InvalidInput::new("empty support"));
        }
        Self::new(outcomes.into_iter().map(|o| (o, Rational64::new(1, n))))
    }

    pub fn support(&self) -> impl Iterator<Item = &O> {
        self.probs.iter().map(|(o, _)| o)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty supports
    }

    pub fn probabilities(&self) -> &[(O, Rational64)] {
        &self.probs
    }

    /// Entropy in bits.
    pub fn entropy(&self) -> f64 {
        ksum(self.probs.iter().map(|(_, p)| {
            let pf = p.to_f64().expect("probability fits f64");
            -pf * pf.log2()
        }))
    }
}

/// Uniform distribution over all induced embeddings of a pattern in a
/// host; coordinate `i` of each tuple is the image of pattern vertex `i`.
#[derive(Clone, Debug)]
pub struct EmbeddingDistribution {
    arity: usize,
    support: Vec<Vec<usize>>,
}

/// Enumerates induced embeddings as tuples indexed by pattern vertex.
fn enumerate_induced_embeddings(pattern: &Graph, host: &Graph) -> Vec<Vec<usize>> {
    let k = pattern.n();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; host.n()];
    let mut out = Vec::new();

    fn rec(
        pattern: &Graph,
        host: &Graph,
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == pattern.n() {
            out.push(image.clone());
            return;
        }
        'cand: for c in 0..host.n() {
            if used[c] {
                continue;
            }
            for q in 0..depth {
                if pattern.has_edge(depth, q) != host.has_edge(c, image[q]) {
                    continue 'cand;
                }
            }
            image[depth] = c;
            used[c] = true;
            rec(pattern, host, depth + 1, image, used, out);
            used[c] = false;
        }
    }

    rec(pattern, host, 0, &mut image, &mut used, &mut out);
    out
}

impl EmbeddingDistribution {
    pub fn new(pattern: &Graph, host: &Graph) -> Result<Self, InvalidInput> {
        let support = enumerate_induced_embeddings(pattern, host);
        if support.is_empty() {
            return Err(InvalidInput::new("no induced embeddings"));
        }
        // The support size is the induced-embedding count by definition;
        // cross-check against the counting engine.
        let counted = count_induced_embeddings(pattern, host)
            .map_err(|e| InvalidInput::new(e.to_string()))?;
        assert_eq!(support.len() as u64, counted);
        Ok(EmbeddingDistribution {
            arity: pattern.n(),
            support,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn support(&self) -> &[Vec<usize>] {
        &self.support
    }

    pub fn support_size(&self) -> u64 {
        self.support.len() as u64
    }

    /// Entropy in bits of the full tuple: `log2` of the support size.
    pub fn full_entropy(&self) -> f64 {
        (self.support.len() as f64).log2()
    }

    /// Entropy of the projection onto the given coordinates (0-based).
    pub fn projection_entropy(&self, coords: &[usize]) -> Result<f64, InvalidInput> {
        let counts = self.projection_counts(coords)?;
        Ok(entropy_from_counts(&counts))
    }

    fn projection_counts(&self, coords: &[usize]) -> Result<Vec<u64>, InvalidInput> {
        if coords.is_empty() {
            return Err(InvalidInput::new("empty coordinate set"));
        }
        if coords.iter().any(|&c| c >= self.arity) {
            return Err(InvalidInput::new("coordinate out of range"));
        }
        let mut groups: HashMap<Vec<usize>, u64> = HashMap::new();
        for tuple in &self.support {
            let key: Vec<usize> = coords.iter().map(|&c| tuple[c]).collect();
            *groups.entry(key).or_insert(0) += 1;
        }
        Ok(groups.into_values().collect())
    }

    /// `H(X_A | X_B) = H(X_{A u B}) - H(X_B)`.
    pub fn conditional_entropy(&self, a: &[usize], b: &[usize]) -> Result<f64, InvalidInput> {
        let mut joint: Vec<usize> = a.to_vec();
        for &c in b {
            if !joint.contains(&c) {
                joint.push(c);
            }
        }
        Ok(self.projection_entropy(&joint)? - self.projection_entropy(b)?)
    }

    /// Number of distinct projected values.
    pub fn projection_support_size(&self, coords: &[usize]) -> Result<u64, InvalidInput> {
        Ok(self.projection_counts(coords)?.len() as u64)
    }
}

/// One verified inequality: `lhs_bits <= rhs_bits` with
/// `slack_bits = rhs_bits - lhs_bits`.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub slack_bits: f64,
}

impl ClaimReport {
    fn new(claim: &str, lhs: f64, rhs: f64) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            lhs_bits: lhs,
            rhs_bits: rhs,
            slack_bits: rhs - lhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack_bits >= -ENTROPY_TOL
    }
}

/// Report of the five-cycle entropy inequalities on one host.
#[derive(Clone, Debug, Serialize)]
pub struct C5Report {
    pub host_edges: u64,
    pub embedding_count: u64,
    pub claims: Vec<ClaimReport>,
}

impl C5Report {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds())
    }
}

fn c5_pattern() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
}

/// Verifies the five-cycle conditional-entropy inequalities on a host:
/// `H(X1|X2,X3,X5) <= H(X1|X2) - 1`, `H(X1|X2,X3,X4) <= H(X1) - log2 5`,
/// and `2 H(X1..X5) + log2 250 <= 5 H(X1,X2)`, plus the same first claim
/// derived through the mixture argument (as `H(X2|X1,X3,X4)`) and the
/// exponential form of the second. Coordinates are 0-based internally.
pub fn verify_c5_claims(host: &Graph) -> Result<C5Report, InvalidInput> {
    let dist = EmbeddingDistribution::new(&c5_pattern(), host)?;
    let h_full = dist.full_entropy();
    let h1 = dist.projection_entropy(&[0])?;
    let h12 = dist.projection_entropy(&[0, 1])?;
    let h1_given_2 = dist.conditional_entropy(&[0], &[1])?;

    let mut claims = Vec::new();

    // H(X1 | X2, X3, X5) <= H(X1 | X2) - log2 2.
    let lhs = dist.conditional_entropy(&[0], &[1, 2, 4])?;
    claims.push(ClaimReport::new(
        "H(X1|X2,X3,X5) <= H(X1|X2) - 1",
        lhs,
        h1_given_2 - 1.0,
    ));

    // Mixture-argument form of the same bound: H(X2 | X1, X3, X4).
    let lhs_mix = dist.conditional_entropy(&[1], &[0, 2, 3])?;
    claims.push(ClaimReport::new(
        "H(X2|X1,X3,X4) <= H(X1|X2) - 1",
        lhs_mix,
        h1_given_2 - 1.0,
    ));

    // H(X1 | X2, X3, X4) <= H(X1) - log2 5.
    let lhs2 = dist.conditional_entropy(&[0], &[1, 2, 3])?;
    claims.push(ClaimReport::new(
        "H(X1|X2,X3,X4) <= H(X1) - log2(5)",
        lhs2,
        h1 - 5f64.log2(),
    ));

    // Exponential form: 5 * 2^{H(X1|X2,X3,X4)} <= 2^{H(X1)}.
    claims.push(ClaimReport::new(
        "log2(5 * 2^H(X1|X2,X3,X4)) <= H(X1)",
        5f64.log2() + lhs2,
        h1,
    ));

    // 2 H(X1..X5) + log2 250 <= 5 H(X1, X2).
    claims.push(ClaimReport::new(
        "2 H(X1..X5) + log2(250) <= 5 H(X1,X2)",
        2.0 * h_full + 250f64.log2(),
        5.0 * h12,
    ));

    Ok(C5Report {
        host_edges: host.e() as u64,
        embedding_count: dist.support_size(),
        claims,
    })
}

/// Report of one mixture-bound check.
#[derive(Clone, Debug, Serialize)]
pub struct MixtureReport {
    /// `log2` of the sum of `2^{H(X_i)}`.
    pub lhs_bits: f64,
    /// Entropy of the constructed mixture.
    pub mixture_entropy_bits: f64,
    pub slack_bits: f64,
    pub weights: Vec<f64>,
}

impl MixtureReport {
    pub fn holds(&self) -> bool {
        self.slack_bits >= -ENTROPY_TOL
    }
}

/// Builds the mixture with weights proportional to `2^{H(X_i)}` over
/// distributions with pairwise disjoint supports and verifies
/// `2^{H(X_1)} + ... + 2^{H(X_k)} <= 2^{H(Z)}`.
pub fn mixture_entropy_check<O: Eq + Hash + Clone>(
    parts: &[FiniteDistribution<O>],
) -> Result<MixtureReport, InvalidInput> {
    if parts.is_empty() {
        return Err(InvalidInput::new("no distributions given"));
    }
    let mut seen = std::collections::HashSet::new();
    for d in parts {
        for o in d.support() {
            if !seen.insert(o.clone()) {
                return Err(InvalidInput::new("supports are not pairwise disjoint"));
            }
        }
    }
    let entropies: Vec<f64> = parts.iter().map(|d| d.entropy()).collect();
    let pows: Vec<f64> = entropies.iter().map(|h| h.exp2()).collect();
    let total: f64 = ksum(pows.iter().copied());
    let weights: Vec<f64> = pows.iter().map(|p| p / total).collect();
    // Mixture entropy over the disjoint union: outcomes of part i carry
    // probability w_i * p_i(o).
    let mixture_entropy = ksum(parts.iter().zip(&weights).flat_map(|(d, &w)| {
        d.probabilities().iter().map(move |(_, p)| {
            let pf = w * p.to_f64().expect("probability fits f64");
            -pf * pf.log2()
        })
    }));
    let lhs = total.log2();
    Ok(MixtureReport {
        lhs_bits: lhs,
        mixture_entropy_bits: mixture_entropy,
        slack_bits: mixture_entropy - lhs,
        weights,
    })
}
