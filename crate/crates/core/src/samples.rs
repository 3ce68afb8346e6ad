//! Reference graphs and seeded random generators used by tests, benches and
//! the command-line corpus.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contfrac::CoprimePair;
use crate::graph::PlumbingGraph;
use crate::seifert::SeifertData;

/// Two nodes of degree 4 (weights −4) joined by an edge, each carrying
/// three −2 leaves. θ = 2/3.
pub fn two_branching() -> PlumbingGraph {
    let ids = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"];
    PlumbingGraph::with_ids(
        &ids,
        &[-2, -4, -2, -2, -4, -2, -2, -2],
        &[(0, 1), (1, 4), (4, 6), (1, 2), (1, 3), (4, 5), (4, 7)],
    )
    .expect("valid sample")
}

/// A −13 vertex between two −1 vertices, each with legs −2 and −3.
/// Not minimal, det Q = −1, θ = −10.
pub fn two_bad_minus_one() -> PlumbingGraph {
    let ids = ["v0", "v1", "v2", "v3", "v4", "v5", "v6"];
    PlumbingGraph::with_ids(
        &ids,
        &[-13, -1, -2, -3, -1, -2, -3],
        &[(2, 1), (3, 1), (1, 0), (0, 4), (4, 5), (4, 6)],
    )
    .expect("valid sample")
}

/// Two −2 nodes joined by an edge, each with three −4 leaves. Two bad
/// vertices, det Q = 2304, θ = −18.
pub fn non_almost_rational() -> PlumbingGraph {
    let ids = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"];
    PlumbingGraph::with_ids(
        &ids,
        &[-4, -4, -4, -2, -2, -4, -4, -4],
        &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7)],
    )
    .expect("valid sample")
}

/// Linear chain `(-3, -3)`.
pub fn chain_33() -> PlumbingGraph {
    PlumbingGraph::from_weights(&[-3, -3], &[(0, 1)]).expect("valid sample")
}

/// The three reference graphs above.
pub fn reference_graphs() -> Vec<PlumbingGraph> {
    vec![two_branching(), two_bad_minus_one(), non_almost_rational()]
}

/// Random trees on `1..=max_n` vertices, each vertex attached to a uniformly
/// chosen earlier one, weights in `-7..=-2` with an occasional `-1`.
/// Only negative-definite draws are kept.
pub fn random_definite_trees(seed: u64, count: usize, max_n: usize) -> Vec<PlumbingGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = random_tree(&mut rng, max_n);
        if g.is_negative_definite() {
            out.push(g);
        }
    }
    out
}

fn random_tree(rng: &mut ChaCha8Rng, max_n: usize) -> PlumbingGraph {
    let n = rng.random_range(1..=max_n.max(1));
    let weights: Vec<i64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.08) {
                -1
            } else {
                -rng.random_range(2..=7)
            }
        })
        .collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    PlumbingGraph::from_weights(&weights, &edges).expect("random tree is valid")
}

/// Random Seifert data with `k <= max_k` legs, `p_i <= max_p`,
/// `e₀ ∈ [-10, -1]` and negative Euler number.
pub fn random_seifert_data(seed: u64, count: usize, max_k: usize, max_p: i64) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let e0 = rng.random_range(-10..=-1i64);
        let k = rng.random_range(0..=max_k);
        let legs = (0..k).map(|_| random_pair(&mut rng, max_p)).collect();
        let sd = SeifertData::new(BigInt::from(e0), legs);
        if sd.validate().is_ok() {
            out.push(sd);
        }
    }
    out
}

/// Uniform coprime pair `0 < q < p <= max_p` by rejection.
pub fn random_pair(rng: &mut ChaCha8Rng, max_p: i64) -> CoprimePair {
    loop {
        let p = rng.random_range(2..=max_p.max(2));
        let q = rng.random_range(1..p);
        if let Ok(pair) = CoprimePair::from_ints(p, q) {
            return pair;
        }
    }
}

/// Seeded generator shared by callers that need extra draws.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
