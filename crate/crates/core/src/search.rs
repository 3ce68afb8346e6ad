//! Symmetric stars with θ = −2: the reduced closed form, the integer
//! condition, the three infinite families and a complete bounded search.
//! Also an experimental sampler over small general trees.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::contfrac::CoprimePair;
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::recursion::theta;
use crate::seifert::SeifertData;

/// Star with `k` legs, each a chain of `ℓ` vertices of weight −2, and
/// center of weight `-b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetricStar {
    pub ell: i64,
    pub k: i64,
    pub b: i64,
}

impl SymmetricStar {
    pub fn new(ell: i64, k: i64, b: i64) -> Result<Self> {
        if ell < 1 || k < 1 || b < 1 {
            return Err(Error::InvalidParameter(format!(
                "symmetric star needs ℓ, k, b >= 1, got ({ell}, {k}, {b})"
            )));
        }
        Ok(SymmetricStar { ell, k, b })
    }

    pub fn vertex_count(&self) -> i64 {
        1 + self.k * self.ell
    }

    /// `-b + kℓ/(ℓ+1)`.
    pub fn euler_number(&self) -> BigRational {
        BigRational::from(BigInt::from(-self.b)) + BigRational::new((self.k * self.ell).into(), (self.ell + 1).into())
    }

    /// `(-b; ℓ/(ℓ+1), …, ℓ/(ℓ+1))`.
    pub fn to_seifert(&self) -> SeifertData {
        let leg = CoprimePair::from_ints(self.ell + 1, self.ell).expect("consecutive integers are coprime");
        SeifertData::new(BigInt::from(-self.b), vec![leg; self.k as usize])
    }
}

impl fmt::Display for SymmetricStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.ell, self.k, self.b)
    }
}

/// `kℓ - 1 + (b-2)² / (-b + kℓ/(ℓ+1))`.
pub fn symmetric_theta(s: &SymmetricStar) -> Result<BigRational> {
    let e = s.euler_number();
    if !e.is_negative() {
        return Err(Error::NonNegativeEuler(e));
    }
    let b2 = BigRational::from(BigInt::from(s.b - 2));
    Ok(BigRational::from(BigInt::from(s.k * s.ell - 1)) + &b2 * &b2 / e)
}

/// Both sides of `(ℓ+1)(b-2)² = (kℓ+1)((ℓ+1)b - kℓ)`.
pub fn condition_sides(s: &SymmetricStar) -> (BigInt, BigInt) {
    let (ell, k, b) = (BigInt::from(s.ell), BigInt::from(s.k), BigInt::from(s.b));
    let kl = &k * &ell;
    let lhs = (&ell + 1) * (&b - 2) * (&b - 2);
    let rhs = (&kl + 1) * ((&ell + 1) * &b - &kl);
    (lhs, rhs)
}

pub fn condition_theta_two(s: &SymmetricStar) -> bool {
    let (lhs, rhs) = condition_sides(s);
    lhs == rhs
}

/// Family members: (1) `k = b = 4ℓ+4`; (2) `k = ℓ²+3ℓ+3`, `b = k+1`;
/// (3) `k = 4ℓ²-3`, `b = k+4`.
pub fn family(ell: i64, id: u8) -> Result<SymmetricStar> {
    if ell < 1 {
        return Err(Error::InvalidParameter(format!("ℓ = {ell} must be at least 1")));
    }
    let (k, b) = match id {
        1 => (4 * ell + 4, 4 * ell + 4),
        2 => {
            let k = ell * ell + 3 * ell + 3;
            (k, k + 1)
        }
        3 => {
            let k = 4 * ell * ell - 3;
            (k, k + 4)
        }
        _ => return Err(Error::InvalidParameter(format!("family id {id} must be 1, 2 or 3"))),
    };
    SymmetricStar::new(ell, k, b)
}

/// `(id, member)` for every family and `1 <= ℓ <= max_ell`, ordered by
/// family then `ℓ`.
pub fn family_members(max_ell: i64) -> Vec<(u8, SymmetricStar)> {
    (1..=3u8)
        .flat_map(|id| (1..=max_ell).map(move |ell| (id, family(ell, id).expect("valid parameters"))))
        .collect()
}

/// Solutions not covered by any family.
pub const SPORADIC: [SymmetricStar; 5] = [
    SymmetricStar { ell: 1, k: 4, b: 7 },
    SymmetricStar { ell: 2, k: 3, b: 9 },
    SymmetricStar { ell: 1, k: 7, b: 4 },
    SymmetricStar { ell: 1, k: 8, b: 5 },
    SymmetricStar { ell: 1, k: 9, b: 7 },
];

/// Whether `s` equals `family(s.ell, id)` for some id.
pub fn in_family(s: &SymmetricStar) -> Option<u8> {
    (1..=3u8).find(|&id| family(s.ell, id).is_ok_and(|f| f == *s))
}

/// Every symmetric star with at most `max_vertices` vertices satisfying the
/// condition, sorted by vertex count and then `(ℓ, k, b)`. Stars with
/// `k < 3` are included only on request.
///
/// Negativity of the Euler number forces `b > kℓ/(ℓ+1)`. The condition is
/// a quadratic in `b` with root sum `kℓ + 5` and positive root product, so
/// every solution has `b < kℓ + 5`.
pub fn search_theta_two(max_vertices: i64, include_small_k: bool) -> Vec<SymmetricStar> {
    let mut hits = Vec::new();
    let min_k = if include_small_k { 1 } else { 3 };
    for ell in 1..max_vertices {
        for k in min_k..max_vertices {
            if 1 + k * ell > max_vertices {
                break;
            }
            let lo = k * ell / (ell + 1) + 1;
            for b in lo..=k * ell + 5 {
                let s = SymmetricStar { ell, k, b };
                if condition_theta_two(&s) {
                    hits.push(s);
                }
            }
        }
    }
    hits.sort_by_key(|s| (s.vertex_count(), s.ell, s.k, s.b));
    hits
}

/// θ of the assembled star by the tree recursion.
pub fn verify_by_tree(s: &SymmetricStar) -> Result<BigRational> {
    theta(&crate::seifert::star_graph(&s.to_seifert())?)
}

/// Experimental bounded sampler: minimal negative-definite trees with at
/// most `max_vertices` vertices and weights in `[-max_weight, -2]` whose θ
/// is −2, one representative per isomorphism class. Not a classifier.
pub fn search_general_theta_two(max_vertices: usize, max_weight: i64) -> Result<Vec<PlumbingGraph>> {
    let target = BigRational::from(BigInt::from(-2));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for shape in tree_shapes(n) {
            let mut weights = vec![2i64; n];
            loop {
                let key = canonical_form(n, &shape, &weights);
                if !seen.contains(&key) {
                    let w: Vec<i64> = weights.iter().map(|a| -a).collect();
                    let g = PlumbingGraph::from_weights(&w, &shape)?;
                    if g.is_negative_definite() && theta(&g)? == target {
                        out.push(g);
                    }
                    seen.insert(key);
                }
                if !bump(&mut weights, 2, max_weight) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn bump(w: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in w.iter_mut().rev() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// One edge list per unlabeled tree on `n` vertices.
fn tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    loop {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (parent[i], i)).collect();
        if seen.insert(canonical_form(n, &edges, &vec![0; n])) {
            out.push(edges);
        }
        // Next parent array with parent[i] < i.
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            if parent[i] + 1 < i {
                parent[i] += 1;
                break;
            }
            parent[i] = 0;
        }
    }
}

/// Isomorphism-invariant string of a vertex-labelled tree: the least
/// rooted encoding over its centers.
fn canonical_form(n: usize, edges: &[(usize, usize)], labels: &[i64]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    centers(&adj)
        .into_iter()
        .map(|c| encode(&adj, labels, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn encode(adj: &[Vec<usize>], labels: &[i64], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode(adj, labels, u, v))
        .collect();
    kids.sort();
    format!("({}{})", labels[v], kids.concat())
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{star_graph, theta_seifert};

    fn s(ell: i64, k: i64, b: i64) -> SymmetricStar {
        SymmetricStar::new(ell, k, b).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn sporadic_sides() {
        let expected = [50, 147, 8, 18, 50];
        for (st, v) in SPORADIC.iter().zip(expected) {
            assert_eq!(condition_sides(st), (BigInt::from(v), BigInt::from(v)), "{st}");
            assert_eq!(symmetric_theta(st).unwrap(), r(-2));
            assert_eq!(in_family(st), None);
        }
    }

    #[test]
    fn four_vertex_case_has_no_solution() {
        assert!(symmetric_theta(&s(1, 3, 7)).unwrap() != r(-2));
        assert!((2..=200).all(|b| !condition_theta_two(&s(1, 3, b))));
        assert!(search_theta_two(4, false).is_empty());
    }

    #[test]
    fn families() {
        assert_eq!(family(1, 1).unwrap(), s(1, 8, 8));
        assert_eq!(family(1, 3).unwrap(), s(1, 1, 5));
        for n in 2..8 {
            assert_eq!(family(n - 1, 2).unwrap().k, n * n + n + 1);
        }
        assert!(family(0, 1).is_err());
        assert!(family(1, 4).is_err());
        for (_, m) in family_members(10) {
            assert!(condition_theta_two(&m), "{m}");
        }
    }

    #[test]
    fn search_results() {
        assert_eq!(search_theta_two(5, false), vec![s(1, 4, 7)]);
        let hits = search_theta_two(10, false);
        for t in [s(1, 7, 4), s(1, 8, 5), s(1, 9, 7)] {
            assert!(hits.contains(&t));
        }
        assert!(hits.windows(2).all(|w| w[0].vertex_count() <= w[1].vertex_count()));
        assert!(search_theta_two(2, true).contains(&s(1, 1, 5)));
    }

    #[test]
    fn hits_cross_check() {
        for h in search_theta_two(16, true) {
            assert_eq!(verify_by_tree(&h).unwrap(), r(-2), "{h}");
            assert_eq!(theta_seifert(&h.to_seifert()).unwrap(), r(-2));
        }
    }

    #[test]
    fn condition_matches_theta() {
        for ell in 1..=3 {
            for k in 1..=20 {
                for b in 1..=60 {
                    let st = s(ell, k, b);
                    if let Ok(t) = symmetric_theta(&st) {
                        assert_eq!(t == r(-2), condition_theta_two(&st), "{st}");
                    }
                }
            }
        }
        assert!(matches!(symmetric_theta(&s(1, 4, 2)), Err(Error::NonNegativeEuler(_))));
    }

    #[test]
    fn star_size() {
        let g = star_graph(&s(2, 3, 9).to_seifert()).unwrap();
        assert_eq!(g.len() as i64, s(2, 3, 9).vertex_count());
    }

    #[test]
    fn tree_shape_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| tree_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn general_sampler() {
        let hits = search_general_theta_two(1, 6).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].weight(0), &BigInt::from(-4));
        for g in search_general_theta_two(5, 7).unwrap() {
            assert_eq!(theta(&g).unwrap(), r(-2));
            assert!(g.is_minimal());
        }
        let found = search_general_theta_two(5, 7).unwrap();
        assert!(found
            .iter()
            .any(|g| g.len() == 5 && g.is_star() && g.weights().contains(&BigInt::from(-7))));
    }
}
