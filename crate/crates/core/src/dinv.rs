//! Heegaard Floer correction term of the canonical Spin^c structure:
//! maximize `k² = (K + 2Qc)ᵀ Q⁻¹ (K + 2Qc)` over integer `c`, then
//! `d = (max k² + N)/4`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::{canonical_ints, canonical_vector, quad_form_inv, solve};
use crate::matrix::{dot, IntegerMatrix};
use crate::recursion::theta;

/// Outcome of the characteristic-vector search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSearchResult {
    pub max_k_squared: BigRational,
    /// Lexicographically smallest maximizer.
    pub argmax_c: Vec<BigInt>,
    /// Number of lattice points whose value was evaluated.
    pub explored: u64,
}

/// Everything reported for the correction term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DInvariantReport {
    pub search: CharSearchResult,
    pub d: BigRational,
    pub lower_bound: BigRational,
    pub gap: BigRational,
    /// At most one bad vertex.
    pub almost_rational: bool,
    /// Laufer rationality; implies `gap == 0`.
    pub rational: bool,
}

fn require_definite(g: &PlumbingGraph) -> Result<IntegerMatrix> {
    let q = g.intersection_matrix();
    if !q.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    Ok(q)
}

fn check_len(g: &PlumbingGraph, c: &[impl Sized]) -> Result<()> {
    if c.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: g.len(),
            found: c.len(),
        });
    }
    Ok(())
}

/// `k² = kᵀQ⁻¹k` for `k = K_can + 2Qc`, in dual coordinates.
pub fn k_squared_of(g: &PlumbingGraph, c: &[BigInt]) -> Result<BigRational> {
    check_len(g, c)?;
    let q = require_definite(g)?;
    k_squared_with(&q, &canonical_ints(g), c)
}

fn k_squared_with(q: &IntegerMatrix, z: &[BigInt], c: &[BigInt]) -> Result<BigRational> {
    let n = q.dim();
    let k: Vec<BigRational> = (0..n)
        .map(|i| {
            let qc: BigInt = (0..n).map(|j| &q[(i, j)] * &c[j]).sum();
            BigRational::from(&z[i] + BigInt::from(2) * qc)
        })
        .collect();
    quad_form_inv(q, &k)
}

/// The expanded form `K² + 4cᵀK + 4cᵀQc`, valid for rational `c`.
pub fn k_squared_expanded(g: &PlumbingGraph, c: &[BigRational]) -> Result<BigRational> {
    check_len(g, c)?;
    let q = require_definite(g)?;
    let z = canonical_vector(g);
    let k2 = quad_form_inv(&q, &z)?;
    let qc = q.mul_vec(c);
    let four = BigRational::from(BigInt::from(4));
    Ok(k2 + &four * dot(c, &z) + four * dot(c, &qc))
}

/// Continuous maximizer `c* = -Q⁻¹K/2`.
pub fn continuous_optimum(g: &PlumbingGraph) -> Result<Vec<BigRational>> {
    let q = require_definite(g)?;
    let x = solve(&q, &canonical_vector(g))?;
    let half = BigRational::new((-1).into(), 2.into());
    Ok(x.into_iter().map(|v| v * &half).collect())
}

/// Exact `M = L D Lᵀ` for positive-definite integer `M`; returns the strict
/// lower part of `L` and the diagonal `D`.
fn ldl(m: &IntegerMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = m.dim();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = BigRational::from(m[(j, j)].clone());
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        for i in j + 1..n {
            let mut v = BigRational::from(m[(i, j)].clone());
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    (l, d)
}

/// Integer upper bound for `sqrt(t)`, `t >= 0`.
fn sqrt_ceil(t: &BigRational) -> BigInt {
    let fl = t.floor().to_integer();
    fl.sqrt() + 1
}

struct Search<'a> {
    l: &'a [Vec<BigRational>],
    d: &'a [BigRational],
    center: &'a [BigRational],
    /// `Σ d_i y_i²` bound; shrinks as better points appear.
    radius: BigRational,
    best: Option<(BigRational, Vec<BigInt>)>,
    explored: u64,
    c: Vec<BigInt>,
}

impl Search<'_> {
    /// Fix coordinates `n-1, …, i` depth first; `partial` is the
    /// contribution of the fixed ones.
    fn descend(&mut self, i: usize, partial: BigRational) {
        let n = self.c.len();
        // Center of coordinate i given c_{i+1..n}.
        let mut mid = self.center[i].clone();
        for j in i + 1..n {
            mid -= &self.l[j][i] * (BigRational::from(self.c[j].clone()) - &self.center[j]);
        }
        let rem = &self.radius - &partial;
        if rem.is_negative() {
            return;
        }
        let s = BigRational::from(sqrt_ceil(&(&rem / &self.d[i])));
        let lo = (&mid - &s).ceil().to_integer();
        let hi = (&mid + &s).floor().to_integer();
        let mut x = lo;
        while x <= hi {
            let y = BigRational::from(x.clone()) - &mid;
            let part = &partial + &self.d[i] * &y * &y;
            if part <= self.radius {
                self.c[i] = x.clone();
                if i == 0 {
                    self.leaf(part);
                } else {
                    self.descend(i - 1, part);
                }
            }
            x += 1;
        }
    }

    fn leaf(&mut self, value: BigRational) {
        self.explored += 1;
        let better = match &self.best {
            None => true,
            Some((bv, bc)) => value < *bv || (value == *bv && self.c < *bc),
        };
        if better {
            self.radius = value.clone();
            self.best = Some((value, self.c.clone()));
        }
    }
}

/// Exact integer maximum of `k²` over the canonical Spin^c class.
///
/// With `M = -Q` and `c* = M⁻¹K/2`, maximizing `k²` is minimizing
/// `(c - c*)ᵀM(c - c*)`. The search is seeded with `round(c*)` and then
/// exhausts the ellipsoid around `c*` using per-coordinate bounds from the
/// exact `LDLᵀ` factorization of `M`.
pub fn max_k_squared(g: &PlumbingGraph) -> Result<CharSearchResult> {
    let q = require_definite(g)?;
    let z = canonical_ints(g);
    let n = g.len();
    let m = q.negated();
    let center = continuous_optimum(g)?;
    let (l, d) = ldl(&m);

    let seed: Vec<BigInt> = center.iter().map(|x| x.round().to_integer()).collect();
    let radius = ellipsoid_value(&m, &center, &seed);

    let mut search = Search {
        l: &l,
        d: &d,
        center: &center,
        radius,
        best: None,
        explored: 0,
        c: vec![BigInt::zero(); n],
    };
    search.descend(n - 1, BigRational::zero());
    let (_, argmax_c) = search.best.expect("seed lies inside the search region");
    let max_k_squared = k_squared_with(&q, &z, &argmax_c)?;
    Ok(CharSearchResult {
        max_k_squared,
        argmax_c,
        explored: search.explored,
    })
}

/// `(c - c*)ᵀ M (c - c*)`.
fn ellipsoid_value(m: &IntegerMatrix, center: &[BigRational], c: &[BigInt]) -> BigRational {
    let y: Vec<BigRational> = c
        .iter()
        .zip(center)
        .map(|(ci, xi)| BigRational::from(ci.clone()) - xi)
        .collect();
    dot(&y, &m.mul_vec(&y))
}

/// `d(Y, s_can) = (max k² + N)/4`, via the cited formula for negative
/// definite plumbed rational homology spheres.
pub fn d_canonical(g: &PlumbingGraph) -> Result<BigRational> {
    Ok(d_from_max(g, &max_k_squared(g)?.max_k_squared))
}

fn d_from_max(g: &PlumbingGraph, max: &BigRational) -> BigRational {
    (max + BigRational::from(BigInt::from(g.len()))) / BigRational::from(BigInt::from(4))
}

/// `(θ(ξ_can) + 2)/4`.
pub fn d_lower_bound(g: &PlumbingGraph) -> Result<BigRational> {
    let t = theta(g)?;
    Ok((t + BigRational::from(BigInt::from(2))) / BigRational::from(BigInt::from(4)))
}

/// `d_canonical - d_lower_bound = (max k² - K²)/4`.
pub fn d_gap(g: &PlumbingGraph) -> Result<BigRational> {
    Ok(d_report(g)?.gap)
}

/// One search, all derived quantities.
pub fn d_report(g: &PlumbingGraph) -> Result<DInvariantReport> {
    let search = max_k_squared(g)?;
    let d = d_from_max(g, &search.max_k_squared);
    let lower_bound = d_lower_bound(g)?;
    let gap = &d - &lower_bound;
    Ok(DInvariantReport {
        search,
        d,
        lower_bound,
        gap,
        almost_rational: g.is_almost_rational_proxy(),
        rational: g.is_rational(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::seifert::{star_graph, theta_seifert, SeifertData};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn non_almost_rational_values() {
        let g = samples::non_almost_rational();
        assert_eq!(k_squared_of(&g, &ints(&[0; 8])).unwrap(), r(-24, 1));
        assert_eq!(k_squared_of(&g, &ints(&[1, 1, 1, 3, 3, 1, 1, 1])).unwrap(), r(0, 1));
        let res = max_k_squared(&g).unwrap();
        assert_eq!(res.max_k_squared, r(0, 1));
        assert_eq!(res.argmax_c, ints(&[1, 1, 1, 3, 3, 1, 1, 1]));
        let rep = d_report(&g).unwrap();
        assert_eq!(rep.d, r(2, 1));
        assert_eq!(rep.lower_bound, r(-4, 1));
        assert_eq!(rep.gap, r(6, 1));
        assert!(!rep.almost_rational);
    }

    #[test]
    fn two_branching_has_no_gap() {
        let g = samples::two_branching();
        assert_eq!(d_canonical(&g).unwrap(), r(2, 3));
        assert_eq!(d_lower_bound(&g).unwrap(), r(2, 3));
        assert_eq!(d_gap(&g).unwrap(), r(0, 1));
    }

    #[test]
    fn single_vertex() {
        let g = PlumbingGraph::from_weights(&[-2], &[]).unwrap();
        assert_eq!(k_squared_of(&g, &ints(&[0])).unwrap(), r(0, 1));
        let res = max_k_squared(&g).unwrap();
        assert_eq!(res.max_k_squared, r(0, 1));
        assert_eq!(res.argmax_c, ints(&[0]));
        assert_eq!(d_canonical(&g).unwrap(), r(1, 4));
        assert_eq!(d_gap(&g).unwrap(), r(0, 1));
    }

    #[test]
    fn expanded_form_agrees() {
        for g in samples::random_definite_trees(3, 20, 8) {
            let c: Vec<BigInt> = (0..g.len()).map(|i| BigInt::from(i as i64 % 3 - 1)).collect();
            let cr: Vec<BigRational> = c.iter().cloned().map(BigRational::from).collect();
            assert_eq!(k_squared_of(&g, &c).unwrap(), k_squared_expanded(&g, &cr).unwrap());
        }
    }

    #[test]
    fn rational_stars_meet_the_bound() {
        for sd in samples::random_seifert_data(8, 15, 4, 9) {
            let g = star_graph(&sd).unwrap();
            if !g.is_rational() {
                continue;
            }
            let expected = (theta_seifert(&sd).unwrap() + r(2, 1)) / r(4, 1);
            assert_eq!(d_canonical(&g).unwrap(), expected, "{sd}");
        }
        let sd = SeifertData::from_ints(-7, &[(2, 1); 4]).unwrap();
        assert_eq!(d_canonical(&star_graph(&sd).unwrap()).unwrap(), r(0, 1));
    }

    #[test]
    fn non_rational_star_has_a_gap() {
        // Center −2 with six legs; K_can is not the maximizer.
        let g = PlumbingGraph::from_weights(
            &[-4, -5, -2, -5, -4, -6, -2, -6, -2, -2],
            &[(0, 1), (0, 2), (2, 3), (2, 4), (2, 5), (2, 6), (6, 7), (2, 8), (7, 9)],
        )
        .unwrap();
        assert!(g.is_star() && g.is_almost_rational_proxy() && !g.is_rational());
        let rep = d_report(&g).unwrap();
        assert_eq!(rep.search.max_k_squared, r(-129, 16));
        assert_eq!(crate::lattice::canonical_square(&g).unwrap(), r(-2049, 16));
        assert_eq!(rep.gap, r(30, 1));
    }

    #[test]
    fn rejects_indefinite_and_bad_lengths() {
        let g = PlumbingGraph::from_weights(&[-1, -1], &[(0, 1)]).unwrap();
        assert_eq!(max_k_squared(&g), Err(Error::NotNegativeDefinite));
        let g = samples::chain_33();
        assert!(matches!(
            k_squared_of(&g, &ints(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
