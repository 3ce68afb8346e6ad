//! Exact linear algebra over the intersection lattice.
//!
//! This is the "oracle" side of the crate: θ computed straight from the
//! definition `K² + N - 2` with `K² = zᵀ Q⁻¹ z`, together with the leg
//! identities and the Schur-complement decomposition of star-shaped forms
//! that the closed formulas are built from.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{hj_eval, i_sum, HJExpansion};
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::matrix::{dot, IntegerMatrix, RationalMatrix, RationalVector};

pub use crate::matrix::{inverse, solve};

/// `K_can` in the dual basis: `a_v - 2` at every vertex.
pub fn canonical_vector(g: &PlumbingGraph) -> RationalVector {
    canonical_ints(g).into_iter().map(BigRational::from).collect()
}

pub fn canonical_ints(g: &PlumbingGraph) -> Vec<BigInt> {
    (0..g.len()).map(|v| g.a(v) - 2).collect()
}

/// `zᵀ Q⁻¹ z`.
pub fn quad_form_inv(q: &IntegerMatrix, z: &[BigRational]) -> Result<BigRational> {
    let x = solve(q, z)?;
    Ok(dot(z, &x))
}

/// `K_can² + N - 2` by a direct solve.
pub fn theta_oracle(g: &PlumbingGraph) -> Result<BigRational> {
    let q = g.intersection_matrix();
    if !q.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let k2 = quad_form_inv(&q, &canonical_vector(g))?;
    Ok(k2 + BigRational::from(BigInt::from(g.len())) - BigRational::from_integer(2.into()))
}

/// `K_can² = zᵀ Q⁻¹ z` for a negative-definite graph.
pub fn canonical_square(g: &PlumbingGraph) -> Result<BigRational> {
    let q = g.intersection_matrix();
    if !q.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    quad_form_inv(&q, &canonical_vector(g))
}

/// True iff every entry of `-Q⁻¹` is strictly positive.
pub fn stieltjes_positive(q: &IntegerMatrix) -> Result<bool> {
    let inv = inverse(q)?;
    let positive = inv.entries().all(|x| x.is_negative());
    Ok(positive)
}

pub fn negative_inverse(q: &IntegerMatrix) -> Result<RationalMatrix> {
    Ok(inverse(q)?.negated())
}

/// `(wᵀA⁻¹w, uᵀA⁻¹w)` for the tridiagonal leg matrix of `e`, from the
/// closed forms in `p`, `q`, `q*` and `I(p/q)`.
pub fn leg_closed_form(e: &HJExpansion) -> (BigRational, BigRational) {
    let pq = hj_eval(e);
    let p = pq.p().clone();
    let q = pq.q().clone();
    let n = BigInt::from(e.len());
    let ww = BigRational::from(BigInt::from(2) - i_sum(e) - n) - BigRational::new(&q + pq.q_star() + 2, p.clone());
    let uw = BigRational::new(&q + 1 - &p, p);
    (ww, uw)
}

/// The same pair as [`leg_closed_form`], by solving `A c = w` directly.
pub fn leg_oracle(e: &HJExpansion) -> (BigRational, BigRational) {
    let w: RationalVector = e.terms().iter().map(|a| BigRational::from(a - 2)).collect();
    let c = leg_solve(e, &w).expect("leg matrices are negative definite");
    (dot(&w, &c), c[0].clone())
}

/// Solve `A x = b` for the tridiagonal matrix with diagonal `-a_i` and unit
/// off-diagonals (Gaussian elimination, no pivoting).
pub fn leg_solve(e: &HJExpansion, b: &[BigRational]) -> Result<RationalVector> {
    let n = e.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut upper = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for (i, a) in e.terms().iter().enumerate() {
        let mut pivot = BigRational::from(-a);
        let mut r = b[i].clone();
        if i > 0 {
            pivot -= &upper[i - 1];
            r -= &rhs[i - 1];
        }
        if pivot.is_zero() {
            return Err(Error::Singular);
        }
        let inv = pivot.recip();
        upper.push(inv.clone());
        rhs.push(r * inv);
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        x[i] = if i + 1 < n {
            &rhs[i] - &upper[i] * &x[i + 1]
        } else {
            rhs[i].clone()
        };
    }
    Ok(x)
}

/// Result of the block decomposition of a star-shaped form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurDecomposition {
    /// `Δ = e₀ - Σ (A_i⁻¹)₁₁`.
    pub delta: BigRational,
    /// `Σ z_iᵀA_i⁻¹z_i + (z₀ - Σ u_iᵀA_i⁻¹z_i)² / Δ`.
    pub value: BigRational,
}

/// `zᵀ Q⁻¹ z` for the star with center weight `e0` and the given legs,
/// assembled from per-leg solves and the Schur complement of the legs.
pub fn schur_decompose(
    e0: &BigInt,
    legs: &[(HJExpansion, RationalVector)],
    z0: &BigRational,
) -> Result<SchurDecomposition> {
    let mut delta = BigRational::from(e0.clone());
    let mut leg_sum = BigRational::zero();
    let mut coupling = BigRational::zero();
    for (e, z) in legs {
        let x = leg_solve(e, z)?;
        leg_sum += dot(z, &x);
        coupling += &x[0];
        let mut unit = vec![BigRational::zero(); e.len()];
        unit[0] = BigRational::one();
        delta -= &leg_solve(e, &unit)?[0];
    }
    if delta.is_zero() {
        return Err(Error::ZeroSchurComplement);
    }
    let centre = z0 - coupling;
    let value = leg_sum + &centre * &centre / &delta;
    Ok(SchurDecomposition { delta, value })
}

/// Check a candidate embedding `φ` of the plumbing lattice into
/// `(Zᴺ, -I)`: pairings match adjacency, self-pairings match weights, and
/// `Q(φ(v), K) + Q(φ(v), φ(v)) = -2` with `K = Σ E_i`.
pub fn verify_ssw_embedding(g: &PlumbingGraph, phi: &[Vec<BigInt>]) -> Result<bool> {
    let n = g.len();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.len(),
        });
    }
    if let Some(bad) = phi.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let form = |x: &[BigInt], y: &[BigInt]| -> BigInt { -x.iter().zip(y).map(|(a, b)| a * b).sum::<BigInt>() };
    let q = g.intersection_matrix();
    for u in 0..n {
        for v in 0..n {
            if form(&phi[u], &phi[v]) != q[(u, v)] {
                return Ok(false);
            }
        }
        let with_k: BigInt = -phi[u].iter().sum::<BigInt>();
        if with_k + form(&phi[u], &phi[u]) != BigInt::from(-2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q x` for an integer vector.
pub fn apply(q: &IntegerMatrix, x: &[BigInt]) -> Vec<BigInt> {
    q.rows()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
