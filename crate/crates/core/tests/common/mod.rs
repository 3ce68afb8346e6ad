//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use plumbing_core::{samples, PlumbingGraph};

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The three reference graphs followed by 100 random negative-definite
/// trees with at most 12 vertices.
pub fn corpus() -> Vec<PlumbingGraph> {
    let mut out = samples::reference_graphs();
    out.extend(samples::random_definite_trees(2024, 100, 12));
    out
}

/// Exhaustive maximum of `cᵀK + cᵀQc` over `c ∈ [-bound, bound]^N`,
/// returning `(K² + 4·max, lexicographically first argmax)`.
///
/// Walks the box as an odometer, updating `Qc` and the objective
/// incrementally in machine integers.
pub fn box_max_k_squared(g: &PlumbingGraph, k_squared: &BigRational, bound: i64) -> (BigRational, Vec<i64>) {
    let n = g.len();
    let q: Vec<Vec<i64>> = g
        .intersection_matrix()
        .rows()
        .map(|row| row.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    let z: Vec<i64> = (0..n).map(|v| (g.a(v) - BigInt::from(2)).to_i64().unwrap()).collect();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| q[i][j] != 0).collect()).collect();

    let mut c = vec![-bound; n];
    let mut qc: Vec<i64> = (0..n).map(|i| (0..n).map(|j| q[i][j] * c[j]).sum()).collect();
    let mut value: i64 = (0..n).map(|i| c[i] * z[i] + c[i] * qc[i]).sum();
    let mut best = (value, c.clone());

    let shift = |i: usize, delta: i64, c: &mut Vec<i64>, qc: &mut Vec<i64>, value: &mut i64| {
        *value += delta * (z[i] + 2 * qc[i]) + delta * delta * q[i][i];
        for &j in &nbrs[i] {
            qc[j] += delta * q[j][i];
        }
        c[i] += delta;
    };

    'outer: loop {
        let mut i = n;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if c[i] < bound {
                shift(i, 1, &mut c, &mut qc, &mut value);
                break;
            }
            shift(i, -2 * bound, &mut c, &mut qc, &mut value);
        }
        if value > best.0 {
            best = (value, c.clone());
        }
    }
    (k_squared + BigRational::from(BigInt::from(4 * best.0)), best.1)
}
