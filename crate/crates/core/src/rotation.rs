//! Rotation vectors of Legendrian realizations, their θ values, and the
//! strict minimization of θ at the canonical vector.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::inverse;

/// Default bound on the number of enumerated vectors.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Integer vector `z` indexed by vertex, `|z_v| <= a_v - 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotationVector(pub Vec<BigInt>);

impl RotationVector {
    pub fn from_ints(z: &[i64]) -> Self {
        RotationVector(z.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `c = (a_v - 2)_v`.
    pub fn canonical(g: &PlumbingGraph) -> Self {
        RotationVector((0..g.len()).map(|v| g.a(v) - BigInt::from(2)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        RotationVector(self.0.iter().map(|x| -x).collect())
    }

    /// Box bound and, when `parity` is set, `z_v ≡ a_v (mod 2)`.
    pub fn validate(&self, g: &PlumbingGraph, parity: bool) -> Result<()> {
        if self.0.len() != g.len() {
            return Err(Error::DimensionMismatch {
                expected: g.len(),
                found: self.0.len(),
            });
        }
        for (v, z) in self.0.iter().enumerate() {
            let bound = g.a(v) - BigInt::from(2);
            if bound.is_negative() {
                return Err(Error::NotMinimal(g.id(v).to_string()));
            }
            if z.abs() > bound {
                return Err(Error::InvalidRotation(format!(
                    "|z| = {} exceeds a - 2 = {bound} at `{}`",
                    z.abs(),
                    g.id(v)
                )));
            }
            if parity && (z - &bound) % 2 != BigInt::zero() {
                return Err(Error::InvalidRotation(format!(
                    "z = {z} has the wrong parity at `{}`",
                    g.id(v)
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RotationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Consistent,
    Inconsistent,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Consistent => "consistent",
            Classification::Inconsistent => "inconsistent",
        })
    }
}

fn require_minimal(g: &PlumbingGraph) -> Result<()> {
    match (0..g.len()).find(|&v| g.a(v) < BigInt::from(2)) {
        Some(v) => Err(Error::NotMinimal(g.id(v).to_string())),
        None => Ok(()),
    }
}

/// Number of vectors `enumerate_rotations` yields: `Π(a_v - 1)` with parity,
/// `Π(2a_v - 3)` without.
pub fn enumeration_size(g: &PlumbingGraph, parity: bool) -> Result<BigInt> {
    require_minimal(g)?;
    Ok((0..g.len())
        .map(|v| {
            if parity {
                g.a(v) - 1
            } else {
                BigInt::from(2) * g.a(v) - 3
            }
        })
        .product())
}

/// Lexicographic enumeration, first vertex most significant.
pub struct Rotations {
    lo: Vec<i64>,
    hi: Vec<i64>,
    step: i64,
    current: Vec<i64>,
    done: bool,
}

impl Rotations {
    /// Step the odometer in place; `false` once exhausted.
    fn advance(&mut self) -> bool {
        for i in (0..self.current.len()).rev() {
            if self.current[i] + self.step <= self.hi[i] {
                self.current[i] += self.step;
                return true;
            }
            self.current[i] = self.lo[i];
        }
        false
    }
}

impl Iterator for Rotations {
    type Item = RotationVector;

    fn next(&mut self) -> Option<RotationVector> {
        if self.done {
            return None;
        }
        let out = RotationVector::from_ints(&self.current);
        self.done = !self.advance();
        Some(out)
    }
}

/// All `z` with `|z_v| <= a_v - 2`, restricted to `z_v ≡ a_v (mod 2)` when
/// `parity` is set.
pub fn enumerate_rotations(g: &PlumbingGraph, parity: bool) -> Result<Rotations> {
    require_minimal(g)?;
    let hi: Vec<i64> = (0..g.len())
        .map(|v| {
            (g.a(v) - BigInt::from(2))
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter(format!("weight at `{}` is too large to enumerate", g.id(v))))
        })
        .collect::<Result<_>>()?;
    let lo: Vec<i64> = hi.iter().map(|h| -h).collect();
    Ok(Rotations {
        current: lo.clone(),
        lo,
        hi,
        step: if parity { 2 } else { 1 },
        done: false,
    })
}

/// `zᵀQ⁻¹z + N - 2`.
pub fn theta_of_rotation(g: &PlumbingGraph, z: &RotationVector) -> Result<BigRational> {
    z.validate(g, false)?;
    let ev = Evaluator::new(g)?;
    Ok(ev.theta(&ev.numerator_big(z.entries())))
}

/// `z = ±c`.
pub fn classify(g: &PlumbingGraph, z: &RotationVector) -> Classification {
    let c = RotationVector::canonical(g);
    if *z == c || *z == c.negated() {
        Classification::Consistent
    } else {
        Classification::Inconsistent
    }
}

/// θ ≠ −2 rules out a symplectic rational homology ball filling.
pub fn rhb_obstructed(g: &PlumbingGraph, z: &RotationVector) -> Result<bool> {
    Ok(theta_of_rotation(g, z)? != BigRational::from(BigInt::from(-2)))
}

/// `zᵀQ⁻¹z = zᵀPz / den` with `den > 0`, evaluated in `i128` when the
/// entries allow and in `BigInt` otherwise.
struct Evaluator {
    big: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i128>>>,
    den: BigInt,
    n: usize,
}

impl Evaluator {
    fn new(g: &PlumbingGraph) -> Result<Self> {
        let q = g.intersection_matrix();
        if !q.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        let (big, den) = inverse(&q)?.over_common_denominator();
        let n = g.len();
        let max_a = (0..n).map(|v| g.a(v)).max().unwrap_or_else(BigInt::zero);
        // |zᵀPz| <= n² · max|P| · max|z|²; keep that under 2^120.
        let max_p = big.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
        let bound = BigInt::from(n * n) * &max_p * &max_a * &max_a;
        let small = (bound.bits() < 120).then(|| {
            big.iter()
                .map(|row| row.iter().map(|x| x.to_i128().expect("bounded")).collect())
                .collect()
        });
        Ok(Evaluator { big, small, den, n })
    }

    fn numerator_big(&self, z: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.n {
            if z[i].is_zero() {
                continue;
            }
            let row: BigInt = (0..self.n).map(|j| &self.big[i][j] * &z[j]).sum();
            acc += row * &z[i];
        }
        acc
    }

    fn numerator(&self, z: &[i64]) -> BigInt {
        match &self.small {
            Some(p) => {
                let mut acc: i128 = 0;
                for i in 0..self.n {
                    if z[i] == 0 {
                        continue;
                    }
                    let row: i128 = (0..self.n).map(|j| p[i][j] * z[j] as i128).sum();
                    acc += row * z[i] as i128;
                }
                BigInt::from(acc)
            }
            None => {
                let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
                self.numerator_big(&zb)
            }
        }
    }

    fn theta(&self, numerator: &BigInt) -> BigRational {
        BigRational::new(numerator.clone(), self.den.clone()) + BigRational::from(BigInt::from(self.n as i64 - 2))
    }
}

/// Enumeration settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimizationOptions {
    pub parity: bool,
    pub cap: u64,
}

impl Default for MinimizationOptions {
    fn default() -> Self {
        MinimizationOptions {
            parity: true,
            cap: DEFAULT_CAP,
        }
    }
}

/// Result of checking `θ(±c) < θ(z)` for every inconsistent `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationReport {
    pub holds: bool,
    pub theta_canonical: BigRational,
    /// Smallest θ over inconsistent vectors, if any exist.
    pub min_inconsistent: Option<BigRational>,
    /// `min_inconsistent - theta_canonical`.
    pub gap: Option<BigRational>,
    /// Lexicographically first inconsistent `z` with `θ(z) <= θ(c)`.
    pub witness: Option<RotationVector>,
    pub enumerated: u64,
}

/// One row of the rotation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationRow {
    pub z: RotationVector,
    pub theta: BigRational,
    pub class: Classification,
    pub obstructed: bool,
}

fn check_cap(g: &PlumbingGraph, opts: MinimizationOptions) -> Result<()> {
    let size = enumeration_size(g, opts.parity)?;
    if size > BigInt::from(opts.cap) {
        return Err(Error::CapExceeded { size, cap: opts.cap });
    }
    Ok(())
}

/// Enumerate every vector and confirm the strict minimum at `±c`.
pub fn verify_minimization(g: &PlumbingGraph, opts: MinimizationOptions) -> Result<MinimizationReport> {
    check_cap(g, opts)?;
    let ev = Evaluator::new(g)?;
    let c: Vec<i64> = RotationVector::canonical(g)
        .0
        .iter()
        .map(|x| x.to_i64().expect("enumeration fits"))
        .collect();
    let neg_c: Vec<i64> = c.iter().map(|x| -x).collect();
    let canon = ev.numerator(&c);

    let mut min: Option<BigInt> = None;
    let mut witness = None;
    let mut enumerated = 0u64;
    let mut it = enumerate_rotations(g, opts.parity)?;
    loop {
        let z = &it.current;
        enumerated += 1;
        if *z != c && *z != neg_c {
            let s = ev.numerator(z);
            if witness.is_none() && s <= canon {
                witness = Some(RotationVector::from_ints(z));
            }
            if min.as_ref().is_none_or(|m| s < *m) {
                min = Some(s);
            }
        }
        if !it.advance() {
            break;
        }
    }

    let theta_canonical = ev.theta(&canon);
    let min_inconsistent = min.map(|s| ev.theta(&s));
    let gap = min_inconsistent.as_ref().map(|m| m - &theta_canonical);
    Ok(MinimizationReport {
        holds: witness.is_none(),
        theta_canonical,
        min_inconsistent,
        gap,
        witness,
        enumerated,
    })
}

/// θ, class and obstruction flag for every enumerated vector.
pub fn rotation_table(g: &PlumbingGraph, opts: MinimizationOptions) -> Result<Vec<RotationRow>> {
    check_cap(g, opts)?;
    let ev = Evaluator::new(g)?;
    let minus_two = BigRational::from(BigInt::from(-2));
    let c = RotationVector::canonical(g);
    let neg_c = c.negated();
    enumerate_rotations(g, opts.parity)?
        .map(|z| {
            let theta = ev.theta(&ev.numerator_big(z.entries()));
            let class = if z == c || z == neg_c {
                Classification::Consistent
            } else {
                Classification::Inconsistent
            };
            Ok(RotationRow {
                obstructed: theta != minus_two,
                theta,
                class,
                z,
            })
        })
        .collect()
}
