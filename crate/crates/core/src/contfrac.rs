//! Hirzebruch–Jung (negative) continued fractions, modular inverses,
//! the I-sum and Dedekind sums.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coprime integers `0 < q < p`. As a Seifert leg this is `r = q/p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoprimePair {
    p: BigInt,
    q: BigInt,
}

impl CoprimePair {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if !(q.is_positive() && q < p) {
            return Err(Error::InvalidPair { p, q });
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::NotCoprime { q, p });
        }
        Ok(CoprimePair { p, q })
    }

    pub fn from_ints(p: i64, q: i64) -> Result<Self> {
        Self::new(p.into(), q.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `p/q`.
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }

    /// `q/p`, the Seifert leg fraction.
    pub fn leg_fraction(&self) -> BigRational {
        BigRational::new(self.q.clone(), self.p.clone())
    }

    /// `q*`, the inverse of `q` modulo `p` in `(0, p)`.
    pub fn q_star(&self) -> BigInt {
        inverse_mod(&self.q, &self.p).expect("q and p are coprime by construction")
    }

    /// `p/(p-q)`.
    pub fn complement(&self) -> CoprimePair {
        CoprimePair {
            p: self.p.clone(),
            q: &self.p - &self.q,
        }
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Terms `[a_1, …, a_n]` of a Hirzebruch–Jung expansion, every `a_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HJExpansion(Vec<BigInt>);

impl HJExpansion {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidExpansion("no terms".into()));
        }
        if let Some(t) = terms.iter().find(|t| **t < BigInt::from(2)) {
            return Err(Error::InvalidExpansion(format!("term {t} is less than 2")));
        }
        Ok(HJExpansion(terms))
    }

    pub fn from_ints(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HJExpansion {
        HJExpansion(self.0.iter().rev().cloned().collect())
    }

    pub fn eval(&self) -> CoprimePair {
        hj_eval(self)
    }

    pub fn i_sum(&self) -> BigInt {
        i_sum(self)
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "[{}]", terms.join(","))
    }
}

/// Expansion by `a = ceil(p/q)`, `(p, q) <- (q, a q - p)`.
pub fn hj_expand(pq: &CoprimePair) -> HJExpansion {
    let (mut p, mut q) = (pq.p.clone(), pq.q.clone());
    let mut terms = Vec::new();
    while !q.is_zero() {
        let a = p.div_ceil(&q);
        let next = &a * &q - &p;
        terms.push(a);
        p = q;
        q = next;
    }
    HJExpansion(terms)
}

/// `a_1 - 1/(a_2 - 1/(… - 1/a_n))` as a reduced pair.
pub fn hj_eval(e: &HJExpansion) -> CoprimePair {
    let mut terms = e.0.iter().rev();
    let mut p = terms.next().cloned().unwrap_or_else(BigInt::one);
    let mut q = BigInt::one();
    for a in terms {
        let next = a * &p - &q;
        q = p;
        p = next;
    }
    CoprimePair { p, q }
}

/// Nested negative continued fraction with arbitrary integer terms, or
/// `None` if some partial denominator vanishes.
pub fn eval_nested(terms: &[BigInt]) -> Option<BigRational> {
    let mut iter = terms.iter().rev();
    let mut x = BigRational::from(iter.next()?.clone());
    for a in iter {
        if x.is_zero() {
            return None;
        }
        x = BigRational::from(a.clone()) - x.recip();
    }
    Some(x)
}

/// Inverse of `q` modulo `p`, normalised into `(0, p)`. For `p = 1` the
/// result is `0`.
pub fn inverse_mod(q: &BigInt, p: &BigInt) -> Result<BigInt> {
    if !p.is_positive() {
        return Err(Error::InvalidParameter(format!("modulus {p} must be positive")));
    }
    let g = q.extended_gcd(p);
    if !g.gcd.abs().is_one() {
        return Err(Error::NotCoprime {
            q: q.clone(),
            p: p.clone(),
        });
    }
    let x = if g.gcd.is_negative() { -g.x } else { g.x };
    Ok(x.mod_floor(p))
}

/// `I = sum (a_j - 3)`.
pub fn i_sum(e: &HJExpansion) -> BigInt {
    e.0.iter().map(|a| a - 3).sum()
}

/// Classical Dedekind sum `s(q, p) = sum_{k=1}^{p-1} ((k/p)) ((kq/p))`,
/// summed term by term.
pub fn dedekind_sum(q: &BigInt, p: &BigInt) -> Result<BigRational> {
    if !p.is_positive() {
        return Err(Error::InvalidParameter(format!("modulus {p} must be positive")));
    }
    if !q.gcd(p).is_one() {
        return Err(Error::NotCoprime {
            q: q.clone(),
            p: p.clone(),
        });
    }
    // For 1 <= k < p neither k/p nor kq/p is an integer, so
    // ((k/p)) ((kq/p)) = (2k - p)(2r - p) / (4p^2) with r = kq mod p.
    let mut acc = BigInt::zero();
    let mut k = BigInt::one();
    while &k < p {
        let r = (&k * q).mod_floor(p);
        acc += (BigInt::from(2) * &k - p) * (BigInt::from(2) * r - p);
        k += 1;
    }
    Ok(BigRational::new(acc, BigInt::from(4) * p * p))
}

/// `12 s(q,p) == I(p/q) + (q + q*)/p`.
pub fn hz_check(pq: &CoprimePair) -> bool {
    let lhs = dedekind_sum(&pq.q, &pq.p).expect("coprime by construction") * BigInt::from(12);
    let rhs = BigRational::from(i_sum(&hj_expand(pq))) + BigRational::new(&pq.q + pq.q_star(), pq.p.clone());
    lhs == rhs
}
