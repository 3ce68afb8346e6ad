//! Seifert fibered data `(e₀; r₁, …, r_k)` and the closed-form θ routes for
//! the star-shaped plumbings they describe.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{dedekind_sum, eval_nested, hj_eval, hj_expand, i_sum, inverse_mod, CoprimePair, HJExpansion};
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// Central weight `e₀` and legs `r_i = q_i/p_i ∈ (0, 1)`, stored as the
/// pairs `(p_i, q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub e0: BigInt,
    pub legs: Vec<CoprimePair>,
}

impl SeifertData {
    pub fn new(e0: BigInt, legs: Vec<CoprimePair>) -> Self {
        SeifertData { e0, legs }
    }

    /// Shorthand with legs given as `(p, q)`.
    pub fn from_ints(e0: i64, legs: &[(i64, i64)]) -> Result<Self> {
        let legs = legs
            .iter()
            .map(|&(p, q)| CoprimePair::from_ints(p, q))
            .collect::<Result<_>>()?;
        Ok(SeifertData::new(e0.into(), legs))
    }

    pub fn k(&self) -> usize {
        self.legs.len()
    }

    pub fn euler_number(&self) -> BigRational {
        euler_number(self)
    }

    /// `e₀ = -1` lies outside the Legendrian surgery picture; the closed
    /// formula still holds but rests on the algebraic identity alone.
    pub fn needs_separate_justification(&self) -> bool {
        self.e0 == -BigInt::one()
    }

    /// Precondition shared by every θ route: `e₀ <= -1` and `e(Y) < 0`.
    pub fn validate(&self) -> Result<()> {
        if self.e0 > -BigInt::one() {
            return Err(Error::CentralWeight(self.e0.clone(), -1));
        }
        let e = self.euler_number();
        if !e.is_negative() {
            return Err(Error::NonNegativeEuler(e));
        }
        Ok(())
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<String> = self.legs.iter().map(|l| format!("{}/{}", l.q(), l.p())).collect();
        write!(f, "({}; {})", self.e0, legs.join(", "))
    }
}

/// Reduce each positive fraction modulo 1, absorbing integer parts into
/// `e₀`. Integral fractions contribute no leg.
pub fn normalize(e0_raw: &BigInt, fractions: &[BigRational]) -> Result<SeifertData> {
    let mut e0 = e0_raw.clone();
    let mut legs = Vec::new();
    for r in fractions {
        if !r.is_positive() {
            return Err(Error::NonPositiveFraction(r.clone()));
        }
        let whole = r.floor();
        e0 += whole.to_integer();
        let frac = r - whole;
        if !frac.is_zero() {
            legs.push(CoprimePair::new(frac.denom().clone(), frac.numer().clone())?);
        }
    }
    Ok(SeifertData { e0, legs })
}

/// `e(Y) = e₀ + Σ q_i/p_i`.
pub fn euler_number(sd: &SeifertData) -> BigRational {
    sd.legs
        .iter()
        .fold(BigRational::from(sd.e0.clone()), |acc, l| acc + l.leg_fraction())
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from(x.into())
}

/// The closed form in `I(p_i/q_i)`, `q_i*` and `e(Y)`.
pub fn theta_seifert(sd: &SeifertData) -> Result<BigRational> {
    sd.validate()?;
    let k = sd.k() as i64;
    let e = sd.euler_number();
    let mut leg_terms = BigRational::zero();
    let mut centre = int(-&sd.e0 + k - 2);
    for leg in &sd.legs {
        let p = leg.p();
        let q = leg.q();
        leg_terms += int(i_sum(&hj_expand(leg))) + BigRational::new(q + leg.q_star() + 2, p.clone());
        centre -= BigRational::new(q + 1, p.clone());
    }
    Ok(int(2 * k - 1) - leg_terms + &centre * &centre / e)
}

/// The Dedekind-sum form `(2 - k + Σ 1/p_i)²/e + e + 3 - 12 Σ s(q_i, p_i)`.
pub fn theta_nn(sd: &SeifertData) -> Result<BigRational> {
    sd.validate()?;
    let e = sd.euler_number();
    let mut a = int(2 - sd.k() as i64);
    let mut dedekind = BigRational::zero();
    for leg in &sd.legs {
        a += BigRational::new(BigInt::one(), leg.p().clone());
        dedekind += dedekind_sum(leg.q(), leg.p())?;
    }
    Ok(&a * &a / &e + e + int(3) - dedekind * int(12))
}

/// Center `c` of weight `e₀`; leg `i` is the chain `l{i}_1 - … - l{i}_n`
/// with weights `-a_j` from the expansion of `p_i/q_i`, `l{i}_1` adjacent
/// to the center.
pub fn star_graph(sd: &SeifertData) -> Result<PlumbingGraph> {
    let mut vertices = vec![("c".to_string(), sd.e0.clone())];
    let mut edges = Vec::new();
    for (i, leg) in sd.legs.iter().enumerate() {
        let mut prev = "c".to_string();
        for (j, a) in hj_expand(leg).terms().iter().enumerate() {
            let id = format!("l{}_{}", i + 1, j + 1);
            vertices.push((id.clone(), -a));
            edges.push((prev, id.clone()));
            prev = id;
        }
    }
    PlumbingGraph::new(vertices, &edges)
}

/// `-I(p/q) - (q + q* + 2)/p` for the linear plumbing of `p/q`.
pub fn lens_theta(pq: &CoprimePair) -> BigRational {
    -int(i_sum(&hj_expand(pq))) - BigRational::new(pq.q() + pq.q_star() + 2, pq.p().clone())
}

/// Inverse of `q` modulo `m` taken in `(0, m]`, so that modulus 1 gives 1.
fn inverse_in_half_open(q: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m.is_one() {
        return Ok(BigInt::one());
    }
    inverse_mod(q, m)
}

/// `1 - I(p/q) - q*/(p - q)` for `(e₀; 1/2, r, 1/2)`, where
/// `p/q = [-e₀, a_1, …, a_n]` and `1/r = [a_1, …, a_n]`.
pub fn dihedral_theta(e0: &BigInt, r: &CoprimePair) -> Result<BigRational> {
    if *e0 > BigInt::from(-2) {
        return Err(Error::CentralWeight(e0.clone(), -2));
    }
    let mut terms = vec![-e0];
    terms.extend(hj_expand(r).terms().iter().cloned());
    let e = HJExpansion::new(terms)?;
    let pq = hj_eval(&e);
    let m = pq.p() - pq.q();
    let q_star = inverse_in_half_open(pq.q(), &m)?;
    Ok(int(1) - int(i_sum(&e)) - BigRational::new(q_star, m))
}

/// The complementary-legs closed form for `(e₀; q₁/p₁, r₂, (p₁-q₁)/p₁)`.
/// Only `p₁` enters; `cf2` is the expansion of `1/r₂`.
pub fn complementary_theta(e0: &BigInt, p1: &BigInt, cf2: &HJExpansion) -> Result<BigRational> {
    if *e0 > BigInt::from(-2) {
        return Err(Error::CentralWeight(e0.clone(), -2));
    }
    if *p1 < BigInt::from(2) {
        return Err(Error::InvalidParameter(format!("p1 = {p1} must be at least 2")));
    }
    let mut terms = vec![-e0];
    terms.extend(cf2.terms().iter().cloned());
    let e = HJExpansion::new(terms)?;
    let pq = hj_eval(&e);
    let (p, q) = (pq.p().clone(), pq.q().clone());
    let pmq = &p - &q;

    // 1/[a_n, …, a_1, a_0 - 1]; the last term may be 1.
    let mut rev: Vec<BigInt> = cf2.terms().iter().rev().cloned().collect();
    rev.push(-e0 - 1);
    let tail = eval_nested(&rev)
        .ok_or_else(|| Error::InvalidParameter("degenerate reversed continued fraction".into()))?
        .recip();

    let p1r = int(p1.clone());
    let two = int(2);
    let pmq_r = int(pmq);
    let value = int(1) - int(i_sum(&e)) - tail + &two * (&p1r - &two) / (&p1r * &pmq_r)
        - (&p1r - &two) * (&p1r - &two) * int(q) / (&p1r * &p1r * &pmq_r);
    Ok(value)
}

/// `(p₁ - q₁)` completes `q₁/p₁` to 1; handy for building the matching
/// Seifert data.
pub fn complementary_data(e0: &BigInt, p1: &BigInt, q1: &BigInt, r2: &CoprimePair) -> Result<SeifertData> {
    let first = CoprimePair::new(p1.clone(), q1.clone())?;
    let third = first.complement();
    Ok(SeifertData::new(e0.clone(), vec![first, r2.clone(), third]))
}

/// `(e₀; 1/2, r, 1/2)`.
pub fn dihedral_data(e0: &BigInt, r: &CoprimePair) -> SeifertData {
    let half = CoprimePair::new(2.into(), 1.into()).expect("1/2 is a valid leg");
    SeifertData::new(e0.clone(), vec![half.clone(), r.clone(), half])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::theta_oracle;
    use crate::recursion::theta;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        let sd = normalize(&BigInt::from(-1), &[r(3, 2)]).unwrap();
        assert_eq!(sd, SeifertData::from_ints(0, &[(2, 1)]).unwrap());
        assert!(matches!(theta_seifert(&sd), Err(Error::CentralWeight(..))));

        let sd = normalize(&BigInt::from(-2), &vec![r(1, 2); 3]).unwrap();
        assert_eq!(sd, SeifertData::from_ints(-2, &[(2, 1); 3]).unwrap());
        let sd = normalize(&BigInt::from(-7), &vec![r(1, 2); 4]).unwrap();
        assert_eq!(sd, SeifertData::from_ints(-7, &[(2, 1); 4]).unwrap());

        let sd = normalize(&BigInt::from(-5), &[r(2, 1), r(7, 3)]).unwrap();
        assert_eq!(sd, SeifertData::from_ints(-1, &[(3, 1)]).unwrap());
        assert!(matches!(
            normalize(&BigInt::from(-2), &[r(0, 1)]),
            Err(Error::NonPositiveFraction(_))
        ));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(
            SeifertData::from_ints(-2, &[(2, 1); 3]).unwrap().euler_number(),
            r(-1, 2)
        );
        assert_eq!(
            SeifertData::from_ints(-7, &[(2, 1); 4]).unwrap().euler_number(),
            r(-5, 1)
        );
        assert_eq!(SeifertData::from_ints(-1, &[]).unwrap().euler_number(), r(-1, 1));
    }

    #[test]
    fn theta_two_stars() {
        let sd = SeifertData::from_ints(-7, &[(2, 1); 4]).unwrap();
        assert_eq!(theta_seifert(&sd).unwrap(), r(-2, 1));
        assert_eq!(theta_nn(&sd).unwrap(), r(-2, 1));
        let sd = SeifertData::from_ints(-9, &[(3, 2); 3]).unwrap();
        assert_eq!(theta_seifert(&sd).unwrap(), r(-2, 1));
    }

    #[test]
    fn no_legs() {
        let sd = SeifertData::from_ints(-2, &[]).unwrap();
        assert_eq!(theta_seifert(&sd).unwrap(), r(-1, 1));
        assert_eq!(theta_nn(&sd).unwrap(), r(-1, 1));
        assert_eq!(theta(&star_graph(&sd).unwrap()).unwrap(), r(-1, 1));
    }

    #[test]
    fn dedekind_route_on_mixed_legs() {
        let sd = SeifertData::from_ints(-2, &[(2, 1), (3, 1), (5, 1)]).unwrap();
        let closed = theta_seifert(&sd).unwrap();
        assert_eq!(theta_nn(&sd).unwrap(), closed);
        assert_eq!(theta_oracle(&star_graph(&sd).unwrap()).unwrap(), closed);
    }

    #[test]
    fn errors() {
        let sd = SeifertData::from_ints(-1, &[(2, 1); 2]).unwrap();
        assert_eq!(theta_seifert(&sd), Err(Error::NonNegativeEuler(r(0, 1))));
        assert!(matches!(theta_nn(&sd), Err(Error::NonNegativeEuler(_))));
        let sd = SeifertData::from_ints(0, &[]).unwrap();
        assert!(matches!(theta_seifert(&sd), Err(Error::CentralWeight(..))));
    }

    #[test]
    fn e0_minus_one_matches_oracle() {
        let sd = SeifertData::from_ints(-1, &[(2, 1), (3, 1), (7, 1)]).unwrap();
        assert!(sd.needs_separate_justification());
        let closed = theta_seifert(&sd).unwrap();
        assert_eq!(theta_oracle(&star_graph(&sd).unwrap()).unwrap(), closed);
        assert_eq!(theta_nn(&sd).unwrap(), closed);
    }

    #[test]
    fn star_shapes() {
        let g = star_graph(&SeifertData::from_ints(-7, &[(2, 1); 4]).unwrap()).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.weight(0), &BigInt::from(-7));
        assert!((1..5).all(|v| g.weight(v) == &BigInt::from(-2) && g.degree(v) == 1));

        let g = star_graph(&SeifertData::from_ints(-9, &[(3, 2); 3]).unwrap()).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g.degree(0), 3);
        assert!((1..7).all(|v| g.weight(v) == &BigInt::from(-2)));

        let g = star_graph(&SeifertData::from_ints(-3, &[]).unwrap()).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn lens_values() {
        assert_eq!(lens_theta(&CoprimePair::from_ints(8, 3).unwrap()), r(-1, 1));
        assert_eq!(lens_theta(&CoprimePair::from_ints(2, 1).unwrap()), r(-1, 1));
        assert_eq!(lens_theta(&CoprimePair::from_ints(9, 2).unwrap()), r(-2, 1));
    }

    #[test]
    fn dihedral_matches_general_formula() {
        for (e0, p, q) in [(-2, 3, 1), (-3, 5, 2), (-2, 2, 1), (-4, 7, 3)] {
            let e0 = BigInt::from(e0);
            let leg = CoprimePair::from_ints(p, q).unwrap();
            let sd = dihedral_data(&e0, &leg);
            let expected = theta_seifert(&sd).unwrap();
            assert_eq!(dihedral_theta(&e0, &leg).unwrap(), expected);
            assert_eq!(theta(&star_graph(&sd).unwrap()).unwrap(), expected);
        }
        assert!(dihedral_theta(&BigInt::from(-1), &CoprimePair::from_ints(3, 1).unwrap()).is_err());
    }

    #[test]
    fn complementary_matches_general_formula() {
        for (e0, p1, q1, p2, q2) in [(-2, 3, 1, 2, 1), (-3, 5, 2, 7, 3), (-2, 2, 1, 5, 4)] {
            let e0 = BigInt::from(e0);
            let r2 = CoprimePair::from_ints(p2, q2).unwrap();
            let sd = complementary_data(&e0, &p1.into(), &q1.into(), &r2).unwrap();
            let got = complementary_theta(&e0, &p1.into(), &hj_expand(&r2)).unwrap();
            assert_eq!(got, theta_seifert(&sd).unwrap());
        }
        // Independent of q1.
        let e0 = BigInt::from(-3);
        let r2 = CoprimePair::from_ints(7, 3).unwrap();
        let a = theta_seifert(&complementary_data(&e0, &5.into(), &1.into(), &r2).unwrap()).unwrap();
        let b = theta_seifert(&complementary_data(&e0, &5.into(), &2.into(), &r2).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(complementary_theta(&e0, &1.into(), &hj_expand(&r2)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            SeifertData::from_ints(-2, &[(2, 1), (3, 2)]).unwrap().to_string(),
            "(-2; 1/2, 2/3)"
        );
    }
}
