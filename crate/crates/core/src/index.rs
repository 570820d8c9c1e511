//! The index formula for singular bundles along a foam, and the dot bound
//! it implies for non-zero evaluations.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("kappa {0} is not in (1/32)Z")]
    KappaLattice(Q),
    #[error("self-intersection {0} is not a half-integer")]
    SelfIntersection(Q),
    #[error("cannot parse rational {0:?}")]
    Rational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexInput {
    #[serde(with = "q_text")]
    pub kappa: Q,
    pub b1: u32,
    pub bplus: u32,
    pub chi: i64,
    #[serde(with = "q_text")]
    pub self_int: Q,
    pub tau: u32,
    #[serde(default)]
    pub dots: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    #[serde(with = "q_text")]
    pub dimension: Q,
    pub integral: bool,
    pub kappa_admissible: bool,
    #[serde(with = "q_text")]
    pub min_dots: Q,
    /// `d − k` when a dot count is given.
    #[serde(default, with = "opt_q_text")]
    pub cut_down: Option<Q>,
    pub dots_sufficient: Option<bool>,
}

/// Rationals travel as `"p/q"` strings.
mod q_text {
    use super::{format_rational, parse_rational, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(*q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).map_err(D::Error::custom)
    }
}

mod opt_q_text {
    use super::{format_rational, parse_rational, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        q.map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(D::Error::custom))
            .transpose()
    }
}

fn is_integer(q: Q) -> bool {
    q.is_integer()
}

impl IndexInput {
    pub fn check(&self) -> Result<(), IndexError> {
        if !is_integer(self.kappa * Q::from(32)) {
            return Err(IndexError::KappaLattice(self.kappa));
        }
        if !is_integer(self.self_int * Q::from(2)) {
            return Err(IndexError::SelfIntersection(self.self_int));
        }
        Ok(())
    }
}

/// `8κ − 3(1 − b¹ + b⁺) + χ + ½Σ·Σ − ½|τ|`.
pub fn formal_dimension(i: &IndexInput) -> Result<Q, IndexError> {
    i.check()?;
    let half = Q::new(1, 2);
    Ok(
        Q::from(8) * i.kappa - Q::from(3 * (1 - i64::from(i.b1) + i64::from(i.bplus)))
            + Q::from(i.chi)
            + half * i.self_int
            - half * Q::from(i64::from(i.tau)),
    )
}

/// Smallest dot count compatible with a non-negative action: `χ + ½Σ·Σ − ½|τ|`.
pub fn min_dots_for_nonzero(chi: i64, self_int: Q, tau: u32) -> Q {
    Q::from(chi) + self_int / Q::from(2) - Q::new(i64::from(tau), 2)
}

/// Bubbles carry action in `(1/8)Z`, or `(1/4)Z` without tetrahedral points.
pub fn kappa_admissible(kappa: Q, has_tetra: bool) -> bool {
    let scale = if has_tetra { 8 } else { 4 };
    is_integer(kappa * Q::from(scale))
}

pub fn index_report(i: &IndexInput) -> Result<IndexReport, IndexError> {
    let d = formal_dimension(i)?;
    let min = min_dots_for_nonzero(i.chi, i.self_int, i.tau);
    Ok(IndexReport {
        dimension: d,
        integral: d.is_integer(),
        kappa_admissible: kappa_admissible(i.kappa, i.tau > 0),
        min_dots: min,
        cut_down: i.dots.map(|k| d - Q::from(i64::from(k))),
        dots_sufficient: i.dots.map(|k| Q::from(i64::from(k)) >= min),
    })
}

/// Parses `p/q`, `p` or a decimal such as `0.125`.
pub fn parse_rational(s: &str) -> Result<Q, IndexError> {
    let bad = || IndexError::Rational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let mag = Q::from(w.abs()) + Q::new(f, den);
        return Ok(if neg { -mag } else { mag });
    }
    t.parse::<i64>().map(Q::from).map_err(|_| bad())
}

pub fn format_rational(q: Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn input(kappa: Q, b1: u32, bplus: u32, chi: i64, self_int: Q, tau: u32) -> IndexInput {
        IndexInput {
            kappa,
            b1,
            bplus,
            chi,
            self_int,
            tau,
            dots: None,
        }
    }

    #[test]
    fn quoted_dimensions() {
        let z = Q::zero();
        assert_eq!(formal_dimension(&input(z, 0, 0, 4, z, 2)).unwrap(), z);
        assert_eq!(formal_dimension(&input(z, 1, 0, 0, z, 0)).unwrap(), z);
        assert_eq!(formal_dimension(&input(Q::new(1, 8), 1, 0, 0, z, 0)).unwrap(), Q::one());
    }

    #[test]
    fn dot_bounds() {
        let z = Q::zero();
        assert_eq!(min_dots_for_nonzero(2, z, 0), Q::from(2));
        assert_eq!(min_dots_for_nonzero(3, z, 0), Q::from(3));
        assert_eq!(min_dots_for_nonzero(4, z, 2), Q::from(3));
    }

    #[test]
    fn lattices() {
        assert!(kappa_admissible(Q::new(1, 8), true));
        assert!(!kappa_admissible(Q::new(1, 8), false));
        assert!(kappa_admissible(Q::zero(), false) && kappa_admissible(Q::zero(), true));
        let bad = input(Q::new(1, 64), 0, 0, 0, Q::zero(), 0);
        assert_eq!(formal_dimension(&bad), Err(IndexError::KappaLattice(Q::new(1, 64))));
        let bad = input(Q::zero(), 0, 0, 0, Q::new(1, 3), 0);
        assert!(matches!(formal_dimension(&bad), Err(IndexError::SelfIntersection(_))));
    }

    #[test]
    fn half_integral_results_are_flagged() {
        let r = index_report(&input(Q::zero(), 0, 0, 2, Q::zero(), 1)).unwrap();
        assert_eq!(r.dimension, Q::new(-3, 2));
        assert!(!r.integral);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/8").unwrap(), Q::new(1, 8));
        assert_eq!(parse_rational("-1/2").unwrap(), Q::new(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), Q::new(1, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), Q::new(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), Q::from(3));
        assert!(parse_rational("1/0").is_err() && parse_rational("x").is_err());
        assert_eq!(format_rational(Q::new(6, 4)), "3/2");
    }

    fn arb() -> impl Strategy<Value = IndexInput> {
        (-64i64..64, 0u32..5, 0u32..5, -10i64..10, -8i64..8, 0u32..8)
            .prop_map(|(k, b1, bp, chi, s, tau)| input(Q::new(k, 32), b1, bp, chi, Q::new(s, 2), tau))
    }

    proptest! {
        #[test]
        fn affine_in_kappa(i in arb()) {
            let mut j = i.clone();
            j.kappa += Q::new(1, 8);
            prop_assert_eq!(formal_dimension(&j).unwrap(), formal_dimension(&i).unwrap() + Q::one());
        }

        #[test]
        fn bound_is_the_zero_action_dimension(i in arb()) {
            // with κ = 0 and b¹ = b⁺ = 0, d = min_dots − 3
            let j = IndexInput { kappa: Q::zero(), b1: 0, bplus: 0, ..i.clone() };
            let d = formal_dimension(&j).unwrap();
            prop_assert_eq!(d + Q::from(3), min_dots_for_nonzero(i.chi, i.self_int, i.tau));
        }

        #[test]
        fn affine_in_each_count(i in arb()) {
            let d = formal_dimension(&i).unwrap();
            let b1 = IndexInput { b1: i.b1 + 1, ..i.clone() };
            let bp = IndexInput { bplus: i.bplus + 1, ..i.clone() };
            let chi = IndexInput { chi: i.chi + 1, ..i.clone() };
            let tau = IndexInput { tau: i.tau + 1, ..i.clone() };
            prop_assert_eq!(formal_dimension(&b1).unwrap(), d + Q::from(3));
            prop_assert_eq!(formal_dimension(&bp).unwrap(), d - Q::from(3));
            prop_assert_eq!(formal_dimension(&chi).unwrap(), d + Q::one());
            prop_assert_eq!(formal_dimension(&tau).unwrap(), d - Q::new(1, 2));
        }
    }
}
