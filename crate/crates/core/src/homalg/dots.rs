use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{F2Matrix, HomalgError};
use crate::foam::{dotted_sphere, theta_foam};
use crate::jflat::evaluate;

/// Exponents of `(u1, u2, u3)`; the unknot algebra uses only the first.
pub type Monomial = [u32; 3];

/// Polynomial over the 2-element field as a set of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DotPoly(pub BTreeSet<Monomial>);

impl DotPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        DotPoly([m].into())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DotPoly(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// Product without reduction.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DotKind {
    /// `F[u]/u³`, dots on the disk bounding an unknot.
    Unknot,
    /// `F[u1,u2,u3]` modulo the symmetric functions, dots on the three
    /// facets of a theta half.
    Flag,
}

impl fmt::Display for DotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DotKind::Unknot => "unknot",
            DotKind::Flag => "flag",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotAlgebra {
    pub kind: DotKind,
}

impl DotAlgebra {
    pub fn new(kind: DotKind) -> Self {
        DotAlgebra { kind }
    }

    /// Monomial basis of canonical forms: `1, u, u²` or `u2^a u3^b` with `a ≤ 1, b ≤ 2`.
    pub fn basis(&self) -> Vec<Monomial> {
        match self.kind {
            DotKind::Unknot => (0..3).map(|i| [i, 0, 0]).collect(),
            DotKind::Flag => (0..2).flat_map(|a| (0..3).map(move |b| [0, a, b])).collect(),
        }
    }

    pub fn reduce(&self, p: &DotPoly) -> DotPoly {
        match self.kind {
            DotKind::Unknot => DotPoly(p.0.iter().filter(|m| m[0] < 3).copied().collect()),
            DotKind::Flag => {
                // u1 -> u2 + u3
                let mut q = DotPoly::zero();
                for &[a, b, c] in &p.0 {
                    for k in 0..=a {
                        if binomial_odd(a, k) {
                            q.toggle([0, b + k, c + a - k]);
                        }
                    }
                }
                // u2² -> u2u3 + u3², u3³ -> 0
                let mut out = DotPoly::zero();
                let mut work: Vec<Monomial> = q.0.into_iter().collect();
                while let Some(m) = work.pop() {
                    if m[2] >= 3 {
                        continue;
                    }
                    if m[1] >= 2 {
                        work.push([0, m[1] - 1, m[2] + 1]);
                        work.push([0, m[1] - 2, m[2] + 2]);
                    } else {
                        out.toggle(m);
                    }
                }
                out
            }
        }
    }

    pub fn mul(&self, a: &DotPoly, b: &DotPoly) -> DotPoly {
        self.reduce(&a.mul(b))
    }

    /// Coordinates of the reduced form in [`Self::basis`].
    pub fn coords(&self, p: &DotPoly) -> Vec<u8> {
        let r = self.reduce(p);
        self.basis().iter().map(|m| u8::from(r.0.contains(m))).collect()
    }

    /// Closed evaluation of the product: dotted spheres for the unknot,
    /// theta foams for the flag algebra.
    pub fn pairing(&self, a: &DotPoly, b: &DotPoly) -> bool {
        let mut acc = false;
        for m in &a.mul(b).0 {
            let f = match self.kind {
                DotKind::Unknot => dotted_sphere(m[0]),
                DotKind::Flag => theta_foam(m[0], m[1], m[2]),
            };
            acc ^= evaluate(&f).expect("standard closed foams evaluate");
        }
        acc
    }

    pub fn gram_matrix(&self) -> F2Matrix {
        let basis: Vec<DotPoly> = self.basis().into_iter().map(DotPoly::monomial).collect();
        let bits: Vec<Vec<u8>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| u8::from(self.pairing(x, y))).collect())
            .collect();
        F2Matrix::from_bits(basis.len(), basis.len(), &bits)
    }

    /// Parses sums of products such as `u1^2*u3 + u2 + 1`.
    pub fn parse(&self, s: &str) -> Result<DotPoly, HomalgError> {
        let bad = |reason: String| HomalgError::Polynomial {
            input: s.to_string(),
            reason,
        };
        let mut out = DotPoly::zero();
        if s.trim().is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut m: Monomial = [0; 3];
            let mut zero = false;
            for factor in term.split('*') {
                let factor = factor.trim();
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (
                        v.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| bad(format!("bad exponent in {factor}")))?,
                    ),
                    None => (factor, 1),
                };
                let slot = match (self.kind, var) {
                    (_, "1") => None,
                    (_, "0") => {
                        zero = true;
                        None
                    }
                    (DotKind::Unknot, "u") => Some(0),
                    (DotKind::Flag, "u1") => Some(0),
                    (DotKind::Flag, "u2") => Some(1),
                    (DotKind::Flag, "u3") => Some(2),
                    _ => return Err(bad(format!("unknown variable {var:?} for the {} algebra", self.kind))),
                };
                if let Some(i) = slot {
                    m[i] += exp;
                }
            }
            if !zero {
                out.toggle(m);
            }
        }
        Ok(out)
    }

    pub fn format(&self, p: &DotPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let names: &[&str] = match self.kind {
            DotKind::Unknot => &["u"],
            DotKind::Flag => &["u1", "u2", "u3"],
        };
        let terms: Vec<String> =
            p.0.iter()
                .map(|m| {
                    let fs: Vec<String> = names
                        .iter()
                        .zip(m.iter())
                        .filter(|(_, &e)| e > 0)
                        .map(|(n, &e)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
                        .collect();
                    if fs.is_empty() {
                        "1".into()
                    } else {
                        fs.join("*")
                    }
                })
                .collect();
        terms.join(" + ")
    }
}

fn binomial_odd(n: u32, k: u32) -> bool {
    k & !n == 0
}
