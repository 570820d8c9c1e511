use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group_ring::submasks;
use super::{F2Matrix, HomalgError};

/// Sum over subsets `A ⊆ {1..n}` of copies of a base space, with the
/// component `C_B → C_A` of the differential equal to `U_{B∖A}` for `A ⊆ B`.
/// `maps[0]` is the base differential; missing maps are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeComplex {
    pub n: u32,
    pub base_dim: usize,
    pub maps: BTreeMap<u32, F2Matrix>,
}

impl CubeComplex {
    pub fn new(n: u32, base_dim: usize, maps: BTreeMap<u32, F2Matrix>) -> Result<Self, HomalgError> {
        if n > 16 {
            return Err(HomalgError::Shape(format!("cube of dimension {n} is too large")));
        }
        for (&j, m) in &maps {
            if j >> n != 0 {
                return Err(HomalgError::Subset { mask: j, n });
            }
            if m.rows() != base_dim || m.cols() != base_dim {
                return Err(HomalgError::Shape(format!(
                    "U for subset {} is {}x{}, expected {base_dim}x{base_dim}",
                    mask_label(j),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(CubeComplex { n, base_dim, maps })
    }

    /// Maps induced by a differential `Σ_ε d_ε g_ε` on a `(Z/2)^n`-cover:
    /// `U_J = Σ_{ε ⊇ J} d_ε`.
    pub fn from_shifts(n: u32, base_dim: usize, parts: &[(u32, F2Matrix)]) -> Result<Self, HomalgError> {
        let mut maps: BTreeMap<u32, F2Matrix> = BTreeMap::new();
        for (eps, d) in parts {
            for j in submasks(*eps) {
                let slot = maps.entry(j).or_insert_with(|| F2Matrix::zero(base_dim, base_dim));
                *slot = slot.add(d)?;
            }
        }
        maps.retain(|_, m| !m.is_zero());
        Self::new(n, base_dim, maps)
    }

    fn u(&self, j: u32) -> Option<&F2Matrix> {
        self.maps.get(&j)
    }

    pub fn total_dim(&self) -> usize {
        self.base_dim << self.n
    }

    pub fn total_differential(&self) -> F2Matrix {
        let k = 1u32 << self.n;
        let sizes = vec![self.base_dim; k as usize];
        let mut blocks = Vec::new();
        for b in 0..k {
            for a in submasks(b) {
                if let Some(u) = self.u(b & !a) {
                    blocks.push((a as usize, b as usize, u));
                }
            }
        }
        F2Matrix::blocks(&sizes, &sizes, &blocks).expect("block shapes checked on construction")
    }

    /// First pair `(A, B)` with a non-zero component of `D²`, in order of `A` then `B`.
    pub fn square_violation(&self) -> Option<(u32, u32)> {
        let k = 1u32 << self.n;
        for a in 0..k {
            let free = (k - 1) & !a;
            let mut bs: Vec<u32> = submasks(free).map(|s| a | s).collect();
            bs.sort_unstable();
            for b in bs {
                let mut acc = F2Matrix::zero(self.base_dim, self.base_dim);
                for c in submasks(b & !a).map(|s| a | s) {
                    if let (Some(x), Some(y)) = (self.u(c & !a), self.u(b & !c)) {
                        acc = acc.add(&x.mul(y).expect("square blocks")).expect("square blocks");
                    }
                }
                if !acc.is_zero() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<(), HomalgError> {
        match self.square_violation() {
            None => Ok(()),
            Some((a, b)) => Err(HomalgError::CubeSquare {
                a: mask_label(a),
                b: mask_label(b),
            }),
        }
    }

    /// `dim ker D − dim im D = N − 2 rank D`.
    pub fn homology_dim(&self) -> Result<usize, HomalgError> {
        self.check()?;
        Ok(self.total_dim() - 2 * self.total_differential().rank())
    }
}

/// `{1,3}` style label of a mask.
pub fn mask_label(m: u32) -> String {
    let items: Vec<String> = (0..32)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

fn binomial(n: u32, m: u32) -> usize {
    (0..m).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Dimensions of the `E_1` page by filtration level: `(Σ h) · C(n, m)`.
pub fn e1_page(h_dims: &[usize], n: u32) -> Vec<usize> {
    let h: usize = h_dims.iter().sum();
    (0..=n).map(|m| h * binomial(n, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(bits: &[Vec<u8>]) -> F2Matrix {
        F2Matrix::from_bits(bits.len(), bits[0].len(), bits)
    }

    #[test]
    fn e1_dimensions() {
        assert_eq!(e1_page(&[1, 1], 2), vec![2, 4, 2]);
        assert_eq!(e1_page(&[3], 0), vec![3]);
        assert_eq!(e1_page(&[1], 1), vec![1, 1]);
        assert_eq!(e1_page(&[1], 4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn one_dimensional_cubes() {
        let nil = m(&[vec![0, 1], vec![0, 0]]);
        let c = CubeComplex::new(1, 2, [(0, nil.clone())].into()).unwrap();
        assert!(c.check().is_ok());
        assert_eq!(c.homology_dim().unwrap(), 0);
        let bad = m(&[vec![1, 0], vec![0, 0]]);
        let c = CubeComplex::new(1, 2, [(0, bad)].into()).unwrap();
        assert_eq!(c.square_violation(), Some((0, 0)));
        // zero base differential: homology 2·dim − 2·rank U
        for u in [
            m(&[vec![1, 0], vec![0, 0]]),
            m(&[vec![1, 1], vec![1, 0]]),
            F2Matrix::zero(2, 2),
        ] {
            let r = u.rank();
            let c = CubeComplex::new(1, 2, [(1, u)].into()).unwrap();
            assert_eq!(c.homology_dim().unwrap(), 4 - 2 * r);
        }
    }

    #[test]
    fn violation_names_the_pair() {
        let id = F2Matrix::identity(1);
        let c = CubeComplex::new(2, 1, [(0b01, id.clone()), (0b10, id.clone()), (0b11, id)].into()).unwrap();
        // U_{1}U_{2} + U_{2}U_{1} = 0, but d = 0 so D^{∅,{1,2}} = 2 = 0; the U_{12} term needs d ≠ 0
        assert!(c.check().is_ok());
        let id = F2Matrix::identity(1);
        let c = CubeComplex::new(1, 1, [(0, id.clone()), (1, id)].into()).unwrap();
        let e = c.check().unwrap_err();
        assert!(e.to_string().contains("{}"), "{e}");
    }
}
