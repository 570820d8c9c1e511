use serde::{Deserialize, Serialize};

use super::{F2Matrix, HomalgError};

/// Chain complex `C_top → … → C_0`; `differentials[k - 1]` is `d_k : C_k → C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2ChainComplex {
    pub dims: Vec<usize>,
    pub differentials: Vec<F2Matrix>,
}

impl F2ChainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<F2Matrix>) -> Result<Self, HomalgError> {
        let c = F2ChainComplex { dims, differentials };
        c.check()?;
        Ok(c)
    }

    /// Shapes agree and `d_{k-1} d_k = 0`.
    pub fn check(&self) -> Result<(), HomalgError> {
        if self.differentials.len() + 1 != self.dims.len().max(1) {
            return Err(HomalgError::Shape(format!(
                "{} chain groups need {} differentials, got {}",
                self.dims.len(),
                self.dims.len().saturating_sub(1),
                self.differentials.len()
            )));
        }
        for (i, d) in self.differentials.iter().enumerate() {
            let k = i + 1;
            if d.rows() != self.dims[k - 1] || d.cols() != self.dims[k] {
                return Err(HomalgError::Shape(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dims[k - 1],
                    self.dims[k]
                )));
            }
        }
        for k in 2..self.dims.len() {
            if !self.differentials[k - 2].mul(&self.differentials[k - 1])?.is_zero() {
                return Err(HomalgError::NotComplex(format!("d_{} d_{k} is not zero", k - 1)));
            }
        }
        Ok(())
    }

    pub fn d(&self, k: usize) -> Option<&F2Matrix> {
        if k == 0 {
            None
        } else {
            self.differentials.get(k - 1)
        }
    }

    pub fn rank_d(&self, k: usize) -> usize {
        self.d(k).map_or(0, F2Matrix::rank)
    }

    /// `h_k = dim C_k − rank d_k − rank d_{k+1}`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.dims.len()).map(|k| self.rank_d(k)).collect();
        (0..self.dims.len())
            .map(|k| self.dims[k] - ranks[k] - ranks[k + 1])
            .collect()
    }

    pub fn total_homology(&self) -> usize {
        self.homology_dims().iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_complex_keeps_dims() {
        let c = F2ChainComplex::new(vec![2, 3], vec![F2Matrix::zero(2, 3)]).unwrap();
        assert_eq!(c.homology_dims(), vec![2, 3]);
    }

    #[test]
    fn circle_and_interval() {
        // one vertex, one loop edge
        let c = F2ChainComplex::new(vec![1, 1], vec![F2Matrix::zero(1, 1)]).unwrap();
        assert_eq!(c.homology_dims(), vec![1, 1]);
        // two vertices, one edge
        let d = F2Matrix::from_entries(2, 1, [(0, 0), (1, 0)]).unwrap();
        let c = F2ChainComplex::new(vec![2, 1], vec![d]).unwrap();
        assert_eq!(c.homology_dims(), vec![1, 0]);
    }

    #[test]
    fn non_complex_is_rejected() {
        let one = F2Matrix::identity(1);
        assert!(matches!(
            F2ChainComplex::new(vec![1, 1, 1], vec![one.clone(), one]),
            Err(HomalgError::NotComplex(_))
        ));
    }
}
