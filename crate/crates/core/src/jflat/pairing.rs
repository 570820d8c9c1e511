use serde::{Deserialize, Serialize};

use super::{evaluate, JflatError};
use crate::foam::{glue, FoamWithBoundary, WebMatching};
use crate::homalg::F2Matrix;

/// Pairing bits `matrix[i][j]` between generators and co-generators, with the rank over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    pub matrix: Vec<Vec<u8>>,
    pub rank: usize,
}

pub fn pairing_rank(
    gens: &[FoamWithBoundary],
    cogens: &[FoamWithBoundary],
    m: &WebMatching,
) -> Result<PairingMatrix, JflatError> {
    let mut matrix = Vec::with_capacity(gens.len());
    for g in gens {
        let mut row = Vec::with_capacity(cogens.len());
        for c in cogens {
            row.push(u8::from(evaluate(&glue(g, c, m)?)?));
        }
        matrix.push(row);
    }
    let rank = F2Matrix::from_bits(gens.len(), cogens.len(), &matrix).rank();
    Ok(PairingMatrix { matrix, rank })
}
