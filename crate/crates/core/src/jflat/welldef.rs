use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{cancel_tetra_pair, cut_seam_circle, eval_circles, evaluate_closed_surface, perfect_matchings, JflatError};
use crate::foam::PreFoam;

/// Values reached over every admissible sequence of choices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellDefinedness {
    pub values: BTreeSet<u8>,
    pub matchings: usize,
    /// Cancellation sequences tried (matchings times orders).
    pub cancel_sequences: usize,
    /// Circle cut orders tried per sequence; 1 when there are more than four circles.
    pub cut_orders: usize,
    pub runs: usize,
}

impl WellDefinedness {
    pub fn is_single_valued(&self) -> bool {
        self.values.len() == 1
    }
}

pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Evaluates a foam without tetrahedral points by cutting circles one at a
/// time in the given order, materialising every term.
pub(crate) fn cut_in_order(f: &PreFoam, order: &[String]) -> Result<bool, JflatError> {
    let Some((c, rest)) = order.split_first() else {
        return Ok(f
            .facets
            .iter()
            .all(|x| x.boundary.is_empty() && evaluate_closed_surface(x.orientable, x.genus, x.dots)));
    };
    let mut acc = false;
    for t in cut_seam_circle(f, c)? {
        acc ^= cut_in_order(&t, rest)?;
    }
    Ok(acc)
}

/// Circle cut orders explored exhaustively up to this many circles.
pub const MAX_ORDERED_CIRCLES: usize = 4;

/// Runs the pipeline over every perfect matching of the seam graph, every
/// order of cancelling its edges and, with at most four circles, every cut order.
pub fn well_definedness_report(f: &PreFoam) -> Result<WellDefinedness, JflatError> {
    f.ensure_valid()?;
    let mut rep = WellDefinedness {
        values: BTreeSet::new(),
        matchings: 0,
        cancel_sequences: 0,
        cut_orders: 0,
        runs: 0,
    };
    if !f.seam_graph().bipartite {
        rep.values.insert(0);
        rep.runs = 1;
        return Ok(rep);
    }
    let matchings = if f.tetra_points.is_empty() {
        vec![Vec::new()]
    } else {
        perfect_matchings(f)
    };
    if matchings.is_empty() {
        return Err(JflatError::NoMatching);
    }
    rep.matchings = matchings.len();
    for m in &matchings {
        for seq in permutations(m) {
            rep.cancel_sequences += 1;
            let mut g = f.clone();
            for e in &seq {
                g = cancel_tetra_pair(&g, e)?;
            }
            if g.seam_circles.iter().any(|c| !c.monodromy.is_identity()) {
                rep.values.insert(0);
                rep.runs += 1;
                rep.cut_orders = rep.cut_orders.max(1);
                continue;
            }
            let ids: Vec<String> = g.seam_circles.iter().map(|c| c.id.clone()).collect();
            if ids.len() <= MAX_ORDERED_CIRCLES {
                let orders = permutations(&ids);
                rep.cut_orders = rep.cut_orders.max(orders.len());
                for o in orders {
                    rep.values.insert(u8::from(cut_in_order(&g, &o)?));
                    rep.runs += 1;
                }
            } else {
                rep.cut_orders = rep.cut_orders.max(1);
                rep.values.insert(u8::from(eval_circles(&g, &ids)?.0));
                rep.runs += 1;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{suspension_k4, theta_foam};
    use crate::jflat::evaluate;

    #[test]
    fn suspension_is_single_valued() {
        for k in [[0, 1, 2], [1, 1, 1], [2, 0, 1], [0, 0, 2]] {
            let f = suspension_k4(k[0], k[1], k[2]);
            let r = well_definedness_report(&f).unwrap();
            assert_eq!(r.matchings, 4);
            assert!(r.is_single_valued(), "{k:?}: {r:?}");
            assert_eq!(r.values.iter().next().copied(), Some(u8::from(evaluate(&f).unwrap())));
        }
    }

    #[test]
    fn theta_has_one_run() {
        let r = well_definedness_report(&theta_foam(0, 1, 2)).unwrap();
        assert_eq!((r.runs, r.values.iter().copied().collect::<Vec<_>>()), (1, vec![1]));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(&[1, 2, 3, 4]).len(), 24);
        assert_eq!(permutations::<u8>(&[]).len(), 1);
    }
}
