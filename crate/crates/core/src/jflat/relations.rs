//! Local relations that any evaluation must respect, checked on a given foam.

use serde::{Deserialize, Serialize};

use super::welldef::{cut_in_order, permutations, MAX_ORDERED_CIRCLES};
use super::{cancel_tetra_pair, evaluate, lex_min_perfect_matching, JflatError};
use crate::foam::{attach_bubble, BubbleCap, PreFoam};

/// How many instances of a relation were checked, and the ones that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationTally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn absorb(&mut self, other: RelationTally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn eval_dots(f: &PreFoam, facet: usize, k: u32) -> Result<bool, JflatError> {
    let mut g = f.clone();
    g.facets[facet].dots += k;
    evaluate(&g)
}

/// Moving a dot onto each of the three sheets at a seam sums to zero.
pub fn dot_migration_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    let mut seams: Vec<(String, [usize; 3])> = Vec::new();
    for c in &f.seam_circles {
        seams.push((c.id.clone(), f.circle_facets(&c.id)?));
    }
    for e in &f.seam_edges {
        seams.push((e.id.clone(), f.edge_facets(&e.id)?));
    }
    for (id, owners) in seams {
        let mut sum = false;
        for fi in owners {
            sum ^= eval_dots(f, fi, 1)?;
        }
        t.record(!sum, || format!("dot migration at {id}"));
    }
    Ok(t)
}

/// A bubble whose free disk carries `k` dots equals the facet with `k - 1`
/// dots for `k = 1, 2`, and vanishes otherwise.
pub fn bubble_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    for (i, fc) in f.facets.iter().enumerate() {
        for k in 0..=3u32 {
            let lhs = evaluate(&attach_bubble(f, &fc.id, BubbleCap::Disk(k))?)?;
            let rhs = if (1..=2).contains(&k) {
                eval_dots(f, i, k - 1)?
            } else {
                false
            };
            t.record(lhs == rhs, || format!("bubble with {k} dots on {}", fc.id));
        }
    }
    Ok(t)
}

/// A torus attached along a bubble acts as one dot.
pub fn torus_dot_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    for (i, fc) in f.facets.iter().enumerate() {
        let lhs = evaluate(&attach_bubble(f, &fc.id, BubbleCap::Torus)?)?;
        t.record(lhs == eval_dots(f, i, 1)?, || {
            format!("torus in place of a dot on {}", fc.id)
        });
    }
    Ok(t)
}

/// Three more dots on any facet give zero.
pub fn triple_dot_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    for (i, fc) in f.facets.iter().enumerate() {
        t.record(!eval_dots(f, i, 3)?, || format!("three dots on {}", fc.id));
    }
    Ok(t)
}

/// Compressing a handle of an orientable facet: genus `g` equals genus
/// `g - 1` with two more dots.
pub fn neck_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    let base = evaluate(f)?;
    for (i, fc) in f.facets.iter().enumerate() {
        if !fc.orientable || fc.genus == 0 {
            continue;
        }
        let mut g = f.clone();
        g.facets[i].genus -= 1;
        g.facets[i].dots += 2;
        t.record(base == evaluate(&g)?, || format!("handle compression on {}", fc.id));
    }
    Ok(t)
}

/// After cancelling tetrahedral points, every order of cutting the seam
/// circles (up to four of them) gives the same bit as [`evaluate`].
pub fn cut_order_check(f: &PreFoam) -> Result<RelationTally, JflatError> {
    let mut t = RelationTally::default();
    if !f.seam_graph().bipartite {
        return Ok(t);
    }
    let want = evaluate(f)?;
    let mut g = f.clone();
    while let Some(m) = lex_min_perfect_matching(&g).filter(|m| !m.is_empty()) {
        g = cancel_tetra_pair(&g, &m[0])?;
    }
    if g.seam_circles.iter().any(|c| !c.monodromy.is_identity()) {
        return Ok(t);
    }
    let ids: Vec<String> = g.seam_circles.iter().map(|c| c.id.clone()).collect();
    if ids.len() > MAX_ORDERED_CIRCLES {
        return Ok(t);
    }
    for o in permutations(&ids) {
        let v = cut_in_order(&g, &o)?;
        t.record(v == want, || format!("cut order {}", o.join(",")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn relations_hold_on_corpus() {
        for (name, f) in corpus::foams() {
            for check in [
                dot_migration_check,
                bubble_check,
                torus_dot_check,
                triple_dot_check,
                neck_check,
                cut_order_check,
            ] {
                let t = check(&f).unwrap();
                assert!(t.passed(), "{name}: {:?}", t.failures);
            }
        }
    }
}
