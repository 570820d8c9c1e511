//! Evaluation of closed dotted pre-foams over GF(2).
//!
//! Pipeline: a non-bipartite seam graph gives 0; otherwise tetrahedral points
//! are cancelled in pairs along a perfect matching of the seam graph; a seam
//! circle with non-trivial monodromy gives 0; the remaining circles are cut,
//! each into six capped terms; closed surfaces are then evaluated directly.

mod cancel;
mod cut;
mod matching;
mod pairing;
mod relations;
mod welldef;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foam::{FoamError, Perm, PreFoam, Step};

pub use cancel::cancel_tetra_pair;
pub use cut::cut_seam_circle;
pub use matching::{lex_min_perfect_matching, perfect_matchings};
pub use pairing::{pairing_rank, PairingMatrix};
pub use relations::{
    bubble_check, cut_order_check, dot_migration_check, neck_check, torus_dot_check, triple_dot_check, RelationTally,
};
pub use welldef::{well_definedness_report, WellDefinedness};

#[derive(Debug, Error)]
pub enum JflatError {
    #[error(transparent)]
    Foam(#[from] FoamError),
    #[error("seam graph has no perfect matching")]
    NoMatching,
    #[error("replay diverged at step {step}: {reason}")]
    Replay { step: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    NonBipartite,
    Cancel,
    Monodromy,
    CutCircles,
    ClosedSurfaces,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub cells: Vec<String>,
    /// Terms produced by the step; for circle cutting, the number of
    /// cap assignments that survive to a non-zero product.
    pub terms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationTrace {
    pub steps: Vec<TraceStep>,
    pub value: bool,
}

/// Sphere with two dots and undotted torus give 1; everything else 0.
pub fn evaluate_closed_surface(orientable: bool, genus: u32, dots: u32) -> bool {
    orientable && matches!((genus, dots), (0, 2) | (1, 0))
}

pub fn evaluate(f: &PreFoam) -> Result<bool, JflatError> {
    Ok(evaluate_traced(f)?.value)
}

pub fn evaluate_traced(f: &PreFoam) -> Result<EvaluationTrace, JflatError> {
    f.ensure_valid()?;
    let mut steps = Vec::new();
    let g = f.seam_graph();
    if !g.bipartite {
        steps.push(TraceStep {
            rule: Rule::NonBipartite,
            cells: f.tetra_points.clone(),
            terms: 0,
        });
        return Ok(EvaluationTrace { steps, value: false });
    }
    let mut cur = f.clone();
    while !cur.tetra_points.is_empty() {
        let m = lex_min_perfect_matching(&cur).ok_or(JflatError::NoMatching)?;
        let e = m[0].clone();
        cur = cancel_tetra_pair(&cur, &e)?;
        steps.push(TraceStep {
            rule: Rule::Cancel,
            cells: vec![e],
            terms: 1,
        });
    }
    finish(&cur, None, steps)
}

/// Steps after all tetrahedral points are gone. `order` fixes the cut order.
fn finish(f: &PreFoam, order: Option<&[String]>, mut steps: Vec<TraceStep>) -> Result<EvaluationTrace, JflatError> {
    if let Some(c) = f.seam_circles.iter().find(|c| !c.monodromy.is_identity()) {
        steps.push(TraceStep {
            rule: Rule::Monodromy,
            cells: vec![c.id.clone()],
            terms: 0,
        });
        return Ok(EvaluationTrace { steps, value: false });
    }
    let order: Vec<String> = match order {
        Some(o) => o.to_vec(),
        None => f.seam_circles.iter().map(|c| c.id.clone()).collect(),
    };
    let (value, survivors) = eval_circles(f, &order)?;
    if !order.is_empty() {
        steps.push(TraceStep {
            rule: Rule::CutCircles,
            cells: order,
            terms: survivors,
        });
    }
    steps.push(TraceStep {
        rule: Rule::ClosedSurfaces,
        cells: f.facets.iter().map(|x| x.id.clone()).collect(),
        terms: survivors,
    });
    Ok(EvaluationTrace { steps, value })
}

/// Sum over all cap assignments on circles (in `order`) of the product of
/// closed-surface values. Returns the bit and the number of non-zero terms.
pub(crate) fn eval_circles(f: &PreFoam, order: &[String]) -> Result<(bool, u64), JflatError> {
    let mut owners = Vec::new();
    for id in order {
        let c = f
            .seam_circles
            .iter()
            .find(|c| &c.id == id)
            .ok_or_else(|| FoamError::UnknownCircle(id.clone()))?;
        if !c.monodromy.is_identity() {
            return Err(FoamError::Monodromy(id.clone()).into());
        }
        owners.push(f.circle_facets(id)?);
    }
    if order.len() != f.seam_circles.len() {
        return Err(FoamError::Inconsistent("cut order must list every seam circle once".into()).into());
    }
    if f.facets
        .iter()
        .any(|x| x.boundary.iter().flatten().any(|s| !matches!(s, Step::Circle(..))))
    {
        return Err(FoamError::Inconsistent("facets still meet seam edges".into()).into());
    }
    let shape: Vec<(bool, u32)> = f.facets.iter().map(|x| (x.orientable, x.genus)).collect();
    let mut dots: Vec<u32> = f.facets.iter().map(|x| x.dots).collect();
    if (0..shape.len()).any(|i| dead(shape[i], dots[i])) {
        return Ok((false, 0));
    }
    let count = expand(&shape, &owners, 0, &mut dots);
    Ok((count % 2 == 1, count))
}

/// A facet that can no longer reach a non-zero closed value.
fn dead((orientable, genus): (bool, u32), dots: u32) -> bool {
    !orientable || genus >= 2 || (genus == 1 && dots > 0) || dots > 2
}

fn expand(shape: &[(bool, u32)], owners: &[[usize; 3]], i: usize, dots: &mut [u32]) -> u64 {
    if i == owners.len() {
        let ok = shape
            .iter()
            .zip(dots.iter())
            .all(|(&(o, g), &d)| evaluate_closed_surface(o, g, d));
        return u64::from(ok);
    }
    let own = owners[i];
    let mut total = 0;
    for p in Perm::ALL {
        let img = p.images();
        for s in 0..3 {
            dots[own[s]] += u32::from(img[s]);
        }
        if !own.iter().any(|&x| dead(shape[x], dots[x])) {
            total += expand(shape, owners, i + 1, dots);
        }
        for s in 0..3 {
            dots[own[s]] -= u32::from(img[s]);
        }
    }
    total
}

/// Re-runs the recorded choices on `f` and checks that the same bit results.
pub fn replay(f: &PreFoam, trace: &EvaluationTrace) -> Result<bool, JflatError> {
    f.ensure_valid()?;
    let diverged = |step: usize, reason: String| JflatError::Replay { step, reason };
    let mut cur = f.clone();
    let mut done = None;
    for (i, st) in trace.steps.iter().enumerate() {
        match st.rule {
            Rule::NonBipartite => {
                if cur.seam_graph().bipartite {
                    return Err(diverged(i, "seam graph is bipartite".into()));
                }
                done = Some(false);
                break;
            }
            Rule::Cancel => {
                let e = st.cells.first().ok_or_else(|| diverged(i, "no edge recorded".into()))?;
                cur = cancel_tetra_pair(&cur, e)?;
            }
            Rule::Monodromy => {
                let c = st
                    .cells
                    .first()
                    .ok_or_else(|| diverged(i, "no circle recorded".into()))?;
                match cur.seam_circles.iter().find(|x| &x.id == c) {
                    Some(x) if !x.monodromy.is_identity() => {}
                    _ => return Err(diverged(i, format!("circle {c} has no twist"))),
                }
                done = Some(false);
                break;
            }
            Rule::CutCircles | Rule::ClosedSurfaces => {
                if !cur.tetra_points.is_empty() {
                    return Err(diverged(i, "tetrahedral points remain".into()));
                }
                let order = if st.rule == Rule::CutCircles {
                    Some(st.cells.as_slice())
                } else {
                    None
                };
                let (v, n) = eval_circles(&cur, order.unwrap_or(&[]))?;
                if n != st.terms {
                    return Err(diverged(i, format!("{n} surviving terms, recorded {}", st.terms)));
                }
                done = Some(v);
                break;
            }
        }
    }
    let v = done.ok_or_else(|| diverged(trace.steps.len(), "trace ends early".into()))?;
    if v != trace.value {
        return Err(diverged(
            trace.steps.len(),
            format!("value {} differs from recorded {}", u8::from(v), u8::from(trace.value)),
        ));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{closed_surface, dotted_sphere, suspension_k4, theta_foam};

    #[test]
    fn theta_table() {
        for k1 in 0..=3 {
            for k2 in 0..=3 {
                for k3 in 0..=3 {
                    let mut k = [k1, k2, k3];
                    k.sort();
                    let want = k == [0, 1, 2];
                    assert_eq!(evaluate(&theta_foam(k1, k2, k3)).unwrap(), want, "{k1}{k2}{k3}");
                }
            }
        }
    }

    #[test]
    fn closed_surfaces() {
        for k in 0..6 {
            assert_eq!(evaluate(&dotted_sphere(k)).unwrap(), k == 2);
        }
        assert!(evaluate(&closed_surface(true, 1, 0)).unwrap());
        assert!(!evaluate(&closed_surface(true, 1, 1)).unwrap());
        assert!(!evaluate(&closed_surface(true, 2, 0)).unwrap());
        assert!(!evaluate(&closed_surface(false, 2, 0)).unwrap());
        assert!(!evaluate_closed_surface(false, 1, 2));
    }

    #[test]
    fn suspension_matches_theta() {
        for k1 in 0..=2 {
            for k2 in 0..=2 {
                for k3 in 0..=2 {
                    assert_eq!(
                        evaluate(&suspension_k4(k1, k2, k3)).unwrap(),
                        evaluate(&theta_foam(k1, k2, k3)).unwrap(),
                        "{k1}{k2}{k3}"
                    );
                }
            }
        }
    }

    #[test]
    fn odd_seam_cycle_gives_zero() {
        let f = crate::foam::disk_foam(
            &["p", "q", "r"],
            &[
                ("a1", "p", "q"),
                ("a2", "p", "q"),
                ("b1", "q", "r"),
                ("b2", "q", "r"),
                ("c1", "r", "p"),
                ("c2", "r", "p"),
            ],
        )
        .unwrap();
        let f = f.add_dots("d1", 2).unwrap();
        let t = evaluate_traced(&f).unwrap();
        assert!(!t.value);
        assert_eq!(t.steps[0].rule, Rule::NonBipartite);
    }

    #[test]
    fn trace_replays() {
        for f in [
            suspension_k4(0, 1, 2),
            theta_foam(0, 2, 1),
            dotted_sphere(2),
            suspension_k4(1, 1, 0),
        ] {
            let t = evaluate_traced(&f).unwrap();
            assert_eq!(replay(&f, &t).unwrap(), t.value);
        }
        let f = suspension_k4(0, 1, 2);
        let mut t = evaluate_traced(&f).unwrap();
        t.value = !t.value;
        assert!(matches!(replay(&f, &t), Err(JflatError::Replay { .. })));
    }
}
