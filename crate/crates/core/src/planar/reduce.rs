use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PMap, PlanarError, RotationWeb};
use crate::web::tait_count;

/// A formal sum: a resolved integer plus irreducible webs with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub resolved: BigUint,
    pub residuals: Vec<(RotationWeb, BigUint)>,
}

impl ReductionResult {
    fn number(n: impl Into<BigUint>) -> Self {
        ReductionResult {
            resolved: n.into(),
            residuals: Vec::new(),
        }
    }

    fn stuck(rw: RotationWeb) -> Self {
        ReductionResult {
            resolved: BigUint::zero(),
            residuals: vec![(rw, BigUint::one())],
        }
    }

    /// The dimension, when every branch terminated.
    pub fn value(&self) -> Option<&BigUint> {
        self.residuals.is_empty().then_some(&self.resolved)
    }

    pub fn is_stuck(&self) -> bool {
        !self.residuals.is_empty()
    }

    fn scale(mut self, k: &BigUint) -> Self {
        if k.is_zero() {
            return Self::number(0u32);
        }
        self.resolved *= k;
        for (_, m) in &mut self.residuals {
            *m *= k;
        }
        self
    }

    fn add(mut self, other: Self) -> Self {
        self.resolved += other.resolved;
        self.residuals.extend(other.residuals);
        self
    }

    fn mul(self, other: Self) -> Self {
        let mut residuals = Vec::new();
        if !other.resolved.is_zero() {
            for (w, m) in &self.residuals {
                residuals.push((w.clone(), m * &other.resolved));
            }
        }
        if !self.resolved.is_zero() {
            for (w, m) in &other.residuals {
                residuals.push((w.clone(), m * &self.resolved));
            }
        }
        for (a, ma) in &self.residuals {
            for (b, mb) in &other.residuals {
                residuals.push((a.disjoint_union(b, "x", "y"), ma * mb));
            }
        }
        ReductionResult {
            resolved: self.resolved * other.resolved,
            residuals,
        }
    }
}

/// Order in which applicable bigon/triangle/square moves are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Cheapest move first, ties broken by the smallest face.
    Priority,
    /// Uniform choice among all applicable moves.
    Random { seed: u64 },
}

struct Ctx<'a> {
    rng: Option<ChaCha8Rng>,
    trace: Option<&'a mut Vec<String>>,
}

impl Ctx<'_> {
    fn log(&mut self, depth: usize, msg: impl FnOnce() -> String) {
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(format!("{}{}", "  ".repeat(depth), msg()));
        }
    }
}

/// Reduces with the deterministic priority order.
pub fn reduce_dimension(rw: &RotationWeb) -> Result<ReductionResult, PlanarError> {
    reduce_with(rw, Strategy::Priority, None)
}

pub fn reduce_with(
    rw: &RotationWeb,
    strategy: Strategy,
    trace: Option<&mut Vec<String>>,
) -> Result<ReductionResult, PlanarError> {
    let m = rw.to_map()?;
    let genera = m.genera();
    if genera.iter().any(|&g| g != 0) {
        return Err(PlanarError::NonPlanar { genera });
    }
    let rng = match strategy {
        Strategy::Priority => None,
        Strategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut ctx = Ctx { rng, trace };
    Ok(reduce_map(m, &mut ctx, 0))
}

struct Move {
    face: Vec<usize>,
}

fn valid_small_face(m: &PMap, vof: &[usize], face: &[usize]) -> bool {
    let n = face.len();
    if !(2..=4).contains(&n) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (face[i], face[j]);
            if vof[a] == vof[b] || a.min(m.mate[a]) == b.min(m.mate[b]) {
                return false;
            }
        }
    }
    true
}

fn reduce_map(mut m: PMap, ctx: &mut Ctx, depth: usize) -> ReductionResult {
    let circles = m.circles;
    m.circles = 0;
    let mult = BigUint::from(3u32).pow(circles);
    if circles > 0 {
        ctx.log(depth, || format!("remove {circles} free circle(s): x{mult}"));
    }
    if m.is_empty() {
        return ReductionResult::number(mult);
    }
    let comps = m.components();
    if comps.len() > 1 {
        ctx.log(depth, || format!("split into {} components", comps.len()));
        let mut acc = ReductionResult::number(1u32);
        for c in &comps {
            let part = reduce_map(m.restrict(c), ctx, depth + 1);
            acc = acc.mul(part);
            if acc.resolved.is_zero() && acc.residuals.is_empty() {
                break;
            }
        }
        return acc.scale(&mult);
    }
    if m.has_bridge() {
        ctx.log(depth, || "bridge: 0".into());
        return ReductionResult::number(0u32);
    }
    let faces = m.faces();
    if let Some(f) = faces.iter().find(|f| f.len() == 1) {
        ctx.log(depth, || format!("1-gon at dart {}: 0", f[0]));
        return ReductionResult::number(0u32);
    }
    let vof = m.vertex_of();
    let mut moves: Vec<Move> = faces
        .into_iter()
        .filter(|f| valid_small_face(&m, &vof, f))
        .map(|face| Move { face })
        .collect();
    if moves.is_empty() {
        ctx.log(depth, || {
            format!("stuck: {} vertices, no face of length <= 4", m.vertex_count())
        });
        return ReductionResult::stuck(m.to_rotation_web()).scale(&mult);
    }
    let chosen = match ctx.rng.as_mut() {
        Some(rng) => {
            let k = *(0..moves.len()).collect::<Vec<_>>().choose(rng).unwrap();
            moves.swap_remove(k)
        }
        None => {
            moves.sort_by_key(|mv| (mv.face.len(), mv.face[0]));
            moves.swap_remove(0)
        }
    };
    let f = &chosen.face;
    let legs: Vec<usize> = f.iter().map(|&d| m.next[d]).collect();
    let out = match f.len() {
        2 => {
            ctx.log(depth, || format!("bigon at dart {}: x2", f[0]));
            let mut k = m.clone();
            k.remove_vertices(f);
            k.join(legs[0], legs[1]);
            reduce_map(k, ctx, depth + 1).scale(&BigUint::from(2u32))
        }
        3 => {
            ctx.log(depth, || format!("triangle at dart {}", f[0]));
            let mut k = m.clone();
            for &d in f {
                let md = k.mate[d];
                k.alive[d] = false;
                k.alive[md] = false;
            }
            k.next[legs[0]] = legs[2];
            k.next[legs[2]] = legs[1];
            k.next[legs[1]] = legs[0];
            reduce_map(k, ctx, depth + 1)
        }
        _ => {
            ctx.log(depth, || format!("square at dart {}: split into two webs", f[0]));
            let mut k1 = m.clone();
            k1.remove_vertices(f);
            k1.join(legs[0], legs[3]);
            k1.join(legs[1], legs[2]);
            let mut k2 = m.clone();
            k2.remove_vertices(f);
            k2.join(legs[0], legs[1]);
            k2.join(legs[2], legs[3]);
            let a = reduce_map(k1, ctx, depth + 1);
            let b = reduce_map(k2, ctx, depth + 1);
            a.add(b)
        }
    };
    out.scale(&mult)
}

/// Reduction value next to the Tait count.
#[derive(Debug, Clone)]
pub struct ConjectureCheck {
    pub reduced: ReductionResult,
    pub tait: u128,
    /// `None` when the reduction got stuck.
    pub agree: Option<bool>,
}

pub fn check_conjecture(rw: &RotationWeb) -> Result<ConjectureCheck, PlanarError> {
    let reduced = reduce_dimension(rw)?;
    let tait = tait_count(&rw.web)?;
    let agree = reduced.value().map(|v| v.to_u128() == Some(tait));
    Ok(ConjectureCheck { reduced, tait, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::web::{Web, WebEdge};
    use std::collections::BTreeMap;

    fn value(rw: &RotationWeb) -> u64 {
        reduce_dimension(rw).unwrap().value().unwrap().to_u64().unwrap()
    }

    #[test]
    fn small_values() {
        let empty = RotationWeb {
            web: Web::default(),
            rotation: BTreeMap::new(),
        };
        assert_eq!(value(&empty), 1);
        assert_eq!(value(&corpus::circle_planar()), 3);
        assert_eq!(value(&corpus::theta_planar()), 6);
        assert_eq!(value(&corpus::k4_planar()), 6);
        assert_eq!(value(&corpus::prism_planar(2)), 12);
        assert_eq!(value(&corpus::prism_planar(3)), 6);
        assert_eq!(value(&corpus::cube_planar()), 24);
        assert_eq!(value(&corpus::dumbbell_planar()), 0);
    }

    #[test]
    fn two_circles_give_nine() {
        let rw = RotationWeb {
            web: Web {
                vertices: vec![],
                edges: vec![WebEdge::circle("a"), WebEdge::circle("b")],
            },
            rotation: BTreeMap::new(),
        };
        assert_eq!(value(&rw), 9);
    }

    #[test]
    fn dodecahedron_is_stuck() {
        let r = reduce_dimension(&corpus::dodecahedron_planar()).unwrap();
        assert!(r.is_stuck());
        assert_eq!(r.residuals.len(), 1);
        assert_eq!(r.residuals[0].0.web.vertices.len(), 20);
        let c = check_conjecture(&corpus::dodecahedron_planar()).unwrap();
        assert_eq!((c.tait, c.agree), (60, None));
    }

    #[test]
    fn non_planar_rejected() {
        let mut rw = corpus::k4_planar();
        rw.rotation.get_mut("a").unwrap().reverse();
        assert!(matches!(reduce_dimension(&rw), Err(PlanarError::NonPlanar { .. })));
    }

    #[test]
    fn random_orders_agree_on_cube() {
        for seed in 0..20 {
            let r = reduce_with(&corpus::cube_planar(), Strategy::Random { seed }, None).unwrap();
            assert_eq!(r.value().unwrap().to_u64(), Some(24));
        }
    }

    #[test]
    fn trace_is_recorded() {
        let mut t = Vec::new();
        reduce_with(&corpus::theta_planar(), Strategy::Priority, Some(&mut t)).unwrap();
        assert!(t[0].starts_with("bigon"));
        assert!(t.iter().any(|l| l.contains("free circle")));
    }

    #[test]
    fn triangle_collapse_keeps_planarity() {
        // Collapse one triangle of the prism by hand and check the genus.
        let m = corpus::prism_planar(3).to_map().unwrap();
        let vof = m.vertex_of();
        let f = m
            .faces()
            .into_iter()
            .find(|f| f.len() == 3 && valid_small_face(&m, &vof, f))
            .unwrap();
        let legs: Vec<usize> = f.iter().map(|&d| m.next[d]).collect();
        let mut k = m.clone();
        for &d in &f {
            let md = k.mate[d];
            k.alive[d] = false;
            k.alive[md] = false;
        }
        k.next[legs[0]] = legs[2];
        k.next[legs[2]] = legs[1];
        k.next[legs[1]] = legs[0];
        assert_eq!(k.genera(), vec![0]);
        assert_eq!(k.vertex_count(), 4);
    }
}
