use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Web, WebError, WebIndex};

/// Edge id → value in the two-element field. Edges not listed carry 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EtaFlow {
    pub assignment: BTreeMap<String, u8>,
}

impl EtaFlow {
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = &'a str>) -> Self {
        EtaFlow {
            assignment: edges.into_iter().map(|e| (e.to_string(), 1)).collect(),
        }
    }

    fn dense(&self, ix: &WebIndex) -> Result<Vec<bool>, WebError> {
        let mut out = vec![false; ix.edge_count()];
        for (id, &val) in &self.assignment {
            let e = ix
                .edge_ids
                .iter()
                .position(|x| x == id)
                .ok_or_else(|| WebError::UnknownFlowEdge(id.clone()))?;
            if val > 1 {
                return Err(WebError::FlowValue {
                    edge: id.clone(),
                    value: val,
                });
            }
            out[e] = val == 1;
        }
        Ok(out)
    }
}

/// Number of vertices meeting exactly two edge-ends with value 1.
pub fn eta_type2_count(w: &Web, f: &EtaFlow) -> Result<usize, WebError> {
    let ix = w.index()?;
    let val = f.dense(&ix)?;
    let mut count = 0;
    for (v, inc) in ix.incidence.iter().enumerate() {
        let ones = inc.iter().filter(|&&(e, _)| val[e]).count();
        if ones % 2 == 1 {
            return Err(WebError::InvalidFlow {
                vertex: ix.vertex_ids[v].clone(),
            });
        }
        if ones == 2 {
            count += 1;
        }
    }
    Ok(count)
}

/// A basis of the cycle space: one fundamental cycle per non-tree edge,
/// plus each loop and free circle on its own.
pub fn cycle_space_basis(w: &Web) -> Result<Vec<EtaFlow>, WebError> {
    let ix = w.index()?;
    let n = ix.vertex_count();
    // BFS forest with parent edges
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; ix.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(e, k) in &ix.incidence[v] {
                let u = ix.ends[e].unwrap()[1 - k];
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = Some((v, e));
                    tree[e] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for e in 0..ix.edge_count() {
        if tree[e] {
            continue;
        }
        let mut cycle = vec![e];
        if let Some([mut a, mut b]) = ix.ends[e] {
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                let (p, pe) = parent[a].unwrap();
                cycle.push(pe);
                a = p;
            }
        }
        let mut flow = EtaFlow::default();
        for c in cycle {
            let slot = flow.assignment.entry(ix.edge_ids[c].clone()).or_insert(0);
            *slot ^= 1;
        }
        flow.assignment.retain(|_, v| *v == 1);
        basis.push(flow);
    }
    Ok(basis)
}

/// Uniform random element of the cycle space.
pub fn random_eta_flow<R: Rng>(w: &Web, rng: &mut R) -> Result<EtaFlow, WebError> {
    let mut acc: BTreeMap<String, u8> = BTreeMap::new();
    for b in cycle_space_basis(w)? {
        if rng.gen_bool(0.5) {
            for e in b.assignment.into_keys() {
                *acc.entry(e).or_insert(0) ^= 1;
            }
        }
    }
    acc.retain(|_, v| *v == 1);
    Ok(EtaFlow { assignment: acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_flow_has_no_type2() {
        assert_eq!(eta_type2_count(&corpus::k4_web(), &EtaFlow::default()).unwrap(), 0);
    }

    #[test]
    fn k4_triangle_gives_three() {
        // e1 = ab, e3 = ad, f2 = bd
        let f = EtaFlow::from_edges(["e1", "e3", "f2"]);
        assert_eq!(eta_type2_count(&corpus::k4_web(), &f).unwrap(), 3);
    }

    #[test]
    fn cube_face_gives_four() {
        let w = corpus::cube_web();
        let f = EtaFlow::from_edges(["o0", "o1", "o2", "o3"]);
        assert_eq!(eta_type2_count(&w, &f).unwrap(), 4);
    }

    #[test]
    fn invalid_flow_names_vertex() {
        let f = EtaFlow::from_edges(["e1"]);
        match eta_type2_count(&corpus::k4_web(), &f) {
            Err(WebError::InvalidFlow { vertex }) => assert!(vertex == "a" || vertex == "b"),
            other => panic!("{other:?}"),
        }
        let f = EtaFlow::from_edges(["nope"]);
        assert!(matches!(
            eta_type2_count(&corpus::k4_web(), &f),
            Err(WebError::UnknownFlowEdge(_))
        ));
    }

    #[test]
    fn basis_dimension_and_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for w in [
            corpus::theta_web(),
            corpus::k4_web(),
            corpus::dodecahedron_web(),
            corpus::dumbbell_web(),
        ] {
            let basis = cycle_space_basis(&w).unwrap();
            // |E| - |V| + components
            let expected = match w.vertices.len() {
                2 if w.edges.len() == 3 && w.edges.iter().any(|e| e.is_loop()) => 2,
                v => w.edges.len() - v + 1,
            };
            assert_eq!(basis.len(), expected);
            for _ in 0..20 {
                let f = random_eta_flow(&w, &mut rng).unwrap();
                assert!(eta_type2_count(&w, &f).is_ok());
            }
        }
    }
}
