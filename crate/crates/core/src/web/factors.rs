use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Web, WebError, WebIndex};

/// A spanning subgraph with every vertex of degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    pub edges: BTreeSet<String>,
    /// Vertices per cycle, sorted ascending; free circles count as 0.
    pub cycle_lengths: Vec<usize>,
}

impl TwoFactor {
    pub fn is_even(&self) -> bool {
        self.cycle_lengths.iter().all(|l| l % 2 == 0)
    }
}

/// Cut-edges of the underlying multigraph. Free circles are never bridges.
pub fn find_bridges(w: &Web) -> Result<BTreeSet<String>, WebError> {
    let ix = w.index()?;
    let edges: Vec<Option<(usize, usize)>> = ix.ends.iter().map(|e| e.map(|[a, b]| (a, b))).collect();
    let flags = bridge_flags(ix.vertex_count(), &edges);
    Ok(flags
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(e, _)| ix.edge_ids[e].clone())
        .collect())
}

/// Low-link bridge search over an edge list (`None` entries are skipped).
pub(crate) fn bridge_flags(n: usize, edges: &[Option<(usize, usize)>]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        if let Some((a, b)) = *e {
            if a != b {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = vec![false; edges.len()];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next neighbor position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let (u, e) = adj[v][top.2];
                top.2 += 1;
                if e == pe {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, e, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out[pe] = true;
                    }
                }
            }
        }
    }
    out
}

/// Two-coloring test; loops make a web non-bipartite, free circles are ignored.
pub fn is_bipartite(w: &Web) -> Result<bool, WebError> {
    let ix = w.index()?;
    Ok(bipartite_sides(&ix).is_some())
}

pub(crate) fn bipartite_sides(ix: &WebIndex) -> Option<Vec<u8>> {
    let n = ix.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(e, k) in &ix.incidence[v] {
                let u = ix.ends[e].unwrap()[1 - k];
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    queue.push_back(u);
                } else if side[u] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// All 2-factors, found as complements of perfect matchings.
pub fn two_factors(w: &Web) -> Result<Vec<TwoFactor>, WebError> {
    let ix = w.index()?;
    let n = ix.vertex_count();
    let mut matchings = Vec::new();
    let mut matched = vec![false; n];
    let mut chosen = Vec::new();
    collect_matchings(&ix, &mut matched, &mut chosen, &mut matchings);

    let mut out = Vec::with_capacity(matchings.len());
    for m in matchings {
        let in_factor: Vec<bool> = (0..ix.edge_count()).map(|e| !m.contains(&e)).collect();
        let edges = (0..ix.edge_count())
            .filter(|&e| in_factor[e])
            .map(|e| ix.edge_ids[e].clone())
            .collect();
        let mut cycle_lengths = factor_cycle_lengths(&ix, &in_factor);
        cycle_lengths.sort_unstable();
        out.push(TwoFactor { edges, cycle_lengths });
    }
    Ok(out)
}

fn collect_matchings(ix: &WebIndex, matched: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(v) = matched.iter().position(|m| !m) else {
        out.push(chosen.clone());
        return;
    };
    matched[v] = true;
    for &(e, k) in &ix.incidence[v] {
        let u = ix.ends[e].unwrap()[1 - k];
        if u == v || matched[u] {
            continue;
        }
        matched[u] = true;
        chosen.push(e);
        collect_matchings(ix, matched, chosen, out);
        chosen.pop();
        matched[u] = false;
    }
    matched[v] = false;
}

fn factor_cycle_lengths(ix: &WebIndex, in_factor: &[bool]) -> Vec<usize> {
    let n = ix.vertex_count();
    let mut lengths = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut count = 0;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            count += 1;
            for &(e, k) in &ix.incidence[v] {
                if !in_factor[e] {
                    continue;
                }
                let u = ix.ends[e].unwrap()[1 - k];
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        lengths.push(count);
    }
    lengths.extend(ix.ends.iter().filter(|e| e.is_none()).map(|_| 0));
    lengths
}

/// True iff some 2-factor has only even cycles.
pub fn o2_coloring_exists(w: &Web) -> Result<bool, WebError> {
    Ok(two_factors(w)?.iter().any(TwoFactor::is_even))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Exhaustive oracle over all edge subsets.
    fn brute_factors(w: &Web) -> Vec<BTreeSet<String>> {
        let ix = w.index().unwrap();
        let m = ix.edge_count();
        let mut out = Vec::new();
        for mask in 0u64..(1 << m) {
            let mut deg = vec![0; ix.vertex_count()];
            let mut circles_ok = true;
            for e in 0..m {
                let on = mask >> e & 1 == 1;
                match ix.ends[e] {
                    Some([a, b]) if on => {
                        deg[a] += 1;
                        deg[b] += 1;
                    }
                    None if !on => circles_ok = false,
                    _ => {}
                }
            }
            if circles_ok && deg.iter().all(|&d| d == 2) {
                out.push(
                    (0..m)
                        .filter(|e| mask >> e & 1 == 1)
                        .map(|e| ix.edge_ids[e].clone())
                        .collect(),
                );
            }
        }
        out
    }

    #[test]
    fn factors_match_brute_force() {
        for w in [
            corpus::theta_web(),
            corpus::k4_web(),
            corpus::prism_web(3),
            corpus::cube_web(),
            corpus::dumbbell_web(),
        ] {
            let mut got: Vec<_> = two_factors(&w).unwrap().into_iter().map(|f| f.edges).collect();
            let mut want = brute_factors(&w);
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn theta_and_k4_factor_shapes() {
        let f = two_factors(&corpus::theta_web()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|x| x.cycle_lengths == vec![2]));
        let f = two_factors(&corpus::k4_web()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|x| x.cycle_lengths == vec![4]));
    }

    #[test]
    fn petersen_factors_are_two_pentagons() {
        let f = two_factors(&corpus::petersen_web()).unwrap();
        assert!(!f.is_empty());
        assert!(f.iter().all(|x| x.cycle_lengths == vec![5, 5]));
        assert!(!o2_coloring_exists(&corpus::petersen_web()).unwrap());
        assert!(o2_coloring_exists(&corpus::theta_web()).unwrap());
        assert!(o2_coloring_exists(&corpus::k4_web()).unwrap());
    }

    #[test]
    fn free_circles_sit_in_every_factor() {
        let mut w = corpus::theta_web();
        w.edges.push(super::super::WebEdge::circle("c"));
        let f = two_factors(&w).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|x| x.edges.contains("c") && x.cycle_lengths == vec![0, 2]));
    }

    #[test]
    fn bridges() {
        assert!(find_bridges(&corpus::theta_web()).unwrap().is_empty());
        assert!(find_bridges(&corpus::k4_web()).unwrap().is_empty());
        let b = find_bridges(&corpus::dumbbell_web()).unwrap();
        assert_eq!(b.into_iter().collect::<Vec<_>>(), vec!["m".to_string()]);
        assert!(find_bridges(&corpus::circle_web()).unwrap().is_empty());
    }

    #[test]
    fn bipartite() {
        assert!(is_bipartite(&corpus::theta_web()).unwrap());
        assert!(is_bipartite(&corpus::cube_web()).unwrap());
        assert!(!is_bipartite(&corpus::k4_web()).unwrap());
        assert!(!is_bipartite(&corpus::dumbbell_web()).unwrap());
    }
}
