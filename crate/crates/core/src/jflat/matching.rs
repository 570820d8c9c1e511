use std::collections::HashMap;

use crate::foam::PreFoam;

struct Graph {
    n: usize,
    /// `(edge id, a, b)` sorted by id.
    edges: Vec<(String, usize, usize)>,
}

fn graph(f: &PreFoam) -> Graph {
    let pos: HashMap<&str, usize> = f
        .tetra_points
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .collect();
    let mut edges: Vec<(String, usize, usize)> = f
        .seam_edges
        .iter()
        .filter_map(|e| {
            Some((
                e.id.clone(),
                *pos.get(e.ends[0].as_str())?,
                *pos.get(e.ends[1].as_str())?,
            ))
        })
        .filter(|e| e.1 != e.2)
        .collect();
    edges.sort();
    Graph { n: pos.len(), edges }
}

/// Whether the vertices not in `taken` can be perfectly matched.
fn completable(g: &Graph, taken: &[bool]) -> bool {
    let mut taken = taken.to_vec();
    exists(g, &mut taken)
}

fn exists(g: &Graph, taken: &mut [bool]) -> bool {
    let Some(v) = (0..g.n).find(|&v| !taken[v]) else {
        return true;
    };
    taken[v] = true;
    let mut tried = Vec::new();
    for (_, a, b) in &g.edges {
        let u = if *a == v {
            *b
        } else if *b == v {
            *a
        } else {
            continue;
        };
        if taken[u] || tried.contains(&u) {
            continue;
        }
        tried.push(u);
        taken[u] = true;
        if exists(g, taken) {
            taken[u] = false;
            taken[v] = false;
            return true;
        }
        taken[u] = false;
    }
    taken[v] = false;
    false
}

/// The perfect matching of the seam graph whose sorted edge-id list is
/// lexicographically smallest.
pub fn lex_min_perfect_matching(f: &PreFoam) -> Option<Vec<String>> {
    let g = graph(f);
    let mut taken = vec![false; g.n];
    if !completable(&g, &taken) {
        return None;
    }
    let mut out = Vec::new();
    for (id, a, b) in &g.edges {
        if taken[*a] || taken[*b] {
            continue;
        }
        taken[*a] = true;
        taken[*b] = true;
        if completable(&g, &taken) {
            out.push(id.clone());
        } else {
            taken[*a] = false;
            taken[*b] = false;
        }
    }
    Some(out)
}

/// Every perfect matching of the seam graph, each as a sorted edge-id list.
pub fn perfect_matchings(f: &PreFoam) -> Vec<Vec<String>> {
    let g = graph(f);
    let mut out = Vec::new();
    let mut taken = vec![false; g.n];
    let mut cur = Vec::new();
    enumerate(&g, &mut taken, &mut cur, &mut out);
    for m in &mut out {
        m.sort();
    }
    out.sort();
    out
}

fn enumerate(g: &Graph, taken: &mut [bool], cur: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    let Some(v) = (0..g.n).find(|&v| !taken[v]) else {
        out.push(cur.clone());
        return;
    };
    taken[v] = true;
    for (id, a, b) in &g.edges {
        let u = if *a == v {
            *b
        } else if *b == v {
            *a
        } else {
            continue;
        };
        if taken[u] {
            continue;
        }
        taken[u] = true;
        cur.push(id.clone());
        enumerate(g, taken, cur, out);
        cur.pop();
        taken[u] = false;
    }
    taken[v] = false;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{disk_foam, suspension_k4};

    #[test]
    fn suspension_matchings() {
        let f = suspension_k4(0, 0, 0);
        assert_eq!(perfect_matchings(&f).len(), 4);
        assert_eq!(lex_min_perfect_matching(&f).unwrap(), vec!["a"]);
    }

    #[test]
    fn lex_min_is_the_smallest_listed() {
        let f = disk_foam(
            &["p", "q", "r", "s"],
            &[
                ("a", "p", "q"),
                ("b", "p", "q"),
                ("c", "p", "s"),
                ("d", "p", "s"),
                ("e", "r", "q"),
                ("g", "r", "q"),
                ("h", "r", "s"),
                ("i", "r", "s"),
            ],
        )
        .unwrap();
        let all = perfect_matchings(&f);
        assert_eq!(all.len(), 8);
        assert_eq!(lex_min_perfect_matching(&f).unwrap(), all[0]);
    }
}
