use std::collections::BTreeMap;

use super::{Web, WebError, WebIndex};

/// Edge id → color in {1, 2, 3}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaitColoring {
    pub assignment: BTreeMap<String, u8>,
}

impl TaitColoring {
    pub fn is_valid_on(&self, w: &Web) -> bool {
        let Ok(ix) = w.index() else { return false };
        let color = |e: usize| self.assignment.get(&ix.edge_ids[e]).copied();
        if (0..ix.edge_count()).any(|e| !matches!(color(e), Some(1..=3))) {
            return false;
        }
        ix.incidence.iter().all(|inc| {
            let mut seen = 0u8;
            for &(e, _) in inc {
                seen |= 1 << color(e).unwrap();
            }
            seen == 0b1110
        })
    }
}

/// Number of Tait colorings; colorings differing by a color permutation are distinct.
pub fn tait_count(w: &Web) -> Result<u128, WebError> {
    tait_count_restricted(w, 0b111)
}

/// Colorings using only colors in `allowed` (bit `c` for color `c + 1`).
pub fn tait_count_restricted(w: &Web, allowed: u8) -> Result<u128, WebError> {
    let ix = w.index()?;
    Ok(count_with_mask(&ix, allowed & 0b111))
}

/// Orbits of Tait colorings under the six color permutations (Burnside).
pub fn tait_orbit_count(w: &Web) -> Result<u128, WebError> {
    let ix = w.index()?;
    // S3 acting on colors {0,1,2}: identity, three transpositions, two 3-cycles.
    // A coloring is fixed by a permutation iff every edge uses a fixed color of it.
    let fixed_masks = [0b111u8, 0b100, 0b010, 0b001, 0, 0];
    let total: u128 = fixed_masks.iter().map(|&m| count_with_mask(&ix, m)).sum();
    debug_assert_eq!(total % 6, 0);
    Ok(total / 6)
}

fn count_with_mask(ix: &WebIndex, allowed: u8) -> u128 {
    let mut factor: u128 = 1;
    let mut graph_edges = Vec::new();
    for (e, ends) in ix.ends.iter().enumerate() {
        match ends {
            None => factor *= allowed.count_ones() as u128,
            Some([a, b]) if a == b => return 0,
            Some(_) => graph_edges.push(e),
        }
    }
    if factor == 0 || graph_edges.is_empty() {
        return factor;
    }
    let mut search = Search {
        ix,
        allowed,
        color: vec![u8::MAX; ix.edge_count()],
        used: vec![0u8; ix.vertex_count()],
        open: graph_edges,
    };
    factor * search.run()
}

struct Search<'a> {
    ix: &'a WebIndex,
    allowed: u8,
    color: Vec<u8>,
    used: Vec<u8>,
    open: Vec<usize>,
}

impl Search<'_> {
    fn domain(&self, e: usize) -> u8 {
        let [a, b] = self.ix.ends[e].unwrap();
        self.allowed & !self.used[a] & !self.used[b]
    }

    fn run(&mut self) -> u128 {
        if self.open.is_empty() {
            return 1;
        }
        // smallest remaining domain first
        let mut best = 0;
        let mut best_size = u32::MAX;
        for (k, &e) in self.open.iter().enumerate() {
            let size = self.domain(e).count_ones();
            if size < best_size {
                best_size = size;
                best = k;
                if size == 0 {
                    return 0;
                }
            }
        }
        let e = self.open.swap_remove(best);
        let dom = self.domain(e);
        let [a, b] = self.ix.ends[e].unwrap();
        let mut total = 0;
        for c in 0..3u8 {
            if dom & (1 << c) == 0 {
                continue;
            }
            self.color[e] = c;
            self.used[a] |= 1 << c;
            self.used[b] |= 1 << c;
            total += self.run();
            self.used[a] &= !(1 << c);
            self.used[b] &= !(1 << c);
        }
        self.color[e] = u8::MAX;
        self.open.push(e);
        let last = self.open.len() - 1;
        self.open.swap(best, last);
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_counts() {
        assert_eq!(tait_count(&corpus::circle_web()).unwrap(), 3);
        assert_eq!(tait_count(&corpus::theta_web()).unwrap(), 6);
        assert_eq!(tait_count(&corpus::k4_web()).unwrap(), 6);
        assert_eq!(tait_count(&corpus::dumbbell_web()).unwrap(), 0);
        assert_eq!(tait_count(&Web::default()).unwrap(), 1);
    }

    #[test]
    fn orbits() {
        assert_eq!(tait_orbit_count(&corpus::theta_web()).unwrap(), 1);
        assert_eq!(tait_orbit_count(&corpus::circle_web()).unwrap(), 1);
        let two = Web {
            vertices: vec![],
            edges: vec![super::super::WebEdge::circle("a"), super::super::WebEdge::circle("b")],
        };
        // 9 colorings: 3 monochrome (one orbit) and 6 bichrome (one orbit)
        assert_eq!(tait_orbit_count(&two).unwrap(), 2);
    }

    #[test]
    fn restricted_single_color_has_no_vertex_colorings() {
        assert_eq!(tait_count_restricted(&corpus::theta_web(), 0b001).unwrap(), 0);
        assert_eq!(tait_count_restricted(&corpus::circle_web(), 0b001).unwrap(), 1);
    }

    #[test]
    fn coloring_validity() {
        let w = corpus::theta_web();
        let mut c = TaitColoring {
            assignment: BTreeMap::new(),
        };
        for (i, e) in w.edges.iter().enumerate() {
            c.assignment.insert(e.id.clone(), i as u8 + 1);
        }
        assert!(c.is_valid_on(&w));
        c.assignment.insert(w.edges[0].id.clone(), 2);
        assert!(!c.is_valid_on(&w));
    }
}
