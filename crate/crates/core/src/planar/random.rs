use rand::Rng;

use super::{PMap, RotationWeb};
use crate::corpus;

/// Random connected planar web with at most `max_vertices` vertices (at least 2).
///
/// Grown from the theta web by inserting chords inside faces and by blowing
/// vertices up into triangles. Below 20 vertices every such web has a face
/// of length at most 4, so the reduction never gets stuck.
pub fn random_reducible_web<R: Rng>(rng: &mut R, max_vertices: usize) -> RotationWeb {
    let mut m = corpus::theta_planar().to_map().expect("theta rotation is valid");
    let target = 2 + 2 * rng.gen_range(0..=max_vertices.saturating_sub(2) / 2);
    while m.vertex_count() < target {
        if rng.gen_bool(0.25) {
            expand_vertex(&mut m, rng);
        } else {
            insert_chord(&mut m, rng);
        }
    }
    debug_assert_eq!(m.genera(), vec![0]);
    m.to_rotation_web()
}

fn subdivide(m: &mut PMap, d: usize) -> (usize, usize) {
    let d2 = m.mate[d];
    let (m1, m2) = (m.push_dart(), m.push_dart());
    m.mate[d] = m1;
    m.mate[m1] = d;
    m.mate[m2] = d2;
    m.mate[d2] = m2;
    m.next[m1] = m2;
    m.next[m2] = m1;
    (m1, m2)
}

fn insert_chord<R: Rng>(m: &mut PMap, rng: &mut R) {
    let faces = m.faces();
    let face = &faces[rng.gen_range(0..faces.len())];
    let g1 = face[rng.gen_range(0..face.len())];
    let g2 = face[rng.gen_range(0..face.len())];
    let (a1, a2) = subdivide(m, g1);
    let (b1, b2) = subdivide(m, g2);
    let (p, q) = (m.push_dart(), m.push_dart());
    m.mate[p] = q;
    m.mate[q] = p;
    m.next[a1] = p;
    m.next[p] = a2;
    m.next[a2] = a1;
    m.next[b1] = q;
    m.next[q] = b2;
    m.next[b2] = b1;
}

fn expand_vertex<R: Rng>(m: &mut PMap, rng: &mut R) {
    let vof = m.vertex_of();
    let verts: Vec<usize> = m.darts().filter(|&d| vof[d] == d).collect();
    let a = verts[rng.gen_range(0..verts.len())];
    let b = m.next[a];
    let c = m.next[b];
    let edge = |m: &mut PMap| {
        let (x, y) = (m.push_dart(), m.push_dart());
        m.mate[x] = y;
        m.mate[y] = x;
        (x, y)
    };
    let (ab_a, ab_b) = edge(m);
    let (bc_b, bc_c) = edge(m);
    let (ca_c, ca_a) = edge(m);
    let cycle = |m: &mut PMap, r: [usize; 3]| {
        m.next[r[0]] = r[1];
        m.next[r[1]] = r[2];
        m.next[r[2]] = r[0];
    };
    cycle(m, [a, ab_a, ca_a]);
    cycle(m, [ab_b, b, bc_b]);
    cycle(m, [bc_c, c, ca_c]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::reduce_dimension;
    use crate::web::tait_count;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_webs_are_planar_and_reducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let rw = random_reducible_web(&mut rng, 12);
            assert!(rw.web.validate().is_empty());
            assert!(rw.is_planar().unwrap());
            let v = reduce_dimension(&rw).unwrap();
            assert_eq!(v.value().unwrap().to_u128().unwrap(), tait_count(&rw.web).unwrap());
        }
    }
}
