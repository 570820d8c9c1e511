use rand::Rng;

use super::{Facet, Perm, PreFoam, SeamCircle, Step};

/// Random closed foam made of facets and at most three seam circles.
/// Monodromies are mostly trivial; facets have small genus and dot counts.
pub fn random_closed_foam<R: Rng>(rng: &mut R) -> PreFoam {
    let mut f = PreFoam::default();
    let new_facet = |rng: &mut R, n: usize| {
        let orientable = rng.gen_bool(0.85);
        let genus = if orientable {
            rng.gen_range(0..=2)
        } else {
            rng.gen_range(1..=2)
        };
        let genus = if orientable && rng.gen_bool(0.6) { 0 } else { genus };
        Facet {
            id: format!("f{n}"),
            orientable,
            genus,
            dots: rng.gen_range(0..=3),
            boundary: Vec::new(),
        }
    };
    for c in 0..rng.gen_range(0..=3) {
        let id = format!("c{c}");
        let mon = if rng.gen_bool(0.8) {
            Perm::Id
        } else {
            Perm::ALL[rng.gen_range(1..6)]
        };
        f.seam_circles.push(SeamCircle {
            id: id.clone(),
            monodromy: mon,
        });
        for orbit in mon.orbits() {
            let step = vec![Step::Circle(id.clone(), orbit[0], orbit.len() as u8)];
            if !f.facets.is_empty() && rng.gen_bool(0.35) {
                let i = rng.gen_range(0..f.facets.len());
                f.facets[i].boundary.push(step);
            } else {
                let mut fc = new_facet(rng, f.facets.len() + 1);
                fc.boundary.push(step);
                f.facets.push(fc);
            }
        }
    }
    if f.facets.is_empty() || rng.gen_bool(0.2) {
        let fc = new_facet(rng, f.facets.len() + 1);
        f.facets.push(fc);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_foams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = random_closed_foam(&mut rng);
            assert!(f.validate().is_empty(), "{:?}", f.validate());
            assert!(f.seam_circles.len() <= 3);
        }
    }
}
