use crate::foam::{FoamError, Perm, PreFoam, Step};

/// Neck-cuts seam circle `c` (identity monodromy only).
///
/// Returns six foams, one per permutation `a` of `(0, 1, 2)` in [`Perm::ALL`]
/// order: the circle is removed and the boundary circle of the facet on
/// sheet `s` is capped by a disk with `a(s)` dots.
pub fn cut_seam_circle(f: &PreFoam, c: &str) -> Result<Vec<PreFoam>, FoamError> {
    let circ = f
        .seam_circles
        .iter()
        .find(|x| x.id == c)
        .ok_or_else(|| FoamError::UnknownCircle(c.to_string()))?;
    if !circ.monodromy.is_identity() {
        return Err(FoamError::Monodromy(c.to_string()));
    }
    let owners = f.circle_facets(c)?;
    let mut base = f.clone();
    base.seam_circles.retain(|x| x.id != c);
    for fc in &mut base.facets {
        fc.boundary
            .retain(|w| !matches!(w.as_slice(), [Step::Circle(id, ..)] if id == c));
    }
    Ok(Perm::ALL
        .into_iter()
        .map(|p| {
            let mut g = base.clone();
            for (s, &fi) in owners.iter().enumerate() {
                g.facets[fi].dots += u32::from(p.apply(s as u8));
            }
            g
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{attach_bubble, theta_foam, BubbleCap, Facet, SeamCircle};
    use crate::jflat::evaluate;

    #[test]
    fn theta_terms() {
        let terms = cut_seam_circle(&theta_foam(0, 1, 1), "c").unwrap();
        assert_eq!(terms.len(), 6);
        let dots: Vec<Vec<u32>> = terms
            .iter()
            .map(|g| g.facets.iter().map(|x| x.dots).collect())
            .collect();
        assert_eq!(dots[0], vec![0, 2, 3]);
        assert!(terms
            .iter()
            .all(|g| g.seam_circles.is_empty() && g.facets.iter().all(|x| x.boundary.is_empty())));
        assert!(terms.iter().all(|g| g.euler_characteristic() == 6));
    }

    #[test]
    fn one_facet_on_two_sheets_gets_two_caps() {
        let f = PreFoam {
            seam_circles: vec![SeamCircle {
                id: "c".into(),
                monodromy: Perm::Id,
            }],
            facets: vec![
                Facet {
                    id: "a".into(),
                    orientable: true,
                    genus: 0,
                    dots: 0,
                    boundary: vec![
                        vec![Step::Circle("c".into(), 0, 1)],
                        vec![Step::Circle("c".into(), 1, 1)],
                    ],
                },
                Facet {
                    id: "b".into(),
                    orientable: true,
                    genus: 0,
                    dots: 0,
                    boundary: vec![vec![Step::Circle("c".into(), 2, 1)]],
                },
            ],
            ..PreFoam::default()
        };
        assert!(f.validate().is_empty());
        let terms = cut_seam_circle(&f, "c").unwrap();
        let a: Vec<u32> = terms.iter().map(|g| g.facets[0].dots).collect();
        assert_eq!(a, vec![1, 1, 3, 2, 3, 2]);
    }

    #[test]
    fn annulus_becomes_sphere() {
        let f = attach_bubble(&theta_foam(0, 1, 2), "f1", BubbleCap::Disk(1)).unwrap();
        let terms = cut_seam_circle(&f, "bubble").unwrap();
        for g in &terms {
            let f1 = g.facet("f1").unwrap();
            assert_eq!((f1.genus, f1.boundary.len()), (0, 1));
        }
        assert_eq!(
            terms.iter().filter(|g| evaluate(g).unwrap()).count() % 2,
            usize::from(evaluate(&f).unwrap())
        );
    }

    #[test]
    fn twisted_circle_is_refused() {
        let mut f = theta_foam(0, 1, 2);
        f.seam_circles[0].monodromy = Perm::T01;
        assert!(matches!(cut_seam_circle(&f, "c"), Err(FoamError::Monodromy(_))));
    }
}
