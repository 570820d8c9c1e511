//! Property suites over the bundled corpus and seeded random inputs.
//! Cases run on the current rayon pool; reports keep case order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusWeb;
use crate::foam::{random_closed_foam, PreFoam};
use crate::homalg::{
    e1_page, gysin_check, random_simplicial_cover, xi_multiply, CubeComplex, DotAlgebra, DotKind, DotPoly,
    GroupRingElement,
};
use crate::jflat::{self, JflatError, RelationTally};
use crate::planar::{check_conjecture, random_reducible_web, reduce_with, Strategy};

/// One property with the number of instances checked and those that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyLine {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyLine {
    fn new(name: &str) -> Self {
        PropertyLine {
            name: name.into(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, t: RelationTally, context: &str) {
        self.checked += t.checked;
        self.failures
            .extend(t.failures.into_iter().map(|f| format!("{context}: {f}")));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyLine>,
    /// Per-case table, for suites that have one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<ConjectureRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyLine::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.properties.iter().map(|p| p.failures.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub web: String,
    /// Reduction value, `None` when stuck.
    pub reduced: Option<String>,
    pub tait: String,
    pub agree: Option<bool>,
}

type Check = fn(&PreFoam) -> Result<RelationTally, JflatError>;

const RELATIONS: [(&str, Check); 6] = [
    ("dot migration", jflat::dot_migration_check),
    ("bubble bursting", jflat::bubble_check),
    ("torus as a dot", jflat::torus_dot_check),
    ("triple dot vanishing", jflat::triple_dot_check),
    ("neck cutting", jflat::neck_check),
    ("cut order independence", jflat::cut_order_check),
];

/// Seeded random closed foams with at most three seam circles.
pub fn random_foams(seed: u64, count: usize) -> Vec<(String, PreFoam)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| (format!("random_{i}"), random_closed_foam(&mut rng)))
        .collect()
}

pub fn relations_suite(foams: &[(String, PreFoam)]) -> SuiteReport {
    let per_case: Vec<Vec<(usize, Result<RelationTally, String>)>> = foams
        .par_iter()
        .map(|(_, f)| {
            RELATIONS
                .iter()
                .enumerate()
                .map(|(i, (_, check))| (i, check(f).map_err(|e| e.to_string())))
                .collect()
        })
        .collect();
    let mut lines: Vec<PropertyLine> = RELATIONS.iter().map(|(n, _)| PropertyLine::new(n)).collect();
    for ((name, _), results) in foams.iter().zip(per_case) {
        for (i, r) in results {
            match r {
                Ok(t) => lines[i].absorb(t, name),
                Err(e) => lines[i].record(false, || format!("{name}: {e}")),
            }
        }
    }
    SuiteReport {
        suite: "relations".into(),
        properties: lines,
        rows: Vec::new(),
    }
}

pub fn welldef_suite(foams: &[(String, PreFoam)]) -> SuiteReport {
    let results: Vec<Result<(bool, bool, bool), String>> = foams
        .par_iter()
        .map(|(_, f)| {
            let w = jflat::well_definedness_report(f).map_err(|e| e.to_string())?;
            let t = jflat::evaluate_traced(f).map_err(|e| e.to_string())?;
            let replayed = jflat::replay(f, &t).is_ok();
            let agrees = w.values.iter().all(|&v| (v == 1) == t.value);
            Ok((w.is_single_valued(), agrees, replayed))
        })
        .collect();
    let mut single = PropertyLine::new("single value over all choices");
    let mut agrees = PropertyLine::new("value equals the default evaluation");
    let mut replay = PropertyLine::new("trace replays");
    for ((name, _), r) in foams.iter().zip(results) {
        match r {
            Ok((s, a, p)) => {
                single.record(s, || name.clone());
                agrees.record(a, || name.clone());
                replay.record(p, || name.clone());
            }
            Err(e) => single.record(false, || format!("{name}: {e}")),
        }
    }
    SuiteReport {
        suite: "welldef".into(),
        properties: vec![single, agrees, replay],
        rows: Vec::new(),
    }
}

pub fn conjecture_suite(webs: &[CorpusWeb], seed: u64, random_count: usize) -> SuiteReport {
    let mut rows = Vec::new();
    let mut corpus = PropertyLine::new("reduction equals Tait count on corpus webs");
    let mut confluence = PropertyLine::new("random rule orders agree");
    for cw in webs {
        let Some(rw) = &cw.planar else { continue };
        match check_conjecture(rw) {
            Ok(c) => {
                if let Some(a) = c.agree {
                    corpus.record(a, || cw.name.to_string());
                    let v = c.reduced.value().cloned();
                    for s in 0..8 {
                        let r = reduce_with(
                            rw,
                            Strategy::Random {
                                seed: seed.wrapping_add(s),
                            },
                            None,
                        )
                        .ok();
                        confluence.record(r.as_ref().and_then(|r| r.value().cloned()) == v, || {
                            format!("{} seed {s}", cw.name)
                        });
                    }
                }
                rows.push(ConjectureRow {
                    web: cw.name.to_string(),
                    reduced: c.reduced.value().map(ToString::to_string),
                    tait: c.tait.to_string(),
                    agree: c.agree,
                });
            }
            Err(e) => corpus.record(false, || format!("{}: {e}", cw.name)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<(u64, usize)> = (0..random_count).map(|_| (rng.gen(), rng.gen_range(2..=16))).collect();
    let random: Vec<bool> = sizes
        .par_iter()
        .map(|&(s, n)| {
            let rw = random_reducible_web(&mut ChaCha8Rng::seed_from_u64(s), n);
            check_conjecture(&rw).is_ok_and(|c| c.agree == Some(true))
        })
        .collect();
    let mut rand_line = PropertyLine::new("reduction equals Tait count on random reducible webs");
    for (i, ok) in random.into_iter().enumerate() {
        rand_line.record(ok, || format!("random web {i}"));
    }
    SuiteReport {
        suite: "conjecture".into(),
        properties: vec![corpus, confluence, rand_line],
        rows,
    }
}

/// `x_I ξ_A` computed through the group basis, where `x_I` acts by translation.
fn xi_multiply_by_translation(i: u32, e: &GroupRingElement) -> GroupRingElement {
    let g = e.to_group_basis().into_iter().map(|b| b ^ i).collect();
    GroupRingElement::from_group_basis(e.n, &g)
}

pub fn algebra_suite(seed: u64, covers: usize) -> SuiteReport {
    let mut formula = PropertyLine::new("x_I xi_A expansion");
    let mut filtration = PropertyLine::new("x_I fixes xi_A modulo the next filtration level");
    let mut graded = PropertyLine::new("graded pieces have binomial dimensions");
    for n in 0..=4u32 {
        let full = (1u32 << n) - 1;
        let mut level_sizes = vec![0usize; n as usize + 1];
        for a in 0..=full {
            level_sizes[a.count_ones() as usize] += 1;
            let xa = GroupRingElement::xi(n, a).expect("mask in range");
            for i in 0..=full {
                let fast = xi_multiply(i, &xa).expect("mask in range");
                formula.record(fast == xi_multiply_by_translation(i, &xa), || {
                    format!("n={n} I={i:b} A={a:b}")
                });
                let diff = fast.add(&xa);
                filtration.record(diff.filtration_level().is_none_or(|l| l > a.count_ones()), || {
                    format!("n={n} I={i:b} A={a:b}")
                });
            }
        }
        let e1 = e1_page(&[1], n);
        graded.record(e1 == level_sizes, || format!("n={n}: {e1:?} vs {level_sizes:?}"));
    }

    let mut gysin = PropertyLine::new("double cover sequence is exact");
    let mut nonvanishing = PropertyLine::new("non-zero cover homology forces non-zero base homology");
    let mut cube = PropertyLine::new("cube differential from a cover squares to zero");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complexes: Vec<_> = (0..covers).map(|_| random_simplicial_cover(&mut rng, 20, 1)).collect();
    let reports: Vec<_> = complexes.par_iter().map(gysin_check).collect();
    for (i, r) in reports.into_iter().enumerate() {
        match r {
            Ok(r) => {
                gysin.record(r.holds(), || format!("cover {i}: {r:?}"));
                let hc: usize = r.cover_homology.iter().sum();
                let hb: usize = r.base_homology.iter().sum();
                nonvanishing.record(hc == 0 || hb > 0, || format!("cover {i}"));
            }
            Err(e) => gysin.record(false, || format!("cover {i}: {e}")),
        }
    }
    for i in 0..covers.min(20) {
        let c = random_simplicial_cover(&mut rng, 14, 2);
        let ok = CubeComplex::from_shifts(2, c.total_dim(), &c.shift_parts())
            .and_then(|q| Ok(q.homology_dim()? == c.cover()?.total_homology()))
            .unwrap_or(false);
        cube.record(ok, || format!("four-sheeted cover {i}"));
    }

    let mut dots = PropertyLine::new("dot algebra pairings are non-degenerate");
    let unknot = DotAlgebra::new(DotKind::Unknot).gram_matrix();
    let anti = (0..3).all(|i| (0..3).all(|j| unknot.get(i, j) == (i + j == 2)));
    dots.record(anti && unknot.rank() == 3, || "unknot Gram matrix".into());
    let flag = DotAlgebra::new(DotKind::Flag);
    dots.record(flag.gram_matrix().rank() == 6, || "flag Gram matrix".into());
    let mut degree = PropertyLine::new("flag monomials of degree four vanish");
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            let c = 4 - a - b;
            degree.record(flag.reduce(&DotPoly::monomial([a, b, c])).is_zero(), || {
                format!("u1^{a} u2^{b} u3^{c}")
            });
        }
    }

    SuiteReport {
        suite: "algebra".into(),
        properties: vec![formula, filtration, graded, gysin, nonvanishing, cube, dots, degree],
        rows: Vec::new(),
    }
}

/// Rows rendered as `web reduced tait agree`, with `stuck` and `n/a` for stuck webs.
pub fn format_rows(rows: &[ConjectureRow]) -> Vec<String> {
    rows.iter()
        .map(|r| {
            format!(
                "{:<14} {:>8} {:>8} {}",
                r.web,
                r.reduced.as_deref().unwrap_or("stuck"),
                r.tait,
                match r.agree {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                }
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_suites_pass() {
        let foams = corpus::foams();
        let r = relations_suite(&foams);
        assert!(r.passed(), "{r:?}");
        let w = welldef_suite(&foams);
        assert!(w.passed(), "{w:?}");
        assert_eq!(w.properties[0].checked, foams.len());
    }

    #[test]
    fn conjecture_rows_mark_stuck_webs() {
        let r = conjecture_suite(&corpus::webs(), 1, 10);
        assert!(r.passed(), "{r:?}");
        let dodec = r.rows.iter().find(|x| x.web == "dodecahedron").unwrap();
        assert_eq!(
            (dodec.reduced.as_deref(), dodec.tait.as_str(), dodec.agree),
            (None, "60", None)
        );
        let cube = r.rows.iter().find(|x| x.web == "cube").unwrap();
        assert_eq!(cube.reduced.as_deref(), Some("24"));
    }

    #[test]
    fn algebra_suite_passes() {
        let r = algebra_suite(3, 10);
        assert!(r.passed(), "{r:?}");
    }
}
