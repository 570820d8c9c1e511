use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{CornerEnd, FoamViolation, FoamWithBoundary, PreFoam, Step};
use crate::web::{validate_web, Web};

fn viol(cell: impl Into<String>, problem: impl Into<String>) -> FoamViolation {
    FoamViolation {
        cell: cell.into(),
        problem: problem.into(),
    }
}

pub fn validate_prefoam(f: &PreFoam) -> Vec<FoamViolation> {
    check(f, None)
}

pub fn validate_foam_with_boundary(f: &FoamWithBoundary) -> Vec<FoamViolation> {
    let mut out: Vec<FoamViolation> = validate_web(&f.boundary_web)
        .into_iter()
        .map(|v| viol("boundary web", v.to_string()))
        .collect();
    if !out.is_empty() {
        return out;
    }
    out.extend(check(&f.foam, Some((&f.boundary_web, &f.attachments))));
    out
}

struct Boundary<'a> {
    web: &'a Web,
    attachments: &'a BTreeMap<String, [String; 3]>,
}

impl Boundary<'_> {
    fn is_vertex(&self, v: &str) -> bool {
        self.web.vertices.iter().any(|x| x == v)
    }
}

fn check(f: &PreFoam, boundary: Option<(&Web, &BTreeMap<String, [String; 3]>)>) -> Vec<FoamViolation> {
    let bd = boundary.map(|(web, attachments)| Boundary { web, attachments });
    let mut out = Vec::new();

    let mut seen = BTreeSet::new();
    for t in &f.tetra_points {
        if !seen.insert(t.as_str()) {
            out.push(viol(t, "tetrahedral point listed twice"));
        }
        if bd.as_ref().is_some_and(|b| b.is_vertex(t)) {
            out.push(viol(t, "tetrahedral point id clashes with a boundary vertex"));
        }
    }
    let mut ids = BTreeSet::new();
    for id in f
        .seam_edges
        .iter()
        .map(|e| &e.id)
        .chain(f.seam_circles.iter().map(|c| &c.id))
    {
        if !ids.insert(id.as_str()) {
            out.push(viol(id, "seam id used twice"));
        }
    }
    let mut fids = BTreeSet::new();
    for fc in &f.facets {
        if !fids.insert(fc.id.as_str()) {
            out.push(viol(&fc.id, "facet id used twice"));
        }
        if !fc.orientable && fc.genus == 0 {
            out.push(viol(&fc.id, "non-orientable facet needs at least one crosscap"));
        }
    }
    if !out.is_empty() {
        return out;
    }

    let edge_pos: HashMap<&str, usize> = f
        .seam_edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    let circle_pos: HashMap<&str, usize> = f
        .seam_circles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();
    let tetra: BTreeSet<&str> = f.tetra_points.iter().map(String::as_str).collect();

    // seam edge ends
    let mut web_vertex_ends: BTreeMap<&str, Vec<(usize, u8)>> = BTreeMap::new();
    for (i, e) in f.seam_edges.iter().enumerate() {
        for (k, x) in e.ends.iter().enumerate() {
            if tetra.contains(x.as_str()) {
                continue;
            }
            match &bd {
                Some(b) if b.is_vertex(x) => web_vertex_ends.entry(x.as_str()).or_default().push((i, k as u8)),
                _ => out.push(viol(&e.id, format!("end {k} references unknown point {x}"))),
            }
        }
    }

    // corners
    let mut corner_of: HashMap<(usize, u8, u8), (usize, u8, u8)> = HashMap::new();
    for t in &f.tetra_points {
        let incident: Vec<(usize, u8)> = f
            .seam_edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| (0..2u8).filter(move |&k| e.ends[k as usize] == *t).map(move |k| (i, k)))
            .collect();
        if incident.len() != 4 {
            out.push(viol(
                t,
                format!("{} incident seam edge-ends, expected 4", incident.len()),
            ));
            continue;
        }
        let Some(corners) = f.corners.get(t) else {
            out.push(viol(t, "no corners listed"));
            continue;
        };
        if corners.len() != 6 {
            out.push(viol(t, format!("{} corners listed, expected 6", corners.len())));
            continue;
        }
        let mut used = BTreeSet::new();
        let mut pairs = BTreeSet::new();
        let mut bad = false;
        for c in corners {
            let mut ends = Vec::new();
            for CornerEnd(e, k, s) in c {
                let Some(&ei) = edge_pos.get(e.as_str()) else {
                    out.push(viol(t, format!("corner names unknown seam edge {e}")));
                    bad = true;
                    continue;
                };
                if *k > 1 || f.seam_edges[ei].ends[*k as usize] != *t || *s > 2 {
                    out.push(viol(
                        t,
                        format!("corner entry ({e}, {k}, {s}) is not a branch at this point"),
                    ));
                    bad = true;
                    continue;
                }
                if !used.insert((ei, *k, *s)) {
                    out.push(viol(t, format!("branch ({e}, {k}, {s}) lies in two corners")));
                    bad = true;
                }
                ends.push((ei, *k, *s));
            }
            if ends.len() == 2 {
                let (a, b) = ((ends[0].0, ends[0].1), (ends[1].0, ends[1].1));
                if a == b {
                    out.push(viol(t, "corner joins an edge-end to itself"));
                    bad = true;
                } else if !pairs.insert((a.min(b), a.max(b))) {
                    out.push(viol(t, "two corners join the same pair of edge-ends"));
                    bad = true;
                }
                corner_of.insert(ends[0], ends[1]);
                corner_of.insert(ends[1], ends[0]);
            }
        }
        if !bad && pairs.len() != 6 {
            out.push(viol(t, "corners do not follow the tetrahedral pattern"));
        }
    }
    for t in f.corners.keys() {
        if !tetra.contains(t.as_str()) {
            out.push(viol(t, "corners given for an unknown tetrahedral point"));
        }
    }

    // web vertex attachments
    if let Some(b) = &bd {
        for v in &b.web.vertices {
            let n = web_vertex_ends.get(v.as_str()).map_or(0, Vec::len);
            if n != 1 {
                out.push(viol(v, format!("{n} seam edge-ends attached, expected 1")));
            }
            let mut want: Vec<String> = b
                .web
                .incident_ends(v)
                .into_iter()
                .map(|(e, k)| format!("{e}.{k}"))
                .collect();
            match b.attachments.get(v) {
                None => out.push(viol(v, "no attachment tokens")),
                Some(toks) => {
                    let mut got = toks.to_vec();
                    got.sort();
                    want.sort();
                    if got != want {
                        out.push(viol(v, "attachment tokens must list the incident web edge-ends"));
                    }
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    // walks
    let mut seam_cover: HashMap<(usize, u8), usize> = HashMap::new();
    let mut circle_cover: HashMap<(usize, u8), usize> = HashMap::new();
    let mut web_cover: HashMap<&str, usize> = HashMap::new();
    let web_edge = |id: &str| bd.as_ref().and_then(|b| b.web.edge(id));
    for fc in &f.facets {
        for (wi, walk) in fc.boundary.iter().enumerate() {
            let cell = format!("facet {} walk {wi}", fc.id);
            if walk.is_empty() {
                out.push(viol(&cell, "empty walk"));
                continue;
            }
            let lone = walk.len() == 1;
            let mut ok = true;
            for st in walk {
                match st {
                    Step::Circle(c, s, w) => {
                        let Some(&ci) = circle_pos.get(c.as_str()) else {
                            out.push(viol(&cell, format!("unknown seam circle {c}")));
                            ok = false;
                            continue;
                        };
                        if !lone {
                            out.push(viol(&cell, "a circle step must form a walk by itself"));
                            ok = false;
                        }
                        if *s > 2 {
                            out.push(viol(&cell, format!("slot {s} out of range")));
                            ok = false;
                            continue;
                        }
                        let mon = f.seam_circles[ci].monodromy;
                        if !(1..=3).contains(w) || mon.orbit_len(*s) != *w as usize {
                            out.push(viol(
                                c,
                                format!("winding {w} from slot {s} does not match monodromy {mon:?}"),
                            ));
                        }
                        for o in mon.orbits().into_iter().filter(|o| o.contains(s)) {
                            for x in o {
                                *circle_cover.entry((ci, x)).or_default() += 1;
                            }
                        }
                    }
                    Step::Seam(e, _, s) => match edge_pos.get(e.as_str()) {
                        Some(&ei) if *s < 3 => *seam_cover.entry((ei, *s)).or_default() += 1,
                        Some(_) => {
                            out.push(viol(&cell, format!("slot {s} out of range")));
                            ok = false;
                        }
                        None => {
                            out.push(viol(&cell, format!("unknown seam edge {e}")));
                            ok = false;
                        }
                    },
                    Step::Boundary(e, _) => match web_edge(e) {
                        Some(we) => {
                            *web_cover.entry(e.as_str()).or_default() += 1;
                            if we.is_free_circle() && !lone {
                                out.push(viol(&cell, format!("boundary circle {e} must form a walk by itself")));
                                ok = false;
                            }
                        }
                        None => {
                            out.push(viol(&cell, format!("unknown boundary edge {e}")));
                            ok = false;
                        }
                    },
                }
            }
            if !ok {
                continue;
            }
            // transitions
            let n = walk.len();
            for i in 0..n {
                let (a, b) = (&walk[i], &walk[(i + 1) % n]);
                if let Some(p) = transition_problem(f, &edge_pos, &corner_of, bd.as_ref(), a, b) {
                    out.push(viol(&cell, format!("step {i}: {p}")));
                }
            }
        }
    }

    let mut bad_slots = Vec::new();
    for (ei, e) in f.seam_edges.iter().enumerate() {
        for s in 0..3u8 {
            let c = seam_cover.get(&(ei, s)).copied().unwrap_or(0);
            if c != 1 {
                bad_slots.push(format!("{}[{s}] x{c}", e.id));
            }
        }
    }
    if !bad_slots.is_empty() {
        out.push(viol(
            "seam slots",
            format!("not traversed exactly once: {}", bad_slots.join(", ")),
        ));
    }
    for (ci, c) in f.seam_circles.iter().enumerate() {
        let bad: Vec<String> = (0..3u8)
            .filter_map(|s| {
                let n = circle_cover.get(&(ci, s)).copied().unwrap_or(0);
                (n != 1).then(|| format!("[{s}] x{n}"))
            })
            .collect();
        if !bad.is_empty() {
            out.push(viol(
                &c.id,
                format!("circle slots not covered exactly once: {}", bad.join(", ")),
            ));
        }
    }
    if let Some(b) = &bd {
        for e in &b.web.edges {
            let n = web_cover.get(e.id.as_str()).copied().unwrap_or(0);
            if n != 1 {
                out.push(viol(
                    &e.id,
                    format!("boundary edge lies on {n} facet walks, expected 1"),
                ));
            }
        }
    }
    out
}

fn transition_problem(
    f: &PreFoam,
    edge_pos: &HashMap<&str, usize>,
    corner_of: &HashMap<(usize, u8, u8), (usize, u8, u8)>,
    bd: Option<&Boundary>,
    a: &Step,
    b: &Step,
) -> Option<String> {
    match (a, b) {
        (Step::Circle(..), _) | (_, Step::Circle(..)) => None,
        (Step::Seam(e, d, s), next) => {
            let ei = edge_pos[e.as_str()];
            let arr = d.end_end();
            let point = &f.seam_edges[ei].ends[arr as usize];
            match next {
                Step::Seam(e2, d2, s2) => {
                    let ej = edge_pos[e2.as_str()];
                    let want = (ej, d2.start_end(), *s2);
                    match corner_of.get(&(ei, arr, *s)) {
                        Some(&got) if got == want => None,
                        Some(_) => Some(format!("no corner at {point} joins {e}[{s}] to {e2}[{s2}]")),
                        None => Some(format!("{e} does not end at a tetrahedral point here")),
                    }
                }
                Step::Boundary(we, d2) => {
                    let b = bd?;
                    let tok = format!("{we}.{}", d2.start_end());
                    let edge = b.web.edge(we)?;
                    let starts_here = edge.ends.as_ref().is_some_and(|x| x[d2.start_end() as usize] == *point);
                    match b.attachments.get(point.as_str()) {
                        Some(att) if starts_here && att[*s as usize] == tok => None,
                        _ => Some(format!("slot {s} of {e} at {point} does not lead onto web edge {we}")),
                    }
                }
                Step::Circle(..) => None,
            }
        }
        (Step::Boundary(we, d), next) => {
            let b = bd?;
            let ends = b.web.edge(we)?.ends.clone()?;
            let k = d.end_end();
            let point = &ends[k as usize];
            match next {
                Step::Seam(e2, d2, s2) => {
                    let ej = edge_pos[e2.as_str()];
                    let tok = format!("{we}.{k}");
                    let leaves_here = f.seam_edges[ej].ends[d2.start_end() as usize] == *point;
                    match b.attachments.get(point.as_str()) {
                        Some(att) if leaves_here && att[*s2 as usize] == tok => None,
                        _ => Some(format!("web edge {we} does not lead into slot {s2} of {e2} at {point}")),
                    }
                }
                _ => Some(format!("web edge {we} must be followed by a seam step")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{self, Dir};

    #[test]
    fn constructors_are_valid() {
        assert!(foam::theta_foam(0, 0, 0).validate().is_empty());
        assert!(foam::suspension_k4(0, 1, 2).validate().is_empty());
        assert!(foam::disk_cap(1).validate().is_empty());
        assert!(foam::theta_half(0, 1, 2).validate().is_empty());
    }

    #[test]
    fn doubled_slot_is_one_violation() {
        let mut f = foam::suspension_k4(0, 0, 0);
        let w = f.facets[0].boundary.clone();
        f.facets[1].boundary = w;
        let v = f.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].problem.contains("x2"));
    }

    #[test]
    fn winding_mismatch_is_one_violation() {
        let mut f = foam::theta_foam(0, 0, 0);
        f.facets[0].boundary = vec![vec![Step::Circle("c".into(), 0, 2)]];
        let v = f.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].cell, "c");
    }

    #[test]
    fn broken_corner_transition_is_reported() {
        let mut f = foam::suspension_k4(0, 0, 0);
        if let Step::Seam(_, d, _) = &mut f.facets[0].boundary[0][0] {
            *d = Dir::Rev;
        }
        assert!(!f.validate().is_empty());
    }
}
