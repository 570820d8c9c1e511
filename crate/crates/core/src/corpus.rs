//! Standard webs and foams used throughout the tests, benches and the bundled corpus.

use std::collections::BTreeMap;

use crate::foam::{self, FoamWithBoundary, PreFoam};
use crate::planar::RotationWeb;
use crate::web::{Web, WebEdge};

pub fn circle_web() -> Web {
    Web {
        vertices: vec![],
        edges: vec![WebEdge::circle("c")],
    }
}

pub fn theta_web() -> Web {
    Web::from_edges(&[("e1", "u", "w"), ("e2", "u", "w"), ("e3", "u", "w")])
}

/// Tetrahedron skeleton: `e1, e2, e3` meet at `a`; `f1 = cd`, `f2 = bd`, `f3 = bc`.
pub fn k4_web() -> Web {
    Web::from_edges(&[
        ("e1", "a", "b"),
        ("e2", "a", "c"),
        ("e3", "a", "d"),
        ("f1", "c", "d"),
        ("f2", "b", "d"),
        ("f3", "b", "c"),
    ])
}

/// Prism over an `n`-gon: outer cycle `o*`, inner cycle `i*`, rungs `r*`.
pub fn prism_web(n: usize) -> Web {
    assert!(n >= 2);
    let mut vertices = Vec::new();
    for i in 0..n {
        vertices.push(format!("o{i}"));
    }
    for i in 0..n {
        vertices.push(format!("i{i}"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push(WebEdge::new(format!("o{i}"), format!("o{i}"), format!("o{j}")));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push(WebEdge::new(format!("i{i}"), format!("i{i}"), format!("i{j}")));
    }
    for i in 0..n {
        edges.push(WebEdge::new(format!("r{i}"), format!("o{i}"), format!("i{i}")));
    }
    Web { vertices, edges }
}

pub fn cube_web() -> Web {
    prism_web(4)
}

pub fn petersen_web() -> Web {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(WebEdge::new(
            format!("o{i}"),
            format!("o{i}"),
            format!("o{}", (i + 1) % 5),
        ));
        edges.push(WebEdge::new(format!("s{i}"), format!("o{i}"), format!("i{i}")));
        edges.push(WebEdge::new(
            format!("i{i}"),
            format!("i{i}"),
            format!("i{}", (i + 2) % 5),
        ));
    }
    let vertices = (0..5)
        .map(|i| format!("o{i}"))
        .chain((0..5).map(|i| format!("i{i}")))
        .collect();
    Web { vertices, edges }
}

/// Outer pentagon `o*`, middle decagon `m*`, inner pentagon `p*`.
pub fn dodecahedron_web() -> Web {
    let mut vertices: Vec<String> = (0..5).map(|i| format!("o{i}")).collect();
    vertices.extend((0..10).map(|j| format!("m{j}")));
    vertices.extend((0..5).map(|i| format!("p{i}")));
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(WebEdge::new(
            format!("oo{i}"),
            format!("o{i}"),
            format!("o{}", (i + 1) % 5),
        ));
        edges.push(WebEdge::new(format!("om{i}"), format!("o{i}"), format!("m{}", 2 * i)));
        edges.push(WebEdge::new(
            format!("mp{i}"),
            format!("m{}", 2 * i + 1),
            format!("p{i}"),
        ));
        edges.push(WebEdge::new(
            format!("pp{i}"),
            format!("p{i}"),
            format!("p{}", (i + 1) % 5),
        ));
    }
    for j in 0..10 {
        edges.push(WebEdge::new(
            format!("mm{j}"),
            format!("m{j}"),
            format!("m{}", (j + 1) % 10),
        ));
    }
    Web { vertices, edges }
}

/// Two loops joined by the bridge `m`.
pub fn dumbbell_web() -> Web {
    Web::from_edges(&[("la", "a", "a"), ("m", "a", "b"), ("lb", "b", "b")])
}

fn rotation_from(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    pairs
        .iter()
        .map(|(v, r)| (v.to_string(), r.iter().map(|t| t.to_string()).collect()))
        .collect()
}

/// Counter-clockwise rotation read off a straight-line drawing.
fn rotation_from_coordinates(w: &Web, pos: &BTreeMap<String, (f64, f64)>) -> BTreeMap<String, Vec<String>> {
    let mut out = BTreeMap::new();
    for v in &w.vertices {
        let (x, y) = pos[v];
        let mut ends: Vec<(f64, String)> = Vec::new();
        for (e, k) in w.incident_ends(v) {
            let other = &w.edge(&e).unwrap().ends.as_ref().unwrap()[1 - k];
            let (ox, oy) = pos[other];
            ends.push(((oy - y).atan2(ox - x), format!("{e}.{k}")));
        }
        ends.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out.insert(v.clone(), ends.into_iter().map(|(_, t)| t).collect());
    }
    out
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

pub fn circle_planar() -> RotationWeb {
    RotationWeb {
        web: circle_web(),
        rotation: BTreeMap::new(),
    }
}

pub fn theta_planar() -> RotationWeb {
    RotationWeb {
        web: theta_web(),
        rotation: rotation_from(&[("u", &["e1.0", "e2.0", "e3.0"]), ("w", &["e3.1", "e2.1", "e1.1"])]),
    }
}

pub fn k4_planar() -> RotationWeb {
    let w = k4_web();
    let mut pos = BTreeMap::new();
    pos.insert("a".to_string(), (0.0, 0.0));
    pos.insert("b".to_string(), polar(2.0, 90.0));
    pos.insert("c".to_string(), polar(2.0, 210.0));
    pos.insert("d".to_string(), polar(2.0, 330.0));
    let rotation = rotation_from_coordinates(&w, &pos);
    RotationWeb { web: w, rotation }
}

pub fn prism_planar(n: usize) -> RotationWeb {
    let w = prism_web(n);
    if n == 2 {
        let rotation = rotation_from(&[
            ("o0", &["o1.1", "r0.0", "o0.0"]),
            ("o1", &["o0.1", "r1.0", "o1.0"]),
            ("i0", &["i0.0", "r0.1", "i1.1"]),
            ("i1", &["r1.1", "i0.1", "i1.0"]),
        ]);
        return RotationWeb { web: w, rotation };
    }
    let mut pos = BTreeMap::new();
    for i in 0..n {
        let a = 360.0 * i as f64 / n as f64;
        pos.insert(format!("o{i}"), polar(2.0, a));
        pos.insert(format!("i{i}"), polar(1.0, a));
    }
    let rotation = rotation_from_coordinates(&w, &pos);
    RotationWeb { web: w, rotation }
}

pub fn cube_planar() -> RotationWeb {
    prism_planar(4)
}

pub fn dodecahedron_planar() -> RotationWeb {
    let w = dodecahedron_web();
    let mut pos = BTreeMap::new();
    for i in 0..5 {
        pos.insert(format!("o{i}"), polar(3.0, 72.0 * i as f64));
        pos.insert(format!("p{i}"), polar(1.0, 72.0 * i as f64 + 36.0));
    }
    for j in 0..10 {
        pos.insert(format!("m{j}"), polar(2.0, 36.0 * j as f64));
    }
    let rotation = rotation_from_coordinates(&w, &pos);
    RotationWeb { web: w, rotation }
}

pub fn dumbbell_planar() -> RotationWeb {
    RotationWeb {
        web: dumbbell_web(),
        rotation: rotation_from(&[("a", &["m.0", "la.0", "la.1"]), ("b", &["lb.0", "m.1", "lb.1"])]),
    }
}

/// A bundled web: its file stem and, when it has one, a planar rotation.
pub struct CorpusWeb {
    pub name: &'static str,
    pub web: Web,
    pub planar: Option<RotationWeb>,
}

pub fn webs() -> Vec<CorpusWeb> {
    let planar = |name, rw: RotationWeb| CorpusWeb {
        name,
        web: rw.web.clone(),
        planar: Some(rw),
    };
    vec![
        planar("circle", circle_planar()),
        planar("theta", theta_planar()),
        planar("k4", k4_planar()),
        planar("prism2", prism_planar(2)),
        planar("prism3", prism_planar(3)),
        planar("cube", cube_planar()),
        CorpusWeb {
            name: "petersen",
            web: petersen_web(),
            planar: None,
        },
        planar("dodecahedron", dodecahedron_planar()),
        planar("dumbbell", dumbbell_planar()),
    ]
}

/// Bundled closed foams by file stem.
pub fn foams() -> Vec<(String, PreFoam)> {
    let mut out = Vec::new();
    for k in [[0, 0, 0], [0, 1, 2], [1, 1, 1], [0, 2, 2], [2, 1, 0]] {
        out.push((
            format!("theta_{}{}{}", k[0], k[1], k[2]),
            foam::theta_foam(k[0], k[1], k[2]),
        ));
    }
    for k in 0..4 {
        out.push((format!("sphere_{k}"), foam::dotted_sphere(k)));
    }
    for k in [[0, 0, 0], [0, 1, 2], [1, 1, 1], [2, 0, 1]] {
        let f = foam::suspension_k4(k[0], k[1], k[2]);
        out.push((format!("suspension_k4_{}{}{}", k[0], k[1], k[2]), f));
    }
    out.push(("torus".into(), foam::closed_surface(true, 1, 0)));
    out.push(("genus2".into(), foam::closed_surface(true, 2, 0)));
    out.push(("klein".into(), foam::closed_surface(false, 2, 0)));
    out
}

/// Generators over the unknot: disks with 0, 1, 2 dots.
pub fn unknot_generators() -> Vec<(String, FoamWithBoundary)> {
    (0..3).map(|k| (format!("d{k}"), foam::disk_cap(k))).collect()
}

/// Generators over the theta web: half-thetas with dots `(0, a, b)`, `a <= 1`, `b <= 2`.
pub fn theta_generators() -> Vec<(String, FoamWithBoundary)> {
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..3 {
            out.push((format!("half_0{a}{b}"), foam::theta_half(0, a, b)));
        }
    }
    out
}
