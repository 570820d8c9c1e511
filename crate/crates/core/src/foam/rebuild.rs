//! Reassembles a closed pre-foam after local surgery.
//!
//! Old seam edges become pieces whose ends either stay at a tetrahedral point
//! or meet another piece end at a junction. Chains of pieces between
//! tetrahedral points become the new seam edges, closed chains become seam
//! circles, and facets whose slots are identified across a junction merge.

use std::collections::{BTreeMap, HashMap};

use super::{Corner, CornerEnd, Dir, FoamError, Perm, PreFoam, SeamCircle, SeamEdge, Step};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Owner {
    pub facet: usize,
    /// Walk direction along the slot; `None` for non-orientable facets.
    pub forward: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum EndAt {
    Tetra(String),
    Junction,
}

#[derive(Debug, Clone)]
pub(crate) struct Piece {
    pub id: String,
    pub ends: [EndAt; 2],
}

/// Two piece ends meeting at a junction; `map[s]` is the slot of `b` continuing slot `s` of `a`.
#[derive(Debug, Clone)]
pub(crate) struct Link {
    pub a: (usize, u8),
    pub b: (usize, u8),
    pub map: [u8; 3],
}

#[derive(Debug, Clone)]
pub(crate) struct OldFacet {
    pub id: String,
    pub orientable: bool,
    pub chi: i64,
    pub dots: u32,
}

/// `(piece, end, slot)`.
pub(crate) type PieceSlot = (usize, u8, u8);

#[derive(Debug, Default)]
pub(crate) struct Surgery {
    pub tetra: Vec<String>,
    pub pieces: Vec<Piece>,
    pub owners: Vec<[Owner; 3]>,
    pub links: Vec<Link>,
    pub circles: Vec<(SeamCircle, [Owner; 3])>,
    /// Corners at surviving tetrahedral points as `(piece, end, slot)` pairs.
    pub corners: Vec<(String, Vec<[PieceSlot; 2]>)>,
    pub facets: Vec<OldFacet>,
    pub chi_delta: Vec<(usize, i64)>,
    /// Extra facet identifications `(a, b, orientation flip)`.
    pub merges: Vec<(usize, usize, bool)>,
}

/// Offsets and junction ends recorded by [`Surgery::add_foam`].
pub(crate) struct Added {
    pub facet_offset: usize,
    /// `(point, piece, end)` for every piece end placed at a junction.
    pub junction_ends: Vec<(String, usize, u8)>,
    pub piece_of: HashMap<String, usize>,
}

fn inconsistent(msg: impl Into<String>) -> FoamError {
    FoamError::Inconsistent(msg.into())
}

impl Surgery {
    /// Adds every cell of `f` with ids suffixed. Points for which `junction`
    /// holds are not kept; piece ends there become junctions. The edge `skip`
    /// is left out.
    pub fn add_foam(
        &mut self,
        f: &PreFoam,
        suffix: &str,
        junction: &dyn Fn(&str) -> bool,
        skip: Option<&str>,
    ) -> Result<Added, FoamError> {
        let facet_offset = self.facets.len();
        for fc in &f.facets {
            self.facets.push(OldFacet {
                id: format!("{}{suffix}", fc.id),
                orientable: fc.orientable,
                chi: fc.euler_characteristic(),
                dots: fc.dots,
            });
        }
        let unset = Owner {
            facet: usize::MAX,
            forward: None,
        };
        let mut piece_of = HashMap::new();
        let mut junction_ends = Vec::new();
        for e in &f.seam_edges {
            if Some(e.id.as_str()) == skip {
                continue;
            }
            let p = self.pieces.len();
            let end = |k: usize| {
                if junction(&e.ends[k]) {
                    EndAt::Junction
                } else {
                    EndAt::Tetra(format!("{}{suffix}", e.ends[k]))
                }
            };
            let ends = [end(0), end(1)];
            for (k, x) in ends.iter().enumerate() {
                if *x == EndAt::Junction {
                    junction_ends.push((e.ends[k].clone(), p, k as u8));
                }
            }
            self.pieces.push(Piece {
                id: format!("{}{suffix}", e.id),
                ends,
            });
            self.owners.push([unset; 3]);
            piece_of.insert(e.id.clone(), p);
        }
        for (i, fc) in f.facets.iter().enumerate() {
            for w in &fc.boundary {
                for st in w {
                    if let Step::Seam(e, d, s) = st {
                        if let Some(&p) = piece_of.get(e) {
                            self.owners[p][*s as usize] = Owner {
                                facet: facet_offset + i,
                                forward: fc.orientable.then_some(d.is_forward()),
                            };
                        }
                    }
                }
            }
        }
        if let Some(p) = self.owners.iter().position(|o| o.iter().any(|x| x.facet == usize::MAX)) {
            return Err(inconsistent(format!(
                "seam edge {} has an unowned slot",
                self.pieces[p].id
            )));
        }
        for c in &f.seam_circles {
            let fs = f.circle_facets(&c.id)?;
            let owners = fs.map(|i| Owner {
                facet: facet_offset + i,
                forward: None,
            });
            self.circles.push((
                SeamCircle {
                    id: format!("{}{suffix}", c.id),
                    monodromy: c.monodromy,
                },
                owners,
            ));
        }
        for t in &f.tetra_points {
            if junction(t) {
                continue;
            }
            self.tetra.push(format!("{t}{suffix}"));
            let mut list = Vec::new();
            for c in f.corners.get(t).into_iter().flatten() {
                let entry = |x: &CornerEnd| -> Result<(usize, u8, u8), FoamError> {
                    let p = *piece_of
                        .get(&x.0)
                        .ok_or_else(|| inconsistent(format!("corner at {t} uses a removed seam edge {}", x.0)))?;
                    Ok((p, x.1, x.2))
                };
                list.push([entry(&c[0])?, entry(&c[1])?]);
            }
            self.corners.push((format!("{t}{suffix}"), list));
        }
        Ok(Added {
            facet_offset,
            junction_ends,
            piece_of,
        })
    }

    pub fn run(self) -> Result<PreFoam, FoamError> {
        rebuild(self)
    }
}

struct SignedDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    bad: Vec<bool>,
}

impl SignedDsu {
    fn new(n: usize) -> Self {
        SignedDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
            bad: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        for &n in path.iter().rev() {
            let p = self.parent[n];
            if p != r {
                self.parity[n] ^= self.parity[p];
            }
            self.parent[n] = r;
        }
        (r, if x == r { false } else { self.parity[x] })
    }

    fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                self.bad[ra] = true;
            }
        } else {
            self.parent[ra] = rb;
            self.parity[ra] = pa ^ pb ^ flip;
            self.bad[rb] |= self.bad[ra];
        }
    }

    fn mark_bad(&mut self, a: usize) {
        let (r, _) = self.find(a);
        self.bad[r] = true;
    }
}

struct Segment {
    piece: usize,
    forward: bool,
    /// New slot to piece slot.
    map: [u8; 3],
}

struct Chain {
    id: String,
    ends: [String; 2],
    segments: Vec<Segment>,
}

fn compose(link: [u8; 3], map: [u8; 3]) -> [u8; 3] {
    map.map(|s| link[s as usize])
}

fn invert(map: [u8; 3]) -> [u8; 3] {
    let mut out = [0; 3];
    for (i, &s) in map.iter().enumerate() {
        out[s as usize] = i as u8;
    }
    out
}

fn rebuild(s: Surgery) -> Result<PreFoam, FoamError> {
    let np = s.pieces.len();
    let mut link_at: HashMap<(usize, u8), (usize, u8, [u8; 3])> = HashMap::new();
    for l in &s.links {
        for (from, to, map) in [(l.a, l.b, l.map), (l.b, l.a, invert(l.map))] {
            if s.pieces[from.0].ends[from.1 as usize] != EndAt::Junction
                || link_at.insert(from, (to.0, to.1, map)).is_some()
            {
                return Err(inconsistent(format!(
                    "piece end {}.{} linked twice or not at a junction",
                    s.pieces[from.0].id, from.1
                )));
            }
        }
    }

    // facet classes
    let mut dsu = SignedDsu::new(s.facets.len());
    for (i, f) in s.facets.iter().enumerate() {
        if !f.orientable {
            dsu.mark_bad(i);
        }
    }
    for l in &s.links {
        for a_slot in 0..3u8 {
            let oa = s.owners[l.a.0][a_slot as usize];
            let ob = s.owners[l.b.0][l.map[a_slot as usize] as usize];
            match (oa.forward, ob.forward) {
                (Some(fa), Some(fb)) => {
                    let rel_a = fa == (l.a.1 == 1);
                    let rel_b = fb == (l.b.1 == 0);
                    dsu.union(oa.facet, ob.facet, rel_a != rel_b);
                }
                _ => {
                    dsu.union(oa.facet, ob.facet, false);
                    dsu.mark_bad(oa.facet);
                }
            }
        }
    }
    for &(a, b, flip) in &s.merges {
        dsu.union(a, b, flip);
    }

    // chains between tetrahedral points
    let tpos: HashMap<&str, usize> = s.tetra.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
    let mut starts: Vec<(usize, usize, u8)> = Vec::new();
    for (p, pc) in s.pieces.iter().enumerate() {
        for k in 0..2u8 {
            if let EndAt::Tetra(t) = &pc.ends[k as usize] {
                let ti = *tpos
                    .get(t.as_str())
                    .ok_or_else(|| inconsistent(format!("unknown point {t}")))?;
                starts.push((ti, p, k));
            }
        }
    }
    starts.sort();
    let mut used = vec![false; np];
    let mut chains: Vec<Chain> = Vec::new();
    for &(_, p0, k0) in &starts {
        if used[p0] {
            continue;
        }
        let EndAt::Tetra(t0) = &s.pieces[p0].ends[k0 as usize] else {
            unreachable!()
        };
        let (mut p, mut k, mut map) = (p0, k0, [0u8, 1, 2]);
        let mut segments = Vec::new();
        let last = loop {
            if used[p] {
                return Err(inconsistent(format!("seam piece {} visited twice", s.pieces[p].id)));
            }
            used[p] = true;
            segments.push(Segment {
                piece: p,
                forward: k == 0,
                map,
            });
            let ko = 1 - k;
            match &s.pieces[p].ends[ko as usize] {
                EndAt::Tetra(t) => break t.clone(),
                EndAt::Junction => {
                    let &(q, kq, lm) = link_at
                        .get(&(p, ko))
                        .ok_or_else(|| inconsistent(format!("piece end {}.{ko} is left open", s.pieces[p].id)))?;
                    map = compose(lm, map);
                    p = q;
                    k = kq;
                }
            }
        };
        let id = segments
            .iter()
            .map(|g| s.pieces[g.piece].id.as_str())
            .collect::<Vec<_>>()
            .join("~");
        chains.push(Chain {
            id,
            ends: [t0.clone(), last],
            segments,
        });
    }

    // closed chains
    let mut circles: Vec<(SeamCircle, [Owner; 3])> = s.circles.clone();
    for p0 in 0..np {
        if used[p0] {
            continue;
        }
        let (mut p, mut k, mut map) = (p0, 0u8, [0u8, 1, 2]);
        let mut ids = Vec::new();
        loop {
            used[p] = true;
            ids.push(s.pieces[p].id.clone());
            let ko = 1 - k;
            if s.pieces[p].ends[ko as usize] != EndAt::Junction {
                return Err(inconsistent(format!(
                    "closed seam through {} meets a point",
                    s.pieces[p].id
                )));
            }
            let &(q, kq, lm) = link_at
                .get(&(p, ko))
                .ok_or_else(|| inconsistent(format!("piece end {}.{ko} is left open", s.pieces[p].id)))?;
            map = compose(lm, map);
            if (q, kq) == (p0, 0) {
                break;
            }
            if used[q] {
                return Err(inconsistent(format!("seam piece {} visited twice", s.pieces[q].id)));
            }
            p = q;
            k = kq;
        }
        let mon = Perm::from_images(map).expect("composite of bijections");
        circles.push((
            SeamCircle {
                id: ids.join("~"),
                monodromy: mon,
            },
            s.owners[p0],
        ));
    }

    // slot owners and directions on the new seam edges
    let mut slot_class = vec![[usize::MAX; 3]; chains.len()];
    let mut slot_dir = vec![[true; 3]; chains.len()];
    for (c, ch) in chains.iter().enumerate() {
        for ns in 0..3u8 {
            let mut seen: Option<(usize, bool)> = None;
            for g in &ch.segments {
                let o = s.owners[g.piece][g.map[ns as usize] as usize];
                let (root, par) = dsu.find(o.facet);
                let dir = o.forward.map(|f| (f == g.forward) ^ par);
                match seen {
                    None => seen = Some((root, dir.unwrap_or(true))),
                    Some((r, d)) => {
                        if r != root {
                            return Err(inconsistent(format!("slot {ns} of {} belongs to two facets", ch.id)));
                        }
                        if !dsu.bad[root] && dir != Some(d) {
                            return Err(inconsistent(format!(
                                "slot {ns} of {} has conflicting directions",
                                ch.id
                            )));
                        }
                    }
                }
            }
            let (r, d) = seen.expect("chains are non-empty");
            slot_class[c][ns as usize] = r;
            slot_dir[c][ns as usize] = d;
        }
    }

    // corners
    let mut end_of: HashMap<(usize, u8), (usize, u8, [u8; 3])> = HashMap::new();
    for (c, ch) in chains.iter().enumerate() {
        let first = &ch.segments[0];
        end_of.insert(
            (first.piece, if first.forward { 0 } else { 1 }),
            (c, 0, invert(first.map)),
        );
        let last = ch.segments.last().unwrap();
        end_of.insert((last.piece, if last.forward { 1 } else { 0 }), (c, 1, invert(last.map)));
    }
    let mut corners: BTreeMap<String, Vec<Corner>> = BTreeMap::new();
    let mut partner: HashMap<(usize, u8, u8), (usize, u8, u8)> = HashMap::new();
    for (t, list) in &s.corners {
        let mut out = Vec::new();
        for pair in list {
            let tr = |(p, k, sl): (usize, u8, u8)| -> Result<(usize, u8, u8), FoamError> {
                let &(c, ne, inv) = end_of
                    .get(&(p, k))
                    .ok_or_else(|| inconsistent(format!("corner at {t} refers to a piece end not at a point")))?;
                Ok((c, ne, inv[sl as usize]))
            };
            let (a, b) = (tr(pair[0])?, tr(pair[1])?);
            partner.insert(a, b);
            partner.insert(b, a);
            out.push([
                CornerEnd(chains[a.0].id.clone(), a.1, a.2),
                CornerEnd(chains[b.0].id.clone(), b.1, b.2),
            ]);
        }
        corners.insert(t.clone(), out);
    }

    // walks
    let mut walks: BTreeMap<usize, Vec<Vec<Step>>> = BTreeMap::new();
    let mut visited = vec![[false; 3]; chains.len()];
    for c0 in 0..chains.len() {
        for s0 in 0..3u8 {
            if visited[c0][s0 as usize] {
                continue;
            }
            let class = slot_class[c0][s0 as usize];
            let orientable = !dsu.bad[class];
            let d0 = slot_dir[c0][s0 as usize];
            let (mut c, mut d, mut sl) = (c0, d0, s0);
            let mut walk = Vec::new();
            loop {
                if visited[c][sl as usize] {
                    return Err(inconsistent(format!("walk revisits slot {sl} of {}", chains[c].id)));
                }
                if slot_class[c][sl as usize] != class {
                    return Err(inconsistent(format!("walk leaves its facet at {}", chains[c].id)));
                }
                if orientable && slot_dir[c][sl as usize] != d {
                    return Err(inconsistent(format!(
                        "walk runs against the orientation on {}",
                        chains[c].id
                    )));
                }
                visited[c][sl as usize] = true;
                walk.push(Step::Seam(chains[c].id.clone(), Dir::from_forward(d), sl));
                let arrive = if d { 1 } else { 0 };
                let &(c2, k2, s2) = partner
                    .get(&(c, arrive, sl))
                    .ok_or_else(|| inconsistent(format!("no corner continues slot {sl} of {}", chains[c].id)))?;
                let d2 = k2 == 0;
                if (c2, s2) == (c0, s0) && d2 == d0 {
                    break;
                }
                (c, d, sl) = (c2, d2, s2);
            }
            walks.entry(class).or_default().push(walk);
        }
    }
    for (circ, owners) in &circles {
        for orbit in circ.monodromy.orbits() {
            let o = owners[orbit[0] as usize];
            let (root, _) = dsu.find(o.facet);
            for &x in &orbit[1..] {
                if dsu.find(owners[x as usize].facet).0 != root {
                    return Err(inconsistent(format!(
                        "one sheet of circle {} lies on two facets",
                        circ.id
                    )));
                }
            }
            walks
                .entry(root)
                .or_default()
                .push(vec![Step::Circle(circ.id.clone(), orbit[0], orbit.len() as u8)]);
        }
    }

    // facets
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..s.facets.len() {
        let (r, _) = dsu.find(i);
        members.entry(r).or_default().push(i);
    }
    let mut delta: HashMap<usize, i64> = HashMap::new();
    for &(f, d) in &s.chi_delta {
        *delta.entry(dsu.find(f).0).or_default() += d;
    }
    let mut classes: Vec<(usize, Vec<usize>)> = members.into_iter().collect();
    classes.sort_by_key(|(_, m)| m[0]);
    let mut facets = Vec::new();
    for (root, m) in classes {
        let id = m.iter().map(|&i| s.facets[i].id.as_str()).collect::<Vec<_>>().join("+");
        let chi: i64 = m.iter().map(|&i| s.facets[i].chi).sum::<i64>() + delta.get(&root).copied().unwrap_or(0);
        let dots = m.iter().map(|&i| s.facets[i].dots).sum();
        let boundary = walks.remove(&root).unwrap_or_default();
        let b = boundary.len() as i64;
        let orientable = !dsu.bad[root];
        let x = 2 - chi - b;
        let genus = if orientable {
            if x < 0 || x % 2 != 0 {
                return Err(inconsistent(format!(
                    "facet {id} has impossible Euler characteristic {chi}"
                )));
            }
            x / 2
        } else {
            if x < 1 {
                return Err(inconsistent(format!(
                    "facet {id} has impossible Euler characteristic {chi}"
                )));
            }
            x
        };
        facets.push(super::Facet {
            id,
            orientable,
            genus: genus as u32,
            dots,
            boundary,
        });
    }

    let out = PreFoam {
        tetra_points: s.tetra.clone(),
        seam_edges: chains
            .iter()
            .map(|c| SeamEdge {
                id: c.id.clone(),
                ends: c.ends.clone(),
            })
            .collect(),
        seam_circles: circles.into_iter().map(|(c, _)| c).collect(),
        corners,
        facets,
    };
    debug_assert!(out.validate().is_empty(), "{:?}", out.validate());
    Ok(out)
}
