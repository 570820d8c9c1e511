use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{get_bit, rank_of, words, Bits};
use super::{F2ChainComplex, F2Matrix, HomalgError};

/// A face relation `upper → lower` between cells of degree `degree` and
/// `degree - 1`, lifted to the cover with translation `shift ∈ (Z/2)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub degree: usize,
    pub upper: usize,
    pub lower: usize,
    pub shift: u32,
}

/// Cell complex with a `(Z/2)^n`-cover given by shifts on incidences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub n: u32,
    pub dims: Vec<usize>,
    pub incidences: Vec<Incidence>,
}

impl CellComplex {
    fn check_incidences(&self) -> Result<(), HomalgError> {
        for i in &self.incidences {
            if i.degree == 0
                || i.degree >= self.dims.len()
                || i.upper >= self.dims[i.degree]
                || i.lower >= self.dims[i.degree - 1]
            {
                return Err(HomalgError::Shape(format!("incidence {i:?} is out of range")));
            }
            if i.shift >> self.n != 0 {
                return Err(HomalgError::Subset {
                    mask: i.shift,
                    n: self.n,
                });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> Result<F2ChainComplex, HomalgError> {
        self.check_incidences()?;
        let mut ds: Vec<F2Matrix> = (1..self.dims.len())
            .map(|k| F2Matrix::zero(self.dims[k - 1], self.dims[k]))
            .collect();
        for i in &self.incidences {
            ds[i.degree - 1].toggle(i.lower, i.upper);
        }
        F2ChainComplex::new(self.dims.clone(), ds)
    }

    /// Lifted complex: cell `σ^g` sits at index `σ·2^n + g` and `d̃σ^g = Σ τ^{g+shift}`.
    pub fn cover(&self) -> Result<F2ChainComplex, HomalgError> {
        self.check_incidences()?;
        let sheets = 1usize << self.n;
        let dims: Vec<usize> = self.dims.iter().map(|d| d * sheets).collect();
        let mut ds: Vec<F2Matrix> = (1..dims.len()).map(|k| F2Matrix::zero(dims[k - 1], dims[k])).collect();
        for i in &self.incidences {
            for g in 0..sheets {
                ds[i.degree - 1].toggle(i.lower * sheets + (g ^ i.shift as usize), i.upper * sheets + g);
            }
        }
        F2ChainComplex::new(dims, ds)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The ungraded differential split by shift, on the sum of all chain groups.
    pub fn shift_parts(&self) -> Vec<(u32, F2Matrix)> {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |a, &d| {
                let o = *a;
                *a += d;
                Some(o)
            })
            .collect();
        let n = self.total_dim();
        let mut parts: std::collections::BTreeMap<u32, F2Matrix> = Default::default();
        for i in &self.incidences {
            let m = parts.entry(i.shift).or_insert_with(|| F2Matrix::zero(n, n));
            m.toggle(offsets[i.degree - 1] + i.lower, offsets[i.degree] + i.upper);
        }
        parts.into_iter().collect()
    }
}

/// Ranks in the long exact sequence of a double cover, by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinReport {
    pub base_homology: Vec<usize>,
    pub cover_homology: Vec<usize>,
    /// `H_k(C) → H_k(C̃)`, sum of the two lifts.
    pub rank_lift: Vec<usize>,
    /// `H_k(C̃) → H_k(C)`, projection.
    pub rank_projection: Vec<usize>,
    /// `H_k(C) → H_{k-1}(C)`; entry 0 is always 0.
    pub rank_connecting: Vec<usize>,
    pub short_sequence_exact: bool,
    pub long_sequence_exact: bool,
}

impl GysinReport {
    /// `dim H(C̃) ≤ 2 dim H(C)`, with equality exactly when the connecting map vanishes.
    pub fn bound_holds(&self) -> bool {
        let hb: usize = self.base_homology.iter().sum();
        let hc: usize = self.cover_homology.iter().sum();
        let conn: usize = self.rank_connecting.iter().sum();
        hc <= 2 * hb && ((hc == 2 * hb) == (conn == 0))
    }

    pub fn holds(&self) -> bool {
        self.short_sequence_exact && self.long_sequence_exact && self.bound_holds()
    }
}

/// Rank of the map induced on homology by `f : A_k → B_k`, given the
/// differential out of `A_k` and the one into `B_k`.
fn induced_rank(f: &F2Matrix, d_out: Option<&F2Matrix>, d_in: Option<&F2Matrix>, dim_a: usize, dim_b: usize) -> usize {
    let cycles: Vec<Bits> = match d_out {
        Some(d) => d.kernel().dense_cols(),
        None => F2Matrix::identity(dim_a).dense_cols(),
    };
    let bounds: Vec<Bits> = d_in.map(F2Matrix::dense_cols).unwrap_or_default();
    let base = rank_of(bounds.clone(), dim_b);
    let mut all = bounds;
    all.extend(cycles.iter().map(|z| f.apply(z)));
    rank_of(all, dim_b) - base
}

pub fn gysin_check(c: &CellComplex) -> Result<GysinReport, HomalgError> {
    if c.n != 1 {
        return Err(HomalgError::Shape(format!(
            "the sequence needs a double cover, got (Z/2)^{}",
            c.n
        )));
    }
    let base = c.base()?;
    let cover = c.cover()?;
    let top = c.dims.len();
    let lift = |k: usize| {
        F2Matrix::from_entries(
            2 * c.dims[k],
            c.dims[k],
            (0..c.dims[k]).flat_map(|s| [(2 * s, s), (2 * s + 1, s)]),
        )
        .unwrap()
    };
    let proj =
        |k: usize| F2Matrix::from_entries(c.dims[k], 2 * c.dims[k], (0..2 * c.dims[k]).map(|s| (s / 2, s))).unwrap();

    let mut short = true;
    for k in 0..top {
        let (i, p) = (lift(k), proj(k));
        short &= p.mul(&i)?.is_zero() && i.rank() == c.dims[k] && p.rank() == c.dims[k];
        short &= i.rank() + p.rank() == 2 * c.dims[k];
        if k > 0 {
            // chain maps
            short &= cover.d(k).unwrap().mul(&i)? == lift(k - 1).mul(base.d(k).unwrap())?;
            short &= base.d(k).unwrap().mul(&p)? == proj(k - 1).mul(cover.d(k).unwrap())?;
        }
    }

    let hb = base.homology_dims();
    let hc = cover.homology_dims();
    let rank_lift: Vec<usize> = (0..top)
        .map(|k| induced_rank(&lift(k), base.d(k), cover.d(k + 1), c.dims[k], 2 * c.dims[k]))
        .collect();
    let rank_projection: Vec<usize> = (0..top)
        .map(|k| induced_rank(&proj(k), cover.d(k), base.d(k + 1), 2 * c.dims[k], c.dims[k]))
        .collect();
    let mut rank_connecting = vec![0; top];
    for k in 1..top {
        // lift to sheet 0, apply the covering differential, read off sheet 0
        let dk = cover.d(k).unwrap();
        let mut delta = F2Matrix::zero(c.dims[k - 1], c.dims[k]);
        for s in 0..c.dims[k] {
            let mut v = vec![0u64; words(2 * c.dims[k])];
            v[(2 * s) / 64] |= 1 << ((2 * s) % 64);
            let img = dk.apply(&v);
            for t in 0..c.dims[k - 1] {
                if get_bit(&img, 2 * t) {
                    delta.toggle(t, s);
                }
            }
        }
        rank_connecting[k] = induced_rank(&delta, base.d(k), base.d(k), c.dims[k], c.dims[k - 1]);
    }
    let mut long = true;
    for k in 0..top {
        let conn_next = if k + 1 < top { rank_connecting[k + 1] } else { 0 };
        long &= hc[k] == rank_lift[k] + rank_projection[k];
        long &= hb[k] == rank_projection[k] + rank_connecting[k];
        long &= hb[k] == conn_next + rank_lift[k];
    }
    Ok(GysinReport {
        base_homology: hb,
        cover_homology: hc,
        rank_lift,
        rank_projection,
        rank_connecting,
        short_sequence_exact: short,
        long_sequence_exact: long,
    })
}

/// Random simplicial complex with at most `max_cells` simplices and a
/// `(Z/2)^n`-cover built from `n` random 1-cocycles. Each simplex is lifted
/// at its smallest vertex; a face relation is shifted by the cocycle values
/// on the edge joining the two smallest vertices.
pub fn random_simplicial_cover<R: Rng>(rng: &mut R, max_cells: usize, n: u32) -> CellComplex {
    let nv = rng.gen_range(2..=6usize);
    let mut simplices: std::collections::BTreeSet<Vec<usize>> = (0..nv).map(|v| vec![v]).collect();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for a in 0..nv {
        for b in a + 1..nv {
            candidates.push(vec![a, b]);
            for c in b + 1..nv {
                candidates.push(vec![a, b, c]);
            }
        }
    }
    candidates.shuffle(rng);
    for s in candidates {
        let mut closure = vec![s.clone()];
        if s.len() == 3 {
            closure.extend([vec![s[0], s[1]], vec![s[0], s[2]], vec![s[1], s[2]]]);
        }
        let new = closure.iter().filter(|x| !simplices.contains(*x)).count();
        if simplices.len() + new <= max_cells && rng.gen_bool(0.6) {
            simplices.extend(closure);
        }
    }
    let by_dim: Vec<Vec<Vec<usize>>> = (0..3)
        .map(|d| simplices.iter().filter(|s| s.len() == d + 1).cloned().collect())
        .collect();
    let top = by_dim.iter().rposition(|v| !v.is_empty()).unwrap_or(0);
    let by_dim = &by_dim[..=top];
    let index = |s: &[usize]| by_dim[s.len() - 1].iter().position(|x| x == s).unwrap();

    // cocycles: kernel of the transpose of the boundary from triangles to edges
    let ne = by_dim.get(1).map_or(0, Vec::len);
    let mut cocycles = vec![vec![false; ne]; n as usize];
    if ne > 0 {
        let nt = by_dim.get(2).map_or(0, Vec::len);
        let mut delta = F2Matrix::zero(nt, ne);
        if nt > 0 {
            for (t, tri) in by_dim[2].iter().enumerate() {
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    delta.toggle(t, index(&[tri[i], tri[j]]));
                }
            }
        }
        let ker = delta.kernel().dense_cols();
        for c in &mut cocycles {
            for z in &ker {
                if rng.gen_bool(0.5) {
                    for (e, x) in c.iter_mut().enumerate() {
                        *x ^= get_bit(z, e);
                    }
                }
            }
        }
    }
    let shift_on = |a: usize, b: usize| -> u32 {
        if a == b {
            return 0;
        }
        let e = index(&[a.min(b), a.max(b)]);
        cocycles.iter().enumerate().map(|(i, c)| u32::from(c[e]) << i).sum()
    };
    let mut incidences = Vec::new();
    for d in 1..by_dim.len() {
        for (u, s) in by_dim[d].iter().enumerate() {
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                incidences.push(Incidence {
                    degree: d,
                    upper: u,
                    lower: index(&face),
                    shift: shift_on(s[0], face[0]),
                });
            }
        }
    }
    CellComplex {
        n,
        dims: by_dim.iter().map(Vec::len).collect(),
        incidences,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::CubeComplex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn circle(shift: u32) -> CellComplex {
        CellComplex {
            n: 1,
            dims: vec![1, 1],
            incidences: vec![
                Incidence {
                    degree: 1,
                    upper: 0,
                    lower: 0,
                    shift: 0,
                },
                Incidence {
                    degree: 1,
                    upper: 0,
                    lower: 0,
                    shift,
                },
            ],
        }
    }

    #[test]
    fn trivial_cover_doubles_homology() {
        let r = gysin_check(&circle(0)).unwrap();
        assert_eq!(r.base_homology, vec![1, 1]);
        assert_eq!(r.cover_homology, vec![2, 2]);
        assert_eq!(r.rank_connecting, vec![0, 0]);
        assert!(r.holds());
    }

    #[test]
    fn connected_cover_of_circle() {
        let r = gysin_check(&circle(1)).unwrap();
        assert_eq!(r.cover_homology, vec![1, 1]);
        assert_eq!(r.rank_connecting, vec![0, 1]);
        assert!(r.holds());
    }

    #[test]
    fn random_covers_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let c = random_simplicial_cover(&mut rng, 20, 1);
            assert!(c.total_dim() <= 20);
            let r = gysin_check(&c).unwrap();
            assert!(r.holds(), "{r:?}");
            if r.cover_homology.iter().sum::<usize>() > 0 {
                assert!(r.base_homology.iter().sum::<usize>() > 0);
            }
        }
    }

    #[test]
    fn cube_from_cover_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=2 {
            for _ in 0..10 {
                let c = random_simplicial_cover(&mut rng, 14, n);
                let cube = CubeComplex::from_shifts(n, c.total_dim(), &c.shift_parts()).unwrap();
                assert!(cube.check().is_ok());
                assert_eq!(cube.homology_dim().unwrap(), c.cover().unwrap().total_homology());
            }
        }
    }
}
