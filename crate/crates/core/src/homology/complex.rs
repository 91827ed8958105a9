//! The bigraded cochain complex of a hypercube of states over GF(2).
//!
//! A basis element of `V_α = V^{⊗k_α}{|α|}` is a subset of the circles of
//! `Γ_α`: circles in the subset carry `x`, the rest carry `1`. Its bigrading
//! is `i = |α|`, `j = k_α - 2p + |α|` with `p` the subset size.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::homology::gf2::BitMatrix;
use crate::homology::HomologyError;
use crate::laurent::LaurentPoly;
use crate::planar::PlanarDiagram;
use crate::states::{hypercube, EdgeKind, Hypercube, HypercubeEdge};
use crate::Poly;

pub type Bigrading = (i32, i32);

/// A basis monomial: state bits and the set of `x`-labelled circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub state: u64,
    pub subset: u64,
}

pub fn bigrading_of(state: u64, k: usize, subset: u64) -> Bigrading {
    let i = state.count_ones() as i32;
    (i, k as i32 - 2 * subset.count_ones() as i32 + i)
}

/// Image of one basis monomial under the map attached to a hypercube edge,
/// as a list of target subsets (a GF(2) sum).
pub fn edge_map(edge: &HypercubeEdge, subset: u64) -> Vec<u64> {
    let has = |c: usize| subset >> c & 1 == 1;
    let mut base = 0u64;
    for &(c, c2) in &edge.circle_map {
        if has(c) {
            base |= 1 << c2;
        }
    }
    match edge.kind {
        EdgeKind::Merge { from: [a, b], to } => match (has(a), has(b)) {
            (true, true) => Vec::new(),
            (false, false) => vec![base],
            _ => vec![base | 1 << to],
        },
        EdgeKind::Split { from, to: [a, b] } => {
            if has(from) {
                vec![base | 1 << a | 1 << b]
            } else {
                vec![base | 1 << a, base | 1 << b]
            }
        }
        EdgeKind::Cross { .. } => Vec::new(),
    }
}

/// Chain groups per bigrading and the differentials between them.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    n: usize,
    circle_counts: Vec<usize>,
    basis: BTreeMap<Bigrading, Vec<Monomial>>,
    position: HashMap<Monomial, usize>,
    /// `∂^{i,j}: C^{i,j} -> C^{i+1,j}` as a `dim C^{i+1,j} × dim C^{i,j}` matrix.
    differentials: BTreeMap<Bigrading, BitMatrix>,
}

impl ChainComplex {
    pub fn matching_size(&self) -> usize {
        self.n
    }

    pub fn circle_count(&self, state: u64) -> usize {
        self.circle_counts[state as usize]
    }

    pub fn bigrading(&self, m: &Monomial) -> Bigrading {
        bigrading_of(m.state, self.circle_count(m.state), m.subset)
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.basis.get(&(i, j)).map_or(0, Vec::len)
    }

    /// Basis of `C^{i,j}`, sorted by (state, subset).
    pub fn basis(&self, i: i32, j: i32) -> &[Monomial] {
        self.basis.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// Index of a monomial within the basis of its bigrading.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    /// Nonzero chain groups in ascending (i, j) order.
    pub fn bigradings(&self) -> impl Iterator<Item = Bigrading> + '_ {
        self.basis.keys().copied()
    }

    /// `∂^{i,j}`; `None` when source or target is zero.
    pub fn differential(&self, i: i32, j: i32) -> Option<&BitMatrix> {
        self.differentials.get(&(i, j))
    }

    pub fn differential_mut(&mut self, i: i32, j: i32) -> Option<&mut BitMatrix> {
        self.differentials.get_mut(&(i, j))
    }

    /// `Σ_j dim C^{i,j}` for each `i`.
    pub fn group_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(i, _), b) in &self.basis {
            *out.entry(i).or_insert(0) += b.len();
        }
        out
    }
}

/// Assembles the complex from a hypercube.
pub fn chain_complex(h: &Hypercube) -> ChainComplex {
    let n = h.n();
    let circle_counts: Vec<usize> = h.states.iter().map(|s| s.circle_count()).collect();
    let mut basis: BTreeMap<Bigrading, Vec<Monomial>> = BTreeMap::new();
    for (state, &k) in circle_counts.iter().enumerate() {
        for subset in 0..1u64 << k {
            let m = Monomial { state: state as u64, subset };
            basis.entry(bigrading_of(m.state, k, subset)).or_default().push(m);
        }
    }
    let mut position = HashMap::new();
    for list in basis.values() {
        for (idx, m) in list.iter().enumerate() {
            position.insert(*m, idx);
        }
    }
    let mut differentials: BTreeMap<Bigrading, BitMatrix> = BTreeMap::new();
    for (&(i, j), src) in &basis {
        if let Some(dst) = basis.get(&(i + 1, j)) {
            differentials.insert((i, j), BitMatrix::zeros(dst.len(), src.len()));
        }
    }
    for edge in &h.edges {
        let k = circle_counts[edge.from.bits as usize];
        for subset in 0..1u64 << k {
            let src = Monomial { state: edge.from.bits, subset };
            let (i, j) = bigrading_of(src.state, k, subset);
            let col = position[&src];
            for target in edge_map(edge, subset) {
                let dst = Monomial { state: edge.to.bits, subset: target };
                let row = position[&dst];
                differentials
                    .get_mut(&(i, j))
                    .expect("differential preserves j")
                    .toggle(row, col);
            }
        }
    }
    ChainComplex { n, circle_counts, basis, position, differentials }
}

/// Bigradings `(i, j)` where `∂^{i+1,j} ∘ ∂^{i,j}` is nonzero.
pub fn d_squared_failures(c: &ChainComplex) -> Vec<Bigrading> {
    c.differentials
        .par_iter()
        .filter_map(|(&(i, j), d1)| {
            let d2 = c.differentials.get(&(i + 1, j))?;
            (!d2.mul(d1).is_zero()).then_some((i, j))
        })
        .collect()
}

pub fn verify_d_squared(c: &ChainComplex) -> bool {
    d_squared_failures(c).is_empty()
}

/// Dimensions of `H^{i,j}`; only nonzero cells are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    dims: BTreeMap<Bigrading, usize>,
}

impl CohomologyTable {
    pub fn from_cells<I: IntoIterator<Item = (Bigrading, usize)>>(cells: I) -> Self {
        let mut t = Self::default();
        for (ij, d) in cells {
            t.add(ij, d);
        }
        t
    }

    fn add(&mut self, ij: Bigrading, d: usize) {
        if d > 0 {
            *self.dims.entry(ij).or_insert(0) += d;
        }
    }

    pub fn get(&self, i: i32, j: i32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero cells ascending by (i, j).
    pub fn iter(&self) -> impl Iterator<Item = (Bigrading, usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// `(i, j) -> dim` moved to `(i + di, j + dj)`.
    pub fn shifted(&self, di: i32, dj: i32) -> Self {
        Self::from_cells(self.iter().map(|((i, j), d)| ((i + di, j + dj), d)))
    }

    /// Cellwise sum.
    pub fn sum(&self, other: &Self) -> Self {
        Self::from_cells(self.iter().chain(other.iter()))
    }

    /// Künneth convolution: `Σ_{a+c=i, b+e=j} dim_{a,b} · dim_{c,e}`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((i1, j1), d1) in self.iter() {
            for ((i2, j2), d2) in other.iter() {
                out.add((i1 + i2, j1 + j2), d1 * d2);
            }
        }
        out
    }

    /// `Σ (-1)^i dim H^{i,j} q^j`.
    pub fn euler(&self) -> Poly {
        LaurentPoly::from_terms(self.iter().map(|((i, j), d)| (j, if i % 2 == 0 { d as i64 } else { -(d as i64) })))
            .expect("table dimensions fit in i64")
    }
}

/// `dim H^{i,j} = dim C^{i,j} - rank ∂^{i,j} - rank ∂^{i-1,j}`.
pub fn cohomology(c: &ChainComplex) -> Result<CohomologyTable, HomologyError> {
    if let Some(&(i, j)) = d_squared_failures(c).first() {
        return Err(HomologyError::DSquaredNonzero { i, j });
    }
    let ranks: BTreeMap<Bigrading, usize> = c.differentials.par_iter().map(|(&k, m)| (k, m.rank())).collect();
    Ok(CohomologyTable::from_cells(c.basis.iter().map(|(&(i, j), b)| {
        let out = ranks.get(&(i, j)).copied().unwrap_or(0);
        let inc = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
        ((i, j), b.len() - out - inc)
    })))
}

/// `Σ (-1)^i dim C^{i,j} q^j`, computed from the chain groups.
pub fn graded_euler(c: &ChainComplex) -> Poly {
    LaurentPoly::from_terms(
        c.basis.iter().map(|(&(i, j), b)| (j, if i % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })),
    )
    .expect("chain group dimensions fit in i64")
}

/// Complex of a diagram.
pub fn complex_of(d: &PlanarDiagram) -> Result<ChainComplex, HomologyError> {
    Ok(chain_complex(&hypercube(d)?))
}

/// Cohomology of a diagram.
pub fn cohomology_of(d: &PlanarDiagram) -> Result<CohomologyTable, HomologyError> {
    cohomology(&complex_of(d)?)
}
