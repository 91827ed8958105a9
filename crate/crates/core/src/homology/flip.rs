//! Chain map between the complexes of a diagram and its flipped drawing.
//!
//! Reversing the rotation at the inside end of a cut matching edge swaps its
//! 0- and 1-smoothing arcs, so circles of `Γ̃_α` are compared with circles of
//! `Γ_α` by what they look like outside the flipped region: circles meeting
//! the outside are matched by their outside darts, circles entirely inside by
//! their full dart sets. On states where two circles each run through both
//! cut smoothings the map is `S = ⋆R⋆`; elsewhere it is the identity.

use std::collections::{BTreeMap, BTreeSet};

use crate::homology::complex::{chain_complex, Bigrading, ChainComplex, Monomial};
use crate::homology::exterior::{s_map, FlipContext};
use crate::homology::gf2::BitMatrix;
use crate::homology::HomologyError;
use crate::planar::{Dart, EdgeId, FlipSpec, PlanarDiagram, VertexId};
use crate::states::{hypercube, smoothing_darts, State};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipChainMapReport {
    pub cut_edges: Vec<EdgeId>,
    /// States where two circles exchange arcs across the flip and at least
    /// one circle lies inside, so that `S` differs from the identity.
    pub exchange_states: usize,
    /// Bigradings where `S∘∂ ≠ ∂̃∘S`.
    pub non_commuting: Vec<Bigrading>,
    /// Bigradings where `S` is not invertible.
    pub singular: Vec<Bigrading>,
}

impl FlipChainMapReport {
    pub fn holds(&self) -> bool {
        self.non_commuting.is_empty() && self.singular.is_empty()
    }
}

fn outside_darts(circle: &[Dart], d: &PlanarDiagram, inside: &BTreeSet<VertexId>) -> BTreeSet<Dart> {
    circle.iter().copied().filter(|&x| !inside.contains(&d.vertex_of(x))).collect()
}

/// Position in `flipped` of each circle of `s`.
fn correspondence(
    d: &PlanarDiagram,
    inside: &BTreeSet<VertexId>,
    s: &State,
    flipped: &State,
) -> Result<Vec<usize>, HomologyError> {
    let fail = || HomologyError::Correspondence { state: s.index.to_string() };
    if s.circle_count() != flipped.circle_count() {
        return Err(fail());
    }
    let mut map = Vec::with_capacity(s.circle_count());
    for circle in &s.circles {
        let outside = outside_darts(circle, d, inside);
        let target = match outside.first() {
            Some(&x) => {
                let t = flipped.circle_of[x];
                if outside_darts(&flipped.circles[t], d, inside) != outside {
                    return Err(fail());
                }
                t
            }
            None => {
                let t = flipped.circle_of[circle[0]];
                let a: BTreeSet<Dart> = circle.iter().copied().collect();
                let b: BTreeSet<Dart> = flipped.circles[t].iter().copied().collect();
                if a != b {
                    return Err(fail());
                }
                t
            }
        };
        map.push(target);
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() {
        return Err(fail());
    }
    Ok(map)
}

fn context(
    d: &PlanarDiagram,
    inside: &BTreeSet<VertexId>,
    cut_matching: &[EdgeId],
    s: &State,
) -> FlipContext {
    let k = s.circle_count();
    let [e1, e2] = cut_matching else {
        return FlipContext::Identity { k };
    };
    let t1: BTreeSet<usize> = smoothing_darts(d, *e1).iter().map(|&x| s.circle_of[x]).collect();
    let t2: BTreeSet<usize> = smoothing_darts(d, *e2).iter().map(|&x| s.circle_of[x]).collect();
    let through: Vec<usize> = t1.intersection(&t2).copied().collect();
    let [c1, c2] = through[..] else {
        return FlipContext::Identity { k };
    };
    let inside_circles = (0..k)
        .filter(|&c| s.circles[c].iter().all(|&x| inside.contains(&d.vertex_of(x))))
        .collect();
    FlipContext::Exchange { k, c1, c2, inside: inside_circles }
}

fn zero_or(m: Option<&BitMatrix>, rows: usize, cols: usize) -> BitMatrix {
    m.cloned().unwrap_or_else(|| BitMatrix::zeros(rows, cols))
}

/// Builds `S: C(Γ) -> C(Γ̃)` for an accepted flip and checks that it is an
/// invertible chain map.
pub fn verify_flip_chain_map(d: &PlanarDiagram, spec: &FlipSpec) -> Result<FlipChainMapReport, HomologyError> {
    chain_map_report(d, spec, true)
}

fn chain_map_report(
    d: &PlanarDiagram,
    spec: &FlipSpec,
    exchange: bool,
) -> Result<FlipChainMapReport, HomologyError> {
    let cut_edges = d.check_flip(spec)?;
    let flipped = d.flip(spec)?;
    let h = hypercube(d)?;
    let ht = hypercube(&flipped)?;
    let c = chain_complex(&h);
    let ct = chain_complex(&ht);
    let cut_matching: Vec<EdgeId> = cut_edges.iter().copied().filter(|&e| d.in_matching(e)).collect();

    let mut s_mats: BTreeMap<Bigrading, BitMatrix> = BTreeMap::new();
    let mut singular = Vec::new();
    for (i, j) in c.bigradings().chain(ct.bigradings()).collect::<BTreeSet<_>>() {
        s_mats.insert((i, j), BitMatrix::zeros(ct.dim(i, j), c.dim(i, j)));
        if ct.dim(i, j) != c.dim(i, j) {
            singular.push((i, j));
        }
    }
    let mut exchange_states = 0;
    for (s, st) in h.states.iter().zip(&ht.states) {
        let map = correspondence(d, &spec.inside, s, st)?;
        let mut ctx = context(d, &spec.inside, &cut_matching, s);
        if let FlipContext::Exchange { k, inside, .. } = &ctx {
            if !inside.is_empty() {
                exchange_states += 1;
            }
            if !exchange {
                ctx = FlipContext::Identity { k: *k };
            }
        }
        for subset in 0..1u64 << s.circle_count() {
            let src = Monomial { state: s.index.bits, subset };
            let ij = c.bigrading(&src);
            let col = c.position(&src).expect("basis monomial");
            for term in s_map(&ctx, subset)?.terms() {
                let moved = (0..map.len()).filter(|&b| term >> b & 1 == 1).fold(0u64, |acc, b| acc | 1 << map[b]);
                let dst = Monomial { state: s.index.bits, subset: moved };
                let row = ct.position(&dst).ok_or_else(|| HomologyError::Correspondence { state: s.index.to_string() })?;
                s_mats.get_mut(&ij).expect("bigrading present").toggle(row, col);
            }
        }
    }
    for (&(i, j), m) in &s_mats {
        if m.rows() == m.cols() && m.rank() != m.rows() && !singular.contains(&(i, j)) {
            singular.push((i, j));
        }
    }
    singular.sort_unstable();

    let mut non_commuting = Vec::new();
    for &(i, j) in s_mats.keys() {
        let lhs = s_mats.get(&(i + 1, j)).map(|s_next| {
            let dd = zero_or(c.differential(i, j), c.dim(i + 1, j), c.dim(i, j));
            s_next.mul(&dd)
        });
        let dt = zero_or(ct.differential(i, j), ct.dim(i + 1, j), ct.dim(i, j));
        let rhs = dt.mul(&s_mats[&(i, j)]);
        let agree = match lhs {
            Some(l) => l == rhs,
            None => rhs.is_zero(),
        };
        if !agree {
            non_commuting.push((i, j));
        }
    }
    Ok(FlipChainMapReport { cut_edges, exchange_states, non_commuting, singular })
}

/// Complex of the flipped drawing, for callers that want both sides.
pub fn flipped_complex(d: &PlanarDiagram, spec: &FlipSpec) -> Result<ChainComplex, HomologyError> {
    Ok(chain_complex(&hypercube(&d.flip(spec)?)?))
}
