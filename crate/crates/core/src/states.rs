//! States of a perfect matching drawing and the hypercube of states.
//!
//! At a matching edge with dart `d` at `u` and `d ^ 1` at `v`, write `a_x` and
//! `b_x` for the successor and predecessor of the matching dart at `x`. The
//! 0-smoothing joins `a_u–b_v` and `b_u–a_v`; the 1-smoothing joins `a_u–a_v`
//! and `b_u–b_v`. A circle is traced by `x -> arc(x ^ 1)` on non-matching
//! darts and holds both darts of every non-matching edge it runs along.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::planar::{partner, Dart, EdgeId, PlanarDiagram};

/// Largest matching size for which the full hypercube is built.
pub const MAX_MATCHING: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("edge {0} is not in the matching")]
    NotInMatching(String),
    #[error("state has {got} bits but the matching has {expected} edges")]
    WrongWidth { got: usize, expected: usize },
    #[error("states {from} and {to} do not differ in exactly one bit from 0 to 1")]
    NotAnEdge { from: StateIndex, to: StateIndex },
    #[error("circle count changes from {from} to {to} but the smoothing arcs lie on {touched} circle(s)")]
    Inconsistent { from: usize, to: usize, touched: usize },
    #[error("matching has {0} edges; at most {MAX_MATCHING} are supported")]
    TooLarge(usize),
}

/// A smoothing choice; bit `i` is the smoothing of the i-th matching edge in
/// ascending edge-id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateIndex {
    pub bits: u64,
    pub n: usize,
}

impl StateIndex {
    pub fn new(bits: u64, n: usize) -> Self {
        Self { bits, n }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn all(n: usize) -> impl Iterator<Item = StateIndex> {
        (0..1u64 << n).map(move |bits| StateIndex { bits, n })
    }
}

impl fmt::Display for StateIndex {
    /// Bit 0 first, e.g. `(1,0,0)` prints as `100`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return f.write_str("-");
        }
        for i in 0..self.n {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A resolved state: its circles as cyclically ordered dart lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub index: StateIndex,
    /// Circles sorted by smallest dart, each listed in traversal order from it.
    pub circles: Vec<Vec<Dart>>,
    /// Circle holding each dart; `usize::MAX` for matching darts.
    pub circle_of: Vec<usize>,
}

impl State {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// The four non-matching darts at the ends of matching edge `e`:
/// `[a_u, b_u, a_v, b_v]`.
pub fn smoothing_darts(d: &PlanarDiagram, e: EdgeId) -> [Dart; 4] {
    let (du, dv) = (2 * e, 2 * e + 1);
    [d.succ(du), d.pred(du), d.succ(dv), d.pred(dv)]
}

fn arcs(d: &PlanarDiagram, matching: &[EdgeId], idx: StateIndex) -> Vec<Dart> {
    let mut arc = vec![usize::MAX; d.num_darts()];
    for (i, &e) in matching.iter().enumerate() {
        let [au, bu, av, bv] = smoothing_darts(d, e);
        let pairs = if idx.bit(i) { [(au, av), (bu, bv)] } else { [(au, bv), (bu, av)] };
        for (x, y) in pairs {
            arc[x] = y;
            arc[y] = x;
        }
    }
    arc
}

/// Traces the circles of state `idx`.
pub fn resolve(d: &PlanarDiagram, idx: StateIndex) -> Result<State, StateError> {
    let matching = d.matching_edges();
    if idx.n != matching.len() {
        return Err(StateError::WrongWidth { got: idx.n, expected: matching.len() });
    }
    Ok(resolve_with(d, &matching, idx))
}

fn resolve_with(d: &PlanarDiagram, matching: &[EdgeId], idx: StateIndex) -> State {
    let arc = arcs(d, matching, idx);
    let mut circle_of = vec![usize::MAX; d.num_darts()];
    let mut circles = Vec::new();
    for start in 0..d.num_darts() {
        if d.in_matching(start / 2) || circle_of[start] != usize::MAX {
            continue;
        }
        let id = circles.len();
        let mut circle = Vec::new();
        let mut x = start;
        while circle_of[x] == usize::MAX {
            circle_of[x] = id;
            circle_of[partner(x)] = id;
            circle.push(x);
            circle.push(partner(x));
            x = arc[partner(x)];
        }
        circles.push(circle);
    }
    State { index: idx, circles, circle_of }
}

/// Circle count `k_α` for every state, indexed by `α.bits`.
pub fn circle_profile(d: &PlanarDiagram) -> Result<Vec<usize>, StateError> {
    let matching = d.matching_edges();
    if matching.len() > MAX_MATCHING {
        return Err(StateError::TooLarge(matching.len()));
    }
    let n = matching.len();
    Ok((0..1u64 << n)
        .into_par_iter()
        .map(|bits| resolve_with(d, &matching, StateIndex { bits, n }).circle_count())
        .collect())
}

/// Counts of states grouped by `(|α|, k_α)`.
pub fn weight_circle_counts(d: &PlanarDiagram) -> Result<BTreeMap<(usize, usize), u64>, StateError> {
    let mut out = BTreeMap::new();
    for (bits, k) in circle_profile(d)?.into_iter().enumerate() {
        *out.entry(((bits as u64).count_ones() as usize, k)).or_insert(0) += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Circles `from[0]` and `from[1]` of the source fuse into circle `to`.
    Merge { from: [usize; 2], to: usize },
    /// Circle `from` splits into circles `to[0]` and `to[1]`.
    Split { from: usize, to: [usize; 2] },
    /// Circle `from` gains a double point and becomes circle `to`.
    Cross { from: usize, to: usize },
}

impl EdgeKind {
    pub fn label(&self) -> &'static str {
        match self {
            EdgeKind::Merge { .. } => "merge",
            EdgeKind::Split { .. } => "split",
            EdgeKind::Cross { .. } => "cross",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeEdge {
    pub from: StateIndex,
    pub to: StateIndex,
    /// Bit position of the changed smoothing.
    pub bit: usize,
    pub kind: EdgeKind,
    /// `(source circle, target circle)` for circles avoiding the changed smoothing.
    pub circle_map: Vec<(usize, usize)>,
}

/// Classifies the edge between two states that differ in one bit, 0 in `s`
/// and 1 in `s2`. `touched` are the four darts at the changed smoothing.
pub fn classify_edge(s: &State, s2: &State, touched: [Dart; 4]) -> Result<HypercubeEdge, StateError> {
    let diff = s.index.bits ^ s2.index.bits;
    if s.index.n != s2.index.n || diff.count_ones() != 1 || s.index.bits & diff != 0 {
        return Err(StateError::NotAnEdge { from: s.index, to: s2.index });
    }
    let bit = diff.trailing_zeros() as usize;
    let mut src: Vec<usize> = touched.iter().map(|&x| s.circle_of[x]).collect();
    src.sort_unstable();
    src.dedup();
    let mut dst: Vec<usize> = touched.iter().map(|&x| s2.circle_of[x]).collect();
    dst.sort_unstable();
    dst.dedup();
    let (k, k2) = (s.circle_count(), s2.circle_count());
    let inconsistent = || StateError::Inconsistent { from: k, to: k2, touched: src.len() };
    let kind = match (src.len(), dst.len()) {
        (2, 1) if k2 + 1 == k => EdgeKind::Merge { from: [src[0], src[1]], to: dst[0] },
        (1, 2) if k2 == k + 1 => EdgeKind::Split { from: src[0], to: [dst[0], dst[1]] },
        (1, 1) if k2 == k => EdgeKind::Cross { from: src[0], to: dst[0] },
        _ => return Err(inconsistent()),
    };
    let mut circle_map = Vec::new();
    for (c, darts) in s.circles.iter().enumerate() {
        if src.contains(&c) {
            continue;
        }
        let c2 = s2.circle_of[darts[0]];
        let same = s2.circles[c2].len() == darts.len() && darts.iter().all(|&x| s2.circle_of[x] == c2);
        if !same || dst.contains(&c2) {
            return Err(inconsistent());
        }
        circle_map.push((c, c2));
    }
    Ok(HypercubeEdge { from: s.index, to: s2.index, bit, kind, circle_map })
}

/// All states and all classified edges of the hypercube.
#[derive(Debug, Clone)]
pub struct Hypercube {
    pub matching: Vec<EdgeId>,
    /// Indexed by `α.bits`.
    pub states: Vec<State>,
    /// Ordered by source state, then bit.
    pub edges: Vec<HypercubeEdge>,
}

impl Hypercube {
    pub fn n(&self) -> usize {
        self.matching.len()
    }
}

pub fn hypercube(d: &PlanarDiagram) -> Result<Hypercube, StateError> {
    let matching = d.matching_edges();
    let n = matching.len();
    if n > MAX_MATCHING {
        return Err(StateError::TooLarge(n));
    }
    let states: Vec<State> =
        (0..1u64 << n).into_par_iter().map(|bits| resolve_with(d, &matching, StateIndex { bits, n })).collect();
    let touched: Vec<[Dart; 4]> = matching.iter().map(|&e| smoothing_darts(d, e)).collect();
    let edges: Result<Vec<Vec<HypercubeEdge>>, StateError> = states
        .par_iter()
        .map(|s| {
            (0..n)
                .filter(|&i| !s.index.bit(i))
                .map(|i| classify_edge(s, &states[(s.index.bits | 1 << i) as usize], touched[i]))
                .collect()
        })
        .collect();
    Ok(Hypercube { matching, states, edges: edges?.into_iter().flatten().collect() })
}

/// Decides whether matching edge `e` is a bridge by comparing circle counts
/// of every pair of states that differ only at `e`.
pub fn bridge_via_states(d: &PlanarDiagram, e: EdgeId) -> Result<bool, StateError> {
    let matching = d.matching_edges();
    let Some(i) = matching.iter().position(|&m| m == e) else {
        return Err(StateError::NotInMatching(
            if e < d.num_edges() { d.edge_name(e).to_string() } else { e.to_string() },
        ));
    };
    let profile = circle_profile(d)?;
    Ok((0..profile.len()).filter(|b| b >> i & 1 == 0).all(|b| profile[b] == profile[b | 1 << i]))
}
