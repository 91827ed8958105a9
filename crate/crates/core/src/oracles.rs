//! Brute-force ground truth on abstract multigraphs: perfect matchings,
//! 2-factors through a matching, Tait colorings and even matchings.
//!
//! Nothing here looks at rotations, so these counts are independent of the
//! smoothing conventions used by the state sum.

use thiserror::Error;

use crate::planar::{EdgeId, PlanarDiagram, VertexId};

/// Largest edge count the exhaustive searches accept.
pub const MAX_ORACLE_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {0} edges; exhaustive oracles are limited to {MAX_ORACLE_EDGES}")]
    TooLarge(usize),
    #[error("edge set is not a perfect matching")]
    NotPerfectMatching,
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotTrivalent { vertex: VertexId, degree: usize },
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
}

/// A multigraph: parallel edges and loops are distinct edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    pub num_vertices: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl AbstractGraph {
    pub fn new(num_vertices: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        Self { num_vertices, edges }
    }

    /// Forgets the rotation system; edge ids are preserved.
    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        Self { num_vertices: d.num_vertices(), edges: (0..d.num_edges()).map(|e| d.endpoints(e)).collect() }
    }

    fn guard(&self) -> Result<(), OracleError> {
        if self.edges.len() > MAX_ORACLE_EDGES {
            return Err(OracleError::TooLarge(self.edges.len()));
        }
        Ok(())
    }

    /// Degree with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(e);
            if b != a {
                inc[b].push(e);
            }
        }
        inc
    }

    fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn check_perfect(&self, m: &[EdgeId]) -> Result<(), OracleError> {
        let mut cover = vec![0usize; self.num_vertices];
        for &e in m {
            let &(a, b) = self.edges.get(e).ok_or(OracleError::UnknownEdge(e))?;
            if a == b {
                return Err(OracleError::NotPerfectMatching);
            }
            cover[a] += 1;
            cover[b] += 1;
        }
        if cover.iter().all(|&c| c == 1) {
            Ok(())
        } else {
            Err(OracleError::NotPerfectMatching)
        }
    }
}

/// Every perfect matching, each as an ascending edge list, in lexicographic order.
pub fn enumerate_perfect_matchings(g: &AbstractGraph) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    g.guard()?;
    let allowed = vec![true; g.edges.len()];
    let mut out = Vec::new();
    matchings_within(g, &allowed, &mut vec![false; g.num_vertices], &mut Vec::new(), &mut out);
    for m in &mut out {
        m.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Backtracking: cover the lowest uncovered vertex with each usable edge in turn.
fn matchings_within(
    g: &AbstractGraph,
    allowed: &[bool],
    covered: &mut Vec<bool>,
    current: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    let Some(v) = covered.iter().position(|c| !c) else {
        out.push(current.clone());
        return;
    };
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if !allowed[e] || a == b || (a != v && b != v) {
            continue;
        }
        let w = g.other(e, v);
        if covered[w] {
            continue;
        }
        covered[v] = true;
        covered[w] = true;
        current.push(e);
        matchings_within(g, allowed, covered, current, out);
        current.pop();
        covered[v] = false;
        covered[w] = false;
    }
}

/// Count and witnesses of 2-factors containing `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactorCount {
    pub count: usize,
    /// Each witness is the ascending edge set of one 2-factor.
    pub witnesses: Vec<Vec<EdgeId>>,
}

/// Enumerates 2-factors that contain the perfect matching `m`.
///
/// A spanning 2-regular subgraph containing `m` adds exactly one more edge at
/// every vertex, so the search runs over edge subsets of `E \ M` that meet
/// every vertex once.
pub fn count_two_factors_through(g: &AbstractGraph, m: &[EdgeId]) -> Result<TwoFactorCount, OracleError> {
    g.guard()?;
    g.check_perfect(m)?;
    let mut allowed = vec![true; g.edges.len()];
    for &e in m {
        allowed[e] = false;
    }
    let mut extra = Vec::new();
    matchings_within(g, &allowed, &mut vec![false; g.num_vertices], &mut Vec::new(), &mut extra);
    let mut witnesses: Vec<Vec<EdgeId>> = extra
        .into_iter()
        .map(|mut f| {
            f.extend_from_slice(m);
            f.sort_unstable();
            f
        })
        .filter(|f| is_two_regular(g, f))
        .collect();
    witnesses.sort();
    Ok(TwoFactorCount { count: witnesses.len(), witnesses })
}

fn is_two_regular(g: &AbstractGraph, edges: &[EdgeId]) -> bool {
    let mut deg = vec![0usize; g.num_vertices];
    for &e in edges {
        let (a, b) = g.edges[e];
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.iter().all(|&d| d == 2)
}

/// Number of proper 3-edge-colorings of a trivalent multigraph.
pub fn count_tait_colorings(g: &AbstractGraph) -> Result<u64, OracleError> {
    g.guard()?;
    for (v, &d) in g.degrees().iter().enumerate() {
        if d != 3 {
            return Err(OracleError::NotTrivalent { vertex: v, degree: d });
        }
    }
    if g.edges.iter().any(|&(a, b)| a == b) {
        return Ok(0);
    }
    let inc = g.incidence();
    let mut colors = vec![u8::MAX; g.edges.len()];
    Ok(color_edges(g, &inc, 0, &mut colors))
}

fn color_edges(g: &AbstractGraph, inc: &[Vec<EdgeId>], e: EdgeId, colors: &mut [u8]) -> u64 {
    if e == g.edges.len() {
        return 1;
    }
    let (a, b) = g.edges[e];
    let mut total = 0;
    for c in 0..3u8 {
        let clash = inc[a].iter().chain(&inc[b]).any(|&f| f != e && colors[f] == c);
        if clash {
            continue;
        }
        colors[e] = c;
        total += color_edges(g, inc, e + 1, colors);
        colors[e] = u8::MAX;
    }
    total
}

/// Lengths of the cycles of `G \ M`, which is a disjoint union of cycles.
pub fn complement_cycle_lengths(g: &AbstractGraph, m: &[EdgeId]) -> Result<Vec<usize>, OracleError> {
    g.guard()?;
    g.check_perfect(m)?;
    let mut rest = vec![true; g.edges.len()];
    for &e in m {
        rest[e] = false;
    }
    let inc = g.incidence();
    let mut used = vec![false; g.edges.len()];
    let mut lengths = Vec::new();
    for start in 0..g.edges.len() {
        if !rest[start] || used[start] {
            continue;
        }
        let mut len = 0;
        let mut e = start;
        let mut v = g.edges[start].0;
        loop {
            used[e] = true;
            len += 1;
            v = g.other(e, v);
            match inc[v].iter().copied().find(|&f| rest[f] && !used[f]) {
                Some(f) => e = f,
                None => break,
            }
        }
        lengths.push(len);
    }
    Ok(lengths)
}

/// True iff every cycle of `G \ M` has even length (a loop is a 1-cycle).
pub fn is_even_matching(g: &AbstractGraph, m: &[EdgeId]) -> Result<bool, OracleError> {
    Ok(complement_cycle_lengths(g, m)?.iter().all(|l| l % 2 == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> AbstractGraph {
        AbstractGraph::new(2, vec![(0, 1), (0, 1), (0, 1)])
    }

    fn dumbbell() -> AbstractGraph {
        AbstractGraph::new(2, vec![(0, 1), (0, 0), (1, 1)])
    }

    fn k4() -> AbstractGraph {
        AbstractGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
    }

    fn prism3() -> AbstractGraph {
        // outer 0,1,2 inner 3,4,5; rungs first
        AbstractGraph::new(6, vec![(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    }

    #[test]
    fn matchings() {
        assert_eq!(enumerate_perfect_matchings(&theta()).unwrap().len(), 3);
        assert_eq!(enumerate_perfect_matchings(&dumbbell()).unwrap(), vec![vec![0]]);
        assert_eq!(enumerate_perfect_matchings(&prism3()).unwrap().len(), 4);
        assert_eq!(enumerate_perfect_matchings(&k4()).unwrap().len(), 3);
    }

    #[test]
    fn trivalent_graph_without_perfect_matching() {
        // A claw whose three leaves each carry a loop.
        let g = AbstractGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert!(enumerate_perfect_matchings(&g).unwrap().is_empty());
    }

    #[test]
    fn two_factors() {
        assert_eq!(count_two_factors_through(&theta(), &[0]).unwrap().count, 2);
        assert_eq!(count_two_factors_through(&prism3(), &[0, 1, 2]).unwrap().count, 0);
        assert_eq!(count_two_factors_through(&dumbbell(), &[0]).unwrap().count, 0);
        assert_eq!(count_two_factors_through(&theta(), &[0, 1]), Err(OracleError::NotPerfectMatching));
    }

    #[test]
    fn tait_counts() {
        assert_eq!(count_tait_colorings(&theta()).unwrap(), 6);
        assert_eq!(count_tait_colorings(&dumbbell()).unwrap(), 0);
        assert_eq!(count_tait_colorings(&k4()).unwrap(), 6);
        assert_eq!(count_tait_colorings(&prism3()).unwrap(), 6);
        let path = AbstractGraph::new(2, vec![(0, 1)]);
        assert!(matches!(count_tait_colorings(&path), Err(OracleError::NotTrivalent { .. })));
    }

    #[test]
    fn even_matchings() {
        assert!(!is_even_matching(&prism3(), &[0, 1, 2]).unwrap());
        // candle: one rung plus the opposite sides of both triangles
        assert!(is_even_matching(&prism3(), &[0, 4, 7]).unwrap());
        assert!(is_even_matching(&theta(), &[0]).unwrap());
        assert!(!is_even_matching(&dumbbell(), &[0]).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = AbstractGraph::new(2, vec![(0, 1); MAX_ORACLE_EDGES + 1]);
        assert!(matches!(enumerate_perfect_matchings(&big), Err(OracleError::TooLarge(_))));
    }
}
