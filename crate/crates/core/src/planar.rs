//! Perfect matching drawings as trivalent combinatorial maps.
//!
//! Edge `e` owns darts `2e` and `2e + 1`; the edge involution is `d ^ 1`.
//! Each vertex lists its three darts in counterclockwise order. The face
//! permutation is `d -> succ(d ^ 1)`, where `succ` is the next dart in the
//! rotation at the vertex holding `d ^ 1`.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

pub type Dart = usize;
pub type EdgeId = usize;
pub type VertexId = usize;

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d / 2
}

#[inline]
pub fn partner(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NonTrivalent { vertex: String, degree: usize },
    #[error("dart {0} appears more than once")]
    DuplicateDart(Dart),
    #[error("dart {0} is not attached to any vertex")]
    MissingDart(Dart),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("vertex {0:?} does not exist")]
    UnknownVertex(String),
    #[error("a loop cannot be an edge in a matching (edge {0})")]
    MatchingLoop(String),
    #[error("matching not perfect: vertex {vertex} is covered {count} times")]
    MatchingNotPerfect { vertex: String, count: usize },
    #[error("non-planar rotation system: component {component} has V - E + F = {euler}")]
    NonPlanar { component: usize, euler: i64 },
    #[error("flip cuts {0} edges; at most 2 are allowed")]
    TooManyCutEdges(usize),
    #[error("single cut edge {0} is not in the matching")]
    CutEdgeNotInMatching(String),
    #[error("exactly one of the cut edges {0} and {1} is in the matching")]
    MixedCutEdges(String, String),
    #[error("edge {0} is in the matching")]
    EdgeInMatching(String),
    #[error("edge {0} is not in the matching")]
    EdgeNotInMatching(String),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
}

/// Outcome of checking a matching against the perfect-matching rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingCheck {
    Perfect,
    Loop(EdgeId),
    Coverage { vertex: VertexId, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEuler {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ComponentEuler {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub trivalent: bool,
    pub matching: MatchingCheck,
    pub components: Vec<ComponentEuler>,
}

impl ValidationReport {
    pub fn planar(&self) -> bool {
        self.components.iter().all(|c| c.euler() == 2)
    }

    pub fn is_valid(&self) -> bool {
        self.trivalent && self.matching == MatchingCheck::Perfect && self.planar()
    }
}

/// Vertex set of a flip move; cut edges are derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlipSpec {
    pub inside: BTreeSet<VertexId>,
}

impl FlipSpec {
    pub fn new<I: IntoIterator<Item = VertexId>>(inside: I) -> Self {
        Self { inside: inside.into_iter().collect() }
    }
}

/// A trivalent rotation system with a marked edge set (the matching).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    rotations: Vec<[Dart; 3]>,
    in_matching: Vec<bool>,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    dart_vertex: Vec<VertexId>,
    dart_slot: Vec<u8>,
}

impl PlanarDiagram {
    /// Builds a structurally sound map without checking the matching or planarity.
    ///
    /// Every dart `0..2E` must appear exactly once across the rotations.
    pub fn structural(
        rotations: Vec<[Dart; 3]>,
        matching: &[EdgeId],
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
    ) -> Result<Self, DiagramError> {
        let n_darts = rotations.len() * 3;
        let n_edges = n_darts / 2;
        let mut dart_vertex = vec![usize::MAX; n_darts];
        let mut dart_slot = vec![0u8; n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (slot, &d) in rot.iter().enumerate() {
                if d >= n_darts {
                    return Err(DiagramError::MissingDart(d.min(n_darts)));
                }
                if dart_vertex[d] != usize::MAX {
                    return Err(DiagramError::DuplicateDart(d));
                }
                dart_vertex[d] = v;
                dart_slot[d] = slot as u8;
            }
        }
        if let Some(d) = dart_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(DiagramError::MissingDart(d));
        }
        let mut in_matching = vec![false; n_edges];
        for &e in matching {
            if e >= n_edges {
                return Err(DiagramError::UnknownEdge(e));
            }
            in_matching[e] = true;
        }
        let vertex_names = fill_names(vertex_names, rotations.len(), "v")?;
        let edge_names = fill_names(edge_names, n_edges, "e")?;
        Ok(Self { rotations, in_matching, vertex_names, edge_names, dart_vertex, dart_slot })
    }

    /// Builds and fully validates a diagram.
    pub fn new(
        rotations: Vec<[Dart; 3]>,
        matching: &[EdgeId],
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
    ) -> Result<Self, DiagramError> {
        let d = Self::structural(rotations, matching, vertex_names, edge_names)?;
        d.check()?;
        Ok(d)
    }

    /// The diagram with no vertices.
    pub fn empty() -> Self {
        Self::structural(Vec::new(), &[], Vec::new(), Vec::new()).expect("empty map is well formed")
    }

    /// Converts the validation report into the first failure, if any.
    pub fn check(&self) -> Result<(), DiagramError> {
        let report = self.validate();
        match report.matching {
            MatchingCheck::Perfect => {}
            MatchingCheck::Loop(e) => return Err(DiagramError::MatchingLoop(self.edge_names[e].clone())),
            MatchingCheck::Coverage { vertex, count } => {
                return Err(DiagramError::MatchingNotPerfect { vertex: self.vertex_names[vertex].clone(), count })
            }
        }
        for (i, c) in report.components.iter().enumerate() {
            if c.euler() != 2 {
                return Err(DiagramError::NonPlanar { component: i, euler: c.euler() });
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport { trivalent: true, matching: self.check_matching(), components: self.component_euler() }
    }

    fn check_matching(&self) -> MatchingCheck {
        let mut cover = vec![0usize; self.num_vertices()];
        for e in self.matching_edges() {
            if self.is_loop(e) {
                return MatchingCheck::Loop(e);
            }
            cover[self.dart_vertex[2 * e]] += 1;
            cover[self.dart_vertex[2 * e + 1]] += 1;
        }
        match cover.iter().position(|&c| c != 1) {
            Some(v) => MatchingCheck::Coverage { vertex: v, count: cover[v] },
            None => MatchingCheck::Perfect,
        }
    }

    fn component_euler(&self) -> Vec<ComponentEuler> {
        let comps = self.components();
        let mut which = vec![0usize; self.num_vertices()];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                which[v] = i;
            }
        }
        let mut out: Vec<ComponentEuler> =
            comps.iter().map(|c| ComponentEuler { vertices: c.len(), edges: 0, faces: 0 }).collect();
        for e in 0..self.num_edges() {
            out[which[self.dart_vertex[2 * e]]].edges += 1;
        }
        for face in self.faces() {
            out[which[self.dart_vertex[face[0]]]].faces += 1;
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.in_matching.len()
    }

    pub fn num_darts(&self) -> usize {
        self.dart_vertex.len()
    }

    pub fn rotation(&self, v: VertexId) -> [Dart; 3] {
        self.rotations[v]
    }

    pub fn rotations(&self) -> &[[Dart; 3]] {
        &self.rotations
    }

    pub fn vertex_of(&self, d: Dart) -> VertexId {
        self.dart_vertex[d]
    }

    /// Next dart counterclockwise around the vertex holding `d`.
    pub fn succ(&self, d: Dart) -> Dart {
        let v = self.dart_vertex[d];
        self.rotations[v][(self.dart_slot[d] as usize + 1) % 3]
    }

    /// Previous dart counterclockwise around the vertex holding `d`.
    pub fn pred(&self, d: Dart) -> Dart {
        let v = self.dart_vertex[d];
        self.rotations[v][(self.dart_slot[d] as usize + 2) % 3]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.dart_vertex[2 * e], self.dart_vertex[2 * e + 1])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.dart_vertex[2 * e] == self.dart_vertex[2 * e + 1]
    }

    pub fn in_matching(&self, e: EdgeId) -> bool {
        self.in_matching[e]
    }

    /// Matching edges in ascending id order; this order fixes state bit positions.
    pub fn matching_edges(&self) -> Vec<EdgeId> {
        (0..self.num_edges()).filter(|&e| self.in_matching[e]).collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name)
    }

    /// Same map with a different matching (not validated).
    pub fn with_matching(&self, matching: &[EdgeId]) -> Result<Self, DiagramError> {
        Self::structural(self.rotations.clone(), matching, self.vertex_names.clone(), self.edge_names.clone())
    }

    /// Orbits of the face permutation, each starting at its smallest dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.num_darts()];
        let mut faces = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.succ(partner(d));
            }
            faces.push(face);
        }
        faces
    }

    /// Vertex sets of connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for d in self.rotations[v] {
                    let w = self.dart_vertex[partner(d)];
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Cut edges, found by a lowlink depth-first search over edge ids.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let n = self.num_vertices();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = BTreeSet::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Stack frames: (vertex, edge used to enter, next rotation slot).
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut slot)) = stack.last_mut() {
                if *slot < 3 {
                    let d = self.rotations[v][*slot];
                    *slot += 1;
                    let e = edge_of(d);
                    if Some(e) == via || self.is_loop(e) {
                        continue;
                    }
                    let w = self.dart_vertex[partner(d)];
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.insert(e);
                        }
                    }
                }
            }
        }
        out
    }

    /// Edges with exactly one endpoint in `inside`.
    pub fn cut_edges(&self, inside: &BTreeSet<VertexId>) -> Vec<EdgeId> {
        (0..self.num_edges())
            .filter(|&e| {
                let (a, b) = self.endpoints(e);
                inside.contains(&a) != inside.contains(&b)
            })
            .collect()
    }

    /// Checks the cut-edge rules of a flip and returns the cut edges.
    pub fn check_flip(&self, spec: &FlipSpec) -> Result<Vec<EdgeId>, DiagramError> {
        if let Some(&v) = spec.inside.iter().find(|&&v| v >= self.num_vertices()) {
            return Err(DiagramError::UnknownVertex(v.to_string()));
        }
        let cut = self.cut_edges(&spec.inside);
        match cut.as_slice() {
            [] => {}
            [e] => {
                if !self.in_matching[*e] {
                    return Err(DiagramError::CutEdgeNotInMatching(self.edge_names[*e].clone()));
                }
            }
            [e, f] => {
                if self.in_matching[*e] != self.in_matching[*f] {
                    return Err(DiagramError::MixedCutEdges(
                        self.edge_names[*e].clone(),
                        self.edge_names[*f].clone(),
                    ));
                }
            }
            _ => return Err(DiagramError::TooManyCutEdges(cut.len())),
        }
        Ok(cut)
    }

    /// Mirrors the region `spec.inside` by reversing the rotation at each inside vertex.
    pub fn flip(&self, spec: &FlipSpec) -> Result<Self, DiagramError> {
        self.check_flip(spec)?;
        let mut rotations = self.rotations.clone();
        for &v in &spec.inside {
            let [a, b, c] = rotations[v];
            rotations[v] = [a, c, b];
        }
        let out = Self::structural(rotations, &self.matching_edges(), self.vertex_names.clone(), self.edge_names.clone())?;
        out.check()?;
        Ok(out)
    }

    /// Subdivides non-matching edge `e` with a new vertex carrying a pendant
    /// loop on a stem; the stem joins the matching.
    ///
    /// Edge `e` keeps its id and now runs from its first endpoint to the new
    /// subdivision vertex; the far half, the stem and the loop get the next
    /// three edge ids in that order.
    pub fn add_lollipop(&self, e: EdgeId) -> Result<Self, DiagramError> {
        if e >= self.num_edges() {
            return Err(DiagramError::UnknownEdge(e));
        }
        if self.in_matching[e] {
            return Err(DiagramError::EdgeInMatching(self.edge_names[e].clone()));
        }
        let out = self.add_lollipop_unchecked(e)?;
        out.check()?;
        Ok(out)
    }

    pub(crate) fn add_lollipop_unchecked(&self, e: EdgeId) -> Result<Self, DiagramError> {
        let mut b = self.clone().into_builder();
        let half = b.new_edge(&format!("{}'", self.edge_names[e]));
        let stem = b.new_edge("stem");
        let loop_e = b.new_edge("loop");
        b.replace_dart(2 * e + 1, 2 * half + 1);
        b.new_vertex("v", [2 * e + 1, 2 * half, 2 * stem]);
        b.new_vertex("w", [2 * stem + 1, 2 * loop_e, 2 * loop_e + 1]);
        b.matching.push(stem);
        b.finish_structural()
    }

    /// Places `other` beside `self`, shifting its vertex, edge and dart ids.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, DiagramError> {
        let out = self.disjoint_union_unchecked(other);
        out.check()?;
        Ok(out)
    }

    pub(crate) fn disjoint_union_unchecked(&self, other: &Self) -> Self {
        let shift = self.num_darts();
        let mut rotations = self.rotations.clone();
        rotations.extend(other.rotations.iter().map(|r| r.map(|d| d + shift)));
        let mut matching = self.matching_edges();
        matching.extend(other.matching_edges().into_iter().map(|e| e + self.num_edges()));
        let mut vnames = self.vertex_names.clone();
        let mut enames = self.edge_names.clone();
        let mut vtaken: HashSet<String> = vnames.iter().cloned().collect();
        let mut etaken: HashSet<String> = enames.iter().cloned().collect();
        for n in &other.vertex_names {
            vnames.push(fresh_name(&mut vtaken, n));
        }
        for n in &other.edge_names {
            enames.push(fresh_name(&mut etaken, n));
        }
        Self::structural(rotations, &matching, vnames, enames).expect("union of well-formed maps")
    }

    pub(crate) fn into_builder(self) -> Builder {
        let matching = self.matching_edges();
        let vtaken = self.vertex_names.iter().cloned().collect();
        let etaken = self.edge_names.iter().cloned().collect();
        Builder {
            rotations: self.rotations,
            matching,
            vertex_names: self.vertex_names,
            edge_names: self.edge_names,
            vtaken,
            etaken,
        }
    }
}

/// Mutable scratch form used by constructions that grow a diagram.
pub(crate) struct Builder {
    pub rotations: Vec<[Dart; 3]>,
    pub matching: Vec<EdgeId>,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    vtaken: HashSet<String>,
    etaken: HashSet<String>,
}

impl Builder {
    pub fn new_edge(&mut self, hint: &str) -> EdgeId {
        let name = fresh_name(&mut self.etaken, hint);
        self.edge_names.push(name);
        self.edge_names.len() - 1
    }

    pub fn new_vertex(&mut self, hint: &str, rot: [Dart; 3]) -> VertexId {
        let name = fresh_name(&mut self.vtaken, hint);
        self.vertex_names.push(name);
        self.rotations.push(rot);
        self.rotations.len() - 1
    }

    /// Swaps dart `old` for `new` in whichever rotation holds it.
    pub fn replace_dart(&mut self, old: Dart, new: Dart) {
        for rot in &mut self.rotations {
            for d in rot.iter_mut() {
                if *d == old {
                    *d = new;
                    return;
                }
            }
        }
    }

    pub fn finish_structural(self) -> Result<PlanarDiagram, DiagramError> {
        PlanarDiagram::structural(self.rotations, &self.matching, self.vertex_names, self.edge_names)
    }
}

fn fresh_name(taken: &mut HashSet<String>, hint: &str) -> String {
    let mut name = hint.to_string();
    let mut i = 1;
    while taken.contains(&name) {
        i += 1;
        name = format!("{hint}{i}");
    }
    taken.insert(name.clone());
    name
}

fn fill_names(names: Vec<String>, count: usize, prefix: &str) -> Result<Vec<String>, DiagramError> {
    if names.is_empty() {
        return Ok((0..count).map(|i| format!("{prefix}{i}")).collect());
    }
    let mut seen = HashSet::new();
    for n in &names {
        if !seen.insert(n.as_str()) {
            return Err(DiagramError::DuplicateName(n.clone()));
        }
    }
    let mut names = names;
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    while names.len() < count {
        let hint = format!("{prefix}{}", names.len());
        names.push(fresh_name(&mut taken, &hint));
    }
    names.truncate(count);
    Ok(names)
}
