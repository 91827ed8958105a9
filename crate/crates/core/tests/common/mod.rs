#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use pmcoh::planar::PlanarDiagram;
use pmcoh::{parse_diagram, FlipSpec, Poly};

pub fn p(s: &str) -> Poly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial {s:?}: {e}"))
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Vertex lines of a ladder prism P3 with every name suffixed by `tag`,
/// rung 1 replaced by the darts `outer` at `o1` and `inner` at `i1`.
fn ladder_lines(tag: &str, outer: &str, inner: &str) -> String {
    let mut s = String::new();
    for k in 1..=3 {
        let prev = if k == 1 { 3 } else { k - 1 };
        let rung_o = if k == 1 { outer.to_string() } else { format!("R{k}{tag}.0") };
        let rung_i = if k == 1 { inner.to_string() } else { format!("R{k}{tag}.1") };
        s += &format!("vertex o{k}{tag}: O{prev}{tag}.1 O{k}{tag}.0 {rung_o}\n");
        s += &format!("vertex i{k}{tag}: {rung_i} I{k}{tag}.0 I{prev}{tag}.1\n");
    }
    s
}

/// Two ladder prisms joined by cutting rung 1 in each and reconnecting the
/// four ends across as two matching edges `X`, `Y`. Returns the diagram and
/// the flip of the second copy, whose boundary crosses exactly `X` and `Y`.
pub fn glued_ladders() -> (PlanarDiagram, FlipSpec) {
    let candidates = [("X.1", "Y.1"), ("Y.1", "X.1")];
    for (outer_b, inner_b) in candidates {
        let text = format!(
            "{}{}matching: X Y R2 R3 R2b R3b\n",
            ladder_lines("", "X.0", "Y.0"),
            ladder_lines("b", outer_b, inner_b)
        );
        if let Ok(d) = parse_diagram(&text) {
            let inside = (0..d.num_vertices()).filter(|&v| d.vertex_name(v).ends_with('b'));
            let spec = FlipSpec::new(inside);
            return (d, spec);
        }
    }
    panic!("no planar gluing of two ladders");
}

/// θ_m with the matching replaced by the named edges.
pub fn rematched(d: &PlanarDiagram, names: &[&str]) -> PlanarDiagram {
    let edges: Vec<usize> = names.iter().map(|n| d.edge_by_name(n).expect("edge exists")).collect();
    d.with_matching(&edges).expect("valid matching")
}

pub fn spec_of(d: &PlanarDiagram, names: &[&str]) -> FlipSpec {
    FlipSpec::new(names.iter().map(|n| d.vertex_by_name(n).expect("vertex exists")))
}

fn endpoints(d: &PlanarDiagram) -> Vec<(usize, usize)> {
    (0..d.num_edges()).map(|e| d.endpoints(e)).collect()
}

/// Perfect matchings by exhaustive search over edge subsets of size V/2.
pub fn brute_perfect_matchings(d: &PlanarDiagram) -> Vec<Vec<usize>> {
    let ends = endpoints(d);
    let n = d.num_vertices();
    let mut out = Vec::new();
    for mask in 0u64..1 << ends.len() {
        if mask.count_ones() as usize * 2 != n {
            continue;
        }
        let mut hit = vec![0; n];
        for (e, &(a, b)) in ends.iter().enumerate() {
            if mask >> e & 1 == 1 {
                hit[a] += 1;
                hit[b] += 1;
            }
        }
        if hit.iter().all(|&h| h == 1) {
            out.push((0..ends.len()).filter(|e| mask >> e & 1 == 1).collect());
        }
    }
    out
}

/// 2-factors containing `m`: subsets of the other edges adding exactly one
/// more edge end at every vertex.
pub fn brute_two_factors(d: &PlanarDiagram, m: &[usize]) -> usize {
    let ends = endpoints(d);
    let rest: Vec<usize> = (0..ends.len()).filter(|e| !m.contains(e)).collect();
    let mut count = 0;
    for mask in 0u64..1 << rest.len() {
        let mut deg = vec![0; d.num_vertices()];
        for (bit, &e) in rest.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                deg[ends[e].0] += 1;
                deg[ends[e].1] += 1;
            }
        }
        if deg.iter().all(|&x| x == 1) {
            count += 1;
        }
    }
    count
}

/// Proper 3-edge-colorings by backtracking; loops admit none.
pub fn brute_tait_colorings(d: &PlanarDiagram) -> u64 {
    let ends = endpoints(d);
    if ends.iter().any(|&(a, b)| a == b) {
        return 0;
    }
    fn go(e: usize, ends: &[(usize, usize)], used: &mut [[bool; 3]]) -> u64 {
        if e == ends.len() {
            return 1;
        }
        let (a, b) = ends[e];
        let mut total = 0;
        for c in 0..3 {
            if !used[a][c] && !used[b][c] {
                used[a][c] = true;
                used[b][c] = true;
                total += go(e + 1, ends, used);
                used[a][c] = false;
                used[b][c] = false;
            }
        }
        total
    }
    go(0, &ends, &mut vec![[false; 3]; d.num_vertices()])
}

/// Bridges by deleting each edge and testing whether its ends stay connected.
pub fn brute_bridges(d: &PlanarDiagram) -> BTreeSet<usize> {
    let ends = endpoints(d);
    (0..ends.len())
        .filter(|&cut| {
            let (a, b) = ends[cut];
            let mut seen = vec![false; d.num_vertices()];
            seen[a] = true;
            let mut queue = VecDeque::from([a]);
            while let Some(v) = queue.pop_front() {
                for (e, &(x, y)) in ends.iter().enumerate() {
                    if e == cut || (x != v && y != v) {
                        continue;
                    }
                    let w = if x == v { y } else { x };
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            !seen[b]
        })
        .collect()
}
