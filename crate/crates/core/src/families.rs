//! Generators for the standard graph families and a seeded random diagram source.
//!
//! Every generator emits its vertices in a fixed order and numbers edges by
//! first appearance, exactly as the parser would for the equivalent graph file,
//! so `parse_diagram(to_graph_file(d)) == d` for all of them.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::oracles::{enumerate_perfect_matchings, AbstractGraph};
use crate::parse::NamedMap;
use crate::planar::{partner, Dart, FlipSpec, PlanarDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Theta,
    Dumbbell,
    PrismLadder,
    PrismCandle,
    K4,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Theta, Family::Dumbbell, Family::PrismLadder, Family::PrismCandle, Family::K4];

    pub fn name(self) -> &'static str {
        match self {
            Family::Theta => "theta",
            Family::Dumbbell => "dumbbell",
            Family::PrismLadder => "prism-L",
            Family::PrismCandle => "prism-C",
            Family::K4 => "K4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?} (expected theta, dumbbell, prism-L, prism-C or K4)")]
    UnknownFamily(String),
    #[error("family {family} is not defined for m = {m}")]
    Unsupported { family: Family, m: usize },
}

struct Sketch {
    vertices: Vec<(String, Vec<(String, u8)>)>,
    matching: Vec<String>,
}

impl Sketch {
    fn new() -> Self {
        Self { vertices: Vec::new(), matching: Vec::new() }
    }

    fn vertex(&mut self, name: String, darts: [(String, u8); 3]) {
        self.vertices.push((name, darts.to_vec()));
    }

    fn build(&self) -> PlanarDiagram {
        let named = NamedMap {
            vertices: self
                .vertices
                .iter()
                .map(|(n, ds)| (n.as_str(), ds.iter().map(|(e, s)| (e.as_str(), *s)).collect()))
                .collect(),
            matching: self.matching.iter().map(String::as_str).collect(),
        };
        named.build().expect("family generators produce valid diagrams")
    }
}

fn dart(name: impl Into<String>, side: u8) -> (String, u8) {
    (name.into(), side)
}

/// Builds the canonical drawing of a family member.
pub fn generate_family(family: Family, m: usize) -> Result<PlanarDiagram, FamilyError> {
    let unsupported = Err(FamilyError::Unsupported { family, m });
    match family {
        Family::Theta if m >= 1 => Ok(theta(m)),
        Family::Dumbbell if m >= 1 => Ok(dumbbell(m)),
        Family::PrismLadder if m >= 2 => Ok(prism(m, false)),
        Family::PrismCandle if m == 3 => Ok(prism(3, true)),
        Family::K4 if m == 1 => Ok(k4()),
        _ => unsupported,
    }
}

/// θ_m: a ladder with m rungs `r1..rm` (the matching), closed by a top cap
/// `T` joining u1–v1 and a bottom cap `B` joining um–vm. Side rails are
/// `s_i = u_i u_{i+1}` and `t_i = v_i v_{i+1}`. For m = 1 this is θ.
fn theta(m: usize) -> PlanarDiagram {
    let mut s = Sketch::new();
    for i in 1..=m {
        let up = if i == 1 { dart("T", 0) } else { dart(format!("s{}", i - 1), 1) };
        let down = if i == m { dart("B", 0) } else { dart(format!("s{i}"), 0) };
        s.vertex(format!("u{i}"), [dart(format!("r{i}"), 0), up, down]);
    }
    for i in 1..=m {
        let up = if i == 1 { dart("T", 1) } else { dart(format!("t{}", i - 1), 1) };
        let down = if i == m { dart("B", 1) } else { dart(format!("t{i}"), 0) };
        s.vertex(format!("v{i}"), [dart(format!("r{i}"), 1), down, up]);
    }
    s.matching = (1..=m).map(|i| format!("r{i}")).collect();
    s.build()
}

/// D_m: a path of m bars `b_i = w_i x_i` (the matching), consecutive bars
/// joined by a double edge `p_i, q_i` from x_i to w_{i+1}, with loops `L`
/// at w1 and `R` at xm. Every bar is a bridge.
fn dumbbell(m: usize) -> PlanarDiagram {
    let mut s = Sketch::new();
    for i in 1..=m {
        let w = if i == 1 {
            [dart("b1", 0), dart("L", 0), dart("L", 1)]
        } else {
            [dart(format!("b{i}"), 0), dart(format!("p{}", i - 1), 1), dart(format!("q{}", i - 1), 1)]
        };
        s.vertex(format!("w{i}"), w);
        let x = if i == m {
            [dart("R", 0), dart(format!("b{i}"), 1), dart("R", 1)]
        } else {
            [dart(format!("p{i}"), 0), dart(format!("b{i}"), 1), dart(format!("q{i}"), 0)]
        };
        s.vertex(format!("x{i}"), x);
    }
    s.matching = (1..=m).map(|i| format!("b{i}")).collect();
    s.build()
}

/// P_m: outer cycle `O_k = o_k o_{k+1}`, inner cycle `I_k = i_k i_{k+1}` and
/// rungs `R_k = o_k i_k` (indices mod m). The ladder matching is the rungs;
/// the candle matching (m = 3) is {R1, O2, I2}.
fn prism(m: usize, candle: bool) -> PlanarDiagram {
    let prev = |k: usize| if k == 1 { m } else { k - 1 };
    let mut s = Sketch::new();
    for k in 1..=m {
        s.vertex(format!("o{k}"), [dart(format!("O{}", prev(k)), 1), dart(format!("O{k}"), 0), dart(format!("R{k}"), 0)]);
    }
    for k in 1..=m {
        s.vertex(format!("i{k}"), [dart(format!("R{k}"), 1), dart(format!("I{k}"), 0), dart(format!("I{}", prev(k)), 1)]);
    }
    s.matching = if candle {
        vec!["R1".into(), "O2".into(), "I2".into()]
    } else {
        (1..=m).map(|k| format!("R{k}")).collect()
    };
    s.build()
}

/// K4 drawn as a centre `c` with spokes `s_k` to the triangle `p0 p1 p2`
/// (sides `t_k = p_k p_{k+1}`), matched by {s0, t1}.
fn k4() -> PlanarDiagram {
    let mut s = Sketch::new();
    s.vertex("c".into(), [dart("s0", 0), dart("s1", 0), dart("s2", 0)]);
    for k in 0..3 {
        let back = (k + 2) % 3;
        s.vertex(format!("p{k}"), [dart(format!("t{k}"), 0), dart(format!("s{k}"), 1), dart(format!("t{back}"), 1)]);
    }
    s.matching = vec!["s0".into(), "t1".into()];
    s.build()
}

/// Subdivides the edges of two darts on a common face and joins the new
/// vertices by a chord drawn inside that face. Returns the grown map with an
/// empty matching.
fn add_chord(d: &PlanarDiagram, p: Dart, r: Dart) -> PlanarDiagram {
    let mut b = d.clone().into_builder();
    b.matching.clear();
    let chord = b.new_edge("c");
    let e1 = b.new_edge("e");
    // Split p's edge: p stays, p^1 moves to w1, new edge e1 runs w1 -> old end.
    b.replace_dart(partner(p), 2 * e1 + 1);
    b.new_vertex("x", [partner(p), 2 * chord, 2 * e1]);
    let r = if r == partner(p) { 2 * e1 + 1 } else { r };
    let e2 = b.new_edge("e");
    b.replace_dart(partner(r), 2 * e2 + 1);
    b.new_vertex("x", [partner(r), 2 * chord + 1, 2 * e2]);
    b.finish_structural().expect("chord insertion keeps the map well formed")
}

fn grow_lollipop(d: &PlanarDiagram, e: usize) -> PlanarDiagram {
    d.with_matching(&[]).and_then(|d| d.add_lollipop_unchecked(e)).expect("lollipop on unmatched map")
}

/// Theta with an empty matching.
fn bare_theta() -> PlanarDiagram {
    theta(1).with_matching(&[]).expect("theta map")
}

/// A random valid diagram with at most `max_matching` matching edges.
///
/// The underlying graph grows from θ by chord insertions inside faces and by
/// lollipops, may be joined with a second θ, receives a uniformly chosen
/// perfect matching, and is finally mirrored by random accepted flips.
/// Deterministic for a given seed.
pub fn random_diagram(seed: u64, max_matching: usize) -> PlanarDiagram {
    let max_matching = max_matching.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let target_vertices = 2 * rng.gen_range(1..=max_matching);
        let mut g = bare_theta();
        let mut with_extra = false;
        if target_vertices >= 4 && rng.gen_bool(0.2) {
            with_extra = true;
        }
        let body_target = if with_extra { target_vertices - 2 } else { target_vertices };
        while g.num_vertices() < body_target {
            if rng.gen_bool(0.25) && g.num_vertices() + 2 <= body_target {
                let e = rng.gen_range(0..g.num_edges());
                g = grow_lollipop(&g, e);
            } else {
                let faces = g.faces();
                let face = faces.choose(&mut rng).expect("nonempty map has faces");
                if face.len() < 2 {
                    continue;
                }
                let i = rng.gen_range(0..face.len());
                let mut j = rng.gen_range(0..face.len() - 1);
                if j >= i {
                    j += 1;
                }
                g = add_chord(&g, face[i], face[j]);
            }
        }
        if with_extra {
            g = g.disjoint_union_unchecked(&bare_theta());
        }
        let matchings = enumerate_perfect_matchings(&AbstractGraph::from_diagram(&g)).unwrap_or_default();
        let Some(m) = matchings.choose(&mut rng) else { continue };
        let Ok(mut d) = g.with_matching(m) else { continue };
        if d.check().is_err() {
            continue;
        }
        for _ in 0..rng.gen_range(0..3) {
            let v: Vec<usize> = (0..d.num_vertices()).filter(|_| rng.gen_bool(0.5)).collect();
            if let Ok(f) = d.flip(&FlipSpec::new(v)) {
                d = f;
            }
        }
        return d;
    }
}
