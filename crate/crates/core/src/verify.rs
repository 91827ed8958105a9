//! Verification suites run by `pmcoh verify`: each check recomputes a
//! quantity two ways, or tests a structural identity, on one diagram.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::bracket::{at_one, tait_terms, two_factor_polynomial, BracketError};
use crate::families::{generate_family, Family};
use crate::homology::{
    cohomology_of, complex_of, graded_euler, s_map, verify_d_squared, verify_disjoint_union, verify_flip_chain_map,
    verify_lollipop, CohomologyTable, FlipContext, Form, HomologyError,
};
use crate::laurent::PolyError;
use crate::oracles::{
    count_tait_colorings, count_two_factors_through, is_even_matching, AbstractGraph, OracleError, MAX_ORACLE_EDGES,
};
use crate::planar::{DiagramError, EdgeId, FlipSpec, PlanarDiagram, VertexId};
use crate::states::MAX_MATCHING;
use crate::Poly;

/// Upper bound on flips tried by the `flips` suite.
pub const MAX_FLIP_CANDIDATES: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Suite {
    Dsq,
    Euler,
    Flips,
    Oracles,
    Lollipop,
    Union,
    Smap,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Dsq, Suite::Euler, Suite::Flips, Suite::Oracles, Suite::Lollipop, Suite::Union, Suite::Smap];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dsq => "dsq",
            Suite::Euler => "euler",
            Suite::Flips => "flips",
            Suite::Oracles => "oracles",
            Suite::Lollipop => "lollipop",
            Suite::Union => "union",
            Suite::Smap => "smap",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Result of an informational check that does not affect the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub notes: Vec<Note>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    fn push(&mut self, suite: Suite, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { suite, name: name.into(), status, detail: detail.into() });
    }
}

/// Runs `suite` (or every suite for [`Suite::All`]) on `d`. `family` enables
/// the informational conjecture reports for known families.
pub fn run_suite(
    d: &PlanarDiagram,
    suite: Suite,
    family: Option<(Family, usize)>,
) -> Result<VerifyReport, VerifyError> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut report = VerifyReport::default();
    for s in suites {
        match s {
            Suite::Dsq => dsq(d, &mut report)?,
            Suite::Euler => euler(d, &mut report)?,
            Suite::Flips => flips(d, &mut report)?,
            Suite::Oracles => oracles(d, &mut report)?,
            Suite::Lollipop => lollipop(d, &mut report)?,
            Suite::Union => union(d, &mut report)?,
            Suite::Smap => smap(&mut report)?,
            Suite::All => unreachable!(),
        }
    }
    if suite == Suite::All {
        conjecture_notes(d, family, &mut report)?;
    }
    Ok(report)
}

fn dsq(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    let c = complex_of(d)?;
    let ok = verify_d_squared(&c);
    r.push(Suite::Dsq, "d∘d = 0", Status::from_bool(ok), format!("{} bigradings", c.bigradings().count()));
    Ok(())
}

fn euler(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    let chi = graded_euler(&complex_of(d)?);
    let poly: Poly = two_factor_polynomial(d)?;
    let h = cohomology_of(d)?.euler();
    r.push(Suite::Euler, "χ(C) = ⟨G:M⟩₂", Status::from_bool(chi == poly), format!("{poly}"));
    r.push(Suite::Euler, "χ(H) = χ(C)", Status::from_bool(h == chi), format!("{h}"));
    Ok(())
}

fn oracles(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    let g = AbstractGraph::from_diagram(d);
    if g.edges.len() > MAX_ORACLE_EDGES {
        r.push(Suite::Oracles, "oracles", Status::Skipped, format!("{} edges", g.edges.len()));
        return Ok(());
    }
    let poly: Poly = two_factor_polynomial(d)?;
    let value = at_one(&poly)?;
    let count = count_two_factors_through(&g, &d.matching_edges())?.count;
    r.push(
        Suite::Oracles,
        "⟨G:M⟩₂(1) = #2-factors through M",
        Status::from_bool(value == count as i64),
        format!("{value} vs {count}"),
    );
    if !is_even_matching(&g, &d.matching_edges())? {
        r.push(Suite::Oracles, "odd matching vanishes at 1", Status::from_bool(value == 0), format!("{value}"));
    }
    if !d.bridges().is_empty() {
        r.push(Suite::Oracles, "bridge forces ⟨G:M⟩₂(1) = 0", Status::from_bool(value == 0), format!("{value}"));
    }
    let terms = tait_terms::<i64>(d)?;
    let mut tait = Poly::zero();
    for t in &terms {
        tait = tait.checked_add(&t.polynomial)?;
    }
    let t1 = at_one(&tait)?;
    let colorings = count_tait_colorings(&g)?;
    r.push(
        Suite::Oracles,
        "T_G(1) = #Tait colorings",
        Status::from_bool(t1 == colorings as i64),
        format!("{t1} vs {colorings} over {} matchings", terms.len()),
    );
    Ok(())
}

fn lollipop(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    if d.matching_edges().len() + 1 > MAX_MATCHING {
        r.push(Suite::Lollipop, "lollipop", Status::Skipped, "matching too large");
        return Ok(());
    }
    let mut tried = 0;
    let mut failed = Vec::new();
    for e in 0..d.num_edges() {
        if d.in_matching(e) {
            continue;
        }
        tried += 1;
        if !verify_lollipop(d, e)? {
            failed.push(d.edge_name(e).to_string());
        }
    }
    let detail = if failed.is_empty() { format!("{tried} edges") } else { format!("failed on {}", failed.join(",")) };
    r.push(Suite::Lollipop, "H(G') = H(G) ⊕ H(G){1,1}", Status::from_bool(failed.is_empty()), detail);
    Ok(())
}

fn union(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    let theta = generate_family(Family::Theta, 1).expect("theta_1 exists");
    let ok = verify_disjoint_union(d, &theta)?;
    r.push(Suite::Union, "H(G ⊔ θ) = H(G) ⊗ H(θ)", Status::from_bool(ok), "");
    if 2 * d.matching_edges().len() <= 8 {
        let ok = verify_disjoint_union(d, d)?;
        r.push(Suite::Union, "H(G ⊔ G) = H(G) ⊗ H(G)", Status::from_bool(ok), "");
    }
    Ok(())
}

fn flips(d: &PlanarDiagram, r: &mut VerifyReport) -> Result<(), VerifyError> {
    let before = cohomology_of(d)?;
    let candidates = flip_candidates(d, MAX_FLIP_CANDIDATES);
    let mut invariant = 0;
    let mut chain_maps = 0;
    let mut bad = Vec::new();
    for spec in &candidates {
        let after = cohomology_of(&d.flip(spec)?)?;
        let label = spec.inside.iter().map(|&v| d.vertex_name(v)).collect::<Vec<_>>().join(",");
        if after == before {
            invariant += 1;
        } else {
            bad.push(format!("H changed for {{{label}}}"));
        }
        if d.cut_edges(&spec.inside).len() == 2 {
            if verify_flip_chain_map(d, spec)?.holds() {
                chain_maps += 1;
            } else {
                bad.push(format!("S not a chain isomorphism for {{{label}}}"));
            }
        }
    }
    r.push(
        Suite::Flips,
        "H invariant under flips",
        Status::from_bool(bad.is_empty()),
        if bad.is_empty() {
            format!("{invariant} flips, {chain_maps} 2-flip chain maps")
        } else {
            bad.join("; ")
        },
    );
    Ok(())
}

fn s_closed_form(k: usize, inside: &[usize], omega: u64) -> Form {
    let x1 = omega & 1 == 1;
    let x2 = omega & 2 == 2;
    let mut out = Form::monomial(k, omega);
    for &a in inside {
        if omega >> a & 1 == 0 {
            continue;
        }
        let quotient = omega & !(1 << a);
        if !x1 && quotient & 1 == 0 {
            out.add_monomial(quotient | 1);
        }
        if !x2 && quotient & 2 == 0 {
            out.add_monomial(quotient | 2);
        }
    }
    out
}

fn smap(r: &mut VerifyReport) -> Result<(), VerifyError> {
    let mut star_ok = true;
    for k in 0..=6usize {
        for m in 0..1u64 << k {
            let f = Form::monomial(k, m);
            star_ok &= f.star().star() == f;
        }
    }
    r.push(Suite::Smap, "⋆⋆ = id", Status::from_bool(star_ok), "k ≤ 6");
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 2..=6usize {
        for d in 2..=k.min(4) {
            let inside: Vec<usize> = (2..d).collect();
            let ctx = FlipContext::Exchange { k, c1: 0, c2: 1, inside: inside.clone() };
            for omega in 0..1u64 << k {
                cases += 1;
                if s_map(&ctx, omega)? != s_closed_form(k, &inside, omega) {
                    mismatches += 1;
                }
            }
        }
    }
    r.push(Suite::Smap, "S = ⋆R⋆ closed forms", Status::from_bool(mismatches == 0), format!("{cases} cases"));
    Ok(())
}

/// Connected pieces of `d` after deleting `removed`, restricted to `within`.
fn pieces(d: &PlanarDiagram, within: &[VertexId], removed: &[EdgeId]) -> Vec<BTreeSet<VertexId>> {
    let allowed: BTreeSet<VertexId> = within.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in within {
        if !seen.insert(start) {
            continue;
        }
        let mut piece = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for x in d.rotation(v) {
                if removed.contains(&(x / 2)) {
                    continue;
                }
                let w = d.vertex_of(x ^ 1);
                if allowed.contains(&w) && seen.insert(w) {
                    piece.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(piece);
    }
    out
}

/// Accepted flips of `d`: whole components, one side of each bridge, and one
/// side of each 2-edge cut, in that order, capped at `limit`.
pub fn flip_candidates(d: &PlanarDiagram, limit: usize) -> Vec<FlipSpec> {
    let mut out: Vec<FlipSpec> = Vec::new();
    let push = |inside: BTreeSet<VertexId>, out: &mut Vec<FlipSpec>| {
        let spec = FlipSpec { inside };
        if out.len() < limit && !out.contains(&spec) && d.check_flip(&spec).is_ok() {
            out.push(spec);
        }
    };
    let components = d.components();
    for comp in &components {
        push(comp.iter().copied().collect(), &mut out);
    }
    let bridges: Vec<EdgeId> = d.bridges().into_iter().collect();
    for comp in &components {
        let inner: Vec<EdgeId> = (0..d.num_edges()).filter(|&e| comp.contains(&d.endpoints(e).0)).collect();
        for &b in bridges.iter().filter(|b| inner.contains(b)) {
            if let Some(side) = pieces(d, comp, &[b]).pop() {
                push(side, &mut out);
            }
        }
        for (idx, &e) in inner.iter().enumerate() {
            if bridges.contains(&e) {
                continue;
            }
            for &f in &inner[idx + 1..] {
                if bridges.contains(&f) {
                    continue;
                }
                let parts = pieces(d, comp, &[e, f]);
                if parts.len() == 2 {
                    push(parts[1].clone(), &mut out);
                }
            }
        }
    }
    out
}

fn table_matches(t: &CohomologyTable, cells: &[((i32, i32), usize)]) -> bool {
    *t == CohomologyTable::from_cells(cells.iter().copied())
}

/// Conjectured cohomology of the prism with the ladder matching.
pub fn prism_conjecture(m: usize) -> CohomologyTable {
    let m = m as i32;
    let mut cells = Vec::new();
    for i in 0..=m - 2 {
        cells.push(((i, 2 * i - m), 1));
        cells.push(((i, 2 * i - m + 2), 1));
    }
    if m % 2 == 1 {
        cells.extend([((m - 1, m - 2), 1), ((m - 1, m), 1), ((m, m - 1), 1), ((m, m + 1), 1)]);
    } else {
        cells.extend([((m, m), 1), ((m, m + 2), 1)]);
    }
    CohomologyTable::from_cells(cells)
}

fn conjecture_notes(
    d: &PlanarDiagram,
    family: Option<(Family, usize)>,
    r: &mut VerifyReport,
) -> Result<(), VerifyError> {
    match family {
        Some((Family::Theta, m)) => {
            let m = m as i32;
            let holds = table_matches(&cohomology_of(d)?, &[((0, 1 - m), 1), ((0, -1 - m), 1)]);
            r.notes.push(Note {
                name: "θ_m cohomology conjecture".into(),
                holds,
                detail: format!("expected 1 at (0,{}) and (0,{})", 1 - m, -1 - m),
            });
        }
        Some((Family::PrismLadder, m)) => {
            let holds = cohomology_of(d)? == prism_conjecture(m);
            r.notes.push(Note { name: "prism cohomology conjecture".into(), holds, detail: format!("m = {m}") });
        }
        _ => {}
    }
    let g = AbstractGraph::from_diagram(d);
    if g.edges.len() <= MAX_ORACLE_EDGES {
        let mut even = 0;
        let mut positive = 0;
        for t in tait_terms::<i64>(d)? {
            if is_even_matching(&g, &t.matching)? {
                even += 1;
                if at_one(&t.polynomial)? > 0 {
                    positive += 1;
                }
            }
        }
        r.notes.push(Note {
            name: "even matchings evaluate positively".into(),
            holds: even == positive,
            detail: format!("{positive} of {even} even matchings"),
        });
    }
    Ok(())
}
