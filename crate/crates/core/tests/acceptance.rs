//! Acceptance gate: prints one pass/fail line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::process::ExitCode;

use common::{
    binom, brute_bridges, brute_perfect_matchings, brute_tait_colorings, brute_two_factors, glued_ladders, p,
    rematched, spec_of,
};
use pmcoh::bracket::{at_one, tait_polynomial, two_factor_polynomial};
use pmcoh::homology::{
    cohomology_of, complex_of, graded_euler, s_map, verify_d_squared, verify_disjoint_union, verify_flip_chain_map,
    verify_lollipop, CohomologyTable, FlipContext, Form,
};
use pmcoh::states::bridge_via_states;
use pmcoh::{generate_family, random_diagram, Family, FlipSpec, PlanarDiagram, Poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fam(f: Family, m: usize) -> PlanarDiagram {
    generate_family(f, m).unwrap_or_else(|e| panic!("{f} {m}: {e}"))
}

fn tfp(d: &PlanarDiagram) -> Poly {
    two_factor_polynomial(d).expect("2-factor polynomial")
}

fn table(cells: &[(i32, i32)]) -> CohomologyTable {
    CohomologyTable::from_cells(cells.iter().map(|&ij| (ij, 1)))
}

/// Every (diagram, expected polynomial) pair stated for criterion 1.
fn polynomial_cases() -> Vec<(String, PlanarDiagram, Poly)> {
    let mut cases = vec![
        ("theta".to_string(), fam(Family::Theta, 1), p("z^-2 + 1")),
        ("dumbbell".to_string(), fam(Family::Dumbbell, 1), p("z^-1 - 1 + z - z^2")),
        ("K4".to_string(), fam(Family::K4, 1), p("z^-1 - 1 + z + z^4")),
        ("P3-L".to_string(), fam(Family::PrismLadder, 3), p("z^-3 - z^2 + z^3 - z^4")),
        ("P3-C".to_string(), fam(Family::PrismCandle, 3), p("z^-2 - z^-1 + 1 + z^3")),
    ];
    let z = Poly::z();
    let zinv = Poly::monomial(1, -1);
    for m in 1..=6i32 {
        let theta = Poly::monomial(1, -1 - m) + Poly::monomial(1, 1 - m);
        cases.push((format!("theta_{m}"), fam(Family::Theta, m as usize), theta));
        let dumbbell = (zinv.clone() + z.clone()) * (Poly::one() - z.clone()).checked_pow(m as u32).unwrap();
        cases.push((format!("D_{m}"), fam(Family::Dumbbell, m as usize), dumbbell));
    }
    for m in 2..=6i32 {
        let expected = if m % 2 == 0 {
            Poly::monomial(1, -m) + Poly::monomial(1, m - 2) + Poly::monomial(1, m) + Poly::monomial(1, m + 2)
        } else {
            Poly::monomial(1, -m) - Poly::monomial(1, m - 1) + Poly::monomial(1, m) - Poly::monomial(1, m + 1)
        };
        cases.push((format!("P{m}-L"), fam(Family::PrismLadder, m as usize), expected));
    }
    cases
}

fn random_set() -> Vec<PlanarDiagram> {
    (0..100).map(|seed| random_diagram(seed, 6)).collect()
}

fn criterion_1() -> Outcome {
    let cases = polynomial_cases();
    for (name, d, expected) in &cases {
        let got = tfp(d);
        if got != *expected {
            return Err(format!("{name}: got {got}, expected {expected}"));
        }
    }
    Ok(format!("{} polynomials", cases.len()))
}

fn criterion_2() -> Outcome {
    let cases = [
        ("theta", fam(Family::Theta, 1), table(&[(0, -2), (0, 0)])),
        ("K4", fam(Family::K4, 1), table(&[(0, -1), (0, 1), (1, 0), (1, 2), (2, 2), (2, 4)])),
        (
            "P3-L",
            fam(Family::PrismLadder, 3),
            table(&[(0, -3), (0, -1), (1, -1), (1, 1), (2, 1), (2, 3), (3, 2), (3, 4)]),
        ),
        ("P3-C", fam(Family::PrismCandle, 3), table(&[(0, -2), (0, 0), (1, -1), (1, 1), (2, 1), (2, 3)])),
    ];
    for (name, d, expected) in &cases {
        let got = cohomology_of(d).map_err(|e| e.to_string())?;
        if got != *expected {
            return Err(format!("{name}: got {got:?}"));
        }
    }
    Ok("theta, K4, P3-L, P3-C".into())
}

fn criterion_3() -> Outcome {
    let mut diagrams: Vec<(String, PlanarDiagram)> =
        polynomial_cases().into_iter().map(|(name, d, _)| (name, d)).collect();
    diagrams.extend(random_set().into_iter().enumerate().map(|(i, d)| (format!("random #{i}"), d)));
    for (name, d) in &diagrams {
        if d.matching_edges().len() > 6 && name.starts_with("random") {
            return Err(format!("{name} has |M| > 6"));
        }
        if !d.validate().is_valid() {
            return Err(format!("{name} is not a valid diagram"));
        }
        let c = complex_of(d).map_err(|e| e.to_string())?;
        if !verify_d_squared(&c) {
            return Err(format!("{name}: d∘d ≠ 0"));
        }
    }
    Ok(format!("{} diagrams", diagrams.len()))
}

fn criterion_4() -> Outcome {
    let mut diagrams: Vec<(String, PlanarDiagram)> =
        polynomial_cases().into_iter().map(|(name, d, _)| (name, d)).collect();
    diagrams.extend(random_set().into_iter().enumerate().map(|(i, d)| (format!("random #{i}"), d)));
    for (name, d) in &diagrams {
        let chi = graded_euler(&complex_of(d).map_err(|e| e.to_string())?);
        let from_h = cohomology_of(d).map_err(|e| e.to_string())?.euler();
        let poly = tfp(d);
        if chi != poly || from_h != poly {
            return Err(format!("{name}: χ(C) = {chi}, χ(H) = {from_h}, polynomial {poly}"));
        }
    }
    Ok(format!("{} diagrams", diagrams.len()))
}

fn check_flip(name: &str, d: &PlanarDiagram, spec: &FlipSpec, want_chain_map: bool) -> Result<(), String> {
    let flipped = d.flip(spec).map_err(|e| format!("{name}: {e}"))?;
    let before = cohomology_of(d).map_err(|e| e.to_string())?;
    let after = cohomology_of(&flipped).map_err(|e| e.to_string())?;
    if before != after {
        return Err(format!("{name}: cohomology changed"));
    }
    if want_chain_map {
        let r = verify_flip_chain_map(d, spec).map_err(|e| format!("{name}: {e}"))?;
        if !r.holds() {
            return Err(format!("{name}: S fails {:?} / {:?}", r.non_commuting, r.singular));
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    // (a) mirror whole components
    let union = fam(Family::Theta, 1).disjoint_union(&fam(Family::K4, 1)).map_err(|e| e.to_string())?;
    let mut mirrors = vec![("theta ⊔ K4".to_string(), union)];
    for f in Family::ALL {
        let m = if matches!(f, Family::PrismLadder | Family::PrismCandle) { 3 } else { 2 };
        if let Ok(d) = generate_family(f, m) {
            mirrors.push((format!("{f} {m}"), d));
        }
    }
    for (name, d) in &mirrors {
        for comp in d.components() {
            check_flip(name, d, &FlipSpec::new(comp), false)?;
            count += 1;
        }
    }
    // (b) 1-flips across every bridge of D_m
    for m in 1..=4 {
        let d = fam(Family::Dumbbell, m);
        for k in 1..=m {
            let right: Vec<String> = (k..=m).flat_map(|i| [format!("x{i}"), format!("w{}", i + 1)]).collect();
            let names: Vec<&str> = right.iter().map(String::as_str).filter(|n| d.vertex_by_name(n).is_some()).collect();
            let spec = spec_of(&d, &names);
            if d.cut_edges(&spec.inside).len() != 1 {
                return Err(format!("D_{m}: flip beyond b{k} does not cross one bridge"));
            }
            check_flip(&format!("D_{m} at b{k}"), &d, &spec, false)?;
            count += 1;
        }
    }
    // (c) 2-flips with both cut edges outside M or both inside M
    let theta2 = fam(Family::Theta, 2);
    let theta3 = fam(Family::Theta, 3);
    let (glued, glued_spec) = glued_ladders();
    let two_flips = [
        ("theta_2, cut edges outside M", theta2.clone(), spec_of(&theta2, &["u1", "v1"])),
        ("theta_3, cut edges outside M", theta3.clone(), spec_of(&theta3, &["u1", "v1", "u2", "v2"])),
        ("theta_2 matched {s1,t1}", rematched(&theta2, &["s1", "t1"]), spec_of(&theta2, &["u1", "v1"])),
        ("theta_3 matched {s1,t1,r3}", rematched(&theta3, &["s1", "t1", "r3"]), spec_of(&theta3, &["u1", "v1"])),
        ("P3-L glued to P3-L", glued, glued_spec),
    ];
    for (name, d, spec) in &two_flips {
        if d.cut_edges(&spec.inside).len() != 2 {
            return Err(format!("{name}: not a 2-flip"));
        }
        check_flip(name, d, spec, true)?;
        count += 1;
    }
    let (glued, glued_spec) = glued_ladders();
    let exchanges = verify_flip_chain_map(&glued, &glued_spec).map_err(|e| e.to_string())?.exchange_states;
    if exchanges == 0 {
        return Err("glued ladders never exchange arcs between two circles".into());
    }
    Ok(format!("{count} flips, {} 2-flip chain maps", two_flips.len()))
}

fn criterion_6() -> Outcome {
    let mut pairs: Vec<(String, PlanarDiagram)> =
        polynomial_cases().into_iter().map(|(name, d, _)| (name, d)).collect();
    for m in [3, 4] {
        let d = fam(Family::PrismLadder, m);
        for pm in brute_perfect_matchings(&d) {
            pairs.push((format!("P{m} {pm:?}"), d.with_matching(&pm).map_err(|e| e.to_string())?));
        }
    }
    for (name, d) in &pairs {
        let value = at_one(&tfp(d)).map_err(|e| e.to_string())?;
        let count = brute_two_factors(d, &d.matching_edges());
        if value != count as i64 {
            return Err(format!("{name}: ⟨G:M⟩₂(1) = {value}, {count} 2-factors"));
        }
    }
    let stated = [
        (fam(Family::Theta, 4), 2),
        (fam(Family::PrismLadder, 3), 0),
        (fam(Family::PrismLadder, 4), 4),
        (fam(Family::Dumbbell, 3), 0),
    ];
    for (d, want) in &stated {
        if brute_two_factors(d, &d.matching_edges()) != *want {
            return Err(format!("2-factor count differs from {want}"));
        }
    }
    let tait = [
        ("theta", fam(Family::Theta, 1), 6),
        ("dumbbell", fam(Family::Dumbbell, 1), 0),
        ("K4", fam(Family::K4, 1), 6),
        ("P3", fam(Family::PrismLadder, 3), 6),
    ];
    for (name, d, want) in &tait {
        let t1 = at_one(&tait_polynomial::<i64>(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let colorings = brute_tait_colorings(d);
        if t1 != colorings as i64 || colorings != *want {
            return Err(format!("{name}: T(1) = {t1}, {colorings} colorings, expected {want}"));
        }
    }
    Ok(format!("{} (G, M) pairs, 4 Tait counts", pairs.len()))
}

fn criterion_7() -> Outcome {
    let tait = |d: &PlanarDiagram| tait_polynomial::<i64>(d).map_err(|e| e.to_string());
    let mut cases = vec![
        ("theta".to_string(), tait(&fam(Family::Theta, 1))?, p("3z^-2 + 3")),
        ("K4".to_string(), tait(&fam(Family::K4, 1))?, p("z^-1 - 1 + z + z^4").checked_scale(&3).unwrap()),
        (
            "P3".to_string(),
            tait(&fam(Family::PrismLadder, 3))?,
            p("z^-3 - z^2 + z^3 - z^4") + p("z^-2 - z^-1 + 1 + z^3").checked_scale(&3).unwrap(),
        ),
    ];
    for m in 1..=4u32 {
        let expected = (Poly::one() - Poly::z()).checked_pow(m).unwrap() * p("z^-1 + z");
        cases.push((format!("D_{m}"), tait(&fam(Family::Dumbbell, m as usize))?, expected));
    }
    for (name, got, expected) in &cases {
        if got != expected {
            return Err(format!("{name}: got {got}, expected {expected}"));
        }
    }
    Ok(format!("{} Tait polynomials", cases.len()))
}

fn criterion_8() -> Outcome {
    let mut lollipops = 0;
    for d in [fam(Family::Theta, 1), fam(Family::K4, 1)] {
        for e in (0..d.num_edges()).filter(|&e| !d.in_matching(e)) {
            if !verify_lollipop(&d, e).map_err(|e| e.to_string())? {
                return Err(format!("lollipop on {} fails", d.edge_name(e)));
            }
            lollipops += 1;
        }
    }
    let theta = fam(Family::Theta, 1);
    for (name, other) in [("theta ⊔ theta", theta.clone()), ("theta ⊔ K4", fam(Family::K4, 1))] {
        if !verify_disjoint_union(&theta, &other).map_err(|e| e.to_string())? {
            return Err(format!("{name}: Künneth identity fails"));
        }
    }
    for m in 1..=6usize {
        let got = cohomology_of(&fam(Family::Dumbbell, m)).map_err(|e| e.to_string())?;
        let expected = CohomologyTable::from_cells(
            (0..=m as i32).flat_map(|i| [((i, i - 1), binom(m, i as usize)), ((i, i + 1), binom(m, i as usize))]),
        );
        if got != expected {
            return Err(format!("D_{m}: {got:?}"));
        }
    }
    let mut diagrams: Vec<PlanarDiagram> = polynomial_cases().into_iter().map(|(_, d, _)| d).collect();
    diagrams.extend(random_set());
    let mut with_bridge = 0;
    for d in &diagrams {
        let dfs = d.bridges();
        if dfs != brute_bridges(d) {
            return Err(format!("DFS bridges {dfs:?} disagree with deletion test"));
        }
        if dfs.iter().any(|&e| !d.in_matching(e)) {
            return Err(format!("bridge outside the matching: {dfs:?}"));
        }
        for e in d.matching_edges() {
            if bridge_via_states(d, e).map_err(|e| e.to_string())? != dfs.contains(&e) {
                return Err(format!("state bridge test disagrees on {}", d.edge_name(e)));
            }
        }
        if !dfs.is_empty() {
            with_bridge += 1;
            let v = at_one(&tfp(d)).map_err(|e| e.to_string())?;
            if v != 0 {
                return Err(format!("bracket(1) = {v} with a bridge"));
            }
        }
    }
    Ok(format!("{lollipops} lollipops, 2 unions, D_1..D_6, {} diagrams ({with_bridge} with bridges)", diagrams.len()))
}

/// `S(ω)` from the four closed forms, with `x1`, `x2` the exchanged circles
/// and `inside` the circles `x3..x_d`.
fn s_closed_form(k: usize, inside: &[usize], omega: u64) -> Form {
    let floor = |a: usize| if omega >> a & 1 == 1 { Some(omega & !(1u64 << a)) } else { None };
    let (x1, x2) = (omega & 1 == 1, omega & 2 == 2);
    let mut out = Form::monomial(k, omega);
    let mut add_times = |gen: u64| {
        for &a in inside {
            if let Some(q) = floor(a) {
                if q & gen == 0 {
                    out.add_monomial(q | gen);
                }
            }
        }
    };
    match (x1, x2) {
        (true, true) => {}
        (true, false) => add_times(2),
        (false, true) => add_times(1),
        (false, false) => {
            add_times(1);
            add_times(2);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    for k in 0..=6usize {
        for m in 0..1u64 << k {
            let f = Form::monomial(k, m);
            if f.star().star() != f {
                return Err(format!("⋆⋆ ≠ id on k = {k}, monomial {m:b}"));
            }
        }
    }
    let mut cases = 0;
    for k in 2..=6usize {
        for d in 2..=k.min(4) {
            let inside: Vec<usize> = (2..d).collect();
            let ctx = FlipContext::Exchange { k, c1: 0, c2: 1, inside: inside.clone() };
            for omega in 0..1u64 << k {
                let got = s_map(&ctx, omega).map_err(|e| e.to_string())?;
                let want = s_closed_form(k, &inside, omega);
                if got != want {
                    return Err(format!("k = {k}, d = {d}, ω = {omega:b}: {got:?} vs {want:?}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("⋆⋆ = id for k ≤ 6, {cases} S cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact polynomial reproduction", criterion_1),
        ("exact cohomology reproduction", criterion_2),
        ("d∘d = 0 on families and 100 random diagrams", criterion_3),
        ("graded Euler characteristic equals the 2-factor polynomial", criterion_4),
        ("flip invariance and 2-flip chain maps", criterion_5),
        ("oracle equivalences", criterion_6),
        ("Tait polynomials", criterion_7),
        ("structural theorems", criterion_8),
        ("exterior algebra identities", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
