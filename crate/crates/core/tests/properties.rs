use std::collections::BTreeSet;

use proptest::prelude::*;

use pmcoh::homology::Form;
use pmcoh::verify::flip_candidates;
use pmcoh::{parse_diagram, random_diagram, to_graph_file, two_factor_polynomial, Poly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_diagrams_are_valid(seed in any::<u64>()) {
        let d = random_diagram(seed, 5);
        let report = d.validate();
        prop_assert!(report.is_valid());
        for c in &report.components {
            prop_assert_eq!(c.euler(), 2);
        }
        prop_assert!(d.bridges().iter().all(|&e| d.in_matching(e)));
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>()) {
        let d = random_diagram(seed, 5);
        let text = to_graph_file(&d);
        let back = parse_diagram(&text).unwrap();
        // Parsing renumbers edges by first appearance, so only the rotation
        // lines and the matching as a name set are compared with `d`.
        let lines = |t: &str| -> (Vec<String>, BTreeSet<String>) {
            let rotations = t.lines().filter(|l| l.starts_with("vertex")).map(String::from).collect();
            let matching = t.lines().find_map(|l| l.strip_prefix("matching:")).unwrap_or("");
            (rotations, matching.split_whitespace().map(String::from).collect())
        };
        prop_assert_eq!(lines(&to_graph_file(&back)), lines(&text));
        prop_assert_eq!(parse_diagram(&to_graph_file(&back)).unwrap(), back.clone());
        let p1: Poly = two_factor_polynomial(&d).unwrap();
        let p2: Poly = two_factor_polynomial(&back).unwrap();
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn flips_are_involutions(seed in any::<u64>()) {
        let d = random_diagram(seed, 4);
        for spec in flip_candidates(&d, 8) {
            let once = d.flip(&spec).unwrap();
            prop_assert_eq!(once.flip(&spec).unwrap(), d.clone());
            prop_assert!(once.validate().is_valid());
        }
    }

    #[test]
    fn star_is_an_involution(k in 0usize..=10, terms in proptest::collection::vec(any::<u64>(), 0..6)) {
        let mask = (1u64 << k) - 1;
        let f = Form::from_terms(k, terms.into_iter().map(|t| t & mask));
        prop_assert_eq!(f.star().star(), f);
    }
}
