mod common;

use common::{atom_list, fixture_posets, random_model, weak_pm_relation};
use polymin::bisim::{weak_pm_partition_kripke, Partition};
use polymin::minimize::distinguishing_formula_kripke;
use polymin::random::random_simplicial_model;
use polymin::{
    branching_partition, cell_poset, components_same_valuation, encode_abstract, encode_concrete,
    encode_eta_to_gamma, load_simplicial_model, map_back, minimal_model, parse_formula,
    random_formula, rmin_via_quotient_d, sat, sat_eta_path_oracle, strong_partition,
    weak_pm_partition, Formula, Lts,
};
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(500))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), depth in 0usize..5) {
        let atoms = vec!["red".to_string(), "has space".to_string(), "eta".to_string()];
        let f = random_formula(seed, depth, &atoms).unwrap();
        let f = if seed % 3 == 0 { Formula::gamma(f.clone(), Formula::diamond(f)) } else { f };
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn encoding_is_size_bounded(seed in any::<u64>(), depth in 0usize..6) {
        let f = random_formula(seed, depth, &["p".to_string(), "q".to_string()]).unwrap();
        let e = encode_eta_to_gamma(&f).unwrap();
        prop_assert!(!e.to_string().contains("eta("));
        prop_assert!(e.size() <= 3 * f.size() * f.size());
    }

    #[test]
    fn encoding_preserves_truth(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let f = random_formula(seed ^ 0x5eed, 3, &atom_list(&p)).unwrap();
        let e = encode_eta_to_gamma(&f).unwrap();
        prop_assert_eq!(sat(p.kripke(), &f).as_bools().to_vec(), sat(p.kripke(), &e).as_bools().to_vec());
    }
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn reachability_matches_path_search(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let f = random_formula(seed.wrapping_mul(31), 3, &atom_list(&p)).unwrap();
        let bound = (2 * p.len()).max(2);
        let oracle = sat_eta_path_oracle(p.kripke(), &f, bound).unwrap();
        prop_assert_eq!(oracle.as_bools(), sat(p.kripke(), &f).as_bools().to_vec());
    }

    #[test]
    fn eta_implies_first_argument(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let atoms = atom_list(&p);
        let a = random_formula(seed, 2, &atoms).unwrap();
        let b = random_formula(seed + 1, 2, &atoms).unwrap();
        let eta = sat(p.kripke(), &Formula::eta(a.clone(), b.clone()));
        let first = sat(p.kripke(), &a);
        prop_assert!(eta.indices().iter().all(|&i| first.contains(i)));
        // Weakening the first argument never shrinks the answer.
        let psi = random_formula(seed + 2, 2, &atoms).unwrap();
        let weaker = sat(p.kripke(), &Formula::eta(Formula::or(a, psi), b));
        prop_assert!(eta.indices().iter().all(|&i| weaker.contains(i)));
    }

    #[test]
    fn diamond_is_gamma_to_true(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let f = random_formula(seed, 3, &atom_list(&p)).unwrap();
        prop_assert_eq!(
            sat(p.kripke(), &Formula::diamond(f.clone())).as_bools().to_vec(),
            sat(p.kripke(), &Formula::gamma(f, Formula::Top)).as_bools().to_vec()
        );
    }

    #[test]
    fn eta_answers_are_unions_of_classes(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let part = weak_pm_partition(&p);
        let f = random_formula(seed.rotate_left(7), 3, &atom_list(&p)).unwrap();
        prop_assert!(part.is_union_of_classes(sat(p.kripke(), &f).as_bools()));
    }

    #[test]
    fn minimal_model_transfers_answers(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let mm = minimal_model(&p);
        let f = random_formula(seed ^ 0xabcdef, 3, &atom_list(&p)).unwrap();
        let back = map_back(&mm, &sat(mm.kripke(), &f)).unwrap();
        prop_assert_eq!(back.as_slice(), sat(p.kripke(), &f).as_bools().to_vec());
    }
}

proptest! {
    #![proptest_config(cfg(150))]

    #[test]
    fn three_minimisation_routes_agree(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let direct = weak_pm_partition(&p);
        prop_assert_eq!(&branching_partition(&encode_concrete(&p)), &direct);
        let (abs, comps) = encode_abstract(&p);
        prop_assert_eq!(&comps.pull_back(&strong_partition(&abs)).unwrap(), &direct);
        prop_assert_eq!(&weak_pm_relation(&p), &direct);
    }

    #[test]
    fn same_valuation_components_refine_classes(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        prop_assert!(components_same_valuation(&p).refines(&weak_pm_partition(&p)));
    }

    #[test]
    fn branching_is_coarser_than_strong(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let l = encode_concrete(&p);
        prop_assert!(strong_partition(&l).refines(&branching_partition(&l)));
    }

    #[test]
    fn quotient_d_transitions_give_rmin(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        prop_assert_eq!(rmin_via_quotient_d(&p), minimal_model(&p).relation());
    }

    #[test]
    fn results_are_deterministic(seed in 0u64..1_000_000) {
        let (a, b) = (random_model(seed), random_model(seed));
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(weak_pm_partition(&a), weak_pm_partition(&b));
        prop_assert_eq!(encode_concrete(&a).to_aut(), encode_concrete(&b).to_aut());
        prop_assert_eq!(minimal_model(&a).to_json(), minimal_model(&b).to_json());
    }

    #[test]
    fn aut_round_trip(seed in 0u64..1_000_000) {
        let l = encode_concrete(&random_model(seed));
        let text = l.to_aut();
        let back = Lts::from_aut(&text).unwrap();
        prop_assert_eq!(back.num_states(), l.num_states());
        prop_assert_eq!(back.to_aut(), text);
    }
}

proptest! {
    #![proptest_config(cfg(60))]

    #[test]
    fn distinguishing_formulas_are_sound(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let part = weak_pm_partition(&p);
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                match distinguishing_formula_kripke(p.kripke(), a, b) {
                    None => prop_assert!(part.same_class(a, b)),
                    Some(f) => {
                        prop_assert!(f.is_eta_pure());
                        let s = sat(p.kripke(), &f);
                        prop_assert_ne!(s.contains(a), s.contains(b));
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_models_are_already_minimal(seed in 0u64..1_000_000) {
        let p = random_model(seed);
        let mm = minimal_model(&p);
        let k = mm.kripke();
        prop_assert_eq!(
            weak_pm_partition_kripke(k),
            Partition::discrete(k.elements().to_vec())
        );
        for a in 0..k.len() {
            for b in a + 1..k.len() {
                let f = distinguishing_formula_kripke(k, a, b);
                prop_assert!(f.is_some());
                let s = sat(k, &f.unwrap());
                prop_assert_ne!(s.contains(a), s.contains(b));
            }
        }
    }

    #[test]
    fn face_order_is_a_partial_order(seed in any::<u64>()) {
        let m = random_simplicial_model(seed, 4, 2, 2).unwrap();
        let p = cell_poset(&m);
        let n = p.len();
        for a in 0..n {
            prop_assert!(p.leq_index(a, a));
            for b in 0..n {
                if a != b && p.leq_index(a, b) {
                    prop_assert!(!p.leq_index(b, a));
                }
                for c in 0..n {
                    if p.leq_index(a, b) && p.leq_index(b, c) {
                        prop_assert!(p.leq_index(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn cell_names_recover_the_complex(seed in any::<u64>()) {
        let m = random_simplicial_model(seed, 5, 3, 3).unwrap();
        let p = cell_poset(&m);
        let doc = m.to_json();
        prop_assert_eq!(&load_simplicial_model(doc.as_bytes()).unwrap(), &m);
        for (i, name) in p.elements().iter().enumerate() {
            let verts: Vec<&str> = name.split('-').collect();
            let cell: Vec<&str> = m.cells()[i].iter().map(String::as_str).collect();
            prop_assert_eq!(verts, cell);
            prop_assert_eq!(p.valuation(i), m.valuation(i));
        }
    }
}

#[test]
fn fixtures_agree_with_the_relation_oracle() {
    for (name, p) in fixture_posets() {
        assert_eq!(weak_pm_relation(&p), weak_pm_partition(&p), "{name}");
        assert_eq!(
            branching_partition(&encode_concrete(&p)),
            weak_pm_partition(&p),
            "{name}"
        );
    }
}
