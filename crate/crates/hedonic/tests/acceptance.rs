// Each test covers one numbered acceptance criterion and prints a single
// `criterion N: PASS` line with its timing when every assertion holds; a
// failed assertion fails the test, so the suite's pass/fail output is the
// criterion checklist.

mod common;

use std::time::Instant;

use hedonic::algorithms::{
    collapse_unacceptable, compute_cis_ir, compute_is_b, grand_coalition_if_ns,
    solve_ns_b_unique_favorite, NsAnswer,
};
use hedonic::dynamics::{run_dynamics, Terminal};
use hedonic::extensions::compare;
use hedonic::model::{Coalition, GameInstance, Partition, PlayerId, PrefProfile, Variant};
use hedonic::oracle::{
    bell_number, brute_force_sat, enumerate_partitions, find_stable, OracleOptions, SearchMode,
    StabilityConcept, DEFAULT_SAT_VAR_CAP,
};
use hedonic::reductions::{
    gen_extended_stalker, gen_stalker, is_witness_from_valuation, ns_witness_from_valuation,
    parse_dimacs, reduce_sat_is_bb, reduce_sat_is_w, reduce_sat_ns, valuation_from_is_partition,
    valuation_from_ns_partition,
};
use hedonic::stability::{is_core_stable, is_ir, is_stable, DeviationKind};

fn p(i: u32) -> PlayerId {
    PlayerId::new(i)
}

fn c(ids: &[u32]) -> Coalition {
    Coalition::new(ids.iter().copied().map(PlayerId::new).collect()).unwrap()
}

/// Player 1 ranks 2 over 3 over itself over 4; everyone else is fully
/// indifferent.
fn worked_example(variant: Variant) -> GameInstance {
    let everyone = vec![vec![p(1), p(2), p(3), p(4)]];
    let profile = PrefProfile::new(vec![
        vec![vec![p(2)], vec![p(3)], vec![p(1)], vec![p(4)]],
        everyone.clone(),
        everyone.clone(),
        everyone,
    ])
    .unwrap();
    GameInstance::new(profile, variant)
}

#[test]
fn criterion_01_induced_orders_match_the_worked_example() {
    let start = Instant::now();
    // most-preferred tie group first
    let orders: [(Variant, Vec<Vec<Coalition>>); 4] = [
        (
            Variant::B,
            vec![
                vec![c(&[1, 2])],
                vec![c(&[1, 2, 3]), c(&[1, 2, 4])],
                vec![c(&[1, 2, 3, 4])],
                vec![c(&[1, 3])],
                vec![c(&[1, 3, 4])],
                vec![c(&[1])],
                vec![c(&[1, 4])],
            ],
        ),
        (
            Variant::BB,
            vec![
                vec![c(&[1, 2]), c(&[1, 2, 3])],
                vec![c(&[1, 3])],
                vec![c(&[1])],
                vec![c(&[1, 4]), c(&[1, 2, 4]), c(&[1, 3, 4]), c(&[1, 2, 3, 4])],
            ],
        ),
        (
            Variant::W,
            vec![
                vec![c(&[1, 2])],
                vec![c(&[1, 2, 3]), c(&[1, 3])],
                vec![c(&[1])],
                vec![c(&[1, 4]), c(&[1, 2, 4]), c(&[1, 3, 4]), c(&[1, 2, 3, 4])],
            ],
        ),
        (
            Variant::WW,
            vec![
                vec![c(&[1, 2])],
                vec![c(&[1, 2, 3]), c(&[1, 3])],
                vec![c(&[1])],
                vec![c(&[1, 4]), c(&[1, 2, 4]), c(&[1, 3, 4]), c(&[1, 2, 3, 4])],
            ],
        ),
    ];
    let mut assertions = 0;
    for (variant, groups) in orders {
        let game = worked_example(variant);
        let ranked: Vec<(usize, &Coalition)> = groups
            .iter()
            .enumerate()
            .flat_map(|(g, members)| members.iter().map(move |s| (g, s)))
            .collect();
        assert_eq!(ranked.len(), 8, "{variant}");
        for a in 0..ranked.len() {
            for b in a + 1..ranked.len() {
                let (ga, s) = ranked[a];
                let (gb, t) = ranked[b];
                let expected = gb.cmp(&ga);
                assert_eq!(
                    compare(&game, p(1), s, t).unwrap(),
                    expected,
                    "{variant}: {s} vs {t}"
                );
                assertions += 1;
            }
        }
    }
    assert_eq!(assertions, 112);
    println!(
        "criterion 1: PASS - 112 pairwise comparisons reproduce the worked example ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_02_stalker_games_have_no_stable_partition() {
    let start = Instant::now();
    let opts = OracleOptions::default();
    assert_eq!(bell_number(2), 2);
    assert_eq!(bell_number(5), 52);
    for variant in Variant::ALL {
        let stalker = gen_stalker(variant);
        assert_eq!(enumerate_partitions(2, 14).unwrap().count(), 2);
        let ns = find_stable(&stalker, StabilityConcept::Ns, SearchMode::All, &opts).unwrap();
        assert!(ns.is_empty(), "{variant}: stalker NS list {ns:?}");
    }
    // under B a player with its favorite on board shrugs off the haters, so
    // the grand coalition would be stable; nonexistence needs the variants
    // that respect unacceptability
    for variant in [Variant::BB, Variant::W, Variant::WW] {
        let ext = gen_extended_stalker(variant);
        assert_eq!(enumerate_partitions(5, 14).unwrap().count(), 52);
        for concept in [
            StabilityConcept::Is,
            StabilityConcept::Ns,
            StabilityConcept::StrictCore,
        ] {
            let found = find_stable(&ext, concept, SearchMode::All, &opts).unwrap();
            assert!(found.is_empty(), "{variant}: extended stalker {concept} list {found:?}");
        }
    }
    println!(
        "criterion 2: PASS - stalker has 0 NS of 2 partitions; extended stalker has 0 IS, 0 NS, 0 strict-core of 52 ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_03_extended_stalker_cycle_is_reproduced_exactly() {
    let start = Instant::now();
    let expected = [
        "{1} {2 3} {4 5}",
        "{1 5} {2 3} {4}",
        "{1 5} {2} {3 4}",
        "{1 2} {3 4} {5}",
        "{1 2} {3} {4 5}",
        "{1} {2 3} {4 5}",
    ];
    for variant in [Variant::BB, Variant::W] {
        let game = gen_extended_stalker(variant);
        let from = Partition::from_text(expected[0]).unwrap();
        let trace = run_dynamics(&game, &from, DeviationKind::Is, 1000).unwrap();
        assert_eq!(trace.terminal, Terminal::CycleDetected { first_repeat: 0 }, "{variant}");
        assert_eq!(trace.steps.len(), 5, "{variant}");
        let visited: Vec<String> = trace.partitions().iter().map(|p| p.to_string()).collect();
        assert_eq!(visited, expected, "{variant}");
    }
    println!(
        "criterion 3: PASS - IS dynamics walk the 5-partition cycle and report the repeat at index 0 ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_04_is_b_construction_is_stable_and_oracle_confirmed() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let game = common::seeded_game(
            common::sized(seed, 1, 12),
            Variant::B,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
            seed,
        );
        let run = compute_is_b(&game).unwrap();
        assert!(
            is_stable(&game, &run.partition, DeviationKind::Is).unwrap(),
            "seed {seed}"
        );
    }
    let opts = OracleOptions::default();
    for seed in 0..200u64 {
        let game = common::seeded_game(
            common::sized(seed, 1, 8),
            Variant::B,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
            1000 + seed,
        );
        let run = compute_is_b(&game).unwrap();
        let all = find_stable(&game, StabilityConcept::Is, SearchMode::All, &opts).unwrap();
        assert!(all.contains(&run.partition), "seed {seed}");
    }
    println!(
        "criterion 4: PASS - 1000/1000 constructed B-partitions are IS; 200/200 appear in the oracle's IS list ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_05_unique_favorite_solver_agrees_with_the_oracle() {
    let start = Instant::now();
    let opts = OracleOptions::default();
    let mut exists = 0;
    for seed in 0..200u64 {
        let raw = common::seeded_game(
            common::sized(seed, 1, 8),
            Variant::B,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
            2000 + seed,
        );
        let game = common::make_unique_favorite(&raw);
        assert!(game.profile.unique_favorite());
        let oracle_has =
            !find_stable(&game, StabilityConcept::Ns, SearchMode::FirstWitness, &opts)
                .unwrap()
                .is_empty();
        match solve_ns_b_unique_favorite(&game).unwrap() {
            NsAnswer::Exists(part) => {
                exists += 1;
                assert!(oracle_has, "seed {seed}: solver found {part}, oracle found none");
                assert!(
                    is_stable(&game, &part, DeviationKind::Ns).unwrap(),
                    "seed {seed}"
                );
            }
            NsAnswer::NotExists => {
                assert!(!oracle_has, "seed {seed}: solver said none, oracle disagrees");
            }
        }
    }
    println!(
        "criterion 5: PASS - 200/200 unique-favorite verdicts match the oracle ({exists} with a partition) ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_06_collapsing_unacceptable_tails_preserves_ns_partitions() {
    let start = Instant::now();
    let opts = OracleOptions::default();
    for seed in 0..100u64 {
        let game = common::seeded_game(
            common::sized(seed, 1, 7),
            Variant::B,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.3, 0.6][seed as usize % 2],
            3000 + seed,
        );
        let collapsed = GameInstance::new(collapse_unacceptable(&game.profile), Variant::B);
        let before = find_stable(&game, StabilityConcept::Ns, SearchMode::All, &opts).unwrap();
        let after = find_stable(&collapsed, StabilityConcept::Ns, SearchMode::All, &opts).unwrap();
        assert_eq!(before, after, "seed {seed}");
    }
    println!(
        "criterion 6: PASS - 100/100 B-games keep their NS partition set under the collapse ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_07_cis_ir_construction_is_correct_and_bounded() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let variant = Variant::ALL[seed as usize % 4];
        let n = common::sized(seed, 1, 12);
        let game = common::seeded_game(
            n,
            variant,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
            4000 + seed,
        );
        let run = compute_cis_ir(&game);
        assert!(is_ir(&game, &run.partition).unwrap(), "seed {seed}");
        assert!(
            is_stable(&game, &run.partition, DeviationKind::Cis).unwrap(),
            "seed {seed}"
        );
        let bound = if variant == Variant::B {
            n * n * n.saturating_sub(1)
        } else {
            n * n.saturating_sub(1)
        };
        assert!(
            run.deviations <= bound,
            "seed {seed}: {} deviations exceed {bound}",
            run.deviations
        );
    }
    println!(
        "criterion 7: PASS - 1000/1000 runs yield IR+CIS within the per-variant deviation bounds ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_08_ns_gadget_existence_tracks_satisfiability() {
    let start = Instant::now();
    let corpus = [
        "p cnf 1 1\n1 0\n",
        "p cnf 1 1\n-1 0\n",
        "p cnf 1 2\n1 0\n-1 0\n",
        "p cnf 2 1\n1 2 0\n",
        "p cnf 2 2\n1 2 0\n-1 -2 0\n",
        "p cnf 2 2\n1 -2 0\n-1 2 0\n",
        "p cnf 2 2\n1 0\n-1 -2 0\n",
        "p cnf 2 2\n-1 0\n1 -2 0\n",
        "p cnf 1 2\n1 0\n1 0\n",
        "p cnf 2 2\n1 0\n-1 0\n",
    ];
    let opts = OracleOptions::default();
    let mut satisfiable = 0;
    for text in corpus {
        let f = parse_dimacs(text).unwrap();
        let solution = brute_force_sat(&f, DEFAULT_SAT_VAR_CAP).unwrap();
        satisfiable += usize::from(solution.is_some());
        for variant in [Variant::BB, Variant::W] {
            let (game, layout) = reduce_sat_ns(&f, variant).unwrap();
            assert!(game.n() <= 8);
            let ns = find_stable(&game, StabilityConcept::Ns, SearchMode::FirstWitness, &opts)
                .unwrap();
            assert_eq!(
                solution.is_some(),
                !ns.is_empty(),
                "{variant}: {}",
                text.escape_debug()
            );
            if let Some(v) = &solution {
                let witness = ns_witness_from_valuation(&f, &layout, v).unwrap();
                assert!(is_stable(&game, &witness, DeviationKind::Ns).unwrap());
                let back = valuation_from_ns_partition(&game, &f, &layout, &witness).unwrap();
                assert!(f.is_satisfied_by(&back));
            }
        }
    }
    assert_eq!(satisfiable, 8, "corpus should hold 8 satisfiable and 2 unsatisfiable formulas");
    println!(
        "criterion 8: PASS - oracle NS existence matches brute-force satisfiability on all 10 corpus formulas under BB and W ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_09_is_gadget_witnesses_are_stable_and_extract_back() {
    let start = Instant::now();
    for t in 0..50u64 {
        let (f, v) = common::random_satisfiable_cnf(5000 + t, 4, 20);
        assert!(f.num_clauses() <= 20);

        let (game, layout) = reduce_sat_is_bb(&f).unwrap();
        let witness = is_witness_from_valuation(&f, &layout, &v).unwrap();
        assert!(is_stable(&game, &witness, DeviationKind::Is).unwrap(), "formula {t}");
        assert!(is_stable(&game, &witness, DeviationKind::Ns).unwrap(), "formula {t}");
        let back = valuation_from_is_partition(&game, &f, &layout, &witness).unwrap();
        assert!(f.is_satisfied_by(&back), "formula {t}");

        let (game, layout) = reduce_sat_is_w(&f).unwrap();
        let witness = is_witness_from_valuation(&f, &layout, &v).unwrap();
        assert!(is_stable(&game, &witness, DeviationKind::Is).unwrap(), "formula {t}");
        let back = valuation_from_is_partition(&game, &f, &layout, &witness).unwrap();
        assert!(f.is_satisfied_by(&back), "formula {t}");
    }
    println!(
        "criterion 9: PASS - 50/50 satisfiable formulas give stable witnesses that extract back ({:.2?})",
        start.elapsed()
    );
}

#[cfg(feature = "slow-tests")]
#[test]
fn criterion_10_contradiction_gadget_has_no_stable_partition() {
    let start = Instant::now();
    assert_eq!(bell_number(13), 27_644_437);
    let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let (game, _) = reduce_sat_is_bb(&f).unwrap();
    assert_eq!(game.n(), 13);
    let opts = OracleOptions::default();
    for concept in [StabilityConcept::Is, StabilityConcept::Ns] {
        let found = find_stable(&game, concept, SearchMode::All, &opts).unwrap();
        assert!(found.is_empty(), "{concept} list {found:?}");
    }
    println!(
        "criterion 10: PASS - 13-player contradiction gadget has 0 IS and 0 NS partitions over 27644437 candidates ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_11_stability_inclusions_and_w_ww_equivalence() {
    let start = Instant::now();
    let opts = OracleOptions::default();
    for variant in Variant::ALL {
        for seed in 0..500u64 {
            let game = common::seeded_game(
                common::sized(seed, 1, 7),
                variant,
                [0.0, 0.25, 0.5][seed as usize % 3],
                [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
                6000 + seed,
            );
            for part in enumerate_partitions(game.n(), 14).unwrap() {
                let is_ = is_stable(&game, &part, DeviationKind::Is).unwrap();
                if is_stable(&game, &part, DeviationKind::Ns).unwrap() {
                    assert!(is_, "seed {seed} {part}");
                }
                if is_ {
                    assert!(
                        is_stable(&game, &part, DeviationKind::Cis).unwrap()
                            && is_ir(&game, &part).unwrap(),
                        "seed {seed} {part}"
                    );
                }
                if is_core_stable(&game, &part, true, 20).unwrap() {
                    assert!(is_core_stable(&game, &part, false, 20).unwrap(), "seed {seed} {part}");
                    assert!(is_, "seed {seed} {part}");
                }
            }
            if variant == Variant::W {
                let twin = game.with_variant(Variant::WW);
                for concept in [StabilityConcept::Ns, StabilityConcept::Is] {
                    assert_eq!(
                        find_stable(&game, concept, SearchMode::All, &opts).unwrap(),
                        find_stable(&twin, concept, SearchMode::All, &opts).unwrap(),
                        "seed {seed}"
                    );
                }
            }
        }
    }
    println!(
        "criterion 11: PASS - 2000 games: NS=>IS=>CIS+IR, strict-core=>core, strict-core=>IS on every partition; W and WW lists coincide ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_12_grand_coalition_is_nash_stable_in_the_friendly_cases() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let variant = if seed % 2 == 0 { Variant::W } else { Variant::BB };
        let game = common::seeded_game(
            common::sized(seed, 1, 12),
            variant,
            [0.0, 0.25, 0.5][seed as usize % 3],
            0.0,
            7000 + seed,
        );
        assert!(!game.profile.has_unacceptability());
        let grand = Partition::grand(game.n());
        assert!(is_stable(&game, &grand, DeviationKind::Ns).unwrap(), "seed {seed}");
        assert_eq!(grand_coalition_if_ns(&game), Some(grand), "seed {seed}");
    }
    for seed in 0..200u64 {
        let raw = common::seeded_game(
            common::sized(seed, 2, 12),
            Variant::B,
            [0.0, 0.25, 0.5][seed as usize % 3],
            [0.0, 0.3, 0.6][(seed as usize / 3) % 3],
            8000 + seed,
        );
        let game = common::make_everyone_likes(&raw);
        for i in (1..=game.n() as u32).map(PlayerId::new) {
            assert!(!game.profile.likes(i).unwrap().is_empty());
        }
        let grand = Partition::grand(game.n());
        assert!(is_stable(&game, &grand, DeviationKind::Ns).unwrap(), "seed {seed}");
        assert_eq!(grand_coalition_if_ns(&game), Some(grand), "seed {seed}");
    }
    println!(
        "criterion 12: PASS - the grand coalition is NS in 200/200 no-unacceptability W/BB games and 200/200 everyone-likes-someone B-games ({:.2?})",
        start.elapsed()
    );
}
