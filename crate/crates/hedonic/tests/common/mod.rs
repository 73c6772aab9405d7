#![allow(dead_code)]

use std::collections::BTreeSet;

use hedonic::model::{Coalition, GameInstance, Partition, PlayerId, PrefProfile, Variant};
use hedonic::oracle::{brute_force_sat, Valuation, DEFAULT_SAT_VAR_CAP};
use hedonic::reductions::{random_game, CnfFormula, RandomGameParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_game(n: usize, variant: Variant, tie: f64, unacc: f64, seed: u64) -> GameInstance {
    random_game(
        &RandomGameParams {
            n,
            variant,
            tie_prob: tie,
            unacc_prob: unacc,
        },
        seed,
    )
    .expect("generator parameters are valid")
}

/// Deterministic size in `min_n..=max_n` derived from the seed.
pub fn sized(seed: u64, min_n: usize, max_n: usize) -> usize {
    min_n + (seed as usize) % (max_n - min_n + 1)
}

fn rebuild(game: &GameInstance, classes: Vec<Vec<Vec<PlayerId>>>) -> GameInstance {
    GameInstance::new(
        PrefProfile::new(classes).expect("edited ranking still covers everyone"),
        game.variant,
    )
}

/// Draws a partition of `1..=n` by dropping each player into an existing or
/// fresh block uniformly. Deterministic in the seed.
pub fn random_partition(n: usize, seed: u64) -> Partition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<Vec<PlayerId>> = Vec::new();
    for i in (1..=n as u32).map(PlayerId::new) {
        let slot = rng.random_range(0..=blocks.len());
        if slot == blocks.len() {
            blocks.push(vec![i]);
        } else {
            blocks[slot].push(i);
        }
    }
    Partition::new(
        blocks
            .into_iter()
            .map(|b| Coalition::new(b).expect("nonempty block"))
            .collect(),
    )
    .expect("blocks cover 1..=n")
}

/// Splits any tied top class so that every player who likes someone has a
/// single most-preferred player.
pub fn make_unique_favorite(game: &GameInstance) -> GameInstance {
    let n = game.n();
    let mut classes = Vec::with_capacity(n);
    for i in (1..=n as u32).map(PlayerId::new) {
        let mut cls: Vec<Vec<PlayerId>> = game.profile.classes_of(i).to_vec();
        let self_pos = cls.iter().position(|c| c.contains(&i)).expect("self listed");
        if self_pos > 0 && cls[0].len() > 1 {
            let head = cls[0].remove(0);
            cls.insert(0, vec![head]);
        }
        classes.push(cls);
    }
    rebuild(game, classes)
}

/// Pushes every player's own rank below some other player, so everyone
/// strictly likes at least one other player. Needs n >= 2.
pub fn make_everyone_likes(game: &GameInstance) -> GameInstance {
    let n = game.n();
    assert!(n >= 2, "need a second player to like");
    let mut classes = Vec::with_capacity(n);
    for i in (1..=n as u32).map(PlayerId::new) {
        let mut cls: Vec<Vec<PlayerId>> = game.profile.classes_of(i).to_vec();
        let self_pos = cls.iter().position(|c| c.contains(&i)).expect("self listed");
        if self_pos == 0 {
            if cls[0].len() > 1 {
                cls[0].retain(|&x| x != i);
                cls.insert(1, vec![i]);
            } else {
                cls.swap(0, 1);
            }
        }
        classes.push(cls);
    }
    rebuild(game, classes)
}

/// Draws a satisfiable CNF where every variable occurs in both polarities
/// and no clause repeats or negates its own literals, along with one
/// satisfying valuation. Deterministic in the seed.
pub fn random_satisfiable_cnf(
    seed: u64,
    max_vars: usize,
    max_clauses: usize,
) -> (CnfFormula, Valuation) {
    assert!(max_clauses >= 2, "both polarities need two clauses");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = rng.random_range(1..=max_vars);
        let k = rng.random_range(2..=max_clauses);
        let mut clauses: Vec<BTreeSet<i32>> = vec![BTreeSet::new(); k];
        for v in 1..=m as i32 {
            loop {
                let a = rng.random_range(0..k);
                let b = rng.random_range(0..k);
                if a != b
                    && !clauses[a].contains(&v)
                    && !clauses[a].contains(&-v)
                    && !clauses[b].contains(&v)
                    && !clauses[b].contains(&-v)
                {
                    clauses[a].insert(v);
                    clauses[b].insert(-v);
                    break;
                }
            }
        }
        for clause in &mut clauses {
            for _ in 0..rng.random_range(1..=3) {
                let v = rng.random_range(1..=m) as i32;
                let lit = if rng.random_bool(0.5) { v } else { -v };
                if !clause.contains(&-lit) {
                    clause.insert(lit);
                }
            }
        }
        if clauses.iter().any(|c| c.is_empty()) {
            continue;
        }
        let f = CnfFormula::new(m, clauses.into_iter().map(|c| c.into_iter().collect()).collect())
            .expect("constructed literals are in range");
        if let Some(v) = brute_force_sat(&f, DEFAULT_SAT_VAR_CAP).expect("few variables") {
            return (f, v);
        }
    }
}
