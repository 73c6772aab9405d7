//! Lifting rankings over individuals to preferences over coalitions.
//!
//! All four rules compare two coalitions containing player `i` by looking at
//! the best (B, BB) or worst (W, WW) players in them from `i`'s point of view.
//! The convention for the coalition `{i}` alone is that both its best and
//! worst member is `i` itself.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Coalition, GameInstance, PlayerId, PrefProfile, Variant};

/// Rank of the best member of `members \ {i}`, or `i`'s own rank if alone.
pub(crate) fn best_rank(prof: &PrefProfile, i: PlayerId, members: &[PlayerId]) -> u32 {
    members
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| prof.rank_raw(i, j))
        .min()
        .unwrap_or_else(|| prof.self_rank_raw(i))
}

/// Rank of the worst member of `members \ {i}`, or `i`'s own rank if alone.
pub(crate) fn worst_rank(prof: &PrefProfile, i: PlayerId, members: &[PlayerId]) -> u32 {
    members
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| prof.rank_raw(i, j))
        .max()
        .unwrap_or_else(|| prof.self_rank_raw(i))
}

pub(crate) fn any_unacceptable(prof: &PrefProfile, i: PlayerId, members: &[PlayerId]) -> bool {
    let own = prof.self_rank_raw(i);
    members.iter().any(|&j| prof.rank_raw(i, j) > own)
}

/// Core comparison on raw member slices; callers guarantee `i` is in both.
pub(crate) fn compare_members(
    game: &GameInstance,
    i: PlayerId,
    s: &[PlayerId],
    t: &[PlayerId],
) -> Ordering {
    let prof = &game.profile;
    match game.variant {
        Variant::B => {
            let bs = best_rank(prof, i, s);
            let bt = best_rank(prof, i, t);
            match bs.cmp(&bt) {
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                // equally good best players: the smaller coalition wins
                Ordering::Equal => t.len().cmp(&s.len()),
            }
        }
        Variant::BB => {
            let us = any_unacceptable(prof, i, s);
            let ut = any_unacceptable(prof, i, t);
            let bs = best_rank(prof, i, s);
            let bt = best_rank(prof, i, t);
            let ge_st = ut || (!us && bs <= bt);
            let ge_ts = us || (!ut && bt <= bs);
            order_from_geq(ge_st, ge_ts)
        }
        Variant::W => {
            let ws = worst_rank(prof, i, s);
            let wt = worst_rank(prof, i, t);
            wt.cmp(&ws)
        }
        Variant::WW => {
            let us = any_unacceptable(prof, i, s);
            let ut = any_unacceptable(prof, i, t);
            let ws = worst_rank(prof, i, s);
            let wt = worst_rank(prof, i, t);
            let ge_st = ut || ws <= wt;
            let ge_ts = us || wt <= ws;
            order_from_geq(ge_st, ge_ts)
        }
    }
}

fn order_from_geq(ge_st: bool, ge_ts: bool) -> Ordering {
    match (ge_st, ge_ts) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        // both rules are total preorders, so at least one direction holds
        (false, false) => unreachable!("coalition comparison lost totality"),
    }
}

fn check_membership(prof: &PrefProfile, i: PlayerId, s: &Coalition, role: &str) -> Result<()> {
    if s.members().last().unwrap().get() as usize > prof.n() {
        return Err(Error::invalid(format!(
            "{role} contains players outside 1..={}",
            prof.n()
        )));
    }
    if !s.contains(i) {
        return Err(Error::invalid(format!(
            "player {i} is not a member of {role} {s}"
        )));
    }
    Ok(())
}

/// Most-preferred members of `s` from `i`'s point of view: the intersection
/// of `s \ {i}` with the best class reaching it, or `{i}` when `s = {i}`.
pub fn best_set(prof: &PrefProfile, i: PlayerId, s: &Coalition) -> Result<Vec<PlayerId>> {
    check_membership(prof, i, s, "coalition")?;
    if s.len() == 1 {
        return Ok(vec![i]);
    }
    let best = best_rank(prof, i, s.members());
    Ok(s.members()
        .iter()
        .copied()
        .filter(|&j| j != i && prof.rank_raw(i, j) == best)
        .collect())
}

/// Least-preferred members of `s` from `i`'s point of view; `{i}` when alone.
pub fn worst_set(prof: &PrefProfile, i: PlayerId, s: &Coalition) -> Result<Vec<PlayerId>> {
    check_membership(prof, i, s, "coalition")?;
    if s.len() == 1 {
        return Ok(vec![i]);
    }
    let worst = worst_rank(prof, i, s.members());
    Ok(s.members()
        .iter()
        .copied()
        .filter(|&j| j != i && prof.rank_raw(i, j) == worst)
        .collect())
}

/// True iff `s` contains someone `i` ranks strictly below itself.
pub fn coalition_has_unacceptable(prof: &PrefProfile, i: PlayerId, s: &Coalition) -> Result<bool> {
    check_membership(prof, i, s, "coalition")?;
    Ok(any_unacceptable(prof, i, s.members()))
}

/// Compares two coalitions containing `i` under the game's variant.
/// `Greater` means `i` strictly prefers `s` to `t`.
pub fn compare(
    game: &GameInstance,
    i: PlayerId,
    s: &Coalition,
    t: &Coalition,
) -> Result<Ordering> {
    check_membership(&game.profile, i, s, "left coalition")?;
    check_membership(&game.profile, i, t, "right coalition")?;
    Ok(compare_members(game, i, s.members(), t.members()))
}

/// True iff `i` finds `s` at least as good as staying alone.
pub fn is_acceptable_coalition(game: &GameInstance, i: PlayerId, s: &Coalition) -> Result<bool> {
    check_membership(&game.profile, i, s, "coalition")?;
    let alone = [i];
    Ok(compare_members(game, i, s.members(), &alone) != Ordering::Less)
}
