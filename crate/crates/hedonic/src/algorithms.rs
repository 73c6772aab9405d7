//! Polynomial-time constructions of stable partitions, in contrast to the
//! exhaustive searches in [`crate::oracle`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::{Coalition, GameInstance, Partition, PlayerId, PrefProfile, Variant};
use crate::stability::{apply_deviation, find_deviation, is_stable, DeviationKind};

/// Result of running the contractual deviation dynamics from singletons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CisIrRun {
    pub partition: Partition,
    /// Number of deviations applied before stabilizing.
    pub deviations: usize,
}

/// Starts from everyone alone and applies contractual individual deviations
/// until none remain. The result is individually rational and CIS stable
/// under every variant.
pub fn compute_cis_ir(game: &GameInstance) -> CisIrRun {
    let mut current = Partition::singletons(game.n());
    let mut deviations = 0;
    loop {
        match find_deviation(game, &current, DeviationKind::Cis)
            .expect("singleton-rooted dynamics stay valid")
        {
            Some(dev) => {
                current = apply_deviation(&current, &dev).expect("found deviations apply");
                deviations += 1;
            }
            None => {
                return CisIrRun {
                    partition: current,
                    deviations,
                };
            }
        }
    }
}

/// Returns the grand coalition when it is Nash stable, shortcutting the two
/// profile shapes that guarantee it: no unacceptability for W/BB/WW, and
/// everyone liking someone for B.
pub fn grand_coalition_if_ns(game: &GameInstance) -> Option<Partition> {
    let grand = Partition::grand(game.n());
    let guaranteed = match game.variant {
        Variant::W | Variant::BB | Variant::WW => !game.profile.has_unacceptability(),
        Variant::B => everyone_likes_someone(&game.profile),
    };
    if guaranteed {
        return Some(grand);
    }
    is_stable(game, &grand, DeviationKind::Ns)
        .expect("the grand coalition is always a valid partition")
        .then_some(grand)
}

fn everyone_likes_someone(profile: &PrefProfile) -> bool {
    (1..=profile.n() as u32)
        .map(PlayerId::new)
        .all(|i| profile.self_rank_raw(i) > 0)
}

/// Verdict of the Nash-stability decision procedure for B-games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NsAnswer {
    Exists(Partition),
    NotExists,
}

/// Decides Nash stability for B-games whose players have unique favorites.
///
/// Let `A` be the players that like nobody. A stable partition exists unless
/// someone outside `A` has their favorite inside `A`; when it exists it is
/// either the grand coalition, all singletons, or the non-`A` players
/// together with `A` split into singletons.
pub fn solve_ns_b_unique_favorite(game: &GameInstance) -> Result<NsAnswer> {
    if game.variant != Variant::B {
        return Err(Error::invalid(format!(
            "this procedure decides B-games, got variant {}",
            game.variant
        )));
    }
    if !game.profile.unique_favorite() {
        return Err(Error::invalid(
            "this procedure requires every player's most-preferred class to be a singleton",
        ));
    }
    let n = game.n();
    let profile = &game.profile;
    if everyone_likes_someone(profile) {
        return Ok(NsAnswer::Exists(Partition::grand(n)));
    }
    let in_a: Vec<bool> = (1..=n as u32)
        .map(|i| profile.self_rank_raw(PlayerId::new(i)) == 0)
        .collect();
    for j in (1..=n as u32).map(PlayerId::new) {
        if in_a[j.idx()] {
            continue;
        }
        let favorite = profile.classes_of(j)[0][0];
        if in_a[favorite.idx()] {
            // j keeps chasing a player that must end up alone
            return Ok(NsAnswer::NotExists);
        }
    }
    let core: Vec<PlayerId> = (1..=n as u32)
        .map(PlayerId::new)
        .filter(|i| !in_a[i.idx()])
        .collect();
    let mut blocks: Vec<Coalition> = Vec::new();
    if !core.is_empty() {
        blocks.push(Coalition::new(core).expect("nonempty"));
    }
    blocks.extend(
        (1..=n as u32)
            .map(PlayerId::new)
            .filter(|i| in_a[i.idx()])
            .map(Coalition::singleton),
    );
    Ok(NsAnswer::Exists(
        Partition::new(blocks).expect("blocks cover all players"),
    ))
}

/// Merges every class a player ranks below itself into the player's own
/// class, erasing unacceptability while keeping the acceptable prefix intact.
pub fn collapse_unacceptable(profile: &PrefProfile) -> PrefProfile {
    let mut collapsed = Vec::with_capacity(profile.n());
    for i in (1..=profile.n() as u32).map(PlayerId::new) {
        let own = profile.self_rank_raw(i) as usize;
        let classes = profile.classes_of(i);
        let mut list: Vec<Vec<PlayerId>> = classes[..=own].to_vec();
        for tail in &classes[own + 1..] {
            list[own].extend(tail.iter().copied());
        }
        collapsed.push(list);
    }
    PrefProfile::new(collapsed).expect("collapsing preserves coverage")
}

/// Result of the peeling construction for individually stable B-partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsBRun {
    pub partition: Partition,
    /// Players peeled off into singletons, in removal order.
    pub removal_order: Vec<PlayerId>,
}

/// Builds an individually stable partition of a B-game in near-linear time.
///
/// Iteratively removes players whose liked players have all been removed
/// (smallest id first); the survivors form one block, everyone removed stays
/// alone. No removed player likes any player removed after it, which is what
/// makes the singletons unapproachable.
pub fn compute_is_b(game: &GameInstance) -> Result<IsBRun> {
    if game.variant != Variant::B {
        return Err(Error::invalid(format!(
            "this construction targets B-games, got variant {}",
            game.variant
        )));
    }
    let n = game.n();
    let profile = &game.profile;
    let mut liked_by: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut pending: Vec<usize> = vec![0; n];
    for j in (1..=n as u32).map(PlayerId::new) {
        let liked = profile.likes(j)?;
        pending[j.idx()] = liked.len();
        for k in liked {
            liked_by[k.idx()].push(j.get());
        }
    }
    let mut heap: BinaryHeap<Reverse<u32>> = (1..=n as u32)
        .filter(|&j| pending[j as usize - 1] == 0)
        .map(Reverse)
        .collect();
    let mut removed = vec![false; n];
    let mut removal_order = Vec::new();
    while let Some(Reverse(j)) = heap.pop() {
        removed[j as usize - 1] = true;
        removal_order.push(PlayerId::new(j));
        for &x in &liked_by[j as usize - 1] {
            let xi = x as usize - 1;
            if !removed[xi] {
                pending[xi] -= 1;
                if pending[xi] == 0 {
                    heap.push(Reverse(x));
                }
            }
        }
    }
    let survivors: Vec<PlayerId> = (1..=n as u32)
        .map(PlayerId::new)
        .filter(|i| !removed[i.idx()])
        .collect();
    let mut blocks: Vec<Coalition> = Vec::new();
    if !survivors.is_empty() {
        blocks.push(Coalition::new(survivors).expect("nonempty"));
    }
    blocks.extend(removal_order.iter().copied().map(Coalition::singleton));
    Ok(IsBRun {
        partition: Partition::new(blocks).expect("blocks cover all players"),
        removal_order,
    })
}
