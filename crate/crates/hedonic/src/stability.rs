//! Stability notions driven by single-player moves and blocking coalitions.
//!
//! The deviation scan is deterministic: movers in ascending id order; for each
//! mover the existing blocks in the partition's canonical order (skipping the
//! mover's own block), then breaking away to a fresh singleton last. A mover
//! who is already alone never proposes breaking away. The first feasible
//! improving move wins.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::extensions::compare_members;
use crate::model::{Coalition, GameInstance, Partition, PlayerId};

/// Which approvals a move needs to count as a deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeviationKind {
    /// The mover alone decides (Nash).
    Ns,
    /// Members of the destination must not object (individual).
    Is,
    /// Destination and abandoned members must not object (contractual individual).
    Cis,
}

impl fmt::Display for DeviationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeviationKind::Ns => "NS",
            DeviationKind::Is => "IS",
            DeviationKind::Cis => "CIS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeviationTarget {
    /// Join this existing block (its pre-join members).
    Block(Coalition),
    /// Break away into a fresh singleton.
    Empty,
}

/// One feasible improving move found by [`find_deviation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Deviation {
    pub mover: PlayerId,
    pub target: DeviationTarget,
    pub kind: DeviationKind,
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            DeviationTarget::Block(b) => write!(f, "player {} -> {b}", self.mover),
            DeviationTarget::Empty => write!(f, "player {} -> empty", self.mover),
        }
    }
}

/// Default cap on `n` for the exponential core scans.
pub const DEFAULT_CORE_CAP: usize = 20;

/// True iff every player finds its own block acceptable.
pub fn is_ir(game: &GameInstance, part: &Partition) -> Result<bool> {
    part.check_game(game)?;
    for i in player_ids(game.n()) {
        let own = part.block_of(i);
        let alone = [i];
        if compare_members(game, i, own.members(), &alone) == Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First feasible improving move under the deterministic scan order, if any.
pub fn find_deviation(
    game: &GameInstance,
    part: &Partition,
    kind: DeviationKind,
) -> Result<Option<Deviation>> {
    part.check_game(game)?;
    for mover in player_ids(game.n()) {
        let own_pos = part.block_position(mover);
        let source = part.block_of(mover);
        for (bi, target) in part.blocks().iter().enumerate() {
            if bi == own_pos {
                continue;
            }
            let joined = target.with_member(mover);
            if compare_members(game, mover, joined.members(), source.members())
                != Ordering::Greater
            {
                continue;
            }
            if kind != DeviationKind::Ns
                && target.members().iter().any(|&j| {
                    compare_members(game, j, joined.members(), target.members())
                        == Ordering::Less
                })
            {
                continue;
            }
            if kind == DeviationKind::Cis && !source_approves(game, mover, source) {
                continue;
            }
            return Ok(Some(Deviation {
                mover,
                target: DeviationTarget::Block(target.clone()),
                kind,
            }));
        }
        if source.len() > 1 {
            let alone = [mover];
            if compare_members(game, mover, &alone, source.members()) == Ordering::Greater
                && (kind != DeviationKind::Cis || source_approves(game, mover, source))
            {
                return Ok(Some(Deviation {
                    mover,
                    target: DeviationTarget::Empty,
                    kind,
                }));
            }
        }
    }
    Ok(None)
}

/// Do the players the mover leaves behind at least weakly gain?
fn source_approves(game: &GameInstance, mover: PlayerId, source: &Coalition) -> bool {
    match source.without_member(mover) {
        None => true,
        Some(rest) => rest.members().iter().all(|&j| {
            compare_members(game, j, rest.members(), source.members()) != Ordering::Less
        }),
    }
}

pub fn is_stable(game: &GameInstance, part: &Partition, kind: DeviationKind) -> Result<bool> {
    Ok(find_deviation(game, part, kind)?.is_none())
}

/// Carries out a deviation, returning the successor partition.
pub fn apply_deviation(part: &Partition, dev: &Deviation) -> Result<Partition> {
    if dev.mover.get() as usize > part.n() {
        return Err(Error::invalid(format!(
            "mover {} is not covered by the partition",
            dev.mover
        )));
    }
    let own_pos = part.block_position(dev.mover);
    let mut blocks = Vec::with_capacity(part.blocks().len() + 1);
    let mut target_found = false;
    for (bi, block) in part.blocks().iter().enumerate() {
        if bi == own_pos {
            if let Some(rest) = block.without_member(dev.mover) {
                blocks.push(rest);
            }
            continue;
        }
        if let DeviationTarget::Block(t) = &dev.target {
            if block == t {
                blocks.push(block.with_member(dev.mover));
                target_found = true;
                continue;
            }
        }
        blocks.push(block.clone());
    }
    match &dev.target {
        DeviationTarget::Empty => blocks.push(Coalition::singleton(dev.mover)),
        DeviationTarget::Block(t) => {
            if !target_found {
                return Err(Error::invalid(format!(
                    "target block {t} is not part of the partition"
                )));
            }
        }
    }
    Partition::new(blocks)
}

/// First (weakly) blocking coalition in ascending-size, then lexicographic
/// order, or `None` if the partition is (strict) core stable.
pub fn find_blocking_coalition(
    game: &GameInstance,
    part: &Partition,
    strict: bool,
    cap: usize,
) -> Result<Option<Coalition>> {
    part.check_game(game)?;
    let n = game.n();
    if n > cap {
        return Err(Error::Capacity {
            what: "core subset enumeration",
            requested: n,
            cap,
        });
    }
    let mut members: Vec<PlayerId> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            members.clear();
            members.extend(idx.iter().map(|&x| PlayerId::new(x as u32 + 1)));
            if blocks_partition(game, part, &members, strict) {
                return Ok(Some(Coalition::new(members).expect("nonempty")));
            }
            // advance to the next k-combination of 0..n
            let mut i = k;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(None)
}

fn blocks_partition(
    game: &GameInstance,
    part: &Partition,
    members: &[PlayerId],
    strict: bool,
) -> bool {
    if strict {
        let mut some_gain = false;
        for &i in members {
            match compare_members(game, i, members, part.block_of(i).members()) {
                Ordering::Less => return false,
                Ordering::Greater => some_gain = true,
                Ordering::Equal => {}
            }
        }
        some_gain
    } else {
        members.iter().all(|&i| {
            compare_members(game, i, members, part.block_of(i).members()) == Ordering::Greater
        })
    }
}

pub fn is_core_stable(
    game: &GameInstance,
    part: &Partition,
    strict: bool,
    cap: usize,
) -> Result<bool> {
    Ok(find_blocking_coalition(game, part, strict, cap)?.is_none())
}

fn player_ids(n: usize) -> impl Iterator<Item = PlayerId> {
    (1..=n as u32).map(PlayerId::new)
}
