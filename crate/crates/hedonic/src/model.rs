//! Core data model: players, ranked preference profiles, coalitions,
//! partitions, and the plain-text formats for games and partitions.
//!
//! A game ranks *individual players*, not coalitions. Each player `i` carries
//! a total preorder over all players (including `i` itself) given as a list of
//! indifference classes, most preferred first. Everything ranked strictly
//! below `i`'s own class is unacceptable to `i`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 1-based player identifier, valid within a game of `n` players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(u32);

impl PlayerId {
    pub fn new(id: u32) -> PlayerId {
        debug_assert!(id >= 1, "player ids are 1-based");
        PlayerId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// 0-based index for table lookups.
    pub fn idx(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How a player's ranking over individuals is lifted to coalitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Best player decides; ties broken by preferring smaller coalitions.
    B,
    /// Best player decides; any unacceptable member ruins a coalition.
    BB,
    /// Worst player decides.
    W,
    /// Worst player decides; any unacceptable member ruins a coalition.
    WW,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::B, Variant::BB, Variant::W, Variant::WW];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::B => "B",
            Variant::BB => "BB",
            Variant::W => "W",
            Variant::WW => "WW",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "B" => Ok(Variant::B),
            "BB" => Ok(Variant::BB),
            "W" => Ok(Variant::W),
            "WW" => Ok(Variant::WW),
            other => Err(Error::invalid(format!(
                "unknown variant {other:?}, expected one of B, BB, W, WW"
            ))),
        }
    }
}

/// Per-player rankings for an `n`-player game.
///
/// `classes[i]` lists player `i+1`'s indifference classes, most preferred
/// first; together they cover every player exactly once. Class members are
/// kept sorted, so two profiles are equal iff they rank identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefProfile {
    n: usize,
    classes: Vec<Vec<Vec<PlayerId>>>,
    // rank[i][j.idx()] = index of the class of j in i's list
    rank: Vec<Vec<u32>>,
    self_rank: Vec<u32>,
}

impl PrefProfile {
    pub fn new(mut classes: Vec<Vec<Vec<PlayerId>>>) -> Result<PrefProfile> {
        let n = classes.len();
        if n == 0 {
            return Err(Error::invalid("a game needs at least one player"));
        }
        let mut rank = Vec::with_capacity(n);
        let mut self_rank = Vec::with_capacity(n);
        for (i, list) in classes.iter_mut().enumerate() {
            let me = PlayerId::new(i as u32 + 1);
            let mut seen = vec![false; n];
            let mut row = vec![0u32; n];
            for (c, class) in list.iter_mut().enumerate() {
                if class.is_empty() {
                    return Err(Error::invalid(format!(
                        "player {me}: empty indifference class at position {}",
                        c + 1
                    )));
                }
                class.sort_unstable();
                for &j in class.iter() {
                    if j.get() as usize > n || j.get() == 0 {
                        return Err(Error::invalid(format!(
                            "player {me}: ranked player {j} is outside 1..={n}"
                        )));
                    }
                    if seen[j.idx()] {
                        return Err(Error::invalid(format!(
                            "player {me}: player {j} ranked more than once"
                        )));
                    }
                    seen[j.idx()] = true;
                    row[j.idx()] = c as u32;
                }
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(Error::invalid(format!(
                    "player {me}: player {} is not ranked",
                    missing + 1
                )));
            }
            self_rank.push(row[me.idx()]);
            rank.push(row);
        }
        Ok(PrefProfile {
            n,
            classes,
            rank,
            self_rank,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes_of(&self, i: PlayerId) -> &[Vec<PlayerId>] {
        &self.classes[i.idx()]
    }

    /// Index of the class `i` puts `j` in (0 = most preferred).
    pub fn rank_of(&self, i: PlayerId, j: PlayerId) -> Result<u32> {
        self.check_player(i)?;
        self.check_player(j)?;
        Ok(self.rank[i.idx()][j.idx()])
    }

    pub(crate) fn rank_raw(&self, i: PlayerId, j: PlayerId) -> u32 {
        self.rank[i.idx()][j.idx()]
    }

    pub(crate) fn self_rank_raw(&self, i: PlayerId) -> u32 {
        self.self_rank[i.idx()]
    }

    /// `Greater` iff `i` strictly prefers `j` to `k`, `Equal` iff indifferent.
    pub fn player_compare(&self, i: PlayerId, j: PlayerId, k: PlayerId) -> Result<Ordering> {
        self.check_player(i)?;
        self.check_player(j)?;
        self.check_player(k)?;
        // Smaller class index means more preferred.
        Ok(self.rank[i.idx()][k.idx()].cmp(&self.rank[i.idx()][j.idx()]))
    }

    /// Players `i` strictly prefers to itself, in ascending id order.
    pub fn likes(&self, i: PlayerId) -> Result<Vec<PlayerId>> {
        self.check_player(i)?;
        let own = self.self_rank[i.idx()];
        let mut out: Vec<PlayerId> = (1..=self.n as u32)
            .map(PlayerId::new)
            .filter(|&j| self.rank[i.idx()][j.idx()] < own)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// True iff every indifference class of every player is a singleton.
    pub fn is_strict(&self) -> bool {
        self.classes
            .iter()
            .all(|list| list.iter().all(|class| class.len() == 1))
    }

    /// True iff some player ranks some other player strictly below itself.
    pub fn has_unacceptability(&self) -> bool {
        (0..self.n).any(|i| self.self_rank[i] as usize + 1 < self.classes[i].len())
    }

    /// True iff every player that likes anyone has a single most-preferred player.
    pub fn unique_favorite(&self) -> bool {
        (0..self.n).all(|i| self.self_rank[i] == 0 || self.classes[i][0].len() == 1)
    }

    fn check_player(&self, i: PlayerId) -> Result<()> {
        if i.get() == 0 || i.get() as usize > self.n {
            return Err(Error::invalid(format!(
                "player {i} is outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }
}

/// A game: a profile plus the extension rule used to compare coalitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    pub profile: PrefProfile,
    pub variant: Variant,
}

impl GameInstance {
    pub fn new(profile: PrefProfile, variant: Variant) -> GameInstance {
        GameInstance { profile, variant }
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// Same profile under another extension rule.
    pub fn with_variant(&self, variant: Variant) -> GameInstance {
        GameInstance {
            profile: self.profile.clone(),
            variant,
        }
    }

    /// Parses the game file format; see the crate README for a sample.
    pub fn from_text(text: &str) -> Result<GameInstance> {
        parse_game(text)
    }

    /// Canonical text form: headers, then one `pref` line per player.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("variant: {}\n", self.variant));
        out.push_str(&format!("players: {}\n", self.n()));
        for i in 1..=self.n() as u32 {
            let me = PlayerId::new(i);
            let line = self
                .profile
                .classes_of(me)
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join(" ; ");
            out.push_str(&format!("pref {me}: {line}\n"));
        }
        out
    }
}

/// Nonempty set of players, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition {
    members: Vec<PlayerId>,
}

impl Coalition {
    pub fn new(mut members: Vec<PlayerId>) -> Result<Coalition> {
        if members.is_empty() {
            return Err(Error::invalid("a coalition cannot be empty"));
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("a coalition cannot repeat a player"));
        }
        Ok(Coalition { members })
    }

    pub fn singleton(i: PlayerId) -> Coalition {
        Coalition { members: vec![i] }
    }

    pub fn members(&self) -> &[PlayerId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: PlayerId) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// This coalition with `i` added (no-op if already present).
    pub fn with_member(&self, i: PlayerId) -> Coalition {
        match self.members.binary_search(&i) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut members = self.members.clone();
                members.insert(pos, i);
                Coalition { members }
            }
        }
    }

    /// This coalition with `i` removed; `None` if that empties it.
    pub fn without_member(&self, i: PlayerId) -> Option<Coalition> {
        let pos = self.members.binary_search(&i).ok()?;
        if self.members.len() == 1 {
            return None;
        }
        let mut members = self.members.clone();
        members.remove(pos);
        Some(Coalition { members })
    }

    pub fn smallest(&self) -> PlayerId {
        self.members[0]
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Partition of the players 1..=n into disjoint coalitions.
///
/// Canonical form: blocks ordered by their smallest member. Construction
/// canonicalizes, so equality and hashing see through block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Coalition>,
    n: usize,
    // block_index[i.idx()] = position of i's block in `blocks`
    block_index: Vec<u32>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Coalition>) -> Result<Partition> {
        if blocks.is_empty() {
            return Err(Error::invalid("a partition needs at least one block"));
        }
        blocks.sort_by_key(|b| b.smallest());
        let mut all: Vec<PlayerId> = blocks.iter().flat_map(|b| b.members()).copied().collect();
        all.sort_unstable();
        let n = all.last().unwrap().get() as usize;
        if all.len() != n {
            for w in all.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::invalid(format!(
                        "player {} appears in two blocks",
                        w[0]
                    )));
                }
            }
        }
        for (k, &p) in all.iter().enumerate() {
            if p.get() as usize != k + 1 {
                return Err(Error::invalid(format!("player {} is in no block", k + 1)));
            }
        }
        let mut block_index = vec![0u32; n];
        for (bi, block) in blocks.iter().enumerate() {
            for &p in block.members() {
                block_index[p.idx()] = bi as u32;
            }
        }
        Ok(Partition {
            blocks,
            n,
            block_index,
        })
    }

    /// Everyone alone.
    pub fn singletons(n: usize) -> Partition {
        let blocks = (1..=n as u32)
            .map(|i| Coalition::singleton(PlayerId::new(i)))
            .collect();
        Partition::new(blocks).expect("singleton blocks are always valid")
    }

    /// Everyone together.
    pub fn grand(n: usize) -> Partition {
        let members = (1..=n as u32).map(PlayerId::new).collect();
        Partition::new(vec![Coalition::new(members).expect("nonempty")])
            .expect("the grand coalition is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn block_of(&self, i: PlayerId) -> &Coalition {
        &self.blocks[self.block_index[i.idx()] as usize]
    }

    pub fn block_position(&self, i: PlayerId) -> usize {
        self.block_index[i.idx()] as usize
    }

    /// Checks this partition actually partitions the players of `game`.
    pub fn check_game(&self, game: &GameInstance) -> Result<()> {
        if self.n != game.n() {
            return Err(Error::invalid(format!(
                "partition covers {} players but the game has {}",
                self.n,
                game.n()
            )));
        }
        Ok(())
    }

    /// Parses `{1 2} {3}`-style text; block and member order are free.
    pub fn from_text(text: &str) -> Result<Partition> {
        parse_partition(text)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{block}")?;
        }
        Ok(())
    }
}

pub fn parse_game(text: &str) -> Result<GameInstance> {
    let mut variant: Option<Variant> = None;
    let mut players: Option<usize> = None;
    let mut prefs: Vec<Option<Vec<Vec<PlayerId>>>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let col = |needle: &str| raw.find(needle).map_or(1, |b| b + 1);
        if let Some(rest) = line.strip_prefix("variant:") {
            let tag = rest.trim();
            variant = Some(
                tag.parse()
                    .map_err(|_| Error::parse(lineno, col(tag), format!("unknown variant {tag:?}")))?,
            );
        } else if let Some(rest) = line.strip_prefix("players:") {
            let tag = rest.trim();
            let n: usize = tag
                .parse()
                .map_err(|_| Error::parse(lineno, col(tag), "player count is not a number"))?;
            if n == 0 {
                return Err(Error::parse(lineno, col(tag), "player count must be positive"));
            }
            players = Some(n);
            prefs = vec![None; n];
        } else if let Some(rest) = line.strip_prefix("pref") {
            let n = players.ok_or_else(|| {
                Error::parse(lineno, 1, "pref line before the players: header")
            })?;
            let (who, body) = rest.split_once(':').ok_or_else(|| {
                Error::parse(lineno, 1, "pref line is missing the ':' separator")
            })?;
            let who = who.trim();
            let i: u32 = who
                .parse()
                .map_err(|_| Error::parse(lineno, col(who), "pref player id is not a number"))?;
            if i == 0 || i as usize > n {
                return Err(Error::parse(
                    lineno,
                    col(who),
                    format!("pref player {i} is outside 1..={n}"),
                ));
            }
            if prefs[i as usize - 1].is_some() {
                return Err(Error::parse(
                    lineno,
                    col(who),
                    format!("duplicate pref line for player {i}"),
                ));
            }
            let mut classes: Vec<Vec<PlayerId>> = Vec::new();
            let mut mentioned: BTreeSet<u32> = BTreeSet::new();
            let mut saw_star = false;
            for chunk in body.split(';') {
                if saw_star {
                    return Err(Error::parse(
                        lineno,
                        col("*"),
                        "'*' must be the final class",
                    ));
                }
                let chunk = chunk.trim();
                if chunk == "*" {
                    saw_star = true;
                    continue;
                }
                let mut class = Vec::new();
                for tok in chunk.split_whitespace() {
                    if tok == "*" {
                        return Err(Error::parse(
                            lineno,
                            col("*"),
                            "'*' must stand alone as the final class",
                        ));
                    }
                    let id: u32 = tok.parse().map_err(|_| {
                        Error::parse(lineno, col(tok), format!("bad player id {tok:?}"))
                    })?;
                    if id == 0 || id as usize > n {
                        return Err(Error::parse(
                            lineno,
                            col(tok),
                            format!("player {id} is outside 1..={n}"),
                        ));
                    }
                    if !mentioned.insert(id) {
                        return Err(Error::parse(
                            lineno,
                            col(tok),
                            format!("player {id} listed twice"),
                        ));
                    }
                    class.push(PlayerId::new(id));
                }
                if class.is_empty() {
                    return Err(Error::parse(lineno, 1, "empty indifference class"));
                }
                classes.push(class);
            }
            if saw_star {
                let rest: Vec<PlayerId> = (1..=n as u32)
                    .filter(|id| !mentioned.contains(id))
                    .map(PlayerId::new)
                    .collect();
                if !rest.is_empty() {
                    classes.push(rest);
                }
            }
            prefs[i as usize - 1] = Some(classes);
        } else {
            return Err(Error::parse(
                lineno,
                1,
                format!("unrecognized line {line:?}"),
            ));
        }
    }

    let variant = variant.ok_or_else(|| Error::invalid("missing variant: header"))?;
    let n = players.ok_or_else(|| Error::invalid("missing players: header"))?;
    let mut classes = Vec::with_capacity(n);
    for (i, p) in prefs.into_iter().enumerate() {
        classes.push(p.ok_or_else(|| {
            Error::invalid(format!("missing pref line for player {}", i + 1))
        })?);
    }
    let profile = PrefProfile::new(classes)?;
    Ok(GameInstance::new(profile, variant))
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut blocks = Vec::new();
    let mut current: Option<Vec<PlayerId>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let mut rest = raw;
        let mut offset = 0;
        while !rest.is_empty() {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            rest = trimmed;
            if rest.is_empty() {
                break;
            }
            let col = offset + 1;
            if let Some(r) = rest.strip_prefix('{') {
                if current.is_some() {
                    return Err(Error::parse(lineno, col, "nested '{'"));
                }
                current = Some(Vec::new());
                rest = r;
                offset += 1;
            } else if let Some(r) = rest.strip_prefix('}') {
                let members = current
                    .take()
                    .ok_or_else(|| Error::parse(lineno, col, "'}' without matching '{'"))?;
                if members.is_empty() {
                    return Err(Error::parse(lineno, col, "empty block"));
                }
                blocks.push(Coalition::new(members)?);
                rest = r;
                offset += 1;
            } else {
                let end = rest
                    .find(|c: char| c.is_whitespace() || c == '{' || c == '}')
                    .unwrap_or(rest.len());
                let tok = &rest[..end];
                let id: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, col, format!("bad player id {tok:?}")))?;
                if id == 0 {
                    return Err(Error::parse(lineno, col, "player ids start at 1"));
                }
                current
                    .as_mut()
                    .ok_or_else(|| Error::parse(lineno, col, format!("player {id} outside any block")))?
                    .push(PlayerId::new(id));
                rest = &rest[end..];
                offset += end;
            }
        }
    }
    if current.is_some() {
        return Err(Error::invalid("unterminated block: missing '}'"));
    }
    if blocks.is_empty() {
        return Err(Error::invalid("partition text contains no blocks"));
    }
    Partition::new(blocks)
}
