//! Compiling CNF formulas into games whose stable partitions encode
//! satisfying assignments, plus generators for named counterexample games
//! and seeded random instances.
//!
//! Conventions shared by all gadgets: players get dense ids `1..=n` in a
//! fixed construction order, and wherever a gadget leaves the order inside a
//! set of players open it is pinned to ascending id.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Coalition, GameInstance, Partition, PlayerId, PrefProfile, Variant};
use crate::oracle::Valuation;
use crate::stability::{is_ir, is_stable, DeviationKind};

/// CNF formula over variables `1..=num_vars`; literals are signed indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<CnfFormula> {
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::invalid(format!("clause {} is empty", ci + 1)));
            }
            for &lit in clause {
                if lit == 0 {
                    return Err(Error::invalid(format!("clause {} contains 0", ci + 1)));
                }
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::invalid(format!(
                        "literal {lit} exceeds the {num_vars} declared variables"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, v: &Valuation) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = v.get(lit.unsigned_abs() as usize);
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }
}

/// Parses DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, then
/// whitespace-separated literals with `0` terminating each clause.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, 1, "duplicate problem line"));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(Error::parse(lineno, 1, "expected 'p cnf <vars> <clauses>'"));
            }
            let vars = toks[2]
                .parse()
                .map_err(|_| Error::parse(lineno, 1, "bad variable count"))?;
            let count = toks[3]
                .parse()
                .map_err(|_| Error::parse(lineno, 1, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) =
            header.ok_or_else(|| Error::parse(lineno, 1, "clause data before the problem line"))?;
        for tok in line.split_whitespace() {
            let col = raw.find(tok).map_or(1, |b| b + 1);
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, col, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(lineno, col, "zero-length clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(Error::parse(
                        lineno,
                        col,
                        format!("literal {lit} exceeds the {vars} declared variables"),
                    ));
                }
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::invalid("missing 'p cnf' problem line"))?;
    if !current.is_empty() {
        return Err(Error::invalid("unterminated clause at end of input"));
    }
    if clauses.len() != count {
        return Err(Error::invalid(format!(
            "header announces {count} clauses but {} were given",
            clauses.len()
        )));
    }
    CnfFormula::new(vars, clauses)
}

/// Which player plays which part in a compiled game.
#[derive(Debug, Clone)]
pub enum GadgetRoles {
    /// Nash-stability gadget: a `one` and `zero` anchor, two literal players
    /// per variable, one player per clause.
    SatNs {
        one: PlayerId,
        zero: PlayerId,
        /// `pos[v-1]` is the player for literal `v`.
        pos: Vec<PlayerId>,
        /// `neg[v-1]` is the player for literal `¬v`.
        neg: Vec<PlayerId>,
        clauses: Vec<PlayerId>,
    },
    /// Individual-stability gadget: a five-player chase cycle per clause, an
    /// anchor per variable, and one player per literal occurrence.
    SatIs {
        /// `chains[c]` holds players `1..5` of clause `c`'s cycle.
        chains: Vec<[PlayerId; 5]>,
        /// `zeros[v-1]` is variable `v`'s anchor.
        zeros: Vec<PlayerId>,
        /// Occurrence players per clause, paired with their literal.
        occs: Vec<Vec<(i32, PlayerId)>>,
        /// Positive occurrence players per variable.
        pos_occ: Vec<Vec<PlayerId>>,
        /// Negative occurrence players per variable.
        neg_occ: Vec<Vec<PlayerId>>,
    },
}

/// Maps the compiled game's player ids back to their gadget names.
#[derive(Debug, Clone)]
pub struct ReductionLayout {
    names: Vec<String>,
    roles: GadgetRoles,
}

impl ReductionLayout {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, id: PlayerId) -> &str {
        &self.names[id.idx()]
    }

    pub fn id(&self, name: &str) -> Option<PlayerId> {
        self.names
            .iter()
            .position(|x| x == name)
            .map(|i| PlayerId::new(i as u32 + 1))
    }

    pub fn entries(&self) -> impl Iterator<Item = (PlayerId, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, name)| (PlayerId::new(i as u32 + 1), name.as_str()))
    }

    pub fn roles(&self) -> &GadgetRoles {
        &self.roles
    }
}

impl fmt::Display for ReductionLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, name) in self.entries() {
            writeln!(f, "# name {name} -> id {id}")?;
        }
        Ok(())
    }
}

fn ids(v: u32, len: usize) -> Vec<PlayerId> {
    (v..v + len as u32).map(PlayerId::new).collect()
}

/// Compiles `f` into a game (variant `BB` or `W`) that has a Nash stable
/// partition iff `f` is satisfiable.
///
/// Literal players want to sit with an anchor and every literal of other
/// variables, but not with their own negation; clause players need one of
/// their literals pulled away to the `one` anchor to stop them from chasing
/// it. Player count: clauses + 2*variables + 2.
pub fn reduce_sat_ns(f: &CnfFormula, variant: Variant) -> Result<(GameInstance, ReductionLayout)> {
    if !matches!(variant, Variant::BB | Variant::W) {
        return Err(Error::invalid(format!(
            "the Nash-stability gadget is defined for variants BB and W, got {variant}"
        )));
    }
    let m = f.num_vars();
    let k = f.num_clauses();
    let n = 2 + 2 * m + k;

    let one = PlayerId::new(1);
    let zero = PlayerId::new(2);
    let pos: Vec<PlayerId> = (0..m).map(|v| PlayerId::new(3 + 2 * v as u32)).collect();
    let neg: Vec<PlayerId> = (0..m).map(|v| PlayerId::new(4 + 2 * v as u32)).collect();
    let clause_players = ids(3 + 2 * m as u32, k);
    let literals: Vec<PlayerId> = ids(3, 2 * m);

    let mut names = vec!["one".to_string(), "zero".to_string()];
    for v in 1..=m {
        names.push(format!("p{v}"));
        names.push(format!("~p{v}"));
    }
    for c in 1..=k {
        names.push(format!("X{c}"));
    }

    let mut classes: Vec<Vec<Vec<PlayerId>>> = Vec::with_capacity(n);
    // one and zero: all literal players first, the other anchor and the
    // clause players are unacceptable
    for anchor in [one, zero] {
        let other = if anchor == one { zero } else { one };
        let mut top = literals.clone();
        top.push(anchor);
        let mut bad = vec![other];
        bad.extend(clause_players.iter().copied());
        classes.push(vec![top, bad]);
    }
    for v in 0..m {
        for (me, opposite) in [(pos[v], neg[v]), (neg[v], pos[v])] {
            let mut top = vec![one, zero, me];
            top.extend(literals.iter().copied().filter(|&l| l != me && l != opposite));
            let mut bad = vec![opposite];
            bad.extend(clause_players.iter().copied());
            classes.push(vec![top, bad]);
        }
    }
    for clause in f.clauses() {
        let in_clause: BTreeSet<PlayerId> = clause
            .iter()
            .map(|&lit| literal_player(&pos, &neg, lit))
            .collect();
        let mut top = vec![one];
        top.extend(literals.iter().copied().filter(|l| !in_clause.contains(l)));
        let middle = clause_players.clone();
        let mut bad = vec![zero];
        bad.extend(in_clause.iter().copied());
        classes.push(vec![top, middle, bad]);
    }

    let profile = PrefProfile::new(classes)?;
    let layout = ReductionLayout {
        names,
        roles: GadgetRoles::SatNs {
            one,
            zero,
            pos,
            neg,
            clauses: clause_players,
        },
    };
    Ok((GameInstance::new(profile, variant), layout))
}

fn literal_player(pos: &[PlayerId], neg: &[PlayerId], lit: i32) -> PlayerId {
    let v = lit.unsigned_abs() as usize - 1;
    if lit > 0 {
        pos[v]
    } else {
        neg[v]
    }
}

/// Builds the Nash stable partition encoding a satisfying valuation: true
/// literals sit with `one`, false literals with `zero`, clause players alone
/// together.
pub fn ns_witness_from_valuation(
    f: &CnfFormula,
    layout: &ReductionLayout,
    v: &Valuation,
) -> Result<Partition> {
    let GadgetRoles::SatNs {
        one,
        zero,
        pos,
        neg,
        clauses,
    } = layout.roles()
    else {
        return Err(Error::invalid(
            "layout does not belong to the Nash-stability gadget",
        ));
    };
    if v.num_vars() != f.num_vars() {
        return Err(Error::invalid(format!(
            "valuation covers {} variables, formula has {}",
            v.num_vars(),
            f.num_vars()
        )));
    }
    if !f.is_satisfied_by(v) {
        return Err(Error::invalid("valuation does not satisfy the formula"));
    }
    let mut one_block = vec![*one];
    let mut zero_block = vec![*zero];
    for var in 1..=f.num_vars() {
        let (t, fa) = if v.get(var) {
            (pos[var - 1], neg[var - 1])
        } else {
            (neg[var - 1], pos[var - 1])
        };
        one_block.push(t);
        zero_block.push(fa);
    }
    let mut blocks = vec![
        Coalition::new(one_block).expect("anchor present"),
        Coalition::new(zero_block).expect("anchor present"),
    ];
    if !clauses.is_empty() {
        blocks.push(Coalition::new(clauses.clone()).expect("nonempty"));
    }
    Partition::new(blocks)
}

/// Reads a satisfying valuation off a Nash stable partition of the compiled
/// game: a variable is true iff its positive literal player sits with `one`.
pub fn valuation_from_ns_partition(
    game: &GameInstance,
    f: &CnfFormula,
    layout: &ReductionLayout,
    part: &Partition,
) -> Result<Valuation> {
    let GadgetRoles::SatNs { one, pos, .. } = layout.roles() else {
        return Err(Error::invalid(
            "layout does not belong to the Nash-stability gadget",
        ));
    };
    part.check_game(game)?;
    if !is_ir(game, part)? {
        return Err(Error::invalid(
            "partition is not individually rational, so it cannot be Nash stable",
        ));
    }
    let one_pos = part.block_position(*one);
    let bits = (0..f.num_vars())
        .map(|v| part.block_position(pos[v]) == one_pos)
        .collect();
    let val = Valuation::new(bits);
    if !f.is_satisfied_by(&val) {
        return Err(Error::invalid(
            "extracted valuation fails the formula; the partition is not Nash stable",
        ));
    }
    Ok(val)
}

/// Checks the structural assumptions of the individual-stability gadgets.
fn check_is_assumptions(f: &CnfFormula) -> Result<()> {
    if f.num_clauses() == 0 {
        return Err(Error::Assumption(
            "the individual-stability gadget needs at least one clause".into(),
        ));
    }
    let mut pos_seen = vec![false; f.num_vars()];
    let mut neg_seen = vec![false; f.num_vars()];
    for (c, clause) in f.clauses().iter().enumerate() {
        let mut seen: BTreeSet<i32> = BTreeSet::new();
        for &lit in clause {
            if seen.contains(&-lit) {
                return Err(Error::Assumption(format!(
                    "clause {} contains both p{} and ~p{}",
                    c + 1,
                    lit.unsigned_abs(),
                    lit.unsigned_abs()
                )));
            }
            if !seen.insert(lit) {
                return Err(Error::Assumption(format!(
                    "clause {} repeats a literal",
                    c + 1
                )));
            }
            if lit > 0 {
                pos_seen[lit as usize - 1] = true;
            } else {
                neg_seen[-lit as usize - 1] = true;
            }
        }
    }
    for v in 0..f.num_vars() {
        if !pos_seen[v] || !neg_seen[v] {
            return Err(Error::Assumption(format!(
                "variable p{} must occur in both polarities",
                v + 1
            )));
        }
    }
    Ok(())
}

struct IsSkeleton {
    n: usize,
    names: Vec<String>,
    chains: Vec<[PlayerId; 5]>,
    zeros: Vec<PlayerId>,
    occs: Vec<Vec<(i32, PlayerId)>>,
    pos_occ: Vec<Vec<PlayerId>>,
    neg_occ: Vec<Vec<PlayerId>>,
    all_occ: Vec<PlayerId>,
}

fn is_skeleton(f: &CnfFormula) -> Result<IsSkeleton> {
    check_is_assumptions(f)?;
    let m = f.num_vars();
    let k = f.num_clauses();
    let mut names = Vec::new();
    let mut chains = Vec::with_capacity(k);
    for c in 1..=k {
        let base = 5 * (c - 1) as u32;
        chains.push([
            PlayerId::new(base + 1),
            PlayerId::new(base + 2),
            PlayerId::new(base + 3),
            PlayerId::new(base + 4),
            PlayerId::new(base + 5),
        ]);
        for r in 1..=5 {
            names.push(format!("{r}^X{c}"));
        }
    }
    let zeros: Vec<PlayerId> = (1..=m).map(|v| PlayerId::new((5 * k + v) as u32)).collect();
    for v in 1..=m {
        names.push(format!("0_p{v}"));
    }
    let mut next = (5 * k + m + 1) as u32;
    let mut occs = Vec::with_capacity(k);
    let mut pos_occ = vec![Vec::new(); m];
    let mut neg_occ = vec![Vec::new(); m];
    let mut all_occ = Vec::new();
    for (c, clause) in f.clauses().iter().enumerate() {
        let mut list = Vec::with_capacity(clause.len());
        for &lit in clause {
            let player = PlayerId::new(next);
            next += 1;
            let var = lit.unsigned_abs() as usize;
            if lit > 0 {
                names.push(format!("p{var}^X{}", c + 1));
                pos_occ[var - 1].push(player);
            } else {
                names.push(format!("~p{var}^X{}", c + 1));
                neg_occ[var - 1].push(player);
            }
            list.push((lit, player));
            all_occ.push(player);
        }
        occs.push(list);
    }
    Ok(IsSkeleton {
        n: next as usize - 1,
        names,
        chains,
        zeros,
        occs,
        pos_occ,
        neg_occ,
        all_occ,
    })
}

/// Appends `groups` as classes and everyone left over as trailing singleton
/// classes; with `strict` each group is itself split into singletons.
fn finish_list(
    n: usize,
    groups: Vec<Vec<PlayerId>>,
    strict: bool,
) -> Vec<Vec<PlayerId>> {
    let mut placed = vec![false; n];
    let mut out: Vec<Vec<PlayerId>> = Vec::new();
    for mut group in groups {
        if group.is_empty() {
            continue;
        }
        group.sort_unstable();
        for &g in &group {
            placed[g.idx()] = true;
        }
        if strict {
            out.extend(group.into_iter().map(|g| vec![g]));
        } else {
            out.push(group);
        }
    }
    out.extend(
        (1..=n as u32)
            .map(PlayerId::new)
            .filter(|p| !placed[p.idx()])
            .map(|p| vec![p]),
    );
    out
}

fn chain_groups(chain: &[PlayerId; 5], occ: &[(i32, PlayerId)]) -> [Vec<Vec<PlayerId>>; 5] {
    let [c1, c2, c3, c4, c5] = *chain;
    let clause_occ: Vec<PlayerId> = occ.iter().map(|&(_, p)| p).collect();
    [
        vec![vec![c2], clause_occ, vec![c5], vec![c1]],
        vec![vec![c3], vec![c1], vec![c2]],
        vec![vec![c4], vec![c2], vec![c3]],
        vec![vec![c5], vec![c3], vec![c4]],
        vec![vec![c1], vec![c4], vec![c5]],
    ]
}

fn is_gadget(f: &CnfFormula, variant: Variant) -> Result<(GameInstance, ReductionLayout)> {
    let sk = is_skeleton(f)?;
    let strict = variant == Variant::BB;
    let mut classes: Vec<Vec<Vec<PlayerId>>> = vec![Vec::new(); sk.n];

    for (c, chain) in sk.chains.iter().enumerate() {
        for (r, groups) in chain_groups(chain, &sk.occs[c]).into_iter().enumerate() {
            // chase cycles stay strict in both gadget flavours
            classes[chain[r].idx()] = finish_list(sk.n, groups, true);
        }
    }
    for (ci, clause) in sk.occs.iter().enumerate() {
        for &(lit, me) in clause {
            let var = lit.unsigned_abs() as usize - 1;
            let own_side = if lit > 0 { &sk.pos_occ[var] } else { &sk.neg_occ[var] };
            let same_literal: Vec<PlayerId> =
                own_side.iter().copied().filter(|&p| p != me).collect();
            let strangers: Vec<PlayerId> = sk
                .all_occ
                .iter()
                .copied()
                .filter(|p| !sk.pos_occ[var].contains(p) && !sk.neg_occ[var].contains(p))
                .collect();
            let anchor = sk.zeros[var];
            let clause_head = sk.chains[ci][0];
            let groups = if strict {
                vec![
                    vec![anchor],
                    same_literal,
                    vec![clause_head],
                    strangers,
                    vec![me],
                ]
            } else {
                let mut first = vec![anchor];
                first.extend(same_literal);
                let mut second = vec![clause_head];
                second.extend(strangers);
                vec![first, second, vec![me]]
            };
            classes[me.idx()] = finish_list(sk.n, groups, strict);
        }
    }
    for v in 0..f.num_vars() {
        let me = sk.zeros[v];
        let mut family: Vec<PlayerId> = sk.pos_occ[v].clone();
        family.extend(sk.neg_occ[v].iter().copied());
        let groups = if strict {
            vec![family, vec![me]]
        } else {
            family.push(me);
            vec![family]
        };
        classes[me.idx()] = finish_list(sk.n, groups, strict);
    }

    let profile = PrefProfile::new(classes)?;
    let layout = ReductionLayout {
        names: sk.names,
        roles: GadgetRoles::SatIs {
            chains: sk.chains,
            zeros: sk.zeros,
            occs: sk.occs,
            pos_occ: sk.pos_occ,
            neg_occ: sk.neg_occ,
        },
    };
    Ok((GameInstance::new(profile, variant), layout))
}

/// Compiles `f` into a strict BB-game with an individually stable partition
/// iff `f` is satisfiable (and then also a Nash stable one).
///
/// Requires every variable to occur in both polarities and no clause to
/// contain a variable twice. Player count: 5*clauses + variables + total
/// literal occurrences.
pub fn reduce_sat_is_bb(f: &CnfFormula) -> Result<(GameInstance, ReductionLayout)> {
    is_gadget(f, Variant::BB)
}

/// Same gadget under W-preferences, with the occurrence players' first two
/// strict steps flattened into ties and each variable anchor indifferent
/// between all of its occurrence players and staying alone.
pub fn reduce_sat_is_w(f: &CnfFormula) -> Result<(GameInstance, ReductionLayout)> {
    is_gadget(f, Variant::W)
}

/// Builds the stable partition encoding a satisfying valuation: per clause
/// the pairs `{2,3}` and `{4,5}`, the clause head with its true occurrence
/// players, and each variable anchor with all of its false occurrences.
pub fn is_witness_from_valuation(
    f: &CnfFormula,
    layout: &ReductionLayout,
    v: &Valuation,
) -> Result<Partition> {
    let GadgetRoles::SatIs {
        chains,
        zeros,
        occs,
        pos_occ,
        neg_occ,
    } = layout.roles()
    else {
        return Err(Error::invalid(
            "layout does not belong to the individual-stability gadget",
        ));
    };
    if v.num_vars() != f.num_vars() {
        return Err(Error::invalid(format!(
            "valuation covers {} variables, formula has {}",
            v.num_vars(),
            f.num_vars()
        )));
    }
    if !f.is_satisfied_by(v) {
        return Err(Error::invalid("valuation does not satisfy the formula"));
    }
    let mut blocks = Vec::new();
    for (c, chain) in chains.iter().enumerate() {
        blocks.push(Coalition::new(vec![chain[1], chain[2]]).expect("pair"));
        blocks.push(Coalition::new(vec![chain[3], chain[4]]).expect("pair"));
        let mut head = vec![chain[0]];
        for &(lit, player) in &occs[c] {
            let value = v.get(lit.unsigned_abs() as usize);
            if (lit > 0) == value {
                head.push(player);
            }
        }
        blocks.push(Coalition::new(head).expect("nonempty"));
    }
    for var in 1..=f.num_vars() {
        let mut family = vec![zeros[var - 1]];
        let false_side = if v.get(var) {
            &neg_occ[var - 1]
        } else {
            &pos_occ[var - 1]
        };
        family.extend(false_side.iter().copied());
        blocks.push(Coalition::new(family).expect("nonempty"));
    }
    Partition::new(blocks)
}

/// Reads a satisfying valuation off an individually stable partition: a
/// variable is true iff one of its positive occurrence players sits with the
/// head of its own clause cycle.
pub fn valuation_from_is_partition(
    game: &GameInstance,
    f: &CnfFormula,
    layout: &ReductionLayout,
    part: &Partition,
) -> Result<Valuation> {
    let GadgetRoles::SatIs { chains, occs, .. } = layout.roles() else {
        return Err(Error::invalid(
            "layout does not belong to the individual-stability gadget",
        ));
    };
    part.check_game(game)?;
    if !is_stable(game, part, DeviationKind::Is)? {
        return Err(Error::invalid("partition is not individually stable"));
    }
    let mut bits = vec![false; f.num_vars()];
    for (c, clause) in occs.iter().enumerate() {
        let head_pos = part.block_position(chains[c][0]);
        for &(lit, player) in clause {
            if lit > 0 && part.block_position(player) == head_pos {
                bits[lit as usize - 1] = true;
            }
        }
    }
    let val = Valuation::new(bits);
    if !f.is_satisfied_by(&val) {
        return Err(Error::invalid(
            "extracted valuation fails the formula; the partition is not individually stable",
        ));
    }
    Ok(val)
}

/// Two players: 1 wants to be alone, 2 wants to be with 1.
pub fn gen_stalker(variant: Variant) -> GameInstance {
    let one = PlayerId::new(1);
    let two = PlayerId::new(2);
    let profile = PrefProfile::new(vec![
        vec![vec![one], vec![two]],
        vec![vec![one], vec![two]],
    ])
    .expect("stalker profile is valid");
    GameInstance::new(profile, variant)
}

/// Five players chasing each other around a cycle: each likes its successor
/// best, its predecessor second, and finds everyone else unacceptable.
pub fn gen_extended_stalker(variant: Variant) -> GameInstance {
    let rows: [[u32; 5]; 5] = [
        [2, 5, 1, 3, 4],
        [3, 1, 2, 4, 5],
        [4, 2, 3, 1, 5],
        [5, 3, 4, 1, 2],
        [1, 4, 5, 2, 3],
    ];
    let classes = rows
        .iter()
        .map(|row| row.iter().map(|&x| vec![PlayerId::new(x)]).collect())
        .collect();
    GameInstance::new(
        PrefProfile::new(classes).expect("extended stalker profile is valid"),
        variant,
    )
}

/// Knobs for [`random_game`]. `tie_prob` merges adjacent ranks into one
/// class; `unacc_prob` is the chance that any given other player lands below
/// the ranking player itself.
#[derive(Debug, Clone)]
pub struct RandomGameParams {
    pub n: usize,
    pub variant: Variant,
    pub tie_prob: f64,
    pub unacc_prob: f64,
}

/// Draws a game with a seeded deterministic generator: per player a uniform
/// permutation of the others, a binomial cut placing the player itself, then
/// adjacent-rank merges.
pub fn random_game(params: &RandomGameParams, seed: u64) -> Result<GameInstance> {
    if params.n == 0 {
        return Err(Error::invalid("a game needs at least one player"));
    }
    for (what, p) in [("tie_prob", params.tie_prob), ("unacc_prob", params.unacc_prob)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("{what} must lie in [0, 1], got {p}")));
        }
    }
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let mut others: Vec<u32> = (1..=n as u32).filter(|&j| j != i).collect();
        for x in (1..others.len()).rev() {
            let y = rng.random_range(0..=x);
            others.swap(x, y);
        }
        let accepted = (0..others.len())
            .filter(|_| rng.random_bool(1.0 - params.unacc_prob))
            .count();
        let mut sequence = others;
        sequence.insert(accepted, i);
        let mut list: Vec<Vec<PlayerId>> = vec![vec![PlayerId::new(sequence[0])]];
        for &x in &sequence[1..] {
            if rng.random_bool(params.tie_prob) {
                list.last_mut().unwrap().push(PlayerId::new(x));
            } else {
                list.push(vec![PlayerId::new(x)]);
            }
        }
        classes.push(list);
    }
    Ok(GameInstance::new(
        PrefProfile::new(classes).expect("generated rankings cover everyone"),
        params.variant,
    ))
}
