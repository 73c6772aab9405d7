//! Exhaustive ground truth: every partition of the players, every stability
//! concept, and a brute-force SAT decision for small formulas. Slow by
//! design; the polynomial constructions are in [`crate::algorithms`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Coalition, GameInstance, Partition, PlayerId, Variant};
use crate::reductions::CnfFormula;
use crate::stability::{is_core_stable, is_ir, is_stable, DeviationKind};

/// Default cap on `n` for whole-partition-space scans (Bell(14) ≈ 1.9e8).
pub const DEFAULT_PARTITION_CAP: usize = 14;
/// Default cap on variable count for brute-force SAT.
pub const DEFAULT_SAT_VAR_CAP: usize = 20;

/// Bell number via the Bell-triangle recurrence (exact up to `n = 39`).
pub fn bell_number(n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let mut row = vec![1u128];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    *row.last().unwrap()
}

/// Iterator over all partitions of `1..=n` in restricted-growth-string
/// (lexicographic) order. The very first partition is the grand coalition,
/// the last is all singletons, and blocks come out already canonical.
pub struct PartitionIter {
    rgs: Rgs,
    done: bool,
    started: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if self.started && !self.rgs.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.rgs.to_partition())
    }
}

pub fn enumerate_partitions(n: usize, cap: usize) -> Result<PartitionIter> {
    if n == 0 {
        return Err(Error::invalid("cannot partition zero players"));
    }
    if n > cap {
        return Err(Error::Capacity {
            what: "partition enumeration",
            requested: n,
            cap,
        });
    }
    Ok(PartitionIter {
        rgs: Rgs::new(n),
        done: false,
        started: false,
    })
}

/// Restricted growth string: `a[0] = 0` and `a[i] <= max(a[..i]) + 1`.
struct Rgs {
    a: Vec<usize>,
    max: Vec<usize>,
}

impl Rgs {
    fn new(n: usize) -> Rgs {
        Rgs {
            a: vec![0; n],
            max: vec![0; n],
        }
    }

    /// Steps to the lexicographic successor; false when exhausted.
    fn advance(&mut self) -> bool {
        let n = self.a.len();
        for i in (1..n).rev() {
            if self.a[i] <= self.max[i - 1] {
                self.a[i] += 1;
                self.max[i] = self.max[i - 1].max(self.a[i]);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.max[j] = self.max[j - 1];
                }
                return true;
            }
        }
        false
    }

    fn to_partition(&self) -> Partition {
        let n = self.a.len();
        let nblocks = self.max[n - 1] + 1;
        let mut members: Vec<Vec<PlayerId>> = vec![Vec::new(); nblocks];
        for (i, &b) in self.a.iter().enumerate() {
            members[b].push(PlayerId::new(i as u32 + 1));
        }
        let blocks = members
            .into_iter()
            .map(|m| Coalition::new(m).expect("every RGS value is used"))
            .collect();
        Partition::new(blocks).expect("an RGS always encodes a partition")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityConcept {
    Ir,
    Ns,
    Is,
    Cis,
    CisAndIr,
    Core,
    StrictCore,
}

impl StabilityConcept {
    pub const ALL: [StabilityConcept; 7] = [
        StabilityConcept::Ir,
        StabilityConcept::Ns,
        StabilityConcept::Is,
        StabilityConcept::Cis,
        StabilityConcept::CisAndIr,
        StabilityConcept::Core,
        StabilityConcept::StrictCore,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StabilityConcept::Ir => "IR",
            StabilityConcept::Ns => "NS",
            StabilityConcept::Is => "IS",
            StabilityConcept::Cis => "CIS",
            StabilityConcept::CisAndIr => "CIS_AND_IR",
            StabilityConcept::Core => "CORE",
            StabilityConcept::StrictCore => "STRICT_CORE",
        }
    }
}

impl fmt::Display for StabilityConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StabilityConcept {
    type Err = Error;

    fn from_str(s: &str) -> Result<StabilityConcept> {
        match s {
            "ir" => Ok(StabilityConcept::Ir),
            "ns" => Ok(StabilityConcept::Ns),
            "is" => Ok(StabilityConcept::Is),
            "cis" => Ok(StabilityConcept::Cis),
            "cis-and-ir" => Ok(StabilityConcept::CisAndIr),
            "core" => Ok(StabilityConcept::Core),
            "strict-core" => Ok(StabilityConcept::StrictCore),
            other => Err(Error::invalid(format!(
                "unknown stability concept {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Collect every stable partition, in enumeration order.
    All,
    /// Stop at the first stable partition.
    FirstWitness,
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub partition_cap: usize,
    /// Skip partitions that are not individually rational when searching for
    /// concepts that imply individual rationality (NS, IS, strict core).
    pub ir_prefilter: bool,
    pub core_cap: usize,
}

impl Default for OracleOptions {
    fn default() -> OracleOptions {
        OracleOptions {
            partition_cap: DEFAULT_PARTITION_CAP,
            ir_prefilter: true,
            core_cap: crate::stability::DEFAULT_CORE_CAP,
        }
    }
}

/// Scans every partition of the game's players for the requested concept.
pub fn find_stable(
    game: &GameInstance,
    concept: StabilityConcept,
    mode: SearchMode,
    opts: &OracleOptions,
) -> Result<Vec<Partition>> {
    let n = game.n();
    if n > opts.partition_cap {
        return Err(Error::Capacity {
            what: "stability search",
            requested: n,
            cap: opts.partition_cap,
        });
    }
    let prefilter = opts.ir_prefilter
        && matches!(
            concept,
            StabilityConcept::Ns | StabilityConcept::Is | StabilityConcept::StrictCore
        );
    let mut rgs = Rgs::new(n);
    let mut out = Vec::new();
    loop {
        if !prefilter || rgs_is_ir(game, &rgs.a) {
            let part = rgs.to_partition();
            if concept_holds(game, &part, concept, opts)? {
                out.push(part);
                if mode == SearchMode::FirstWitness {
                    break;
                }
            }
        }
        if !rgs.advance() {
            break;
        }
    }
    Ok(out)
}

/// Allocation-free individual-rationality test straight on the growth string.
fn rgs_is_ir(game: &GameInstance, a: &[usize]) -> bool {
    let prof = &game.profile;
    let n = a.len();
    for i in 0..n {
        let me = PlayerId::new(i as u32 + 1);
        let own = prof.self_rank_raw(me);
        match game.variant {
            Variant::B => {
                // acceptable iff alone or someone strictly liked is in the block
                let mut alone = true;
                let mut best = u32::MAX;
                for j in 0..n {
                    if j != i && a[j] == a[i] {
                        alone = false;
                        best = best.min(prof.rank_raw(me, PlayerId::new(j as u32 + 1)));
                        if best < own {
                            break;
                        }
                    }
                }
                if !alone && best >= own {
                    return false;
                }
            }
            Variant::BB | Variant::W | Variant::WW => {
                // acceptable iff nobody in the block ranks below the player itself
                for j in 0..n {
                    if a[j] == a[i] && prof.rank_raw(me, PlayerId::new(j as u32 + 1)) > own {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn concept_holds(
    game: &GameInstance,
    part: &Partition,
    concept: StabilityConcept,
    opts: &OracleOptions,
) -> Result<bool> {
    match concept {
        StabilityConcept::Ir => is_ir(game, part),
        StabilityConcept::Ns => is_stable(game, part, DeviationKind::Ns),
        StabilityConcept::Is => is_stable(game, part, DeviationKind::Is),
        StabilityConcept::Cis => is_stable(game, part, DeviationKind::Cis),
        StabilityConcept::CisAndIr => {
            Ok(is_stable(game, part, DeviationKind::Cis)? && is_ir(game, part)?)
        }
        StabilityConcept::Core => is_core_stable(game, part, false, opts.core_cap),
        StabilityConcept::StrictCore => is_core_stable(game, part, true, opts.core_cap),
    }
}

/// Truth assignment for variables `1..=m`, printable as a 0/1 string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation(Vec<bool>);

impl Valuation {
    pub fn new(bits: Vec<bool>) -> Valuation {
        Valuation(bits)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Value of variable `var` (1-based).
    pub fn get(&self, var: usize) -> bool {
        assert!(var >= 1 && var <= self.0.len(), "variable out of range");
        self.0[var - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Parses a string like `"101"`: character `k` is variable `k+1`.
    pub fn parse(s: &str) -> Result<Valuation> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::invalid(format!(
                        "valuation strings use only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(Valuation(bits))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Scans assignments in increasing numeric order (variable 1 is the least
/// significant bit, all-false first) and returns the first satisfying one.
pub fn brute_force_sat(f: &CnfFormula, var_cap: usize) -> Result<Option<Valuation>> {
    let m = f.num_vars();
    let cap = var_cap.min(63);
    if m > cap {
        return Err(Error::Capacity {
            what: "assignment enumeration",
            requested: m,
            cap,
        });
    }
    for k in 0u64..(1u64 << m) {
        let ok = f.clauses().iter().all(|clause| {
            clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() as usize;
                let value = (k >> (var - 1)) & 1 == 1;
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        });
        if ok {
            let bits = (0..m).map(|i| (k >> i) & 1 == 1).collect();
            return Ok(Some(Valuation::new(bits)));
        }
    }
    Ok(None)
}
