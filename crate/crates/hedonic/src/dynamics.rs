//! Deviation dynamics: repeatedly apply the first feasible improving move and
//! watch for stabilization, revisits, or the step budget running out.

use std::collections::HashMap;

use crate::error::Result;
use crate::model::{GameInstance, Partition};
use crate::stability::{apply_deviation, find_deviation, Deviation, DeviationKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Partition the deviation was found in.
    pub before: Partition,
    pub deviation: Deviation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// No deviation exists from the final partition.
    Stabilized,
    /// The final partition was already visited at this index (0 = start).
    CycleDetected { first_repeat: usize },
    /// The step budget ran out with deviations still available.
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub kind: DeviationKind,
    pub steps: Vec<TraceStep>,
    /// Partition the run ended in.
    pub end: Partition,
    pub terminal: Terminal,
}

impl DynamicsTrace {
    /// The visited partitions in order: start, one per step, ending in `end`.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = self.steps.iter().map(|s| s.before.clone()).collect();
        out.push(self.end.clone());
        out
    }
}

/// Runs the deviation dynamics from `start` for at most `max_steps` moves.
pub fn run_dynamics(
    game: &GameInstance,
    start: &Partition,
    kind: DeviationKind,
    max_steps: usize,
) -> Result<DynamicsTrace> {
    start.check_game(game)?;
    let mut visited: HashMap<Partition, usize> = HashMap::new();
    visited.insert(start.clone(), 0);
    let mut current = start.clone();
    let mut steps: Vec<TraceStep> = Vec::new();
    loop {
        let Some(dev) = find_deviation(game, &current, kind)? else {
            return Ok(DynamicsTrace {
                kind,
                steps,
                end: current,
                terminal: Terminal::Stabilized,
            });
        };
        if steps.len() >= max_steps {
            return Ok(DynamicsTrace {
                kind,
                steps,
                end: current,
                terminal: Terminal::Truncated,
            });
        }
        let next = apply_deviation(&current, &dev)?;
        steps.push(TraceStep {
            before: current,
            deviation: dev,
        });
        if let Some(&first_repeat) = visited.get(&next) {
            return Ok(DynamicsTrace {
                kind,
                steps,
                end: next,
                terminal: Terminal::CycleDetected { first_repeat },
            });
        }
        visited.insert(next.clone(), steps.len());
        current = next;
    }
}
