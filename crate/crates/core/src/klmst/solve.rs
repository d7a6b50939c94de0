use std::collections::VecDeque;

use serde::Serialize;

use super::dec::{dec, DEFAULT_CHILD_LIMIT};
use super::graph::{initial_sequence, MwgSequence};
use super::system::{is_perfect, Defect, Perfectness};
use super::witness::extract_witness;
use crate::diophantine::DEFAULT_BRANCH_BUDGET;
use crate::error::{Error, Result};
use crate::vas::{Instance, Run};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Perfectness checks performed by the loop.
    pub max_steps: usize,
    /// Relaxations solved by one branch-and-bound search.
    pub node_budget: usize,
    /// Sequences produced by one refinement.
    pub child_limit: usize,
    /// Witness graphs held across all live sequences.
    pub max_graphs: usize,
    /// Stop as soon as a perfect sequence yields a witness run.
    pub stop_at_first_perfect: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: 1_000_000,
            node_budget: DEFAULT_BRANCH_BUDGET,
            child_limit: DEFAULT_CHILD_LIMIT,
            max_graphs: 256 * 1024,
            stop_at_first_perfect: false,
        }
    }
}

impl Limits {
    /// Derives the live-graph cap from a memory allowance.
    pub fn with_budget_mb(mut self, mb: usize) -> Self {
        self.max_graphs = mb.saturating_mul(1024);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub id: usize,
    pub parent: Option<usize>,
    pub rank: String,
    pub defect: Option<Defect>,
    pub children: Vec<usize>,
    pub child_ranks: Vec<String>,
}

/// Every sequence ever created, by id, and the step log.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub sequences: Vec<MwgSequence>,
    pub parents: Vec<Option<usize>>,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Calls `f` with the live family before the first step and after
    /// every step.
    pub fn for_each_snapshot(&self, mut f: impl FnMut(usize, &[usize])) {
        let mut live = vec![0usize];
        f(0, &live);
        for s in &self.steps {
            if s.defect.is_some() {
                let pos = live
                    .iter()
                    .position(|&x| x == s.id)
                    .expect("step on a live sequence");
                live.remove(pos);
                live.extend(&s.children);
            }
            f(s.step + 1, &live);
        }
    }

    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("trace step serializes") + "\n")
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Reachable { run: Run, family: Vec<usize> },
    Unreachable,
    Exhausted { reason: String },
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub outcome: Outcome,
    pub trace: Trace,
    /// Ids of the perfect sequences found.
    pub perfect: Vec<usize>,
}

impl Solution {
    pub fn perfect_family(&self) -> Vec<&MwgSequence> {
        self.perfect
            .iter()
            .map(|&id| &self.trace.sequences[id])
            .collect()
    }
}

fn exhausted(err: Error) -> Result<String> {
    match err {
        Error::BudgetExceeded(msg) => Ok(msg),
        Error::Overflow(what) => Ok(format!("arithmetic overflow in {what}")),
        other => Err(other),
    }
}

/// Decomposes the run set of the instance until every sequence is
/// perfect, then extracts a run from a perfect one if any is left.
pub fn klmst_solve(inst: &Instance, limits: Limits) -> Result<Solution> {
    let vas = &inst.vas;
    let mut trace = Trace {
        sequences: vec![initial_sequence(inst)],
        parents: vec![None],
        steps: Vec::new(),
    };
    let mut queue = VecDeque::from([0usize]);
    let mut perfect = Vec::new();
    let mut live_graphs = trace.sequences[0].graphs.len();
    let finish = |outcome, trace, perfect| {
        Ok(Solution {
            outcome,
            trace,
            perfect,
        })
    };
    while let Some(id) = queue.pop_front() {
        if trace.steps.len() >= limits.max_steps {
            let reason = format!("step limit {} reached", limits.max_steps);
            return finish(Outcome::Exhausted { reason }, trace, perfect);
        }
        let xi = trace.sequences[id].clone();
        let verdict = match is_perfect(&xi, vas, limits.node_budget) {
            Ok(v) => v,
            Err(e) => {
                return finish(
                    Outcome::Exhausted {
                        reason: exhausted(e)?,
                    },
                    trace,
                    perfect,
                )
            }
        };
        let mut step = TraceStep {
            step: trace.steps.len(),
            id,
            parent: trace.parents[id],
            rank: xi.rank().to_string(),
            defect: None,
            children: Vec::new(),
            child_ranks: Vec::new(),
        };
        match verdict {
            Perfectness::Perfect(data) => {
                trace.steps.push(step);
                perfect.push(id);
                if limits.stop_at_first_perfect {
                    if let Some(run) = extract_witness(&xi, &data, vas)? {
                        let family = perfect.clone();
                        return finish(Outcome::Reachable { run, family }, trace, perfect);
                    }
                }
            }
            Perfectness::Imperfect(defect) => {
                let children = match dec(&xi, &defect, vas, limits.child_limit) {
                    Ok(c) => c,
                    Err(e) => {
                        return finish(
                            Outcome::Exhausted {
                                reason: exhausted(e)?,
                            },
                            trace,
                            perfect,
                        )
                    }
                };
                live_graphs -= xi.graphs.len();
                for child in children {
                    let cid = trace.sequences.len();
                    live_graphs += child.graphs.len();
                    step.child_ranks.push(child.rank().to_string());
                    step.children.push(cid);
                    trace.sequences.push(child);
                    trace.parents.push(Some(id));
                    queue.push_back(cid);
                }
                step.defect = Some(defect);
                trace.steps.push(step);
                if live_graphs > limits.max_graphs {
                    let reason = format!("more than {} live witness graphs", limits.max_graphs);
                    return finish(Outcome::Exhausted { reason }, trace, perfect);
                }
            }
        }
    }
    if perfect.is_empty() {
        return finish(Outcome::Unreachable, trace, perfect);
    }
    for &id in &perfect {
        let xi = &trace.sequences[id];
        if let Perfectness::Perfect(data) = is_perfect(xi, vas, limits.node_budget)? {
            if let Some(run) = extract_witness(xi, &data, vas)? {
                let family = perfect.clone();
                return finish(Outcome::Reachable { run, family }, trace, perfect);
            }
        }
    }
    let reason = "no witness run assembled from the perfect family".to_string();
    finish(Outcome::Exhausted { reason }, trace, perfect)
}
