//! Breadth-first reachability oracle used to cross-check the decision
//! procedure.

use std::collections::{HashMap, VecDeque};

use crate::vas::{ActionId, Config, Instance, Prerun, Run};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Reachable(Run),
    /// The explored set is closed under every action and was exhausted.
    UnreachableCertified,
    Unknown,
}

fn norm(c: &[u64]) -> u64 {
    c.iter().copied().max().unwrap_or(0)
}

/// Breadth-first search restricted to configurations of norm ≤ `max_norm`
/// and runs of length ≤ `max_len`.
///
/// Actions are tried in the order of the VAS, so the returned run is the
/// lexicographically least among the shortest ones. Unreachability is only
/// certified when no successor was cut by the norm cap and the frontier
/// emptied before the length cap.
pub fn bfs_oracle(inst: &Instance, max_norm: u64, max_len: usize) -> OracleVerdict {
    let vas = &inst.vas;
    let mut parent: HashMap<Config, Option<(Config, ActionId)>> = HashMap::new();
    parent.insert(inst.source.clone(), None);
    let mut frontier = VecDeque::from([inst.source.clone()]);
    let mut cut = norm(&inst.source) > max_norm;
    let mut depth = 0;
    while !frontier.is_empty() {
        if let Some(run) = rebuild(inst, &parent) {
            return OracleVerdict::Reachable(run);
        }
        if depth == max_len {
            return OracleVerdict::Unknown;
        }
        let mut next = VecDeque::new();
        while let Some(c) = frontier.pop_front() {
            for a in 0..vas.actions.len() {
                let Ok(n) = vas.apply(&c, a) else { continue };
                if norm(&n) > max_norm {
                    cut = true;
                    continue;
                }
                if !parent.contains_key(&n) {
                    parent.insert(n.clone(), Some((c.clone(), a)));
                    next.push_back(n);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    if let Some(run) = rebuild(inst, &parent) {
        return OracleVerdict::Reachable(run);
    }
    if cut {
        OracleVerdict::Unknown
    } else {
        OracleVerdict::UnreachableCertified
    }
}

fn rebuild(inst: &Instance, parent: &HashMap<Config, Option<(Config, ActionId)>>) -> Option<Run> {
    if !parent.contains_key(&inst.target) {
        return None;
    }
    let mut label = Vec::new();
    let mut cur = inst.target.clone();
    while let Some(Some((p, a))) = parent.get(&cur) {
        label.push(*a);
        cur = p.clone();
    }
    label.reverse();
    Prerun::from_label(&inst.vas, &inst.source, &label).ok()
}

/// All runs from `source` to `target` within the caps, as the sets of
/// configurations and transitions lying on at least one of them.
pub(crate) struct RunSkeleton {
    pub configs: Vec<Config>,
    pub transitions: Vec<(Config, ActionId, Config)>,
    /// A successor was cut by the norm cap or a run by the length cap.
    pub truncated: bool,
    pub connected: bool,
}

/// Computes forward distances from `source` and backward distances to
/// `target`; a configuration lies on a run of length ≤ `max_len` iff the
/// two distances sum to at most `max_len`.
pub(crate) fn run_skeleton(
    vas: &crate::vas::Vas,
    source: &[u64],
    target: &[u64],
    max_norm: u64,
    max_len: usize,
) -> RunSkeleton {
    let mut truncated = false;
    let fwd = distances(
        source,
        max_norm,
        max_len,
        &mut truncated,
        |c, a| vas.apply(c, a).ok(),
        vas.actions.len(),
    );
    let bwd = distances(
        target,
        max_norm,
        max_len,
        &mut truncated,
        |c, a| {
            let neg: Vec<i64> = vas.delta(a).iter().map(|x| -x).collect();
            crate::vas::apply_action(
                c,
                &crate::vas::Action {
                    name: String::new(),
                    delta: neg,
                },
            )
            .ok()
        },
        vas.actions.len(),
    );
    let mut configs: Vec<Config> = fwd
        .iter()
        .filter(|(c, &df)| bwd.get(*c).is_some_and(|&db| df + db <= max_len))
        .map(|(c, _)| c.clone())
        .collect();
    configs.sort();
    let mut transitions = Vec::new();
    for c in &configs {
        let df = fwd[c];
        for a in 0..vas.actions.len() {
            if let Ok(n) = vas.apply(c, a) {
                if bwd.get(&n).is_some_and(|&db| df + 1 + db <= max_len) {
                    transitions.push((c.clone(), a, n));
                }
            }
        }
    }
    let connected = fwd.get(target).is_some_and(|&df| df <= max_len);
    RunSkeleton {
        configs,
        transitions,
        truncated,
        connected,
    }
}

fn distances(
    start: &[u64],
    max_norm: u64,
    max_len: usize,
    truncated: &mut bool,
    step: impl Fn(&[u64], ActionId) -> Option<Config>,
    n_actions: usize,
) -> HashMap<Config, usize> {
    let mut dist = HashMap::new();
    if norm(start) > max_norm {
        *truncated = true;
        return dist;
    }
    dist.insert(start.to_vec(), 0);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for a in 0..n_actions {
            let Some(n) = step(&c, a) else { continue };
            if norm(&n) > max_norm || d == max_len {
                *truncated = true;
                continue;
            }
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    dist
}
