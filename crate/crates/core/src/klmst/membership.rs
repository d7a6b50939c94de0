use std::collections::HashSet;

use super::graph::{MarkedWitnessGraph, MwgSequence};
use crate::ideals::{reduce_product, Atom, DownSet, PartialTransition, PrerunIdealRep, Product};
use crate::vas::Run;

fn node_at(m: &MarkedWitnessGraph, c: &[u64]) -> Option<usize> {
    m.graph.nodes.iter().position(|v| v.matches(c))
}

/// Whether the run splits as `x0 σ0 y0 a1 x1 σ1 y1 ... ak xk σk yk` with
/// each `σj` a cycle on the root of graph `j` and the segment endpoints
/// agreeing with the marks.
pub fn run_in_sequence(rho: &Run, xi: &MwgSequence) -> bool {
    let configs = rho.configs();
    let len = rho.steps.len();
    let k = xi.graphs.len() - 1;
    let enters = |j: usize, pos: usize| -> bool {
        let m = &xi.graphs[j];
        m.in_mark.matches(configs[pos]) && m.graph.root_value().matches(configs[pos])
    };
    if !enters(0, 0) {
        return false;
    }
    let mut seen = HashSet::new();
    let mut stack = vec![(0usize, 0usize, xi.graphs[0].graph.root)];
    while let Some(state @ (j, pos, node)) = stack.pop() {
        if !seen.insert(state) {
            continue;
        }
        let m = &xi.graphs[j];
        let at_exit = node == m.graph.root && m.out_mark.matches(configs[pos]);
        if at_exit && j == k && pos == len {
            return true;
        }
        if pos == len {
            continue;
        }
        let action = rho.steps[pos].action;
        if let Some(next) = node_at(m, configs[pos + 1]) {
            if m.graph
                .edges
                .iter()
                .any(|e| e.src == node && e.action == action && e.dst == next)
            {
                stack.push((j, pos + 1, next));
            }
        }
        if at_exit && j < k && xi.links[j] == action && enters(j + 1, pos + 1) {
            stack.push((j + 1, pos + 1, xi.graphs[j + 1].graph.root));
        }
    }
    false
}

/// `↓x0 × E0* · (y0, a1, x1) · E1* ⋯ × ↓yk`, reduced.
pub fn sequence_ideal(xi: &MwgSequence) -> PrerunIdealRep {
    let mut atoms = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        if j > 0 {
            atoms.push(Atom::Single(PartialTransition {
                src: xi.graphs[j - 1].out_mark.clone(),
                action: xi.links[j - 1],
                dst: m.in_mark.clone(),
            }));
        }
        let edges =
            DownSet::from_elements(m.graph.edges.iter().map(|e| m.graph.partial_transition(e)));
        if !edges.is_empty() {
            atoms.push(Atom::Star(edges));
        }
    }
    PrerunIdealRep {
        src_bound: xi.graphs[0].in_mark.clone(),
        word: reduce_product(&Product(atoms)),
        tgt_bound: xi.graphs.last().unwrap().out_mark.clone(),
    }
}
