use std::collections::BTreeSet;
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::ideals::{is_partial_transition, PartialTransition};
use crate::omega::{Nat, OmegaVec};
use crate::ordinal::{natural_sum, GraphRank, Ordinal};
use crate::vas::{ActionId, Instance, Vas};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub action: ActionId,
    pub dst: usize,
}

/// A strongly connected graph of partial configurations sharing their
/// ω-positions, with a distinguished root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WitnessGraph {
    pub nodes: Vec<OmegaVec>,
    pub edges: Vec<Edge>,
    pub root: usize,
}

impl WitnessGraph {
    pub fn dim(&self) -> usize {
        self.nodes[self.root].dim()
    }

    pub fn root_value(&self) -> &OmegaVec {
        &self.nodes[self.root]
    }

    /// Components on which every node is finite.
    pub fn fixed(&self) -> Vec<usize> {
        self.root_value().support()
    }

    pub fn node_of(&self, value: &OmegaVec) -> Option<usize> {
        self.nodes.iter().position(|v| v == value)
    }

    pub fn partial_transition(&self, e: &Edge) -> PartialTransition {
        PartialTransition {
            src: self.nodes[e.src].clone(),
            action: e.action,
            dst: self.nodes[e.dst].clone(),
        }
    }

    pub fn is_strongly_connected(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.src, e.dst)).collect();
        scc(self.nodes.len(), &pairs).1 == 1
    }
}

/// A witness graph between an input and an output mark.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedWitnessGraph {
    pub in_mark: OmegaVec,
    pub graph: WitnessGraph,
    pub out_mark: OmegaVec,
}

impl MarkedWitnessGraph {
    pub fn rank(&self) -> GraphRank {
        let d = self.graph.dim() as u64;
        GraphRank::new(
            d - self.graph.fixed().len() as u64,
            self.graph.edges.len() as u64,
            2 * d - self.in_mark.finite_count() as u64 - self.out_mark.finite_count() as u64,
        )
    }

    /// Components finite in the input mark but free in the graph.
    pub fn in_extra(&self) -> Vec<usize> {
        let root = self.graph.root_value();
        self.in_mark
            .support()
            .into_iter()
            .filter(|&i| root.get(i).is_omega())
            .collect()
    }

    pub fn out_extra(&self) -> Vec<usize> {
        let root = self.graph.root_value();
        self.out_mark
            .support()
            .into_iter()
            .filter(|&i| root.get(i).is_omega())
            .collect()
    }
}

/// `M0 a1 M1 ... ak Mk`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MwgSequence {
    pub graphs: Vec<MarkedWitnessGraph>,
    pub links: Vec<ActionId>,
}

impl MwgSequence {
    pub fn rank(&self) -> Ordinal {
        self.graphs.iter().fold(Ordinal::zero(), |acc, m| {
            natural_sum(&acc, &Ordinal::omega_pow(m.rank()))
        })
    }

    pub fn dim(&self) -> usize {
        self.graphs[0].graph.dim()
    }
}

pub fn rank_sequence(xi: &MwgSequence) -> Ordinal {
    xi.rank()
}

/// One all-ω node carrying a self-loop per action, marked with the
/// instance endpoints.
pub fn initial_sequence(inst: &Instance) -> MwgSequence {
    let d = inst.dim();
    let graph = WitnessGraph {
        nodes: vec![OmegaVec::omega(d)],
        edges: (0..inst.vas.actions.len())
            .map(|a| Edge {
                src: 0,
                action: a,
                dst: 0,
            })
            .collect(),
        root: 0,
    };
    MwgSequence {
        graphs: vec![MarkedWitnessGraph {
            in_mark: OmegaVec::from_finite(&inst.source),
            graph,
            out_mark: OmegaVec::from_finite(&inst.target),
        }],
        links: Vec::new(),
    }
}

fn agrees_on(mark: &OmegaVec, root: &OmegaVec) -> bool {
    mark.dim() == root.dim()
        && (0..root.dim()).all(|i| root.get(i).is_omega() || mark.get(i) == root.get(i))
}

pub fn validate_graph(m: &MarkedWitnessGraph, vas: &Vas) -> bool {
    let g = &m.graph;
    if g.nodes.is_empty() || g.root >= g.nodes.len() || g.dim() != vas.dim {
        return false;
    }
    let mask = g.root_value().support_mask();
    if g.nodes
        .iter()
        .any(|v| v.dim() != vas.dim || v.support_mask() != mask)
    {
        return false;
    }
    let distinct: BTreeSet<&OmegaVec> = g.nodes.iter().collect();
    if distinct.len() != g.nodes.len() {
        return false;
    }
    let edges_ok = g.edges.iter().all(|e| {
        e.src < g.nodes.len()
            && e.dst < g.nodes.len()
            && e.action < vas.actions.len()
            && is_partial_transition(&g.partial_transition(e), vas)
    });
    edges_ok
        && g.is_strongly_connected()
        && agrees_on(&m.in_mark, g.root_value())
        && agrees_on(&m.out_mark, g.root_value())
}

pub fn validate_sequence(xi: &MwgSequence, vas: &Vas) -> bool {
    !xi.graphs.is_empty()
        && xi.links.len() + 1 == xi.graphs.len()
        && xi.links.iter().all(|&a| a < vas.actions.len())
        && xi.graphs.iter().all(|m| validate_graph(m, vas))
}

/// Strongly connected components: the component of each node and their
/// number, numbered in reverse topological order (sinks first).
pub fn scc(n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let comps = tarjan_scc(&g);
    let mut comp = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }
    (comp, comps.len())
}

impl fmt::Display for MarkedWitnessGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.in_mark)?;
        for (i, v) in self.graph.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if i == self.graph.root {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "; {} edges] {}", self.graph.edges.len(), self.out_mark)
    }
}

/// Copy of `v` with component `i` set to `n`.
pub(crate) fn with_component(v: &OmegaVec, i: usize, n: u64) -> OmegaVec {
    let mut w = v.clone();
    w.set(i, Nat::Fin(n));
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vas::tests::climb_drop;

    #[test]
    fn initial_sequence_of_climb_drop() {
        let inst = climb_drop();
        let xi = initial_sequence(&inst);
        assert!(validate_sequence(&xi, &inst.vas));
        let m = &xi.graphs[0];
        assert_eq!(m.graph.nodes, vec![OmegaVec::omega(2)]);
        assert_eq!(m.graph.edges.len(), 2);
        assert_eq!(m.in_mark, OmegaVec::from_finite(&[0, 2]));
        assert_eq!(m.out_mark, OmegaVec::from_finite(&[1, 0]));
        assert_eq!(xi.rank().to_string(), "w^(w^2*2+w*2)");
    }

    #[test]
    fn validation_rejects_broken_graphs() {
        let inst = climb_drop();
        let mut xi = initial_sequence(&inst);
        let m = &mut xi.graphs[0];
        // two isolated nodes: two components
        m.graph.nodes = vec![
            OmegaVec::from_finite(&[0, 0]),
            OmegaVec::from_finite(&[1, 1]),
        ];
        m.graph.edges = vec![Edge {
            src: 0,
            action: 0,
            dst: 1,
        }];
        m.in_mark = OmegaVec::from_finite(&[0, 0]);
        m.out_mark = OmegaVec::from_finite(&[0, 0]);
        assert!(!validate_sequence(&xi, &inst.vas));
        let mut xi = initial_sequence(&inst);
        let m = &mut xi.graphs[0];
        m.graph.nodes = vec![OmegaVec::from_finite(&[0, 0])];
        m.graph.edges.clear();
        m.in_mark = OmegaVec::from_finite(&[0, 1]);
        assert!(!validate_sequence(&xi, &inst.vas));
        xi.graphs[0].in_mark = OmegaVec::from_finite(&[0, 0]);
        xi.graphs[0].out_mark = OmegaVec::from_finite(&[0, 0]);
        assert!(validate_sequence(&xi, &inst.vas));
    }

    #[test]
    fn tarjan_orders_sinks_first() {
        let (comp, n) = scc(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]);
        assert_eq!(n, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert!(comp[2] < comp[0]);
        assert_eq!(scc(3, &[]).1, 3);
    }
}
