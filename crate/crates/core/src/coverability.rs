//! Karp–Miller covers of witness graphs read as VAS with states, and the
//! pumpability and boundedness queries built on them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::klmst::{MarkedWitnessGraph, WitnessGraph};
use crate::omega::{Nat, OmegaVec};
use crate::vas::{ActionId, Vas};

/// A finite automaton whose transitions carry VAS actions. Components
/// outside `counters` are determined by the state.
#[derive(Clone, Debug)]
pub struct StateVas {
    pub states: usize,
    pub edges: Vec<(usize, ActionId, usize)>,
    pub counters: Vec<usize>,
    pub deltas: Vec<Vec<i64>>,
}

impl StateVas {
    pub fn from_graph(g: &WitnessGraph, vas: &Vas) -> Self {
        let root = g.root_value();
        StateVas {
            states: g.nodes.len(),
            edges: g.edges.iter().map(|e| (e.src, e.action, e.dst)).collect(),
            counters: (0..root.dim())
                .filter(|&i| root.get(i).is_omega())
                .collect(),
            deltas: vas.actions.iter().map(|a| a.delta.clone()).collect(),
        }
    }

    /// Edges reversed and deltas negated.
    pub fn reversed(&self) -> Self {
        StateVas {
            states: self.states,
            edges: self.edges.iter().map(|&(p, a, q)| (q, a, p)).collect(),
            counters: self.counters.clone(),
            deltas: self
                .deltas
                .iter()
                .map(|d| d.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    fn out_edges(&self, q: usize) -> impl Iterator<Item = &(usize, ActionId, usize)> {
        self.edges.iter().filter(move |e| e.0 == q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverNode {
    pub state: usize,
    pub value: OmegaVec,
    pub parent: Option<usize>,
    pub action: Option<ActionId>,
    pub accelerated: bool,
}

#[derive(Clone, Debug)]
pub struct KmTree {
    pub nodes: Vec<CoverNode>,
}

const KM_NODE_LIMIT: usize = 2_000_000;

/// Karp–Miller tree from `(state, value)`.
///
/// A node equal to an ancestor at the same state is a leaf; a node
/// strictly above an ancestor at the same state gets the strictly larger
/// components lifted to ω.
pub fn km_tree(g: &StateVas, init: (usize, &OmegaVec)) -> Result<KmTree> {
    let mut nodes = vec![CoverNode {
        state: init.0,
        value: init.1.clone(),
        parent: None,
        action: None,
        accelerated: false,
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        let ancestors = |mut k: Option<usize>, nodes: &[CoverNode]| {
            let mut out = Vec::new();
            while let Some(i) = k {
                out.push(i);
                k = nodes[i].parent;
            }
            out
        };
        let anc = ancestors(nodes[n].parent, &nodes);
        if anc
            .iter()
            .any(|&a| nodes[a].state == nodes[n].state && nodes[a].value == nodes[n].value)
        {
            continue;
        }
        let mut chain = anc;
        chain.insert(0, n);
        for &(_, a, q) in g.out_edges(nodes[n].state) {
            let Some(mut value) = nodes[n].value.add_delta(&g.deltas[a]) else {
                continue;
            };
            let mut accelerated = false;
            for &c in &chain {
                if nodes[c].state == q && nodes[c].value.leq(&value) && nodes[c].value != value {
                    for i in 0..value.dim() {
                        if nodes[c].value.get(i) < value.get(i) && !value.get(i).is_omega() {
                            value.set(i, Nat::Omega);
                            accelerated = true;
                        }
                    }
                }
            }
            nodes.push(CoverNode {
                state: q,
                value,
                parent: Some(n),
                action: Some(a),
                accelerated,
            });
            if nodes.len() > KM_NODE_LIMIT {
                return Err(Error::BudgetExceeded("Karp–Miller tree too large".into()));
            }
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(KmTree { nodes })
}

/// Maximal ω-markings per state of the Karp–Miller tree.
pub fn km_cover(g: &StateVas, init: (usize, &OmegaVec)) -> Result<BTreeMap<usize, Vec<OmegaVec>>> {
    Ok(km_tree(g, init)?.maximal())
}

impl KmTree {
    pub fn maximal(&self) -> BTreeMap<usize, Vec<OmegaVec>> {
        let mut out: BTreeMap<usize, Vec<OmegaVec>> = BTreeMap::new();
        for node in &self.nodes {
            let set = out.entry(node.state).or_default();
            if set.iter().any(|v| node.value.leq(v)) {
                continue;
            }
            set.retain(|v| !v.leq(&node.value));
            set.push(node.value.clone());
        }
        for set in out.values_mut() {
            set.sort();
        }
        out
    }

    pub fn to_dot(&self, vas: &Vas) -> String {
        let mut s = String::from("digraph km {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let style = if n.accelerated {
                ", style=bold, color=red"
            } else {
                ""
            };
            let _ = writeln!(s, "  n{i} [label=\"q{} {}\"{style}];", n.state, n.value);
            if let (Some(p), Some(a)) = (n.parent, n.action) {
                let _ = writeln!(s, "  n{p} -> n{i} [label=\"{}\"];", vas.name(a));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub actions: Vec<ActionId>,
    pub states: Vec<usize>,
}

const COVER_SEARCH_LIMIT: usize = 500_000;

/// A concrete path from `init` to a value at `target.0` dominating
/// `target.1`. Components that are ω in `init` stay ω; a target may only
/// ask for ω where `init` already has it.
pub fn coverable(
    g: &StateVas,
    init: (usize, &OmegaVec),
    target: (usize, &OmegaVec),
) -> Result<Option<PathWitness>> {
    let cover = km_cover(g, init)?;
    let hit = cover
        .get(&target.0)
        .is_some_and(|vs| vs.iter().any(|v| target.1.leq(v)));
    if !hit {
        return Ok(None);
    }
    // breadth-first search on concrete values, pruning dominated entries
    let mut seen: Vec<Vec<OmegaVec>> = vec![Vec::new(); g.states];
    let mut parent: Vec<(usize, ActionId)> = Vec::new();
    let mut entries: Vec<(usize, OmegaVec)> = vec![(init.0, init.1.clone())];
    parent.push((usize::MAX, 0));
    seen[init.0].push(init.1.clone());
    let mut head = 0;
    while head < entries.len() {
        let (q, v) = entries[head].clone();
        if q == target.0 && target.1.leq(&v) {
            let mut actions = Vec::new();
            let mut states = vec![q];
            let mut k = head;
            while parent[k].0 != usize::MAX {
                actions.push(parent[k].1);
                k = parent[k].0;
                states.push(entries[k].0);
            }
            actions.reverse();
            states.reverse();
            return Ok(Some(PathWitness { actions, states }));
        }
        for &(_, a, r) in g.out_edges(q) {
            if let Some(w) = v.add_delta(&g.deltas[a]) {
                if seen[r].iter().any(|s| w.leq(s)) {
                    continue;
                }
                seen[r].push(w.clone());
                entries.push((r, w));
                parent.push((head, a));
            }
        }
        head += 1;
        if entries.len() > COVER_SEARCH_LIMIT {
            return Err(Error::BudgetExceeded("coverability witness search".into()));
        }
    }
    Ok(None)
}

/// A cycle label on the root together with its total effect.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PumpWord {
    pub actions: Vec<ActionId>,
    pub effect: Vec<i64>,
}

fn effect(vas: &Vas, actions: &[ActionId]) -> Vec<i64> {
    let mut e = vec![0i64; vas.dim];
    for &a in actions {
        for (x, d) in e.iter_mut().zip(vas.delta(a)) {
            *x += d;
        }
    }
    e
}

fn bumped(mark: &OmegaVec, comps: &[usize]) -> OmegaVec {
    let mut t = mark.clone();
    for &i in comps {
        if let Nat::Fin(n) = t.get(i) {
            t.set(i, Nat::Fin(n + 1));
        }
    }
    t
}

/// A cycle on the root, runnable from the input mark, that strictly
/// increases every component the mark fixes but the graph leaves free.
pub fn pumpable_forward(m: &MarkedWitnessGraph, vas: &Vas) -> Result<Option<PumpWord>> {
    let extra = m.in_extra();
    if extra.is_empty() {
        return Ok(Some(PumpWord {
            actions: Vec::new(),
            effect: vec![0; vas.dim],
        }));
    }
    let g = StateVas::from_graph(&m.graph, vas);
    let root = m.graph.root;
    let target = bumped(&m.in_mark, &extra);
    Ok(
        coverable(&g, (root, &m.in_mark), (root, &target))?.map(|w| PumpWord {
            effect: effect(vas, &w.actions),
            actions: w.actions,
        }),
    )
}

/// The mirror of [`pumpable_forward`]: a cycle on the root ending in the
/// output mark from a configuration strictly larger on the components the
/// mark fixes but the graph leaves free.
pub fn pumpable_backward(m: &MarkedWitnessGraph, vas: &Vas) -> Result<Option<PumpWord>> {
    let extra = m.out_extra();
    if extra.is_empty() {
        return Ok(Some(PumpWord {
            actions: Vec::new(),
            effect: vec![0; vas.dim],
        }));
    }
    let g = StateVas::from_graph(&m.graph, vas).reversed();
    let root = m.graph.root;
    let target = bumped(&m.out_mark, &extra);
    Ok(
        coverable(&g, (root, &m.out_mark), (root, &target))?.map(|w| {
            let actions: Vec<ActionId> = w.actions.into_iter().rev().collect();
            PumpWord {
                effect: effect(vas, &actions),
                actions,
            }
        }),
    )
}

fn sup(cover: &BTreeMap<usize, Vec<OmegaVec>>, q: usize, i: usize) -> Nat {
    cover.get(&q).map_or(Nat::Fin(0), |vs| {
        vs.iter().map(|v| v.get(i)).max().unwrap_or(Nat::Fin(0))
    })
}

/// A component `i` free in the graph but fixed by a mark, together with a
/// bound `c` on it along every run of the marked graph. Configurations on
/// such runs lie below the forward cover from the input mark and below
/// the backward cover from the output mark.
pub fn bounded_component_certificate(m: &MarkedWitnessGraph, vas: &Vas) -> Result<(usize, u64)> {
    let g = StateVas::from_graph(&m.graph, vas);
    let root = m.graph.root;
    let fwd = km_cover(&g, (root, &m.in_mark))?;
    let bwd = km_cover(&g.reversed(), (root, &m.out_mark))?;
    let mut candidates = m.in_extra();
    candidates.extend(m.out_extra());
    candidates.sort();
    candidates.dedup();
    'comp: for &i in &candidates {
        let mut c = 0;
        for q in 0..m.graph.nodes.len() {
            match sup(&fwd, q, i).min(sup(&bwd, q, i)) {
                Nat::Fin(b) => c = c.max(b),
                Nat::Omega => continue 'comp,
            }
        }
        return Ok((i, c));
    }
    Err(Error::CertificateNotFound(format!(
        "no bounded component among {candidates:?} for {m}"
    )))
}
