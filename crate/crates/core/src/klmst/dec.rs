use std::collections::{BTreeMap, BTreeSet};

use super::graph::{scc, with_component, Edge, MarkedWitnessGraph, MwgSequence, WitnessGraph};
use super::system::Defect;
use crate::coverability::bounded_component_certificate;
use crate::error::{Error, Result};
use crate::omega::{Nat, OmegaVec};
use crate::vas::{ActionId, Vas};

/// Caps the number of sequences a single refinement may produce.
pub const DEFAULT_CHILD_LIMIT: usize = 20_000;

struct Chain {
    graphs: Vec<MarkedWitnessGraph>,
    links: Vec<ActionId>,
}

/// A graph whose walks between entry and exit nodes are to be covered by
/// chains of marked copies of its strongly connected components.
struct Unfolding {
    nodes: Vec<OmegaVec>,
    edges: Vec<Edge>,
    comp: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Unfolding {
    fn new(nodes: Vec<OmegaVec>, edges: Vec<Edge>) -> Self {
        let edges: Vec<Edge> = edges
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.src, e.dst)).collect();
        let (comp, count) = scc(nodes.len(), &pairs);
        let mut members = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            members[c].push(v);
        }
        Unfolding {
            nodes,
            edges,
            comp,
            members,
        }
    }

    fn internal(&self, e: &Edge) -> bool {
        self.comp[e.src] == self.comp[e.dst]
    }

    /// The component of `v` as a witness graph rooted at `v`.
    fn copy_rooted(&self, v: usize) -> WitnessGraph {
        let c = self.comp[v];
        let mem = &self.members[c];
        let pos = |u: usize| mem.binary_search(&u).unwrap();
        WitnessGraph {
            nodes: mem.iter().map(|&u| self.nodes[u].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| self.comp[e.src] == c && self.internal(e))
                .map(|e| Edge {
                    src: pos(e.src),
                    action: e.action,
                    dst: pos(e.dst),
                })
                .collect(),
            root: pos(v),
        }
    }

    /// Simple paths from `p` to `q` using only edges inside their component.
    fn simple_paths(
        &self,
        p: usize,
        q: usize,
        limit: usize,
    ) -> Result<Vec<(Vec<usize>, Vec<ActionId>)>> {
        let mut out = Vec::new();
        let mut nodes = vec![p];
        let mut acts = Vec::new();
        let mut on_path = vec![false; self.nodes.len()];
        on_path[p] = true;
        self.paths_from(q, &mut nodes, &mut acts, &mut on_path, &mut out, limit)?;
        Ok(out)
    }

    fn paths_from(
        &self,
        q: usize,
        nodes: &mut Vec<usize>,
        acts: &mut Vec<ActionId>,
        on_path: &mut [bool],
        out: &mut Vec<(Vec<usize>, Vec<ActionId>)>,
        limit: usize,
    ) -> Result<()> {
        let v = *nodes.last().unwrap();
        if v == q {
            out.push((nodes.clone(), acts.clone()));
            if out.len() > limit {
                return Err(Error::BudgetExceeded(
                    "too many simple paths in a refinement".into(),
                ));
            }
            return Ok(());
        }
        for e in self.edges.iter().filter(|e| e.src == v && self.internal(e)) {
            if on_path[e.dst] {
                continue;
            }
            on_path[e.dst] = true;
            nodes.push(e.dst);
            acts.push(e.action);
            self.paths_from(q, nodes, acts, on_path, out, limit)?;
            nodes.pop();
            acts.pop();
            on_path[e.dst] = false;
        }
        Ok(())
    }

    /// All chains covering walks from an entry node to an exit node.
    fn chains(
        &self,
        entries: &[(usize, OmegaVec)],
        exits: &BTreeMap<usize, OmegaVec>,
        limit: usize,
    ) -> Result<Vec<Chain>> {
        let mut out = Vec::new();
        for (p, mark) in entries {
            let mut acc = Chain {
                graphs: Vec::new(),
                links: Vec::new(),
            };
            self.walk(*p, mark.clone(), &mut acc, exits, &mut out, limit)?;
        }
        Ok(out)
    }

    fn walk(
        &self,
        p: usize,
        in_mark: OmegaVec,
        acc: &mut Chain,
        exits: &BTreeMap<usize, OmegaVec>,
        out: &mut Vec<Chain>,
        limit: usize,
    ) -> Result<()> {
        let c = self.comp[p];
        for &q in &self.members[c] {
            for (path, acts) in self.simple_paths(p, q, limit)? {
                let (g0, l0) = (acc.graphs.len(), acc.links.len());
                for (t, &v) in path.iter().enumerate() {
                    acc.graphs.push(MarkedWitnessGraph {
                        in_mark: if t == 0 {
                            in_mark.clone()
                        } else {
                            self.nodes[v].clone()
                        },
                        graph: self.copy_rooted(v),
                        out_mark: self.nodes[v].clone(),
                    });
                }
                acc.links.extend(&acts);
                if let Some(out_mark) = exits.get(&q) {
                    let mut graphs = acc.graphs.clone();
                    graphs.last_mut().unwrap().out_mark = out_mark.clone();
                    out.push(Chain {
                        graphs,
                        links: acc.links.clone(),
                    });
                    if out.len() > limit {
                        return Err(Error::BudgetExceeded(
                            "too many chains in a refinement".into(),
                        ));
                    }
                }
                for e in self
                    .edges
                    .iter()
                    .filter(|e| e.src == q && !self.internal(e))
                {
                    acc.links.push(e.action);
                    self.walk(e.dst, self.nodes[e.dst].clone(), acc, exits, out, limit)?;
                    acc.links.pop();
                }
                acc.graphs.truncate(g0);
                acc.links.truncate(l0);
            }
        }
        Ok(())
    }
}

fn splice(xi: &MwgSequence, j: usize, chain: Chain) -> MwgSequence {
    let mut graphs = xi.graphs[..j].to_vec();
    graphs.extend(chain.graphs);
    graphs.extend_from_slice(&xi.graphs[j + 1..]);
    let mut links = xi.links[..j].to_vec();
    links.extend(chain.links);
    links.extend_from_slice(&xi.links[j..]);
    MwgSequence { graphs, links }
}

fn values_up_to(mark: &OmegaVec, i: usize, c: u64) -> Vec<u64> {
    match mark.get(i) {
        Nat::Fin(v) if v <= c => vec![v],
        Nat::Fin(_) => Vec::new(),
        Nat::Omega => (0..=c).collect(),
    }
}

/// Refines graph `j` by tracking component `i`, known to stay within
/// `0..=c` along every run of the graph.
pub fn refine_bounded_component(
    xi: &MwgSequence,
    vas: &Vas,
    j: usize,
    i: usize,
    c: u64,
    limit: usize,
) -> Result<Vec<MwgSequence>> {
    let m = &xi.graphs[j];
    let g = &m.graph;
    let width = c as usize + 1;
    let idx = |q: usize, n: u64| q * width + n as usize;
    let mut nodes = Vec::with_capacity(g.nodes.len() * width);
    for q in &g.nodes {
        for n in 0..=c {
            nodes.push(with_component(q, i, n));
        }
    }
    let mut edges = Vec::new();
    for e in &g.edges {
        for n in 0..=c {
            let next = n as i64 + vas.delta(e.action)[i];
            if (0..=c as i64).contains(&next) {
                edges.push(Edge {
                    src: idx(e.src, n),
                    action: e.action,
                    dst: idx(e.dst, next as u64),
                });
            }
        }
    }
    let unfolding = Unfolding::new(nodes, edges);
    let entries: Vec<(usize, OmegaVec)> = values_up_to(&m.in_mark, i, c)
        .into_iter()
        .map(|n| (idx(g.root, n), with_component(&m.in_mark, i, n)))
        .collect();
    let exits: BTreeMap<usize, OmegaVec> = values_up_to(&m.out_mark, i, c)
        .into_iter()
        .map(|n| (idx(g.root, n), with_component(&m.out_mark, i, n)))
        .collect();
    let chains = unfolding.chains(&entries, &exits, limit)?;
    Ok(chains.into_iter().map(|ch| splice(xi, j, ch)).collect())
}

/// Replaces graph `j` by chains using edge `e` exactly `m` times, for
/// every `m` in `0..=c`.
pub fn refine_bounded_edge(
    xi: &MwgSequence,
    j: usize,
    e: usize,
    c: u64,
    limit: usize,
) -> Result<Vec<MwgSequence>> {
    let mw = &xi.graphs[j];
    let g = &mw.graph;
    let n = g.nodes.len();
    let cut = g.edges[e];
    let mut out = Vec::new();
    for m in 0..=c as usize {
        let mut nodes = Vec::with_capacity(n * (m + 1));
        let mut edges = Vec::new();
        for layer in 0..=m {
            nodes.extend(g.nodes.iter().cloned());
            for (k, edge) in g.edges.iter().enumerate() {
                if k != e {
                    edges.push(Edge {
                        src: layer * n + edge.src,
                        action: edge.action,
                        dst: layer * n + edge.dst,
                    });
                }
            }
            if layer < m {
                edges.push(Edge {
                    src: layer * n + cut.src,
                    action: cut.action,
                    dst: (layer + 1) * n + cut.dst,
                });
            }
        }
        let unfolding = Unfolding::new(nodes, edges);
        let entries = vec![(g.root, mw.in_mark.clone())];
        let exits = BTreeMap::from([(m * n + g.root, mw.out_mark.clone())]);
        for ch in unfolding.chains(&entries, &exits, limit)? {
            out.push(splice(xi, j, ch));
            if out.len() > limit {
                return Err(Error::BudgetExceeded(
                    "too many chains in a refinement".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// One copy per value `0..=c` of a bounded ω-component of a mark.
pub fn refine_bounded_mark(
    xi: &MwgSequence,
    j: usize,
    i: usize,
    c: u64,
    input: bool,
) -> Vec<MwgSequence> {
    (0..=c)
        .map(|n| {
            let mut child = xi.clone();
            let m = &mut child.graphs[j];
            let mark = if input {
                &mut m.in_mark
            } else {
                &mut m.out_mark
            };
            mark.set(i, Nat::Fin(n));
            child
        })
        .collect()
}

/// The refinement of an imperfect sequence, in canonical order and
/// without duplicates.
pub fn dec(xi: &MwgSequence, defect: &Defect, vas: &Vas, limit: usize) -> Result<Vec<MwgSequence>> {
    let children = match *defect {
        Defect::Infeasible => Vec::new(),
        Defect::NotForwardPumpable(j) | Defect::NotBackwardPumpable(j) => {
            let (i, c) = bounded_component_certificate(&xi.graphs[j], vas)?;
            refine_bounded_component(xi, vas, j, i, c, limit)?
        }
        Defect::InBounded {
            graph,
            component,
            bound,
        } => refine_bounded_mark(xi, graph, component, bound, true),
        Defect::OutBounded {
            graph,
            component,
            bound,
        } => refine_bounded_mark(xi, graph, component, bound, false),
        Defect::EdgeBounded { graph, edge, bound } => {
            refine_bounded_edge(xi, graph, edge, bound, limit)?
        }
    };
    let set: BTreeSet<MwgSequence> = children.into_iter().collect();
    Ok(set.into_iter().collect())
}
