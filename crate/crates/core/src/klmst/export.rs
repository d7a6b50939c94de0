use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::graph::{validate_sequence, Edge, MarkedWitnessGraph, MwgSequence, WitnessGraph};
use crate::error::{Error, Result};
use crate::omega::OmegaVec;
use crate::vas::{Action, Vas};

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: String,
    value: OmegaVec,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    nodes: Vec<NodeJson>,
    edges: Vec<(String, String, String)>,
    root: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ItemJson {
    Graph {
        graph: GraphJson,
        in_mark: OmegaVec,
        out_mark: OmegaVec,
    },
    Link {
        link: String,
    },
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    dim: usize,
    actions: Vec<Action>,
    sequence: Vec<ItemJson>,
}

fn node_id(k: usize) -> String {
    format!("q{k}")
}

/// JSON document for a sequence, self-contained with the VAS.
pub fn sequence_to_json(xi: &MwgSequence, vas: &Vas) -> serde_json::Value {
    let mut items = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        if j > 0 {
            items.push(ItemJson::Link {
                link: vas.name(xi.links[j - 1]).to_string(),
            });
        }
        let g = &m.graph;
        items.push(ItemJson::Graph {
            graph: GraphJson {
                nodes: g
                    .nodes
                    .iter()
                    .enumerate()
                    .map(|(k, v)| NodeJson {
                        id: node_id(k),
                        value: v.clone(),
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| {
                        (
                            node_id(e.src),
                            vas.name(e.action).to_string(),
                            node_id(e.dst),
                        )
                    })
                    .collect(),
                root: node_id(g.root),
            },
            in_mark: m.in_mark.clone(),
            out_mark: m.out_mark.clone(),
        });
    }
    let doc = SequenceJson {
        dim: vas.dim,
        actions: vas.actions.clone(),
        sequence: items,
    };
    serde_json::to_value(doc).expect("sequence serializes")
}

/// Parses and validates a sequence document.
pub fn sequence_from_json(text: &str) -> Result<(Vas, MwgSequence)> {
    let doc: SequenceJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let vas = Vas::new(doc.dim, doc.actions)?;
    let action = |name: &str| {
        vas.action_id(name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    };
    let mut graphs = Vec::new();
    let mut links = Vec::new();
    let alternation = || {
        Error::Malformed("graphs and links must alternate, starting and ending with a graph".into())
    };
    for item in doc.sequence {
        match item {
            ItemJson::Link { link } => {
                if links.len() + 1 != graphs.len() {
                    return Err(alternation());
                }
                links.push(action(&link)?);
            }
            ItemJson::Graph {
                graph,
                in_mark,
                out_mark,
            } => {
                if links.len() != graphs.len() && !(graphs.is_empty() && links.is_empty()) {
                    return Err(alternation());
                }
                let index = |id: &str| {
                    graph
                        .nodes
                        .iter()
                        .position(|n| n.id == id)
                        .ok_or_else(|| Error::Malformed(format!("unknown node `{id}`")))
                };
                let edges = graph
                    .edges
                    .iter()
                    .map(|(s, a, d)| {
                        Ok(Edge {
                            src: index(s)?,
                            action: action(a)?,
                            dst: index(d)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let root = index(&graph.root)?;
                graphs.push(MarkedWitnessGraph {
                    in_mark,
                    graph: WitnessGraph {
                        nodes: graph.nodes.into_iter().map(|n| n.value).collect(),
                        edges,
                        root,
                    },
                    out_mark,
                });
            }
        }
    }
    if graphs.is_empty() || links.len() + 1 != graphs.len() {
        return Err(alternation());
    }
    let xi = MwgSequence { graphs, links };
    if !validate_sequence(&xi, &vas) {
        return Err(Error::InvalidWitness(
            "not a well-formed marked witness graph sequence".into(),
        ));
    }
    Ok((vas, xi))
}

/// One cluster per witness graph, marks drawn as boxes outside it.
pub fn sequence_to_dot(xi: &MwgSequence, vas: &Vas) -> String {
    let mut s = String::from("digraph mwgs {\n  rankdir=LR;\n");
    for (j, m) in xi.graphs.iter().enumerate() {
        let g = &m.graph;
        let _ = writeln!(s, "  in{j} [shape=box, label=\"{}\"];", m.in_mark);
        let _ = writeln!(s, "  out{j} [shape=box, label=\"{}\"];", m.out_mark);
        let _ = writeln!(s, "  subgraph cluster_{j} {{\n    label=\"M{j}\";");
        for (k, v) in g.nodes.iter().enumerate() {
            let shape = if k == g.root {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(s, "    g{j}_{k} [shape={shape}, label=\"{v}\"];");
        }
        for e in &g.edges {
            let _ = writeln!(
                s,
                "    g{j}_{} -> g{j}_{} [label=\"{}\"];",
                e.src,
                e.dst,
                vas.name(e.action)
            );
        }
        s.push_str("  }\n");
        let _ = writeln!(s, "  in{j} -> g{j}_{} [style=dashed];", g.root);
        let _ = writeln!(s, "  g{j}_{} -> out{j} [style=dashed];", g.root);
        if j > 0 {
            let _ = writeln!(
                s,
                "  out{} -> in{j} [label=\"{}\"];",
                j - 1,
                vas.name(xi.links[j - 1])
            );
        }
    }
    s.push_str("}\n");
    s
}
