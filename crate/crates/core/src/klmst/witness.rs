use super::graph::{MwgSequence, WitnessGraph};
use super::system::PerfectData;
use crate::error::Result;
use crate::omega::Nat;
use crate::vas::{validate_run, ActionId, Prerun, Run, Vas};

/// Edge indices of the walk from the root labelled by `word`; destinations
/// are determined by the source node and the action.
fn trace_edges(g: &WitnessGraph, word: &[ActionId]) -> Option<Vec<usize>> {
    let mut v = g.root;
    let mut out = Vec::with_capacity(word.len());
    for &a in word {
        let e = g.edges.iter().position(|e| e.src == v && e.action == a)?;
        out.push(e);
        v = g.edges[e].dst;
    }
    Some(out)
}

/// A closed walk on the root using edge `e` exactly `counts[e]` times.
/// Counts must be balanced and their support connected to the root.
fn euler_cycle(g: &WitnessGraph, counts: &[u64]) -> Option<Vec<ActionId>> {
    let total: u64 = counts.iter().sum();
    let mut balance = vec![0i64; g.nodes.len()];
    for (e, &k) in g.edges.iter().zip(counts) {
        balance[e.src] -= k as i64;
        balance[e.dst] += k as i64;
    }
    if balance.iter().any(|&b| b != 0) {
        return None;
    }
    let mut left = counts.to_vec();
    let mut out_edges = vec![Vec::new(); g.nodes.len()];
    for (k, e) in g.edges.iter().enumerate() {
        out_edges[e.src].push(k);
    }
    let mut cursor = vec![0usize; g.nodes.len()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(g.root, None)];
    let mut circuit = Vec::with_capacity(total as usize);
    while let Some(&(v, via)) = stack.last() {
        while cursor[v] < out_edges[v].len() && left[out_edges[v][cursor[v]]] == 0 {
            cursor[v] += 1;
        }
        if cursor[v] < out_edges[v].len() {
            let k = out_edges[v][cursor[v]];
            left[k] -= 1;
            stack.push((g.edges[k].dst, Some(k)));
        } else {
            stack.pop();
            if let Some(k) = via {
                circuit.push(g.edges[k].action);
            }
        }
    }
    circuit.reverse();
    (circuit.len() as u64 == total).then_some(circuit)
}

fn parikh(n_edges: usize, path: &[usize]) -> Vec<u64> {
    let mut p = vec![0u64; n_edges];
    for &e in path {
        p[e] += 1;
    }
    p
}

fn runnable(vas: &Vas, source: &[u64], label: &[ActionId]) -> bool {
    let mut c: Vec<i64> = source.iter().map(|&x| x as i64).collect();
    label.iter().all(|&a| {
        for (x, d) in c.iter_mut().zip(vas.delta(a)) {
            *x += d;
        }
        c.iter().all(|&x| x >= 0)
    })
}

/// Reorders a runnable label towards the least action ids first, by
/// adjacent swaps that keep every intermediate configuration in ℕ^d.
/// The Parikh image and both endpoints are unchanged.
pub fn sort_label(vas: &Vas, source: &[u64], label: &mut [ActionId]) {
    // prefix[k] is the configuration before letter k
    let mut prefix: Vec<Vec<i64>> = vec![source.iter().map(|&x| x as i64).collect()];
    for &a in label.iter() {
        let next = prefix
            .last()
            .unwrap()
            .iter()
            .zip(vas.delta(a))
            .map(|(x, d)| x + d)
            .collect();
        prefix.push(next);
    }
    for k in 1..label.len() {
        let mut p = k;
        while p > 0 && label[p] < label[p - 1] {
            let moved: Vec<i64> = prefix[p - 1]
                .iter()
                .zip(vas.delta(label[p]))
                .map(|(x, d)| x + d)
                .collect();
            if moved.iter().any(|&x| x < 0) {
                break;
            }
            label.swap(p - 1, p);
            prefix[p] = moved;
            p -= 1;
        }
    }
}

/// Labels up to this length are put in sorted form.
const SORT_LIMIT: usize = 20_000;

/// Upper bound on the length of any candidate run tried.
pub const MAX_WITNESS_LEN: u64 = 4_000_000;

/// A run of a perfect sequence, assembled per graph as
/// `pump⁺ⁿ · cycleⁿ · base · pump⁻ⁿ` for growing `n` and checked by
/// simulation. `None` if no candidate within the length cap works.
pub fn extract_witness(xi: &MwgSequence, data: &PerfectData, vas: &Vas) -> Result<Option<Run>> {
    let layout = &data.layout;
    let Some(base) = data.queries.feasible() else {
        return Ok(None);
    };
    let mut wanted = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        wanted.extend((0..m.graph.edges.len()).map(|e| layout.psi(j, e)));
        for i in 0..layout.dim() {
            if m.in_mark.get(i) == Nat::Omega {
                wanted.push(layout.x(j, i));
            }
            if m.out_mark.get(i) == Nat::Omega {
                wanted.push(layout.y(j, i));
            }
        }
    }
    let period = if wanted.is_empty() {
        vec![0; base.len()]
    } else {
        match data.queries.period(&wanted) {
            Some(p) => p,
            None => return Ok(None),
        }
    };
    // per graph: pump edge counts, then the scale making the period
    // dominate both pumps on every edge
    let mut scale = 1u64;
    let mut pumps = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        let g = &m.graph;
        let fwd = trace_edges(g, &data.forward[j].actions);
        let bwd = trace_edges(g, &data.backward[j].actions);
        let (Some(fwd), Some(bwd)) = (fwd, bwd) else {
            return Ok(None);
        };
        let pf = parikh(g.edges.len(), &fwd);
        let pb = parikh(g.edges.len(), &bwd);
        for e in 0..g.edges.len() {
            let h = period[layout.psi(j, e)];
            scale = scale.max((pf[e] + pb[e] + 1).div_ceil(h));
        }
        pumps.push((pf, pb));
    }
    let mut cycles = Vec::new();
    let mut bases = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        let g = &m.graph;
        let (pf, pb) = &pumps[j];
        let mid: Vec<u64> = (0..g.edges.len())
            .map(|e| scale * period[layout.psi(j, e)] - pf[e] - pb[e])
            .collect();
        let full: Vec<u64> = (0..g.edges.len())
            .map(|e| base[layout.psi(j, e)] + scale * period[layout.psi(j, e)])
            .collect();
        let (Some(c), Some(w)) = (euler_cycle(g, &mid), euler_cycle(g, &full)) else {
            return Ok(None);
        };
        cycles.push(c);
        bases.push(w);
    }
    let source = &xi.graphs[0]
        .in_mark
        .to_config()
        .expect("top-level input mark is finite");
    let target = xi
        .graphs
        .last()
        .unwrap()
        .out_mark
        .to_config()
        .expect("top-level output mark is finite");
    let per_n: u64 = (0..xi.graphs.len())
        .map(|j| {
            (data.forward[j].actions.len() + cycles[j].len() + data.backward[j].actions.len())
                as u64
        })
        .sum();
    let fixed: u64 = bases.iter().map(|w| w.len() as u64).sum::<u64>() + xi.links.len() as u64;
    let candidates = (0..=16u64).chain((5..=20).map(|k| 1u64 << k));
    for n in candidates {
        if fixed + n * per_n > MAX_WITNESS_LEN {
            break;
        }
        let mut label = Vec::new();
        for j in 0..xi.graphs.len() {
            if j > 0 {
                label.push(xi.links[j - 1]);
            }
            for _ in 0..n {
                label.extend(&data.forward[j].actions);
            }
            for _ in 0..n {
                label.extend(&cycles[j]);
            }
            label.extend(&bases[j]);
            for _ in 0..n {
                label.extend(&data.backward[j].actions);
            }
        }
        if !runnable(vas, source, &label) {
            continue;
        }
        if label.len() <= SORT_LIMIT {
            sort_label(vas, source, &mut label);
        }
        if let Ok(run) = Prerun::from_label(vas, source, &label) {
            if run.target == target && validate_run(&run, vas) {
                return Ok(Some(run));
            }
        }
    }
    Ok(None)
}
