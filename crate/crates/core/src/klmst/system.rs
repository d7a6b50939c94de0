use serde::Serialize;

use super::graph::MwgSequence;
use crate::coverability::{pumpable_backward, pumpable_forward, PumpWord};
use crate::diophantine::{LinearQueries, NatLinearSystem};
use crate::error::Result;
use crate::omega::Nat;
use crate::vas::Vas;

/// The linear system of a sequence with its variable layout: per graph,
/// the entry configuration, the exit configuration and one count per edge.
#[derive(Clone, Debug)]
pub struct SequenceSystem {
    pub system: NatLinearSystem,
    dim: usize,
    x_base: Vec<usize>,
    y_base: Vec<usize>,
    psi_base: Vec<usize>,
}

impl SequenceSystem {
    pub fn x(&self, j: usize, i: usize) -> usize {
        self.x_base[j] + i
    }

    pub fn y(&self, j: usize, i: usize) -> usize {
        self.y_base[j] + i
    }

    pub fn psi(&self, j: usize, e: usize) -> usize {
        self.psi_base[j] + e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[allow(non_snake_case)]
pub fn build_L(xi: &MwgSequence, vas: &Vas) -> SequenceSystem {
    let d = vas.dim;
    let mut names = Vec::new();
    let (mut x_base, mut y_base, mut psi_base) = (Vec::new(), Vec::new(), Vec::new());
    for (j, m) in xi.graphs.iter().enumerate() {
        x_base.push(names.len());
        names.extend((0..d).map(|i| format!("x{j}_{}", i + 1)));
        y_base.push(names.len());
        names.extend((0..d).map(|i| format!("y{j}_{}", i + 1)));
        psi_base.push(names.len());
        names.extend((0..m.graph.edges.len()).map(|e| format!("psi{j}_{e}")));
    }
    let mut s = SequenceSystem {
        system: NatLinearSystem::with_names(names),
        dim: d,
        x_base,
        y_base,
        psi_base,
    };
    for (j, m) in xi.graphs.iter().enumerate() {
        let g = &m.graph;
        for q in 0..g.nodes.len() {
            let mut terms = Vec::new();
            for (e, edge) in g.edges.iter().enumerate() {
                if edge.dst == q {
                    terms.push((s.psi(j, e), 1));
                }
                if edge.src == q {
                    terms.push((s.psi(j, e), -1));
                }
            }
            if !terms.is_empty() {
                s.system.add_equation(&terms, 0);
            }
        }
        for i in 0..d {
            let mut terms = vec![(s.y(j, i), 1), (s.x(j, i), -1)];
            for (e, edge) in g.edges.iter().enumerate() {
                let delta = vas.delta(edge.action)[i];
                if delta != 0 {
                    terms.push((s.psi(j, e), -delta));
                }
            }
            s.system.add_equation(&terms, 0);
        }
        for i in 0..d {
            if let Nat::Fin(v) = m.in_mark.get(i) {
                s.system.add_equation(&[(s.x(j, i), 1)], v as i64);
            }
            if let Nat::Fin(v) = m.out_mark.get(i) {
                s.system.add_equation(&[(s.y(j, i), 1)], v as i64);
            }
        }
        if j + 1 < xi.graphs.len() {
            let a = xi.links[j];
            for i in 0..d {
                s.system
                    .add_equation(&[(s.x(j + 1, i), 1), (s.y(j, i), -1)], vas.delta(a)[i]);
            }
        }
    }
    s
}

/// Why a sequence is not perfect. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Defect {
    Infeasible,
    NotForwardPumpable(usize),
    NotBackwardPumpable(usize),
    InBounded {
        graph: usize,
        component: usize,
        bound: u64,
    },
    OutBounded {
        graph: usize,
        component: usize,
        bound: u64,
    },
    EdgeBounded {
        graph: usize,
        edge: usize,
        bound: u64,
    },
}

/// Everything the witness extraction needs from a successful check.
#[derive(Clone, Debug)]
pub struct PerfectData {
    pub layout: SequenceSystem,
    pub queries: LinearQueries,
    pub forward: Vec<PumpWord>,
    pub backward: Vec<PumpWord>,
}

#[derive(Clone, Debug)]
pub enum Perfectness {
    Perfect(Box<PerfectData>),
    Imperfect(Defect),
}

impl Perfectness {
    pub fn defect(&self) -> Option<&Defect> {
        match self {
            Perfectness::Perfect(_) => None,
            Perfectness::Imperfect(d) => Some(d),
        }
    }
}

/// Checks, in order: feasibility, forward pumps, backward pumps, input
/// bounds, output bounds, edge bounds; the first failure is reported.
pub fn is_perfect(xi: &MwgSequence, vas: &Vas, budget: usize) -> Result<Perfectness> {
    let layout = build_L(xi, vas);
    let solved = LinearQueries::new(&layout.system, budget)?;
    if solved.feasible().is_none() {
        return Ok(Perfectness::Imperfect(Defect::Infeasible));
    }
    let mut forward = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        match pumpable_forward(m, vas)? {
            Some(w) => forward.push(w),
            None => return Ok(Perfectness::Imperfect(Defect::NotForwardPumpable(j))),
        }
    }
    let mut backward = Vec::new();
    for (j, m) in xi.graphs.iter().enumerate() {
        match pumpable_backward(m, vas)? {
            Some(w) => backward.push(w),
            None => return Ok(Perfectness::Imperfect(Defect::NotBackwardPumpable(j))),
        }
    }
    for (j, m) in xi.graphs.iter().enumerate() {
        for i in 0..vas.dim {
            let v = layout.x(j, i);
            if m.in_mark.get(i).is_omega() && !solved.unbounded(v) {
                let bound = solved.max(v)?;
                return Ok(Perfectness::Imperfect(Defect::InBounded {
                    graph: j,
                    component: i,
                    bound,
                }));
            }
        }
    }
    for (j, m) in xi.graphs.iter().enumerate() {
        for i in 0..vas.dim {
            let v = layout.y(j, i);
            if m.out_mark.get(i).is_omega() && !solved.unbounded(v) {
                let bound = solved.max(v)?;
                return Ok(Perfectness::Imperfect(Defect::OutBounded {
                    graph: j,
                    component: i,
                    bound,
                }));
            }
        }
    }
    for (j, m) in xi.graphs.iter().enumerate() {
        for e in 0..m.graph.edges.len() {
            let v = layout.psi(j, e);
            if !solved.unbounded(v) {
                let bound = solved.max(v)?;
                return Ok(Perfectness::Imperfect(Defect::EdgeBounded {
                    graph: j,
                    edge: e,
                    bound,
                }));
            }
        }
    }
    Ok(Perfectness::Perfect(Box::new(PerfectData {
        layout,
        queries: solved,
        forward,
        backward,
    })))
}
