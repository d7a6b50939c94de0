//! Bounded exploration of local run sets c+u →σ c+v with (u,v) ranging
//! over a periodic set given by generators.
//!
//! The set of configurations met along such runs decides which components
//! stay bounded; computing it exactly is as hard as reachability, so this
//! explorer observes it under explicit bounds and reports a component as
//! bounded when its observed values no longer change between half and full
//! bounds. The `truncated` flag tells whether any bound was hit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ideals::PartialTransition;
use crate::omega::{project, OmegaVec};
use crate::oracle::run_skeleton;
use crate::vas::{Config, Vas};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSummary {
    /// Components observed to stay bounded (0-based).
    pub f_gamma: Vec<usize>,
    pub s_gamma: OmegaVec,
    pub s_in: OmegaVec,
    pub s_out: OmegaVec,
    pub f_in: Vec<usize>,
    pub f_out: Vec<usize>,
    pub states: Vec<OmegaVec>,
    pub edges: Vec<PartialTransition>,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalBounds {
    pub max_norm: u64,
    pub max_len: usize,
    pub max_coeff: u64,
}

struct Observation {
    configs: BTreeSet<Config>,
    transitions: BTreeSet<(Config, usize, Config)>,
    truncated: bool,
}

fn shifted(c: &[u64], u: &[u64]) -> Config {
    c.iter().zip(u).map(|(a, b)| a + b).collect()
}

fn observe(vas: &Vas, c: &[u64], gens: &[(Config, Config)], b: LocalBounds) -> Observation {
    let d = c.len();
    let mut obs = Observation {
        configs: BTreeSet::new(),
        transitions: BTreeSet::new(),
        truncated: false,
    };
    let mut coeffs = vec![0u64; gens.len()];
    loop {
        let mut u = vec![0u64; d];
        let mut v = vec![0u64; d];
        for (g, &k) in gens.iter().zip(&coeffs) {
            for i in 0..d {
                u[i] += k * g.0[i];
                v[i] += k * g.1[i];
            }
        }
        let sk = run_skeleton(vas, &shifted(c, &u), &shifted(c, &v), b.max_norm, b.max_len);
        obs.truncated |= sk.truncated;
        if sk.connected {
            obs.configs.extend(sk.configs);
            obs.transitions.extend(sk.transitions);
        }
        // odometer over coefficient vectors
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                return obs;
            }
            if coeffs[pos] < b.max_coeff {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}

/// Observes the local run set of `c` with periodic set ℕ·`generators`.
///
/// Every generator must first be connected by a run within the bounds.
pub fn explore_local(
    vas: &Vas,
    c: &[u64],
    generators: &[(Config, Config)],
    bounds: LocalBounds,
) -> Result<LocalSummary> {
    let d = c.len();
    for (index, (u, v)) in generators.iter().enumerate() {
        if u.len() != d || v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: u.len().max(v.len()),
            });
        }
        let sk = run_skeleton(
            vas,
            &shifted(c, u),
            &shifted(c, v),
            bounds.max_norm,
            bounds.max_len,
        );
        if !sk.connected {
            return Err(Error::GeneratorNotValidated { index });
        }
    }
    let full = observe(vas, c, generators, bounds);
    let half = observe(
        vas,
        c,
        generators,
        LocalBounds {
            max_norm: bounds.max_norm / 2,
            max_len: bounds.max_len / 2,
            max_coeff: bounds.max_coeff / 2,
        },
    );
    let values =
        |o: &Observation, i: usize| -> BTreeSet<u64> { o.configs.iter().map(|q| q[i]).collect() };
    let f_in: Vec<usize> = (0..d)
        .filter(|&i| generators.iter().all(|(u, _)| u[i] == 0))
        .collect();
    let f_out: Vec<usize> = (0..d)
        .filter(|&i| generators.iter().all(|(_, v)| v[i] == 0))
        .collect();
    let f_gamma: Vec<usize> = (0..d)
        .filter(|&i| values(&full, i) == values(&half, i))
        .filter(|i| f_in.contains(i) && f_out.contains(i))
        .collect();
    let cv = OmegaVec::from_finite(c);
    let states: BTreeSet<OmegaVec> = full
        .configs
        .iter()
        .map(|q| project(&OmegaVec::from_finite(q), &f_gamma))
        .collect();
    let edges: BTreeSet<PartialTransition> = full
        .transitions
        .iter()
        .map(|(p, a, q)| PartialTransition {
            src: project(&OmegaVec::from_finite(p), &f_gamma),
            action: *a,
            dst: project(&OmegaVec::from_finite(q), &f_gamma),
        })
        .collect();
    Ok(LocalSummary {
        s_gamma: project(&cv, &f_gamma),
        s_in: project(&cv, &f_in),
        s_out: project(&cv, &f_out),
        f_gamma,
        f_in,
        f_out,
        states: states.into_iter().collect(),
        edges: edges.into_iter().collect(),
        truncated: full.truncated,
    })
}
