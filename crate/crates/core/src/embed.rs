//! The embedding order ⊴ on preruns and run amalgamation.

use crate::error::{Error, Result};
use crate::vas::{Config, Prerun, Run, Step};

/// Positions of the letters of the smaller word inside the larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub positions: Vec<usize>,
}

fn dominated(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

fn step_leq(s: &Step, t: &Step) -> bool {
    s.action == t.action && dominated(&s.src, &t.src) && dominated(&s.dst, &t.dst)
}

/// Decides ρ1 ⊴ ρ2 by leftmost-greedy matching of the words.
///
/// Greedy matching is complete here: matching a letter as early as possible
/// never removes options for the letters after it.
pub fn embeds(small: &Prerun, large: &Prerun) -> Option<EmbeddingWitness> {
    if !dominated(&small.source, &large.source) || !dominated(&small.target, &large.target) {
        return None;
    }
    let mut positions = Vec::with_capacity(small.steps.len());
    let mut next = 0;
    for s in &small.steps {
        let found = (next..large.steps.len()).find(|&p| step_leq(s, &large.steps[p]))?;
        positions.push(found);
        next = found + 1;
    }
    Some(EmbeddingWitness { positions })
}

/// Checks that `w` witnesses `small ⊴ large`.
pub fn check_witness(small: &Prerun, large: &Prerun, w: &EmbeddingWitness) -> bool {
    w.positions.len() == small.steps.len()
        && w.positions.windows(2).all(|p| p[0] < p[1])
        && w.positions.iter().all(|&p| p < large.steps.len())
        && dominated(&small.source, &large.source)
        && dominated(&small.target, &large.target)
        && small
            .steps
            .iter()
            .zip(&w.positions)
            .all(|(s, &p)| step_leq(s, &large.steps[p]))
}

fn sub(a: &[u64], b: &[u64]) -> Config {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[u64], b: &[u64]) -> Config {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn shift(steps: &[Step], by: &[u64]) -> Vec<Step> {
    steps
        .iter()
        .map(|s| Step {
            src: add(&s.src, by),
            action: s.action,
            dst: add(&s.dst, by),
        })
        .collect()
}

/// Splits a run ρ1 ⊒ ρ0 into the offsets v_0..v_{k+1} and the surplus
/// segments σ_0..σ_k around the images of ρ0's transitions.
fn split(base: &Run, big: &Run, w: &EmbeddingWitness) -> (Vec<Config>, Vec<Vec<Step>>) {
    let k = base.steps.len();
    let mut offsets = Vec::with_capacity(k + 2);
    let mut segments = Vec::with_capacity(k + 1);
    offsets.push(sub(&big.source, &base.source));
    let mut prev = 0;
    for (t, &p) in w.positions.iter().enumerate() {
        segments.push(big.steps[prev..p].to_vec());
        offsets.push(sub(&big.steps[p].src, &base.steps[t].src));
        prev = p + 1;
    }
    segments.push(big.steps[prev..].to_vec());
    offsets.push(sub(&big.target, &base.target));
    (offsets, segments)
}

/// Builds a run ρ3 with ρ1 ⊴ ρ3 and ρ2 ⊴ ρ3 from ρ0 ⊴ ρ1, ρ2.
///
/// With offsets v_t (from ρ1) and v'_t (from ρ2), ρ3 runs σ_t shifted by
/// v'_t, then σ'_t shifted by v_{t+1}, then ρ0's transition t+1 shifted by
/// v_{t+1} + v'_{t+1}. Its source is src(ρ0) + v_0 + v'_0.
pub fn amalgamate(
    rho0: &Run,
    rho1: &Run,
    rho2: &Run,
    w1: &EmbeddingWitness,
    w2: &EmbeddingWitness,
) -> Result<Run> {
    if !check_witness(rho0, rho1, w1) {
        return Err(Error::InvalidWitness("first witness".into()));
    }
    if !check_witness(rho0, rho2, w2) {
        return Err(Error::InvalidWitness("second witness".into()));
    }
    if !is_connected(rho0) || !is_connected(rho1) || !is_connected(rho2) {
        return Err(Error::InvalidWitness("amalgamation needs runs".into()));
    }
    let (v, sigma) = split(rho0, rho1, w1);
    let (vp, sigmap) = split(rho0, rho2, w2);
    let k = rho0.steps.len();
    let mut steps = Vec::new();
    for t in 0..=k {
        steps.extend(shift(&sigma[t], &vp[t]));
        steps.extend(shift(&sigmap[t], &v[t + 1]));
        if t < k {
            let off = add(&v[t + 1], &vp[t + 1]);
            let s = &rho0.steps[t];
            steps.push(Step {
                src: add(&s.src, &off),
                action: s.action,
                dst: add(&s.dst, &off),
            });
        }
    }
    Ok(Prerun {
        source: add(&add(&rho0.source, &v[0]), &vp[0]),
        steps,
        target: add(&add(&rho0.target, &v[k + 1]), &vp[k + 1]),
    })
}

/// Connectedness only (no VAS needed): consecutive steps chain.
fn is_connected(r: &Prerun) -> bool {
    if r.steps.is_empty() {
        return r.source == r.target;
    }
    let mut cur = &r.source;
    for s in &r.steps {
        if &s.src != cur {
            return false;
        }
        cur = &s.dst;
    }
    cur == &r.target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vas::{parse_instance, validate_run, Vas};

    fn climb_drop_vas() -> Vas {
        parse_instance("dim 2 / action a 1 1 / action b -1 -2 / init 0 0 / target 0 0")
            .unwrap()
            .vas
    }

    fn embedding_example() -> (Run, Run) {
        let vas = climb_drop_vas();
        let small = Prerun::from_label(&vas, &[1, 0], &[0]).unwrap();
        let large = Prerun::from_label(&vas, &[3, 3], &[1, 0, 1, 0]).unwrap();
        (small, large)
    }

    #[test]
    fn embedding_of_a_sample_pair() {
        let (small, large) = embedding_example();
        assert_eq!(large.target, vec![3, 1]);
        let w = embeds(&small, &large).unwrap();
        // second letter of the larger word (0-based position 1)
        assert_eq!(w.positions, vec![1]);
    }

    #[test]
    fn reflexive_and_length_bound() {
        let (small, large) = embedding_example();
        let w = embeds(&large, &large).unwrap();
        assert_eq!(w.positions, vec![0, 1, 2, 3]);
        assert!(embeds(&large, &small).is_none());
    }

    #[test]
    fn amalgamate_trivial() {
        let r = Prerun::empty(vec![3, 3]);
        let w = embeds(&r, &r).unwrap();
        let r3 = amalgamate(&r, &r, &r, &w, &w).unwrap();
        assert_eq!(r3, r);
    }

    #[test]
    fn amalgamate_climb_drop_over_empty_run() {
        let vas = climb_drop_vas();
        let climb_drop = Prerun::from_label(&vas, &[0, 2], &[0, 0, 0, 0, 1, 1, 1]).unwrap();
        let base = Prerun::empty(vec![0, 0]);
        let w = embeds(&base, &climb_drop).unwrap();
        let r3 = amalgamate(&base, &climb_drop, &climb_drop, &w, &w).unwrap();
        assert!(validate_run(&r3, &vas));
        assert!(embeds(&climb_drop, &r3).is_some());
        assert_eq!(r3.source, vec![0, 4]);
        assert_eq!(r3.target, vec![2, 0]);
    }

    #[test]
    fn amalgamate_single_transition_base() {
        let vas = climb_drop_vas();
        let (small, large) = embedding_example();
        let w = embeds(&small, &large).unwrap();
        let r3 = amalgamate(&small, &large, &large, &w, &w).unwrap();
        assert!(validate_run(&r3, &vas));
        assert!(embeds(&large, &r3).is_some());
        assert!(embeds(&small, &r3).is_some());
    }

    #[test]
    fn amalgamate_rejects_bad_witness() {
        let (small, large) = embedding_example();
        let bad = EmbeddingWitness { positions: vec![0] };
        assert!(matches!(
            amalgamate(&small, &large, &large, &bad, &bad),
            Err(Error::InvalidWitness(_))
        ));
    }
}
