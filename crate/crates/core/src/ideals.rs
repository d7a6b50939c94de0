//! Effective representations of the ideals the decomposition manipulates:
//! ω-vectors for configurations, partial transitions for transitions,
//! and products of atoms for words of transitions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::omega::{omega_leq, Nat, OmegaVec};
use crate::vas::{ActionId, Config, Prerun, Step, Vas};

/// A triple (src, action, dst) over ℕ_ω; denotes its downward closure.
///
/// Transition ideals are exactly the triples with dst = src + Δ(action)
/// under ω-arithmetic, see [`is_partial_transition`]. Link atoms of
/// sequence ideals may carry triples that do not satisfy this identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialTransition {
    pub src: OmegaVec,
    pub action: ActionId,
    pub dst: OmegaVec,
}

impl PartialTransition {
    pub fn leq(&self, other: &PartialTransition) -> bool {
        self.action == other.action
            && omega_leq(&self.src, &other.src)
            && omega_leq(&self.dst, &other.dst)
    }

    pub fn contains(&self, step: &Step) -> bool {
        self.action == step.action && self.src.contains(&step.src) && self.dst.contains(&step.dst)
    }

    pub fn all_omega(dim: usize, action: ActionId) -> Self {
        PartialTransition {
            src: OmegaVec::omega(dim),
            action,
            dst: OmegaVec::omega(dim),
        }
    }
}

impl fmt::Display for PartialTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, #{}, {})", self.src, self.action, self.dst)
    }
}

/// Checks dst = src + Δ(a) under ω-arithmetic with non-negative finite parts.
pub fn is_partial_transition(t: &PartialTransition, vas: &Vas) -> bool {
    t.action < vas.actions.len()
        && t.src.dim() == vas.dim
        && t.src.add_delta(vas.delta(t.action)).as_ref() == Some(&t.dst)
}

/// A downward-closed set of transitions, stored as a sorted antichain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DownSet(Vec<PartialTransition>);

impl DownSet {
    pub fn new() -> Self {
        DownSet(Vec::new())
    }

    pub fn from_elements(elems: impl IntoIterator<Item = PartialTransition>) -> Self {
        let mut d = DownSet::new();
        for e in elems {
            d.insert(e);
        }
        d
    }

    /// Inserts `t` unless already covered; drops elements `t` dominates.
    pub fn insert(&mut self, t: PartialTransition) -> bool {
        if self.0.iter().any(|e| t.leq(e)) {
            return false;
        }
        self.0.retain(|e| !e.leq(&t));
        let pos = self.0.binary_search(&t).unwrap_or_else(|p| p);
        self.0.insert(pos, t);
        true
    }

    pub fn elements(&self) -> &[PartialTransition] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn covers(&self, t: &PartialTransition) -> bool {
        self.0.iter().any(|e| t.leq(e))
    }

    pub fn contains_step(&self, s: &Step) -> bool {
        self.0.iter().any(|e| e.contains(s))
    }

    pub fn leq(&self, other: &DownSet) -> bool {
        self.0.iter().all(|e| other.covers(e))
    }
}

/// An atom: `Star(D)` is D*, `Single(I)` is I ∪ {ε}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Atom {
    Star(DownSet),
    Single(PartialTransition),
}

impl Atom {
    fn is_epsilon_only(&self) -> bool {
        matches!(self, Atom::Star(d) if d.is_empty())
    }

    fn admits(&self, s: &Step) -> bool {
        match self {
            Atom::Star(d) => d.contains_step(s),
            Atom::Single(t) => t.contains(s),
        }
    }
}

/// Language inclusion between atoms.
pub fn atom_leq(a1: &Atom, a2: &Atom) -> bool {
    match (a1, a2) {
        (Atom::Star(d1), Atom::Star(d2)) => d1.leq(d2),
        (Atom::Single(t), Atom::Star(d2)) => d2.covers(t),
        (Atom::Single(t1), Atom::Single(t2)) => t1.leq(t2),
        (Atom::Star(d1), Atom::Single(_)) => d1.is_empty(),
    }
}

pub fn atom_eq(a1: &Atom, a2: &Atom) -> bool {
    atom_leq(a1, a2) && atom_leq(a2, a1)
}

/// A product A₁⋯A_k of atoms; denotes an ideal of words of transitions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Product(pub Vec<Atom>);

impl Product {
    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }
}

/// Membership of a word in a product, by a left-to-right sweep over the
/// set of atom indices that may still consume letters.
pub fn word_in_product(word: &[Step], p: &Product) -> bool {
    let k = p.0.len();
    // active[j]: atoms before j are done, atom j has not been closed
    let mut active = vec![false; k + 1];
    active[0] = true;
    for s in word {
        let mut next = vec![false; k + 1];
        let mut reachable = false;
        for j in 0..k {
            reachable |= active[j];
            if !reachable {
                continue;
            }
            match &p.0[j] {
                Atom::Star(d) if d.contains_step(s) => next[j] = true,
                Atom::Single(t) if t.contains(s) => next[j + 1] = true,
                _ => {}
            }
        }
        active = next;
        if !active.iter().any(|&b| b) {
            return false;
        }
    }
    active.iter().any(|&b| b)
}

/// Ideal inclusion P1 ⊆ P2 by greedy absorption.
///
/// The first atom of P1 is matched against the first atom of P2 that
/// contains it; a Star of P2 keeps absorbing, a Single is used up.
pub fn product_leq(p1: &Product, p2: &Product) -> bool {
    let a: Vec<&Atom> = p1.0.iter().filter(|x| !x.is_epsilon_only()).collect();
    let b: Vec<&Atom> = p2.0.iter().collect();
    let (mut i, mut j) = (0, 0);
    while i < a.len() {
        if j == b.len() {
            return false;
        }
        if atom_leq(a[i], b[j]) {
            i += 1;
            if matches!(b[j], Atom::Single(_)) {
                j += 1;
            }
        } else {
            j += 1;
        }
    }
    true
}

pub fn product_eq(p1: &Product, p2: &Product) -> bool {
    product_leq(p1, p2) && product_leq(p2, p1)
}

/// Removes empty stars and atoms absorbed by an adjacent star, until no
/// rule applies. The result denotes the same ideal.
pub fn reduce_product(p: &Product) -> Product {
    let mut atoms: Vec<Atom> =
        p.0.iter()
            .filter(|a| !a.is_epsilon_only())
            .cloned()
            .collect();
    loop {
        let n = atoms.len();
        let victim = (0..n).find(|&j| {
            let right = j + 1 < n
                && matches!(atoms[j + 1], Atom::Star(_))
                && atom_leq(&atoms[j], &atoms[j + 1]);
            let left = j > 0
                && matches!(atoms[j - 1], Atom::Star(_))
                && atom_leq(&atoms[j], &atoms[j - 1]);
            right || left
        });
        match victim {
            Some(j) => {
                atoms.remove(j);
            }
            None => return Product(atoms),
        }
    }
}

/// Maximal ideals of ↓v ∖ ↑x: one candidate per component where x is
/// positive, with that component capped at x(i) − 1.
pub fn cu_vec(v: &OmegaVec, x: &[u64]) -> Vec<OmegaVec> {
    let mut out: Vec<OmegaVec> = Vec::new();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        let mut w = v.clone();
        let cap = Nat::Fin(xi - 1);
        if w.0[i] > cap {
            w.0[i] = cap;
        }
        if out.iter().any(|o| omega_leq(&w, o)) {
            continue;
        }
        out.retain(|o| !omega_leq(o, &w));
        out.push(w);
    }
    out
}

/// ↓src × P × ↓tgt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrerunIdealRep {
    pub src_bound: OmegaVec,
    pub word: Product,
    pub tgt_bound: OmegaVec,
}

impl PrerunIdealRep {
    /// The ideal of all preruns: ↓ω^d × (ω-transitions of every action)* × ↓ω^d.
    pub fn everything(vas: &Vas) -> Self {
        let d = vas.dim;
        PrerunIdealRep {
            src_bound: OmegaVec::omega(d),
            word: Product(vec![Atom::Star(DownSet::from_elements(
                (0..vas.actions.len()).map(|a| PartialTransition::all_omega(d, a)),
            ))]),
            tgt_bound: OmegaVec::omega(d),
        }
    }
}

pub fn prerun_ideal_contains(ideal: &PrerunIdealRep, rho: &Prerun) -> bool {
    ideal.src_bound.contains(&rho.source)
        && ideal.tgt_bound.contains(&rho.target)
        && word_in_product(&rho.steps, &ideal.word)
}

fn sample_below(v: &OmegaVec, budget: u64, rng: &mut ChaCha8Rng) -> Config {
    v.0.iter()
        .map(|n| match n {
            Nat::Fin(m) => rng.gen_range(0..=*m),
            Nat::Omega => rng.gen_range(0..=budget),
        })
        .collect()
}

/// A pseudo-random prerun of the ideal; ω entries are instantiated at most
/// `budget` and the word has at most `budget` letters.
pub fn sample_prerun(ideal: &PrerunIdealRep, budget: u64, seed: u64) -> Prerun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = sample_below(&ideal.src_bound, budget, &mut rng);
    let mut steps = Vec::new();
    let mut left = budget;
    let letter = |t: &PartialTransition, rng: &mut ChaCha8Rng| Step {
        src: sample_below(&t.src, budget, rng),
        action: t.action,
        dst: sample_below(&t.dst, budget, rng),
    };
    for atom in &ideal.word.0 {
        match atom {
            Atom::Star(d) if !d.is_empty() => {
                let n = if left == 0 {
                    0
                } else {
                    rng.gen_range(0..=left)
                };
                left -= n;
                for _ in 0..n {
                    let t = &d.elements()[rng.gen_range(0..d.elements().len())];
                    steps.push(letter(t, &mut rng));
                }
            }
            Atom::Single(t) => {
                if left > 0 && rng.gen_bool(0.5) {
                    left -= 1;
                    steps.push(letter(t, &mut rng));
                }
            }
            Atom::Star(_) => {}
        }
    }
    let target = sample_below(&ideal.tgt_bound, budget, &mut rng);
    Prerun {
        source,
        steps,
        target,
    }
}

impl Atom {
    /// Whether a single letter is admitted (used by tests and DOT export).
    pub fn admits_step(&self, s: &Step) -> bool {
        self.admits(s)
    }
}
