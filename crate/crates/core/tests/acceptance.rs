//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Runs without the libtest harness so the report is always printed;
//! the process fails if any criterion fails.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vasreach::coverability::{coverable, km_cover, StateVas};
use vasreach::diophantine::{
    coord_max, coord_unbounded, hilbert, LinearQueries, NatLinearSystem, DEFAULT_BRANCH_BUDGET,
    DEFAULT_NODE_BUDGET,
};
use vasreach::embed::embeds;
use vasreach::ideals::{
    cu_vec, product_leq, reduce_product, sample_prerun, word_in_product, Atom, DownSet,
    PartialTransition, PrerunIdealRep, Product,
};
use vasreach::klmst::{
    is_perfect, klmst_solve, run_in_sequence, sequence_ideal, Edge, Limits, MarkedWitnessGraph,
    MwgSequence, Outcome, Perfectness, Solution, WitnessGraph,
};
use vasreach::local::{explore_local, LocalBounds};
use vasreach::omega::Nat::{Fin, Omega};
use vasreach::oracle::{bfs_oracle, OracleVerdict};
use vasreach::ordinal::ord_cmp;
use vasreach::vas::validate_run;
use vasreach::{Instance, Nat, OmegaVec, Prerun, Step, Vas};

const FAMILY_SEED: u64 = 0x5eed_0001;
const FAMILY_SIZE: usize = 120;
const FAMILY_STEPS: usize = 20_000;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn climb_drop() -> Instance {
    let vas = Vas::from_deltas(2, &[vec![1, 1], vec![-1, -2]]).unwrap();
    Instance::new(vas, vec![0, 2], vec![1, 0]).unwrap()
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Random instances: d ≤ 3, at most 4 actions with entries in −2..2,
/// endpoints of norm at most 3.
fn random_family() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    (0..FAMILY_SIZE)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let actions = rng.gen_range(1..=4);
            let deltas: Vec<Vec<i64>> = (0..actions)
                .map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let mut point = || (0..d).map(|_| rng.gen_range(0..=3)).collect::<Vec<u64>>();
            let (x, y) = (point(), point());
            Instance::new(Vas::from_deltas(d, &deltas).unwrap(), x, y).unwrap()
        })
        .collect()
}

struct Solved {
    inst: Instance,
    solution: Solution,
    oracle: OracleVerdict,
}

fn solve_family() -> Vec<Solved> {
    let limits = Limits {
        max_steps: FAMILY_STEPS,
        ..Limits::default()
    };
    random_family()
        .into_iter()
        .map(|inst| {
            let solution = klmst_solve(&inst, limits).expect("solver runs");
            let oracle = bfs_oracle(&inst, 12, 20);
            Solved {
                inst,
                solution,
                oracle,
            }
        })
        .collect()
}

fn climb_drop_end_to_end() -> Verdict {
    let inst = climb_drop();
    let start = Instant::now();
    let s = klmst_solve(&inst, Limits::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let steps = s.trace.steps.len();
    match &s.outcome {
        Outcome::Reachable { run, .. } => check(
            validate_run(run, &inst.vas)
                && run.target == inst.target
                && elapsed < Duration::from_secs(30)
                && steps < 10_000,
            format!(
                "REACHABLE via `{}`, {steps} steps, {elapsed:.2?}",
                run.label_string(&inst.vas)
            ),
        ),
        other => Err(format!("expected REACHABLE, got {other:?}")),
    }
}

fn infeasibility_pruning() -> Verdict {
    let vas = Vas::from_deltas(2, &[vec![1, 1], vec![-1, -2]]).unwrap();
    let inst = Instance::new(vas, vec![0, 0], vec![0, 1]).unwrap();
    let s = klmst_solve(&inst, Limits::default()).map_err(|e| e.to_string())?;
    let defects: Vec<String> = s
        .trace
        .steps
        .iter()
        .map(|t| format!("{:?}", t.defect))
        .collect();
    check(
        matches!(s.outcome, Outcome::Unreachable) && defects == ["Some(Infeasible)"],
        format!("outcome {:?}, trace defects {defects:?}", s.outcome),
    )
}

fn local_run_set_example() -> Verdict {
    let vas = Vas::from_deltas(3, &[vec![1, 1, -1], vec![-1, 0, 1]]).unwrap();
    let bounds = LocalBounds {
        max_norm: 8,
        max_len: 16,
        max_coeff: 6,
    };
    let s = explore_local(&vas, &[1, 0, 1], &[(vec![0, 0, 0], vec![0, 1, 0])], bounds)
        .map_err(|e| e.to_string())?;
    let expected_states = vec![
        OmegaVec(vec![Fin(0), Omega, Fin(2)]),
        OmegaVec(vec![Fin(1), Omega, Fin(1)]),
        OmegaVec(vec![Fin(2), Omega, Fin(0)]),
    ];
    let shape = s.f_gamma == [0, 2]
        && s.s_gamma == OmegaVec(vec![Fin(1), Omega, Fin(1)])
        && s.states == expected_states
        && s.edges.len() == 4
        && s.s_in == OmegaVec::from_finite(&[1, 0, 1])
        && s.s_out == OmegaVec(vec![Fin(1), Omega, Fin(1)]);
    let index = |v: &OmegaVec| s.states.iter().position(|q| q == v).unwrap();
    let graph = WitnessGraph {
        nodes: s.states.clone(),
        edges: s
            .edges
            .iter()
            .map(|t| Edge {
                src: index(&t.src),
                action: t.action,
                dst: index(&t.dst),
            })
            .collect(),
        root: index(&s.s_gamma),
    };
    let xi = MwgSequence {
        graphs: vec![MarkedWitnessGraph {
            in_mark: s.s_in.clone(),
            graph,
            out_mark: s.s_out.clone(),
        }],
        links: vec![],
    };
    let perfect = matches!(
        is_perfect(&xi, &vas, DEFAULT_BRANCH_BUDGET).map_err(|e| e.to_string())?,
        Perfectness::Perfect(_)
    );
    check(
        shape && perfect,
        format!(
            "F = {:?} (0-based), s = {}, {} states, {} edges, in {}, out {}, perfect {perfect}",
            s.f_gamma,
            s.s_gamma,
            s.states.len(),
            s.edges.len(),
            s.s_in,
            s.s_out
        ),
    )
}

fn rank_monotonicity(family: &[Solved]) -> Verdict {
    let mut edges = 0;
    let mut violations = 0;
    for f in family {
        let trace = &f.solution.trace;
        for (child, parent) in trace.parents.iter().enumerate() {
            if let Some(p) = parent {
                edges += 1;
                let (rc, rp) = (trace.sequences[child].rank(), trace.sequences[*p].rank());
                if ord_cmp(&rc, &rp) != std::cmp::Ordering::Less {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0 && family.len() >= 50,
        format!(
            "{} instances, {edges} refinements, {violations} violations",
            family.len()
        ),
    )
}

fn oracle_agreement(family: &[Solved]) -> Verdict {
    let (mut agree, mut disagree, mut exhausted, mut unsettled) = (0, 0, 0, 0);
    for f in family {
        let settled = match &f.oracle {
            OracleVerdict::Reachable(_) => Some(true),
            OracleVerdict::UnreachableCertified => Some(false),
            OracleVerdict::Unknown => None,
        };
        let answer = match &f.solution.outcome {
            Outcome::Reachable { run, .. } => {
                if !validate_run(run, &f.inst.vas)
                    || run.source != f.inst.source
                    || run.target != f.inst.target
                {
                    disagree += 1;
                    continue;
                }
                Some(true)
            }
            Outcome::Unreachable => Some(false),
            Outcome::Exhausted { .. } => None,
        };
        match (settled, answer) {
            (_, None) => exhausted += 1,
            (None, Some(_)) => unsettled += 1,
            (Some(a), Some(b)) if a == b => agree += 1,
            _ => disagree += 1,
        }
    }
    check(
        disagree == 0,
        format!("{agree} agree, {disagree} disagree, {exhausted} exhausted, {unsettled} unsettled by the oracle"),
    )
}

fn run_preservation(family: &[Solved]) -> Verdict {
    let (mut runs, mut snapshots, mut violations) = (0, 0, 0);
    for f in family {
        let OracleVerdict::Reachable(run) = &f.oracle else {
            continue;
        };
        runs += 1;
        let trace = &f.solution.trace;
        let mut memo: HashMap<usize, bool> = HashMap::new();
        trace.for_each_snapshot(|_, live| {
            snapshots += 1;
            let held = live.iter().any(|&id| {
                *memo
                    .entry(id)
                    .or_insert_with(|| run_in_sequence(run, &trace.sequences[id]))
            });
            if !held {
                violations += 1;
            }
        });
    }
    check(
        violations == 0,
        format!("{runs} runs over {snapshots} snapshots, {violations} violations"),
    )
}

fn brute_solutions(sys: &NatLinearSystem, cap: u64) -> Vec<Vec<u64>> {
    let n = sys.num_vars();
    let mut out = Vec::new();
    let mut z = vec![0u64; n];
    loop {
        if sys.is_solution(&z) {
            out.push(z.clone());
        }
        let mut k = 0;
        while k < n && z[k] == cap {
            z[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
        z[k] += 1;
    }
}

fn leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Whether `x` is a particular basis element plus a sum of homogeneous ones.
fn decomposes(
    x: &[u64],
    hom: &[Vec<u64>],
    part: &HashSet<Vec<u64>>,
    memo: &mut HashMap<Vec<u64>, bool>,
) -> bool {
    if part.contains(x) {
        return true;
    }
    if let Some(&r) = memo.get(x) {
        return r;
    }
    let r = hom.iter().any(|h| {
        leq(h, x) && {
            let rest: Vec<u64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            decomposes(&rest, hom, part, memo)
        }
    });
    memo.insert(x.to_vec(), r);
    r
}

fn hilbert_correctness() -> Verdict {
    const CAP: u64 = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(0x41b);
    let mut problems = Vec::new();
    let mut bounded_checked = 0;
    let systems = 100;
    for k in 0..systems {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=3);
        let mut sys = NatLinearSystem::new(n);
        for _ in 0..m {
            let terms: Vec<(usize, i64)> = (0..n).map(|j| (j, rng.gen_range(-2..=2))).collect();
            sys.add_equation(&terms, rng.gen_range(-2..=2));
        }
        let basis = match hilbert(&sys, DEFAULT_NODE_BUDGET) {
            Ok(b) => b,
            Err(e) => {
                problems.push(format!("system {k}: {e}"));
                continue;
            }
        };
        let zero = vec![0; n];
        let hom_ok = basis.hom.iter().all(|h| {
            h != &zero
                && sys
                    .matrix
                    .iter()
                    .all(|row| row.iter().zip(h).map(|(a, x)| a * *x as i64).sum::<i64>() == 0)
        });
        let part_ok = basis.part.iter().all(|p| sys.is_solution(p));
        let antichain = |vs: &[Vec<u64>]| {
            vs.iter()
                .enumerate()
                .all(|(i, a)| vs.iter().enumerate().all(|(j, b)| i == j || !leq(a, b)))
        };
        if !hom_ok || !part_ok || !antichain(&basis.hom) || !antichain(&basis.part) {
            problems.push(format!("system {k}: basis element invalid or comparable"));
            continue;
        }
        let part: HashSet<Vec<u64>> = basis.part.iter().cloned().collect();
        let mut memo = HashMap::new();
        let solutions = brute_solutions(&sys, CAP);
        if let Some(x) = solutions
            .iter()
            .find(|x| !decomposes(x, &basis.hom, &part, &mut memo))
        {
            problems.push(format!("system {k}: {x:?} does not decompose"));
            continue;
        }
        let queries = LinearQueries::new(&sys, DEFAULT_BRANCH_BUDGET).map_err(|e| e.to_string())?;
        if queries.feasible().is_some() != !basis.part.is_empty() {
            problems.push(format!(
                "system {k}: linear feasibility differs from the basis"
            ));
        }
        if basis.part.is_empty() {
            continue;
        }
        for i in 0..n {
            let unbounded = coord_unbounded(&basis, i);
            if unbounded != queries.unbounded(i) {
                problems.push(format!("system {k}: boundedness of z{i} differs"));
            }
            if unbounded {
                continue;
            }
            let max = coord_max(&basis, i).map_err(|e| e.to_string())?;
            let brute = solutions.iter().map(|x| x[i]).max().unwrap_or(0);
            let lp = queries.max(i).map_err(|e| e.to_string())?;
            bounded_checked += 1;
            // the box holds every solution once the bound fits inside it
            let box_ok = if max <= CAP {
                brute == max
            } else {
                brute <= max
            };
            if !box_ok || lp != max {
                problems.push(format!(
                    "system {k}: max z{i} basis {max}, brute {brute}, lp {lp}"
                ));
            }
        }
    }
    check(
        problems.is_empty(),
        format!(
            "{systems} systems, {bounded_checked} bounded maxima checked, {} problems {:?}",
            problems.len(),
            problems.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

/// Configurations reachable in a state VAS, restricted to values ≤ `cap`.
fn reachable_box(g: &StateVas, q0: usize, x0: &[u64], cap: u64) -> HashSet<(usize, Vec<u64>)> {
    let mut seen = HashSet::from([(q0, x0.to_vec())]);
    let mut stack = vec![(q0, x0.to_vec())];
    while let Some((q, x)) = stack.pop() {
        for &(p, a, r) in &g.edges {
            if p != q {
                continue;
            }
            let next: Option<Vec<u64>> = x
                .iter()
                .zip(&g.deltas[a])
                .map(|(&v, &d)| u64::try_from(v as i64 + d).ok().filter(|&w| w <= cap))
                .collect();
            if let Some(y) = next {
                if seen.insert((r, y.clone())) {
                    stack.push((r, y));
                }
            }
        }
    }
    seen
}

fn coverability_correctness() -> Verdict {
    const VALUES: u64 = 4;
    const EXPLORE: u64 = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0e);
    let (mut instances, mut queries, mut replays) = (0, 0, 0);
    let mut problems = Vec::new();
    for k in 0..200 {
        let states = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=2);
        let actions = rng.gen_range(1..=3);
        let deltas: Vec<Vec<i64>> = (0..actions)
            .map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let edges: Vec<(usize, usize, usize)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                (
                    rng.gen_range(0..states),
                    rng.gen_range(0..actions),
                    rng.gen_range(0..states),
                )
            })
            .collect();
        let g = StateVas {
            states,
            edges,
            counters: (0..d).collect(),
            deltas,
        };
        let x0: Vec<u64> = (0..d).map(|_| rng.gen_range(0..=VALUES)).collect();
        let init = OmegaVec::from_finite(&x0);
        let cover = km_cover(&g, (0, &init)).map_err(|e| e.to_string())?;
        let reach = reachable_box(&g, 0, &x0, EXPLORE);
        instances += 1;
        let mut v = vec![0u64; d];
        loop {
            for q in 0..states {
                queries += 1;
                let target = OmegaVec::from_finite(&v);
                let by_km = cover
                    .get(&q)
                    .is_some_and(|vs| vs.iter().any(|w| target.leq(w)));
                let by_search = reach.iter().any(|(r, y)| *r == q && leq(&v, y));
                if by_km != by_search {
                    problems.push(format!(
                        "instance {k}: state {q} value {v:?} km {by_km} search {by_search}"
                    ));
                }
                if by_km {
                    match coverable(&g, (0, &init), (q, &target)).map_err(|e| e.to_string())? {
                        Some(w) => {
                            replays += 1;
                            if !replay(&g, &x0, &w.actions, &w.states, q, &v) {
                                problems.push(format!(
                                    "instance {k}: witness for {v:?} at {q} does not replay"
                                ));
                            }
                        }
                        None => problems
                            .push(format!("instance {k}: no witness for covered {v:?} at {q}")),
                    }
                }
            }
            let mut i = 0;
            while i < d && v[i] == VALUES {
                v[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
            v[i] += 1;
        }
    }
    check(
        problems.is_empty(),
        format!("{instances} instances, {queries} queries, {replays} witnesses replayed, {} problems {:?}", problems.len(), problems.iter().take(3).collect::<Vec<_>>()),
    )
}

fn replay(
    g: &StateVas,
    x0: &[u64],
    actions: &[usize],
    states: &[usize],
    q: usize,
    v: &[u64],
) -> bool {
    if states.len() != actions.len() + 1 || states[0] != 0 || *states.last().unwrap() != q {
        return false;
    }
    let mut x: Vec<i64> = x0.iter().map(|&c| c as i64).collect();
    for (t, &a) in actions.iter().enumerate() {
        if !g.edges.contains(&(states[t], a, states[t + 1])) {
            return false;
        }
        for (c, d) in x.iter_mut().zip(&g.deltas[a]) {
            *c += d;
        }
        if x.iter().any(|&c| c < 0) {
            return false;
        }
    }
    x.iter().zip(v).all(|(&c, &w)| c >= w as i64)
}

fn random_nat(rng: &mut ChaCha8Rng) -> Nat {
    if rng.gen_bool(0.3) {
        Omega
    } else {
        Fin(rng.gen_range(0..=3))
    }
}

fn random_transition(rng: &mut ChaCha8Rng, vas: &Vas) -> PartialTransition {
    loop {
        let action = rng.gen_range(0..vas.actions.len());
        let src = OmegaVec((0..vas.dim).map(|_| random_nat(rng)).collect());
        if let Some(dst) = src.add_delta(vas.delta(action)) {
            return PartialTransition { src, action, dst };
        }
    }
}

fn random_product(rng: &mut ChaCha8Rng, vas: &Vas) -> Product {
    Product(
        (0..rng.gen_range(0..=4))
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Atom::Star(DownSet::from_elements(
                        (0..rng.gen_range(0..=2)).map(|_| random_transition(rng, vas)),
                    ))
                } else {
                    Atom::Single(random_transition(rng, vas))
                }
            })
            .collect(),
    )
}

/// A prerun below `rho`: letters dropped and values lowered at random.
fn shrink(rng: &mut ChaCha8Rng, rho: &Prerun) -> Prerun {
    let mut lower = |c: &Vec<u64>| {
        c.iter()
            .map(|&x| rng.gen_range(0..=x))
            .collect::<Vec<u64>>()
    };
    let source = lower(&rho.source);
    let target = lower(&rho.target);
    let kept: Vec<&Step> = rho.steps.iter().filter(|_| rng.gen_bool(0.6)).collect();
    let steps = kept
        .into_iter()
        .map(|s| Step {
            src: s.src.iter().map(|&x| rng.gen_range(0..=x)).collect(),
            action: s.action,
            dst: s.dst.iter().map(|&x| rng.gen_range(0..=x)).collect(),
        })
        .collect();
    Prerun {
        source,
        steps,
        target,
    }
}

fn ideal_algebra() -> Verdict {
    let mut problems = Vec::new();
    // cu_vec against membership on a box, for every v over {0..3, ω}² and x over {0..3}²
    let mut boxes = 0;
    let values: Vec<Nat> = (0..=3).map(Fin).chain([Omega]).collect();
    for &v0 in &values {
        for &v1 in &values {
            let v = OmegaVec(vec![v0, v1]);
            for x0 in 0..=3u64 {
                for x1 in 0..=3u64 {
                    let x = [x0, x1];
                    let out = cu_vec(&v, &x);
                    boxes += 1;
                    for c0 in 0..=6u64 {
                        for c1 in 0..=6u64 {
                            let c = [c0, c1];
                            let expected = v.contains(&c) && !leq(&x, &c);
                            let got = out.iter().any(|w| w.contains(&c));
                            if expected != got {
                                problems.push(format!("cu_vec {v} {x:?} at {c:?}"));
                            }
                        }
                    }
                    let incomparable = out
                        .iter()
                        .enumerate()
                        .all(|(i, a)| out.iter().enumerate().all(|(j, b)| i == j || !a.leq(b)));
                    if !incomparable {
                        problems.push(format!("cu_vec {v} {x:?} not an antichain"));
                    }
                }
            }
        }
    }
    // reduce_product keeps the denotation, starting with (a+b)*·b* = (a+b)*
    let vas = Vas::from_deltas(1, &[vec![1], vec![-1]]).unwrap();
    let a = PartialTransition::all_omega(1, 0);
    let b = PartialTransition::all_omega(1, 1);
    let ab = Atom::Star(DownSet::from_elements([a.clone(), b.clone()]));
    let pair = Product(vec![ab.clone(), Atom::Star(DownSet::from_elements([b]))]);
    let reduced = reduce_product(&pair);
    if reduced != Product(vec![ab.clone()])
        || !product_leq(&pair, &reduced)
        || !product_leq(&reduced, &pair)
    {
        problems.push(format!("(a+b)*b* reduced to {reduced:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea1);
    let wide = Vas::from_deltas(2, &[vec![1, 1], vec![-1, -2], vec![0, 1]]).unwrap();
    let mut products = 0;
    let mut pairs = 0;
    for _ in 0..500 {
        let vas_k = if rng.gen_bool(0.5) { &vas } else { &wide };
        let p = random_product(&mut rng, vas_k);
        let r = reduce_product(&p);
        products += 1;
        if !product_leq(&p, &r) || !product_leq(&r, &p) {
            problems.push(format!("reduce_product changed {p:?}"));
        }
        let ideal = PrerunIdealRep {
            src_bound: OmegaVec::omega(vas_k.dim),
            word: p.clone(),
            tgt_bound: OmegaVec::omega(vas_k.dim),
        };
        for s in 0..4 {
            let big = sample_prerun(&ideal, 5, rng.gen::<u64>() ^ s);
            if !word_in_product(&big.steps, &p) {
                problems.push(format!("sample outside {p:?}"));
                continue;
            }
            let small = shrink(&mut rng, &big);
            pairs += 1;
            if embeds(&small, &big).is_none() {
                problems.push("shrunk prerun does not embed".into());
            } else if !word_in_product(&small.steps, &p) {
                problems.push(format!("word below a member falls outside {p:?}"));
            }
        }
    }
    check(
        problems.is_empty(),
        format!(
            "{boxes} cu_vec boxes, {products} products, {pairs} embedded pairs, {} problems {:?}",
            problems.len(),
            problems.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

/// Every run of length at most `max_len` between the endpoints.
fn runs_between(inst: &Instance, max_len: usize) -> Vec<Prerun> {
    fn go(
        inst: &Instance,
        label: &mut Vec<usize>,
        cur: &[u64],
        max_len: usize,
        out: &mut Vec<Prerun>,
    ) {
        if cur == inst.target.as_slice() {
            out.push(Prerun::from_label(&inst.vas, &inst.source, label).unwrap());
        }
        if label.len() == max_len {
            return;
        }
        for a in 0..inst.vas.actions.len() {
            if let Ok(next) = inst.vas.apply(cur, a) {
                label.push(a);
                go(inst, label, &next, max_len, out);
                label.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(inst, &mut Vec::new(), &inst.source, max_len, &mut out);
    out
}

fn ideal_sampling() -> Verdict {
    let inst = climb_drop();
    let s = klmst_solve(&inst, Limits::default()).map_err(|e| e.to_string())?;
    let runs = runs_between(&inst, 12);
    let family = s.perfect_family();
    let (mut samples, mut dominated) = (0, 0);
    for (k, xi) in family.iter().enumerate() {
        let ideal = sequence_ideal(xi);
        for n in 0..100u64 {
            let rho = sample_prerun(&ideal, 6, (k as u64) << 32 | n);
            samples += 1;
            if runs.iter().any(|r| embeds(&rho, r).is_some()) {
                dominated += 1;
            }
        }
    }
    check(
        !family.is_empty() && samples == dominated,
        format!(
            "{} perfect sequences, {dominated}/{samples} samples dominated by {} runs",
            family.len(),
            runs.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let family = solve_family();
    let criteria: Vec<Criterion> = vec![
        ("climb-drop instance end to end", Box::new(climb_drop_end_to_end)),
        ("infeasibility pruning", Box::new(infeasibility_pruning)),
        ("local run set example", Box::new(local_run_set_example)),
        ("rank monotonicity", Box::new(|| rank_monotonicity(&family))),
        ("oracle agreement", Box::new(|| oracle_agreement(&family))),
        ("run preservation", Box::new(|| run_preservation(&family))),
        ("Hilbert basis correctness", Box::new(hilbert_correctness)),
        (
            "coverability correctness",
            Box::new(coverability_correctness),
        ),
        ("ideal algebra laws", Box::new(ideal_algebra)),
        ("ideal sampling soundness", Box::new(ideal_sampling)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
