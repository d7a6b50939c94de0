use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vasreach::coverability::{km_tree, StateVas};
use vasreach::diophantine::{hilbert, NatLinearSystem, DEFAULT_NODE_BUDGET};
use vasreach::embed::embeds;
use vasreach::ideals::{prerun_ideal_contains, product_leq, sample_prerun, PrerunIdealRep};
use vasreach::klmst::{
    initial_sequence, is_perfect, klmst_solve, sequence_from_json, sequence_ideal, sequence_to_dot,
    sequence_to_json, Limits, MwgSequence, Outcome, Perfectness, Solution,
};
use vasreach::oracle::{bfs_oracle, OracleVerdict};
use vasreach::vas::{parse_instance, RunJson};
use vasreach::{Error, Instance, OmegaVec, Vas};

#[derive(Parser)]
#[command(
    name = "vasreach",
    version,
    about = "Reachability in vector addition systems"
)]
struct Cli {
    /// Perfectness checks allowed in the decomposition loop.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_steps: usize,
    /// Memory allowance for live witness graphs.
    #[arg(long, global = true, default_value_t = 256)]
    budget_mb: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Accepted for compatibility; evaluation is always sequential.
    #[arg(long, global = true)]
    single_thread: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write one JSON object per decomposition step to this file.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the target is reachable from the source.
    Solve { instance: PathBuf },
    /// Print the final family of perfect sequences.
    Decompose {
        instance: PathBuf,
        /// Drop members whose ideal is included in another member's.
        #[arg(long)]
        minimize: bool,
        /// Draw this many preruns from each member's ideal.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check a sequence given as JSON for perfectness.
    Perfect { sequence: PathBuf },
    /// Karp–Miller cover of an instance or of one graph of a sequence.
    Cover {
        input: PathBuf,
        /// Graph index when the input is a sequence.
        #[arg(long, default_value_t = 0)]
        graph: usize,
    },
    /// Hilbert basis of a system written as rows `a1 .. an | b`.
    Hilbert { system: PathBuf },
    /// Bounded breadth-first reachability search.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_norm: u64,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
    },
    /// Rank of a sequence, or of the initial sequence of an instance.
    Rank {
        #[arg(long, conflicts_with = "sequence")]
        initial: Option<PathBuf>,
        sequence: Option<PathBuf>,
    },
    /// Check whether the first run embeds into the second.
    Embed {
        #[arg(long)]
        vas: PathBuf,
        small: PathBuf,
        large: PathBuf,
    },
}

/// Outcome of a command that did not fail outright.
enum Status {
    Answered,
    Exhausted,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_sequence(path: &Path) -> Result<(Vas, MwgSequence)> {
    sequence_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON value serializes")
    );
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        max_steps: cli.max_steps,
        ..Limits::default()
    }
    .with_budget_mb(cli.budget_mb)
}

fn run_solver(cli: &Cli, inst: &Instance) -> Result<Solution> {
    let solution = klmst_solve(inst, limits(cli))?;
    if let Some(path) = &cli.trace {
        fs::write(path, solution.trace.to_json_lines())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(solution)
}

fn solve(cli: &Cli, path: &Path) -> Result<Status> {
    let inst = load_instance(path)?;
    let solution = run_solver(cli, &inst)?;
    let steps = solution.trace.steps.len();
    match &solution.outcome {
        Outcome::Reachable { run, .. } => {
            if cli.format == Format::Json {
                print_json(
                    &json!({"verdict": "REACHABLE", "steps": steps, "witness": run.to_json(&inst.vas)}),
                );
            } else {
                println!("REACHABLE");
                println!("{}", serde_json::to_string(&run.to_json(&inst.vas))?);
            }
            Ok(Status::Answered)
        }
        Outcome::Unreachable => {
            if cli.format == Format::Json {
                print_json(&json!({"verdict": "UNREACHABLE", "steps": steps}));
            } else {
                println!("UNREACHABLE");
            }
            Ok(Status::Answered)
        }
        Outcome::Exhausted { reason } => {
            if cli.format == Format::Json {
                print_json(&json!({"verdict": "EXHAUSTED", "steps": steps, "reason": reason}));
            } else {
                println!("EXHAUSTED: {reason}");
            }
            Ok(Status::Exhausted)
        }
    }
}

fn ideal_leq(a: &PrerunIdealRep, b: &PrerunIdealRep) -> bool {
    a.src_bound.leq(&b.src_bound) && a.tgt_bound.leq(&b.tgt_bound) && product_leq(&a.word, &b.word)
}

/// Keeps the first of every group of equal ideals and drops strictly
/// smaller ones.
fn minimize(family: Vec<MwgSequence>) -> Vec<MwgSequence> {
    let ideals: Vec<PrerunIdealRep> = family.iter().map(sequence_ideal).collect();
    let redundant = |k: usize| {
        (0..ideals.len()).any(|l| {
            l != k
                && ideal_leq(&ideals[k], &ideals[l])
                && (!ideal_leq(&ideals[l], &ideals[k]) || l < k)
        })
    };
    let keep: Vec<bool> = (0..family.len()).map(|k| !redundant(k)).collect();
    family
        .into_iter()
        .zip(keep)
        .filter_map(|(xi, k)| k.then_some(xi))
        .collect()
}

fn decompose(
    cli: &Cli,
    path: &Path,
    minimize_family: bool,
    samples: Option<usize>,
) -> Result<Status> {
    let inst = load_instance(path)?;
    let solution = run_solver(cli, &inst)?;
    if let Outcome::Exhausted { reason } = &solution.outcome {
        println!("EXHAUSTED: {reason}");
        return Ok(Status::Exhausted);
    }
    let mut family: Vec<MwgSequence> = solution.perfect_family().into_iter().cloned().collect();
    if minimize_family {
        family = minimize(family);
    }
    match cli.format {
        Format::Dot => {
            for xi in &family {
                print!("{}", sequence_to_dot(xi, &inst.vas));
            }
        }
        Format::Json => {
            let members: Vec<_> = family
                .iter()
                .map(|xi| sequence_to_json(xi, &inst.vas))
                .collect();
            print_json(&json!({"family": members}));
        }
        Format::Text => {
            println!("{} perfect sequence(s)", family.len());
            for (k, xi) in family.iter().enumerate() {
                println!("[{k}] rank {}", xi.rank());
                for (j, m) in xi.graphs.iter().enumerate() {
                    if j > 0 {
                        println!("  --{}-->", inst.vas.name(xi.links[j - 1]));
                    }
                    println!("  {m}");
                }
            }
        }
    }
    if let Some(n) = samples {
        for (k, xi) in family.iter().enumerate() {
            let ideal = sequence_ideal(xi);
            for s in 0..n {
                let rho = sample_prerun(&ideal, 4, cli.seed.wrapping_add(s as u64));
                debug_assert!(prerun_ideal_contains(&ideal, &rho));
                let word: Vec<String> = rho
                    .steps
                    .iter()
                    .map(|st| format!("{:?}-{}->{:?}", st.src, inst.vas.name(st.action), st.dst))
                    .collect();
                println!(
                    "sample {k}.{s}: {:?} [{}] {:?}",
                    rho.source,
                    word.join(" "),
                    rho.target
                );
            }
        }
    }
    Ok(Status::Answered)
}

fn perfect(cli: &Cli, path: &Path) -> Result<Status> {
    let (vas, xi) = load_sequence(path)?;
    let verdict = match is_perfect(&xi, &vas, limits(cli).node_budget) {
        Ok(v) => v,
        Err(Error::BudgetExceeded(reason)) => {
            println!("EXHAUSTED: {reason}");
            return Ok(Status::Exhausted);
        }
        Err(e) => return Err(e.into()),
    };
    match (&verdict, cli.format) {
        (Perfectness::Perfect(_), Format::Json) => print_json(&json!({"perfect": true})),
        (Perfectness::Imperfect(d), Format::Json) => {
            print_json(&json!({"perfect": false, "defect": d}))
        }
        (Perfectness::Perfect(_), _) => println!("Perfect"),
        (Perfectness::Imperfect(d), _) => println!("Imperfect: {d:?}"),
    }
    Ok(Status::Answered)
}

fn cover(cli: &Cli, path: &Path, graph: usize) -> Result<Status> {
    let text = read(path)?;
    let (vas, g, init) = if text.trim_start().starts_with('{') {
        let (vas, xi) = sequence_from_json(&text)?;
        let Some(m) = xi.graphs.get(graph) else {
            bail!(
                "sequence has {} graph(s), no graph {graph}",
                xi.graphs.len()
            );
        };
        let g = StateVas::from_graph(&m.graph, &vas);
        (vas, g, (m.graph.root, m.in_mark.clone()))
    } else {
        let inst = parse_instance(&text).with_context(|| format!("in {}", path.display()))?;
        let vas = inst.vas;
        let g = StateVas {
            states: 1,
            edges: (0..vas.actions.len()).map(|a| (0, a, 0)).collect(),
            counters: (0..vas.dim).collect(),
            deltas: vas.actions.iter().map(|a| a.delta.clone()).collect(),
        };
        (vas, g, (0, OmegaVec::from_finite(&inst.source)))
    };
    let tree = match km_tree(&g, (init.0, &init.1)) {
        Ok(t) => t,
        Err(Error::BudgetExceeded(reason)) => {
            println!("EXHAUSTED: {reason}");
            return Ok(Status::Exhausted);
        }
        Err(e) => return Err(e.into()),
    };
    let maximal = tree.maximal();
    match cli.format {
        Format::Dot => print!("{}", tree.to_dot(&vas)),
        Format::Json => {
            let states: serde_json::Map<String, serde_json::Value> = maximal
                .iter()
                .map(|(q, vs)| {
                    (
                        q.to_string(),
                        json!(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                    )
                })
                .collect();
            print_json(&json!({"nodes": tree.nodes.len(), "maximal": states}));
        }
        Format::Text => {
            for (q, vs) in &maximal {
                let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                println!("state {q}: {}", vs.join(" "));
            }
        }
    }
    Ok(Status::Answered)
}

fn hilbert_cmd(cli: &Cli, path: &Path) -> Result<Status> {
    let sys =
        NatLinearSystem::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let basis = match hilbert(&sys, DEFAULT_NODE_BUDGET) {
        Ok(b) => b,
        Err(Error::BudgetExceeded(reason)) => {
            println!("EXHAUSTED: {reason}");
            return Ok(Status::Exhausted);
        }
        Err(e) => return Err(e.into()),
    };
    if cli.format == Format::Json {
        print_json(&json!({"homogeneous": basis.hom, "particular": basis.part}));
    } else {
        let show = |v: &Vec<u64>| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("homogeneous ({})", basis.hom.len());
        for h in &basis.hom {
            println!("  {}", show(h));
        }
        println!("particular ({})", basis.part.len());
        for p in &basis.part {
            println!("  {}", show(p));
        }
    }
    Ok(Status::Answered)
}

fn oracle(cli: &Cli, path: &Path, max_norm: u64, max_len: usize) -> Result<Status> {
    let inst = load_instance(path)?;
    let (verdict, run) = match bfs_oracle(&inst, max_norm, max_len) {
        OracleVerdict::Reachable(run) => ("REACHABLE", Some(run)),
        OracleVerdict::UnreachableCertified => ("UNREACHABLE", None),
        OracleVerdict::Unknown => ("UNKNOWN", None),
    };
    let witness = run.map(|r| r.to_json(&inst.vas));
    if cli.format == Format::Json {
        print_json(&json!({"verdict": verdict, "witness": witness}));
    } else {
        println!("{verdict}");
        if let Some(w) = witness {
            println!("{}", serde_json::to_string(&w)?);
        }
    }
    Ok(Status::Answered)
}

fn rank(initial: Option<&Path>, sequence: Option<&Path>) -> Result<Status> {
    let xi = match (initial, sequence) {
        (Some(p), None) => initial_sequence(&load_instance(p)?),
        (None, Some(p)) => load_sequence(p)?.1,
        _ => bail!("give either --initial INSTANCE or a sequence file"),
    };
    println!("{}", xi.rank());
    Ok(Status::Answered)
}

fn embed(cli: &Cli, vas_path: &Path, small: &Path, large: &Path) -> Result<Status> {
    let vas = load_instance(vas_path)?.vas;
    let load_run = |p: &Path| -> Result<_> {
        let raw: RunJson =
            serde_json::from_str(&read(p)?).with_context(|| format!("in {}", p.display()))?;
        raw.to_run(&vas)
            .with_context(|| format!("in {}", p.display()))
    };
    let (small, large) = (load_run(small)?, load_run(large)?);
    let found = embeds(&small, &large);
    if cli.format == Format::Json {
        print_json(&json!({"embeds": found.is_some(), "positions": found.map(|w| w.positions)}));
    } else {
        match found {
            Some(w) => println!("EMBEDS at positions {:?}", w.positions),
            None => println!("DOES NOT EMBED"),
        }
    }
    Ok(Status::Answered)
}

fn dispatch(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Solve { instance } => solve(cli, instance),
        Command::Decompose {
            instance,
            minimize,
            samples,
        } => decompose(cli, instance, *minimize, *samples),
        Command::Perfect { sequence } => perfect(cli, sequence),
        Command::Cover { input, graph } => cover(cli, input, *graph),
        Command::Hilbert { system } => hilbert_cmd(cli, system),
        Command::Oracle {
            instance,
            max_norm,
            max_len,
        } => oracle(cli, instance, *max_norm, *max_len),
        Command::Rank { initial, sequence } => rank(initial.as_deref(), sequence.as_deref()),
        Command::Embed { vas, small, large } => embed(cli, vas, small, large),
    }
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with other failures; 2 means exhausted
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli) {
        Ok(Status::Answered) => ExitCode::SUCCESS,
        Ok(Status::Exhausted) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
