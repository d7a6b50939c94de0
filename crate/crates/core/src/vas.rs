//! Vector addition systems, configurations, preruns and runs.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A configuration in ℕ^d.
pub type Config = Vec<u64>;

/// Index of an action inside its [`Vas`].
pub type ActionId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Action {
    pub name: String,
    pub delta: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vas {
    pub dim: usize,
    pub actions: Vec<Action>,
}

impl Vas {
    pub fn new(dim: usize, actions: Vec<Action>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        let mut seen = HashSet::new();
        for a in &actions {
            if a.delta.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.delta.len(),
                });
            }
            if !seen.insert(a.name.as_str()) {
                return Err(Error::DuplicateAction(a.name.clone()));
            }
        }
        Ok(Vas { dim, actions })
    }

    /// Builds a VAS from bare deltas, naming the actions `a`, `b`, ….
    pub fn from_deltas(dim: usize, deltas: &[Vec<i64>]) -> Result<Self> {
        let actions = deltas
            .iter()
            .enumerate()
            .map(|(i, d)| Action {
                name: default_action_name(i),
                delta: d.clone(),
            })
            .collect();
        Vas::new(dim, actions)
    }

    pub fn delta(&self, a: ActionId) -> &[i64] {
        &self.actions[a].delta
    }

    pub fn name(&self, a: ActionId) -> &str {
        &self.actions[a].name
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.actions.iter().position(|a| a.name == name)
    }

    /// c + delta(a), or the first component that would go negative.
    pub fn apply(&self, c: &[u64], a: ActionId) -> Result<Config> {
        apply_action(c, &self.actions[a])
    }
}

pub(crate) fn default_action_name(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("t{i}")
    }
}

pub fn apply_action(c: &[u64], a: &Action) -> Result<Config> {
    if c.len() != a.delta.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            found: a.delta.len(),
        });
    }
    c.iter()
        .zip(&a.delta)
        .enumerate()
        .map(|(i, (&v, &d))| {
            let r = v as i128 + d as i128;
            if r < 0 {
                Err(Error::NegativeComponent(i))
            } else {
                u64::try_from(r).map_err(|_| Error::Overflow("apply_action"))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub vas: Vas,
    pub source: Config,
    pub target: Config,
}

impl Instance {
    pub fn new(vas: Vas, source: Config, target: Config) -> Result<Self> {
        for v in [&source, &target] {
            if v.len() != vas.dim {
                return Err(Error::DimensionMismatch {
                    expected: vas.dim,
                    found: v.len(),
                });
            }
        }
        Ok(Instance {
            vas,
            source,
            target,
        })
    }

    pub fn dim(&self) -> usize {
        self.vas.dim
    }
}

/// Parses the line-oriented instance format:
///
/// ```text
/// dim 2
/// action a 1 1
/// action b -1 -2
/// init 0 2
/// target 1 0
/// ```
///
/// `#` starts a comment. `/` is accepted as a line separator so that
/// one-line instances can be written inline.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut dim: Option<usize> = None;
    let mut actions: Vec<Action> = Vec::new();
    let mut init: Option<Config> = None;
    let mut target: Option<Config> = None;
    let mut names = HashSet::new();

    let lines = text
        .lines()
        .enumerate()
        .flat_map(|(n, l)| l.split('/').map(move |part| (n + 1, part)));
    for (lineno, raw) in lines {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kw = toks.next().unwrap();
        let syntax = |msg: String| Error::Syntax { line: lineno, msg };
        let need_dim = || dim.ok_or_else(|| syntax("`dim` must come first".into()));
        match kw {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax("duplicate `dim`".into()));
                }
                let d: usize = toks
                    .next()
                    .ok_or_else(|| syntax("missing dimension".into()))?
                    .parse()
                    .map_err(|e| syntax(format!("bad dimension: {e}")))?;
                if d == 0 {
                    return Err(syntax("dimension must be positive".into()));
                }
                if toks.next().is_some() {
                    return Err(syntax("trailing tokens after dimension".into()));
                }
                dim = Some(d);
            }
            "action" => {
                let d = need_dim()?;
                let name = toks
                    .next()
                    .ok_or_else(|| syntax("missing action name".into()))?
                    .to_string();
                let delta = toks
                    .map(|t| t.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| syntax(format!("bad integer: {e}")))?;
                if delta.len() != d {
                    return Err(syntax(format!(
                        "arity mismatch: action `{name}` has {} components, expected {d}",
                        delta.len()
                    )));
                }
                if !names.insert(name.clone()) {
                    return Err(Error::DuplicateAction(name));
                }
                actions.push(Action { name, delta });
            }
            "init" | "target" => {
                let d = need_dim()?;
                let v = toks
                    .map(|t| t.parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| syntax(format!("bad natural: {e}")))?;
                if v.len() != d {
                    return Err(syntax(format!(
                        "arity mismatch: `{kw}` has {} components, expected {d}",
                        v.len()
                    )));
                }
                let slot = if kw == "init" { &mut init } else { &mut target };
                if slot.is_some() {
                    return Err(syntax(format!("duplicate `{kw}`")));
                }
                *slot = Some(v);
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    let eof = |what: &str| Error::Syntax {
        line: text.lines().count().max(1),
        msg: format!("missing `{what}`"),
    };
    let dim = dim.ok_or_else(|| eof("dim"))?;
    let vas = Vas::new(dim, actions)?;
    Instance::new(
        vas,
        init.ok_or_else(|| eof("init"))?,
        target.ok_or_else(|| eof("target"))?,
    )
}

pub fn format_instance(inst: &Instance) -> String {
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    let mut s = format!("dim {}\n", inst.vas.dim);
    for a in &inst.vas.actions {
        s.push_str(&format!(
            "action {} {}\n",
            a.name,
            join(&mut a.delta.iter().map(|x| x.to_string()))
        ));
    }
    s.push_str(&format!(
        "init {}\n",
        join(&mut inst.source.iter().map(|x| x.to_string()))
    ));
    s.push_str(&format!(
        "target {}\n",
        join(&mut inst.target.iter().map(|x| x.to_string()))
    ));
    s
}

/// One letter of a prerun word: a triple (src, action, dst).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub src: Config,
    pub action: ActionId,
    pub dst: Config,
}

/// A triple (source, word, target). Runs are the connected preruns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prerun {
    pub source: Config,
    pub steps: Vec<Step>,
    pub target: Config,
}

/// Runs share the prerun representation; see [`validate_run`].
pub type Run = Prerun;

impl Prerun {
    pub fn empty(c: Config) -> Self {
        Prerun {
            source: c.clone(),
            steps: Vec::new(),
            target: c,
        }
    }

    /// Replays a label from `source`, failing on the first negative step.
    pub fn from_label(vas: &Vas, source: &[u64], label: &[ActionId]) -> Result<Run> {
        let mut cur = source.to_vec();
        let mut steps = Vec::with_capacity(label.len());
        for &a in label {
            let next = vas.apply(&cur, a)?;
            steps.push(Step {
                src: cur,
                action: a,
                dst: next.clone(),
            });
            cur = next;
        }
        Ok(Prerun {
            source: source.to_vec(),
            steps,
            target: cur,
        })
    }

    pub fn label(&self) -> Vec<ActionId> {
        self.steps.iter().map(|s| s.action).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Configurations visited by a run: source, then every step target.
    pub fn configs(&self) -> Vec<&Config> {
        std::iter::once(&self.source)
            .chain(self.steps.iter().map(|s| &s.dst))
            .collect()
    }

    pub fn label_string(&self, vas: &Vas) -> String {
        self.steps
            .iter()
            .map(|s| vas.name(s.action))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self, vas: &Vas) -> RunJson {
        RunJson {
            source: self.source.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    action: vas.name(s.action).to_string(),
                })
                .collect(),
            target: self.target.clone(),
        }
    }
}

/// Serialized run: intermediate configurations are recomputed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunJson {
    pub source: Config,
    pub steps: Vec<StepJson>,
    pub target: Config,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub action: String,
}

impl RunJson {
    pub fn to_run(&self, vas: &Vas) -> Result<Run> {
        let label = self
            .steps
            .iter()
            .map(|s| {
                vas.action_id(&s.action)
                    .ok_or_else(|| Error::UnknownAction(s.action.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let run = Prerun::from_label(vas, &self.source, &label)?;
        if run.target != self.target {
            return Err(Error::Malformed(format!(
                "recorded target {:?} differs from replayed target {:?}",
                self.target, run.target
            )));
        }
        Ok(run)
    }
}

/// Whether `rho` is connected and made of transitions of `vas`.
pub fn validate_run(rho: &Prerun, vas: &Vas) -> bool {
    let d = vas.dim;
    if rho.source.len() != d || rho.target.len() != d {
        return false;
    }
    if rho.steps.is_empty() {
        return rho.source == rho.target;
    }
    let mut cur = &rho.source;
    for s in &rho.steps {
        if s.action >= vas.actions.len() || &s.src != cur || s.src.len() != d {
            return false;
        }
        match vas.apply(&s.src, s.action) {
            Ok(next) if next == s.dst => {}
            _ => return false,
        }
        cur = &s.dst;
    }
    cur == &rho.target
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_instance(self))
    }
}
