//! Executable semantics for expanded models: multiset rewriting, CLS term
//! rewriting and P-system steps, all driven by a seeded generator.

pub mod cls;
pub mod generic;
mod multiset;
pub mod psys;

use std::fmt::{self, Write as _};

use rand::SeedableRng;
use serde::Serialize;

use crate::diagnostics::Diagnostic;
use crate::model::Model;
use crate::names::Value;

pub use cls::{cls_match, ClsEngine, ClsPart, ClsTerm, Congruence, Instantiation};
pub use generic::GenericEngine;
pub use multiset::Multiset;
pub use psys::{MembraneSnapshot, PsysEngine};

pub type Rng = rand_chacha::ChaCha8Rng;

/// A rule fired during a step, `count` times, in `membrane` for P systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applied {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membrane: Option<Value>,
    pub rule: String,
    pub count: u64,
}

impl Applied {
    pub fn once(rule: String) -> Self {
        Self { membrane: None, rule, count: 1 }
    }
}

impl fmt::Display for Applied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.membrane {
            write!(f, "{m}: ")?;
        }
        f.write_str(&self.rule)?;
        if self.membrane.is_some() {
            write!(f, " x{}", self.count)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "formalism", rename_all = "lowercase")]
pub enum Snapshot {
    Generic { state: Multiset },
    Cls { term: ClsTerm },
    Psys { membranes: MembraneSnapshot, environment: Multiset },
}

fn write_membrane(f: &mut fmt::Formatter<'_>, m: &MembraneSnapshot) -> fmt::Result {
    write!(f, "[{}", m.contents)?;
    for c in &m.children {
        f.write_str(" ")?;
        write_membrane(f, c)?;
    }
    write!(f, "]_{}", m.label)
}

/// `{E:1, S:1}`, a CLS term, or `[{} [{w:2}]_2]_1 env={}`.
impl fmt::Display for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Snapshot::Generic { state } => write!(f, "{state}"),
            Snapshot::Cls { term } => write!(f, "{term}"),
            Snapshot::Psys { membranes, environment } => {
                write_membrane(f, membranes)?;
                write!(f, " env={environment}")
            }
        }
    }
}

/// Final contents of the output membrane, or of the environment when
/// `membrane` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Output {
    pub membrane: Option<Value>,
    pub contents: Multiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub index: usize,
    /// Empty for step 0, the initial state.
    pub applied: Vec<Applied>,
    pub state: Snapshot,
}

/// `step=<n> rule=<rules> state=<state>`, with `-` when no rule fired.
impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step={} rule=", self.index)?;
        if self.applied.is_empty() {
            f.write_str("-")?;
        }
        for (i, a) in self.applied.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " state={}", self.state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    /// No rule was applicable in the last state.
    pub halted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
}

impl Trace {
    pub fn last(&self) -> &Snapshot {
        &self.steps.last().expect("a trace holds at least the initial state").state
    }

    /// One line per step, then `halt` and the output when the run halted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            writeln!(s, "{step}").unwrap();
        }
        if self.halted {
            s.push_str("halt");
            if let Some(o) = &self.output {
                match &o.membrane {
                    Some(m) => write!(s, " output={m} {}", o.contents).unwrap(),
                    None => write!(s, " output=env {}", o.contents).unwrap(),
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces always serialize") + "\n"
    }
}

/// A stepping discipline over some state type.
pub trait Engine {
    type State: Clone;

    fn initial(&self) -> Self::State;

    /// The rules fired and the next state, or `None` when nothing applies.
    fn step(&self, state: &Self::State, rng: &mut Rng) -> Option<(Vec<Applied>, Self::State)>;

    fn snapshot(&self, state: &Self::State) -> Snapshot;

    /// Result reported when the run halts.
    fn output(&self, _state: &Self::State) -> Option<Output> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_steps: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { max_steps: 100, seed: 0 }
    }
}

/// Runs `engine` for at most `max_steps` steps, handing each step to
/// `sink` as soon as it exists.
pub fn run_engine<E: Engine>(engine: &E, options: RunOptions, sink: &mut dyn FnMut(&TraceStep)) -> Trace {
    let mut rng = Rng::seed_from_u64(options.seed);
    let mut state = engine.initial();
    let mut steps = Vec::new();
    let mut record = |step: TraceStep, steps: &mut Vec<TraceStep>| {
        sink(&step);
        steps.push(step);
    };
    record(TraceStep { index: 0, applied: Vec::new(), state: engine.snapshot(&state) }, &mut steps);
    let mut halted = false;
    while steps.len() <= options.max_steps {
        match engine.step(&state, &mut rng) {
            None => {
                halted = true;
                break;
            }
            Some((applied, next)) => {
                state = next;
                let index = steps.len();
                record(TraceStep { index, applied, state: engine.snapshot(&state) }, &mut steps);
            }
        }
    }
    if !halted {
        halted = engine.step(&state, &mut rng.clone()).is_none();
    }
    let output = if halted { engine.output(&state) } else { None };
    Trace { steps, halted, output }
}

/// An engine built from an expanded model.
#[derive(Clone, Debug)]
pub enum Simulation {
    Generic(GenericEngine),
    Cls(ClsEngine),
    Psys(PsysEngine),
}

impl Simulation {
    /// Fails if the model still has invocations or, for P systems, if the
    /// membrane structure cannot be executed.
    pub fn prepare(model: &Model, congruence: Congruence) -> Result<Self, Vec<Diagnostic>> {
        match model {
            Model::Generic(m) => GenericEngine::from_model(m).map(Self::Generic).map_err(|d| vec![d]),
            Model::Cls(m) => ClsEngine::from_model(m, congruence).map(Self::Cls).map_err(|d| vec![d]),
            Model::Psys(m) => PsysEngine::new(m).map(Self::Psys),
        }
    }

    pub fn run(&self, options: RunOptions) -> Trace {
        self.run_with_sink(options, &mut |_| {})
    }

    pub fn run_with_sink(&self, options: RunOptions, sink: &mut dyn FnMut(&TraceStep)) -> Trace {
        match self {
            Simulation::Generic(e) => run_engine(e, options, sink),
            Simulation::Cls(e) => run_engine(e, options, sink),
            Simulation::Psys(e) => run_engine(e, options, sink),
        }
    }
}
