// SPDX-License-Identifier: Apache-2.0

//! Reversible netlists over single-driver, single-consumer wires.
//!
//! Gate order is the topological order: every gate input must be driven
//! by a primary input, a constant ancilla, or an earlier gate. A wire that
//! no gate consumes is terminal and must be declared either as a primary
//! output or as garbage, exactly once.

mod builder;
mod sim;
mod text;

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::gate::{Bit, GateKind};

pub use builder::NetlistBuilder;
pub use sim::{Evaluation, SimError, SimResult, Simulator};
pub use text::{emit_netlist, parse_netlist, ParseError, ParseErrorKind};

/// What a wire is used for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireRole {
    PrimaryInput,
    ConstantAncilla,
    Internal,
    PrimaryOutput,
    Garbage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wire {
    pub id: String,
    pub role: WireRole,
}

/// A wire tied to a fixed value at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ancilla {
    pub wire: String,
    pub value: Bit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateInstance {
    pub kind: GateKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// Binds a named primary output to the wire carrying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputBinding {
    pub name: String,
    pub wire: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub ancillas: Vec<Ancilla>,
    pub gates: Vec<GateInstance>,
    pub outputs: Vec<OutputBinding>,
    pub garbage: Vec<String>,
}

/// Gate and wire accounting for a netlist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostReport {
    pub fredkin_count: usize,
    pub feynman_count: usize,
    pub ancilla_count: usize,
    pub garbage_count: usize,
    /// Maximum number of simultaneously live wires.
    pub width: usize,
    /// Longest gate-to-gate dependency chain.
    pub depth: usize,
}

impl CostReport {
    pub fn gate_count(&self) -> usize {
        self.fredkin_count + self.feynman_count
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fredkin={} feynman={} ancilla={} garbage={} width={} depth={}",
            self.fredkin_count,
            self.feynman_count,
            self.ancilla_count,
            self.garbage_count,
            self.width,
            self.depth
        )
    }
}

/// Where a gate-side reference occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Gate(usize),
    Output,
    Garbage,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Gate(i) => write!(f, "gate {i}"),
            Site::Output => f.write_str("output binding"),
            Site::Garbage => f.write_str("garbage declaration"),
        }
    }
}

/// One structural rule violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    InvalidIdentifier(String),
    DuplicateDriver(String),
    DuplicateOutputName(String),
    ArityMismatch {
        gate: usize,
        kind: GateKind,
        inputs: usize,
        outputs: usize,
    },
    Undeclared {
        wire: String,
        site: Site,
    },
    /// A gate consumes a wire driven by itself or by a later gate.
    UsedBeforeDriven {
        wire: String,
        gate: usize,
    },
    FanOut {
        wire: String,
        uses: usize,
    },
    OutputAndGarbage(String),
    Dangling(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::InvalidIdentifier(id) => write!(f, "invalid identifier `{id}`"),
            Diagnostic::DuplicateDriver(w) => write!(f, "wire `{w}` has more than one driver"),
            Diagnostic::DuplicateOutputName(n) => write!(f, "output name `{n}` bound twice"),
            Diagnostic::ArityMismatch {
                gate,
                kind,
                inputs,
                outputs,
            } => write!(
                f,
                "gate {gate}: {kind} takes {a} inputs and {a} outputs, found {inputs} and {outputs}",
                a = kind.arity()
            ),
            Diagnostic::Undeclared { wire, site } => {
                write!(f, "{site} references undeclared wire `{wire}`")
            }
            Diagnostic::UsedBeforeDriven { wire, gate } => {
                write!(f, "gate {gate} consumes `{wire}` before it is driven")
            }
            Diagnostic::FanOut { wire, uses } => {
                write!(f, "wire `{wire}` fans out to {uses} consumers")
            }
            Diagnostic::OutputAndGarbage(w) => {
                write!(f, "wire `{w}` is both a primary output and garbage")
            }
            Diagnostic::Dangling(w) => {
                write!(f, "wire `{w}` is neither consumed, an output, nor garbage")
            }
        }
    }
}

/// Letter or underscore, then letters, digits, underscores or dots.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

#[derive(Default)]
struct Uses {
    gate: usize,
    output: usize,
    garbage: usize,
}

impl Netlist {
    /// All declared wires in driver order, each with its role.
    pub fn wires(&self) -> Vec<Wire> {
        let outputs: HashSet<&str> = self.outputs.iter().map(|o| o.wire.as_str()).collect();
        let garbage: HashSet<&str> = self.garbage.iter().map(String::as_str).collect();
        let role_of = |id: &str, base: WireRole| {
            if outputs.contains(id) {
                WireRole::PrimaryOutput
            } else if garbage.contains(id) {
                WireRole::Garbage
            } else {
                base
            }
        };
        let mut wires = Vec::new();
        for id in &self.inputs {
            wires.push(Wire {
                id: id.clone(),
                role: role_of(id, WireRole::PrimaryInput),
            });
        }
        for a in &self.ancillas {
            wires.push(Wire {
                id: a.wire.clone(),
                role: role_of(&a.wire, WireRole::ConstantAncilla),
            });
        }
        for g in &self.gates {
            for id in &g.outputs {
                wires.push(Wire {
                    id: id.clone(),
                    role: role_of(id, WireRole::Internal),
                });
            }
        }
        wires
    }

    /// Every wire that no gate consumes, in driver order.
    pub fn terminal_wires(&self) -> Vec<&str> {
        let consumed: HashSet<&str> = self
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter().map(String::as_str))
            .collect();
        self.drivers().filter(|w| !consumed.contains(w)).collect()
    }

    fn drivers(&self) -> impl Iterator<Item = &str> {
        self.inputs
            .iter()
            .map(String::as_str)
            .chain(self.ancillas.iter().map(|a| a.wire.as_str()))
            .chain(
                self.gates
                    .iter()
                    .flat_map(|g| g.outputs.iter().map(String::as_str)),
            )
    }

    /// Structural diagnostics; an empty list means the netlist is valid.
    pub fn validate<'n>(&'n self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();

        // driver position: inputs and ancillas at 0, gate i's outputs at i + 1
        let mut driver: HashMap<&str, usize> = HashMap::new();
        let mut order: Vec<&str> = Vec::new();
        let mut declare = |id: &'n str, pos: usize, diags: &mut Vec<Diagnostic>| {
            if !is_identifier(id) {
                diags.push(Diagnostic::InvalidIdentifier(id.to_string()));
            }
            if driver.insert(id, pos).is_some() {
                diags.push(Diagnostic::DuplicateDriver(id.to_string()));
            } else {
                order.push(id);
            }
        };
        for id in &self.inputs {
            declare(id, 0, &mut diags);
        }
        for a in &self.ancillas {
            declare(&a.wire, 0, &mut diags);
        }
        for (i, g) in self.gates.iter().enumerate() {
            let arity = g.kind.arity();
            if g.inputs.len() != arity || g.outputs.len() != arity {
                diags.push(Diagnostic::ArityMismatch {
                    gate: i,
                    kind: g.kind,
                    inputs: g.inputs.len(),
                    outputs: g.outputs.len(),
                });
            }
            for id in &g.outputs {
                declare(id, i + 1, &mut diags);
            }
        }

        let mut uses: HashMap<&str, Uses> = HashMap::new();
        for (i, g) in self.gates.iter().enumerate() {
            for id in &g.inputs {
                match driver.get(id.as_str()) {
                    None => diags.push(Diagnostic::Undeclared {
                        wire: id.clone(),
                        site: Site::Gate(i),
                    }),
                    Some(&pos) if pos > i => diags.push(Diagnostic::UsedBeforeDriven {
                        wire: id.clone(),
                        gate: i,
                    }),
                    Some(_) => {}
                }
                uses.entry(id).or_default().gate += 1;
            }
        }

        let mut names = HashSet::new();
        for o in &self.outputs {
            if !is_identifier(&o.name) {
                diags.push(Diagnostic::InvalidIdentifier(o.name.clone()));
            }
            if !names.insert(o.name.as_str()) {
                diags.push(Diagnostic::DuplicateOutputName(o.name.clone()));
            }
            if !driver.contains_key(o.wire.as_str()) {
                diags.push(Diagnostic::Undeclared {
                    wire: o.wire.clone(),
                    site: Site::Output,
                });
            }
            uses.entry(&o.wire).or_default().output += 1;
        }
        for id in &self.garbage {
            if !driver.contains_key(id.as_str()) {
                diags.push(Diagnostic::Undeclared {
                    wire: id.clone(),
                    site: Site::Garbage,
                });
            }
            uses.entry(id).or_default().garbage += 1;
        }

        for id in order {
            let u = uses.remove(id).unwrap_or_default();
            let total = u.gate + u.output + u.garbage;
            if u.output > 0 && u.garbage > 0 {
                diags.push(Diagnostic::OutputAndGarbage(id.to_string()));
            } else if total > 1 {
                diags.push(Diagnostic::FanOut {
                    wire: id.to_string(),
                    uses: total,
                });
            } else if total == 0 {
                diags.push(Diagnostic::Dangling(id.to_string()));
            }
        }
        diags
    }

    /// Gate, ancilla and garbage counts plus width and depth.
    ///
    /// A wire is live from its driver until its consumer; terminal wires
    /// stay live to the end. Inputs and ancillas are declared before the
    /// first gate.
    pub fn stats(&self) -> CostReport {
        let consumed: HashSet<&str> = self
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter().map(String::as_str))
            .collect();
        let terminal = self.drivers().filter(|w| !consumed.contains(w)).count();

        let mut live = (self.inputs.len() + self.ancillas.len()) as isize;
        let mut width = live;
        let mut level: HashMap<&str, usize> = HashMap::new();
        let mut depth = 0;
        let mut fredkin_count = 0;
        let mut feynman_count = 0;
        for g in &self.gates {
            match g.kind {
                GateKind::Fredkin => fredkin_count += 1,
                GateKind::Feynman => feynman_count += 1,
            }
            let gate_level = 1 + g
                .inputs
                .iter()
                .map(|w| level.get(w.as_str()).copied().unwrap_or(0))
                .max()
                .unwrap_or(0);
            depth = depth.max(gate_level);
            for w in &g.outputs {
                level.insert(w, gate_level);
            }
            live += g.outputs.len() as isize - g.inputs.len() as isize;
            width = width.max(live);
        }

        CostReport {
            fredkin_count,
            feynman_count,
            ancilla_count: self.ancillas.len(),
            garbage_count: terminal.saturating_sub(self.outputs.len()),
            width: width.max(0) as usize,
            depth,
        }
    }

    pub fn output_names(&self) -> impl Iterator<Item = &str> {
        self.outputs.iter().map(|o| o.name.as_str())
    }

    /// Evaluate one input assignment keyed by primary input name.
    pub fn simulate<'a, I>(&self, assignment: I) -> Result<SimResult, SimError>
    where
        I: IntoIterator<Item = (&'a str, Bit)>,
    {
        Simulator::new(self)?.simulate(assignment)
    }
}
