// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use thiserror::Error;

use super::{Diagnostic, Netlist};
use crate::gate::{pack_bits, unpack_bits_into, Bit, PermutationTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("netlist is invalid: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("no value given for primary input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not a primary input")]
    UnknownInput(String),
    #[error("primary input `{0}` assigned twice")]
    DuplicateInput(String),
    #[error("expected {expected} input bits, got {found}")]
    WrongInputCount { expected: usize, found: usize },
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Primary output and garbage values for one input vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Evaluation {
    pub outputs: Vec<Bit>,
    pub garbage: Vec<Bit>,
}

impl Evaluation {
    /// Outputs followed by garbage.
    pub fn terminal(&self) -> impl Iterator<Item = Bit> + '_ {
        self.outputs.iter().chain(self.garbage.iter()).copied()
    }
}

/// Named outputs (declaration order) and garbage values for one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimResult {
    pub outputs: Vec<(String, Bit)>,
    pub garbage: Vec<Bit>,
}

impl SimResult {
    pub fn get(&self, name: &str) -> Option<Bit> {
        self.outputs
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, b)| b)
    }
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    table: &'static PermutationTable,
    arity: usize,
    inputs: [usize; 3],
    outputs: [usize; 3],
}

/// A validated netlist lowered onto dense wire indices.
///
/// Gates are evaluated through their permutation tables.
#[derive(Clone, Debug)]
pub struct Simulator {
    input_names: Vec<String>,
    output_names: Vec<String>,
    wire_count: usize,
    ancillas: Vec<(usize, Bit)>,
    gates: Vec<Slot>,
    output_wires: Vec<usize>,
    garbage_wires: Vec<usize>,
}

impl Simulator {
    pub fn new(netlist: &Netlist) -> Result<Self, SimError> {
        let diags = netlist.validate();
        if !diags.is_empty() {
            return Err(SimError::Invalid(diags));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for w in netlist.drivers() {
            let next = index.len();
            index.insert(w, next);
        }
        let gates = netlist
            .gates
            .iter()
            .map(|g| {
                let mut slot = Slot {
                    table: g.kind.table(),
                    arity: g.kind.arity(),
                    inputs: [0; 3],
                    outputs: [0; 3],
                };
                for (i, w) in g.inputs.iter().enumerate() {
                    slot.inputs[i] = index[w.as_str()];
                }
                for (i, w) in g.outputs.iter().enumerate() {
                    slot.outputs[i] = index[w.as_str()];
                }
                slot
            })
            .collect();
        Ok(Simulator {
            input_names: netlist.inputs.clone(),
            output_names: netlist.outputs.iter().map(|o| o.name.clone()).collect(),
            wire_count: index.len(),
            ancillas: netlist
                .ancillas
                .iter()
                .map(|a| (index[a.wire.as_str()], a.value))
                .collect(),
            gates,
            output_wires: netlist
                .outputs
                .iter()
                .map(|o| index[o.wire.as_str()])
                .collect(),
            garbage_wires: netlist.garbage.iter().map(|w| index[w.as_str()]).collect(),
        })
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn input_count(&self) -> usize {
        self.input_names.len()
    }

    /// Evaluate positionally; `inputs[i]` drives the i-th declared input.
    pub fn run(&self, inputs: &[Bit]) -> Result<Evaluation, SimError> {
        if inputs.len() != self.input_names.len() {
            return Err(SimError::WrongInputCount {
                expected: self.input_names.len(),
                found: inputs.len(),
            });
        }
        let mut wires = vec![false; self.wire_count];
        Ok(self.run_with(inputs, &mut wires))
    }

    /// Evaluate the vector whose binary index is `vector`, first declared
    /// input most significant.
    pub fn run_index(&self, vector: u64, wires: &mut Vec<Bit>) -> Evaluation {
        let n = self.input_names.len();
        wires.clear();
        wires.extend((0..n).map(|i| (vector >> (n - 1 - i)) & 1 == 1));
        wires.resize(self.wire_count, false);
        self.propagate(wires)
    }

    fn run_with(&self, inputs: &[Bit], wires: &mut Vec<Bit>) -> Evaluation {
        wires.clear();
        wires.extend_from_slice(inputs);
        wires.resize(self.wire_count, false);
        self.propagate(wires)
    }

    fn propagate(&self, wires: &mut [Bit]) -> Evaluation {
        for &(w, v) in &self.ancillas {
            wires[w] = v;
        }
        let mut buf = [false; 3];
        for slot in &self.gates {
            let k = slot.arity;
            for i in 0..k {
                buf[i] = wires[slot.inputs[i]];
            }
            let out = slot.table.lookup(pack_bits(&buf[..k]));
            unpack_bits_into(out, &mut buf[..k]);
            for i in 0..k {
                wires[slot.outputs[i]] = buf[i];
            }
        }
        Evaluation {
            outputs: self.output_wires.iter().map(|&w| wires[w]).collect(),
            garbage: self.garbage_wires.iter().map(|&w| wires[w]).collect(),
        }
    }

    /// Evaluate an assignment keyed by input name.
    pub fn simulate<'a, I>(&self, assignment: I) -> Result<SimResult, SimError>
    where
        I: IntoIterator<Item = (&'a str, Bit)>,
    {
        let mut values: Vec<Option<Bit>> = vec![None; self.input_names.len()];
        for (name, bit) in assignment {
            let pos = self
                .input_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| SimError::UnknownInput(name.to_string()))?;
            if values[pos].replace(bit).is_some() {
                return Err(SimError::DuplicateInput(name.to_string()));
            }
        }
        let inputs = values
            .iter()
            .zip(&self.input_names)
            .map(|(v, name)| v.ok_or_else(|| SimError::MissingInput(name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let eval = self.run(&inputs)?;
        Ok(SimResult {
            outputs: self
                .output_names
                .iter()
                .cloned()
                .zip(eval.outputs)
                .collect(),
            garbage: eval.garbage,
        })
    }
}
