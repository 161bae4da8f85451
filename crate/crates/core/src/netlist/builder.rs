// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;

use super::{Ancilla, GateInstance, Netlist, OutputBinding};
use crate::gate::{Bit, GateKind};

/// Incremental netlist construction with collision-free wire names.
///
/// Names are derived from caller hints; a hint already in use gets a
/// `_N` suffix. `finish` declares every wire that was neither consumed
/// nor bound to an output as garbage, in driver order.
#[derive(Debug, Default)]
pub struct NetlistBuilder {
    netlist: Netlist,
    taken: HashSet<String>,
    consumed: HashSet<String>,
    terminal: HashSet<String>,
}

impl NetlistBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&mut self, hint: &str) -> String {
        if self.taken.insert(hint.to_string()) {
            return hint.to_string();
        }
        let mut n = 1;
        loop {
            let candidate = format!("{hint}_{n}");
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
            n += 1;
        }
    }

    pub fn input(&mut self, name: &str) -> String {
        let id = self.fresh(name);
        self.netlist.inputs.push(id.clone());
        id
    }

    pub fn constant(&mut self, value: Bit, hint: &str) -> String {
        let wire = self.fresh(hint);
        self.netlist.ancillas.push(Ancilla {
            wire: wire.clone(),
            value,
        });
        wire
    }

    /// Append a gate; `hints` names its outputs and must match its arity.
    pub fn gate(&mut self, kind: GateKind, inputs: &[String], hints: &[&str]) -> Vec<String> {
        debug_assert_eq!(inputs.len(), kind.arity());
        debug_assert_eq!(hints.len(), kind.arity());
        for w in inputs {
            self.consumed.insert(w.clone());
        }
        let outputs: Vec<String> = hints.iter().map(|h| self.fresh(h)).collect();
        self.netlist.gates.push(GateInstance {
            kind,
            inputs: inputs.to_vec(),
            outputs: outputs.clone(),
        });
        outputs
    }

    pub fn fredkin(&mut self, inputs: [&String; 3], hints: [&str; 3]) -> [String; 3] {
        let ins = inputs.map(String::clone);
        let out = self.gate(GateKind::Fredkin, &ins, &hints);
        [out[0].clone(), out[1].clone(), out[2].clone()]
    }

    pub fn feynman(&mut self, inputs: [&String; 2], hints: [&str; 2]) -> [String; 2] {
        let ins = inputs.map(String::clone);
        let out = self.gate(GateKind::Feynman, &ins, &hints);
        [out[0].clone(), out[1].clone()]
    }

    pub fn output(&mut self, name: &str, wire: &str) {
        self.terminal.insert(wire.to_string());
        self.netlist.outputs.push(OutputBinding {
            name: name.to_string(),
            wire: wire.to_string(),
        });
    }

    pub fn garbage(&mut self, wire: &str) {
        self.terminal.insert(wire.to_string());
        self.netlist.garbage.push(wire.to_string());
    }

    pub fn gate_count(&self) -> usize {
        self.netlist.gates.len()
    }

    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn finish(mut self) -> Netlist {
        let leftovers: Vec<String> = self
            .netlist
            .drivers()
            .filter(|w| !self.consumed.contains(*w) && !self.terminal.contains(*w))
            .map(str::to_string)
            .collect();
        self.netlist.garbage.extend(leftovers);
        self.netlist
    }
}
