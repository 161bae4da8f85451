// SPDX-License-Identifier: Apache-2.0

//! Reversible programmable logic arrays.
//!
//! Two-level PLA specifications are compiled into netlists of Fredkin and
//! Feynman gates: a Feynman literal plane that complements and copies the
//! inputs, a Fredkin AND plane that forms minterms, and a Fredkin OR plane
//! that sums them into outputs. Every netlist can be checked exhaustively
//! against the truth table of its specification.

pub mod cli;
pub mod gate;
pub mod netlist;
pub mod pla;
pub mod synth;
pub mod verify;

pub use gate::{Bit, GateKind};
pub use netlist::{emit_netlist, parse_netlist, CostReport, Netlist};
pub use pla::{expand_to_minterms, parse_pla, truth_table, MintermSpec, PlaSpec};
pub use synth::{predicted_costs, synthesize, ArrayMode, OrTopology, SynthOptions};
pub use verify::{landauer_bound, verify_against_spec, VerificationReport};
