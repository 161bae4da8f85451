// SPDX-License-Identifier: Apache-2.0

//! Exhaustive verification of netlists against PLA truth tables.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::gate::Bit;
use crate::netlist::{Netlist, SimError, Simulator};
use crate::pla::{minterm_truth_table, truth_table, MintermSpec, PlaSpec, TruthTable, MAX_INPUTS};
use crate::synth::{synthesize, SynthOptions};

/// Boltzmann constant in J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Only this many mismatches are kept in a report.
pub const MAX_REPORTED_MISMATCHES: usize = 32;

const CHUNK: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("netlist has {netlist} primary inputs, specification has {spec}")]
    InputCount { netlist: usize, spec: usize },
    #[error("netlist has {netlist} primary outputs, specification has {spec}")]
    OutputCount { netlist: usize, spec: usize },
    #[error("{0} inputs is beyond the exhaustive limit of {MAX_INPUTS}")]
    TooManyInputs(usize),
    #[error("function enumeration supports at most 4 inputs, got {0}")]
    EnumerationTooLarge(usize),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Binary index of the input vector, first input most significant.
    pub vector: u64,
    pub inputs: Vec<Bit>,
    pub expected: Vec<Bit>,
    pub actual: Vec<Bit>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub total_vectors: u64,
    pub mismatch_count: u64,
    /// The first mismatches in ascending vector order.
    pub mismatches: Vec<Mismatch>,
    /// Whether all terminal tuples (outputs then garbage) are distinct.
    pub injective: bool,
    /// Positional name differences between netlist and specification.
    pub name_warnings: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn matched(&self) -> u64 {
        self.total_vectors - self.mismatch_count
    }

    pub fn is_equivalent(&self) -> bool {
        self.mismatch_count == 0
    }
}

fn bits_of(v: u64, n: usize) -> Vec<Bit> {
    (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect()
}

fn pack(bits: impl Iterator<Item = Bit>) -> Vec<u64> {
    let mut words = Vec::new();
    for (i, b) in bits.enumerate() {
        if i % 64 == 0 {
            words.push(0);
        }
        if b {
            *words.last_mut().unwrap() |= 1 << (i % 64);
        }
    }
    words
}

fn all_distinct(mut tuples: Vec<Vec<u64>>) -> bool {
    tuples.par_sort_unstable();
    tuples.windows(2).all(|w| w[0] != w[1])
}

struct Chunk {
    mismatch_count: u64,
    mismatches: Vec<Mismatch>,
    tuples: Vec<Vec<u64>>,
}

/// Compare every input vector of `netlist` against `table`.
///
/// Inputs and outputs are matched by position; differing names are
/// reported as warnings.
pub fn verify_against_table(
    netlist: &Netlist,
    table: &TruthTable,
    input_names: &[String],
    output_names: &[String],
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let n = table.n();
    if n > MAX_INPUTS {
        return Err(VerifyError::TooManyInputs(n));
    }
    if netlist.inputs.len() != n {
        return Err(VerifyError::InputCount {
            netlist: netlist.inputs.len(),
            spec: n,
        });
    }
    if netlist.outputs.len() != table.m() {
        return Err(VerifyError::OutputCount {
            netlist: netlist.outputs.len(),
            spec: table.m(),
        });
    }
    let sim = Simulator::new(netlist)?;

    let mut name_warnings = Vec::new();
    for (kind, ours, theirs) in [
        ("input", sim.input_names(), input_names),
        ("output", sim.output_names(), output_names),
    ] {
        for (pos, (a, b)) in ours.iter().zip(theirs).enumerate() {
            if a != b {
                name_warnings.push(format!(
                    "{kind} {pos} is `{a}` in the netlist but `{b}` in the specification"
                ));
            }
        }
    }

    let total = 1u64 << n;
    let chunks: Vec<Chunk> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut scratch = Vec::new();
            let mut chunk = Chunk {
                mismatch_count: 0,
                mismatches: Vec::new(),
                tuples: Vec::new(),
            };
            for v in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let eval = sim.run_index(v, &mut scratch);
                let expected = table.row(v as usize);
                if eval.outputs != expected {
                    chunk.mismatch_count += 1;
                    if chunk.mismatches.len() < MAX_REPORTED_MISMATCHES {
                        chunk.mismatches.push(Mismatch {
                            vector: v,
                            inputs: bits_of(v, n),
                            expected: expected.to_vec(),
                            actual: eval.outputs.clone(),
                        });
                    }
                }
                chunk.tuples.push(pack(eval.terminal()));
            }
            chunk
        })
        .collect();

    let mut mismatch_count = 0;
    let mut mismatches = Vec::new();
    let mut tuples = Vec::with_capacity(total as usize);
    for chunk in chunks {
        mismatch_count += chunk.mismatch_count;
        let room = MAX_REPORTED_MISMATCHES - mismatches.len();
        mismatches.extend(chunk.mismatches.into_iter().take(room));
        tuples.extend(chunk.tuples);
    }
    let injective = all_distinct(tuples);

    Ok(VerificationReport {
        total_vectors: total,
        mismatch_count,
        mismatches,
        injective,
        name_warnings,
        elapsed: started.elapsed(),
    })
}

pub fn verify_against_spec(
    netlist: &Netlist,
    spec: &PlaSpec,
) -> Result<VerificationReport, VerifyError> {
    if spec.n() != netlist.inputs.len() {
        return Err(VerifyError::InputCount {
            netlist: netlist.inputs.len(),
            spec: spec.n(),
        });
    }
    verify_against_table(
        netlist,
        &truth_table(spec),
        spec.input_names(),
        spec.output_names(),
    )
}

pub fn verify_against_minterms(
    netlist: &Netlist,
    spec: &MintermSpec,
) -> Result<VerificationReport, VerifyError> {
    verify_against_table(
        netlist,
        &minterm_truth_table(spec),
        spec.input_names(),
        spec.output_names(),
    )
}

#[derive(Clone, Debug)]
pub struct EnumerationSummary {
    pub n: usize,
    pub functions_checked: u64,
    /// Minterm masks (bit t set = minterm t in the on-set) that failed.
    pub failures: Vec<u64>,
    pub elapsed: Duration,
}

/// Synthesize and exhaustively verify every single-output function of
/// `n ≤ 4` inputs under `opts`.
pub fn verify_all_single_output_functions_with(
    n: usize,
    opts: &SynthOptions,
) -> Result<EnumerationSummary, VerifyError> {
    if n == 0 || n > 4 {
        return Err(VerifyError::EnumerationTooLarge(n));
    }
    let started = Instant::now();
    let rows = 1u32 << n;
    let count = 1u64 << rows;
    let mut failures: Vec<u64> = (0..count)
        .into_par_iter()
        .filter(|&mask| {
            let on: BTreeSet<u32> = (0..rows).filter(|t| (mask >> t) & 1 == 1).collect();
            let spec = MintermSpec::single_output(n, on).expect("enumerated spec is valid");
            match synthesize(&spec, opts) {
                Ok(netlist) => match verify_against_minterms(&netlist, &spec) {
                    Ok(r) => !(r.is_equivalent() && r.injective),
                    Err(_) => true,
                },
                Err(_) => true,
            }
        })
        .collect();
    failures.sort_unstable();
    Ok(EnumerationSummary {
        n,
        functions_checked: count,
        failures,
        elapsed: started.elapsed(),
    })
}

/// [`verify_all_single_output_functions_with`] under default options.
pub fn verify_all_single_output_functions(n: usize) -> Result<EnumerationSummary, VerifyError> {
    verify_all_single_output_functions_with(n, &SynthOptions::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("temperature must be a positive number of kelvin, got {0}")]
pub struct TemperatureError(pub f64);

/// Minimum heat, in joules, from erasing `bits_erased` bits at
/// `temperature` kelvin: `bits · k · T · ln 2`.
pub fn landauer_bound(bits_erased: u64, temperature: f64) -> Result<f64, TemperatureError> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(TemperatureError(temperature));
    }
    Ok(bits_erased as f64 * BOLTZMANN * temperature * std::f64::consts::LN_2)
}

/// Landauer energy of erasing every garbage wire of `netlist`.
pub fn garbage_energy(netlist: &Netlist, temperature: f64) -> Result<f64, TemperatureError> {
    landauer_bound(netlist.stats().garbage_count as u64, temperature)
}
