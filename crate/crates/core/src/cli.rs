// SPDX-License-Identifier: Apache-2.0

//! The `rpla` command line.
//!
//! Exit codes: 0 success, 1 verification or validation failure, 2 usage
//! or parse error.

use std::ffi::OsString;
use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::netlist::{emit_netlist, parse_netlist, Netlist, Simulator};
use crate::pla::{expand_to_minterms, parse_pla, PlaSpec};
use crate::synth::{synthesize, ArrayMode, OrTopology, SynthOptions};
use crate::verify::{garbage_energy, verify_against_spec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub rendered: String,
    pub diagnostics: String,
}

impl CommandOutcome {
    fn ok(rendered: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            rendered,
            diagnostics: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: EXIT_USAGE,
            rendered: String::new(),
            diagnostics: message.into(),
        }
    }

    fn failure(rendered: String, message: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: EXIT_FAILURE,
            rendered,
            diagnostics: message.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rpla",
    version,
    about = "Reversible PLA synthesis and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Used,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TopologyArg {
    Chain,
    Tree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile a .pla file into a Fredkin/Feynman netlist.
    Synth {
        pla: PathBuf,
        /// Write the netlist here instead of standard output.
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "used")]
        mode: ModeArg,
        #[arg(long = "or-topology", value_enum, default_value = "chain")]
        or_topology: TopologyArg,
        /// Discard AND-cell pass-through outputs instead of reusing them.
        #[arg(long)]
        no_reuse: bool,
    },
    /// Evaluate a netlist on one input vector.
    Sim {
        rnl: PathBuf,
        /// One bit per primary input, first declared input first.
        #[arg(long, value_name = "BITS")]
        input: String,
        #[arg(long)]
        show_garbage: bool,
    },
    /// Check a netlist against a .pla file on every input vector.
    Verify { rnl: PathBuf, pla: PathBuf },
    /// Print gate, ancilla and garbage counts.
    Stats {
        rnl: PathBuf,
        /// Also print the Landauer energy of erasing all garbage.
        #[arg(long)]
        energy: bool,
        #[arg(long, value_name = "KELVIN", default_value_t = 300.0)]
        temp: f64,
    },
}

fn read(path: &Path) -> Result<String, CommandOutcome> {
    fs::read_to_string(path)
        .map_err(|e| CommandOutcome::usage(format!("{}: {e}\n", path.display())))
}

fn load_pla(path: &Path) -> Result<PlaSpec, CommandOutcome> {
    parse_pla(&read(path)?).map_err(|e| CommandOutcome::usage(format!("{}: {e}\n", path.display())))
}

fn load_netlist(path: &Path) -> Result<Netlist, CommandOutcome> {
    parse_netlist(&read(path)?)
        .map_err(|e| CommandOutcome::usage(format!("{}: {e}\n", path.display())))
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parse arguments and run one command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::usage(text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Synth {
            pla,
            output,
            mode,
            or_topology,
            no_reuse,
        } => {
            let opts = SynthOptions {
                array_mode: match mode {
                    ModeArg::Full => ArrayMode::Full,
                    ModeArg::Used => ArrayMode::UsedOnly,
                },
                or_topology: match or_topology {
                    TopologyArg::Chain => OrTopology::Chain,
                    TopologyArg::Tree => OrTopology::BalancedTree,
                },
                reuse_passthrough: !no_reuse,
            };
            cmd_synth(&pla, output.as_deref(), &opts)
        }
        Command::Sim {
            rnl,
            input,
            show_garbage,
        } => cmd_sim(&rnl, &input, show_garbage),
        Command::Verify { rnl, pla } => cmd_verify(&rnl, &pla),
        Command::Stats { rnl, energy, temp } => cmd_stats(&rnl, energy.then_some(temp)),
    };
    result.unwrap_or_else(|outcome| outcome)
}

pub fn cmd_synth(
    pla: &Path,
    output: Option<&Path>,
    opts: &SynthOptions,
) -> Result<CommandOutcome, CommandOutcome> {
    let spec = load_pla(pla)?;
    let netlist = synthesize(&expand_to_minterms(&spec), opts)
        .map_err(|e| CommandOutcome::failure(String::new(), format!("{e}\n")))?;
    let text = emit_netlist(&netlist);
    let summary = format!("{}\n", netlist.stats());
    match output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CommandOutcome::usage(format!("{}: {e}\n", path.display())))?;
            Ok(CommandOutcome {
                exit_code: EXIT_OK,
                rendered: String::new(),
                diagnostics: summary,
            })
        }
        None => Ok(CommandOutcome {
            exit_code: EXIT_OK,
            rendered: text,
            diagnostics: summary,
        }),
    }
}

pub fn cmd_sim(
    rnl: &Path,
    input: &str,
    show_garbage: bool,
) -> Result<CommandOutcome, CommandOutcome> {
    let netlist = load_netlist(rnl)?;
    let bits = input
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CommandOutcome::usage(format!(
                "--input must contain only 0 and 1, found `{c}`\n"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if bits.len() != netlist.inputs.len() {
        return Err(CommandOutcome::usage(format!(
            "--input has {} bits but the netlist has {} primary inputs\n",
            bits.len(),
            netlist.inputs.len()
        )));
    }
    let sim = Simulator::new(&netlist)
        .map_err(|e| CommandOutcome::failure(String::new(), format!("{e}\n")))?;
    let eval = sim
        .run(&bits)
        .map_err(|e| CommandOutcome::usage(format!("{e}\n")))?;
    let mut out = String::new();
    for (o, b) in netlist.outputs.iter().zip(&eval.outputs) {
        writeln!(out, "{}={}", o.name, *b as u8).unwrap();
    }
    if show_garbage {
        for (w, b) in netlist.garbage.iter().zip(&eval.garbage) {
            writeln!(out, "garbage {w}={}", *b as u8).unwrap();
        }
    }
    Ok(CommandOutcome::ok(out))
}

pub fn cmd_verify(rnl: &Path, pla: &Path) -> Result<CommandOutcome, CommandOutcome> {
    let netlist = load_netlist(rnl)?;
    let spec = load_pla(pla)?;
    let report = verify_against_spec(&netlist, &spec)
        .map_err(|e| CommandOutcome::usage(format!("{e}\n")))?;
    let mut diagnostics = String::new();
    for w in &report.name_warnings {
        writeln!(diagnostics, "warning: {w}").unwrap();
    }
    let mut out = String::new();
    if report.is_equivalent() {
        writeln!(out, "OK {}/{}", report.matched(), report.total_vectors).unwrap();
    } else {
        writeln!(out, "FAIL {}/{}", report.matched(), report.total_vectors).unwrap();
        let m = &report.mismatches[0];
        writeln!(
            out,
            "first mismatch: input={} expected={} actual={}",
            bit_string(&m.inputs),
            bit_string(&m.expected),
            bit_string(&m.actual)
        )
        .unwrap();
    }
    writeln!(out, "injective={}", report.injective).unwrap();
    let exit_code = if report.is_equivalent() && report.injective {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok(CommandOutcome {
        exit_code,
        rendered: out,
        diagnostics,
    })
}

pub fn cmd_stats(rnl: &Path, energy_temp: Option<f64>) -> Result<CommandOutcome, CommandOutcome> {
    let netlist = load_netlist(rnl)?;
    let r = netlist.stats();
    let mut out = String::new();
    writeln!(out, "fredkin={}", r.fredkin_count).unwrap();
    writeln!(out, "feynman={}", r.feynman_count).unwrap();
    writeln!(out, "ancilla={}", r.ancilla_count).unwrap();
    writeln!(out, "garbage={}", r.garbage_count).unwrap();
    writeln!(out, "width={}", r.width).unwrap();
    writeln!(out, "depth={}", r.depth).unwrap();
    if let Some(t) = energy_temp {
        let joules =
            garbage_energy(&netlist, t).map_err(|e| CommandOutcome::usage(format!("{e}\n")))?;
        writeln!(out, "landauer_joules={joules:.3e}").unwrap();
    }
    Ok(CommandOutcome::ok(out))
}
