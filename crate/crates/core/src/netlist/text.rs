// SPDX-License-Identifier: Apache-2.0

//! The line-based `.rnl` netlist format.
//!
//! ```text
//! input <name>
//! const <0|1> <name>
//! fredkin <a> <b> <c> -> <p> <q> <r>
//! feynman <a> <b> -> <p> <q>
//! output <name> <wire>
//! garbage <wire>
//! ```
//!
//! `#` starts a comment. Every wire must be declared before it is used,
//! so the text order is a topological order.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write};

use thiserror::Error;

use super::{is_identifier, Ancilla, GateInstance, Netlist, OutputBinding};
use crate::gate::GateKind;

/// Render a netlist: inputs, constants, gates, outputs, then garbage.
pub fn emit_netlist(netlist: &Netlist) -> String {
    let mut out = String::new();
    for w in &netlist.inputs {
        writeln!(out, "input {w}").unwrap();
    }
    for a in &netlist.ancillas {
        writeln!(out, "const {} {}", a.value as u8, a.wire).unwrap();
    }
    for g in &netlist.gates {
        writeln!(
            out,
            "{} {} -> {}",
            g.kind,
            g.inputs.join(" "),
            g.outputs.join(" ")
        )
        .unwrap();
    }
    for o in &netlist.outputs {
        writeln!(out, "output {} {}", o.name, o.wire).unwrap();
    }
    for w in &netlist.garbage {
        writeln!(out, "garbage {w}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    InvalidIdentifier(String),
    ForwardReference(String),
    Redeclaration(String),
    Arity {
        kind: GateKind,
        side: &'static str,
        found: usize,
    },
    FanOut(String),
    DuplicateOutputName(String),
    OutputAndGarbage(String),
    Dangling(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::InvalidIdentifier(id) => write!(f, "invalid identifier `{id}`"),
            ParseErrorKind::ForwardReference(w) => {
                write!(f, "wire `{w}` is used before it is declared")
            }
            ParseErrorKind::Redeclaration(w) => write!(f, "wire `{w}` is already declared"),
            ParseErrorKind::Arity { kind, side, found } => {
                write!(f, "{kind} requires {} {side}, found {found}", kind.arity())
            }
            ParseErrorKind::FanOut(w) => write!(f, "wire `{w}` is already consumed"),
            ParseErrorKind::DuplicateOutputName(n) => write!(f, "output `{n}` is already bound"),
            ParseErrorKind::OutputAndGarbage(w) => {
                write!(f, "wire `{w}` is both a primary output and garbage")
            }
            ParseErrorKind::Dangling(w) => write!(
                f,
                "wire `{w}` declared here is never consumed, output, or marked garbage"
            ),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Terminal {
    Output,
    Garbage,
}

#[derive(Default)]
struct State {
    netlist: Netlist,
    declared: HashMap<String, usize>,
    order: Vec<String>,
    consumed: HashSet<String>,
    terminal: HashMap<String, Terminal>,
    output_names: HashSet<String>,
}

impl State {
    fn declare(&mut self, line: usize, id: &str) -> Result<(), ParseError> {
        ident(line, id)?;
        if self.declared.contains_key(id) {
            return Err(err(line, ParseErrorKind::Redeclaration(id.to_string())));
        }
        self.declared.insert(id.to_string(), line);
        self.order.push(id.to_string());
        Ok(())
    }

    fn require(&self, line: usize, id: &str) -> Result<(), ParseError> {
        ident(line, id)?;
        if !self.declared.contains_key(id) {
            return Err(err(line, ParseErrorKind::ForwardReference(id.to_string())));
        }
        if self.consumed.contains(id) {
            return Err(err(line, ParseErrorKind::FanOut(id.to_string())));
        }
        Ok(())
    }

    fn consume(&mut self, line: usize, id: &str) -> Result<(), ParseError> {
        self.require(line, id)?;
        if self.terminal.contains_key(id) {
            return Err(err(line, ParseErrorKind::FanOut(id.to_string())));
        }
        self.consumed.insert(id.to_string());
        Ok(())
    }

    fn mark(&mut self, line: usize, id: &str, role: Terminal) -> Result<(), ParseError> {
        self.require(line, id)?;
        match self.terminal.get(id) {
            None => {}
            Some(&prev) if prev != role => {
                return Err(err(line, ParseErrorKind::OutputAndGarbage(id.to_string())))
            }
            Some(_) => return Err(err(line, ParseErrorKind::FanOut(id.to_string()))),
        }
        self.terminal.insert(id.to_string(), role);
        Ok(())
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn ident(line: usize, id: &str) -> Result<(), ParseError> {
    if is_identifier(id) {
        Ok(())
    } else {
        Err(err(line, ParseErrorKind::InvalidIdentifier(id.to_string())))
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    err(line, ParseErrorKind::Syntax(msg.into()))
}

/// Parse `.rnl` text. The result always passes [`Netlist::validate`].
pub fn parse_netlist(text: &str) -> Result<Netlist, ParseError> {
    let mut st = State::default();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = tokens.split_first() else {
            continue;
        };
        match head {
            "input" => {
                let [name] = args else {
                    return Err(syntax(line, "expected `input <name>`"));
                };
                st.declare(line, name)?;
                st.netlist.inputs.push(name.to_string());
            }
            "const" => {
                let [value, name] = args else {
                    return Err(syntax(line, "expected `const <0|1> <name>`"));
                };
                let value = match *value {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(syntax(
                            line,
                            format!("constant value must be 0 or 1, found `{other}`"),
                        ))
                    }
                };
                st.declare(line, name)?;
                st.netlist.ancillas.push(Ancilla {
                    wire: name.to_string(),
                    value,
                });
            }
            "output" => {
                let [name, wire] = args else {
                    return Err(syntax(line, "expected `output <name> <wire>`"));
                };
                ident(line, name)?;
                if !st.output_names.insert(name.to_string()) {
                    return Err(err(
                        line,
                        ParseErrorKind::DuplicateOutputName(name.to_string()),
                    ));
                }
                st.mark(line, wire, Terminal::Output)?;
                st.netlist.outputs.push(OutputBinding {
                    name: name.to_string(),
                    wire: wire.to_string(),
                });
            }
            "garbage" => {
                let [wire] = args else {
                    return Err(syntax(line, "expected `garbage <wire>`"));
                };
                st.mark(line, wire, Terminal::Garbage)?;
                st.netlist.garbage.push(wire.to_string());
            }
            word => {
                let Some(kind) = GateKind::from_keyword(word) else {
                    return Err(syntax(line, format!("unknown statement `{word}`")));
                };
                let arrows: Vec<usize> = args
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| **t == "->")
                    .map(|(i, _)| i)
                    .collect();
                let [arrow] = arrows[..] else {
                    return Err(syntax(
                        line,
                        format!("expected exactly one `->` in {kind} statement"),
                    ));
                };
                let (ins, outs) = (&args[..arrow], &args[arrow + 1..]);
                if ins.len() != kind.arity() {
                    return Err(err(
                        line,
                        ParseErrorKind::Arity {
                            kind,
                            side: "inputs",
                            found: ins.len(),
                        },
                    ));
                }
                if outs.len() != kind.arity() {
                    return Err(err(
                        line,
                        ParseErrorKind::Arity {
                            kind,
                            side: "outputs",
                            found: outs.len(),
                        },
                    ));
                }
                for w in ins {
                    st.consume(line, w)?;
                }
                for w in outs {
                    st.declare(line, w)?;
                }
                st.netlist.gates.push(GateInstance {
                    kind,
                    inputs: ins.iter().map(|s| s.to_string()).collect(),
                    outputs: outs.iter().map(|s| s.to_string()).collect(),
                });
            }
        }
    }

    if let Some(w) = st
        .order
        .iter()
        .find(|w| !st.consumed.contains(*w) && !st.terminal.contains_key(*w))
    {
        let line = st.declared.get(w).copied().unwrap_or(last_line);
        return Err(err(line, ParseErrorKind::Dangling(w.clone())));
    }

    debug_assert!(st.netlist.validate().is_empty());
    Ok(st.netlist)
}
