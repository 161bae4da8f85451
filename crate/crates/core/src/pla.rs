// SPDX-License-Identifier: Apache-2.0

//! Two-level PLA specifications and their minterm canonical form.
//!
//! The accepted text is a subset of the Berkeley PLA format:
//!
//! ```text
//! .i 3
//! .o 2
//! .ilb A B Cin
//! .ob SUM CARRY
//! .p 1
//! 111 11
//! .e
//! ```
//!
//! Minterm indices put the first input in the most significant position.
//! Only an output mark of `1` adds a cube to that output's OR plane; `0`,
//! `-` and `~` all leave it out.

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Write};

use thiserror::Error;

use crate::netlist::is_identifier;

pub const MAX_INPUTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    Zero,
    One,
    DontCare,
}

impl Literal {
    fn from_char(c: char) -> Option<Literal> {
        match c {
            '0' => Some(Literal::Zero),
            '1' => Some(Literal::One),
            '-' => Some(Literal::DontCare),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Literal::Zero => '0',
            Literal::One => '1',
            Literal::DontCare => '-',
        }
    }

    pub fn covers(self, bit: bool) -> bool {
        match self {
            Literal::Zero => !bit,
            Literal::One => bit,
            Literal::DontCare => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cube {
    pub inputs: Vec<Literal>,
    /// `true` where the cube belongs to that output's OR plane.
    pub outputs: Vec<bool>,
}

impl Cube {
    /// Every minterm index the cube covers, ascending.
    pub fn minterms(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.inputs.len();
        let mut fixed = 0u32;
        let mut free = Vec::new();
        for (i, lit) in self.inputs.iter().enumerate() {
            let weight = 1u32 << (n - 1 - i);
            match lit {
                Literal::One => fixed |= weight,
                Literal::Zero => {}
                Literal::DontCare => free.push(weight),
            }
        }
        // free weights are descending, so counting up in `combo` from the
        // least significant free slot enumerates ascending indices
        (0..1u32 << free.len()).map(move |combo| {
            free.iter()
                .rev()
                .enumerate()
                .filter(|(j, _)| (combo >> j) & 1 == 1)
                .fold(fixed, |acc, (_, w)| acc | w)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("input count must be between 1 and {MAX_INPUTS}, got {0}")]
    InputCount(usize),
    #[error("output count must be at least 1")]
    NoOutputs,
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("cube {cube} has {found} {part} positions, expected {expected}")]
    CubeWidth {
        cube: usize,
        part: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("minterm {index} is outside the {n}-input space")]
    MintermRange { index: u32, n: usize },
}

fn check_names(inputs: &[String], outputs: &[String]) -> Result<(), SpecError> {
    if inputs.is_empty() || inputs.len() > MAX_INPUTS {
        return Err(SpecError::InputCount(inputs.len()));
    }
    if outputs.is_empty() {
        return Err(SpecError::NoOutputs);
    }
    let mut seen = HashSet::new();
    for name in inputs.iter().chain(outputs) {
        if !is_identifier(name) {
            return Err(SpecError::InvalidName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(SpecError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// Default names `in0..` and `out0..`.
pub fn default_names(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i}")).collect()
}

/// An n-input, m-output cube list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaSpec {
    input_names: Vec<String>,
    output_names: Vec<String>,
    cubes: Vec<Cube>,
}

impl PlaSpec {
    pub fn new(
        input_names: Vec<String>,
        output_names: Vec<String>,
        cubes: Vec<Cube>,
    ) -> Result<Self, SpecError> {
        check_names(&input_names, &output_names)?;
        for (i, c) in cubes.iter().enumerate() {
            if c.inputs.len() != input_names.len() {
                return Err(SpecError::CubeWidth {
                    cube: i,
                    part: "input",
                    expected: input_names.len(),
                    found: c.inputs.len(),
                });
            }
            if c.outputs.len() != output_names.len() {
                return Err(SpecError::CubeWidth {
                    cube: i,
                    part: "output",
                    expected: output_names.len(),
                    found: c.outputs.len(),
                });
            }
        }
        Ok(PlaSpec {
            input_names,
            output_names,
            cubes,
        })
    }

    pub fn n(&self) -> usize {
        self.input_names.len()
    }

    pub fn m(&self) -> usize {
        self.output_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }
}

/// Per-output sets of minterm indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MintermSpec {
    input_names: Vec<String>,
    output_names: Vec<String>,
    per_output: Vec<BTreeSet<u32>>,
}

impl MintermSpec {
    pub fn new(
        input_names: Vec<String>,
        output_names: Vec<String>,
        per_output: Vec<BTreeSet<u32>>,
    ) -> Result<Self, SpecError> {
        check_names(&input_names, &output_names)?;
        if per_output.len() != output_names.len() {
            return Err(SpecError::CubeWidth {
                cube: 0,
                part: "output set",
                expected: output_names.len(),
                found: per_output.len(),
            });
        }
        let n = input_names.len();
        if let Some(&index) = per_output.iter().flatten().find(|&&t| t >> n != 0) {
            return Err(SpecError::MintermRange { index, n });
        }
        Ok(MintermSpec {
            input_names,
            output_names,
            per_output,
        })
    }

    /// One output `f` over inputs `in0..in(n-1)`.
    pub fn single_output(n: usize, minterms: BTreeSet<u32>) -> Result<Self, SpecError> {
        Self::new(
            default_names("in", n),
            vec!["f".to_string()],
            vec![minterms],
        )
    }

    pub fn n(&self) -> usize {
        self.input_names.len()
    }

    pub fn m(&self) -> usize {
        self.output_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn per_output(&self) -> &[BTreeSet<u32>] {
        &self.per_output
    }

    /// Minterms referenced by at least one output.
    pub fn used_minterms(&self) -> BTreeSet<u32> {
        self.per_output.iter().flatten().copied().collect()
    }

    /// Dash-free cubes, one per used minterm.
    pub fn to_pla(&self) -> PlaSpec {
        let n = self.n();
        let cubes = self
            .used_minterms()
            .into_iter()
            .map(|t| Cube {
                inputs: (0..n)
                    .map(|i| {
                        if (t >> (n - 1 - i)) & 1 == 1 {
                            Literal::One
                        } else {
                            Literal::Zero
                        }
                    })
                    .collect(),
                outputs: self.per_output.iter().map(|s| s.contains(&t)).collect(),
            })
            .collect();
        PlaSpec {
            input_names: self.input_names.clone(),
            output_names: self.output_names.clone(),
            cubes,
        }
    }
}

/// Expand every cube's dashes; minterm `t` joins output `j` iff some cube
/// covering `t` is marked at `j`.
pub fn expand_to_minterms(spec: &PlaSpec) -> MintermSpec {
    let mut per_output = vec![BTreeSet::new(); spec.m()];
    for cube in &spec.cubes {
        let targets: Vec<usize> = (0..spec.m()).filter(|&j| cube.outputs[j]).collect();
        if targets.is_empty() {
            continue;
        }
        for t in cube.minterms() {
            for &j in &targets {
                per_output[j].insert(t);
            }
        }
    }
    MintermSpec {
        input_names: spec.input_names.clone(),
        output_names: spec.output_names.clone(),
        per_output,
    }
}

/// 2^n rows by m output bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    m: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        1 << self.n
    }

    pub fn row(&self, r: usize) -> &[bool] {
        &self.bits[r * self.m..(r + 1) * self.m]
    }

    pub fn get(&self, r: usize, j: usize) -> bool {
        self.bits[r * self.m + j]
    }
}

pub fn truth_table(spec: &PlaSpec) -> TruthTable {
    minterm_truth_table(&expand_to_minterms(spec))
}

pub fn minterm_truth_table(spec: &MintermSpec) -> TruthTable {
    let (n, m) = (spec.n(), spec.m());
    let mut bits = vec![false; m << n];
    for (j, set) in spec.per_output.iter().enumerate() {
        for &t in set {
            bits[t as usize * m + j] = true;
        }
    }
    TruthTable { n, m, bits }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct PlaError {
    pub line: usize,
    pub kind: PlaErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaErrorKind {
    MissingDirective(&'static str),
    DuplicateDirective(&'static str),
    UnsupportedDirective(String),
    BadCount {
        directive: &'static str,
        value: String,
    },
    InputCount(usize),
    NameCount {
        directive: &'static str,
        expected: usize,
        found: usize,
    },
    InvalidName(String),
    DuplicateName(String),
    CubeFormat,
    CubeWidth {
        part: &'static str,
        expected: usize,
        found: usize,
    },
    IllegalCharacter(char),
    ProductCount {
        declared: usize,
        found: usize,
    },
}

impl fmt::Display for PlaErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaErrorKind::MissingDirective(d) => write!(f, "missing `{d}` directive"),
            PlaErrorKind::DuplicateDirective(d) => write!(f, "`{d}` given twice"),
            PlaErrorKind::UnsupportedDirective(d) => write!(f, "unsupported directive `{d}`"),
            PlaErrorKind::BadCount { directive, value } => {
                write!(f, "`{directive}` needs a count, found `{value}`")
            }
            PlaErrorKind::InputCount(n) => {
                write!(f, "input count must be between 1 and {MAX_INPUTS}, got {n}")
            }
            PlaErrorKind::NameCount {
                directive,
                expected,
                found,
            } => write!(f, "`{directive}` lists {found} names, expected {expected}"),
            PlaErrorKind::InvalidName(n) => write!(f, "invalid name `{n}`"),
            PlaErrorKind::DuplicateName(n) => write!(f, "duplicate name `{n}`"),
            PlaErrorKind::CubeFormat => {
                f.write_str("cube must be an input part and an output part separated by whitespace")
            }
            PlaErrorKind::CubeWidth {
                part,
                expected,
                found,
            } => write!(
                f,
                "cube {part} part has {found} characters, expected {expected}"
            ),
            PlaErrorKind::IllegalCharacter(c) => write!(f, "illegal character `{c}` in cube"),
            PlaErrorKind::ProductCount { declared, found } => {
                write!(f, "`.p` declares {declared} cubes, found {found}")
            }
        }
    }
}

fn perr(line: usize, kind: PlaErrorKind) -> PlaError {
    PlaError { line, kind }
}

fn count(line: usize, directive: &'static str, args: &[&str]) -> Result<usize, PlaError> {
    match args {
        [v] => v.parse().map_err(|_| {
            perr(
                line,
                PlaErrorKind::BadCount {
                    directive,
                    value: v.to_string(),
                },
            )
        }),
        _ => Err(perr(
            line,
            PlaErrorKind::BadCount {
                directive,
                value: args.join(" "),
            },
        )),
    }
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    line: usize,
    directive: &'static str,
) -> Result<(), PlaError> {
    if slot.replace(value).is_some() {
        return Err(perr(line, PlaErrorKind::DuplicateDirective(directive)));
    }
    Ok(())
}

pub fn parse_pla(text: &str) -> Result<PlaSpec, PlaError> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut ilb: Option<(usize, Vec<String>)> = None;
    let mut ob: Option<(usize, Vec<String>)> = None;
    let mut declared_p: Option<(usize, usize)> = None;
    let mut cubes = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if let Some(directive) = tokens[0].strip_prefix('.') {
            let args = &tokens[1..];
            match directive {
                "i" => {
                    let v = count(line, ".i", args)?;
                    if v == 0 || v > MAX_INPUTS {
                        return Err(perr(line, PlaErrorKind::InputCount(v)));
                    }
                    set_once(&mut n, v, line, ".i")?;
                }
                "o" => {
                    let v = count(line, ".o", args)?;
                    if v == 0 {
                        return Err(perr(
                            line,
                            PlaErrorKind::BadCount {
                                directive: ".o",
                                value: "0".into(),
                            },
                        ));
                    }
                    set_once(&mut m, v, line, ".o")?;
                }
                "ilb" => set_once(
                    &mut ilb,
                    (line, args.iter().map(|s| s.to_string()).collect()),
                    line,
                    ".ilb",
                )?,
                "ob" => set_once(
                    &mut ob,
                    (line, args.iter().map(|s| s.to_string()).collect()),
                    line,
                    ".ob",
                )?,
                "p" => set_once(
                    &mut declared_p,
                    (line, count(line, ".p", args)?),
                    line,
                    ".p",
                )?,
                "e" | "end" => break,
                other => {
                    return Err(perr(
                        line,
                        PlaErrorKind::UnsupportedDirective(format!(".{other}")),
                    ))
                }
            }
            continue;
        }

        let ni = n.ok_or(perr(line, PlaErrorKind::MissingDirective(".i")))?;
        let mo = m.ok_or(perr(line, PlaErrorKind::MissingDirective(".o")))?;
        let [input_part, output_part] = tokens[..] else {
            return Err(perr(line, PlaErrorKind::CubeFormat));
        };
        let inputs = input_part
            .chars()
            .map(|c| Literal::from_char(c).ok_or(perr(line, PlaErrorKind::IllegalCharacter(c))))
            .collect::<Result<Vec<_>, _>>()?;
        if inputs.len() != ni {
            return Err(perr(
                line,
                PlaErrorKind::CubeWidth {
                    part: "input",
                    expected: ni,
                    found: inputs.len(),
                },
            ));
        }
        let outputs = output_part
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' | '-' | '~' => Ok(false),
                other => Err(perr(line, PlaErrorKind::IllegalCharacter(other))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if outputs.len() != mo {
            return Err(perr(
                line,
                PlaErrorKind::CubeWidth {
                    part: "output",
                    expected: mo,
                    found: outputs.len(),
                },
            ));
        }
        cubes.push(Cube { inputs, outputs });
    }

    let n = n.ok_or(perr(last_line, PlaErrorKind::MissingDirective(".i")))?;
    let m = m.ok_or(perr(last_line, PlaErrorKind::MissingDirective(".o")))?;
    if let Some((line, declared)) = declared_p {
        if declared != cubes.len() {
            return Err(perr(
                line,
                PlaErrorKind::ProductCount {
                    declared,
                    found: cubes.len(),
                },
            ));
        }
    }

    let names = |given: Option<(usize, Vec<String>)>,
                 directive: &'static str,
                 expected: usize,
                 prefix: &str|
     -> Result<(usize, Vec<String>), PlaError> {
        match given {
            None => Ok((last_line, default_names(prefix, expected))),
            Some((line, list)) if list.len() != expected => Err(perr(
                line,
                PlaErrorKind::NameCount {
                    directive,
                    expected,
                    found: list.len(),
                },
            )),
            Some(named) => Ok(named),
        }
    };
    let (ilb_line, input_names) = names(ilb, ".ilb", n, "in")?;
    let (ob_line, output_names) = names(ob, ".ob", m, "out")?;

    let mut seen = HashSet::new();
    for (line, name) in input_names
        .iter()
        .map(|s| (ilb_line, s))
        .chain(output_names.iter().map(|s| (ob_line, s)))
    {
        if !is_identifier(name) {
            return Err(perr(line, PlaErrorKind::InvalidName(name.clone())));
        }
        if !seen.insert(name.as_str()) {
            return Err(perr(line, PlaErrorKind::DuplicateName(name.clone())));
        }
    }

    Ok(PlaSpec {
        input_names,
        output_names,
        cubes,
    })
}

/// Render a spec in the accepted PLA subset.
pub fn emit_pla(spec: &PlaSpec) -> String {
    let mut out = String::new();
    writeln!(out, ".i {}", spec.n()).unwrap();
    writeln!(out, ".o {}", spec.m()).unwrap();
    writeln!(out, ".ilb {}", spec.input_names.join(" ")).unwrap();
    writeln!(out, ".ob {}", spec.output_names.join(" ")).unwrap();
    writeln!(out, ".p {}", spec.cubes.len()).unwrap();
    for c in &spec.cubes {
        let ins: String = c.inputs.iter().map(|l| l.as_char()).collect();
        let outs: String = c
            .outputs
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        writeln!(out, "{ins} {outs}").unwrap();
    }
    out.push_str(".e\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ADDER: &str = "\
.i 3
.o 2
.ilb A B Cin
.ob SUM CARRY
.p 7
001 10
010 10
100 10
111 11
011 01
101 01
110 01
.e
";

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn single_cube() {
        let spec = parse_pla(".i 3\n.o 2\n111 11\n.e\n").unwrap();
        assert_eq!(spec.n(), 3);
        assert_eq!(spec.m(), 2);
        assert_eq!(spec.input_names(), &["in0", "in1", "in2"]);
        assert_eq!(spec.output_names(), &["out0", "out1"]);
        let mt = expand_to_minterms(&spec);
        assert_eq!(mt.per_output(), &[set(&[7]), set(&[7])]);
    }

    #[test]
    fn adder() {
        let spec = parse_pla(ADDER).unwrap();
        assert_eq!(spec.cubes().len(), 7);
        let mt = expand_to_minterms(&spec);
        assert_eq!(mt.per_output(), &[set(&[1, 2, 4, 7]), set(&[3, 5, 6, 7])]);
        let tt = truth_table(&spec);
        assert_eq!(tt.row(7), &[true, true]);
        for r in 0..8usize {
            let sum = (r >> 2) + ((r >> 1) & 1) + (r & 1);
            assert_eq!(tt.row(r), &[sum & 1 == 1, sum >> 1 == 1]);
        }
    }

    #[test]
    fn dash_expansion() {
        let spec = parse_pla(".i 3\n.o 1\n1-1 1\n").unwrap();
        assert_eq!(spec.cubes()[0].inputs[1], Literal::DontCare);
        assert_eq!(expand_to_minterms(&spec).per_output(), &[set(&[5, 7])]);

        let spec = parse_pla(".i 4\n.o 1\n-0-1 1\n").unwrap();
        let got: Vec<u32> = spec.cubes()[0].minterms().collect();
        assert_eq!(got, vec![0b0001, 0b0011, 0b1001, 0b1011]);
    }

    #[test]
    fn overlapping_cubes() {
        let spec = parse_pla(".i 3\n.o 2\n111 10\n111 01\n").unwrap();
        assert_eq!(
            expand_to_minterms(&spec).per_output(),
            &[set(&[7]), set(&[7])]
        );
    }

    #[test]
    fn zero_cubes() {
        let spec = parse_pla(".i 3\n.o 2\n.e\n").unwrap();
        let mt = expand_to_minterms(&spec);
        assert!(mt.per_output().iter().all(BTreeSet::is_empty));
        let tt = truth_table(&spec);
        assert!((0..8).all(|r| tt.row(r) == [false, false]));
    }

    #[test]
    fn all_ones_column() {
        let spec = parse_pla(".i 3\n.o 1\n--- 1\n").unwrap();
        let tt = truth_table(&spec);
        assert!((0..8).all(|r| tt.get(r, 0)));
    }

    #[test]
    fn non_one_output_marks_do_not_cover() {
        let spec = parse_pla(".i 2\n.o 4\n11 1-~0\n").unwrap();
        assert_eq!(
            expand_to_minterms(&spec).per_output(),
            &[set(&[3]), set(&[]), set(&[]), set(&[])]
        );
    }

    #[test]
    fn index_convention() {
        // first input is the most significant bit
        let spec = parse_pla(".i 3\n.o 1\n.ilb A B C\n100 1\n").unwrap();
        assert_eq!(expand_to_minterms(&spec).per_output(), &[set(&[4])]);
        let spec = parse_pla(".i 3\n.o 1\n.ilb A B C\n001 1\n").unwrap();
        assert_eq!(expand_to_minterms(&spec).per_output(), &[set(&[1])]);
    }

    #[test]
    fn errors() {
        let e = parse_pla(".o 1\n1 1\n").unwrap_err();
        assert_eq!(e, perr(2, PlaErrorKind::MissingDirective(".i")));
        let e = parse_pla(".i 1\n").unwrap_err();
        assert_eq!(e.kind, PlaErrorKind::MissingDirective(".o"));
        let e = parse_pla(".i 3\n.o 1\n11 1\n").unwrap_err();
        assert_eq!(
            e,
            perr(
                3,
                PlaErrorKind::CubeWidth {
                    part: "input",
                    expected: 3,
                    found: 2
                }
            )
        );
        let e = parse_pla(".i 3\n.o 1\n1x1 1\n").unwrap_err();
        assert_eq!(e, perr(3, PlaErrorKind::IllegalCharacter('x')));
        let e = parse_pla(".i 3\n.o 1\n111 2\n").unwrap_err();
        assert_eq!(e, perr(3, PlaErrorKind::IllegalCharacter('2')));
        let e = parse_pla(".i 3\n.o 1\n.p 2\n111 1\n.e\n").unwrap_err();
        assert_eq!(
            e,
            perr(
                3,
                PlaErrorKind::ProductCount {
                    declared: 2,
                    found: 1
                }
            )
        );
        let e = parse_pla(".i 3\n.o 1\n111 11\n").unwrap_err();
        assert!(matches!(
            e.kind,
            PlaErrorKind::CubeWidth { part: "output", .. }
        ));
        let e = parse_pla(".i 17\n.o 1\n").unwrap_err();
        assert_eq!(e.kind, PlaErrorKind::InputCount(17));
        let e = parse_pla(".i 2\n.o 1\n.ilb a a\n").unwrap_err();
        assert_eq!(e, perr(3, PlaErrorKind::DuplicateName("a".into())));
        let e = parse_pla(".i 2\n.o 1\n.ilb a\n").unwrap_err();
        assert!(matches!(e.kind, PlaErrorKind::NameCount { .. }));
        let e = parse_pla(".i 2\n.o 1\n.type fr\n").unwrap_err();
        assert!(matches!(e.kind, PlaErrorKind::UnsupportedDirective(_)));
        let e = parse_pla(".i 2\n.o 1\n111\n").unwrap_err();
        assert_eq!(e.kind, PlaErrorKind::CubeFormat);
        let e = parse_pla(".i 2\n.i 2\n").unwrap_err();
        assert_eq!(e.kind, PlaErrorKind::DuplicateDirective(".i"));
    }

    #[test]
    fn content_after_end_is_ignored() {
        let spec = parse_pla(".i 1\n.o 1\n1 1\n.e\nwhatever\n").unwrap();
        assert_eq!(spec.cubes().len(), 1);
    }

    #[test]
    fn spec_constructors() {
        assert_eq!(
            MintermSpec::single_output(2, set(&[4])),
            Err(SpecError::MintermRange { index: 4, n: 2 })
        );
        assert!(MintermSpec::single_output(0, set(&[])).is_err());
        assert!(PlaSpec::new(vec!["a".into()], vec![], vec![]).is_err());
    }

    fn arb_spec() -> impl Strategy<Value = PlaSpec> {
        (1usize..=6, 1usize..=4).prop_flat_map(|(n, m)| {
            let cube = (
                prop::collection::vec(
                    prop_oneof![
                        Just(Literal::Zero),
                        Just(Literal::One),
                        Just(Literal::DontCare)
                    ],
                    n,
                ),
                prop::collection::vec(any::<bool>(), m),
            )
                .prop_map(|(inputs, outputs)| Cube { inputs, outputs });
            prop::collection::vec(cube, 0..=12).prop_map(move |cubes| {
                PlaSpec::new(default_names("x", n), default_names("y", m), cubes).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn truth_table_matches_cube_evaluation(spec in arb_spec()) {
            let tt = truth_table(&spec);
            let n = spec.n();
            for r in 0..1usize << n {
                let bits: Vec<bool> = (0..n).map(|i| (r >> (n - 1 - i)) & 1 == 1).collect();
                for j in 0..spec.m() {
                    let direct = spec.cubes().iter().any(|c| {
                        c.outputs[j] && c.inputs.iter().zip(&bits).all(|(l, &b)| l.covers(b))
                    });
                    prop_assert_eq!(tt.get(r, j), direct);
                }
            }
        }

        #[test]
        fn re_expansion_is_idempotent(spec in arb_spec()) {
            let once = expand_to_minterms(&spec);
            let twice = expand_to_minterms(&once.to_pla());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn emit_parse_round_trip(spec in arb_spec()) {
            prop_assert_eq!(parse_pla(&emit_pla(&spec)).unwrap(), spec);
        }
    }
}
