// SPDX-License-Identifier: Apache-2.0

//! Three-plane reversible PLA synthesis.
//!
//! 1. Literal plane: one Feynman complementer `(x, 1) -> (x, ¬x)` per input
//!    whose negation is needed, then Feynman copier chains
//!    `(w, 0) -> (w, w)` until every literal has exactly as many copies as
//!    the AND plane consumes.
//! 2. AND plane: each realized minterm is a left-to-right chain of n−1
//!    Fredkin AND cells `(partial, literal, 0) -> (partial, ¬partial∧literal,
//!    partial∧literal)` over literals in input order.
//! 3. OR plane: product terms shared by several outputs are copied with
//!    Feynman copiers, then each output with p product terms folds them
//!    with p−1 Fredkin OR cells `(x, y, 1) -> (x, x∨y, ¬x∨y)`.
//!
//! With pass-through reuse, the first AND cell's `y1` output (a clean copy
//! of the minterm's first literal) feeds the next minterm that needs the
//! same literal instead of becoming garbage.

mod cost;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::gate::GateKind;
use crate::netlist::{Diagnostic, Netlist, NetlistBuilder};
use crate::pla::MintermSpec;

pub use cost::{predicted_costs, predicted_plane_counts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ArrayMode {
    /// Realize every one of the 2^n minterms.
    Full,
    /// Realize only minterms some output references.
    #[default]
    UsedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum OrTopology {
    #[default]
    Chain,
    BalancedTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SynthOptions {
    pub array_mode: ArrayMode,
    pub or_topology: OrTopology,
    pub reuse_passthrough: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            array_mode: ArrayMode::UsedOnly,
            or_topology: OrTopology::Chain,
            reuse_passthrough: true,
        }
    }
}

impl SynthOptions {
    /// All eight option combinations.
    pub fn all() -> impl Iterator<Item = SynthOptions> {
        [ArrayMode::Full, ArrayMode::UsedOnly]
            .into_iter()
            .flat_map(|array_mode| {
                [OrTopology::Chain, OrTopology::BalancedTree]
                    .into_iter()
                    .map(move |or_topology| (array_mode, or_topology))
            })
            .flat_map(|(array_mode, or_topology)| {
                [false, true]
                    .into_iter()
                    .map(move |reuse_passthrough| SynthOptions {
                        array_mode,
                        or_topology,
                        reuse_passthrough,
                    })
            })
    }
}

impl fmt::Display for SynthOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.array_mode {
            ArrayMode::Full => "full",
            ArrayMode::UsedOnly => "used",
        };
        let topo = match self.or_topology {
            OrTopology::Chain => "chain",
            OrTopology::BalancedTree => "tree",
        };
        write!(
            f,
            "mode={mode} or={topo} reuse={}",
            if self.reuse_passthrough { "on" } else { "off" }
        )
    }
}

/// `x_input` when `positive`, else `¬x_input`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiteralRef {
    pub input: usize,
    pub positive: bool,
}

impl LiteralRef {
    /// The literal of input `input` that minterm `t` over `n` inputs uses.
    pub fn of_minterm(t: u32, input: usize, n: usize) -> LiteralRef {
        LiteralRef {
            input,
            positive: (t >> (n - 1 - input)) & 1 == 1,
        }
    }
}

/// Literal copy counts and product-term sharing for one synthesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demand {
    pub n: usize,
    /// Realized minterms, ascending.
    pub realized: Vec<u32>,
    /// Copies of `x_i` the literal plane must produce.
    pub positive: Vec<usize>,
    /// Copies of `¬x_i` the literal plane must produce.
    pub negative: Vec<usize>,
    /// Number of outputs consuming each realized minterm, parallel to
    /// `realized`.
    pub sharing: Vec<usize>,
}

impl Demand {
    pub fn literal(&self, lit: LiteralRef) -> usize {
        if lit.positive {
            self.positive[lit.input]
        } else {
            self.negative[lit.input]
        }
    }

    pub fn sharing_of(&self, t: u32) -> Option<usize> {
        self.realized
            .binary_search(&t)
            .ok()
            .map(|i| self.sharing[i])
    }
}

pub fn realized_minterms(spec: &MintermSpec, mode: ArrayMode) -> Vec<u32> {
    match mode {
        ArrayMode::Full => (0..1u32 << spec.n()).collect(),
        ArrayMode::UsedOnly => spec.used_minterms().into_iter().collect(),
    }
}

pub fn compute_demand(spec: &MintermSpec, opts: &SynthOptions) -> Demand {
    let n = spec.n();
    let realized = realized_minterms(spec, opts.array_mode);
    let mut positive = vec![0; n];
    let mut negative = vec![0; n];
    for &t in &realized {
        for i in 0..n {
            if LiteralRef::of_minterm(t, i, n).positive {
                positive[i] += 1;
            } else {
                negative[i] += 1;
            }
        }
    }
    // the first AND cell of each chain hands its first literal on, so the
    // first input's literals need one supplied copy each
    if opts.reuse_passthrough && n >= 2 {
        positive[0] = positive[0].min(1);
        negative[0] = negative[0].min(1);
    }
    let sharing = realized
        .iter()
        .map(|t| spec.per_output().iter().filter(|s| s.contains(t)).count())
        .collect();
    Demand {
        n,
        realized,
        positive,
        negative,
        sharing,
    }
}

/// Wires carrying each literal, consumed front to back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiteralSupply {
    pub positive_copies: Vec<VecDeque<String>>,
    pub negative_copies: Vec<VecDeque<String>>,
}

impl LiteralSupply {
    fn queue(&mut self, lit: LiteralRef) -> &mut VecDeque<String> {
        if lit.positive {
            &mut self.positive_copies[lit.input]
        } else {
            &mut self.negative_copies[lit.input]
        }
    }

    pub fn copies(&self, lit: LiteralRef) -> &VecDeque<String> {
        if lit.positive {
            &self.positive_copies[lit.input]
        } else {
            &self.negative_copies[lit.input]
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.positive_copies
            .iter()
            .chain(&self.negative_copies)
            .all(VecDeque::is_empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTerm {
    pub minterm: u32,
    /// One literal per input, in input order.
    pub literals: Vec<LiteralRef>,
    pub sharing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductPlan {
    pub terms: Vec<ProductTerm>,
}

impl ProductPlan {
    pub fn new(demand: &Demand) -> Self {
        let n = demand.n;
        let terms = demand
            .realized
            .iter()
            .zip(&demand.sharing)
            .map(|(&minterm, &sharing)| ProductTerm {
                minterm,
                literals: (0..n)
                    .map(|i| LiteralRef::of_minterm(minterm, i, n))
                    .collect(),
                sharing,
            })
            .collect();
        ProductPlan { terms }
    }
}

/// Gates contributed by each plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlaneCounts {
    pub literal_feynman: usize,
    pub and_fredkin: usize,
    pub or_feynman: usize,
    pub or_fredkin: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("internal synthesis error: {0}")]
    Internal(String),
    #[error("synthesized netlist failed validation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

/// A synthesized netlist together with the wires between its planes.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub netlist: Netlist,
    pub demand: Demand,
    /// Product wire per realized minterm, parallel to `demand.realized`.
    pub product_wires: Vec<String>,
    pub planes: PlaneCounts,
}

/// Sequential names for ancillas.
#[derive(Default)]
pub struct Naming {
    zeros: usize,
    ones: usize,
    copies: Vec<[usize; 2]>,
}

impl Naming {
    fn zero(&mut self, b: &mut NetlistBuilder) -> String {
        self.zeros += 1;
        b.constant(false, &format!("c0.{}", self.zeros - 1))
    }

    fn one(&mut self, b: &mut NetlistBuilder) -> String {
        self.ones += 1;
        b.constant(true, &format!("c1.{}", self.ones - 1))
    }

    fn literal(&mut self, inputs: &[String], lit: LiteralRef) -> String {
        if self.copies.len() < inputs.len() {
            self.copies.resize(inputs.len(), [0, 0]);
        }
        let slot = &mut self.copies[lit.input][lit.positive as usize];
        *slot += 1;
        let tag = if lit.positive { 'p' } else { 'n' };
        format!("{}.{tag}{}", inputs[lit.input], *slot - 1)
    }
}

/// Grow `source` into `k ≥ 1` copies with a chain of k−1 copiers.
///
/// Copier j's second output is copy j; the last copier's first output is
/// the final copy.
fn copy_chain(
    b: &mut NetlistBuilder,
    names: &mut Naming,
    source: String,
    k: usize,
    mut hint: impl FnMut(&mut Naming) -> String,
) -> Vec<String> {
    let mut copies = Vec::with_capacity(k);
    let mut cur = source;
    for _ in 1..k {
        let z = names.zero(b);
        let (h0, h1) = (hint(names), hint(names));
        let [through, copy] = b.feynman([&cur, &z], [&h0, &h1]);
        copies.push(copy);
        cur = through;
    }
    copies.push(cur);
    copies
}

/// Complement and copy the inputs to exactly the demanded literal counts.
///
/// An input whose positive literal is never needed is left unconsumed,
/// as is the pass-through output of a complementer in that case.
pub fn build_literal_plane(
    b: &mut NetlistBuilder,
    names: &mut Naming,
    inputs: &[String],
    demand: &Demand,
) -> LiteralSupply {
    let mut supply = LiteralSupply {
        positive_copies: vec![VecDeque::new(); inputs.len()],
        negative_copies: vec![VecDeque::new(); inputs.len()],
    };
    for (i, x) in inputs.iter().enumerate() {
        let pos = LiteralRef {
            input: i,
            positive: true,
        };
        let neg = LiteralRef {
            input: i,
            positive: false,
        };
        let (pos_source, neg_source) = if demand.negative[i] > 0 {
            let u = names.one(b);
            let (hp, hn) = (names.literal(inputs, pos), names.literal(inputs, neg));
            let [p, q] = b.feynman([x, &u], [&hp, &hn]);
            (p, Some(q))
        } else {
            (x.clone(), None)
        };
        if demand.positive[i] > 0 {
            let copies = copy_chain(b, names, pos_source, demand.positive[i], |nm| {
                nm.literal(inputs, pos)
            });
            supply.positive_copies[i].extend(copies);
        }
        if let Some(q) = neg_source {
            let copies = copy_chain(b, names, q, demand.negative[i], |nm| {
                nm.literal(inputs, neg)
            });
            supply.negative_copies[i].extend(copies);
        }
    }
    supply
}

fn pop(supply: &mut LiteralSupply, lit: LiteralRef) -> Result<String, SynthError> {
    supply.queue(lit).pop_front().ok_or_else(|| {
        SynthError::Internal(format!(
            "literal supply exhausted for input {} ({})",
            lit.input,
            if lit.positive { "positive" } else { "negative" }
        ))
    })
}

/// One Fredkin AND chain per planned term; returns the product wires.
pub fn build_and_plane(
    b: &mut NetlistBuilder,
    names: &mut Naming,
    inputs: &[String],
    plan: &ProductPlan,
    supply: &mut LiteralSupply,
    opts: &SynthOptions,
) -> Result<Vec<String>, SynthError> {
    use std::collections::HashMap;

    let mut remaining: HashMap<LiteralRef, usize> = HashMap::new();
    for term in &plan.terms {
        for &lit in &term.literals {
            *remaining.entry(lit).or_default() += 1;
        }
    }
    fn take(
        remaining: &mut HashMap<LiteralRef, usize>,
        supply: &mut LiteralSupply,
        lit: LiteralRef,
    ) -> Result<String, SynthError> {
        *remaining.get_mut(&lit).unwrap() -= 1;
        pop(supply, lit)
    }

    let mut products = Vec::with_capacity(plan.terms.len());
    for term in &plan.terms {
        let t = term.minterm;
        let first = term.literals[0];
        let mut partial = take(&mut remaining, supply, first)?;
        for (i, &lit) in term.literals.iter().enumerate().skip(1) {
            let wire = take(&mut remaining, supply, lit)?;
            let z = names.zero(b);
            let pass = if i == 1 && opts.reuse_passthrough {
                let outstanding = remaining[&first];
                let queued = supply.copies(first).len();
                (outstanding > queued).then(|| names.literal(inputs, first))
            } else {
                None
            };
            let h0 = pass.clone().unwrap_or_else(|| format!("m{t}.{i}.a"));
            let [y1, _, prod] = b.fredkin(
                [&partial, &wire, &z],
                [&h0, &format!("m{t}.{i}.b"), &format!("m{t}.{i}")],
            );
            if pass.is_some() {
                supply.queue(first).push_back(y1);
            }
            partial = prod;
        }
        products.push(partial);
    }
    if !supply.is_exhausted() {
        return Err(SynthError::Internal(
            "literal supply exceeds AND-plane demand".into(),
        ));
    }
    Ok(products)
}

/// OR cell `(x, y, 1) -> (x, x∨y, ¬x∨y)`; returns the sum wire.
fn or_cell(
    b: &mut NetlistBuilder,
    names: &mut Naming,
    x: &String,
    y: &String,
    tag: &str,
) -> String {
    let u = names.one(b);
    let [_, sum, _] = b.fredkin([x, y, &u], [&format!("{tag}.a"), tag, &format!("{tag}.b")]);
    sum
}

/// Copy shared products, then fold each output's products with OR cells.
///
/// Returns the wire carrying each output, in output order.
pub fn build_or_plane(
    b: &mut NetlistBuilder,
    names: &mut Naming,
    spec: &MintermSpec,
    plan: &ProductPlan,
    product_wires: &[String],
    opts: &SynthOptions,
) -> Result<Vec<String>, SynthError> {
    let mut queues: Vec<VecDeque<String>> = Vec::with_capacity(plan.terms.len());
    for (term, wire) in plan.terms.iter().zip(product_wires) {
        let copies = match term.sharing {
            0 => Vec::new(),
            s => {
                let t = term.minterm;
                let mut c = 0;
                copy_chain(b, names, wire.clone(), s, |_| {
                    c += 1;
                    format!("m{t}.c{}", c - 1)
                })
            }
        };
        queues.push(copies.into());
    }

    let mut outputs = Vec::with_capacity(spec.m());
    for (name, set) in spec.output_names().iter().zip(spec.per_output()) {
        let mut terms = Vec::with_capacity(set.len());
        for t in set {
            let idx = plan
                .terms
                .binary_search_by_key(t, |term| term.minterm)
                .map_err(|_| SynthError::Internal(format!("minterm {t} was not realized")))?;
            let wire = queues[idx].pop_front().ok_or_else(|| {
                SynthError::Internal(format!("product copies of minterm {t} exhausted"))
            })?;
            terms.push(wire);
        }
        let mut cells = 0;
        let mut tag = || {
            cells += 1;
            format!("{name}.or{}", cells - 1)
        };
        let wire = match terms.len() {
            0 => b.constant(false, &format!("{name}.zero")),
            _ => match opts.or_topology {
                OrTopology::Chain => {
                    let mut it = terms.into_iter();
                    let mut acc = it.next().unwrap();
                    for w in it {
                        acc = or_cell(b, names, &acc, &w, &tag());
                    }
                    acc
                }
                OrTopology::BalancedTree => {
                    let mut level = terms;
                    while level.len() > 1 {
                        let mut next = Vec::with_capacity(level.len().div_ceil(2));
                        let mut it = level.into_iter();
                        while let Some(x) = it.next() {
                            match it.next() {
                                Some(y) => next.push(or_cell(b, names, &x, &y, &tag())),
                                None => next.push(x),
                            }
                        }
                        level = next;
                    }
                    level.pop().unwrap()
                }
            },
        };
        outputs.push(wire);
    }
    if queues.iter().any(|q| !q.is_empty()) {
        return Err(SynthError::Internal(
            "product copies exceed OR-plane demand".into(),
        ));
    }
    Ok(outputs)
}

fn count_kind(netlist: &Netlist, range: std::ops::Range<usize>, kind: GateKind) -> usize {
    netlist.gates[range]
        .iter()
        .filter(|g| g.kind == kind)
        .count()
}

/// Compose the literal, AND and OR planes and validate the result.
pub fn synthesize_detailed(
    spec: &MintermSpec,
    opts: &SynthOptions,
) -> Result<Synthesis, SynthError> {
    let demand = compute_demand(spec, opts);
    let plan = ProductPlan::new(&demand);
    let mut b = NetlistBuilder::new();
    let mut names = Naming::default();
    let inputs: Vec<String> = spec.input_names().iter().map(|n| b.input(n)).collect();

    let supply = &mut build_literal_plane(&mut b, &mut names, &inputs, &demand);
    let literal_end = b.gate_count();
    let product_wires = build_and_plane(&mut b, &mut names, &inputs, &plan, supply, opts)?;
    let and_end = b.gate_count();
    let output_wires = build_or_plane(&mut b, &mut names, spec, &plan, &product_wires, opts)?;
    for (name, wire) in spec.output_names().iter().zip(&output_wires) {
        b.output(name, wire);
    }
    let netlist = b.finish();
    let total = netlist.gates.len();

    let diags = netlist.validate();
    if !diags.is_empty() {
        return Err(SynthError::Invalid(diags));
    }
    let planes = PlaneCounts {
        literal_feynman: count_kind(&netlist, 0..literal_end, GateKind::Feynman),
        and_fredkin: count_kind(&netlist, literal_end..and_end, GateKind::Fredkin),
        or_feynman: count_kind(&netlist, and_end..total, GateKind::Feynman),
        or_fredkin: count_kind(&netlist, and_end..total, GateKind::Fredkin),
    };
    Ok(Synthesis {
        netlist,
        demand,
        product_wires,
        planes,
    })
}

pub fn synthesize(spec: &MintermSpec, opts: &SynthOptions) -> Result<Netlist, SynthError> {
    synthesize_detailed(spec, opts).map(|s| s.netlist)
}

#[cfg(test)]
mod tests;
