// SPDX-License-Identifier: Apache-2.0

//! Cost prediction from the demand and sharing tables, without building
//! a netlist.
//!
//! Every gate consumes exactly one constant ancilla, so the ancilla count
//! is the gate count plus one constant per empty output. Gates preserve the
//! number of live wires, which makes the width `n + ancillas` and the
//! garbage count `width − m`. Depth is obtained by propagating gate levels
//! through the same wiring schedule the planes use.

use std::collections::{HashMap, VecDeque};

use super::{compute_demand, Demand, LiteralRef, OrTopology, PlaneCounts, SynthOptions};
use crate::netlist::CostReport;
use crate::pla::MintermSpec;

fn less_one(k: usize) -> usize {
    k.saturating_sub(1)
}

fn plane_counts(spec: &MintermSpec, demand: &Demand) -> PlaneCounts {
    let n = demand.n;
    let literal_feynman = (0..n)
        .map(|i| {
            let complementer = (demand.negative[i] > 0) as usize;
            complementer + less_one(demand.positive[i]) + less_one(demand.negative[i])
        })
        .sum();
    PlaneCounts {
        literal_feynman,
        and_fredkin: demand.realized.len() * less_one(n),
        or_feynman: demand.sharing.iter().map(|&s| less_one(s)).sum(),
        or_fredkin: spec.per_output().iter().map(|s| less_one(s.len())).sum(),
    }
}

pub fn predicted_plane_counts(spec: &MintermSpec, opts: &SynthOptions) -> PlaneCounts {
    plane_counts(spec, &compute_demand(spec, opts))
}

pub fn predicted_costs(spec: &MintermSpec, opts: &SynthOptions) -> CostReport {
    let demand = compute_demand(spec, opts);
    let planes = plane_counts(spec, &demand);
    let fredkin_count = planes.and_fredkin + planes.or_fredkin;
    let feynman_count = planes.literal_feynman + planes.or_feynman;
    let empty_outputs = spec.per_output().iter().filter(|s| s.is_empty()).count();
    let ancilla_count = fredkin_count + feynman_count + empty_outputs;
    let width = spec.n() + ancilla_count;
    CostReport {
        fredkin_count,
        feynman_count,
        ancilla_count,
        garbage_count: width - spec.m(),
        width,
        depth: predicted_depth(spec, opts, &demand),
    }
}

struct Levels {
    depth: usize,
}

impl Levels {
    fn gate(&mut self, inputs: &[usize]) -> usize {
        let level = 1 + inputs.iter().copied().max().unwrap_or(0);
        self.depth = self.depth.max(level);
        level
    }

    /// Copy levels of a k-copier chain rooted at `base`.
    fn copies(&mut self, base: usize, k: usize) -> VecDeque<usize> {
        let mut out = VecDeque::with_capacity(k);
        let mut cur = base;
        for _ in 1..k {
            cur = self.gate(&[cur]);
            out.push_back(cur);
        }
        out.push_back(cur);
        out
    }
}

fn predicted_depth(spec: &MintermSpec, opts: &SynthOptions, demand: &Demand) -> usize {
    let n = demand.n;
    let mut lv = Levels { depth: 0 };

    let mut supply: HashMap<LiteralRef, VecDeque<usize>> = HashMap::new();
    for i in 0..n {
        let pos = LiteralRef {
            input: i,
            positive: true,
        };
        let neg = LiteralRef {
            input: i,
            positive: false,
        };
        let base = if demand.negative[i] > 0 {
            lv.gate(&[0])
        } else {
            0
        };
        if demand.positive[i] > 0 {
            supply.insert(pos, lv.copies(base, demand.positive[i]));
        }
        if demand.negative[i] > 0 {
            supply.insert(neg, lv.copies(base, demand.negative[i]));
        }
    }

    let mut remaining: HashMap<LiteralRef, usize> = HashMap::new();
    for &t in &demand.realized {
        for i in 0..n {
            *remaining
                .entry(LiteralRef::of_minterm(t, i, n))
                .or_default() += 1;
        }
    }
    let mut take = |supply: &mut HashMap<LiteralRef, VecDeque<usize>>, lit: LiteralRef| {
        *remaining.get_mut(&lit).unwrap() -= 1;
        let level = supply
            .get_mut(&lit)
            .and_then(VecDeque::pop_front)
            .unwrap_or(0);
        (level, remaining[&lit])
    };

    let mut products = Vec::with_capacity(demand.realized.len());
    for &t in &demand.realized {
        let first = LiteralRef::of_minterm(t, 0, n);
        let (mut partial, outstanding) = take(&mut supply, first);
        for i in 1..n {
            let (lit, _) = take(&mut supply, LiteralRef::of_minterm(t, i, n));
            let level = lv.gate(&[partial, lit]);
            if i == 1 && opts.reuse_passthrough {
                let queue = supply.entry(first).or_default();
                if outstanding > queue.len() {
                    queue.push_back(level);
                }
            }
            partial = level;
        }
        products.push(partial);
    }

    let mut shared: Vec<VecDeque<usize>> = products
        .iter()
        .zip(&demand.sharing)
        .map(|(&p, &s)| {
            if s == 0 {
                VecDeque::new()
            } else {
                lv.copies(p, s)
            }
        })
        .collect();

    for set in spec.per_output() {
        let terms: Vec<usize> = set
            .iter()
            .map(|t| {
                let idx = demand.realized.binary_search(t).unwrap();
                shared[idx].pop_front().unwrap()
            })
            .collect();
        if terms.len() < 2 {
            continue;
        }
        match opts.or_topology {
            OrTopology::Chain => {
                terms[1..]
                    .iter()
                    .fold(terms[0], |acc, &w| lv.gate(&[acc, w]));
            }
            OrTopology::BalancedTree => {
                let mut level = terms;
                while level.len() > 1 {
                    level = level
                        .chunks(2)
                        .map(|pair| match pair {
                            [x, y] => lv.gate(&[*x, *y]),
                            [x] => *x,
                            _ => unreachable!(),
                        })
                        .collect();
                }
            }
        }
    }
    lv.depth
}
