// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::netlist::Simulator;
use crate::pla::{default_names, minterm_truth_table};

fn set(xs: &[u32]) -> BTreeSet<u32> {
    xs.iter().copied().collect()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn adder() -> MintermSpec {
    MintermSpec::new(
        names(&["A", "B", "Cin"]),
        names(&["SUM", "CARRY"]),
        vec![set(&[1, 2, 4, 7]), set(&[3, 5, 6, 7])],
    )
    .unwrap()
}

fn opts(array_mode: ArrayMode, or_topology: OrTopology, reuse: bool) -> SynthOptions {
    SynthOptions {
        array_mode,
        or_topology,
        reuse_passthrough: reuse,
    }
}

const FULL_NO_REUSE: SynthOptions = SynthOptions {
    array_mode: ArrayMode::Full,
    or_topology: OrTopology::Chain,
    reuse_passthrough: false,
};

const USED_NO_REUSE: SynthOptions = SynthOptions {
    array_mode: ArrayMode::UsedOnly,
    or_topology: OrTopology::Chain,
    reuse_passthrough: false,
};

fn lit(input: usize, positive: bool) -> LiteralRef {
    LiteralRef { input, positive }
}

/// Simulate every vector and compare with the minterm sets directly.
fn assert_realizes(spec: &MintermSpec, netlist: &Netlist) {
    let sim = Simulator::new(netlist).unwrap();
    let tt = minterm_truth_table(spec);
    let mut scratch = Vec::new();
    for v in 0..1u64 << spec.n() {
        let e = sim.run_index(v, &mut scratch);
        assert_eq!(e.outputs, tt.row(v as usize), "vector {v}");
    }
}

#[test]
fn full_mode_literal_demand() {
    let d = compute_demand(&adder(), &FULL_NO_REUSE);
    assert_eq!(d.realized, (0..8).collect::<Vec<_>>());
    assert_eq!(d.positive, vec![4, 4, 4]);
    assert_eq!(d.negative, vec![4, 4, 4]);

    let d = compute_demand(&adder(), &opts(ArrayMode::Full, OrTopology::Chain, true));
    assert_eq!(d.positive, vec![1, 4, 4]);
    assert_eq!(d.negative, vec![1, 4, 4]);
}

#[test]
fn full_adder_sharing() {
    let d = compute_demand(&adder(), &USED_NO_REUSE);
    assert_eq!(d.realized, vec![1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(d.sharing_of(7), Some(2));
    for t in [1, 2, 3, 4, 5, 6] {
        assert_eq!(d.sharing_of(t), Some(1));
    }
    assert_eq!(d.sharing_of(0), None);
}

#[test]
fn single_minterm_demand() {
    let spec = MintermSpec::single_output(3, set(&[0b101])).unwrap();
    for o in SynthOptions::all().filter(|o| o.array_mode == ArrayMode::UsedOnly) {
        let d = compute_demand(&spec, &o);
        assert_eq!(d.positive, vec![1, 0, 1]);
        assert_eq!(d.negative, vec![0, 1, 0]);
        assert_eq!(d.sharing, vec![1]);
    }
}

fn literal_plane_only(pos: usize, neg: usize) -> Netlist {
    let demand = Demand {
        n: 1,
        realized: vec![],
        positive: vec![pos],
        negative: vec![neg],
        sharing: vec![],
    };
    let mut b = NetlistBuilder::new();
    let x = b.input("x");
    let inputs = vec![x];
    let mut names = Naming::default();
    let supply = build_literal_plane(&mut b, &mut names, &inputs, &demand);
    assert_eq!(supply.copies(lit(0, true)).len(), pos);
    assert_eq!(supply.copies(lit(0, false)).len(), neg);
    let wires: Vec<String> = supply
        .positive_copies
        .iter()
        .chain(&supply.negative_copies)
        .flatten()
        .cloned()
        .collect();
    for (k, w) in wires.iter().enumerate() {
        b.output(&format!("o{k}"), w);
    }
    b.finish()
}

#[test]
fn literal_plane_complementer_only() {
    let n = literal_plane_only(1, 1);
    assert_eq!(n.validate(), vec![]);
    let r = n.stats();
    assert_eq!(
        (r.feynman_count, r.garbage_count, r.ancilla_count),
        (1, 0, 1)
    );
    // x and ¬x
    let sim = Simulator::new(&n).unwrap();
    assert_eq!(sim.run(&[true]).unwrap().outputs, vec![true, false]);
    assert_eq!(sim.run(&[false]).unwrap().outputs, vec![false, true]);
}

#[test]
fn literal_plane_copier_chain() {
    let n = literal_plane_only(4, 0);
    let r = n.stats();
    assert_eq!(
        (r.feynman_count, r.ancilla_count, r.garbage_count),
        (3, 3, 0)
    );
    assert!(n.ancillas.iter().all(|a| !a.value));
    let sim = Simulator::new(&n).unwrap();
    for x in [false, true] {
        assert_eq!(sim.run(&[x]).unwrap().outputs, vec![x; 4]);
    }

    let n = literal_plane_only(3, 2);
    let sim = Simulator::new(&n).unwrap();
    assert_eq!(n.stats().feynman_count, 1 + 2 + 1);
    assert_eq!(
        sim.run(&[true]).unwrap().outputs,
        vec![true, true, true, false, false]
    );
}

#[test]
fn literal_plane_without_demand() {
    let n = literal_plane_only(0, 0);
    assert!(n.gates.is_empty());
    assert_eq!(n.garbage, vec!["x".to_string()]);

    // complementer pass-through becomes garbage when x itself is unused
    let n = literal_plane_only(0, 2);
    assert_eq!(n.stats().garbage_count, 1);
    assert_eq!(n.validate(), vec![]);
}

#[test]
fn and_chain_for_one_minterm() {
    let spec = MintermSpec::single_output(3, set(&[7])).unwrap();
    let s = synthesize_detailed(&spec, &USED_NO_REUSE).unwrap();
    let r = s.netlist.stats();
    assert_eq!(s.planes.and_fredkin, 2);
    assert_eq!(r.fredkin_count, 2);
    assert_eq!(r.ancilla_count, 2);
    assert_eq!(r.garbage_count, 4);
    assert!(s.netlist.ancillas.iter().all(|a| !a.value));
    assert_realizes(&spec, &s.netlist);
}

#[test]
fn single_literal_minterm_needs_no_and_cell() {
    let spec = MintermSpec::single_output(1, set(&[1])).unwrap();
    let n = synthesize(&spec, &USED_NO_REUSE).unwrap();
    assert!(n.gates.is_empty());
    assert_eq!(n.outputs[0].wire, "in0");
    assert_realizes(&spec, &n);

    let spec = MintermSpec::single_output(1, set(&[0])).unwrap();
    let n = synthesize(&spec, &USED_NO_REUSE).unwrap();
    assert_eq!(n.stats().feynman_count, 1);
    assert_realizes(&spec, &n);
}

#[test]
fn full_array_n3() {
    for o in SynthOptions::all().filter(|o| o.array_mode == ArrayMode::Full) {
        let s = synthesize_detailed(&adder(), &o).unwrap();
        assert_eq!(s.product_wires.len(), 8);
        assert_eq!(s.planes.and_fredkin, 16);
    }
    let empty = MintermSpec::single_output(3, set(&[])).unwrap();
    let n = synthesize(&empty, &FULL_NO_REUSE).unwrap();
    assert_eq!(n.stats().fredkin_count, 16);
    assert_eq!(n.stats().feynman_count, 21);
}

#[test]
fn full_adder_or_plane() {
    for o in SynthOptions::all() {
        let s = synthesize_detailed(&adder(), &o).unwrap();
        assert_eq!(s.planes.or_fredkin, 6, "{o}");
        assert_eq!(s.planes.or_feynman, 1, "{o}");
    }
}

#[test]
fn full_adder_full_mode_costs() {
    // 3 complementers + 6 literals × 3 copiers; 16 AND + 6 OR cells; one
    // copier for minterm 7
    let r = synthesize(&adder(), &FULL_NO_REUSE).unwrap().stats();
    assert_eq!(r.feynman_count, 22);
    assert_eq!(r.fredkin_count, 22);
    assert_eq!(r.ancilla_count, 44);
    assert_eq!(r.width, 47);
    assert_eq!(r.garbage_count, 45);
    assert_eq!(predicted_costs(&adder(), &FULL_NO_REUSE), r);
    let p = predicted_plane_counts(&adder(), &FULL_NO_REUSE);
    assert_eq!(p.literal_feynman, 21);
    assert_eq!(p.and_fredkin, 16);
}

#[test]
fn empty_output_is_constant_zero() {
    let spec = MintermSpec::new(
        names(&["a", "b"]),
        names(&["f", "g"]),
        vec![set(&[]), set(&[3])],
    )
    .unwrap();
    let s = synthesize_detailed(&spec, &USED_NO_REUSE).unwrap();
    let f = &s.netlist.outputs[0];
    let anc = s
        .netlist
        .ancillas
        .iter()
        .find(|a| a.wire == f.wire)
        .unwrap();
    assert!(!anc.value);
    assert_realizes(&spec, &s.netlist);

    let all_empty = MintermSpec::single_output(3, set(&[])).unwrap();
    let r = predicted_costs(&all_empty, &SynthOptions::default());
    assert_eq!(r.gate_count(), 0);
    assert_eq!(
        synthesize(&all_empty, &SynthOptions::default())
            .unwrap()
            .stats(),
        r
    );
}

#[test]
fn single_minterm_costs() {
    // minterm 1010: two complementers, no copies
    let spec = MintermSpec::single_output(4, set(&[0b1010])).unwrap();
    for o in [USED_NO_REUSE, SynthOptions::default()] {
        let r = predicted_costs(&spec, &o);
        assert_eq!(r.fredkin_count, 3);
        assert_eq!(r.feynman_count, 2);
        assert_eq!(synthesize(&spec, &o).unwrap().stats(), r);
    }
}

#[test]
fn reuse_feeds_first_literal_forward() {
    let spec = MintermSpec::single_output(3, set(&[4, 5, 6, 7])).unwrap();
    let off = synthesize(&spec, &USED_NO_REUSE).unwrap().stats();
    let on = synthesize(&spec, &SynthOptions::default()).unwrap().stats();
    // A appears in 4 minterms: 3 copiers saved, 3 fewer garbage wires
    assert_eq!(off.feynman_count - on.feynman_count, 3);
    assert_eq!(off.garbage_count - on.garbage_count, 3);
    assert_eq!(off.fredkin_count, on.fredkin_count);
}

#[test]
fn chain_and_tree_agree() {
    let spec = MintermSpec::single_output(3, set(&[0, 1, 2, 3, 4, 5, 6])).unwrap();
    let chain = synthesize(&spec, &opts(ArrayMode::UsedOnly, OrTopology::Chain, true)).unwrap();
    let tree = synthesize(
        &spec,
        &opts(ArrayMode::UsedOnly, OrTopology::BalancedTree, true),
    )
    .unwrap();
    assert_realizes(&spec, &chain);
    assert_realizes(&spec, &tree);
    assert_eq!(chain.stats().fredkin_count, tree.stats().fredkin_count);
    assert!(tree.stats().depth < chain.stats().depth);
}

#[test]
fn outputs_keep_spec_names() {
    let n = synthesize(&adder(), &SynthOptions::default()).unwrap();
    let out: Vec<&str> = n.output_names().collect();
    assert_eq!(out, vec!["SUM", "CARRY"]);
    assert_eq!(n.inputs, names(&["A", "B", "Cin"]));
}

#[test]
fn generated_names_avoid_inputs() {
    // inputs named like generated wires
    let spec = MintermSpec::new(
        names(&["c0.0", "m1", "c1.0"]),
        names(&["f"]),
        vec![set(&[1, 3, 6])],
    )
    .unwrap();
    for o in SynthOptions::all() {
        let n = synthesize(&spec, &o).unwrap();
        assert_eq!(n.validate(), vec![]);
        assert_realizes(&spec, &n);
    }
}

#[test]
fn unused_input_becomes_garbage() {
    let spec = MintermSpec::new(names(&["a", "b"]), names(&["f"]), vec![set(&[])]).unwrap();
    let n = synthesize(&spec, &USED_NO_REUSE).unwrap();
    assert_eq!(n.garbage, names(&["a", "b"]));
}

fn arb_minterm_spec() -> impl Strategy<Value = MintermSpec> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(n, m)| {
        prop::collection::vec(
            prop::collection::btree_set(0u32..(1 << n), 0..=(1usize << n)),
            m,
        )
        .prop_map(move |sets| {
            MintermSpec::new(default_names("x", n), default_names("y", m), sets).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_option_realizes_the_spec(spec in arb_minterm_spec()) {
        for o in SynthOptions::all() {
            let s = synthesize_detailed(&spec, &o).unwrap();
            prop_assert!(s.netlist.validate().is_empty());
            assert_realizes(&spec, &s.netlist);
            prop_assert_eq!(predicted_costs(&spec, &o), s.netlist.stats(), "{}", o);
            prop_assert_eq!(predicted_plane_counts(&spec, &o), s.planes);
        }
    }

    #[test]
    fn reuse_never_costs_more(spec in arb_minterm_spec()) {
        for base in SynthOptions::all().filter(|o| !o.reuse_passthrough) {
            let on = SynthOptions { reuse_passthrough: true, ..base };
            let a = synthesize(&spec, &base).unwrap().stats();
            let b = synthesize(&spec, &on).unwrap().stats();
            prop_assert!(b.feynman_count <= a.feynman_count);
            prop_assert!(b.garbage_count <= a.garbage_count);
        }
    }

    #[test]
    fn synthesis_is_deterministic(spec in arb_minterm_spec()) {
        let o = SynthOptions::default();
        prop_assert_eq!(synthesize(&spec, &o).unwrap(), synthesize(&spec, &o).unwrap());
    }
}
