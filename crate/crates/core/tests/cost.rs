use qaes::catalog;
use qaes::cost::{self, Strategy};
use qaes::sim;
use qaes::unitary::{amplitudes, unitary_equal_on, unitary_of};
use qaes::{Circuit, Gate, GateKind, Register};

fn toffoli_unitary() -> qaes::unitary::DenseUnitary {
    unitary_of(&Circuit::new("tof", 7, vec![Gate::toffoli(0, 1, 2)], vec![], vec![]).unwrap()).unwrap()
}

fn on7(gates: Vec<Gate>) -> Circuit {
    Circuit::new("tpl", 7, gates, vec![], vec![]).unwrap()
}

#[test]
fn templates_equal_toffoli() {
    let u = toffoli_unitary();
    assert!(unitary_equal_on(&unitary_of(&on7(cost::seven_t(0, 1, 2))).unwrap(), &u, &[], 1e-9));
    assert!(unitary_equal_on(&unitary_of(&on7(cost::t_depth_one(0, 1, 2, [3, 4, 5, 6]))).unwrap(), &u, &[3, 4, 5, 6], 1e-9));
    assert!(unitary_equal_on(&unitary_of(&on7(cost::and_gadget(0, 1, 2, 3))).unwrap(), &u, &[2, 3], 1e-9));
}

#[test]
fn template_costs() {
    let count = |g: &[Gate]| g.iter().filter(|g| g.kind.is_t()).count();
    let s = cost::seven_t(0, 1, 2);
    assert_eq!((count(&s), cost::t_depth(&on7(s))), (7, 3));
    let d = cost::t_depth_one(0, 1, 2, [3, 4, 5, 6]);
    assert_eq!((count(&d), cost::t_depth(&on7(d))), (7, 1));
    let a = cost::and_gadget(0, 1, 2, 3);
    assert_eq!((count(&a), cost::t_depth(&on7(a))), (4, 1));
}

#[test]
fn one_qand() {
    let c = Circuit::new("and", 3, vec![Gate::qand(0, 1, 2)], vec![], vec![]).unwrap();
    let r = cost::report(&c, Strategy::Qand).unwrap();
    assert_eq!((r.n_t, r.t_depth, r.qubits), (4, 1, 4));
    let c = Circuit::new("and_dg", 3, vec![Gate::qand_dg(0, 1, 2)], vec![], vec![]).unwrap();
    let r = cost::report(&c, Strategy::Qand).unwrap();
    assert_eq!((r.n_t, r.n_clifford, r.qubits), (0, cost::QAND_DG_CLIFFORDS, 3));
}

#[test]
fn mul0_t_depth_one() {
    let r = cost::report(&catalog::build("mul0").unwrap(), Strategy::Qand).unwrap();
    assert_eq!(r.t_depth, 1);
    assert_eq!(r.toffoli_depth, 2);
    assert_eq!(r.n_t, 36);
}

#[test]
fn empty_report() {
    let r = cost::report(&Circuit::empty("e", 0), Strategy::Qand).unwrap();
    assert_eq!((r.qubits, r.n_toffoli, r.n_cnot, r.n_t, r.n_clifford, r.t_depth, r.dw_t), (0, 0, 0, 0, 0, 0, 0));
}

#[test]
fn addroundkey_report() {
    let c = catalog::build("addroundkey").unwrap();
    let r = cost::report(&c, Strategy::Qand).unwrap();
    assert_eq!((r.n_cnot, r.n_t), (128, 0));
    assert_eq!(cost::depth(&c), 1);
}

#[test]
fn schedule_layers() {
    let disjoint = Circuit::new("d", 4, vec![Gate::cnot(0, 1), Gate::cnot(2, 3)], vec![], vec![]).unwrap();
    assert_eq!(cost::schedule(&disjoint), vec![vec![0, 1]]);
    let shared = Circuit::new("s", 3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)], vec![], vec![]).unwrap();
    assert_eq!(cost::schedule(&shared).len(), 2);
}

#[test]
fn removing_gates_never_deepens() {
    let c = catalog::build("c3_3").unwrap();
    let full = cost::depth(&c);
    for skip in (0..c.gates().len()).step_by(37) {
        let mut g = c.gates().to_vec();
        g.remove(skip);
        let d = Circuit::new("cut", c.n_qubits(), g, vec![], vec![]).unwrap();
        assert!(cost::depth(&d) <= full);
    }
}

#[test]
fn dw_identity_and_strategies() {
    for name in catalog::block_names() {
        let c = catalog::build(&name).unwrap();
        for s in Strategy::ALL {
            let r = cost::report(&c, s).unwrap();
            assert_eq!(r.dw_t, r.qubits as u64 * r.t_depth as u64, "{name} {s}");
            assert!(r.qubits >= r.toffoli_qubits);
        }
        let seven = cost::report(&c, Strategy::SevenT).unwrap();
        assert_eq!(seven.n_t, 7 * seven.n_toffoli);
        assert_eq!(seven.qubits, seven.toffoli_qubits);
    }
}

#[test]
fn t_count_is_additive() {
    let a = catalog::build("mul0").unwrap();
    let b = catalog::build("mul1").unwrap();
    let n = a.n_qubits().max(b.n_qubits());
    let pad = |c: &Circuit| Circuit::new(c.name(), n, c.gates().to_vec(), vec![], vec![]).unwrap();
    let ab = pad(&a).compose(&pad(&b), &(0..n).collect::<Vec<_>>()).unwrap();
    for s in Strategy::ALL {
        let r = |c: &Circuit| cost::report(c, s).unwrap();
        assert_eq!(r(&ab).n_t, r(&a).n_t + r(&b).n_t);
        assert_eq!(r(&ab).n_cnot, r(&a).n_cnot + r(&b).n_cnot);
        assert_eq!(r(&ab).n_toffoli, r(&a).n_toffoli + r(&b).n_toffoli);
    }
}

/// Runs the decomposed circuit on every input through the sparse
/// amplitude simulator and checks it lands on the Toffoli-level result.
fn decomposed_agrees(name: &str, s: Strategy) {
    let c = catalog::build(name).unwrap();
    let d = cost::decompose(&c, s).unwrap();
    let oracle = catalog::oracle(name).unwrap();
    let widths: Vec<usize> = c.inputs().iter().map(|r| r.wires.len()).collect();
    let bits: usize = widths.iter().sum();
    for x in 0..1u64 << bits {
        let mut vals = vec![];
        let mut basis = 0u128;
        let mut rest = x;
        for r in c.inputs() {
            let v = rest & ((1 << r.wires.len()) - 1);
            rest >>= r.wires.len();
            for (i, &w) in r.wires.iter().enumerate() {
                basis |= ((v >> i & 1) as u128) << w;
            }
            vals.push(v);
        }
        if oracle(&vals).is_none() {
            continue;
        }
        let want = sim::run(&c, &sim::BasisState::from_bits((0..c.n_qubits()).map(|w| basis >> w & 1 == 1).collect())).unwrap();
        let amps = amplitudes(&d, basis).unwrap();
        assert_eq!(amps.len(), 1, "{name} {s} input {vals:?} is not a basis state");
        assert!((amps[0].1.norm() - 1.0).abs() < 1e-9);
        for w in 0..d.n_qubits() {
            let expect = w < c.n_qubits() && want.get(w);
            assert_eq!(amps[0].0 >> w & 1 == 1, expect, "{name} {s} input {vals:?} wire {w}");
        }
    }
}

#[test]
fn decomposition_keeps_basis_behaviour() {
    for s in Strategy::ALL {
        for name in ["inv0", "inv1", "mul0", "mul2_v1", "uinv0_1"] {
            decomposed_agrees(name, s);
        }
    }
}

#[test]
fn rejects_non_classical_input() {
    let c = Circuit::new("h", 1, vec![Gate::h(0)], vec![Register::new("x", vec![0])], vec![]).unwrap();
    assert!(cost::decompose(&c, Strategy::Qand).is_err());
}

#[test]
fn helpers_are_shared_across_layers() {
    let g = vec![Gate::qand(0, 1, 2), Gate::qand(2, 0, 3), Gate::qand(3, 1, 4)];
    let c = Circuit::new("chain", 5, g, vec![], vec![]).unwrap();
    let d = cost::decompose(&c, Strategy::Qand).unwrap();
    assert_eq!(d.n_qubits(), 6);
    assert_eq!(cost::t_depth(&d), 3);
    let g = vec![Gate::qand(0, 1, 4), Gate::qand(2, 3, 5)];
    let c = Circuit::new("wide", 6, g, vec![], vec![]).unwrap();
    assert_eq!(cost::decompose(&c, Strategy::Qand).unwrap().n_qubits(), 8);
    assert_eq!(cost::decompose(&c, Strategy::TDepthOne).unwrap().n_qubits(), 14);
}

#[test]
fn report_formats() {
    let r = cost::report(&catalog::build("mul0").unwrap(), Strategy::Qand).unwrap();
    let kv = r.to_kv();
    assert!(kv.contains("t_depth=1\n"));
    assert!(kv.starts_with("name=mul0\n"));
    assert!(r.to_table().contains("dw_t"));
    assert_eq!(cost::table(&[r.clone(), r]).lines().count(), 3);
    assert!(Strategy::parse("nope").is_err());
    assert_eq!(Strategy::parse("tdepth1").unwrap(), Strategy::TDepthOne);
    assert_eq!(Strategy::default(), Strategy::Qand);
}

#[test]
fn qand_dg_stays_classical() {
    let d = cost::decompose(&catalog::build("mul0").unwrap(), Strategy::Qand).unwrap();
    assert!(d.count(GateKind::QandDg) > 0);
    assert_eq!(d.count(GateKind::Qand), 0);
    assert_eq!(d.count(GateKind::Toffoli), 0);
}
