//! Clifford+T decomposition, depth and resource reports.

use crate::circuit::{Circuit, Gate, GateKind, Register};
use crate::Error;
use rayon::prelude::*;
use std::fmt;

/// Clifford gates charged for one `QAND_DG` marker: the `H` before the
/// measurement and the classically controlled `CZ` after it.
pub const QAND_DG_CLIFFORDS: usize = 2;

/// How Toffoli-class gates are expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every Toffoli-class gate becomes the 7-T template (T-depth 3, no
    /// helpers).
    SevenT,
    /// Every Toffoli-class gate becomes the T-depth-1 template with four
    /// helper wires.
    TDepthOne,
    /// `QAND` becomes the 4-T AND gadget with one helper, `QAND_DG` stays as
    /// a Clifford-only marker, plain Toffolis use the T-depth-1 template.
    #[default]
    Qand,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::SevenT, Strategy::TDepthOne, Strategy::Qand];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::SevenT => "seven_t",
            Strategy::TDepthOne => "tdepth1",
            Strategy::Qand => "qand",
        }
    }

    pub fn parse(s: &str) -> Result<Strategy, Error> {
        match s {
            "seven_t" => Ok(Strategy::SevenT),
            "tdepth1" | "t_depth_one" => Ok(Strategy::TDepthOne),
            "qand" => Ok(Strategy::Qand),
            _ => Err(Error::Config(format!("unknown strategy {s:?} (seven_t, tdepth1, qand)"))),
        }
    }

    fn template(self, kind: GateKind) -> Template {
        match (self, kind) {
            (Strategy::Qand, GateKind::Qand) => Template::And,
            (Strategy::Qand, GateKind::QandDg) => Template::Marker,
            (Strategy::SevenT, _) => Template::SevenT,
            _ => Template::DepthOne,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Template {
    SevenT,
    DepthOne,
    And,
    Marker,
}

impl Template {
    fn helpers(self) -> usize {
        match self {
            Template::DepthOne => 4,
            Template::And => 1,
            _ => 0,
        }
    }

    fn t_depth(self) -> u32 {
        match self {
            Template::SevenT => 3,
            Template::DepthOne | Template::And => 1,
            Template::Marker => 0,
        }
    }
}

/// Toffoli on `(a, b) -> t` with 7 T gates and T-depth 3.
pub fn seven_t(a: u32, b: u32, t: u32) -> Vec<Gate> {
    vec![
        Gate::h(t),
        Gate::t(a),
        Gate::t(b),
        Gate::t(t),
        Gate::cnot(a, b),
        Gate::cnot(a, t),
        Gate::cnot(b, a),
        Gate::cnot(t, a),
        Gate::tdg(b),
        Gate::tdg(t),
        Gate::t(a),
        Gate::cnot(b, t),
        Gate::tdg(t),
        Gate::cnot(b, t),
        Gate::cnot(t, a),
        Gate::cnot(b, a),
        Gate::cnot(a, t),
        Gate::cnot(a, b),
        Gate::h(t),
    ]
}

/// Toffoli on `(a, b) -> t` with 7 T gates in one layer, using four clean
/// helpers that hold `a^b`, `a^t`, `b^t` and `a^b^t` during the layer.
pub fn t_depth_one(a: u32, b: u32, t: u32, h: [u32; 4]) -> Vec<Gate> {
    let parity = [vec![a, b], vec![a, t], vec![b, t], vec![a, b, t]];
    let load: Vec<Gate> = parity.iter().zip(h).flat_map(|(src, hw)| src.iter().map(move |&s| Gate::cnot(s, hw))).collect();
    let mut g = vec![Gate::h(t)];
    g.extend(load.iter().copied());
    g.extend([Gate::t(a), Gate::t(b), Gate::t(t), Gate::tdg(h[0]), Gate::tdg(h[1]), Gate::tdg(h[2]), Gate::t(h[3])]);
    g.extend(load.iter().rev().copied());
    g.push(Gate::h(t));
    g
}

/// AND gadget: `|a>|b>|0>|0> -> |a>|b>|ab>|0>` with 4 T gates in one layer
/// and one clean helper.
pub fn and_gadget(a: u32, b: u32, t: u32, h: u32) -> Vec<Gate> {
    vec![
        Gate::h(t),
        Gate::cnot(a, h),
        Gate::cnot(b, h),
        Gate::cnot(t, a),
        Gate::cnot(t, b),
        Gate::cnot(t, h),
        Gate::tdg(a),
        Gate::tdg(b),
        Gate::t(t),
        Gate::t(h),
        Gate::cnot(t, h),
        Gate::cnot(t, b),
        Gate::cnot(t, a),
        Gate::cnot(b, h),
        Gate::cnot(a, h),
        Gate::h(t),
        Gate::s(t),
    ]
}

/// Longest path where each gate adds `weight(kind)` on top of the deepest
/// gate sharing one of its wires. Returns the level of every gate.
pub fn weighted_levels(c: &Circuit, weight: impl Fn(GateKind) -> u32) -> Vec<u32> {
    let mut wire = vec![0u32; c.n_qubits() as usize];
    c.gates()
        .iter()
        .map(|g| {
            let l = g.wires().iter().map(|&w| wire[w as usize]).max().unwrap_or(0) + weight(g.kind);
            for &w in g.wires() {
                wire[w as usize] = l;
            }
            l
        })
        .collect()
}

fn weighted_depth(c: &Circuit, weight: impl Fn(GateKind) -> u32) -> u32 {
    weighted_levels(c, weight).into_iter().max().unwrap_or(0)
}

/// ASAP layering: each gate goes one layer after the last gate sharing a
/// wire with it. Layers hold gate indices in circuit order.
pub fn schedule(c: &Circuit) -> Vec<Vec<usize>> {
    let mut layers: Vec<Vec<usize>> = vec![];
    for (i, l) in weighted_levels(c, |_| 1).into_iter().enumerate() {
        let l = l as usize - 1;
        if layers.len() <= l {
            layers.resize_with(l + 1, Vec::new);
        }
        layers[l].push(i);
    }
    layers
}

pub fn depth(c: &Circuit) -> u32 {
    weighted_depth(c, |_| 1)
}

/// Toffoli-class layers when those gates are aligned into shared layers;
/// equals the longest chain of dependent Toffoli-class gates.
pub fn toffoli_depth(c: &Circuit) -> u32 {
    weighted_depth(c, |k| k.is_toffoli_class() as u32)
}

/// T/T† layers when those gates are aligned into shared layers; equals the
/// longest chain of dependent T gates.
pub fn t_depth(c: &Circuit) -> u32 {
    weighted_depth(c, |k| k.is_t() as u32)
}

fn check_classical(c: &Circuit) -> Result<(), Error> {
    match c.gates().iter().find(|g| !g.kind.is_classical()) {
        Some(g) => Err(Error::Unsupported(g.kind.name())),
        None => Ok(()),
    }
}

/// Expands every Toffoli-class gate into Clifford+T. Gates are first put
/// in order of their T layer (a valid reordering of the dependency graph)
/// so that helper wires can be shared between layers; helpers are appended
/// after the original wires and are clean ancillas of the result. With
/// [`Strategy::Qand`] the `QAND_DG` gates remain as markers.
pub fn decompose(c: &Circuit, strat: Strategy) -> Result<Circuit, Error> {
    check_classical(c)?;
    let levels = weighted_levels(c, |k| if k.is_toffoli_class() { strat.template(k).t_depth() } else { 0 });
    let mut order: Vec<usize> = (0..c.gates().len()).collect();
    order.sort_by_key(|&i| levels[i]);
    let n = c.n_qubits();
    let mut helpers = 0usize;
    let mut used = 0usize;
    let mut level = None;
    let mut gates = Vec::with_capacity(c.gates().len() * 4);
    for i in order {
        let g = c.gates()[i];
        if !g.kind.is_toffoli_class() {
            gates.push(g);
            continue;
        }
        let tpl = strat.template(g.kind);
        if level != Some(levels[i]) {
            level = Some(levels[i]);
            used = 0;
        }
        let h: Vec<u32> = (used..used + tpl.helpers()).map(|k| n + k as u32).collect();
        used += tpl.helpers();
        helpers = helpers.max(used);
        let [a, b, t] = [g.wires()[0], g.wires()[1], g.wires()[2]];
        match tpl {
            Template::SevenT => gates.extend(seven_t(a, b, t)),
            Template::DepthOne => gates.extend(t_depth_one(a, b, t, [h[0], h[1], h[2], h[3]])),
            Template::And => gates.extend(and_gadget(a, b, t, h[0])),
            Template::Marker => gates.push(g),
        }
    }
    Circuit::new(
        c.name(),
        n + helpers as u32,
        gates,
        c.inputs().to_vec(),
        c.outputs().iter().map(|r| Register::new(r.name.clone(), r.wires.clone())).collect(),
    )
}

/// Gate counts and depths before and after decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResourceReport {
    pub name: String,
    pub strategy: Strategy,
    /// Width after decomposition, helpers included.
    pub qubits: u32,
    /// Width of the Toffoli-level circuit.
    pub toffoli_qubits: u32,
    /// Toffoli, QAND and QAND† gates.
    pub n_toffoli: usize,
    pub n_cnot: usize,
    pub n_not: usize,
    pub toffoli_depth: u32,
    pub n_t: usize,
    pub n_clifford: usize,
    pub t_depth: u32,
    pub dw_t: u64,
}

pub const FIELDS: [&str; 11] = [
    "qubits",
    "toffoli_qubits",
    "n_toffoli",
    "n_cnot",
    "n_not",
    "toffoli_depth",
    "n_t",
    "n_clifford",
    "t_depth",
    "dw_t",
    "strategy",
];

impl ResourceReport {
    /// Field values in [`FIELDS`] order.
    pub fn values(&self) -> Vec<String> {
        let nums: [u64; 10] = [
            self.qubits as u64,
            self.toffoli_qubits as u64,
            self.n_toffoli as u64,
            self.n_cnot as u64,
            self.n_not as u64,
            self.toffoli_depth as u64,
            self.n_t as u64,
            self.n_clifford as u64,
            self.t_depth as u64,
            self.dw_t,
        ];
        let mut v: Vec<String> = nums.iter().map(u64::to_string).collect();
        v.push(self.strategy.name().to_string());
        v
    }

    /// `key=value` lines, name first.
    pub fn to_kv(&self) -> String {
        let mut s = format!("name={}\n", self.name);
        for (k, v) in FIELDS.iter().zip(self.values()) {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }

    /// Aligned `field  value` lines under a title.
    pub fn to_table(&self) -> String {
        let mut s = format!("{}\n", self.name);
        for (k, v) in FIELDS.iter().zip(self.values()) {
            s.push_str(&format!("  {k:<15}{v:>12}\n"));
        }
        s
    }
}

/// Counts `decomposed` as the Clifford+T form of `c`.
pub fn report_pair(c: &Circuit, decomposed: &Circuit, strat: Strategy) -> ResourceReport {
    let n_toffoli = c.gates().iter().filter(|g| g.kind.is_toffoli_class()).count();
    let n_t = decomposed.gates().iter().filter(|g| g.kind.is_t()).count();
    let n_clifford = decomposed
        .gates()
        .iter()
        .map(|g| match g.kind {
            GateKind::QandDg => QAND_DG_CLIFFORDS,
            k if k.is_t() => 0,
            _ => 1,
        })
        .sum();
    let qubits = decomposed.n_qubits();
    let t_depth = t_depth(decomposed);
    ResourceReport {
        name: c.name().to_string(),
        strategy: strat,
        qubits,
        toffoli_qubits: c.n_qubits(),
        n_toffoli,
        n_cnot: c.count(GateKind::Cnot),
        n_not: c.count(GateKind::X),
        toffoli_depth: toffoli_depth(c),
        n_t,
        n_clifford,
        t_depth,
        dw_t: qubits as u64 * t_depth as u64,
    }
}

pub fn report(c: &Circuit, strat: Strategy) -> Result<ResourceReport, Error> {
    let d = decompose(c, strat)?;
    Ok(report_pair(c, &d, strat))
}

/// Reports for several circuits, computed in parallel; order is kept.
pub fn report_batch(cs: &[Circuit], strat: Strategy) -> Result<Vec<ResourceReport>, Error> {
    cs.par_iter().map(|c| report(c, strat)).collect()
}

/// Several reports as one table with a header row.
pub fn table(reports: &[ResourceReport]) -> String {
    let mut s = format!("{:<16}", "name");
    for f in FIELDS {
        s.push_str(&format!("{f:>15}"));
    }
    s.push('\n');
    for r in reports {
        s.push_str(&format!("{:<16}", r.name));
        for v in r.values() {
            s.push_str(&format!("{v:>15}"));
        }
        s.push('\n');
    }
    s
}
