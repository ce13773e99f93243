//! Reversible circuit IR: gates, named registers, builder with ancilla pools.

use crate::Error;
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Cnot,
    Toffoli,
    Qand,
    QandDg,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cz,
}

impl GateKind {
    pub const ALL: [GateKind; 11] = [
        GateKind::X,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::Qand,
        GateKind::QandDg,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cz,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::H | GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg => 1,
            GateKind::Cnot | GateKind::Cz => 2,
            GateKind::Toffoli | GateKind::Qand | GateKind::QandDg => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Qand => "QAND",
            GateKind::QandDg => "QAND_DG",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "S_DG",
            GateKind::T => "T",
            GateKind::Tdg => "T_DG",
            GateKind::Cz => "CZ",
        }
    }

    pub fn from_name(s: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::Qand => GateKind::QandDg,
            GateKind::QandDg => GateKind::Qand,
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            k => k,
        }
    }

    /// Toffoli-class gates are the ones counted in Toffoli columns.
    pub fn is_toffoli_class(self) -> bool {
        matches!(self, GateKind::Toffoli | GateKind::Qand | GateKind::QandDg)
    }

    pub fn is_t(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Gates with a classical permutation action on basis states.
    pub fn is_classical(self) -> bool {
        matches!(self, GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Qand | GateKind::QandDg)
    }
}

/// A gate with controls first and the target last.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    ops: [u32; 3],
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for w in self.wires() {
            write!(f, " q{w}")?;
        }
        Ok(())
    }
}

impl Gate {
    /// Builds a gate, rejecting wrong arity or repeated operands.
    pub fn new(kind: GateKind, wires: &[u32]) -> Result<Gate, Error> {
        if wires.len() != kind.arity() {
            return Err(Error::Gate(format!("{} takes {} operands, got {}", kind.name(), kind.arity(), wires.len())));
        }
        for i in 0..wires.len() {
            for j in 0..i {
                if wires[i] == wires[j] {
                    return Err(Error::Gate(format!("{} repeats operand q{}", kind.name(), wires[i])));
                }
            }
        }
        let mut ops = [0; 3];
        ops[..wires.len()].copy_from_slice(wires);
        Ok(Gate { kind, ops })
    }

    fn raw(kind: GateKind, wires: &[u32]) -> Gate {
        Gate::new(kind, wires).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn x(t: u32) -> Gate {
        Gate::raw(GateKind::X, &[t])
    }
    pub fn cnot(c: u32, t: u32) -> Gate {
        Gate::raw(GateKind::Cnot, &[c, t])
    }
    pub fn toffoli(a: u32, b: u32, t: u32) -> Gate {
        Gate::raw(GateKind::Toffoli, &[a, b, t])
    }
    pub fn qand(a: u32, b: u32, t: u32) -> Gate {
        Gate::raw(GateKind::Qand, &[a, b, t])
    }
    pub fn qand_dg(a: u32, b: u32, t: u32) -> Gate {
        Gate::raw(GateKind::QandDg, &[a, b, t])
    }
    pub fn h(t: u32) -> Gate {
        Gate::raw(GateKind::H, &[t])
    }
    pub fn s(t: u32) -> Gate {
        Gate::raw(GateKind::S, &[t])
    }
    pub fn sdg(t: u32) -> Gate {
        Gate::raw(GateKind::Sdg, &[t])
    }
    pub fn t(t: u32) -> Gate {
        Gate::raw(GateKind::T, &[t])
    }
    pub fn tdg(t: u32) -> Gate {
        Gate::raw(GateKind::Tdg, &[t])
    }
    pub fn cz(a: u32, b: u32) -> Gate {
        Gate::raw(GateKind::Cz, &[a, b])
    }

    pub fn wires(&self) -> &[u32] {
        &self.ops[..self.kind.arity()]
    }

    pub fn target(&self) -> u32 {
        self.ops[self.kind.arity() - 1]
    }

    pub fn controls(&self) -> &[u32] {
        &self.ops[..self.kind.arity() - 1]
    }

    pub fn inverse(&self) -> Gate {
        Gate { kind: self.kind.inverse(), ops: self.ops }
    }

    pub fn map_wires(&self, f: impl Fn(u32) -> u32) -> Gate {
        let mut g = *self;
        for w in g.ops[..self.kind.arity()].iter_mut() {
            *w = f(*w);
        }
        g
    }
}

/// Named group of wires; wire `i` of the register holds bit `i` of its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Register {
    pub name: String,
    pub wires: Vec<u32>,
}

impl Register {
    pub fn new(name: impl Into<String>, wires: Vec<u32>) -> Register {
        Register { name: name.into(), wires }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Carries an input value (and possibly the matching output).
    Input,
    /// Starts at 0 and receives an output value.
    Output,
    /// Starts and ends at 0.
    Ancilla,
}

/// Immutable circuit. Wires outside every input register start at 0 and
/// wires outside every output register must end at 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    n_qubits: u32,
    gates: Vec<Gate>,
    inputs: Vec<Register>,
    outputs: Vec<Register>,
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circuit({}, {} qubits, {} gates)", self.name, self.n_qubits, self.gates.len())
    }
}

impl Circuit {
    pub fn new(
        name: impl Into<String>,
        n_qubits: u32,
        gates: Vec<Gate>,
        inputs: Vec<Register>,
        outputs: Vec<Register>,
    ) -> Result<Circuit, Error> {
        let c = Circuit { name: name.into(), n_qubits, gates, inputs, outputs };
        c.validate()?;
        Ok(c)
    }

    pub fn empty(name: impl Into<String>, n_qubits: u32) -> Circuit {
        Circuit { name: name.into(), n_qubits, gates: vec![], inputs: vec![], outputs: vec![] }
    }

    fn validate(&self) -> Result<(), Error> {
        for (i, g) in self.gates.iter().enumerate() {
            if let Some(&w) = g.wires().iter().find(|&&w| w >= self.n_qubits) {
                return Err(Error::Wire(format!("gate {i} ({g:?}) uses unallocated q{w}")));
            }
        }
        for set in [&self.inputs, &self.outputs] {
            let mut seen = HashSet::new();
            for r in set.iter() {
                for &w in &r.wires {
                    if w >= self.n_qubits {
                        return Err(Error::Wire(format!("register {} uses unallocated q{w}", r.name)));
                    }
                    if !seen.insert(w) {
                        return Err(Error::Wire(format!("q{w} appears in two registers")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Circuit {
        self.name = name.into();
        self
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn inputs(&self) -> &[Register] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Register] {
        &self.outputs
    }

    pub fn input(&self, name: &str) -> Option<&Register> {
        self.inputs.iter().find(|r| r.name == name)
    }

    pub fn output(&self, name: &str) -> Option<&Register> {
        self.outputs.iter().find(|r| r.name == name)
    }

    pub fn role(&self, w: u32) -> Role {
        if self.inputs.iter().any(|r| r.wires.contains(&w)) {
            Role::Input
        } else if self.outputs.iter().any(|r| r.wires.contains(&w)) {
            Role::Output
        } else {
            Role::Ancilla
        }
    }

    /// Wires that must be 0 both before and after the circuit.
    pub fn ancillas(&self) -> Vec<u32> {
        let used: HashSet<u32> =
            self.inputs.iter().chain(&self.outputs).flat_map(|r| r.wires.iter().copied()).collect();
        (0..self.n_qubits).filter(|w| !used.contains(w)).collect()
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Appends `other`, whose wire `i` lands on `wire_map[i]`. Inputs come
    /// from `self`, outputs from `other`.
    pub fn compose(&self, other: &Circuit, wire_map: &[u32]) -> Result<Circuit, Error> {
        if wire_map.len() != other.n_qubits as usize {
            return Err(Error::Wire(format!(
                "wire map has {} entries for {} qubits",
                wire_map.len(),
                other.n_qubits
            )));
        }
        let mut seen = HashSet::new();
        for &w in wire_map {
            if !seen.insert(w) {
                return Err(Error::Wire(format!("wire map sends two wires to q{w}")));
            }
        }
        let n = wire_map.iter().map(|&w| w + 1).max().unwrap_or(0).max(self.n_qubits);
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().map(|g| g.map_wires(|w| wire_map[w as usize])));
        let outputs = other
            .outputs
            .iter()
            .map(|r| Register::new(r.name.clone(), r.wires.iter().map(|&w| wire_map[w as usize]).collect()))
            .collect();
        Circuit::new(format!("{}+{}", self.name, other.name), n, gates, self.inputs.clone(), outputs)
    }

    /// Inverse circuit: reversed sequence of inverted gates, registers swapped.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            name: format!("{}_dg", self.name),
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
        }
    }

    /// Relabels wire `w` as `perm[w]`.
    pub fn permute_wires(&self, perm: &[u32]) -> Result<Circuit, Error> {
        let n = self.n_qubits as usize;
        if perm.len() != n {
            return Err(Error::Wire(format!("permutation has {} entries for {n} qubits", perm.len())));
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p as usize >= n || std::mem::replace(&mut hit[p as usize], true) {
                return Err(Error::Wire("wire permutation is not a bijection".into()));
            }
        }
        let map = |r: &Register| Register::new(r.name.clone(), r.wires.iter().map(|&w| perm[w as usize]).collect());
        Ok(Circuit {
            name: self.name.clone(),
            n_qubits: self.n_qubits,
            gates: self.gates.iter().map(|g| g.map_wires(|w| perm[w as usize])).collect(),
            inputs: self.inputs.iter().map(map).collect(),
            outputs: self.outputs.iter().map(map).collect(),
        })
    }

    /// Text export: header, registers, ancilla list, one gate per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\nname {}\n", self.n_qubits, self.name);
        let reg_line = |kw: &str, r: &Register| {
            let ws: Vec<String> = r.wires.iter().map(|w| format!("q{w}")).collect();
            format!("{kw} {} {}\n", r.name, ws.join(" "))
        };
        for r in &self.inputs {
            s.push_str(&reg_line("input", r));
        }
        for r in &self.outputs {
            s.push_str(&reg_line("output", r));
        }
        for w in self.ancillas() {
            s.push_str(&format!("ancilla q{w}\n"));
        }
        for g in &self.gates {
            s.push_str(&format!("{g:?}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Circuit, Error> {
        let perr = |line: usize, msg: String| Error::Parse(format!("line {}: {msg}", line + 1));
        let wire = |line: usize, t: &str| -> Result<u32, Error> {
            t.strip_prefix('q')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| perr(line, format!("bad wire {t:?}")))
        };
        let (mut n, mut name) = (None, String::new());
        let (mut gates, mut inputs, mut outputs, mut ancillas) = (vec![], vec![], vec![], vec![]);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or_default();
            match head {
                "qubits" => {
                    let v = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| perr(i, "bad qubit count".into()))?;
                    n = Some(v);
                }
                "name" => name = line["name".len()..].trim().to_string(),
                "input" | "output" => {
                    let rname = toks.next().ok_or_else(|| perr(i, "register needs a name".into()))?;
                    let ws = toks.map(|t| wire(i, t)).collect::<Result<Vec<_>, _>>()?;
                    let r = Register::new(rname, ws);
                    if head == "input" {
                        inputs.push(r)
                    } else {
                        outputs.push(r)
                    }
                }
                "ancilla" => {
                    for t in toks {
                        ancillas.push(wire(i, t)?);
                    }
                }
                _ => {
                    let kind = GateKind::from_name(head).ok_or_else(|| perr(i, format!("unknown gate {head:?}")))?;
                    let ws = toks.map(|t| wire(i, t)).collect::<Result<Vec<_>, _>>()?;
                    gates.push(Gate::new(kind, &ws).map_err(|e| perr(i, e.to_string()))?);
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `qubits` header".into()))?;
        let c = Circuit::new(name, n, gates, inputs, outputs)?;
        if ancillas.iter().any(|&w| c.role(w) != Role::Ancilla || w >= n) {
            return Err(Error::Parse("ancilla line names a register wire".into()));
        }
        Ok(c)
    }
}

/// Incremental circuit construction with per-lane pools of clean wires.
///
/// Wires handed out by [`Builder::alloc`] are clean; callers return them
/// with [`Builder::release`] only once they are clean again. Separate pools
/// keep independent lanes from serialising on shared scratch.
#[derive(Clone, Debug)]
pub struct Builder {
    n: u32,
    gates: Vec<Gate>,
    pools: Vec<Vec<u32>>,
    side: Vec<Option<usize>>,
    pool: usize,
}

impl Default for Builder {
    fn default() -> Builder {
        Builder::new()
    }
}

impl Builder {
    pub fn new() -> Builder {
        Builder { n: 0, gates: vec![], pools: vec![vec![]], side: vec![None], pool: 0 }
    }

    pub fn n_qubits(&self) -> u32 {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// A brand-new wire, never drawn from a pool.
    pub fn fresh(&mut self) -> u32 {
        self.n += 1;
        self.n - 1
    }

    pub fn fresh_n(&mut self, k: usize) -> Vec<u32> {
        (0..k).map(|_| self.fresh()).collect()
    }

    pub fn alloc(&mut self) -> u32 {
        match self.pools[self.pool].pop() {
            Some(w) => w,
            None => self.fresh(),
        }
    }

    pub fn alloc_n(&mut self, k: usize) -> Vec<u32> {
        (0..k).map(|_| self.alloc()).collect()
    }

    pub fn release(&mut self, w: u32) {
        self.pools[self.pool].push(w);
    }

    pub fn release_all(&mut self, ws: &[u32]) {
        for &w in ws.iter().rev() {
            self.release(w);
        }
    }

    pub fn new_pool(&mut self) -> usize {
        self.pools.push(vec![]);
        self.side.push(None);
        self.pools.len() - 1
    }

    /// A second pool tied to the active one, created on first use. Gadgets
    /// that run two halves side by side draw the second half's scratch from
    /// it, so repeated calls from one lane keep reusing the same wires.
    pub fn side_pool(&mut self) -> usize {
        if let Some(id) = self.side[self.pool] {
            return id;
        }
        let id = self.new_pool();
        self.side[self.pool] = Some(id);
        id
    }

    /// Switches the active pool, returning the previous one.
    pub fn set_pool(&mut self, id: usize) -> usize {
        std::mem::replace(&mut self.pool, id)
    }

    pub fn pool(&self) -> usize {
        self.pool
    }

    /// Moves every free wire of pool `from` into pool `into`.
    pub fn merge_pool(&mut self, from: usize, into: usize) {
        let ws = std::mem::take(&mut self.pools[from]);
        self.pools[into].extend(ws);
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn x(&mut self, t: u32) {
        self.push(Gate::x(t));
    }
    pub fn cnot(&mut self, c: u32, t: u32) {
        self.push(Gate::cnot(c, t));
    }
    pub fn toffoli(&mut self, a: u32, b: u32, t: u32) {
        self.push(Gate::toffoli(a, b, t));
    }
    pub fn qand(&mut self, a: u32, b: u32, t: u32) {
        self.push(Gate::qand(a, b, t));
    }
    pub fn qand_dg(&mut self, a: u32, b: u32, t: u32) {
        self.push(Gate::qand_dg(a, b, t));
    }

    /// XORs register `src` into register `dst` bitwise.
    pub fn xor_into(&mut self, src: &[u32], dst: &[u32]) {
        assert_eq!(src.len(), dst.len());
        for (&s, &d) in src.iter().zip(dst) {
            self.cnot(s, d);
        }
    }

    /// Runs `f` and replaces the gates it emitted by their inverse sequence.
    pub fn adjoint<R>(&mut self, f: impl FnOnce(&mut Builder) -> R) -> R {
        let start = self.gates.len();
        let r = f(self);
        let tail: Vec<Gate> = self.gates.drain(start..).rev().map(|g| g.inverse()).collect();
        self.gates.extend(tail);
        r
    }

    /// Appends a finished circuit, sending its wire `i` to `wire_map[i]`.
    pub fn append(&mut self, c: &Circuit, wire_map: &[u32]) {
        assert_eq!(wire_map.len(), c.n_qubits() as usize);
        for g in c.gates() {
            self.push(g.map_wires(|w| wire_map[w as usize]));
        }
    }

    pub fn finish(self, name: impl Into<String>, inputs: Vec<Register>, outputs: Vec<Register>) -> Result<Circuit, Error> {
        Circuit::new(name, self.n, self.gates, inputs, outputs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut b = Builder::new();
        let a = b.fresh_n(3);
        let out = b.fresh();
        b.cnot(a[0], a[1]);
        b.qand(a[1], a[2], out);
        b.x(a[0]);
        b.finish("sample", vec![Register::new("a", a.clone())], vec![Register::new("a", a), Register::new("o", vec![out])])
            .unwrap()
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(GateKind::Cnot, &[1, 1]).is_err());
        assert!(Gate::new(GateKind::Toffoli, &[0, 1]).is_err());
        assert!(Gate::new(GateKind::Toffoli, &[0, 1, 2]).is_ok());
        assert_eq!(Gate::qand(0, 1, 2).inverse(), Gate::qand_dg(0, 1, 2));
        assert_eq!(Gate::t(3).inverse(), Gate::tdg(3));
        assert_eq!(Gate::cnot(0, 1).inverse(), Gate::cnot(0, 1));
    }

    #[test]
    fn dagger_is_involution() {
        let c = sample();
        assert_eq!(c.dagger().dagger().gates(), c.gates());
        assert_eq!(Circuit::new("c", 2, vec![Gate::cnot(0, 1)], vec![], vec![]).unwrap().dagger().gates(), &[Gate::cnot(0, 1)]);
    }

    #[test]
    fn compose_adds_gates() {
        let c = sample();
        let e = Circuit::empty("e", 0);
        let id: Vec<u32> = (0..c.n_qubits()).collect();
        assert_eq!(e.compose(&c, &id).unwrap().gates(), c.gates());
        let cc = c.compose(&c.dagger(), &id).unwrap();
        assert_eq!(cc.gates().len(), 2 * c.gates().len());
        assert!(c.compose(&c, &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn permute_checks_bijection() {
        let c = sample();
        assert_eq!(c.permute_wires(&[0, 1, 2, 3]).unwrap(), c);
        assert!(c.permute_wires(&[0, 0, 2, 3]).is_err());
        let p = c.permute_wires(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p.gates()[0], Gate::cnot(3, 2));
    }

    #[test]
    fn text_roundtrip() {
        let c = sample();
        let t = c.to_text();
        assert!(t.starts_with("qubits 4\nname sample\n"));
        assert_eq!(Circuit::parse(&t).unwrap(), c);
        assert!(Circuit::parse("qubits 2\nFOO q0\n").is_err());
        assert!(Circuit::parse("qubits 2\nCNOT q0 q2\n").is_err());
    }

    #[test]
    fn adjoint_reverses() {
        let mut b = Builder::new();
        let w = b.fresh_n(3);
        b.adjoint(|b| {
            b.qand(w[0], w[1], w[2]);
            b.cnot(w[2], w[0]);
        });
        assert_eq!(b.gates(), &[Gate::cnot(w[2], w[0]), Gate::qand_dg(w[0], w[1], w[2])]);
    }

    #[test]
    fn pools_are_separate() {
        let mut b = Builder::new();
        let w = b.alloc();
        b.release(w);
        let p = b.new_pool();
        let prev = b.set_pool(p);
        assert_ne!(b.alloc(), w);
        b.set_pool(prev);
        assert_eq!(b.alloc(), w);
    }
}
