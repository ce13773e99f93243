//! Basis-state simulation of reversible circuits, 64 cases at a time.

use crate::circuit::{Circuit, GateKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Default seed for randomized sweeps.
pub const DEFAULT_SEED: u64 = 0xAE5;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("gate {index} ({gate}) computes an AND into a target that is not 0")]
    DirtyAndTarget { index: usize, gate: String },
    #[error("gate {index} ({gate}) uncomputes an AND whose target does not hold the product")]
    AndMismatch { index: usize, gate: String },
    #[error("gate {index} ({kind}) has no basis-state action")]
    NonClassical { index: usize, kind: &'static str },
    #[error("wire q{wire} is not 0 after the circuit (case {case})")]
    DirtyAncilla { wire: u32, case: usize },
    #[error("value {value:#x} does not fit register {name}")]
    Overflow { name: String, value: u64 },
    #[error("expected {expected} input values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("register {name} is wider than 64 wires")]
    WideRegister { name: String },
    #[error("{bits}-bit input space exceeds the exhaustive cap of {cap} bits")]
    CapExceeded { bits: u32, cap: u32 },
}

/// A full assignment of bits to wires.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn zeros(n: u32) -> BasisState {
        BasisState { bits: vec![false; n as usize] }
    }

    pub fn from_bits(bits: Vec<bool>) -> BasisState {
        BasisState { bits }
    }

    pub fn get(&self, w: u32) -> bool {
        self.bits[w as usize]
    }

    pub fn set(&mut self, w: u32, v: bool) {
        self.bits[w as usize] = v;
    }

    pub fn width(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Reads wires as an LSB-first integer.
    pub fn read(&self, wires: &[u32]) -> u64 {
        wires.iter().enumerate().fold(0, |acc, (i, &w)| acc | (self.get(w) as u64) << i)
    }

    pub fn write(&mut self, wires: &[u32], v: u64) {
        for (i, &w) in wires.iter().enumerate() {
            self.set(w, v >> i & 1 == 1);
        }
    }
}

/// Executes classical gates on bit-sliced state: bit `l` of `state[w]` is
/// wire `w` in case `l`. Only lanes in `active` are checked for AND
/// preconditions.
pub fn run_lanes(c: &Circuit, state: &mut [u64], active: u64) -> Result<(), SimError> {
    for (index, g) in c.gates().iter().enumerate() {
        let w = g.wires();
        match g.kind {
            GateKind::X => state[w[0] as usize] ^= !0,
            GateKind::Cnot => state[w[1] as usize] ^= state[w[0] as usize],
            GateKind::Toffoli => state[w[2] as usize] ^= state[w[0] as usize] & state[w[1] as usize],
            GateKind::Qand => {
                let t = w[2] as usize;
                if state[t] & active != 0 {
                    return Err(SimError::DirtyAndTarget { index, gate: format!("{g:?}") });
                }
                state[t] = state[w[0] as usize] & state[w[1] as usize];
            }
            GateKind::QandDg => {
                let t = w[2] as usize;
                if (state[t] ^ state[w[0] as usize] & state[w[1] as usize]) & active != 0 {
                    return Err(SimError::AndMismatch { index, gate: format!("{g:?}") });
                }
                state[t] = 0;
            }
            k => return Err(SimError::NonClassical { index, kind: k.name() }),
        }
    }
    Ok(())
}

pub fn run(c: &Circuit, input: &BasisState) -> Result<BasisState, SimError> {
    let mut state: Vec<u64> = (0..c.n_qubits()).map(|w| if input.get(w) { !0 } else { 0 }).collect();
    run_lanes(c, &mut state, 1)?;
    Ok(BasisState::from_bits(state.iter().map(|&v| v & 1 == 1).collect()))
}

fn check_registers(c: &Circuit) -> Result<(), SimError> {
    for r in c.inputs().iter().chain(c.outputs()) {
        if r.wires.len() > 64 {
            return Err(SimError::WideRegister { name: r.name.clone() });
        }
    }
    Ok(())
}

/// Runs up to 64 cases. Each case lists one value per input register;
/// the result lists one value per output register. Every wire outside the
/// output registers must return to 0.
pub fn eval_batch(c: &Circuit, cases: &[Vec<u64>]) -> Result<Vec<Vec<u64>>, SimError> {
    assert!(cases.len() <= 64, "at most 64 cases per batch");
    check_registers(c)?;
    let mut state = vec![0u64; c.n_qubits() as usize];
    for (lane, case) in cases.iter().enumerate() {
        if case.len() != c.inputs().len() {
            return Err(SimError::Arity { expected: c.inputs().len(), got: case.len() });
        }
        for (r, &v) in c.inputs().iter().zip(case) {
            if r.wires.len() < 64 && v >> r.wires.len() != 0 {
                return Err(SimError::Overflow { name: r.name.clone(), value: v });
            }
            for (i, &w) in r.wires.iter().enumerate() {
                state[w as usize] |= (v >> i & 1) << lane;
            }
        }
    }
    let active = if cases.len() == 64 { !0 } else { (1u64 << cases.len()) - 1 };
    run_lanes(c, &mut state, active)?;
    let mut is_out = vec![false; state.len()];
    for r in c.outputs() {
        for &w in &r.wires {
            is_out[w as usize] = true;
        }
    }
    for (w, &v) in state.iter().enumerate() {
        if !is_out[w] && v & active != 0 {
            let case = (v & active).trailing_zeros() as usize;
            return Err(SimError::DirtyAncilla { wire: w as u32, case });
        }
    }
    Ok((0..cases.len())
        .map(|lane| {
            c.outputs()
                .iter()
                .map(|r| r.wires.iter().enumerate().fold(0, |acc, (i, &w)| acc | (state[w as usize] >> lane & 1) << i))
                .collect()
        })
        .collect())
}

pub fn eval(c: &Circuit, case: &[u64]) -> Result<Vec<u64>, SimError> {
    Ok(eval_batch(c, &[case.to_vec()])?.remove(0))
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Largest input space, in bits, enumerated exhaustively.
    pub cap_bits: u32,
    /// Random cases drawn when the space exceeds the cap; 0 disables the fallback.
    pub random_cases: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { cap_bits: 24, random_cases: 4096, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: Vec<u64>,
    pub expected: Vec<u64>,
    pub got: Result<Vec<u64>, SimError>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub circuit: String,
    pub cases: u64,
    pub exhaustive: bool,
    pub seed: u64,
    pub failures: u64,
    pub first_failure: Option<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Thread pool sized by `QAES_THREADS` when set.
pub fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("QAES_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("thread pool")
    })
}

fn check_chunk(
    c: &Circuit,
    cases: &[Vec<u64>],
    oracle: &(impl Fn(&[u64]) -> Option<Vec<u64>> + Sync),
) -> (u64, u64, Option<Counterexample>) {
    let wanted: Vec<(Vec<u64>, Vec<u64>)> =
        cases.iter().filter_map(|cs| oracle(cs).map(|e| (cs.clone(), e))).collect();
    let mut fails = 0;
    let mut first = None;
    let batch: Vec<Vec<u64>> = wanted.iter().map(|(i, _)| i.clone()).collect();
    match eval_batch(c, &batch) {
        Ok(outs) => {
            for ((inp, exp), got) in wanted.iter().zip(outs) {
                if &got != exp {
                    fails += 1;
                    first.get_or_insert(Counterexample { inputs: inp.clone(), expected: exp.clone(), got: Ok(got) });
                }
            }
        }
        Err(_) => {
            for (inp, exp) in &wanted {
                let got = eval(c, inp);
                if got.as_ref() != Ok(exp) {
                    fails += 1;
                    first.get_or_insert(Counterexample { inputs: inp.clone(), expected: exp.clone(), got });
                }
            }
        }
    }
    (wanted.len() as u64, fails, first)
}

/// Compares the circuit with `oracle` over every input (or a seeded random
/// sample when the space is larger than the cap). The oracle returns `None`
/// for inputs outside the contract, which are skipped.
pub fn sweep(
    c: &Circuit,
    oracle: impl Fn(&[u64]) -> Option<Vec<u64>> + Sync,
    cfg: &SweepConfig,
) -> Result<SweepReport, SimError> {
    check_registers(c)?;
    let widths: Vec<u32> = c.inputs().iter().map(|r| r.wires.len() as u32).collect();
    let bits: u32 = widths.iter().sum();
    let exhaustive = bits <= cfg.cap_bits;
    if !exhaustive && cfg.random_cases == 0 {
        return Err(SimError::CapExceeded { bits, cap: cfg.cap_bits });
    }
    let split = |mut idx: u64| -> Vec<u64> {
        widths
            .iter()
            .map(|&w| {
                let v = idx & ((1u64 << w) - 1);
                idx >>= w;
                v
            })
            .collect()
    };
    let cases: Vec<Vec<u64>> = if exhaustive {
        (0..1u64 << bits).map(split).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.random_cases)
            .map(|_| widths.iter().map(|&w| if w >= 64 { rng.gen() } else { rng.gen::<u64>() & ((1u64 << w) - 1) }).collect())
            .collect()
    };
    let parts: Vec<(u64, u64, Option<Counterexample>)> =
        thread_pool().install(|| cases.par_chunks(64).map(|ch| check_chunk(c, ch, &oracle)).collect());
    let mut report = SweepReport {
        circuit: c.name().to_string(),
        cases: 0,
        exhaustive,
        seed: cfg.seed,
        failures: 0,
        first_failure: None,
    };
    for (n, f, first) in parts {
        report.cases += n;
        report.failures += f;
        if report.first_failure.is_none() {
            report.first_failure = first;
        }
    }
    Ok(report)
}

/// Checks `run(C†, run(C, x)) = x` on every input.
pub fn roundtrip_sweep(c: &Circuit, cfg: &SweepConfig) -> Result<SweepReport, SimError> {
    roundtrip_sweep_where(c, |_| true, cfg)
}

/// [`roundtrip_sweep`] restricted to inputs accepted by `domain`.
pub fn roundtrip_sweep_where<D>(c: &Circuit, domain: D, cfg: &SweepConfig) -> Result<SweepReport, SimError>
where
    D: Fn(&[u64]) -> bool + Sync,
{
    let id: Vec<u32> = (0..c.n_qubits()).collect();
    let both = c.compose(&c.dagger(), &id).expect("identity wire map");
    sweep(&both, |x| domain(x).then(|| x.to_vec()), cfg)
}
