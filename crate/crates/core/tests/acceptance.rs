//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so every criterion is reported even when an earlier one fails.

use qaes::aes::{self, AesConfig};
use qaes::aes_ref::{self, AesVariant};
use qaes::catalog;
use qaes::cost::{self, ResourceReport, Strategy};
use qaes::gf::{self, BinMatrix};
use qaes::linear::{apply_linear, synth_optimized, LinearCheck, SynthResult};
use qaes::parity;
use qaes::sim::DEFAULT_SEED;
use qaes::suites::{self, SuiteResult};
use qaes::unitary::{unitary_equal_on, unitary_of};
use qaes::{Circuit, Gate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const GF_BUDGET: Duration = Duration::from_secs(5);
const BLOCK_BUDGET: Duration = Duration::from_secs(60);
const SBOX_BUDGET: Duration = Duration::from_secs(120);
const AES_BUDGET: Duration = Duration::from_secs(600);
const UNITARY_TOL: f64 = 1e-9;

const INV1_TOFFOLI_DEPTH_MAX: u32 = 6;
const AES128_WIDTH_MAX: u32 = 1285;
const AES128_T_DEPTH_MAX: u32 = 150;
const AES128_DW_MAX: u64 = 195_000;

const U_M_MAX: usize = 12;
const U_AM_INV_MAX: usize = 18;
const MIXCOLUMN_MAX: usize = 110;
const LINEAR_RANDOM_VECTORS: usize = 100;
const SYNTH_EFFORT: usize = 100;

type Outcome = Result<String, String>;

fn suites_ok(results: &[SuiteResult]) -> Result<u64, String> {
    let mut cases = 0;
    for r in results {
        if !r.passed() {
            return Err(r.line());
        }
        cases += r.cases;
    }
    Ok(cases)
}

fn within(label: &str, start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t > budget {
        return Err(format!("{label} took {t:.2?}, budget {budget:?}"));
    }
    Ok(format!("{label} in {t:.2?}"))
}

fn field_suite() -> Outcome {
    let start = Instant::now();
    let cases = suites_ok(&suites::gf())?;
    within(&format!("{cases} cases"), start, GF_BUDGET)
}

fn block_exhaustives() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for name in catalog::block_names().iter().filter(|n| !n.starts_with('c') && !n.starts_with("u_")) {
        let r = suites::check(name, None, 0, DEFAULT_SEED).map_err(|e| e.to_string())?;
        cases += suites_ok(&[r])?;
    }
    within(&format!("{cases} cases"), start, BLOCK_BUDGET)
}

fn sbox_exhaustives() -> Outcome {
    let start = Instant::now();
    let cases = suites_ok(&suites::sbox(DEFAULT_SEED).map_err(|e| e.to_string())?)?;
    for v in 1..=3 {
        let name = format!("c2_{v}");
        let c = catalog::build(&name).map_err(|e| e.to_string())?;
        for a in 0..256u64 {
            for h in [0x00u64, 0x5a, 0xff] {
                let got = qaes::sim::eval(&c, &[a, h]).map_err(|e| format!("{name}: {e}"))?;
                let want = vec![a, h ^ aes_ref::sbox_table()[a as usize] as u64];
                if got != want {
                    return Err(format!("{name} a={a:#04x} h={h:#04x}: got {got:?}"));
                }
            }
        }
    }
    within(&format!("{cases} cases plus 3 XOR targets per c2 input"), start, SBOX_BUDGET)
}

fn end_to_end_aes() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for v in [AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256] {
        cases += suites_ok(&suites::aes(v, None, DEFAULT_SEED).map_err(|e| e.to_string())?)?;
    }
    within(&format!("standard vectors and {} random vectors per variant ({cases} checks)", suites::AES_RANDOM_VECTORS), start, AES_BUDGET)
}

fn templates() -> Outcome {
    let on = |gates: Vec<Gate>| Circuit::new("template", 7, gates, vec![], vec![]).map_err(|e| e.to_string());
    let target = unitary_of(&on(vec![Gate::toffoli(0, 1, 2)])?).map_err(|e| e.to_string())?;
    let cases: [(&str, Vec<Gate>, &[u32]); 3] = [
        ("seven_t", cost::seven_t(0, 1, 2), &[]),
        ("t_depth_one", cost::t_depth_one(0, 1, 2, [3, 4, 5, 6]), &[3, 4, 5, 6]),
        ("qand", cost::and_gadget(0, 1, 2, 3), &[2, 3]),
    ];
    for (name, gates, clean) in cases {
        let u = unitary_of(&on(gates)?).map_err(|e| e.to_string())?;
        if !unitary_equal_on(&u, &target, clean, UNITARY_TOL) {
            return Err(format!("{name} differs from the Toffoli unitary"));
        }
    }
    Ok(format!("seven_t, t_depth_one and qand within {UNITARY_TOL:e}"))
}

fn report(name: &str, cfg: Option<&AesConfig>) -> Result<ResourceReport, String> {
    let c = catalog::build_with(name, cfg).map_err(|e| e.to_string())?;
    cost::report(&c, Strategy::Qand).map_err(|e| e.to_string())
}

fn cost_parity() -> Outcome {
    let mul0 = report("mul0", None)?;
    let inv1 = report("inv1", None)?;
    let cfg = AesConfig::parse_pair(AesVariant::Aes128, "c2_2:c3_3").map_err(|e| e.to_string())?;
    let a = report("aes128", Some(&cfg))?;
    let rows = parity::covered(Strategy::Qand).map_err(|e| e.to_string())?;
    print!("{}", parity::to_table(&rows));
    let mut bad = vec![];
    if mul0.t_depth != 1 {
        bad.push(format!("mul0 T-depth {}", mul0.t_depth));
    }
    if inv1.toffoli_depth > INV1_TOFFOLI_DEPTH_MAX {
        bad.push(format!("inv1 Toffoli-depth {}", inv1.toffoli_depth));
    }
    if a.qubits > AES128_WIDTH_MAX {
        bad.push(format!("aes128 width {}", a.qubits));
    }
    if a.t_depth > AES128_T_DEPTH_MAX {
        bad.push(format!("aes128 T-depth {}", a.t_depth));
    }
    if a.dw_t > AES128_DW_MAX {
        bad.push(format!("aes128 DW(T) {}", a.dw_t));
    }
    let summary = format!(
        "mul0 T-depth {}, inv1 Toffoli-depth {}, aes128 c2_2:c3_3 width {} T-depth {} DW(T) {}, {} published rows compared",
        mul0.t_depth,
        inv1.toffoli_depth,
        a.qubits,
        a.t_depth,
        a.dw_t,
        rows.len()
    );
    if bad.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", bad.join(", ")))
    }
}

fn pad(c: &Circuit, n: u32) -> Result<Circuit, String> {
    Circuit::new(c.name(), n, c.gates().to_vec(), vec![], vec![]).map_err(|e| e.to_string())
}

fn self_consistency() -> Outcome {
    let names = catalog::names();
    let mut reports = vec![];
    for name in &names {
        let c = catalog::build(name).map_err(|e| e.to_string())?;
        for s in Strategy::ALL {
            let r = cost::report(&c, s).map_err(|e| e.to_string())?;
            if r.dw_t != r.qubits as u64 * r.t_depth as u64 {
                return Err(format!("{name} {s}: DW(T) {} != {} x {}", r.dw_t, r.qubits, r.t_depth));
            }
            reports.push(r);
        }
    }
    let blocks = catalog::block_names();
    let mut pairs = 0;
    for w in blocks.windows(2) {
        let (a, b) = (catalog::build(&w[0]).map_err(|e| e.to_string())?, catalog::build(&w[1]).map_err(|e| e.to_string())?);
        let n = a.n_qubits().max(b.n_qubits());
        let ab = pad(&a, n)?.compose(&pad(&b, n)?, &(0..n).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        for s in Strategy::ALL {
            let r = |c: &Circuit| cost::report(c, s).map_err(|e| e.to_string());
            let (ra, rb, rab) = (r(&a)?, r(&b)?, r(&ab)?);
            let sums = [
                (rab.n_toffoli, ra.n_toffoli + rb.n_toffoli),
                (rab.n_cnot, ra.n_cnot + rb.n_cnot),
                (rab.n_not, ra.n_not + rb.n_not),
                (rab.n_t, ra.n_t + rb.n_t),
                (rab.n_clifford, ra.n_clifford + rb.n_clifford),
            ];
            if sums.iter().any(|(x, y)| x != y) {
                return Err(format!("counts of {}+{} under {s} are not additive", w[0], w[1]));
            }
        }
        pairs += 1;
    }
    for name in &names {
        let r = suites::check_roundtrip(name, None, suites::AES_RANDOM_VECTORS, DEFAULT_SEED).map_err(|e| e.to_string())?;
        suites_ok(&[r])?;
    }
    Ok(format!("{} reports, {pairs} compositions, {} round trips", reports.len(), names.len()))
}

fn check_network(label: &str, m: &BinMatrix, net: &SynthResult, max: usize) -> Result<String, String> {
    let n = net.circuit.gates().len();
    if let LinearCheck::Fail { basis, expected, got } = net.verify(m).map_err(|e| e.to_string())? {
        return Err(format!("{label}: unit vector {basis} gave {got:#x}, expected {expected:#x}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mask = if m.cols() >= 64 { !0 } else { (1u64 << m.cols()) - 1 };
    for _ in 0..LINEAR_RANDOM_VECTORS {
        let x = rng.gen::<u64>() & mask;
        let got = apply_linear(&net.circuit, &net.output_wires, x).map_err(|e| e.to_string())?;
        if got != m.apply(x) {
            return Err(format!("{label}: vector {x:#x} gave {got:#x}"));
        }
    }
    if n > max {
        return Err(format!("{label} {n} CNOT, bound {max}"));
    }
    Ok(format!("{label} {n}"))
}

fn linear_synthesis() -> Outcome {
    let m = gf::matrix_m();
    let am = gf::matrix_am_inv();
    let mc = aes_ref::mixcolumns_matrix();
    let parts = [
        check_network("U_M", &m, &synth_optimized(&m, SYNTH_EFFORT, DEFAULT_SEED).map_err(|e| e.to_string())?, U_M_MAX)?,
        check_network("U_AM_inv", &am, &synth_optimized(&am, SYNTH_EFFORT, DEFAULT_SEED).map_err(|e| e.to_string())?, U_AM_INV_MAX)?,
        check_network("MixColumns column", &mc, aes::net_mixcolumn(), MIXCOLUMN_MAX)?,
    ];
    Ok(format!("{} CNOT", parts.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("field-level oracles", field_suite),
        ("block exhaustives", block_exhaustives),
        ("S-box exhaustives", sbox_exhaustives),
        ("end-to-end AES", end_to_end_aes),
        ("template unitaries", templates),
        ("depth/cost parity", cost_parity),
        ("self-consistency identities", self_consistency),
        ("linear synthesis", linear_synthesis),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} PASS {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {label}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
