//! Verification suites behind `qaes verify` and the acceptance run.

use crate::aes::AesConfig;
use crate::aes_ref::{self, AesVariant};
use crate::catalog;
use crate::gf::{map_phi, sbox_composite, sbox_direct, Gf16, Gf256};
use crate::sim::{self, roundtrip_sweep_where, sweep, SweepConfig};
use crate::Error;

/// Published inverses in GF(2^4), indexed by the element.
pub const PUBLISHED_INVERSES: [u8; 16] = [0x0, 0x1, 0x9, 0xE, 0xD, 0xB, 0x7, 0x6, 0xF, 0x2, 0xC, 0x5, 0xA, 0x4, 0x3, 0x8];

pub const TARGETS: [&str; 8] = ["gf", "sbox", "mul", "ke", "aes128", "aes192", "aes256", "all"];

/// Random vectors drawn per AES-level circuit.
pub const AES_RANDOM_VECTORS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// First counterexample, when there is one.
    pub detail: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut s = format!("{:<22} cases {:>8}  failures {:>6}  {verdict}", self.name, self.cases, self.failures);
        if let Some(d) = &self.detail {
            s.push_str(&format!("\n    first failure: {d}"));
        }
        s
    }
}

fn count(name: &str, cases: impl Iterator<Item = (String, bool)>) -> SuiteResult {
    let (mut n, mut fails, mut detail) = (0, 0, None);
    for (label, ok) in cases {
        n += 1;
        if !ok {
            fails += 1;
            detail.get_or_insert(label);
        }
    }
    SuiteResult { name: name.to_string(), cases: n, failures: fails, detail }
}

/// Field-level checks: the published inverse table, the isomorphism into
/// the composite field, and the two S-box formulas.
pub fn gf() -> Vec<SuiteResult> {
    let inv = count(
        "gf16_inv",
        (0..16u8).map(|b| (format!("b={b:#x}"), Gf16(b).inv().0 == PUBLISHED_INVERSES[b as usize])),
    );
    let phi = count(
        "phi_isomorphism",
        (0..=255u8).flat_map(|a| (0..=255u8).map(move |b| (a, b))).map(|(a, b)| {
            let (x, y) = (Gf256(a), Gf256(b));
            let ok = map_phi(x.mul(y)) == map_phi(x).mul(map_phi(y)) && map_phi(x.add(y)) == map_phi(x).add(map_phi(y));
            (format!("a={a:#04x} b={b:#04x}"), ok)
        }),
    );
    let sbox = count(
        "sbox_formulas",
        (0..=255u8).map(|a| (format!("a={a:#04x}"), sbox_direct(Gf256(a)) == sbox_composite(Gf256(a)))),
    );
    vec![inv, phi, sbox]
}

fn from_sweep(name: &str, r: sim::SweepReport) -> SuiteResult {
    SuiteResult {
        name: name.to_string(),
        cases: r.cases,
        failures: r.failures,
        detail: r.first_failure.map(|f| format!("inputs {:?} expected {:?} got {:?}", f.inputs, f.expected, f.got)),
    }
}

/// Oracle sweep of one catalog circuit; exhaustive up to 2^24 inputs.
pub fn check(name: &str, cfg: Option<&AesConfig>, random_cases: usize, seed: u64) -> Result<SuiteResult, Error> {
    let c = catalog::build_with(name, cfg)?;
    let r = sweep(&c, catalog::oracle(name)?, &SweepConfig { cap_bits: 24, random_cases, seed })?;
    Ok(from_sweep(name, r))
}

/// `C†(C(x)) = x` over the same inputs as [`check`].
pub fn check_roundtrip(name: &str, cfg: Option<&AesConfig>, random_cases: usize, seed: u64) -> Result<SuiteResult, Error> {
    let c = catalog::build_with(name, cfg)?;
    let oracle = catalog::oracle(name)?;
    let r = roundtrip_sweep_where(&c, |x| oracle(x).is_some(), &SweepConfig { cap_bits: 24, random_cases, seed })?;
    Ok(from_sweep(&format!("{name}_roundtrip"), r))
}

/// GF(2^4) gadgets and the composite-field inversions.
pub fn mul(seed: u64) -> Result<Vec<SuiteResult>, Error> {
    catalog::block_names()
        .iter()
        .filter(|n| !n.starts_with('c') && !n.starts_with("u_"))
        .map(|n| check(n, None, 4096, seed))
        .collect()
}

/// Every S-box variant plus the linear layers around the inversion.
pub fn sbox(seed: u64) -> Result<Vec<SuiteResult>, Error> {
    let mut out = vec![];
    for n in catalog::block_names().iter().filter(|n| n.starts_with('c') || n.starts_with("u_")) {
        out.push(check(n, None, 4096, seed)?);
    }
    for n in ["c3_1", "c3_2", "c3_3", "c3_4"] {
        out.push(c3_bijective(n)?);
    }
    Ok(out)
}

fn c3_bijective(name: &str) -> Result<SuiteResult, Error> {
    let c = catalog::build(name)?;
    let mut seen = [false; 256];
    let mut cases = vec![];
    for a in 0..256u64 {
        let y = sim::eval(&c, &[a])?[0] as usize;
        cases.push((format!("a={a:#04x} repeats output {y:#04x}"), !std::mem::replace(&mut seen[y], true)));
    }
    Ok(count(&format!("{name}_bijective"), cases.into_iter()))
}

/// Key expansion for the three key sizes on random keys.
pub fn ke(seed: u64) -> Result<Vec<SuiteResult>, Error> {
    ["ke128", "ke192", "ke256"].iter().map(|n| check(n, None, AES_RANDOM_VECTORS, seed)).collect()
}

/// The worked example of the standard for each key size: key
/// `00 01 02 ...`, plaintext `00 11 22 ... ff`.
pub fn standard_vector(v: AesVariant) -> (Vec<u8>, [u8; 16], [u8; 16]) {
    let key: Vec<u8> = (0..v.key_bytes() as u8).collect();
    let pt: [u8; 16] = std::array::from_fn(|i| (i as u8) * 0x11);
    let ct = match v {
        AesVariant::Aes128 => "69c4e0d86a7b0430d8cdb78070b4c55a",
        AesVariant::Aes192 => "dda97ca4864cdfe06eaf70a0ec0d7191",
        AesVariant::Aes256 => "8ea2b7ca516745bfeafc49904b496089",
    };
    let ct = aes_ref::parse_hex(ct).expect("valid hex").try_into().expect("16 bytes");
    (key, pt, ct)
}

/// The standard vector through the classical reference and then through
/// the simulated circuit, plus random vectors against the reference.
pub fn aes(v: AesVariant, cfg: Option<&AesConfig>, seed: u64) -> Result<Vec<SuiteResult>, Error> {
    let name = v.name();
    let (key, pt, ct) = standard_vector(v);
    let reference = aes_ref::encrypt(v, &key, &pt)?;
    let c = catalog::build_with(name, cfg)?;
    let mut input: Vec<u64> = pt.iter().map(|&b| b as u64).collect();
    input.extend(key.iter().map(|&b| b as u64));
    let simulated: Result<Vec<u8>, _> = sim::eval(&c, &input).map(|o| o[..16].iter().map(|&b| b as u8).collect());
    let fips = count(
        &format!("{name}_standard_vector"),
        [
            (format!("reference gave {}", aes_ref::to_hex(&reference)), reference == ct),
            (format!("circuit gave {simulated:?}"), simulated.as_deref() == Ok(&ct[..])),
        ]
        .into_iter(),
    );
    let r = sweep(&c, catalog::oracle(name)?, &SweepConfig { cap_bits: 24, random_cases: AES_RANDOM_VECTORS, seed })?;
    Ok(vec![fips, from_sweep(&format!("{name}_random"), r)])
}

pub fn run(target: &str, seed: u64) -> Result<Vec<SuiteResult>, Error> {
    let one = |t: &str| -> Result<Vec<SuiteResult>, Error> {
        match t {
            "gf" => Ok(gf()),
            "sbox" => sbox(seed),
            "mul" => mul(seed),
            "ke" => ke(seed),
            "aes128" => aes(AesVariant::Aes128, None, seed),
            "aes192" => aes(AesVariant::Aes192, None, seed),
            "aes256" => aes(AesVariant::Aes256, None, seed),
            _ => Err(Error::Config(format!("unknown verify target {t:?} (one of {})", TARGETS.join(", ")))),
        }
    };
    if target == "all" {
        let mut out = vec![];
        for t in &TARGETS[..TARGETS.len() - 1] {
            out.extend(one(t)?);
        }
        Ok(out)
    } else {
        one(target)
    }
}

