//! AES round functions, key expansion and full encryption circuits.
//!
//! State byte `k` lives in register `s<k>` (row `k % 4`, column `k / 4`).
//! The key register holds `N_K` words as circular slots: word `t` of the
//! schedule overwrites slot `t mod N_K`, which held word `t - N_K`. Words
//! are produced just before the AddRoundKey that first reads them, so the
//! key-expansion S-boxes of round `r` run beside the SubBytes of round `r`.

use crate::aes_ref::{shift_rows_perm, word_kind, AesVariant};
use crate::blocks::sbox::{c2, c3};
use crate::blocks::{Byte, SboxKind, SboxVariant};
use crate::circuit::{Builder, Circuit, Register};
use crate::gf::Gf256;
use crate::linear::{synth_optimized, SynthResult};
use crate::Error;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PoolPolicy {
    /// One scratch pool per S-box lane.
    SeparatePools,
    /// Every lane draws from one pool, which serialises the lanes.
    Shared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AesConfig {
    pub variant: AesVariant,
    pub ke_sbox: SboxVariant,
    pub round_sbox: SboxVariant,
    pub pool_policy: PoolPolicy,
}

impl AesConfig {
    /// `c2_2` in the key schedule, `c3_3` in SubBytes, separate pools.
    pub fn new(variant: AesVariant) -> AesConfig {
        AesConfig {
            variant,
            ke_sbox: SboxVariant { kind: SboxKind::C2, variant: 2 },
            round_sbox: SboxVariant { kind: SboxKind::C3, variant: 3 },
            pool_policy: PoolPolicy::SeparatePools,
        }
    }

    pub fn with_sboxes(self, ke: SboxVariant, round: SboxVariant) -> Result<AesConfig, Error> {
        if ke.kind != SboxKind::C2 {
            return Err(Error::Config(format!("key expansion needs a c2 S-box, got {ke}")));
        }
        if round.kind != SboxKind::C3 {
            return Err(Error::Config(format!("SubBytes needs a c3 S-box, got {round}")));
        }
        Ok(AesConfig { ke_sbox: ke, round_sbox: round, ..self })
    }

    /// Parses `c2_i:c3_j`.
    pub fn parse_pair(variant: AesVariant, s: &str) -> Result<AesConfig, Error> {
        let (ke, round) = s.split_once(':').ok_or_else(|| Error::Config(format!("expected c2_i:c3_j, got {s:?}")))?;
        AesConfig::new(variant).with_sboxes(SboxVariant::parse(ke.trim())?, SboxVariant::parse(round.trim())?)
    }

    /// Parses a flat `key = value` file with keys `variant`, `ke_sbox`,
    /// `round_sbox` and `pool_policy`. Blank lines and `#` comments are
    /// skipped; missing keys keep their defaults.
    pub fn parse(text: &str) -> Result<AesConfig, Error> {
        let mut variant = AesVariant::Aes128;
        let mut ke = None;
        let mut round = None;
        let mut policy = PoolPolicy::SeparatePools;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {line:?}")))?;
            let v = v.trim();
            match k.trim() {
                "variant" => {
                    let bits = v.trim_start_matches("aes").parse().map_err(|_| Error::Config(format!("bad variant {v:?}")))?;
                    variant = AesVariant::from_bits(bits).ok_or_else(|| Error::Config(format!("bad variant {v:?}")))?;
                }
                "ke_sbox" => ke = Some(SboxVariant::parse(v)?),
                "round_sbox" => round = Some(SboxVariant::parse(v)?),
                "pool_policy" => {
                    policy = match v {
                        "separate-pools" => PoolPolicy::SeparatePools,
                        "shared" => PoolPolicy::Shared,
                        _ => return Err(Error::Config(format!("bad pool_policy {v:?}"))),
                    }
                }
                other => return Err(Error::Config(format!("unknown key {other:?}"))),
            }
        }
        let base = AesConfig::new(variant);
        let cfg = base.with_sboxes(ke.unwrap_or(base.ke_sbox), round.unwrap_or(base.round_sbox))?;
        Ok(AesConfig { pool_policy: policy, ..cfg })
    }

    pub fn to_text(&self) -> String {
        let policy = match self.pool_policy {
            PoolPolicy::SeparatePools => "separate-pools",
            PoolPolicy::Shared => "shared",
        };
        format!(
            "variant={}\nke_sbox={}\nround_sbox={}\npool_policy={policy}\n",
            self.variant.bits(),
            self.ke_sbox,
            self.round_sbox
        )
    }
}

/// CNOT network for one MixColumns column.
pub fn net_mixcolumn() -> &'static SynthResult {
    static NET: OnceLock<SynthResult> = OnceLock::new();
    NET.get_or_init(|| synth_optimized(&crate::aes_ref::mixcolumns_matrix(), 200, 2).expect("MixColumns is invertible"))
}

fn bytes(b: &mut Builder, n: usize) -> Vec<Byte> {
    (0..n).map(|_| b.fresh_n(8).try_into().expect("eight wires")).collect()
}

fn regs(prefix: &str, v: &[Byte]) -> Vec<Register> {
    v.iter().enumerate().map(|(i, w)| Register::new(format!("{prefix}{i}"), w.to_vec())).collect()
}

/// `state ^= key`, 128 CNOTs in one layer.
pub fn add_round_key(b: &mut Builder, state: &[Byte], key: &[Byte]) {
    for (s, k) in state.iter().zip(key) {
        b.xor_into(k, s);
    }
}

/// ShiftRows as a relabelling of the state bytes.
pub fn shift_rows(state: &[Byte]) -> Vec<Byte> {
    shift_rows_perm().iter().map(|&src| state[src]).collect()
}

pub fn mix_columns(b: &mut Builder, state: &mut [Byte]) {
    for c in 0..4 {
        let reg: Vec<u32> = state[4 * c..4 * c + 4].iter().flatten().copied().collect();
        let out = net_mixcolumn().emit(b, &reg);
        for r in 0..4 {
            state[4 * c + r] = out[8 * r..8 * r + 8].try_into().expect("eight wires");
        }
    }
}

/// Scratch pools for the 16 SubBytes lanes and the 4 key-schedule lanes.
struct Lanes {
    sub: Vec<usize>,
    ke: Vec<usize>,
}

impl Lanes {
    fn new(b: &mut Builder, policy: PoolPolicy) -> Lanes {
        match policy {
            PoolPolicy::SeparatePools => {
                Lanes { sub: (0..16).map(|_| b.new_pool()).collect(), ke: (0..4).map(|_| b.new_pool()).collect() }
            }
            PoolPolicy::Shared => Lanes { sub: vec![0; 16], ke: vec![0; 4] },
        }
    }
}

fn sub_bytes(b: &mut Builder, s: SboxVariant, state: &mut [Byte], lanes: &Lanes) {
    for (k, byte) in state.iter_mut().enumerate() {
        let prev = b.set_pool(lanes.sub[k]);
        *byte = c3(b, s.variant, *byte);
        b.set_pool(prev);
    }
}

/// Writes word `t` over slot `t mod N_K`, which holds word `t - N_K`.
fn key_word(b: &mut Builder, cfg: &AesConfig, key: &[Byte], t: usize, lanes: &Lanes) {
    let nk = cfg.variant.nk();
    let prev = &key[4 * ((t - 1) % nk)..4 * ((t - 1) % nk) + 4];
    let cur = &key[4 * (t % nk)..4 * (t % nk) + 4];
    match word_kind(cfg.variant, t) {
        Some(rot) => {
            for j in 0..4 {
                let src = if rot { prev[(j + 1) % 4] } else { prev[j] };
                let p = b.set_pool(lanes.ke[j]);
                c2(b, cfg.ke_sbox.variant, src, cur[j]);
                b.set_pool(p);
            }
            if rot {
                let rc = Gf256::rcon((t / nk) as u32).0;
                for i in 0..8 {
                    if rc >> i & 1 == 1 {
                        b.x(cur[0][i]);
                    }
                }
            }
        }
        None => {
            for j in 0..4 {
                b.xor_into(&prev[j], &cur[j]);
            }
        }
    }
}

fn round_key(key: &[Byte], nk: usize, round: usize) -> Vec<Byte> {
    (0..16).map(|k| key[4 * ((4 * round + k / 4) % nk) + k % 4]).collect()
}

/// Full encryption: inputs `s0..s15` (plaintext) and `k0..` (key bytes);
/// outputs `c0..c15` (ciphertext) and `k0..`, the key register after the
/// last word, where slot `j` holds the final schedule word congruent to
/// `j` mod `N_K`.
pub fn build_aes(cfg: &AesConfig) -> Circuit {
    let v = cfg.variant;
    let nk = v.nk();
    let mut b = Builder::new();
    let pt = bytes(&mut b, 16);
    let key = bytes(&mut b, 4 * nk);
    let lanes = Lanes::new(&mut b, cfg.pool_policy);
    let mut state = pt.clone();
    add_round_key(&mut b, &state, &round_key(&key, nk, 0));
    let mut have = nk;
    for round in 1..=v.nr() {
        sub_bytes(&mut b, cfg.round_sbox, &mut state, &lanes);
        while have < 4 * round + 4 {
            key_word(&mut b, cfg, &key, have, &lanes);
            have += 1;
        }
        state = shift_rows(&state);
        if round != v.nr() {
            mix_columns(&mut b, &mut state);
        }
        add_round_key(&mut b, &state, &round_key(&key, nk, round));
    }
    let mut ins = regs("s", &pt);
    ins.extend(regs("k", &key));
    let mut outs = regs("c", &state);
    outs.extend(regs("k", &key));
    b.finish(v.name(), ins, outs).expect("valid AES circuit")
}

/// The key schedule alone: `k0..` in, the final key register out.
pub fn build_key_expansion(cfg: &AesConfig) -> Circuit {
    let v = cfg.variant;
    let nk = v.nk();
    let mut b = Builder::new();
    let key = bytes(&mut b, 4 * nk);
    let lanes = Lanes::new(&mut b, cfg.pool_policy);
    for t in nk..4 * (v.nr() + 1) {
        key_word(&mut b, cfg, &key, t, &lanes);
    }
    b.finish(format!("ke{}", v.bits()), regs("k", &key), regs("k", &key)).expect("valid key schedule")
}

/// Number of key-expansion rounds, each producing up to `N_K` words and
/// using one Rcon value.
pub fn ke_rounds(variant: AesVariant) -> usize {
    (4 * (variant.nr() + 1) - 1) / variant.nk()
}

/// Key-expansion round `i` (from 1): rewrites the key register from words
/// `(i-1)N_K..iN_K` to words `iN_K..(i+1)N_K`, truncated at the end of the
/// schedule.
pub fn build_key_expansion_round(cfg: &AesConfig, round: usize) -> Result<Circuit, Error> {
    let v = cfg.variant;
    let nk = v.nk();
    if round == 0 || round > ke_rounds(v) {
        return Err(Error::Config(format!("key expansion round {round} out of range 1..={}", ke_rounds(v))));
    }
    let mut b = Builder::new();
    let key = bytes(&mut b, 4 * nk);
    let lanes = Lanes::new(&mut b, cfg.pool_policy);
    for t in round * nk..((round + 1) * nk).min(4 * (v.nr() + 1)) {
        key_word(&mut b, cfg, &key, t, &lanes);
    }
    b.finish(format!("ke{}_round{round}", v.bits()), regs("k", &key), regs("k", &key))
}

/// `N_R` SubBytes layers back to back on the state.
pub fn build_subbytes(cfg: &AesConfig) -> Circuit {
    let mut b = Builder::new();
    let pt = bytes(&mut b, 16);
    let lanes = Lanes::new(&mut b, cfg.pool_policy);
    let mut state = pt.clone();
    for _ in 0..cfg.variant.nr() {
        sub_bytes(&mut b, cfg.round_sbox, &mut state, &lanes);
    }
    b.finish(format!("subbytes{}", cfg.variant.bits()), regs("s", &pt), regs("s", &state)).expect("valid SubBytes")
}

pub fn build_addroundkey() -> Circuit {
    let mut b = Builder::new();
    let s = bytes(&mut b, 16);
    let k = bytes(&mut b, 16);
    add_round_key(&mut b, &s, &k);
    let mut ins = regs("s", &s);
    ins.extend(regs("k", &k));
    b.finish("addroundkey", ins.clone(), ins).expect("valid AddRoundKey")
}

pub fn build_mixcolumns() -> Circuit {
    let mut b = Builder::new();
    let s = bytes(&mut b, 16);
    let mut out = s.clone();
    mix_columns(&mut b, &mut out);
    b.finish("mixcolumns", regs("s", &s), regs("s", &out)).expect("valid MixColumns")
}

/// ShiftRows as a gate-free circuit; only the output labels move.
pub fn build_shiftrows() -> Circuit {
    let mut b = Builder::new();
    let s = bytes(&mut b, 16);
    let out = shift_rows(&s);
    b.finish("shiftrows", regs("s", &s), regs("s", &out)).expect("valid ShiftRows")
}

/// Final key register contents expected by [`build_aes`] and
/// [`build_key_expansion`].
pub fn final_key_register(variant: AesVariant, words: &[[u8; 4]]) -> Vec<u8> {
    let nk = variant.nk();
    let total = words.len();
    let mut out = vec![0u8; 4 * nk];
    for t in total - nk..total {
        out[4 * (t % nk)..4 * (t % nk) + 4].copy_from_slice(&words[t]);
    }
    out
}
