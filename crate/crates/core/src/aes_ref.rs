//! Classical AES used as the oracle for every circuit.
//!
//! State byte `k` is row `k % 4`, column `k / 4`, matching the input byte order.

use crate::gf::{sbox_ref, BinMatrix, Gf256};
use crate::Error;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AesVariant {
    Aes128,
    Aes192,
    Aes256,
}

impl AesVariant {
    pub const ALL: [AesVariant; 3] = [AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256];

    /// Key length in 32-bit words.
    pub fn nk(self) -> usize {
        match self {
            AesVariant::Aes128 => 4,
            AesVariant::Aes192 => 6,
            AesVariant::Aes256 => 8,
        }
    }

    /// Number of rounds.
    pub fn nr(self) -> usize {
        self.nk() + 6
    }

    pub fn key_bytes(self) -> usize {
        4 * self.nk()
    }

    pub fn bits(self) -> usize {
        32 * self.nk()
    }

    pub fn name(self) -> &'static str {
        match self {
            AesVariant::Aes128 => "aes128",
            AesVariant::Aes192 => "aes192",
            AesVariant::Aes256 => "aes256",
        }
    }

    pub fn from_bits(bits: u32) -> Option<AesVariant> {
        match bits {
            128 => Some(AesVariant::Aes128),
            192 => Some(AesVariant::Aes192),
            256 => Some(AesVariant::Aes256),
            _ => None,
        }
    }
}

pub fn sbox_table() -> &'static [u8; 256] {
    static T: OnceLock<[u8; 256]> = OnceLock::new();
    T.get_or_init(|| std::array::from_fn(|i| sbox_ref(i as u8)))
}

fn inv_sbox_table() -> &'static [u8; 256] {
    static T: OnceLock<[u8; 256]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [0u8; 256];
        for (i, &s) in sbox_table().iter().enumerate() {
            t[s as usize] = i as u8;
        }
        t
    })
}

pub fn sub_word(w: [u8; 4]) -> [u8; 4] {
    w.map(|b| sbox_table()[b as usize])
}

pub fn rot_word(w: [u8; 4]) -> [u8; 4] {
    [w[1], w[2], w[3], w[0]]
}

/// Does word `t` of the schedule pass through SubWord, and with RotWord/Rcon?
/// Returns `None` for a plain XOR word, `Some(true)` for RotWord+SubWord+Rcon
/// and `Some(false)` for SubWord alone.
pub fn word_kind(variant: AesVariant, t: usize) -> Option<bool> {
    let nk = variant.nk();
    if t % nk == 0 {
        Some(true)
    } else if nk > 6 && t % nk == 4 {
        Some(false)
    } else {
        None
    }
}

/// Full key schedule, `4 * (nr + 1)` words.
pub fn expand_key(variant: AesVariant, key: &[u8]) -> Result<Vec<[u8; 4]>, Error> {
    let nk = variant.nk();
    if key.len() != variant.key_bytes() {
        return Err(Error::KeyLength { expected: variant.key_bytes(), got: key.len() });
    }
    let total = 4 * (variant.nr() + 1);
    let mut w: Vec<[u8; 4]> = key.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
    for t in nk..total {
        let mut tmp = w[t - 1];
        match word_kind(variant, t) {
            Some(true) => {
                tmp = sub_word(rot_word(tmp));
                tmp[0] ^= Gf256::rcon((t / nk) as u32).0;
            }
            Some(false) => tmp = sub_word(tmp),
            None => {}
        }
        let prev = w[t - nk];
        w.push(std::array::from_fn(|i| prev[i] ^ tmp[i]));
    }
    Ok(w)
}

pub fn round_key(words: &[[u8; 4]], round: usize) -> [u8; 16] {
    std::array::from_fn(|k| words[4 * round + k / 4][k % 4])
}

pub fn add_round_key(state: &mut [u8; 16], rk: &[u8; 16]) {
    for (s, k) in state.iter_mut().zip(rk) {
        *s ^= k;
    }
}

pub fn sub_bytes(state: &mut [u8; 16]) {
    for s in state.iter_mut() {
        *s = sbox_table()[*s as usize];
    }
}

/// Source position of each byte after ShiftRows: `new[k] = old[SHIFT_ROWS[k]]`.
pub fn shift_rows_perm() -> [usize; 16] {
    std::array::from_fn(|k| {
        let (r, c) = (k % 4, k / 4);
        r + 4 * ((c + r) % 4)
    })
}

pub fn shift_rows(state: &mut [u8; 16]) {
    let old = *state;
    for (k, src) in shift_rows_perm().into_iter().enumerate() {
        state[k] = old[src];
    }
}

fn xtime(b: u8) -> u8 {
    Gf256(b).mul(Gf256(2)).0
}

pub fn mix_column(col: [u8; 4]) -> [u8; 4] {
    std::array::from_fn(|r| {
        let a = col[r];
        let b = col[(r + 1) % 4];
        xtime(a) ^ xtime(b) ^ b ^ col[(r + 2) % 4] ^ col[(r + 3) % 4]
    })
}

pub fn mix_columns(state: &mut [u8; 16]) {
    for c in 0..4 {
        let col = mix_column([state[4 * c], state[4 * c + 1], state[4 * c + 2], state[4 * c + 3]]);
        state[4 * c..4 * c + 4].copy_from_slice(&col);
    }
}

fn inv_mix_columns(state: &mut [u8; 16]) {
    let m = |a: u8, k: u8| Gf256(a).mul(Gf256(k)).0;
    for c in 0..4 {
        let col: [u8; 4] = std::array::from_fn(|r| state[4 * c + r]);
        for r in 0..4 {
            state[4 * c + r] = m(col[r], 14) ^ m(col[(r + 1) % 4], 11) ^ m(col[(r + 2) % 4], 13) ^ m(col[(r + 3) % 4], 9);
        }
    }
}

/// The 32x32 GF(2) matrix of one MixColumns column; row byte `r` occupies
/// bits `8r..8r+8`.
pub fn mixcolumns_matrix() -> BinMatrix {
    let mut masks = vec![0u64; 32];
    for j in 0..32 {
        let mut col = [0u8; 4];
        col[j / 8] = 1 << (j % 8);
        let out = mix_column(col);
        for (i, mask) in masks.iter_mut().enumerate() {
            if out[i / 8] >> (i % 8) & 1 == 1 {
                *mask |= 1 << j;
            }
        }
    }
    BinMatrix::from_row_masks(32, masks)
}

pub fn encrypt(variant: AesVariant, key: &[u8], pt: &[u8; 16]) -> Result<[u8; 16], Error> {
    let w = expand_key(variant, key)?;
    let mut s = *pt;
    add_round_key(&mut s, &round_key(&w, 0));
    for round in 1..=variant.nr() {
        sub_bytes(&mut s);
        shift_rows(&mut s);
        if round != variant.nr() {
            mix_columns(&mut s);
        }
        add_round_key(&mut s, &round_key(&w, round));
    }
    Ok(s)
}

pub fn decrypt(variant: AesVariant, key: &[u8], ct: &[u8; 16]) -> Result<[u8; 16], Error> {
    let w = expand_key(variant, key)?;
    let perm = shift_rows_perm();
    let mut s = *ct;
    for round in (1..=variant.nr()).rev() {
        add_round_key(&mut s, &round_key(&w, round));
        if round != variant.nr() {
            inv_mix_columns(&mut s);
        }
        let old = s;
        for (k, src) in perm.into_iter().enumerate() {
            s[src] = old[k];
        }
        for b in s.iter_mut() {
            *b = inv_sbox_table()[*b as usize];
        }
    }
    add_round_key(&mut s, &round_key(&w, 0));
    Ok(s)
}

/// Parses a hex string (whitespace ignored) into bytes.
pub fn parse_hex(s: &str) -> Result<Vec<u8>, Error> {
    let clean: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if clean.len() % 2 != 0 {
        return Err(Error::Parse(format!("odd-length hex string {s:?}")));
    }
    (0..clean.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&clean[i..i + 2], 16).map_err(|_| Error::Parse(format!("bad hex {s:?}"))))
        .collect()
}

pub fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
