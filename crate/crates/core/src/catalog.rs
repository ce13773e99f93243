//! Named circuits and their classical oracles.

use crate::aes::{self, AesConfig};
use crate::aes_ref::{self, AesVariant};
use crate::blocks::{self, Mul2Variant, SboxKind, SboxVariant};
use crate::circuit::Circuit;
use crate::gf::{matrix_am_inv, matrix_m, sbox_ref, Composite, Gf16};
use crate::Error;

/// Expected output registers for given input registers, or `None` when the
/// input is outside the circuit's contract.
pub type Oracle = Box<dyn Fn(&[u64]) -> Option<Vec<u64>> + Send + Sync>;

/// Every buildable name, in a fixed order.
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = ["inv0", "inv1", "q2lambda", "mul0", "mul1", "mul2_v1", "mul2_v2"].map(String::from).to_vec();
    v.extend((1..=2).map(|i| format!("uinv0_{i}")));
    v.extend((1..=3).map(|i| format!("uinv1_{i}")));
    v.extend((1..=4).map(|i| format!("uinv2_{i}")));
    v.extend(SboxVariant::all().iter().map(|s| s.to_string()));
    v.extend(["u_m", "u_am_inv", "addroundkey", "shiftrows", "mixcolumns"].map(String::from));
    for prefix in ["ke", "subbytes", "aes"] {
        v.extend(AesVariant::ALL.iter().map(|a| format!("{prefix}{}", a.bits())));
    }
    v
}

/// Names whose circuits have at most 24 input bits and are swept
/// exhaustively.
pub fn block_names() -> Vec<String> {
    names().into_iter().take_while(|n| n != "addroundkey").collect()
}

fn numbered(name: &str, prefix: &str) -> Option<u8> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Which AES-level circuit a name refers to, with the variant from its
/// suffix.
fn aes_level(name: &str) -> Option<(&'static str, AesVariant)> {
    for prefix in ["ke", "subbytes", "aes"] {
        if let Some(bits) = name.strip_prefix(prefix).and_then(|s| s.parse().ok()) {
            return AesVariant::from_bits(bits).map(|v| (prefix, v));
        }
    }
    None
}

/// Builds `name`; AES-level names use `cfg` (variant taken from the name)
/// or the default configuration.
pub fn build_with(name: &str, cfg: Option<&AesConfig>) -> Result<Circuit, Error> {
    if let Some((kind, v)) = aes_level(name) {
        let cfg = AesConfig { variant: v, ..cfg.copied().unwrap_or_else(|| AesConfig::new(v)) };
        return Ok(match kind {
            "ke" => aes::build_key_expansion(&cfg),
            "subbytes" => aes::build_subbytes(&cfg),
            _ => aes::build_aes(&cfg),
        });
    }
    let c = match name {
        "inv0" => blocks::build_inv0(),
        "inv1" => blocks::build_inv1(),
        "q2lambda" => blocks::build_q2lambda(),
        "mul0" => blocks::build_mul0(),
        "mul1" => blocks::build_mul1(),
        "mul2_v1" => blocks::build_mul2(Mul2Variant::V1),
        "mul2_v2" => blocks::build_mul2(Mul2Variant::V2),
        "u_m" => blocks::build_u_m(),
        "u_am_inv" => blocks::build_u_am_inv(),
        "addroundkey" => aes::build_addroundkey(),
        "shiftrows" => aes::build_shiftrows(),
        "mixcolumns" => aes::build_mixcolumns(),
        _ => {
            if let Some(v) = numbered(name, "uinv0_") {
                return blocks::build_uinv0(v);
            }
            if let Some(v) = numbered(name, "uinv1_") {
                return blocks::build_uinv1(v);
            }
            if let Some(v) = numbered(name, "uinv2_") {
                return blocks::build_uinv2(v);
            }
            let s = SboxVariant::parse(name).map_err(|_| Error::UnknownCircuit(name.to_string()))?;
            blocks::build_sbox(s)
        }
    };
    Ok(c)
}

pub fn build(name: &str) -> Result<Circuit, Error> {
    build_with(name, None)
}

fn comp_inv(p: u64) -> u64 {
    Composite::from_byte(p as u8).inv().to_byte() as u64
}

fn mul(a: u64, b: u64) -> u64 {
    Gf16(a as u8).mul(Gf16(b as u8)).0 as u64
}

fn sbox(a: u64) -> u64 {
    sbox_ref(a as u8) as u64
}

fn bytes_of(x: &[u64]) -> Vec<u8> {
    x.iter().map(|&v| v as u8).collect()
}

fn words_of(v: Vec<u8>) -> Vec<u64> {
    v.into_iter().map(u64::from).collect()
}

/// Oracle matching the registers of [`build_with`] for the same name.
pub fn oracle(name: &str) -> Result<Oracle, Error> {
    if let Some((kind, v)) = aes_level(name) {
        let nk = v.key_bytes();
        return Ok(match kind {
            "ke" => Box::new(move |x: &[u64]| {
                let words = aes_ref::expand_key(v, &bytes_of(x)).ok()?;
                Some(words_of(aes::final_key_register(v, &words)))
            }),
            "subbytes" => Box::new(move |x: &[u64]| {
                Some(x.iter().map(|&b| (0..v.nr()).fold(b, |acc, _| sbox(acc))).collect())
            }),
            _ => Box::new(move |x: &[u64]| {
                let pt: [u8; 16] = bytes_of(&x[..16]).try_into().ok()?;
                let key = bytes_of(&x[16..16 + nk]);
                let ct = aes_ref::encrypt(v, &key, &pt).ok()?;
                let words = aes_ref::expand_key(v, &key).ok()?;
                let mut out = words_of(ct.to_vec());
                out.extend(words_of(aes::final_key_register(v, &words)));
                Some(out)
            }),
        });
    }
    let o: Oracle = match name {
        "inv0" => Box::new(|x: &[u64]| Some(vec![Gf16(x[0] as u8).inv().0 as u64])),
        "inv1" => Box::new(|x: &[u64]| Some(vec![x[0], Gf16(x[0] as u8).inv().0 as u64])),
        "q2lambda" => Box::new(|x: &[u64]| Some(vec![Gf16(x[0] as u8).sq_lambda().0 as u64])),
        "mul0" => Box::new(|x: &[u64]| Some(vec![x[0], x[1], mul(x[0], x[1])])),
        "mul1" => Box::new(|x: &[u64]| Some(vec![x[0], x[1], x[2] ^ mul(x[0], x[1])])),
        "mul2_v1" | "mul2_v2" => {
            Box::new(|x: &[u64]| if x[1] == 0 { None } else { Some(vec![mul(x[0], x[1]), x[1]]) })
        }
        "u_m" => Box::new(|x: &[u64]| Some(vec![matrix_m().apply(x[0])])),
        "u_am_inv" => Box::new(|x: &[u64]| Some(vec![matrix_am_inv().apply(x[0])])),
        "addroundkey" => Box::new(|x: &[u64]| {
            let mut out: Vec<u64> = (0..16).map(|i| x[i] ^ x[16 + i]).collect();
            out.extend_from_slice(&x[16..]);
            Some(out)
        }),
        "shiftrows" => Box::new(|x: &[u64]| {
            let mut s: [u8; 16] = bytes_of(x).try_into().ok()?;
            aes_ref::shift_rows(&mut s);
            Some(words_of(s.to_vec()))
        }),
        "mixcolumns" => Box::new(|x: &[u64]| {
            let mut s: [u8; 16] = bytes_of(x).try_into().ok()?;
            aes_ref::mix_columns(&mut s);
            Some(words_of(s.to_vec()))
        }),
        _ => {
            if numbered(name, "uinv0_").is_some() {
                Box::new(|x: &[u64]| Some(vec![x[0], comp_inv(x[0])]))
            } else if numbered(name, "uinv1_").is_some() {
                Box::new(|x: &[u64]| Some(vec![x[0], x[1] ^ comp_inv(x[0])]))
            } else if numbered(name, "uinv2_").is_some() {
                Box::new(|x: &[u64]| Some(vec![comp_inv(x[0])]))
            } else {
                let s = SboxVariant::parse(name).map_err(|_| Error::UnknownCircuit(name.to_string()))?;
                match s.kind {
                    SboxKind::C1 => Box::new(|x: &[u64]| Some(vec![x[0], sbox(x[0])])),
                    SboxKind::C2 => Box::new(|x: &[u64]| Some(vec![x[0], x[1] ^ sbox(x[0])])),
                    SboxKind::C3 => Box::new(|x: &[u64]| Some(vec![sbox(x[0])])),
                }
            }
        }
    };
    Ok(o)
}
