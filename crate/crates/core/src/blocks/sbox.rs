//! The three S-box circuits and the linear layers around them.

use super::inversion::{uinv0, uinv1, uinv2, Byte};
use crate::circuit::Builder;
use crate::gf::{matrix_am_inv, matrix_m, AFFINE_C};
use crate::linear::{synth_optimized, SynthResult};
use crate::Error;
use std::fmt;
use std::sync::OnceLock;

/// CNOT network for `M`.
pub fn net_m() -> &'static SynthResult {
    static NET: OnceLock<SynthResult> = OnceLock::new();
    NET.get_or_init(|| synth_optimized(&matrix_m(), 100, 1).expect("M is invertible"))
}

/// CNOT network for `A * M^-1`.
pub fn net_am_inv() -> &'static SynthResult {
    static NET: OnceLock<SynthResult> = OnceLock::new();
    NET.get_or_init(|| synth_optimized(&matrix_am_inv(), 100, 1).expect("A M^-1 is invertible"))
}

fn byte(v: Vec<u32>) -> Byte {
    v.try_into().expect("eight wires")
}

fn add_constant(b: &mut Builder, y: &Byte) {
    for (i, &w) in y.iter().enumerate() {
        if AFFINE_C >> i & 1 == 1 {
            b.x(w);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SboxKind {
    /// `|a>|0> -> |a>|S(a)>`
    C1,
    /// `|a>|b> -> |a>|b ^ S(a)>`
    C2,
    /// `|a> -> |S(a)>`
    C3,
}

/// One S-box circuit: `c1` takes variants 1-2, `c2` 1-3 and `c3` 1-4,
/// matching the inversion gadget it wraps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SboxVariant {
    pub kind: SboxKind,
    pub variant: u8,
}

impl SboxVariant {
    pub fn new(kind: SboxKind, variant: u8) -> Result<SboxVariant, Error> {
        let max = match kind {
            SboxKind::C1 => 2,
            SboxKind::C2 => 3,
            SboxKind::C3 => 4,
        };
        if !(1..=max).contains(&variant) {
            return Err(Error::Config(format!("no variant {variant} for {kind:?}")));
        }
        Ok(SboxVariant { kind, variant })
    }

    pub fn parse(s: &str) -> Result<SboxVariant, Error> {
        let bad = || Error::Config(format!("bad S-box name {s:?}"));
        let (k, v) = s.split_once('_').ok_or_else(bad)?;
        let kind = match k {
            "c1" => SboxKind::C1,
            "c2" => SboxKind::C2,
            "c3" => SboxKind::C3,
            _ => return Err(bad()),
        };
        SboxVariant::new(kind, v.parse().map_err(|_| bad())?)
    }

    pub fn all() -> Vec<SboxVariant> {
        let mut v = vec![];
        for (kind, max) in [(SboxKind::C1, 2), (SboxKind::C2, 3), (SboxKind::C3, 4)] {
            for i in 1..=max {
                v.push(SboxVariant { kind, variant: i });
            }
        }
        v
    }
}

impl fmt::Display for SboxVariant {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let k = match self.kind {
            SboxKind::C1 => "c1",
            SboxKind::C2 => "c2",
            SboxKind::C3 => "c3",
        };
        write!(f, "{k}_{}", self.variant)
    }
}

/// Computes `S(a)` into the clean register `out`; returns the wires that
/// hold it, a permutation of `out`.
pub fn c1(b: &mut Builder, variant: u8, a: Byte, out: Byte) -> Byte {
    let m = byte(net_m().emit(b, &a));
    uinv0(b, variant, m, out);
    net_m().emit_dg(b, &m);
    let y = byte(net_am_inv().emit(b, &out));
    add_constant(b, &y);
    y
}

/// `h ^= S(a)`; both registers end on their original wires.
pub fn c2(b: &mut Builder, variant: u8, a: Byte, h: Byte) {
    add_constant(b, &h);
    let hb = byte(net_am_inv().emit_dg(b, &h));
    let m = byte(net_m().emit(b, &a));
    uinv1(b, variant, m, hb);
    net_am_inv().emit(b, &hb);
    net_m().emit_dg(b, &m);
}

/// In-place S-box; returns the wires holding `S(a)`.
pub fn c3(b: &mut Builder, variant: u8, a: Byte) -> Byte {
    let m = byte(net_m().emit(b, &a));
    let n = uinv2(b, variant, m);
    let y = byte(net_am_inv().emit(b, &n));
    add_constant(b, &y);
    y
}
