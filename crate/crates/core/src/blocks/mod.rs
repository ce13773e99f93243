//! Nonlinear gadgets and S-box circuits, as builder emitters and as
//! standalone circuits with named registers.

pub mod gf16;
pub mod inversion;
pub mod sbox;

pub use gf16::{Mul2Variant, Nibble};
pub use inversion::Byte;
pub use sbox::{SboxKind, SboxVariant};

use crate::circuit::{Builder, Circuit, Register};
use crate::Error;

fn reg(name: &str, w: &[u32]) -> Register {
    Register::new(name, w.to_vec())
}

fn nibble(b: &mut Builder) -> Nibble {
    b.fresh_n(4).try_into().expect("four wires")
}

fn byte(b: &mut Builder) -> Byte {
    b.fresh_n(8).try_into().expect("eight wires")
}

/// `|b>|0> -> |b^-1>|0>`
pub fn build_inv0() -> Circuit {
    let mut b = Builder::new();
    let x = nibble(&mut b);
    let y = gf16::inv0(&mut b, x);
    b.finish("inv0", vec![reg("b", &x)], vec![reg("y", &y)]).expect("valid block")
}

/// `|b>|0> -> |b>|b^-1>`
pub fn build_inv1() -> Circuit {
    let mut b = Builder::new();
    let x = nibble(&mut b);
    let y = nibble(&mut b);
    gf16::inv1(&mut b, x, y);
    b.finish("inv1", vec![reg("b", &x)], vec![reg("b", &x), reg("y", &y)]).expect("valid block")
}

/// `|q> -> |q^2 LAMBDA>`
pub fn build_q2lambda() -> Circuit {
    let mut b = Builder::new();
    let x = nibble(&mut b);
    let y = gf16::q2lambda(&mut b, x);
    b.finish("q2lambda", vec![reg("q", &x)], vec![reg("y", &y)]).expect("valid block")
}

/// `|a>|b>|0> -> |a>|b>|ab>`
pub fn build_mul0() -> Circuit {
    let mut b = Builder::new();
    let (x, y, o) = (nibble(&mut b), nibble(&mut b), nibble(&mut b));
    gf16::mul0(&mut b, x, y, o);
    b.finish("mul0", vec![reg("a", &x), reg("b", &y)], vec![reg("a", &x), reg("b", &y), reg("y", &o)]).expect("valid block")
}

/// `|a>|b>|h> -> |a>|b>|h ^ ab>`
pub fn build_mul1() -> Circuit {
    let mut b = Builder::new();
    let (x, y, h) = (nibble(&mut b), nibble(&mut b), nibble(&mut b));
    gf16::mul1(&mut b, x, y, h);
    b.finish("mul1", vec![reg("a", &x), reg("b", &y), reg("h", &h)], vec![reg("a", &x), reg("b", &y), reg("h", &h)])
        .expect("valid block")
}

/// `|a>|b> -> |ab>|b>` for `b != 0`.
pub fn build_mul2(v: Mul2Variant) -> Circuit {
    let mut b = Builder::new();
    let (x, y) = (nibble(&mut b), nibble(&mut b));
    let o = gf16::mul2(&mut b, v, x, y);
    let name = match v {
        Mul2Variant::V1 => "mul2_v1",
        Mul2Variant::V2 => "mul2_v2",
    };
    b.finish(name, vec![reg("a", &x), reg("b", &y)], vec![reg("y", &o), reg("b", &y)]).expect("valid block")
}

fn check_variant(name: &str, v: u8, max: u8) -> Result<(), Error> {
    if (1..=max).contains(&v) {
        Ok(())
    } else {
        Err(Error::UnknownCircuit(format!("{name}_{v}")))
    }
}

/// `|p>|0> -> |p>|p^-1>` over composite bytes.
pub fn build_uinv0(v: u8) -> Result<Circuit, Error> {
    check_variant("uinv0", v, 2)?;
    let mut b = Builder::new();
    let (p, o) = (byte(&mut b), byte(&mut b));
    inversion::uinv0(&mut b, v, p, o);
    b.finish(format!("uinv0_{v}"), vec![reg("p", &p)], vec![reg("p", &p), reg("y", &o)])
}

/// `|p>|h> -> |p>|h ^ p^-1>`
pub fn build_uinv1(v: u8) -> Result<Circuit, Error> {
    check_variant("uinv1", v, 3)?;
    let mut b = Builder::new();
    let (p, h) = (byte(&mut b), byte(&mut b));
    inversion::uinv1(&mut b, v, p, h);
    b.finish(format!("uinv1_{v}"), vec![reg("p", &p), reg("h", &h)], vec![reg("p", &p), reg("h", &h)])
}

/// `|p> -> |p^-1>`
pub fn build_uinv2(v: u8) -> Result<Circuit, Error> {
    check_variant("uinv2", v, 4)?;
    let mut b = Builder::new();
    let p = byte(&mut b);
    let y = inversion::uinv2(&mut b, v, p);
    b.finish(format!("uinv2_{v}"), vec![reg("p", &p)], vec![reg("y", &y)])
}

/// `c1: |a>|0> -> |a>|S(a)>`, `c2: |a>|b> -> |a>|b ^ S(a)>`,
/// `c3: |a> -> |S(a)>`.
pub fn build_sbox(s: SboxVariant) -> Circuit {
    let mut b = Builder::new();
    let a = byte(&mut b);
    let (ins, outs) = match s.kind {
        SboxKind::C1 => {
            let o = byte(&mut b);
            let y = sbox::c1(&mut b, s.variant, a, o);
            (vec![reg("a", &a)], vec![reg("a", &a), reg("y", &y)])
        }
        SboxKind::C2 => {
            let h = byte(&mut b);
            sbox::c2(&mut b, s.variant, a, h);
            (vec![reg("a", &a), reg("b", &h)], vec![reg("a", &a), reg("b", &h)])
        }
        SboxKind::C3 => {
            let y = sbox::c3(&mut b, s.variant, a);
            (vec![reg("a", &a)], vec![reg("y", &y)])
        }
    };
    b.finish(s.to_string(), ins, outs).expect("valid block")
}

fn linear_block(name: &str, net: &crate::linear::SynthResult) -> Circuit {
    let mut b = Builder::new();
    let x = b.fresh_n(8);
    let y = net.emit(&mut b, &x);
    b.finish(name, vec![reg("x", &x)], vec![reg("y", &y)]).expect("valid block")
}

/// `|a> -> |Ma>`
pub fn build_u_m() -> Circuit {
    linear_block("u_m", sbox::net_m())
}

/// `|a> -> |A M^-1 a>`
pub fn build_u_am_inv() -> Circuit {
    linear_block("u_am_inv", sbox::net_am_inv())
}
