//! Inversion in the composite field through the norm `p^17`.
//!
//! A composite byte is held as `[p0 | p1]`, low nibble first. The gadgets
//! work on the pair `(s, p1)` with `s = p0 ^ p1`, since both halves of the
//! inverse are multiples of those two nibbles.

use super::gf16::{inv0, inv0_dg, inv1, mul0, mul1, mul2, xor_sq_lambda, xor_square, Mul2Variant, Nibble};
use crate::circuit::Builder;

/// Wires of a byte, bit `i` on entry `i`.
pub type Byte = [u32; 8];

pub(crate) fn lo(x: &[u32]) -> Nibble {
    [x[0], x[1], x[2], x[3]]
}

pub(crate) fn hi(x: &[u32]) -> Nibble {
    [x[4], x[5], x[6], x[7]]
}

pub(crate) fn join(l: Nibble, h: Nibble) -> Byte {
    [l[0], l[1], l[2], l[3], h[0], h[1], h[2], h[3]]
}

fn nib(v: Vec<u32>) -> Nibble {
    v.try_into().expect("four wires")
}

/// `p0 ^= p1`; self-inverse.
fn s_form(b: &mut Builder, p0: Nibble, p1: Nibble) {
    b.xor_into(&p1, &p0);
}

/// `d ^= s*p1 + s^2 + LAMBDA*p1^2`, the norm of the element whose s-form
/// is `(s, p1)`. `d` must be clean unless `acc` is set.
fn norm(b: &mut Builder, s: Nibble, p1: Nibble, d: Nibble, acc: bool) {
    if acc {
        mul1(b, s, p1, d);
    } else {
        mul0(b, s, p1, d);
    }
    xor_square(b, s, d);
    xor_sq_lambda(b, p1, d);
}

/// `acc ^= norm(n)`, briefly putting `n` into s-form.
fn clear_with_norm(b: &mut Builder, n0: Nibble, n1: Nibble, acc: Nibble) {
    s_form(b, n0, n1);
    norm(b, n0, n1, acc, true);
    s_form(b, n0, n1);
}

/// `|p>|0> -> |p>|p^-1>`; variant 1 inverts the norm with `inv0`,
/// variant 2 with `inv1`.
pub fn uinv0(b: &mut Builder, variant: u8, p: Byte, out: Byte) {
    let (s, p1) = (lo(&p), hi(&p));
    let (o0, o1) = (lo(&out), hi(&out));
    s_form(b, s, p1);
    let d = nib(b.alloc_n(4));
    norm(b, s, p1, d, false);
    match variant {
        1 => {
            let di = inv0(b, d);
            mul0(b, di, s, o0);
            mul0(b, di, p1, o1);
            clear_with_norm(b, o0, o1, di);
        }
        2 => {
            let e = nib(b.alloc_n(4));
            inv1(b, d, e);
            mul0(b, e, s, o0);
            mul0(b, e, p1, o1);
            b.adjoint(|b| inv1(b, e, d));
            clear_with_norm(b, o0, o1, e);
            b.release_all(&e);
        }
        _ => panic!("uinv0 variant {variant}"),
    }
    b.release_all(&d);
    s_form(b, s, p1);
}

/// `|p>|h> -> |p>|h ^ p^-1>`. Variant 3 copies the inverted norm so the
/// two products run side by side on separate scratch.
pub fn uinv1(b: &mut Builder, variant: u8, p: Byte, h: Byte) {
    let (s, p1) = (lo(&p), hi(&p));
    let (h0, h1) = (lo(&h), hi(&h));
    s_form(b, s, p1);
    let d = nib(b.alloc_n(4));
    norm(b, s, p1, d, false);
    match variant {
        1 => {
            let di = inv0(b, d);
            mul1(b, di, s, h0);
            mul1(b, di, p1, h1);
            inv0_dg(b, di);
        }
        2 | 3 => {
            let e = nib(b.alloc_n(4));
            inv1(b, d, e);
            if variant == 2 {
                mul1(b, e, s, h0);
                mul1(b, e, p1, h1);
            } else {
                let e2 = nib(b.alloc_n(4));
                b.xor_into(&e, &e2);
                mul1(b, e, s, h0);
                let side = b.side_pool();
                let main = b.set_pool(side);
                mul1(b, e2, p1, h1);
                b.set_pool(main);
                b.xor_into(&e, &e2);
                b.release_all(&e2);
            }
            b.adjoint(|b| inv1(b, d, e));
            b.release_all(&e);
        }
        _ => panic!("uinv1 variant {variant}"),
    }
    b.adjoint(|b| norm(b, s, p1, d, false));
    b.release_all(&d);
    s_form(b, s, p1);
}

/// In-place `|p> -> |p^-1>`; the result comes back on the returned wires.
pub fn uinv2(b: &mut Builder, variant: u8, p: Byte) -> Byte {
    let (s, p1) = (lo(&p), hi(&p));
    s_form(b, s, p1);
    let d = nib(b.alloc_n(4));
    norm(b, s, p1, d, false);
    let (n0, n1) = match variant {
        1 => {
            let di = inv0(b, d);
            let n0 = mul2(b, Mul2Variant::V1, s, di);
            let n1 = mul2(b, Mul2Variant::V1, p1, di);
            clear_with_norm(b, n0, n1, di);
            b.release_all(&di);
            (n0, n1)
        }
        2 => {
            let di = inv0(b, d);
            let n0 = nib(b.alloc_n(4));
            mul0(b, s, di, n0);
            let n1 = nib(b.alloc_n(4));
            mul0(b, p1, di, n1);
            let d = inv0_dg(b, di);
            b.adjoint(|b| mul0(b, n0, d, s));
            b.adjoint(|b| mul0(b, n1, d, p1));
            b.release_all(&s);
            b.release_all(&p1);
            let di = inv0(b, d);
            clear_with_norm(b, n0, n1, di);
            b.release_all(&di);
            (n0, n1)
        }
        3 => {
            let e = nib(b.alloc_n(4));
            inv1(b, d, e);
            let n0 = nib(b.alloc_n(4));
            mul0(b, s, e, n0);
            b.adjoint(|b| mul0(b, n0, d, s));
            b.release_all(&s);
            let n1 = nib(b.alloc_n(4));
            mul0(b, p1, e, n1);
            b.adjoint(|b| mul0(b, n1, d, p1));
            b.release_all(&p1);
            b.adjoint(|b| inv1(b, e, d));
            b.release_all(&d);
            clear_with_norm(b, n0, n1, e);
            b.release_all(&e);
            (n0, n1)
        }
        4 => {
            let e = nib(b.alloc_n(4));
            inv1(b, d, e);
            let main = b.pool();
            let side = b.side_pool();
            b.set_pool(side);
            let e2 = nib(b.alloc_n(4));
            let d2 = nib(b.alloc_n(4));
            let n1 = nib(b.alloc_n(4));
            b.set_pool(main);
            let n0 = nib(b.alloc_n(4));
            b.xor_into(&e, &e2);
            b.xor_into(&d, &d2);
            mul0(b, s, e, n0);
            b.set_pool(side);
            mul0(b, p1, e2, n1);
            b.set_pool(main);
            b.adjoint(|b| mul0(b, n0, d, s));
            b.set_pool(side);
            b.adjoint(|b| mul0(b, n1, d2, p1));
            b.set_pool(main);
            b.xor_into(&d, &d2);
            b.xor_into(&e, &e2);
            b.set_pool(side);
            b.release_all(&p1);
            b.release_all(&d2);
            b.release_all(&e2);
            b.set_pool(main);
            b.release_all(&s);
            b.adjoint(|b| inv1(b, e, d));
            b.release_all(&d);
            clear_with_norm(b, n0, n1, e);
            b.release_all(&e);
            (n0, n1)
        }
        _ => panic!("uinv2 variant {variant}"),
    };
    join(n0, n1)
}
