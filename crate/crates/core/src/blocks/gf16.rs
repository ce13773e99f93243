//! GF(2^4) gadgets: inversion, `q^2 * LAMBDA` and the three multipliers.
//!
//! Every emitter writes into a [`Builder`] on caller-supplied wires and
//! draws scratch from the active pool, returning it clean.

use crate::circuit::Builder;

/// Wires of a nibble, bit `i` on entry `i`.
pub type Nibble = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mul2Variant {
    V1,
    V2,
}

fn nib(v: Vec<u32>) -> Nibble {
    v.try_into().expect("four wires")
}

/// Doubly controlled AND with a third control, through one clean ancilla.
fn c3not(b: &mut Builder, c0: u32, c1: u32, c2: u32, t: u32) {
    let anc = b.alloc();
    b.qand(c0, c1, anc);
    b.toffoli(anc, c2, t);
    b.qand_dg(c0, c1, anc);
    b.release(anc);
}

/// In-place inversion; the result comes back on a permutation of `x`.
pub fn inv0(b: &mut Builder, x: Nibble) -> Nibble {
    let [w0, w1, w2, w3] = x;
    b.cnot(w0, w2);
    b.toffoli(w1, w3, w0);
    b.cnot(w1, w3);
    b.cnot(w3, w0);
    b.toffoli(w0, w2, w1);
    b.cnot(w0, w3);
    b.toffoli(w3, w1, w0);
    b.cnot(w2, w1);
    b.cnot(w0, w3);
    b.cnot(w0, w2);
    c3not(b, w1, w3, w2, w0);
    b.toffoli(w1, w0, w2);
    b.cnot(w2, w3);
    b.cnot(w0, w3);
    b.cnot(w0, w1);
    [w2, w0, w3, w1]
}

/// Undoes [`inv0`] given the wires it returned.
pub fn inv0_dg(b: &mut Builder, y: Nibble) -> Nibble {
    let x = [y[1], y[3], y[0], y[2]];
    b.adjoint(|b| inv0(b, x));
    x
}

/// Out-of-place inversion into the clean nibble `out`, built from the
/// algebraic normal form with all six quadratic terms in one layer.
pub fn inv1(b: &mut Builder, x: Nibble, out: Nibble) {
    let cp = b.alloc_n(8);
    for i in 0..4 {
        b.cnot(x[i], cp[2 * i]);
        b.cnot(x[i], cp[2 * i + 1]);
    }
    let [x0, x1, x2, x3] = x;
    let (c0a, c0b, c1a, c1b, c2a, c2b, c3a, c3b) = (cp[0], cp[1], cp[2], cp[3], cp[4], cp[5], cp[6], cp[7]);
    let pr = b.alloc_n(6);
    let (p32, p31, p30, p21, p20, p10) = (pr[0], pr[1], pr[2], pr[3], pr[4], pr[5]);
    let pairs = [(x3, x2, p32), (c3a, x1, p31), (c3b, x0, p30), (c2a, c1a, p21), (c2b, c0a, p20), (c1b, c0b, p10)];
    for &(u, v, t) in &pairs {
        b.qand(u, v, t);
    }
    let [o0, o1, o2, o3] = out;
    b.qand(p32, x1, o3);
    b.qand(p30, x2, o2);
    b.qand(p10, x3, o1);
    b.qand(p21, x0, o0);
    b.cnot(o3, o0);
    let fans: [(u32, &[u32]); 4] = [
        (o3, &[x3, x2, x1, p32, p31, p30]),
        (o2, &[x3, x2, p30, p20, p10]),
        (o1, &[x3, p31, p21, p20, p10]),
        (o0, &[x3, x2, x1, x0, p21, p20]),
    ];
    for (t, srcs) in fans {
        for &s in srcs {
            b.cnot(s, t);
        }
    }
    for &(u, v, t) in &pairs {
        b.qand_dg(u, v, t);
    }
    b.release_all(&pr);
    for i in (0..4).rev() {
        b.cnot(x[i], cp[2 * i + 1]);
        b.cnot(x[i], cp[2 * i]);
    }
    b.release_all(&cp);
}

/// In-place `q -> q^2 * LAMBDA` with three CNOTs; returns the output order.
pub fn q2lambda(b: &mut Builder, x: Nibble) -> Nibble {
    let [w0, w1, w2, w3] = x;
    b.cnot(w1, w2);
    b.cnot(w0, w1);
    b.cnot(w1, w3);
    [w2, w0, w3, w1]
}

/// `dst ^= q^2 * LAMBDA` by direct fan-out.
pub(crate) fn xor_sq_lambda(b: &mut Builder, q: Nibble, dst: Nibble) {
    let rows: [&[usize]; 4] = [&[2, 1], &[0], &[3, 1, 0], &[1, 0]];
    for (i, r) in rows.iter().enumerate() {
        for &j in *r {
            b.cnot(q[j], dst[i]);
        }
    }
}

/// `dst ^= s^2`.
pub(crate) fn xor_square(b: &mut Builder, s: Nibble, dst: Nibble) {
    let rows: [&[usize]; 4] = [&[0, 2], &[2], &[1, 3], &[3]];
    for (i, r) in rows.iter().enumerate() {
        for &j in *r {
            b.cnot(s[j], dst[i]);
        }
    }
}

/// Copies of `x3^x2^x1^x0, x3^x2, x3^x1, x2^x0, x1^x0`.
fn combos(b: &mut Builder, x: Nibble) -> [u32; 5] {
    let w = b.alloc_n(5);
    for (t, (i, j)) in [(1, (3, 2)), (2, (3, 1)), (3, (2, 0)), (4, (1, 0))] {
        b.cnot(x[i], w[t]);
        b.cnot(x[j], w[t]);
    }
    b.cnot(w[1], w[0]);
    b.cnot(w[4], w[0]);
    w.try_into().expect("five wires")
}

fn uncombos(b: &mut Builder, x: Nibble, w: [u32; 5]) {
    b.adjoint(|b| {
        for (t, (i, j)) in [(1, (3, 2)), (2, (3, 1)), (3, (2, 0)), (4, (1, 0))] {
            b.cnot(x[i], w[t]);
            b.cnot(x[j], w[t]);
        }
        b.cnot(w[1], w[0]);
        b.cnot(w[4], w[0]);
    });
    b.release_all(&w);
}

/// The nine AND operand pairs, ordered
/// `all, p32, p31, p20, p10, d3, d2, d1, d0`.
fn operands(a: Nibble, ca: [u32; 5], c: Nibble, cc: [u32; 5]) -> [(u32, u32); 9] {
    [
        (ca[0], cc[0]),
        (ca[1], cc[1]),
        (ca[2], cc[2]),
        (ca[3], cc[3]),
        (ca[4], cc[4]),
        (a[3], c[3]),
        (a[2], c[2]),
        (a[1], c[1]),
        (a[0], c[0]),
    ]
}

/// Output bits as sums of the nine terms, same order as [`operands`].
const TERMS: [&[usize]; 4] = [&[2, 5, 6, 7, 8], &[1, 2, 4, 8], &[1, 3, 7, 8], &[0, 1, 2, 3, 4, 6, 7, 8]];

/// `out = a * c` into a clean nibble, all nine ANDs in a single layer.
pub fn mul0(b: &mut Builder, a: Nibble, c: Nibble, out: Nibble) {
    let ca = combos(b, a);
    let cc = combos(b, c);
    let ops = operands(a, ca, c, cc);
    let pr = b.alloc_n(5);
    // terms landing straight on an output: all -> out3, p20 -> out2, p10 -> out1, d3 -> out0
    b.qand(ops[0].0, ops[0].1, out[3]);
    b.qand(ops[3].0, ops[3].1, out[2]);
    b.qand(ops[4].0, ops[4].1, out[1]);
    b.qand(ops[5].0, ops[5].1, out[0]);
    let shared = [1usize, 2, 6, 7, 8];
    for (k, &i) in shared.iter().enumerate() {
        b.qand(ops[i].0, ops[i].1, pr[k]);
    }
    b.cnot(out[2], out[3]);
    b.cnot(out[1], out[3]);
    for (bit, terms) in TERMS.iter().enumerate() {
        for &i in *terms {
            if let Some(k) = shared.iter().position(|&s| s == i) {
                b.cnot(pr[k], out[bit]);
            }
        }
    }
    for (k, &i) in shared.iter().enumerate() {
        b.qand_dg(ops[i].0, ops[i].1, pr[k]);
    }
    b.release_all(&pr);
    uncombos(b, c, cc);
    uncombos(b, a, ca);
}

/// `h ^= a * c` for arbitrary `h`.
pub fn mul1(b: &mut Builder, a: Nibble, c: Nibble, h: Nibble) {
    let ca = combos(b, a);
    let cc = combos(b, c);
    let ops = operands(a, ca, c, cc);
    let pr = b.alloc_n(9);
    for (k, &(u, v)) in ops.iter().enumerate() {
        b.qand(u, v, pr[k]);
    }
    for (bit, terms) in TERMS.iter().enumerate() {
        for &i in *terms {
            b.cnot(pr[i], h[bit]);
        }
    }
    for (k, &(u, v)) in ops.iter().enumerate() {
        b.qand_dg(u, v, pr[k]);
    }
    b.release_all(&pr);
    uncombos(b, c, cc);
    uncombos(b, a, ca);
}

/// In-place `a <- a * c` for `c != 0` (or `a = 0`). The product lands on
/// fresh wires, which are returned; `a`'s wires go back to the pool.
pub fn mul2(b: &mut Builder, v: Mul2Variant, a: Nibble, c: Nibble) -> Nibble {
    let t = nib(b.alloc_n(4));
    mul0(b, a, c, t);
    match v {
        Mul2Variant::V1 => {
            let ci = inv0(b, c);
            b.adjoint(|b| mul0(b, t, ci, a));
            inv0_dg(b, ci);
        }
        Mul2Variant::V2 => {
            let e = nib(b.alloc_n(4));
            inv1(b, c, e);
            b.adjoint(|b| mul0(b, t, e, a));
            b.adjoint(|b| inv1(b, c, e));
            b.release_all(&e);
        }
    }
    b.release_all(&a);
    t
}
