//! Dense unitaries for small circuits and a sparse amplitude simulator for
//! Clifford+T circuits started from a basis state.

use crate::circuit::{Circuit, Gate, GateKind};
use crate::Error;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

/// Largest circuit width accepted by [`unitary_of`].
pub const MAX_DENSE_WIRES: u32 = 7;

/// Column-major `2^n x 2^n` matrix; column `j` is the image of basis state `j`
/// (bit `w` of `j` is wire `w`).
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    n: u32,
    cols: Vec<Vec<Complex64>>,
}

fn bit(x: usize, w: u32) -> bool {
    x >> w & 1 == 1
}

/// Applies one gate to a state vector. AND gates act as Toffolis.
fn apply(g: &Gate, v: &mut [Complex64]) {
    let w = g.wires();
    let dim = v.len();
    match g.kind {
        GateKind::X => {
            for x in 0..dim {
                if !bit(x, w[0]) {
                    v.swap(x, x | 1 << w[0]);
                }
            }
        }
        GateKind::Cnot => {
            for x in 0..dim {
                if bit(x, w[0]) && !bit(x, w[1]) {
                    v.swap(x, x | 1 << w[1]);
                }
            }
        }
        GateKind::Toffoli | GateKind::Qand | GateKind::QandDg => {
            for x in 0..dim {
                if bit(x, w[0]) && bit(x, w[1]) && !bit(x, w[2]) {
                    v.swap(x, x | 1 << w[2]);
                }
            }
        }
        GateKind::H => {
            for x in 0..dim {
                if !bit(x, w[0]) {
                    let y = x | 1 << w[0];
                    let (a, b) = (v[x], v[y]);
                    v[x] = (a + b) * FRAC_1_SQRT_2;
                    v[y] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg => {
            let ph = phase_of(g.kind);
            for (x, a) in v.iter_mut().enumerate() {
                if bit(x, w[0]) {
                    *a *= ph;
                }
            }
        }
        GateKind::Cz => {
            for (x, a) in v.iter_mut().enumerate() {
                if bit(x, w[0]) && bit(x, w[1]) {
                    *a = -*a;
                }
            }
        }
    }
}

fn phase_of(k: GateKind) -> Complex64 {
    let q = std::f64::consts::FRAC_PI_4;
    match k {
        GateKind::S => Complex64::i(),
        GateKind::Sdg => -Complex64::i(),
        GateKind::T => Complex64::from_polar(1.0, q),
        GateKind::Tdg => Complex64::from_polar(1.0, -q),
        _ => Complex64::new(1.0, 0.0),
    }
}

pub fn unitary_of(c: &Circuit) -> Result<DenseUnitary, Error> {
    let n = c.n_qubits();
    if n > MAX_DENSE_WIRES {
        return Err(Error::TooWide(n));
    }
    let dim = 1usize << n;
    let cols = (0..dim)
        .map(|j| {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[j] = Complex64::new(1.0, 0.0);
            for g in c.gates() {
                apply(g, &mut v);
            }
            v
        })
        .collect();
    Ok(DenseUnitary { n, cols })
}

impl DenseUnitary {
    pub fn identity(n: u32) -> DenseUnitary {
        unitary_of(&Circuit::empty("id", n)).expect("width checked by caller")
    }

    pub fn width(&self) -> u32 {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col][row]
    }

    /// Largest entry of `U^dagger U - I`.
    pub fn unitarity_error(&self) -> f64 {
        let dim = self.cols.len();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = self.cols[i].iter().zip(&self.cols[j]).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Equality up to one global phase over the columns whose `clean` wires are
/// 0; pass an empty slice to compare the full matrices.
pub fn unitary_equal_on(u1: &DenseUnitary, u2: &DenseUnitary, clean: &[u32], tol: f64) -> bool {
    if u1.n != u2.n {
        return false;
    }
    let mask: usize = clean.iter().map(|&w| 1usize << w).sum();
    let mut phase: Option<Complex64> = None;
    for (j, (c1, c2)) in u1.cols.iter().zip(&u2.cols).enumerate() {
        if j & mask != 0 {
            continue;
        }
        for (a, b) in c1.iter().zip(c2) {
            if phase.is_none() && b.norm() > 0.5 {
                phase = Some(a / b);
            }
            let p = phase.unwrap_or(Complex64::new(1.0, 0.0));
            if (a - p * b).norm() > tol {
                return false;
            }
        }
    }
    phase.map_or(true, |p| (p.norm() - 1.0).abs() <= tol)
}

pub fn unitary_equal(u1: &DenseUnitary, u2: &DenseUnitary, tol: f64) -> bool {
    unitary_equal_on(u1, u2, &[], tol)
}

/// Sparse amplitudes of `c` applied to a basis state (`input` bit `w` is
/// wire `w`); needs at most 128 wires.
pub fn amplitudes(c: &Circuit, input: u128) -> Result<Vec<(u128, Complex64)>, Error> {
    if c.n_qubits() > 128 {
        return Err(Error::TooWide(c.n_qubits()));
    }
    let mut state: HashMap<u128, Complex64> = HashMap::from([(input, Complex64::new(1.0, 0.0))]);
    let b = |x: u128, w: u32| x >> w & 1 == 1;
    for g in c.gates() {
        let w = g.wires();
        match g.kind {
            GateKind::H => {
                let mut next: HashMap<u128, Complex64> = HashMap::with_capacity(state.len() * 2);
                for (x, a) in state {
                    let a = a * FRAC_1_SQRT_2;
                    *next.entry(x & !(1 << w[0])).or_default() += a;
                    *next.entry(x | 1 << w[0]).or_default() += if b(x, w[0]) { -a } else { a };
                }
                next.retain(|_, a| a.norm() > 1e-12);
                state = next;
            }
            _ => {
                state = state
                    .into_iter()
                    .map(|(x, a)| match g.kind {
                        GateKind::X => (x ^ 1 << w[0], a),
                        GateKind::Cnot => (if b(x, w[0]) { x ^ 1 << w[1] } else { x }, a),
                        GateKind::Toffoli | GateKind::Qand | GateKind::QandDg => {
                            (if b(x, w[0]) && b(x, w[1]) { x ^ 1 << w[2] } else { x }, a)
                        }
                        GateKind::Cz => (x, if b(x, w[0]) && b(x, w[1]) { -a } else { a }),
                        k => (x, if b(x, w[0]) { a * phase_of(k) } else { a }),
                    })
                    .collect();
            }
        }
    }
    let mut out: Vec<(u128, Complex64)> = state.into_iter().collect();
    out.sort_by_key(|&(x, _)| x);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: u32, gates: Vec<Gate>) -> Circuit {
        Circuit::new("t", n, gates, vec![], vec![]).unwrap()
    }

    #[test]
    fn empty_is_identity() {
        let u = unitary_of(&Circuit::empty("e", 2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((u.entry(i, j) - Complex64::new(e, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn t_squared_is_s() {
        let tt = unitary_of(&circ(1, vec![Gate::t(0), Gate::t(0)])).unwrap();
        let s = unitary_of(&circ(1, vec![Gate::s(0)])).unwrap();
        assert!(unitary_equal(&tt, &s, 1e-9));
        let t = unitary_of(&circ(1, vec![Gate::t(0)])).unwrap();
        assert!(!unitary_equal(&t, &s, 1e-9));
        assert!(t.unitarity_error() < 1e-12);
    }

    #[test]
    fn global_phase_ignored() {
        let a = unitary_of(&circ(1, vec![Gate::h(0), Gate::s(0), Gate::h(0), Gate::s(0), Gate::h(0), Gate::s(0)])).unwrap();
        assert!(unitary_equal(&a, &DenseUnitary::identity(1), 1e-9));
    }

    #[test]
    fn width_cap() {
        assert!(unitary_of(&Circuit::empty("w", 8)).is_err());
    }

    #[test]
    fn sparse_matches_dense() {
        let c = circ(3, vec![Gate::h(0), Gate::cnot(0, 1), Gate::t(1), Gate::h(2), Gate::cz(1, 2), Gate::h(2), Gate::h(0)]);
        let u = unitary_of(&c).unwrap();
        for input in 0..8u128 {
            let amps = amplitudes(&c, input).unwrap();
            for row in 0..8usize {
                let sparse = amps.iter().find(|(x, _)| *x == row as u128).map_or(Complex64::default(), |p| p.1);
                assert!((sparse - u.entry(row, input as usize)).norm() < 1e-9);
            }
        }
    }
}
