//! In-place CNOT synthesis of invertible GF(2) matrices.

use crate::circuit::{Builder, Circuit, Gate, GateKind, Register};
use crate::gf::BinMatrix;
use crate::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Plu,
    Optimized,
}

/// A CNOT-only circuit on wires `0..n`: input bit `j` starts on wire `j`
/// and output bit `i` ends on wire `output_wires[i]`.
#[derive(Clone, Debug)]
pub struct SynthResult {
    pub circuit: Circuit,
    pub cnot_count: usize,
    pub method: Method,
    pub output_wires: Vec<u32>,
}

/// CNOT list as `(control, target)` pairs plus output wire order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Net {
    ops: Vec<(u32, u32)>,
    out: Vec<u32>,
}

impl Net {
    fn to_result(&self, n: usize, method: Method, name: &str) -> SynthResult {
        let gates: Vec<Gate> = self.ops.iter().map(|&(c, t)| Gate::cnot(c, t)).collect();
        let circuit = Circuit::new(
            name,
            n as u32,
            gates,
            vec![Register::new("x", (0..n as u32).collect())],
            vec![Register::new("y", self.out.clone())],
        )
        .expect("synthesized wires are in range");
        SynthResult { cnot_count: self.ops.len(), circuit, method, output_wires: self.out.clone() }
    }

    /// Network for `M^-1` turned into one for `M`.
    fn inverted(&self) -> Net {
        let n = self.out.len();
        let mut sigma = vec![0u32; n];
        for (i, &w) in self.out.iter().enumerate() {
            sigma[w as usize] = i as u32;
        }
        Net {
            ops: self.ops.iter().rev().map(|&(c, t)| (sigma[c as usize], sigma[t as usize])).collect(),
            out: sigma,
        }
    }

    /// Network for `M^T` turned into one for `M`.
    fn transposed(&self) -> Net {
        let n = self.out.len();
        let mut inv = vec![0u32; n];
        for (i, &w) in self.out.iter().enumerate() {
            inv[w as usize] = i as u32;
        }
        Net {
            ops: self.ops.iter().rev().map(|&(c, t)| (inv[t as usize], inv[c as usize])).collect(),
            out: inv,
        }
    }
}

fn check_square_invertible(m: &BinMatrix) -> Result<(), Error> {
    if !m.is_square() || m.rank() != m.rows() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Row-reduction transcript without swaps.
fn plu_ops(rows: &mut [u64]) -> Vec<(u32, u32)> {
    let n = rows.len();
    let mut ops = vec![];
    for j in 0..n {
        let bit = 1u64 << j;
        if rows[j] & bit == 0 {
            let r = (j + 1..n).find(|&r| rows[r] & bit != 0).expect("matrix is invertible");
            rows[j] ^= rows[r];
            ops.push((r as u32, j as u32));
        }
        for i in 0..n {
            if i != j && rows[i] & bit != 0 {
                rows[i] ^= rows[j];
                ops.push((j as u32, i as u32));
            }
        }
    }
    ops
}

fn plu_net(m: &BinMatrix) -> Net {
    let mut rows = m.row_masks().to_vec();
    let mut ops = plu_ops(&mut rows);
    ops.reverse();
    Net { ops, out: (0..m.rows() as u32).collect() }
}

/// Baseline synthesis from a Gauss-Jordan transcript.
pub fn synth_plu(m: &BinMatrix) -> Result<SynthResult, Error> {
    check_square_invertible(m)?;
    Ok(plu_net(m).to_result(m.rows(), Method::Plu, "plu"))
}

/// Zero-gain moves allowed per greedy run before falling back to row
/// reduction.
const PLATEAU_MOVES: usize = 16;

/// One randomized greedy run: row and column additions that lower the
/// number of ones, finishing with row reduction once no move helps. Moves
/// within `slack` of the best gain are picked uniformly.
fn greedy_net(m: &BinMatrix, rng: &mut ChaCha8Rng, slack: i32) -> Net {
    let n = m.rows();
    let mut rows = m.row_masks().to_vec();
    let mut left: Vec<(u32, u32)> = vec![];
    let mut right: Vec<(u32, u32)> = vec![];
    let mut best: Vec<(i32, bool, usize, usize)> = vec![];
    let mut plateau = PLATEAU_MOVES;
    loop {
        let cols: Vec<u64> = (0..n)
            .map(|j| rows.iter().enumerate().fold(0u64, |acc, (i, &r)| acc | (r >> j & 1) << i))
            .collect();
        let mut top = 0i32;
        best.clear();
        for (is_row, lines) in [(true, &rows), (false, &cols)] {
            for t in 0..n {
                let wt = lines[t].count_ones() as i32;
                if wt == 1 {
                    continue;
                }
                for c in 0..n {
                    if c == t {
                        continue;
                    }
                    let gain = wt - (lines[t] ^ lines[c]).count_ones() as i32;
                    if gain >= 0 {
                        top = top.max(gain);
                        best.push((gain, is_row, t, c));
                    }
                }
            }
        }
        if top == 0 {
            if plateau == 0 {
                break;
            }
            plateau -= 1;
        }
        best.retain(|m| m.0 >= (top - slack).max(top.min(1)));
        let Some(&(_, is_row, t, c)) = best.choose(rng) else { break };
        if is_row {
            rows[t] ^= rows[c];
            left.push((c as u32, t as u32));
        } else {
            for r in rows.iter_mut() {
                *r ^= (*r >> c & 1) << t;
            }
            right.push((t as u32, c as u32));
        }
    }
    if rows.iter().any(|r| r.count_ones() != 1) {
        // rows * P^-1 is invertible; finish it by row reduction on the permuted form
        let mut tail = plu_ops(&mut rows);
        left.append(&mut tail);
    }
    let pi: Vec<u32> = rows.iter().map(|r| r.trailing_zeros()).collect();
    // M = L_1..L_k P R_m..R_1, so apply R_1..R_m, then relabel, then L_k..L_1
    let mut ops = right;
    ops.extend(left.iter().rev().map(|&(c, t)| (pi[c as usize], pi[t as usize])));
    Net { ops: cancel_pairs(ops), out: pi }
}

/// Removes pairs of equal CNOTs separated only by gates they commute with.
fn cancel_pairs(mut ops: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    loop {
        let mut removed = false;
        let mut i = 0;
        while i < ops.len() {
            let g = ops[i];
            let mut j = i + 1;
            let mut hit = None;
            while j < ops.len() {
                let h = ops[j];
                if h == g {
                    hit = Some(j);
                    break;
                }
                if h.0 == g.1 || h.1 == g.0 {
                    break;
                }
                j += 1;
            }
            if let Some(j) = hit {
                ops.remove(j);
                ops.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            return ops;
        }
    }
}

/// Best network over seeded greedy restarts applied to `M`, `M^-1`, `M^T`
/// and `M^-T`, alternating strict and slack-1 move selection; never worse
/// than the row-reduction baseline. Ties keep the
/// lexicographically smallest gate list.
pub fn synth_optimized(m: &BinMatrix, restarts: usize, seed: u64) -> Result<SynthResult, Error> {
    check_square_invertible(m)?;
    let inv = m.inverse().ok_or(Error::Singular)?;
    let forms: [(BinMatrix, fn(&Net) -> Net); 4] = [
        (m.clone(), |x| x.clone()),
        (inv.clone(), Net::inverted),
        (m.transpose(), Net::transposed),
        (inv.transpose(), |x| x.transposed().inverted()),
    ];
    let mut best = plu_net(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..restarts.max(1) {
        for (form, back) in &forms {
            let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
            let cand = back(&greedy_net(form, &mut sub, (i % 2) as i32));
            if (cand.ops.len(), &cand.ops) < (best.ops.len(), &best.ops) {
                best = cand;
            }
        }
    }
    Ok(best.to_result(m.rows(), Method::Optimized, "optimized"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearCheck {
    Pass,
    /// Output differs on the given unit input vector.
    Fail { basis: usize, expected: u64, got: u64 },
}

/// Evaluates a CNOT-only circuit on an input word; output bit `i` is read
/// from `output_wires[i]`.
pub fn apply_linear(c: &Circuit, output_wires: &[u32], x: u64) -> Result<u64, Error> {
    let mut s = vec![false; c.n_qubits() as usize];
    for (j, v) in s.iter_mut().enumerate() {
        *v = x >> j & 1 == 1;
    }
    for g in c.gates() {
        match g.kind {
            GateKind::Cnot => {
                let w = g.wires();
                s[w[1] as usize] ^= s[w[0] as usize];
            }
            k => return Err(Error::Unsupported(k.name())),
        }
    }
    Ok(output_wires.iter().enumerate().fold(0, |acc, (i, &w)| acc | (s[w as usize] as u64) << i))
}

/// Checks the circuit against `m` on every unit vector, which settles
/// equality for a linear circuit.
pub fn verify_linear(c: &Circuit, output_wires: &[u32], m: &BinMatrix) -> Result<LinearCheck, Error> {
    for j in 0..m.cols() {
        let expected = m.apply(1 << j);
        let got = apply_linear(c, output_wires, 1 << j)?;
        if got != expected {
            return Ok(LinearCheck::Fail { basis: j, expected, got });
        }
    }
    Ok(LinearCheck::Pass)
}

impl SynthResult {
    pub fn verify(&self, m: &BinMatrix) -> Result<LinearCheck, Error> {
        verify_linear(&self.circuit, &self.output_wires, m)
    }

    /// Emits the network on `reg` (input bit `j` on `reg[j]`) and returns
    /// the wires holding the output bits.
    pub fn emit(&self, b: &mut Builder, reg: &[u32]) -> Vec<u32> {
        b.append(&self.circuit, reg);
        self.output_wires.iter().map(|&w| reg[w as usize]).collect()
    }

    /// Inverse of [`SynthResult::emit`]: takes the output wires and returns
    /// the input wires.
    pub fn emit_dg(&self, b: &mut Builder, out: &[u32]) -> Vec<u32> {
        let mut reg = vec![0u32; out.len()];
        for (i, &w) in self.output_wires.iter().enumerate() {
            reg[w as usize] = out[i];
        }
        let dg = self.circuit.dagger();
        b.append(&dg, &reg);
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{matrix_am_inv, matrix_m};

    #[test]
    fn identity_and_elementary() {
        assert_eq!(synth_plu(&BinMatrix::identity(5)).unwrap().cnot_count, 0);
        let mut e = BinMatrix::identity(4);
        e.set(2, 0, true);
        let r = synth_plu(&e).unwrap();
        assert_eq!(r.cnot_count, 1);
        assert_eq!(r.circuit.gates(), &[Gate::cnot(0, 2)]);
    }

    #[test]
    fn singular_rejected() {
        let m = BinMatrix::from_rows(&["11", "11"]);
        assert!(matches!(synth_plu(&m), Err(Error::Singular)));
        assert!(synth_optimized(&m, 1, 0).is_err());
    }

    #[test]
    fn verify_reports_witness() {
        let c = Circuit::new("w", 3, vec![Gate::cnot(0, 1)], vec![], vec![]).unwrap();
        let r = verify_linear(&c, &[0, 1, 2], &BinMatrix::identity(3)).unwrap();
        assert_eq!(r, LinearCheck::Fail { basis: 0, expected: 1, got: 3 });
        let e = Circuit::empty("e", 3);
        assert_eq!(verify_linear(&e, &[0, 1, 2], &BinMatrix::identity(3)).unwrap(), LinearCheck::Pass);
    }

    #[test]
    fn all_forms_verify() {
        for m in [matrix_m(), matrix_am_inv()] {
            let p = synth_plu(&m).unwrap();
            assert_eq!(p.verify(&m).unwrap(), LinearCheck::Pass);
            let o = synth_optimized(&m, 20, 1).unwrap();
            assert_eq!(o.verify(&m).unwrap(), LinearCheck::Pass);
            assert!(o.cnot_count <= p.cnot_count);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for form in [m.clone(), m.inverse().unwrap(), m.transpose()] {
                let net = greedy_net(&form, &mut rng, 1);
                let r = net.to_result(8, Method::Optimized, "g");
                assert_eq!(r.verify(&form).unwrap(), LinearCheck::Pass);
            }
        }
    }

    #[test]
    fn cancellation_respects_commutation() {
        assert_eq!(cancel_pairs(vec![(0, 1), (2, 3), (0, 1)]), vec![(2, 3)]);
        assert_eq!(cancel_pairs(vec![(0, 1), (1, 2), (0, 1)]).len(), 3);
        assert_eq!(cancel_pairs(vec![(0, 1), (2, 0), (0, 1)]).len(), 3);
    }
}
