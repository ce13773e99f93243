//! Arithmetic in GF(2^8), GF(2^4) and the tower field GF((2^4)^2).
//!
//! Bit `i` of every value is the coefficient of `x^i`. The tower field
//! element `p1*x + p0` is stored with `p0` in the low nibble.

use std::fmt;

/// Element of GF(2^8) reduced by `x^8 + x^4 + x^3 + x + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf256(pub u8);

/// Element of GF(2^4) reduced by `x^4 + x + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf16(pub u8);

/// Element `p1*x + p0` of GF((2^4)^2) modulo `x^2 + x + LAMBDA`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Composite {
    pub p0: Gf16,
    pub p1: Gf16,
}

/// The constant `x^3 + x^2 + x` of the extension polynomial.
pub const LAMBDA: Gf16 = Gf16(0xE);

/// Additive constant of the AES affine output map.
pub const AFFINE_C: u8 = 0x63;

const GF16_INV: [u8; 16] = [0, 1, 9, 14, 13, 11, 7, 6, 15, 2, 12, 5, 10, 4, 3, 8];

impl fmt::Debug for Gf256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl fmt::Debug for Gf16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Debug for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.p0, self.p1)
    }
}

impl Gf256 {
    pub fn add(self, o: Gf256) -> Gf256 {
        Gf256(self.0 ^ o.0)
    }

    pub fn mul(self, o: Gf256) -> Gf256 {
        let (mut a, mut b, mut r) = (self.0, o.0, 0u8);
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            let hi = a & 0x80;
            a <<= 1;
            if hi != 0 {
                a ^= 0x1B;
            }
            b >>= 1;
        }
        Gf256(r)
    }

    pub fn pow(self, mut e: u32) -> Gf256 {
        let (mut base, mut acc) = (self, Gf256(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse with `inv(0) = 0`.
    pub fn inv(self) -> Gf256 {
        self.pow(254)
    }

    /// `x^(j-1)`, the round constant byte for `j >= 1`.
    pub fn rcon(j: u32) -> Gf256 {
        assert!(j >= 1, "round constants start at 1");
        Gf256(2).pow(j - 1)
    }
}

impl Gf16 {
    pub fn new(v: u8) -> Gf16 {
        Gf16(v & 0xF)
    }

    pub fn add(self, o: Gf16) -> Gf16 {
        Gf16(self.0 ^ o.0)
    }

    pub fn mul(self, o: Gf16) -> Gf16 {
        let (mut a, mut b, mut r) = (self.0, o.0, 0u8);
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            a <<= 1;
            if a & 0x10 != 0 {
                a ^= 0x13;
            }
            b >>= 1;
        }
        Gf16(r)
    }

    /// Product built from the nine shared partial products used by the
    /// multiplier circuits.
    pub fn mul_terms(self, o: Gf16) -> Gf16 {
        let a = |i: u32| (self.0 >> i) & 1;
        let b = |i: u32| (o.0 >> i) & 1;
        let all = (a(3) ^ a(2) ^ a(1) ^ a(0)) & (b(3) ^ b(2) ^ b(1) ^ b(0));
        let p32 = (a(3) ^ a(2)) & (b(3) ^ b(2));
        let p31 = (a(3) ^ a(1)) & (b(3) ^ b(1));
        let p20 = (a(2) ^ a(0)) & (b(2) ^ b(0));
        let p10 = (a(1) ^ a(0)) & (b(1) ^ b(0));
        let (d3, d2, d1, d0) = (a(3) & b(3), a(2) & b(2), a(1) & b(1), a(0) & b(0));
        let r3 = all ^ p32 ^ p31 ^ p20 ^ p10 ^ d2 ^ d1 ^ d0;
        let r2 = p32 ^ p20 ^ d1 ^ d0;
        let r1 = p32 ^ p31 ^ p10 ^ d0;
        let r0 = p31 ^ d3 ^ d2 ^ d1 ^ d0;
        Gf16(r3 << 3 | r2 << 2 | r1 << 1 | r0)
    }

    /// Multiplicative inverse with `inv(0) = 0`.
    pub fn inv(self) -> Gf16 {
        Gf16(GF16_INV[self.0 as usize & 0xF])
    }

    /// Inverse evaluated from its algebraic normal form.
    pub fn inv_anf(self) -> Gf16 {
        let b = |i: u32| (self.0 >> i) & 1;
        let (b3, b2, b1, b0) = (b(3), b(2), b(1), b(0));
        let o3 = b3 ^ b2 ^ b1 ^ b3 & b2 ^ b3 & b1 ^ b3 & b0 ^ b3 & b2 & b1;
        let o2 = b3 ^ b2 ^ b3 & b0 ^ b2 & b0 ^ b1 & b0 ^ b3 & b2 & b0;
        let o1 = b3 ^ b3 & b1 ^ b2 & b1 ^ b2 & b0 ^ b1 & b0 ^ b3 & b1 & b0;
        let o0 = b3 ^ b2 ^ b1 ^ b0 ^ b2 & b1 ^ b2 & b0 ^ b3 & b2 & b1 ^ b2 & b1 & b0;
        Gf16(o3 << 3 | o2 << 2 | o1 << 1 | o0)
    }

    pub fn square(self) -> Gf16 {
        self.mul(self)
    }

    /// `q^2 * LAMBDA` from its closed bit form.
    pub fn sq_lambda(self) -> Gf16 {
        let q = |i: u32| (self.0 >> i) & 1;
        let r3 = q(1) ^ q(0);
        let r2 = q(3) ^ q(1) ^ q(0);
        let r1 = q(0);
        let r0 = q(2) ^ q(1);
        Gf16(r3 << 3 | r2 << 2 | r1 << 1 | r0)
    }
}

impl Composite {
    pub fn new(p0: u8, p1: u8) -> Composite {
        Composite { p0: Gf16::new(p0), p1: Gf16::new(p1) }
    }

    pub fn from_byte(v: u8) -> Composite {
        Composite::new(v & 0xF, v >> 4)
    }

    pub fn to_byte(self) -> u8 {
        self.p0.0 | self.p1.0 << 4
    }

    pub fn add(self, o: Composite) -> Composite {
        Composite { p0: self.p0.add(o.p0), p1: self.p1.add(o.p1) }
    }

    pub fn mul(self, o: Composite) -> Composite {
        // (a1 x + a0)(b1 x + b0) with x^2 = x + LAMBDA
        let hh = self.p1.mul(o.p1);
        let p1 = self.p1.mul(o.p0).add(self.p0.mul(o.p1)).add(hh);
        let p0 = self.p0.mul(o.p0).add(hh.mul(LAMBDA));
        Composite { p0, p1 }
    }

    pub fn pow(self, mut e: u32) -> Composite {
        let (mut base, mut acc) = (self, Composite::new(1, 0));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// `p^17 = p1^2 LAMBDA + (p0 + p1) p0`, which lies in GF(2^4).
    pub fn norm17(self) -> Gf16 {
        self.p1.sq_lambda().add(self.p0.add(self.p1).mul(self.p0))
    }

    /// Inverse via the norm, with `inv(0) = 0`.
    pub fn inv(self) -> Composite {
        let d = self.norm17().inv();
        Composite { p0: d.mul(self.p0.add(self.p1)), p1: d.mul(self.p1) }
    }
}

/// Dense GF(2) matrix with at most 64 columns; row `i` is a bitmask whose
/// bit `j` is the entry in column `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row_string(r))?;
        }
        Ok(())
    }
}

impl BinMatrix {
    pub fn zero(rows: usize, cols: usize) -> BinMatrix {
        assert!(cols <= 64, "at most 64 columns supported");
        BinMatrix { rows, cols, data: vec![0; rows] }
    }

    pub fn identity(n: usize) -> BinMatrix {
        let mut m = BinMatrix::zero(n, n);
        for i in 0..n {
            m.data[i] = 1 << i;
        }
        m
    }

    /// Builds from row strings where character `j` is column `j`.
    pub fn from_rows(rows: &[&str]) -> BinMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BinMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, c) in r.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.data[i] |= 1 << j,
                    _ => panic!("bad matrix character {c:?}"),
                }
            }
        }
        m
    }

    pub fn from_row_masks(cols: usize, masks: Vec<u64>) -> BinMatrix {
        assert!(cols <= 64);
        BinMatrix { rows: masks.len(), cols, data: masks }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.data[i] |= 1 << j;
        } else {
            self.data[i] &= !(1 << j);
        }
    }

    pub fn row_string(&self, i: usize) -> String {
        (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.data.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Matrix-vector product over GF(2); bit `j` of `v` is input bit `j`.
    pub fn apply(&self, v: u64) -> u64 {
        self.data
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (((r & v).count_ones() as u64) & 1) << i)
    }

    pub fn mul(&self, o: &BinMatrix) -> BinMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = BinMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            let mut acc = 0;
            let mut r = self.data[i];
            while r != 0 {
                let k = r.trailing_zeros() as usize;
                acc ^= o.data[k];
                r &= r - 1;
            }
            m.data[i] = acc;
        }
        m
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut m = BinMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.data[j] |= 1 << i;
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r] & bit != 0 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn inverse(&self) -> Option<BinMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = BinMatrix::identity(n).data;
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n).find(|&r| a[r] & bit != 0)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BinMatrix { rows: n, cols: n, data: inv })
    }

    /// Parses `rows cols` followed by one 0/1 string per row.
    pub fn parse(text: &str) -> Result<BinMatrix, crate::Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| crate::Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| crate::Error::Parse(format!("bad dimension {t:?}"))))
            .collect::<Result<_, _>>()?;
        let [rows, cols] = dims[..] else {
            return Err(crate::Error::Parse("header must be `rows cols`".into()));
        };
        if cols > 64 {
            return Err(crate::Error::Parse(format!("{cols} columns exceeds the 64 column limit")));
        }
        let mut m = BinMatrix::zero(rows, cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| crate::Error::Parse(format!("missing row {i}")))?;
            if line.len() != cols {
                return Err(crate::Error::Parse(format!("row {i} has {} entries, expected {cols}", line.len())));
            }
            for (j, c) in line.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => return Err(crate::Error::Parse(format!("row {i}: bad character {:?}", c as char))),
                }
            }
        }
        if lines.next().is_some() {
            return Err(crate::Error::Parse("trailing rows after matrix".into()));
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            s.push_str(&self.row_string(i));
            s.push('\n');
        }
        s
    }
}

/// AES affine matrix.
pub fn matrix_a() -> BinMatrix {
    BinMatrix::from_rows(&[
        "10001111", "11000111", "11100011", "11110001", "11111000", "01111100", "00111110", "00011111",
    ])
}

/// Isomorphism from the AES field into the tower field.
pub fn matrix_m() -> BinMatrix {
    BinMatrix::from_rows(&[
        "10001110", "01100000", "01000001", "00101000", "00001110", "01001011", "00110101", "00000101",
    ])
}

pub fn matrix_m_inv() -> BinMatrix {
    BinMatrix::from_rows(&[
        "10001000", "00001101", "01001101", "01001110", "01011101", "00101100", "01111001", "00101101",
    ])
}

/// The fused output map `A * M^-1`.
pub fn matrix_am_inv() -> BinMatrix {
    BinMatrix::from_rows(&[
        "10101101", "11111101", "10011100", "10101011", "11011011", "01111111", "00001011", "01101011",
    ])
}

pub fn map_phi(a: Gf256) -> Composite {
    Composite::from_byte(matrix_m().apply(a.0 as u64) as u8)
}

pub fn map_phi_inv(p: Composite) -> Gf256 {
    Gf256(matrix_m_inv().apply(p.to_byte() as u64) as u8)
}

/// Applies `A * M^-1` and adds the affine constant.
pub fn map_affine_out(n: Composite) -> Gf256 {
    Gf256(matrix_am_inv().apply(n.to_byte() as u64) as u8 ^ AFFINE_C)
}

/// S-box straight from the AES definition: `A * a^-1 + c`.
pub fn sbox_direct(a: Gf256) -> Gf256 {
    Gf256(matrix_a().apply(a.inv().0 as u64) as u8 ^ AFFINE_C)
}

/// S-box through the tower field: `A M^-1 (M a)^-1 + c`.
pub fn sbox_composite(a: Gf256) -> Gf256 {
    map_affine_out(map_phi(a).inv())
}

pub fn sbox_ref(a: u8) -> u8 {
    sbox_direct(Gf256(a)).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16_examples() {
        assert_eq!(Gf16(1).mul(Gf16(0xB)), Gf16(0xB));
        assert_eq!(Gf16(2).mul(Gf16(9)), Gf16(1));
        assert_eq!(Gf16(8).mul(Gf16(2)), Gf16(3));
        assert_eq!(Gf16(0).inv(), Gf16(0));
        assert_eq!(Gf16(2).inv(), Gf16(9));
        assert_eq!(Gf16(0xE).inv(), Gf16(3));
    }

    #[test]
    fn gf16_forms_agree() {
        for a in 0..16u8 {
            assert_eq!(Gf16(a).inv_anf(), Gf16(a).inv());
            assert_eq!(Gf16(a).sq_lambda(), Gf16(a).square().mul(LAMBDA));
            if a != 0 {
                assert_eq!(Gf16(a).mul(Gf16(a).inv()), Gf16(1));
            }
            for b in 0..16u8 {
                assert_eq!(Gf16(a).mul_terms(Gf16(b)), Gf16(a).mul(Gf16(b)));
            }
        }
        assert_eq!(Gf16(1).sq_lambda(), Gf16(0xE));
        assert_eq!(Gf16(2).sq_lambda(), Gf16(0xD));
    }

    #[test]
    fn norm_matches_power() {
        assert_eq!(Composite::new(1, 0).norm17(), Gf16(1));
        assert_eq!(Composite::new(0, 1).norm17(), Gf16(0xE));
        for v in 0..=255u8 {
            let p = Composite::from_byte(v);
            let q = p.pow(17);
            assert_eq!(q.p1, Gf16(0));
            assert_eq!(q.p0, p.norm17());
            if v != 0 {
                assert_eq!(p.mul(p.inv()), Composite::new(1, 0));
            }
        }
        assert_eq!(Composite::new(0, 0).inv(), Composite::new(0, 0));
    }

    #[test]
    fn matrices_are_consistent() {
        assert!(matrix_m().mul(&matrix_m_inv()).is_identity());
        assert_eq!(matrix_m().inverse().unwrap(), matrix_m_inv());
        assert_eq!(matrix_a().mul(&matrix_m_inv()), matrix_am_inv());
        let col0 = map_phi(Gf256(1)).to_byte();
        let expect = (0..8).fold(0u8, |acc, i| acc | (matrix_m().get(i, 0) as u8) << i);
        assert_eq!(col0, expect);
    }

    #[test]
    fn sbox_examples() {
        assert_eq!(sbox_ref(0x00), 0x63);
        assert_eq!(sbox_ref(0x01), 0x7C);
        assert_eq!(sbox_ref(0x53), 0xED);
        for a in 0..=255u8 {
            assert_eq!(sbox_direct(Gf256(a)), sbox_composite(Gf256(a)));
        }
    }

    #[test]
    fn rcon_sequence() {
        let rc: Vec<u8> = (1..=10).map(|j| Gf256::rcon(j).0).collect();
        assert_eq!(rc, [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36]);
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = matrix_am_inv();
        assert_eq!(BinMatrix::parse(&m.to_text()).unwrap(), m);
        assert!(BinMatrix::parse("2 2\n10\n1x\n").is_err());
        assert!(BinMatrix::parse("2 2\n10\n").is_err());
    }
}
