use proptest::prelude::*;
use qaes::aes_ref::{self, AesVariant};
use qaes::gf::{self, Composite, Gf256};
use qaes::linear::{apply_linear, synth_optimized};
use qaes::sim::eval;
use qaes::{aes, catalog};

proptest! {
    #[test]
    fn phi_round_trips(a: u8) {
        prop_assert_eq!(gf::map_phi_inv(gf::map_phi(Gf256(a))), Gf256(a));
    }

    #[test]
    fn composite_inverse(p0 in 0u8..16, p1 in 0u8..16) {
        let p = Composite::new(p0, p1);
        prop_assume!(p.to_byte() != 0);
        prop_assert_eq!(p.mul(p.inv()).to_byte(), 1);
    }

    #[test]
    fn cnot_networks_are_linear(x: u32, y: u32) {
        let net = aes::net_mixcolumn();
        let f = |v: u32| apply_linear(&net.circuit, &net.output_wires, v as u64).unwrap();
        prop_assert_eq!(f(x ^ y), f(x) ^ f(y));
    }

    #[test]
    fn synth_then_inverse_is_identity(x in 0u64..256) {
        let m = gf::matrix_m();
        let a = synth_optimized(&m, 10, 1).unwrap();
        let b = synth_optimized(&m.inverse().unwrap(), 10, 1).unwrap();
        let y = apply_linear(&a.circuit, &a.output_wires, x).unwrap();
        prop_assert_eq!(apply_linear(&b.circuit, &b.output_wires, y).unwrap(), x);
    }

    #[test]
    fn mul2_matches_field(a in 0u64..16, b in 1u64..16) {
        for name in ["mul2_v1", "mul2_v2"] {
            let c = catalog::build(name).unwrap();
            let want = catalog::oracle(name).unwrap()(&[a, b]).unwrap();
            prop_assert_eq!(eval(&c, &[a, b]).unwrap(), want);
        }
    }

    #[test]
    fn reference_cipher_round_trips(key: [u8; 32], pt: [u8; 16]) {
        for v in [AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256] {
            let k = &key[..v.key_bytes()];
            let ct = aes_ref::encrypt(v, k, &pt).unwrap();
            prop_assert_eq!(aes_ref::decrypt(v, k, &ct).unwrap(), pt);
        }
    }
}
