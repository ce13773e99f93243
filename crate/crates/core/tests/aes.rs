use qaes::aes::{self, AesConfig, PoolPolicy};
use qaes::aes_ref::{self, AesVariant};
use qaes::catalog;
use qaes::sim::eval;
use qaes::suites;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARIANTS: [AesVariant; 3] = [AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256];

fn run_circuit(c: &qaes::Circuit, key: &[u8], pt: &[u8; 16]) -> (Vec<u8>, Vec<u8>) {
    let mut input: Vec<u64> = pt.iter().map(|&b| b as u64).collect();
    input.extend(key.iter().map(|&b| b as u64));
    let out: Vec<u8> = eval(c, &input).unwrap().into_iter().map(|b| b as u8).collect();
    (out[..16].to_vec(), out[16..].to_vec())
}

#[test]
fn reference_standard_vectors() {
    for v in VARIANTS {
        let (key, pt, ct) = suites::standard_vector(v);
        assert_eq!(aes_ref::encrypt(v, &key, &pt).unwrap(), ct);
        assert_eq!(aes_ref::decrypt(v, &key, &ct).unwrap(), pt);
    }
}

#[test]
fn circuits_standard_vectors() {
    for v in VARIANTS {
        let c = aes::build_aes(&AesConfig::new(v));
        let (key, pt, ct) = suites::standard_vector(v);
        let (state, k) = run_circuit(&c, &key, &pt);
        assert_eq!(state, ct.to_vec(), "{}", v.name());
        let words = aes_ref::expand_key(v, &key).unwrap();
        assert_eq!(k, aes::final_key_register(v, &words));
    }
}

#[test]
fn circuits_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for v in VARIANTS {
        let cfg = AesConfig::parse_pair(v, "c2_1:c3_2").unwrap();
        let c = aes::build_aes(&cfg);
        for _ in 0..suites::AES_RANDOM_VECTORS {
            let key: Vec<u8> = (0..v.key_bytes()).map(|_| rng.gen()).collect();
            let pt: [u8; 16] = rng.gen();
            let (state, _) = run_circuit(&c, &key, &pt);
            assert_eq!(state, aes_ref::encrypt(v, &key, &pt).unwrap().to_vec());
        }
    }
}

#[test]
fn shared_pool_computes_the_same() {
    let cfg = AesConfig { pool_policy: PoolPolicy::Shared, ..AesConfig::new(AesVariant::Aes128) };
    let shared = aes::build_aes(&cfg);
    let separate = aes::build_aes(&AesConfig::new(AesVariant::Aes128));
    let (key, pt, ct) = suites::standard_vector(AesVariant::Aes128);
    assert_eq!(run_circuit(&shared, &key, &pt).0, ct.to_vec());
    assert!(shared.n_qubits() < separate.n_qubits());
}

#[test]
fn key_expansion_rounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in VARIANTS {
        let cfg = AesConfig::new(v);
        let nk = v.nk();
        let key: Vec<u8> = (0..v.key_bytes()).map(|_| rng.gen()).collect();
        let words = aes_ref::expand_key(v, &key).unwrap();
        for round in 1..=aes::ke_rounds(v) {
            let c = aes::build_key_expansion_round(&cfg, round).unwrap();
            let mut reg: Vec<u8> = words[(round - 1) * nk..round * nk].concat();
            let input: Vec<u64> = reg.iter().map(|&b| b as u64).collect();
            let out: Vec<u8> = eval(&c, &input).unwrap().into_iter().map(|b| b as u8).collect();
            for t in round * nk..((round + 1) * nk).min(words.len()) {
                reg[4 * (t % nk)..4 * (t % nk) + 4].copy_from_slice(&words[t]);
            }
            assert_eq!(out, reg, "{} round {round}", v.name());
        }
        assert!(aes::build_key_expansion_round(&cfg, 0).is_err());
        assert!(aes::build_key_expansion_round(&cfg, aes::ke_rounds(v) + 1).is_err());
    }
}

#[test]
fn round_counts() {
    assert_eq!(aes::ke_rounds(AesVariant::Aes128), 10);
    assert_eq!(aes::ke_rounds(AesVariant::Aes192), 8);
    assert_eq!(aes::ke_rounds(AesVariant::Aes256), 7);
}

#[test]
fn config_text() {
    let cfg = AesConfig::parse("variant = 192\nke_sbox = c2_3 # comment\nround_sbox=c3_1\npool_policy=shared\n").unwrap();
    assert_eq!(cfg.variant, AesVariant::Aes192);
    assert_eq!(cfg.ke_sbox.to_string(), "c2_3");
    assert_eq!(cfg.round_sbox.to_string(), "c3_1");
    assert_eq!(AesConfig::parse(&cfg.to_text()).unwrap(), cfg);
    assert!(AesConfig::parse("ke_sbox=c3_1").is_err());
    assert!(AesConfig::parse("round_sbox=c2_1").is_err());
    assert!(AesConfig::parse("colour=blue").is_err());
    assert!(AesConfig::parse_pair(AesVariant::Aes128, "c2_2").is_err());
}

#[test]
fn width_accounting() {
    for v in VARIANTS {
        let c = aes::build_aes(&AesConfig::new(v));
        let io = 128 + 8 * v.key_bytes();
        assert!(c.n_qubits() as usize > io);
        let io_wires: usize = c.inputs().iter().map(|r| r.wires.len()).sum();
        assert_eq!(io_wires, io);
        let out_wires: usize = c.outputs().iter().map(|r| r.wires.len()).sum();
        assert_eq!(out_wires, io);
    }
}

#[test]
fn linear_layers_against_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mc = catalog::build("mixcolumns").unwrap();
    let sr = catalog::build("shiftrows").unwrap();
    assert!(sr.gates().is_empty());
    for _ in 0..50 {
        let s: [u8; 16] = rng.gen();
        let input: Vec<u64> = s.iter().map(|&b| b as u64).collect();
        let mut want = s;
        aes_ref::mix_columns(&mut want);
        let got: Vec<u8> = eval(&mc, &input).unwrap().into_iter().map(|b| b as u8).collect();
        assert_eq!(got, want.to_vec());
        let mut want = s;
        aes_ref::shift_rows(&mut want);
        let got: Vec<u8> = eval(&sr, &input).unwrap().into_iter().map(|b| b as u8).collect();
        assert_eq!(got, want.to_vec());
    }
    assert!(aes::net_mixcolumn().circuit.gates().len() <= 110);
}
