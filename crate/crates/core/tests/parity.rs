use qaes::catalog;
use qaes::cost::{self, ResourceReport, Strategy};
use qaes::parity::{self, delta, Level, Metric};

#[test]
fn identical_numbers_have_zero_delta() {
    for row in parity::paper_rows() {
        let mut r = ResourceReport::default();
        for &(m, v) in &row.values {
            let v32 = v as u32;
            match m {
                Metric::Qubits => match row.level {
                    Level::Toffoli => r.toffoli_qubits = v32,
                    Level::CliffordT => r.qubits = v32,
                },
                Metric::Toffoli => r.n_toffoli = v as usize,
                Metric::Cnot => r.n_cnot = v as usize,
                Metric::Not => r.n_not = v as usize,
                Metric::ToffoliDepth => r.toffoli_depth = v32,
                Metric::T => r.n_t = v as usize,
                Metric::Clifford => r.n_clifford = v as usize,
                Metric::TDepth => r.t_depth = v32,
                Metric::DwT => r.dw_t = v,
            }
        }
        for d in parity::compare(&r, &row).deltas {
            assert_eq!(d.rel, Some(0.0), "{} {:?}", row.circuit, d.metric);
        }
    }
}

#[test]
fn delta_sign_and_zero_paper() {
    assert!(delta(Metric::T, 90, 100).rel.unwrap() < 0.0);
    assert!((delta(Metric::T, 110, 100).rel.unwrap() - 0.1).abs() < 1e-12);
    assert_eq!(delta(Metric::Not, 0, 0).rel, Some(0.0));
    assert_eq!(delta(Metric::Not, 3, 0).rel, None);
}

#[test]
fn comparison_row_present() {
    let rows = parity::rows_for("aes128", Some("c2_2:c3_3"));
    let cmp = rows.iter().find(|r| r.group == "comparison").expect("comparison row");
    assert_eq!(cmp.values, vec![(Metric::Qubits, 1028), (Metric::TDepth, 100), (Metric::DwT, 102800)]);
}

#[test]
fn unknown_config_is_an_error() {
    let r = ResourceReport::default();
    assert!(parity::parity_for("aes128", Some("c2_9:c3_9"), &r).is_err());
    assert!(parity::parity_for("nosuch", None, &r).is_err());
}

#[test]
fn every_row_names_a_buildable_circuit() {
    let names = catalog::names();
    for row in parity::paper_rows() {
        assert!(names.iter().any(|n| n == row.circuit), "{}", row.circuit);
        let dw = row.values.iter().find(|(m, _)| *m == Metric::DwT);
        if let Some(&(_, dw)) = dw {
            let q = row.values.iter().find(|(m, _)| *m == Metric::Qubits).unwrap().1;
            let td = row.values.iter().find(|(m, _)| *m == Metric::TDepth).unwrap().1;
            assert_eq!(dw, q * td, "{} {:?}", row.circuit, row.config);
        }
    }
}

#[test]
fn mul0_matches_published_clifford_t_row() {
    let r = cost::report(&catalog::build("mul0").unwrap(), Strategy::Qand).unwrap();
    let rows = parity::parity_for("mul0", None, &r).unwrap();
    let ct = rows.iter().find(|p| p.row.level == Level::CliffordT).unwrap();
    for d in &ct.deltas {
        if matches!(d.metric, Metric::Qubits | Metric::T | Metric::TDepth) {
            assert_eq!(d.rel, Some(0.0), "{:?}", d.metric);
        }
    }
    assert!(parity::to_table(&rows).contains("mul0"));
    assert!(parity::to_kv(&rows).contains("mul0.-.text.t_depth.delta=0.000000"));
}
