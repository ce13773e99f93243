//! Published resource figures and signed deltas against our reports.

use crate::aes::AesConfig;
use crate::aes_ref::AesVariant;
use crate::blocks::{SboxKind, SboxVariant};
use crate::catalog;
use crate::cost::{self, ResourceReport, Strategy};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Qubits,
    Toffoli,
    Cnot,
    Not,
    ToffoliDepth,
    T,
    Clifford,
    TDepth,
    DwT,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Qubits => "qubits",
            Metric::Toffoli => "n_toffoli",
            Metric::Cnot => "n_cnot",
            Metric::Not => "n_not",
            Metric::ToffoliDepth => "toffoli_depth",
            Metric::T => "n_t",
            Metric::Clifford => "n_clifford",
            Metric::TDepth => "t_depth",
            Metric::DwT => "dw_t",
        }
    }
}

/// Whether a row describes the circuit before or after Clifford+T
/// decomposition; decides which width it is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Toffoli,
    CliffordT,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperRow {
    /// Which published table or passage the row belongs to.
    pub group: &'static str,
    pub circuit: &'static str,
    /// `c2_i:c3_j` for full AES, the S-box variant for key expansion and
    /// SubBytes rows, `None` for blocks.
    pub config: Option<&'static str>,
    pub level: Level,
    pub values: Vec<(Metric, u64)>,
}

use Metric::*;

const TOF5: [Metric; 5] = [Qubits, Toffoli, Cnot, Not, ToffoliDepth];
const CT4: [Metric; 4] = [Qubits, T, Clifford, TDepth];
const CT5: [Metric; 5] = [Qubits, T, Clifford, TDepth, DwT];

// (group, circuit, qubits, Toffoli, CNOT, NOT, Toffoli depth)
const TOFFOLI_ROWS: &[(&str, &str, [u64; 5])] = &[
    ("gf16-inversion", "inv0", [5, 7, 7, 0, 7]),
    ("gf16-inversion", "inv1", [25, 20, 42, 0, 4]),
    ("mul2", "mul2_v1", [28, 44, 124, 0, 18]),
    ("mul2", "mul2_v2", [33, 70, 194, 0, 12]),
    ("c1", "c1_1", [36, 67, 300, 4, 15]),
    ("c1", "c1_2", [41, 100, 377, 4, 16]),
    ("c2", "c2_1", [36, 74, 330, 4, 22]),
    ("c2", "c2_2", [41, 100, 400, 4, 16]),
    ("c2", "c2_3", [60, 100, 408, 4, 14]),
    ("c3", "c3_1", [32, 125, 424, 4, 47]),
    ("c3", "c3_2", [36, 111, 410, 4, 33]),
    ("c3", "c3_3", [40, 130, 473, 4, 20]),
    ("c3", "c3_4", [60, 130, 489, 4, 16]),
];

// (group, circuit, qubits, T, Clifford, T depth)
const CT_ROWS: &[(&str, &str, [u64; 4])] = &[
    ("gf16-inversion-ct", "inv0", [7, 24, 129, 6]),
    ("gf16-inversion-ct", "inv1", [29, 40, 222, 2]),
    ("mul2-ct", "mul2_v1", [36, 108, 638, 14]),
    ("mul2-ct", "mul2_v2", [40, 140, 824, 6]),
    ("c1-ct", "c1_1", [44, 168, 990, 10]),
    ("c1-ct", "c1_2", [48, 224, 1305, 8]),
    ("c2-ct", "c2_1", [45, 192, 1142, 16]),
    ("c2-ct", "c2_2", [49, 224, 1328, 8]),
    ("c2-ct", "c2_3", [78, 224, 1336, 7]),
    ("c3-ct", "c3_1", [40, 312, 1860, 36]),
    ("c3-ct", "c3_2", [44, 264, 1602, 24]),
    ("c3-ct", "c3_3", [48, 272, 1659, 10]),
    ("c3-ct", "c3_4", [76, 272, 1675, 8]),
];

// (circuit, S-box, qubits, T, Clifford, T depth)
const KE_ROWS: &[(&str, &str, [u64; 4])] = &[
    ("ke128", "c2_1", [244, 7680, 46659, 160]),
    ("ke128", "c2_2", [260, 8960, 54099, 80]),
    ("ke128", "c2_3", [376, 8960, 54419, 70]),
    ("ke192", "c2_1", [308, 8448, 51395, 176]),
    ("ke192", "c2_2", [324, 9856, 59579, 88]),
    ("ke192", "c2_3", [440, 9856, 59931, 77]),
    ("ke256", "c2_1", [372, 9984, 60639, 208]),
    ("ke256", "c2_2", [388, 11648, 70311, 104]),
    ("ke256", "c2_3", [504, 11648, 70727, 91]),
];

const SUBBYTES_ROWS: &[(&str, &str, [u64; 4])] = &[
    ("subbytes128", "c3_1", [640, 49920, 297600, 360]),
    ("subbytes128", "c3_2", [704, 42220, 256320, 240]),
    ("subbytes128", "c3_3", [768, 43520, 265440, 100]),
    ("subbytes128", "c3_4", [1216, 43520, 268000, 80]),
    ("subbytes192", "c3_1", [704, 59904, 357120, 432]),
    ("subbytes192", "c3_2", [768, 50688, 307584, 288]),
    ("subbytes192", "c3_3", [832, 52224, 318528, 120]),
    ("subbytes192", "c3_4", [1280, 52224, 321600, 96]),
    ("subbytes256", "c3_1", [768, 69888, 416640, 504]),
    ("subbytes256", "c3_2", [832, 59136, 358848, 336]),
    ("subbytes256", "c3_3", [869, 60928, 371616, 140]),
    ("subbytes256", "c3_4", [1344, 60928, 375200, 112]),
];

// (circuit, config, qubits, T, Clifford, T depth, DW)
const AES_ROWS: &[(&str, &str, [u64; 5])] = &[
    ("aes128", "c2_1:c3_1", [884, 57600, 349219, 360, 318240]),
    ("aes128", "c2_2:c3_1", [900, 58880, 356659, 360, 324000]),
    ("aes128", "c2_3:c3_1", [1016, 58880, 356979, 360, 365760]),
    ("aes128", "c2_1:c3_2", [948, 49920, 307939, 240, 227520]),
    ("aes128", "c2_2:c3_2", [964, 51200, 315379, 240, 231360]),
    ("aes128", "c2_3:c3_2", [1080, 51200, 315699, 240, 259200]),
    ("aes128", "c2_1:c3_3", [1012, 51200, 317059, 160, 161920]),
    ("aes128", "c2_2:c3_3", [1028, 52480, 324499, 100, 102800]),
    ("aes128", "c2_3:c3_3", [1144, 52480, 324819, 100, 114400]),
    ("aes128", "c2_1:c3_4", [1460, 51200, 319619, 160, 233600]),
    ("aes128", "c2_2:c3_4", [1476, 52480, 327059, 80, 118080]),
    ("aes128", "c2_3:c3_4", [1592, 52480, 327379, 80, 127360]),
    ("aes192", "c2_1:c3_1", [1012, 68352, 414467, 432, 437184]),
    ("aes192", "c2_2:c3_1", [1028, 69760, 422651, 432, 444096]),
    ("aes192", "c2_3:c3_1", [1144, 69760, 423003, 432, 494208]),
    ("aes192", "c2_1:c3_2", [1076, 59136, 364931, 288, 309888]),
    ("aes192", "c2_2:c3_2", [1092, 60544, 373115, 288, 314496]),
    ("aes192", "c2_3:c3_2", [1208, 60544, 373467, 288, 347904]),
    ("aes192", "c2_1:c3_3", [1140, 60672, 375875, 176, 200640]),
    ("aes192", "c2_2:c3_3", [1156, 62080, 384059, 120, 138720]),
    ("aes192", "c2_3:c3_3", [1272, 62080, 384411, 120, 152640]),
    ("aes192", "c2_1:c3_4", [1588, 60672, 378947, 176, 279488]),
    ("aes192", "c2_2:c3_4", [1604, 62080, 387131, 96, 153984]),
    ("aes192", "c2_3:c3_4", [1720, 62080, 387483, 96, 165120]),
    ("aes256", "c2_1:c3_1", [1140, 79872, 484223, 504, 574560]),
    ("aes256", "c2_2:c3_1", [1156, 81536, 493895, 504, 582624]),
    ("aes256", "c2_3:c3_1", [1272, 81536, 494311, 504, 641088]),
    ("aes256", "c2_1:c3_2", [1204, 69120, 426431, 336, 404544]),
    ("aes256", "c2_2:c3_2", [1220, 70784, 436103, 336, 409920]),
    ("aes256", "c2_3:c3_2", [1336, 70784, 436519, 336, 448896]),
    ("aes256", "c2_1:c3_3", [1268, 70912, 439199, 208, 263744]),
    ("aes256", "c2_2:c3_3", [1284, 72576, 448871, 140, 179760]),
    ("aes256", "c2_3:c3_3", [1400, 72576, 449287, 140, 196000]),
    ("aes256", "c2_1:c3_4", [1716, 70912, 442783, 208, 356928]),
    ("aes256", "c2_2:c3_4", [1732, 72576, 452455, 112, 193984]),
    ("aes256", "c2_3:c3_4", [1848, 72576, 452871, 112, 206976]),
];

fn zip<const N: usize>(ms: [Metric; N], vs: [u64; N]) -> Vec<(Metric, u64)> {
    ms.into_iter().zip(vs).collect()
}

/// Every embedded row, blocks first.
pub fn paper_rows() -> Vec<PaperRow> {
    let mut rows = vec![];
    let row = |group, circuit, config, level, values| PaperRow { group, circuit, config, level, values };
    for &(g, c, v) in TOFFOLI_ROWS {
        rows.push(row(g, c, None, Level::Toffoli, zip(TOF5, v)));
    }
    for &(g, c, v) in CT_ROWS {
        rows.push(row(g, c, None, Level::CliffordT, zip(CT4, v)));
    }
    let text = "text";
    rows.push(row(text, "mul0", None, Level::Toffoli, vec![(Qubits, 28), (Toffoli, 15), (Cnot, 55), (ToffoliDepth, 2)]));
    rows.push(row(text, "mul0", None, Level::CliffordT, zip(CT4, [36, 36, 196, 1])));
    rows.push(row(text, "mul1", None, Level::Toffoli, vec![(Qubits, 28), (Toffoli, 15), (Cnot, 59), (ToffoliDepth, 2)]));
    rows.push(row(text, "mul1", None, Level::CliffordT, zip(CT4, [37, 36, 200, 1])));
    rows.push(row(text, "q2lambda", None, Level::Toffoli, vec![(Qubits, 4), (Cnot, 3)]));
    rows.push(row(text, "u_m", None, Level::Toffoli, vec![(Cnot, 10)]));
    rows.push(row(text, "u_am_inv", None, Level::Toffoli, vec![(Cnot, 15)]));
    rows.push(row(text, "mixcolumns", None, Level::Toffoli, vec![(Cnot, 368)]));
    rows.push(row(text, "addroundkey", None, Level::Toffoli, vec![(Cnot, 128)]));
    for &(c, s, v) in KE_ROWS {
        rows.push(row("key-expansion-ct", c, Some(s), Level::CliffordT, zip(CT4, v)));
    }
    for &(c, s, v) in SUBBYTES_ROWS {
        rows.push(row("subbytes-ct", c, Some(s), Level::CliffordT, zip(CT4, v)));
    }
    for &(c, s, v) in AES_ROWS {
        rows.push(row("aes-ct", c, Some(s), Level::CliffordT, zip(CT5, v)));
    }
    rows.push(row("comparison", "aes128", Some("c2_2:c3_3"), Level::CliffordT, vec![(Qubits, 1028), (TDepth, 100), (DwT, 102800)]));
    rows
}

/// Rows for one circuit and configuration key.
pub fn rows_for(circuit: &str, config: Option<&str>) -> Vec<PaperRow> {
    paper_rows().into_iter().filter(|r| r.circuit == circuit && r.config == config).collect()
}

/// The configuration keys that have rows for `circuit`.
pub fn configs_for(circuit: &str) -> Vec<Option<&'static str>> {
    let mut v = vec![];
    for r in paper_rows() {
        if r.circuit == circuit && !v.contains(&r.config) {
            v.push(r.config);
        }
    }
    v
}

pub fn ours(r: &ResourceReport, m: Metric, level: Level) -> u64 {
    match m {
        Qubits => match level {
            Level::Toffoli => r.toffoli_qubits as u64,
            Level::CliffordT => r.qubits as u64,
        },
        Toffoli => r.n_toffoli as u64,
        Cnot => r.n_cnot as u64,
        Not => r.n_not as u64,
        ToffoliDepth => r.toffoli_depth as u64,
        T => r.n_t as u64,
        Clifford => r.n_clifford as u64,
        TDepth => r.t_depth as u64,
        DwT => r.dw_t,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Delta {
    pub metric: Metric,
    pub ours: u64,
    pub paper: u64,
    /// `(ours - paper) / paper`; `None` when the paper value is 0 and ours
    /// is not.
    pub rel: Option<f64>,
}

pub fn delta(metric: Metric, ours: u64, paper: u64) -> Delta {
    let rel = match (ours, paper) {
        (_, 0) if ours == 0 => Some(0.0),
        (_, 0) => None,
        _ => Some((ours as f64 - paper as f64) / paper as f64),
    };
    Delta { metric, ours, paper, rel }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParityRow {
    pub row: PaperRow,
    pub deltas: Vec<Delta>,
}

pub fn compare(r: &ResourceReport, row: &PaperRow) -> ParityRow {
    let deltas = row.values.iter().map(|&(m, p)| delta(m, ours(r, m, row.level), p)).collect();
    ParityRow { row: row.clone(), deltas }
}

/// Compares `r` against every row for `circuit` under `config`.
pub fn parity_for(circuit: &str, config: Option<&str>, r: &ResourceReport) -> Result<Vec<ParityRow>, Error> {
    let rows = rows_for(circuit, config);
    if rows.is_empty() {
        return Err(Error::Config(format!(
            "no published rows for {circuit}{}",
            config.map(|c| format!(" with {c}")).unwrap_or_default()
        )));
    }
    Ok(rows.iter().map(|row| compare(r, row)).collect())
}

/// The configuration a row key stands for: `c2_i` sets the key-schedule
/// S-box, `c3_j` the SubBytes S-box, `c2_i:c3_j` both. The variant is
/// taken from the circuit name when building.
pub fn config_for_key(key: &str) -> Result<AesConfig, Error> {
    let base = AesConfig::new(AesVariant::Aes128);
    if key.contains(':') {
        return AesConfig::parse_pair(base.variant, key);
    }
    let s = SboxVariant::parse(key)?;
    match s.kind {
        SboxKind::C2 => base.with_sboxes(s, base.round_sbox),
        _ => base.with_sboxes(base.ke_sbox, s),
    }
}

/// Builds and reports every circuit and configuration that has published
/// rows, and compares against all of them.
pub fn covered(strat: Strategy) -> Result<Vec<ParityRow>, Error> {
    let mut circuits: Vec<&'static str> = vec![];
    for r in paper_rows() {
        if !circuits.contains(&r.circuit) {
            circuits.push(r.circuit);
        }
    }
    let mut out = vec![];
    for circuit in circuits {
        for key in configs_for(circuit) {
            let cfg = key.map(config_for_key).transpose()?;
            let c = catalog::build_with(circuit, cfg.as_ref())?;
            out.extend(parity_for(circuit, key, &cost::report(&c, strat)?)?);
        }
    }
    Ok(out)
}

fn pct(rel: Option<f64>) -> String {
    match rel {
        Some(x) => format!("{:+.1}%", x * 100.0),
        None => "n/a".to_string(),
    }
}

fn label(row: &PaperRow) -> String {
    match row.config {
        Some(c) => format!("{} {c}", row.circuit),
        None => row.circuit.to_string(),
    }
}

pub fn to_table(rows: &[ParityRow]) -> String {
    let mut s = format!("{:<24}{:<20}{:<15}{:>12}{:>12}{:>10}\n", "circuit", "group", "metric", "ours", "paper", "delta");
    for p in rows {
        for d in &p.deltas {
            s.push_str(&format!(
                "{:<24}{:<20}{:<15}{:>12}{:>12}{:>10}\n",
                label(&p.row),
                p.row.group,
                d.metric.name(),
                d.ours,
                d.paper,
                pct(d.rel)
            ));
        }
    }
    s
}

/// One `key=value` line per metric, keyed by circuit, config, group and
/// metric.
pub fn to_kv(rows: &[ParityRow]) -> String {
    let mut s = String::new();
    for p in rows {
        let key = format!("{}.{}.{}", p.row.circuit, p.row.config.unwrap_or("-"), p.row.group);
        for d in &p.deltas {
            let rel = d.rel.map(|x| format!("{x:.6}")).unwrap_or_else(|| "nan".into());
            s.push_str(&format!("{key}.{m}.ours={}\n{key}.{m}.paper={}\n{key}.{m}.delta={rel}\n", d.ours, d.paper, m = d.metric.name()));
        }
    }
    s
}
