use clap::{Args, Parser, Subcommand, ValueEnum};
use qaes::aes::AesConfig;
use qaes::aes_ref::AesVariant;
use qaes::blocks::SboxVariant;
use qaes::cost::{self, ResourceReport, Strategy};
use qaes::linear::{synth_optimized, synth_plu, LinearCheck};
use qaes::{catalog, gf, parity, suites, BinMatrix, Circuit, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qaes", version, about = "Reversible AES circuits: build, verify, cost")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Kv,
}

#[derive(Args)]
struct Common {
    /// Config file, `c2_i:c3_j` pair, or a single S-box for ke/subbytes.
    #[arg(long)]
    config: Option<String>,
    /// Decomposition strategy: seven_t, tdepth1 or qand.
    #[arg(long, default_value = "qand")]
    strat: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Output file instead of stdout.
    #[arg(short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a circuit in text form.
    Build {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites: gf, sbox, mul, ke, aes128, aes192, aes256, all.
    Verify {
        target: String,
        /// Seed for random vectors, in hex.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Resource report for a circuit.
    Report {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Report with signed deltas against the published figures; `all`
    /// covers every circuit that has published rows.
    Parity {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Synthesize a CNOT network for a matrix file or for m, am_inv,
    /// mixcolumns.
    Synth {
        matrix: String,
        #[command(flatten)]
        common: Common,
        /// Restarts of the randomized optimizer.
        #[arg(long, default_value_t = 100)]
        effort: usize,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Write the Clifford+T form of a circuit.
    Export {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure modes mapped onto exit codes.
enum Fail {
    Verify(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Usage(e.to_string())
    }
}

fn parse_seed(s: Option<&str>) -> Result<u64, Fail> {
    match s {
        None => Ok(qaes::sim::DEFAULT_SEED),
        Some(s) => u64::from_str_radix(s.trim_start_matches("0x"), 16).map_err(|_| Fail::Usage(format!("bad hex seed {s:?}"))),
    }
}

fn aes_variant(name: &str) -> Option<AesVariant> {
    ["aes", "ke", "subbytes"]
        .iter()
        .find_map(|p| name.strip_prefix(p))
        .and_then(|bits| bits.parse().ok())
        .and_then(AesVariant::from_bits)
}

/// Reads `--config` as a file when one exists at that path, otherwise as a
/// `c2_i:c3_j` pair or a single S-box name.
fn resolve_config(name: &str, spec: Option<&str>) -> Result<Option<AesConfig>, Fail> {
    let Some(spec) = spec else { return Ok(None) };
    let v = aes_variant(name).ok_or_else(|| Fail::Usage(format!("--config applies only to AES-level circuits, not {name}")))?;
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Fail::Usage(format!("{spec}: {e}")))?;
        let cfg = AesConfig::parse(&text)?;
        return Ok(Some(AesConfig { variant: v, ..cfg }));
    }
    if spec.contains(':') {
        return Ok(Some(AesConfig::parse_pair(v, spec)?));
    }
    let s = SboxVariant::parse(spec)?;
    let base = AesConfig::new(v);
    let cfg = match s.kind {
        qaes::blocks::SboxKind::C2 => base.with_sboxes(s, base.round_sbox)?,
        _ => base.with_sboxes(base.ke_sbox, s)?,
    };
    Ok(Some(cfg))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(name: &str, common: &Common) -> Result<Circuit, Fail> {
    let cfg = resolve_config(name, common.config.as_deref())?;
    Ok(catalog::build_with(name, cfg.as_ref())?)
}

fn format_report(r: &ResourceReport, f: Format) -> String {
    match f {
        Format::Table => r.to_table(),
        Format::Kv => r.to_kv(),
    }
}

/// Config keys of the published rows, as used by [`parity::rows_for`].
fn config_key(name: &str, cfg: &AesConfig) -> String {
    if name.starts_with("ke") {
        cfg.ke_sbox.to_string()
    } else if name.starts_with("subbytes") {
        cfg.round_sbox.to_string()
    } else {
        format!("{}:{}", cfg.ke_sbox, cfg.round_sbox)
    }
}

fn parity_rows(name: &str, common: &Common, strat: Strategy) -> Result<Vec<parity::ParityRow>, Fail> {
    let keys: Vec<Option<String>> = match (&common.config, aes_variant(name)) {
        (Some(_), Some(_)) => {
            let cfg = resolve_config(name, common.config.as_deref())?.expect("config given");
            vec![Some(config_key(name, &cfg))]
        }
        (Some(_), None) => return Err(Fail::Usage(format!("--config applies only to AES-level circuits, not {name}"))),
        (None, _) => parity::configs_for(name).into_iter().map(|c| c.map(String::from)).collect(),
    };
    if keys.is_empty() {
        return Err(Fail::Usage(format!("no published rows for {name}")));
    }
    let mut out = vec![];
    for key in keys {
        let cfg = key.as_deref().map(parity::config_for_key).transpose()?;
        let c = catalog::build_with(name, cfg.as_ref())?;
        let r = cost::report(&c, strat)?;
        out.extend(parity::parity_for(name, key.as_deref(), &r)?);
    }
    Ok(out)
}

fn named_matrix(name: &str) -> Result<BinMatrix, Fail> {
    match name {
        "m" => Ok(gf::matrix_m()),
        "am_inv" => Ok(gf::matrix_am_inv()),
        "mixcolumns" => Ok(qaes::aes_ref::mixcolumns_matrix()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
            Ok(BinMatrix::parse(&text)?)
        }
    }
}

fn synth(matrix: &str, common: &Common, effort: usize, seed: u64) -> Result<(), Fail> {
    let m = named_matrix(matrix)?;
    let plu = synth_plu(&m)?;
    let best = synth_optimized(&m, effort, seed)?;
    let unit = best.verify(&m)?;
    if let LinearCheck::Fail { basis, expected, got } = unit {
        return Err(Fail::Verify(format!("unit vector {basis}: expected {expected:#x}, got {got:#x}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if m.cols() >= 64 { !0 } else { (1u64 << m.cols()) - 1 };
    for _ in 0..100 {
        let x = rng.gen::<u64>() & mask;
        let got = qaes::linear::apply_linear(&best.circuit, &best.output_wires, x)?;
        if got != m.apply(x) {
            return Err(Fail::Verify(format!("vector {x:#x}: expected {:#x}, got {got:#x}", m.apply(x))));
        }
    }
    let n_plu = plu.circuit.gates().len();
    let n = best.circuit.gates().len();
    eprintln!("{matrix}: {n} CNOT (row reduction {n_plu}), verified on unit vectors and 100 random vectors");
    let outs: Vec<String> = best.output_wires.iter().map(|w| format!("q{w}")).collect();
    let text = format!("# outputs {}\n{}", outs.join(" "), best.circuit.to_text());
    emit(common.out.as_deref(), &text)
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Build { name, common } => {
            let c = build(&name, &common)?;
            emit(common.out.as_deref(), &c.to_text())
        }
        Cmd::Verify { target, seed } => {
            let seed = parse_seed(seed.as_deref())?;
            let results = suites::run(&target, seed)?;
            let mut failed = 0;
            for r in &results {
                println!("{}", r.line());
                failed += !r.passed() as usize;
            }
            println!("seed {seed:#x}: {} suites, {failed} failed", results.len());
            if failed > 0 {
                return Err(Fail::Verify(format!("{failed} suites failed")));
            }
            Ok(())
        }
        Cmd::Report { name, common } => {
            let strat = Strategy::parse(&common.strat)?;
            let c = build(&name, &common)?;
            let r = cost::report(&c, strat)?;
            emit(common.out.as_deref(), &format_report(&r, common.format))
        }
        Cmd::Parity { name, common } => {
            let strat = Strategy::parse(&common.strat)?;
            let rows = if name == "all" {
                if common.config.is_some() {
                    return Err(Fail::Usage("--config cannot be combined with `parity all`".into()));
                }
                parity::covered(strat)?
            } else {
                parity_rows(&name, &common, strat)?
            };
            let text = match common.format {
                Format::Table => parity::to_table(&rows),
                Format::Kv => parity::to_kv(&rows),
            };
            emit(common.out.as_deref(), &text)
        }
        Cmd::Synth { matrix, common, effort, seed } => synth(&matrix, &common, effort, parse_seed(seed.as_deref())?),
        Cmd::Export { name, common } => {
            let strat = Strategy::parse(&common.strat)?;
            let c = build(&name, &common)?;
            let d = cost::decompose(&c, strat)?;
            emit(common.out.as_deref(), &d.to_text())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
