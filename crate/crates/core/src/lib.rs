//! Reversible circuits for composite-field AES S-boxes, key expansion and
//! full AES-128/192/256, with exhaustive classical verification and
//! Clifford+T resource estimates.

pub mod aes;
pub mod aes_ref;
pub mod blocks;
pub mod catalog;
pub mod circuit;
pub mod cost;
pub mod gf;
pub mod linear;
pub mod parity;
pub mod sim;
pub mod suites;
pub mod unitary;

pub use circuit::{Builder, Circuit, Gate, GateKind, Register, Role};
pub use gf::{BinMatrix, Composite, Gf16, Gf256};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid gate: {0}")]
    Gate(String),
    #[error("wire error: {0}")]
    Wire(String),
    #[error("key must be {expected} bytes, got {got}")]
    KeyLength { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("unknown circuit {0:?}")]
    UnknownCircuit(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("simulation failed: {0}")]
    Sim(#[from] sim::SimError),
    #[error("unsupported gate {0} for this operation")]
    Unsupported(&'static str),
    #[error("{0} wires exceed the dense simulation limit")]
    TooWide(u32),
}
