use thiserror::Error;

use crate::graph::Edge;

/// Errors produced by graph construction, decomposition and embedding code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid jump {jump} for modulus {n}")]
    InvalidJump { n: usize, jump: usize },
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("jump {jump} equals half of {t}; it yields single edges, not cycles")]
    HalfJump { t: usize, jump: usize },
    #[error("parts of the partition overlap at vertex {0}")]
    InvalidPartition(usize),
    #[error("gcd({a}, {b}) = {gcd}, no unique solution")]
    NoUniqueSolution { a: u64, b: u64, gcd: u64 },
    #[error("shift bundle with gcd(t, d) = {0} is not reducible to a two-jump circulant")]
    NotReducible(usize),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("embedding does not cover edge {0}")]
    MissingEdge(Edge),
    #[error("embedding assigns a page to non-edge {0}")]
    ExtraEdge(Edge),
    #[error("page {page} out of range for {m} pages")]
    PageOutOfRange { page: usize, m: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("construction failed ({construction}): {reason}")]
    Construction { construction: &'static str, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
