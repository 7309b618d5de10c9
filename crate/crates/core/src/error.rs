use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{{{p},{q}}} is not hyperbolic: need p >= 3, q >= 3 and (p-2)(q-2) > 4")]
    NonHyperbolic { p: u32, q: u32 },

    #[error("tile budget exceeded: growing past {budget} tiles was refused")]
    BudgetExceeded { budget: usize },

    #[error("unknown tile id {0}")]
    UnknownTile(u32),

    #[error("unknown edge id {0}")]
    UnknownEdge(u32),

    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),

    #[error("polyform must contain at least one tile")]
    EmptyPolyform,

    #[error("tile set is not edge-connected")]
    Disconnected,

    #[error("layer index {k} is invalid here (patch has {grown} complete layers)")]
    BadLayer { k: u32, grown: u32 },

    #[error("patch was grown locally or loaded from disk; deterministic layer growth is unavailable")]
    NotLayerResumable,

    #[error("operation requires q > 3, got {{{p},{q}}}")]
    RequiresQAbove3 { p: u32, q: u32 },

    #[error("operation requires {{2k,k}} parameters with k > 3, got {{{p},{q}}}")]
    RequiresDoubledParams { p: u32, q: u32 },

    #[error("operation requires {{2k,3}} parameters with k > 3, got {{{p},{q}}}")]
    RequiresQ3Params { p: u32, q: u32 },

    #[error("h must be at least 1")]
    HoleCountZero,

    #[error("source polyform must be hole-free, found {holes} holes")]
    SourceHasHoles { holes: usize },

    #[error("pmin argument out of range: N={n} not in [{lo},{hi}]")]
    PminOutOfRange { n: u64, lo: u64, hi: u64 },

    #[error("spiral jump violation at N={n}: perimeter step {step} not allowed for {{{p},{q}}}")]
    PminJumpViolation { p: u32, q: u32, n: u64, step: i64 },

    #[error("parity violation computing vmin({h}): pmin+({p}-2)h is odd (spiral bug)")]
    VminParity { p: u32, h: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit status used by the CLI: 1 for domain errors, 2 for
    /// resource-budget aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            _ => 1,
        }
    }
}
