use thiserror::Error;

/// Errors reported by the core library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {n_qubits} outside supported range {min}..={max}")]
    InvalidQubitCount {
        n_qubits: usize,
        min: usize,
        max: usize,
    },

    #[error("amplitude vector has length {actual}, expected {expected} for {n_qubits} qubits")]
    DimensionMismatch {
        n_qubits: usize,
        expected: usize,
        actual: usize,
    },

    #[error("parameter vectors ({phases} phases, {radii} radii) do not match {n_qubits} qubits")]
    ParamsDimensionMismatch {
        n_qubits: usize,
        phases: usize,
        radii: usize,
    },

    #[error("parameter {name}[{index}] = {value} outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        index: usize,
        value: f64,
        range: &'static str,
    },

    #[error("state norm {norm} is not 1 within tolerance")]
    NotNormalized { norm: f64 },

    #[error("cannot normalize a zero amplitude vector")]
    ZeroVector,

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndexOutOfRange { index: usize, n_qubits: usize },

    #[error("keep set must be a non-empty proper subset of distinct qubit indices")]
    InvalidKeepSet,

    #[error("concurrence pair requires two distinct qubits, got ({i}, {j})")]
    IdenticalQubits { i: usize, j: usize },

    #[error("concurrence {value} outside [0, 1]")]
    ConcurrenceOutOfRange { value: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("not a valid semi-metric matrix: {0}")]
    InvalidSemiMetric(String),

    #[error(
        "state is not genuinely entangled: bipartition {bipartition:?} has C_G = {c_g:.3e}"
    )]
    NotGenuinelyEntangled { bipartition: Vec<usize>, c_g: f64 },

    #[error("invalid sampling request: {0}")]
    InvalidSampling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
