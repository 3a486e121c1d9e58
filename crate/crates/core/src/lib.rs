//! Classification of genuine multiqubit entanglement through persistent
//! homology.
//!
//! A pure N-qubit state becomes a point cloud: one point per qubit, with
//! pairwise distances derived from the Wootters concurrence through the
//! semi-metric D = 1 − exp(1 − 1/C). The Vietoris–Rips filtration of that
//! cloud yields a persistence barcode whose per-dimension bar counts form a
//! discrete entanglement class. Monte Carlo campaigns over random genuinely
//! entangled states tabulate how often each class occurs.
//!
//! Module map:
//! - [`state`]: pure states, random generation, partial traces
//! - [`metrics`]: concurrences, the genuine-entanglement gate, the semi-metric
//! - [`homology`]: Rips filtrations, persistence, Betti-number oracle
//! - [`classify`]: class signatures, sampling campaigns, the class bound
//! - [`presets`]: GHZ/W families and the published class representatives

pub mod classify;
pub mod error;
pub mod homology;
pub mod metrics;
pub mod presets;
pub mod state;

pub use classify::{
    class_bound, classify_state, sample_frequencies, sample_rng, signature, ClassSignature,
    DimCounts, FrequencyTable, PERSISTENCE_TOL,
};
pub use error::{Error, Result};
pub use homology::{
    betti_at, build_rips, compute_persistence, Bar, Barcode, Filtration, Simplex, EPS_MAX,
};
pub use metrics::{
    concurrence, distance_matrix, generalized_concurrence, is_genuinely_entangled,
    semi_distance, SemiMetricMatrix, CONCURRENCE_CLAMP, GENUINE_TOL,
};
pub use state::{
    purity, random_state, reduced_density, state_from_params, DensityMatrix, PureState,
    RandomStateParams, MAX_QUBITS, NORM_TOL,
};
