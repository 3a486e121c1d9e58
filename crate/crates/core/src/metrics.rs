//! Pairwise concurrence, the generalized concurrence, the genuine
//! multipartite entanglement test, and the entanglement semi-metric.
//!
//! The semi-metric D maps concurrence 1 to distance 0 and concurrence 0 to
//! distance 1; it is symmetric with a zero diagonal but deliberately skips
//! the triangle inequality, which Rips construction does not need.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{purity, reduced_density, DensityMatrix, PureState};

/// Concurrences below this are returned as exactly 0, so the matching
/// distance becomes exactly 1 and the edge never enters a filtration.
pub const CONCURRENCE_CLAMP: f64 = 1e-9;

/// Default tolerance on C_G for the genuine-entanglement test.
pub const GENUINE_TOL: f64 = 1e-9;

/// Symmetric matrix of pairwise entanglement distances in [0, 1] with a
/// zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiMetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SemiMetricMatrix {
    /// Builds the matrix from explicit rows, validating the invariants.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSemiMetric("matrix is not square".into()));
        }
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(Error::InvalidSemiMetric(format!(
                    "diagonal entry ({i}, {i}) is {}, expected 0",
                    rows[i][i]
                )));
            }
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidSemiMetric(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
                if !(0.0..=1.0).contains(&rows[i][j]) {
                    return Err(Error::InvalidSemiMetric(format!(
                        "entry ({i}, {j}) = {} outside [0, 1]",
                        rows[i][j]
                    )));
                }
            }
        }
        let entries = rows.iter().flatten().copied().collect();
        Ok(Self { n, entries })
    }

    /// Builds a symmetric matrix by evaluating `dist` on the upper triangle.
    pub fn from_fn(n: usize, mut dist: impl FnMut(usize, usize) -> Result<f64>) -> Result<Self> {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = dist(i, j)?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidSemiMetric(format!(
                        "entry ({i}, {j}) = {v} outside [0, 1]"
                    )));
                }
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Relabels points: output point `p` is input point `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Self { n, entries }
    }
}

/// Wootters concurrence between qubits `i` and `j` of a pure state.
///
/// The pair is reduced to a 4×4 density matrix ρ and compared with its
/// spin-flipped image ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y): with λ_1 ≥ … ≥ λ_4 the
/// square roots of the spectrum of ρρ̃,
///
/// ```text
/// C = max{0, λ_1 − λ_2 − λ_3 − λ_4}
/// ```
///
/// The spectrum is taken from the Hermitian product √ρ·ρ̃·√ρ, which equals
/// that of ρρ̃ but needs only a self-adjoint eigensolver. Results below
/// [`CONCURRENCE_CLAMP`] are returned as exactly 0.
pub fn concurrence(state: &PureState, i: usize, j: usize) -> Result<f64> {
    let n = state.n_qubits();
    if i == j {
        return Err(Error::IdenticalQubits { i, j });
    }
    for index in [i, j] {
        if index >= n {
            return Err(Error::QubitIndexOutOfRange { index, n_qubits: n });
        }
    }
    let rho = pair_density(state, i.min(j), i.max(j))?;
    Ok(two_qubit_concurrence(rho.entries()))
}

/// Reduced state of an ordered qubit pair; for a two-qubit register this is
/// the full projector |ψ⟩⟨ψ| (nothing to trace out).
fn pair_density(state: &PureState, i: usize, j: usize) -> Result<DensityMatrix> {
    if state.n_qubits() == 2 {
        let amps = state.amplitudes();
        let entries = DMatrix::from_fn(4, 4, |a, b| amps[a] * amps[b].conj());
        return DensityMatrix::new(entries);
    }
    reduced_density(state, &[i, j])
}

/// Spectrum entries of √ρ·ρ̃·√ρ below this are eigensolver noise; the square
/// root would amplify them to ~1e-8, so they are zeroed first.
const SPECTRUM_NOISE: f64 = 1e-14;

fn two_qubit_concurrence(rho: &DMatrix<Complex64>) -> f64 {
    let sqrt_rho = hermitian_sqrt(rho);
    let product = &sqrt_rho * spin_flipped(rho) * &sqrt_rho;
    // Symmetrize away rounding before the self-adjoint solve.
    let hermitian = (&product + product.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = hermitian
        .symmetric_eigenvalues()
        .iter()
        .map(|&v| if v <= SPECTRUM_NOISE { 0.0 } else { v.sqrt() })
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    if c < CONCURRENCE_CLAMP {
        0.0
    } else {
        c.min(1.0)
    }
}

/// ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y). Since σ_y⊗σ_y is the antidiagonal sign
/// matrix diag-flip with signs (−1, 1, 1, −1), the product reduces to an
/// index reversal with sign bookkeeping.
fn spin_flipped(rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    DMatrix::from_fn(4, 4, |a, b| {
        rho[(3 - a, 3 - b)].conj() * (SIGN[a] * SIGN[b])
    })
}

fn hermitian_sqrt(rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = rho.clone().symmetric_eigen();
    let sqrt_diag = DMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
    );
    &eig.eigenvectors * sqrt_diag * eig.eigenvectors.adjoint()
}

/// C_G(ρ) = 2√(1 − Tr ρ²): zero exactly when ρ is pure, √2 for a maximally
/// mixed qubit, at most 2.
pub fn generalized_concurrence(rho: &DensityMatrix) -> f64 {
    2.0 * (1.0 - purity(rho)).max(0.0).sqrt()
}

/// Finds a bipartition that fails the genuine-entanglement test, if any.
///
/// Iterates subset masks 1 … 2^{N−1} − 1 with qubit N−1 pinned to the
/// complement, so each bipartition A/Â appears exactly once. Returns the
/// first A whose C_G(ρ_A) ≤ tol, together with that value. The partial
/// trace runs on the smaller side of the cut; purities of the two sides of
/// a pure state agree.
pub fn genuine_entanglement_failure(
    state: &PureState,
    tol: f64,
) -> Result<Option<(Vec<usize>, f64)>> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n_qubits: n,
            min: 2,
            max: crate::state::MAX_QUBITS,
        });
    }
    for mask in 1usize..(1 << (n - 1)) {
        let part: Vec<usize> = (0..n - 1).filter(|q| mask >> q & 1 == 1).collect();
        let smaller: Vec<usize> = if 2 * part.len() <= n {
            part.clone()
        } else {
            (0..n).filter(|q| !part.contains(q)).collect()
        };
        let rho = reduced_density(state, &smaller)?;
        let c_g = generalized_concurrence(&rho);
        if c_g <= tol {
            return Ok(Some((part, c_g)));
        }
    }
    Ok(None)
}

/// True iff C_G(ρ_A) > tol across every bipartition A/Â.
pub fn is_genuinely_entangled(state: &PureState, tol: f64) -> Result<bool> {
    Ok(genuine_entanglement_failure(state, tol)?.is_none())
}

/// Entanglement semi-distance D = 1 − exp(1 − 1/C).
///
/// Strictly decreasing on (0, 1], with D(1) = 0 and the separable limit
/// fixed at D(0) = 1 so the distance stays finite for unentangled pairs.
pub fn semi_distance(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::ConcurrenceOutOfRange { value: c });
    }
    if c == 0.0 {
        return Ok(1.0);
    }
    Ok((1.0 - (1.0 - 1.0 / c).exp()).clamp(0.0, 1.0))
}

/// Matrix of pairwise entanglement distances of a state.
pub fn distance_matrix(state: &PureState) -> Result<SemiMetricMatrix> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n_qubits: n,
            min: 2,
            max: crate::state::MAX_QUBITS,
        });
    }
    SemiMetricMatrix::from_fn(n, |i, j| semi_distance(concurrence(state, i, j)?))
}
