//! Pure multiqubit states, uniform random state generation, and partial
//! traces.
//!
//! Basis indices are read as N-bit binary strings with qubit 0 as the most
//! significant bit, so for four qubits |0110⟩ is amplitude index 6. All
//! functions here are pure; states and density matrices are immutable once
//! built.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported register size. Dense vectors of 2^12 amplitudes keep
/// every operation exact and fast at desk scale.
pub const MAX_QUBITS: usize = 12;

/// Tolerance on the L2 norm of a state and on density-matrix invariants.
pub const NORM_TOL: f64 = 1e-9;

/// A normalized pure state of `n_qubits` qubits as a dense amplitude vector
/// over the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, checking the length and the norm.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits, 1)?;
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                n_qubits,
                expected,
                actual: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps an arbitrary nonzero amplitude vector, rescaling it to norm 1.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits, 1)?;
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                n_qubits,
                expected,
                actual: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// The computational basis state |index⟩.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits, 1)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::QubitIndexOutOfRange {
                index,
                n_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Relabels qubits: output qubit `q` is input qubit `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InvalidKeepSet);
        }
        for &q in perm {
            if q >= n || seen[q] {
                return Err(Error::InvalidKeepSet);
            }
            seen[q] = true;
        }
        let dim = self.dim();
        let mut out = vec![Complex64::ZERO; dim];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let mut new_idx = 0usize;
            for (new_q, &old_q) in perm.iter().enumerate() {
                new_idx |= qubit_bit(idx, old_q, n) << (n - 1 - new_q);
            }
            out[new_idx] = *amp;
        }
        Ok(Self {
            n_qubits: n,
            amplitudes: out,
        })
    }
}

/// Bit of `qubit` within basis index `index` (qubit 0 = most significant).
#[inline]
pub(crate) fn qubit_bit(index: usize, qubit: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_qubit_count(n_qubits: usize, min: usize) -> Result<()> {
    if n_qubits < min || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            n_qubits,
            min,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Angles and radii that parametrize a random pure state.
///
/// `phases[k]` holds φ_{k+1} ∈ [0, 2π) for k + 1 = 1 … 2^N − 1 and
/// `radii[k]` holds ξ_k ∈ [0, 1] for k = 0 … 2^N − 1. ξ_0 is carried for
/// completeness but never used: θ_0 is fixed to 0, the only choice that
/// makes the amplitude norm telescope to exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomStateParams {
    phases: Vec<f64>,
    radii: Vec<f64>,
}

impl RandomStateParams {
    pub fn new(phases: Vec<f64>, radii: Vec<f64>) -> Result<Self> {
        use std::f64::consts::TAU;
        for (index, &value) in phases.iter().enumerate() {
            if !(0.0..TAU).contains(&value) {
                return Err(Error::ParamOutOfRange {
                    name: "phases",
                    index,
                    value,
                    range: "[0, 2π)",
                });
            }
        }
        for (index, &value) in radii.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ParamOutOfRange {
                    name: "radii",
                    index,
                    value,
                    range: "[0, 1]",
                });
            }
        }
        Ok(Self { phases, radii })
    }

    /// Draws uniform phases and radii for an `n_qubits` state.
    pub fn sample<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        use std::f64::consts::TAU;
        check_qubit_count(n_qubits, 1)?;
        let dim = 1usize << n_qubits;
        let phases = (1..dim).map(|_| rng.gen::<f64>() * TAU).collect();
        let radii = (0..dim).map(|_| rng.gen::<f64>()).collect();
        Ok(Self { phases, radii })
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }
}

/// Builds the pure state determined by a phase/radius parameter set.
///
/// Amplitudes follow the hyperspherical parametrization
///
/// ```text
/// ν_0     = cos θ_{2^N−1}
/// ν_{n>0} = e^{iφ_n} · cos θ_{2^N−1−n} · ∏_{l = 2^N−n}^{2^N−1} sin θ_l
/// θ_n     = arcsin(ξ_n^{1/(2n)}),   θ_0 = 0
/// ```
///
/// which is normalized identically in the parameters and, for uniform
/// inputs, distributes states by the unitarily invariant measure.
pub fn state_from_params(n_qubits: usize, params: &RandomStateParams) -> Result<PureState> {
    check_qubit_count(n_qubits, 1)?;
    let dim = 1usize << n_qubits;
    if params.phases.len() != dim - 1 || params.radii.len() != dim {
        return Err(Error::ParamsDimensionMismatch {
            n_qubits,
            phases: params.phases.len(),
            radii: params.radii.len(),
        });
    }

    // θ_n ∈ [0, π/2], so every cos/sin factor below is nonnegative.
    let theta: Vec<f64> = (0..dim)
        .map(|n| {
            if n == 0 {
                0.0
            } else {
                params.radii[n].powf(1.0 / (2.0 * n as f64)).asin()
            }
        })
        .collect();

    let mut amplitudes = Vec::with_capacity(dim);
    amplitudes.push(Complex64::new(theta[dim - 1].cos(), 0.0));
    let mut sin_tail = 1.0; // ∏_{l=2^N−n}^{2^N−1} sin θ_l, built incrementally
    for n in 1..dim {
        sin_tail *= theta[dim - n].sin();
        let magnitude = theta[dim - 1 - n].cos() * sin_tail;
        amplitudes.push(Complex64::from_polar(magnitude, params.phases[n - 1]));
    }
    PureState::new(n_qubits, amplitudes)
}

/// Draws a pure state uniformly under the unitarily invariant measure.
pub fn random_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    let params = RandomStateParams::sample(n_qubits, rng)?;
    state_from_params(n_qubits, &params)
}

/// Reduced state of a qubit subset: Hermitian, unit trace, positive
/// semidefinite up to rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Wraps a matrix, checking shape, Hermiticity and unit trace. Positive
    /// semidefiniteness is not recomputed here; use [`Self::eigenvalues`].
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidDensityMatrix(format!(
                "shape {}x{} is not a square power of two",
                entries.nrows(),
                entries.ncols()
            )));
        }
        for i in 0..dim {
            for j in i..dim {
                let delta = entries[(i, j)] - entries[(j, i)].conj();
                if delta.norm() > NORM_TOL {
                    return Err(Error::InvalidDensityMatrix(format!(
                        "entry ({i}, {j}) breaks Hermiticity by {:.3e}",
                        delta.norm()
                    )));
                }
            }
        }
        let trace: Complex64 = entries.diagonal().iter().sum();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} differs from 1"
            )));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Real spectrum of the Hermitian matrix, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

/// Partial trace of |ψ⟩⟨ψ| keeping the qubits in `keep`.
///
/// `keep` must be a non-empty proper subset of the register; the reduced
/// index orders kept qubits by ascending original index.
pub fn reduced_density(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    if keep.is_empty() || keep.len() >= n || keep.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidKeepSet);
    }
    if let Some(&index) = keep.iter().find(|&&q| q >= n) {
        return Err(Error::QubitIndexOutOfRange { index, n_qubits: n });
    }
    let env: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();

    // Precompute the placement of reduced/environment sub-indices inside a
    // full basis index.
    let spread = |qubits: &[usize]| -> Vec<usize> {
        let k = qubits.len();
        (0..1usize << k)
            .map(|bits| {
                let mut full = 0usize;
                for (pos, &q) in qubits.iter().enumerate() {
                    full |= ((bits >> (k - 1 - pos)) & 1) << (n - 1 - q);
                }
                full
            })
            .collect()
    };
    let keep_spread = spread(&keep);
    let env_spread = spread(&env);

    let amps = state.amplitudes();
    let dk = keep_spread.len();
    let mut entries = DMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in a..dk {
            let mut acc = Complex64::ZERO;
            for &e in &env_spread {
                acc += amps[keep_spread[a] | e] * amps[keep_spread[b] | e].conj();
            }
            entries[(a, b)] = acc;
            if a != b {
                entries[(b, a)] = acc.conj();
            }
        }
    }
    DensityMatrix::new(entries)
}

/// Tr(ρ²), a real number in [1/dim, 1].
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.entries.iter().map(|e| e.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero_params(n_qubits: usize) -> RandomStateParams {
        let dim = 1usize << n_qubits;
        RandomStateParams::new(vec![0.0; dim - 1], vec![0.0; dim]).unwrap()
    }

    #[test]
    fn all_zero_radii_give_ground_state() {
        for n in 1..=4 {
            let state = state_from_params(n, &zero_params(n)).unwrap();
            assert_eq!(state.amplitudes()[0], Complex64::ONE);
            assert!(state.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
        }
    }

    #[test]
    fn all_one_radii_give_top_state() {
        for n in 1..=4 {
            let dim = 1usize << n;
            let params =
                RandomStateParams::new(vec![0.0; dim - 1], vec![1.0; dim]).unwrap();
            let state = state_from_params(n, &params).unwrap();
            assert_abs_diff_eq!(state.amplitudes()[dim - 1].re, 1.0, epsilon = 1e-12);
            for idx in 0..dim - 1 {
                assert_abs_diff_eq!(state.amplitudes()[idx].norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn parametrized_states_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 1..=6 {
            for _ in 0..200 {
                let params = RandomStateParams::sample(n, &mut rng).unwrap();
                let state = state_from_params(n, &params).unwrap();
                assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_phases_give_real_nonnegative_amplitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let dim = 16;
            let radii = (0..dim).map(|_| rng.gen::<f64>()).collect();
            let params = RandomStateParams::new(vec![0.0; dim - 1], radii).unwrap();
            let state = state_from_params(4, &params).unwrap();
            for a in state.amplitudes() {
                assert_eq!(a.im, 0.0);
                assert!(a.re >= 0.0);
            }
        }
    }

    #[test]
    fn params_length_mismatch_is_rejected() {
        let params = RandomStateParams::new(vec![0.0; 3], vec![0.0; 4]).unwrap();
        assert!(matches!(
            state_from_params(3, &params),
            Err(Error::ParamsDimensionMismatch { .. })
        ));
    }

    #[test]
    fn random_state_is_deterministic_per_seed() {
        let a = random_state(4, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = random_state(4, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_state_probabilities_match_dirichlet_oracle() {
        // Unitary invariance forces E|ν_n|² = 2^{−N}; cross-check the first
        // component against flat-Dirichlet sampling (normalized squared
        // Gaussian magnitudes), which draws from the same measure.
        let n_samples = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut mean_first = 0.0;
        for _ in 0..n_samples {
            let state = random_state(2, &mut rng).unwrap();
            mean_first += state.amplitudes()[0].norm_sqr();
        }
        mean_first /= n_samples as f64;
        assert_abs_diff_eq!(mean_first, 0.25, epsilon = 0.01);

        use rand_distr::{Distribution, StandardNormal};
        let mut oracle_mean = 0.0;
        for _ in 0..n_samples {
            let draws: Vec<f64> = (0..8)
                .map(|_| <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
                .collect();
            let total: f64 = draws.iter().map(|g| g * g).sum();
            oracle_mean += (draws[0] * draws[0] + draws[1] * draws[1]) / total;
        }
        oracle_mean /= n_samples as f64;
        assert_abs_diff_eq!(mean_first, oracle_mean, epsilon = 0.01);
    }

    #[test]
    fn random_states_satisfy_invariants_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let state = random_state(4, &mut rng).unwrap();
            assert!((state.norm() - 1.0).abs() < NORM_TOL);
            assert_eq!(state.dim(), 16);
        }
    }

    #[test]
    fn reduced_density_of_product_state() {
        let state = PureState::basis_state(4, 0).unwrap();
        let rho = reduced_density(&state, &[2]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert_eq!(rho.entries()[(0, 0)], Complex64::ONE);
        assert_eq!(rho.entries()[(1, 1)], Complex64::ZERO);
    }

    #[test]
    fn reduced_density_of_ghz_pair() {
        let state = crate::presets::ghz(4);
        let rho = reduced_density(&state, &[0, 1]).unwrap();
        assert_eq!(rho.dim(), 4);
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.entries()[(3, 3)].re, 0.5, epsilon = 1e-12);
        for (i, j) in [(0, 3), (1, 1), (2, 2), (1, 2)] {
            if i != j || (i != 0 && i != 3) {
                assert_abs_diff_eq!(rho.entries()[(i, j)].norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn reduced_density_of_w_single_qubit() {
        let state = crate::presets::w(4);
        let rho = reduced_density(&state, &[0]).unwrap();
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.entries()[(0, 1)].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reduced_density_rejects_bad_keep_sets() {
        let state = PureState::basis_state(3, 0).unwrap();
        assert!(matches!(
            reduced_density(&state, &[]),
            Err(Error::InvalidKeepSet)
        ));
        assert!(matches!(
            reduced_density(&state, &[0, 1, 2]),
            Err(Error::InvalidKeepSet)
        ));
        assert!(matches!(
            reduced_density(&state, &[1, 1]),
            Err(Error::InvalidKeepSet)
        ));
        assert!(matches!(
            reduced_density(&state, &[3]),
            Err(Error::QubitIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn reduced_density_invariants_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let n = 2 + (rng.gen::<usize>() % 4); // 2..=5 qubits
            let state = random_state(n, &mut rng).unwrap();
            let keep_len = 1 + rng.gen::<usize>() % (n - 1);
            let mut keep: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                keep.swap(i, rng.gen_range(0..=i));
            }
            keep.truncate(keep_len);
            let rho = reduced_density(&state, &keep).unwrap();
            // Hermiticity and unit trace are checked by the constructor;
            // verify positive semidefiniteness on top.
            assert!(rho.eigenvalues().iter().all(|&v| v >= -NORM_TOL));
        }
    }

    #[test]
    fn complementary_reductions_both_have_unit_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state = random_state(5, &mut rng).unwrap();
        for q in 0..5 {
            let rest: Vec<usize> = (0..5).filter(|&p| p != q).collect();
            let single = reduced_density(&state, &[q]).unwrap();
            let complement = reduced_density(&state, &rest).unwrap();
            let tr = |rho: &DensityMatrix| -> f64 {
                rho.entries().diagonal().iter().map(|e| e.re).sum()
            };
            assert_abs_diff_eq!(tr(&single), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(tr(&complement), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn purity_of_reference_states() {
        let pure = reduced_density(&PureState::basis_state(2, 0).unwrap(), &[0]).unwrap();
        assert_abs_diff_eq!(purity(&pure), 1.0, epsilon = 1e-12);

        let mixed = reduced_density(&crate::presets::ghz(2), &[0]).unwrap();
        assert_abs_diff_eq!(purity(&mixed), 0.5, epsilon = 1e-12);

        let ghz_pair = reduced_density(&crate::presets::ghz(4), &[0, 1]).unwrap();
        assert_abs_diff_eq!(purity(&ghz_pair), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn permute_qubits_moves_excitation() {
        // |0001⟩ with qubit 3 excited; moving qubit 3 to slot 0 gives |1000⟩.
        let state = PureState::basis_state(4, 0b0001).unwrap();
        let permuted = state.permute_qubits(&[3, 0, 1, 2]).unwrap();
        assert_eq!(permuted.amplitudes()[0b1000], Complex64::ONE);
    }

    #[test]
    fn rejects_unnormalized_and_wrong_length() {
        assert!(matches!(
            PureState::new(1, vec![c(0.5, 0.0), c(0.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            PureState::new(2, vec![Complex64::ONE; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PureState::normalized(1, vec![Complex64::ZERO; 2]),
            Err(Error::ZeroVector)
        ));
    }
}
