//! Barcode class signatures, Monte Carlo class-frequency campaigns, and the
//! combinatorial bound on the number of classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{build_rips, compute_persistence, Barcode, DEFAULT_MAX_DIM};
use crate::metrics::{distance_matrix, genuine_entanglement_failure, GENUINE_TOL};
use crate::state::{random_state, PureState};

/// Bars shorter than this are treated as simultaneous-entry artifacts and
/// ignored by [`signature`]; matches the concurrence clamp so one tolerance
/// regime runs end to end.
pub const PERSISTENCE_TOL: f64 = 1e-9;

/// Finite/infinite bar counts in one homology dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimCounts {
    pub finite: u32,
    pub infinite: u32,
}

/// The classification key: per-dimension bar counts for H0, H1, H2.
///
/// Two states belong to the same class exactly when they agree on how many
/// components, holes and voids appear and which of those persist. Birth and
/// death scales vary continuously inside a class and are not part of the key.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSignature {
    pub dims: [DimCounts; 3],
}

impl ClassSignature {
    pub fn h0(&self) -> DimCounts {
        self.dims[0]
    }

    pub fn h1(&self) -> DimCounts {
        self.dims[1]
    }

    pub fn h2(&self) -> DimCounts {
        self.dims[2]
    }
}

impl fmt::Display for ClassSignature {
    /// Canonical form, e.g. `H0:3f+1i H1:1f H2:-` for three finite and one
    /// infinite component bar plus one finite hole.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (dim, counts) in self.dims.iter().enumerate() {
            if dim > 0 {
                write!(f, " ")?;
            }
            write!(f, "H{dim}:")?;
            match (counts.finite, counts.infinite) {
                (0, 0) => write!(f, "-")?,
                (finite, 0) => write!(f, "{finite}f")?,
                (0, infinite) => write!(f, "{infinite}i")?,
                (finite, infinite) => write!(f, "{finite}f+{infinite}i")?,
            }
        }
        Ok(())
    }
}

/// Reduces a barcode to its class signature, ignoring bars with persistence
/// below `p_tol`.
pub fn signature(barcode: &Barcode, p_tol: f64) -> ClassSignature {
    let mut dims = [DimCounts::default(); 3];
    for bar in &barcode.bars {
        if bar.is_infinite() {
            dims[bar.dim].infinite += 1;
        } else if bar.persistence() >= p_tol {
            dims[bar.dim].finite += 1;
        }
    }
    ClassSignature { dims }
}

/// Runs the full pipeline on one state: genuine-entanglement gate, distance
/// matrix, Rips filtration, persistence, signature.
pub fn classify_state(state: &PureState) -> Result<(Barcode, ClassSignature)> {
    if let Some((bipartition, c_g)) = genuine_entanglement_failure(state, GENUINE_TOL)? {
        return Err(Error::NotGenuinelyEntangled { bipartition, c_g });
    }
    let distances = distance_matrix(state)?;
    let barcode = compute_persistence(&build_rips(&distances, DEFAULT_MAX_DIM));
    let sig = signature(&barcode, PERSISTENCE_TOL);
    Ok((barcode, sig))
}

/// Outcome of a sampling campaign: how often each class signature occurred.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    pub n_qubits: usize,
    pub n_samples: u64,
    pub seed: u64,
    pub counts: BTreeMap<ClassSignature, u64>,
    /// Samples discarded by the genuine-entanglement gate (measure zero for
    /// continuous sampling; kept for auditability).
    pub rejected: u64,
}

impl FrequencyTable {
    pub fn genuine_total(&self) -> u64 {
        self.n_samples - self.rejected
    }

    pub fn fraction(&self, sig: &ClassSignature) -> f64 {
        let total = self.genuine_total();
        if total == 0 {
            return 0.0;
        }
        *self.counts.get(sig).unwrap_or(&0) as f64 / total as f64
    }

    /// Rows sorted by descending count, ties by signature order.
    pub fn sorted_rows(&self) -> Vec<(ClassSignature, u64, f64)> {
        let mut rows: Vec<(ClassSignature, u64, f64)> = self
            .counts
            .iter()
            .map(|(sig, &count)| (*sig, count, self.fraction(sig)))
            .collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        rows
    }
}

/// The random stream for one sample: the seed keys the generator and the
/// sample index selects a disjoint stream, so campaigns produce identical
/// results for any worker count or scheduling.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index);
    rng
}

/// Samples `n_samples` random states, classifies the genuinely entangled
/// ones, and tabulates class frequencies.
pub fn sample_frequencies(
    n_qubits: usize,
    n_samples: u64,
    seed: u64,
    workers: usize,
) -> Result<FrequencyTable> {
    if n_qubits < 2 || n_qubits > crate::state::MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            n_qubits,
            min: 2,
            max: crate::state::MAX_QUBITS,
        });
    }
    if n_samples == 0 {
        return Err(Error::InvalidSampling("n_samples must be at least 1".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidSampling("workers must be at least 1".into()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSampling(format!("worker pool: {e}")))?;

    let merge = |(mut counts_a, rejected_a): (BTreeMap<ClassSignature, u64>, u64),
                 (counts_b, rejected_b): (BTreeMap<ClassSignature, u64>, u64)| {
        for (sig, count) in counts_b {
            *counts_a.entry(sig).or_insert(0) += count;
        }
        (counts_a, rejected_a + rejected_b)
    };

    let (counts, rejected) = pool.install(|| {
        (0..n_samples)
            .into_par_iter()
            .map(|index| {
                let mut rng = sample_rng(seed, index);
                let state =
                    random_state(n_qubits, &mut rng).expect("qubit count validated above");
                match classify_state(&state) {
                    Ok((_, sig)) => Some(sig),
                    Err(Error::NotGenuinelyEntangled { .. }) => None,
                    Err(other) => panic!("classification failed unexpectedly: {other}"),
                }
            })
            .fold(
                || (BTreeMap::new(), 0u64),
                |(mut counts, mut rejected), outcome| {
                    match outcome {
                        Some(sig) => *counts.entry(sig).or_insert(0) += 1,
                        None => rejected += 1,
                    }
                    (counts, rejected)
                },
            )
            .reduce(|| (BTreeMap::new(), 0u64), merge)
    });

    Ok(FrequencyTable {
        n_qubits,
        n_samples,
        seed,
        counts,
        rejected,
    })
}

/// Upper bound on the number of barcode classes of `n_qubits` qubits:
/// with E = N(N−1)/2 possible edges,
///
/// ```text
/// B_N < Σ_{d=0}^{E} C(E, d) · d!
/// ```
///
/// counting labeled graphs with d edges times the orderings in which those
/// edges can enter. Exact big-integer arithmetic.
pub fn class_bound(n_qubits: usize) -> Result<BigUint> {
    if !(2..=10).contains(&n_qubits) {
        return Err(Error::InvalidQubitCount {
            n_qubits,
            min: 2,
            max: 10,
        });
    }
    let edges = n_qubits * (n_qubits - 1) / 2;
    let mut total = BigUint::from(0u32);
    let mut binomial = BigUint::from(1u32); // C(edges, d)
    let mut factorial = BigUint::from(1u32); // d!
    total += &binomial * &factorial;
    for d in 1..=edges {
        binomial = binomial * (edges - d + 1) / d;
        factorial *= d;
        total += &binomial * &factorial;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Bar;
    use crate::presets;

    fn sig(h0: (u32, u32), h1: (u32, u32), h2: (u32, u32)) -> ClassSignature {
        ClassSignature {
            dims: [
                DimCounts {
                    finite: h0.0,
                    infinite: h0.1,
                },
                DimCounts {
                    finite: h1.0,
                    infinite: h1.1,
                },
                DimCounts {
                    finite: h2.0,
                    infinite: h2.1,
                },
            ],
        }
    }

    #[test]
    fn signature_counts_and_drops_short_bars() {
        let barcode = Barcode {
            bars: vec![
                Bar {
                    dim: 0,
                    birth: 0.0,
                    death: f64::INFINITY,
                },
                Bar {
                    dim: 0,
                    birth: 0.0,
                    death: 0.5,
                },
                Bar {
                    dim: 0,
                    birth: 0.0,
                    death: 1e-12,
                },
                Bar {
                    dim: 1,
                    birth: 0.3,
                    death: 0.6,
                },
            ],
            n_points: 3,
        };
        assert_eq!(
            signature(&barcode, PERSISTENCE_TOL),
            sig((1, 1), (1, 0), (0, 0))
        );
    }

    #[test]
    fn signature_display_is_canonical() {
        assert_eq!(sig((3, 1), (0, 0), (0, 0)).to_string(), "H0:3f+1i H1:- H2:-");
        assert_eq!(sig((0, 4), (0, 0), (0, 0)).to_string(), "H0:4i H1:- H2:-");
        assert_eq!(sig((4, 1), (1, 1), (0, 0)).to_string(), "H0:4f+1i H1:1f+1i H2:-");
        assert_eq!(sig((4, 1), (2, 0), (0, 1)).to_string(), "H0:4f+1i H1:2f H2:1i");
    }

    #[test]
    fn classify_ghz_and_w() {
        let (_, ghz_sig) = classify_state(&presets::ghz(4)).unwrap();
        assert_eq!(ghz_sig, sig((0, 4), (0, 0), (0, 0)));

        let (barcode, w_sig) = classify_state(&presets::w(4)).unwrap();
        assert_eq!(w_sig, sig((3, 1), (0, 0), (0, 0)));
        assert_eq!(barcode.n_points, 4);
    }

    #[test]
    fn classify_rejects_product_states() {
        let state = PureState::basis_state(4, 0).unwrap();
        match classify_state(&state) {
            Err(Error::NotGenuinelyEntangled { bipartition, c_g }) => {
                assert_eq!(bipartition, vec![0]);
                assert!(c_g <= GENUINE_TOL);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn signature_is_invariant_under_relabeling() {
        let permutations = all_permutations(4);
        for trial in 0..20 {
            let state = random_state(4, &mut sample_rng(123, trial)).unwrap();
            let (_, base) = classify_state(&state).unwrap();
            for perm in &permutations {
                let (_, permuted) =
                    classify_state(&state.permute_qubits(perm).unwrap()).unwrap();
                assert_eq!(base, permuted, "perm {perm:?} changed the signature");
            }
        }
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        heap_permute(&mut items, n, &mut out);
        out
    }

    fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap_permute(items, k - 1, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }

    #[test]
    fn sampling_is_worker_count_independent() {
        let serial = sample_frequencies(3, 400, 9, 1).unwrap();
        let parallel = sample_frequencies(3, 400, 9, 8).unwrap();
        assert_eq!(serial, parallel);
        assert_eq!(
            serial.counts.values().sum::<u64>() + serial.rejected,
            400
        );
    }

    #[test]
    fn sampled_h0_counts_sum_to_qubit_count() {
        let table = sample_frequencies(4, 300, 21, 4).unwrap();
        for signature in table.counts.keys() {
            let h0 = signature.h0();
            assert_eq!(h0.finite + h0.infinite, 4);
            assert!(h0.infinite >= 1);
        }
    }

    #[test]
    fn sampling_validates_arguments() {
        assert!(sample_frequencies(1, 10, 0, 1).is_err());
        assert!(sample_frequencies(4, 0, 0, 1).is_err());
        assert!(sample_frequencies(4, 10, 0, 0).is_err());
    }

    #[test]
    fn class_bound_reference_values() {
        assert_eq!(class_bound(2).unwrap(), BigUint::from(2u32));
        assert_eq!(class_bound(3).unwrap(), BigUint::from(16u32));
        assert_eq!(class_bound(4).unwrap(), BigUint::from(1957u32));
        assert!(class_bound(1).is_err());
        assert!(class_bound(11).is_err());
    }

    #[test]
    fn class_bound_matches_brute_force_summation() {
        // Independent route: factorials and binomials from scratch per term.
        fn factorial(k: usize) -> BigUint {
            (1..=k).map(BigUint::from).product()
        }
        fn binomial(n: usize, k: usize) -> BigUint {
            factorial(n) / (factorial(k) * factorial(n - k))
        }
        for n in 2..=7 {
            let edges = n * (n - 1) / 2;
            let expected: BigUint = (0..=edges)
                .map(|d| binomial(edges, d) * factorial(d))
                .sum();
            assert_eq!(class_bound(n).unwrap(), expected);
        }
    }
}
