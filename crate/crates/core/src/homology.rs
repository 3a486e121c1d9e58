//! Vietoris–Rips filtrations and persistence barcodes over GF(2).
//!
//! The scale axis is capped at [`EPS_MAX`] = 1, open: a simplex whose entry
//! scale reaches 1 never joins the filtration (distance 1 encodes "no
//! pairwise entanglement"), and homology classes still alive below the cap
//! are reported as infinite bars. Persistence runs the standard boundary
//! column reduction; [`betti_at`] recomputes Betti numbers from plain GF(2)
//! ranks as an independent cross-check.

use std::collections::HashMap;

use crate::metrics::SemiMetricMatrix;

/// Open upper limit of the filtration scale.
pub const EPS_MAX: f64 = 1.0;

/// Highest simplex dimension a filtration carries; dimension-2 homology
/// needs the rank of the tetrahedron boundary, hence 3.
pub const DEFAULT_MAX_DIM: usize = 3;

/// A simplex with its filtration entry scale: the largest pairwise distance
/// of its vertices (0 for vertices).
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    value: f64,
}

impl Simplex {
    /// Strictly ascending vertex indices.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Simplices sorted by (entry scale, dimension, vertex order), so every face
/// precedes its cofaces.
#[derive(Clone, Debug)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    n_points: usize,
}

impl Filtration {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }
}

/// Half-open persistence interval; `death` is `f64::INFINITY` for classes
/// that survive the whole scale range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bar {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Bar {
    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn alive_at(&self, eps: f64) -> bool {
        self.birth <= eps && eps < self.death
    }
}

/// Multiset of bars of one filtration, dimensions 0–2.
#[derive(Clone, Debug, PartialEq)]
pub struct Barcode {
    pub bars: Vec<Bar>,
    pub n_points: usize,
}

impl Barcode {
    /// Number of bars alive at scale `eps`, per dimension.
    pub fn alive_at(&self, eps: f64) -> [usize; 3] {
        let mut counts = [0usize; 3];
        for bar in &self.bars {
            if bar.alive_at(eps) {
                counts[bar.dim] += 1;
            }
        }
        counts
    }

    /// (finite, infinite) bar counts in one dimension.
    pub fn counts_in_dim(&self, dim: usize) -> (usize, usize) {
        let mut finite = 0;
        let mut infinite = 0;
        for bar in self.bars.iter().filter(|b| b.dim == dim) {
            if bar.is_infinite() {
                infinite += 1;
            } else {
                finite += 1;
            }
        }
        (finite, infinite)
    }
}

/// Builds the Rips filtration of a semi-metric point cloud.
///
/// Contains every simplex of dimension ≤ `max_dim` whose pairwise distances
/// all stay below [`EPS_MAX`]; vertices enter at scale 0.
pub fn build_rips(d: &SemiMetricMatrix, max_dim: usize) -> Filtration {
    assert!(
        (1..=3).contains(&max_dim),
        "max_dim must be between 1 and 3"
    );
    let n = d.n();
    let mut simplices: Vec<Simplex> = (0..n)
        .map(|v| Simplex {
            vertices: vec![v],
            value: 0.0,
        })
        .collect();

    for i in 0..n {
        for j in i + 1..n {
            let value = d.get(i, j);
            if value < EPS_MAX {
                simplices.push(Simplex {
                    vertices: vec![i, j],
                    value,
                });
            }
        }
    }
    if max_dim >= 2 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let value = d.get(i, j).max(d.get(i, k)).max(d.get(j, k));
                    if value < EPS_MAX {
                        simplices.push(Simplex {
                            vertices: vec![i, j, k],
                            value,
                        });
                    }
                }
            }
        }
    }
    if max_dim >= 3 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let value = d
                            .get(i, j)
                            .max(d.get(i, k))
                            .max(d.get(i, l))
                            .max(d.get(j, k))
                            .max(d.get(j, l))
                            .max(d.get(k, l));
                        if value < EPS_MAX {
                            simplices.push(Simplex {
                                vertices: vec![i, j, k, l],
                                value,
                            });
                        }
                    }
                }
            }
        }
    }

    simplices.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Filtration {
        simplices,
        n_points: n,
    }
}

/// Computes the persistence barcode of a filtration by column reduction of
/// the boundary matrix over GF(2).
///
/// Creators that are never paired become infinite bars. Pairs that are born
/// and die at the same scale (simultaneous entry, e.g. two points at exact
/// distance 0) are dropped.
pub fn compute_persistence(f: &Filtration) -> Barcode {
    let simplices = f.simplices();
    let count = simplices.len();
    let mut index_of: HashMap<&[usize], usize> = HashMap::with_capacity(count);
    for (idx, s) in simplices.iter().enumerate() {
        index_of.insert(s.vertices(), idx);
    }

    // pivot_owner[row] = column whose reduced boundary has lowest entry `row`
    let mut pivot_owner: Vec<Option<usize>> = vec![None; count];
    let mut killed = vec![false; count];
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for j in 0..count {
        let mut column = boundary_indices(&simplices[j], &index_of);
        while let Some(&low) = column.last() {
            match pivot_owner[low] {
                Some(owner) => column = xor_columns(&column, &reduced[owner]),
                None => break,
            }
        }
        if let Some(&low) = column.last() {
            pivot_owner[low] = Some(j);
            killed[low] = true;
            pairs.push((low, j));
        }
        reduced.push(column);
    }

    let mut bars = Vec::new();
    for &(birth_idx, death_idx) in &pairs {
        let dim = simplices[birth_idx].dim();
        let birth = simplices[birth_idx].value();
        let death = simplices[death_idx].value();
        if dim <= 2 && death > birth {
            bars.push(Bar { dim, birth, death });
        }
    }
    for (j, column) in reduced.iter().enumerate() {
        if column.is_empty() && !killed[j] && simplices[j].dim() <= 2 {
            bars.push(Bar {
                dim: simplices[j].dim(),
                birth: simplices[j].value(),
                death: f64::INFINITY,
            });
        }
    }
    bars.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.total_cmp(&b.death))
    });
    Barcode {
        bars,
        n_points: f.n_points(),
    }
}

fn boundary_indices(simplex: &Simplex, index_of: &HashMap<&[usize], usize>) -> Vec<usize> {
    let vertices = simplex.vertices();
    if vertices.len() == 1 {
        return Vec::new();
    }
    let mut column: Vec<usize> = (0..vertices.len())
        .map(|drop| {
            let facet: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != drop)
                .map(|(_, &v)| v)
                .collect();
            index_of[facet.as_slice()]
        })
        .collect();
    column.sort_unstable();
    column
}

/// Symmetric difference of two ascending index lists (GF(2) column sum).
fn xor_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].cmp(&b[ib]) {
            std::cmp::Ordering::Less => {
                out.push(a[ia]);
                ia += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[ib]);
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                ia += 1;
                ib += 1;
            }
        }
    }
    out.extend_from_slice(&a[ia..]);
    out.extend_from_slice(&b[ib..]);
    out
}

/// Betti numbers (b0, b1, b2) of the Rips complex at a fixed scale,
/// computed directly as b_k = n_k − rank ∂_k − rank ∂_{k+1} over GF(2).
///
/// This shares no code with the persistence reduction and serves as its
/// oracle: the bars alive at `eps` must match these ranks exactly.
pub fn betti_at(d: &SemiMetricMatrix, eps: f64, max_dim: usize) -> (usize, usize, usize) {
    assert!(
        (0.0..EPS_MAX).contains(&eps),
        "eps must lie in [0, {EPS_MAX})"
    );
    assert!(
        (1..=3).contains(&max_dim),
        "max_dim must be between 1 and 3"
    );

    // k-simplices present at scale eps: diameter ≤ eps.
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_dim + 1);
    for k in 0..=max_dim {
        let mut cells = Vec::new();
        enumerate_subsets(d.n(), k + 1, &mut |subset| {
            if diameter(d, subset) <= eps {
                cells.push(subset.to_vec());
            }
        });
        levels.push(cells);
    }

    let mut ranks = vec![0usize; max_dim + 2];
    for k in 1..=max_dim {
        ranks[k] = boundary_rank(&levels[k - 1], &levels[k]);
    }
    let betti = |k: usize| {
        if k > max_dim {
            0
        } else {
            levels[k].len() - ranks[k] - ranks[k + 1]
        }
    };
    (betti(0), betti(1), betti(2))
}

fn diameter(d: &SemiMetricMatrix, subset: &[usize]) -> f64 {
    let mut max = 0.0f64;
    for (pos, &i) in subset.iter().enumerate() {
        for &j in &subset[pos + 1..] {
            max = max.max(d.get(i, j));
        }
    }
    max
}

fn enumerate_subsets(n: usize, size: usize, visit: &mut impl FnMut(&[usize])) {
    fn recurse(
        start: usize,
        n: usize,
        size: usize,
        buffer: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if buffer.len() == size {
            visit(buffer);
            return;
        }
        for v in start..n {
            buffer.push(v);
            recurse(v + 1, n, size, buffer, visit);
            buffer.pop();
        }
    }
    recurse(0, n, size, &mut Vec::with_capacity(size), visit);
}

/// GF(2) rank of the boundary matrix with the given face rows and cell
/// columns, by Gaussian elimination on bit-packed columns.
fn boundary_rank(faces: &[Vec<usize>], cells: &[Vec<usize>]) -> usize {
    if faces.is_empty() || cells.is_empty() {
        return 0;
    }
    let face_index: HashMap<&[usize], usize> = faces
        .iter()
        .enumerate()
        .map(|(idx, f)| (f.as_slice(), idx))
        .collect();
    let words = faces.len().div_ceil(64);
    // pivots[row] = bit-packed column with leading set bit `row`
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; faces.len()];
    let mut rank = 0;

    for cell in cells {
        let mut bits = vec![0u64; words];
        for drop in 0..cell.len() {
            let facet: Vec<usize> = cell
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != drop)
                .map(|(_, &v)| v)
                .collect();
            let row = face_index[facet.as_slice()];
            bits[row / 64] ^= 1u64 << (row % 64);
        }
        while let Some(top) = highest_bit(&bits) {
            match &pivots[top] {
                Some(pivot) => {
                    for (word, p) in bits.iter_mut().zip(pivot) {
                        *word ^= p;
                    }
                }
                None => {
                    pivots[top] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    for (word_idx, &word) in bits.iter().enumerate().rev() {
        if word != 0 {
            return Some(word_idx * 64 + 63 - word.leading_zeros() as usize);
        }
    }
    None
}
