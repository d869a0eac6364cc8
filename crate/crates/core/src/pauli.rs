//! Pauli operators in the symplectic bit-mask representation, stabilizer
//! models, and the restricted anticommutation matrix.
//!
//! A Pauli operator is stored as an (X-mask, Z-mask) pair over the qubits. The
//! two masks are disjoint by construction: Pauli-Y factors are rejected, which
//! keeps every operator real symmetric and the partial-transpose sign
//! bookkeeping elementary. A stabilizer model bundles an independent, mutually
//! commuting generator list with one coupling `t ∈ [−1, 1]` per generator and a
//! bipartition of the qubits; `t = 1` encodes an infinitely strong coupling.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A tensor product of single-qubit X and Z factors (no Y) with +1 prefactor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    /// The identity operator on `n_qubits`.
    pub fn identity(n_qubits: usize) -> Self {
        PauliOperator {
            n_qubits,
            x: BitVec::zeros(n_qubits),
            z: BitVec::zeros(n_qubits),
        }
    }

    /// Build from explicit masks, rejecting any qubit carrying both X and Z.
    pub fn new(n_qubits: usize, x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != n_qubits || z.len() != n_qubits {
            return Err(Error::SizeMismatch {
                expected: n_qubits,
                found: if x.len() != n_qubits { x.len() } else { z.len() },
            });
        }
        if x.intersects(&z) {
            let qubit = x.and(&z).lowest_set().unwrap();
            return Err(Error::PauliYUnsupported { qubit });
        }
        Ok(PauliOperator { n_qubits, x, z })
    }

    /// Build from lists of X-support and Z-support qubit indices.
    pub fn from_supports(n_qubits: usize, xs: &[usize], zs: &[usize]) -> Result<Self> {
        for &q in xs.iter().chain(zs) {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        Self::new(
            n_qubits,
            BitVec::from_indices(n_qubits, xs),
            BitVec::from_indices(n_qubits, zs),
        )
    }

    /// A single X on qubit `q`.
    pub fn single_x(n_qubits: usize, q: usize) -> Result<Self> {
        Self::from_supports(n_qubits, &[q], &[])
    }

    /// A single Z on qubit `q`.
    pub fn single_z(n_qubits: usize, q: usize) -> Result<Self> {
        Self::from_supports(n_qubits, &[], &[q])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> &BitVec {
        &self.x
    }

    pub fn z_mask(&self) -> &BitVec {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Whether any X or Z factor lands inside the masked qubit set.
    pub fn touches(&self, region: &BitVec) -> bool {
        self.x.intersects(region) || self.z.intersects(region)
    }

    /// The operator with all factors outside region A dropped.
    pub fn restrict(&self, b: &Bipartition) -> PauliOperator {
        PauliOperator {
            n_qubits: self.n_qubits,
            x: self.x.and(b.mask_a()),
            z: self.z.and(b.mask_a()),
        }
    }

    /// The operator with all factors outside the given mask dropped.
    fn restrict_mask(&self, mask: &BitVec) -> PauliOperator {
        PauliOperator {
            n_qubits: self.n_qubits,
            x: self.x.and(mask),
            z: self.z.and(mask),
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in 0..self.n_qubits {
            let label = match (self.x.get(q), self.z.get(q)) {
                (true, _) => "X",
                (_, true) => "Z",
                _ => continue,
            };
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{label}{q}")?;
            first = false;
        }
        Ok(())
    }
}

/// Whether two Pauli operators commute (symplectic inner product zero mod 2).
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    if p.n_qubits != q.n_qubits {
        return Err(Error::SizeMismatch {
            expected: p.n_qubits,
            found: q.n_qubits,
        });
    }
    Ok(!(p.x.overlap_parity(&q.z) ^ p.z.overlap_parity(&q.x)))
}

/// A cut of the qubits into region A and its complement B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n_qubits: usize,
    mask_a: BitVec,
}

impl Bipartition {
    /// Region A given as a list of qubit indices; duplicates are harmless.
    pub fn new(n_qubits: usize, region_a: &[usize]) -> Result<Self> {
        for &q in region_a {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        Ok(Bipartition {
            n_qubits,
            mask_a: BitVec::from_indices(n_qubits, region_a),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The A mask as a machine word, when the system fits in 64 qubits.
    pub fn mask_a_u64(&self) -> Option<u64> {
        self.mask_a.as_u64()
    }

    pub fn mask_a(&self) -> &BitVec {
        &self.mask_a
    }

    pub fn mask_b(&self) -> BitVec {
        let mut m = BitVec::zeros(self.n_qubits);
        for q in 0..self.n_qubits {
            m.set(q, !self.mask_a.get(q));
        }
        m
    }

    pub fn contains(&self, q: usize) -> bool {
        self.mask_a.get(q)
    }

    /// Region A as an ascending index list.
    pub fn region_a(&self) -> Vec<usize> {
        self.mask_a.iter_ones().collect()
    }
}

/// Symmetric k×k GF(2) matrix of restricted anticommutation, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationMatrix {
    k: usize,
    rows: Vec<BitVec>,
}

impl CommutationMatrix {
    pub fn zero(k: usize) -> Self {
        CommutationMatrix {
            k,
            rows: (0..k).map(|_| BitVec::zeros(k)).collect(),
        }
    }

    /// Build from an undirected edge list (`C_ij = 1` exactly on the edges).
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Self {
        let mut c = Self::zero(k);
        for &(i, j) in edges {
            c.set_pair(i, j);
        }
        c
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Set `C_ij = C_ji = 1`; the diagonal stays zero.
    pub fn set_pair(&mut self, i: usize, j: usize) {
        assert!(i != j, "the anticommutation matrix has zero diagonal");
        self.rows[i].set(j, true);
        self.rows[j].set(i, true);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Undirected edges (i < j) with `C_ij = 1`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in self.rows[i].iter_ones() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Row `i` truncated to columns `j > i`, as a machine word.
    ///
    /// Only meaningful when `k` fits in 64 bits; the sector-table operations
    /// guard `k` far below that.
    pub(crate) fn upper_row_u64(&self, i: usize) -> u64 {
        let full = self.rows[i]
            .as_u64()
            .expect("anticommutation matrix wider than 64 generators");
        full & !((1u64 << i) | (1u64 << i).wrapping_sub(1))
    }

    /// The number of set entries in each row (useful for structure checks).
    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones()).collect()
    }

    /// The principal submatrix on the listed generator indices, in the order
    /// given (callers pass ascending index lists).
    pub fn submatrix(&self, indices: &[usize]) -> CommutationMatrix {
        let mut sub = CommutationMatrix::zero(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if b > a && self.get(i, j) {
                    sub.set_pair(a, b);
                }
            }
        }
        sub
    }
}

/// A set of independent commuting stabilizer generators with couplings and a cut.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerModel {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
    couplings: Vec<f64>,
    bipartition: Bipartition,
}

impl StabilizerModel {
    /// Validate and build a model.
    ///
    /// Checks operator sizes, `|t| ≤ 1` for every coupling, pairwise global
    /// commutation, and GF(2) independence of the generator set.
    pub fn try_new(
        generators: Vec<PauliOperator>,
        couplings: Vec<f64>,
        bipartition: Bipartition,
    ) -> Result<Self> {
        let n_qubits = bipartition.n_qubits();
        for g in &generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::SizeMismatch {
                    expected: n_qubits,
                    found: g.n_qubits(),
                });
            }
        }
        if couplings.len() != generators.len() {
            return Err(Error::SizeMismatch {
                expected: generators.len(),
                found: couplings.len(),
            });
        }
        for (index, &t) in couplings.iter().enumerate() {
            if !(t.abs() <= 1.0) {
                return Err(Error::CouplingOutOfRange { index, value: t });
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !commutes(&generators[i], &generators[j])? {
                    return Err(Error::NonCommutingGenerators { i, j });
                }
            }
        }
        ensure_independent(&generators, n_qubits)?;
        Ok(StabilizerModel {
            n_qubits,
            generators,
            couplings,
            bipartition,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of generators.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    /// The same model with the couplings replaced (re-validated).
    pub fn with_couplings(&self, couplings: Vec<f64>) -> Result<Self> {
        Self::try_new(
            self.generators.clone(),
            couplings,
            self.bipartition.clone(),
        )
    }

    /// Anticommutation matrix of the generators restricted to region A.
    ///
    /// Because the generators commute globally, restricting to region B gives
    /// the same matrix; `C_ij = 1` marks pairs whose A-side parts anticommute.
    pub fn commutation_matrix(&self) -> CommutationMatrix {
        self.commutation_matrix_on(self.bipartition.mask_a())
    }

    /// Anticommutation matrix computed from the restriction to an explicit
    /// qubit mask (used to cross-check the A-side/B-side identity).
    pub fn commutation_matrix_on(&self, mask: &BitVec) -> CommutationMatrix {
        let restricted: Vec<PauliOperator> = self
            .generators
            .iter()
            .map(|g| g.restrict_mask(mask))
            .collect();
        let mut c = CommutationMatrix::zero(self.k());
        for i in 0..self.k() {
            for j in (i + 1)..self.k() {
                // Sizes already validated, so commutes cannot fail here.
                if !commutes(&restricted[i], &restricted[j]).unwrap() {
                    c.set_pair(i, j);
                }
            }
        }
        c
    }

    /// Split generator indices into bulk (support on one side of the cut only)
    /// and boundary (support straddling the cut).
    pub fn classify_generators(&self) -> (Vec<usize>, Vec<usize>) {
        let mask_a = self.bipartition.mask_a();
        let mask_b = self.bipartition.mask_b();
        let mut bulk = Vec::new();
        let mut boundary = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.touches(mask_a) && g.touches(&mask_b) {
                boundary.push(i);
            } else {
                bulk.push(i);
            }
        }
        (bulk, boundary)
    }
}

/// GF(2) rank of the k×2N symplectic generator matrix.
pub fn independence_rank(generators: &[PauliOperator], n_qubits: usize) -> usize {
    let mut basis: Vec<BitVec> = Vec::new();
    let mut rank = 0;
    for g in generators {
        if reduce_symplectic_row(g, n_qubits, &mut basis) {
            rank += 1;
        }
    }
    rank
}

/// Error with the index of the first redundant generator, if any.
pub fn ensure_independent(generators: &[PauliOperator], n_qubits: usize) -> Result<()> {
    let mut basis: Vec<BitVec> = Vec::new();
    for (index, g) in generators.iter().enumerate() {
        if !reduce_symplectic_row(g, n_qubits, &mut basis) {
            return Err(Error::DependentGenerators { index });
        }
    }
    Ok(())
}

/// Reduce the generator's (X‖Z) row against the pivot basis; if a nonzero
/// remainder survives, push it and report the row as independent.
fn reduce_symplectic_row(g: &PauliOperator, n_qubits: usize, basis: &mut Vec<BitVec>) -> bool {
    let mut row = BitVec::zeros(2 * n_qubits);
    for q in g.x_mask().iter_ones() {
        row.set(q, true);
    }
    for q in g.z_mask().iter_ones() {
        row.set(n_qubits + q, true);
    }
    for b in basis.iter() {
        let pivot = b.lowest_set().unwrap();
        if row.get(pivot) {
            row.xor_assign(b);
        }
    }
    match row.lowest_set() {
        Some(_) => {
            // Keep the basis ordered by pivot so reduction stays a single pass.
            basis.push(row);
            basis.sort_by_key(|b| b.lowest_set().unwrap());
            true
        }
        None => false,
    }
}

/// Synthesize a stabilizer model whose restricted anticommutation matrix is
/// exactly `c`, with all couplings set to 1.
///
/// Each edge (i, j) of `c` gets one region-A qubit carrying X for generator i
/// and Z for generator j, plus a mirror qubit in region B with the same
/// assignment so the generators commute globally. Generators untouched by any
/// edge get a private X on a fresh region-A qubit, which also guarantees
/// independence.
pub fn realize_from_c(c: &CommutationMatrix) -> Result<StabilizerModel> {
    let k = c.k();
    let edges = c.edges();
    let isolated: Vec<usize> = (0..k)
        .filter(|&i| c.row(i).is_zero())
        .collect();
    let n_a = edges.len() + isolated.len();
    let n_qubits = (n_a + edges.len()).max(1);

    let mut xs: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut zs: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (e, &(i, j)) in edges.iter().enumerate() {
        let qubit_a = e;
        let qubit_b = n_a + e;
        xs[i].push(qubit_a);
        xs[i].push(qubit_b);
        zs[j].push(qubit_a);
        zs[j].push(qubit_b);
    }
    for (slot, &i) in isolated.iter().enumerate() {
        xs[i].push(edges.len() + slot);
    }

    let generators: Result<Vec<PauliOperator>> = (0..k)
        .map(|i| PauliOperator::from_supports(n_qubits, &xs[i], &zs[i]))
        .collect();
    let region_a: Vec<usize> = (0..n_a).collect();
    StabilizerModel::try_new(
        generators?,
        vec![1.0; k],
        Bipartition::new(n_qubits, &region_a)?,
    )
}

/// The Bell-pair model: generators X⊗X and Z⊗Z at `t = 1` with qubit 0 as
/// region A. Small enough to know every spectrum value in closed form, so it
/// anchors the exactness tests.
pub fn bell_model() -> StabilizerModel {
    let gens = vec![
        PauliOperator::from_supports(2, &[0, 1], &[]).unwrap(),
        PauliOperator::from_supports(2, &[], &[0, 1]).unwrap(),
    ];
    StabilizerModel::try_new(gens, vec![1.0, 1.0], Bipartition::new(2, &[0]).unwrap()).unwrap()
}

// --- JSON document form -----------------------------------------------------

/// One generator as explicit X/Z support lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GeneratorDoc {
    #[serde(default)]
    x: Vec<usize>,
    #[serde(default)]
    z: Vec<usize>,
}

/// A coupling entry: a number `t ∈ [−1, 1]`, or the string `"inf"` for an
/// infinitely strong coupling (mapped to `t = 1`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CouplingDoc {
    Value(f64),
    Word(String),
}

/// On-disk JSON form of a stabilizer model.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelDoc {
    n_qubits: usize,
    region_a: Vec<usize>,
    generators: Vec<GeneratorDoc>,
    couplings: Vec<CouplingDoc>,
}

impl StabilizerModel {
    /// Parse and validate a model from its JSON document form.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDoc =
            serde_json::from_str(text).map_err(|e| Error::Model(format!("bad model JSON: {e}")))?;
        let generators: Result<Vec<PauliOperator>> = doc
            .generators
            .iter()
            .map(|g| PauliOperator::from_supports(doc.n_qubits, &g.x, &g.z))
            .collect();
        let couplings: Result<Vec<f64>> = doc
            .couplings
            .iter()
            .map(|c| match c {
                CouplingDoc::Value(v) => Ok(*v),
                CouplingDoc::Word(w) if w == "inf" => Ok(1.0),
                CouplingDoc::Word(w) => {
                    Err(Error::Model(format!("unknown coupling word {w:?}")))
                }
            })
            .collect();
        StabilizerModel::try_new(
            generators?,
            couplings?,
            Bipartition::new(doc.n_qubits, &doc.region_a)?,
        )
    }

    /// Serialize to the JSON document form (couplings as plain numbers).
    pub fn to_json(&self) -> String {
        let doc = ModelDoc {
            n_qubits: self.n_qubits,
            region_a: self.bipartition.region_a(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDoc {
                    x: g.x_mask().iter_ones().collect(),
                    z: g.z_mask().iter_ones().collect(),
                })
                .collect(),
            couplings: self.couplings.iter().map(|&t| CouplingDoc::Value(t)).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("model document always serializes")
    }
}
