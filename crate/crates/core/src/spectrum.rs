//! Sector tables and the quantities derived from them: the negativity
//! spectrum, the binegativity spectrum, entanglement negativity, and the PPT
//! entanglement-cost bound report.
//!
//! For a model with `k` independent generators on `N` qubits, the partial
//! transpose of the Gibbs state decomposes over `2^k` sign sectors
//! `θ ∈ {±1}^k`. The table value for sector `θ` is
//!
//! ```text
//! f_t(θ) = Σ_{s ∈ {0,1}^k} ψ(s) Π_i (t_i θ_i)^{s_i},
//! ψ(s)   = (−1)^{Σ_{i<j} s_i C_ij s_j},
//! ```
//!
//! where `C` is the restricted anticommutation matrix. The physical eigenvalue
//! is `f_t(θ)/2^N` with multiplicity `2^{N−k}`. Because `f_t` is the
//! Walsh–Hadamard transform of the weight `w(s) = ψ(s) Π t_i^{s_i}`, the whole
//! table costs `O(k·2^k)` instead of `O(4^k)`.
//!
//! The binegativity spectrum is the dyadic correlation
//! `b(g) = Σ_θ |f_t(θ⊙g)| f_1(θ)` against the zero-temperature table `f_1`;
//! its physical eigenvalue is `b(g)/2^{N+k}`. Both a naive double loop and a
//! transform-based fast path are provided, and the naive path doubles as the
//! oracle for the fast one.
//!
//! Sector bitmask convention: bit `i` of a table index set means `θ_i = −1`.
//! Rendered as a binary string the index reads MSB-first, so generator 0 is
//! the rightmost character.

use crate::error::{Error, Result};
use crate::par;
use crate::pauli::{CommutationMatrix, StabilizerModel};
use serde::{Deserialize, Serialize};

/// Largest `k` for which full `2^k` tables may be materialized.
pub const MAX_TABLE_K: usize = 26;

/// Default relative tolerance deciding whether a binegativity sector counts as
/// negative: a sector is negative only if `b(g) < −ε · max|b|`.
pub const DEFAULT_NEGATIVE_SECTOR_EPS: f64 = 1e-9;

/// Logarithm base for reported entropic quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::Two
    }
}

/// A real value per sign sector `θ ∈ {±1}^k`, with the system size recorded
/// for physical normalization (`/2^N`, multiplicity `2^{N−k}`).
#[derive(Debug, Clone, PartialEq)]
pub struct SectorTable {
    k: usize,
    n_qubits: usize,
    values: Vec<f64>,
}

impl SectorTable {
    pub fn new(k: usize, n_qubits: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != 1usize << k {
            return Err(Error::BadTableLength { len: values.len() });
        }
        Ok(SectorTable { k, n_qubits, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, sector: usize) -> f64 {
        self.values[sector]
    }

    /// Eigenvalue multiplicity shared by every sector.
    pub fn multiplicity(&self) -> f64 {
        exp2_i(self.n_qubits as i32 - self.k as i32)
    }

    /// Physical eigenvalue for one sector of a negativity-spectrum table.
    pub fn physical_value(&self, sector: usize) -> f64 {
        self.values[sector] / exp2_i(self.n_qubits as i32)
    }

    /// Sum over all sectors, in ascending index order.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sum of absolute values over all sectors, in ascending index order.
    pub fn sum_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// Minimum value and its first sector index.
    pub fn min_value(&self) -> (usize, f64) {
        let mut best = (0usize, self.values[0]);
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v < best.1 {
                best = (i, v);
            }
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Rescale so the sector sum equals `2^k`, the normalization produced by
    /// the spectrum engine itself. The scale factor is positive, so signs and
    /// any non-negativity verdict survive unchanged.
    pub fn normalize(&self) -> Result<SectorTable> {
        let sum = self.sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(Error::InvalidSpectrum { sum });
        }
        let scale = exp2_i(self.k as i32) / sum;
        Ok(SectorTable {
            k: self.k,
            n_qubits: self.n_qubits,
            values: self.values.iter().map(|v| v * scale).collect(),
        })
    }

    /// The sector index as an MSB-first binary string of width `k`
    /// (generator 0 is the rightmost character). Width 0 renders as "0".
    pub fn sector_label(&self, sector: usize) -> String {
        sector_label(sector, self.k)
    }

    /// CSV rendering: a versioned header comment, a column line, then one
    /// `sector,value` row per sector in ascending index order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# negspec sector-table v1\n");
        out.push_str(&format!("# k={} n_qubits={}\n", self.k, self.n_qubits));
        out.push_str("sector,value\n");
        for (i, &v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{:.16e}\n", self.sector_label(i), v));
        }
        out
    }

    /// JSON rendering with an explicit schema version.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            sector: String,
            value: f64,
        }
        #[derive(Serialize)]
        struct Doc {
            schema_version: u32,
            kind: &'static str,
            k: usize,
            n_qubits: usize,
            sectors: Vec<Row>,
        }
        let doc = Doc {
            schema_version: 1,
            kind: "sector_table",
            k: self.k,
            n_qubits: self.n_qubits,
            sectors: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| Row {
                    sector: self.sector_label(i),
                    value: v,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("sector table always serializes")
    }
}

/// MSB-first binary rendering of a sector index at width `k` (min width 1).
pub fn sector_label(sector: usize, k: usize) -> String {
    format!("{:0width$b}", sector, width = k.max(1))
}

fn exp2_i(e: i32) -> f64 {
    f64::powi(2.0, e)
}

fn check_same_shape(a: &SectorTable, b: &SectorTable) -> Result<()> {
    if a.k != b.k || a.n_qubits != b.n_qubits {
        return Err(Error::TableShapeMismatch { left: a.k, right: b.k });
    }
    Ok(())
}

fn check_table_k(k: usize) -> Result<()> {
    if k > MAX_TABLE_K {
        return Err(Error::MemoryGuard { k, max: MAX_TABLE_K });
    }
    Ok(())
}

/// The reordering sign `ψ(s) = (−1)^{Σ_{i<j} s_i C_ij s_j}` for the subset `s`.
pub fn sign_psi(s: u64, c: &CommutationMatrix) -> f64 {
    let rows: Vec<u64> = (0..c.k()).map(|i| c.upper_row_u64(i)).collect();
    if psi_parity(s, &rows) {
        -1.0
    } else {
        1.0
    }
}

/// Parity of `Σ_{i<j} s_i C_ij s_j` given precomputed upper-triangular rows.
#[inline]
fn psi_parity(s: u64, upper_rows: &[u64]) -> bool {
    let mut bits = s;
    let mut parity = 0u32;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        parity ^= (upper_rows[i] & s).count_ones();
    }
    parity & 1 == 1
}

/// In-place unnormalized Walsh–Hadamard transform; applying it twice
/// multiplies every entry by the length.
pub fn fwht(values: &mut [f64]) -> Result<()> {
    let n = values.len();
    if n == 0 || n & (n - 1) != 0 {
        return Err(Error::BadTableLength { len: n });
    }
    let mut h = 1;
    while h < n {
        let mut base = 0;
        while base < n {
            for j in base..base + h {
                let a = values[j];
                let b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
            base += 2 * h;
        }
        h *= 2;
    }
    Ok(())
}

/// The negativity-spectrum table `f_t` over all `2^k` sign sectors.
///
/// Computed as the Walsh–Hadamard transform of the weight
/// `w(s) = ψ(s) Π_i t_i^{s_i}`, which costs `O(k·2^k)`. Refuses `k` beyond
/// [`MAX_TABLE_K`]; use the closed-form limit branches for larger systems.
pub fn negativity_spectrum(c: &CommutationMatrix, t: &[f64], n_qubits: usize) -> Result<SectorTable> {
    let k = c.k();
    if t.len() != k {
        return Err(Error::SizeMismatch { expected: k, found: t.len() });
    }
    for (index, &ti) in t.iter().enumerate() {
        if !(ti.abs() <= 1.0) {
            return Err(Error::CouplingOutOfRange { index, value: ti });
        }
    }
    check_table_k(k)?;

    let rows: Vec<u64> = (0..k).map(|i| c.upper_row_u64(i)).collect();
    let mut values = par::map_indices(1usize << k, |s| {
        let s = s as u64;
        let mut bits = s;
        let mut parity = 0u32;
        let mut weight = 1.0f64;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            parity ^= (rows[i] & s).count_ones();
            weight *= t[i];
        }
        if parity & 1 == 1 {
            -weight
        } else {
            weight
        }
    });
    fwht(&mut values)?;
    SectorTable::new(k, n_qubits, values)
}

/// Naive `O(4^k)` binegativity spectrum `b(g) = Σ_θ |f_t(θ⊙g)| f_1(θ)`.
///
/// `f_1` is the zero-temperature table (all couplings at `t = 1`) of the same
/// model. This is the reference implementation; [`binegativity_fwht`] computes
/// the same correlation in `O(k·2^k)`.
pub fn binegativity_spectrum(f_t: &SectorTable, f_1: &SectorTable) -> Result<SectorTable> {
    check_same_shape(f_t, f_1)?;
    let abs_t: Vec<f64> = f_t.values.iter().map(|v| v.abs()).collect();
    let ones = &f_1.values;
    let values = par::map_indices(abs_t.len(), |g| {
        let mut acc = 0.0;
        for (theta, f1) in ones.iter().enumerate() {
            acc += abs_t[theta ^ g] * f1;
        }
        acc
    });
    SectorTable::new(f_t.k, f_t.n_qubits, values)
}

/// Fast-transform binegativity spectrum: transform `|f_t|` and `f_1`,
/// multiply pointwise, transform back, and divide by `2^k`.
pub fn binegativity_fwht(f_t: &SectorTable, f_1: &SectorTable) -> Result<SectorTable> {
    check_same_shape(f_t, f_1)?;
    let n = f_t.values.len();
    let mut abs_t: Vec<f64> = f_t.values.iter().map(|v| v.abs()).collect();
    let mut ones = f_1.values.clone();
    fwht(&mut abs_t)?;
    fwht(&mut ones)?;
    for (a, b) in abs_t.iter_mut().zip(ones.iter()) {
        *a *= b;
    }
    fwht(&mut abs_t)?;
    let inv = 1.0 / n as f64;
    for v in abs_t.iter_mut() {
        *v *= inv;
    }
    SectorTable::new(f_t.k, f_t.n_qubits, abs_t)
}

/// Entanglement negativity `log(Tr|ρ^Γ|) = log(2^{−k} Σ_θ |f_t(θ)|)` in the
/// chosen base. Independent of `N`.
pub fn entanglement_negativity(f_t: &SectorTable, base: LogBase) -> f64 {
    base.log(trace_norm(f_t))
}

/// `Tr|ρ^Γ| = 2^{−k} Σ_θ |f_t(θ)|`.
pub fn trace_norm(f_t: &SectorTable) -> f64 {
    f_t.sum_abs() / exp2_i(f_t.k as i32)
}

/// Bounds on the PPT entanglement cost derived from one model's tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PptReport {
    /// Entanglement negativity in `log_base` units.
    pub e_n: f64,
    /// `Tr|ρ^Γ|`.
    pub trace_norm: f64,
    /// Minimum binegativity eigenvalue `min_g b(g)/2^{N+k}`.
    pub lambda_min: f64,
    /// `Z(ρ) = Tr|ρ^Γ| + 2^N · max(0, −λ_min)`; equals `trace_norm` exactly
    /// when no sector is negative beyond tolerance.
    pub z_rho: f64,
    /// `log Z(ρ)` in `log_base` units; upper bound on the PPT cost.
    pub log_z: f64,
    /// True when the binegativity spectrum is non-negative within tolerance,
    /// which pins the PPT entanglement cost to `e_n`.
    pub cost_equals_negativity: bool,
    /// Relative tolerance used for the sign verdict.
    pub tolerance_used: f64,
    /// Label of the logarithm base ("2" or "e").
    pub log_base: LogBase,
}

impl PptReport {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            schema_version: u32,
            kind: &'static str,
            #[serde(flatten)]
            report: &'a PptReport,
        }
        serde_json::to_string_pretty(&Doc {
            schema_version: 1,
            kind: "ppt_report",
            report: self,
        })
        .expect("report always serializes")
    }
}

/// Assemble the PPT-cost bound report from a negativity table and the matching
/// binegativity table.
///
/// A sector counts as negative only if `b(g) < −tolerance · max_g|b(g)|`; when
/// none does, `z_rho` is set to `trace_norm` exactly so the two bounds
/// coincide bit-for-bit.
pub fn ppt_report(
    f_t: &SectorTable,
    b: &SectorTable,
    tolerance: f64,
    base: LogBase,
) -> Result<PptReport> {
    check_same_shape(f_t, b)?;
    let tn = trace_norm(f_t);
    let e_n = base.log(tn);
    let (_, b_min) = b.min_value();
    let lambda_min = b_min / exp2_i((b.n_qubits + b.k) as i32);
    let negative = b_min < -tolerance * b.max_abs();
    let z_rho = if negative {
        tn + (-b_min) / exp2_i(b.k as i32)
    } else {
        tn
    };
    Ok(PptReport {
        e_n,
        trace_norm: tn,
        lambda_min,
        z_rho,
        log_z: base.log(z_rho),
        cost_equals_negativity: !negative,
        tolerance_used: tolerance,
        log_base: base,
    })
}

/// The bulk part of a factorized spectrum: generators whose support stays on
/// one side of the cut contribute a manifestly non-negative per-sector factor.
///
/// With bulk couplings `t_i` and bulk sector signs `g_i`, the full tables
/// factorize exactly as
///
/// ```text
/// f_full(θ)   = Π_{i∈bulk} (1 + t_i θ_i) · f_boundary(θ_∂)
/// b_full(g)   = 2^{n_bulk} Π_{i∈bulk} (1 + t_i g_i) · b_boundary(g_∂)
/// ```
///
/// so every sign verdict is decided by the boundary table alone.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkFactor {
    bulk_indices: Vec<usize>,
    boundary_indices: Vec<usize>,
    bulk_couplings: Vec<f64>,
}

impl BulkFactor {
    pub fn bulk_indices(&self) -> &[usize] {
        &self.bulk_indices
    }

    pub fn boundary_indices(&self) -> &[usize] {
        &self.boundary_indices
    }

    /// Split a full-model sector mask into (bulk mask, boundary mask), each
    /// compacted over its own index list in ascending order.
    pub fn split_sector(&self, full: usize) -> (usize, usize) {
        let gather = |indices: &[usize]| {
            indices
                .iter()
                .enumerate()
                .fold(0usize, |acc, (pos, &gen)| acc | (((full >> gen) & 1) << pos))
        };
        (gather(&self.bulk_indices), gather(&self.boundary_indices))
    }

    /// `Π_{i∈bulk} (1 + t_i θ_i)` for the compacted bulk sector mask.
    pub fn spectrum_factor(&self, bulk_sector: usize) -> f64 {
        self.bulk_couplings
            .iter()
            .enumerate()
            .map(|(pos, &t)| {
                let sign = if (bulk_sector >> pos) & 1 == 1 { -1.0 } else { 1.0 };
                1.0 + t * sign
            })
            .product()
    }

    /// `2^{n_bulk} Π_{i∈bulk} (1 + t_i g_i)` for the compacted bulk mask.
    pub fn binegativity_factor(&self, bulk_sector: usize) -> f64 {
        exp2_i(self.bulk_indices.len() as i32) * self.spectrum_factor(bulk_sector)
    }
}

/// Negativity spectrum over the boundary generators only, plus the bulk factor
/// completing the exact factorization of the full tables.
pub fn boundary_reduced_spectrum(m: &StabilizerModel) -> Result<(SectorTable, BulkFactor)> {
    let (bulk, boundary) = m.classify_generators();
    let c = m.commutation_matrix().submatrix(&boundary);
    let t: Vec<f64> = boundary.iter().map(|&i| m.couplings()[i]).collect();
    let table = negativity_spectrum(&c, &t, m.n_qubits())?;
    let factor = BulkFactor {
        bulk_couplings: bulk.iter().map(|&i| m.couplings()[i]).collect(),
        bulk_indices: bulk,
        boundary_indices: boundary,
    };
    Ok((table, factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{bell_model, Bipartition, PauliOperator, StabilizerModel};

    fn bell_tables() -> (SectorTable, SectorTable) {
        let m = bell_model();
        let c = m.commutation_matrix();
        let f_t = negativity_spectrum(&c, m.couplings(), m.n_qubits()).unwrap();
        let f_1 = negativity_spectrum(&c, &[1.0, 1.0], m.n_qubits()).unwrap();
        (f_t, f_1)
    }

    #[test]
    fn sign_psi_examples() {
        let c2 = CommutationMatrix::from_edges(2, &[(0, 1)]);
        assert_eq!(sign_psi(0, &c2), 1.0);
        assert_eq!(sign_psi(0b11, &c2), -1.0);
        assert_eq!(sign_psi(0b01, &c2), 1.0);

        // Path 0–1–2 with all three generators flipped: two anticommuting
        // pairs, so the sign squares away.
        let c3 = CommutationMatrix::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(sign_psi(0b111, &c3), 1.0);
        assert_eq!(sign_psi(0b011, &c3), -1.0);
    }

    #[test]
    fn bell_spectrum_is_exact() {
        let (f_t, _) = bell_tables();
        assert_eq!(f_t.values(), &[2.0, 2.0, 2.0, -2.0]);
        assert_eq!(f_t.physical_value(0), 0.5);
        assert_eq!(f_t.physical_value(3), -0.5);
        assert_eq!(f_t.multiplicity(), 1.0);
        assert_eq!(f_t.sum(), 4.0);
    }

    #[test]
    fn zero_coupling_is_flat() {
        let c = CommutationMatrix::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let f = negativity_spectrum(&c, &[0.0; 4], 8).unwrap();
        assert!(f.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn trace_sums_to_2k() {
        let c = CommutationMatrix::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let f = negativity_spectrum(&c, &[0.9, -0.4, 0.2], 6).unwrap();
        assert!((f.sum() - 8.0).abs() < 1e-12 * 8.0);
    }

    #[test]
    fn coupling_and_size_guards() {
        let c = CommutationMatrix::zero(2);
        assert!(matches!(
            negativity_spectrum(&c, &[1.2, 0.0], 2),
            Err(Error::CouplingOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            negativity_spectrum(&c, &[0.0], 2),
            Err(Error::SizeMismatch { .. })
        ));
        let big = CommutationMatrix::zero(27);
        assert!(matches!(
            negativity_spectrum(&big, &[0.0; 27], 30),
            Err(Error::MemoryGuard { k: 27, max: MAX_TABLE_K })
        ));
    }

    #[test]
    fn fwht_small_cases() {
        let mut v = vec![1.0, 0.0];
        fwht(&mut v).unwrap();
        assert_eq!(v, vec![1.0, 1.0]);

        let mut delta = vec![0.0; 8];
        delta[0] = 1.0;
        fwht(&mut delta).unwrap();
        assert!(delta.iter().all(|&x| x == 1.0));

        let x = vec![0.3, -1.25, 2.0, 0.75, -0.5, 1.5, 0.0, 4.0];
        let mut y = x.clone();
        fwht(&mut y).unwrap();
        fwht(&mut y).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((8.0 * a - b).abs() < 1e-12);
        }

        assert!(fwht(&mut [1.0, 2.0, 3.0]).is_err());
        assert!(fwht(&mut []).is_err());
    }

    #[test]
    fn bell_binegativity_flat_half() {
        let (f_t, f_1) = bell_tables();
        let b = binegativity_spectrum(&f_t, &f_1).unwrap();
        assert_eq!(b.values(), &[8.0, 8.0, 8.0, 8.0]);
        // Physical eigenvalues b/2^{N+k} = 8/16.
        for g in 0..4 {
            assert_eq!(b.value(g) / 16.0, 0.5);
        }
        let fast = binegativity_fwht(&f_t, &f_1).unwrap();
        assert_eq!(fast.values(), b.values());
    }

    #[test]
    fn infinite_temperature_binegativity_is_flat() {
        let (_, f_1) = bell_tables();
        let c = bell_model().commutation_matrix();
        let f_0 = negativity_spectrum(&c, &[0.0, 0.0], 2).unwrap();
        let b = binegativity_spectrum(&f_0, &f_1).unwrap();
        assert_eq!(b.values(), &[4.0, 4.0, 4.0, 4.0]);
    }

    #[test]
    fn delta_reference_reindexes_abs() {
        let (f_t, _) = bell_tables();
        let delta = SectorTable::new(2, 2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let b = binegativity_spectrum(&f_t, &delta).unwrap();
        assert_eq!(b.values(), &[2.0, 2.0, 2.0, 2.0]);

        let skewed = SectorTable::new(2, 2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let b = binegativity_spectrum(&skewed, &delta).unwrap();
        assert_eq!(b.values(), &[0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn all_ones_convolution() {
        let ones = SectorTable::new(3, 3, vec![1.0; 8]).unwrap();
        let b = binegativity_spectrum(&ones, &ones).unwrap();
        assert!(b.values().iter().all(|&v| v == 8.0));
        let fast = binegativity_fwht(&ones, &ones).unwrap();
        assert!(fast.values().iter().all(|&v| (v - 8.0).abs() < 1e-12));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = SectorTable::new(2, 2, vec![1.0; 4]).unwrap();
        let b = SectorTable::new(3, 3, vec![1.0; 8]).unwrap();
        assert!(matches!(
            binegativity_spectrum(&a, &b),
            Err(Error::TableShapeMismatch { left: 2, right: 3 })
        ));
        assert!(binegativity_fwht(&a, &b).is_err());
    }

    #[test]
    fn negativity_values() {
        let (f_t, _) = bell_tables();
        assert_eq!(entanglement_negativity(&f_t, LogBase::Two), 1.0);
        assert!((entanglement_negativity(&f_t, LogBase::E) - std::f64::consts::LN_2).abs() < 1e-15);

        let c = CommutationMatrix::zero(2);
        let flat = negativity_spectrum(&c, &[0.0, 0.0], 2).unwrap();
        assert_eq!(entanglement_negativity(&flat, LogBase::Two), 0.0);
    }

    #[test]
    fn negativity_additive_over_blocks() {
        // Two independent Bell pairs: block-diagonal C on four generators.
        let c = CommutationMatrix::from_edges(4, &[(0, 1), (2, 3)]);
        let f = negativity_spectrum(&c, &[1.0; 4], 4).unwrap();
        assert_eq!(entanglement_negativity(&f, LogBase::Two), 2.0);
    }

    #[test]
    fn report_on_bell_and_injection() {
        let (f_t, f_1) = bell_tables();
        let b = binegativity_spectrum(&f_t, &f_1).unwrap();
        let r = ppt_report(&f_t, &b, DEFAULT_NEGATIVE_SECTOR_EPS, LogBase::Two).unwrap();
        assert_eq!(r.e_n, 1.0);
        assert_eq!(r.trace_norm, 2.0);
        assert_eq!(r.lambda_min, 0.5);
        assert!(r.cost_equals_negativity);
        assert_eq!(r.z_rho, 2.0);
        assert_eq!(r.log_z, 1.0);

        // Artificially negate one sector: the upper bound must detach.
        let mut bad = b.values().to_vec();
        bad[3] = -bad[3];
        let bad = SectorTable::new(2, 2, bad).unwrap();
        let r = ppt_report(&f_t, &bad, DEFAULT_NEGATIVE_SECTOR_EPS, LogBase::Two).unwrap();
        assert!(!r.cost_equals_negativity);
        assert_eq!(r.lambda_min, -0.5);
        assert_eq!(r.z_rho, 2.0 + 8.0 / 4.0);
        assert!(r.log_z > r.e_n);
    }

    #[test]
    fn report_at_infinite_temperature() {
        let c = CommutationMatrix::from_edges(2, &[(0, 1)]);
        let f_0 = negativity_spectrum(&c, &[0.0, 0.0], 2).unwrap();
        let f_1 = negativity_spectrum(&c, &[1.0, 1.0], 2).unwrap();
        let b = binegativity_spectrum(&f_0, &f_1).unwrap();
        let r = ppt_report(&f_0, &b, DEFAULT_NEGATIVE_SECTOR_EPS, LogBase::Two).unwrap();
        assert_eq!(r.e_n, 0.0);
        assert_eq!(r.log_z, 0.0);
        assert!(r.cost_equals_negativity);
    }

    #[test]
    fn boundary_reduction_matches_full_for_bell() {
        let m = bell_model();
        let (table, factor) = boundary_reduced_spectrum(&m).unwrap();
        let full = negativity_spectrum(&m.commutation_matrix(), m.couplings(), 2).unwrap();
        assert_eq!(table.values(), full.values());
        assert!(factor.bulk_indices().is_empty());
        assert_eq!(factor.spectrum_factor(0), 1.0);
        assert_eq!(factor.binegativity_factor(0), 1.0);
    }

    #[test]
    fn boundary_reduction_of_pure_bulk_model() {
        let m = StabilizerModel::try_new(
            vec![PauliOperator::single_x(1, 0).unwrap()],
            vec![0.7],
            Bipartition::new(1, &[0]).unwrap(),
        )
        .unwrap();
        let (table, factor) = boundary_reduced_spectrum(&m).unwrap();
        assert_eq!(table.values(), &[1.0]);
        assert_eq!(factor.bulk_indices(), &[0]);
        // θ_0 = +1 gives 1 + t, θ_0 = −1 gives 1 − t: both non-negative.
        assert!((factor.spectrum_factor(0) - 1.7).abs() < 1e-15);
        assert!((factor.spectrum_factor(1) - 0.3).abs() < 1e-15);
        assert!((factor.binegativity_factor(1) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn split_sector_gathers_bits() {
        let factor = BulkFactor {
            bulk_indices: vec![0, 3],
            boundary_indices: vec![1, 2],
            bulk_couplings: vec![0.5, 0.5],
        };
        // Full mask 0b1010 sets generators 1 and 3.
        let (bulk, boundary) = factor.split_sector(0b1010);
        assert_eq!(bulk, 0b10);
        assert_eq!(boundary, 0b01);
    }

    #[test]
    fn labels_and_serialization() {
        let t = SectorTable::new(3, 3, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, -7.0]).unwrap();
        assert_eq!(t.sector_label(0b101), "101");
        assert_eq!(t.sector_label(1), "001");
        let csv = t.to_csv();
        assert!(csv.starts_with("# negspec sector-table v1\n"));
        assert!(csv.contains("\nsector,value\n"));
        assert!(csv.contains("001,"));
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["sectors"][7]["sector"], "111");
        assert_eq!(json["sectors"][7]["value"], -7.0);
    }

    #[test]
    fn normalize_examples() {
        let t = SectorTable::new(2, 2, vec![2.0, 2.0, 2.0, -2.0]).unwrap();
        assert_eq!(t.normalize().unwrap().values(), t.values());
        let doubled = SectorTable::new(2, 2, vec![4.0, 4.0, 4.0, -4.0]).unwrap();
        assert_eq!(doubled.normalize().unwrap().values(), t.values());
        let zero = SectorTable::new(1, 1, vec![1.0, -1.0]).unwrap();
        assert!(matches!(zero.normalize(), Err(Error::InvalidSpectrum { .. })));
    }
}
