//! Classical spin-model evaluators for boundary negativity spectra.
//!
//! Each boundary model's sector table has an equivalent classical
//! representation: a 1d Ising ring with on-site fields (2d boundary), a 2d
//! Ising model with on-site fields (3d boundary), and a 3d Ising gauge theory
//! coupled to matter fields (4d boundary). A sector assigns a sign `A = ±1`
//! per X-type generator (a spin insertion at that cell) and `B = ±1` per
//! Z-type generator (the sign of that coupling). The raw sector value is
//!
//! ```text
//! V(A, B) = Σ_{τ = ±1} Π_cells τ^{(1−A)/2}
//!           · exp(−K_A Σ_cells (1−τ)/2 + βλ_B Σ_couplings B · Πτ)
//! ```
//!
//! with the field strength `K_A = −log tanh(βλ_A)`. Up to a positive,
//! sector-independent constant this reproduces the engine's negativity table,
//! so [`normalize_table`] makes the two routes comparable entrywise.
//!
//! The infinite-coupling branches evaluate the frustration-free limits in
//! closed form; their outputs are non-negative by construction for the
//! binegativity quantities.
//!
//! Sector bitmask convention matches the engine: bit set means sign −1, with
//! the A block in the low bits (A-generators come first in builder order).

use crate::error::{Error, Result};
use crate::lattice::{BoundaryModel, Geometry3, SquareLattice};
use crate::par;
use crate::spectrum::{fwht, SectorTable, MAX_TABLE_K};

/// Sites a 2d Ising enumeration will sweep at most (`2^{L²}` configurations).
pub const MAX_ENUM_2D_L: usize = 4;
/// Links a gauge-theory general-branch enumeration will sweep at most.
pub const MAX_ENUM_GAUGE_LINKS: usize = 20;
/// Links the matter-free closed form will sweep at most; slightly wider than
/// the general branch so the periodic L = 2 lattice stays reachable through
/// the limit branch even though its full table is refused.
pub const MAX_CLOSED_FORM_LINKS: usize = 24;

/// Field strength `K_A = −log tanh(βλ_A)`; zero for an infinite argument.
pub fn field_strength(beta_lambda_a: f64) -> Result<f64> {
    if beta_lambda_a.is_nan() || beta_lambda_a <= 0.0 {
        return Err(Error::FieldStrengthUndefined { value: beta_lambda_a });
    }
    if beta_lambda_a.is_infinite() {
        return Ok(0.0);
    }
    Ok(-beta_lambda_a.tanh().ln())
}

/// Evaluator parameters: the on-site field strength and the coupling scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    /// `K_A ≥ 0`; zero means `βλ_A = ∞`.
    pub k_a: f64,
    /// `βλ_B ≥ 0`; may be infinite, but the general-branch evaluators then
    /// refuse and the closed forms take over.
    pub beta_lambda_b: f64,
}

impl FieldParams {
    /// Derive parameters from the physical couplings `βλ_A` and `βλ_B`.
    pub fn from_beta_lambdas(beta_lambda_a: f64, beta_lambda_b: f64) -> Result<Self> {
        let k_a = field_strength(beta_lambda_a)?;
        if beta_lambda_b.is_nan() || beta_lambda_b < 0.0 {
            return Err(Error::BuilderArg(format!(
                "beta*lambda_B must be >= 0, got {beta_lambda_b}"
            )));
        }
        Ok(FieldParams { k_a, beta_lambda_b })
    }

    fn require_finite(&self) -> Result<()> {
        if self.k_a.is_finite() && self.beta_lambda_b.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFiniteParameter)
        }
    }
}

/// Sign assignment for one sector: which A cells carry a spin insertion and
/// which B couplings are negated. Bit set means sign −1; bits beyond the
/// evaluator's cell count are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsingSector {
    a_neg: u64,
    b_neg: u64,
}

impl IsingSector {
    pub fn all_plus() -> Self {
        IsingSector { a_neg: 0, b_neg: 0 }
    }

    pub fn from_masks(a_neg: u64, b_neg: u64) -> Self {
        IsingSector { a_neg, b_neg }
    }

    /// Split an engine table index into the A block (low `n_a` bits) and the
    /// B block (remaining bits).
    pub fn from_table_index(sector: usize, n_a: usize) -> Self {
        IsingSector {
            a_neg: (sector as u64) & ((1u64 << n_a) - 1),
            b_neg: (sector as u64) >> n_a,
        }
    }

    pub fn table_index(&self, n_a: usize) -> usize {
        (self.a_neg | (self.b_neg << n_a)) as usize
    }

    pub fn a_neg_mask(&self) -> u64 {
        self.a_neg
    }

    pub fn b_neg_mask(&self) -> u64 {
        self.b_neg
    }

    /// Product of the A signs, `Π_i A_i`.
    pub fn a_product(&self, n_a: usize) -> f64 {
        if (self.a_neg & mask_of(n_a)).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// Product of the B signs, `Π_j B_j`.
    pub fn b_product(&self, n_b: usize) -> f64 {
        if (self.b_neg & mask_of(n_b)).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// 1d Ising ring value via an `O(L)` product of 2×2 transfer matrices.
///
/// Site matrices carry the field weight and any spin insertion; bond matrices
/// carry `exp(±βλ_B B_i)`. Each step rescales by the max-norm with the log of
/// the scale accumulated separately, so large couplings cannot overflow
/// mid-product.
pub fn eval_1d_transfer(l: usize, params: &FieldParams, sector: &IsingSector) -> Result<f64> {
    if l < 2 {
        return Err(Error::BuilderArg(format!("ring needs L >= 2, got {l}")));
    }
    params.require_finite()?;
    let t_field = (-params.k_a).exp();
    let up = params.beta_lambda_b.exp();
    let down = (-params.beta_lambda_b).exp();

    // Row/column index 0 is spin +1, index 1 is spin −1.
    let mut m = [[1.0f64, 0.0], [0.0, 1.0]];
    let mut log_scale = 0.0f64;
    for i in 0..l {
        let a = if (sector.a_neg >> i) & 1 == 1 { -1.0 } else { 1.0 };
        let site = [1.0, a * t_field];
        let (same, cross) = if (sector.b_neg >> i) & 1 == 1 {
            (down, up)
        } else {
            (up, down)
        };
        let mut next = [[0.0f64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                // (M · D_i · E_i)[r][c] = Σ_s M[r][s] site[s] E[s][c]
                let mut acc = 0.0;
                for s in 0..2 {
                    let bond = if s == c { same } else { cross };
                    acc += m[r][s] * site[s] * bond;
                }
                next[r][c] = acc;
            }
        }
        m = next;
        let scale = m
            .iter()
            .flatten()
            .fold(0.0f64, |mx, v| mx.max(v.abs()));
        if scale == 0.0 {
            return Ok(0.0);
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v /= scale;
            }
        }
        log_scale += scale.ln();
    }
    Ok((m[0][0] + m[1][1]) * log_scale.exp())
}

/// Shared 2d Ising sweep: `Σ_τ (insertion sign) · e^{−K_A·(#down)} ·
/// e^{βλ_B Σ_links B τ τ'}` over all `2^{L²}` spin configurations.
fn ising_2d_sum(lattice: &SquareLattice, k_a: f64, beta_lambda_b: f64, sector: &IsingSector) -> f64 {
    let n = lattice.n_sites();
    let bonds = lattice.links();
    let field: Vec<f64> = (0..=n).map(|d| (-k_a * d as f64).exp()).collect();
    let bond_tab: Vec<f64> = (0..=bonds.len())
        .map(|c| (beta_lambda_b * (bonds.len() as f64 - 2.0 * c as f64)).exp())
        .collect();
    let mut acc = 0.0;
    for tau in 0..(1u64 << n) {
        let mut flipped = 0usize;
        for (e, &(s1, s2)) in bonds.iter().enumerate() {
            let disagree = ((tau >> s1) ^ (tau >> s2)) & 1;
            flipped += (disagree ^ ((sector.b_neg >> e) & 1)) as usize;
        }
        let sign = if (tau & sector.a_neg).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        };
        acc += sign * field[tau.count_ones() as usize] * bond_tab[flipped];
    }
    acc
}

/// 2d Ising value by direct enumeration over the `L×L` periodic lattice.
pub fn eval_2d_enum(l: usize, params: &FieldParams, sector: &IsingSector) -> Result<f64> {
    if l < 2 {
        return Err(Error::BuilderArg(format!("lattice needs L >= 2, got {l}")));
    }
    if l > MAX_ENUM_2D_L {
        return Err(Error::EnumerationGuard {
            what: format!("2d Ising enumeration over {} sites", l * l),
            limit: MAX_ENUM_2D_L * MAX_ENUM_2D_L,
        });
    }
    params.require_finite()?;
    Ok(ising_2d_sum(
        &SquareLattice::new(l),
        params.k_a,
        params.beta_lambda_b,
        sector,
    ))
}

/// Shared gauge-theory sweep over link spins: `Σ_τ (insertion sign) ·
/// e^{−K_A·(#down links)} · e^{βλ_B Σ_p B_p Π_{l∈∂p} τ_l}`.
fn gauge_3d_sum(geometry: &Geometry3, k_a: f64, beta_lambda_b: f64, sector: &IsingSector) -> f64 {
    let nl = geometry.n_links();
    let plaq_masks: Vec<u64> = geometry
        .plaquettes()
        .iter()
        .map(|p| p.iter().fold(0u64, |m, &e| m | (1u64 << e)))
        .collect();
    let field: Vec<f64> = (0..=nl).map(|d| (-k_a * d as f64).exp()).collect();
    let bond_tab: Vec<f64> = (0..=plaq_masks.len())
        .map(|c| (beta_lambda_b * (plaq_masks.len() as f64 - 2.0 * c as f64)).exp())
        .collect();
    let mut acc = 0.0;
    for tau in 0..(1u64 << nl) {
        let mut flipped = 0usize;
        for (p, &mask) in plaq_masks.iter().enumerate() {
            let parity = (tau & mask).count_ones() & 1;
            flipped += (parity as u64 ^ ((sector.b_neg >> p) & 1)) as usize;
        }
        let sign = if (tau & sector.a_neg).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        };
        acc += sign * field[tau.count_ones() as usize] * bond_tab[flipped];
    }
    acc
}

/// 3d Ising gauge theory with matter fields, by direct link-spin enumeration.
pub fn eval_3d_gauge_enum(
    geometry: &Geometry3,
    params: &FieldParams,
    sector: &IsingSector,
) -> Result<f64> {
    if geometry.n_links() > MAX_ENUM_GAUGE_LINKS {
        return Err(Error::EnumerationGuard {
            what: format!("gauge enumeration over {} links", geometry.n_links()),
            limit: MAX_ENUM_GAUGE_LINKS,
        });
    }
    params.require_finite()?;
    Ok(gauge_3d_sum(
        geometry,
        params.k_a,
        params.beta_lambda_b,
        sector,
    ))
}

fn check_k_a(k_a: f64) -> Result<()> {
    if k_a.is_finite() && k_a >= 0.0 {
        Ok(())
    } else {
        Err(Error::BuilderArg(format!(
            "field strength must be finite and >= 0, got {k_a}"
        )))
    }
}

/// Solve the ring constraint `τ_i τ_{i+1} = B_i` by walking the spanning path
/// and checking the closing bond; returns the down-spin mask, or None when the
/// sector is frustrated (`Π B_i = −1`).
fn ring_solution(l: usize, b_neg: u64) -> Option<u64> {
    let mut tau_down = 0u64;
    let mut down = false;
    for i in 0..l - 1 {
        down ^= (b_neg >> i) & 1 == 1;
        if down {
            tau_down |= 1 << (i + 1);
        }
    }
    // Closing bond: τ_{L−1} τ_0 must equal B_{L−1}.
    let closing_ok = down == ((b_neg >> (l - 1)) & 1 == 1);
    if closing_ok {
        Some(tau_down)
    } else {
        None
    }
}

/// Negativity-spectrum value of the 2d boundary model in the plaquette-locked
/// limit (`βλ_B → ∞`): only the two frustration-free ring configurations
/// survive, and a frustrated sector is exactly zero.
pub fn closed_form_2d_spectrum_infinite_b(
    l: usize,
    k_a: f64,
    sector: &IsingSector,
) -> Result<f64> {
    if l < 2 {
        return Err(Error::BuilderArg(format!("ring needs L >= 2, got {l}")));
    }
    check_k_a(k_a)?;
    let Some(tau_down) = ring_solution(l, sector.b_neg) else {
        return Ok(0.0);
    };
    let n_down = tau_down.count_ones() as f64;
    // Insertion product Π_{i: A_i=−1} τ_i over the solved configuration.
    let insertion = if (tau_down & sector.a_neg).count_ones() & 1 == 1 {
        -1.0
    } else {
        1.0
    };
    let pa = sector.a_product(l);
    Ok(insertion * ((-k_a * n_down).exp() + pa * (-k_a * (l as f64 - n_down)).exp()))
}

/// Binegativity value of the 2d boundary model in the plaquette-locked limit:
/// `2^L · |e^{−K_A n_↓} + (Π a_i) e^{−K_A n_↑}|` on the ring configuration
/// solving `τ_i τ_{i+1} = b_i`, and exactly zero for a frustrated sector.
/// Non-negative for every sector by construction.
pub fn closed_form_2d_binegativity_infinite_b(
    l: usize,
    k_a: f64,
    sector: &IsingSector,
) -> Result<f64> {
    if l < 2 {
        return Err(Error::BuilderArg(format!("ring needs L >= 2, got {l}")));
    }
    check_k_a(k_a)?;
    let Some(tau_down) = ring_solution(l, sector.b_neg) else {
        return Ok(0.0);
    };
    let n_down = tau_down.count_ones() as f64;
    let pa = sector.a_product(l);
    let two = ((-k_a * n_down).exp() + pa * (-k_a * (l as f64 - n_down)).exp()).abs();
    Ok((l as f64).exp2() * two)
}

/// Binegativity value of the 3d boundary model with point-like excitations
/// forbidden (`βλ_A → ∞`): the absolute value of a 2d Ising correlation with
/// insertions `a` and coupling signs `b`. Non-negative by construction.
pub fn closed_form_3d_point_forbidden(
    l: usize,
    beta_lambda_b: f64,
    sector: &IsingSector,
) -> Result<f64> {
    if l < 2 {
        return Err(Error::BuilderArg(format!("lattice needs L >= 2, got {l}")));
    }
    if l > MAX_ENUM_2D_L {
        return Err(Error::EnumerationGuard {
            what: format!("2d Ising enumeration over {} sites", l * l),
            limit: MAX_ENUM_2D_L * MAX_ENUM_2D_L,
        });
    }
    if !beta_lambda_b.is_finite() {
        return Err(Error::NonFiniteParameter);
    }
    Ok(ising_2d_sum(&SquareLattice::new(l), 0.0, beta_lambda_b, sector).abs())
}

/// Binegativity value of the 4d boundary model with matter excitations
/// forbidden (`βλ_A → ∞`): the absolute value of a pure gauge-theory
/// correlation with link insertions `a` and plaquette coupling signs `b`.
/// Non-negative by construction.
pub fn closed_form_4d_matter_free(
    geometry: &Geometry3,
    beta_lambda_b: f64,
    sector: &IsingSector,
) -> Result<f64> {
    if geometry.n_links() > MAX_CLOSED_FORM_LINKS {
        return Err(Error::EnumerationGuard {
            what: format!("closed-form sweep over {} links", geometry.n_links()),
            limit: MAX_CLOSED_FORM_LINKS,
        });
    }
    if !beta_lambda_b.is_finite() {
        return Err(Error::NonFiniteParameter);
    }
    Ok(gauge_3d_sum(geometry, 0.0, beta_lambda_b, sector).abs())
}

/// Rescale a raw evaluator table so its sector sum is `2^k`, matching the
/// engine normalization. The scale is positive, so signs are untouched.
pub fn normalize_table(raw: &SectorTable) -> Result<SectorTable> {
    raw.normalize()
}

/// Full raw negativity table of a boundary model from its classical
/// representation, in engine sector order (A block in the low bits).
///
/// Dispatches on dimension: per-sector transfer matrices (2d), per-sector 2d
/// Ising sweeps (3d), or a per-B-block Walsh–Hadamard sweep over link spins
/// (4d), which turns the `2^{n_a}` insertion patterns of one B block into a
/// single transform.
pub fn ising_spectrum_table(model: &BoundaryModel, params: &FieldParams) -> Result<SectorTable> {
    let k = model.model().k();
    if k > MAX_TABLE_K {
        return Err(Error::MemoryGuard { k, max: MAX_TABLE_K });
    }
    params.require_finite()?;
    let n_a = model.n_a();
    let n_qubits = model.model().n_qubits();
    match model.dimension() {
        2 => {
            let l = model.l();
            let values = try_map_sectors(1usize << k, |s| {
                eval_1d_transfer(l, params, &IsingSector::from_table_index(s, n_a))
            })?;
            SectorTable::new(k, n_qubits, values)
        }
        3 => {
            let l = model.l();
            let lattice = SquareLattice::new(l);
            let values = par::map_indices(1usize << k, |s| {
                ising_2d_sum(
                    &lattice,
                    params.k_a,
                    params.beta_lambda_b,
                    &IsingSector::from_table_index(s, n_a),
                )
            });
            SectorTable::new(k, n_qubits, values)
        }
        4 => {
            let geometry = model
                .geometry()
                .expect("4d boundary models carry their lattice");
            gauge_table(geometry, params.k_a, params.beta_lambda_b, n_qubits, false)
        }
        d => Err(Error::BuilderArg(format!("no evaluator for dimension {d}"))),
    }
}

/// Full matter-free closed-form binegativity table in engine sector order,
/// via one Walsh–Hadamard sweep per plaquette sign block.
pub fn closed_form_4d_table(geometry: &Geometry3, beta_lambda_b: f64) -> Result<SectorTable> {
    if !beta_lambda_b.is_finite() {
        return Err(Error::NonFiniteParameter);
    }
    let n_qubits = geometry.n_links() + geometry.n_plaquettes();
    gauge_table(geometry, 0.0, beta_lambda_b, n_qubits, true)
}

fn try_map_sectors<F>(n: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    par::map_indices(n, f).into_iter().collect()
}

/// For each B block the map `a ↦ Σ_τ (−1)^{|τ∧a|} v_B(τ)` is the transform of
/// the weight `v_B`, so one FWHT per block fills `2^{n_links}` sectors at once.
fn gauge_table(
    geometry: &Geometry3,
    k_a: f64,
    beta_lambda_b: f64,
    n_qubits: usize,
    take_abs: bool,
) -> Result<SectorTable> {
    let nl = geometry.n_links();
    let np = geometry.n_plaquettes();
    let k = nl + np;
    if k > MAX_TABLE_K {
        return Err(Error::MemoryGuard { k, max: MAX_TABLE_K });
    }
    let plaq_masks: Vec<u64> = geometry
        .plaquettes()
        .iter()
        .map(|p| p.iter().fold(0u64, |m, &e| m | (1u64 << e)))
        .collect();
    let field: Vec<f64> = (0..=nl).map(|d| (-k_a * d as f64).exp()).collect();
    let bond_tab: Vec<f64> = (0..=np)
        .map(|c| (beta_lambda_b * (np as f64 - 2.0 * c as f64)).exp())
        .collect();

    let mut values = vec![0.0f64; 1usize << k];
    for b_sector in 0..(1u64 << np) {
        let mut w: Vec<f64> = (0..(1u64 << nl))
            .map(|tau| {
                let mut flipped = 0usize;
                for (p, &mask) in plaq_masks.iter().enumerate() {
                    let parity = (tau & mask).count_ones() & 1;
                    flipped += (parity as u64 ^ ((b_sector >> p) & 1)) as usize;
                }
                field[tau.count_ones() as usize] * bond_tab[flipped]
            })
            .collect();
        fwht(&mut w)?;
        let base = (b_sector as usize) << nl;
        for (a, &v) in w.iter().enumerate() {
            values[base | a] = if take_abs { v.abs() } else { v };
        }
    }
    SectorTable::new(k, n_qubits, values)
}
