//! Toric-code boundary models in two, three, and four dimensions, and small
//! full-torus models for oracle verification.
//!
//! The boundary builders realize just the stabilizers adjacent to the
//! entanglement cut as genuine Pauli operators on the minimal set of lattice
//! qubits, so the same object feeds the sector-table engine, the classical
//! spin-model evaluators, and (at small sizes) the dense oracle.
//!
//! Ordering conventions, which every sector table inherits:
//!
//! - generators: all X-type (A) generators first in row-major lattice order,
//!   then all Z-type (B) generators in row-major order;
//! - 2d boundary: A_i and B_i live on a ring of `L` positions;
//! - 3d boundary: A generators sit on the sites of an `L×L` periodic square
//!   lattice, B generators on its links (x-direction block first, then y);
//! - 4d boundary: A generators sit on the links of a 3d lattice (axis-major
//!   blocks), B generators on its plaquettes (xy, xz, yz plane blocks);
//! - qubits: region-A qubits first (one per A generator's private support),
//!   then region-B qubits.

use crate::error::{Error, Result};
use crate::pauli::{Bipartition, PauliOperator, StabilizerModel};
use std::collections::HashMap;

/// A boundary stabilizer model together with its lattice bookkeeping.
#[derive(Debug, Clone)]
pub struct BoundaryModel {
    dimension: u8,
    l: usize,
    n_a: usize,
    model: StabilizerModel,
    geometry: Option<Geometry3>,
}

impl BoundaryModel {
    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    /// Linear lattice size (for a 4d fragment, the largest box extent).
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn model(&self) -> &StabilizerModel {
        &self.model
    }

    pub fn into_model(self) -> StabilizerModel {
        self.model
    }

    /// Generator indices of the X-type (A) family.
    pub fn a_indices(&self) -> Vec<usize> {
        (0..self.n_a).collect()
    }

    /// Generator indices of the Z-type (B) family.
    pub fn b_indices(&self) -> Vec<usize> {
        (self.n_a..self.model.k()).collect()
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.model.k() - self.n_a
    }

    /// The 3d lattice behind a 4d boundary model.
    pub fn geometry(&self) -> Option<&Geometry3> {
        self.geometry.as_ref()
    }

    /// Couplings as (t_A, t_B), asserting the builder's uniform assignment.
    pub fn coupling_pair(&self) -> (f64, f64) {
        let t = self.model.couplings();
        let t_a = t.first().copied().unwrap_or(1.0);
        let t_b = t.get(self.n_a).copied().unwrap_or(1.0);
        (t_a, t_b)
    }
}

fn check_couplings(t_a: f64, t_b: f64) -> Result<()> {
    for (index, value) in [(0usize, t_a), (1usize, t_b)] {
        if !(value.abs() <= 1.0) {
            return Err(Error::CouplingOutOfRange { index, value });
        }
    }
    Ok(())
}

/// Boundary of the 2d toric code across a cut of length `L`: `L` star and `L`
/// plaquette stabilizers interleaved on a ring, realized on `2L` qubits.
///
/// Qubit `i < L` (region A) is the private support of A_i; qubit `L + i`
/// (region B) is the private support of B_i. A_i acts as X on qubits
/// `{i, L+(i−1), L+i}` and B_i as Z on `{i, i+1, L+i}` (ring arithmetic), so
/// the restricted anticommutation matrix is the adjacency of a `2L`-cycle:
/// A_i anticommutes with B_{i−1} and B_i.
pub fn build_boundary_2d(l: usize, t_a: f64, t_b: f64) -> Result<BoundaryModel> {
    if l < 2 {
        return Err(Error::BuilderArg(format!(
            "2d boundary needs L >= 2, got {l}"
        )));
    }
    check_couplings(t_a, t_b)?;
    let n_qubits = 2 * l;
    let mut generators = Vec::with_capacity(2 * l);
    for i in 0..l {
        generators.push(PauliOperator::from_supports(
            n_qubits,
            &[i, l + (i + l - 1) % l, l + i],
            &[],
        )?);
    }
    for i in 0..l {
        generators.push(PauliOperator::from_supports(
            n_qubits,
            &[],
            &[i, (i + 1) % l, l + i],
        )?);
    }
    let mut couplings = vec![t_a; l];
    couplings.extend(std::iter::repeat(t_b).take(l));
    let region_a: Vec<usize> = (0..l).collect();
    let model = StabilizerModel::try_new(
        generators,
        couplings,
        Bipartition::new(n_qubits, &region_a)?,
    )?;
    Ok(BoundaryModel {
        dimension: 2,
        l,
        n_a: l,
        model,
        geometry: None,
    })
}

/// The `L×L` periodic square lattice behind the 3d boundary model and its
/// 2d-Ising evaluator: `L²` sites and `2L²` links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareLattice {
    l: usize,
}

impl SquareLattice {
    pub fn new(l: usize) -> Self {
        SquareLattice { l }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_sites(&self) -> usize {
        self.l * self.l
    }

    pub fn site(&self, x: usize, y: usize) -> usize {
        (y % self.l) * self.l + (x % self.l)
    }

    /// Endpoint site pairs of all `2L²` links: the x-direction block in
    /// row-major site order, then the y-direction block.
    pub fn links(&self) -> Vec<(usize, usize)> {
        let l = self.l;
        let mut out = Vec::with_capacity(2 * l * l);
        for y in 0..l {
            for x in 0..l {
                out.push((self.site(x, y), self.site(x + 1, y)));
            }
        }
        for y in 0..l {
            for x in 0..l {
                out.push((self.site(x, y), self.site(x, y + 1)));
            }
        }
        out
    }
}

/// Boundary of the 3d toric code across an `L×L` periodic cut surface:
/// `L²` site stabilizers (A) and `2L²` link stabilizers (B) on `3L²` qubits.
///
/// Qubit `s < L²` (region A) is the private support of site generator A_s;
/// qubit `L² + e` (region B) is the private support of link generator B_e.
/// A_s acts as X on its private qubit and on the four incident link qubits;
/// B_e acts as Z on its private qubit and on its two endpoint site qubits.
/// The restricted anticommutation matrix is the site–link incidence of the
/// lattice: every A row has weight 4 and every B row weight 2.
pub fn build_boundary_3d(l: usize, t_a: f64, t_b: f64) -> Result<BoundaryModel> {
    if l < 2 {
        return Err(Error::BuilderArg(format!(
            "3d boundary needs L >= 2, got {l}"
        )));
    }
    check_couplings(t_a, t_b)?;
    let lattice = SquareLattice::new(l);
    let n_sites = lattice.n_sites();
    let links = lattice.links();
    let n_qubits = n_sites + links.len();

    let mut site_xs: Vec<Vec<usize>> = (0..n_sites).map(|s| vec![s]).collect();
    for (e, &(s1, s2)) in links.iter().enumerate() {
        site_xs[s1].push(n_sites + e);
        site_xs[s2].push(n_sites + e);
    }

    let mut generators = Vec::with_capacity(n_sites + links.len());
    for xs in &site_xs {
        generators.push(PauliOperator::from_supports(n_qubits, xs, &[])?);
    }
    for (e, &(s1, s2)) in links.iter().enumerate() {
        generators.push(PauliOperator::from_supports(
            n_qubits,
            &[],
            &[s1, s2, n_sites + e],
        )?);
    }
    let mut couplings = vec![t_a; n_sites];
    couplings.extend(std::iter::repeat(t_b).take(links.len()));
    let region_a: Vec<usize> = (0..n_sites).collect();
    let model = StabilizerModel::try_new(
        generators,
        couplings,
        Bipartition::new(n_qubits, &region_a)?,
    )?;
    Ok(BoundaryModel {
        dimension: 3,
        l,
        n_a: n_sites,
        model,
        geometry: None,
    })
}

/// An open sub-lattice for desk-scale 4d boundary fragments: a box of
/// `dims[0]×dims[1]×dims[2]` sites with open boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub dims: [usize; 3],
}

impl Fragment {
    /// A single cube: 12 links and 6 plaquettes, so 18 generators.
    pub fn single_cube() -> Self {
        Fragment { dims: [2, 2, 2] }
    }
}

/// A 3d lattice (periodic cube or open box) with its link and plaquette
/// enumerations; the combinatorial backbone shared by the 4d boundary builder
/// and the gauge-theory evaluator.
#[derive(Debug, Clone)]
pub struct Geometry3 {
    dims: [usize; 3],
    periodic: bool,
    links: Vec<(usize, usize)>,
    plaquettes: Vec<[usize; 4]>,
}

impl PartialEq for Geometry3 {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.periodic == other.periodic
    }
}

impl Geometry3 {
    /// Periodic `L×L×L` lattice: `3L³` links and `3L³` plaquettes.
    pub fn periodic_cube(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::BuilderArg(format!(
                "periodic 3d lattice needs L >= 2, got {l}"
            )));
        }
        Self::build([l, l, l], true)
    }

    /// Open box with the given site extents.
    pub fn open_box(dims: [usize; 3]) -> Result<Self> {
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::BuilderArg(format!(
                "fragment extents must be positive, got {dims:?}"
            )));
        }
        let g = Self::build(dims, false)?;
        if g.links.is_empty() || g.plaquettes.is_empty() {
            return Err(Error::BuilderArg(format!(
                "fragment {dims:?} has no plaquettes; needs at least a 2x2 face"
            )));
        }
        Ok(g)
    }

    fn build(dims: [usize; 3], periodic: bool) -> Result<Self> {
        let site = |c: [usize; 3]| (c[2] * dims[1] + c[1]) * dims[0] + c[0];
        let shift = |c: [usize; 3], axis: usize| -> Option<[usize; 3]> {
            let mut out = c;
            if c[axis] + 1 < dims[axis] {
                out[axis] += 1;
                Some(out)
            } else if periodic {
                out[axis] = 0;
                Some(out)
            } else {
                None
            }
        };

        let mut links = Vec::new();
        let mut link_ids: HashMap<(usize, usize), usize> = HashMap::new();
        for axis in 0..3 {
            for z in 0..dims[2] {
                for y in 0..dims[1] {
                    for x in 0..dims[0] {
                        let c = [x, y, z];
                        if shift(c, axis).is_some() {
                            link_ids.insert((site(c), axis), links.len());
                            links.push((site(c), axis));
                        }
                    }
                }
            }
        }

        let mut plaquettes = Vec::new();
        for &(mu, nu) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            for z in 0..dims[2] {
                for y in 0..dims[1] {
                    for x in 0..dims[0] {
                        let c = [x, y, z];
                        let (Some(c_mu), Some(c_nu)) = (shift(c, mu), shift(c, nu)) else {
                            continue;
                        };
                        // The four boundary links of the plaquette spanned by
                        // axes mu and nu at corner c.
                        let ids = [
                            link_ids[&(site(c), mu)],
                            link_ids[&(site(c_mu), nu)],
                            link_ids[&(site(c_nu), mu)],
                            link_ids[&(site(c), nu)],
                        ];
                        plaquettes.push(ids);
                    }
                }
            }
        }
        Ok(Geometry3 {
            dims,
            periodic,
            links,
            plaquettes,
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn n_links(&self) -> usize {
        self.links.len()
    }

    pub fn n_plaquettes(&self) -> usize {
        self.plaquettes.len()
    }

    /// Links as (row-major site index, axis) pairs, axis-major order.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    /// The four link indices bounding each plaquette, plane-major order.
    pub fn plaquettes(&self) -> &[[usize; 4]] {
        &self.plaquettes
    }
}

/// Boundary of the 4d toric code across a 3d cut lattice: one A generator per
/// link and one B generator per plaquette of `geometry`.
///
/// Qubit `e < n_links` (region A) is the private support of link generator
/// A_e; qubit `n_links + p` (region B) is the private support of plaquette
/// generator B_p. A_e acts as X on its private qubit and the qubits of all
/// plaquettes containing link `e`; B_p acts as Z on its private qubit and its
/// four boundary-link qubits. The restricted anticommutation matrix is the
/// link–plaquette incidence.
///
/// With `fragment = None` the lattice is the periodic `L×L×L` cube
/// (`k = 6L³`, beyond the full-table guard already at L = 2, but still valid
/// input for the closed-form limit branches); a fragment gives an open box at
/// enumeration scale.
pub fn build_boundary_4d(
    l: usize,
    t_a: f64,
    t_b: f64,
    fragment: Option<Fragment>,
) -> Result<BoundaryModel> {
    check_couplings(t_a, t_b)?;
    let geometry = match fragment {
        Some(f) => Geometry3::open_box(f.dims)?,
        None => Geometry3::periodic_cube(l)?,
    };
    let n_links = geometry.n_links();
    let n_plaqs = geometry.n_plaquettes();
    let n_qubits = n_links + n_plaqs;

    let mut link_xs: Vec<Vec<usize>> = (0..n_links).map(|e| vec![e]).collect();
    for (p, plaq) in geometry.plaquettes().iter().enumerate() {
        for &e in plaq {
            link_xs[e].push(n_links + p);
        }
    }

    let mut generators = Vec::with_capacity(n_qubits);
    for xs in &link_xs {
        generators.push(PauliOperator::from_supports(n_qubits, xs, &[])?);
    }
    for (p, plaq) in geometry.plaquettes().iter().enumerate() {
        let mut zs: Vec<usize> = plaq.to_vec();
        zs.push(n_links + p);
        generators.push(PauliOperator::from_supports(n_qubits, &[], &zs)?);
    }
    let mut couplings = vec![t_a; n_links];
    couplings.extend(std::iter::repeat(t_b).take(n_plaqs));
    let region_a: Vec<usize> = (0..n_links).collect();
    let dims = geometry.dims();
    let model = StabilizerModel::try_new(
        generators,
        couplings,
        Bipartition::new(n_qubits, &region_a)?,
    )?;
    Ok(BoundaryModel {
        dimension: 4,
        l: dims.into_iter().max().unwrap(),
        n_a: n_links,
        model,
        geometry: Some(geometry),
    })
}

/// Full 2d toric code on an `L×L` torus at oracle scale (`L ∈ {2, 3}`), with
/// the last star and last plaquette dropped for independence.
///
/// Qubits sit on links: the x-link at site (x, y) has index `yL + x` and the
/// y-link index `L² + yL + x`. The planar cut keeps the first `cut` link rows
/// in region A, counting alternately: row `2j` is the x-link row at height j,
/// row `2j + 1` the y-link row at height j. Generators are the kept stars in
/// row-major order, then the kept plaquettes.
pub fn build_2d_torus(l: usize, t_a: f64, t_b: f64, cut: usize) -> Result<StabilizerModel> {
    if !(l == 2 || l == 3) {
        return Err(Error::BuilderArg(format!(
            "full torus is oracle-scale only (L = 2 or 3), got {l}"
        )));
    }
    check_couplings(t_a, t_b)?;
    if cut > 2 * l {
        return Err(Error::BuilderArg(format!(
            "cut must lie in 0..={}, got {cut}",
            2 * l
        )));
    }
    let (stars, plaquettes) = torus_stars_plaquettes(l);
    let keep = l * l - 1;
    let mut generators: Vec<PauliOperator> = stars.into_iter().take(keep).collect();
    generators.extend(plaquettes.into_iter().take(keep));
    let mut couplings = vec![t_a; keep];
    couplings.extend(std::iter::repeat(t_b).take(keep));

    let mut region_a = Vec::new();
    for row in 0..cut {
        let y = row / 2;
        let base = if row % 2 == 0 { 0 } else { l * l };
        for x in 0..l {
            region_a.push(base + y * l + x);
        }
    }
    StabilizerModel::try_new(
        generators,
        couplings,
        Bipartition::new(2 * l * l, &region_a)?,
    )
}

/// All `L²` stars and all `L²` plaquettes of the torus (dependent as-is: the
/// two global products are identities, so two generators must be dropped).
fn torus_stars_plaquettes(l: usize) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    let n_qubits = 2 * l * l;
    let h = |x: usize, y: usize| (y % l) * l + (x % l);
    let v = |x: usize, y: usize| l * l + (y % l) * l + (x % l);
    let mut stars = Vec::with_capacity(l * l);
    let mut plaquettes = Vec::with_capacity(l * l);
    for y in 0..l {
        for x in 0..l {
            stars.push(
                PauliOperator::from_supports(
                    n_qubits,
                    &[h(x, y), h(x + l - 1, y), v(x, y), v(x, y + l - 1)],
                    &[],
                )
                .unwrap(),
            );
            plaquettes.push(
                PauliOperator::from_supports(
                    n_qubits,
                    &[],
                    &[h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)],
                )
                .unwrap(),
            );
        }
    }
    (stars, plaquettes)
}
