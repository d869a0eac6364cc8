//! Exact negativity and binegativity spectra for thermal stabilizer states.
//!
//! A model is a set of independent, mutually commuting Pauli generators on `N`
//! qubits, one coupling `t_i = tanh(βJ_i)` per generator, and a bipartition of
//! the qubits. The Gibbs state of the corresponding stabilizer Hamiltonian
//! stays diagonal in the generator sector basis after a partial transpose, so
//! its full partial-transpose eigenvalue distribution is a table over the `2^k`
//! sign sectors of the generators — no `2^N`-dimensional matrix is ever needed.
//! The same table, passed through a dyadic convolution with its zero-temperature
//! counterpart, yields the binegativity spectrum, whose minimum eigenvalue
//! decides whether the PPT entanglement cost collapses onto the entanglement
//! negativity.
//!
//! The crate provides:
//!
//! - [`pauli`] — symplectic Pauli operators, stabilizer models, bipartitions,
//!   and the restricted anticommutation matrix that drives all sector signs;
//! - [`spectrum`] — negativity/binegativity sector tables (naive and
//!   Walsh–Hadamard fast paths), entanglement negativity, and the PPT cost
//!   bound report;
//! - [`lattice`] — toric-code boundary models in two, three, and four
//!   dimensions plus small full-torus models for verification;
//! - [`ising`] — the equivalent classical spin-model evaluators (1D transfer
//!   matrix, 2D Ising and 3D gauge-theory enumeration) and the closed-form
//!   infinite-coupling branches;
//! - [`oracle`] — a dense-matrix ground truth for systems of up to 12 qubits.
//!
//! With the default `parallel` feature, sector loops fan out over rayon;
//! disabling it swaps in identical sequential loops. Outputs are bit-for-bit
//! independent of the thread count.

pub mod bits;
pub mod error;
pub mod ising;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod pauli;
pub mod spectrum;

pub use error::{Error, Result};
pub use ising::{field_strength, ising_spectrum_table, normalize_table, FieldParams, IsingSector};
pub use lattice::{
    build_2d_torus, build_boundary_2d, build_boundary_3d, build_boundary_4d, BoundaryModel,
    Fragment, Geometry3,
};
pub use oracle::{
    gibbs_dense, matrix_abs, partial_transpose, pauli_matrix, verify_model, VerificationRecord,
};
pub use pauli::{
    bell_model, commutes, independence_rank, realize_from_c, Bipartition, CommutationMatrix,
    PauliOperator, StabilizerModel,
};
pub use spectrum::{
    binegativity_fwht, binegativity_spectrum, boundary_reduced_spectrum, entanglement_negativity,
    fwht, negativity_spectrum, ppt_report, sign_psi, LogBase, PptReport, SectorTable,
};
