//! Agreement between the sector-table engine and the classical spin-model
//! route. The two sides differ by a positive, sector-independent constant, so
//! every comparison normalizes both tables to the same sector sum first.
//!
//! The brute-force ring sum at the top is re-implemented here on purpose:
//! it is the independent oracle for the transfer matrix, shared with nothing
//! in the library.

use negspec::ising::{
    closed_form_2d_binegativity_infinite_b, closed_form_2d_spectrum_infinite_b,
    closed_form_3d_point_forbidden, closed_form_4d_matter_free, closed_form_4d_table,
    eval_1d_transfer, eval_2d_enum, eval_3d_gauge_enum,
};
use negspec::spectrum::binegativity_fwht;
use negspec::{
    build_boundary_2d, build_boundary_3d, build_boundary_4d, ising_spectrum_table,
    negativity_spectrum, normalize_table, BoundaryModel, FieldParams, Fragment, Geometry3,
    IsingSector, SectorTable, StabilizerModel,
};

/// Independent ring oracle: direct sum over all `2^L` spin configurations.
fn ring_brute_force(l: usize, k_a: f64, beta_lambda_b: f64, a_neg: u64, b_neg: u64) -> f64 {
    let mut acc = 0.0;
    for tau in 0u64..(1 << l) {
        let spin = |i: usize| if (tau >> i) & 1 == 1 { -1.0f64 } else { 1.0 };
        let mut insertion = 1.0;
        let mut field = 0.0;
        let mut energy = 0.0;
        for i in 0..l {
            if (a_neg >> i) & 1 == 1 {
                insertion *= spin(i);
            }
            field += (1.0 - spin(i)) / 2.0;
            let b = if (b_neg >> i) & 1 == 1 { -1.0 } else { 1.0 };
            energy += b * spin(i) * spin((i + 1) % l);
        }
        acc += insertion * (-k_a * field + beta_lambda_b * energy).exp();
    }
    acc
}

fn engine_tables(model: &StabilizerModel) -> (SectorTable, SectorTable) {
    let c = model.commutation_matrix();
    let f_t = negativity_spectrum(&c, model.couplings(), model.n_qubits()).unwrap();
    let ones = vec![1.0; model.k()];
    let f_1 = negativity_spectrum(&c, &ones, model.n_qubits()).unwrap();
    let b = binegativity_fwht(&f_t, &f_1).unwrap();
    (f_t, b)
}

fn max_relative_deviation(x: &SectorTable, y: &SectorTable) -> f64 {
    assert_eq!(x.len(), y.len());
    let scale = x.max_abs().max(y.max_abs());
    let mut dev = 0.0f64;
    for s in 0..x.len() {
        dev = dev.max((x.value(s) - y.value(s)).abs() / scale);
    }
    dev
}

fn assert_tables_close(x: &SectorTable, y: &SectorTable, tol: f64, what: &str) {
    let dev = max_relative_deviation(x, y);
    assert!(dev <= tol, "{what}: max relative deviation {dev:e} > {tol:e}");
}

#[test]
fn transfer_matrix_matches_brute_force() {
    let params = FieldParams { k_a: 0.37, beta_lambda_b: 1.21 };
    for l in 2usize..=10 {
        for seed in 0u64..4 {
            // Cheap deterministic sector pattern per (L, seed).
            let a_neg = (seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 7) & ((1 << l) - 1);
            let b_neg = (seed.wrapping_mul(0xc2b2_ae3d_27d4_eb4f) >> 11) & ((1 << l) - 1);
            let sector = IsingSector::from_masks(a_neg, b_neg);
            let fast = eval_1d_transfer(l, &params, &sector).unwrap();
            let slow = ring_brute_force(l, params.k_a, params.beta_lambda_b, a_neg, b_neg);
            assert!(
                (fast - slow).abs() <= 1e-12 * slow.abs().max(1.0),
                "L={l} a={a_neg:b} b={b_neg:b}: {fast} vs {slow}"
            );
        }
    }
}

fn check_boundary_against_classical(model: &BoundaryModel, beta_a: f64, beta_b: f64, tol: f64) {
    let params = FieldParams::from_beta_lambdas(beta_a, beta_b).unwrap();
    let (f_t, _) = engine_tables(model.model());
    let classical = ising_spectrum_table(model, &params).unwrap();
    assert_tables_close(
        &normalize_table(&f_t).unwrap(),
        &normalize_table(&classical).unwrap(),
        tol,
        &format!("dimension {} L={}", model.dimension(), model.l()),
    );
}

#[test]
fn ring_with_fields_reproduces_2d_boundary_spectra() {
    for l in [2usize, 3, 4, 6] {
        for (beta_a, beta_b) in [(0.3f64, 0.8f64), (1.2, 0.4), (2.0, 2.0)] {
            let model = build_boundary_2d(l, beta_a.tanh(), beta_b.tanh()).unwrap();
            check_boundary_against_classical(&model, beta_a, beta_b, 1e-10);
        }
    }
}

#[test]
fn ising_2d_reproduces_3d_boundary_spectra() {
    for (beta_a, beta_b) in [(0.5f64, 0.9f64), (1.5, 0.35)] {
        let model = build_boundary_3d(2, beta_a.tanh(), beta_b.tanh()).unwrap();
        check_boundary_against_classical(&model, beta_a, beta_b, 1e-10);
    }
}

#[test]
fn gauge_theory_reproduces_4d_boundary_spectra() {
    for (beta_a, beta_b) in [(0.8f64, 0.5f64), (1.5, 1.0)] {
        let model =
            build_boundary_4d(2, beta_a.tanh(), beta_b.tanh(), Some(Fragment::single_cube()))
                .unwrap();
        check_boundary_against_classical(&model, beta_a, beta_b, 1e-10);
    }
}

#[test]
fn per_sector_evaluators_match_their_tables() {
    // The table builders take fast paths (transfer matrices, one transform
    // per sign block); spot-check them against the per-sector definitions.
    let params = FieldParams { k_a: 0.44, beta_lambda_b: 0.71 };

    let ring = build_boundary_2d(4, params.k_a.exp().recip(), params.beta_lambda_b.tanh()).unwrap();
    let table = ising_spectrum_table(&ring, &params).unwrap();
    for s in [0usize, 3, 17, 100, 255] {
        let direct = ring_brute_force(
            4,
            params.k_a,
            params.beta_lambda_b,
            (s as u64) & 0xf,
            (s as u64) >> 4,
        );
        assert!((table.value(s) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    let sheet = build_boundary_3d(2, params.k_a.exp().recip(), params.beta_lambda_b.tanh()).unwrap();
    let table = ising_spectrum_table(&sheet, &params).unwrap();
    for s in [0usize, 5, 64, 1000, 4095] {
        let sector = IsingSector::from_table_index(s, 4);
        let direct = eval_2d_enum(2, &params, &sector).unwrap();
        assert!((table.value(s) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    let cube = build_boundary_4d(2, params.k_a.exp().recip(), params.beta_lambda_b.tanh(), Some(Fragment::single_cube())).unwrap();
    let table = ising_spectrum_table(&cube, &params).unwrap();
    let geometry = cube.geometry().unwrap();
    for s in [0usize, 9, 4096, 140_000, (1 << 18) - 1] {
        let sector = IsingSector::from_table_index(s, 12);
        let direct = eval_3d_gauge_enum(geometry, &params, &sector).unwrap();
        assert!((table.value(s) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}

#[test]
fn plaquette_locked_spectrum_is_exact_at_unit_coupling() {
    // At t_B = 1 the engine sits exactly on the infinite-coupling limit, so
    // the closed form must match to rounding, not merely converge.
    for l in [2usize, 3, 4, 6] {
        let t_a = 0.55f64;
        let k_a = -t_a.ln();
        let model = build_boundary_2d(l, t_a, 1.0).unwrap();
        let (f_t, b) = engine_tables(model.model());

        let k = model.model().k();
        let spectrum_cf: Vec<f64> = (0..1usize << k)
            .map(|s| {
                let sector = IsingSector::from_table_index(s, l);
                closed_form_2d_spectrum_infinite_b(l, k_a, &sector).unwrap()
            })
            .collect();
        let spectrum_cf = SectorTable::new(k, model.model().n_qubits(), spectrum_cf).unwrap();
        assert_tables_close(
            &normalize_table(&f_t).unwrap(),
            &normalize_table(&spectrum_cf).unwrap(),
            1e-12,
            &format!("2d spectrum closed form L={l}"),
        );

        let bineg_cf: Vec<f64> = (0..1usize << k)
            .map(|s| {
                let sector = IsingSector::from_table_index(s, l);
                closed_form_2d_binegativity_infinite_b(l, k_a, &sector).unwrap()
            })
            .collect();
        let bineg_cf = SectorTable::new(k, model.model().n_qubits(), bineg_cf).unwrap();
        assert_tables_close(
            &normalize_table(&b).unwrap(),
            &normalize_table(&bineg_cf).unwrap(),
            1e-12,
            &format!("2d binegativity closed form L={l}"),
        );
    }
}

#[test]
fn plaquette_locked_binegativity_converges_with_coupling() {
    let l = 3usize;
    let t_a = 0.62f64;
    let k_a = -t_a.ln();
    let k = 2 * l;
    let closed: Vec<f64> = (0..1usize << k)
        .map(|s| {
            closed_form_2d_binegativity_infinite_b(l, k_a, &IsingSector::from_table_index(s, l))
                .unwrap()
        })
        .collect();
    let closed = SectorTable::new(k, k, closed).unwrap();
    let closed = normalize_table(&closed).unwrap();

    let mut deviations = Vec::new();
    for beta_b in [2.0f64, 4.0, 8.0] {
        let model = build_boundary_2d(l, t_a, beta_b.tanh()).unwrap();
        let (_, b) = engine_tables(model.model());
        deviations.push(max_relative_deviation(&normalize_table(&b).unwrap(), &closed));
    }
    assert!(
        deviations[0] > deviations[1] && deviations[1] > deviations[2],
        "deviation should shrink with coupling: {deviations:?}"
    );
    assert!(deviations[2] <= 1e-6, "deviation at beta*lambda = 8: {:?}", deviations[2]);
}

#[test]
fn point_forbidden_limit_is_exact_at_unit_coupling() {
    // t_A = 1 puts the engine exactly at the matter-suppressed limit of the
    // 3d boundary model.
    let beta_b = 0.45f64;
    let model = build_boundary_3d(2, 1.0, beta_b.tanh()).unwrap();
    let (_, b) = engine_tables(model.model());
    let k = model.model().k();
    let closed: Vec<f64> = (0..1usize << k)
        .map(|s| {
            closed_form_3d_point_forbidden(2, beta_b, &IsingSector::from_table_index(s, 4)).unwrap()
        })
        .collect();
    let closed = SectorTable::new(k, model.model().n_qubits(), closed).unwrap();
    assert_tables_close(
        &normalize_table(&b).unwrap(),
        &normalize_table(&closed).unwrap(),
        1e-10,
        "3d closed form at L=2",
    );
}

#[test]
fn matter_free_limit_is_exact_at_unit_coupling() {
    let beta_b = 0.8f64;
    let model = build_boundary_4d(2, 1.0, beta_b.tanh(), Some(Fragment::single_cube())).unwrap();
    let (_, b) = engine_tables(model.model());
    let geometry = model.geometry().unwrap();
    let closed = closed_form_4d_table(geometry, beta_b).unwrap();
    assert_tables_close(
        &normalize_table(&b).unwrap(),
        &normalize_table(&closed).unwrap(),
        1e-10,
        "4d closed form on the single cube",
    );

    // The fast table and the per-sector closed form are the same function.
    for s in [1usize, 333, 262_143] {
        let direct =
            closed_form_4d_matter_free(geometry, beta_b, &IsingSector::from_table_index(s, 12))
                .unwrap();
        assert!((closed.value(s) - direct).abs() <= 1e-12 * closed.max_abs());
    }
}

#[test]
fn closed_forms_are_nonnegative_across_sweeps() {
    for s in 0..1usize << 10 {
        let v = closed_form_2d_binegativity_infinite_b(5, 0.45, &IsingSector::from_table_index(s, 5))
            .unwrap();
        assert!(v >= 0.0);
    }
    for s in 0..1usize << 12 {
        let v = closed_form_3d_point_forbidden(2, 0.8, &IsingSector::from_table_index(s, 4)).unwrap();
        assert!(v >= 0.0);
    }
    let cube = Geometry3::open_box([2, 2, 2]).unwrap();
    let table = closed_form_4d_table(&cube, 0.35).unwrap();
    assert!(table.min_value().1 >= 0.0);
}
