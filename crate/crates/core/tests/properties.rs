//! Property tests for the operator, the schemes and the diagnostics.

use std::sync::Arc;

use proptest::prelude::*;
use wavekin_core::{
    build_index_sets, compute_fluxes, energy_weighted_magnitude, energy_weighted_total, eoc,
    l1_distance, moment, oracle_energy_balance, oracle_flux, oracle_flux_naive, EocValue,
    FluxTables, FluxTerms, Grid, KernelId, KernelSpec, SchemeKind, State, Stepper,
};

#[derive(Debug, Clone)]
struct Instance {
    grid: Arc<Grid>,
    kernels: KernelSpec,
    densities: Vec<f64>,
}

fn instance_strategy(max_cells: usize) -> impl Strategy<Value = Instance> {
    let grid = (
        2usize..=max_cells,
        prop_oneof![Just(true), Just(false)],
        0.5f64..40.0,
    )
        .prop_map(|(cells, uniform, radius)| {
            if uniform {
                Arc::new(Grid::uniform(radius, cells).unwrap())
            } else {
                let xi_max = radius.ln();
                Arc::new(Grid::geometric(xi_max - 6.0, xi_max, cells).unwrap())
            }
        });
    (
        grid,
        0.0f64..1.5,
        0.0f64..1.5,
        0.0f64..1.5,
        proptest::collection::vec(0.0f64..1.0, 64),
    )
        .prop_map(|(grid, theta, gamma, delta, raw)| {
            let n = grid.cell_count();
            let densities = raw[..n].to_vec();
            let kernels = KernelSpec::new(theta, gamma, delta, grid.radius()).unwrap();
            Instance {
                grid,
                kernels,
                densities,
            }
        })
}

fn assert_terms_close(a: &FluxTerms, b: &FluxTerms, tol: f64) {
    for (name, x, y) in [
        ("q1", &a.q1, &b.q1),
        ("q2", &a.q2, &b.q2),
        ("q3", &a.q3, &b.q3),
        ("q4", &a.q4, &b.q4),
        ("q5", &a.q5, &b.q5),
    ] {
        for (i, (u, v)) in x.iter().zip(y.iter()).enumerate() {
            let scale = u.abs().max(v.abs()).max(1e-300);
            assert!(
                (u - v).abs() <= tol * scale,
                "{name}[{i}]: {u} vs {v} (rel {})",
                (u - v).abs() / scale
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn optimized_fluxes_match_oracle(inst in instance_strategy(24)) {
        let state = State::new(inst.grid.clone(), inst.densities.clone()).unwrap();
        let tables = FluxTables::new(&inst.kernels, &inst.grid).unwrap();
        let sets = build_index_sets(&inst.grid);
        let fast = compute_fluxes(&state, &tables, &sets).unwrap();
        let naive = oracle_flux_naive(&state, &inst.kernels).unwrap();
        assert_terms_close(&fast, &naive, 1e-13);
    }

    #[test]
    fn weighted_fluxes_match_oracle(inst in instance_strategy(24)) {
        let state = State::new(inst.grid.clone(), inst.densities.clone()).unwrap();
        let stepper = Stepper::new(inst.grid.clone(), &inst.kernels, SchemeKind::Weighted).unwrap();
        let fast = stepper.fluxes(&state).unwrap();
        let naive = oracle_flux(&state, &inst.kernels, SchemeKind::Weighted).unwrap();
        assert_terms_close(&fast, &naive, 1e-13);
    }

    // The energy rate of the weighted scheme vanishes identically, for signed
    // states as well: T is bilinear, so no positivity is needed.
    #[test]
    fn weighted_energy_rate_vanishes(inst in instance_strategy(24), signs in proptest::collection::vec(any::<bool>(), 64)) {
        let densities: Vec<f64> = inst
            .densities
            .iter()
            .zip(&signs)
            .map(|(v, flip)| if *flip { -v } else { *v })
            .collect();
        let state = State::new_signed(inst.grid.clone(), densities).unwrap();
        let t = oracle_energy_balance(&state, &inst.kernels, SchemeKind::Weighted).unwrap();
        let fx = oracle_flux(&state, &inst.kernels, SchemeKind::Weighted).unwrap();
        let scale = energy_weighted_magnitude(&state, &fx).max(1e-300);
        prop_assert!(t.abs() <= 1e-12 * scale, "T = {}, scale = {}", t, scale);
    }

    // Every deposit carries its exact interaction energy, so the plain
    // scheme's energy rate reduces to the unmatched overflow losses: it is
    // non-positive on every grid.
    #[test]
    fn plain_energy_rate_non_positive(inst in instance_strategy(24)) {
        let state = State::new(inst.grid.clone(), inst.densities.clone()).unwrap();
        let t = oracle_energy_balance(&state, &inst.kernels, SchemeKind::Plain).unwrap();
        let fx = oracle_flux_naive(&state, &inst.kernels).unwrap();
        let scale = energy_weighted_magnitude(&state, &fx).max(1e-300);
        prop_assert!(t <= 1e-13 * scale, "T = {}", t);
    }

    #[test]
    fn weighted_step_preserves_first_moment(inst in instance_strategy(20)) {
        let state = State::new(inst.grid.clone(), inst.densities.clone()).unwrap();
        let stepper = Stepper::new(inst.grid.clone(), &inst.kernels, SchemeKind::Weighted).unwrap();
        // step size small enough to stay finite on every sampled instance
        let next = stepper.step(&state, 1e-4).unwrap();
        let before = moment(&state, 1);
        let after = moment(&next, 1);
        prop_assert!((after - before).abs() <= 1e-12 * before.max(1e-300));
    }

    #[test]
    fn index_sets_match_naive_membership(inst in instance_strategy(24)) {
        let grid = &inst.grid;
        let sets = build_index_sets(grid);
        let n = grid.cell_count();
        let c = grid.centers();
        for j in 0..n {
            for k in 0..n {
                let expected = grid.interaction_cell(c[j] + c[k]);
                let found = sets.gain_sum.iter().position(|pairs| pairs.contains(&(j, k)));
                prop_assert_eq!(expected, found);
                prop_assert_eq!(expected.is_none(), sets.overflow.contains(&(j, k)));
                if j > k {
                    let d_expected = grid.interaction_cell(c[j] - c[k]);
                    let d_found = sets.gain_diff.iter().position(|p| p.contains(&(j, k)));
                    prop_assert_eq!(d_expected, d_found);
                }
            }
        }
    }

    #[test]
    fn kernel_symmetry_and_homogeneity(
        w in 1e-3f64..50.0,
        m in 1e-3f64..50.0,
        scale in 0.1f64..2.0,
        degree in 0.0f64..2.0,
    ) {
        let spec = KernelSpec::new(degree, degree, degree, 1e4).unwrap();
        for which in [KernelId::K1, KernelId::K2, KernelId::K3] {
            let a = spec.eval(which, w, m);
            let b = spec.eval(which, m, w);
            prop_assert_eq!(a, b);
            // untruncated homogeneity: K(cw, cm) = c^(2 deg) K(w, m)
            let scaled = spec.eval(which, scale * w, scale * m);
            let expect = scale.powf(2.0 * degree) * a;
            prop_assert!((scaled - expect).abs() <= 1e-12 * expect.abs().max(1e-300));
        }
    }

    #[test]
    fn projection_is_non_negative(cells in 1usize..200, radius in 1.0f64..200.0) {
        let grid = Arc::new(Grid::uniform(radius, cells).unwrap());
        for ic in [wavekin_core::InitialCondition::Test1, wavekin_core::InitialCondition::Test2] {
            let state = wavekin_core::project(&ic, grid.clone()).unwrap();
            prop_assert!(state.densities().iter().all(|v| *v >= 0.0));
        }
    }

    // l1_distance is a metric over a fixed nesting: zero iff the aggregated
    // masses agree, and the triangle inequality holds on triples.
    #[test]
    fn l1_metric_properties(
        cells in 1usize..12,
        radius in 0.5f64..20.0,
        raw_a in proptest::collection::vec(0.0f64..1.0, 12),
        raw_b in proptest::collection::vec(0.0f64..1.0, 24),
        raw_c in proptest::collection::vec(0.0f64..1.0, 24),
    ) {
        let coarse = Arc::new(Grid::uniform(radius, cells).unwrap());
        let fine = Arc::new(Grid::uniform(radius, 2 * cells).unwrap());
        let a = State::new(coarse.clone(), raw_a[..cells].to_vec()).unwrap();
        let b = State::new(fine.clone(), raw_b[..2 * cells].to_vec()).unwrap();
        let c = State::new(fine.clone(), raw_c[..2 * cells].to_vec()).unwrap();

        let dab = l1_distance(&a, &b).unwrap();
        prop_assert!(dab >= 0.0);

        // exact aggregation: move b's masses into a coarse state
        let wb = fine.widths();
        let agg: Vec<f64> = (0..cells)
            .map(|k| (b.densities()[2 * k] * wb[2 * k] + b.densities()[2 * k + 1] * wb[2 * k + 1])
                / coarse.widths()[k])
            .collect();
        let a_eq = State::new(coarse.clone(), agg).unwrap();
        prop_assert!(l1_distance(&a_eq, &b).unwrap() <= 1e-12 * dab.max(1.0));

        // triangle inequality through the shared fine grid
        let dac = l1_distance(&a, &c).unwrap();
        let dbc: f64 = (0..cells)
            .map(|k| {
                let mb = b.densities()[2 * k] * wb[2 * k] + b.densities()[2 * k + 1] * wb[2 * k + 1];
                let mc = c.densities()[2 * k] * wb[2 * k] + c.densities()[2 * k + 1] * wb[2 * k + 1];
                (mb - mc).abs()
            })
            .sum();
        prop_assert!(dac <= dab + dbc + 1e-12);
    }
}

#[test]
fn energy_balance_consistent_between_routes() {
    // T from oracle_energy_balance equals the ω-weighted total of the
    // optimized fluxes, plain and weighted alike.
    let grid = Arc::new(Grid::geometric((1e-5f64).ln(), 4.0f64.ln(), 19).unwrap());
    let kernels = KernelSpec::new(0.4, 1.1, 0.2, grid.radius()).unwrap();
    let n: Vec<f64> = (0..19).map(|i| 1.0 / (1.0 + i as f64)).collect();
    let state = State::new(grid.clone(), n).unwrap();
    for kind in [SchemeKind::Plain, SchemeKind::Weighted] {
        let stepper = Stepper::new(grid.clone(), &kernels, kind).unwrap();
        let fast = energy_weighted_total(&state, &stepper.fluxes(&state).unwrap());
        let slow = oracle_energy_balance(&state, &kernels, kind).unwrap();
        let fx = oracle_flux(&state, &kernels, kind).unwrap();
        let scale = energy_weighted_magnitude(&state, &fx).max(1e-300);
        assert!((fast - slow).abs() <= 1e-12 * scale);
    }
}

#[test]
fn eoc_handles_exact_levels() {
    let values = eoc(&[0.0, 0.0]).unwrap();
    assert_eq!(values, vec![EocValue::Exact]);
}
