use proptest::prelude::*;
use roadfield::{
    fit_speed, front_series, init_state, is_ordered, run, run_from, total_mass, Channel, FieldState, Grid,
    InitialDatum, ModelParams, ReactionFunction, SimError, Stepper,
};

fn grid_for(params: &ModelParams, half: f64, height: f64, spacing: f64) -> Grid {
    Grid::with_spacing(-half, half, height, spacing, spacing, 1.0)
        .unwrap()
        .with_cfl(params, 0.4)
        .unwrap()
}

fn arb_params() -> impl Strategy<Value = ModelParams> {
    (0.0..20.0f64, 0.2..3.0f64, 0.1..3.0f64, 0.1..3.0f64, 0.1..2.0f64)
        .prop_map(|(big_d, d, mu, nu, rate)| ModelParams::new(big_d, d, mu, nu, rate).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ordered_data_stay_ordered(
        params in arb_params(),
        seed_a in proptest::collection::vec(0.0..1.5f64, 21 * 11 + 21),
        lift in proptest::collection::vec(0.0..0.4f64, 21 * 11 + 21),
    ) {
        let grid = grid_for(&params, 2.5, 2.5, 0.25);
        let (u_a, v_a) = seed_a.split_at(grid.nx);
        let high: Vec<f64> = seed_a.iter().zip(&lift).map(|(a, l)| a + l).collect();
        let (u_b, v_b) = high.split_at(grid.nx);
        let mut a = FieldState::from_arrays(&grid, 0.0, u_a.to_vec(), v_a.to_vec()).unwrap();
        let mut b = FieldState::from_arrays(&grid, 0.0, u_b.to_vec(), v_b.to_vec()).unwrap();
        let stepper = Stepper::new(&params, &grid, &b).unwrap();
        for _ in 0..100 {
            a = stepper.step(&a).unwrap();
            b = stepper.step(&b).unwrap();
            prop_assert!(is_ordered(&a, &b).unwrap());
        }
    }

    #[test]
    fn nonnegativity_is_preserved(params in arb_params(), center in -2.0..2.0f64) {
        let grid = grid_for(&params, 6.0, 4.0, 0.25);
        let datum = InitialDatum::RoadOnlyBump { center, width: 1.5, amplitude: 3.0 };
        let record = run(&params, &grid, &datum, 200.0 * grid.dt, 10.0 * grid.dt).unwrap();
        prop_assert!(record.final_state.is_nonnegative());
    }

    #[test]
    fn mass_is_conserved_without_reaction(params in arb_params()) {
        let params = params.set_reaction(ReactionFunction::off(params.growth_rate())).unwrap();
        let grid = grid_for(&params, 10.0, 6.0, 0.25);
        let datum = InitialDatum::CompactBump { center: 0.0, width: 1.0, amplitude_u: 0.5, amplitude_v: 1.0 };
        // 300 steps keep the support well inside the box for every draw
        let record = run(&params, &grid, &datum, 300.0 * grid.dt, 50.0 * grid.dt).unwrap();
        let m0 = record.mass[0];
        for m in &record.mass {
            prop_assert!((m - m0).abs() <= 1e-12 * m0);
        }
    }
}

#[test]
fn logistic_run_stays_below_constant_supersolution() {
    // (max(nu/mu, 1) * k, k) with k >= 1 is a supersolution; the datum sits
    // under the one through its own sup
    let params = ModelParams::new(3.0, 1.0, 2.0, 1.0, 1.0).unwrap();
    let grid = grid_for(&params, 8.0, 6.0, 0.25);
    let datum = InitialDatum::CompactBump {
        center: 0.0,
        width: 2.0,
        amplitude_u: 0.4,
        amplitude_v: 1.0,
    };
    let record = run(&params, &grid, &datum, 10.0, 0.5).unwrap();
    for (_, profile) in &record.road_profiles {
        assert!(profile.iter().all(|&u| u <= params.road_equilibrium() + 1e-12));
    }
    for (_, trace) in &record.field_traces {
        assert!(trace.iter().all(|&v| v <= 1.0 + 1e-12));
    }
}

#[test]
fn runs_are_bit_identical_across_thread_counts() {
    let params = ModelParams::new(5.0, 1.0, 1.0, 1.0, 1.0).unwrap();
    let grid = grid_for(&params, 10.0, 5.0, 0.25);
    let datum = InitialDatum::field_bump(2.0);
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run(&params, &grid, &datum, 2.0, 0.5).unwrap());
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| run(&params, &grid, &datum, 2.0, 0.5).unwrap());
    assert_eq!(serial, parallel);
}

#[test]
fn restart_reproduces_a_single_run() {
    let params = ModelParams::unit();
    let grid = grid_for(&params, 8.0, 4.0, 0.25);
    let datum = InitialDatum::field_bump(2.0);
    let steps = 400;
    let whole = run(&params, &grid, &datum, steps as f64 * grid.dt, 1.0).unwrap();
    let first = run(&params, &grid, &datum, (steps / 2) as f64 * grid.dt, 1.0).unwrap();
    let second = run_from(&params, &grid, first.final_state, (steps / 2) as f64 * grid.dt, 1.0).unwrap();
    assert_eq!(whole.final_state.u, second.final_state.u);
    assert_eq!(whole.final_state.v, second.final_state.v);
}

#[test]
fn instability_is_reported_with_its_step() {
    let params = ModelParams::unit();
    let grid = grid_for(&params, 4.0, 4.0, 0.25);
    let mut state = init_state(&grid, &InitialDatum::field_bump(1.0)).unwrap();
    // a spike far above the bound fixed at construction
    let stepper = Stepper::new(&params, &grid, &state).unwrap();
    state.v[3] = 1e9;
    match stepper.step(&state) {
        Err(SimError::BlowUp { value, bound, .. }) => assert!(value > bound),
        other => panic!("expected blow-up, got {other:?}"),
    }
}

#[test]
fn road_and_trace_fronts_agree_on_a_short_run() {
    let params = ModelParams::unit();
    let grid = grid_for(&params, 60.0, 15.0, 0.5);
    let datum = InitialDatum::CompactBump {
        center: 0.0,
        width: 2.0,
        amplitude_u: 1.0,
        amplitude_v: 1.0,
    };
    let record = run(&params, &grid, &datum, 20.0, 0.25).unwrap();
    let road = fit_speed(&front_series(&record, &grid, Channel::Road, 0.5), 0.5).unwrap();
    let trace = fit_speed(&front_series(&record, &grid, Channel::FieldTrace, 0.5), 0.5).unwrap();
    assert!(
        (road.speed - trace.speed).abs() < 0.05,
        "{} vs {}",
        road.speed,
        trace.speed
    );
    // early in the run the front lags the asymptotic speed but is not far off
    assert!(road.speed > 1.6 && road.speed < 2.05, "{}", road.speed);
    let m = total_mass(&record.final_state, &grid);
    assert!(m.is_finite() && m > 0.0);
}

#[test]
fn front_speed_is_insensitive_to_the_threshold() {
    let params = ModelParams::unit();
    let grid = grid_for(&params, 60.0, 15.0, 0.5);
    let datum = InitialDatum::field_bump(2.0);
    let record = run(&params, &grid, &datum, 20.0, 0.25).unwrap();
    let speeds: Vec<f64> = [0.1, 0.5, 0.9]
        .iter()
        .map(|&theta| {
            fit_speed(&front_series(&record, &grid, Channel::Road, theta), 0.5)
                .unwrap()
                .speed
        })
        .collect();
    let spread = speeds.iter().cloned().fold(f64::MIN, f64::max) - speeds.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread < 0.1, "{speeds:?}");
}
