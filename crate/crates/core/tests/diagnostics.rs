use nalgebra::DMatrix;

use isork::diagnostics::{csv_header, least_squares_slope, write_csv_to};
use isork::integrator::{Method, Propagator, StepperConfig};
use isork::lie::cayley_adjoint;
use isork::systems::{IsospectralSystem, RigidBody, ZeitlinSphere};
use isork::{convergence_study, read_csv, record, simulate, write_csv, Error, TrajectoryRecord};

fn body_and_state() -> (RigidBody, DMatrix<f64>) {
    let body = RigidBody::default();
    let mu0 = body.structure().random_element(42, 1.0);
    (body, mu0)
}

#[test]
fn initial_record_has_zero_drift() {
    let (body, mu0) = body_and_state();
    let r = record(&mu0, &mu0, &body, 0, 0.01, 0).unwrap();
    assert_eq!(r.energy_drift, 0.0);
    assert_eq!(r.spectral_drift, 0.0);
    assert_eq!(r.t, 0.0);
    assert!(!r.flagged);
}

#[test]
fn similar_state_has_no_spectral_drift() {
    let z = ZeitlinSphere::new(7).unwrap();
    let mu0 = z.random_initial(1);
    let q = z.structure().random_element(2, 2.0);
    let moved = cayley_adjoint(&q, &mu0).unwrap();
    let r = record(&moved, &mu0, &z, 3, 0.1, 0).unwrap();
    assert!(r.spectral_drift < 1e-10);
    assert!((r.t - 0.3).abs() < 1e-15);
}

#[test]
fn record_rejects_shape_mismatch() {
    let (body, mu0) = body_and_state();
    let bad = DMatrix::<f64>::zeros(4, 4);
    assert!(matches!(
        record(&bad, &mu0, &body, 1, 0.1, 0),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn empty_csv_is_header_only() {
    let mut buf = Vec::new();
    write_csv_to(&[], &["casimir_2".to_string()], &mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        "step,t,energy,energy_drift,spectral_drift,casimir_2,solver_iters,membership_residual\n"
    );
}

#[test]
fn csv_roundtrip_is_bit_exact() {
    let labels = vec!["casimir_2".to_string(), "casimir_3".to_string()];
    let records: Vec<TrajectoryRecord> = (0..20)
        .map(|i| {
            let x = (i as f64 + 0.1).sqrt() * 1e-7 / 3.0;
            TrajectoryRecord {
                step: i,
                t: i as f64 * 0.01,
                energy: 1.0 / 3.0 + x,
                energy_drift: x - 2.5e-17,
                spectral_drift: x * 1e-9,
                casimir_values: vec![std::f64::consts::PI * x, -x],
                solver_iters_total: 7 * i,
                membership_residual: 1e-300 * x,
                flagged: false,
            }
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    write_csv(&records, &labels, &path).unwrap();
    let back = read_csv(&path).unwrap();
    assert_eq!(back.casimir_labels, labels);
    assert_eq!(back.records, records);
    // No exponent notation in the data rows.
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().skip(1).all(|l| !l.contains(['e', 'E'])));
}

#[test]
fn csv_header_order() {
    assert_eq!(
        csv_header(&["casimir_2".into()]),
        [
            "step",
            "t",
            "energy",
            "energy_drift",
            "spectral_drift",
            "casimir_2",
            "solver_iters",
            "membership_residual"
        ]
    );
}

#[test]
fn csv_rejects_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let err = write_csv(&[], &[], dir.path().join("missing/dir/x.csv")).unwrap_err();
    assert!(matches!(err, Error::Io(_)));
}

#[test]
fn conjugation_runs_stay_isospectral_and_energy_bounded() {
    let (body, mu0) = body_and_state();
    let prop = Propagator::new(
        &body,
        Method::parse("midpoint").unwrap(),
        StepperConfig::default(),
        0.01,
    )
    .unwrap();
    let sim = simulate(&prop, &mu0, 100_000, 1).unwrap();
    assert!(sim.error.is_none());
    assert!(sim.max_spectral_drift() < 1e-12);
    let early = sim.records[..=1000]
        .iter()
        .map(|r| r.energy_drift.abs())
        .fold(0.0, f64::max);
    assert!(sim.max_energy_drift() <= 10.0 * early);
    assert_eq!(sim.records.len(), 100_001);
    assert_eq!(sim.records.last().unwrap().t, 1000.0);
}

#[test]
fn simulate_keeps_records_on_failure() {
    let body = RigidBody::default();
    let mu0 = body.structure().random_element(42, 40.0);
    let prop = Propagator::new(
        &body,
        Method::parse("midpoint").unwrap(),
        StepperConfig::default(),
        1.0,
    )
    .unwrap();
    let sim = simulate(&prop, &mu0, 10, 1).unwrap();
    assert_eq!(sim.steps_completed, 0);
    assert_eq!(sim.records.len(), 1);
    assert!(matches!(sim.error, Some(Error::Aborted { step: 1, .. })));
}

#[test]
fn simulate_subsamples_and_keeps_last() {
    let (body, mu0) = body_and_state();
    let prop = Propagator::new(
        &body,
        Method::parse("sdirk2").unwrap(),
        StepperConfig::default(),
        0.01,
    )
    .unwrap();
    let sim = simulate(&prop, &mu0, 25, 10).unwrap();
    let steps: Vec<usize> = sim.records.iter().map(|r| r.step).collect();
    assert_eq!(steps, [0, 10, 20, 25]);
    assert_eq!(
        sim.records.last().unwrap().solver_iters_total,
        sim.total_iters
    );
}

#[test]
fn convergence_with_duplicates_is_deterministic() {
    let (body, mu0) = body_and_state();
    let m = Method::parse("midpoint").unwrap();
    let r = convergence_study(
        &body,
        &m,
        &StepperConfig::default(),
        &mu0,
        &[0.05, 0.1, 0.05],
        1.0,
        0.05 / 8.0,
    )
    .unwrap();
    assert!(r.is_complete());
    assert_eq!(r.h_values, [0.1, 0.05, 0.05]);
    assert_eq!(r.errors[1], r.errors[2]);
    assert!(r.errors.iter().all(|e| *e > 0.0));
}

#[test]
fn convergence_preconditions() {
    let (body, mu0) = body_and_state();
    let m = Method::parse("midpoint").unwrap();
    let cfg = StepperConfig::default();
    let too_coarse = convergence_study(&body, &m, &cfg, &mu0, &[0.1], 1.0, 0.05);
    assert!(matches!(too_coarse, Err(Error::InvalidArgument(_))));
    let not_multiple = convergence_study(&body, &m, &cfg, &mu0, &[0.3], 1.0, 0.3 / 8.0);
    assert!(matches!(not_multiple, Err(Error::InvalidArgument(_))));
}

#[test]
fn convergence_failure_gives_partial_report() {
    let body = RigidBody::default();
    let mu0 = body.structure().random_element(42, 40.0);
    let m = Method::parse("midpoint").unwrap();
    let r = convergence_study(
        &body,
        &m,
        &StepperConfig::default(),
        &mu0,
        &[0.5, 0.001],
        1.0,
        0.000125,
    )
    .unwrap();
    assert!(!r.is_complete());
    assert_eq!(r.h_values, [0.001]);
    assert_eq!(r.failure.as_ref().unwrap().0, 0.5);
}

#[test]
fn slope_fit() {
    let h = [0.1, 0.05, 0.025];
    let e: Vec<f64> = h.iter().map(|h: &f64| 3.0 * h.powi(2)).collect();
    assert!((least_squares_slope(&h, &e) - 2.0).abs() < 1e-12);
    assert!(least_squares_slope(&[0.1], &[1.0]).is_nan());
}
