use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use ysc_core::control::{
    apply_limits, brake_torque_for_moment, brake_wheel_for, compute_references, select_brake_wheel, ReferenceState,
};
use ysc_core::estimation::{kf_predict, kf_update, KalmanState};
use ysc_core::params::{KalmanParams, VehicleParams};
use ysc_core::plant::double_track::brake_yaw_moment;
use ysc_core::plant::single_track::{SingleTrackDiscrete, SingleTrackState};
use ysc_core::plant::Wheel;

fn steer(t: f64) -> f64 {
    0.03 * (2.0 * std::f64::consts::PI * 0.4 * t).sin()
}

/// Runs the filter against the matched discrete plant. Returns per-step
/// `(beta_error, innovation / sqrt(variance))`.
fn track(v: f64, x0: SingleTrackState, beta_hat0: f64, noise: f64, seconds: f64) -> Vec<(f64, f64)> {
    let p = VehicleParams::default();
    let kp = KalmanParams::default();
    let dt = 0.01;
    let plant = SingleTrackDiscrete::new(&p, v, dt).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = Normal::new(0.0, noise.max(1e-300)).unwrap();
    let mut x = x0;
    let mut ks = KalmanState::new(SingleTrackState { beta: beta_hat0, r: x0.r }, &kp);
    let mut out = Vec::new();
    let steps = (seconds / dt).round() as usize;
    for k in 0..steps {
        let t = k as f64 * dt;
        let d = steer(t);
        x = plant.step(&x, d, 0.0);
        let z = x.r + if noise > 0.0 { n.sample(&mut rng) } else { 0.0 };
        ks = kf_predict(&ks, d, v, dt, &p, &kp).unwrap();
        let (post, inn) = kf_update(&ks, z, &kp);
        ks = post;
        out.push((ks.x_hat.beta - x.beta, inn.residual / inn.variance.sqrt()));
    }
    out
}

#[test]
fn sideslip_estimate_converges_from_wrong_start() {
    for v in [10.0, 22.22, 35.0] {
        let trace = track(v, SingleTrackState::default(), 0.05, 0.0, 3.0);
        // Error after t = 2 s (200 steps at 10 ms).
        let worst = trace[199..].iter().map(|e| e.0.abs()).fold(0.0, f64::max);
        assert!(worst < 1e-3, "v = {v}: {worst}");
    }
}

#[test]
fn estimate_unbiased_on_matched_plant() {
    let trace = track(22.22, SingleTrackState::default(), 0.0, 0.0, 10.0);
    let mean = trace.iter().map(|e| e.0).sum::<f64>() / trace.len() as f64;
    assert!(mean.abs() < 1e-4, "{mean}");
}

#[test]
fn innovations_zero_mean_under_noise() {
    let kp = KalmanParams::default();
    let trace = track(22.22, SingleTrackState::default(), 0.0, kp.r_meas.sqrt(), 20.0);
    // Skip the initial transient.
    let z: Vec<f64> = trace[100..].iter().map(|e| e.1).collect();
    let n = z.len() as f64;
    let mean = z.iter().sum::<f64>() / n;
    let sd = (z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    assert!(mean.abs() < 3.0 * sd / n.sqrt(), "mean {mean}, sd {sd}");
}

#[test]
fn covariance_stays_symmetric_psd() {
    let p = VehicleParams::default();
    let mut kp = KalmanParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut ks = KalmanState::new(SingleTrackState::default(), &kp);
    for _ in 0..100_000 {
        kp.r_meas = 10f64.powf(rng.random_range(-10.0..0.0));
        let q = 10f64.powf(rng.random_range(-12.0..-1.0));
        kp.q = [[q, 0.0], [0.0, q * rng.random_range(0.1..10.0)]];
        let v = rng.random_range(1.0..50.0);
        let dt = rng.random_range(1e-4..5e-2);
        ks = kf_predict(&ks, rng.random_range(-0.3..0.3), v, dt, &p, &kp).unwrap();
        ks = kf_update(&ks, rng.random_range(-1.0..1.0), &kp).0;
        let m = ks.p.0;
        assert_eq!(m[0][1], m[1][0]);
        let [a, b] = ks.p.symmetric_eigenvalues();
        assert!(a >= -1e-10 && b >= -1e-10, "{m:?}");
    }
}

proptest! {
    #[test]
    fn limits_idempotent_and_sign_preserving(
        delta in -0.5..0.5f64, v in 1.0..60.0f64, mu in 0.05..1.3f64
    ) {
        let p = VehicleParams::default();
        let r = compute_references(delta, v, &p).unwrap();
        let once = apply_limits(&r, mu, v, p.g);
        let twice = apply_limits(&once, mu, v, p.g);
        let again = apply_limits(&ReferenceState { r_nom: once.r_limited, beta_nom: once.beta_limited, ..once }, mu, v, p.g);
        prop_assert_eq!(once, twice);
        prop_assert_eq!(again.r_limited, once.r_limited);
        prop_assert_eq!(again.beta_limited, once.beta_limited);
        prop_assert!(once.r_limited * r.r_nom >= 0.0);
        prop_assert!(once.beta_limited * r.beta_nom >= 0.0);
        prop_assert!(once.r_limited.abs() <= r.r_nom.abs());
    }

    #[test]
    fn brake_torque_positively_homogeneous(m in 1.0..1000.0f64, c in 0.01..2.0f64, front: bool, delta in -0.3..0.3f64) {
        let p = VehicleParams::default();
        let base = brake_torque_for_moment(m, front, delta, &p, f64::INFINITY).unwrap();
        let scaled = brake_torque_for_moment(c * m, front, delta, &p, f64::INFINITY).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-12 * scaled.max(1.0));
    }

    #[test]
    fn brake_selection_is_total(r in -2.0..2.0f64, r_nom in -2.0..2.0f64) {
        prop_assume!((r - r_nom).abs() > 0.02);
        prop_assert!(select_brake_wheel(r, r_nom, 0.02).is_some());
    }
}

#[test]
fn rear_closed_form_equals_general_geometry() {
    let p = VehicleParams::default();
    for m in [500.0, 1500.0, 3000.0, 4321.5] {
        let general = brake_torque_for_moment(m, false, 0.0, &p, f64::INFINITY).unwrap();
        let closed = m * p.rw / (p.lw2 / 2.0);
        assert!((general - closed).abs() <= 1e-12 * closed);
    }
}

/// Representative `(r, r_nom)` per table row.
const CASES: [(f64, f64); 6] = [(0.3, 0.2), (0.1, 0.25), (-0.2, 0.05), (0.2, -0.1), (-0.1, -0.3), (-0.3, -0.1)];

#[test]
fn mirrored_selection_opposes_yaw_error() {
    let p = VehicleParams::default();
    for (r, r_nom) in CASES {
        for delta in [0.0, 0.05, -0.05] {
            let w = brake_wheel_for(r, r_nom, 0.02, true).unwrap();
            let m = brake_yaw_moment(w, 1000.0, delta, &p);
            assert_eq!(m.signum(), (r_nom - r).signum(), "r={r} r_nom={r_nom} wheel={w}");
        }
    }
}

#[test]
fn verbatim_table_pushes_the_other_way_on_left_positive_axes() {
    let p = VehicleParams::default();
    for (r, r_nom) in CASES {
        let w = select_brake_wheel(r, r_nom, 0.02).unwrap();
        let m = brake_yaw_moment(w, 1000.0, 0.0, &p);
        assert_eq!(m.signum(), (r - r_nom).signum());
    }
}

#[test]
fn mirror_flag_swaps_sides_only() {
    for (r, r_nom) in CASES {
        let a = select_brake_wheel(r, r_nom, 0.02).unwrap();
        let b = brake_wheel_for(r, r_nom, 0.02, true).unwrap();
        assert_eq!(a.is_front(), b.is_front());
        assert_ne!(a.is_left(), b.is_left());
        assert_eq!(brake_wheel_for(r, r_nom, 0.02, false), Some(a));
    }
    assert_eq!(Wheel::FL.mirrored(), Wheel::FR);
}
