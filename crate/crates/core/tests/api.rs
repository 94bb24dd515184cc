use sympoly_core::verify::SUITES;
use sympoly_core::{
    c, in_gtilde, lift_even, lift_odd, necessary_condition, r_coeff, run_suite, sample_inside_gn, sample_inside_gtilde,
    two_point_norm_check, Cplx, DerivativeData, DomainPoint, Error, LiftInput, Mat2, SampleConfig, SampleMode,
};

fn close(a: Cplx, b: Cplx) -> bool {
    (a - b).norm() < 1e-14
}

#[test]
fn lift_small_cases() {
    let (a, b, cc, d) = (c(0.2, 0.1), c(-0.3, 0.0), c(0.1, 0.4), c(0.05, -0.2));
    let y = lift_odd(&LiftInput::new(vec![Mat2::new(a, b, cc, d)])).unwrap();
    let want = [3.0 * a, 3.0 * d, a * d - b * cc];
    assert!(y.coords().iter().zip(want).all(|(u, v)| close(*u, v)));

    let m = Mat2::diag(a, d);
    let y = lift_even(&LiftInput::new(vec![m, m])).unwrap();
    let want = [4.0 * a, 3.0 * (a + d), 4.0 * d, a * d];
    assert!(y.coords().iter().zip(want).all(|(u, v)| close(*u, v)));
}

#[test]
fn lift_rejects_mismatched_determinants() {
    let t = LiftInput::new(vec![Mat2::diag(c(0.5, 0.0), c(0.5, 0.0)), Mat2::diag(c(0.1, 0.0), c(0.1, 0.0))]);
    assert!(matches!(lift_even(&t), Err(Error::DetMismatch { .. })));
}

#[test]
fn schwarz_constants() {
    let d = DerivativeData::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0 / 3.0, 0.0)]).unwrap();
    assert!(close(r_coeff(&d).unwrap(), c(0.4, 0.0)));
    let outside = DerivativeData::new(vec![c(3.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
    assert!(!necessary_condition(&outside).holds);
}

#[test]
fn two_point_check_on_the_q_axis() {
    let y = DomainPoint::new(vec![c(0.0, 0.0); 3], c(0.0, 0.4)).unwrap();
    assert!(two_point_norm_check(c(0.5, 0.0), &y).unwrap());
    assert!(!two_point_norm_check(c(0.3, 0.0), &y).unwrap());
    assert!(two_point_norm_check(c(1.0, 0.0), &y).is_err());
}

#[test]
fn samplers_are_inside_and_reproducible() {
    let cfg = SampleConfig::new(5, 2000, 3, SampleMode::InsideBeta);
    let a = sample_inside_gtilde(&cfg).unwrap();
    assert!(a.iter().all(|y| in_gtilde(y).is_inside()));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&sample_inside_gtilde(&cfg).unwrap()).unwrap()
    );
    assert!(sample_inside_gn(&cfg).is_err());
    let polydisc = sample_inside_gn(&cfg.with_mode(SampleMode::InsidePolydisc)).unwrap();
    assert_eq!(polydisc.len(), 2000);
}

#[test]
fn suites_are_registered() {
    let cfg = SampleConfig::new(4, 20, 1, SampleMode::InsideBeta);
    for name in SUITES {
        assert!(run_suite(name, &cfg).unwrap().passed, "{name}");
    }
    assert!(matches!(run_suite("missing", &cfg), Err(Error::UnknownSuite(_))));
}
