// reference values keep every digit the oracle printed
#![allow(clippy::excessive_precision)]

use super::*;
use approx::assert_relative_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Reference values below come from mpmath (siegeltheta, siegelz, zeta) at
// 30 significant digits.

const GAMMA1: f64 = 14.134_725_141_734_693;

#[test]
fn theta_root_near_17_85() {
    let (mut lo, mut hi) = (17.0, 18.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rs_theta(mid).unwrap() < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((lo - 17.845_599_540_410_86).abs() < 1e-9, "{lo}");
}

#[test]
fn theta_correction_is_just_above_leading_term() {
    // All correction terms of the expansion are positive, so the difference
    // from the elementary part exceeds 1/(48t) by the O(t^-3) remainder.
    for t in [10.0, 30.0, 100.0, 1e3, 1e5] {
        let base = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
        let d = rs_theta(t).unwrap() - base;
        let lead = 1.0 / (48.0 * t);
        // base cancels most of θ; allow its rounding
        let slack = 4.0 * f64::EPSILON * base.abs();
        assert!(d > 0.0 && d >= lead - slack, "t={t}");
        assert!(d < lead + 1.0 / t.powi(3), "t={t}");
    }
    // mpmath: θ(10) − base = 0.00208455248532786
    let base10 = 5.0 * (10.0 / (2.0 * PI)).ln() - 5.0 - PI / 8.0;
    assert!((rs_theta(10.0).unwrap() - base10 - 0.002_084_552_485_327_86).abs() < 1e-13);
}

#[test]
fn theta_matches_gamma_route() {
    let t = 2.0 * PI * 1e4;
    let asym = rs_theta(t).unwrap();
    assert!((asym - 257_935.057_261_970_53).abs() < 1e-9);
    assert!((asym - theta_gamma(t)).abs() < 1e-9);
    for t in [10.0, 29.9, 50.0, 1000.5, 5000.3, 9999.9] {
        assert!(
            (rs_theta(t).unwrap() - theta_gamma(t)).abs() < 1e-10,
            "t={t}"
        );
    }
    assert!((theta_gamma(5.0) - (-3.459_620_375_363_462_5)).abs() < 1e-13);
    assert!((theta_gamma(29.9) - 7.979_719_869_891_962).abs() < 1e-12);
}

#[test]
fn theta_domain() {
    assert!(matches!(rs_theta(0.5), Err(Error::Domain { .. })));
    assert!(rs_theta(f64::NAN).is_err());
    assert!(rs_theta(1.0).is_ok());
}

#[test]
fn theta_is_increasing_from_10() {
    let mut prev = rs_theta(10.0).unwrap();
    let mut t = 10.0;
    while t < 1e4 {
        t += 0.25;
        let cur = rs_theta(t).unwrap();
        assert!(cur > prev, "t={t}");
        prev = cur;
    }
}

#[test]
fn theta_derivative() {
    for t in [100.0, 317.0, 1e3, 4321.0, 1e4, 1e5] {
        let h = 1e-3 * t;
        let fd = (rs_theta(t + h).unwrap() - rs_theta(t - h).unwrap()) / (2.0 * h);
        let expect = 0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t);
        assert_relative_eq!(fd, expect, max_relative = 1e-6);
    }
}

#[test]
fn zeta_classical_values() {
    let z2 = zeta_euler_maclaurin(2.0, 0.0).unwrap();
    assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-13);
    assert!(z2.value.im.abs() < 1e-15);
    let z0 = zeta_euler_maclaurin(0.0, 0.0).unwrap();
    assert!((z0.value.re + 0.5).abs() < 1e-14);
    let z = zeta_euler_maclaurin(0.5, GAMMA1).unwrap();
    assert!(z.value.norm() < 1e-6);
}

#[test]
fn zeta_reference_points() {
    let cases = [
        (0.5, 100.0, 2.692_619_885_681_324, -0.020_386_029_602_598_16),
        (2.0, 3.0, 0.798_021_985_146_275_7, -0.113_744_308_052_938_5),
        (-1.5, 20.0, -4.856_977_220_470_568, -8.774_823_385_208_829),
        (
            0.5,
            5000.0,
            0.406_842_713_635_432_56,
            -0.693_764_159_198_085_1,
        ),
        (0.5, 9999.5, 1.396_948_058_618_037_1, -3.485_608_494_089_748),
        (3.0, 0.5, 1.173_928_724_638_746_8, -0.091_730_267_113_479_45),
    ];
    for (s, t, re, im) in cases {
        let z = zeta_euler_maclaurin(s, t).unwrap();
        let err = (z.value - Complex64::new(re, im)).norm();
        assert!(err < 1e-10, "s={s}+{t}i err={err}");
        assert!(z.abs_err_est.is_finite() && z.abs_err_est >= 0.0);
        assert!(
            err <= z.abs_err_est.max(1e-13) * 10.0,
            "estimate too small at {s}+{t}i"
        );
    }
}

#[test]
fn zeta_errors() {
    assert!(matches!(zeta_euler_maclaurin(1.0, 0.0), Err(Error::Pole)));
    assert!(matches!(
        zeta_euler_maclaurin(0.5, 2e4),
        Err(Error::OutsideOracleRange { .. })
    ));
    // s = 1 + it with t ≠ 0 is fine
    assert!(zeta_euler_maclaurin(1.0, 1.0).is_ok());
}

#[test]
fn hardy_z_reference_points() {
    let cases = [
        (2.5, -0.526_283_003_737_937_6),
        (14.2, 0.052_045_271_715_564_37),
        (18.0, 2.336_799_689_916_951_9),
        (29.9, 0.744_276_126_695_661),
        (50.0, -0.340_735_005_955_025),
        (1000.5, 2.549_261_135_555_555_6),
        (5000.3, 0.208_182_937_029_727_85),
        (9999.9, -0.997_774_019_154_899_5),
    ];
    for (t, z) in cases {
        let p = hardy_z(t).unwrap();
        assert!(
            (p.z_value - z).abs() < 1e-8,
            "t={t} got {} want {z}",
            p.z_value
        );
        assert!(
            (p.z_value - z).abs() <= p.abs_err_est,
            "t={t}: estimate {} below error {}",
            p.abs_err_est,
            (p.z_value - z).abs()
        );
    }
}

#[test]
fn hardy_z_vanishes_at_first_ordinate() {
    assert!(hardy_z(GAMMA1).unwrap().z_value.abs() < 1e-5);
    // exactly one zero in (14.2, 18): the signs differ
    let a = hardy_z(14.2).unwrap().z_value;
    let b = hardy_z(18.0).unwrap().z_value;
    assert!(a.signum() == b.signum(), "no ordinate lies in (14.2, 18)");
    let c = hardy_z(14.0).unwrap().z_value;
    assert!(c.signum() != a.signum(), "one ordinate lies in (14, 14.2)");
}

#[test]
fn hardy_z_method_selection() {
    assert_eq!(hardy_z(29.0).unwrap().method, Method::EulerMaclaurin);
    assert_eq!(
        hardy_z(RS_CROSSOVER + 1.0).unwrap().method,
        Method::RiemannSiegel
    );
    assert!(matches!(hardy_z(1.9), Err(Error::Domain { .. })));
}

#[test]
fn modulus_identity_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let t: f64 = rng.gen_range(2.0..1e4);
        let z = hardy_z(t).unwrap().z_value;
        let em = zeta_euler_maclaurin(0.5, t).unwrap().value.norm();
        assert!((z.abs() - em).abs() < 1e-7, "t={t}");
    }
}

#[test]
fn riemann_siegel_agrees_with_euler_maclaurin() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ts: Vec<f64> = (0..150).map(|_| rng.gen_range(30.0..1e4)).collect();
    ts.extend([30.0, 35.0, 40.0, 60.0]);
    for t in ts {
        let rs = riemann_siegel_z(t).unwrap();
        let em = euler_maclaurin_z(t).unwrap();
        let diff = (rs.z_value - em.z_value).abs();
        assert!(diff <= rs.abs_err_est + em.abs_err_est, "t={t} diff={diff}");
    }
}

#[test]
fn certain_sign() {
    let p = CriticalLinePoint {
        t: 1.0,
        z_value: 1e-12,
        method: Method::EulerMaclaurin,
        abs_err_est: 1e-10,
    };
    assert_eq!(p.certain_sign(), None);
    let q = CriticalLinePoint { z_value: -0.5, ..p };
    assert_eq!(q.certain_sign(), Some(-1.0));
}
