//! Bessel functions of the first kind needed by the disk window kernel.
//!
//! J0 and J1 use the classical rational fits (absolute error below 1e-7,
//! which the 1% spectral-constant tolerances absorb comfortably); the
//! half-integer orders have elementary closed forms.

/// J0(x), Bessel function of the first kind, order zero.
pub fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 8.0 {
        let y = x * x;
        let p1 = 57_568_490_574.0
            + y * (-13_362_590_354.0
                + y * (651_619_640.7
                    + y * (-11_214_424.18 + y * (77_392.33017 + y * (-184.905_245_6)))));
        let p2 = 57_568_490_411.0
            + y * (1_029_532_985.0
                + y * (9_494_680.718 + y * (59_272.64853 + y * (267.853_271_2 + y))));
        p1 / p2
    } else {
        let z = 8.0 / ax;
        let y = z * z;
        let xx = ax - 0.785_398_163_397_448_3;
        let p1 = 1.0
            + y * (-0.109_862_862_7e-2
                + y * (0.273_451_040_7e-4 + y * (-0.207_337_063_9e-5 + y * 0.209_388_721_1e-6)));
        let p2 = -0.156_249_999_5e-1
            + y * (0.143_048_876_5e-3
                + y * (-0.691_114_765_1e-5 + y * (0.762_109_516_1e-6 + y * (-0.934_935_152e-7))));
        (0.636_619_772 / ax).sqrt() * (xx.cos() * p1 - z * xx.sin() * p2)
    }
}

/// J1(x), Bessel function of the first kind, order one.
pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let result = if ax < 8.0 {
        let y = x * x;
        let p1 = x
            * (72_362_614_232.0
                + y * (-7_895_059_235.0
                    + y * (242_396_853.1
                        + y * (-2_972_611.439 + y * (15_704.48260 + y * (-30.160_366_06))))));
        let p2 = 144_725_228_442.0
            + y * (2_300_535_178.0
                + y * (18_583_304.74 + y * (99_447.43394 + y * (376.999_139_7 + y))));
        return p1 / p2;
    } else {
        let z = 8.0 / ax;
        let y = z * z;
        let xx = ax - 2.356_194_490_192_345;
        let p1 = 1.0
            + y * (0.183_105e-2
                + y * (-0.351_639_64e-4 + y * (0.245_752_017_4e-5 + y * (-0.240_337_019e-6))));
        let p2 = 0.046_874_999_95
            + y * (-0.200_269_087_3e-3
                + y * (0.844_919_909_6e-5 + y * (-0.882_289_87e-6 + y * 0.105_787_412e-6)));
        (0.636_619_772 / ax).sqrt() * (xx.cos() * p1 - z * xx.sin() * p2)
    };
    if x < 0.0 {
        -result
    } else {
        result
    }
}

/// J_{1/2}(x) = sqrt(2/(pi x)) sin(x)
pub fn j_half(x: f64) -> f64 {
    (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin()
}

/// J_{3/2}(x) = sqrt(2/(pi x)) (sin(x)/x - cos(x))
pub fn j_three_halves(x: f64) -> f64 {
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (x.sin() / x - x.cos())
}

/// s-th positive zero of J1 (s >= 1), from the McMahon expansion refined
/// by two Newton steps (J1'(x) = J0(x) - J1(x)/x).
pub fn j1_zero(s: usize) -> f64 {
    let beta = (s as f64 + 0.25) * std::f64::consts::PI;
    let mut x = beta - 3.0 / (8.0 * beta);
    for _ in 0..4 {
        let f = j1(x);
        let df = j0(x) - f / x;
        x -= f / df;
    }
    x
}
