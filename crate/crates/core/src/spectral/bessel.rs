//! Modified Bessel function `K_0` on `(0, ∞)`.
//!
//! Power series for `x ≤ 2`; for `x > 2` the Steed/Temme continued
//! fraction for `√x eˣ K_0(x)`. Both branches are accurate to a few ulp.

use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_SPLIT: f64 = 2.0;
const MAX_TERMS: usize = 500;

/// `K_0(x)`; NaN for `x < 0` or NaN, `+∞` at zero.
pub fn k0(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= SERIES_SPLIT {
        k0_series(x)
    } else {
        k0e_continued_fraction(x) * (-x).exp()
    }
}

/// Exponentially scaled `eˣ K_0(x)`, finite for large `x`.
pub fn k0e(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= SERIES_SPLIT {
        k0_series(x) * x.exp()
    } else {
        k0e_continued_fraction(x)
    }
}

/// `K_0(x) = −(ln(x/2) + γ) I_0(x) + Σ_{k≥1} H_k (x²/4)^k / (k!)²`.
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term * harmonic < 1e-17 * tail.abs() && term < 1e-17 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// `eˣ K_0(x)` from the second continued fraction of Steed's method,
/// specialised to order zero.
fn k0e_continued_fraction(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit reference values.
    #[allow(clippy::excessive_precision)]
    const TABLE: &[(f64, f64)] = &[
        (0.001, 7.023_688_800_562_381_343_6),
        (0.1, 2.427_069_024_702_016_612_5),
        (0.5, 0.924_419_071_227_665_861_78),
        (1.0, 0.421_024_438_240_708_333_34),
        (1.9, 0.128_845_979_276_047_479_86),
        (2.0, 0.113_893_872_749_533_435_65),
        (2.1, 0.100_783_740_889_966_945_81),
        (3.0, 0.034_739_504_386_279_248_072),
        (5.0, 0.003_691_098_334_042_594_274_7),
        (10.0, 1.778_006_231_616_765_181_1e-5),
        (20.0, 5.741_237_815_336_524_292_7e-10),
        (50.0, 3.410_167_749_789_495_513_9e-23),
        (100.0, 4.656_628_229_175_902_018_9e-45),
        (700.0, 4.669_776_431_685_376_881e-306),
    ];

    #[test]
    fn reference_values() {
        for &(x, want) in TABLE {
            let got = k0(x);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-14, "K0({x}) = {got}, want {want}, rel {rel:e}");
        }
    }

    #[test]
    fn continuous_at_split() {
        let below = k0_series(SERIES_SPLIT);
        let above = k0e_continued_fraction(SERIES_SPLIT) * (-SERIES_SPLIT).exp();
        assert!(((below - above) / below).abs() < 1e-15);
    }

    #[test]
    fn special_arguments() {
        assert!(k0(-1.0).is_nan());
        assert!(k0(f64::NAN).is_nan());
        assert_eq!(k0(0.0), f64::INFINITY);
        assert_eq!(k0(1e4), 0.0);
        assert!(k0e(1e4) > 0.0);
    }
}
