//! Sine/cosine integrals and the exponential integral on the imaginary axis.
//!
//! `Ei(iy) = Ci(|y|) + i (Si(y) + π/2 · sign y)`, the principal branch of
//! `γ + Log(iy) + Σ (iy)ⁿ/(n·n!)`. Three evaluation regimes:
//!
//! | `|y|`            | method                             |
//! |------------------|------------------------------------|
//! | `< 6`            | power series                       |
//! | `[6, 40)`        | continued fraction for `E₁(iy)`    |
//! | `≥ 40`           | asymptotic auxiliary functions     |

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch from the power series to the continued fraction.
pub const SERIES_LIMIT: f64 = 6.0;
/// Switch from the continued fraction to the asymptotic expansion.
pub const ASYMPTOTIC_LIMIT: f64 = 40.0;

const EPS: f64 = 1.0e-17;
const MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EiMethod {
    Series,
    ContinuedFraction,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EiValue {
    pub value: Complex64,
    pub arg: Complex64,
    pub method: EiMethod,
}

pub fn method_for(y: f64) -> EiMethod {
    let y = y.abs();
    if y < SERIES_LIMIT {
        EiMethod::Series
    } else if y < ASYMPTOTIC_LIMIT {
        EiMethod::ContinuedFraction
    } else {
        EiMethod::Asymptotic
    }
}

/// `(Si(y), Ci(y))` for `y > 0`.
pub fn si_ci(y: f64) -> Result<(f64, f64)> {
    if y <= 0.0 || !y.is_finite() {
        return Err(Error::Domain("si_ci needs a finite positive argument"));
    }
    Ok(si_ci_with(y, method_for(y)))
}

/// `(Si(y), Ci(y))` forced through one method. Used to check the seams.
pub fn si_ci_with(y: f64, method: EiMethod) -> (f64, f64) {
    match method {
        EiMethod::Series => si_ci_series(y),
        EiMethod::ContinuedFraction => si_ci_continued_fraction(y),
        EiMethod::Asymptotic => si_ci_asymptotic(y),
    }
}

fn si_ci_series(y: f64) -> (f64, f64) {
    let y2 = y * y;

    let mut term = y;
    let mut si = y;
    let mut n = 0usize;
    while n < MAX_ITER {
        let k = (2 * n + 2) as f64;
        term *= -y2 / (k * (k + 1.0));
        let contrib = term / (k + 1.0);
        si += contrib;
        if contrib.abs() <= EPS * si.abs() {
            break;
        }
        n += 1;
    }

    let mut term = 1.0;
    let mut sum = 0.0;
    let mut n = 1usize;
    while n < MAX_ITER {
        let k = (2 * n) as f64;
        term *= -y2 / ((k - 1.0) * k);
        let contrib = term / k;
        sum += contrib;
        if contrib.abs() <= EPS * (sum.abs() + 1e-300) {
            break;
        }
        n += 1;
    }
    (si, EULER_GAMMA + libm::log(y) + sum)
}

/// Modified Lentz evaluation of `E₁(iy) = -Ci(y) + i(Si(y) - π/2)`.
fn si_ci_continued_fraction(y: f64) -> (f64, f64) {
    const TINY: f64 = 1.0e-300;
    let mut b = Complex64::new(1.0, y);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1.0e-16 {
            break;
        }
    }
    h *= Complex64::new(libm::cos(y), -libm::sin(y));
    (FRAC_PI_2 + h.im, -h.re)
}

fn si_ci_asymptotic(y: f64) -> (f64, f64) {
    let inv2 = 1.0 / (y * y);
    // f(y) = (1/y) Σ (-1)^n (2n)!/y^{2n}, g(y) = (1/y²) Σ (-1)^n (2n+1)!/y^{2n}
    let mut f = 1.0;
    let mut g = 1.0;
    let mut tf = 1.0f64;
    let mut tg = 1.0f64;
    for n in 1..MAX_ITER {
        let k = (2 * n) as f64;
        let nf = -tf * (k - 1.0) * k * inv2;
        let ng = -tg * k * (k + 1.0) * inv2;
        if nf.abs() > tf.abs() || ng.abs() > tg.abs() {
            break;
        }
        tf = nf;
        tg = ng;
        f += tf;
        g += tg;
        if tf.abs() < EPS * f.abs() && tg.abs() < EPS * g.abs() {
            break;
        }
    }
    let f = f / y;
    let g = g * inv2;
    let (s, c) = (libm::sin(y), libm::cos(y));
    (FRAC_PI_2 - f * c - g * s, f * s - g * c)
}

/// `Ei(iy)` on the principal branch.
pub fn ei_imag(y: f64) -> Result<Complex64> {
    ei_imag_detailed(y).map(|v| v.value)
}

pub fn ei_imag_detailed(y: f64) -> Result<EiValue> {
    if y == 0.0 {
        return Err(Error::Domain("Ei(iy) is logarithmically singular at y = 0"));
    }
    if !y.is_finite() {
        return Err(Error::Domain("Ei(iy) needs a finite argument"));
    }
    let method = method_for(y);
    let (si, ci) = si_ci_with(y.abs(), method);
    let sign = y.signum();
    Ok(EiValue {
        value: Complex64::new(ci, sign * (si + FRAC_PI_2)),
        arg: Complex64::new(0.0, y),
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn small_argument_limit() {
        for y in [1e-4, 1e-5, 1e-6] {
            let e = ei_imag(y).unwrap();
            let rem = e - Complex64::new(EULER_GAMMA + libm::log(y), 0.0);
            assert!((rem - Complex64::new(0.0, FRAC_PI_2)).norm() < 2.0 * y);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for y in [3.7, 0.01, 6.0, 12.5, 55.0, 1e3] {
            assert_eq!(ei_imag(-y).unwrap(), ei_imag(y).unwrap().conj());
        }
    }

    #[test]
    fn large_argument_imaginary_part_tends_to_pi() {
        let e = ei_imag(1.0e4).unwrap();
        assert!((e.im - PI).abs() < 1.1e-4);
        assert!(e.re.abs() < 1.1e-4);
    }

    #[test]
    fn known_values() {
        // Si(1), Ci(1), Si(10), Ci(10) to 16 digits.
        let (si, ci) = si_ci(1.0).unwrap();
        assert!((si - 0.946_083_070_367_183).abs() < 1e-15);
        assert!((ci - 0.337_403_922_900_968_1).abs() < 1e-15);
        let (si, ci) = si_ci(10.0).unwrap();
        assert!((si - 1.658_347_594_218_874).abs() < 1e-14);
        assert!((ci + 0.045_456_433_004_455_37).abs() < 1e-14);
    }

    #[test]
    fn small_si_over_y_and_negative_ci() {
        let (si, ci) = si_ci(1e-8).unwrap();
        assert!((si / 1e-8 - 1.0).abs() < 1e-15);
        assert!(ci < 0.0);
        assert!(si_ci(0.0).is_err());
        assert!(si_ci(-1.0).is_err());
        assert!(ei_imag(0.0).is_err());
    }

    #[test]
    fn method_regimes() {
        assert_eq!(ei_imag_detailed(1.0).unwrap().method, EiMethod::Series);
        assert_eq!(ei_imag_detailed(-10.0).unwrap().method, EiMethod::ContinuedFraction);
        assert_eq!(ei_imag_detailed(100.0).unwrap().method, EiMethod::Asymptotic);
    }
}
