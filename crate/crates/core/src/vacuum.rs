//! Zero-photon channel: the radiative correction `a`, the exchange amplitude
//! `b` and the concurrence of `(1+a)|EE⟩ + b|GG⟩`.
//!
//! `b` is built from `I = I₊ + I₋` with
//!
//! ```text
//! I_s = −i e^{−iT}/(2z) · [ 2s cos T e^{isz} E(−sz) + e^{−iw} E(w) − e^{iw} E(−w) ],
//! w = z + sT,  T = Ωt,
//! ```
//!
//! where `E(y) = Ei(iy) − iπ sign y` is the imaginary-axis exponential
//! integral continued from the upper half plane (the table convention), and
//! inside the light cone `I₋` carries the extra term `−2πi e^{iw}` in the
//! bracket. With that pairing `I` is continuous at `x = 1`; the cone shows up
//! as a `1/(x−1)` divergence of `b`.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::concurrence::concurrence_two_component;
use crate::error::{Error, Result};
use crate::model::{coupling_k, Kinematics, ModelParams};
use crate::specfun::ei_imag;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub i_plus: Complex64,
    pub i_minus: Complex64,
    pub at: Kinematics,
}

/// `E(y)` in the table convention: `Ci(|y|) + i (Si(y) − π/2 · sign y)`.
pub fn table_ei(y: f64) -> Result<Complex64> {
    Ok(ei_imag(y)? - Complex64::new(0.0, PI * y.signum()))
}

fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Value and first two `z`-derivatives at fixed `Ωt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl core::ops::Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { value: self.value + o.value, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

/// Bracket of `I_s` and its derivatives, with a caller-supplied `E`.
/// `None` for the derivatives when the retarded phase is exactly zero.
fn bracket<E>(branch: Branch, k: &Kinematics, e: &mut E) -> Result<(Jet, bool)>
where
    E: FnMut(f64) -> Result<Complex64>,
{
    let s = branch.sign();
    let z = k.z();
    let t = k.omega_t();
    let two_cos = 2.0 * libm::cos(t);
    let i = Complex64::new(0.0, 1.0);

    // F_s = s·2cos T·e^{isz} E(−sz)
    let q = cis(s * z) * e(-s * z)?;
    let f = Jet {
        value: q * (s * two_cos),
        d1: (i * q + s / z) * two_cos,
        d2: (-q * s + i / z - s / (z * z)) * two_cos,
    };

    let w = match branch {
        Branch::Plus => k.advanced_phase(),
        Branch::Minus => k.retarded_phase(),
    };
    let inside = branch == Branch::Minus && k.inside_lightcone();

    if branch == Branch::Minus && k.on_cone() {
        // G(w) − 2πi e^{iw}·θ(−w) is continuous through w = 0 with value −iπ;
        // its derivatives diverge there.
        let g = Jet { value: Complex64::new(0.0, -PI), d1: Complex64::new(0.0, 0.0), d2: Complex64::new(0.0, 0.0) };
        return Ok((f + g, true));
    }

    // G = e^{−iw}E(w) − e^{iw}E(−w) = 2i·Im p,  H = 2·Re p,  p = e^{−iw}E(w)
    let p = cis(-w) * e(w)?;
    let pm = cis(w) * e(-w)?;
    let g_val = p - pm;
    let h_val = p + pm;
    let mut g = Jet {
        value: g_val,
        d1: -i * h_val,
        d2: -g_val - i * (2.0 / w),
    };
    if inside {
        let phase = cis(w);
        g = g + Jet {
            value: phase * Complex64::new(0.0, -2.0 * PI),
            d1: phase * (2.0 * PI),
            d2: phase * Complex64::new(0.0, 2.0 * PI),
        };
    }
    Ok((f + g, false))
}

fn i_jet_with<E>(branch: Branch, k: &Kinematics, e: &mut E) -> Result<(Jet, bool)>
where
    E: FnMut(f64) -> Result<Complex64>,
{
    let (b, seam) = bracket(branch, k, e)?;
    let z = k.z();
    let c = cis(-k.omega_t()) * Complex64::new(0.0, -0.5);
    let jet = Jet {
        value: c * b.value / z,
        d1: c * (b.d1 / z - b.value / (z * z)),
        d2: c * (b.d2 / z - b.d1 * (2.0 / (z * z)) + b.value * (2.0 / (z * z * z))),
    };
    Ok((jet, seam))
}

/// `I₊` or `I₋` with the imaginary-axis exponential integral supplied by the
/// caller (`e(y)` must return `E(y)` in the table convention).
pub fn eval_i_pm_with<E>(branch: Branch, k: &Kinematics, mut e: E) -> Result<Complex64>
where
    E: FnMut(f64) -> Result<Complex64>,
{
    Ok(i_jet_with(branch, k, &mut e)?.0.value)
}

/// `I₊` or `I₋`. On the cone seam `I₋` is the (continuous) `x → 1` limit.
pub fn eval_i_pm(branch: Branch, k: &Kinematics) -> Result<Complex64> {
    eval_i_pm_with(branch, k, table_ei)
}

/// `I = I₊ + I₋`.
pub fn eval_i(k: &Kinematics) -> Result<Complex64> {
    Ok(eval_i_pm(Branch::Plus, k)? + eval_i_pm(Branch::Minus, k)?)
}

/// `I` and its first two derivatives in `z` at fixed `Ωt`.
pub fn i_jet(k: &Kinematics) -> Result<Jet> {
    let mut e = table_ei;
    let (plus, _) = i_jet_with(Branch::Plus, k, &mut e)?;
    let (minus, seam) = i_jet_with(Branch::Minus, k, &mut e)?;
    if seam {
        return Err(Error::SingularConfiguration("derivatives of I diverge on the light cone"));
    }
    Ok(plus + minus)
}

/// `a = (4iKz³/3x)(ln|1 − z_max/z| + 2πi)` with `z_max = z_max_factor · z`.
pub fn eval_a(p: &ModelParams, k: &Kinematics) -> Result<Complex64> {
    p.validate()?;
    let log = libm::log((1.0 - p.z_max_factor).abs());
    if !log.is_finite() {
        return Err(Error::SingularConfiguration("z equals the cutoff z_max"));
    }
    let kz3 = coupling_k(p, k) * k.z() * k.z() * k.z();
    let pref = Complex64::new(0.0, 4.0 * kz3 / (3.0 * k.x()));
    Ok(pref * Complex64::new(log, 2.0 * PI))
}

/// `b = (αD²/π)(−I'' − I'/z)` for dipoles along `ẑ` and separation along `ŷ`.
pub fn eval_b(p: &ModelParams, k: &Kinematics) -> Result<Complex64> {
    p.validate()?;
    let jet = i_jet(k)?;
    let pref = p.alpha * p.dipole_strength * p.dipole_strength / PI;
    Ok((-jet.d2 - jet.d1 / k.z()) * pref)
}

pub fn vacuum_amplitudes(p: &ModelParams, k: &Kinematics) -> Result<VacuumAmplitudes> {
    Ok(VacuumAmplitudes {
        a: eval_a(p, k)?,
        b: eval_b(p, k)?,
        i_plus: eval_i_pm(Branch::Plus, k)?,
        i_minus: eval_i_pm(Branch::Minus, k)?,
        at: *k,
    })
}

/// `C⁽⁰⁾ = 2|b||1+a| / (|1+a|² + |b|²)`.
///
/// On the seam `|b| → ∞` and the concurrence tends to zero; that limit is
/// returned there.
pub fn concurrence_vacuum(p: &ModelParams, k: &Kinematics) -> Result<f64> {
    p.validate()?;
    if k.on_cone() {
        return Ok(0.0);
    }
    let a = eval_a(p, k)?;
    let b = eval_b(p, k)?;
    concurrence_two_component(Complex64::new(1.0, 0.0) + a, b)
}
