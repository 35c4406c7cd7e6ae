//! Single-photon building blocks: time integrals `τ±`, the dipole angular
//! kernel `Ā`, the time-ordered kernel `W` and the mode-summed bilinears.
//!
//! Frequencies are in units of `Ω`, times in units of `1/Ω`.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::model::{Kinematics, ModelParams};
use crate::quad::{integrate_adaptive, panel_edges, Tolerance};

/// Relative accuracy requested from every 1D mode integral.
pub const BILINEAR_RTOL: f64 = 1e-6;

/// A cross-atom bilinear moving by more than this when `ν_max` doubles is
/// reported as cutoff dependent.
pub const CUTOFF_SHIFT_LIMIT: f64 = 0.02;

/// Which time integral a vertex carries: `Minus` for the rotating `u`
/// amplitudes (`e^{i(ν−1)t}`), `Plus` for the counter-rotating `v` ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeKernel {
    pub sign: Sign,
    pub nu: f64,
    pub omega_t: f64,
}

impl TimeKernel {
    pub fn eval(&self) -> Complex64 {
        tau(self.sign, self.nu, self.omega_t)
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        libm::sin(u) / u
    }
}

/// `φ(c) = ∫₀ᵀ e^{ict} dt`, stable through `c = 0`.
pub fn phase_integral(c: f64, t: f64) -> Complex64 {
    let half = 0.5 * c * t;
    cis(half) * (t * sinc(half))
}

/// `τ^s(ν, Ωt) = ∫₀^{Ωt} e^{i(ν+s)t′} dt′`.
pub fn tau(sign: Sign, nu: f64, omega_t: f64) -> Complex64 {
    phase_integral(nu + sign.value(), omega_t)
}

/// `Ā(κ) = (3/8π) ∮ dΩ (1 − k̂_z²) e^{iκ k̂·ŷ} = (3/2)(j₀(κ) − j₁(κ)/κ)`.
///
/// Even in `κ`; a negative argument corresponds to the separation vector
/// pointing the other way.
pub fn angular_kernel(kappa: f64) -> f64 {
    let k = kappa.abs();
    if k < 1.0 {
        // (3/2) Σ (−1)ⁿ κ²ⁿ (2n+2)² / (2n+3)!
        let k2 = kappa * kappa;
        let mut sum = 0.0;
        let mut power = 1.0;
        let mut fact = 6.0; // (2n+3)! at n = 0
        for n in 0..12 {
            let m = (2 * n + 2) as f64;
            sum += power * m * m / fact;
            power *= -k2;
            fact *= (2 * n + 4) as f64 * (2 * n + 5) as f64;
        }
        1.5 * sum
    } else {
        let (s, c) = (libm::sin(kappa), libm::cos(kappa));
        1.5 * (s / kappa + c / (kappa * kappa) - s / (kappa * kappa * kappa))
    }
}

/// `W(a, b, T) = ∫₀ᵀ dt₁ e^{iat₁} (e^{ibt₁} − 1)/(ib)`: the nested integral
/// `∫₀ᵀ dt₁ e^{iat₁} ∫₀^{t₁} dt₂ e^{ibt₂}`.
pub fn time_ordered_kernel_w(a: f64, b: f64, t: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    const SPLIT: f64 = 0.25;
    let i = Complex64::new(0.0, 1.0);
    if (b * t).abs() >= SPLIT {
        (phase_integral(a + b, t) - phase_integral(a, t)) / (i * b)
    } else if ((a + b) * t).abs() >= SPLIT {
        // same quantity rearranged so that small b does not divide
        (cis(a * t) * phase_integral(b, t) - phase_integral(a, t)) / (i * (a + b))
    } else {
        w_series(a, b, t)
    }
}

/// Double Taylor series, valid for `|a|T, |b|T ≲ 1`.
fn w_series(a: f64, b: f64, t: f64) -> Complex64 {
    let ia = Complex64::new(0.0, a * t);
    let ib = Complex64::new(0.0, b * t);
    let mut total = Complex64::new(0.0, 0.0);
    // Σ_{k≥1} (ibT)^{k−1}/k! · Σ_{j≥0} (iaT)^j/j! · 1/(k+j+1), times T²
    let mut bk = Complex64::new(1.0, 0.0);
    let mut kfact = 1.0;
    for k in 1..30 {
        kfact *= k as f64;
        let mut aj = Complex64::new(1.0, 0.0);
        let mut inner = Complex64::new(0.0, 0.0);
        for j in 0..30 {
            let term = aj / (k + j + 1) as f64;
            inner += term;
            if term.norm() < 1e-18 * inner.norm() {
                break;
            }
            aj = aj * ia / (j + 1) as f64;
        }
        let term = bk / kfact * inner;
        total += term;
        if term.norm() < 1e-18 * total.norm() {
            break;
        }
        bk *= ib;
    }
    total * (t * t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BilinearKind {
    /// `Σ|u|²`, one atom.
    U2,
    /// `Σ|v|²`, one atom.
    V2,
    /// `Σ u_B u_A*`.
    MUu,
    /// `Σ v_A v_B*`.
    MVv,
    /// `Σ u_A v_B*`.
    LCross,
    /// `Σ u v*`, one atom.
    UvSame,
}

impl BilinearKind {
    pub const ALL: [BilinearKind; 6] = [
        BilinearKind::U2,
        BilinearKind::V2,
        BilinearKind::MUu,
        BilinearKind::MVv,
        BilinearKind::LCross,
        BilinearKind::UvSame,
    ];

    /// `(s₁, s₂, cross_atom)`.
    pub fn template(self) -> (Sign, Sign, bool) {
        use BilinearKind::*;
        match self {
            U2 => (Sign::Minus, Sign::Minus, false),
            V2 => (Sign::Plus, Sign::Plus, false),
            MUu => (Sign::Minus, Sign::Minus, true),
            MVv => (Sign::Plus, Sign::Plus, true),
            LCross => (Sign::Minus, Sign::Plus, true),
            UvSame => (Sign::Minus, Sign::Plus, false),
        }
    }

    pub fn cross_atom(self) -> bool {
        self.template().2
    }

    pub fn name(self) -> &'static str {
        use BilinearKind::*;
        match self {
            U2 => "u2",
            V2 => "v2",
            MUu => "m_uu",
            MVv => "m_vv",
            LCross => "l_cross",
            UvSame => "uv_same",
        }
    }
}

/// Panel edges on `[0, ν_max]` resolving the `τ` oscillation (`Ωt`) and the
/// angular kernel (`z`), with a breakpoint at the resonance `ν = 1`.
pub fn spectral_edges(p: &ModelParams, k: &Kinematics) -> alloc::vec::Vec<f64> {
    let width = (PI / k.omega_t()).min(PI / k.z()) / 4.0;
    panel_edges(0.0, p.nu_max, width, &[1.0])
}

/// `λ ∫₀^{ν_max} dν ν³ τ^{s₁}(ν) conj(τ^{s₂}(ν)) Ā(δνz)`.
pub fn spectral_bilinear(kind: BilinearKind, p: &ModelParams, k: &Kinematics) -> Result<Complex64> {
    p.validate()?;
    let (s1, s2, cross) = kind.template();
    let (t, z) = (k.omega_t(), k.z());
    let delta = if cross { 1.0 } else { 0.0 };
    let integrand = |nu: f64| {
        let w = nu * nu * nu * angular_kernel(delta * nu * z);
        tau(s1, nu, t) * tau(s2, nu, t).conj() * w
    };
    let est = integrate_adaptive(integrand, &spectral_edges(p, k), Tolerance::relative(BILINEAR_RTOL))?;
    Ok(est.value * p.mode_prefactor)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearSet {
    pub u2: f64,
    pub v2: f64,
    pub m_uu: Complex64,
    pub m_vv: Complex64,
    pub l_cross: Complex64,
    pub uv_same: Complex64,
    pub at: Kinematics,
}

impl BilinearSet {
    pub fn get(&self, kind: BilinearKind) -> Complex64 {
        use BilinearKind::*;
        match kind {
            U2 => Complex64::new(self.u2, 0.0),
            V2 => Complex64::new(self.v2, 0.0),
            MUu => self.m_uu,
            MVv => self.m_vv,
            LCross => self.l_cross,
            UvSame => self.uv_same,
        }
    }

    /// Cauchy–Schwarz family, with relative slack `tol`.
    pub fn satisfies_cauchy_schwarz(&self, tol: f64) -> bool {
        self.u2 >= 0.0
            && self.v2 >= 0.0
            && self.m_uu.norm() <= self.u2 * (1.0 + tol)
            && self.m_vv.norm() <= self.v2 * (1.0 + tol)
            && self.l_cross.norm_sqr() <= self.u2 * self.v2 * (1.0 + tol)
            && self.uv_same.norm_sqr() <= self.u2 * self.v2 * (1.0 + tol)
    }
}

pub fn bilinear_set(p: &ModelParams, k: &Kinematics) -> Result<BilinearSet> {
    use BilinearKind::*;
    Ok(BilinearSet {
        u2: spectral_bilinear(U2, p, k)?.re,
        v2: spectral_bilinear(V2, p, k)?.re,
        m_uu: spectral_bilinear(MUu, p, k)?,
        m_vv: spectral_bilinear(MVv, p, k)?,
        l_cross: spectral_bilinear(LCross, p, k)?,
        uv_same: spectral_bilinear(UvSame, p, k)?,
        at: *k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffShift {
    pub kind: BilinearKind,
    pub at_nu_max: Complex64,
    pub at_double: Complex64,
}

impl CutoffShift {
    /// `|B(2ν_max) − B(ν_max)| / |B(ν_max)|`.
    pub fn relative(&self) -> f64 {
        (self.at_double - self.at_nu_max).norm() / self.at_nu_max.norm()
    }

    /// Measured, not assumed: true when doubling the cutoff moves the value
    /// by more than [`CUTOFF_SHIFT_LIMIT`].
    pub fn cutoff_dependent(&self) -> bool {
        self.relative().is_nan() || self.relative() >= CUTOFF_SHIFT_LIMIT
    }
}

pub fn cutoff_shift(kind: BilinearKind, p: &ModelParams, k: &Kinematics) -> Result<CutoffShift> {
    let doubled = ModelParams { nu_max: 2.0 * p.nu_max, ..*p };
    Ok(CutoffShift {
        kind,
        at_nu_max: spectral_bilinear(kind, p, k)?,
        at_double: spectral_bilinear(kind, &doubled, k)?,
    })
}
