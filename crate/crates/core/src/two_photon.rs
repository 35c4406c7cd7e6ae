//! Two-photon channel. After projecting on two photons the atoms are left in
//! `f|EE⟩ + g|GG⟩` with
//!
//! ```text
//! g(k,k′) = u_A(k) u_B(k′) + u_B(k) u_A(k′)
//! f(k,k′) = Σ_X e^{−i(k+k′)·r_X} [W(ν′+1, ν−1) + W(ν+1, ν′−1)]
//! ```
//!
//! `f` is emission of both photons by one atom: a rotating `u` vertex
//! (`E → G`) followed by a counter-rotating `v` vertex (`G → E`). Summed over
//! the undetected photons:
//!
//! ```text
//! G2 = 2 u2² + 2 |m_uu|²
//! F2 = λ² ∫∫ ν³ν′³ |Wsym|² (2 + 2 Ā(νz) Ā(ν′z))
//! FG = 4 λ² ∫∫ ν³ν′³ Wsym conj(τ⁻(ν)) conj(τ⁻(ν′)) Ā(νz)
//! ```
//!
//! and the plotted concurrence is `2|FG| / (F2 + G2)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::concurrence::{concurrence_from_sums, concurrence_two_component};
use crate::error::{Error, Result};
use crate::kernels::{
    angular_kernel, phase_integral, spectral_bilinear, tau, time_ordered_kernel_w, BilinearKind,
    Sign,
};
use crate::model::{Kinematics, ModelParams};
use crate::quad::{panel_edges, PanelRule};

/// Relative accuracy requested from the `(ν, ν′)` quadratures.
pub const TWO_PHOTON_RTOL: f64 = 1e-4;

const FINE_ORDER: usize = 40;
const COARSE_ORDER: usize = 30;
const MAX_REFINEMENTS: usize = 4;
/// Below this `|ν − 1|·Ωt` the divided difference in `W` is evaluated by
/// the cancellation-free kernel instead of the per-node shortcut.
const RESONANCE_GUARD: f64 = 1e-3;

/// Which atom sits at the origin. Swapping flips the separation vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AtomOrder {
    #[default]
    AB,
    BA,
}

impl AtomOrder {
    fn separation_sign(self) -> f64 {
        match self {
            AtomOrder::AB => 1.0,
            AtomOrder::BA => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPartials {
    pub u2: f64,
    pub m_uu: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffMeta {
    pub nu_max: f64,
    /// `C⁽²⁾(2ν_max) − C⁽²⁾(ν_max)`, when it was measured.
    pub sensitivity: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonBilinears {
    pub f2: f64,
    pub g2: f64,
    pub fg: Complex64,
    pub at: Kinematics,
    pub cutoff_meta: CutoffMeta,
}

impl TwoPhotonBilinears {
    pub fn concurrence(&self) -> Result<f64> {
        concurrence_from_sums(self.fg, self.f2, self.g2)
    }

    /// `|FG|² ≤ F2·G2` up to relative slack `tol`.
    pub fn satisfies_cauchy_schwarz(&self, tol: f64) -> bool {
        self.f2 >= 0.0 && self.g2 >= 0.0 && self.fg.norm_sqr() <= self.f2 * self.g2 * (1.0 + tol)
    }
}

/// `G2 = Σ|g|² = 2u2² + 2|m_uu|²`.
pub fn g_bilinears(p: &ModelParams, k: &Kinematics) -> Result<(f64, GPartials)> {
    let u2 = spectral_bilinear(BilinearKind::U2, p, k)?.re;
    let m_uu = spectral_bilinear(BilinearKind::MUu, p, k)?;
    Ok((2.0 * u2 * u2 + 2.0 * m_uu.norm_sqr(), GPartials { u2, m_uu }))
}

#[derive(Debug, Clone, Copy)]
struct Node {
    nu: f64,
    /// quadrature weight times `λν³`
    measure: f64,
    /// `e^{iνT}`
    phase: Complex64,
    tau_plus: Complex64,
    conj_tau_minus: Complex64,
    kernel: f64,
    /// `1/(i(ν − 1))`, absent close to resonance
    inv_detuning: Option<Complex64>,
}

fn nodes(rule: &PanelRule, p: &ModelParams, k: &Kinematics, order: AtomOrder) -> Vec<Node> {
    let t = k.omega_t();
    let kappa = order.separation_sign() * k.z();
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&nu, &w)| {
            let inv_detuning = if ((nu - 1.0) * t).abs() >= RESONANCE_GUARD {
                Some(Complex64::new(0.0, -1.0 / (nu - 1.0)))
            } else {
                None
            };
            Node {
                nu,
                measure: w * nu * nu * nu * p.mode_prefactor,
                phase: Complex64::new(libm::cos(nu * t), libm::sin(nu * t)),
                tau_plus: tau(Sign::Plus, nu, t),
                conj_tau_minus: tau(Sign::Minus, nu, t).conj(),
                kernel: angular_kernel(kappa * nu),
                inv_detuning,
            }
        })
        .collect()
}

/// `W(ν′+1, ν−1) + W(ν+1, ν′−1)`.
#[inline]
fn w_sym(a: &Node, b: &Node, t: f64) -> Complex64 {
    let s = a.nu + b.nu;
    let phi_s = if s * t >= 0.25 {
        (a.phase * b.phase - 1.0) * Complex64::new(0.0, -1.0 / s)
    } else {
        phase_integral(s, t)
    };
    let first = match a.inv_detuning {
        Some(d) => (phi_s - b.tau_plus) * d,
        None => time_ordered_kernel_w(b.nu + 1.0, a.nu - 1.0, t),
    };
    let second = match b.inv_detuning {
        Some(d) => (phi_s - a.tau_plus) * d,
        None => time_ordered_kernel_w(a.nu + 1.0, b.nu - 1.0, t),
    };
    first + second
}

#[derive(Debug, Clone, Copy, Default)]
struct Sums {
    f2: f64,
    fg: Complex64,
    fg_magnitude: f64,
}

/// Tensor rule over the triangle `ν ≤ ν′` (both integrands are symmetric
/// once `Ā(νz)` in FG is replaced by its symmetrization).
fn tensor_sums(nodes: &[Node], t: f64) -> Sums {
    let mut out = Sums::default();
    for (i, a) in nodes.iter().enumerate() {
        let mut f2_row = 0.0;
        let mut fg_row = Complex64::new(0.0, 0.0);
        let mut mag_row = 0.0;
        for (j, b) in nodes.iter().enumerate().skip(i) {
            let mult = if j == i { 1.0 } else { 2.0 };
            let m = a.measure * b.measure * mult;
            let w = w_sym(a, b, t);
            f2_row += m * w.norm_sqr() * (2.0 + 2.0 * a.kernel * b.kernel);
            let fg = w * (a.conj_tau_minus * b.conj_tau_minus) * (m * 2.0 * (a.kernel + b.kernel));
            fg_row += fg;
            mag_row += fg.norm();
        }
        out.f2 += f2_row;
        out.fg += fg_row;
        out.fg_magnitude += mag_row;
    }
    out
}

/// Initial panel width: about fifteen periods of `e^{iν(Ωt+z)}` per panel.
/// The oscillating parts of both integrands are subleading, so a 40-point
/// rule already sits far below the target there; the 30-point comparison
/// triggers refinement when it does not.
fn initial_width(k: &Kinematics) -> f64 {
    let omega = k.omega_t() + k.z();
    (96.0 / omega).min(6.0)
}

fn f_bilinears_with(p: &ModelParams, k: &Kinematics, order: AtomOrder) -> Result<(f64, Complex64)> {
    f_bilinears_rule(p, k, order, FINE_ORDER, COARSE_ORDER, initial_width(k))
}

fn f_bilinears_rule(
    p: &ModelParams,
    k: &Kinematics,
    order: AtomOrder,
    fine_order: usize,
    coarse_order: usize,
    width: f64,
) -> Result<(f64, Complex64)> {
    p.validate()?;
    let t = k.omega_t();
    let mut width = width;
    let mut last_error = f64::INFINITY;
    for _ in 0..=MAX_REFINEMENTS {
        let edges = panel_edges(0.0, p.nu_max, width, &[1.0]);
        let fine = tensor_sums(&nodes(&PanelRule::new(&edges, fine_order), p, k, order), t);
        let coarse = tensor_sums(&nodes(&PanelRule::new(&edges, coarse_order), p, k, order), t);
        let f2_err = (fine.f2 - coarse.f2).abs();
        let fg_err = (fine.fg - coarse.fg).norm();
        let f2_ok = f2_err <= TWO_PHOTON_RTOL * fine.f2.abs();
        let fg_ok = fg_err <= (TWO_PHOTON_RTOL * fine.fg.norm()).max(1e-13 * fine.fg_magnitude);
        if f2_ok && fg_ok {
            return Ok((fine.f2, fine.fg));
        }
        last_error = (f2_err / fine.f2.abs()).max(fg_err / fine.fg.norm());
        width *= 0.5;
    }
    Err(Error::NumericalFailure { what: "two-photon mode integral", estimate: last_error })
}

/// `(F2, FG)` from the `(ν, ν′)` quadrature.
pub fn f_bilinears(p: &ModelParams, k: &Kinematics) -> Result<(f64, Complex64)> {
    f_bilinears_with(p, k, AtomOrder::AB)
}

pub fn two_photon_bilinears_ordered(
    p: &ModelParams,
    k: &Kinematics,
    order: AtomOrder,
) -> Result<TwoPhotonBilinears> {
    let (g2, _) = g_bilinears(p, k)?;
    let (f2, fg) = f_bilinears_with(p, k, order)?;
    Ok(TwoPhotonBilinears {
        f2,
        g2,
        fg,
        at: *k,
        cutoff_meta: CutoffMeta { nu_max: p.nu_max, sensitivity: None },
    })
}

pub fn two_photon_bilinears(p: &ModelParams, k: &Kinematics) -> Result<TwoPhotonBilinears> {
    two_photon_bilinears_ordered(p, k, AtomOrder::AB)
}

/// Mode-summed `C⁽²⁾ = 2|FG| / (F2 + G2)`.
pub fn concurrence_two_photon(p: &ModelParams, k: &Kinematics) -> Result<f64> {
    two_photon_bilinears(p, k)?.concurrence()
}

/// Bilinears at `ν_max` with the `2ν_max` concurrence shift attached.
pub fn two_photon_with_sensitivity(p: &ModelParams, k: &Kinematics) -> Result<TwoPhotonBilinears> {
    let mut base = two_photon_bilinears(p, k)?;
    let doubled = two_photon_bilinears(&ModelParams { nu_max: 2.0 * p.nu_max, ..*p }, k)?;
    base.cutoff_meta.sensitivity = Some(doubled.concurrence()? - base.concurrence()?);
    Ok(base)
}

/// One photon: frequency (units of `Ω`), propagation direction and a
/// polarization orthogonal to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMode {
    pub nu: f64,
    pub direction: [f64; 3],
    pub polarization: [f64; 3],
}

impl PhotonMode {
    pub fn new(nu: f64, direction: [f64; 3], polarization: [f64; 3]) -> Result<Self> {
        let norm = |v: [f64; 3]| libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter { name: "nu", value: nu });
        }
        let (dn, pn) = (norm(direction), norm(polarization));
        if !(dn > 0.0 && pn > 0.0) {
            return Err(Error::InvalidParameter { name: "mode vector", value: 0.0 });
        }
        let d = direction.map(|c| c / dn);
        let e = polarization.map(|c| c / pn);
        let dot = d[0] * e[0] + d[1] * e[1] + d[2] * e[2];
        if dot.abs() > 1e-9 {
            return Err(Error::InvalidParameter { name: "polarization·direction", value: dot });
        }
        Ok(Self { nu, direction: d, polarization: e })
    }

    /// `e^{−ik·r}` for an atom at `y` on the `ŷ` axis.
    fn phase_at(&self, y: f64) -> Complex64 {
        let arg = -self.nu * self.direction[1] * y;
        Complex64::new(libm::cos(arg), libm::sin(arg))
    }
}

/// `(f, g)` for one photon pair, dropping the common coupling constant.
pub fn per_mode_amplitudes(
    k: &Kinematics,
    first: &PhotonMode,
    second: &PhotonMode,
    order: AtomOrder,
) -> (Complex64, Complex64) {
    let t = k.omega_t();
    let (ya, yb) = match order {
        AtomOrder::AB => (0.0, k.z()),
        AtomOrder::BA => (k.z(), 0.0),
    };
    let coupling = first.polarization[2] * second.polarization[2];
    let w = time_ordered_kernel_w(second.nu + 1.0, first.nu - 1.0, t)
        + time_ordered_kernel_w(first.nu + 1.0, second.nu - 1.0, t);
    let f = (first.phase_at(ya) * second.phase_at(ya) + first.phase_at(yb) * second.phase_at(yb))
        * w
        * coupling;
    let u1 = tau(Sign::Minus, first.nu, t);
    let u2 = tau(Sign::Minus, second.nu, t);
    let g = (first.phase_at(ya) * second.phase_at(yb) + first.phase_at(yb) * second.phase_at(ya))
        * (u1 * u2 * coupling);
    (f, g)
}

/// Literal per-mode `2|f g*| / (|f|² + |g|²)` for a chosen photon pair.
pub fn concurrence_two_photon_modes(
    k: &Kinematics,
    first: &PhotonMode,
    second: &PhotonMode,
) -> Result<f64> {
    let (f, g) = per_mode_amplitudes(k, first, second, AtomOrder::AB);
    concurrence_two_component(f, g)
}
