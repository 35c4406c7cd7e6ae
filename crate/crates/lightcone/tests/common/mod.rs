//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use lightcone_core::quad::{integrate_real, Tolerance};
use lightcone_core::specfun::EULER_GAMMA;
use lightcone_core::Complex64;

/// Everything the mode box produces at one `(x, z)`.
#[derive(Debug, Clone, Copy)]
pub struct BoxSums {
    pub u2: f64,
    pub v2: f64,
    pub m_uu: Complex64,
    pub m_vv: Complex64,
    pub l_cross: Complex64,
    pub uv_same: Complex64,
    pub f2: f64,
    pub g2: f64,
    pub fg: Complex64,
}

#[derive(Debug, Clone, Copy)]
pub struct ModeBox {
    pub nu_max: f64,
    /// mode spacing
    pub dnu: f64,
    /// time step of the explicit time-ordering sums
    pub dt: f64,
    pub theta_nodes: usize,
    pub phi_nodes: usize,
    /// common constant multiplying every single-photon amplitude pair
    pub prefactor: f64,
    /// also run the two-photon double sum (the expensive part)
    pub pairs: bool,
}

impl Default for ModeBox {
    fn default() -> Self {
        ModeBox { nu_max: 10.0, dnu: 0.01, dt: 0.0025, theta_nodes: 96, phi_nodes: 192, prefactor: 1.0, pairs: true }
    }
}

fn legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl ModeBox {
    fn frequencies(&self) -> Vec<f64> {
        let n = (self.nu_max / self.dnu).round() as usize;
        (0..n).map(|j| (j as f64 + 0.5) * self.dnu).collect()
    }

    /// Per frequency: `(Σ_dir,pol |ε·ẑ|², Σ_dir,pol |ε·ẑ|² e^{iνz k̂·ŷ})`,
    /// weighted so the first is one for a complete sphere. The first atom
    /// sits at the origin, the second at `r ŷ`; dipoles point along `ẑ`.
    fn angular_sums(&self, nus: &[f64], z: f64) -> (f64, Vec<Complex64>) {
        let zhat = [0.0, 0.0, 1.0];
        let mut same = 0.0;
        let mut cross = vec![Complex64::new(0.0, 0.0); nus.len()];
        let dphi = 2.0 * PI / self.phi_nodes as f64;
        for (ct, wt) in legendre_nodes(self.theta_nodes) {
            let st = (1.0 - ct * ct).sqrt();
            for m in 0..self.phi_nodes {
                let phi = (m as f64 + 0.5) * dphi;
                let (sp, cp) = phi.sin_cos();
                let khat = [st * cp, st * sp, ct];
                let pols = [[ct * cp, ct * sp, -st], [-sp, cp, 0.0]];
                debug_assert!(pols.iter().all(|e| dot(*e, khat).abs() < 1e-12));
                let coupling: f64 = pols.iter().map(|e| dot(*e, zhat).powi(2)).sum();
                let w = 3.0 / (8.0 * PI) * wt * dphi * coupling;
                same += w;
                let ky = khat[1];
                let step = Complex64::from_polar(1.0, self.dnu * z * ky);
                let mut phase = Complex64::from_polar(1.0, nus[0] * z * ky);
                for c in cross.iter_mut() {
                    *c += phase * w;
                    phase *= step;
                }
            }
        }
        (same, cross)
    }

    pub fn evaluate(&self, x: f64, z: f64) -> BoxSums {
        let t_end = z / x;
        let steps = (t_end / self.dt).ceil().max(1.0) as usize;
        let h = t_end / steps as f64;
        let times: Vec<f64> = (0..=steps).map(|k| k as f64 * h).collect();
        let trap: Vec<f64> = (0..=steps).map(|k| if k == 0 || k == steps { 0.5 * h } else { h }).collect();

        let nus = self.frequencies();
        let (same, cross) = self.angular_sums(&nus, z);
        let measure: Vec<f64> = nus.iter().map(|n| n * n * n * self.dnu * self.prefactor).collect();

        // single-vertex amplitudes: rotating (ν − 1) and counter-rotating (ν + 1)
        let time_sum = |omega: f64| -> Complex64 {
            times.iter().zip(&trap).map(|(&t, &w)| Complex64::from_polar(w, omega * t)).sum()
        };
        let tau_u: Vec<Complex64> = nus.iter().map(|n| time_sum(n - 1.0)).collect();
        let tau_v: Vec<Complex64> = nus.iter().map(|n| time_sum(n + 1.0)).collect();

        let mut out = BoxSums {
            u2: 0.0,
            v2: 0.0,
            m_uu: Complex64::new(0.0, 0.0),
            m_vv: Complex64::new(0.0, 0.0),
            l_cross: Complex64::new(0.0, 0.0),
            uv_same: Complex64::new(0.0, 0.0),
            f2: 0.0,
            g2: 0.0,
            fg: Complex64::new(0.0, 0.0),
        };
        for j in 0..nus.len() {
            let (u, v, m) = (tau_u[j], tau_v[j], measure[j]);
            out.u2 += m * u.norm_sqr() * same;
            out.v2 += m * v.norm_sqr() * same;
            out.m_uu += cross[j] * (m * u.norm_sqr());
            out.m_vv += cross[j] * (m * v.norm_sqr());
            out.l_cross += u * v.conj() * cross[j] * m;
            out.uv_same += u * v.conj() * (m * same);
        }
        if !self.pairs {
            return out;
        }

        // Time-ordered pair: later counter-rotating vertex at t1 emitting
        // the first photon, earlier rotating vertex at t2 ≤ t1 emitting the
        // second. later[p][k] carries the outer weight, earlier[q][k] the
        // running inner integral up to t_k.
        let n_t = times.len();
        let n_nu = nus.len();
        let mut later_re = vec![0.0; n_nu * n_t];
        let mut later_im = vec![0.0; n_nu * n_t];
        let mut earlier_re = vec![0.0; n_nu * n_t];
        let mut earlier_im = vec![0.0; n_nu * n_t];
        for (p, &nu) in nus.iter().enumerate() {
            let mut run = Complex64::new(0.0, 0.0);
            let mut prev = Complex64::new(1.0, 0.0);
            for k in 0..n_t {
                let e = Complex64::from_polar(trap[k], (nu + 1.0) * times[k]);
                later_re[p * n_t + k] = e.re;
                later_im[p * n_t + k] = e.im;
                if k > 0 {
                    let cur = Complex64::from_polar(1.0, (nu - 1.0) * times[k]);
                    run += (prev + cur) * (0.5 * h);
                    prev = cur;
                }
                earlier_re[p * n_t + k] = run.re;
                earlier_im[p * n_t + k] = run.im;
            }
        }
        // ordered[p][q]: photon p from the later vertex, photon q from the earlier one
        let mut ordered = vec![Complex64::new(0.0, 0.0); n_nu * n_nu];
        for p in 0..n_nu {
            let (lr, li) = (&later_re[p * n_t..(p + 1) * n_t], &later_im[p * n_t..(p + 1) * n_t]);
            for q in 0..n_nu {
                let (er, ei) = (&earlier_re[q * n_t..(q + 1) * n_t], &earlier_im[q * n_t..(q + 1) * n_t]);
                let mut acc = [0.0f64; 8];
                let chunks = n_t / 4;
                for c in 0..chunks {
                    for l in 0..4 {
                        let k = 4 * c + l;
                        acc[l] += lr[k] * er[k] - li[k] * ei[k];
                        acc[4 + l] += lr[k] * ei[k] + li[k] * er[k];
                    }
                }
                let (mut re, mut im) = (acc[..4].iter().sum::<f64>(), acc[4..].iter().sum::<f64>());
                for k in 4 * chunks..n_t {
                    re += lr[k] * er[k] - li[k] * ei[k];
                    im += lr[k] * ei[k] + li[k] * er[k];
                }
                ordered[p * n_nu + q] = Complex64::new(re, im);
            }
        }

        // Explicit double sum over the photon pair. Per pair, the direction
        // and polarization sums of the atom phase factors reduce to
        // products of the per-frequency sums above.
        for i in 0..n_nu {
            for j in 0..n_nu {
                let mm = measure[i] * measure[j];
                let (ci, cj) = (cross[i], cross[j]);
                // f: both photons from one atom, either photon first
                let f = ordered[j * n_nu + i] + ordered[i * n_nu + j];
                // |e^{0} + e^{-i(k+k')·r}|²
                let f_ang = 2.0 * same * same + 2.0 * (ci * cj).re;
                out.f2 += mm * f.norm_sqr() * f_ang;
                // g: one photon from each atom
                let g = tau_u[i] * tau_u[j];
                // |e^{-ik'·r} + e^{-ik·r}|²
                let g_ang = 2.0 * same * same + 2.0 * (ci * cj.conj()).re;
                out.g2 += mm * g.norm_sqr() * g_ang;
                // (1 + e^{-i(k+k')·r})(e^{ik'·r} + e^{ik·r})
                let fg_ang = cj * same + ci * same + ci.conj() * same + cj.conj() * same;
                out.fg += f * g.conj() * fg_ang * mm;
            }
        }
        out
    }
}

pub fn relative(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

fn tight() -> Tolerance {
    Tolerance { relative: 1e-14, absolute: 0.0, roundoff: 1e-15, max_segments: 100_000 }
}

/// `(Si(y), Ci(y))` from their defining integrals.
pub fn si_ci_quadrature(y: f64) -> (f64, f64) {
    let n = y.ceil().max(1.0) as usize;
    let edges: Vec<f64> = (0..=n).map(|i| y * i as f64 / n as f64).collect();
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    let cosm1 = |t: f64| if t == 0.0 { 0.0 } else { -2.0 * (0.5 * t).sin().powi(2) / t };
    let (si, _) = integrate_real(sinc, &edges, tight()).unwrap();
    let (cin, _) = integrate_real(cosm1, &edges, tight()).unwrap();
    (si, EULER_GAMMA + y.ln() + cin)
}
