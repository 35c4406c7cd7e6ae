//! Dimensionless parameterization shared by every channel.

use crate::error::{Error, Result};

/// CODATA 2018 fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.2973525693e-3;

/// `Ω|d|/(ec)` of the order of the hydrogen 1s → 2p transition.
pub const DEFAULT_DIPOLE_STRENGTH: f64 = 5.0e-3;

pub const DEFAULT_NU_MAX: f64 = 50.0;

/// Points with `|x − 1|` below this are evaluated as the `x → 1⁻` limit.
///
/// The unit-height concurrence peak of the vacuum channel sits at
/// `|x − 1| ~ 1e-10`, so the seam has to be narrower than that.
pub const SEAM_TOLERANCE: f64 = 1.0e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// `D = Ω|d|/(ec)`.
    pub dipole_strength: f64,
    pub alpha: f64,
    /// Photon frequency cutoff `ω_max/Ω` of every mode integral.
    pub nu_max: f64,
    /// `z_max = z_max_factor · z` inside the radiative correction `a`.
    pub z_max_factor: f64,
    /// Common positive constant multiplying every single-photon mode bilinear.
    /// Concurrences do not depend on it.
    pub mode_prefactor: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            dipole_strength: DEFAULT_DIPOLE_STRENGTH,
            alpha: FINE_STRUCTURE,
            nu_max: DEFAULT_NU_MAX,
            z_max_factor: DEFAULT_NU_MAX,
            mode_prefactor: 1.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let checks: [(&'static str, f64, bool); 5] = [
            ("dipole_strength", self.dipole_strength, self.dipole_strength > 0.0),
            ("alpha", self.alpha, self.alpha > 0.0),
            ("nu_max", self.nu_max, self.nu_max > 1.0),
            ("z_max_factor", self.z_max_factor, self.z_max_factor > 1.0),
            ("mode_prefactor", self.mode_prefactor, self.mode_prefactor > 0.0),
        ];
        for (name, value, ok) in checks {
            if !ok || !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }

    /// Same parameters with both cutoffs multiplied by `factor`.
    pub fn with_scaled_cutoff(&self, factor: f64) -> Self {
        Self {
            nu_max: self.nu_max * factor,
            z_max_factor: self.z_max_factor * factor,
            ..*self
        }
    }
}

/// Where a point sits relative to the light cone `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    Inside,
    OnCone,
    Outside,
}

/// A point `(x, z)` with `x = r/(ct)` and `z = Ωr/c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    x: f64,
    z: f64,
}

impl Kinematics {
    pub fn new(x: f64, z: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidParameter { name: "x", value: x });
        }
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::InvalidParameter { name: "z", value: z });
        }
        Ok(Self { x, z })
    }

    /// The point at distance `z` after an interaction time `Ωt`.
    pub fn from_omega_t(z: f64, omega_t: f64) -> Result<Self> {
        if !(omega_t > 0.0 && omega_t.is_finite()) {
            return Err(Error::InvalidParameter { name: "omega_t", value: omega_t });
        }
        Self::new(z / omega_t, z)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn omega_t(&self) -> f64 {
        self.z / self.x
    }

    /// Strict `x < 1`. The seam itself is reported by [`Kinematics::cone_side`].
    pub fn inside_lightcone(&self) -> bool {
        self.x < 1.0
    }

    pub fn cone_side(&self) -> ConeSide {
        if (self.x - 1.0).abs() < SEAM_TOLERANCE {
            ConeSide::OnCone
        } else if self.inside_lightcone() {
            ConeSide::Inside
        } else {
            ConeSide::Outside
        }
    }

    pub fn on_cone(&self) -> bool {
        self.cone_side() == ConeSide::OnCone
    }

    /// `z(1 − 1/x) = z − Ωt`, computed without cancellation near the cone.
    pub fn retarded_phase(&self) -> f64 {
        self.z * (self.x - 1.0) / self.x
    }

    /// `z(1 + 1/x) = z + Ωt`.
    pub fn advanced_phase(&self) -> f64 {
        self.z + self.omega_t()
    }
}

pub fn omega_t(k: &Kinematics) -> f64 {
    k.omega_t()
}

/// `K = α|d|²/(e²r²)` in dimensionless form, `α D² / z²`.
pub fn coupling_k(p: &ModelParams, k: &Kinematics) -> f64 {
    p.alpha * p.dipole_strength * p.dipole_strength / (k.z() * k.z())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_t_is_ratio() {
        assert_eq!(Kinematics::new(1.0, 5.0).unwrap().omega_t(), 5.0);
        assert_eq!(Kinematics::new(0.5, 6.0).unwrap().omega_t(), 12.0);
        let k = Kinematics::new(5.0 / 6.0, 5.0).unwrap();
        assert!((k.omega_t() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn from_omega_t_round_trips() {
        let k = Kinematics::from_omega_t(15.0, 6.0).unwrap();
        assert!((k.x() - 2.5).abs() < 1e-15);
        assert!((k.omega_t() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_coordinates() {
        assert!(Kinematics::new(0.0, 1.0).is_err());
        assert!(Kinematics::new(1.0, 0.0).is_err());
        assert!(Kinematics::new(f64::NAN, 1.0).is_err());
        assert!(Kinematics::from_omega_t(1.0, 0.0).is_err());
    }

    #[test]
    fn coupling_scaling() {
        let p = ModelParams::default();
        let k5 = Kinematics::new(1.0, 5.0).unwrap();
        let k10 = Kinematics::new(1.0, 10.0).unwrap();
        let expected = FINE_STRUCTURE * 25.0e-6 / 25.0;
        assert!((coupling_k(&p, &k5) - expected).abs() < 1e-20);
        assert!((coupling_k(&p, &k10) - expected / 4.0).abs() < 1e-20);
        let zero = ModelParams { dipole_strength: 0.0, ..p };
        assert_eq!(coupling_k(&zero, &k5), 0.0);
        for z in [0.3, 1.0, 7.5, 40.0] {
            let k = Kinematics::new(0.7, z).unwrap();
            let kz2 = coupling_k(&p, &k) * z * z;
            assert!((kz2 - p.alpha * 25.0e-6).abs() < 1e-18);
        }
    }

    #[test]
    fn cone_branch_selection() {
        let eps = 1e-12;
        let inside = Kinematics::new(1.0 - eps, 3.0).unwrap();
        let outside = Kinematics::new(1.0 + eps, 3.0).unwrap();
        let on = Kinematics::new(1.0, 3.0).unwrap();
        assert_eq!(inside.cone_side(), ConeSide::Inside);
        assert_eq!(outside.cone_side(), ConeSide::Outside);
        assert_eq!(on.cone_side(), ConeSide::OnCone);
        assert!(inside.inside_lightcone());
        assert!(!outside.inside_lightcone());
        assert!(!on.inside_lightcone());
        assert!(inside.retarded_phase() < 0.0 && outside.retarded_phase() > 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::default().validate().is_ok());
        let bad = ModelParams { nu_max: 1.0, ..Default::default() };
        assert!(matches!(bad.validate(), Err(Error::InvalidParameter { name: "nu_max", .. })));
        let bad = ModelParams { dipole_strength: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let scaled = ModelParams::default().with_scaled_cutoff(2.0);
        assert_eq!(scaled.nu_max, 100.0);
        assert_eq!(scaled.z_max_factor, 100.0);
    }
}
