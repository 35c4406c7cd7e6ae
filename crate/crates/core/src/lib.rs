//! First-order perturbative entanglement between two initially excited
//! two-level atoms coupled to the electromagnetic vacuum.
//!
//! The pair starts in `|EE⟩|0⟩`. After a time `t` the state is projected on
//! a definite photon number and the concurrence of the remaining two-qubit
//! state is evaluated:
//!
//! * zero photons: `(1+a)|EE⟩ + b|GG⟩`, see [`vacuum`];
//! * two photons: `f|EE⟩ + g|GG⟩`, mode-summed over the undetected photons,
//!   see [`two_photon`].
//!
//! Everything is expressed in the dimensionless pair `x = r/(ct)`,
//! `z = Ωr/c` together with the dipole strength `D = Ω|d|/(ec)` and the fine
//! structure constant. The crate is `no_std` (it needs `alloc` for the
//! quadrature node tables); IO and sweeps live in the `lightcone` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod concurrence;
pub mod error;
pub mod kernels;
pub mod model;
pub mod quad;
pub mod specfun;
pub mod two_photon;
pub mod vacuum;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use model::{ConeSide, Kinematics, ModelParams};
