//! Sweeps, figure presets, CSV and gnuplot output on top of `lightcone-core`.

pub mod config;
pub mod plot;
pub mod sweep;
pub mod table;

pub use lightcone_core as core;
