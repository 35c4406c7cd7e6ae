use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A model or kinematic parameter is outside its allowed range.
    InvalidParameter { name: &'static str, value: f64 },
    /// Argument outside the domain of a special function.
    Domain(&'static str),
    /// The amplitude is singular at the requested configuration.
    SingularConfiguration(&'static str),
    /// Every amplitude of the projected state vanishes.
    UndefinedState,
    /// A density matrix or state vector failed validation.
    InvalidState(&'static str),
    /// Quadrature did not reach the requested accuracy.
    NumericalFailure { what: &'static str, estimate: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::SingularConfiguration(what) => write!(f, "singular configuration: {what}"),
            Error::UndefinedState => write!(f, "all amplitudes vanish, state undefined"),
            Error::InvalidState(what) => write!(f, "invalid two-qubit state: {what}"),
            Error::NumericalFailure { what, estimate } => {
                write!(f, "{what} did not converge (error estimate {estimate:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
