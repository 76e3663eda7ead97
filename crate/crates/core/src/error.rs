use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A physical parameter or function argument is outside its domain.
    Domain { what: &'static str, value: f64 },
    /// An oscillator index above the supported recurrence ceiling.
    IndexCeiling { index: usize, ceiling: usize },
    /// A matrix would exceed the dimension we agree to allocate.
    SizeCeiling { dimension: usize, ceiling: usize },
    /// The QL iteration did not converge.
    NoConvergence { dimension: usize, iterations: usize },
    /// The Minus-branch harmonic approximation does not exist for these parameters.
    Unstable { ratio: f64 },
    /// A precondition of an operation was violated.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "parameter out of domain: {what} (got {value})")
            }
            Error::IndexCeiling { index, ceiling } => {
                write!(
                    f,
                    "oscillator index {index} exceeds the supported ceiling {ceiling}"
                )
            }
            Error::SizeCeiling { dimension, ceiling } => write!(
                f,
                "matrix dimension {dimension} exceeds the allocation ceiling {ceiling}"
            ),
            Error::NoConvergence {
                dimension,
                iterations,
            } => write!(
                f,
                "eigensolver failed to converge (dimension {dimension}, {iterations} iterations)"
            ),
            Error::Unstable { ratio } => write!(
                f,
                "harmonic approximation unavailable: m*w0^2*Eq/(4g^2) = {ratio} (needs >= 1)"
            ),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
