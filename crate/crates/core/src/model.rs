//! Physical parameters and the joint two-qubit basis.
//!
//! Units: `hbar = 1`. Energies are raw; with the canonical frame of
//! [`make_params`] (`m = omega0 = 1`) they are directly in units of
//! `hbar * omega0`.

use crate::error::{Error, Result};
use crate::math;

/// Reduced Planck constant in the internal unit system.
pub const HBAR: f64 = 1.0;

/// Parameters of two identical flux qubits coupled to one oscillator.
///
/// Immutable once built; every constructor validates the full record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    delta: f64,
    epsilon: f64,
    omega0: f64,
    mass: f64,
    lambda_coupling: f64,
}

impl ModelParams {
    /// Builds a parameter record from the Fock-basis coupling `lambda`.
    pub fn new(
        delta: f64,
        epsilon: f64,
        omega0: f64,
        mass: f64,
        lambda_coupling: f64,
    ) -> Result<Self> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::Domain {
                what: "delta must be finite and >= 0",
                value: delta,
            });
        }
        if !epsilon.is_finite() {
            return Err(Error::Domain {
                what: "epsilon must be finite",
                value: epsilon,
            });
        }
        if !omega0.is_finite() || omega0 <= 0.0 {
            return Err(Error::Domain {
                what: "omega0 must be finite and > 0",
                value: omega0,
            });
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain {
                what: "mass must be finite and > 0",
                value: mass,
            });
        }
        if !lambda_coupling.is_finite() || lambda_coupling < 0.0 {
            return Err(Error::Domain {
                what: "coupling lambda must be finite and >= 0",
                value: lambda_coupling,
            });
        }
        if delta == 0.0 && epsilon == 0.0 {
            return Err(Error::Domain {
                what: "qubit splitting Eq must be > 0",
                value: 0.0,
            });
        }
        Ok(Self {
            delta,
            epsilon,
            omega0,
            mass,
            lambda_coupling,
        })
    }

    /// Builds a parameter record from the position coupling `g` of `g x (sz1 + sz2)`.
    pub fn from_g(delta: f64, epsilon: f64, omega0: f64, mass: f64, g: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::Domain {
                what: "coupling g must be finite and >= 0",
                value: g,
            });
        }
        Self::new(delta, epsilon, omega0, mass, lambda_from_g(g, mass, omega0))
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn lambda_coupling(&self) -> f64 {
        self.lambda_coupling
    }

    /// Qubit level splitting `sqrt(delta^2 + epsilon^2)`.
    pub fn eq(&self) -> f64 {
        math::hypot(self.delta, self.epsilon)
    }

    /// Mixing angle with `tan(theta) = epsilon / delta`, quadrant-correct.
    pub fn theta(&self) -> f64 {
        math::atan2(self.epsilon, self.delta)
    }

    /// Position coupling `g = lambda * sqrt(2 m omega0 / hbar)`.
    pub fn g(&self) -> f64 {
        g_from_lambda(self.lambda_coupling, self.mass, self.omega0)
    }

    pub fn hbar_omega0(&self) -> f64 {
        HBAR * self.omega0
    }

    /// Dimensionless coupling `lambda / (hbar omega0)`.
    pub fn lambda_over_omega0(&self) -> f64 {
        self.lambda_coupling / self.hbar_omega0()
    }

    /// Same record with a different `lambda`.
    pub fn with_lambda(&self, lambda_coupling: f64) -> Result<Self> {
        Self::new(
            self.delta,
            self.epsilon,
            self.omega0,
            self.mass,
            lambda_coupling,
        )
    }

    /// Same record with different qubit parameters.
    pub fn with_qubit(&self, delta: f64, epsilon: f64) -> Result<Self> {
        Self::new(delta, epsilon, self.omega0, self.mass, self.lambda_coupling)
    }

    /// Same oscillator and coupling, qubit rotated to angle `theta` at fixed `Eq`.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..core::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::Domain {
                what: "theta must lie in [0, pi/2)",
                value: theta,
            });
        }
        let eq = self.eq();
        self.with_qubit(eq * math::cos(theta), eq * math::sin(theta))
    }
}

/// Canonical-frame constructor (`hbar = m = omega0 = 1`).
pub fn make_params(delta: f64, epsilon: f64, lambda_over_omega0: f64) -> Result<ModelParams> {
    ModelParams::new(delta, epsilon, 1.0, 1.0, lambda_over_omega0 * HBAR)
}

/// `g = lambda * sqrt(2 m omega0 / hbar)`.
pub fn g_from_lambda(lambda_coupling: f64, mass: f64, omega0: f64) -> f64 {
    lambda_coupling * math::sqrt(2.0 * mass * omega0 / HBAR)
}

/// `lambda = sqrt(hbar / (2 m omega0)) * g`.
pub fn lambda_from_g(g: f64, mass: f64, omega0: f64) -> f64 {
    math::sqrt(HBAR / (2.0 * mass * omega0)) * g
}

/// `tan(theta)`, used by the displaced-basis mixing parameter.
pub(crate) fn tan_theta(p: &ModelParams) -> f64 {
    math::tan(p.theta())
}

/// Joint basis state of the two qubits. `E` is the `sigma_z = +1` state.
///
/// The order `EE, EG, GE, GG` is used for every 4-vector and 4x4 matrix in
/// the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitJointState {
    EE,
    EG,
    GE,
    GG,
}

impl QubitJointState {
    pub const ALL: [QubitJointState; 4] = [Self::EE, Self::EG, Self::GE, Self::GG];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Eigenvalue of `sz1 + sz2`.
    pub fn sigma_z_sum(self) -> f64 {
        match self {
            Self::EE => 2.0,
            Self::EG | Self::GE => 0.0,
            Self::GG => -2.0,
        }
    }

    /// The displaced well that hosts the oscillator for this qubit state.
    pub fn well(self) -> WellLabel {
        match self {
            Self::EE => WellLabel::Plus,
            Self::EG | Self::GE => WellLabel::Zero,
            Self::GG => WellLabel::Minus,
        }
    }

    /// State reached by flipping both qubits (`sx1 sx2`).
    pub fn flipped(self) -> Self {
        Self::ALL[3 - self.index()]
    }
}

/// The three oscillator wells selected by the joint qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WellLabel {
    Minus,
    Zero,
    Plus,
}

impl WellLabel {
    pub const ALL: [WellLabel; 3] = [Self::Minus, Self::Zero, Self::Plus];

    /// Dimensionless displacement `d` with `|n_well> = exp(d (a^dag - a)) |n>`.
    pub fn displacement(self, p: &ModelParams) -> f64 {
        let d = 2.0 * p.lambda_over_omega0();
        match self {
            Self::Minus => d,
            Self::Zero => 0.0,
            Self::Plus => -d,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Minus => "minus",
            Self::Zero => "zero",
            Self::Plus => "plus",
        }
    }
}
