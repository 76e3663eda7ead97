//! Adiabatic treatment for qubits much faster than the oscillator.
//!
//! The oscillator coordinate `x` is frozen, the qubits are diagonalised at
//! that `x`, and their energy becomes part of the oscillator potential. The
//! `Minus` branch (both qubits in the lower state) softens the oscillator
//! and turns into a double well once `m omega0^2 Eq / (4 g^2) < 1`.
//!
//! [`hf_adiabatic_energy`] quantises the harmonic approximation of each
//! branch. That step goes beyond the potentials themselves and should be read
//! as an estimate.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::model::{ModelParams, HBAR};
use crate::numerics::{golden_section_max, golden_section_min};

const LINE_SEARCH_TOL: f64 = 1e-10;
const SCAN_POINTS: usize = 4001;
// ratio within this of 1 counts as the marginal boundary
const MARGINAL_TOL: f64 = 1e-12;

/// Effective oscillator potential selected by the qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PotentialBranch {
    /// Qubits in `GG`.
    Minus,
    /// Qubits in `EG` or `GE` (two-fold).
    Zero,
    /// Qubits in `EE`.
    Plus,
}

impl PotentialBranch {
    pub const ALL: [PotentialBranch; 3] = [Self::Minus, Self::Zero, Self::Plus];

    pub fn name(self) -> &'static str {
        match self {
            Self::Minus => "minus",
            Self::Zero => "zero",
            Self::Plus => "plus",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Self::Minus => -1.0,
            Self::Zero => 0.0,
            Self::Plus => 1.0,
        }
    }
}

// sqrt(delta^2 + (2 g x - eps)^2)
fn local_splitting(x: f64, p: &ModelParams) -> f64 {
    math::hypot(p.delta(), 2.0 * p.g() * x - p.epsilon())
}

/// Eigenvalues of the two-qubit Hamiltonian at frozen oscillator position `x`,
/// ascending. The middle pair is the degenerate `EG`/`GE` doublet.
pub fn qubit_energies_at_x(x: f64, p: &ModelParams) -> [f64; 4] {
    let s = local_splitting(x, p);
    [-s, 0.0, 0.0, s]
}

/// `V(x) = m omega0^2 x^2 / 2 +/- sqrt(delta^2 + (2 g x - eps)^2)`.
pub fn effective_potential(x: f64, branch: PotentialBranch, p: &ModelParams) -> f64 {
    let harmonic = 0.5 * p.mass() * p.omega0() * p.omega0() * x * x;
    match branch {
        PotentialBranch::Zero => harmonic,
        _ => harmonic + branch.sign() * local_splitting(x, p),
    }
}

// dV/dx of the Minus branch
fn minus_slope(x: f64, p: &ModelParams) -> f64 {
    let g = p.g();
    p.mass() * p.omega0() * p.omega0() * x
        - 2.0 * g * (2.0 * g * x - p.epsilon()) / local_splitting(x, p)
}

// Golden section only resolves a minimiser to ~sqrt(eps); bisect the slope
// around the estimate to reach full precision.
fn polish(x: f64, p: &ModelParams) -> f64 {
    let h = 1e-5 * (1.0 + x.abs());
    let (mut a, mut b) = (x - h, x + h);
    let mut fa = minus_slope(a, p);
    if fa * minus_slope(b, p) > 0.0 {
        return x;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = minus_slope(mid, p);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Squared renormalised frequencies `omega0^2 +/- 4 g^2 / (m Eq)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenormalizedFrequencies {
    /// Negative once the Minus branch has become a double well.
    pub omega_minus_sq: f64,
    pub omega_zero_sq: f64,
    pub omega_plus_sq: f64,
}

impl RenormalizedFrequencies {
    pub fn squared(&self, branch: PotentialBranch) -> f64 {
        match branch {
            PotentialBranch::Minus => self.omega_minus_sq,
            PotentialBranch::Zero => self.omega_zero_sq,
            PotentialBranch::Plus => self.omega_plus_sq,
        }
    }
}

pub fn renormalized_frequencies(p: &ModelParams) -> RenormalizedFrequencies {
    let w2 = p.omega0() * p.omega0();
    let g = p.g();
    let shift = 4.0 * g * g / (p.mass() * p.eq());
    RenormalizedFrequencies {
        omega_minus_sq: w2 - shift,
        omega_zero_sq: w2,
        omega_plus_sq: w2 + shift,
    }
}

/// `m omega0^2 Eq / (4 g^2)`; infinite without coupling.
pub fn stability_ratio(p: &ModelParams) -> f64 {
    let g = p.g();
    if g == 0.0 {
        return f64::INFINITY;
    }
    p.mass() * p.omega0() * p.omega0() * p.eq() / (4.0 * g * g)
}

// Vertex of the harmonic approximation, or the instability error.
fn harmonic_vertex(branch: PotentialBranch, p: &ModelParams) -> Result<(f64, f64)> {
    let w2 = renormalized_frequencies(p).squared(branch);
    if branch == PotentialBranch::Minus {
        let ratio = stability_ratio(p);
        if ratio < 1.0 - MARGINAL_TOL {
            return Err(Error::Unstable { ratio });
        }
        if (ratio - 1.0).abs() <= MARGINAL_TOL {
            // marginal: flat parabola, vertex only defined without bias
            if p.epsilon() != 0.0 {
                return Err(Error::Unstable { ratio });
            }
            return Ok((0.0, 0.0));
        }
    }
    let shift = -branch.sign() * 2.0 * p.epsilon() * p.g() / (p.mass() * w2 * p.eq());
    Ok((w2, -shift))
}

/// Harmonic approximation of [`effective_potential`] around its minimum:
/// `m w~^2 (x -/+ 2 eps g / (m w~^2 Eq))^2 / 2 +/- Eq`.
pub fn approx_potential(x: f64, branch: PotentialBranch, p: &ModelParams) -> Result<f64> {
    if branch == PotentialBranch::Zero {
        return Ok(effective_potential(x, branch, p));
    }
    let (w2, vertex) = harmonic_vertex(branch, p)?;
    let dx = x - vertex;
    Ok(0.5 * p.mass() * w2 * dx * dx + branch.sign() * p.eq())
}

/// Level `n` of the quantised harmonic approximation:
/// `(n + 1/2) hbar w~ +/- Eq - 2 eps^2 g^2 / (m w~^2 Eq^2)`.
///
/// The last term is the constant dropped when the linear term of the
/// expansion is absorbed into the vertex shift.
pub fn hf_adiabatic_energy(n: usize, branch: PotentialBranch, p: &ModelParams) -> Result<f64> {
    let nf = n as f64 + 0.5;
    if branch == PotentialBranch::Zero {
        return Ok(nf * HBAR * p.omega0());
    }
    let (w2, _) = harmonic_vertex(branch, p)?;
    let offset = if w2 > 0.0 {
        let g = p.g();
        let eq = p.eq();
        2.0 * p.epsilon() * p.epsilon() * g * g / (p.mass() * w2 * eq * eq)
    } else {
        0.0
    };
    Ok(nf * HBAR * math::sqrt(w2) + branch.sign() * p.eq() - offset)
}

/// Geometry of the Minus-branch potential.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleWellReport {
    /// `ratio >= 1`, the marginal boundary included.
    pub stable: bool,
    /// `ratio` equals 1 to within rounding; classified stable.
    pub marginal: bool,
    pub ratio: f64,
    /// Local minima of the exact Minus potential, ascending in `x`.
    pub minima: Vec<f64>,
    /// Potential at each entry of `minima`.
    pub minimum_values: Vec<f64>,
    /// Barrier top above the deeper minimum, evaluated on the exact potential.
    pub barrier_height: Option<f64>,
    /// Position of the barrier top; moves off zero with a finite bias.
    pub barrier_location: Option<f64>,
    /// `sqrt(4 g^2 / (m^2 omega0^4) - delta^2 / (4 g^2))`, unbiased double well only.
    pub x0_closed_form: Option<f64>,
    /// `-delta + 2 g^2 / (m omega0^2) + m omega0^2 delta^2 / (8 g^2)`, unbiased double well only.
    pub barrier_closed_form: Option<f64>,
}

/// Stability classification and double-well geometry of the Minus branch.
pub fn stability(p: &ModelParams) -> DoubleWellReport {
    let ratio = stability_ratio(p);
    let marginal = (ratio - 1.0).abs() <= MARGINAL_TOL;
    let stable = ratio >= 1.0 || marginal;
    let v = |x: f64| effective_potential(x, PotentialBranch::Minus, p);
    let m_w2 = p.mass() * p.omega0() * p.omega0();
    let g = p.g();
    // every stationary point satisfies |x| <= 2 g / (m omega0^2)
    let reach = 2.0 * g / m_w2;

    let (minima, barrier_location) = if p.epsilon() == 0.0 {
        if stable || g == 0.0 {
            let span = 3.0 * reach + 1.0;
            (
                alloc::vec![golden_section_min(v, -span, span, LINE_SEARCH_TOL)],
                None,
            )
        } else {
            let left = golden_section_min(v, -3.0 * reach, 0.0, LINE_SEARCH_TOL);
            let right = golden_section_min(v, 0.0, 3.0 * reach, LINE_SEARCH_TOL);
            (alloc::vec![left, right], Some(0.0))
        }
    } else {
        scan_extrema(&v, 1.5 * reach + 1e-3)
    };

    let minima: Vec<f64> = minima.into_iter().map(|x| polish(x, p)).collect();
    let barrier_location = barrier_location.map(|x| polish(x, p));
    let minimum_values: Vec<f64> = minima.iter().map(|&x| v(x)).collect();
    let barrier_height = barrier_location.map(|xb| {
        let deepest = minimum_values.iter().copied().fold(f64::INFINITY, f64::min);
        v(xb) - deepest
    });

    let (x0_closed_form, barrier_closed_form) = if p.epsilon() == 0.0 && !stable {
        let d = p.delta();
        let x0_sq = 4.0 * g * g / (m_w2 * m_w2) - d * d / (4.0 * g * g);
        let barrier = -d + 2.0 * g * g / m_w2 + m_w2 * d * d / (8.0 * g * g);
        (Some(math::sqrt(x0_sq.max(0.0))), Some(barrier))
    } else {
        (None, None)
    };

    DoubleWellReport {
        stable,
        marginal,
        ratio,
        minima,
        minimum_values,
        barrier_height,
        barrier_location,
        x0_closed_form,
        barrier_closed_form,
    }
}

// Uniform scan of [-span, span] followed by golden-section refinement of
// every bracketed extremum. Returns (minima, top of the highest interior maximum).
fn scan_extrema<F: Fn(f64) -> f64>(v: &F, span: f64) -> (Vec<f64>, Option<f64>) {
    let step = 2.0 * span / (SCAN_POINTS - 1) as f64;
    let xs: Vec<f64> = (0..SCAN_POINTS).map(|i| -span + step * i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| v(x)).collect();
    let mut minima = Vec::new();
    let mut best_max: Option<(f64, f64)> = None;
    for i in 1..SCAN_POINTS - 1 {
        if ys[i] <= ys[i - 1] && ys[i] < ys[i + 1] {
            minima.push(golden_section_min(v, xs[i - 1], xs[i + 1], LINE_SEARCH_TOL));
        } else if ys[i] >= ys[i - 1] && ys[i] > ys[i + 1] {
            let x = golden_section_max(v, xs[i - 1], xs[i + 1], LINE_SEARCH_TOL);
            let y = v(x);
            if best_max.is_none_or(|(_, yb)| y > yb) {
                best_max = Some((x, y));
            }
        }
    }
    if minima.is_empty() {
        minima.push(golden_section_min(v, -span, span, LINE_SEARCH_TOL));
    }
    let barrier = if minima.len() >= 2 {
        best_max.map(|(x, _)| x)
    } else {
        None
    };
    (minima, barrier)
}
