//! Adiabatic treatment for an oscillator much faster than the qubits.
//!
//! Each joint qubit state fixes `sz1 + sz2`, which shifts the oscillator
//! into one of three wells. Within a fixed Fock index `n` the four states
//! `|n_+, EE>, |n_0, EG>, |n_0, GE>, |n_-, GG>` are coupled only by the
//! qubit tunnelling `delta`, weighted by the overlap of the displaced Fock
//! states. The resulting 4x4 problem has a closed-form solution.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::math;
use crate::model::{tan_theta, ModelParams, WellLabel};
use crate::numerics::{laguerre_scaled, log_factorial, sym_eigh, SymmetricMatrix, INDEX_CEILING};

/// Largest Fock index accepted by [`spectrum_sweep`].
pub const SWEEP_N_MAX: usize = 64;

/// `<m| exp(d (a^dag - a)) |n>` for real `d`.
///
/// Equal to `e^{-d^2/2} b^{|m-n|} sqrt(min!/max!) L_min^{|m-n|}(d^2)` with
/// `b = d` when `m >= n` and `b = -d` otherwise. Magnitudes and factorial
/// ratios are combined in log space.
pub fn displacement_overlap(m: usize, n: usize, d: f64) -> Result<f64> {
    let worst = m.max(n);
    if worst > INDEX_CEILING {
        return Err(Error::IndexCeiling {
            index: worst,
            ceiling: INDEX_CEILING,
        });
    }
    if !d.is_finite() {
        return Err(Error::Domain {
            what: "displacement must be finite",
            value: d,
        });
    }
    if d == 0.0 {
        return Ok(if m == n { 1.0 } else { 0.0 });
    }
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    let k = hi - lo;
    let base = if m >= n { d } else { -d };

    let (mantissa, log_scale) = laguerre_scaled(lo, k, d * d)?;
    if mantissa == 0.0 {
        return Ok(0.0);
    }
    let log_mag = -0.5 * d * d
        + k as f64 * math::ln(d.abs())
        + 0.5 * (log_factorial(lo as u64) - log_factorial(hi as u64))
        + log_scale
        + math::ln(mantissa.abs());
    let mut sign = mantissa.signum();
    if base < 0.0 && k % 2 == 1 {
        sign = -sign;
    }
    Ok(sign * math::exp(log_mag))
}

/// Overlap `<m_{well_m} | n_{well_n}>` between displaced Fock states.
///
/// Adjacent wells differ by `2 lambda / hbar omega0`, the outer pair by twice
/// that.
pub fn well_overlap(
    m: usize,
    well_m: WellLabel,
    n: usize,
    well_n: WellLabel,
    p: &ModelParams,
) -> Result<f64> {
    if well_m == well_n {
        let worst = m.max(n);
        if worst > INDEX_CEILING {
            return Err(Error::IndexCeiling {
                index: worst,
                ceiling: INDEX_CEILING,
            });
        }
        return Ok(if m == n { 1.0 } else { 0.0 });
    }
    displacement_overlap(m, n, well_n.displacement(p) - well_m.displacement(p))
}

/// A single computed inter-well overlap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WellOverlap {
    pub m: usize,
    pub well_m: WellLabel,
    pub n: usize,
    pub well_n: WellLabel,
    pub value: f64,
}

impl WellOverlap {
    pub fn compute(
        m: usize,
        well_m: WellLabel,
        n: usize,
        well_n: WellLabel,
        p: &ModelParams,
    ) -> Result<Self> {
        let value = well_overlap(m, well_m, n, well_n, p)?;
        Ok(Self {
            m,
            well_m,
            n,
            well_n,
            value,
        })
    }
}

/// `w_n = <n_+|n_0> = e^{-2 (lambda/hbar omega0)^2} L_n(4 (lambda/hbar omega0)^2)`.
pub fn diagonal_overlap(n: usize, p: &ModelParams) -> Result<f64> {
    well_overlap(n, WellLabel::Plus, n, WellLabel::Zero, p)
}

/// The 4x4 qubit Hamiltonian at fixed Fock index `n`, basis `(EE, EG, GE, GG)`.
///
/// Diagonal `(-eps, 0, 0, +eps)`; the two outer states each couple to both
/// middle states with `-(delta/2) w_n`.
pub fn effective_qubit_hamiltonian(n: usize, p: &ModelParams) -> Result<SymmetricMatrix> {
    let w = diagonal_overlap(n, p)?;
    let t = -0.5 * p.delta() * w;
    let mut h = SymmetricMatrix::zeros(4);
    h.set(0, 0, -p.epsilon());
    h.set(3, 3, p.epsilon());
    h.set(0, 1, t);
    h.set(0, 2, t);
    h.set(1, 3, t);
    h.set(2, 3, t);
    Ok(h)
}

/// Mixing parameter `Theta_n = tan(theta) / w_n`; `None` at a node of `w_n`.
pub fn mixing_parameter(n: usize, p: &ModelParams) -> Result<Option<f64>> {
    let w = diagonal_overlap(n, p)?;
    Ok(if w == 0.0 {
        None
    } else {
        Some(tan_theta(p) / w)
    })
}

/// Eigen-branch of the 4x4 problem, labelled by qubit energy (Minus lowest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Minus,
    Zero1,
    Zero2,
    Plus,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Self::Minus, Self::Zero1, Self::Zero2, Self::Plus];

    pub fn name(self) -> &'static str {
        match self {
            Self::Minus => "minus",
            Self::Zero1 => "zero1",
            Self::Zero2 => "zero2",
            Self::Plus => "plus",
        }
    }
}

/// Constant offset convention for the oscillator part of the energy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZeroPoint {
    /// `(n + 1/2) hbar omega0` in every well.
    #[default]
    Uniform,
    /// `n hbar omega0` in the displaced wells, `(n + 1/2) hbar omega0` in the
    /// zero well.
    Omitted,
}

/// The singlet `(-|EG> + |GE>)/sqrt(2)`; it never couples to the oscillator.
pub const SINGLET: [f64; 4] = [0.0, -FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];

/// One closed-form level of the displaced-basis approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdiabaticLevel {
    pub n: usize,
    pub branch: Branch,
    /// Total energy: oscillator part plus `qubit_energy`.
    pub energy: f64,
    /// Eigenvalue of the 4x4 effective qubit Hamiltonian.
    pub qubit_energy: f64,
    /// Normalised amplitudes on `(|n_+,EE>, |n_0,EG>, |n_0,GE>, |n_-,GG>)`.
    pub amplitudes: [f64; 4],
}

/// All four branches for Fock index `n`, ordered Minus, Zero1, Zero2, Plus.
pub fn adiabatic_block(
    n: usize,
    p: &ModelParams,
    zero_point: ZeroPoint,
) -> Result<[AdiabaticLevel; 4]> {
    let w = diagonal_overlap(n, p)?;
    let eps = p.epsilon();
    let coupling = p.delta() * w;
    let split = math::hypot(eps, coupling);

    let [minus, zero1, plus] = if coupling == 0.0 {
        symmetric_sector_fallback(n, p)?
    } else {
        // t = eps/E, s = delta w_n / E. Equivalent to normalising the
        // Theta_n form of the eigenvectors, but without its cancellation and
        // valid for either sign of w_n.
        let t = eps / split;
        let s = coupling / split;
        [
            [(1.0 + t) / 2.0, s / 2.0, s / 2.0, (1.0 - t) / 2.0],
            [
                -s * FRAC_1_SQRT_2,
                t * FRAC_1_SQRT_2,
                t * FRAC_1_SQRT_2,
                s * FRAC_1_SQRT_2,
            ],
            [(1.0 - t) / 2.0, -s / 2.0, -s / 2.0, (1.0 + t) / 2.0],
        ]
    };

    let hw = p.hbar_omega0();
    let nf = n as f64;
    let shift = 4.0 * p.lambda_coupling() * p.lambda_coupling() / hw;
    let displaced = match zero_point {
        ZeroPoint::Uniform => (nf + 0.5) * hw - shift,
        ZeroPoint::Omitted => nf * hw - shift,
    };
    let undisplaced = (nf + 0.5) * hw;

    let level = |branch, osc: f64, qubit_energy: f64, amplitudes| AdiabaticLevel {
        n,
        branch,
        energy: osc + qubit_energy,
        qubit_energy,
        amplitudes,
    };
    Ok([
        level(Branch::Minus, displaced, -split, minus),
        level(Branch::Zero1, undisplaced, 0.0, zero1),
        level(Branch::Zero2, undisplaced, 0.0, SINGLET),
        level(Branch::Plus, displaced, split, plus),
    ])
}

// At a node of delta * w_n the closed form degenerates; diagonalise the
// exchange-symmetric block (EE, (EG+GE)/sqrt2, GG) of the 4x4 instead.
fn symmetric_sector_fallback(n: usize, p: &ModelParams) -> Result<[[f64; 4]; 3]> {
    let h = effective_qubit_hamiltonian(n, p)?;
    let r = FRAC_1_SQRT_2;
    let mut block = SymmetricMatrix::zeros(3);
    block.set(0, 0, h.get(0, 0));
    block.set(2, 2, h.get(3, 3));
    block.set(1, 1, 0.5 * (h.get(1, 1) + h.get(2, 2)) + h.get(1, 2));
    block.set(0, 1, r * (h.get(0, 1) + h.get(0, 2)));
    block.set(1, 2, r * (h.get(1, 3) + h.get(2, 3)));
    let eig = sym_eigh(&block)?;
    let lift = |k: usize| {
        let v = eig.vector(k);
        [v[0], r * v[1], r * v[1], v[2]]
    };
    Ok([lift(0), lift(1), lift(2)])
}

/// A single branch with the uniform zero-point convention.
pub fn adiabatic_level(n: usize, branch: Branch, p: &ModelParams) -> Result<AdiabaticLevel> {
    adiabatic_level_with(n, branch, p, ZeroPoint::Uniform)
}

pub fn adiabatic_level_with(
    n: usize,
    branch: Branch,
    p: &ModelParams,
    zero_point: ZeroPoint,
) -> Result<AdiabaticLevel> {
    let block = adiabatic_block(n, p, zero_point)?;
    Ok(block[branch as usize])
}

/// The four branches at the qubit degeneracy point `epsilon = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegeneracyPointStates {
    pub levels: [AdiabaticLevel; 4],
    /// Branch whose qubit state is the maximally entangled singlet and whose
    /// oscillator factor is the bare Fock state `|n_0>`.
    pub decoupled: Branch,
}

pub fn degeneracy_point_states(n: usize, p: &ModelParams) -> Result<DegeneracyPointStates> {
    if p.epsilon() != 0.0 {
        return Err(Error::Precondition(
            "degeneracy-point states need epsilon = 0",
        ));
    }
    Ok(DegeneracyPointStates {
        levels: adiabatic_block(n, p, ZeroPoint::Uniform)?,
        decoupled: Branch::Zero2,
    })
}

/// All levels for `n = 0..=n_max`, ordered by `n` then branch.
pub fn spectrum_at(
    p: &ModelParams,
    n_max: usize,
    zero_point: ZeroPoint,
) -> Result<Vec<AdiabaticLevel>> {
    let mut out = Vec::with_capacity(4 * (n_max + 1));
    for n in 0..=n_max {
        out.extend(adiabatic_block(n, p, zero_point)?);
    }
    Ok(out)
}

/// Adiabatic spectrum on a grid of `lambda / hbar omega0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub lambda_grid: Vec<f64>,
    /// `levels[i]` belongs to `lambda_grid[i]`, ordered by `n` then branch.
    pub levels: Vec<Vec<AdiabaticLevel>>,
}

/// Parameters for one grid point of a sweep: `Eq`, `omega0` and `m` from
/// `p_base`, qubit rotated to `theta`, coupling `lambda = x hbar omega0`.
pub fn sweep_point(
    p_base: &ModelParams,
    theta: f64,
    lambda_over_omega0: f64,
) -> Result<ModelParams> {
    p_base
        .with_theta(theta)?
        .with_lambda(lambda_over_omega0 * p_base.hbar_omega0())
}

pub(crate) fn check_grid(lambda_grid: &[f64]) -> Result<()> {
    if lambda_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Precondition("lambda grid must be ascending"));
    }
    Ok(())
}

pub fn spectrum_sweep(
    p_base: &ModelParams,
    theta: f64,
    lambda_grid: &[f64],
    n_max: usize,
) -> Result<SpectrumTable> {
    spectrum_sweep_with(p_base, theta, lambda_grid, n_max, ZeroPoint::Uniform)
}

pub fn spectrum_sweep_with(
    p_base: &ModelParams,
    theta: f64,
    lambda_grid: &[f64],
    n_max: usize,
    zero_point: ZeroPoint,
) -> Result<SpectrumTable> {
    check_grid(lambda_grid)?;
    if n_max > SWEEP_N_MAX {
        return Err(Error::IndexCeiling {
            index: n_max,
            ceiling: SWEEP_N_MAX,
        });
    }
    let levels = lambda_grid
        .iter()
        .map(|&x| spectrum_at(&sweep_point(p_base, theta, x)?, n_max, zero_point))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumTable {
        lambda_grid: lambda_grid.to_vec(),
        levels,
    })
}
