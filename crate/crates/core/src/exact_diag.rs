//! Exact diagonalisation of the full qubit-qubit-oscillator Hamiltonian
//!
//! `H = -(delta/2)(sx1 + sx2) - (eps/2)(sz1 + sz2) + hbar omega0 (a^dag a + 1/2)
//!      + lambda (a^dag + a)(sz1 + sz2)`
//!
//! in a Fock space truncated to `n_trunc` levels. Product basis index is
//! `4 * k + q` with Fock index `k` and qubit state `q` in `(EE, EG, GE, GG)`
//! order.

use alloc::vec::Vec;

use crate::displaced_basis::{check_grid, spectrum_at, sweep_point, ZeroPoint};
use crate::error::{Error, Result};
use crate::math;
use crate::model::{ModelParams, QubitJointState};
use crate::numerics::{sym_eigh, sym_eigvals, SymmetricMatrix};

/// Largest matrix dimension `build_full_hamiltonian` will allocate.
pub const MAX_DIMENSION: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationConfig {
    /// Starting number of Fock levels.
    pub n_trunc: usize,
    /// Convergence threshold on the largest eigenvalue shift between doublings.
    pub tol: f64,
    /// How many of the lowest eigenvalues are tracked.
    pub n_levels: usize,
    /// Fock levels are never doubled past this.
    pub n_max_cap: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            n_trunc: 16,
            tol: 1e-8,
            n_levels: 8,
            n_max_cap: 512,
        }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_trunc < 2 {
            return Err(Error::Precondition("n_trunc must be at least 2"));
        }
        if self.n_levels == 0 || self.n_trunc < self.n_levels {
            return Err(Error::Precondition("need 1 <= n_levels <= n_trunc"));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::Domain {
                what: "tolerance must be finite and > 0",
                value: self.tol,
            });
        }
        if self.n_max_cap < self.n_trunc {
            return Err(Error::Precondition("n_max_cap must be >= n_trunc"));
        }
        Ok(())
    }
}

/// Converged (or not) spectrum of the truncated Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSpectrum {
    /// Ascending, in the same energy units as the parameters.
    pub eigenvalues: Vec<f64>,
    eigenvectors: Vec<f64>,
    pub converged: bool,
    pub n_trunc_used: usize,
    /// Largest shift of a tracked level at the last doubling (`inf` if no
    /// doubling was possible under the cap).
    pub max_shift: f64,
}

impl ExactSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn has_eigenvectors(&self) -> bool {
        !self.eigenvectors.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> Option<&[f64]> {
        let n = self.dim();
        self.eigenvectors.get(k * n..(k + 1) * n)
    }

    pub fn eigenvectors(&self) -> impl Iterator<Item = &[f64]> {
        self.eigenvectors.chunks_exact(self.dim().max(1))
    }
}

/// The full Hamiltonian on `n_trunc` Fock levels (dimension `4 n_trunc`).
pub fn build_full_hamiltonian(p: &ModelParams, n_trunc: usize) -> Result<SymmetricMatrix> {
    if n_trunc < 2 {
        return Err(Error::Precondition("n_trunc must be at least 2"));
    }
    let dim = 4 * n_trunc;
    if dim > MAX_DIMENSION {
        return Err(Error::SizeCeiling {
            dimension: dim,
            ceiling: MAX_DIMENSION,
        });
    }
    let hw = p.hbar_omega0();
    let half_delta = 0.5 * p.delta();
    let half_eps = 0.5 * p.epsilon();
    let lambda = p.lambda_coupling();
    let idx = |k: usize, q: QubitJointState| 4 * k + q.index();
    use QubitJointState::*;

    let mut h = SymmetricMatrix::zeros(dim);
    for k in 0..n_trunc {
        for q in QubitJointState::ALL {
            let i = idx(k, q);
            h.set(i, i, hw * (k as f64 + 0.5) - half_eps * q.sigma_z_sum());
            if k + 1 < n_trunc {
                let c = lambda * math::sqrt((k + 1) as f64) * q.sigma_z_sum();
                if c != 0.0 {
                    h.set(i, idx(k + 1, q), c);
                }
            }
        }
        // sx1 flips the first qubit, sx2 the second
        for (a, b) in [(EE, GE), (EG, GG), (EE, EG), (GE, GG)] {
            h.set(idx(k, a), idx(k, b), -half_delta);
        }
    }
    Ok(h)
}

/// Joint parity `sx1 sx2 (-1)^{a^dag a}` on `n_trunc` Fock levels.
///
/// Commutes with the Hamiltonian when `epsilon = 0`.
pub fn parity_operator(n_trunc: usize) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(4 * n_trunc);
    for k in 0..n_trunc {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for q in QubitJointState::ALL {
            m.set(4 * k + q.index(), 4 * k + q.flipped().index(), sign);
        }
    }
    m
}

/// `<v| sx1 sx2 (-1)^{a^dag a} |v>` for a state on `n_trunc` Fock levels.
pub fn parity_expectation(v: &[f64], n_trunc: usize) -> Result<f64> {
    if v.len() != 4 * n_trunc {
        return Err(Error::Precondition("state length must be 4 * n_trunc"));
    }
    let mut total = 0.0;
    for (k, chunk) in v.chunks_exact(4).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let flipped: f64 = QubitJointState::ALL
            .iter()
            .map(|q| chunk[q.index()] * chunk[q.flipped().index()])
            .sum();
        total += sign * flipped;
    }
    Ok(total)
}

/// Diagonalise, doubling `n_trunc` until the lowest `cfg.n_levels`
/// eigenvalues move by at most `cfg.tol`, or the cap is reached. Eigenvectors
/// are computed at the final truncation.
pub fn exact_spectrum(p: &ModelParams, cfg: &TruncationConfig) -> Result<ExactSpectrum> {
    converge(p, cfg, true)
}

/// As [`exact_spectrum`] without eigenvectors.
pub fn exact_spectrum_values(p: &ModelParams, cfg: &TruncationConfig) -> Result<ExactSpectrum> {
    converge(p, cfg, false)
}

fn converge(p: &ModelParams, cfg: &TruncationConfig, with_vectors: bool) -> Result<ExactSpectrum> {
    cfg.validate()?;
    let mut n = cfg.n_trunc;
    let mut values = sym_eigvals(&build_full_hamiltonian(p, n)?)?;
    let mut max_shift = f64::INFINITY;
    let mut converged = false;
    while 2 * n <= cfg.n_max_cap {
        let next = sym_eigvals(&build_full_hamiltonian(p, 2 * n)?)?;
        max_shift = values
            .iter()
            .zip(&next)
            .take(cfg.n_levels)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        n *= 2;
        values = next;
        if max_shift <= cfg.tol {
            converged = true;
            break;
        }
    }

    let eigenvectors = if with_vectors {
        let (vals, vecs) = sym_eigh(&build_full_hamiltonian(p, n)?)?.into_parts();
        values = vals;
        vecs
    } else {
        Vec::new()
    };
    Ok(ExactSpectrum {
        eigenvalues: values,
        eigenvectors,
        converged,
        n_trunc_used: n,
        max_shift,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelComparison {
    /// Position in ascending order (0 = ground).
    pub level: usize,
    pub adiabatic: f64,
    pub exact: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonPoint {
    pub lambda_over_omega0: f64,
    pub converged: bool,
    pub n_trunc_used: usize,
    pub max_shift: f64,
    pub levels: Vec<LevelComparison>,
}

/// Adiabatic (displaced-basis) vs exact energies of the lowest `n_levels`
/// levels at one coupling. Levels are matched by ascending order.
pub fn compare_point(
    p_base: &ModelParams,
    theta: f64,
    lambda_over_omega0: f64,
    n_levels: usize,
    cfg: &TruncationConfig,
    zero_point: ZeroPoint,
) -> Result<ComparisonPoint> {
    if n_levels == 0 {
        return Err(Error::Precondition("n_levels must be >= 1"));
    }
    let p = sweep_point(p_base, theta, lambda_over_omega0)?;
    let mut tracked = *cfg;
    tracked.n_levels = cfg.n_levels.max(n_levels);
    tracked.n_trunc = cfg.n_trunc.max(tracked.n_levels);
    tracked.n_max_cap = cfg.n_max_cap.max(tracked.n_trunc);
    let exact = exact_spectrum_values(&p, &tracked)?;

    // block n contributes its lowest level at or above (n + 1/2 - Eq) - shift,
    // so n_levels + 4 blocks always cover the lowest n_levels
    let mut adiabatic: Vec<f64> = spectrum_at(&p, n_levels + 4, zero_point)?
        .iter()
        .map(|l| l.energy)
        .collect();
    adiabatic.sort_by(f64::total_cmp);

    let levels = adiabatic
        .iter()
        .zip(&exact.eigenvalues)
        .take(n_levels)
        .enumerate()
        .map(|(level, (&a, &e))| {
            let abs_dev = (a - e).abs();
            let rel_dev = if abs_dev == 0.0 {
                0.0
            } else {
                abs_dev / e.abs()
            };
            LevelComparison {
                level,
                adiabatic: a,
                exact: e,
                abs_dev,
                rel_dev,
            }
        })
        .collect();
    Ok(ComparisonPoint {
        lambda_over_omega0,
        converged: exact.converged,
        n_trunc_used: exact.n_trunc_used,
        max_shift: exact.max_shift,
        levels,
    })
}

/// [`compare_point`] over an ascending grid of `lambda / hbar omega0`.
pub fn compare_adiabatic_exact(
    p_base: &ModelParams,
    theta: f64,
    lambda_grid: &[f64],
    n_levels: usize,
    cfg: &TruncationConfig,
    zero_point: ZeroPoint,
) -> Result<Vec<ComparisonPoint>> {
    check_grid(lambda_grid)?;
    lambda_grid
        .iter()
        .map(|&x| compare_point(p_base, theta, x, n_levels, cfg, zero_point))
        .collect()
}
