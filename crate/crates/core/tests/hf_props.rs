use proptest::prelude::*;
use usc_core::exact_diag::{exact_spectrum_values, TruncationConfig};
use usc_core::hf_qubit::{
    approx_potential, effective_potential, hf_adiabatic_energy, renormalized_frequencies,
    stability, stability_ratio, PotentialBranch,
};
use usc_core::numerics::sym_eigvals;
use usc_core::numerics::SymmetricMatrix;
use usc_core::{make_params, Error, ModelParams};

fn with_g(delta: f64, eps: f64, g: f64) -> ModelParams {
    ModelParams::from_g(delta, eps, 1.0, 1.0, g).unwrap()
}

// Lowest eigenvalue of -(1/2) d2/dx2 + V on a uniform grid, by Sturm-count
// bisection of the tridiagonal finite-difference matrix.
fn schrodinger_ground<F: Fn(f64) -> f64>(v: F, half_width: f64, points: usize) -> f64 {
    let h = 2.0 * half_width / (points + 1) as f64;
    let diag: Vec<f64> = (1..=points)
        .map(|i| 1.0 / (h * h) + v(-half_width + h * i as f64))
        .collect();
    let off = -0.5 / (h * h);
    let below = |e: f64| {
        let mut count = 0;
        let mut q = diag[0] - e;
        if q < 0.0 {
            count += 1;
        }
        for d in &diag[1..] {
            let prev = if q == 0.0 { 1e-300 } else { q };
            q = d - e - off * off / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    // Gershgorin bounds
    let mut lo = diag.iter().copied().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();
    let mut hi = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 2.0 * off.abs();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

#[test]
fn qubit_energies_match_frozen_matrix() {
    // 4x4 qubit Hamiltonian at frozen x: -(delta/2)(sx1+sx2) + (2 g x - eps)/2 (sz1+sz2)
    let p = with_g(4.0, 0.0, 1.5);
    let x = 1.0;
    let b = 0.5 * (2.0 * p.g() * x - p.epsilon());
    let a = -0.5 * p.delta();
    let h = SymmetricMatrix::from_row_major(
        4,
        vec![
            2.0 * b,
            a,
            a,
            0.0,
            a,
            0.0,
            0.0,
            a,
            a,
            0.0,
            0.0,
            a,
            0.0,
            a,
            a,
            -2.0 * b,
        ],
    )
    .unwrap();
    let vals = sym_eigvals(&h).unwrap();
    let want = usc_core::hf_qubit::qubit_energies_at_x(x, &p);
    for (v, w) in vals.iter().zip(want) {
        assert!((v - w).abs() < 1e-12);
    }
    assert!((want[3] - 5.0).abs() < 1e-12);
}

#[test]
fn taylor_consistency_at_minimum() {
    for &(delta, x) in &[(4.0, 0.5), (4.0, 0.2), (1.0, 0.1)] {
        let p = make_params(delta, 0.0, x).unwrap();
        assert!(stability(&p).stable);
        let f = renormalized_frequencies(&p);
        for branch in [PotentialBranch::Minus, PotentialBranch::Plus] {
            let exact = |x: f64| effective_potential(x, branch, &p);
            let approx = |x: f64| approx_potential(x, branch, &p).unwrap();
            assert!((exact(0.0) - approx(0.0)).abs() <= 1e-12);
            let slope = (exact(1e-4) - exact(-1e-4)) / 2e-4;
            assert!(slope.abs() <= 1e-6);
            let curv = second_derivative(exact, 0.0, 1e-4);
            assert!(
                (curv - f.squared(branch)).abs() <= 1e-6,
                "{branch:?}: {curv}"
            );
            assert!((second_derivative(approx, 0.0, 1e-4) - f.squared(branch)).abs() <= 1e-6);
        }
    }
}

#[test]
fn worked_frequencies() {
    let f = renormalized_frequencies(&make_params(4.0, 0.0, 0.5).unwrap());
    assert!((f.omega_minus_sq - 0.5).abs() < 1e-14 && (f.omega_plus_sq - 1.5).abs() < 1e-14);
    let report = stability(&make_params(4.0, 0.0, 0.5).unwrap());
    assert!((report.ratio - 2.0).abs() < 1e-14 && report.stable);
    assert_eq!(report.minima.len(), 1);
}

proptest! {
    #[test]
    fn frequency_ordering(delta in 0.0f64..5.0, eps in -5.0f64..5.0, x in 0.0f64..3.0) {
        prop_assume!(delta > 1e-6 || eps.abs() > 1e-6);
        let f = renormalized_frequencies(&make_params(delta, eps, x).unwrap());
        prop_assert!(f.omega_plus_sq >= f.omega_zero_sq && f.omega_zero_sq >= f.omega_minus_sq);
        prop_assert!((f.omega_plus_sq + f.omega_minus_sq - 2.0).abs() <= 1e-12 * (1.0 + f.omega_plus_sq));
    }

    #[test]
    fn unbiased_potentials_are_even(delta in 0.01f64..5.0, g in 0.0f64..3.0, x in -10.0f64..10.0) {
        let p = with_g(delta, 0.0, g);
        for branch in PotentialBranch::ALL {
            prop_assert_eq!(effective_potential(x, branch, &p), effective_potential(-x, branch, &p));
        }
    }

    #[test]
    fn boundary_is_where_soft_frequency_vanishes(eq in 0.1f64..10.0) {
        let p = with_g(eq, 0.0, (eq / 4.0).sqrt());
        prop_assert!((stability_ratio(&p) - 1.0).abs() <= 1e-14);
        prop_assert!(renormalized_frequencies(&p).omega_minus_sq.abs() <= 1e-14);
        prop_assert!(stability(&p).stable && stability(&p).marginal);
    }

    #[test]
    fn zero_branch_is_bare(delta in 0.01f64..5.0, eps in -3.0f64..3.0, g in 0.0f64..3.0, x in -10.0f64..10.0) {
        let p = with_g(delta, eps, g);
        prop_assert_eq!(effective_potential(x, PotentialBranch::Zero, &p), 0.5 * x * x);
        prop_assert_eq!(approx_potential(x, PotentialBranch::Zero, &p).unwrap(), 0.5 * x * x);
    }
}

#[test]
fn classification_flips_across_boundary() {
    let mut flips = 0;
    let mut last = None;
    for i in 0..=200 {
        let g = 0.5 + 1.5 * i as f64 / 200.0;
        let p = with_g(4.0, 0.0, g);
        let r = stability(&p);
        assert_eq!(r.stable, g * g <= 1.0 + 1e-12);
        assert_eq!(r.minima.len(), if r.stable { 1 } else { 2 });
        let unstable_err = matches!(
            approx_potential(0.0, PotentialBranch::Minus, &p),
            Err(Error::Unstable { .. })
        );
        assert_eq!(unstable_err, !r.stable);
        if last.is_some_and(|s| s != r.stable) {
            flips += 1;
        }
        last = Some(r.stable);
    }
    assert_eq!(flips, 1);
}

#[test]
fn double_well_geometry() {
    let p = with_g(4.0, 0.0, 1.5);
    let r = stability(&p);
    let x0 = (4.0f64 * 2.25 - 16.0 / 9.0).sqrt();
    assert!((x0 - 2.68742).abs() < 1e-5);
    assert!((r.minima[0] + x0).abs() <= 1e-8 && (r.minima[1] - x0).abs() <= 1e-8);
    let v = |x: f64| effective_potential(x, PotentialBranch::Minus, &p);
    assert!((v(r.minima[0]) - v(r.minima[1])).abs() <= 1e-12);
    assert!((v(x0) - (-4.5 - 16.0 / 18.0)).abs() < 1e-12);
    let closed = -4.0 + 2.0 * 2.25 + 16.0 / (8.0 * 2.25);
    assert!((r.barrier_height.unwrap() - closed).abs() <= 1e-8);
    assert!((closed - 1.38889).abs() < 1e-5);
}

#[test]
fn biased_double_well_is_asymmetric() {
    let p = with_g(4.0, 0.5, 1.5);
    let r = stability(&p);
    assert_eq!(r.minima.len(), 2);
    let (deep, shallow) = (r.minimum_values[0], r.minimum_values[1]);
    assert!(deep < shallow);
    assert!(r.minima[0] < 0.0);
    let xb = r.barrier_location.unwrap();
    assert!(xb != 0.0);
    // barrier top is a stationary point of V
    let v = |x: f64| effective_potential(x, PotentialBranch::Minus, &p);
    assert!(((v(xb + 1e-5) - v(xb - 1e-5)) / 2e-5).abs() < 1e-6);
    assert!((r.barrier_height.unwrap() - (v(xb) - deep)).abs() < 1e-12);
}

#[test]
fn barrier_grows_with_coupling() {
    let mut last = 0.0;
    for i in 1..200 {
        let g2 = 1.0 + 15.0 * i as f64 / 200.0;
        let r = stability(&with_g(4.0, 0.0, g2.sqrt()));
        let b = r.barrier_height.unwrap();
        assert!(b > last, "g^2={g2}");
        assert!((b - r.barrier_closed_form.unwrap()).abs() <= 1e-8);
        last = b;
    }
}

#[test]
fn quantised_levels_against_schrodinger() {
    for &x in &[0.3, 0.5] {
        let p = make_params(4.0, 0.0, x).unwrap();
        let hf = hf_adiabatic_energy(0, PotentialBranch::Minus, &p).unwrap();
        let fd = schrodinger_ground(
            |y| effective_potential(y, PotentialBranch::Minus, &p),
            12.0,
            4000,
        );
        assert!((hf - fd).abs() <= 0.05 * fd.abs(), "x={x}: {hf} vs {fd}");
    }
    let p = make_params(4.0, 0.0, 0.5).unwrap();
    assert!((hf_adiabatic_energy(0, PotentialBranch::Minus, &p).unwrap() + 3.64645).abs() < 1e-5);
}

#[test]
fn agrees_with_exact_diagonalisation_for_fast_qubits() {
    for &x in &[0.1, 0.3, 0.5] {
        let p = make_params(4.0, 0.0, x).unwrap();
        let exact = exact_spectrum_values(&p, &TruncationConfig::default()).unwrap();
        assert!(exact.converged);
        let hf = hf_adiabatic_energy(0, PotentialBranch::Minus, &p).unwrap();
        assert!(
            (hf - exact.eigenvalues[0]).abs() <= 0.1,
            "x={x}: {hf} vs {}",
            exact.eigenvalues[0]
        );
    }
}
