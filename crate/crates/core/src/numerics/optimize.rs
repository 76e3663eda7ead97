use crate::math;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// `f` must be unimodal on the bracket. Iterates until the bracket is
/// narrower than `tol` and returns its midpoint.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (math::sqrt(5.0) - 1.0) / 2.0;
    if a > b {
        core::mem::swap(&mut a, &mut b);
    }
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // each step shrinks the bracket by 0.618; 200 steps covers any f64 range
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    golden_section_min(|x| -f(x), a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    // function values only resolve the minimiser to about sqrt(f64::EPSILON)
    #[test]
    fn parabola() {
        let x = golden_section_min(|x| (x - 1.25) * (x - 1.25) + 3.0, -10.0, 10.0, 1e-12);
        assert!((x - 1.25).abs() < 1e-7);
        let x = golden_section_max(|x| -(x + 0.5) * (x + 0.5), 3.0, -4.0, 1e-12);
        assert!((x + 0.5).abs() < 1e-7);
    }

    #[test]
    fn edge_minimum() {
        let x = golden_section_min(|x| x, 0.0, 1.0, 1e-12);
        assert!(x < 1e-10);
    }
}
