use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// `Φ(e^{iθ}) = i(π − θ)` for `θ ∈ [0, 2π)`, the bounded symbol of the
/// Hankel form with entries `1/(m+n)`.
pub fn nehari_symbol(theta: f64) -> Complex64 {
    Complex64::new(0.0, PI - theta.rem_euclid(2.0 * PI))
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 4 || !grid.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("grid must be a power of two ≥ 4, got {grid}")));
    }
    Ok(())
}

/// `(∫_0^1 e^{-iαu} du, ∫_0^1 u e^{-iαu} du)`.
fn panel_moments(alpha: f64) -> (Complex64, Complex64) {
    let z = Complex64::new(0.0, -alpha);
    if alpha.abs() < 0.5 {
        // Taylor series: Σ zⁿ/(n+1)! and Σ zⁿ/(n!(n+2))
        let (mut g0, mut g1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..30 {
            g0 += term / (n + 1) as f64;
            g1 += term / (n + 2) as f64;
            term = term * z / (n + 1) as f64;
        }
        (g0, g1)
    } else {
        let e = z.exp();
        let g0 = (e - 1.0) / z;
        let g1 = (e * (z - 1.0) + 1.0) / (z * z);
        (g0, g1)
    }
}

/// Fourier coefficients `ĉ_k = (1/2π) ∫_0^{2π} Φ(e^{iθ}) e^{-ikθ} dθ`, `k = 1..=k_max`.
///
/// `Φ` is sampled on the uniform grid, including the one-sided limit at `2π`,
/// and the piecewise linear interpolant is integrated exactly against
/// `e^{-ikθ}`.
pub fn nehari_symbol_coefficients(k_max: usize, grid: usize) -> Result<Vec<Complex64>> {
    check_grid(grid)?;
    if k_max == 0 || grid < 4 * k_max {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ k_max and grid ≥ 4·k_max, got k_max = {k_max}, grid = {grid}"
        )));
    }
    let h = 2.0 * PI / grid as f64;
    let samples: Vec<Complex64> = (0..=grid).map(|j| Complex64::new(0.0, PI - j as f64 * h)).collect();
    Ok((1..=k_max)
        .map(|k| {
            let (g0, g1) = panel_moments(k as f64 * h);
            let mut total = Complex64::new(0.0, 0.0);
            for j in 0..grid {
                let phase = Complex64::from_polar(1.0, -(((k * j) % grid) as f64) * h);
                let (left, right) = (samples[j], samples[j + 1]);
                total += phase * (left * g0 + (right - left) * g1);
            }
            total * h / (2.0 * PI)
        })
        .collect())
}

/// `max_j |Φ(e^{2πij/grid})|` over the grid.
pub fn nehari_symbol_sup(grid: usize) -> Result<f64> {
    check_grid(grid)?;
    let h = 2.0 * PI / grid as f64;
    Ok((0..grid).map(|j| nehari_symbol(j as f64 * h).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_values() {
        assert_eq!(nehari_symbol(0.0), Complex64::new(0.0, PI));
        assert!((nehari_symbol(PI)).norm() < 1e-15);
        assert!((nehari_symbol(2.0 * PI) - nehari_symbol(0.0)).norm() < 1e-15);
    }

    #[test]
    fn moments_agree_across_branches() {
        for alpha in [0.499, 0.5, 0.501] {
            let (a0, a1) = panel_moments(alpha);
            // midpoint rule with many nodes
            let m = 200_000;
            let (mut b0, mut b1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for i in 0..m {
                let u = (i as f64 + 0.5) / m as f64;
                let e = Complex64::from_polar(1.0, -alpha * u);
                b0 += e / m as f64;
                b1 += e * u / m as f64;
            }
            assert!((a0 - b0).norm() < 1e-10 && (a1 - b1).norm() < 1e-10);
        }
    }

    #[test]
    fn coefficients_are_reciprocals() {
        let c = nehari_symbol_coefficients(100, 1 << 16).unwrap();
        for (k, ck) in c.iter().enumerate() {
            let k = (k + 1) as f64;
            assert!((ck - 1.0 / k).norm() <= 1e-8, "k = {k}: {ck}");
            assert!(ck.im.abs() <= 1e-10);
        }
        let coarse = nehari_symbol_coefficients(4, 16).unwrap();
        assert!((coarse[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_is_pi() {
        assert!((nehari_symbol_sup(1 << 16).unwrap() - PI).abs() < 1e-6);
    }

    #[test]
    fn grid_preconditions() {
        assert!(nehari_symbol_coefficients(10, 24).is_err());
        assert!(nehari_symbol_coefficients(10, 32).is_err());
        assert!(nehari_symbol_coefficients(0, 64).is_err());
        assert!(nehari_symbol_sup(2).is_err());
    }
}
