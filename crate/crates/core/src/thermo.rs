//! Thermodynamic-limit (bulk) closed forms.
//!
//! In the infinite chain the filled-mode fraction becomes `omega = arccos(B)`
//! and the bulk kernel depends only on the distance:
//! `g(r) = (2/pi) sin(omega r)/r`, `g(0) = 2 omega/pi`. Correlators follow by
//! the same compositions as at finite size; `<x x>` becomes a Toeplitz
//! determinant.

use std::f64::consts::{FRAC_2_PI, PI, SQRT_2};

use crate::error::{domain, Error, Result};
use crate::kernel::TwoSpinDensity;
use crate::linalg::SquareMatrix;
use crate::pairstate::concurrence;

/// Amplitude constant of the bulk `r^{-1/2}` decay of `<x_l x_{l+r}>`.
pub const A_TILDE: f64 = 0.6450025;

/// Largest Toeplitz order accepted by [`bulk_xx`].
pub const MAX_BULK_XX_DISTANCE: usize = 500;

/// Field inside the critical band and its angle `omega = arccos(b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkParams {
    b: f64,
    omega: f64,
}

impl BulkParams {
    pub fn new(b: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&b) {
            return Err(domain(format!("bulk field b = {b} must lie in [-1, 1]")));
        }
        Ok(Self { b, omega: b.acos() })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Ground-state energy per spin as `n -> infinity`.
pub fn energy_per_spin(b: f64) -> f64 {
    if b.abs() > 1.0 {
        return -b.abs();
    }
    FRAC_2_PI * (b * (b.acos() - 0.5 * PI) - (1.0 - b * b).sqrt())
}

/// Bulk kernel `g(r)`.
pub fn bulk_kernel(params: &BulkParams, r: usize) -> f64 {
    if r == 0 {
        FRAC_2_PI * params.omega
    } else {
        FRAC_2_PI * (params.omega * r as f64).sin() / r as f64
    }
}

/// Bulk `<sigma^z>`; saturates at `sign(b)` outside the band.
pub fn bulk_magnetization(b: f64) -> f64 {
    if b.abs() > 1.0 {
        return b.signum();
    }
    1.0 - FRAC_2_PI * b.acos()
}

fn check_distance(r: usize) -> Result<()> {
    if r == 0 {
        return Err(domain("distance r must be >= 1"));
    }
    Ok(())
}

pub fn bulk_zz(params: &BulkParams, r: usize) -> Result<f64> {
    check_distance(r)?;
    let z = bulk_magnetization(params.b);
    let g = bulk_kernel(params, r);
    Ok(z * z - g * g)
}

/// Bulk `<x_l x_{l+r}>` as an `r x r` Toeplitz determinant.
pub fn bulk_xx(params: &BulkParams, r: usize) -> Result<f64> {
    check_distance(r)?;
    if r > MAX_BULK_XX_DISTANCE {
        return Err(Error::ResourceLimit(format!(
            "distance r = {r} exceeds the bulk determinant cap {MAX_BULK_XX_DISTANCE}"
        )));
    }
    let symbol: Vec<f64> = (0..=r).map(|d| bulk_kernel(params, d)).collect();
    // row a <-> site l+a, column c <-> site l+1+c
    let block = SquareMatrix::from_fn(r, |a, c| {
        let shift = c as isize + 1 - a as isize;
        symbol[shift.unsigned_abs()] - if shift == 0 { 1.0 } else { 0.0 }
    });
    Ok(block.det())
}

/// Closed-form `<x_l x_{l+r}>` at `B = 0`.
pub fn bulk_xx_product_b0(r: usize) -> Result<f64> {
    check_distance(r)?;
    // j runs up to ceil_strict(r/2) - 1 = floor(r/2)
    let mut value = FRAC_2_PI.powi(r as i32);
    for j in 1..=r / 2 {
        let j2 = 4.0 * (j * j) as f64;
        value *= (j2 / (j2 - 1.0)).powi((r - 2 * j) as i32);
    }
    Ok(value)
}

/// Large-distance bulk law `sqrt(2) A^2 r^{-1/2}`.
pub fn xx_asymptote(r: usize) -> Result<f64> {
    check_distance(r)?;
    Ok(SQRT_2 * A_TILDE * A_TILDE / (r as f64).sqrt())
}

/// Bulk two-site density matrix at distance `r`.
pub fn bulk_two_spin_density(params: &BulkParams, r: usize) -> Result<TwoSpinDensity> {
    let z = bulk_magnetization(params.b);
    Ok(TwoSpinDensity::from_correlators(
        z,
        z,
        bulk_zz(params, r)?,
        bulk_xx(params, r)?,
    ))
}

pub fn bulk_concurrence(params: &BulkParams, r: usize) -> Result<f64> {
    concurrence(&bulk_two_spin_density(params, r)?)
}

/// Fraction of flipped spins, `arccos(b)/pi`.
pub fn k_fraction(b: f64) -> Result<f64> {
    Ok(BulkParams::new(b)?.omega / PI)
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn at(b: f64) -> BulkParams {
        BulkParams::new(b).unwrap()
    }

    #[test]
    fn energy_examples() {
        assert_abs_diff_eq!(energy_per_spin(0.0), -2.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(energy_per_spin(1.0), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(energy_per_spin(-1.0), -1.0, epsilon = 1e-15);
        assert_eq!(energy_per_spin(3.0), -3.0);
        assert_eq!(energy_per_spin(-3.0), -3.0);
    }

    #[test]
    fn energy_slope_is_continuous_at_band_edges() {
        let h = 1e-7;
        let d = |b: f64| (energy_per_spin(b + h) - energy_per_spin(b - h)) / (2.0 * h);
        for edge in [1.0f64, -1.0] {
            let inside = d(edge - edge.signum() * 1e-3);
            let outside = d(edge + edge.signum() * 1e-3);
            assert_abs_diff_eq!(outside, -edge, epsilon = 1e-6);
            // inside slope -> -edge with an O(sqrt(1 - |b|)) correction
            assert!((inside - outside).abs() < 0.05);
        }
    }

    #[test]
    fn kernel_examples() {
        assert_abs_diff_eq!(bulk_kernel(&at(0.0), 1), 2.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(bulk_kernel(&at(0.0), 2), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(bulk_kernel(&at(0.0), 0), 1.0, epsilon = 1e-15);
        assert!(BulkParams::new(1.5).is_err());
    }

    #[test]
    fn magnetization_examples() {
        assert_abs_diff_eq!(bulk_magnetization(0.0), 0.0, epsilon = 1e-15);
        assert_eq!(bulk_magnetization(1.0), 1.0);
        assert_abs_diff_eq!(bulk_magnetization(-1.0), -1.0, epsilon = 1e-15);
        assert_eq!(bulk_magnetization(2.0), 1.0);
        assert_eq!(bulk_magnetization(-2.0), -1.0);
    }

    #[test]
    fn zz_examples() {
        assert_abs_diff_eq!(
            bulk_zz(&at(0.0), 1).unwrap(),
            -4.0 / (PI * PI),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(bulk_zz(&at(0.0), 2).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bulk_zz(&at(0.0), 3).unwrap(), -0.04503163, epsilon = 1e-8);
        assert!(bulk_zz(&at(0.0), 0).is_err());
    }

    #[test]
    fn xx_examples() {
        let p = at(0.0);
        assert_abs_diff_eq!(bulk_xx(&p, 1).unwrap(), 0.6366198, epsilon = 1e-7);
        assert_abs_diff_eq!(bulk_xx(&p, 2).unwrap(), 0.4052847, epsilon = 1e-7);
        assert_abs_diff_eq!(bulk_xx(&p, 3).unwrap(), 0.3440164, epsilon = 1e-7);
        assert!(matches!(bulk_xx(&p, 501), Err(Error::ResourceLimit(_))));
        assert!(bulk_xx(&p, 500).is_ok());

        assert_abs_diff_eq!(bulk_xx_product_b0(1).unwrap(), 0.6366198, epsilon = 1e-7);
        assert_abs_diff_eq!(bulk_xx_product_b0(2).unwrap(), 0.4052847, epsilon = 1e-7);
        assert_abs_diff_eq!(bulk_xx_product_b0(4).unwrap(), 0.2920102, epsilon = 1e-7);
    }

    #[test]
    fn determinant_matches_product_formula() {
        let p = at(0.0);
        for r in 1..=8 {
            assert!(
                (bulk_xx(&p, r).unwrap() - bulk_xx_product_b0(r).unwrap()).abs() < 1e-10,
                "r={r}"
            );
        }
        for r in 1..=50 {
            let sign = if r % 2 == 0 { 0.0 } else { 2.0 };
            let closed = sign * -2.0 / (PI * PI * (r * r) as f64);
            assert!((bulk_zz(&p, r).unwrap() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptote_examples() {
        assert_abs_diff_eq!(xx_asymptote(1).unwrap(), 0.5883528, epsilon = 1e-7);
        assert_abs_diff_eq!(xx_asymptote(4).unwrap(), 0.2941764, epsilon = 1e-7);
        assert_abs_diff_eq!(xx_asymptote(100).unwrap(), 0.0588353, epsilon = 1e-7);
    }

    #[test]
    fn concurrence_examples() {
        assert!((bulk_concurrence(&at(0.0), 1).unwrap() - 0.339).abs() < 5e-4);
        assert_eq!(bulk_concurrence(&at(0.0), 2).unwrap(), 0.0);
        assert!(bulk_concurrence(&at(0.95), 2).unwrap() > 0.0);
    }

    #[test]
    fn concurrence_decays_with_distance() {
        for b in [0.0, 0.5, 0.9] {
            let c: Vec<f64> = (1..=5)
                .map(|r| bulk_concurrence(&at(b), r).unwrap())
                .collect();
            assert!(c.windows(2).all(|w| w[1] <= w[0]), "b={b}: {c:?}");
        }
    }

    #[test]
    fn k_fraction_examples() {
        assert_eq!(k_fraction(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(k_fraction(0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(k_fraction(-1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(k_fraction(1.01).is_err());
    }
}
