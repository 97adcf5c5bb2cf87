//! One-tangle, concurrence and field sweeps over the crossing regions.

use crate::error::{check_index, domain, Error, Result};
use crate::kernel::{
    kernel_matrix, magnetization, two_spin_density, CorrelationKernel, TwoSpinDensity,
};
use crate::spectrum::crossing_field;

/// Field used in place of `B_0` when locating the first region midpoint.
pub const UPPER_SWEEP_FIELD: f64 = 1.1;
/// Field used in place of `B_{n+1}` when locating the last region midpoint.
pub const LOWER_SWEEP_FIELD: f64 = -1.1;

/// `tau_l = 1 - <sigma^z_l>^2`.
pub fn one_tangle(kern: &CorrelationKernel, l: usize) -> Result<f64> {
    let z = magnetization(kern, l)?;
    Ok((1.0 - z * z).clamp(0.0, 1.0))
}

/// `C = 2 max(0, |e| - sqrt(a+ a-))`.
pub fn concurrence(dens: &TwoSpinDensity) -> Result<f64> {
    const TOL: f64 = 1e-12;
    for (name, v) in [("a_plus", dens.a_plus), ("a_minus", dens.a_minus)] {
        if v.is_nan() || v < -TOL {
            return Err(Error::InvalidState(format!("{name} = {v} is negative")));
        }
    }
    let diag = (dens.a_plus.max(0.0) * dens.a_minus.max(0.0)).sqrt();
    Ok((2.0 * (dens.e.abs() - diag)).clamp(0.0, 1.0))
}

fn pair_concurrence(kern: &CorrelationKernel, l: usize, m: usize) -> Result<f64> {
    concurrence(&two_spin_density(kern, l, m)?)
}

/// Largest distance `r` such that `C(l, l + r)` exceeds `threshold`; 0 if none.
pub fn entanglement_range(n: usize, k: usize, l: usize, threshold: f64) -> Result<usize> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(domain(format!("threshold = {threshold} must be > 0")));
    }
    check_index("site l", l, n)?;
    if l + 1 > n {
        return Err(domain(format!(
            "site l = {l} has no partner to its right (n = {n})"
        )));
    }
    let kern = kernel_matrix(n, k)?;
    let mut range = 0;
    for m in l + 1..=n {
        if pair_concurrence(&kern, l, m)? > threshold {
            range = m - l;
        }
    }
    Ok(range)
}

/// Which quantity a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Tangle { l: usize },
    Concurrence { l: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementPoint {
    pub b: f64,
    pub k: usize,
    pub sites: (usize, Option<usize>),
    pub value: f64,
}

/// Midpoint field of each region `k = 0..=n`, in ascending `k`.
pub fn region_midpoints(n: usize) -> Vec<(usize, f64)> {
    (0..=n)
        .map(|k| {
            let upper = if k == 0 {
                UPPER_SWEEP_FIELD
            } else {
                crossing_field(n, k)
            };
            let lower = if k == n {
                LOWER_SWEEP_FIELD
            } else {
                crossing_field(n, k + 1)
            };
            (k, 0.5 * (upper + lower))
        })
        .collect()
}

/// Evaluates `measure` in the ground state of every region at its midpoint field.
pub fn measure_sweep(n: usize, measure: Measure) -> Result<Vec<EntanglementPoint>> {
    let sites = match measure {
        Measure::Tangle { l } => {
            check_index("site l", l, n)?;
            (l, None)
        }
        Measure::Concurrence { l, m } => {
            check_index("site l", l, n)?;
            check_index("site m", m, n)?;
            if l == m {
                return Err(domain(format!(
                    "concurrence needs distinct sites, got l = m = {l}"
                )));
            }
            (l, Some(m))
        }
    };
    region_midpoints(n)
        .into_iter()
        .map(|(k, b)| {
            let kern = kernel_matrix(n, k)?;
            let value = match measure {
                Measure::Tangle { l } => one_tangle(&kern, l)?,
                Measure::Concurrence { l, m } => pair_concurrence(&kern, l, m)?,
            };
            Ok(EntanglementPoint { b, k, sites, value })
        })
        .collect()
}
